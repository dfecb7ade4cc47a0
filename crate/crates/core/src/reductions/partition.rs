//! PARTITION instances compiled to square homogeneous systems, plainly or
//! with all coefficients bounded by 2 via binary-expansion chain variables.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::polysys::{MultiPoly, PolySystem};
use crate::reductions::{LambdaSpec, Provenance, ReductionArtifact, VarRole};

/// Nonnegative item weights `w(s_1)..w(s_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    pub weights: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(weights: Vec<u64>) -> Self {
        PartitionInstance { weights }
    }

    /// True iff the weights split into two subsets of equal sum.
    pub fn splits_evenly(&self) -> bool {
        let n = self.weights.len();
        assert!(n <= 30, "exhaustive split check is desk scale");
        (0u64..1 << n).any(|mask| {
            let mut diff = 0i128;
            for (i, &w) in self.weights.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    diff += w as i128;
                } else {
                    diff -= w as i128;
                }
            }
            diff == 0
        })
    }
}

fn bit_width(weights: &[u64]) -> u32 {
    weights
        .iter()
        .map(|&w| if w == 0 { 1 } else { 64 - w.leading_zeros() })
        .max()
        .unwrap_or(1)
}

/// Compiles a PARTITION instance over a field of characteristic `char_p`
/// (0 for the integer version). Components are the consistency gadgets
/// `x_0^2 - x_i^2` first, then (bounded variant) the binary-expansion
/// chains, then the weighted linear form last. The system is square and
/// homogeneous; nonzero roots exist iff some sign pattern kills the weighted
/// sum in the coefficient field.
///
/// In the bounded variant each weight `w_i = sum_j w_ij 2^j` gets chain
/// variables `W_ij` with rows `W_ip - w_ip x_0` and
/// `W_ij - (2 W_{i,j+1} + w_ij x_0)`, forcing `W_i0 = w_i x_0`, and the
/// linear form becomes `sum_i W_i0 x_i`; every coefficient is in `-2..=2`.
pub fn partition_to_system(
    instance: &PartitionInstance,
    bounded: bool,
    char_p: u64,
) -> Result<ReductionArtifact> {
    let ctx = if char_p == 0 {
        FieldContext::rational()
    } else {
        FieldContext::prime(char_p)?
    };
    let n = instance.weights.len();
    if n == 0 {
        return Err(Error::InvalidInput("no weights".into()));
    }
    if !bounded {
        let vars = n + 1;
        let x = |i: usize| MultiPoly::var(&ctx, vars, i);
        let mut components = Vec::with_capacity(vars);
        for i in 1..=n {
            components.push(&(&x(0) * &x(0)) - &(&x(i) * &x(i)));
        }
        let mut f0 = MultiPoly::zero(&ctx, vars);
        for (i, &w) in instance.weights.iter().enumerate() {
            f0 = &f0 + &x(i + 1).scale(&ctx.from_i64(w as i64));
        }
        components.push(f0);
        return Ok(ReductionArtifact {
            system: PolySystem::new(&ctx, vars, components)?,
            var_roles: (0..vars).map(VarRole::X).collect(),
            lambda: LambdaSpec::None,
            provenance: Provenance::Thm1 { bounded: false },
            n,
            s: n + 1,
        });
    }

    let p_bits = bit_width(&instance.weights); // bits 0..p_bits-1, top index p_bits-1
    let top = p_bits - 1;
    let w_coord = |item: usize, bit: u32| 1 + n + (item - 1) * p_bits as usize + bit as usize;
    let vars = 1 + n + n * p_bits as usize;
    let x = |i: usize| MultiPoly::var(&ctx, vars, i);
    let wv = |item: usize, bit: u32| MultiPoly::var(&ctx, vars, w_coord(item, bit));

    let mut components = Vec::with_capacity(vars);
    for i in 1..=n {
        components.push(&(&x(0) * &x(0)) - &(&x(i) * &x(i)));
    }
    for (idx, &w) in instance.weights.iter().enumerate() {
        let item = idx + 1;
        let bit_of = |j: u32| (w >> j & 1) as i64;
        // Top row: W_{i,top} - w_{i,top} x_0.
        components.push(&wv(item, top) - &x(0).scale(&ctx.from_i64(bit_of(top))));
        // Descending: W_ij - (2 W_{i,j+1} + w_ij x_0).
        for j in (0..top).rev() {
            let rhs =
                &wv(item, j + 1).scale(&ctx.from_i64(2)) + &x(0).scale(&ctx.from_i64(bit_of(j)));
            components.push(&wv(item, j) - &rhs);
        }
    }
    let mut f0 = MultiPoly::zero(&ctx, vars);
    for item in 1..=n {
        f0 = &f0 + &(&wv(item, 0) * &x(item));
    }
    components.push(f0);

    let mut var_roles: Vec<VarRole> = (0..=n).map(VarRole::X).collect();
    for item in 1..=n {
        for bit in 0..p_bits {
            var_roles.push(VarRole::W { item, bit });
        }
    }
    Ok(ReductionArtifact {
        system: PolySystem::new(&ctx, vars, components)?,
        var_roles,
        lambda: LambdaSpec::None,
        provenance: Provenance::Thm1 { bounded: true },
        n,
        s: vars,
    })
}

/// The explicit root determined by a sign pattern: `x_0 = 1`,
/// `x_i = signs[i-1]`, and in the bounded variant `W_ij` equal to the forced
/// chain values `sum_{l >= j} w_il 2^{l-j}`. The point is a root of the
/// system exactly when the signed weight sum vanishes in the field.
pub fn partition_witness(
    instance: &PartitionInstance,
    signs: &[bool],
    artifact: &ReductionArtifact,
) -> Result<Vec<FieldElement>> {
    if signs.len() != instance.weights.len() {
        return Err(Error::ArityMismatch {
            expected: instance.weights.len(),
            got: signs.len(),
        });
    }
    let ctx = artifact.system.context().clone();
    let point = artifact
        .var_roles
        .iter()
        .map(|role| match role {
            VarRole::X(0) => ctx.one(),
            VarRole::X(i) => {
                if signs[i - 1] {
                    ctx.one()
                } else {
                    ctx.from_i64(-1)
                }
            }
            VarRole::W { item, bit } => {
                let w = instance.weights[item - 1];
                ctx.from_i64((w >> bit) as i64)
            }
            _ => unreachable!("PARTITION artifacts only have X and W roles"),
        })
        .collect();
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resultant::{brute_roots, resultant_vanishes, ResultantOptions, Verdict};

    #[test]
    fn plain_small_instances() {
        // w = (1,1): root (1, 1, -1).
        let inst = PartitionInstance::new(vec![1, 1]);
        let art = partition_to_system(&inst, false, 0).unwrap();
        let ctx = art.system.context().clone();
        let root = vec![ctx.one(), ctx.one(), ctx.from_i64(-1)];
        assert!(art
            .system
            .evaluate_all(&root)
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
        assert!(art.system.is_square());
        assert!(art.system.is_homogeneous());
    }

    #[test]
    fn plain_unsat_over_f5() {
        // w = (1,2): |±1 ± 2| in {1, 3}, nonzero mod 5.
        let inst = PartitionInstance::new(vec![1, 2]);
        let art = partition_to_system(&inst, false, 5).unwrap();
        assert!(brute_roots(&art.system, 1, 100_000).unwrap().is_none());
        match resultant_vanishes(&art.system, &ResultantOptions::default()).unwrap() {
            Verdict::Nonzero { .. } => {}
            other => panic!("expected NONZERO, got {other:?}"),
        }
    }

    #[test]
    fn bounded_chain_unrolls_weight_five() {
        // w = (5) = 101_2: W_2 = x0, W_1 = 2x0, W_0 = 5x0 at x0 = 1.
        let inst = PartitionInstance::new(vec![5]);
        let art = partition_to_system(&inst, true, 0).unwrap();
        let w = partition_witness(&inst, &[true], &art).unwrap();
        let ctx = art.system.context().clone();
        // Chain values at the witness: locate the W coordinates.
        let values: Vec<(u32, FieldElement)> = art
            .var_roles
            .iter()
            .zip(&w)
            .filter_map(|(role, v)| match role {
                VarRole::W { bit, .. } => Some((*bit, v.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(values.len(), 3);
        for (bit, v) in values {
            let expect = ctx.from_i64((5u64 >> bit) as i64);
            assert_eq!(v, expect, "W at bit {bit}");
        }
        // The chain rows themselves vanish at the witness.
        let evals = art.system.evaluate_all(&w).unwrap();
        for (i, v) in evals.iter().enumerate().take(art.system.len() - 1) {
            assert!(v.is_zero(), "row {i}");
        }
    }

    #[test]
    fn bounded_coefficients_in_range() {
        for weights in [vec![7u64, 3], vec![5], vec![0, 6, 1]] {
            let inst = PartitionInstance::new(weights);
            let art = partition_to_system(&inst, true, 0).unwrap();
            assert!(art.system.is_square());
            assert!(art.system.is_homogeneous());
            for c in art.system.components() {
                for (m, coeff) in c.terms() {
                    assert!(m.total_degree() <= 2);
                    let r = coeff.as_rational().unwrap();
                    assert!(
                        r.denom() == &num_bigint::BigInt::from(1)
                            && r.numer().magnitude() <= &num_bigint::BigUint::from(2u32),
                        "coefficient {coeff} out of -2..=2"
                    );
                }
            }
        }
    }

    #[test]
    fn bounded_witness_is_root_iff_split() {
        for weights in [vec![1u64, 1], vec![1, 2], vec![3, 1, 2]] {
            let inst = PartitionInstance::new(weights.clone());
            let art = partition_to_system(&inst, true, 0).unwrap();
            let n = weights.len();
            let mut found = false;
            for mask in 0u64..1 << n {
                let signs: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                let w = partition_witness(&inst, &signs, &art).unwrap();
                let evals = art.system.evaluate_all(&w).unwrap();
                if evals.iter().all(|v| v.is_zero()) {
                    found = true;
                }
            }
            assert_eq!(found, inst.splits_evenly(), "weights {weights:?}");
        }
    }
}
