//! Reduction of homogeneous satisfiability to the affine problem: double
//! the variables and append `sum_i x_i y_i - 1`, which forces some `x_i` to
//! be nonzero.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::polysys::{Monomial, MultiPoly, PolySystem};

/// The affine system plus the witness mapping.
#[derive(Clone, Debug)]
pub struct Prop1Reduction {
    pub system: PolySystem,
    original_vars: usize,
}

impl Prop1Reduction {
    /// From a nonzero root `(a_1..a_n)` of the homogeneous input, the affine
    /// root `(a, 0, .., a_i^{-1}, .., 0)` with the inverse at the `y_i` slot
    /// of some nonzero coordinate.
    pub fn witness_from_root(&self, root: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if root.len() != self.original_vars {
            return Err(Error::ArityMismatch {
                expected: self.original_vars,
                got: root.len(),
            });
        }
        let i = root
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("root must be nonzero".into()))?;
        let ctx = root[i].context().clone();
        let mut point: Vec<FieldElement> = root.to_vec();
        point.extend((0..self.original_vars).map(|_| ctx.zero()));
        point[self.original_vars + i] = root[i].inverse()?;
        Ok(point)
    }
}

/// Appends fresh variables `y_1..y_n` and the polynomial
/// `sum_i x_i y_i - 1`; the output has an affine root iff the homogeneous
/// input has a nonzero one.
pub fn h2n_to_hn(f: &PolySystem) -> Result<Prop1Reduction> {
    for (i, c) in f.components().iter().enumerate() {
        if !c.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!(
                "component {i} mixes total degrees"
            )));
        }
    }
    let n = f.num_vars();
    let vars = 2 * n;
    let ctx = f.context().clone();
    let mut components: Vec<MultiPoly> =
        f.components().iter().map(|c| c.extend_vars(vars)).collect();
    let mut pairing = MultiPoly::constant(&ctx, vars, ctx.from_i64(-1));
    for i in 0..n {
        let mut e = vec![0u32; vars];
        e[i] = 1;
        e[n + i] = 1;
        pairing = &pairing + &MultiPoly::term(&ctx, Monomial::new(e), ctx.one());
    }
    components.push(pairing);
    Ok(Prop1Reduction {
        system: PolySystem::new(&ctx, vars, components)?,
        original_vars: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn q() -> FieldContext {
        FieldContext::rational()
    }

    #[test]
    fn difference_of_squares() {
        let ctx = q();
        let f = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![2, 0]), ctx.one()),
                (Monomial::new(vec![0, 2]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        let sys = PolySystem::new(&ctx, 2, vec![f]).unwrap();
        let red = h2n_to_hn(&sys).unwrap();
        assert_eq!(red.system.num_vars(), 4);
        assert_eq!(red.system.len(), 2);
        // From root (1,1): the point (1,1,1,0).
        let w = red.witness_from_root(&[ctx.one(), ctx.one()]).unwrap();
        assert_eq!(w, vec![ctx.one(), ctx.one(), ctx.one(), ctx.zero()]);
        assert!(red
            .system
            .evaluate_all(&w)
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
    }

    #[test]
    fn only_trivial_root_becomes_unsatisfiable() {
        // f = {x1, x2}: forcing x = 0 contradicts the pairing row.
        let ctx = q();
        let sys = PolySystem::new(
            &ctx,
            2,
            vec![MultiPoly::var(&ctx, 2, 0), MultiPoly::var(&ctx, 2, 1)],
        )
        .unwrap();
        let red = h2n_to_hn(&sys).unwrap();
        // At any point with x1 = x2 = 0 the last row evaluates to -1.
        let probe = vec![ctx.zero(), ctx.zero(), ctx.from_i64(4), ctx.from_i64(7)];
        let evals = red.system.evaluate_all(&probe).unwrap();
        assert!(evals.last().unwrap() == &ctx.from_i64(-1));
        assert!(red.witness_from_root(&[ctx.zero(), ctx.zero()]).is_err());
    }

    #[test]
    fn zero_polynomial_degenerate_case() {
        // f = {0}: the output is {0, x1 y1 - 1} with root (1, 1).
        let ctx = q();
        let sys = PolySystem::new(&ctx, 1, vec![MultiPoly::zero(&ctx, 1)]).unwrap();
        let red = h2n_to_hn(&sys).unwrap();
        let point = vec![ctx.one(), ctx.one()];
        assert!(red
            .system
            .evaluate_all(&point)
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let ctx = q();
        let f = MultiPoly::from_terms(
            &ctx,
            1,
            [
                (Monomial::new(vec![1]), ctx.one()),
                (Monomial::new(vec![0]), ctx.one()),
            ],
        )
        .unwrap();
        let sys = PolySystem::new(&ctx, 1, vec![f]).unwrap();
        assert!(matches!(h2n_to_hn(&sys), Err(Error::NotHomogeneous(_))));
    }
}
