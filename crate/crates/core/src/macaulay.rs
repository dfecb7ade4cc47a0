//! Macaulay matrices of a square homogeneous system: dense construction and
//! a constant-space entry oracle, under any of the `n` cyclic variable
//! orderings.
//!
//! Rows and columns are both indexed by the ascending reverse-lex enumeration
//! of degree-`d` exponent tuples, independent of the variable ordering; the
//! ordering only decides which `f_i` a row selects (the order-minimal `i`
//! with `x_i^{d_i} | x^alpha`). The Sylvester cross-check in the test suite
//! validates this convention.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ordering;
use crate::par;
use crate::polysys::{Monomial, PolySystem};

/// A precedence list over the variables: `order[0]` is the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableOrdering {
    order: Vec<usize>,
}

impl VariableOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 0..{n}: {order:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(VariableOrdering { order })
    }

    pub fn identity(n: usize) -> Self {
        VariableOrdering {
            order: (0..n).collect(),
        }
    }

    /// Variables from smallest to largest precedence.
    pub fn precedence(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// The `n` rotations of `x_0 < x_1 < ... < x_{n-1}`: every ordering induced
/// by the cycle broken at one place.
pub fn cyclic_orderings(n: usize) -> Vec<VariableOrdering> {
    (0..n)
        .map(|start| VariableOrdering {
            order: (0..n).map(|i| (start + i) % n).collect(),
        })
        .collect()
}

/// A validated Macaulay matrix description: square homogeneous system,
/// variable ordering, system degree `d`, and dimension `|Mon_d|`.
#[derive(Clone, Debug)]
pub struct MacaulaySpec {
    system: PolySystem,
    ordering: VariableOrdering,
    degrees: Vec<u32>,
    d: u32,
    dim: BigUint,
}

impl MacaulaySpec {
    pub fn new(system: PolySystem, ordering: VariableOrdering) -> Result<Self> {
        let degrees = system.degrees()?;
        Self::with_degrees(system, degrees, ordering)
    }

    /// Like [`new`](Self::new) but with declared component degrees, which
    /// allows zero components (their rows are zero). Nonzero components must
    /// still be homogeneous of exactly the declared degree.
    pub fn with_degrees(
        system: PolySystem,
        degrees: Vec<u32>,
        ordering: VariableOrdering,
    ) -> Result<Self> {
        if !system.is_square() {
            return Err(Error::NotSquare {
                rows: system.len(),
                cols: system.num_vars(),
            });
        }
        if ordering.len() != system.num_vars() {
            return Err(Error::ArityMismatch {
                expected: system.num_vars(),
                got: ordering.len(),
            });
        }
        if degrees.len() != system.len() {
            return Err(Error::ArityMismatch {
                expected: system.len(),
                got: degrees.len(),
            });
        }
        for (i, (c, &d)) in system.components().iter().zip(&degrees).enumerate() {
            if d < 1 {
                return Err(Error::NotHomogeneous(format!(
                    "declared degree of component {i} must be >= 1"
                )));
            }
            match c.homogeneous_degree() {
                Some(crate::polysys::Homogeneity::Any) => {}
                Some(crate::polysys::Homogeneity::Degree(e)) if e == d => {}
                _ => {
                    return Err(Error::NotHomogeneous(format!(
                        "component {i} is not homogeneous of declared degree {d}"
                    )))
                }
            }
        }
        let d = 1 + degrees.iter().map(|&e| e - 1).sum::<u32>();
        let dim = ordering::slice_count(system.num_vars(), d);
        Ok(MacaulaySpec {
            system,
            ordering,
            degrees,
            d,
            dim,
        })
    }

    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn ordering(&self) -> &VariableOrdering {
        &self.ordering
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The system degree `d = 1 + sum(d_i - 1)`.
    pub fn system_degree(&self) -> u32 {
        self.d
    }

    /// `|Mon_d|`, the number of rows and columns.
    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    /// The component index `i` minimal under the ordering with
    /// `x_i^{d_i} | x^alpha`, together with the quotient `x^alpha / x_i^{d_i}`.
    ///
    /// The selector set is nonempty for every `|alpha| = d` by the choice of
    /// `d`; hitting the unreachable branch would mean a bug, not bad input.
    pub fn row_selector(&self, alpha: &Monomial) -> Result<(usize, Monomial)> {
        if alpha.total_degree() != self.d || alpha.arity() != self.system.num_vars() {
            return Err(Error::DegreeMismatch(format!(
                "row monomial must have arity {} and degree {}",
                self.system.num_vars(),
                self.d
            )));
        }
        for &var in self.ordering.precedence() {
            if alpha.exponents()[var] >= self.degrees[var] {
                let mut q = alpha.exponents().to_vec();
                q[var] -= self.degrees[var];
                return Ok((var, Monomial::new(q)));
            }
        }
        unreachable!("selector set is nonempty whenever |alpha| = d")
    }

    /// Entry `(row, col)` of the matrix, never materializing it: the
    /// coefficient of `x^beta / (x^alpha / x_i^{d_i})` in `f_i`.
    pub fn entry(&self, row: &BigUint, col: &BigUint) -> Result<FieldElement> {
        let n = self.system.num_vars();
        let check = |idx: &BigUint| -> Result<()> {
            if idx >= &self.dim {
                return Err(Error::IndexOutOfRange(format!(
                    "index {idx} >= dim {}",
                    self.dim
                )));
            }
            Ok(())
        };
        check(row)?;
        check(col)?;
        let alpha = ordering::unrank(n, self.d, row)?;
        let beta = ordering::unrank(n, self.d, col)?;
        let (i, quotient) = self.row_selector(&alpha)?;
        match beta.checked_div(&quotient) {
            None => Ok(self.system.context().zero()),
            Some(target) => Ok(self.system.components()[i].coefficient(&target)),
        }
    }

    fn dim_usize(&self, guard: usize) -> Result<usize> {
        match self.dim.to_usize() {
            Some(v) if v <= guard => Ok(v),
            _ => Err(Error::DimensionGuardExceeded {
                dim: self.dim.to_string(),
                guard,
            }),
        }
    }

    fn dense_row(&self, slice: &[Monomial], r: usize) -> Vec<FieldElement> {
        let n = self.system.num_vars();
        let zero = self.system.context().zero();
        let mut row = vec![zero; slice.len()];
        let (i, quotient) = self
            .row_selector(&slice[r])
            .expect("slice monomials have degree d");
        // The row is (x^alpha / x_i^{d_i}) * f_i: place each shifted term of
        // f_i at its column rank directly.
        for (m, c) in self.system.components()[i].terms() {
            let col_monomial = m.mul(&quotient);
            let col = ordering::rank(n, self.d, &col_monomial)
                .expect("shifted term has degree d")
                .to_usize()
                .expect("dim already checked against guard");
            row[col] = c.clone();
        }
        row
    }

    /// The full `dim x dim` matrix. With the `parallel` feature, rows are
    /// built on the thread pool once the dimension makes that worthwhile;
    /// output is deterministic either way.
    pub fn dense(&self, guard: usize) -> Result<Vec<Vec<FieldElement>>> {
        let dim = self.dim_usize(guard)?;
        if dim < 128 {
            return self.dense_seq(guard);
        }
        let slice = ordering::degree_slice(self.system.num_vars(), self.d);
        Ok(par::map_indexed(dim, |r| self.dense_row(&slice, r)))
    }

    /// Sequential twin of [`dense`](Self::dense), kept for benchmarking the
    /// parallel path against a fixed reference.
    pub fn dense_seq(&self, guard: usize) -> Result<Vec<Vec<FieldElement>>> {
        let dim = self.dim_usize(guard)?;
        let slice = ordering::degree_slice(self.system.num_vars(), self.d);
        Ok(par::map_indexed_seq(dim, |r| self.dense_row(&slice, r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::polysys::MultiPoly;
    use num_traits::Zero;

    fn q() -> FieldContext {
        FieldContext::rational()
    }

    /// a*x0 + b*x1 as a polynomial over Q.
    fn linear(a: i64, b: i64) -> MultiPoly {
        let ctx = q();
        MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![1, 0]), ctx.from_i64(a)),
                (Monomial::new(vec![0, 1]), ctx.from_i64(b)),
            ],
        )
        .unwrap()
    }

    fn pure_power(n: usize, var: usize, deg: u32) -> MultiPoly {
        let ctx = q();
        let mut e = vec![0u32; n];
        e[var] = deg;
        MultiPoly::term(&ctx, Monomial::new(e), ctx.one())
    }

    #[test]
    fn cyclic_orderings_examples() {
        let o2 = cyclic_orderings(2);
        assert_eq!(o2[0].precedence(), &[0, 1]);
        assert_eq!(o2[1].precedence(), &[1, 0]);

        let o3 = cyclic_orderings(3);
        assert_eq!(o3[1].precedence(), &[1, 2, 0]);
        assert_eq!(o3[2].precedence(), &[2, 0, 1]);

        assert_eq!(cyclic_orderings(1)[0].precedence(), &[0]);
    }

    #[test]
    fn row_selector_examples() {
        let ctx = q();
        // Degrees (2,2), d = 3.
        let sys = PolySystem::new(&ctx, 2, vec![pure_power(2, 0, 2), pure_power(2, 1, 2)]).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(2)).unwrap();
        assert_eq!(spec.system_degree(), 3);

        let (i, rem) = spec.row_selector(&Monomial::new(vec![2, 1])).unwrap();
        assert_eq!((i, rem.exponents().to_vec()), (0, vec![0, 1]));

        let (i, rem) = spec.row_selector(&Monomial::new(vec![1, 2])).unwrap();
        assert_eq!((i, rem.exponents().to_vec()), (1, vec![1, 0]));

        // Linear case, degrees (1,1): alpha = (0,1) selects the second form.
        let lin = PolySystem::new(&ctx, 2, vec![linear(1, 0), linear(0, 1)]).unwrap();
        let lin_spec = MacaulaySpec::new(lin, VariableOrdering::identity(2)).unwrap();
        let (i, rem) = lin_spec.row_selector(&Monomial::new(vec![0, 1])).unwrap();
        assert_eq!((i, rem.exponents().to_vec()), (1, vec![0, 0]));
    }

    #[test]
    fn linear_two_by_two_matrix() {
        // f1 = a x0 + b x1, f2 = c x0 + e x1: Mac is the coefficient matrix.
        let ctx = q();
        let (a, b, c, e) = (2i64, 3, 5, 7);
        let sys = PolySystem::new(&ctx, 2, vec![linear(a, b), linear(c, e)]).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(2)).unwrap();
        assert_eq!(spec.dim(), &BigUint::from(2u32));

        let at = |r: u32, c_: u32| spec.entry(&BigUint::from(r), &BigUint::from(c_)).unwrap();
        assert_eq!(at(0, 0), ctx.from_i64(a));
        assert_eq!(at(0, 1), ctx.from_i64(b));
        assert_eq!(at(1, 0), ctx.from_i64(c));
        assert_eq!(at(1, 1), ctx.from_i64(e));

        let dense = spec.dense(100).unwrap();
        for r in 0..2u32 {
            for c_ in 0..2u32 {
                assert_eq!(dense[r as usize][c_ as usize], at(r, c_));
            }
        }
    }

    #[test]
    fn unreachable_coefficient_is_zero() {
        let ctx = q();
        // f1 = x0^2, f2 = x1^2; the row for alpha = (3,0) is x0 * f1 = x0^3,
        // so any column other than x0^3 is zero.
        let sys = PolySystem::new(&ctx, 2, vec![pure_power(2, 0, 2), pure_power(2, 1, 2)]).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(2)).unwrap();
        let row0 = BigUint::zero(); // (3,0) is the smallest degree-3 tuple
        let col = crate::ordering::rank(2, 3, &Monomial::new(vec![2, 1])).unwrap();
        assert!(spec.entry(&row0, &col).unwrap().is_zero());
    }

    #[test]
    fn dense_guard() {
        let ctx = q();
        let sys = PolySystem::new(&ctx, 2, vec![pure_power(2, 0, 4), pure_power(2, 1, 4)]).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(2)).unwrap();
        assert!(matches!(
            spec.dense(3),
            Err(Error::DimensionGuardExceeded { .. })
        ));
    }

    #[test]
    fn row_reconstruction() {
        // Every dense row, recombined against column monomials, equals
        // (x^alpha / x_i^{d_i}) * f_i.
        let ctx = q();
        let f1 = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![2, 0]), ctx.from_i64(1)),
                (Monomial::new(vec![1, 1]), ctx.from_i64(-4)),
                (Monomial::new(vec![0, 2]), ctx.from_i64(3)),
            ],
        )
        .unwrap();
        let f2 = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![2, 0]), ctx.from_i64(5)),
                (Monomial::new(vec![0, 2]), ctx.from_i64(2)),
            ],
        )
        .unwrap();
        let sys = PolySystem::new(&ctx, 2, vec![f1, f2]).unwrap();
        for ordering in cyclic_orderings(2) {
            let spec = MacaulaySpec::new(sys.clone(), ordering).unwrap();
            let dense = spec.dense(100).unwrap();
            let slice = crate::ordering::degree_slice(2, spec.system_degree());
            for (r, alpha) in slice.iter().enumerate() {
                let (i, quotient) = spec.row_selector(alpha).unwrap();
                let expected = sys.components()[i].shift(&quotient);
                let mut rebuilt = MultiPoly::zero(&ctx, 2);
                for (c, beta) in slice.iter().enumerate() {
                    rebuilt = &rebuilt + &MultiPoly::term(&ctx, beta.clone(), dense[r][c].clone());
                }
                assert_eq!(rebuilt, expected, "row {r}");
            }
        }
    }

    #[test]
    fn linear_three_by_three_is_coefficient_matrix() {
        // Three generic linear forms: d = 1, Mac is the 3x3 coefficient
        // matrix and its determinant the usual one.
        let ctx = q();
        let rows = [[1i64, 2, 3], [0, 1, 4], [5, 6, 0]];
        let forms: Vec<MultiPoly> = rows
            .iter()
            .map(|r| {
                MultiPoly::from_terms(
                    &ctx,
                    3,
                    r.iter()
                        .enumerate()
                        .map(|(i, &c)| (Monomial::var(3, i), ctx.from_i64(c))),
                )
                .unwrap()
            })
            .collect();
        let sys = PolySystem::new(&ctx, 3, forms).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(3)).unwrap();
        assert_eq!(spec.system_degree(), 1);
        let dense = spec.dense(100).unwrap();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(dense[r][c], ctx.from_i64(v));
            }
        }
        let det = crate::resultant::determinant(&dense).unwrap();
        assert_eq!(det, ctx.from_i64(1)); // by cofactor expansion
    }

    #[test]
    fn dense_seq_matches_parallel() {
        let ctx = q();
        let sys = PolySystem::new(&ctx, 2, vec![pure_power(2, 0, 3), pure_power(2, 1, 2)]).unwrap();
        let spec = MacaulaySpec::new(sys, VariableOrdering::identity(2)).unwrap();
        assert_eq!(spec.dense(100).unwrap(), spec.dense_seq(100).unwrap());
    }
}
