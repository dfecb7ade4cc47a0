//! The negative fixture showing that naive repeated-squaring homogenization
//! creates roots at infinity.

use crate::field::FieldContext;
use crate::polysys::{Monomial, MultiPoly, PolySystem};

/// The ten-polynomial system obtained by applying the repeated-squaring
/// trick with homogenization to the pair `x^6 - 1` and
/// `-x^3 + x^4 + 2x^5 + 9x^6 + 2x^7 + x^8 - x^9`.
///
/// Coordinates: 0 is the homogenization variable `x_0`, 1 is `x`, and
/// `2..=9` are the power proxies `x_2..x_9` (standing for `x^2..x^9`).
/// Although the source pair has no common root, this system vanishes at the
/// point with `x_8 = x_9 = 1` and all other coordinates zero.
pub fn naive_squaring_fixture() -> PolySystem {
    let ctx = FieldContext::rational();
    let vars = 10usize;
    let term = |coeff: i64, exps: &[(usize, u32)]| {
        let mut e = vec![0u32; vars];
        for &(i, p) in exps {
            e[i] += p;
        }
        MultiPoly::term(&ctx, Monomial::new(e), ctx.from_i64(coeff))
    };
    let sum = |parts: Vec<MultiPoly>| {
        parts
            .into_iter()
            .fold(MultiPoly::zero(&ctx, vars), |acc, p| &acc + &p)
    };

    let components = vec![
        // -x3 + x4 + 2x5 + 9x6 + 2x7 + x8 - x9
        sum(vec![
            term(-1, &[(3, 1)]),
            term(1, &[(4, 1)]),
            term(2, &[(5, 1)]),
            term(9, &[(6, 1)]),
            term(2, &[(7, 1)]),
            term(1, &[(8, 1)]),
            term(-1, &[(9, 1)]),
        ]),
        // x6 - x0
        sum(vec![term(1, &[(6, 1)]), term(-1, &[(0, 1)])]),
        // x0 x2 - x^2
        sum(vec![term(1, &[(0, 1), (2, 1)]), term(-1, &[(1, 2)])]),
        // x0 x3 - x2 x
        sum(vec![
            term(1, &[(0, 1), (3, 1)]),
            term(-1, &[(2, 1), (1, 1)]),
        ]),
        // x0 x4 - x2^2
        sum(vec![term(1, &[(0, 1), (4, 1)]), term(-1, &[(2, 2)])]),
        // x0 x5 - x4 x
        sum(vec![
            term(1, &[(0, 1), (5, 1)]),
            term(-1, &[(4, 1), (1, 1)]),
        ]),
        // x0 x6 - x2 x4
        sum(vec![
            term(1, &[(0, 1), (6, 1)]),
            term(-1, &[(2, 1), (4, 1)]),
        ]),
        // x0 x7 - x4 x3
        sum(vec![
            term(1, &[(0, 1), (7, 1)]),
            term(-1, &[(4, 1), (3, 1)]),
        ]),
        // x0 x8 - x4^2
        sum(vec![term(1, &[(0, 1), (8, 1)]), term(-1, &[(4, 2)])]),
        // x0 x9 - x8 x
        sum(vec![
            term(1, &[(0, 1), (9, 1)]),
            term(-1, &[(8, 1), (1, 1)]),
        ]),
    ];
    PolySystem::new(&ctx, vars, components).expect("fixture is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_at_infinity() {
        let sys = naive_squaring_fixture();
        let ctx = sys.context().clone();
        let mut point = vec![ctx.zero(); 10];
        point[8] = ctx.one();
        point[9] = ctx.one();
        assert!(sys
            .evaluate_all(&point)
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
    }

    #[test]
    fn chain_point_fails_degree_nine_row() {
        // With x0 = 1 and the chain values for x = 1 (all proxies 1), every
        // squaring row vanishes but the degree-9 row evaluates to 13.
        let sys = naive_squaring_fixture();
        let ctx = sys.context().clone();
        let point = vec![ctx.one(); 10];
        let evals = sys.evaluate_all(&point).unwrap();
        assert_eq!(evals[0], ctx.from_i64(13));
        for v in &evals[1..] {
            assert!(v.is_zero());
        }
    }

    #[test]
    fn fixture_is_square_and_homogeneous() {
        let sys = naive_squaring_fixture();
        assert!(sys.is_square());
        assert!(sys.is_homogeneous());
        assert_eq!(sys.len(), 10);
    }
}
