//! Multivariate polynomials with exponent-tuple monomials over an exact
//! coefficient field, plus the homogeneity machinery the Macaulay and
//! reduction layers build on.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// An exponent tuple. The derived `Ord` (lexicographic on the exponent
/// vector) is only used for deterministic storage and printing; the graded
/// reverse lexicographic comparison lives in [`crate::ordering`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// `x_i` as a monomial.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), rhs.arity());
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// Entrywise difference; `None` when some exponent would go negative.
    pub fn checked_div(&self, rhs: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.arity(), rhs.arity());
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    fn padded(&self, num_vars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(num_vars, 0);
        Monomial(e)
    }
}

/// Homogeneity report: the zero polynomial is homogeneous of any degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Any,
    Degree(u32),
}

/// A sparse multivariate polynomial. No zero coefficients are stored and all
/// monomials have length `num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: FieldContext,
    num_vars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(ctx: &FieldContext, num_vars: usize) -> Self {
        assert!(num_vars >= 1, "polynomials need at least one variable");
        MultiPoly {
            ctx: ctx.clone(),
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldContext, num_vars: usize, c: FieldElement) -> Self {
        let mut f = Self::zero(ctx, num_vars);
        f.add_term(Monomial::constant(num_vars), c);
        f
    }

    /// `c * x^alpha`.
    pub fn term(ctx: &FieldContext, m: Monomial, c: FieldElement) -> Self {
        let mut f = Self::zero(ctx, m.arity());
        f.add_term(m, c);
        f
    }

    /// `x_i` with coefficient one.
    pub fn var(ctx: &FieldContext, num_vars: usize, i: usize) -> Self {
        Self::term(ctx, Monomial::var(num_vars, i), ctx.one())
    }

    pub fn from_terms<I>(ctx: &FieldContext, num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut f = Self::zero(ctx, num_vars);
        for (m, c) in terms {
            if m.arity() != num_vars {
                return Err(Error::ArityMismatch {
                    expected: num_vars,
                    got: m.arity(),
                });
            }
            if c.context() != ctx {
                return Err(Error::ContextMismatch(format!(
                    "coefficient in {}, polynomial over {}",
                    c.context(),
                    ctx
                )));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        debug_assert_eq!(m.arity(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^alpha` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ctx, self.num_vars);
        }
        let mut out = MultiPoly::zero(&self.ctx, self.num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Multiplies every term by `x^shift`.
    pub fn shift(&self, shift: &Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.mul(shift), a.clone());
        }
        out
    }

    /// Re-expresses the polynomial in a ring with more variables (the new
    /// variables simply do not occur).
    pub fn extend_vars(&self, num_vars: usize) -> MultiPoly {
        assert!(num_vars >= self.num_vars);
        let mut out = MultiPoly::zero(&self.ctx, num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.padded(num_vars), a.clone());
        }
        out
    }

    /// Maps all coefficients into `target` (see [`FieldElement::lift_to`]).
    pub fn lift_to(&self, target: &FieldContext) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target, self.num_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.lift_to(target)?);
        }
        Ok(out)
    }

    /// Exact evaluation. The point's coordinates must share one context that
    /// the polynomial's context embeds into (e.g. an `F_p` polynomial at an
    /// extension-field point).
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        let target = self.evaluation_target(point)?;
        let mut max_exp = vec![0u32; self.num_vars];
        self.bump_max_exponents(&mut max_exp);
        let powers = power_table(point, &max_exp, &target);
        self.evaluate_with_powers(&target, &powers)
    }

    fn evaluation_target(&self, point: &[FieldElement]) -> Result<FieldContext> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let target = point
            .first()
            .map(|e| e.context().clone())
            .unwrap_or_else(|| self.ctx.clone());
        for e in point {
            if e.context() != &target {
                return Err(Error::ContextMismatch(
                    "point coordinates live in different contexts".into(),
                ));
            }
        }
        if !self.ctx.embeds_into(&target) {
            return Err(Error::ContextMismatch(format!(
                "cannot evaluate {} polynomial at a {} point",
                self.ctx, target
            )));
        }
        Ok(target)
    }

    fn bump_max_exponents(&self, max_exp: &mut [u32]) {
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
    }

    fn evaluate_with_powers(
        &self,
        target: &FieldContext,
        powers: &[Vec<FieldElement>],
    ) -> Result<FieldElement> {
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = c.lift_to(target)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `Some(Degree(d))` when all terms share total degree `d`; the zero
    /// polynomial is homogeneous of any degree; `None` otherwise.
    pub fn homogeneous_degree(&self) -> Option<Homogeneity> {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => Some(Homogeneity::Any),
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Some(Homogeneity::Degree(d))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Homogenizes with `x_fresh`, which must not occur in any term. If
    /// `fresh >= num_vars` the ring is extended. Setting the fresh variable
    /// to one recovers the input.
    pub fn homogenize(&self, fresh: usize) -> Result<MultiPoly> {
        let base = if fresh >= self.num_vars {
            self.extend_vars(fresh + 1)
        } else {
            if self.terms.keys().any(|m| m.exponents()[fresh] > 0) {
                return Err(Error::VariableCollision(fresh));
            }
            self.clone()
        };
        let deg = match base.total_degree() {
            None => return Ok(base), // zero polynomial
            Some(d) => d,
        };
        let mut out = MultiPoly::zero(&base.ctx, base.num_vars);
        for (m, c) in &base.terms {
            let mut e = m.exponents().to_vec();
            e[fresh] = deg - m.total_degree();
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `x_var := value`, keeping the ambient ring.
    pub fn substitute(&self, var: usize, value: &FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            out.add_term(Monomial::new(exps), c * &value.pow(e as u64));
        }
        out
    }
}

fn power_table(
    point: &[FieldElement],
    max_exp: &[u32],
    target: &FieldContext,
) -> Vec<Vec<FieldElement>> {
    point
        .iter()
        .zip(max_exp)
        .map(|(x, &me)| {
            let mut row = Vec::with_capacity(me as usize + 1);
            row.push(target.one());
            for _ in 0..me {
                let next = row.last().unwrap() * x;
                row.push(next);
            }
            row
        })
        .collect()
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $combine:expr) => {
        impl std::ops::$trait for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                assert_eq!(self.ctx, rhs.ctx, "polynomial context mismatch");
                assert_eq!(self.num_vars, rhs.num_vars, "polynomial arity mismatch");
                let combine: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $combine;
                combine(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), c.clone());
    }
    out
});

poly_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), -c);
    }
    out
});

poly_binop!(Mul, mul, |a, b| {
    let mut out = MultiPoly::zero(&a.ctx, a.num_vars);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.add_term(ma.mul(mb), ca * cb);
        }
    }
    out
});

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ctx, self.num_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// `+`-separated signed terms `<coeff>*x<i>^<e>*...` in descending
    /// exponent-tuple order; the constant term is just the coefficient; the
    /// zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*x{i}^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// An ordered list of polynomials sharing one context and one variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    ctx: FieldContext,
    num_vars: usize,
    components: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(ctx: &FieldContext, num_vars: usize, components: Vec<MultiPoly>) -> Result<Self> {
        for c in &components {
            if c.context() != ctx {
                return Err(Error::ContextMismatch(format!(
                    "component over {}, system over {}",
                    c.context(),
                    ctx
                )));
            }
            if c.num_vars() != num_vars {
                return Err(Error::ArityMismatch {
                    expected: num_vars,
                    got: c.num_vars(),
                });
            }
        }
        Ok(PolySystem {
            ctx: ctx.clone(),
            num_vars,
            components,
        })
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.components.len() == self.num_vars
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.iter().all(MultiPoly::is_homogeneous)
    }

    /// Per-component homogeneous degrees; errors unless every component is
    /// homogeneous of a definite degree >= 1.
    pub fn degrees(&self) -> Result<Vec<u32>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| match c.homogeneous_degree() {
                Some(Homogeneity::Degree(d)) if d >= 1 => Ok(d),
                Some(Homogeneity::Degree(_)) => Err(Error::NotHomogeneous(format!(
                    "component {i} is a nonzero constant (degree 0)"
                ))),
                Some(Homogeneity::Any) => Err(Error::NotHomogeneous(format!(
                    "component {i} is the zero polynomial; its degree is undefined"
                ))),
                None => Err(Error::NotHomogeneous(format!(
                    "component {i} mixes total degrees"
                ))),
            })
            .collect()
    }

    /// `d = 1 + sum(d_i - 1)`.
    pub fn system_degree(&self) -> Result<u32> {
        let degrees = self.degrees()?;
        Ok(1 + degrees.iter().map(|&d| d - 1).sum::<u32>())
    }

    /// Evaluates every component, sharing one per-variable power table
    /// across the whole system.
    pub fn evaluate_all(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let first = match self.components.first() {
            None => return Ok(Vec::new()),
            Some(f) => f,
        };
        let target = first.evaluation_target(point)?;
        let mut max_exp = vec![0u32; self.num_vars];
        for c in &self.components {
            if c.context() != first.context() {
                return Err(Error::ContextMismatch(
                    "components live in different contexts".into(),
                ));
            }
            c.bump_max_exponents(&mut max_exp);
        }
        let powers = power_table(point, &max_exp, &target);
        self.components
            .iter()
            .map(|c| c.evaluate_with_powers(&target, &powers))
            .collect()
    }

    pub fn lift_to(&self, target: &FieldContext) -> Result<PolySystem> {
        let components = self
            .components
            .iter()
            .map(|c| c.lift_to(target))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(target, self.num_vars, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn q() -> FieldContext {
        FieldContext::rational()
    }

    /// x0^2 - x1^2 over Q.
    fn diff_of_squares() -> MultiPoly {
        let ctx = q();
        MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![2, 0]), ctx.from_i64(1)),
                (Monomial::new(vec![0, 2]), ctx.from_i64(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let ctx = q();
        let f = diff_of_squares();
        let one = ctx.from_i64(1);
        let minus_one = ctx.from_i64(-1);
        assert!(f.evaluate(&[one.clone(), one.clone()]).unwrap().is_zero());
        assert!(f
            .evaluate(&[one.clone(), minus_one.clone()])
            .unwrap()
            .is_zero());

        // x0 * (x1 + x0): vanishes when x1 = -x0 (the truth encoding).
        let x0 = MultiPoly::var(&ctx, 2, 0);
        let x1 = MultiPoly::var(&ctx, 2, 1);
        let gadget = &x0 * &(&x1 + &x0);
        assert!(gadget.evaluate(&[one, minus_one]).unwrap().is_zero());
    }

    #[test]
    fn evaluate_arity_mismatch() {
        let f = diff_of_squares();
        assert!(matches!(
            f.evaluate(&[q().from_i64(1)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity_examples() {
        let ctx = q();
        assert_eq!(
            diff_of_squares().homogeneous_degree(),
            Some(Homogeneity::Degree(2))
        );

        // x0*x2 - x^2 in three variables (x, x0, x2) is homogeneous deg 2.
        let f = MultiPoly::from_terms(
            &ctx,
            3,
            [
                (Monomial::new(vec![0, 1, 1]), ctx.from_i64(1)),
                (Monomial::new(vec![2, 0, 0]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        assert_eq!(f.homogeneous_degree(), Some(Homogeneity::Degree(2)));

        // x1*y1 + x2*y2 - 1 is not homogeneous.
        let g = MultiPoly::from_terms(
            &ctx,
            4,
            [
                (Monomial::new(vec![1, 0, 1, 0]), ctx.from_i64(1)),
                (Monomial::new(vec![0, 1, 0, 1]), ctx.from_i64(1)),
                (Monomial::new(vec![0, 0, 0, 0]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        assert_eq!(g.homogeneous_degree(), None);

        assert_eq!(
            MultiPoly::zero(&ctx, 2).homogeneous_degree(),
            Some(Homogeneity::Any)
        );
    }

    #[test]
    fn homogenize_examples() {
        let ctx = q();
        // x^3 - 1 with y -> x^3 - y^3
        let f = MultiPoly::from_terms(
            &ctx,
            1,
            [
                (Monomial::new(vec![3]), ctx.from_i64(1)),
                (Monomial::new(vec![0]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        let h = f.homogenize(1).unwrap();
        let expect = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![3, 0]), ctx.from_i64(1)),
                (Monomial::new(vec![0, 3]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        assert_eq!(h, expect);

        // x^2 + x + 1 with y -> x^2 + xy + y^2
        let g = MultiPoly::from_terms(
            &ctx,
            1,
            [
                (Monomial::new(vec![2]), ctx.from_i64(1)),
                (Monomial::new(vec![1]), ctx.from_i64(1)),
                (Monomial::new(vec![0]), ctx.from_i64(1)),
            ],
        )
        .unwrap();
        let hg = g.homogenize(1).unwrap();
        assert_eq!(hg.homogeneous_degree(), Some(Homogeneity::Degree(2)));
        assert_eq!(hg.coefficient(&Monomial::new(vec![1, 1])), ctx.from_i64(1));

        // x^6 - 1 with y -> x^6 - y^6
        let m6 = MultiPoly::from_terms(
            &ctx,
            1,
            [
                (Monomial::new(vec![6]), ctx.from_i64(1)),
                (Monomial::new(vec![0]), ctx.from_i64(-1)),
            ],
        )
        .unwrap();
        let h6 = m6.homogenize(1).unwrap();
        assert_eq!(h6.coefficient(&Monomial::new(vec![0, 6])), ctx.from_i64(-1));

        // Collision: homogenizing with a variable that occurs.
        assert!(matches!(
            diff_of_squares().homogenize(0),
            Err(Error::VariableCollision(0))
        ));
    }

    #[test]
    fn homogenize_then_substitute_one_is_identity() {
        let ctx = q();
        let f = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![2, 1]), ctx.from_i64(3)),
                (Monomial::new(vec![1, 0]), ctx.from_i64(-2)),
                (Monomial::new(vec![0, 0]), ctx.from_i64(7)),
            ],
        )
        .unwrap();
        let h = f.homogenize(2).unwrap();
        let back = h.substitute(2, &ctx.one());
        assert_eq!(back, f.extend_vars(3));
    }

    #[test]
    fn system_degree_examples() {
        let ctx = q();
        let lin = |i: usize| MultiPoly::var(&ctx, 2, i);
        let sys = PolySystem::new(&ctx, 2, vec![lin(0), lin(1)]).unwrap();
        assert_eq!(sys.system_degree().unwrap(), 1);

        let sq = |i: usize, n: usize| {
            MultiPoly::term(
                &ctx,
                Monomial::new({
                    let mut e = vec![0; n];
                    e[i] = 2;
                    e
                }),
                ctx.one(),
            )
        };
        let sys3 = PolySystem::new(&ctx, 3, vec![sq(0, 3), sq(1, 3), sq(2, 3)]).unwrap();
        assert_eq!(sys3.system_degree().unwrap(), 4);

        // Mixed degrees (2, 1, 1, 1) with n = 4 give d = 2.
        let mixed = PolySystem::new(
            &ctx,
            4,
            vec![
                sq(0, 4),
                lin_n(&ctx, 4, 1),
                lin_n(&ctx, 4, 2),
                lin_n(&ctx, 4, 3),
            ],
        )
        .unwrap();
        assert_eq!(mixed.system_degree().unwrap(), 2);
    }

    fn lin_n(ctx: &FieldContext, n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(ctx, n, i)
    }

    #[test]
    fn zero_component_degree_is_an_error() {
        let ctx = q();
        let sys = PolySystem::new(&ctx, 1, vec![MultiPoly::zero(&ctx, 1)]).unwrap();
        assert!(matches!(sys.system_degree(), Err(Error::NotHomogeneous(_))));
    }

    proptest! {
        #[test]
        fn evaluate_is_multiplicative(seed in 0u64..500) {
            let ctx = FieldContext::prime(7).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rand_poly = || {
                let terms: Vec<(Monomial, FieldElement)> = (0..4)
                    .map(|_| {
                        let m = Monomial::new(vec![
                            rand::Rng::gen_range(&mut rng, 0u32..3),
                            rand::Rng::gen_range(&mut rng, 0u32..3),
                        ]);
                        let c = ctx.sample_uniform(&mut rng);
                        (m, c)
                    })
                    .collect();
                MultiPoly::from_terms(&ctx, 2, terms).unwrap()
            };
            let f = rand_poly();
            let g = rand_poly();
            let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
            let point = vec![ctx.sample_uniform(&mut rng2), ctx.sample_uniform(&mut rng2)];
            let lhs = (&f * &g).evaluate(&point).unwrap();
            let rhs = &f.evaluate(&point).unwrap() * &g.evaluate(&point).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homogeneous_scaling_law(seed in 0u64..200) {
            let ctx = FieldContext::prime(11).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            // Random homogeneous cubic in 3 variables.
            let terms: Vec<(Monomial, FieldElement)> = (0..5)
                .map(|_| {
                    let a = rand::Rng::gen_range(&mut rng, 0u32..=3);
                    let b = rand::Rng::gen_range(&mut rng, 0u32..=(3 - a));
                    let m = Monomial::new(vec![a, b, 3 - a - b]);
                    (m, ctx.sample_uniform(&mut rng))
                })
                .collect();
            let f = MultiPoly::from_terms(&ctx, 3, terms).unwrap();
            let point: Vec<FieldElement> =
                (0..3).map(|_| ctx.sample_uniform(&mut rng)).collect();
            let c = ctx.sample_uniform(&mut rng);
            let scaled: Vec<FieldElement> = point.iter().map(|x| &c * x).collect();
            let lhs = f.evaluate(&scaled).unwrap();
            let rhs = &c.pow(3) * &f.evaluate(&point).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
