//! Exact field arithmetic over `Q`, prime fields `F_p`, and extension fields
//! `F_p[X]/(P)` with `P` monic irreducible.
//!
//! Contexts are immutable and structurally compared; elements carry their
//! context and stay canonical (rationals in lowest terms, residues reduced
//! mod `p` and mod `P`). Everything here is a pure function of its inputs,
//! so values can be shared freely across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par;

/// Univariate polynomial helpers over `F_p`.
///
/// Coefficient vectors are in increasing degree and trimmed: no trailing
/// zeros, the zero polynomial is the empty vector.
pub(crate) mod modpoly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % p as u128) as u64
    }

    pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    /// Inverse of `x` mod prime `p` by extended Euclid.
    pub fn inv_mod(x: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, (x % p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "inverse of a non-unit");
        (t0.rem_euclid(p as i128)) as u64
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = add_mod(x, y, p);
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = sub_mod(x % p, y % p, p);
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    /// Reduces `a` modulo `b` in place. `b` must be nonzero.
    pub fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
        debug_assert!(!b.is_empty());
        let db = b.len() - 1;
        let lc_inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let factor = mul_mod(a[da], lc_inv, p);
            if factor != 0 {
                let shift = da - db;
                for (j, &bc) in b.iter().enumerate() {
                    a[shift + j] = sub_mod(a[shift + j], mul_mod(factor, bc, p), p);
                }
            }
            a.pop();
            trim(a);
            if a.len() <= db {
                break;
            }
        }
        trim(a);
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        rem_in_place(&mut r, b, p);
        r
    }

    /// True iff the monic `b` divides `a`. Scratch avoids reallocation in
    /// tight trial-division loops.
    pub fn divides_monic(b: &[u64], a: &[u64], p: u64, scratch: &mut Vec<u64>) -> bool {
        debug_assert_eq!(*b.last().unwrap(), 1);
        scratch.clear();
        scratch.extend_from_slice(a);
        let db = b.len() - 1;
        while scratch.len() > db {
            let da = scratch.len() - 1;
            let factor = scratch[da];
            if factor != 0 {
                let shift = da - db;
                for (j, &bc) in b.iter().enumerate() {
                    scratch[shift + j] = sub_mod(scratch[shift + j], mul_mod(factor, bc, p), p);
                }
            }
            scratch.pop();
            while scratch.last() == Some(&0) {
                scratch.pop();
            }
        }
        scratch.is_empty()
    }

    /// Extended gcd: returns `(g, u)` with `u*a ≡ g (mod m)`, `g = gcd(a, m)`
    /// made monic.
    pub fn ext_gcd_mod(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
        let (mut u0, mut u1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let qu1 = mul(&q, &u1, p);
            let nu = sub(&u0, &qu1, p);
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, nu);
        }
        // normalize g monic
        if let Some(&lc) = r0.last() {
            if lc != 1 {
                let s = inv_mod(lc, p);
                for c in r0.iter_mut() {
                    *c = mul_mod(*c, s, p);
                }
                for c in u0.iter_mut() {
                    *c = mul_mod(*c, s, p);
                }
            }
        }
        (r0, u0)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        debug_assert!(!b.is_empty());
        let db = b.len() - 1;
        let lc_inv = inv_mod(b[db], p);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let da = r.len() - 1;
            let factor = mul_mod(r[da], lc_inv, p);
            let shift = da - db;
            q[shift] = factor;
            if factor != 0 {
                for (j, &bc) in b.iter().enumerate() {
                    r[shift + j] = sub_mod(r[shift + j], mul_mod(factor, bc, p), p);
                }
            }
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    #[allow(dead_code)] // exercised from tests
    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = add_mod(mul_mod(acc, x, p), c, p);
        }
        acc
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Sparse decreasing-degree rendering used for moduli and residues, e.g.
/// `X^2+X+1`, `2X^3+4`, `0`.
pub fn residue_poly_string(coeffs: &[u64]) -> String {
    if coeffs.iter().all(|&c| c == 0) {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match k {
            0 => format!("{c}"),
            1 if c == 1 => "X".to_string(),
            1 => format!("{c}X"),
            _ if c == 1 => format!("X^{k}"),
            _ => format!("{c}X^{k}"),
        };
        parts.push(part);
    }
    parts.join("+")
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum CtxRepr {
    Rational,
    /// Prime field when `modulus` is `None`, extension field otherwise.
    /// The modulus is monic irreducible, stored in increasing degree.
    Modular {
        p: u64,
        modulus: Option<Vec<u64>>,
    },
}

/// An exact coefficient field: `Q`, `F_p`, or `F_p[X]/(P)`.
///
/// Equality is structural (same characteristic and same modulus
/// coefficients). Cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    repr: Arc<CtxRepr>,
}

impl FieldContext {
    pub fn rational() -> Self {
        FieldContext {
            repr: Arc::new(CtxRepr::Rational),
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldContext {
            repr: Arc::new(CtxRepr::Modular { p, modulus: None }),
        })
    }

    /// Builds `F_p[X]/(P)`. `P` is given in increasing degree, must reduce to
    /// a monic polynomial of degree >= 1, and must be irreducible over `F_p`.
    /// Verified moduli are remembered, so rebuilding a context is cheap.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        modpoly::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::BadModulus);
        }
        let key = (p, m.clone());
        if !VERIFIED_MODULI.lock().unwrap().contains(&key) {
            if !is_irreducible(&m, p)? {
                return Err(Error::ReducibleModulus { p });
            }
            VERIFIED_MODULI.lock().unwrap().insert(key);
        }
        Ok(FieldContext {
            repr: Arc::new(CtxRepr::Modular {
                p,
                modulus: Some(m),
            }),
        })
    }

    /// 0 for `Q`, otherwise the prime `p`.
    pub fn characteristic(&self) -> u64 {
        match &*self.repr {
            CtxRepr::Rational => 0,
            CtxRepr::Modular { p, .. } => *p,
        }
    }

    pub fn extension_modulus(&self) -> Option<&[u64]> {
        match &*self.repr {
            CtxRepr::Modular {
                modulus: Some(m), ..
            } => Some(m),
            _ => None,
        }
    }

    /// Degree of the field over its prime field (1 for `Q` and `F_p`).
    pub fn ext_degree(&self) -> usize {
        self.extension_modulus().map_or(1, |m| m.len() - 1)
    }

    pub fn is_rational(&self) -> bool {
        matches!(&*self.repr, CtxRepr::Rational)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(&*self.repr, CtxRepr::Modular { modulus: None, .. })
    }

    /// Number of elements; `None` for the infinite field `Q`.
    pub fn size(&self) -> Option<BigUint> {
        match &*self.repr {
            CtxRepr::Rational => None,
            CtxRepr::Modular { p, modulus } => {
                let deg = modulus.as_ref().map_or(1, |m| m.len() - 1);
                Some(BigUint::from(*p).pow(deg as u32))
            }
        }
    }

    /// True iff elements of `self` embed canonically into `other`
    /// (same field, or prime field into an extension of the same `p`).
    pub fn embeds_into(&self, other: &FieldContext) -> bool {
        if self == other {
            return true;
        }
        match (&*self.repr, &*other.repr) {
            (
                CtxRepr::Modular {
                    p: p1,
                    modulus: None,
                },
                CtxRepr::Modular {
                    p: p2,
                    modulus: Some(_),
                },
            ) => p1 == p2,
            _ => false,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.repr {
            CtxRepr::Rational => self.make_rat(BigRational::zero()),
            CtxRepr::Modular { .. } => self.make_mod(Vec::new()),
        }
    }

    pub fn one(&self) -> FieldElement {
        match &*self.repr {
            CtxRepr::Rational => self.make_rat(BigRational::one()),
            CtxRepr::Modular { .. } => self.make_mod(vec![1]),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match &*self.repr {
            CtxRepr::Rational => self.make_rat(BigRational::from(v.clone())),
            CtxRepr::Modular { p, .. } => {
                let r = v.mod_floor_u64(*p);
                self.make_mod(vec![r])
            }
        }
    }

    pub fn from_rational(&self, v: BigRational) -> Result<FieldElement> {
        match &*self.repr {
            CtxRepr::Rational => Ok(self.make_rat(v)),
            CtxRepr::Modular { p, .. } => {
                let num = v.numer().mod_floor_u64(*p);
                let den = v.denom().mod_floor_u64(*p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let r = modpoly::mul_mod(num, modpoly::inv_mod(den, *p), *p);
                Ok(self.make_mod(vec![r]))
            }
        }
    }

    /// Element with the given residue coefficients (increasing degree),
    /// reduced mod `p` and mod the extension modulus.
    pub fn element_from_residue(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        match &*self.repr {
            CtxRepr::Rational => Err(Error::ContextMismatch(
                "residue element in rational context".into(),
            )),
            CtxRepr::Modular { p, modulus } => {
                let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
                modpoly::trim(&mut c);
                if let Some(m) = modulus {
                    modpoly::rem_in_place(&mut c, m, *p);
                } else if c.len() > 1 {
                    return Err(Error::ArityMismatch {
                        expected: 1,
                        got: c.len(),
                    });
                }
                Ok(self.make_mod(c))
            }
        }
    }

    /// The class of `X` in an extension field.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.extension_modulus().is_none() {
            return Err(Error::ContextMismatch(
                "generator only exists in an extension context".into(),
            ));
        }
        self.element_from_residue(vec![0, 1])
    }

    /// Deterministic enumeration of a finite field: index `i` in base `p`
    /// digits gives the residue coefficients. Panics on `Q`.
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        match &*self.repr {
            CtxRepr::Rational => panic!("element_from_index on Q"),
            CtxRepr::Modular { p, .. } => {
                let mut coeffs = Vec::new();
                let mut k = index;
                while k > 0 {
                    coeffs.push(k % p);
                    k /= p;
                }
                self.make_mod(coeffs)
            }
        }
    }

    /// Uniform sample: over a finite field, uniform among all elements; over
    /// `Q`, a uniform integer in `0..65536`.
    pub fn sample_uniform<R: rand::Rng>(&self, rng: &mut R) -> FieldElement {
        match &*self.repr {
            CtxRepr::Rational => self.from_i64(rng.gen_range(0..65536)),
            CtxRepr::Modular { p, modulus } => {
                let deg = modulus.as_ref().map_or(1, |m| m.len() - 1);
                let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..*p)).collect();
                self.make_mod(coeffs)
            }
        }
    }

    fn make_rat(&self, v: BigRational) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            repr: ElemRepr::Rat(v),
        }
    }

    fn make_mod(&self, mut coeffs: Vec<u64>) -> FieldElement {
        modpoly::trim(&mut coeffs);
        FieldElement {
            ctx: self.clone(),
            repr: ElemRepr::Mod(coeffs),
        }
    }
}

impl fmt::Display for FieldContext {
    /// The textual field spec: `Q`, `F5`, `F2/X^2+X+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.repr {
            CtxRepr::Rational => write!(f, "Q"),
            CtxRepr::Modular { p, modulus: None } => write!(f, "F{p}"),
            CtxRepr::Modular {
                p,
                modulus: Some(m),
            } => write!(f, "F{p}/{}", residue_poly_string(m)),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ElemRepr {
    Rat(BigRational),
    /// Residue coefficients in increasing degree, trimmed; empty = zero.
    Mod(Vec<u64>),
}

/// An exact element of a [`FieldContext`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: FieldContext,
    repr: ElemRepr,
}

impl FieldElement {
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            ElemRepr::Rat(r) => r.is_zero(),
            ElemRepr::Mod(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            ElemRepr::Rat(r) => r.is_one(),
            ElemRepr::Mod(c) => c == &[1],
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            ElemRepr::Rat(r) => Some(r),
            ElemRepr::Mod(_) => None,
        }
    }

    /// Residue coefficients (increasing degree, trimmed) for modular elements.
    pub fn residue(&self) -> Option<&[u64]> {
        match &self.repr {
            ElemRepr::Rat(_) => None,
            ElemRepr::Mod(c) => Some(c),
        }
    }

    fn require_same_ctx(&self, rhs: &FieldElement) -> Result<()> {
        if self.ctx != rhs.ctx {
            return Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.ctx, rhs.ctx
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_ctx(rhs)?;
        Ok(match (&self.repr, &rhs.repr) {
            (ElemRepr::Rat(a), ElemRepr::Rat(b)) => self.ctx.make_rat(a + b),
            (ElemRepr::Mod(a), ElemRepr::Mod(b)) => {
                let p = self.ctx.characteristic();
                self.ctx.make_mod(modpoly::add(a, b, p))
            }
            _ => unreachable!("repr follows context"),
        })
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_ctx(rhs)?;
        Ok(match (&self.repr, &rhs.repr) {
            (ElemRepr::Rat(a), ElemRepr::Rat(b)) => self.ctx.make_rat(a - b),
            (ElemRepr::Mod(a), ElemRepr::Mod(b)) => {
                let p = self.ctx.characteristic();
                self.ctx.make_mod(modpoly::sub(a, b, p))
            }
            _ => unreachable!("repr follows context"),
        })
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_ctx(rhs)?;
        Ok(match (&self.repr, &rhs.repr) {
            (ElemRepr::Rat(a), ElemRepr::Rat(b)) => self.ctx.make_rat(a * b),
            (ElemRepr::Mod(a), ElemRepr::Mod(b)) => {
                let p = self.ctx.characteristic();
                let mut prod = modpoly::mul(a, b, p);
                if let Some(m) = self.ctx.extension_modulus() {
                    modpoly::rem_in_place(&mut prod, m, p);
                }
                self.ctx.make_mod(prod)
            }
            _ => unreachable!("repr follows context"),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            ElemRepr::Rat(r) => self.ctx.make_rat(r.recip()),
            ElemRepr::Mod(c) => {
                let p = self.ctx.characteristic();
                match self.ctx.extension_modulus() {
                    None => self.ctx.make_mod(vec![modpoly::inv_mod(c[0], p)]),
                    Some(m) => {
                        let (g, u) = modpoly::ext_gcd_mod(c, m, p);
                        debug_assert_eq!(g, vec![1], "modulus is irreducible");
                        let mut u = u;
                        modpoly::rem_in_place(&mut u, m, p);
                        self.ctx.make_mod(u)
                    }
                }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Embeds into `target` (identity, or prime field into an extension of
    /// the same characteristic).
    pub fn lift_to(&self, target: &FieldContext) -> Result<FieldElement> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        if !self.ctx.embeds_into(target) {
            return Err(Error::ContextMismatch(format!(
                "cannot lift {} into {}",
                self.ctx, target
            )));
        }
        match &self.repr {
            ElemRepr::Mod(c) => target.element_from_residue(c.clone()),
            ElemRepr::Rat(_) => unreachable!("Q embeds only into itself"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field context mismatch")
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        &self.ctx.zero() - self
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// `Q`: `n` or `n/d`; `F_p`: the canonical representative; extension:
    /// the residue polynomial in brackets, e.g. `[X+2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            ElemRepr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ElemRepr::Mod(c) => {
                if self.ctx.extension_modulus().is_some() {
                    write!(f, "[{}]", residue_poly_string(c))
                } else {
                    write!(f, "{}", c.first().copied().unwrap_or(0))
                }
            }
        }
    }
}

/// Irreducibility over `F_p` by trial division against every monic
/// polynomial of degree `<= deg(f)/2`. Desk scale by design.
pub fn is_irreducible(f: &[u64], p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let mut g = f.to_vec();
    modpoly::trim(&mut g);
    if g.len() < 2 || *g.last().unwrap() != 1 {
        return Err(Error::BadModulus);
    }
    let deg = g.len() - 1;
    for div_deg in 1..=deg / 2 {
        let count = p.pow(div_deg as u32);
        // Chunked so the parallel path can split the divisor space.
        let chunk = 1u64 << 12;
        let blocks = count.div_ceil(chunk);
        let g_ref = &g;
        let found = par::any_indexed(blocks, move |b| {
            let mut divisor = vec![0u64; div_deg + 1];
            divisor[div_deg] = 1;
            let mut scratch = Vec::with_capacity(g_ref.len());
            let lo = b * chunk;
            let hi = (lo + chunk).min(count);
            for k in lo..hi {
                let mut t = k;
                for slot in divisor.iter_mut().take(div_deg) {
                    *slot = t % p;
                    t /= p;
                }
                if modpoly::divides_monic(&divisor, g_ref, p, &mut scratch) {
                    return true;
                }
            }
            false
        });
        if found {
            return Ok(false);
        }
    }
    Ok(true)
}

type IrreducibleCache = Mutex<HashMap<(u64, usize), Vec<u64>>>;
type VerifiedModuli = Mutex<std::collections::HashSet<(u64, Vec<u64>)>>;

static IRREDUCIBLE_CACHE: LazyLock<IrreducibleCache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Moduli already proved irreducible, so context construction never repeats
/// the trial-division work.
static VERIFIED_MODULI: LazyLock<VerifiedModuli> =
    LazyLock::new(|| Mutex::new(std::collections::HashSet::new()));

/// First monic irreducible polynomial of degree `n` over `F_p` in the fixed
/// enumeration order: candidate `k` has coefficient of `X^j` equal to the
/// `j`-th base-`p` digit of `k`, plus the leading 1. Deterministic; results
/// are memoized.
pub fn find_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::BadModulus);
    }
    if let Some(hit) = IRREDUCIBLE_CACHE.lock().unwrap().get(&(p, n)) {
        return Ok(hit.clone());
    }
    let count = p
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidInput(format!("p^{n} overflows the enumeration")))?;
    for k in 0..count {
        let mut candidate = vec![0u64; n + 1];
        candidate[n] = 1;
        let mut t = k;
        for slot in candidate.iter_mut().take(n) {
            *slot = t % p;
            t /= p;
        }
        if is_irreducible(&candidate, p)? {
            IRREDUCIBLE_CACHE
                .lock()
                .unwrap()
                .insert((p, n), candidate.clone());
            VERIFIED_MODULI
                .lock()
                .unwrap()
                .insert((p, candidate.clone()));
            return Ok(candidate);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldContext {
        FieldContext::prime(5).unwrap()
    }

    fn gf4() -> FieldContext {
        FieldContext::extension(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn modular_add() {
        let ctx = f5();
        let a = ctx.from_i64(3);
        let b = ctx.from_i64(4);
        assert_eq!(&a + &b, ctx.from_i64(2));
    }

    #[test]
    fn rational_canonicalizes() {
        let ctx = FieldContext::rational();
        let half = ctx
            .from_rational(BigRational::new(BigInt::from(2), BigInt::from(4)))
            .unwrap();
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn gf4_generator_square() {
        // X * X = X + 1 in F_2[X]/(X^2+X+1), reducing X^2 by hand.
        let ctx = gf4();
        let x = ctx.generator().unwrap();
        let expect = ctx.element_from_residue(vec![1, 1]).unwrap();
        assert_eq!(&x * &x, expect);
    }

    #[test]
    fn context_equality_is_structural() {
        assert_eq!(f5(), FieldContext::prime(5).unwrap());
        assert_ne!(f5(), FieldContext::prime(7).unwrap());
        assert_eq!(gf4(), FieldContext::extension(2, vec![1, 1, 1]).unwrap());
        assert!(FieldContext::prime(2).unwrap().embeds_into(&gf4()));
        assert!(!f5().embeds_into(&gf4()));
    }

    #[test]
    fn extension_rejects_reducible_modulus() {
        // (X+1)^2 = X^2+1 over F_2.
        assert!(matches!(
            FieldContext::extension(2, vec![1, 0, 1]),
            Err(Error::ReducibleModulus { p: 2 })
        ));
    }

    #[test]
    fn division_by_zero() {
        let ctx = f5();
        assert_eq!(ctx.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn context_mismatch_checked() {
        let a = f5().from_i64(1);
        let b = FieldContext::prime(7).unwrap().from_i64(1);
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn irreducibility_basics() {
        assert!(!is_irreducible(&[1, 0, 1], 2).unwrap()); // X^2+1 = (X+1)^2
        assert!(is_irreducible(&[1, 1, 1], 2).unwrap()); // X^2+X+1
        assert!(is_irreducible(&[1, 0, 1], 3).unwrap()); // -1 non-residue mod 3
    }

    #[test]
    fn find_irreducible_fixed_outputs() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]); // X
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]); // X^2+X+1
                                                                    // First monic quadratic over F_3 in enumeration order with no root.
        let q3 = find_irreducible(3, 2).unwrap();
        assert_eq!(q3, vec![1, 0, 1]); // X^2+1
        for x in 0..3 {
            assert_ne!(modpoly::eval(&q3, x, 3), 0);
        }
    }

    #[test]
    fn find_irreducible_always_passes_check() {
        for p in [2u64, 3, 5] {
            for n in 1..=8usize {
                let f = find_irreducible(p, n).unwrap();
                assert_eq!(f.len(), n + 1);
                assert!(is_irreducible(&f, p).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn inverse_round_trip_all_contexts() {
        let contexts = [
            FieldContext::rational(),
            f5(),
            gf4(),
            FieldContext::extension(3, find_irreducible(3, 3).unwrap()).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for ctx in &contexts {
            for _ in 0..200 {
                let a = ctx.sample_uniform(&mut rng);
                if a.is_zero() {
                    continue;
                }
                assert!((&a * &a.inverse().unwrap()).is_one(), "in {ctx}");
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for (p, n) in [(2u64, 4usize), (3, 2), (5, 2)] {
            let ctx = FieldContext::extension(p, find_irreducible(p, n).unwrap()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            for _ in 0..100 {
                let a = ctx.sample_uniform(&mut rng);
                let b = ctx.sample_uniform(&mut rng);
                let lhs = (&a + &b).pow(p);
                let rhs = &a.pow(p) + &b.pow(p);
                assert_eq!(lhs, rhs, "Frobenius in {ctx}");
            }
        }
    }

    #[test]
    fn lift_prime_into_extension() {
        let f2 = FieldContext::prime(2).unwrap();
        let l = f2.from_i64(1).lift_to(&gf4()).unwrap();
        assert!(l.is_one());
        assert_eq!(l.context(), &gf4());
    }

    #[test]
    fn display_round_values() {
        assert_eq!(f5().from_i64(-1).to_string(), "4");
        let ctx = gf4();
        let x = ctx.generator().unwrap();
        assert_eq!(x.to_string(), "[X]");
        assert_eq!((&x * &x).to_string(), "[X+1]");
        assert_eq!(ctx.to_string(), "F2/X^2+X+1");
    }
}
