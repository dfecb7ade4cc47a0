//! Supersparse univariate encoding of 3-SAT: each variable gets a prime,
//! literals become cyclotomic-flavored polynomials, clauses take lcms, and
//! the conjunction is folded through `x^M sum_i A_i(x) A_i(1/x)`. The
//! formula is satisfiable iff the result shares a root with `x^M - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::reductions::CnfFormula;

/// Largest allowed encoding degree: `2M <= 2^16`.
pub const DEGREE_GUARD: u64 = 1 << 16;

/// A univariate integer polynomial stored by exponent (lacunary-friendly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<u64, BigInt>,
}

impl SparsePoly {
    pub fn from_terms<I: IntoIterator<Item = (u64, BigInt)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(e).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                map.remove(&e);
            }
        }
        SparsePoly { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &BigInt)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coefficient(&self, e: u64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_dense(&self) -> Vec<BigRational> {
        let deg = match self.degree() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![BigRational::zero(); deg + 1];
        for (&e, c) in &self.terms {
            out[e as usize] = BigRational::from(c.clone());
        }
        out
    }

    /// `x^M - 1`.
    pub fn x_pow_minus_one(m: u64) -> Self {
        SparsePoly::from_terms([(m, BigInt::one()), (0, -BigInt::one())])
    }
}

impl std::fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}*x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Dense univariate helpers over Q, trimmed representation.

fn dtrim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn dmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    dtrim(&mut out);
    out
}

fn ddivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    dtrim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let da = r.len() - 1;
        let factor = &r[da] / &lead;
        let shift = da - db;
        q[shift] = factor.clone();
        for (j, c) in b.iter().enumerate() {
            let t = &factor * c;
            r[shift + j] -= t;
        }
        r.pop();
        dtrim(&mut r);
    }
    dtrim(&mut q);
    (q, r)
}

/// Monic gcd by the Euclidean algorithm over Q.
fn dgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    dtrim(&mut r0);
    dtrim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = ddivrem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut() {
            *c = &*c / &lead;
        }
    }
    r0
}

fn dlcm(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let g = dgcd(a, b);
    let (q, r) = ddivrem(a, &g);
    debug_assert!(r.is_empty());
    dmul(&q, b)
}

/// The compiled encoding: the folded polynomial `P`, the companion
/// `x^M - 1`, the per-variable prime assignment, and `M` itself.
#[derive(Clone, Debug)]
pub struct PlaistedEncoding {
    pub poly: SparsePoly,
    pub companion: SparsePoly,
    /// `(variable index, prime)` for each variable appearing in the formula,
    /// in variable-index order: the first k primes.
    pub primes: Vec<(usize, u64)>,
    pub modulus: u64,
}

impl PlaistedEncoding {
    /// Satisfiability test: the gcd over Q of `P` and `x^M - 1` has positive
    /// degree iff the source formula is satisfiable. `P` is first reduced
    /// modulo `x^M - 1` by folding exponents, keeping the dense step small.
    pub fn satisfiable_via_gcd(&self) -> bool {
        self.gcd_with_companion_degree() > 0
    }

    pub fn gcd_with_companion_degree(&self) -> u64 {
        let m = self.modulus;
        let folded = SparsePoly::from_terms(self.poly.terms().map(|(&e, c)| (e % m, c.clone())));
        let companion = self.companion.to_dense();
        let g = dgcd(&companion, &folded.to_dense());
        g.len().saturating_sub(1) as u64
    }
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while out.len() < k {
        if (2..candidate).all(|d| !candidate.is_multiple_of(d)) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Plaisted's construction: positive literal `X_j` becomes
/// `x^{M/p_j} - 1`, negated `X_k` becomes `1 + x^{M/p_k} + ... +
/// x^{(p_k-1)M/p_k}`, a clause becomes the lcm of its literals, and the
/// conjunction is `P(x) = x^M sum_i A_i(x) A_i(1/x)`.
pub fn plaisted_encode(cnf: &CnfFormula) -> Result<PlaistedEncoding> {
    let mut appearing: Vec<usize> = cnf
        .clauses
        .iter()
        .flatten()
        .map(|&lit| lit.unsigned_abs() as usize)
        .collect();
    appearing.sort_unstable();
    appearing.dedup();
    let primes_list = first_primes(appearing.len());
    let primes: Vec<(usize, u64)> = appearing.iter().copied().zip(primes_list).collect();

    let mut m: u64 = 1;
    for &(_, p) in &primes {
        m = m.checked_mul(p).ok_or(Error::ModulusGuardExceeded {
            m: u64::MAX,
            guard: DEGREE_GUARD,
        })?;
    }
    if 2 * m > DEGREE_GUARD {
        return Err(Error::ModulusGuardExceeded {
            m,
            guard: DEGREE_GUARD,
        });
    }
    let prime_of = |var: usize| -> u64 {
        primes
            .iter()
            .find(|&&(v, _)| v == var)
            .map(|&(_, p)| p)
            .expect("literal variables appear")
    };

    // Dense literal polynomials (degree < M).
    let literal_poly = |lit: i32| -> Vec<BigRational> {
        let var = lit.unsigned_abs() as usize;
        let p = prime_of(var);
        let step = (m / p) as usize;
        if lit > 0 {
            // x^{M/p} - 1
            let mut v = vec![BigRational::zero(); step + 1];
            v[0] = -BigRational::one();
            v[step] = BigRational::one();
            v
        } else {
            // 1 + x^{M/p} + ... + x^{(p-1)M/p}
            let mut v = vec![BigRational::zero(); step * (p as usize - 1) + 1];
            for t in 0..p as usize {
                v[step * t] = BigRational::one();
            }
            v
        }
    };

    // P(x) = x^M sum_i A_i(x) A_i(1/x); with deg A_i <= M the factor
    // x^M A_i(1/x) is A_i reversed and shifted to degree M, so every
    // exponent stays within 0..=2M.
    let mut acc = vec![BigRational::zero(); 2 * m as usize + 1];
    for clause in &cnf.clauses {
        let mut a = literal_poly(clause[0]);
        for &lit in &clause[1..] {
            a = dlcm(&a, &literal_poly(lit));
        }
        debug_assert!(a.len() as u64 <= m + 1, "clause lcm divides x^M - 1");
        let mut reversed = vec![BigRational::zero(); m as usize + 1];
        for (j, c) in a.iter().enumerate() {
            reversed[m as usize - j] = c.clone();
        }
        let prod = dmul(&a, &reversed);
        for (e, c) in prod.into_iter().enumerate() {
            acc[e] += c;
        }
    }
    dtrim(&mut acc);

    let poly = SparsePoly::from_terms(acc.into_iter().enumerate().map(|(e, c)| {
        debug_assert!(c.denom().is_one(), "integer coefficients by construction");
        (e as u64, c.numer().clone())
    }));

    Ok(PlaistedEncoding {
        poly,
        companion: SparsePoly::x_pow_minus_one(m),
        primes,
        modulus: m,
    })
}
