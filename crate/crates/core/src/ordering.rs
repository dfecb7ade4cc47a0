//! The reverse lexicographic order on degree-`d` exponent tuples, with exact
//! counting, ranking, and unranking.
//!
//! The order: `a < b` iff at the highest index where they differ, `a` is
//! smaller. Enumeration ascends from the smallest tuple, so for fixed last
//! coordinate `v` the block of tuples `(.., v)` comes before the block with
//! `v + 1`. Indices are 0-based everywhere (rows, columns, CLI).

use std::cmp::Ordering as CmpOrdering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polysys::Monomial;

/// `|A_d^k| = binomial(d + k - 1, d)`: tuples of length `k` summing to `d`.
pub fn slice_count(k: usize, d: u32) -> BigUint {
    debug_assert!(k >= 1);
    if let Some(v) = slice_count_u128(k, d) {
        return BigUint::from(v);
    }
    // Incremental product binomial(d+k-1, d) = prod_{j=1..d} (k-1+j)/j.
    let mut acc = BigUint::one();
    for j in 1..=d as u64 {
        acc *= BigUint::from(k as u64 - 1 + j);
        acc /= BigUint::from(j);
    }
    acc
}

/// Same incremental product in machine words; `None` on overflow. Desk-scale
/// Macaulay dimensions live far below `u128::MAX`, so the big-integer path
/// is only exercised by succinct-scale inputs.
fn slice_count_u128(k: usize, d: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for j in 1..=d as u128 {
        acc = acc.checked_mul(k as u128 - 1 + j)?;
        acc /= j;
    }
    Some(acc)
}

fn descending_slice_counts_u128(k: usize, d: u32) -> Option<Vec<u128>> {
    let mut out = Vec::with_capacity(d as usize + 1);
    let mut cur = slice_count_u128(k, d)?;
    out.push(cur);
    for e in (1..=d as u128).rev() {
        cur = cur.checked_mul(e)? / (e + k as u128 - 1);
        out.push(cur);
    }
    Some(out)
}

fn unrank_u128(n: usize, d: u32, idx: u128) -> Option<Vec<u32>> {
    let mut exps = vec![0u32; n];
    let mut remaining = idx;
    let mut cur_d = d;
    for pos in (1..n).rev() {
        let blocks = descending_slice_counts_u128(pos, cur_d)?;
        let mut v = 0u32;
        for &b in &blocks {
            if remaining < b {
                break;
            }
            remaining -= b;
            v += 1;
        }
        exps[pos] = v;
        cur_d -= v;
    }
    exps[0] = cur_d;
    Some(exps)
}

fn rank_u128(n: usize, d: u32, exps: &[u32]) -> Option<u128> {
    let mut idx: u128 = 0;
    let mut cur_d = d;
    for pos in (1..n).rev() {
        let v = exps[pos];
        let blocks = descending_slice_counts_u128(pos, cur_d)?;
        for &b in blocks.iter().take(v as usize) {
            idx = idx.checked_add(b)?;
        }
        cur_d -= v;
    }
    Some(idx)
}

/// Block sizes `|A_{d-v}^k|` for `v = 0..=d`, each derived from the previous
/// by one exact multiply/divide, so a full unranking costs a linear number
/// of arithmetic operations.
fn descending_slice_counts(k: usize, d: u32) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(d as usize + 1);
    let mut cur = slice_count(k, d);
    out.push(cur.clone());
    // |A_{e-1}^k| = |A_e^k| * e / (e + k - 1)
    for e in (1..=d as u64).rev() {
        cur = cur * BigUint::from(e) / BigUint::from(e + k as u64 - 1);
        out.push(cur.clone());
    }
    out
}

/// The `idx`-th smallest tuple of `A_d` (length `n`, sum `d`) under the
/// reverse lexicographic order.
pub fn unrank(n: usize, d: u32, idx: &BigUint) -> Result<Monomial> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("no variables".into()));
    }
    let total = slice_count(n, d);
    if idx >= &total {
        return Err(Error::IndexOutOfRange(format!(
            "index {idx} >= |A_d| = {total}"
        )));
    }
    if let (Some(small), Some(_)) = (idx.to_u128(), slice_count_u128(n, d)) {
        if let Some(exps) = unrank_u128(n, d, small) {
            return Ok(Monomial::new(exps));
        }
    }
    let mut exps = vec![0u32; n];
    let mut remaining = idx.clone();
    let mut cur_d = d;
    for pos in (1..n).rev() {
        // Find the last-coordinate value v: blocks of size |A_{cur_d - v}^pos|
        // in ascending v order.
        let blocks = descending_slice_counts(pos, cur_d);
        let mut v = 0u32;
        for b in &blocks {
            if &remaining < b {
                break;
            }
            remaining -= b;
            v += 1;
        }
        exps[pos] = v;
        cur_d -= v;
    }
    debug_assert!(remaining.is_zero());
    exps[0] = cur_d;
    Ok(Monomial::new(exps))
}

/// Inverse of [`unrank`].
pub fn rank(n: usize, d: u32, m: &Monomial) -> Result<BigUint> {
    if m.arity() != n {
        return Err(Error::DegreeMismatch(format!("arity {} != {n}", m.arity())));
    }
    if m.total_degree() != d {
        return Err(Error::DegreeMismatch(format!(
            "|alpha| = {} != {d}",
            m.total_degree()
        )));
    }
    if let Some(v) = rank_u128(n, d, m.exponents()) {
        return Ok(BigUint::from(v));
    }
    let mut idx = BigUint::zero();
    let mut cur_d = d;
    for pos in (1..n).rev() {
        let v = m.exponents()[pos];
        let blocks = descending_slice_counts(pos, cur_d);
        for b in blocks.iter().take(v as usize) {
            idx += b;
        }
        cur_d -= v;
    }
    Ok(idx)
}

/// The comparison rule: the highest differing coordinate decides.
pub fn reverse_lex_cmp(a: &Monomial, b: &Monomial) -> CmpOrdering {
    debug_assert_eq!(a.arity(), b.arity());
    for i in (0..a.arity()).rev() {
        let (x, y) = (a.exponents()[i], b.exponents()[i]);
        if x != y {
            return x.cmp(&y);
        }
    }
    CmpOrdering::Equal
}

/// All of `A_d` in ascending reverse-lex order. Intended for dense,
/// guard-checked uses; the count must fit in memory.
pub fn degree_slice(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, out: &mut Vec<Vec<u32>>, suffix: &mut Vec<u32>) {
        if n == 1 {
            let mut t = vec![d];
            t.extend(suffix.iter().rev());
            out.push(t);
            return;
        }
        for v in 0..=d {
            suffix.push(v);
            go(n - 1, d - v, out, suffix);
            suffix.pop();
        }
    }
    let mut tuples = Vec::new();
    go(n, d, &mut tuples, &mut Vec::new());
    tuples.into_iter().map(Monomial::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, d: u32, i: u64) -> Vec<u32> {
        unrank(n, d, &BigUint::from(i))
            .unwrap()
            .exponents()
            .to_vec()
    }

    #[test]
    fn slice_counts() {
        assert_eq!(slice_count(1, 5), BigUint::from(1u32));
        assert_eq!(slice_count(2, 2), BigUint::from(3u32));
        assert_eq!(slice_count(3, 4), BigUint::from(15u32)); // binomial(6,4)
    }

    #[test]
    fn unrank_examples() {
        // Explicit sort of {(2,0),(1,1),(0,2)} under the quoted order.
        assert_eq!(u(2, 2, 0), vec![2, 0]);
        assert_eq!(u(2, 2, 1), vec![1, 1]);
        assert_eq!(u(2, 2, 2), vec![0, 2]);
        // (1,0,0) < (0,1,0) < (0,0,1).
        assert_eq!(u(3, 1, 1), vec![0, 1, 0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            rank(2, 2, &Monomial::new(vec![1, 1])).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            rank(1, 7, &Monomial::new(vec![7])).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(
            rank(3, 2, &Monomial::new(vec![0, 0, 2])).unwrap(),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn rank_rejects_wrong_degree() {
        assert!(rank(2, 3, &Monomial::new(vec![1, 1])).is_err());
        assert!(rank(3, 2, &Monomial::new(vec![1, 1])).is_err());
    }

    #[test]
    fn unrank_out_of_range() {
        assert!(unrank(2, 2, &BigUint::from(3u32)).is_err());
    }

    #[test]
    fn bijection_and_monotonicity_exhaustive() {
        for n in 1..=5usize {
            for d in 0..=6u32 {
                let total = slice_count(n, d);
                let total_usize: u64 = total.to_u64_digits().first().copied().unwrap_or(0);
                let slice = degree_slice(n, d);
                assert_eq!(slice.len() as u64, total_usize);

                // Oracle: explicit sort under the quoted comparison rule.
                let mut sorted = slice.clone();
                sorted.sort_by(reverse_lex_cmp);
                assert_eq!(sorted, slice, "enumeration already ascending n={n} d={d}");

                let mut prev: Option<Monomial> = None;
                for i in 0..total_usize {
                    let m = unrank(n, d, &BigUint::from(i)).unwrap();
                    assert_eq!(m, slice[i as usize]);
                    assert_eq!(rank(n, d, &m).unwrap(), BigUint::from(i));
                    if let Some(p) = prev {
                        assert_eq!(reverse_lex_cmp(&p, &m), CmpOrdering::Less);
                    }
                    prev = Some(m);
                }
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        for n in 2..=5usize {
            for d in 0..=6u32 {
                let mut sum = BigUint::zero();
                for v in 0..=d {
                    sum += slice_count(n - 1, d - v);
                }
                assert_eq!(sum, slice_count(n, d));
            }
        }
    }
}
