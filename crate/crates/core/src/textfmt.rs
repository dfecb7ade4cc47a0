//! The system text format.
//!
//! ```text
//! ring <fieldspec> vars <k>
//! <one polynomial per line>
//! ```
//!
//! where `<fieldspec>` is `Q`, `F<p>`, or `F<p>/X^2+X+1` (modulus in
//! decreasing-degree sparse form) and each polynomial line is a `+`-separated
//! list of signed terms `<coeff>*x<i>^<e>*...` with the coefficient printed
//! exactly (rational `a/b`, residue polynomial in brackets for extension
//! fields). Lines starting with `#` are comments; writing then parsing is
//! the identity on both the text and the value.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::polysys::{Monomial, MultiPoly, PolySystem};

pub fn write_field_spec(ctx: &FieldContext) -> String {
    ctx.to_string()
}

pub fn parse_field_spec(s: &str) -> Result<FieldContext> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldContext::rational());
    }
    let rest = s
        .strip_prefix('F')
        .ok_or_else(|| Error::parse(0, format!("bad field spec `{s}`")))?;
    let (p_str, modulus) = match rest.split_once('/') {
        None => (rest, None),
        Some((p, m)) => (p, Some(m)),
    };
    let p: u64 = p_str
        .parse()
        .map_err(|_| Error::parse(0, format!("bad characteristic `{p_str}`")))?;
    match modulus {
        None => FieldContext::prime(p),
        Some(m) => FieldContext::extension(p, parse_residue_poly(m, p)?),
    }
}

/// Parses the sparse decreasing-degree form `2X^3+X+4` into increasing-degree
/// coefficients.
pub fn parse_residue_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty residue polynomial"));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    for raw in s.split('+') {
        let part = raw.trim();
        let (c, exp) = match part.find('X') {
            None => {
                let c: u64 = part
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad residue term `{part}`")))?;
                (c, 0usize)
            }
            Some(pos) => {
                let c = if pos == 0 {
                    1
                } else {
                    part[..pos]
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad residue term `{part}`")))?
                };
                let after = &part[pos + 1..];
                let e = if after.is_empty() {
                    1usize
                } else {
                    after
                        .strip_prefix('^')
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(0, format!("bad residue term `{part}`")))?
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = (coeffs[exp] + c) % p;
    }
    Ok(coeffs)
}

fn parse_coefficient(s: &str, ctx: &FieldContext) -> Result<FieldElement> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(0, format!("unterminated residue `{s}`")))?;
        if ctx.extension_modulus().is_none() {
            return Err(Error::parse(
                0,
                "bracketed residue coefficient outside an extension field",
            ));
        }
        let coeffs = parse_residue_poly(inner, ctx.characteristic())?;
        return ctx.element_from_residue(coeffs);
    }
    if ctx.is_rational() {
        let (num_s, den_s) = match s.split_once('/') {
            None => (s, "1"),
            Some((n, d)) => (n, d),
        };
        let num: BigInt = num_s
            .parse()
            .map_err(|_| Error::parse(0, format!("bad rational `{s}`")))?;
        let den: BigInt = den_s
            .parse()
            .map_err(|_| Error::parse(0, format!("bad rational `{s}`")))?;
        if den == BigInt::from(0) {
            return Err(Error::parse(0, "zero denominator"));
        }
        return ctx.from_rational(BigRational::new(num, den));
    }
    // Prime-field coefficient: a plain integer (negatives tolerated on input).
    let v: BigInt = s
        .parse()
        .map_err(|_| Error::parse(0, format!("bad coefficient `{s}`")))?;
    Ok(ctx.from_bigint(&v))
}

pub fn parse_element(s: &str, ctx: &FieldContext) -> Result<FieldElement> {
    parse_coefficient(s, ctx)
}

fn parse_term(s: &str, ctx: &FieldContext, num_vars: usize) -> Result<(Monomial, FieldElement)> {
    // Split on `*` but keep bracketed residues intact.
    let mut factors: Vec<&str> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            '*' if depth == 0 => {
                factors.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    factors.push(&s[start..]);

    let coeff = parse_coefficient(factors[0], ctx)?;
    let mut exps = vec![0u32; num_vars];
    for factor in &factors[1..] {
        let f = factor.trim();
        let rest = f
            .strip_prefix('x')
            .ok_or_else(|| Error::parse(0, format!("bad monomial factor `{f}`")))?;
        let (i_str, e_str) = rest
            .split_once('^')
            .ok_or_else(|| Error::parse(0, format!("bad monomial factor `{f}`")))?;
        let i: usize = i_str
            .parse()
            .map_err(|_| Error::parse(0, format!("bad variable index `{i_str}`")))?;
        let e: u32 = e_str
            .parse()
            .map_err(|_| Error::parse(0, format!("bad exponent `{e_str}`")))?;
        if i >= num_vars {
            return Err(Error::parse(
                0,
                format!("variable x{i} out of range (vars = {num_vars})"),
            ));
        }
        exps[i] += e;
    }
    Ok((Monomial::new(exps), coeff))
}

pub fn parse_polynomial(line: &str, ctx: &FieldContext, num_vars: usize) -> Result<MultiPoly> {
    let line = line.trim();
    if line == "0" {
        return Ok(MultiPoly::zero(ctx, num_vars));
    }
    // Split on top-level ` + ` only; signs live inside coefficients.
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = line.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth = depth.saturating_sub(1),
            b'+' if depth == 0 && i > 0 && bytes[i - 1] == b' ' => {
                terms.push(&line[start..i - 1]);
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    terms.push(&line[start..]);
    let parsed = terms
        .iter()
        .map(|t| parse_term(t.trim(), ctx, num_vars))
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(ctx, num_vars, parsed)
}

pub fn write_system(sys: &PolySystem) -> String {
    let mut out = format!("ring {} vars {}\n", sys.context(), sys.num_vars());
    for c in sys.components() {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out
}

/// Parses a system file; `#` lines are comments and are returned separately
/// so provenance headers survive a round trip.
pub fn parse_system_with_comments(text: &str) -> Result<(PolySystem, Vec<String>)> {
    let mut comments = Vec::new();
    let mut header: Option<(FieldContext, usize)> = None;
    let mut polys = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        match &header {
            None => {
                let mut it = line.split_whitespace();
                let (ring_kw, spec, vars_kw, k) = (it.next(), it.next(), it.next(), it.next());
                if ring_kw != Some("ring") || vars_kw != Some("vars") || it.next().is_some() {
                    return Err(Error::parse(
                        lineno + 1,
                        "expected header `ring <fieldspec> vars <k>`",
                    ));
                }
                let ctx = parse_field_spec(
                    spec.ok_or_else(|| Error::parse(lineno + 1, "missing field spec"))?,
                )
                .map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(lineno + 1, message),
                    other => other,
                })?;
                let num_vars: usize = k
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(lineno + 1, "bad variable count"))?;
                if num_vars == 0 {
                    return Err(Error::parse(lineno + 1, "variable count must be >= 1"));
                }
                header = Some((ctx, num_vars));
            }
            Some((ctx, num_vars)) => {
                let poly = parse_polynomial(line, ctx, *num_vars).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(lineno + 1, message),
                    other => other,
                })?;
                polys.push(poly);
            }
        }
    }
    let (ctx, num_vars) =
        header.ok_or_else(|| Error::parse(0, "missing `ring ... vars ...` header"))?;
    Ok((PolySystem::new(&ctx, num_vars, polys)?, comments))
}

pub fn parse_system(text: &str) -> Result<PolySystem> {
    parse_system_with_comments(text).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::find_irreducible;

    #[test]
    fn field_spec_round_trip() {
        for spec in ["Q", "F5", "F2/X^2+X+1", "F3/X^3+2X+1"] {
            let ctx = parse_field_spec(spec).unwrap();
            assert_eq!(write_field_spec(&ctx), spec);
        }
    }

    #[test]
    fn system_round_trip_rational() {
        let text = "ring Q vars 2\n1*x0^2 + -1*x1^2\n-3/2*x0^1*x1^1 + 7\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(write_system(&sys), text);
        // Parsing is insensitive to input term order; printing is canonical.
        let shuffled = "ring Q vars 2\n-1*x1^2 + 1*x0^2\n7 + -3/2*x0^1*x1^1\n";
        assert_eq!(write_system(&parse_system(shuffled).unwrap()), text);
    }

    #[test]
    fn system_round_trip_extension() {
        let p = find_irreducible(3, 2).unwrap();
        let ctx = FieldContext::extension(3, p).unwrap();
        let gen = ctx.generator().unwrap();
        let f = MultiPoly::from_terms(
            &ctx,
            2,
            [
                (Monomial::new(vec![1, 0]), gen.clone()),
                (Monomial::new(vec![0, 2]), &gen + &ctx.one()),
            ],
        )
        .unwrap();
        let sys = PolySystem::new(&ctx, 2, vec![f]).unwrap();
        let text = write_system(&sys);
        let back = parse_system(&text).unwrap();
        assert_eq!(back, sys);
        assert_eq!(write_system(&back), text);
    }

    #[test]
    fn comments_are_preserved_separately() {
        let text = "# via: thm1\nring F5 vars 1\n2*x0^1\n";
        let (sys, comments) = parse_system_with_comments(text).unwrap();
        assert_eq!(comments, vec!["via: thm1".to_string()]);
        assert_eq!(sys.len(), 1);
    }

    #[test]
    fn zero_polynomial_round_trip() {
        let text = "ring Q vars 1\n0\n";
        let sys = parse_system(text).unwrap();
        assert!(sys.components()[0].is_zero());
        assert_eq!(write_system(&sys), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "ring Q vars 2\n1*x5^2\n";
        match parse_system(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
