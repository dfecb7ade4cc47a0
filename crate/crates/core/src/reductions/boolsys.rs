//! BOOLSYS instances, the 3-SAT front end, and the homogeneous polynomial
//! encoding in every characteristic.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::polysys::{MultiPoly, PolySystem};
use crate::reductions::{LambdaSpec, Provenance, ReductionArtifact, VarRole};

/// One BOOLSYS equation; variable indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolEquation {
    /// `X_i = True`
    True(usize),
    /// `X_i = not X_j`
    Not(usize, usize),
    /// `X_i = X_j or X_k`
    Or(usize, usize, usize),
}

impl BoolEquation {
    fn vars(&self) -> Vec<usize> {
        match *self {
            BoolEquation::True(i) => vec![i],
            BoolEquation::Not(i, j) => vec![i, j],
            BoolEquation::Or(i, j, k) => vec![i, j, k],
        }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        let a = |i: usize| assignment[i - 1];
        match *self {
            BoolEquation::True(i) => a(i),
            BoolEquation::Not(i, j) => a(i) == !a(j),
            BoolEquation::Or(i, j, k) => a(i) == (a(j) || a(k)),
        }
    }
}

/// A system of boolean equations over `X_1..X_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolSys {
    pub num_vars: usize,
    pub equations: Vec<BoolEquation>,
}

impl BoolSys {
    pub fn new(num_vars: usize, equations: Vec<BoolEquation>) -> Result<Self> {
        for (idx, eq) in equations.iter().enumerate() {
            for v in eq.vars() {
                if v == 0 || v > num_vars {
                    return Err(Error::InvalidInput(format!(
                        "equation {idx}: variable X_{v} out of range 1..{num_vars}"
                    )));
                }
            }
        }
        Ok(BoolSys {
            num_vars,
            equations,
        })
    }

    /// Index of the first violated equation, if any.
    pub fn check(&self, assignment: &[bool]) -> Option<usize> {
        self.equations.iter().position(|eq| !eq.holds(assignment))
    }

    /// Exhaustive satisfiability check; only sensible for small instances.
    pub fn brute_satisfiable(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "exhaustive search is desk scale");
        for mask in 0u64..(1 << self.num_vars) {
            let assignment: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            if self.check(&assignment).is_none() {
                return Some(assignment);
            }
        }
        None
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for eq in &self.equations {
            let line = match *eq {
                BoolEquation::True(i) => format!("x{i} = true"),
                BoolEquation::Not(i, j) => format!("x{i} = not x{j}"),
                BoolEquation::Or(i, j, k) => format!("x{i} = or x{j} x{k}"),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Parses the BOOLSYS text format, one equation per line:
/// `xi = true | xi = not xj | xi = or xj xk`. The variable count is the
/// largest index mentioned.
pub fn parse_boolsys(text: &str) -> Result<BoolSys> {
    fn var_token(tok: &str, line: usize) -> Result<usize> {
        tok.strip_prefix('x')
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| Error::parse(line, format!("bad variable `{tok}`")))
    }
    let mut equations = Vec::new();
    let mut max_var = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let eq = match tokens.as_slice() {
            [lhs, "=", "true"] => BoolEquation::True(var_token(lhs, lineno + 1)?),
            [lhs, "=", "not", rhs] => {
                BoolEquation::Not(var_token(lhs, lineno + 1)?, var_token(rhs, lineno + 1)?)
            }
            [lhs, "=", "or", a, b] => BoolEquation::Or(
                var_token(lhs, lineno + 1)?,
                var_token(a, lineno + 1)?,
                var_token(b, lineno + 1)?,
            ),
            _ => return Err(Error::parse(lineno + 1, format!("bad equation `{line}`"))),
        };
        for v in eq.vars() {
            max_var = max_var.max(v);
        }
        equations.push(eq);
    }
    BoolSys::new(max_var, equations)
}

/// A CNF formula with clauses of at most three literals (nonzero signed
/// variable indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (idx, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInput(format!("clause {idx} is empty")));
            }
            if clause.len() > 3 {
                return Err(Error::InvalidInput(format!(
                    "clause {idx} has {} literals; at most 3 allowed",
                    clause.len()
                )));
            }
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > num_vars {
                    return Err(Error::InvalidInput(format!(
                        "clause {idx}: literal {lit} out of range"
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    assignment[v]
                } else {
                    !assignment[v]
                }
            })
        })
    }

    pub fn brute_satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "exhaustive search is desk scale");
        for mask in 0u64..(1 << self.num_vars) {
            let assignment: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            if self.satisfied_by(&assignment) {
                return Some(assignment);
            }
        }
        None
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&format!("{lit} "));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Standard DIMACS CNF.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            match tokens.as_slice() {
                ["cnf", v, c] => {
                    let v: usize = v
                        .parse()
                        .map_err(|_| Error::parse(lineno + 1, "bad variable count"))?;
                    let c: usize = c
                        .parse()
                        .map_err(|_| Error::parse(lineno + 1, "bad clause count"))?;
                    header = Some((v, c));
                }
                _ => {
                    return Err(Error::parse(
                        lineno + 1,
                        "expected `p cnf <vars> <clauses>`",
                    ))
                }
            }
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(lineno + 1, "clause before `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno + 1, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let (num_vars, _declared) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
    CnfFormula::new(num_vars, clauses)
}

/// How each introduced BOOLSYS variable is defined, used to extend a CNF
/// assignment to the full variable set.
#[derive(Clone, Debug)]
enum VarDef {
    NotOf(usize),
    OrOf(usize, usize),
    ConstTrue,
}

/// Output of [`sat_to_boolsys`]: the equation system plus the assignment
/// mapper.
#[derive(Clone, Debug)]
pub struct SatToBoolsys {
    pub boolsys: BoolSys,
    cnf_vars: usize,
    defs: Vec<(usize, VarDef)>,
}

impl SatToBoolsys {
    /// Extends a satisfying CNF assignment to all BOOLSYS variables.
    pub fn map_assignment(&self, cnf_assignment: &[bool]) -> Vec<bool> {
        let mut full = vec![false; self.boolsys.num_vars];
        full[..self.cnf_vars].copy_from_slice(cnf_assignment);
        for (var, def) in &self.defs {
            full[var - 1] = match *def {
                VarDef::NotOf(u) => !full[u - 1],
                VarDef::OrOf(a, b) => full[a - 1] || full[b - 1],
                VarDef::ConstTrue => true,
            };
        }
        full
    }
}

struct BoolsysBuilder {
    num_vars: usize,
    equations: Vec<BoolEquation>,
    defs: Vec<(usize, VarDef)>,
    // negation_of[v] = w with X_w = not X_v (and vice versa), for reuse.
    negation_of: HashMap<usize, usize>,
}

impl BoolsysBuilder {
    fn fresh(&mut self, def: VarDef) -> usize {
        self.num_vars += 1;
        let v = self.num_vars;
        match def {
            VarDef::NotOf(u) => self.equations.push(BoolEquation::Not(v, u)),
            VarDef::OrOf(a, b) => self.equations.push(BoolEquation::Or(v, a, b)),
            VarDef::ConstTrue => {}
        }
        self.defs.push((v, def));
        v
    }

    fn negate(&mut self, u: usize) -> usize {
        if let Some(&w) = self.negation_of.get(&u) {
            return w;
        }
        let w = self.fresh(VarDef::NotOf(u));
        self.negation_of.insert(u, w);
        self.negation_of.insert(w, u);
        w
    }
}

/// Reduction from 3-SAT: chained ORs per clause, clause outputs combined by
/// De Morgan ANDs (with negation variables reused where they already exist),
/// and the final conjunction variable asserted TRUE.
pub fn sat_to_boolsys(cnf: &CnfFormula) -> SatToBoolsys {
    let mut b = BoolsysBuilder {
        num_vars: cnf.num_vars,
        equations: Vec::new(),
        defs: Vec::new(),
        negation_of: HashMap::new(),
    };

    let mut clause_outputs = Vec::new();
    for clause in &cnf.clauses {
        let mut lit_vars = Vec::new();
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            if lit > 0 {
                lit_vars.push(v);
            } else {
                lit_vars.push(b.negate(v));
            }
        }
        let mut out = lit_vars[0];
        for &next in &lit_vars[1..] {
            out = b.fresh(VarDef::OrOf(out, next));
        }
        clause_outputs.push(out);
    }

    let conj = match clause_outputs.split_first() {
        None => {
            // No clauses: trivially satisfiable; assert one fresh variable.
            b.fresh(VarDef::ConstTrue)
        }
        Some((&first, rest)) => {
            let mut acc = first;
            for &c in rest {
                // acc AND c = not (not acc or not c)
                let na = b.negate(acc);
                let nc = b.negate(c);
                let u = b.fresh(VarDef::OrOf(na, nc));
                let out = b.fresh(VarDef::NotOf(u));
                b.negation_of.insert(u, out);
                b.negation_of.insert(out, u);
                acc = out;
            }
            acc
        }
    };
    b.equations.push(BoolEquation::True(conj));

    SatToBoolsys {
        boolsys: BoolSys::new(b.num_vars, b.equations).expect("indices in range by construction"),
        cnf_vars: cnf.num_vars,
        defs: b.defs,
    }
}

fn x_var(ctx: &FieldContext, num_vars: usize, i: usize) -> MultiPoly {
    MultiPoly::var(ctx, num_vars, i)
}

/// The homogeneous encoding of a BOOLSYS instance over a field of
/// characteristic `char` (0 for `Q`): the per-variable consistency gadgets
/// first, then one degree-2 gadget per equation in input order. The system
/// has a nonzero root over the closure iff the instance is satisfiable;
/// truth is `a_i = -a_0` for characteristic != 2 and `a_i = a_0` (falseness
/// `a_i = 0`) in characteristic 2.
pub fn boolsys_to_h2n(b: &BoolSys, char_p: u64) -> Result<ReductionArtifact> {
    let ctx = if char_p == 0 {
        FieldContext::rational()
    } else {
        FieldContext::prime(char_p)?
    };
    let n = b.num_vars;
    let vars = n + 1;
    let x = |i: usize| x_var(&ctx, vars, i);
    let mut components = Vec::with_capacity(n + b.equations.len());
    let char2 = char_p == 2;
    for i in 1..=n {
        let gadget = if char2 {
            // x0*xi - xi^2
            &(&x(0) * &x(i)) - &(&x(i) * &x(i))
        } else {
            // x0^2 - xi^2
            &(&x(0) * &x(0)) - &(&x(i) * &x(i))
        };
        components.push(gadget);
    }
    for eq in &b.equations {
        let gadget = match (*eq, char2) {
            (BoolEquation::True(i), _) => &x(0) * &(&x(i) + &x(0)),
            (BoolEquation::Not(i, j), false) => &x(0) * &(&x(i) + &x(j)),
            (BoolEquation::Not(i, j), true) => &x(0) * &(&(&x(i) + &x(j)) + &x(0)),
            (BoolEquation::Or(i, j, k), false) => {
                let si = &x(i) + &x(0);
                let sj = &x(j) + &x(0);
                let sk = &x(k) + &x(0);
                &(&si * &si) - &(&sj * &sk)
            }
            (BoolEquation::Or(i, j, k), true) => {
                let t1 = &x(i) * &x(i);
                let t2 = &x(j) * &x(k);
                let t3 = &x(0) * &(&x(j) + &x(k));
                &(&t1 + &t2) + &t3
            }
        };
        components.push(gadget);
    }
    let s = components.len();
    let system = PolySystem::new(&ctx, vars, components)?;
    Ok(ReductionArtifact {
        system,
        var_roles: (0..vars).map(VarRole::X).collect(),
        lambda: LambdaSpec::None,
        provenance: Provenance::Lemma1 { char: char_p },
        n,
        s,
    })
}

/// The truth encoding of one boolean value as the `x_i` coordinate.
fn encode_bool(ctx: &FieldContext, char2: bool, value: bool) -> FieldElement {
    match (char2, value) {
        (false, true) => ctx.from_i64(-1),
        (false, false) => ctx.one(),
        (true, true) => ctx.one(),
        (true, false) => ctx.zero(),
    }
}

/// The explicit nonzero root of an artifact's system determined by a
/// satisfying assignment: `x_0 = 1`, the `x` block from the truth encoding,
/// every `y` zero, and (`thm6` artifacts) the lambda coordinate equal to the class
/// of `X` in `F_p[X]/(P)`, so direct evaluation of every component yields 0.
pub fn witness_from_assignment(
    b: &BoolSys,
    assignment: &[bool],
    artifact: &ReductionArtifact,
) -> Result<Vec<FieldElement>> {
    if assignment.len() != b.num_vars {
        return Err(Error::ArityMismatch {
            expected: b.num_vars,
            got: assignment.len(),
        });
    }
    if let Some(index) = b.check(assignment) {
        return Err(Error::InvalidAssignment { index });
    }
    let char2 = artifact.system.context().characteristic() == 2;
    let (point_ctx, lambda_value) = match &artifact.lambda {
        LambdaSpec::SystemVariable { p, modulus } => {
            let ext = FieldContext::extension(*p, modulus.clone())?;
            let gen = ext.element_from_residue(vec![0, 1])?;
            (ext, Some(gen))
        }
        _ => (artifact.system.context().clone(), None),
    };
    let mut point = Vec::with_capacity(artifact.var_roles.len());
    for role in &artifact.var_roles {
        let value = match role {
            VarRole::X(0) => point_ctx.one(),
            VarRole::X(i) => encode_bool(&point_ctx, char2, assignment[i - 1]),
            VarRole::Y(_) => point_ctx.zero(),
            VarRole::Lambda => lambda_value
                .clone()
                .ok_or_else(|| Error::WrongShape("lambda coordinate without modulus".into()))?,
            VarRole::W { .. } => {
                return Err(Error::WrongShape(
                    "PARTITION artifacts use partition_witness".into(),
                ))
            }
        };
        point.push(value);
    }
    Ok(point)
}
