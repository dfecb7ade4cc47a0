//! Entry-oracle (succinctly represented) matrices and implicit graphs: a
//! matrix or digraph is a pure function from indices to entries, with
//! dimensions carried as big integers. Includes the forest-to-determinant
//! gadget, the cycle-cover determinant oracle, and a toy deterministic
//! machine whose configuration graph feeds the gadget.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::macaulay::MacaulaySpec;

type EntryFn<T> = Arc<dyn Fn(&BigUint, &BigUint) -> T + Send + Sync>;
type ArcFn = Arc<dyn Fn(&BigUint, &BigUint) -> bool + Send + Sync>;

/// A matrix given by a deterministic entry function instead of storage.
/// Dimensions may be astronomically large.
#[derive(Clone)]
pub struct EntryOracleMatrix<T> {
    rows: BigUint,
    cols: BigUint,
    oracle: EntryFn<T>,
}

impl<T> EntryOracleMatrix<T> {
    pub fn new(
        rows: BigUint,
        cols: BigUint,
        oracle: impl Fn(&BigUint, &BigUint) -> T + Send + Sync + 'static,
    ) -> Self {
        EntryOracleMatrix {
            rows,
            cols,
            oracle: Arc::new(oracle),
        }
    }

    pub fn rows(&self) -> &BigUint {
        &self.rows
    }

    pub fn cols(&self) -> &BigUint {
        &self.cols
    }

    pub fn entry(&self, i: &BigUint, j: &BigUint) -> T {
        debug_assert!(i < &self.rows && j < &self.cols);
        (self.oracle)(i, j)
    }

    /// Materializes the matrix by querying every entry.
    pub fn dense(&self, guard: u64) -> Result<Vec<Vec<T>>> {
        let total = &self.rows * &self.cols;
        if total > BigUint::from(guard) {
            return Err(Error::DimensionGuardExceeded {
                dim: total.to_string(),
                guard: guard as usize,
            });
        }
        let r = self.rows.to_u64().unwrap();
        let c = self.cols.to_u64().unwrap();
        let mut out = Vec::with_capacity(r as usize);
        for i in 0..r {
            let bi = BigUint::from(i);
            let mut row = Vec::with_capacity(c as usize);
            for j in 0..c {
                row.push((self.oracle)(&bi, &BigUint::from(j)));
            }
            out.push(row);
        }
        Ok(out)
    }
}

impl EntryOracleMatrix<FieldElement> {
    /// Wraps a Macaulay spec as an entry oracle without copying the matrix.
    pub fn from_macaulay(spec: Arc<MacaulaySpec>) -> Self {
        let dim = spec.dim().clone();
        EntryOracleMatrix::new(dim.clone(), dim, move |i, j| {
            spec.entry(i, j).expect("indices validated by caller")
        })
    }
}

/// A directed graph given by an arc oracle, with distinguished `s` and `t`.
#[derive(Clone)]
pub struct ImplicitDigraph {
    vertices: BigUint,
    arc: ArcFn,
    s: BigUint,
    t: BigUint,
}

impl ImplicitDigraph {
    pub fn new(
        vertices: BigUint,
        s: BigUint,
        t: BigUint,
        arc: impl Fn(&BigUint, &BigUint) -> bool + Send + Sync + 'static,
    ) -> Self {
        ImplicitDigraph {
            vertices,
            arc: Arc::new(arc),
            s,
            t,
        }
    }

    pub fn vertices(&self) -> &BigUint {
        &self.vertices
    }

    pub fn s(&self) -> &BigUint {
        &self.s
    }

    pub fn t(&self) -> &BigUint {
        &self.t
    }

    pub fn has_arc(&self, u: &BigUint, v: &BigUint) -> bool {
        (self.arc)(u, v)
    }
}

/// Breadth-first `s -> t` reachability through the arc oracle. Only the
/// frontier and a visited set are stored, but scanning neighbors costs a
/// full pass over the vertex set, hence the guard.
pub fn st_path_exists(g: &ImplicitDigraph, guard: u64) -> Result<bool> {
    let n = g
        .vertices
        .to_u64()
        .filter(|&v| v <= guard)
        .ok_or_else(|| Error::GuardExceeded {
            vertices: g.vertices.to_string(),
            guard,
        })?;
    let s = g.s.to_u64().expect("s < n <= guard");
    let t = g.t.to_u64().expect("t < n <= guard");
    let mut seen = vec![false; n as usize];
    let mut queue = VecDeque::new();
    seen[s as usize] = true;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        if u == t {
            return Ok(true);
        }
        let bu = BigUint::from(u);
        for v in 0..n {
            if !seen[v as usize] && g.has_arc(&bu, &BigUint::from(v)) {
                seen[v as usize] = true;
                queue.push_back(v);
            }
        }
    }
    Ok(false)
}

/// Validates out-degree <= 1 and acyclicity by materialized scan; only
/// possible at desk scale, hence the guard on the vertex count.
fn validate_forest(f: &ImplicitDigraph, guard: u64) -> Result<()> {
    let n = match f.vertices.to_u64() {
        Some(v) if v <= guard => v,
        _ => return Ok(()), // beyond materialized scale: caller's promise
    };
    let mut succ: Vec<Option<u64>> = vec![None; n as usize];
    for u in 0..n {
        let bu = BigUint::from(u);
        for v in 0..n {
            if f.has_arc(&bu, &BigUint::from(v)) {
                if succ[u as usize].is_some() {
                    return Err(Error::OutDegreeViolation(u.to_string()));
                }
                succ[u as usize] = Some(v);
            }
        }
    }
    // Out-degree <= 1: follow chains, detecting cycles with a color array.
    let mut color = vec![0u8; n as usize]; // 0 unvisited, 1 on path, 2 done
    for start in 0..n {
        if color[start as usize] != 0 {
            continue;
        }
        let mut u = start;
        let mut path = Vec::new();
        loop {
            if color[u as usize] == 1 {
                return Err(Error::CyclicDigraph(u.to_string()));
            }
            if color[u as usize] == 2 {
                break;
            }
            color[u as usize] = 1;
            path.push(u);
            match succ[u as usize] {
                Some(v) => u = v,
                None => break,
            }
        }
        for w in path {
            color[w as usize] = 2;
        }
    }
    Ok(())
}

/// The determinant gadget: given a forest `F` (out-degree <= 1, acyclic) and
/// `s != t`, returns the adjacency oracle of `F` plus an arc `t -> s` plus a
/// loop on every vertex other than `s` and `t`.
///
/// Consequence (tested, not assumed): the determinant is 0 or +-1, nonzero
/// exactly when an `s -> t` path exists in `F`.
pub fn forest_gadget(f: &ImplicitDigraph, check_guard: u64) -> Result<EntryOracleMatrix<i64>> {
    if f.s == f.t {
        return Err(Error::InvalidInput("s and t must differ".into()));
    }
    validate_forest(f, check_guard)?;
    let g = f.clone();
    let n = f.vertices.clone();
    Ok(EntryOracleMatrix::new(n.clone(), n, move |u, v| {
        let arc = g.has_arc(u, v)                       // original arcs
            || (u == &g.t && v == &g.s)                 // the closing arc
            || (u == v && u != &g.s && u != &g.t); // loops off s, t
        i64::from(arc)
    }))
}

/// Sum of the signatures of all cycle covers of the digraph with 0/1
/// adjacency matrix `m`: a factorial brute-force oracle for the determinant.
pub fn cycle_cover_determinant(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    if n > 10 {
        return Err(Error::DimensionGuardExceeded {
            dim: n.to_string(),
            guard: 10,
        });
    }
    fn sign_of(perm: &[usize]) -> i64 {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut sign = 1i64;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0usize;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            if len.is_multiple_of(2) {
                sign = -sign;
            }
        }
        sign
    }
    fn go(m: &[Vec<i64>], row: usize, used: &mut [bool], perm: &mut Vec<usize>, acc: &mut i64) {
        let n = m.len();
        if row == n {
            *acc += sign_of(perm);
            return;
        }
        for col in 0..n {
            if !used[col] && m[row][col] != 0 {
                used[col] = true;
                perm.push(col);
                go(m, row + 1, used, perm, acc);
                perm.pop();
                used[col] = false;
            }
        }
    }
    let mut acc = 0i64;
    go(m, 0, &mut vec![false; n], &mut Vec::new(), &mut acc);
    Ok(acc)
}

/// Head movement of the toy machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Left,
    Right,
    Stay,
}

/// A deterministic single-tape machine at desk scale. States and symbols are
/// small integers; the transition table is total only where defined, and a
/// missing entry halts the machine.
#[derive(Clone, Debug)]
pub struct ToyMachine {
    pub num_states: usize,
    pub num_symbols: usize,
    pub start_state: usize,
    pub accept_state: usize,
    transitions: HashMap<(usize, usize), (usize, usize, Move)>,
}

impl ToyMachine {
    pub fn new(
        num_states: usize,
        num_symbols: usize,
        start_state: usize,
        accept_state: usize,
        transitions: Vec<(usize, usize, usize, usize, Move)>,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for (q, a, q2, a2, mv) in transitions {
            if q >= num_states || q2 >= num_states || a >= num_symbols || a2 >= num_symbols {
                return Err(Error::InvalidInput(format!(
                    "transition ({q},{a}) -> ({q2},{a2}) out of range"
                )));
            }
            if map.insert((q, a), (q2, a2, mv)).is_some() {
                return Err(Error::NondeterministicMachine {
                    state: q,
                    symbol: a,
                });
            }
        }
        if start_state >= num_states || accept_state >= num_states {
            return Err(Error::InvalidInput(
                "start/accept state out of range".into(),
            ));
        }
        Ok(ToyMachine {
            num_states,
            num_symbols,
            start_state,
            accept_state,
            transitions: map,
        })
    }

    pub fn step(
        &self,
        state: usize,
        head: usize,
        tape: &[usize],
        space: usize,
    ) -> Option<(usize, usize, Vec<usize>)> {
        let (q2, write, mv) = *self.transitions.get(&(state, tape[head]))?;
        let mut tape2 = tape.to_vec();
        tape2[head] = write;
        let head2 = match mv {
            Move::Stay => head as isize,
            Move::Left => head as isize - 1,
            Move::Right => head as isize + 1,
        };
        if head2 < 0 || head2 >= space as isize {
            return None; // space bound: falling off the tape halts
        }
        Some((q2, head2 as usize, tape2))
    }

    /// Direct simulation; `Some(steps)` when the machine reaches the accept
    /// state within `max_steps`.
    pub fn simulate(&self, input: &[usize], space: usize, max_steps: u64) -> Option<u64> {
        let mut tape = vec![0usize; space];
        tape[..input.len()].copy_from_slice(input);
        let mut state = self.start_state;
        let mut head = 0usize;
        for steps in 0..=max_steps {
            if state == self.accept_state {
                return Some(steps);
            }
            match self.step(state, head, &tape, space) {
                Some((q, h, t)) => {
                    state = q;
                    head = h;
                    tape = t;
                }
                None => return None,
            }
        }
        None
    }
}

/// The implicit configuration graph of a toy machine run.
///
/// A vertex packs `(step, state, head, tape)` in a fixed radix order, plus
/// one extra accept vertex `t`; `s` is the step-0 start configuration.
/// Accepting configurations arc to `t`; a step-budget counter makes the
/// graph acyclic, and halting or budget exhaustion leaves a vertex with no
/// out-arc (a dead end). Determinism gives out-degree <= 1, so the result
/// is valid input for [`forest_gadget`].
pub fn config_graph(
    machine: &ToyMachine,
    input: &[usize],
    space: usize,
    max_steps: u64,
    guard: u64,
) -> Result<ImplicitDigraph> {
    if input.len() > space {
        return Err(Error::InvalidInput("input longer than the tape".into()));
    }
    let tape_count = BigUint::from(machine.num_symbols as u64).pow(space as u32);
    let configs =
        BigUint::from(machine.num_states as u64) * BigUint::from(space as u64) * &tape_count;
    let vertices = BigUint::from(max_steps + 1) * &configs + BigUint::one();
    if vertices > BigUint::from(guard) {
        return Err(Error::SpaceGuardExceeded {
            vertices: vertices.to_string(),
            guard,
        });
    }
    let configs = configs.to_u64().unwrap();
    let vertices = vertices.to_u64().unwrap();
    let accept_vertex = vertices - 1;
    let num_symbols = machine.num_symbols as u64;
    let num_states = machine.num_states as u64;

    let encode_config = move |state: usize, head: usize, tape: &[usize]| -> u64 {
        let mut idx = state as u64;
        idx = idx * space as u64 + head as u64;
        for &cell in tape {
            idx = idx * num_symbols + cell as u64;
        }
        idx
    };
    let decode_config = move |mut idx: u64| -> (usize, usize, Vec<usize>) {
        let mut tape = vec![0usize; space];
        for cell in tape.iter_mut().rev() {
            *cell = (idx % num_symbols) as usize;
            idx /= num_symbols;
        }
        let head = (idx % space as u64) as usize;
        idx /= space as u64;
        debug_assert!(idx < num_states);
        (idx as usize, head, tape)
    };

    let mut tape0 = vec![0usize; space];
    tape0[..input.len()].copy_from_slice(input);
    let s = encode_config(machine.start_state, 0, &tape0);

    let m = machine.clone();
    let arc = move |u: &BigUint, v: &BigUint| -> bool {
        let (u, v) = match (u.to_u64(), v.to_u64()) {
            (Some(a), Some(b)) => (a, b),
            _ => return false,
        };
        if u >= accept_vertex {
            return false; // the accept vertex is a sink
        }
        let step = u / configs;
        let cfg = u % configs;
        let (state, head, tape) = decode_config(cfg);
        if state == m.accept_state {
            return v == accept_vertex;
        }
        if step >= max_steps {
            return false; // budget exhausted: dead end
        }
        match m.step(state, head, &tape, space) {
            None => false, // halted without accepting: dead end
            Some((q, h, t)) => v == (step + 1) * configs + encode_config(q, h, &t),
        }
    };

    Ok(ImplicitDigraph::new(
        BigUint::from(vertices),
        BigUint::from(s),
        BigUint::from(accept_vertex),
        arc,
    ))
}
