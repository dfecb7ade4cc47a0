//! Plain-text transition tables for the toy machine demo.
//!
//! ```text
//! states 3
//! symbols 3
//! start 0
//! accept 2
//! tape 1 1
//! space 3
//! maxsteps 12
//! 0 1 -> 1 1 R
//! 1 1 -> 0 1 R
//! 0 0 -> 2 0 S
//! ```

use resultant_core::error::Error;
use resultant_core::succinct::{Move, ToyMachine};
use resultant_core::Result;

#[derive(Clone, Debug)]
pub struct MachineSpec {
    pub machine: ToyMachine,
    pub input: Vec<usize>,
    pub space: usize,
    pub max_steps: u64,
}

pub fn parse_machine_spec(text: &str) -> Result<MachineSpec> {
    let mut num_states = None;
    let mut num_symbols = None;
    let mut start = None;
    let mut accept = None;
    let mut tape: Vec<usize> = Vec::new();
    let mut space = None;
    let mut max_steps = 32u64;
    let mut transitions: Vec<(usize, usize, usize, usize, Move)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_num = |tok: &str| -> Result<usize> {
            tok.parse()
                .map_err(|_| Error::parse(lineno + 1, format!("bad number `{tok}`")))
        };
        match tokens.as_slice() {
            ["states", v] => num_states = Some(parse_num(v)?),
            ["symbols", v] => num_symbols = Some(parse_num(v)?),
            ["start", v] => start = Some(parse_num(v)?),
            ["accept", v] => accept = Some(parse_num(v)?),
            ["space", v] => space = Some(parse_num(v)?),
            ["maxsteps", v] => max_steps = parse_num(v)? as u64,
            ["tape", rest @ ..] => {
                tape = rest
                    .iter()
                    .map(|t| parse_num(t))
                    .collect::<Result<Vec<_>>>()?;
            }
            [q, a, "->", q2, a2, mv] => {
                let mv = match *mv {
                    "L" => Move::Left,
                    "R" => Move::Right,
                    "S" => Move::Stay,
                    other => {
                        return Err(Error::parse(
                            lineno + 1,
                            format!("bad move `{other}` (expected L, R, or S)"),
                        ))
                    }
                };
                transitions.push((
                    parse_num(q)?,
                    parse_num(a)?,
                    parse_num(q2)?,
                    parse_num(a2)?,
                    mv,
                ));
            }
            _ => return Err(Error::parse(lineno + 1, format!("bad line `{line}`"))),
        }
    }

    let require = |name: &str, v: Option<usize>| -> Result<usize> {
        v.ok_or_else(|| Error::parse(0, format!("missing `{name}` line")))
    };
    let num_states = require("states", num_states)?;
    let num_symbols = require("symbols", num_symbols)?;
    let start = require("start", start)?;
    let accept = require("accept", accept)?;
    let space = require("space", space)?;
    let machine = ToyMachine::new(num_states, num_symbols, start, accept, transitions)?;
    Ok(MachineSpec {
        machine,
        input: tape,
        space,
        max_steps,
    })
}
