//! The group and curve mini-language used on the command line.
//!
//! Groups: `Z12`, `Z2xZ4`, `S5`, `A4`, `D4`, `Q8`, `V(3^2,2)`,
//! `cayley:<path>` and curve groups `E(7;a=1,b=0)`. Curves: `E(q;a=..,b=..)`
//! with `q` written `p` or `p^n`; coefficients are integers (reduced mod p)
//! or bracketed coefficient vectors such as `[1,2]`.

use std::fs::File;
use std::path::Path;

use ambig_core::ecurve::CurveSpec;
use ambig_core::finfield::FieldSpec;
use ambig_core::groups::{CayleyTable, GroupHandle};

use crate::formats::read_cayley_csv;
use crate::CliError;

fn bad(spec: &str, why: impl std::fmt::Display) -> CliError {
    CliError::BadSpec(format!("{spec:?}: {why}"))
}

/// `p` or `p^n`.
pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let s = s.trim();
    let (p, n) = match s.split_once('^') {
        Some((p, n)) => (p, n),
        None => (s, "1"),
    };
    let p: u64 = p.parse().map_err(|_| bad(s, "expected a prime or p^n"))?;
    let n: u32 = n.parse().map_err(|_| bad(s, "expected a prime or p^n"))?;
    FieldSpec::new(p, n).map_err(|e| bad(s, e))
}

/// Splits on commas that are not inside brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub fn parse_curve(spec: &str) -> Result<CurveSpec, CliError> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let body = s
        .strip_prefix("E(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(spec, "expected E(q;a=..,b=..)"))?;
    let (q, coeffs) = body.split_once(';').ok_or_else(|| bad(spec, "missing ';'"))?;
    let field = parse_field(q)?;
    let (mut a, mut b) = (None, None);
    for part in split_top_level(coeffs) {
        let (key, value) = part.split_once('=').ok_or_else(|| bad(spec, "expected a=..,b=.."))?;
        let elem = match value.strip_prefix('[').and_then(|v| v.strip_suffix(']')) {
            Some(inner) => field.parse(inner).map_err(|e| bad(spec, e))?,
            None => field.from_int(value.parse().map_err(|_| bad(spec, format!("bad coefficient {value:?}")))?),
        };
        match key {
            "a" => a = Some(elem),
            "b" => b = Some(elem),
            _ => return Err(bad(spec, format!("unknown coefficient {key:?}"))),
        }
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(bad(spec, "both a and b are required")),
    };
    CurveSpec::new(field, a, b).map_err(|e| bad(spec, e))
}

fn number(spec: &str, s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| bad(spec, format!("expected a number, got {s:?}")))
}

fn parse_factor(spec: &str, s: &str) -> Result<GroupHandle, CliError> {
    let group = |r: Result<GroupHandle, _>| r.map_err(|e: ambig_core::groups::GroupError| bad(spec, e));
    if s == "Q8" {
        return Ok(GroupHandle::quaternion());
    }
    if s.starts_with("E(") {
        return Ok(GroupHandle::elliptic(parse_curve(s)?));
    }
    if let Some(body) = s.strip_prefix("V(").and_then(|r| r.strip_suffix(')')) {
        let (q, dim) = body.split_once(',').ok_or_else(|| bad(spec, "expected V(q,dim)"))?;
        let dim: u32 = dim.trim().parse().map_err(|_| bad(spec, "bad dimension"))?;
        return group(GroupHandle::vector_space(parse_field(q)?, dim));
    }
    let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    match head {
        "Z" => group(GroupHandle::cyclic(number(spec, tail)?)),
        "D" => group(GroupHandle::dihedral(number(spec, tail)?)),
        "S" | "A" => {
            let n = number(spec, tail)?;
            let n = u8::try_from(n).map_err(|_| bad(spec, "degree too large"))?;
            group(if head == "S" {
                GroupHandle::symmetric(n)
            } else {
                GroupHandle::alternating(n)
            })
        }
        _ => Err(bad(spec, format!("unknown group {s:?}"))),
    }
}

/// Parses a group spec. `cayley:` paths are read relative to the working
/// directory.
pub fn parse_group(spec: &str) -> Result<GroupHandle, CliError> {
    if let Some(path) = spec.strip_prefix("cayley:") {
        return load_cayley(Path::new(path)).map(GroupHandle::cayley);
    }
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad(spec, "empty spec"));
    }
    let mut factors = Vec::new();
    for part in split_top_level_x(&s) {
        factors.push(parse_factor(spec, part)?);
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        GroupHandle::product(factors).map_err(|e| bad(spec, e))
    }
}

/// Splits a product on `x` (or `×`) outside parentheses.
fn split_top_level_x(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            'x' | '×' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub fn load_cayley(path: &Path) -> Result<CayleyTable, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_cayley_csv(file)
}
