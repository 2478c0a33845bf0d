//! Existence verdicts for continuous inverse ambiguous functions on the
//! standard Lie groups, with the statement each verdict rests on.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    /// Settled by a side condition the query did not supply.
    Conditional,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub id: &'static str,
    pub space: &'static str,
    pub rule: &'static str,
    /// Verbatim statement the verdict rests on.
    pub anchor: &'static str,
    /// Name of the checked construction, where one exists.
    pub construction: Option<&'static str>,
}

const ENTRIES: &[RegistryEntry] = &[
    RegistryEntry {
        id: "finite",
        space: "finite group G",
        rule: "yes iff |G - S(G)| is a multiple of 4",
        anchor: "An inverse ambiguous function exists on $G$ if and only if the number of elements in $G - S(G)$ is a multiple of 4.",
        construction: None,
    },
    RegistryEntry {
        id: "circle",
        space: "S^1",
        rule: "no",
        anchor: "There are no continuous inverse ambiguous functions on the circle group, $S^1$.",
        construction: None,
    },
    RegistryEntry {
        id: "torus-odd",
        space: "T^n, n odd",
        rule: "no",
        anchor: "If $n$ is a positive odd integer, then there exist no continuous inverse ambiguous functions on the torus $\\mathbb{T}^n$.",
        construction: None,
    },
    RegistryEntry {
        id: "torus-even",
        space: "T^n, n even",
        rule: "yes",
        anchor: "If $n$ is a positive even integer, then there exist continuous inverse ambiguous functions on the torus $\\mathbb{T}^n$.",
        construction: Some("torus-even"),
    },
    RegistryEntry {
        id: "elliptic-complex",
        space: "E(C)",
        rule: "yes",
        anchor: "Every elliptic curve over $\\mathbb{C}$ admits a continuous inverse ambiguous function.",
        construction: Some("lattice-quotient"),
    },
    RegistryEntry {
        id: "elliptic-real",
        space: "E(R)",
        rule: "yes iff Delta_E > 0",
        anchor: "Then $E(\\mathbb{R})$ admits a continuous inverse ambiguous function if and only if $\\Delta_E > 0$.",
        construction: Some("circle-z2"),
    },
    RegistryEntry {
        id: "real-space",
        space: "R^n",
        rule: "yes iff n even",
        anchor: "An $n$-dimensional vector space $V$ over $\\mathbb{R}$ admits a continuous inverse ambiguous function if and only if $n$ is even.",
        construction: Some("r2n-linear"),
    },
    RegistryEntry {
        id: "complex-matrices",
        space: "M_n(C)",
        rule: "yes",
        anchor: "For every positive integer $n$, the topological group $M_n(\\mathbb{C})$ admits a continuous inverse ambiguous function, one example being $A \\mapsto iA$.",
        construction: Some("matrix-complex"),
    },
    RegistryEntry {
        id: "real-matrices",
        space: "M_n(R)",
        rule: "yes iff n even",
        anchor: "The topological group $M_n(\\mathbb{R})$ admits a continuous inverse ambiguous function if and only if $n$ even.",
        construction: Some("r2n-linear"),
    },
    RegistryEntry {
        id: "trace0-complex",
        space: "trace-0 matrices in M_n(C)",
        rule: "yes",
        anchor: "For every positive integer $n$, the subspace of all matrices in $M_n(\\mathbb{C})$ having trace $0$ admits a continuous inverse ambiguous function.",
        construction: None,
    },
    RegistryEntry {
        id: "trace0-real",
        space: "trace-0 matrices in M_n(R)",
        rule: "yes iff n odd",
        anchor: "The subspace of all matrices in $M_n(\\mathbb{R})$ having trace $0$ admits a continuous inverse ambiguous function if and only if $n$ is $odd$.",
        construction: Some("trace0-real"),
    },
    RegistryEntry {
        id: "s3",
        space: "S^3",
        rule: "no",
        anchor: "No continuous inverse ambiguous functions are defined on $S^3$.",
        construction: None,
    },
    RegistryEntry {
        id: "sphere-antipodal",
        space: "S^n with f(f(z)) = -z",
        rule: "yes iff n odd",
        anchor: "There exists a homeomorphism $f: S^n \\rightarrow S^n$ satisfying the equation $f(f(z)) = -z$ for all $z \\in S^n$ if and only if $n$ is odd.",
        construction: Some("sphere"),
    },
    RegistryEntry {
        id: "gl-odd",
        space: "GL_n(R), n odd",
        rule: "yes",
        anchor: "Assume $n$ is positive odd integer. Then the function $f: GL_n(\\mathbb{R}) \\rightarrow GL_n(\\mathbb{R})$ defined by",
        construction: Some("gl-pingpong"),
    },
    RegistryEntry {
        id: "gl-even",
        space: "GL_n(R), n even",
        rule: "unknown",
        anchor: "If $n$ is even, then the strategy used to define the function in the above theorem does not work",
        construction: None,
    },
    RegistryEntry {
        id: "orthogonal-odd",
        space: "O(n), n odd",
        rule: "yes",
        anchor: "Furthermore, this function restricts to a continuous inverse ambiguous function from $O(n)$ to $O(n)$.",
        construction: Some("orthogonal-pingpong"),
    },
    RegistryEntry {
        id: "o2-so2",
        space: "O(2), SO(2)",
        rule: "no",
        anchor: "There are no continuous inverse ambiguous functions defined on $O(2)$ or on $SO(2)$.",
        construction: None,
    },
    RegistryEntry {
        id: "gl-plus-odd",
        space: "GL_n^+(R), n odd",
        rule: "no",
        anchor: "There are no continuous inverse ambiguous functions on $GL_n^+(\\mathbb{R})$ when $n$ is odd.",
        construction: None,
    },
    RegistryEntry {
        id: "sl-even",
        space: "SL_n(R), n even",
        rule: "no",
        anchor: "If $n$ is even, there are no continuous inverse ambiguous functions on $SL_n(\\mathbb{R})$.",
        construction: None,
    },
    RegistryEntry {
        id: "so-2-3-mod-4",
        space: "SO(n), n = 2, 3 mod 4",
        rule: "no",
        anchor: "If $n \\equiv 2$ or $3 \\mod 4$, then there are no continuous inverse ambiguous functions on $SO(n)$.",
        construction: None,
    },
    RegistryEntry {
        id: "open",
        space: "GL_n^+(R) n even, SL_n(R) n odd, SO(n) n = 0, 1 mod 4, GL_n(C) n > 1",
        rule: "unknown",
        anchor: "If further results are to be obtained for groups like $GL_n^+(\\mathbb{R})$ ($n$ even), $SL_n(\\mathbb{R})$ ($n$ odd), $SO(n)$ ($n$ congruent to $0$ or $1$ modulo $4$), and $GL_n(\\mathbb{C})$ (any $n > 1$), other tools will need to be developed.",
        construction: None,
    },
];

pub fn existence_registry() -> &'static [RegistryEntry] {
    ENTRIES
}

fn entry(id: &str) -> &'static RegistryEntry {
    ENTRIES.iter().find(|e| e.id == id).expect("registry id")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QueryError {
    #[error("cannot parse space {0:?}")]
    Unparsed(String),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("curve is singular (Delta_E = 0)")]
    SingularCurve,
    #[error("{0} is not covered by the registry")]
    NotCovered(String),
}

/// A parsed registry query.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Sphere(u32),
    SphereAntipodal(u32),
    Torus(u32),
    EllipticComplex,
    EllipticReal(Option<(f64, f64)>),
    RealSpace(u32),
    ComplexSpace(u32),
    RealMatrices(u32),
    ComplexMatrices(u32),
    Trace0Real(u32),
    Trace0Complex(u32),
    GlReal(u32),
    GlPlus(u32),
    GlComplex(u32),
    Sl(u32),
    Orthogonal(u32),
    SpecialOrthogonal(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryAnswer {
    pub query: String,
    pub verdict: Verdict,
    pub entry: &'static RegistryEntry,
    pub note: Option<&'static str>,
}

fn normalize(q: &str) -> String {
    let mut out = String::new();
    for ch in q.chars() {
        let mapped = match ch {
            '⁰' | '¹' | '²' | '³' | '⁴' | '⁵' | '⁶' | '⁷' | '⁸' | '⁹' => {
                let d = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|c| c == ch).unwrap();
                if !out.ends_with('^') {
                    out.push('^');
                }
                char::from_digit(d as u32, 10).unwrap()
            }
            '₀' | '₁' | '₂' | '₃' | '₄' | '₅' | '₆' | '₇' | '₈' | '₉' => {
                let d = "₀₁₂₃₄₅₆₇₈₉".chars().position(|c| c == ch).unwrap();
                if !out.ends_with('_') {
                    out.push('_');
                }
                char::from_digit(d as u32, 10).unwrap()
            }
            '⁺' => '+',
            'ℝ' => 'R',
            'ℂ' => 'C',
            c if c.is_whitespace() => continue,
            c => c,
        };
        out.push(mapped);
    }
    out
}

/// Splits a leading dimension written `n`, `^n`, `_n` or `_{n}`.
fn take_dim(s: &str) -> Option<(u32, &str)> {
    let s = s.strip_prefix('^').or_else(|| s.strip_prefix('_')).unwrap_or(s);
    let (s, braced) = match s.strip_prefix('{') {
        Some(rest) => (rest, true),
        None => (s, false),
    };
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    let n: u32 = s[..end].parse().ok()?;
    let mut rest = &s[end..];
    if braced {
        rest = rest.strip_prefix('}')?;
    }
    Some((n, rest))
}

fn dim_then(s: &str, suffix: &str) -> Option<u32> {
    let (n, rest) = take_dim(s)?;
    (rest == suffix).then_some(n)
}

fn parse_real_curve(s: &str) -> Option<(f64, f64)> {
    let body = s.strip_suffix(')')?;
    let (mut a, mut b) = (None, None);
    for part in body.split([',', ';']).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=')?;
        let v: f64 = v.parse().ok()?;
        match k {
            "a" => a = Some(v),
            "b" => b = Some(v),
            _ => return None,
        }
    }
    Some((a?, b?))
}

impl Space {
    pub fn parse(query: &str) -> Result<Space, QueryError> {
        let q = normalize(query);
        let fail = || QueryError::Unparsed(String::from(query));
        let s = q.as_str();
        let space = if matches!(s, "E(C)" | "EoverC" | "E/C" | "E(C)curve") {
            Space::EllipticComplex
        } else if matches!(s, "E(R)" | "EoverR" | "E/R") {
            Space::EllipticReal(None)
        } else if let Some(rest) = s.strip_prefix("E(R;").or_else(|| s.strip_prefix("E(R,")) {
            Space::EllipticReal(Some(parse_real_curve(rest).ok_or_else(fail)?))
        } else if let Some(rest) = s.strip_prefix("trace0") {
            if let Some(n) = dim_then(rest, "(R)") {
                Space::Trace0Real(n)
            } else {
                Space::Trace0Complex(dim_then(rest, "(C)").ok_or_else(fail)?)
            }
        } else if let Some(rest) = s.strip_prefix("GL^+").or_else(|| s.strip_prefix("GL+")) {
            Space::GlPlus(dim_then(rest, "(R)").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix("GL") {
            let (n, tail) = take_dim(rest).ok_or_else(fail)?;
            match tail {
                "(R)" => Space::GlReal(n),
                "^+(R)" | "+(R)" => Space::GlPlus(n),
                "(C)" => Space::GlComplex(n),
                _ => return Err(fail()),
            }
        } else if let Some(rest) = s.strip_prefix("SL") {
            Space::Sl(dim_then(rest, "(R)").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix("SO(") {
            Space::SpecialOrthogonal(dim_then(rest, ")").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix("O(") {
            Space::Orthogonal(dim_then(rest, ")").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix("M") {
            let (n, tail) = take_dim(rest).ok_or_else(fail)?;
            match tail {
                "(R)" => Space::RealMatrices(n),
                "(C)" => Space::ComplexMatrices(n),
                _ => return Err(fail()),
            }
        } else if let Some(rest) = s.strip_prefix('S') {
            let (n, tail) = take_dim(rest).ok_or_else(fail)?;
            match tail {
                "" => Space::Sphere(n),
                "antipodal" | ",antipodal" | "(antipodal)" => Space::SphereAntipodal(n),
                _ => return Err(fail()),
            }
        } else if let Some(rest) = s.strip_prefix('T') {
            Space::Torus(dim_then(rest, "").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix('R') {
            Space::RealSpace(dim_then(rest, "").ok_or_else(fail)?)
        } else if let Some(rest) = s.strip_prefix('C') {
            Space::ComplexSpace(dim_then(rest, "").ok_or_else(fail)?)
        } else {
            return Err(fail());
        };
        Ok(space)
    }

    fn dim(&self) -> Option<u32> {
        match *self {
            Space::EllipticComplex | Space::EllipticReal(_) => None,
            Space::Sphere(n)
            | Space::SphereAntipodal(n)
            | Space::Torus(n)
            | Space::RealSpace(n)
            | Space::ComplexSpace(n)
            | Space::RealMatrices(n)
            | Space::ComplexMatrices(n)
            | Space::Trace0Real(n)
            | Space::Trace0Complex(n)
            | Space::GlReal(n)
            | Space::GlPlus(n)
            | Space::GlComplex(n)
            | Space::Sl(n)
            | Space::Orthogonal(n)
            | Space::SpecialOrthogonal(n) => Some(n),
        }
    }
}

const TRIVIAL: &str = "the trivial group";

/// Resolves a query like `SO(6)`, `T^3`, `S³`, `E(C)` or `E(R;a=-1,b=0)`.
pub fn query(q: &str) -> Result<QueryAnswer, QueryError> {
    use Verdict::*;
    let space = Space::parse(q)?;
    let sphere_dim_ok = matches!(space, Space::Sphere(0) | Space::SphereAntipodal(0));
    if space.dim() == Some(0) && !sphere_dim_ok {
        return Err(QueryError::ZeroDimension);
    }
    let parity = |n: u32, yes_if_even: bool| if n.is_multiple_of(2) == yes_if_even { Yes } else { No };
    let (verdict, id, note) = match space {
        Space::Sphere(1) => (No, "circle", None),
        Space::Sphere(3) => (No, "s3", None),
        Space::Sphere(n) | Space::SphereAntipodal(n) => (parity(n, false), "sphere-antipodal", None),
        Space::Torus(n) => {
            if n % 2 == 0 {
                (Yes, "torus-even", None)
            } else {
                (No, "torus-odd", None)
            }
        }
        Space::EllipticComplex => (Yes, "elliptic-complex", None),
        Space::EllipticReal(None) => (Conditional, "elliptic-real", None),
        Space::EllipticReal(Some((a, b))) => {
            let disc = -16.0 * (4.0 * a * a * a + 27.0 * b * b);
            if disc == 0.0 || !disc.is_finite() {
                return Err(QueryError::SingularCurve);
            }
            (if disc > 0.0 { Yes } else { No }, "elliptic-real", None)
        }
        Space::RealSpace(n) => (parity(n, true), "real-space", None),
        Space::ComplexSpace(_) => (Yes, "real-space", Some("C^n is R^(2n)")),
        Space::RealMatrices(n) => (parity(n, true), "real-matrices", None),
        Space::ComplexMatrices(_) => (Yes, "complex-matrices", None),
        Space::Trace0Real(n) => (parity(n, false), "trace0-real", None),
        Space::Trace0Complex(_) => (Yes, "trace0-complex", None),
        Space::GlReal(n) if n % 2 == 1 => (Yes, "gl-odd", None),
        Space::GlReal(_) => (Unknown, "gl-even", None),
        Space::Orthogonal(n) if n % 2 == 1 => (Yes, "orthogonal-odd", None),
        Space::Orthogonal(2) => (No, "o2-so2", None),
        Space::Orthogonal(n) => return Err(QueryError::NotCovered(alloc::format!("O({n})"))),
        Space::SpecialOrthogonal(1) => (Yes, "finite", Some(TRIVIAL)),
        Space::SpecialOrthogonal(2) => (No, "o2-so2", None),
        Space::SpecialOrthogonal(n) if n % 4 == 2 || n % 4 == 3 => (No, "so-2-3-mod-4", None),
        Space::SpecialOrthogonal(_) => (Unknown, "open", None),
        Space::GlPlus(n) if n % 2 == 1 => (No, "gl-plus-odd", None),
        Space::GlPlus(_) => (Unknown, "open", None),
        Space::Sl(1) => (Yes, "finite", Some(TRIVIAL)),
        Space::Sl(n) if n % 2 == 0 => (No, "sl-even", None),
        Space::Sl(_) => (Unknown, "open", None),
        Space::GlComplex(1) => return Err(QueryError::NotCovered(String::from("GL_1(C)"))),
        Space::GlComplex(_) => (Unknown, "open", None),
    };
    Ok(QueryAnswer {
        query: q.to_string(),
        verdict,
        entry: entry(id),
        note,
    })
}

/// All registry ids, in catalog order.
pub fn registry_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}
