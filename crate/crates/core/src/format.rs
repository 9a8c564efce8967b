//! Text formats: the arrangement file grammar and the polynomial and
//! vector-field expression syntax shared with the command-line tool.
//!
//! An arrangement file is line-oriented, `#` starts a comment:
//!
//! ```text
//! arrangement 1
//! dim 2
//! vars x y          # optional, defaults to x y z w / x1 x2 ...
//! hyp 1 0 = 0 mult 3
//! hyp 0 1 = 0 mult 3
//! hyp 1 1 = 0
//! hyp 1 -1 = 0
//! ```
//!
//! Coefficients are integers or `p/q` rationals; hyperplanes are stored
//! canonically (integer content-one normal, first nonzero positive), so
//! parse then serialize is a canonical form. A polynomial expression is a
//! sum of terms `c*x^e*y^f*...`; a vector field lists one polynomial per
//! coordinate, separated by `;`.

use crate::arrangement::{Arrangement, Multiplicity};
use crate::derivations::VectorField;
use crate::error::{Error, Result};
use crate::hyperplane::Hyperplane;
use crate::multipoly::{default_var_names, MultiPoly};
use crate::scalar::{parse_rational, Scalar};
use num::One;
use std::collections::HashMap;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct ArrangementFile {
    pub version: u32,
    pub arrangement: Arrangement,
    pub multiplicity: Multiplicity,
    pub var_names: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: Some(line),
        message: message.into(),
    }
}

fn is_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the full file, keeping variable names for later display.
pub fn parse_arrangement_file(text: &str) -> Result<ArrangementFile> {
    // (line number, tokens) with comments stripped and blanks dropped
    let records: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            (i + 1, content.split_whitespace().collect::<Vec<_>>())
        })
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let mut rec = records.iter();

    let (line, toks) = rec
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected an `arrangement` header"))?;
    let version = match toks.as_slice() {
        ["arrangement", v] => v
            .parse::<u32>()
            .map_err(|_| parse_err(*line, format!("bad version literal {v:?}")))?,
        _ => return Err(parse_err(*line, "expected `arrangement <version>`")),
    };
    if version != FORMAT_VERSION {
        return Err(parse_err(
            *line,
            format!("unsupported format version {version}, this tool reads version 1"),
        ));
    }

    let (line, toks) = rec
        .next()
        .ok_or_else(|| parse_err(*line + 1, "expected `dim <n>`"))?;
    let dim = match toks.as_slice() {
        ["dim", d] => d
            .parse::<usize>()
            .map_err(|_| parse_err(*line, format!("bad dimension literal {d:?}")))?,
        _ => return Err(parse_err(*line, "expected `dim <n>`")),
    };

    let mut rec = rec.peekable();
    let var_names: Vec<String> = match rec.peek() {
        Some((line, toks)) if toks.first() == Some(&"vars") => {
            let names: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
            if names.len() != dim {
                return Err(parse_err(
                    *line,
                    format!("expected {dim} variable names, got {}", names.len()),
                ));
            }
            for n in &names {
                if !is_name(n) {
                    return Err(parse_err(*line, format!("bad variable name {n:?}")));
                }
            }
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() {
                return Err(parse_err(*line, "duplicate variable name"));
            }
            rec.next();
            names
        }
        _ => default_var_names(dim),
    };

    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut mults: Vec<u32> = Vec::new();
    let mut seen: HashMap<(Vec<num::BigInt>, num::BigInt), usize> = HashMap::new();
    for (line, toks) in rec {
        if toks.first() != Some(&"hyp") {
            return Err(parse_err(
                *line,
                format!("expected `hyp`, got {:?}", toks[0]),
            ));
        }
        if toks.len() < dim + 3 {
            return Err(parse_err(
                *line,
                format!("expected `hyp <{dim} coefficients> = <constant>`"),
            ));
        }
        let mut normal = Vec::with_capacity(dim);
        for t in &toks[1..=dim] {
            normal.push(
                parse_rational(t)
                    .ok_or_else(|| parse_err(*line, format!("bad coefficient {t:?}")))?,
            );
        }
        if toks[dim + 1] != "=" {
            return Err(parse_err(
                *line,
                format!("expected `=` after {dim} coefficients, got {:?}", toks[dim + 1]),
            ));
        }
        let constant = parse_rational(toks[dim + 2])
            .ok_or_else(|| parse_err(*line, format!("bad constant {:?}", toks[dim + 2])))?;
        let mult = match &toks[dim + 3..] {
            [] => 1u32,
            ["mult", m] => m
                .parse::<u32>()
                .map_err(|_| parse_err(*line, format!("bad multiplicity literal {m:?}")))?,
            extra => {
                return Err(parse_err(
                    *line,
                    format!("unexpected trailing tokens {:?}", extra.join(" ")),
                ))
            }
        };
        let h = Hyperplane::new(normal, constant).map_err(|e| match e {
            Error::ZeroNormal { .. } => Error::ZeroNormal { line: Some(*line) },
            other => other,
        })?;
        let key = (h.normal().to_vec(), h.constant().clone());
        if let Some(first) = seen.insert(key, *line) {
            return Err(Error::DuplicateHyperplane {
                line: Some(*line),
                hyperplane: format!(
                    "{} (same as line {first})",
                    h.form().display(&var_names)
                ),
            });
        }
        hyperplanes.push(h);
        mults.push(mult);
    }
    if hyperplanes.is_empty() {
        return Err(Error::Parse {
            line: None,
            message: "no hyperplane records".into(),
        });
    }
    Ok(ArrangementFile {
        version,
        arrangement: Arrangement::new(dim, hyperplanes)?,
        multiplicity: Multiplicity::new(mults),
        var_names,
    })
}

/// The spec'd convenience view of a file: the arrangement and its
/// multiplicities.
pub fn parse_arrangement(text: &str) -> Result<(Arrangement, Multiplicity)> {
    let file = parse_arrangement_file(text)?;
    Ok((file.arrangement, file.multiplicity))
}

/// Canonical serialization: always emits the vars line, omits `mult 1`.
pub fn serialize_arrangement(
    arr: &Arrangement,
    m: &Multiplicity,
    var_names: &[String],
) -> String {
    let mut out = String::new();
    out.push_str(&format!("arrangement {FORMAT_VERSION}\n"));
    out.push_str(&format!("dim {}\n", arr.dimension()));
    out.push_str(&format!("vars {}\n", var_names.join(" ")));
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        out.push_str("hyp ");
        for a in h.normal() {
            out.push_str(&format!("{a} "));
        }
        out.push_str(&format!("= {}", h.constant()));
        if m.get(i) != 1 {
            out.push_str(&format!(" mult {}", m.get(i)));
        }
        out.push('\n');
    }
    out
}

/// A variable name unused by `existing`, for coning.
pub fn fresh_var_name(existing: &[String]) -> String {
    for cand in ["z", "w", "h", "u", "v"] {
        if !existing.iter().any(|n| n == cand) {
            return cand.to_string();
        }
    }
    let mut k = existing.len() + 1;
    loop {
        let cand = format!("x{k}");
        if !existing.iter().any(|n| n == &cand) {
            return cand;
        }
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize_expr(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            toks.push(Tok::Plus);
            i += 1;
        } else if c == '-' {
            toks.push(Tok::Minus);
            i += 1;
        } else if c == '*' {
            toks.push(Tok::Star);
            i += 1;
        } else if c == '^' {
            toks.push(Tok::Caret);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                if i >= chars.len() || !chars[i].is_ascii_digit() {
                    return Err(Error::Parse {
                        line: None,
                        message: "expected digits after `/`".into(),
                    });
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let value = parse_rational(&lit).ok_or_else(|| Error::Parse {
                line: None,
                message: format!("bad number literal {lit:?}"),
            })?;
            toks.push(Tok::Num(value));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Name(chars[start..i].iter().collect()));
        } else {
            return Err(Error::Parse {
                line: None,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(toks)
}

/// Parse a sum of terms `c*x^e*y^f*...` over the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let toks = tokenize_expr(text)?;
    let arity = vars.len();
    let var_index: HashMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(j, n)| (n.as_str(), j))
        .collect();
    let mut poly = MultiPoly::zero(arity);
    let mut i = 0;
    if toks.is_empty() {
        return Err(Error::Parse {
            line: None,
            message: "empty polynomial expression".into(),
        });
    }
    loop {
        // sign
        let mut sign = Scalar::one();
        match toks.get(i) {
            Some(Tok::Plus) => i += 1,
            Some(Tok::Minus) => {
                sign = -Scalar::one();
                i += 1;
            }
            _ => {}
        }
        // one term: factors joined by `*`
        let mut coeff = sign;
        let mut exps = vec![0u32; arity];
        let mut factors = 0;
        loop {
            match toks.get(i) {
                Some(Tok::Num(c)) => {
                    coeff = &coeff * c;
                    i += 1;
                }
                Some(Tok::Name(n)) => {
                    let j = *var_index.get(n.as_str()).ok_or_else(|| Error::Parse {
                        line: None,
                        message: format!(
                            "unknown variable {n:?}, expected one of {}",
                            vars.join(", ")
                        ),
                    })?;
                    i += 1;
                    let mut e = 1u32;
                    if toks.get(i) == Some(&Tok::Caret) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Num(c)) if crate::scalar::is_integer(c) => {
                                let n = c.to_integer();
                                e = u32::try_from(n).map_err(|_| Error::Parse {
                                    line: None,
                                    message: "exponent out of range".into(),
                                })?;
                                i += 1;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    line: None,
                                    message: "expected a nonnegative integer exponent after `^`"
                                        .into(),
                                })
                            }
                        }
                    }
                    exps[j] += e;
                }
                other => {
                    return Err(Error::Parse {
                        line: None,
                        message: format!("expected a coefficient or variable, got {other:?}"),
                    })
                }
            }
            factors += 1;
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            } else {
                break;
            }
        }
        debug_assert!(factors > 0);
        poly = &poly + &MultiPoly::from_term(arity, exps, coeff);
        match toks.get(i) {
            None => break,
            Some(Tok::Plus) | Some(Tok::Minus) => {}
            Some(other) => {
                return Err(Error::Parse {
                    line: None,
                    message: format!("expected `+` or `-` between terms, got {other:?}"),
                })
            }
        }
    }
    Ok(poly)
}

/// Parse one vector field: component polynomials separated by `;`.
pub fn parse_vector_field(text: &str, vars: &[String]) -> Result<VectorField> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != vars.len() {
        return Err(Error::Parse {
            line: None,
            message: format!(
                "a vector field here needs {} components separated by `;`, got {}",
                vars.len(),
                parts.len()
            ),
        });
    }
    let comps = parts
        .iter()
        .map(|p| parse_polynomial(p, vars))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(comps)
}

/// Parse a basis file: one vector field per line, `#` comments allowed.
pub fn parse_basis(text: &str, vars: &[String]) -> Result<Vec<VectorField>> {
    let mut fields = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let field = parse_vector_field(content, vars).map_err(|e| match e {
            Error::Parse { message, .. } => parse_err(i + 1, message),
            other => other,
        })?;
        fields.push(field);
    }
    Ok(fields)
}
