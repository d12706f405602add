//! Text formats for algebras and surfaces.
//!
//! Algebras:
//!
//! ```text
//! algebra dual dim=2
//! basis 1 n          # optional; defaults to 1 e1 e2 ...
//! n * n = 0
//! ```
//!
//! Products not listed are zero, except those with the unit. Right-hand
//! sides are linear combinations of basis labels with rational
//! coefficients; a bare number means a multiple of the unit.
//!
//! Surfaces:
//!
//! ```text
//! surface n=1 k=1
//! weight z1=1 w1=4   # optional; w weights are inferred when omitted
//! Imw1 = z1^2*zb1^2
//! ```

use num_traits::{One, Zero};
use thiserror::Error;

use super::expr::{parse_ast, ParseError};
use crate::algebra::{make_algebra, preset_algebra, Algebra, AlgebraError};
use crate::poly::{Poly, VarTable};
use crate::scalar::{is_real, Rational};
use crate::surface::{canonical_table, ModelSurface, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Malformed { .. } => "FormatError",
            FormatError::Io { .. } => "IoError",
            FormatError::Parse(e) => e.code(),
            FormatError::Algebra(AlgebraError::AxiomViolation { .. }) => "AxiomViolation",
            FormatError::Algebra(AlgebraError::UnknownPreset(_)) => "UnknownPreset",
            FormatError::Algebra(_) => "AlgebraError",
            FormatError::Surface(e) => e.code(),
        }
    }
}

fn malformed<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Malformed {
        line,
        msg: msg.into(),
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// `key=value` pairs after a header keyword.
fn key_values(line: usize, rest: &str) -> Result<Vec<(String, String)>, FormatError> {
    rest.split_whitespace()
        .map(|kv| match kv.split_once('=') {
            Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k.to_string(), v.to_string())),
            _ => malformed(line, format!("expected key=value, found `{kv}`")),
        })
        .collect()
}

fn parse_count(line: usize, key: &str, v: &str) -> Result<usize, FormatError> {
    v.parse().or_else(|_| {
        malformed(
            line,
            format!("`{key}` must be a non-negative integer, found `{v}`"),
        )
    })
}

pub fn parse_algebra_text(text: &str) -> Result<Algebra, FormatError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return malformed(1, "empty algebra file");
    };
    let mut words = header.split_whitespace();
    if words.next() != Some("algebra") {
        return malformed(hl, "expected `algebra <name> dim=<l>`");
    }
    let Some(name) = words.next().filter(|w| !w.contains('=')) else {
        return malformed(hl, "missing algebra name");
    };
    let mut dim = None;
    for (k, v) in key_values(hl, &words.collect::<Vec<_>>().join(" "))? {
        match k.as_str() {
            "dim" => dim = Some(parse_count(hl, "dim", &v)?),
            _ => return malformed(hl, format!("unknown header key `{k}`")),
        }
    }
    let Some(dim) = dim.filter(|d| *d >= 1) else {
        return malformed(hl, "header needs dim=<l> with l >= 1");
    };
    let mut labels: Vec<String> = std::iter::once("1".to_string())
        .chain((1..dim).map(|i| format!("e{i}")))
        .collect();
    let mut products: Vec<(usize, &str)> = Vec::new();
    let mut seen_basis = false;
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("basis") {
            if seen_basis || !products.is_empty() {
                return malformed(ln, "`basis` must come once, before any product");
            }
            seen_basis = true;
            let given: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if given.len() != dim {
                return malformed(
                    ln,
                    format!("basis lists {} labels, dim is {dim}", given.len()),
                );
            }
            labels = given;
        } else {
            products.push((ln, l));
        }
    }
    if labels[0] != "1" {
        return malformed(hl, "the first basis label must be `1`");
    }
    let extra: Vec<(String, u32)> = labels[1..].iter().map(|l| (l.clone(), 1)).collect();
    let table = VarTable::new(vec![], extra).map_err(|e| FormatError::Malformed {
        line: hl,
        msg: format!("invalid basis label: {e}"),
    })?;
    let index = |ln: usize, s: &str| -> Result<usize, FormatError> {
        labels
            .iter()
            .position(|l| l == s)
            .map_or_else(|| malformed(ln, format!("unknown basis label `{s}`")), Ok)
    };

    let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    for j in 0..dim {
        c[0][j][j] = Rational::one();
        c[j][0][j] = Rational::one();
    }
    let mut set = vec![vec![false; dim]; dim];
    for (ln, l) in products {
        let Some((lhs, rhs)) = l.split_once('=') else {
            return malformed(ln, "expected `a * b = <combination>`");
        };
        let Some((a, b)) = lhs.split_once('*') else {
            return malformed(ln, "left side must be `a * b`");
        };
        let (i, j) = (index(ln, a.trim())?, index(ln, b.trim())?);
        if set[i][j] {
            return malformed(
                ln,
                format!("product `{} * {}` given twice", labels[i], labels[j]),
            );
        }
        let poly = parse_ast(rhs)
            .and_then(|ast| ast.to_poly(&table))
            .map_err(|e| e.at_line(ln))?;
        let mut coords = vec![Rational::zero(); dim];
        for (m, coef) in poly.terms() {
            if m.degree() > 1 || !is_real(coef) {
                return malformed(
                    ln,
                    "right side must be a real linear combination of basis labels",
                );
            }
            let k = (0..dim - 1)
                .find(|&r| m.exp(table.real_pos(r)) == 1)
                .map_or(0, |r| r + 1);
            coords[k] = coef.re.clone();
        }
        c[i][j] = coords.clone();
        c[j][i] = coords;
        set[i][j] = true;
        set[j][i] = true;
    }
    Ok(make_algebra(name, labels, c)?)
}

/// A preset name or, failing that, a path to an algebra file.
pub fn load_algebra(spec: &str) -> Result<Algebra, FormatError> {
    match preset_algebra(spec) {
        Ok(a) => Ok(a),
        Err(AlgebraError::UnknownPreset(_)) if std::path::Path::new(spec).exists() => {
            let text = std::fs::read_to_string(spec).map_err(|e| FormatError::Io {
                path: spec.to_string(),
                msg: e.to_string(),
            })?;
            parse_algebra_text(&text)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn parse_surface_text(text: &str) -> Result<ModelSurface, FormatError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return malformed(1, "empty surface file");
    };
    let Some(rest) = header.strip_prefix("surface") else {
        return malformed(hl, "expected `surface n=<n> k=<k>`");
    };
    let (mut n, mut k) = (None, None);
    for (key, v) in key_values(hl, rest)? {
        match key.as_str() {
            "n" => n = Some(parse_count(hl, "n", &v)?),
            "k" => k = Some(parse_count(hl, "k", &v)?),
            _ => return malformed(hl, format!("unknown header key `{key}`")),
        }
    }
    let (Some(n), Some(k)) = (n, k) else {
        return malformed(hl, "header needs both n= and k=");
    };
    if k == 0 {
        return malformed(hl, "k must be at least 1");
    }
    let mut zw: Vec<Option<u32>> = vec![None; n];
    let mut ww: Vec<Option<u32>> = vec![None; k];
    let mut eqs: Vec<Option<(usize, String)>> = vec![None; k];
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("weight") {
            for (name, v) in key_values(ln, rest)? {
                let w: u32 = match v.parse() {
                    Ok(w) if w >= 1 => w,
                    _ => {
                        return malformed(
                            ln,
                            format!("weight of `{name}` must be a positive integer"),
                        )
                    }
                };
                let slot = variable_slot(&name, n, k).map_or_else(
                    || malformed(ln, format!("`{name}` is not a z or w variable")),
                    Ok,
                )?;
                match slot {
                    Slot::Z(a) => zw[a] = Some(w),
                    Slot::W(b) => ww[b] = Some(w),
                }
            }
            continue;
        }
        let Some((lhs, rhs)) = l.split_once('=') else {
            return malformed(ln, "expected `Imw<j> = <expression>`");
        };
        let lhs: String = lhs
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect();
        let b = lhs
            .strip_prefix("Im")
            .and_then(|v| variable_slot(v, n, k))
            .and_then(|s| match s {
                Slot::W(b) => Some(b),
                Slot::Z(_) => None,
            });
        let Some(b) = b else {
            return malformed(ln, format!("left side `{lhs}` must be Imw1..Imw{k}"));
        };
        if eqs[b].is_some() {
            return malformed(ln, format!("equation for w{} given twice", b + 1));
        }
        eqs[b] = Some((ln, rhs.to_string()));
    }
    let eqs: Vec<(usize, String)> = eqs
        .into_iter()
        .enumerate()
        .map(|(b, e)| {
            e.map_or_else(
                || malformed(hl, format!("missing equation for w{}", b + 1)),
                Ok,
            )
        })
        .collect::<Result<_, _>>()?;
    let zw: Vec<u32> = zw.into_iter().map(|w| w.unwrap_or(1)).collect();

    let parse_all = |ww: &[u32]| -> Result<(crate::poly::Table, Vec<Poly>), FormatError> {
        let table = canonical_table(&zw, ww)?;
        let phi = eqs
            .iter()
            .map(|(ln, e)| {
                parse_ast(e)
                    .and_then(|ast| ast.to_poly(&table))
                    .map_err(|err| FormatError::from(err.at_line(*ln)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((table, phi))
    };
    let ww: Vec<u32> = if ww.iter().all(Option::is_some) {
        ww.into_iter().flatten().collect()
    } else {
        let provisional: Vec<u32> = ww.iter().map(|w| w.unwrap_or(1)).collect();
        let (table, phi) = parse_all(&provisional)?;
        let mut out = Vec::with_capacity(k);
        for (b, given) in ww.iter().enumerate() {
            if let Some(w) = given {
                out.push(*w);
                continue;
            }
            let u_free = phi[b].filter_terms(|m| (0..k).all(|c| m.exp(table.real_pos(c)) == 0));
            match u_free.weights().first() {
                Some(w) => out.push(*w),
                None => {
                    return malformed(
                        eqs[b].0,
                        format!(
                            "cannot infer the weight of w{}; give it on a weight line",
                            b + 1
                        ),
                    )
                }
            }
        }
        out
    };
    let (table, phi) = parse_all(&ww)?;
    Ok(ModelSurface::new(&table, n, k, phi)?)
}

enum Slot {
    Z(usize),
    W(usize),
}

fn variable_slot(name: &str, n: usize, k: usize) -> Option<Slot> {
    let (kind, idx) = name.split_at(1.min(name.len()));
    let idx: usize = idx.parse().ok()?;
    match kind {
        "z" if (1..=n).contains(&idx) => Some(Slot::Z(idx - 1)),
        "w" if (1..=k).contains(&idx) => Some(Slot::W(idx - 1)),
        _ => None,
    }
}

pub fn read_surface_file(path: &str) -> Result<ModelSurface, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.to_string(),
        msg: e.to_string(),
    })?;
    parse_surface_text(&text)
}
