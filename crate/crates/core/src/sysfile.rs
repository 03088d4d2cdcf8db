//! Plain-text variety descriptions.
//!
//! ```text
//! # 2x2 determinant
//! vars: x0 x1 x2 x3
//! codim: 1
//! kind: projective
//! gen: x0*x3 - x1*x2
//! ```
//!
//! Variables may be separated by spaces or commas. Blank lines and text
//! after `#` are ignored. `codim` defaults to the number of generators and
//! `kind` to `affine`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::critical::{CriticalError, VarietyKind, VarietyPresentation};
use crate::poly::{parse_polynomial, Domain, PolyError, RingContext};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SystemFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Polynomial { line: usize, source: PolyError },
    #[error("missing `{0}:` entry")]
    Missing(&'static str),
    #[error(transparent)]
    Variety(#[from] CriticalError),
}

fn syntax(line: usize, message: impl Into<String>) -> SystemFileError {
    SystemFileError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_system(text: &str) -> Result<VarietyPresentation, SystemFileError> {
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut codim: Option<usize> = None;
    let mut kind = None;
    let mut gens: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `key: value`, found `{content}`")))?;
        let value = value.trim();
        match key.trim() {
            "vars" => {
                if vars.is_some() {
                    return Err(syntax(line, "duplicate `vars:`"));
                }
                let names: Vec<String> = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if names.is_empty() {
                    return Err(syntax(line, "no variables declared"));
                }
                vars = Some((line, names));
            }
            "codim" => {
                let c = value
                    .parse()
                    .map_err(|_| syntax(line, format!("bad codimension `{value}`")))?;
                if codim.replace(c).is_some() {
                    return Err(syntax(line, "duplicate `codim:`"));
                }
            }
            "kind" => {
                let k = match value {
                    "affine" => VarietyKind::Affine,
                    "projective" => VarietyKind::Projective,
                    other => return Err(syntax(line, format!("unknown kind `{other}`"))),
                };
                if kind.replace(k).is_some() {
                    return Err(syntax(line, "duplicate `kind:`"));
                }
            }
            "gen" => gens.push((line, value.to_string())),
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let (vars_line, names) = vars.ok_or(SystemFileError::Missing("vars"))?;
    if gens.is_empty() {
        return Err(SystemFileError::Missing("gen"));
    }
    let ring = RingContext::new(&names, Domain::GaussianRational).map_err(|source| {
        SystemFileError::Polynomial {
            line: vars_line,
            source,
        }
    })?;
    let polys = gens
        .iter()
        .map(|(line, text)| {
            parse_polynomial(text, &ring).map_err(|source| SystemFileError::Polynomial { line: *line, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let codim = codim.unwrap_or(polys.len());
    Ok(VarietyPresentation::new(polys, codim, kind.unwrap_or(VarietyKind::Affine))?)
}

pub fn write_system(variety: &VarietyPresentation, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(comment) = comment {
        for line in comment.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "vars: {}", variety.ring().variable_names().join(" "));
    let _ = writeln!(out, "codim: {}", variety.codim());
    let kind = match variety.kind() {
        VarietyKind::Affine => "affine",
        VarietyKind::Projective => "projective",
    };
    let _ = writeln!(out, "kind: {kind}");
    for g in variety.generators() {
        let _ = writeln!(out, "gen: {g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DET: &str = "# determinant\nvars: x0, x1 x2 x3\ncodim: 1\nkind: projective\n\ngen: x0*x3 - x1*x2  # rank one\n";

    #[test]
    fn parses_determinant() {
        let v = parse_system(DET).unwrap();
        assert_eq!(v.ring().variable_names(), ["x0", "x1", "x2", "x3"]);
        assert_eq!(v.codim(), 1);
        assert_eq!(v.kind(), VarietyKind::Projective);
        assert_eq!(v.generators().len(), 1);
    }

    #[test]
    fn round_trip() {
        let text = "vars: x y\nkind: projective\ngen: (x - I*y)^2 + 1/3*x*y\n";
        let v = parse_system(text).unwrap();
        let written = write_system(&v, Some("test"));
        let again = parse_system(&written).unwrap();
        assert_eq!(v.generators(), again.generators());
        assert_eq!(again.codim(), 1);
    }

    #[test]
    fn defaults() {
        let v = parse_system("vars: x y\ngen: x^2 + y^2 - 1").unwrap();
        assert_eq!(v.kind(), VarietyKind::Affine);
        assert_eq!(v.codim(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_system("gen: x").unwrap_err(), SystemFileError::Missing("vars"));
        assert_eq!(parse_system("vars: x").unwrap_err(), SystemFileError::Missing("gen"));
        assert!(matches!(
            parse_system("vars: x\nkind: weird\ngen: x"),
            Err(SystemFileError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_system("vars: x\n\ngen: x + z"),
            Err(SystemFileError::Polynomial { line: 3, .. })
        ));
        assert!(matches!(parse_system("vars: x y\nkind: projective\ngen: x + 1"), Err(SystemFileError::Variety(_))));
        assert!(matches!(parse_system("vars: x\nfoo"), Err(SystemFileError::Syntax { line: 2, .. })));
    }
}
