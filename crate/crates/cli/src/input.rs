//! JSON input documents: ideals, simplicial complexes, point sets and
//! generator matrices.

use std::path::Path;

use gmdist_core::codes::{point_profile, LinearCode, ProjectivePointSet};
use gmdist_core::groebner::Ideal;
use gmdist_core::linalg::{Field, FieldMatrix};
use gmdist_core::poly::{Polynomial, Ring};
use gmdist_core::schemes::{build_profile, RingProfile};
use gmdist_core::simplicial::SimplicialComplex;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub char: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    #[serde(default)]
    pub minimal_primes: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default)]
    pub char: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    pub char: u32,
    pub ambient: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDoc {
    pub char: u32,
    pub generator: Vec<Vec<i64>>,
}

/// A parsed and validated input file.
pub enum Input {
    Ideal { profile: RingProfile },
    Complex { complex: SimplicialComplex, field: Field, profile: RingProfile },
    Points { points: ProjectivePointSet, profile: RingProfile },
    Code { code: LinearCode },
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Ideal { .. } => "ideal",
            Input::Complex { .. } => "complex",
            Input::Points { .. } => "points",
            Input::Code { .. } => "code",
        }
    }

    pub fn profile(&self) -> Option<&RingProfile> {
        match self {
            Input::Ideal { profile } | Input::Complex { profile, .. } | Input::Points { profile, .. } => Some(profile),
            Input::Code { .. } => None,
        }
    }
}

/// 1-based line and column of byte offset `pos` in `text`.
pub fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

/// Position of the first occurrence of a JSON string literal or key.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let quoted = serde_json::to_string(needle).unwrap_or_else(|_| format!("\"{needle}\""));
    match text.find(&quoted) {
        Some(p) => line_col(text, p),
        None => (1, 1),
    }
}

fn parse_error(text: &str, needle: &str, message: impl Into<String>) -> CliError {
    let (line, column) = locate(text, needle);
    CliError::Parse { line, column, message: message.into() }
}

fn field_of(text: &str, p: u32) -> Result<Field, CliError> {
    Field::new(p).map_err(|e| parse_error(text, "char", e.to_string()))
}

fn typed<T: for<'de> Deserialize<'de>>(text: &str, value: Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| {
        let msg = e.to_string();
        // point at the offending key when serde names one
        let key = msg.split('`').nth(1).unwrap_or(what).to_string();
        parse_error(text, &key, format!("{what} document: {msg}"))
    })
}

/// Parses one polynomial, mapping errors to a position inside its string
/// literal in the file.
fn parse_poly(text: &str, ring: &Ring, src: &str) -> Result<Polynomial, CliError> {
    ring.parse(src).map_err(|e| {
        let quoted = serde_json::to_string(src).unwrap_or_default();
        let (line, column) = match text.find(&quoted) {
            Some(p) => {
                let offset = match &e {
                    gmdist_core::Error::Parse { position, .. } => *position,
                    _ => 0,
                };
                line_col(text, p + 1 + offset)
            }
            None => (1, 1),
        };
        CliError::Parse { line, column, message: e.to_string() }
    })
}

pub fn load(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Input, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let message = msg.rsplit_once(" at line ").map_or(msg.clone(), |(m, _)| m.to_string());
        CliError::Parse { line: e.line(), column: e.column(), message }
    })?;
    let obj = value.as_object().ok_or_else(|| CliError::Parse {
        line: 1,
        column: 1,
        message: "expected a JSON object".into(),
    })?;
    if obj.contains_key("gens") {
        let doc: IdealDoc = typed(text, value, "ideal")?;
        let field = field_of(text, doc.char)?;
        let ring = Ring::new(field, doc.vars.iter().cloned()).map_err(|e| parse_error(text, "vars", e.to_string()))?;
        let gens = doc.gens.iter().map(|g| parse_poly(text, &ring, g)).collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(ring.clone(), gens)?;
        let primes = match &doc.minimal_primes {
            Some(list) => Some(
                list.iter()
                    .map(|gs| {
                        let polys = gs.iter().map(|g| parse_poly(text, &ring, g)).collect::<Result<Vec<_>, _>>()?;
                        Ok(Ideal::new(ring.clone(), polys)?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            ),
            None => None,
        };
        Ok(Input::Ideal { profile: build_profile(ideal, primes)? })
    } else if obj.contains_key("facets") {
        let doc: ComplexDoc = typed(text, value, "complex")?;
        let field = field_of(text, doc.char.unwrap_or(2))?;
        let complex = SimplicialComplex::new(doc.vertices, &doc.facets)
            .map_err(|e| parse_error(text, "facets", e.to_string()))?;
        let profile = complex.profile(field)?;
        Ok(Input::Complex { complex, field, profile })
    } else if obj.contains_key("points") {
        let doc: PointsDoc = typed(text, value, "points")?;
        let field = field_of(text, doc.char)?;
        let points = ProjectivePointSet::new(field, doc.ambient, &doc.points)
            .map_err(|e| parse_error(text, "points", e.to_string()))?;
        let profile = point_profile(&points)?;
        Ok(Input::Points { points, profile })
    } else if obj.contains_key("generator") {
        let doc: CodeDoc = typed(text, value, "code")?;
        let field = field_of(text, doc.char)?;
        let cols = doc.generator.first().map_or(0, Vec::len);
        if cols == 0 || doc.generator.iter().any(|r| r.len() != cols) {
            return Err(parse_error(text, "generator", "generator rows must be nonempty and of equal length"));
        }
        let code = LinearCode::from_matrix(&FieldMatrix::from_rows(field, cols, &doc.generator));
        if code.dimension() == 0 {
            return Err(parse_error(text, "generator", "generator matrix is zero"));
        }
        Ok(Input::Code { code })
    } else {
        Err(CliError::Parse {
            line: 1,
            column: 1,
            message: "unrecognized document: expected one of the keys gens, facets, points, generator".into(),
        })
    }
}
