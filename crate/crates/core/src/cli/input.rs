//! Parsing of state descriptions.
//!
//! Three formats are accepted:
//!
//! * plain text: five numbers `r s c1 c2 c3`, separated by whitespace or commas;
//! * JSON: an object with either a `bloch` array of five numbers or a
//!   `matrix` of 4×4 `[re, im]` pairs (row-major);
//! * a delimited matrix: four rows of four entries, each a real or complex
//!   number such as `0.1`, `0.1+0.05i` or `-0.2i`.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::error::Error as StateError;
use crate::linalg::{c, Op4, C64};
use crate::xstate::{matrix_to_bloch, BlochX, CornerPhases, XDensityMatrix};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no state given; use --input FILE or --bloch \"r s c1 c2 c3\"")]
    Missing,
    #[error(transparent)]
    State(#[from] StateError),
}

/// A parsed state before validation.
#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Bloch([f64; 5]),
    Matrix(Box<Op4>),
}

/// A validated state together with the phases stripped from a matrix input.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedState {
    pub bloch: BlochX,
    pub matrix: XDensityMatrix,
    pub phases: Option<CornerPhases>,
}

impl StateInput {
    pub fn resolve(&self) -> Result<ResolvedState, InputError> {
        match self {
            StateInput::Bloch(p) => {
                let bloch = BlochX::from_array(*p)?;
                Ok(ResolvedState {
                    bloch,
                    matrix: crate::xstate::bloch_to_matrix(&bloch),
                    phases: None,
                })
            }
            StateInput::Matrix(m) => {
                let matrix = XDensityMatrix::from_dense(m)?;
                let (bloch, phases) = matrix_to_bloch(&matrix)?;
                Ok(ResolvedState {
                    bloch,
                    matrix,
                    phases: Some(phases),
                })
            }
        }
    }
}

#[derive(Deserialize)]
struct JsonState {
    bloch: Option<Vec<f64>>,
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

fn parse_number(tok: &str) -> Result<f64, InputError> {
    tok.parse::<f64>()
        .map_err(|_| InputError::Parse(format!("`{tok}` is not a number")))
}

fn parse_complex(tok: &str) -> Result<C64, InputError> {
    C64::from_str(tok).map_err(|_| InputError::Parse(format!("`{tok}` is not a complex number")))
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|ch: char| ch.is_whitespace() || ch == ',' || ch == ';')
        .filter(|t| !t.is_empty())
}

fn bloch_from_vec(v: &[f64]) -> Result<StateInput, InputError> {
    let arr: [f64; 5] = v.try_into().map_err(|_| {
        InputError::Parse(format!("expected 5 Bloch parameters, found {}", v.len()))
    })?;
    Ok(StateInput::Bloch(arr))
}

/// Parses `"r s c1 c2 c3"`.
pub fn parse_bloch(text: &str) -> Result<StateInput, InputError> {
    let v = tokens(text)
        .map(parse_number)
        .collect::<Result<Vec<_>, _>>()?;
    bloch_from_vec(&v)
}

fn parse_json(text: &str) -> Result<StateInput, InputError> {
    let js: JsonState = serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    match (js.bloch, js.matrix) {
        (Some(b), None) => bloch_from_vec(&b),
        (None, Some(rows)) => {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(InputError::Parse("`matrix` must be 4×4".into()));
            }
            Ok(StateInput::Matrix(Box::new(Op4::from_fn(|i, j| {
                let [re, im] = rows[i][j];
                c(re, im)
            }))))
        }
        _ => Err(InputError::Parse(
            "exactly one of `bloch` and `matrix` must be present".into(),
        )),
    }
}

fn parse_delimited_matrix(text: &str) -> Result<StateInput, InputError> {
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .map(|l| tokens(l).collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect();
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(InputError::Parse(
            "expected five Bloch parameters or four rows of four matrix entries".into(),
        ));
    }
    let mut m = Op4::zeros();
    for (i, row) in rows.iter().enumerate() {
        for (j, tok) in row.iter().enumerate() {
            m[(i, j)] = parse_complex(tok)?;
        }
    }
    Ok(StateInput::Matrix(Box::new(m)))
}

/// Parses file contents in any of the accepted formats.
pub fn parse_state(text: &str) -> Result<StateInput, InputError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_json(trimmed);
    }
    let body: String = trimmed
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    if tokens(&body).count() == 5 {
        return parse_bloch(&body);
    }
    parse_delimited_matrix(&body)
}

pub fn read_state(path: &Path) -> Result<StateInput, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_state(&text)
}
