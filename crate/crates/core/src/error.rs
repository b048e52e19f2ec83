use std::fmt;

use thiserror::Error;

/// The two eigenvalue-positivity inequalities that carve the physical
/// region out of the Bloch parameter cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `1 - c3 >= sqrt((r - s)^2 + (c1 + c2)^2)`
    First,
    /// `1 + c3 >= sqrt((r + s)^2 + (c1 - c2)^2)`
    Second,
    /// A single parameter outside `[-1, 1]`.
    Range,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inequality::First => write!(f, "1 - c3 >= sqrt((r-s)^2 + (c1+c2)^2)"),
            Inequality::Second => write!(f, "1 + c3 >= sqrt((r+s)^2 + (c1-c2)^2)"),
            Inequality::Range => write!(f, "every parameter in [-1, 1]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unphysical state: {inequality} violated by {excess:.3e}")]
    Unphysical { inequality: Inequality, excess: f64 },

    #[error("non-finite parameter {0}")]
    NonFinite(&'static str),

    #[error("not an X-state: entry ({row},{col}) has magnitude {magnitude:.3e}")]
    NotXState {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("matrix is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:.3e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("trace is {0}, expected 1")]
    TraceNotUnit(f64),

    #[error("matrix is not positive semidefinite: eigenvalue {0:.3e}")]
    NotPositive(f64),

    #[error("{name} = {value} outside the domain [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("second derivative is singular at z = {z}: {reason}")]
    Singular { z: f64, reason: &'static str },

    #[error("expected a rank-two state, found rank {rank}")]
    Rank { rank: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
