//! Quantum discord of an X-state with the measurement performed on party `b`.
//!
//! The optimization over von Neumann measurements reduces to maximizing a
//! function `F` of one variable on `[0, 1]`, see [`objective`]. In the
//! regions of [`regions`] the maximum is known in closed form; everywhere
//! else [`solver::global_max`] finds it numerically.

pub mod objective;
pub mod regions;
pub mod solver;

pub use objective::{endpoint_one, f_derivative, f_second_derivative, f_value, FContext};
pub use regions::{
    analytic_max, case_c_value, case_d_value, classify_region, region_memberships, RegionTag,
};
pub use solver::{global_max, Choice, Maximum, NewtonOutcome, NewtonRun, SolverTrace};

use crate::error::Result;
use crate::xstate::{mutual_information, polarization_term, spectrum, BlochX};

/// Analytic and numeric maxima are required to agree to this tolerance in
/// verification mode.
pub const AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Closed forms where available, numerics otherwise.
    #[default]
    Production,
    /// Additionally runs the numeric search in the analytic regions and
    /// records the comparison.
    Verification,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolutionPath {
    Analytic(RegionTag),
    Numeric(SolverTrace),
}

/// Numeric cross-check of a closed-form maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Crosscheck {
    pub numeric: Maximum,
    /// `|analytic f_max − numeric f_max|`
    pub deviation: f64,
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        self.deviation <= AGREEMENT_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordResult {
    pub bloch: BlochX,
    pub discord: f64,
    pub classical_correlation: f64,
    pub mutual_information: f64,
    pub z_star: f64,
    pub f_max: f64,
    pub region: RegionTag,
    pub path: SolutionPath,
    pub crosscheck: Option<Crosscheck>,
}

impl DiscordResult {
    /// Newton iterates from `z = 1`, if the numeric path ran.
    pub fn newton_iterates(&self) -> Option<&[f64]> {
        match &self.path {
            SolutionPath::Numeric(t) => Some(&t.from_one.iterates),
            SolutionPath::Analytic(_) => self
                .crosscheck
                .as_ref()
                .map(|c| c.numeric.trace.from_one.iterates.as_slice()),
        }
    }
}

pub fn discord(p: &BlochX) -> DiscordResult {
    discord_with(p, Mode::Production)
}

pub fn discord_with(p: &BlochX, mode: Mode) -> DiscordResult {
    let ctx = FContext::new(*p);
    let region = classify_region(&ctx);
    let (z_star, f_max, path, crosscheck) = match analytic_max(&ctx, region) {
        Ok((z, f)) => {
            let crosscheck = (mode == Mode::Verification).then(|| {
                let numeric = global_max(&ctx);
                Crosscheck {
                    deviation: (numeric.f_max - f).abs(),
                    numeric,
                }
            });
            (z, f, SolutionPath::Analytic(region), crosscheck)
        }
        Err(_) => {
            let m = global_max(&ctx);
            (m.z_star, m.f_max, SolutionPath::Numeric(m.trace), None)
        }
    };
    let q = quantum_discord_from_max(p, f_max);
    let mi = mutual_information(p);
    DiscordResult {
        bloch: *p,
        discord: q,
        classical_correlation: mi - q,
        mutual_information: mi,
        z_star,
        f_max,
        region,
        path,
        crosscheck,
    }
}

/// `Q = 2 − ½(1+s)log₂(1+s) − ½(1−s)log₂(1−s) + Σλ log₂λ − max F`.
pub fn quantum_discord_from_max(p: &BlochX, f_max: f64) -> f64 {
    2.0 - polarization_term(p.s()) + spectrum(p).xlogx_sum() - f_max
}

/// Convenience wrapper returning only the discord value.
pub fn discord_value(p: [f64; 5]) -> Result<f64> {
    Ok(discord(&BlochX::from_array(p)?).discord)
}
