//! Text and JSON rendering of results.

use std::fmt::Write as _;

use serde::Serialize;

use crate::discord::{Choice, DiscordResult, NewtonOutcome, NewtonRun, SolutionPath};
use crate::entanglement::KoashiWinterReport;
use crate::oracle::OracleResult;
use crate::xstate::{spectrum, CornerPhases};

/// `x` with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits as i32 {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn join(xs: &[f64], digits: usize) -> String {
    xs.iter()
        .map(|&x| sig(x, digits))
        .collect::<Vec<_>>()
        .join(" ")
}

fn outcome_name(o: NewtonOutcome) -> &'static str {
    match o {
        NewtonOutcome::Converged => "converged",
        NewtonOutcome::LeftInterval => "left-interval",
        NewtonOutcome::SingularCurvature => "singular-curvature",
        NewtonOutcome::Rejected => "rejected",
        NewtonOutcome::IterationLimit => "iteration-limit",
        NewtonOutcome::GoldenFallback => "golden-fallback",
    }
}

fn choice_name(c: Choice) -> &'static str {
    match c {
        Choice::Zero => "z=0",
        Choice::One => "z=1",
        Choice::Interior => "interior",
    }
}

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub seed: f64,
    pub bracket: Option<[f64; 2]>,
    pub iterates: Vec<f64>,
    pub outcome: &'static str,
    pub point: Option<f64>,
}

impl From<&NewtonRun> for RunRecord {
    fn from(r: &NewtonRun) -> Self {
        Self {
            seed: r.seed,
            bracket: r.bracket.map(|(a, b)| [a, b]),
            iterates: r.iterates.clone(),
            outcome: outcome_name(r.outcome),
            point: r.point,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceRecord {
    pub newton_from_one: RunRecord,
    pub brackets: Vec<RunRecord>,
    pub choice: &'static str,
    pub tie: bool,
}

#[derive(Debug, Serialize)]
pub struct PhaseRecord {
    pub outer: f64,
    pub inner: f64,
    pub local_a: f64,
    pub local_b: f64,
}

impl From<&CornerPhases> for PhaseRecord {
    fn from(p: &CornerPhases) -> Self {
        Self {
            outer: p.outer,
            inner: p.inner,
            local_a: p.local_a,
            local_b: p.local_b,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleRecord {
    pub grid: usize,
    pub value: f64,
    pub direction: [f64; 3],
    pub disagreement: f64,
}

impl OracleRecord {
    pub fn new(o: &OracleResult, grid: usize, engine_value: f64) -> Self {
        Self {
            grid,
            value: o.value,
            direction: o.argmax.z(),
            disagreement: (o.value - engine_value).abs(),
        }
    }
}

/// Field names mirror [`DiscordResult`]. `bloch` is written at full
/// precision so the record can be fed back as input.
#[derive(Debug, Serialize)]
pub struct DiscordRecord {
    pub bloch: [f64; 5],
    pub eigenvalues: [f64; 4],
    pub phases: Option<PhaseRecord>,
    pub discord: f64,
    pub classical_correlation: f64,
    pub mutual_information: f64,
    pub z_star: f64,
    pub f_max: f64,
    pub region: &'static str,
    pub path: &'static str,
    pub trace: Option<TraceRecord>,
    pub crosscheck_deviation: Option<f64>,
    pub oracle: Option<OracleRecord>,
}

fn trace_record(t: &crate::discord::SolverTrace) -> TraceRecord {
    TraceRecord {
        newton_from_one: (&t.from_one).into(),
        brackets: t.brackets.iter().map(Into::into).collect(),
        choice: choice_name(t.choice),
        tie: t.tie,
    }
}

impl DiscordRecord {
    pub fn new(
        r: &DiscordResult,
        phases: Option<&CornerPhases>,
        oracle: Option<OracleRecord>,
    ) -> Self {
        let (path, trace) = match &r.path {
            SolutionPath::Analytic(_) => ("analytic", None),
            SolutionPath::Numeric(t) => ("numeric", Some(trace_record(t))),
        };
        Self {
            bloch: r.bloch.to_array(),
            eigenvalues: spectrum(&r.bloch).values(),
            phases: phases.filter(|p| !p.is_trivial()).map(Into::into),
            discord: r.discord,
            classical_correlation: r.classical_correlation,
            mutual_information: r.mutual_information,
            z_star: r.z_star,
            f_max: r.f_max,
            region: r.region.name(),
            path,
            trace: trace.or_else(|| {
                r.crosscheck
                    .as_ref()
                    .map(|c| trace_record(&c.numeric.trace))
            }),
            crosscheck_deviation: r.crosscheck.as_ref().map(|c| c.deviation),
            oracle,
        }
    }

    pub fn to_text(&self, k: usize) -> String {
        let mut out = String::new();
        let line = |out: &mut String, key: &str, val: String| {
            let _ = writeln!(out, "{key:<22}{val}");
        };
        line(&mut out, "bloch", join(&self.bloch, k));
        line(&mut out, "eigenvalues", join(&self.eigenvalues, k));
        if let Some(p) = &self.phases {
            line(
                &mut out,
                "stripped phases",
                format!("outer={} inner={}", sig(p.outer, k), sig(p.inner, k)),
            );
        }
        line(&mut out, "region", self.region.to_string());
        line(&mut out, "path", self.path.to_string());
        line(&mut out, "Q", sig(self.discord, k));
        line(&mut out, "C", sig(self.classical_correlation, k));
        line(&mut out, "I", sig(self.mutual_information, k));
        line(&mut out, "z*", sig(self.z_star, k));
        line(&mut out, "max F", sig(self.f_max, k));
        if let Some(t) = &self.trace {
            let n = &t.newton_from_one;
            line(
                &mut out,
                "newton from z0=1",
                format!("{} [{}]", join(&n.iterates, k), n.outcome),
            );
            for b in &t.brackets {
                let [lo, hi] = b.bracket.unwrap_or([b.seed, b.seed]);
                line(
                    &mut out,
                    "bracket",
                    format!(
                        "[{}, {}] -> {} [{}, {} steps]",
                        sig(lo, k),
                        sig(hi, k),
                        b.point.map_or("none".into(), |z| sig(z, k)),
                        b.outcome,
                        b.iterates.len()
                    ),
                );
            }
            line(&mut out, "choice", t.choice.to_string());
            line(
                &mut out,
                "endpoint tie",
                if t.tie { "yes" } else { "no" }.into(),
            );
        }
        if let Some(d) = self.crosscheck_deviation {
            line(&mut out, "numeric crosscheck", sig(d, 3));
        }
        if let Some(o) = &self.oracle {
            line(
                &mut out,
                "oracle C",
                format!("{} (grid {})", sig(o.value, k), o.grid),
            );
            line(&mut out, "oracle direction", join(&o.direction, k));
            line(&mut out, "oracle disagreement", sig(o.disagreement, 3));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct KwRecord {
    pub case: &'static str,
    pub mu: [f64; 4],
    pub concurrence: f64,
    pub eof: f64,
    pub classical_correlation_a: f64,
    pub entropy_b: f64,
    pub residual: f64,
    pub z_star: f64,
    pub con2_formula: Option<f64>,
    pub warnings: Vec<String>,
}

impl From<&KoashiWinterReport> for KwRecord {
    fn from(r: &KoashiWinterReport) -> Self {
        Self {
            case: r.case.name(),
            mu: r.complementary.mu,
            concurrence: r.complementary.concurrence,
            eof: r.complementary.eof,
            classical_correlation_a: r.classical_correlation_a,
            entropy_b: r.entropy_b,
            residual: r.residual,
            z_star: r.z_star,
            con2_formula: r.con2_formula,
            warnings: r.warnings.clone(),
        }
    }
}

impl KwRecord {
    pub fn to_text(&self, k: usize) -> String {
        let mut out = String::new();
        let mut line = |key: &str, val: String| {
            let _ = writeln!(out, "{key:<22}{val}");
        };
        line("case", self.case.to_string());
        line("mu", join(&self.mu, k));
        line("concurrence", sig(self.concurrence, k));
        if let Some(c2) = self.con2_formula {
            line("concurrence^2", sig(self.concurrence * self.concurrence, k));
            line("con^2 formula", sig(c2, k));
        }
        line("E", sig(self.eof, k));
        line("C_a", sig(self.classical_correlation_a, k));
        line("S_b", sig(self.entropy_b, k));
        line("residual", sig(self.residual, 3));
        line("z* (swapped)", sig(self.z_star, k));
        for w in &self.warnings {
            line("warning", w.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.1327414538746698, 6), "0.132741");
        assert_eq!(sig(0.8831286078455, 5), "0.88313");
        assert_eq!(sig(-0.5934, 6), "-0.5934");
        assert_eq!(sig(0.0, 6), "0");
        assert_eq!(sig(1.5e-7, 3), "1.50e-7");
        assert_eq!(sig(2.0, 6), "2");
    }
}
