//! Global maximization of `F` on `[0, 1]`.
//!
//! Candidates are the two endpoints and every critical point located by
//! Newton's method. Newton is run once unbracketed from `z = 1` and once
//! inside each sign change of `F′` on a uniform scan, where it is guarded by
//! bisection.

use super::objective::{f_derivative, f_second_derivative, f_value, FContext};
use crate::golden;

/// Number of uniformly spaced points on `[0, 1]` at which `F′` is sampled.
pub const SCAN_POINTS: usize = 201;

pub const MAX_NEWTON_ITERS: usize = 100;

const STEP_TOL: f64 = 1e-12;
const SLOPE_TOL: f64 = 1e-13;

/// Two candidate values closer than this are treated as equal.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonOutcome {
    Converged,
    /// The proposed step left `[0, 1]`.
    LeftInterval,
    /// `F″` vanished or could not be evaluated.
    SingularCurvature,
    /// The step increased `|F′|`.
    Rejected,
    /// The iteration limit was reached without a bracket to fall back on.
    IterationLimit,
    /// The iteration limit was reached inside a bracket; the bracket was
    /// searched by golden section instead.
    GoldenFallback,
}

impl NewtonOutcome {
    pub fn found_point(&self) -> bool {
        matches!(
            self,
            NewtonOutcome::Converged | NewtonOutcome::GoldenFallback
        )
    }
}

/// One Newton run: its starting point, the bracket it was confined to, the
/// iterates it produced (the seed excluded) and how it ended.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonRun {
    pub seed: f64,
    pub bracket: Option<(f64, f64)>,
    pub iterates: Vec<f64>,
    pub outcome: NewtonOutcome,
    /// Critical point when the run succeeded.
    pub point: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Zero,
    One,
    Interior,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverTrace {
    pub from_one: NewtonRun,
    pub brackets: Vec<NewtonRun>,
    pub choice: Choice,
    /// `F(0)` and `F(1)` were both maximal and equal within `TIE_TOL`.
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub z_star: f64,
    pub f_max: f64,
    pub trace: SolverTrace,
}

fn converged(step: f64, slope: f64) -> bool {
    step.abs() < STEP_TOL || slope.abs() < SLOPE_TOL
}

/// Plain Newton iteration `z ← z − F′/F″` from `seed`, stopped at the first
/// step that leaves `[0, 1]`, meets a singular `F″` or fails to reduce `|F′|`.
pub fn newton_from(ctx: &FContext, seed: f64) -> NewtonRun {
    let mut run = NewtonRun {
        seed,
        bracket: None,
        iterates: Vec::new(),
        outcome: NewtonOutcome::IterationLimit,
        point: None,
    };
    let mut z = seed;
    let mut slope = f_derivative(ctx, z);
    if slope.abs() < SLOPE_TOL {
        run.outcome = NewtonOutcome::Converged;
        run.point = Some(z);
        return run;
    }
    for _ in 0..MAX_NEWTON_ITERS {
        let curv = match f_second_derivative(ctx, z) {
            Ok(v) if v != 0.0 && v.is_finite() => v,
            _ => {
                run.outcome = NewtonOutcome::SingularCurvature;
                return run;
            }
        };
        let next = z - slope / curv;
        if !(0.0..=1.0).contains(&next) || !slope.is_finite() {
            run.outcome = NewtonOutcome::LeftInterval;
            return run;
        }
        let next_slope = f_derivative(ctx, next);
        if next_slope.is_nan() || next_slope.abs() > slope.abs() {
            run.outcome = NewtonOutcome::Rejected;
            return run;
        }
        run.iterates.push(next);
        let step = next - z;
        z = next;
        slope = next_slope;
        if converged(step, slope) {
            run.outcome = NewtonOutcome::Converged;
            run.point = Some(z);
            return run;
        }
    }
    run
}

/// Newton safeguarded by bisection on a bracket `[lo, hi]` across which `F′`
/// changes sign.
pub fn bracketed_newton(ctx: &FContext, lo: f64, hi: f64) -> NewtonRun {
    let (mut a, mut b) = (lo, hi);
    let sign_a = f_derivative(ctx, a).signum();
    let mut z = 0.5 * (a + b);
    let mut run = NewtonRun {
        seed: z,
        bracket: Some((lo, hi)),
        iterates: Vec::new(),
        outcome: NewtonOutcome::GoldenFallback,
        point: None,
    };
    let mut slope = f_derivative(ctx, z);
    for _ in 0..MAX_NEWTON_ITERS {
        if slope.abs() < SLOPE_TOL || b - a < STEP_TOL {
            run.outcome = NewtonOutcome::Converged;
            run.point = Some(z);
            return run;
        }
        if slope.signum() == sign_a {
            a = z;
        } else {
            b = z;
        }
        let newton = f_second_derivative(ctx, z)
            .ok()
            .filter(|c| *c != 0.0 && c.is_finite())
            .map(|c| z - slope / c)
            .filter(|n| *n > a && *n < b);
        let mut next = newton.unwrap_or(0.5 * (a + b));
        let mut next_slope = f_derivative(ctx, next);
        if newton.is_some() && (next_slope.is_nan() || next_slope.abs() > slope.abs()) {
            next = 0.5 * (a + b);
            next_slope = f_derivative(ctx, next);
        }
        run.iterates.push(next);
        let step = next - z;
        z = next;
        slope = next_slope;
        if converged(step, slope) {
            run.outcome = NewtonOutcome::Converged;
            run.point = Some(z);
            return run;
        }
    }
    let (zg, _) = golden::maximize(|x| f_value(ctx, x), lo, hi, STEP_TOL, 200);
    run.point = Some(zg);
    run
}

/// Brackets `[zᵢ, zᵢ₊₁]` of the uniform scan across which `F′` changes sign.
/// Points where `F′` is NaN are skipped; infinite values keep their sign.
pub fn sign_change_brackets(ctx: &FContext) -> Vec<(f64, f64)> {
    let n = SCAN_POINTS - 1;
    let samples: Vec<(f64, f64)> = (1..=n)
        .map(|i| {
            let z = i as f64 / n as f64;
            (z, f_derivative(ctx, z))
        })
        .filter(|(_, d)| !d.is_nan())
        .collect();
    let mut out = Vec::new();
    for w in samples.windows(2) {
        let ((za, da), (zb, db)) = (w[0], w[1]);
        if da == 0.0 {
            out.push((za, za));
        } else if da * db < 0.0 {
            out.push((za, zb));
        }
    }
    out
}

/// Global maximum of `F` on `[0, 1]`.
///
/// Among values within `TIE_TOL` of the best, `z = 1` is preferred, then
/// `z = 0`, then the interior critical points in increasing order.
pub fn global_max(ctx: &FContext) -> Maximum {
    let from_one = newton_from(ctx, 1.0);
    let brackets: Vec<NewtonRun> = sign_change_brackets(ctx)
        .into_iter()
        .map(|(a, b)| {
            if a == b {
                NewtonRun {
                    seed: a,
                    bracket: Some((a, b)),
                    iterates: Vec::new(),
                    outcome: NewtonOutcome::Converged,
                    point: Some(a),
                }
            } else {
                bracketed_newton(ctx, a, b)
            }
        })
        .collect();

    let f0 = f_value(ctx, 0.0);
    let f1 = f_value(ctx, 1.0);
    let mut interior: Vec<(f64, f64)> = std::iter::once(&from_one)
        .chain(brackets.iter())
        .filter(|r| r.outcome.found_point())
        .filter_map(|r| r.point)
        .filter(|z| *z > 0.0 && *z < 1.0)
        .map(|z| (z, f_value(ctx, z)))
        .collect();
    interior.sort_by(|x, y| x.0.total_cmp(&y.0));

    let best = interior.iter().map(|c| c.1).fold(f0.max(f1), f64::max);
    let near = |v: f64| v >= best - TIE_TOL;
    let tie = near(f0) && near(f1) && (f0 - f1).abs() < TIE_TOL;

    let (z_star, f_max, choice) = if near(f1) {
        (1.0, f1, Choice::One)
    } else if near(f0) {
        (0.0, f0, Choice::Zero)
    } else {
        let (z, f) = interior
            .iter()
            .copied()
            .find(|c| near(c.1))
            .expect("best value comes from a candidate");
        (z, f, Choice::Interior)
    };

    Maximum {
        z_star,
        f_max,
        trace: SolverTrace {
            from_one,
            brackets,
            choice,
            tie,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::BlochX;

    fn ctx(p: [f64; 5]) -> FContext {
        FContext::new(BlochX::from_array(p).unwrap())
    }

    const EX2: [f64; 5] = [-0.5934, -0.5934, 0.2, 0.2, 0.5];

    #[test]
    fn example_two_interior_maximum() {
        let k = ctx(EX2);
        let m = global_max(&k);
        assert_eq!(m.trace.choice, Choice::Interior);
        assert!((m.z_star - 0.8831286078455).abs() < 1e-9);
        assert!(m.f_max > f_value(&k, 1.0));
        assert_eq!(m.trace.from_one.outcome, NewtonOutcome::Converged);
        assert!((m.trace.from_one.iterates[0] - 0.9200675).abs() < 1e-6);
    }

    #[test]
    fn zero_state_ties_to_one() {
        let m = global_max(&ctx([0.0; 5]));
        assert_eq!(m.f_max, 0.0);
        assert_eq!(m.z_star, 1.0);
        assert!(m.trace.tie);
    }

    #[test]
    fn example_three_maximum_at_zero() {
        for a in [0.0, 0.3, 0.5, 1.0] {
            let r = 1.0 / 3.0 - 2.0 * a / 3.0;
            let k = ctx([r, r, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0]);
            let m = global_max(&k);
            assert_eq!(m.z_star, 0.0, "a = {a}");
        }
    }

    #[test]
    fn grid_dominated_by_result() {
        for p in [
            EX2,
            [0.3, -0.4, 0.2, -0.1, 0.1],
            [0.1, 0.6, -0.3, 0.1, -0.1],
        ] {
            let k = ctx(p);
            let m = global_max(&k);
            for i in 0..=1000 {
                assert!(f_value(&k, i as f64 / 1000.0) <= m.f_max + 1e-14);
            }
        }
    }

    #[test]
    fn bracketed_newton_finds_root() {
        let k = ctx(EX2);
        let run = bracketed_newton(&k, 0.85, 0.9);
        assert_eq!(run.outcome, NewtonOutcome::Converged);
        assert!((run.point.unwrap() - 0.8831286078455).abs() < 1e-9);
    }
}
