//! Brute-force classical correlation by direct search over von Neumann
//! measurements on party `b`.
//!
//! A projective measurement on a qubit is labelled by a unit vector
//! `z = (z1, z2, z3)`: the projectors are `½(I ± z·σ)`. The search does not
//! use the one-variable reduction of [`crate::discord`]; it evaluates the
//! conditional entropy for each direction and is used to certify it.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Matrix3;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::golden;
use crate::xstate::{binary_entropy, polarization_term, BlochX};

pub const UNIT_TOL: f64 = 1e-12;

/// Probabilities below this make the outcome branch contribute nothing.
pub const DEGENERATE_PROB: f64 = 1e-14;

pub const MIN_GRID: usize = 64;
pub const DEFAULT_GRID: usize = 256;
pub const CERTIFICATION_GRID: usize = 512;

const REFINE_ROUNDS: usize = 30;

/// Unit vector labelling a measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPoint {
    z: [f64; 3],
}

impl MeasurementPoint {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let norm2 = z1 * z1 + z2 * z2 + z3 * z3;
        if (norm2 - 1.0).abs() > UNIT_TOL || !norm2.is_finite() {
            return Err(Error::Domain {
                name: "|z|²",
                value: norm2,
                lo: 1.0,
                hi: 1.0,
            });
        }
        Ok(Self { z: [z1, z2, z3] })
    }

    /// `(√(1−z3²) cos φ, √(1−z3²) sin φ, z3)`.
    pub fn from_angles(z3: f64, phi: f64) -> Self {
        let z3 = z3.clamp(-1.0, 1.0);
        let rho = (1.0 - z3 * z3).max(0.0).sqrt();
        Self {
            z: [rho * phi.cos(), rho * phi.sin(), z3],
        }
    }

    /// Direction obtained by conjugating `σ3` with the unitary of the unit
    /// quaternion `(t, y)`.
    pub fn from_quaternion(t: f64, y: [f64; 3]) -> Result<Self> {
        let m = conjugate_paulis(t, y)?;
        Self::new(m[(0, 2)], m[(1, 2)], m[(2, 2)])
    }

    pub fn z(&self) -> [f64; 3] {
        self.z
    }
}

/// Matrix of the coefficients of `V†σᵢV` in the Pauli basis for
/// `V = t I + i Σ yⱼ σⱼ`. Column three is the measurement direction.
pub fn conjugate_paulis(t: f64, y: [f64; 3]) -> Result<Matrix3<f64>> {
    let [y1, y2, y3] = y;
    let norm2 = t * t + y1 * y1 + y2 * y2 + y3 * y3;
    if (norm2 - 1.0).abs() > UNIT_TOL || !norm2.is_finite() {
        return Err(Error::Domain {
            name: "t² + |y|²",
            value: norm2,
            lo: 1.0,
            hi: 1.0,
        });
    }
    let (t2, a, b, c) = (t * t, y1 * y1, y2 * y2, y3 * y3);
    Ok(Matrix3::new(
        t2 + a - b - c,
        2.0 * (t * y3 + y1 * y2),
        2.0 * (-t * y2 + y1 * y3),
        2.0 * (-t * y3 + y1 * y2),
        t2 + b - c - a,
        2.0 * (t * y1 + y2 * y3),
        2.0 * (t * y2 + y1 * y3),
        2.0 * (-t * y1 + y2 * y3),
        t2 + c - a - b,
    ))
}

/// Outcome probabilities and post-measurement spectra of party `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEnsemble {
    pub p0: f64,
    pub p1: f64,
    /// `(λ₊, λ₋)` of the state conditioned on outcome 0.
    pub eig0: (f64, f64),
    pub eig1: (f64, f64),
}

fn branch_eigs(weight: f64, radicand: f64) -> (f64, f64) {
    if weight < 2.0 * DEGENERATE_PROB {
        return (1.0, 0.0);
    }
    let root = radicand.max(0.0).sqrt().min(weight);
    let plus = (weight + root) / (2.0 * weight);
    (plus.clamp(0.5, 1.0), (1.0 - plus).clamp(0.0, 0.5))
}

pub fn conditional_ensemble(p: &BlochX, m: &MeasurementPoint) -> ConditionalEnsemble {
    let [r, s, c1, c2, c3] = p.to_array();
    let [z1, z2, z3] = m.z;
    let theta = (c1 * z1).powi(2) + (c2 * z2).powi(2) + (c3 * z3).powi(2);
    let cross = 2.0 * r * c3 * z3;
    let (w0, w1) = (1.0 + s * z3, 1.0 - s * z3);
    ConditionalEnsemble {
        p0: 0.5 * w0,
        p1: 0.5 * w1,
        eig0: branch_eigs(w0, r * r + cross + theta),
        eig1: branch_eigs(w1, r * r - cross + theta),
    }
}

/// `p₀ S(ρ₀) + p₁ S(ρ₁)` in bits.
pub fn conditional_entropy(p: &BlochX, m: &MeasurementPoint) -> f64 {
    let e = conditional_ensemble(p, m);
    let term = |pk: f64, eig: (f64, f64)| {
        if pk < DEGENERATE_PROB {
            0.0
        } else {
            pk * binary_entropy(eig.0).unwrap_or(0.0)
        }
    };
    term(e.p0, e.eig0) + term(e.p1, e.eig1)
}

/// `max Σ(cᵢzᵢ)²` over the circle `z1² + z2² = 1 − z3²`. The expression is
/// linear in `z1²`, so the maximum sits at `z2 = 0` or `z1 = 0`.
pub fn theta_max_check(p: &BlochX, z3: f64) -> f64 {
    let rest = 1.0 - z3 * z3;
    let base = (p.c3() * z3).powi(2);
    (base + p.c1() * p.c1() * rest).max(base + p.c2() * p.c2() * rest)
}

/// `G(θ, z3)`: one minus the conditional entropy, written in terms of
/// `θ = Σ(cᵢzᵢ)²`.
pub fn g_function(p: &BlochX, theta: f64, z3: f64) -> f64 {
    let [r, s, _, _, c3] = p.to_array();
    let quarter = |num: f64, den: f64| {
        if num <= 0.0 || den <= 0.0 {
            0.0
        } else {
            0.25 * num * (num / den).log2()
        }
    };
    let mut g = 0.0;
    for sign in [1.0, -1.0] {
        let w = 1.0 + sign * s * z3;
        let root = (r * r + sign * 2.0 * r * c3 * z3 + theta).max(0.0).sqrt();
        g += quarter(w + root, w) + quarter(w - root, w);
    }
    g
}

/// Result of the measurement sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    /// `S(ρᵃ) − min S(ρ|{B_k})` in bits.
    pub value: f64,
    pub argmax: MeasurementPoint,
    pub z3: f64,
    pub phi: f64,
    /// Grid spacing in `z3`; the spacing in `φ` is `π/2` times this.
    pub grid_step: f64,
}

/// Classical correlation by a `grid_n × grid_n` sweep of the quarter-disk
/// `z3 ∈ [0, 1]`, `φ ∈ [0, π/2]` followed by coordinate-wise golden-section
/// refinement of the best cell.
///
/// The conditional entropy depends on the direction only through `z3` and
/// the squares `z1²`, `z2²`, and is even under `z → −z`, so the quarter-disk
/// covers every measurement. Rows are evaluated in parallel; the reduction
/// keeps the lexicographically smallest `(z3, φ)` among equal values, so the
/// result does not depend on the thread count.
pub fn oracle_classical_correlation(p: &BlochX, grid_n: usize) -> Result<OracleResult> {
    if grid_n < MIN_GRID {
        return Err(Error::Domain {
            name: "grid_n",
            value: grid_n as f64,
            lo: MIN_GRID as f64,
            hi: f64::INFINITY,
        });
    }
    let last = (grid_n - 1) as f64;
    let objective =
        |z3: f64, phi: f64| -conditional_entropy(p, &MeasurementPoint::from_angles(z3, phi));

    let rows: Vec<(f64, usize)> = (0..grid_n)
        .into_par_iter()
        .map(|i| {
            let z3 = i as f64 / last;
            let mut best = (f64::NEG_INFINITY, 0);
            for j in 0..grid_n {
                let v = objective(z3, FRAC_PI_2 * j as f64 / last);
                if v > best.0 {
                    best = (v, j);
                }
            }
            best
        })
        .collect();
    let (mut best_v, bi, bj) =
        rows.iter()
            .enumerate()
            .fold((f64::NEG_INFINITY, 0, 0), |acc, (i, &(v, j))| {
                if v > acc.0 {
                    (v, i, j)
                } else {
                    acc
                }
            });

    let step = 1.0 / last;
    let mut z3 = bi as f64 * step;
    let mut phi = FRAC_PI_2 * bj as f64 * step;
    let (z_lo, z_hi) = ((z3 - step).max(0.0), (z3 + step).min(1.0));
    let (p_lo, p_hi) = (
        (phi - FRAC_PI_2 * step).max(0.0),
        (phi + FRAC_PI_2 * step).min(FRAC_PI_2),
    );
    for _ in 0..REFINE_ROUNDS {
        let (zn, vz) = golden::maximize(|x| objective(x, phi), z_lo, z_hi, 1e-13, 100);
        if vz > best_v {
            best_v = vz;
            z3 = zn;
        }
        let (pn, vp) = golden::maximize(|x| objective(z3, x), p_lo, p_hi, 1e-13, 100);
        if vp > best_v {
            best_v = vp;
            phi = pn;
        }
    }

    let s_a = 1.0 - polarization_term(p.r());
    Ok(OracleResult {
        value: s_a + best_v,
        argmax: MeasurementPoint::from_angles(z3, phi),
        z3,
        phi,
        grid_step: step,
    })
}
