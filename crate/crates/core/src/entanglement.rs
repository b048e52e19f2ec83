//! Concurrence, entanglement of formation, rank-two purifications and the
//! Koashi–Winter relation `C(ρᵃᵇ) + E(ρᵇᶜ) = S(ρᵇ)`.

use crate::discord::discord;
use crate::error::{Error, Result};
use crate::linalg::{c, kron, psd_sqrt, sigma_y, Op4, C64};
use crate::xstate::{
    binary_entropy, matrix_to_bloch, polarization_term, XDensityMatrix, MATRIX_TOL,
};

/// Eigenvalues above this count toward the rank.
pub const RANK_TOL: f64 = 1e-10;

/// A third eigenvalue in `(RANK_TOL, NEAR_RANK_TOL)` is dropped with a warning.
pub const NEAR_RANK_TOL: f64 = 1e-6;

/// Negative eigenvalues of `√ρ ρ̃ √ρ` smaller in magnitude than this are
/// rounding and are clamped silently.
const CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceReport {
    /// Square roots of the eigenvalues of `ρρ̃`, descending.
    pub mu: [f64; 4],
    pub concurrence: f64,
    /// Entanglement of formation in bits.
    pub eof: f64,
    /// Some eigenvalue of `ρρ̃` was below `−1e-10` before clamping.
    pub clamped: bool,
}

impl ConcurrenceReport {
    fn from_mu(mut mu: [f64; 4], clamped: bool) -> Self {
        mu.sort_by(|a, b| b.total_cmp(a));
        let concurrence = (mu[0] - mu[1] - mu[2] - mu[3]).clamp(0.0, 1.0);
        Self {
            mu,
            concurrence,
            eof: eof_from_concurrence(concurrence),
            clamped,
        }
    }
}

/// `H((1 + √(1 − C²)) / 2)`.
pub fn eof_from_concurrence(con: f64) -> f64 {
    let con = con.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - con * con).sqrt())).unwrap_or(0.0)
}

/// Concurrence of an X-state from its entries: the `μ` are
/// `√(ρ₁₁ρ₄₄) ± |ρ₁₄|` and `√(ρ₂₂ρ₃₃) ± |ρ₂₃|`.
pub fn concurrence(m: &XDensityMatrix) -> ConcurrenceReport {
    let [d1, d2, d3, d4] = m.diag();
    let outer = (d1.max(0.0) * d4.max(0.0)).sqrt();
    let inner = (d2.max(0.0) * d3.max(0.0)).sqrt();
    let (q14, q23) = (m.outer_corner().norm(), m.inner_corner().norm());
    let raw = [outer + q14, outer - q14, inner + q23, inner - q23];
    let clamped = raw.iter().any(|&x| x < -CLAMP_TOL);
    ConcurrenceReport::from_mu(raw.map(|x| x.max(0.0)), clamped)
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &Op4) -> Op4 {
    let yy = kron(&sigma_y(), &sigma_y());
    yy * rho.conjugate() * yy
}

/// Concurrence of an arbitrary two-qubit density matrix through the
/// Hermitian matrix `√ρ ρ̃ √ρ`, which has the same spectrum as `ρρ̃`.
/// X-patterned input is routed to [`concurrence`].
pub fn concurrence_dense(rho: &Op4) -> ConcurrenceReport {
    if let Ok(x) = XDensityMatrix::from_dense(rho) {
        return concurrence(&x);
    }
    let root = psd_sqrt(rho);
    let r = root * spin_flip(rho) * root;
    let herm = (r + r.adjoint()) * c(0.5, 0.0);
    let vals = crate::linalg::hermitian_eigenvalues(&herm);
    let clamped = vals.iter().any(|&l| l < -CLAMP_TOL);
    ConcurrenceReport::from_mu(vals.map(|l| l.max(0.0).sqrt()), clamped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTwoCase {
    /// Support in the `{|00>, |11>}` block: `c3 = 1, r = s, c1 = −c2`.
    I,
    /// Support in the `{|01>, |10>}` block: `c3 = −1, r = −s, c1 = c2`.
    II,
    /// One eigenvector in each block; both physicality inequalities are
    /// saturated.
    III,
}

impl RankTwoCase {
    pub fn name(&self) -> &'static str {
        match self {
            RankTwoCase::I => "I",
            RankTwoCase::II => "II",
            RankTwoCase::III => "III",
        }
    }
}

/// Spectral data and purification of a rank-two X-state.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoDecomposition {
    pub case: RankTwoCase,
    /// `(weight, eigenvector)` in the basis `|00>, |01>, |10>, |11>`, largest weight first.
    pub eigenpairs: [(f64, [C64; 4]); 2],
    /// `Σₖ √ωₖ |φₖ> ⊗ |k>`, component index `4a + 2b + c`.
    pub purification: [C64; 8],
    /// `Tr_a |Ψ><Ψ|` in the basis `|bc>`.
    pub rho_bc: Op4,
    pub warnings: Vec<String>,
}

/// Eigenpairs `(λ₊, v₊), (λ₋, v₋)` of the Hermitian block `[[p, q], [q̄, w]]`.
///
/// With `x = (p − w)/2`, `D = √(x² + |q|²)` and `q = |q| e^{iα}`:
/// `v₊ = (e^{iα} √((D+x)/2D), √((D−x)/2D))` and
/// `v₋ = (−e^{iα} √((D−x)/2D), √((D+x)/2D))`.
/// For real `q` these are the radical formulas with `±` the sign of `q`.
pub fn block_eigenpairs(p: f64, w: f64, q: C64) -> [(f64, [C64; 2]); 2] {
    let mean = 0.5 * (p + w);
    let x = 0.5 * (p - w);
    let abs_q = q.norm();
    let d = x.hypot(abs_q);
    if d == 0.0 {
        return [
            (mean, [c(1.0, 0.0), c(0.0, 0.0)]),
            (mean, [c(0.0, 0.0), c(1.0, 0.0)]),
        ];
    }
    let phase = if abs_q <= 1e-14 {
        c(1.0, 0.0)
    } else {
        q / abs_q
    };
    // D ± x without cancellation
    let (plus, minus) = if x >= 0.0 {
        (d + x, abs_q * abs_q / (d + x))
    } else {
        (abs_q * abs_q / (d - x), d - x)
    };
    let big = (plus / (2.0 * d)).sqrt();
    let small = (minus / (2.0 * d)).sqrt();
    [
        (mean + d, [phase * big, c(small, 0.0)]),
        (mean - d, [-phase * small, c(big, 0.0)]),
    ]
}

fn embed(block: [usize; 2], v: [C64; 2]) -> [C64; 4] {
    let mut out = [c(0.0, 0.0); 4];
    out[block[0]] = v[0];
    out[block[1]] = v[1];
    out
}

const OUTER: [usize; 2] = [0, 3];
const INNER: [usize; 2] = [1, 2];

pub fn rank_two_classify(m: &XDensityMatrix) -> Result<RankTwoDecomposition> {
    let [d1, d2, d3, d4] = m.diag();
    let [ip, im] = block_eigenpairs(d2, d3, m.inner_corner());
    let [op, om] = block_eigenpairs(d1, d4, m.outer_corner());
    let mut all = [
        (ip.0, embed(INNER, ip.1), INNER),
        (im.0, embed(INNER, im.1), INNER),
        (op.0, embed(OUTER, op.1), OUTER),
        (om.0, embed(OUTER, om.1), OUTER),
    ];
    all.sort_by(|a, b| b.0.total_cmp(&a.0));

    let rank = all.iter().filter(|e| e.0 > RANK_TOL).count();
    let mut warnings = Vec::new();
    if rank == 3 && all[2].0 < NEAR_RANK_TOL {
        warnings.push(format!(
            "third eigenvalue {:.3e} below {:.0e} discarded; state treated as rank two",
            all[2].0, NEAR_RANK_TOL
        ));
    } else if rank != 2 {
        return Err(Error::Rank { rank });
    }

    let (first, second) = (all[0], all[1]);
    let case = match (first.2, second.2) {
        (OUTER, OUTER) => RankTwoCase::I,
        (INNER, INNER) => RankTwoCase::II,
        _ => RankTwoCase::III,
    };
    let total = first.0 + second.0;
    let eigenpairs = [(first.0 / total, first.1), (second.0 / total, second.1)];

    let mut purification = [c(0.0, 0.0); 8];
    for (k, (weight, v)) in eigenpairs.iter().enumerate() {
        let amp = weight.max(0.0).sqrt();
        for (ab, comp) in v.iter().enumerate() {
            purification[2 * ab + k] = *comp * amp;
        }
    }
    let rho_bc = Op4::from_fn(|i, j| {
        (0..2)
            .map(|a| purification[4 * a + i] * purification[4 * a + j].conj())
            .sum()
    });
    Ok(RankTwoDecomposition {
        case,
        eigenpairs,
        purification,
        rho_bc,
        warnings,
    })
}

/// `Tr_c |Ψ><Ψ|`, which reproduces the decomposed state.
pub fn reduce_to_ab(d: &RankTwoDecomposition) -> Op4 {
    let psi = &d.purification;
    Op4::from_fn(|i, j| (0..2).map(|k| psi[2 * i + k] * psi[2 * j + k].conj()).sum())
}

pub fn complementary_state(d: &RankTwoDecomposition) -> Op4 {
    d.rho_bc
}

#[derive(Debug, Clone, PartialEq)]
pub struct KoashiWinterReport {
    pub case: RankTwoCase,
    pub complementary: ConcurrenceReport,
    /// Classical correlation with the measurement on party `a`.
    pub classical_correlation_a: f64,
    /// `S(ρᵇ)` in bits.
    pub entropy_b: f64,
    /// `|C + E − S(ρᵇ)|`
    pub residual: f64,
    /// Maximizer of `F` for the state with the parties exchanged.
    pub z_star: f64,
    /// `½(1 + r² − s² − c3² − c1² + c2²)`, reported in case III.
    pub con2_formula: Option<f64>,
    pub warnings: Vec<String>,
}

/// Checks the Koashi–Winter relation on a rank-two X-state. The classical
/// correlation is computed for a measurement on party `a` by exchanging the
/// roles of the parties before calling the discord engine.
pub fn koashi_winter(m: &XDensityMatrix) -> Result<KoashiWinterReport> {
    let d = rank_two_classify(m)?;
    let (p, _) = matrix_to_bloch(m)?;
    let swapped = discord(&p.swap_parties());
    let complementary = concurrence_dense(&d.rho_bc);
    let entropy_b = 1.0 - polarization_term(p.s());
    let c_a = swapped.classical_correlation;
    let [r, s, c1, c2, c3] = p.to_array();
    Ok(KoashiWinterReport {
        case: d.case,
        complementary,
        classical_correlation_a: c_a,
        entropy_b,
        residual: (c_a + complementary.eof - entropy_b).abs(),
        z_star: swapped.z_star,
        con2_formula: (d.case == RankTwoCase::III)
            .then_some(0.5 * (1.0 + r * r - s * s - c3 * c3 - c1 * c1 + c2 * c2)),
        warnings: d.warnings,
    })
}

pub fn koashi_winter_residual(m: &XDensityMatrix) -> Result<f64> {
    Ok(koashi_winter(m)?.residual)
}

/// Dense matrices within `MATRIX_TOL` of zero outside the X pattern.
pub fn is_x_patterned(rho: &Op4) -> bool {
    (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || rho[(i, j)].norm() <= MATRIX_TOL))
}
