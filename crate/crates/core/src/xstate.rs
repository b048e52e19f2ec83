//! Two-qubit X-states in Bloch and matrix form.
//!
//! An X-state is parametrised by five reals,
//!
//! ```text
//! ρ = ¼ (I⊗I + r σ3⊗I + s I⊗σ3 + Σ cᵢ σᵢ⊗σᵢ)
//! ```
//!
//! whose matrix has nonzero entries only on the diagonal and anti-diagonal
//! in the computational basis `|00>, |01>, |10>, |11>`. The first tensor
//! factor is party `a`, the second is party `b`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Inequality, Result};
use crate::linalg::{c, Op4, C64};

/// Violations of the two region inequalities smaller than this are accepted.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// Tolerance for trace, Hermiticity and eigenvalue-sign checks on matrices.
pub const MATRIX_TOL: f64 = 1e-12;

/// `x log₂ x` with the `0 log 0 = 0` convention taken by branch.
#[inline]
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `½(1+x)log₂(1+x) + ½(1−x)log₂(1−x)`, the polarization term appearing in
/// the marginal entropies. Equals `1 - S(diag(½(1+x), ½(1-x)))`.
#[inline]
pub fn polarization_term(x: f64) -> f64 {
    0.5 * xlog2x(1.0 + x) + 0.5 * xlog2x(1.0 - x)
}

/// Binary Shannon entropy `−x log₂x − (1−x) log₂(1−x)` in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-MATRIX_TOL..=1.0 + MATRIX_TOL).contains(&x) || x.is_nan() {
        return Err(Error::Domain {
            name: "x",
            value: x,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(-xlog2x(x) - xlog2x(1.0 - x))
}

/// Bloch parameters `(r, s, c1, c2, c3)` of a physical X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochX {
    r: f64,
    s: f64,
    c1: f64,
    c2: f64,
    c3: f64,
}

impl BlochX {
    /// Validates the parameters against the physical region.
    pub fn new(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("s", s), ("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
            if v.abs() > 1.0 + PHYSICALITY_TOL {
                return Err(Error::Unphysical {
                    inequality: Inequality::Range,
                    excess: v.abs() - 1.0,
                });
            }
        }
        let (first, second) = Self::margins(r, s, c1, c2, c3);
        if first < -PHYSICALITY_TOL {
            return Err(Error::Unphysical {
                inequality: Inequality::First,
                excess: -first,
            });
        }
        if second < -PHYSICALITY_TOL {
            return Err(Error::Unphysical {
                inequality: Inequality::Second,
                excess: -second,
            });
        }
        Ok(Self { r, s, c1, c2, c3 })
    }

    pub fn from_array(p: [f64; 5]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3], p[4])
    }

    /// Slack of the two region inequalities; both are `>= 0` for physical states.
    pub fn margins(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> (f64, f64) {
        (
            1.0 - c3 - (r - s).hypot(c1 + c2),
            1.0 + c3 - (r + s).hypot(c1 - c2),
        )
    }

    pub fn is_physical(p: [f64; 5]) -> bool {
        Self::from_array(p).is_ok()
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }
    pub fn c3(&self) -> f64 {
        self.c3
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.r, self.s, self.c1, self.c2, self.c3]
    }

    /// The same state with the roles of the two parties exchanged.
    pub fn swap_parties(&self) -> Self {
        Self {
            r: self.s,
            s: self.r,
            ..*self
        }
    }
}

/// Eigenvalues of a state, sorted in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum([f64; 4]);

impl Spectrum {
    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    /// `Σ λ log₂ λ`, the negative of the von Neumann entropy.
    pub fn xlogx_sum(&self) -> f64 {
        self.0.iter().map(|&l| xlog2x(l)).sum()
    }

    pub fn entropy(&self) -> f64 {
        -self.xlogx_sum()
    }

    /// Number of eigenvalues strictly above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.0.iter().filter(|&&l| l > threshold).count()
    }

    fn from_unsorted(mut v: [f64; 4]) -> Self {
        for l in &mut v {
            if *l < 0.0 && *l > -MATRIX_TOL {
                *l = 0.0;
            } else if *l > 1.0 && *l < 1.0 + MATRIX_TOL {
                *l = 1.0;
            }
        }
        v.sort_by(|a, b| b.total_cmp(a));
        Spectrum(v)
    }
}

/// The four eigenvalues in the closed form, unsorted:
/// `[λ₁, λ₂, λ₃, λ₄]` with `λ₁,₂ = ¼(1−c3 ± √((r−s)²+(c1+c2)²))` and
/// `λ₃,₄ = ¼(1+c3 ± √((r+s)²+(c1−c2)²))`.
pub fn eigenvalues_unsorted(p: &BlochX) -> [f64; 4] {
    let inner = (p.r - p.s).hypot(p.c1 + p.c2);
    let outer = (p.r + p.s).hypot(p.c1 - p.c2);
    [
        0.25 * (1.0 - p.c3 + inner),
        0.25 * (1.0 - p.c3 - inner),
        0.25 * (1.0 + p.c3 + outer),
        0.25 * (1.0 + p.c3 - outer),
    ]
}

pub fn spectrum(p: &BlochX) -> Spectrum {
    Spectrum::from_unsorted(eigenvalues_unsorted(p))
}

/// Bloch z-components of the two single-qubit marginals `(ρᵃ, ρᵇ)`.
pub fn marginals(p: &BlochX) -> (f64, f64) {
    (p.r, p.s)
}

/// `I(ρ) = S(ρᵃ) + S(ρᵇ) − S(ρ)` in bits.
pub fn mutual_information(p: &BlochX) -> f64 {
    let (r, s) = marginals(p);
    2.0 - polarization_term(r) - polarization_term(s) + spectrum(p).xlogx_sum()
}

/// Phases removed from the anti-diagonal corners when a matrix with complex
/// corners is brought to the real Bloch form.
///
/// Applying `diag(1, e^{i·local_a}) ⊗ diag(1, e^{i·local_b})` to the input
/// matrix yields the real matrix of the returned Bloch parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CornerPhases {
    /// Angle removed from the `(1,4)` corner, in `(−π/2, π/2]`.
    pub outer: f64,
    /// Angle removed from the `(2,3)` corner, in `(−π/2, π/2]`.
    pub inner: f64,
    pub local_a: f64,
    pub local_b: f64,
}

impl CornerPhases {
    pub fn is_trivial(&self) -> bool {
        self.outer == 0.0 && self.inner == 0.0
    }
}

/// Dense 4×4 density matrix restricted to the X pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XDensityMatrix {
    diag: [f64; 4],
    /// `[ρ₁₄, ρ₂₃]` (1-based); their mirrors are the conjugates.
    anti: [C64; 2],
}

impl XDensityMatrix {
    /// Builds and validates an X-matrix from its diagonal and upper
    /// anti-diagonal entries `ρ₁₄`, `ρ₂₃`.
    pub fn from_parts(diag: [f64; 4], anti: [C64; 2]) -> Result<Self> {
        if diag.iter().any(|d| !d.is_finite())
            || anti.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("matrix entry"));
        }
        let trace: f64 = diag.iter().sum();
        if (trace - 1.0).abs() > MATRIX_TOL {
            return Err(Error::TraceNotUnit(trace));
        }
        let m = Self { diag, anti };
        let lowest = m
            .block_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if lowest < -MATRIX_TOL {
            return Err(Error::NotPositive(lowest));
        }
        Ok(m)
    }

    /// Accepts a dense matrix, checking the X pattern and Hermiticity.
    pub fn from_dense(m: &Op4) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let on_pattern = i == j || i + j == 3;
                if !on_pattern && m[(i, j)].norm() > MATRIX_TOL {
                    return Err(Error::NotXState {
                        row: i + 1,
                        col: j + 1,
                        magnitude: m[(i, j)].norm(),
                    });
                }
                if j >= i {
                    let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
                    if dev > MATRIX_TOL {
                        return Err(Error::NotHermitian {
                            row: i + 1,
                            col: j + 1,
                            deviation: dev,
                        });
                    }
                }
            }
        }
        let diag = [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re];
        Self::from_parts(diag, [m[(0, 3)], m[(1, 2)]])
    }

    pub fn diag(&self) -> [f64; 4] {
        self.diag
    }

    pub fn outer_corner(&self) -> C64 {
        self.anti[0]
    }

    pub fn inner_corner(&self) -> C64 {
        self.anti[1]
    }

    pub fn to_dense(&self) -> Op4 {
        let mut m = Op4::zeros();
        for i in 0..4 {
            m[(i, i)] = c(self.diag[i], 0.0);
        }
        m[(0, 3)] = self.anti[0];
        m[(3, 0)] = self.anti[0].conj();
        m[(1, 2)] = self.anti[1];
        m[(2, 1)] = self.anti[1].conj();
        m
    }

    /// Eigenvalues of the two 2×2 blocks, in the order
    /// `[inner+, inner−, outer+, outer−]` matching `eigenvalues_unsorted`.
    pub fn block_eigenvalues(&self) -> [f64; 4] {
        let [d1, d2, d3, d4] = self.diag;
        let inner = (0.5 * (d2 - d3)).hypot(self.anti[1].norm());
        let outer = (0.5 * (d1 - d4)).hypot(self.anti[0].norm());
        [
            0.5 * (d2 + d3) + inner,
            0.5 * (d2 + d3) - inner,
            0.5 * (d1 + d4) + outer,
            0.5 * (d1 + d4) - outer,
        ]
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_unsorted(self.block_eigenvalues())
    }
}

/// `ρ = ¼(I⊗I + rσ3⊗I + sI⊗σ3 + Σ cᵢσᵢ⊗σᵢ)`.
pub fn bloch_to_matrix(p: &BlochX) -> XDensityMatrix {
    let BlochX { r, s, c1, c2, c3 } = *p;
    XDensityMatrix {
        diag: [
            0.25 * (1.0 + r + s + c3),
            0.25 * (1.0 + r - s - c3),
            0.25 * (1.0 - r + s - c3),
            0.25 * (1.0 - r - s + c3),
        ],
        anti: [c(0.25 * (c1 - c2), 0.0), c(0.25 * (c1 + c2), 0.0)],
    }
}

/// Wraps an angle into `(−π/2, π/2]`, i.e. rotation onto the nearest real half-axis.
fn fold_to_real_axis(z: C64) -> f64 {
    if z.norm() == 0.0 || z.im == 0.0 {
        return 0.0;
    }
    let mut a = z.arg();
    if a > FRAC_PI_2 {
        a -= std::f64::consts::PI;
    } else if a <= -FRAC_PI_2 {
        a += std::f64::consts::PI;
    }
    a
}

/// Inverts the Bloch expansion. Complex corners are first rotated onto the
/// real axis by a local diagonal unitary; the removed phases are returned.
pub fn matrix_to_bloch(m: &XDensityMatrix) -> Result<(BlochX, CornerPhases)> {
    let outer = fold_to_real_axis(m.anti[0]);
    let inner = fold_to_real_axis(m.anti[1]);
    let rho14 = (m.anti[0] * C64::from_polar(1.0, -outer)).re;
    let rho23 = (m.anti[1] * C64::from_polar(1.0, -inner)).re;
    let [d1, d2, d3, d4] = m.diag;
    let p = BlochX::new(
        d1 + d2 - d3 - d4,
        d1 - d2 + d3 - d4,
        2.0 * (rho14 + rho23),
        2.0 * (rho23 - rho14),
        d1 - d2 - d3 + d4,
    )?;
    let phases = CornerPhases {
        outer,
        inner,
        local_a: 0.5 * (outer + inner),
        local_b: 0.5 * (outer - inner),
    };
    Ok((p, phases))
}
