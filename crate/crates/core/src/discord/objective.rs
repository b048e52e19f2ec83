//! The one-variable objective `F(z)` on `[0, 1]` and its first two derivatives.
//!
//! With `c = max(|c1|, |c2|)` and
//! `H±(z) = sqrt(c²(1−z²) + (r ± c3 z)²)`,
//!
//! ```text
//! F(z) = ¼(1+sz+H₊)log₂((1+sz+H₊)/(1+sz)) + ¼(1+sz−H₊)log₂((1+sz−H₊)/(1+sz))
//!      + ¼(1−sz+H₋)log₂((1−sz+H₋)/(1−sz)) + ¼(1−sz−H₋)log₂((1−sz−H₋)/(1−sz))
//! ```
//!
//! The classical correlation (measuring party `b`) is `max F − h(r)`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::xstate::BlochX;

/// Numerators of `log₂(num/den)` terms within this distance of zero are
/// taken as exactly zero.
const NUMERATOR_FLOOR: f64 = 1e-14;

/// Denominator guard for the second derivative.
const CURVATURE_FLOOR: f64 = 1e-12;

/// Precomputed constants of `F` for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FContext {
    p: BlochX,
    c: f64,
    c_big: f64,
}

impl FContext {
    pub fn new(p: BlochX) -> Self {
        let c = p.c1().abs().max(p.c2().abs());
        Self {
            p,
            c,
            c_big: c.max(p.c3().abs()),
        }
    }

    pub fn bloch(&self) -> &BlochX {
        &self.p
    }

    /// `max(|c1|, |c2|)`
    pub fn c(&self) -> f64 {
        self.c
    }

    /// `max(|c1|, |c2|, |c3|)`
    pub fn c_big(&self) -> f64 {
        self.c_big
    }

    /// `c3² − c²`, the coefficient of `z²` in `H±²`.
    fn k(&self) -> f64 {
        self.p.c3() * self.p.c3() - self.c * self.c
    }

    /// `(H₊, H₋)` at `z`.
    pub fn radicals(&self, z: f64) -> (f64, f64) {
        let (r, c3) = (self.p.r(), self.p.c3());
        if z == 1.0 {
            return ((r + c3).abs(), (r - c3).abs());
        }
        let base = self.c * self.c * (1.0 - z * z);
        (
            (base + (r + c3 * z).powi(2)).max(0.0).sqrt(),
            (base + (r - c3 * z).powi(2)).max(0.0).sqrt(),
        )
    }
}

/// `¼ · num · log₂(num / den)` with the zero-numerator limit.
#[inline]
fn quarter_term(num: f64, den: f64) -> f64 {
    if num <= NUMERATOR_FLOOR || den <= 0.0 {
        0.0
    } else {
        0.25 * num * (num / den).log2()
    }
}

#[inline]
fn branch_value(w: f64, h: f64) -> f64 {
    quarter_term(w + h, w) + quarter_term(w - h, w)
}

/// `F(1)` written directly in the parameters (`H± = |r ± c3|`), which is the
/// closed form of the maximum in regions (a) and (b).
pub fn endpoint_one(p: &BlochX) -> f64 {
    let [r, s, _, _, c3] = p.to_array();
    quarter_term(1.0 + s + r + c3, 1.0 + s)
        + quarter_term(1.0 + s - r - c3, 1.0 + s)
        + quarter_term(1.0 - s + r - c3, 1.0 - s)
        + quarter_term(1.0 - s - r + c3, 1.0 - s)
}

pub fn f_value(ctx: &FContext, z: f64) -> f64 {
    if z == 1.0 {
        return endpoint_one(ctx.bloch());
    }
    let s = ctx.p.s();
    let (hp, hm) = ctx.radicals(z);
    branch_value(1.0 + s * z, hp) + branch_value(1.0 - s * z, hm)
}

/// `log₂((1+x)/(1−x)) / x`, continuous at `x = 0` with value `2/ln 2`.
#[inline]
fn log_ratio_over_x(x: f64) -> f64 {
    if x >= 1.0 {
        f64::INFINITY
    } else if x < 1e-4 {
        let x2 = x * x;
        2.0 / LN_2 * (1.0 + x2 / 3.0 + x2 * x2 / 5.0)
    } else {
        2.0 * x.atanh() / (x * LN_2)
    }
}

/// One branch of `4 F′`:
/// `u′ log₂(1 − A²) + (P/u) · log₂((1+A)/(1−A)) / A`
/// where `u = 1 ± sz`, `A = H/u` and `P = H H′ = ±r c3 + (c3² − c²) z`.
///
/// Written in terms of `A` the `H → 0` limit is regular. For `A` near one the
/// two `log(1−A)` singularities are combined so their coefficient
/// `u′ − H′` can cancel.
fn branch_slope(u: f64, du: f64, h: f64, p: f64) -> f64 {
    if u <= 0.0 {
        return f64::NAN;
    }
    let a = (h / u).clamp(0.0, 1.0);
    if a < 0.5 {
        return du * (1.0 - a * a).log2() + p / u * log_ratio_over_x(a);
    }
    let dh = p / h;
    let one_minus_a = ((u - h) / u).max(0.0);
    let coeff = du - dh;
    let singular = if one_minus_a == 0.0 {
        if coeff.abs() < 1e-12 {
            0.0
        } else {
            coeff * f64::NEG_INFINITY
        }
    } else {
        coeff * one_minus_a.log2()
    };
    (du + dh) * (1.0 + a).log2() + singular
}

/// `F′(z)`. Vanishes at `z = 0` by evenness. At saturated boundary points
/// the value may be infinite.
pub fn f_derivative(ctx: &FContext, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let [r, s, _, _, c3] = ctx.p.to_array();
    let k = ctx.k();
    let (hp, hm) = ctx.radicals(z);
    0.25 * (branch_slope(1.0 + s * z, s, hp, r * c3 + k * z)
        + branch_slope(1.0 - s * z, -s, hm, -r * c3 + k * z))
}

/// `F″(z)`. Fails when a radical `H±` or a denominator `(1 ± sz)² − H±²`
/// falls below `1e-12`, i.e. near an eigenvalue-zero boundary of the
/// conditional states.
pub fn f_second_derivative(ctx: &FContext, z: f64) -> Result<f64> {
    let [r, s, _, _, c3] = ctx.p.to_array();
    let c2 = ctx.c * ctx.c;
    let k = ctx.k();
    let (hp, hm) = ctx.radicals(z);
    let curvature_h = c2 * (k - r * r);

    let mut total = 0.0;
    for (u, du, h, p) in [
        (1.0 + s * z, s, hp, r * c3 + k * z),
        (1.0 - s * z, -s, hm, -r * c3 + k * z),
    ] {
        if h < CURVATURE_FLOOR {
            return Err(Error::Singular {
                z,
                reason: "radical H vanishes",
            });
        }
        let denom = u * u - h * h;
        if denom < CURVATURE_FLOOR {
            return Err(Error::Singular {
                z,
                reason: "conditional state is near rank one",
            });
        }
        let dh = p / h;
        let ddh = curvature_h / (h * h * h);
        let log_ratio = 2.0 * (h / u).atanh();
        total += ((du * du + dh * dh) * u - 2.0 * du * h * dh) / denom - du * du / u
            + 0.5 * ddh * log_ratio;
    }
    Ok(total / (2.0 * LN_2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: [f64; 5]) -> FContext {
        FContext::new(BlochX::from_array(p).unwrap())
    }

    const EX2: [f64; 5] = [-0.5934, -0.5934, 0.2, 0.2, 0.5];

    #[test]
    fn zero_state_is_flat() {
        let k = ctx([0.0; 5]);
        for z in [0.0, 0.25, 0.5, 1.0] {
            assert_eq!(f_value(&k, z), 0.0);
        }
        assert_eq!(f_derivative(&k, 0.5), 0.0);
        assert!(f_second_derivative(&k, 0.5).is_err()); // H = 0 everywhere
    }

    #[test]
    fn bell_diagonal_endpoint() {
        let k = ctx([0.0, 0.0, 0.3, 0.1, 0.5]);
        let expect = 0.5 * (1.5 * 1.5f64.log2() + 0.5 * 0.5f64.log2());
        assert!((f_value(&k, 1.0) - expect).abs() < 1e-15);
    }

    #[test]
    fn endpoint_formula_is_the_limit_of_the_general_form() {
        let k = ctx(EX2);
        let near = f_value(&k, 1.0 - 1e-9);
        assert!((near - f_value(&k, 1.0)).abs() < 1e-9);
    }

    #[test]
    fn derivative_vanishes_near_zero() {
        let k = ctx(EX2);
        assert!(f_derivative(&k, 1e-6).abs() < 1e-4);
        assert_eq!(f_derivative(&k, 0.0), 0.0);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for p in [
            EX2,
            [0.3, -0.4, 0.2, -0.1, 0.1],
            [0.1, 0.6, -0.3, 0.1, -0.1],
        ] {
            let k = ctx(p);
            for z in [0.1, 0.37, 0.62, 0.9] {
                let h = 1e-6;
                let fd = (f_value(&k, z + h) - f_value(&k, z - h)) / (2.0 * h);
                assert!((fd - f_derivative(&k, z)).abs() < 1e-8, "{p:?} z={z}");
            }
        }
    }

    #[test]
    fn second_derivative_matches_finite_difference() {
        for p in [
            EX2,
            [0.3, -0.4, 0.2, -0.1, 0.1],
            [0.1, 0.6, -0.3, 0.1, -0.1],
        ] {
            let k = ctx(p);
            for z in [0.1, 0.37, 0.62, 0.9] {
                let h = 1e-5;
                let fd = (f_derivative(&k, z + h) - f_derivative(&k, z - h)) / (2.0 * h);
                let an = f_second_derivative(&k, z).unwrap();
                assert!(
                    (fd - an).abs() <= 1e-4 * an.abs().max(1e-3),
                    "{p:?} z={z}: {fd} {an}"
                );
            }
        }
    }

    #[test]
    fn example_two_critical_point_and_curvature() {
        let k = ctx(EX2);
        assert!(f_derivative(&k, 0.88313).abs() < 1e-5);
        let curv = f_second_derivative(&k, 0.9205).unwrap();
        assert!(curv < 0.0);
    }

    #[test]
    fn saturated_branch_cancels_log_singularity() {
        // Example-3 family at a = 0: at z = 1 one conditional state is pure
        // but the log singularity has a vanishing coefficient.
        let k = ctx([1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0]);
        let d = f_derivative(&k, 1.0);
        assert!(!d.is_nan());
        assert!(d <= 0.0);
    }

    #[test]
    fn log_ratio_series_is_continuous() {
        let a = log_ratio_over_x(0.99999e-4);
        let b = log_ratio_over_x(1.00001e-4);
        assert!((a - b).abs() < 1e-12);
        assert_eq!(log_ratio_over_x(1.0), f64::INFINITY);
    }
}
