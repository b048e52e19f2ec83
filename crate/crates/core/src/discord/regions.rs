//! Parameter regions where the maximum of `F` is known in closed form.

use std::fmt;

use super::objective::{endpoint_one, FContext};
use crate::error::{Error, Result};
use crate::xstate::xlog2x;

/// Equality conditions (`s = 0`, `r = 0`, `c² = c3²`, `s = r c3`) hold when
/// the two sides agree to this absolute tolerance. Inequalities must hold
/// with at least this margin; points closer to a region boundary are left
/// to the numerical path.
pub const REGION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionTag {
    /// `s ≥ 0, r c3 ≤ 0, c3² − c² ≥ s r c3`, or `s = 0, c3² ≥ c²`: maximum at `z = 1`.
    CaseA,
    /// `s ≤ 0, r c3 ≥ 0, c3² − c² ≥ s r c3`: maximum at `z = 1`.
    CaseB,
    /// `r = 0, c3² ≥ c²`, or `r = s = 0`: closed form in `C = max |cᵢ|`.
    CaseC,
    /// `s = r c3 ≤ 0, c² = c3², c² + r² ≤ 2/3`: maximum at `z = 0`.
    CaseD,
    General,
}

impl RegionTag {
    pub const ALL: [RegionTag; 5] = [
        RegionTag::CaseA,
        RegionTag::CaseB,
        RegionTag::CaseC,
        RegionTag::CaseD,
        RegionTag::General,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RegionTag::CaseA => "CaseA",
            RegionTag::CaseB => "CaseB",
            RegionTag::CaseC => "CaseC",
            RegionTag::CaseD => "CaseD",
            RegionTag::General => "General",
        }
    }

    pub fn is_analytic(&self) -> bool {
        *self != RegionTag::General
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn eq0(x: f64) -> bool {
    x.abs() <= REGION_TOL
}
fn pos(x: f64) -> bool {
    x > REGION_TOL
}
fn neg(x: f64) -> bool {
    x < -REGION_TOL
}

/// Which of the four closed-form regions contain the point, in the order
/// `[A, B, C, D]`.
pub fn region_memberships(ctx: &FContext) -> [bool; 4] {
    let [r, s, _, _, c3] = ctx.bloch().to_array();
    let c = ctx.c();
    let k = c3 * c3 - c * c;
    let src3 = s * r * c3;
    // A non-strict inequality `x ≥ 0` counts when it holds with margin or as an equality.
    let ge = |x: f64| pos(x) || eq0(x);
    let le = |x: f64| neg(x) || eq0(x);

    let a = (ge(s) && le(r * c3) && ge(k - src3)) || (eq0(s) && ge(k));
    let b = le(s) && ge(r * c3) && ge(k - src3);
    let cc = eq0(r) && (ge(k) || eq0(s));
    let d = eq0(s - r * c3) && le(s) && eq0(c * c - c3 * c3) && le(c * c + r * r - 2.0 / 3.0);
    [a, b, cc, d]
}

/// First matching region in the order A, B, C, D; `General` otherwise.
pub fn classify_region(ctx: &FContext) -> RegionTag {
    let m = region_memberships(ctx);
    [
        RegionTag::CaseA,
        RegionTag::CaseB,
        RegionTag::CaseC,
        RegionTag::CaseD,
    ]
    .into_iter()
    .zip(m)
    .find_map(|(t, hit)| hit.then_some(t))
    .unwrap_or(RegionTag::General)
}

/// `¼Σ (1±s±C) log₂((1±s±C)/(1±s))`, the region-(c) maximum.
pub fn case_c_value(s: f64, big_c: f64) -> f64 {
    let q = |num: f64, den: f64| {
        if num <= 0.0 || den <= 0.0 {
            0.0
        } else {
            0.25 * num * (num / den).log2()
        }
    };
    q(1.0 + s + big_c, 1.0 + s)
        + q(1.0 + s - big_c, 1.0 + s)
        + q(1.0 - s + big_c, 1.0 - s)
        + q(1.0 - s - big_c, 1.0 - s)
}

/// `½(1+R)log₂(1+R) + ½(1−R)log₂(1−R)` with `R = √(r² + c²)`, the region-(d) maximum.
pub fn case_d_value(r: f64, c: f64) -> f64 {
    let big_r = r.hypot(c);
    0.5 * xlog2x(1.0 + big_r) + 0.5 * xlog2x(1.0 - big_r)
}

/// Closed-form `(z*, max F)` for the analytic regions.
pub fn analytic_max(ctx: &FContext, tag: RegionTag) -> Result<(f64, f64)> {
    let p = ctx.bloch();
    match tag {
        RegionTag::CaseA | RegionTag::CaseB => Ok((1.0, endpoint_one(p))),
        RegionTag::CaseC => {
            let c3 = p.c3().abs();
            // F is constant when c = |c3| and r = s = 0; ties report z = 1
            let z = if c3 >= ctx.c() { 1.0 } else { 0.0 };
            Ok((z, case_c_value(p.s(), ctx.c_big())))
        }
        RegionTag::CaseD => Ok((0.0, case_d_value(p.r(), ctx.c()))),
        RegionTag::General => Err(Error::Invalid(
            "no closed form for the General region".into(),
        )),
    }
}
