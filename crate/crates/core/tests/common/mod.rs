//! Samplers and reference formulas shared by the integration tests.
//!
//! The reference formulas here are written out independently of the
//! library so that they can serve as oracles.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xdiscord::linalg::{c, Op4, C64};
use xdiscord::{BlochX, XDensityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

/// `λ log₂ λ` summed, with `0 log 0 = 0`.
pub fn xlogx_sum(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.log2())
        .sum()
}

pub fn physical(p: [f64; 5]) -> bool {
    let [r, s, c1, c2, c3] = p;
    1.0 - c3 >= (r - s).hypot(c1 + c2) && 1.0 + c3 >= (r + s).hypot(c1 - c2)
}

/// Uniform point of `[−1, 1]⁵` conditioned on physicality.
pub fn random_physical(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let p: [f64; 5] = std::array::from_fn(|_| uniform(rng, -1.0, 1.0));
        if physical(p) {
            return p;
        }
    }
}

pub fn bloch(p: [f64; 5]) -> BlochX {
    BlochX::from_array(p).unwrap()
}

/// Discord of a Bell-diagonal state, `r = s = 0`, written term by term:
/// `¼Σ(1±…)log₂(1±…) − ½(1+C)log₂(1+C) − ½(1−C)log₂(1−C)`, `C = max|cᵢ|`.
pub fn bell_diagonal_discord(c1: f64, c2: f64, c3: f64) -> f64 {
    let q = |x: f64| if x > 0.0 { 0.25 * x * x.log2() } else { 0.0 };
    let h = |x: f64| if x > 0.0 { 0.5 * x * x.log2() } else { 0.0 };
    let big = c1.abs().max(c2.abs()).max(c3.abs());
    q(1.0 - c3 + c1 + c2) + q(1.0 - c3 - c1 - c2) + q(1.0 + c3 + c1 - c2) + q(1.0 + c3 - c1 + c2)
        - h(1.0 + big)
        - h(1.0 - big)
}

/// Example-3 family `⅓{(1−a)|00><00| + 2|ψ⁺><ψ⁺| + a|11><11|}`.
pub fn example_three(a: f64) -> [f64; 5] {
    let r = 1.0 / 3.0 - 2.0 * a / 3.0;
    [r, r, 2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0]
}

/// Example-2 matrix exactly as printed.
pub fn example_two_matrix() -> Op4 {
    let mut m = Op4::zeros();
    m[(0, 0)] = c(0.0783, 0.0);
    m[(1, 1)] = c(0.1250, 0.0);
    m[(2, 2)] = c(0.1250, 0.0);
    m[(3, 3)] = c(0.6717, 0.0);
    m[(1, 2)] = c(0.1000, 0.0);
    m[(2, 1)] = c(0.1000, 0.0);
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    A,
    B,
    C,
    D,
}

/// A point strictly inside the first branch of region A:
/// `s > 0, r c3 < 0, c3² − c² > s r c3`.
pub fn sample_region_a(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let p = random_physical(rng);
        let [r, s, c1, c2, c3] = p;
        let c = c1.abs().max(c2.abs());
        if s > 0.0 && r * c3 < 0.0 && c3 * c3 - c * c > s * r * c3 {
            return p;
        }
    }
}

/// `s < 0, r c3 > 0, c3² − c² > s r c3`.
pub fn sample_region_b(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let p = random_physical(rng);
        let [r, s, c1, c2, c3] = p;
        let c = c1.abs().max(c2.abs());
        if s < 0.0 && r * c3 > 0.0 && c3 * c3 - c * c > s * r * c3 {
            return p;
        }
    }
}

/// `r = 0` with `c3² ≥ c²`, or `r = s = 0` with arbitrary correlations.
pub fn sample_region_c(rng: &mut ChaCha8Rng) -> [f64; 5] {
    let bell = rng.random_bool(0.5);
    loop {
        let mut p = random_physical(rng);
        p[0] = 0.0;
        if bell {
            p[1] = 0.0;
        }
        let c = p[2].abs().max(p[3].abs());
        if physical(p) && (bell || p[4] * p[4] >= c * c) {
            return p;
        }
    }
}

/// `s = r c3 ≤ 0`, `max(|c1|, |c2|) = |c3|`, `c² + r² ≤ ⅔`.
pub fn sample_region_d(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let c3 = uniform(rng, -1.0, 1.0);
        let r = uniform(rng, -1.0, 1.0);
        let s = r * c3;
        if s > 0.0 || c3 * c3 + r * r > 2.0 / 3.0 {
            continue;
        }
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let other = uniform(rng, -1.0, 1.0) * c3.abs();
        let (c1, c2) = if rng.random_bool(0.5) {
            (sign * c3.abs(), other)
        } else {
            (other, sign * c3.abs())
        };
        let p = [r, s, c1, c2, c3];
        if physical(p) {
            return p;
        }
    }
}

pub fn sample_region(rng: &mut ChaCha8Rng, region: Region) -> [f64; 5] {
    match region {
        Region::A => sample_region_a(rng),
        Region::B => sample_region_b(rng),
        Region::C => sample_region_c(rng),
        Region::D => sample_region_d(rng),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTwoKind {
    Outer,
    Inner,
    Mixed,
}

fn unit2(rng: &mut ChaCha8Rng, phased: bool) -> (C64, C64) {
    let t = uniform(rng, 0.0, std::f64::consts::PI);
    let phase = if phased {
        C64::from_polar(
            1.0,
            uniform(rng, -std::f64::consts::PI, std::f64::consts::PI),
        )
    } else if rng.random_bool(0.5) {
        c(1.0, 0.0)
    } else {
        c(-1.0, 0.0)
    };
    (c(t.cos(), 0.0), phase * t.sin())
}

fn outer(v: &[C64; 4], w: f64) -> Op4 {
    Op4::from_fn(|i, j| v[i] * v[j].conj() * w)
}

/// Rank-two X-state `ω|φ₀><φ₀| + (1−ω)|φ₁><φ₁|`, built from eigenvectors.
/// `Outer` puts both eigenvectors in span{|00>, |11>}, `Inner` both in
/// span{|01>, |10>}, `Mixed` one in each.
pub fn sample_rank_two(rng: &mut ChaCha8Rng, kind: RankTwoKind, phased: bool) -> XDensityMatrix {
    let w = uniform(rng, 0.05, 0.95);
    let (a, b) = unit2(rng, phased);
    let z = c(0.0, 0.0);
    let m = match kind {
        RankTwoKind::Outer | RankTwoKind::Inner => {
            let (i, j) = if kind == RankTwoKind::Outer {
                (0, 3)
            } else {
                (1, 2)
            };
            let mut v0 = [z; 4];
            let mut v1 = [z; 4];
            v0[i] = a;
            v0[j] = b;
            v1[i] = -b.conj();
            v1[j] = a.conj();
            outer(&v0, w) + outer(&v1, 1.0 - w)
        }
        RankTwoKind::Mixed => {
            let (a1, b1) = unit2(rng, phased);
            outer(&[a, z, z, b], w) + outer(&[z, a1, b1, z], 1.0 - w)
        }
    };
    let mut m = (m + m.adjoint()) * c(0.5, 0.0);
    // restore unit trace exactly
    let tr = m.trace().re;
    m /= c(tr, 0.0);
    XDensityMatrix::from_dense(&m).unwrap()
}
