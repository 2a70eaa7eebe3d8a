//! Orbit-level quantities along the ray `u(t) = i·e^t`: injectivity-radius
//! profiles, the search for `k` with `B_∞(γ^{-k} i, i)` in a window, and
//! boundary/Busemann witnesses for orbit closures.
//!
//! Quotient distances are approximated by truncating to reduced words of
//! bounded length, so every reported minimum is an upper bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::flute::{GroupSpec, Rational};
use crate::hgeom::{busemann, dist, hypercycle_ray_intersection, Boundary, Geodesic, Hypercycle, Point};
use crate::isom::{Isometry, IsometryKind};
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

pub const REPORT_VERSION: &str = "hypflute-report-1";

/// Heights where the axis of a hyperbolic generator crosses the imaginary
/// axis; there the generator moves `i·t*` by exactly its translation length.
pub fn axis_crossing_heights(generators: &[Isometry]) -> Vec<f64> {
    generators
        .iter()
        .filter_map(|g| {
            let class = g.classify();
            if class.kind != IsometryKind::Hyperbolic {
                return None;
            }
            match class.axis? {
                Geodesic::Semicircle { center, radius } if center.abs() < radius => {
                    Some(((radius - center) * (radius + center)).sqrt())
                }
                _ => None,
            }
        })
        .collect()
}

/// Truncated injectivity radius `min_w d(i t, w·(i t))` at a list of heights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InjProfile {
    pub word_len: usize,
    pub heights: Vec<f64>,
    pub inj: Vec<f64>,
    pub words: Vec<Word>,
}

fn min_displacement(alphabet: &Alphabet, z: Point, word_len: usize) -> (f64, Vec<Letter>) {
    let mut best = (f64::INFINITY, Vec::new());
    alphabet.for_each_word_image(z, word_len, |w, image| {
        let d = dist(z, image);
        if d < best.0 {
            best = (d, w.to_vec());
        }
    });
    best
}

/// Profile on `points` log-spaced heights in `[t_min, t_max]`, with the axis
/// crossing heights in that range merged in.
pub fn inj_profile(
    generators: &[Isometry],
    t_min: f64,
    t_max: f64,
    points: usize,
    word_len: usize,
) -> Result<InjProfile> {
    if !(t_min >= 1.0 && t_min < t_max && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("need 1 <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if points == 0 || word_len == 0 {
        return Err(Error::InvalidArgument("points and word length must be positive".into()));
    }
    let mut heights: Vec<f64> = if points == 1 {
        vec![t_min]
    } else {
        let step = (t_max / t_min).ln() / (points - 1) as f64;
        (0..points).map(|k| t_min * (step * k as f64).exp()).collect()
    };
    if points > 1 {
        heights.extend(
            axis_crossing_heights(generators)
                .into_iter()
                .filter(|t| (t_min..=t_max).contains(t)),
        );
    }
    heights.sort_by(f64::total_cmp);
    heights.dedup();

    let alphabet = Alphabet::new(generators);
    let (inj, words): (Vec<f64>, Vec<Word>) = heights
        .par_iter()
        .map(|&t| {
            let (d, w) = min_displacement(&alphabet, Point::new_unchecked(0.0, t), word_len);
            (d, Word(w))
        })
        .unzip();
    Ok(InjProfile { word_len, heights, inj, words })
}

/// Estimate of `liminf_{t→∞} Inj(u(t))`: the profile is cut into windows
/// `[t_0 f^k, t_0 f^{k+1})` and the estimate is the smallest window minimum
/// among the later half of the windows.
pub fn iinj_estimate(profile: &InjProfile, window_factor: f64) -> Result<f64> {
    const REQUIRED: usize = 3;
    if !(window_factor > 1.0) {
        return Err(Error::InvalidArgument(format!("window factor must exceed 1, got {window_factor}")));
    }
    let (Some(&t0), Some(&t1)) = (profile.heights.first(), profile.heights.last()) else {
        return Err(Error::ProfileTooShort { windows: 0, required: REQUIRED });
    };
    let windows = ((t1 / t0).ln() / window_factor.ln()).floor() as usize + 1;
    if windows < REQUIRED {
        return Err(Error::ProfileTooShort { windows, required: REQUIRED });
    }
    let mut minima = vec![f64::INFINITY; windows];
    for (&t, &v) in profile.heights.iter().zip(&profile.inj) {
        let k = (((t / t0).ln() / window_factor.ln()).floor() as usize).min(windows - 1);
        minima[k] = minima[k].min(v);
    }
    Ok(minima[windows / 2..].iter().copied().fold(f64::INFINITY, f64::min))
}

/// The sequence `r_k = B_∞(γ^{-k} i, i)` and the first `k ≥ 1` landing in
/// `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepTwoRecord {
    pub gamma: [f64; 4],
    pub lo: f64,
    pub hi: f64,
    /// `r_1, r_2, …, r_{k_found}`.
    pub r: Vec<f64>,
    pub k_found: usize,
    pub max_increment: f64,
    /// `d(i, γ^{-1} i)`, which bounds every increment.
    pub increment_bound: f64,
}

/// `r_1, …, r_count` for `γ`, i.e. `-ln Im(γ^{-k} i)`.
pub fn step2_sequence(gamma: &Isometry, count: usize) -> Vec<f64> {
    let inv = gamma.inverse();
    let mut z = Point::I;
    (0..count)
        .map(|_| {
            z = inv.apply_point(z);
            -z.y.ln()
        })
        .collect()
}

/// Busemann increments `B_∞(γ^{-k-1} i, γ^{-k} i)` for `k = 0..count`.
pub fn step2_increments(gamma: &Isometry, count: usize) -> Vec<f64> {
    let inv = gamma.inverse();
    let mut z = Point::I;
    (0..count)
        .map(|_| {
            let next = inv.apply_point(z);
            let b = busemann(Boundary::Infinity, next, z);
            z = next;
            b
        })
        .collect()
}

/// Smallest `k ≥ 1` with `r_k ∈ [lo, hi)`.
///
/// Requires `γ` hyperbolic with repelling point `γ⁻ ≠ ∞`, so that `r_k`
/// eventually increases without bound.
pub fn step2_search(gamma: &Isometry, lo: f64, hi: f64) -> Result<StepTwoRecord> {
    const MAX_TERMS: usize = 100_000;
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::InvalidArgument(format!("need 0 <= lo < hi, got [{lo}, {hi})")));
    }
    let class = gamma.classify();
    if class.kind != IsometryKind::Hyperbolic {
        return Err(Error::NotHyperbolic(gamma.trace()));
    }
    if class.repelling.is_some_and(|p| p.is_infinite()) {
        return Err(Error::InvalidArgument("repelling fixed point is ∞; r_k decreases".into()));
    }
    let increment_bound = dist(Point::I, gamma.inverse().apply_point(Point::I));
    let inv = gamma.inverse();
    let mut z = Point::I;
    let mut r = Vec::new();
    let mut prev = 0.0;
    let mut max_increment = 0.0f64;
    for k in 1..=MAX_TERMS {
        z = inv.apply_point(z);
        let rk = -z.y.ln();
        max_increment = max_increment.max(rk - prev);
        prev = rk;
        r.push(rk);
        if rk >= lo && rk < hi {
            return Ok(StepTwoRecord {
                gamma: gamma.entries(),
                lo,
                hi,
                r,
                k_found: k,
                max_increment,
                increment_bound,
            });
        }
        if rk >= hi {
            return Err(Error::NoHit { lo, hi, k, overshoot: rk, max_increment });
        }
    }
    Err(Error::NoHit { lo, hi, k: MAX_TERMS, overshoot: prev, max_increment })
}

/// One term `α = γ_m^{-1}` of an orbit-closure witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessTerm {
    pub m: usize,
    pub n: u32,
    pub alpha: String,
    /// `α ∞ = γ_m^{-1} ∞`.
    pub boundary_image: f64,
    /// `B_∞(α^{-1} i, i) = B_∞(γ_m i, i)`.
    pub busemann: f64,
    pub residual: f64,
    /// `ln(1 + 1/(q r_n²))`.
    pub closed_form_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub q: Rational,
    pub target: f64,
    pub terms: Vec<WitnessTerm>,
    pub boundary_images_increasing: bool,
    pub residuals_nonincreasing: bool,
    pub pass: bool,
}

/// Residual threshold for the last witness term.
pub const WITNESS_TOL: f64 = 1e-8;

/// Certifies `α_k ∞ → ∞` and `B_∞(α_k^{-1} i, i) → ln q` along the first
/// `count` selected generators with parameter `q`, taking `α = γ^{-1}`.
pub fn orbit_closure_witness(spec: &GroupSpec, q: Rational, count: usize) -> Result<WitnessReport> {
    if !q.exceeds_one() {
        return Err(Error::InvalidParameter(q.to_string()));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("witness needs at least one term".into()));
    }
    let matching = spec.generators_with_q(q);
    if matching.len() < count {
        return Err(Error::InsufficientGenerators { q: q.to_string(), found: matching.len(), needed: count });
    }
    let target = q.to_f64().ln();
    let terms: Vec<WitnessTerm> = matching[..count]
        .iter()
        .map(|g| {
            let [_, _, c, d] = g.element.matrix().entries();
            let boundary_image = -d / c;
            let busemann = (c * c + d * d).ln();
            let r = g.element.r_n();
            WitnessTerm {
                m: g.m,
                n: g.n(),
                alpha: g.label(true),
                boundary_image,
                busemann,
                residual: (busemann - target).abs(),
                closed_form_residual: (1.0 / (q.to_f64() * r * r)).ln_1p(),
            }
        })
        .collect();
    let boundary_images_increasing =
        terms.windows(2).all(|w| w[1].boundary_image.abs() > w[0].boundary_image.abs());
    let residuals_nonincreasing = terms.windows(2).all(|w| w[1].residual <= w[0].residual);
    let last = terms.last().expect("count >= 1").residual;
    Ok(WitnessReport {
        q,
        target,
        pass: last < WITNESS_TOL && boundary_images_increasing,
        terms,
        boundary_images_increasing,
        residuals_nonincreasing,
    })
}

/// `d(p, i e^t)` without forming `e^t`.
pub fn dist_to_ray(p: Point, t: f64) -> f64 {
    if t < 30.0 {
        return dist(p, Point::new_unchecked(0.0, t.exp()));
    }
    // cosh d = (x² + y² + Y²) / (2 y Y) with Y = e^t
    let ln2y = (2.0 * p.y).ln();
    let small = (p.x * p.x + p.y * p.y).ln() - ln2y - t;
    let large = t - ln2y;
    let (hi, lo) = if large > small { (large, small) } else { (small, large) };
    let ln_cosh = hi + (lo - hi).exp().ln_1p();
    // acosh(A) = ln A + ln(1 + √(1 - A⁻²))
    ln_cosh + (1.0 - (-2.0 * ln_cosh).exp()).sqrt().ln_1p()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    pub t_max: f64,
    pub word_len: usize,
    pub samples: usize,
    /// `max_t [t - d_S(u(0), u(t))]`, with `d_S` truncated to the words.
    pub max_defect: f64,
    pub at_t: f64,
    pub word: Word,
}

/// How far `u(t) = i e^t` falls short of being minimizing in the quotient:
/// `t - min_w d(w·i, i e^t)` over `samples` values of `t ∈ [0, t_max]`.
pub fn almost_minimizing_defect(
    generators: &[Isometry],
    t_max: f64,
    word_len: usize,
    samples: usize,
) -> Result<DefectReport> {
    if !(t_max > 0.0 && t_max.is_finite()) || samples < 2 {
        return Err(Error::InvalidArgument(format!("need t_max > 0 and samples >= 2, got {t_max}, {samples}")));
    }
    let alphabet = Alphabet::new(generators);
    let mut orbit: Vec<(Point, Vec<Letter>)> = Vec::new();
    alphabet.for_each_word_image(Point::I, word_len, |w, p| orbit.push((p, w.to_vec())));
    let results: Vec<(f64, f64, usize)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let t = t_max * k as f64 / (samples - 1) as f64;
            let mut best = (t, usize::MAX);
            for (j, (p, _)) in orbit.iter().enumerate() {
                let d = dist_to_ray(*p, t);
                if d < best.0 {
                    best = (d, j);
                }
            }
            (t - best.0, t, best.1)
        })
        .collect();
    let (max_defect, at_t, j) = results
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("samples >= 2");
    let word = if j == usize::MAX { Word::default() } else { Word(orbit[j].1.clone()) };
    Ok(DefectReport { t_max, word_len, samples, max_defect: max_defect.max(0.0), at_t, word })
}

/// The point `p_{n,a}`: lowest intersection of the hypercycle through `q`
/// with the same extremities as the axis of `γ` and the vertical ray from
/// `z` upwards.
pub fn return_point(gamma: &Isometry, q: Point, z: Point) -> Result<Option<Point>> {
    let class = gamma.classify();
    let (Some(a), Some(b)) = (class.repelling, class.attracting) else {
        return Err(Error::NotHyperbolic(gamma.trace()));
    };
    let h = Hypercycle::new(a, b, q)?;
    Ok(hypercycle_ray_intersection(&h, z))
}
