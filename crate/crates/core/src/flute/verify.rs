use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::GroupSpec;
use crate::hgeom::{dist, dist_geodesic_geodesic, Geodesic, Point};
use crate::words::{Letter, Word};
use crate::{Error, Result};

/// Outcome of a successful ping-pong check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PingPongCertificate {
    pub bisector_count: usize,
    /// Smallest pairwise distance between bisectors.
    pub min_gap: f64,
    pub min_gap_pair: (String, String),
}

struct Wall {
    label: String,
    geodesic: Geodesic,
    /// Sign of the signed distance of `i`; the excluded half-plane is the
    /// open side of the other sign.
    basepoint_sign: f64,
}

impl Wall {
    fn excludes(&self, z: Point) -> bool {
        let s = self.geodesic.signed_distance(z);
        s != 0.0 && s.signum() != self.basepoint_sign
    }
}

fn walls(spec: &GroupSpec) -> Result<Vec<Wall>> {
    let mut out = Vec::with_capacity(2 * spec.len());
    for g in &spec.generators {
        for inverse in [false, true] {
            let geodesic = g.bisector(inverse).geodesic();
            let s = geodesic.signed_distance(Point::I);
            if s == 0.0 {
                return Err(Error::BasepointOnBisector(g.label(inverse)));
            }
            out.push(Wall { label: g.label(inverse), geodesic, basepoint_sign: s.signum() });
        }
    }
    Ok(out)
}

/// Checks that the bisectors `∂H_i(γ_m^{±1})` are pairwise at positive
/// distance and the excluded open half-planes `H \ H_i(γ_m^{±1})` are
/// pairwise disjoint.
///
/// For two disjoint geodesics the excluded sides are disjoint exactly when
/// neither geodesic lies in the other's excluded side.
pub fn verify_pingpong(spec: &GroupSpec) -> Result<PingPongCertificate> {
    if spec.is_empty() {
        return Err(Error::InvalidArgument("ping-pong check needs at least one generator".into()));
    }
    let walls = walls(spec)?;
    let pairs: Vec<(usize, usize)> =
        (0..walls.len()).flat_map(|a| (a + 1..walls.len()).map(move |b| (a, b))).collect();
    let checked: Vec<Result<(f64, usize, usize)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (wa, wb) = (&walls[a], &walls[b]);
            let gap = dist_geodesic_geodesic(&wa.geodesic, &wb.geodesic);
            let overlap = |reason: String| Error::Overlap {
                first: wa.label.clone(),
                second: wb.label.clone(),
                reason,
            };
            if !(gap > 0.0) {
                return Err(overlap(format!("bisectors meet (distance {gap})")));
            }
            if wa.excludes(wb.geodesic.point_at(0.0)) || wb.excludes(wa.geodesic.point_at(0.0)) {
                return Err(overlap("excluded half-planes intersect".into()));
            }
            Ok((gap, a, b))
        })
        .collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for r in checked {
        let (gap, a, b) = r?;
        if best.is_none_or(|(g, _, _)| gap < g) {
            best = Some((gap, a, b));
        }
    }
    let (min_gap, pair) = match best {
        Some((g, a, b)) => (g, (walls[a].label.clone(), walls[b].label.clone())),
        None => (f64::INFINITY, (walls[0].label.clone(), walls[1].label.clone())),
    };
    Ok(PingPongCertificate { bisector_count: walls.len(), min_gap, min_gap_pair: pair })
}

/// Whether `z` lies in every closed half-plane `H_i(γ_m^{±1})` of the spec,
/// points within `tol` of a bisector counting as members.
pub fn dirichlet_membership(spec: &GroupSpec, z: Point, tol: f64) -> bool {
    spec.generators.iter().all(|g| {
        [false, true].into_iter().all(|inverse| {
            let geodesic = g.bisector(inverse).geodesic();
            let s = geodesic.signed_distance(z);
            s.abs() <= tol || s.signum() == geodesic.signed_distance(Point::I).signum()
        })
    })
}

/// Membership of the ray `[i, ∞)` in the domain, tested at log-spaced
/// heights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayCheck {
    pub heights: usize,
    pub t_max: f64,
    pub first_failure: Option<f64>,
    pub pass: bool,
}

pub fn ray_in_domain_check(spec: &GroupSpec, heights: usize, t_max: f64, tol: f64) -> RayCheck {
    let heights = heights.max(2);
    let step = t_max.ln() / (heights - 1) as f64;
    let first_failure = (0..heights)
        .map(|k| (step * k as f64).exp())
        .find(|&t| !dirichlet_membership(spec, Point::new_unchecked(0.0, t), tol));
    RayCheck { heights, t_max, first_failure, pass: first_failure.is_none() }
}

/// `count` points of the domain: `i` first, then rejection samples with
/// `log10 y` uniform on `[-2, 6]` and `x = y·U(-3, 3)`.
pub fn sample_domain_points(spec: &GroupSpec, count: usize, seed: u64, tol: f64) -> Result<Vec<Point>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(Point::I);
    }
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count + 1000 {
            return Err(Error::InvalidArgument(format!(
                "could not draw {count} domain points ({} found)",
                out.len()
            )));
        }
        let y = 10f64.powf(rng.gen_range(-2.0..6.0));
        let x = y * rng.gen_range(-3.0..3.0);
        let z = Point::new_unchecked(x, y);
        if dirichlet_membership(spec, z, -tol) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Minimal displacement found by [`injectivity_lower_bound_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InjectivityReport {
    pub word_len: usize,
    pub samples: usize,
    pub words_per_sample: usize,
    pub min_displacement: f64,
    pub at: Point,
    pub word: Word,
    pub bound: f64,
}

const DEFAULT_SEED: u64 = 0x5eed_f1a7;

/// For sampled `z ∈ D_i(Γ)` and every nonempty reduced word `w` of length
/// at most `word_len`, checks `d(z, w·z) ≥ C - tol`.
pub fn injectivity_lower_bound_check(
    spec: &GroupSpec,
    word_len: usize,
    samples: usize,
    tol: f64,
) -> Result<InjectivityReport> {
    if word_len == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    if spec.is_empty() {
        return Err(Error::InvalidArgument("injectivity check needs at least one generator".into()));
    }
    let points = sample_domain_points(spec, samples, DEFAULT_SEED, tol)?;
    let alphabet = spec.alphabet();
    let per_point: Vec<(f64, usize, Vec<Letter>)> = points
        .par_iter()
        .enumerate()
        .map(|(k, &z)| {
            let mut best = (f64::INFINITY, k, Vec::new());
            alphabet.for_each_word_image(z, word_len, |w, image| {
                let d = dist(z, image);
                if d < best.0 {
                    best = (d, k, w.to_vec());
                }
            });
            best
        })
        .collect();
    // earliest sample wins ties, so the result does not depend on scheduling
    let (min_displacement, k, letters) = per_point
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one sample");
    let bound = spec.c - tol;
    let word = Word(letters);
    if min_displacement < bound {
        return Err(Error::InjectivityViolation {
            z: points[k].to_string(),
            word: word.to_string(),
            displacement: min_displacement,
            bound,
        });
    }
    Ok(InjectivityReport {
        word_len,
        samples: points.len(),
        words_per_sample: alphabet.reduced_word_count(word_len),
        min_displacement,
        at: points[k],
        word,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flute::{select_generators, Enumeration, Rational, DEFAULT_N_MAX};

    fn single(q: i64) -> GroupSpec {
        GroupSpec::from_parts(Enumeration::Explicit(vec![Rational::integer(q)]), &[1], DEFAULT_N_MAX).unwrap()
    }

    #[test]
    fn mirror_pair_is_disjoint() {
        let spec = single(4);
        let cert = verify_pingpong(&spec).unwrap();
        assert_eq!(cert.bisector_count, 2);
        let expected = dist_geodesic_geodesic(
            &Geodesic::semicircle(-4.0, 2.0).unwrap(),
            &Geodesic::semicircle(4.0, 2.0).unwrap(),
        );
        assert!((cert.min_gap - expected).abs() < 1e-12);
    }

    #[test]
    fn basepoint_and_its_image() {
        let spec = single(4);
        assert!(dirichlet_membership(&spec, Point::I, 1e-9));
        let image = spec.generators[0].element.matrix().apply_point(Point::I);
        assert!(!dirichlet_membership(&spec, image, 1e-9));
        assert!(ray_in_domain_check(&spec, 1000, 1e6, 1e-9).pass);
    }

    #[test]
    fn corrupted_spec_names_a_pair() {
        let spec = select_generators(&Enumeration::default(), 4).unwrap();
        let mut indices = spec.indices();
        indices[2] = indices[1];
        let bad = GroupSpec::from_parts(Enumeration::default(), &indices, DEFAULT_N_MAX).unwrap();
        match verify_pingpong(&bad) {
            Err(Error::Overlap { first, second, .. }) => assert_ne!(first, second),
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn short_words_at_basepoint() {
        let spec = select_generators(&Enumeration::default(), 3).unwrap();
        let report = injectivity_lower_bound_check(&spec, 1, 1, 1e-9).unwrap();
        assert_eq!(report.at, Point::I);
        assert!(report.min_displacement >= 2.0 * spec.c);
        assert!(injectivity_lower_bound_check(&spec, 0, 1, 1e-9).is_err());
    }
}
