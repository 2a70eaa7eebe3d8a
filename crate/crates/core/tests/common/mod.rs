//! Independent reference computations used as test oracles.
//!
//! Nothing here calls the closed forms under test: distances use the
//! `arccosh` form instead of the `arcsinh` one, and distances to curves are
//! found by direct numerical minimization.
#![allow(dead_code)]

use hypflute::{Geodesic, Isometry, Point};
use rand::Rng;

/// `d(z, w) = arccosh(1 + |z - w|² / (2 Im z Im w))`.
pub fn dist_acosh(z: Point, w: Point) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    (1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)).acosh()
}

/// Minimum of a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(0.5 * (a + b)))
}

/// Unit-speed parametrization written out independently of the library.
pub fn geodesic_point(g: &Geodesic, s: f64) -> Point {
    match *g {
        Geodesic::Vertical { x } => Point::new(x, s.exp()).unwrap(),
        Geodesic::Semicircle { center, radius } => {
            Point::new(center + radius * s.tanh(), radius / s.cosh()).unwrap()
        }
    }
}

/// The distance to a geodesic is convex along arclength, so golden-section
/// search over a wide window finds it.
pub fn dist_point_geodesic_oracle(z: Point, g: &Geodesic) -> f64 {
    golden_min(|s| dist_acosh(z, geodesic_point(g, s)), -40.0, 40.0)
}

/// Nested minimization over both arclength parameters.
pub fn dist_geodesic_geodesic_oracle(g1: &Geodesic, g2: &Geodesic) -> f64 {
    golden_min(|s| dist_point_geodesic_oracle(geodesic_point(g1, s), g2), -40.0, 40.0)
}

/// `lim d(z, p) - d(w, p)` as `p → ξ`, evaluated at a point close to `ξ`.
pub fn busemann_limit_oracle(xi: f64, z: Point, w: Point, t: f64) -> f64 {
    let p = Point::new(xi, t).unwrap();
    dist_acosh(z, p) - dist_acosh(w, p)
}

pub fn random_point(rng: &mut impl Rng) -> Point {
    Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..5.0)).unwrap()
}

/// A random element of `SL₂(R)` with moderate entries.
pub fn random_isometry(rng: &mut impl Rng) -> Isometry {
    loop {
        let a: f64 = rng.gen_range(-3.0..3.0);
        if a.abs() < 0.2 {
            continue;
        }
        let b: f64 = rng.gen_range(-3.0..3.0);
        let c: f64 = rng.gen_range(-3.0..3.0);
        let d = (1.0 + b * c) / a;
        if d.abs() < 20.0 {
            return Isometry::new(a, b, c, d).unwrap();
        }
    }
}

pub fn random_hyperbolic(rng: &mut impl Rng) -> Isometry {
    loop {
        let m = random_isometry(rng);
        if m.trace().abs() > 2.05 {
            return m;
        }
    }
}

/// Conjugate of a translation, hence parabolic.
pub fn random_parabolic(rng: &mut impl Rng) -> Isometry {
    let t: f64 = rng.gen_range(0.3..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let s = random_isometry(rng);
    Isometry::translation(t).conjugate(&s)
}
