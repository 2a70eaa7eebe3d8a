//! Primitives of the upper half-plane model `H = { x + iy : y > 0 }`.
//!
//! Interior points and boundary points are distinct types, so operations that
//! need an interior point cannot be handed a point at infinity. The dynamic
//! [`ExtendedPoint`] exists for the Möbius action, which maps the closed
//! half-plane to itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::isom::Isometry;
use crate::{Error, Result};

/// An interior point `x + iy` with `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// The basepoint `i`.
    pub const I: Point = Point { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(Point { x, y })
        } else {
            Err(Error::NotInterior(format!("{x} + {y}i")))
        }
    }

    /// The point `i·t` on the imaginary axis.
    pub fn on_imaginary_axis(t: f64) -> Result<Self> {
        Point::new(0.0, t)
    }

    pub(crate) fn new_unchecked(x: f64, y: f64) -> Self {
        debug_assert!(y > 0.0, "interior point with y = {y}");
        Point { x, y }
    }

    /// Euclidean modulus of `self - other`.
    pub fn euclid_dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x < 0.0 {
            write!(f, "-{} + {}i", -self.x, self.y)
        } else {
            write!(f, "{} + {}i", self.x, self.y)
        }
    }
}

/// A point of `∂H = R ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    Real(f64),
    Infinity,
}

impl Boundary {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Boundary::Infinity)
    }

    pub fn real(&self) -> Option<f64> {
        match *self {
            Boundary::Real(x) => Some(x),
            Boundary::Infinity => None,
        }
    }

    /// Distance on the boundary circle for comparing fixed points; `∞` only
    /// matches `∞`, large reals are compared relatively.
    pub fn approx_eq(&self, other: &Boundary, tol: f64) -> bool {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => true,
            (Boundary::Real(a), Boundary::Real(b)) => (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())),
            (Boundary::Real(a), Boundary::Infinity) | (Boundary::Infinity, Boundary::Real(a)) => a.abs() > 1.0 / tol,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Real(x) => write!(f, "{x}"),
            Boundary::Infinity => f.write_str("∞"),
        }
    }
}

/// A point of the closed half-plane `H ∪ ∂H`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedPoint {
    Interior(Point),
    Real(f64),
    Infinity,
}

impl ExtendedPoint {
    pub fn interior(&self) -> Result<Point> {
        match *self {
            ExtendedPoint::Interior(p) => Ok(p),
            other => Err(Error::NotInterior(other.to_string())),
        }
    }

    pub fn boundary(&self) -> Result<Boundary> {
        match *self {
            ExtendedPoint::Real(x) => Ok(Boundary::Real(x)),
            ExtendedPoint::Infinity => Ok(Boundary::Infinity),
            ExtendedPoint::Interior(p) => Err(Error::NotBoundary(p.to_string())),
        }
    }
}

impl From<Point> for ExtendedPoint {
    fn from(p: Point) -> Self {
        ExtendedPoint::Interior(p)
    }
}

impl From<Boundary> for ExtendedPoint {
    fn from(b: Boundary) -> Self {
        match b {
            Boundary::Real(x) => ExtendedPoint::Real(x),
            Boundary::Infinity => ExtendedPoint::Infinity,
        }
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Interior(p) => p.fmt(f),
            ExtendedPoint::Real(x) => write!(f, "{x}"),
            ExtendedPoint::Infinity => f.write_str("∞"),
        }
    }
}

/// Hyperbolic distance, from `sinh(d/2) = |z - w| / (2 √(Im z · Im w))`.
pub fn dist(z: Point, w: Point) -> f64 {
    let s = z.euclid_dist(&w) / (2.0 * (z.y * w.y).sqrt());
    2.0 * s.asinh()
}

/// Busemann cocycle `B_ξ(z, w) = lim_{p→ξ} d(z, p) - d(w, p)`.
///
/// At `∞` this is `ln(Im w / Im z)`. A finite center is first sent to `∞` by
/// `u ↦ -1/(u - ξ)`.
pub fn busemann(xi: Boundary, z: Point, w: Point) -> f64 {
    match xi {
        Boundary::Infinity => (w.y / z.y).ln(),
        Boundary::Real(x0) => {
            let to_infinity = Isometry::sending_to_infinity(x0);
            let (zz, ww) = (to_infinity.apply_point(z), to_infinity.apply_point(w));
            (ww.y / zz.y).ln()
        }
    }
}

/// Dynamic-input variant of [`busemann`]; rejects interior centers and
/// boundary arguments.
pub fn busemann_checked(xi: ExtendedPoint, z: ExtendedPoint, w: ExtendedPoint) -> Result<f64> {
    Ok(busemann(xi.boundary()?, z.interior()?, w.interior()?))
}

/// Dynamic-input variant of [`dist`].
pub fn dist_checked(z: ExtendedPoint, w: ExtendedPoint) -> Result<f64> {
    Ok(dist(z.interior()?, w.interior()?))
}

/// A complete geodesic, either a vertical half-line ending at `∞` or a
/// Euclidean semicircle orthogonal to the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic {
    Vertical { x: f64 },
    Semicircle { center: f64, radius: f64 },
}

impl Geodesic {
    pub fn vertical(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Geodesic::Vertical { x })
        } else {
            Err(Error::DegenerateGeodesic(format!("vertical line at {x}")))
        }
    }

    pub fn semicircle(center: f64, radius: f64) -> Result<Self> {
        if center.is_finite() && radius.is_finite() && radius > 0.0 {
            Ok(Geodesic::Semicircle { center, radius })
        } else {
            Err(Error::DegenerateGeodesic(format!("center {center}, radius {radius}")))
        }
    }

    /// The imaginary axis `(0, ∞)`.
    pub fn imaginary_axis() -> Self {
        Geodesic::Vertical { x: 0.0 }
    }

    pub fn from_endpoints(a: Boundary, b: Boundary) -> Result<Self> {
        match (a, b) {
            (Boundary::Infinity, Boundary::Infinity) => Err(Error::DegenerateGeodesic("(∞, ∞)".into())),
            (Boundary::Real(x), Boundary::Infinity) | (Boundary::Infinity, Boundary::Real(x)) => Geodesic::vertical(x),
            (Boundary::Real(a), Boundary::Real(b)) => {
                if a == b || !a.is_finite() || !b.is_finite() {
                    return Err(Error::DegenerateGeodesic(format!("({a}, {b})")));
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                Geodesic::semicircle(0.5 * (lo + hi), 0.5 * (hi - lo))
            }
        }
    }

    /// Endpoints in canonical order: `(c - ρ, c + ρ)` or `(x, ∞)`.
    pub fn endpoints(&self) -> (Boundary, Boundary) {
        match *self {
            Geodesic::Vertical { x } => (Boundary::Real(x), Boundary::Infinity),
            Geodesic::Semicircle { center, radius } => {
                (Boundary::Real(center - radius), Boundary::Real(center + radius))
            }
        }
    }

    /// Signed distance from `z`; positive outside a semicircle and to the
    /// right of a vertical line.
    pub fn signed_distance(&self, z: Point) -> f64 {
        match *self {
            Geodesic::Vertical { x } => ((z.x - x) / z.y).asinh(),
            Geodesic::Semicircle { center, radius } => {
                let r = (z.x - center).hypot(z.y);
                ((r - radius) * (r + radius) / (2.0 * radius * z.y)).asinh()
            }
        }
    }

    pub fn contains(&self, z: Point, tol: f64) -> bool {
        self.signed_distance(z).abs() <= tol
    }

    /// Point at signed hyperbolic arclength `s`, measured from the top of a
    /// semicircle or from height 1 on a vertical line.
    pub fn point_at(&self, s: f64) -> Point {
        match *self {
            Geodesic::Vertical { x } => Point::new_unchecked(x, s.exp()),
            Geodesic::Semicircle { center, radius } => {
                Point::new_unchecked(center + radius * s.tanh(), radius / s.cosh())
            }
        }
    }

    /// An isometry mapping this geodesic onto `(0, ∞)`, sending the first
    /// canonical endpoint to `0`.
    pub fn normalizer(&self) -> Isometry {
        match *self {
            Geodesic::Vertical { x } => Isometry::translation(-x),
            Geodesic::Semicircle { center, radius } => {
                let (a, b) = (center - radius, center + radius);
                // u ↦ (u - a) / (b - u), determinant b - a > 0
                Isometry::from_positive_det(1.0, -a, -1.0, b).expect("semicircle has positive width")
            }
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        write!(f, "({a}, {b})")
    }
}

/// Distance from an interior point to a geodesic.
pub fn dist_point_geodesic(z: Point, g: &Geodesic) -> f64 {
    g.signed_distance(z).abs()
}

/// Distance between two geodesics; zero exactly when their closures in
/// `H ∪ ∂H` meet.
///
/// `g1` is normalized to `(0, ∞)`. If the image of `g2` has endpoints `u, v`
/// of equal sign, the minimum of `asinh(|x|/y)` over it is
/// `asinh(2√(uv) / |v - u|)`.
pub fn dist_geodesic_geodesic(g1: &Geodesic, g2: &Geodesic) -> f64 {
    let t = g1.normalizer();
    let (e1, e2) = g2.endpoints();
    match (t.apply_boundary(e1), t.apply_boundary(e2)) {
        (Boundary::Real(u), Boundary::Real(v)) => {
            if u * v <= 0.0 {
                0.0
            } else {
                let (u, v) = (u.abs(), v.abs());
                (2.0 * (u * v).sqrt() / (v - u).abs()).asinh()
            }
        }
        _ => 0.0,
    }
}

/// Perpendicular bisector of the segment `[i, p]`.
///
/// For `p = R + iI` with `I ≠ 1` it is the semicircle with center `-R/(I-1)`
/// and squared radius `I·(1 + R²/(I-1)²)`; when `I = 1` it is the vertical line
/// `x = R/2`.
pub fn perp_bisector(p: Point) -> Result<Geodesic> {
    if p == Point::I {
        return Err(Error::BisectorUndefined);
    }
    let (re, im) = (p.x, p.y);
    if im == 1.0 {
        return Geodesic::vertical(0.5 * re);
    }
    let center = -re / (im - 1.0);
    let radius = (im * (1.0 + center * center)).sqrt();
    Geodesic::semicircle(center, radius)
}

/// Horocycle centered at a boundary point and passing through `through`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Horocycle {
    pub center: Boundary,
    pub through: Point,
}

impl Horocycle {
    pub fn new(center: Boundary, through: Point) -> Self {
        Horocycle { center, through }
    }

    /// `B_center(z, through)`: negative inside the horoball.
    pub fn level(&self, z: Point) -> f64 {
        busemann(self.center, z, self.through)
    }

    pub fn contains(&self, z: Point, tol: f64) -> bool {
        self.level(z).abs() <= tol
    }
}

/// Hypercycle with extremities `a`, `b` through an interior point: the set
/// of points at a fixed signed distance from the geodesic `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypercycle {
    pub a: Boundary,
    pub b: Boundary,
    pub through: Point,
}

impl Hypercycle {
    pub fn new(a: Boundary, b: Boundary, through: Point) -> Result<Self> {
        Geodesic::from_endpoints(a, b)?;
        Ok(Hypercycle { a, b, through })
    }

    pub fn axis(&self) -> Geodesic {
        Geodesic::from_endpoints(self.a, self.b).expect("validated on construction")
    }

    /// Signed distance of every point of the curve to its axis.
    pub fn offset(&self) -> f64 {
        self.axis().signed_distance(self.through)
    }

    pub fn contains(&self, z: Point, tol: f64) -> bool {
        (self.axis().signed_distance(z) - self.offset()).abs() <= tol
    }
}

/// Lowest point of `h` on the vertical ray `[z, ∞)`, if any.
pub fn hypercycle_ray_intersection(h: &Hypercycle, z: Point) -> Option<Point> {
    let p = h.through;
    let xv = z.x;
    let candidates: Vec<f64> = match (h.a, h.b) {
        (Boundary::Infinity, Boundary::Infinity) => return None,
        (Boundary::Real(a), Boundary::Infinity) | (Boundary::Infinity, Boundary::Real(a)) => {
            // A Euclidean ray from `a` through `p`: (x - a) / y is constant.
            let slope = (p.x - a) / p.y;
            if slope == 0.0 {
                // The axis itself; every point of the vertical ray lies on it.
                return (xv == a).then_some(z);
            }
            vec![(xv - a) / slope]
        }
        (Boundary::Real(a), Boundary::Real(b)) => {
            // Circle through a, b and p; its center is (m, k).
            let m = 0.5 * (a + b);
            let h2 = 0.25 * (b - a) * (b - a);
            let k = ((p.x - m) * (p.x - m) + p.y * p.y - h2) / (2.0 * p.y);
            let rho2 = h2 + k * k;
            let disc = rho2 - (xv - m) * (xv - m);
            if disc < 0.0 {
                return None;
            }
            let s = disc.sqrt();
            vec![k - s, k + s]
        }
    };
    candidates
        .into_iter()
        .filter(|&y| y > 0.0 && y >= z.y * (1.0 - 1e-12))
        .map(|y| Point::new_unchecked(xv, y.max(z.y)))
        .min_by(|p, q| p.y.total_cmp(&q.y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    ContainsBasepoint,
    Opposite,
}

/// Closed half-plane bounded by a geodesic, identified by which side of it
/// a basepoint lies on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub bisector: Geodesic,
    pub side: Side,
    pub basepoint: Point,
}

impl HalfPlane {
    pub fn new(bisector: Geodesic, side: Side, basepoint: Point) -> Result<Self> {
        if bisector.signed_distance(basepoint) == 0.0 {
            return Err(Error::BasepointOnBisector(basepoint.to_string()));
        }
        Ok(HalfPlane { bisector, side, basepoint })
    }

    /// `H_i(γ) = { z : d(z, i) ≤ d(z, γ i) }` where `image = γ i`.
    pub fn dirichlet(image: Point) -> Result<Self> {
        HalfPlane::new(perp_bisector(image)?, Side::ContainsBasepoint, Point::I)
    }

    /// Membership in the closed half-plane; points within `tol` of the
    /// bisector count as members.
    pub fn contains(&self, z: Point, tol: f64) -> bool {
        let sz = self.bisector.signed_distance(z);
        if sz.abs() <= tol {
            return true;
        }
        let same = (sz > 0.0) == (self.bisector.signed_distance(self.basepoint) > 0.0);
        match self.side {
            Side::ContainsBasepoint => same,
            Side::Opposite => !same,
        }
    }
}
