//! Orientation-preserving isometries of `H`, i.e. `PSL₂(R)` acting by Möbius
//! transformations.

use std::fmt;

use crate::hgeom::{self, Boundary, ExtendedPoint, Geodesic, Horocycle, Point};
use crate::tolerance::PARABOLIC_BAND;
use crate::{Error, Result};

/// A matrix `[[a, b], [c, d]]` with `ad - bc = 1`, identified with its
/// negative.
///
/// On construction the determinant is scaled to one and the sign fixed so
/// that the trace is positive (or, for trace zero, `c > 0`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Identity,
}

/// Classification data. For a hyperbolic isometry `repelling`/`attracting`
/// are `γ⁻`/`γ⁺`; for a parabolic one both hold the unique fixed point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub repelling: Option<Boundary>,
    pub attracting: Option<Boundary>,
    pub axis: Option<Geodesic>,
    pub translation_length: Option<f64>,
}

impl IsometryClass {
    pub fn fixed_points(&self) -> Vec<Boundary> {
        match self.kind {
            IsometryKind::Hyperbolic => self.repelling.into_iter().chain(self.attracting).collect(),
            IsometryKind::Parabolic => self.attracting.into_iter().collect(),
            IsometryKind::Elliptic | IsometryKind::Identity => Vec::new(),
        }
    }
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds the isometry of a real matrix with positive determinant.
    pub fn from_positive_det(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::BadDeterminant(det));
        }
        let k = det.sqrt().recip();
        Ok(Isometry { a: a * k, b: b * k, c: c * k, d: d * k }.sign_normalized())
    }

    /// Alias of [`Isometry::from_positive_det`] for unit-determinant input.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Isometry::from_positive_det(a, b, c, d)
    }

    fn sign_normalized(self) -> Self {
        let tr = self.a + self.d;
        if tr < 0.0 || (tr == 0.0 && self.c < 0.0) {
            Isometry { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    /// `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        Isometry { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// `z ↦ λ z` for `λ > 0`.
    pub fn dilation(lambda: f64) -> Result<Self> {
        Isometry::from_positive_det(lambda, 0.0, 0.0, 1.0)
    }

    /// `u ↦ -1 / (u - ξ)`, sending `ξ` to `∞`.
    pub fn sending_to_infinity(xi: f64) -> Self {
        Isometry { a: 0.0, b: -1.0, c: 1.0, d: -xi }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Isometry { a: self.d, b: -self.b, c: -self.c, d: self.a }.sign_normalized()
    }

    /// Matrix product `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Isometry) -> Self {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (other.a, other.b, other.c, other.d);
        Isometry::from_positive_det(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of unit-determinant matrices")
    }

    /// `t⁻¹ · self · t`.
    pub fn conjugate(&self, t: &Isometry) -> Self {
        t.inverse().compose(self).compose(t)
    }

    /// Maps `z ↦ -z̄` through conjugation: the reflection in the imaginary
    /// axis conjugates `[[a, b], [c, d]]` to `[[a, -b], [-c, d]]`.
    pub fn mirrored(&self) -> Self {
        Isometry { a: self.a, b: -self.b, c: -self.c, d: self.d }
    }

    pub fn apply(&self, p: ExtendedPoint) -> ExtendedPoint {
        match p {
            ExtendedPoint::Interior(z) => ExtendedPoint::Interior(self.apply_point(z)),
            ExtendedPoint::Real(x) => self.apply_boundary(Boundary::Real(x)).into(),
            ExtendedPoint::Infinity => self.apply_boundary(Boundary::Infinity).into(),
        }
    }

    pub fn apply_point(&self, z: Point) -> Point {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let den_re = c * z.x + d;
        let den_im = c * z.y;
        let den2 = den_re * den_re + den_im * den_im;
        let num_re = a * z.x + b;
        let x = (num_re * den_re + a * c * z.y * z.y) / den2;
        let y = z.y / den2;
        Point::new_unchecked(x, y)
    }

    pub fn apply_boundary(&self, p: Boundary) -> Boundary {
        match p {
            Boundary::Infinity => {
                if self.c == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Real(self.a / self.c)
                }
            }
            Boundary::Real(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a - 1.0).abs() <= tol && (self.d - 1.0).abs() <= tol && self.b.abs() <= tol && self.c.abs() <= tol
    }

    pub fn classify(&self) -> IsometryClass {
        let tr = self.trace().abs();
        let none = IsometryClass {
            kind: IsometryKind::Identity,
            repelling: None,
            attracting: None,
            axis: None,
            translation_length: None,
        };
        if self.is_identity(PARABOLIC_BAND) {
            return none;
        }
        if (tr - 2.0).abs() < PARABOLIC_BAND {
            let fixed = if self.c == 0.0 {
                Boundary::Infinity
            } else {
                Boundary::Real((self.a - self.d) / (2.0 * self.c))
            };
            return IsometryClass {
                kind: IsometryKind::Parabolic,
                repelling: Some(fixed),
                attracting: Some(fixed),
                ..none
            };
        }
        if tr < 2.0 {
            return IsometryClass { kind: IsometryKind::Elliptic, ..none };
        }
        let (repelling, attracting) = self.hyperbolic_fixed_points(tr);
        IsometryClass {
            kind: IsometryKind::Hyperbolic,
            repelling: Some(repelling),
            attracting: Some(attracting),
            axis: Some(Geodesic::from_endpoints(repelling, attracting).expect("distinct fixed points")),
            translation_length: Some(2.0 * (0.5 * tr).acosh()),
        }
    }

    /// Roots of `c z² + (d - a) z - b = 0`, ordered `(γ⁻, γ⁺)` by the
    /// multiplier `1 / (c z + d)²` at each root.
    fn hyperbolic_fixed_points(&self, tr: f64) -> (Boundary, Boundary) {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        if c == 0.0 {
            // z ↦ (a z + b) / d, multiplier a / d at ∞
            let finite = Boundary::Real(b / (d - a));
            return if a.abs() > d.abs() {
                (finite, Boundary::Infinity)
            } else {
                (Boundary::Infinity, finite)
            };
        }
        let sqrt_disc = ((tr - 2.0) * (tr + 2.0)).sqrt();
        let bq = d - a;
        let (z1, z2) = if bq == 0.0 {
            (sqrt_disc / (2.0 * c), -sqrt_disc / (2.0 * c))
        } else {
            let q = -0.5 * (bq + bq.signum() * sqrt_disc);
            (q / c, -b / q)
        };
        if (c * z1 + d).abs() > (c * z2 + d).abs() {
            (Boundary::Real(z2), Boundary::Real(z1))
        } else {
            (Boundary::Real(z1), Boundary::Real(z2))
        }
    }

    /// The element of `{self, self⁻¹}` with `|γ⁻| ≤ |γ⁺|`, the orientation
    /// used when following returns along a ray towards `∞`.
    pub fn oriented_towards_infinity(&self) -> Self {
        let class = self.classify();
        match (class.kind, class.repelling, class.attracting) {
            (IsometryKind::Hyperbolic, Some(rep), Some(att)) => {
                let size = |b: Boundary| b.real().map_or(f64::INFINITY, f64::abs);
                if size(rep) <= size(att) {
                    *self
                } else {
                    self.inverse()
                }
            }
            _ => *self,
        }
    }

    /// `d(z, M z)`.
    pub fn displacement(&self, z: Point) -> f64 {
        hgeom::dist(z, self.apply_point(z))
    }

    /// Displacement of a hyperbolic isometry from the distance `s` of `z` to
    /// its axis: `sinh(d/2) = cosh(s) · sinh(ℓ/2)`.
    pub fn displacement_hyperbolic(&self, z: Point) -> Result<f64> {
        let class = self.classify();
        let (Some(axis), Some(length)) = (class.axis, class.translation_length) else {
            return Err(Error::NotHyperbolic(self.trace()));
        };
        let s = hgeom::dist_point_geodesic(z, &axis);
        Ok(2.0 * (s.cosh() * (0.5 * length).sinh()).asinh())
    }

    /// Displacement of a parabolic isometry relative to a reference point
    /// `z0`: `sinh(d/2) = e^s · sinh(ℓ(z0)/2)` with `s = B_ξ(z, C(z0))`.
    pub fn displacement_parabolic(&self, z: Point, z0: Point) -> Result<f64> {
        let class = self.classify();
        let (IsometryKind::Parabolic, Some(fixed)) = (class.kind, class.attracting) else {
            return Err(Error::NotParabolic(self.trace()));
        };
        let horocycle = Horocycle::new(fixed, z0);
        let s = horocycle.level(z);
        let reference = self.displacement(z0);
        Ok(2.0 * (s.exp() * (0.5 * reference).sinh()).asinh())
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    fn g41() -> Isometry {
        Isometry::new(2.0, -6.0, -0.5, 2.0).unwrap()
    }

    #[test]
    fn normalizes_determinant_and_sign() {
        let m = Isometry::from_positive_det(-4.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(m.entries(), [2.0, 0.0, 0.0, 0.5]);
        assert!((m.det() - 1.0).abs() < 1e-15);
        assert!(Isometry::from_positive_det(0.0, 1.0, 1.0, 0.0).is_err());
        let e = Isometry::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(e.entries(), [0.0, -1.0, 1.0, 0.0]);
        let e2 = Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn action_examples() {
        assert_eq!(Isometry::IDENTITY.apply_point(pt(0.3, 2.0)), pt(0.3, 2.0));
        let image = g41().apply_point(Point::I);
        assert!((image.x + 13.0 / 4.25).abs() < 1e-15);
        assert!((image.y - 1.0 / 4.25).abs() < 1e-15);
        assert_eq!(g41().inverse().apply_boundary(Boundary::Infinity), Boundary::Real(4.0));
        assert_eq!(
            Isometry::translation(1.0).apply(ExtendedPoint::Infinity),
            ExtendedPoint::Infinity
        );
        assert_eq!(
            Isometry::new(0.0, -1.0, 1.0, 0.0).unwrap().apply(ExtendedPoint::Real(0.0)),
            ExtendedPoint::Infinity
        );
    }

    #[test]
    fn classification_examples() {
        let c = g41().classify();
        assert_eq!(c.kind, IsometryKind::Hyperbolic);
        assert!((c.translation_length.unwrap() - 2.0 * 2f64.acosh()).abs() < 1e-14);
        let s = 2.0 * 3f64.sqrt();
        let mut fixed: Vec<f64> = c.fixed_points().iter().map(|b| b.real().unwrap()).collect();
        fixed.sort_by(f64::total_cmp);
        assert!((fixed[0] + s).abs() < 1e-12 && (fixed[1] - s).abs() < 1e-12);

        let p = Isometry::translation(1.0).classify();
        assert_eq!(p.kind, IsometryKind::Parabolic);
        assert_eq!(p.attracting, Some(Boundary::Infinity));
        assert_eq!(Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap().classify().kind, IsometryKind::Elliptic);
        assert_eq!(Isometry::IDENTITY.classify().kind, IsometryKind::Identity);
    }

    #[test]
    fn attracting_point_attracts() {
        let m = g41();
        let class = m.classify();
        let mut z = pt(0.1, 0.2);
        for _ in 0..60 {
            z = m.apply_point(z);
        }
        let target = class.attracting.unwrap().real().unwrap();
        assert!((z.x - target).abs() < 1e-9, "{z} vs {target}");
        let dil = Isometry::dilation(4.0).unwrap().classify();
        assert_eq!(dil.attracting, Some(Boundary::Infinity));
        assert_eq!(dil.repelling, Some(Boundary::Real(0.0)));
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(Isometry::IDENTITY.displacement(pt(1.0, 3.0)), 0.0);
        let on_axis = pt(0.0, 2.0 * 3f64.sqrt());
        assert!((g41().displacement(on_axis) - 2.0 * 2f64.acosh()).abs() < 1e-12);
        assert!((g41().displacement_hyperbolic(on_axis).unwrap() - 2.0 * 2f64.acosh()).abs() < 1e-12);

        let s = hgeom::dist_point_geodesic(Point::I, &Geodesic::semicircle(0.0, 2.0 * 3f64.sqrt()).unwrap());
        let expected = 2.0 * (s.cosh() * 2f64.acosh().sinh()).asinh();
        assert!((g41().displacement_hyperbolic(Point::I).unwrap() - expected).abs() < 1e-12);
        assert!((g41().displacement(Point::I) - expected).abs() < 1e-12);
    }

    #[test]
    fn displacement_grows_away_from_axis() {
        let m = g41();
        let mut last = 0.0;
        for k in 0..20 {
            let z = pt(0.0, 2.0 * 3f64.sqrt() * (0.1 * k as f64).exp());
            let d = m.displacement(z);
            assert!(d >= last - 1e-12);
            last = d;
        }
    }

    #[test]
    fn parabolic_examples() {
        let t = Isometry::translation(1.0);
        let z0 = Point::I;
        assert!((t.displacement_parabolic(z0, z0).unwrap() - t.displacement(z0)).abs() < 1e-15);
        let z = pt(0.0, 2.0);
        let formula = t.displacement_parabolic(z, z0).unwrap();
        let expected = 2.0 * ((-(2f64.ln())).exp() * 0.5f64.asinh().sinh()).asinh();
        assert!((formula - expected).abs() < 1e-14);
        assert!((formula - hgeom::dist(z, pt(1.0, 2.0))).abs() < 1e-14);
        // inside the horoball at ∞ through z0 the displacement is smaller
        assert!(formula < t.displacement(z0));
        assert!(g41().displacement_parabolic(z, z0).is_err());
        assert!(t.displacement_hyperbolic(z).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let m = g41();
        let same = m.conjugate(&Isometry::IDENTITY);
        for (x, y) in same.entries().iter().zip(m.entries()) {
            assert!((x - y).abs() < 1e-15);
        }
        let t = Isometry::new(1.0, 0.7, 0.0, 1.0).unwrap();
        let conj = m.conjugate(&t);
        assert!((conj.trace() - m.trace()).abs() < 1e-12);
        let (l1, l2) = (conj.classify().translation_length.unwrap(), m.classify().translation_length.unwrap());
        assert!((l1 - l2).abs() < 1e-12);
    }

    #[test]
    fn orientation_helper() {
        let m = Isometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
        // γ⁻ = 0, γ⁺ = ∞ already satisfies |γ⁻| ≤ |γ⁺|
        assert_eq!(m.oriented_towards_infinity(), m);
        assert_eq!(m.inverse().oriented_towards_infinity(), m);
    }
}
