use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use super::Rational;
use crate::exact::{exact_bisector, ExactMatrix, ExactPoint, QuadraticNumber};
use crate::hgeom::{self, Geodesic, Point};
use crate::isom::Isometry;
use crate::{Error, Result};

/// Largest family index accepted by default.
pub const DEFAULT_N_MAX: u32 = 200;

/// `r_n = 2·3^(n-1)` as an exact integer.
pub fn r_n_exact(n: u32) -> BigInt {
    assert!(n >= 1, "r_n is defined for n >= 1");
    BigInt::from(2u32) * BigInt::from(3u32).pow(n - 1)
}

pub fn r_n(n: u32) -> f64 {
    2.0 * 3f64.powi(n as i32 - 1)
}

/// `G` for `q ≥ 4` (the matrices `g_{q,n}`), `H` for `1 < q < 4` (the
/// conjugates `h_{q,n}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Branch {
    G,
    H,
}

impl Branch {
    pub fn of(q: &Rational) -> Branch {
        if q.numer() >= 4 * q.denom() {
            Branch::G
        } else {
            Branch::H
        }
    }
}

fn big(n: i64) -> QuadraticNumber {
    QuadraticNumber::from_integer(n)
}

fn check_parameters(q: &Rational, n: u32, n_max: u32) -> Result<()> {
    if !q.exceeds_one() {
        return Err(Error::InvalidParameter(q.to_string()));
    }
    if n == 0 || n > n_max {
        return Err(Error::IndexOutOfRange { n, max: n_max });
    }
    Ok(())
}

/// `g_{q,n} = [[√q, (1-q) r_n], [-1/r_n, √q]]`, for any `q > 1`.
fn g_matrix(q: &Rational, n: u32) -> ExactMatrix {
    let root = QuadraticNumber::sqrt_of(&q.to_big());
    let r = QuadraticNumber::rational(BigRational::from_integer(r_n_exact(n)));
    let one_minus_q = QuadraticNumber::rational(BigRational::one() - q.to_big());
    ExactMatrix {
        a: root.clone(),
        b: &one_minus_q * &r,
        c: -&(&big(1) / &r),
        d: root,
    }
}

/// `h_{q,n} = [[4 - √q, r_n((√q - 2)² - 3)], [-1/r_n, √q]]`.
fn h_matrix(q: &Rational, n: u32) -> ExactMatrix {
    let root = QuadraticNumber::sqrt_of(&q.to_big());
    let r = QuadraticNumber::rational(BigRational::from_integer(r_n_exact(n)));
    let shifted = &root - &big(2);
    ExactMatrix {
        a: &big(4) - &root,
        b: &r * &(&(&shifted * &shifted) - &big(3)),
        c: -&(&big(1) / &r),
        d: root,
    }
}

/// `T_{q,n} = [[1, t], [0, 1]]` with `t = -r_n(√q - 2)`.
pub fn conjugator(q: &Rational, n: u32) -> ExactMatrix {
    let root = QuadraticNumber::sqrt_of(&q.to_big());
    let r = QuadraticNumber::rational(BigRational::from_integer(r_n_exact(n)));
    ExactMatrix {
        a: big(1),
        b: -&(&r * &(&root - &big(2))),
        c: big(0),
        d: big(1),
    }
}

/// Center, radius and extremities of a perpendicular bisector `∂H_i(f^{±1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BisectorData {
    pub center: f64,
    pub radius: f64,
    /// `[center - radius, center + radius]`.
    pub extremities: [f64; 2],
    pub exact_center: QuadraticNumber,
    pub exact_radius_sq: QuadraticNumber,
}

impl BisectorData {
    fn from_image(p: &ExactPoint) -> Result<Self> {
        let (exact_center, exact_radius_sq) = exact_bisector(p).ok_or(Error::BisectorUndefined)?;
        let center = exact_center.to_f64();
        let radius = match exact_radius_sq.sqrt_exact() {
            Some(r) => num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN),
            None => exact_radius_sq.to_f64().sqrt(),
        };
        Ok(BisectorData {
            center,
            radius,
            extremities: [center - radius, center + radius],
            exact_center,
            exact_radius_sq,
        })
    }

    pub fn geodesic(&self) -> Geodesic {
        Geodesic::Semicircle { center: self.center, radius: self.radius }
    }

    /// Whether the whole semicircle lies in `{ |x| ≥ y }` on the side of the
    /// given sign, i.e. below the hypercycle through `±1 + i` with
    /// extremities `0, ∞`.
    ///
    /// On a semicircle with `|c| > ρ` the minimum of `|x|/y` is
    /// `√(c² - ρ²)/ρ`, so the condition is `c² ≥ 2ρ²` with `c` of the right
    /// sign. Decided exactly.
    pub fn below_hypercycle(&self, positive_side: bool) -> bool {
        let side_ok = match self.exact_center.signum() {
            Ordering::Greater => positive_side,
            Ordering::Less => !positive_side,
            Ordering::Equal => false,
        };
        let c2 = &self.exact_center * &self.exact_center;
        let twice = &self.exact_radius_sq * &QuadraticNumber::from_integer(2);
        side_ok && (&c2 - &twice).signum() != Ordering::Less
    }
}

/// An element `f_{q,n}` of the family, kept both exactly and as an
/// [`Isometry`].
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyElement {
    q: Rational,
    n: u32,
    branch: Branch,
    exact: ExactMatrix,
    matrix: Isometry,
}

impl FamilyElement {
    pub fn new(q: Rational, n: u32) -> Result<Self> {
        FamilyElement::with_max_index(q, n, DEFAULT_N_MAX)
    }

    pub fn with_max_index(q: Rational, n: u32, n_max: u32) -> Result<Self> {
        check_parameters(&q, n, n_max)?;
        let branch = Branch::of(&q);
        let exact = match branch {
            Branch::G => g_matrix(&q, n),
            Branch::H => h_matrix(&q, n),
        };
        let [a, b, c, d] = exact.to_f64();
        let matrix = Isometry::new(a, b, c, d)?;
        Ok(FamilyElement { q, n, branch, exact, matrix })
    }

    /// `g_{q,n}` for any `q > 1`, regardless of branch.
    pub fn g(q: Rational, n: u32) -> Result<ExactMatrix> {
        check_parameters(&q, n, DEFAULT_N_MAX)?;
        Ok(g_matrix(&q, n))
    }

    pub fn q(&self) -> Rational {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn r_n(&self) -> f64 {
        r_n(self.n)
    }

    pub fn exact(&self) -> &ExactMatrix {
        &self.exact
    }

    pub fn matrix(&self) -> Isometry {
        self.matrix
    }

    fn exact_signed(&self, inverse: bool) -> ExactMatrix {
        if inverse {
            self.exact.inverse_unimodular()
        } else {
            self.exact.clone()
        }
    }

    /// `f^{±1}·i`, exactly.
    pub fn image_of_i(&self, inverse: bool) -> ExactPoint {
        self.exact_signed(inverse).image_of_i()
    }

    /// Bisector `∂H_i(f^{±1})` of the segment `[i, f^{±1} i]`.
    pub fn bisector_data(&self, inverse: bool) -> Result<BisectorData> {
        BisectorData::from_image(&self.image_of_i(inverse))
    }

    /// The constant `κ` with `c(f^{±1}_{q,n}) ~ -r_n κ` as `n → ∞`.
    pub fn asymptotic_center_slope(&self, inverse: bool) -> f64 {
        let s = self.q.to_f64().sqrt();
        match (self.branch, inverse) {
            (Branch::G, false) => s,
            (Branch::G, true) => -s,
            (Branch::H, false) => s * ((s - 2.0).powi(2) - 3.0) / (1.0 - s * s),
            (Branch::H, true) => ((s - 2.0).powi(2) - 3.0) * (s - 4.0) / (1.0 - (4.0 - s).powi(2)),
        }
    }

    /// Height at which the axis crosses the imaginary axis.
    pub fn axis_crossing_height(&self) -> Option<f64> {
        match self.matrix.classify().axis? {
            Geodesic::Semicircle { center, radius } if center.abs() < radius => {
                Some(((radius - center) * (radius + center)).sqrt())
            }
            _ => None,
        }
    }

    /// Distance from `i` to `f^{±1} i`.
    pub fn basepoint_displacement(&self) -> f64 {
        hgeom::dist(Point::I, self.matrix.apply_point(Point::I))
    }
}

/// Checks that `∂H_i(f^{-1})` (when `inverse`) lies below the hypercycle
/// through `1 + i`, or that `∂H_i(f)` lies below the one through `-1 + i`.
pub fn below_hypercycle_check(e: &FamilyElement, inverse: bool) -> Result<bool> {
    Ok(e.bisector_data(inverse)?.below_hypercycle(inverse))
}
