//! Exact arithmetic in a real quadratic field `Q(√D)`.
//!
//! Every matrix entry of the flute families lies in `Q(√q)` for the rational
//! family parameter `q`, and so do the centers and squared radii of their
//! perpendicular bisectors. Computing them here keeps values such as the
//! center `-4` of the first bisector exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `rational + irrational · √radicand` with `radicand` a positive squarefree
/// integer (`1` when the field is `Q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticNumber {
    rational: BigRational,
    irrational: BigRational,
    radicand: BigInt,
}

/// Splits `n > 0` as `s² · f` with `f` squarefree.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            square *= &p;
        }
        p += 1u32;
    }
    (square, rest)
}

impl QuadraticNumber {
    pub fn rational(r: BigRational) -> Self {
        QuadraticNumber { rational: r, irrational: BigRational::zero(), radicand: BigInt::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        QuadraticNumber::rational(BigRational::from_integer(n.into()))
    }

    /// `√q` for a positive rational `q`.
    ///
    /// Family parameters are small, so the trial-division squarefree split is
    /// cheap.
    pub fn sqrt_of(q: &BigRational) -> Self {
        assert!(q.is_positive(), "square root of non-positive rational");
        // √(p/r) = √(p r) / r
        let (p, r) = (q.numer(), q.denom());
        let (s, f) = square_split(&(p * r));
        let coeff = BigRational::new(s, r.clone());
        if f.is_one() {
            QuadraticNumber::rational(coeff)
        } else {
            QuadraticNumber { rational: BigRational::zero(), irrational: coeff, radicand: f }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    fn field(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.radicand.clone(),
            (false, true) => self.radicand.clone(),
            (false, false) => {
                assert_eq!(self.radicand, other.radicand, "mixing different quadratic fields");
                self.radicand.clone()
            }
        }
    }

    fn build(rational: BigRational, irrational: BigRational, radicand: BigInt) -> Self {
        if irrational.is_zero() {
            QuadraticNumber::rational(rational)
        } else {
            QuadraticNumber { rational, irrational, radicand }
        }
    }

    /// Galois conjugate `a - b√D`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber::build(self.rational.clone(), -self.irrational.clone(), self.radicand.clone())
    }

    /// Field norm `a² - b² D`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational
            - &self.irrational * &self.irrational * BigRational::from_integer(self.radicand.clone())
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.rational.cmp(&BigRational::zero());
        let sb = self.irrational.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (sa, _) => {
                // opposite signs: compare a² with b² D
                let a2 = &self.rational * &self.rational;
                let b2d = &self.irrational * &self.irrational * BigRational::from_integer(self.radicand.clone());
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<BigRational> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        let (n, d) = (r.numer(), r.denom());
        let (sn, sd) = (n.sqrt(), d.sqrt());
        (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let b = self.irrational.to_f64().unwrap_or(f64::NAN);
        let root = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        if a.signum() == b.signum() || a == 0.0 {
            return a + b * root;
        }
        // a + b√D = (a² - b²D) / (a - b√D) avoids cancellation
        self.norm().to_f64().unwrap_or(f64::NAN) / (a - b * root)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}·√{}", self.rational, self.irrational, self.radicand)
        }
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: Self) -> QuadraticNumber {
        let d = self.field(rhs);
        QuadraticNumber::build(&self.rational + &rhs.rational, &self.irrational + &rhs.irrational, d)
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: Self) -> QuadraticNumber {
        let d = self.field(rhs);
        QuadraticNumber::build(&self.rational - &rhs.rational, &self.irrational - &rhs.irrational, d)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: Self) -> QuadraticNumber {
        let d = self.field(rhs);
        let dd = BigRational::from_integer(d.clone());
        let rational = &self.rational * &rhs.rational + &self.irrational * &rhs.irrational * dd;
        let irrational = &self.rational * &rhs.irrational + &self.irrational * &rhs.rational;
        QuadraticNumber::build(rational, irrational, d)
    }
}

impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, rhs: Self) -> QuadraticNumber {
        let norm = rhs.norm();
        assert!(!norm.is_zero(), "division by zero in Q(√D)");
        let num = self * &rhs.conjugate();
        QuadraticNumber::build(&num.rational / &norm, &num.irrational / &norm, num.radicand)
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::build(-self.rational.clone(), -self.irrational.clone(), self.radicand.clone())
    }
}

/// A 2×2 matrix over `Q(√D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub a: QuadraticNumber,
    pub b: QuadraticNumber,
    pub c: QuadraticNumber,
    pub d: QuadraticNumber,
}

/// `R + iI` with both parts exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub re: QuadraticNumber,
    pub im: QuadraticNumber,
}

impl ExactMatrix {
    pub fn det(&self) -> QuadraticNumber {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> QuadraticNumber {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    /// Inverse of a unit-determinant matrix.
    pub fn inverse_unimodular(&self) -> ExactMatrix {
        ExactMatrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Image of `i` under a unit-determinant matrix:
    /// `(ac + bd) / (c² + d²) + i / (c² + d²)`.
    pub fn image_of_i(&self) -> ExactPoint {
        let den = &(&self.c * &self.c) + &(&self.d * &self.d);
        let one = QuadraticNumber::from_integer(1);
        ExactPoint {
            re: &(&(&self.a * &self.c) + &(&self.b * &self.d)) / &den,
            im: &one / &den,
        }
    }

    /// Image of `∞`, `a / c`, or `None` when `c = 0`.
    pub fn image_of_infinity(&self) -> Option<QuadraticNumber> {
        (!self.c.is_zero()).then(|| &self.a / &self.c)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()]
    }
}

/// Exact center and squared radius of the bisector of `[i, p]`, or `None`
/// when `Im p = 1` (vertical bisector).
pub fn exact_bisector(p: &ExactPoint) -> Option<(QuadraticNumber, QuadraticNumber)> {
    let one = QuadraticNumber::from_integer(1);
    let shifted = &p.im - &one;
    if shifted.is_zero() {
        return None;
    }
    let center = -&(&p.re / &shifted);
    let radius_sq = &p.im * &(&one + &(&center * &center));
    Some((center, radius_sq))
}
