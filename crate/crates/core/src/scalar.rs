//! Scalar fields used by the linear algebra.
//!
//! Two backends implement [`Scalar`]: [`Complex64`] for floating-point work and [`Exact`],
//! the field `Q(√2) + iQ(√2)` with arbitrary-precision rational coefficients. The exact
//! field contains every coordinate that appears in the usual three-dimensional
//! uncolorable ray sets, and zero-testing in it needs no tolerance.

use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Field operations shared by the exact and floating-point backends.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// `true` when zero-tests are decided exactly and tolerances are ignored.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Exact backends ignore `tol`.
    fn is_zero_tol(&self, tol: f64) -> bool;
    fn to_c64(&self) -> Complex64;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// `|z|²`, returned in the same field.
    fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// A real number `a + b√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt2::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn zero() -> Self {
        QSqrt2::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QSqrt2::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }

    pub fn neg(&self) -> Self {
        QSqrt2::new(-&self.a, -&self.b)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }

    /// `(a + b√2)⁻¹ = (a − b√2) / (a² − 2b²)`; the denominator vanishes only at zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let den = &self.a * &self.a - two * &self.b * &self.b;
        Some(QSqrt2::new(&self.a / &den, -(&self.b / &den)))
    }

    /// Sign decided exactly: compares `a` and `−b√2` through their squares.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: the term with the larger square wins.
        let two = BigRational::from_integer(BigInt::from(2));
        let a2 = &self.a * &self.a;
        let b2 = two * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else if a2 < b2 {
            sb
        } else {
            0
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * core::f64::consts::SQRT_2
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}√2", self.a, self.b)
    }
}

/// An element `(a + b√2) + i(c + d√2)` of `Q(√2) + iQ(√2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl Exact {
    pub fn new(re: QSqrt2, im: QSqrt2) -> Self {
        Exact { re, im }
    }

    /// `(a + b√2) + i(c + d√2)` from integer coefficients.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Exact::new(QSqrt2::from_ints(a, b), QSqrt2::from_ints(c, d))
    }

    pub fn from_rationals(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Exact::new(QSqrt2::new(a, b), QSqrt2::new(c, d))
    }

    pub fn sqrt2() -> Self {
        Exact::from_ints(0, 1, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})+i({:?})", self.re, self.im)
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::from_ints(0, 0, 0, 0)
    }
    fn one() -> Self {
        Exact::from_ints(1, 0, 0, 0)
    }
    fn from_i64(v: i64) -> Self {
        Exact::from_ints(v, 0, 0, 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        Exact::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Exact::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Exact::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
    fn neg(&self) -> Self {
        Exact::new(self.re.neg(), self.im.neg())
    }
    fn conj(&self) -> Self {
        Exact::new(self.re.clone(), self.im.neg())
    }
    fn inv(&self) -> Option<Self> {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let n_inv = n.inv()?;
        Some(Exact::new(self.re.mul(&n_inv), self.im.neg().mul(&n_inv)))
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<i64> for Exact {
    fn from(v: i64) -> Self {
        Exact::from_i64(v)
    }
}
