//! Scalar backends.
//!
//! Every algebraic routine in this crate is generic over [`Scalar`], a complex
//! field with conjugation. Three backends are provided:
//!
//! * [`C64`]: binary64 complex numbers, used for numerical searches and for
//!   constructions whose parameters are only known approximately.
//! * [`CQ`]: exact complex rationals, used for integer-data constructions and
//!   exact certificates.
//! * [`Cyclotomic<K>`](crate::cyclotomic::Cyclotomic): exact elements of the
//!   cyclotomic field `Q(e^{2πi/K})`, for constructions that need roots of unity.
//!
//! Backends never mix implicitly; convert with [`Scalar::to_c64`] or
//! [`Scalar::from_c64`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg;

/// Binary64 complex scalar.
pub type C64 = Complex<f64>;

/// Exact complex rational scalar.
pub type CQ = Complex<BigRational>;

/// A complex field with conjugation.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact (zero tests ignore tolerances).
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Exact backends convert the binary64 value exactly; `None` for NaN/Inf.
    fn from_c64(z: C64) -> Option<Self>;

    fn to_c64(&self) -> C64;

    fn is_finite(&self) -> bool {
        true
    }

    fn norm_sqr_f64(&self) -> f64 {
        self.to_c64().norm_sqr()
    }

    /// Weight used to choose elimination pivots. Zero means "unusable".
    fn pivot_weight(&self) -> f64;

    /// `|self| <= tol * scale` on floating backends; `self == 0` on exact ones.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    /// `e^{2πi·power/order}` if representable in this backend.
    fn root_of_unity(order: usize, power: usize) -> Option<Self>;

    /// Orthogonal (not necessarily normalized) basis of the row space.
    fn orthogonal_row_basis(rows: &[Vec<Self>], tol: f64) -> Vec<Vec<Self>> {
        linalg::gram_schmidt(rows, tol)
    }

    /// Orthogonal basis of the orthogonal complement of `basis` in `Self^dim`.
    /// `basis` must already be pairwise orthogonal.
    fn orthogonal_complement(basis: &[Vec<Self>], dim: usize, tol: f64) -> Vec<Vec<Self>> {
        linalg::gram_schmidt_extend(basis, dim, tol)
    }

    fn rank(rows: &[Vec<Self>], tol: f64) -> usize {
        linalg::echelon_rank(rows, tol)
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn from_bigint(v: &BigInt) -> Self {
        C64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_c64(z: C64) -> Option<Self> {
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn pivot_weight(&self) -> f64 {
        self.norm_sqr()
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.norm() <= tol * scale
    }

    fn root_of_unity(order: usize, power: usize) -> Option<Self> {
        if order == 0 {
            return None;
        }
        let angle = 2.0 * std::f64::consts::PI * (power % order) as f64 / order as f64;
        Some(C64::from_polar(1.0, angle))
    }

    fn orthogonal_row_basis(rows: &[Vec<Self>], tol: f64) -> Vec<Vec<Self>> {
        linalg::svd_row_basis(rows, tol)
    }

    fn orthogonal_complement(basis: &[Vec<Self>], dim: usize, _tol: f64) -> Vec<Vec<Self>> {
        linalg::projector_complement(basis, dim)
    }

    fn rank(rows: &[Vec<Self>], tol: f64) -> usize {
        linalg::svd_rank(rows, tol)
    }
}

impl Scalar for CQ {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_i64(v: i64) -> Self {
        CQ::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    fn from_bigint(v: &BigInt) -> Self {
        CQ::new(BigRational::from_integer(v.clone()), BigRational::zero())
    }

    fn from_c64(z: C64) -> Option<Self> {
        Some(CQ::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn root_of_unity(order: usize, power: usize) -> Option<Self> {
        let one = BigRational::one();
        let zero = BigRational::zero();
        match (order, power % order.max(1)) {
            (0, _) => None,
            (_, 0) => Some(CQ::one()),
            (2, 1) => Some(CQ::new(-one, zero)),
            (4, 1) => Some(CQ::new(zero, one)),
            (4, 2) => Some(CQ::new(-one, zero)),
            (4, 3) => Some(CQ::new(zero, -one)),
            _ => None,
        }
    }
}

/// `|re| + |im|` of an exact complex rational, a cheap nonzero magnitude.
pub fn rational_l1(z: &CQ) -> BigRational {
    z.re.abs() + z.im.abs()
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `"p/q"` (always with a denominator).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_backend_is_closed_under_field_ops() {
        let a = CQ::new(
            BigRational::new(1.into(), 3.into()),
            BigRational::new((-2).into(), 5.into()),
        );
        let b = CQ::from_i64(7) + CQ::new(BigRational::zero(), BigRational::one());
        let q = a.clone() / b.clone();
        assert_eq!(q * b.clone(), a);
        assert_eq!(Scalar::conj(&Scalar::conj(&a)), a);
        assert_eq!((a.clone() - a.clone()), CQ::zero());
    }

    #[test]
    fn float_backend_rejects_non_finite() {
        assert!(C64::from_c64(C64::new(f64::NAN, 0.0)).is_none());
        assert!(CQ::from_c64(C64::new(f64::INFINITY, 0.0)).is_none());
        assert!(!C64::new(0.0, f64::INFINITY).is_finite());
    }

    #[test]
    fn exact_conversion_of_binary64_is_lossless() {
        let z = C64::new(0.1, -1.0e-300);
        assert_eq!(CQ::from_c64(z).unwrap().to_c64(), z);
    }

    #[test]
    fn rational_strings_round_trip() {
        let r = BigRational::new((-22).into(), 6.into());
        let s = format_rational(&r);
        assert_eq!(s, "-11/3");
        assert_eq!(parse_rational(&s), Some(r));
        assert_eq!(parse_rational("5"), Some(BigRational::from_integer(5.into())));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn gaussian_rational_roots_of_unity() {
        assert_eq!(CQ::root_of_unity(2, 1), Some(CQ::from_i64(-1)));
        assert!(CQ::root_of_unity(3, 1).is_none());
        let w = C64::root_of_unity(3, 1).unwrap();
        assert!((w * w * w - C64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
