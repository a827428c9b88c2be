//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ = e^{2πi/K}`.
//!
//! Elements are polynomials in `ζ` with rational coefficients, reduced modulo
//! the `K`-th cyclotomic polynomial. Complex conjugation is the field
//! automorphism `ζ ↦ ζ^{-1}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::{Scalar, C64};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`; `b` must be nonzero and trimmed.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap().clone() / lead.clone();
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &coef * bi;
        }
        quot[shift] = coef;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn cyclotomic_polynomial(order: usize) -> Arc<Poly> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&order) {
        return p.clone();
    }
    // Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d
    let mut num: Poly = vec![BigRational::zero(); order + 1];
    num[0] = -BigRational::one();
    num[order] = BigRational::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            let phi = cyclotomic_polynomial(d);
            num = poly_divrem(&num, &phi).0;
        }
    }
    let p = Arc::new(num);
    cache.write().unwrap().insert(order, p.clone());
    p
}

/// An element of `Q(e^{2πi/K})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<const K: usize> {
    coeffs: Poly,
}

impl<const K: usize> Cyclotomic<K> {
    fn modulus() -> Arc<Poly> {
        assert!(K >= 1, "cyclotomic order must be positive");
        cyclotomic_polynomial(K)
    }

    fn reduced(p: Poly) -> Self {
        let (_, rem) = poly_divrem(&p, &Self::modulus());
        Self { coeffs: rem }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = vec![r];
        trim(&mut coeffs);
        Self { coeffs }
    }

    /// `ζ^power`.
    pub fn zeta_pow(power: usize) -> Self {
        let mut p = vec![BigRational::zero(); power % K + 1];
        p[power % K] = BigRational::one();
        Self::reduced(p)
    }

    /// Coefficients in the power basis `1, ζ, ζ², …`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree of the field over `Q`.
    pub fn degree() -> usize {
        Self::modulus().len() - 1
    }

    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in cyclotomic field");
        // extended Euclid: s·a + t·Φ = gcd, gcd a nonzero constant since Φ is irreducible
        let (mut r0, mut r1) = (Self::modulus().as_ref().clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let s: Poly = s0.into_iter().map(|x| x / c.clone()).collect();
        Self::reduced(s)
    }
}

impl<const K: usize> fmt::Debug for Cyclotomic<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})ζ{K}"),
                _ => format!("({c})ζ{K}^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<const K: usize> Zero for Cyclotomic<K> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<const K: usize> One for Cyclotomic<K> {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl<const K: usize> Add for Cyclotomic<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs: Poly = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        trim(&mut coeffs);
        Self { coeffs }
    }
}

impl<const K: usize> Neg for Cyclotomic<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<const K: usize> Sub for Cyclotomic<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const K: usize> Mul for Cyclotomic<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<const K: usize> Div for Cyclotomic<K> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

impl<const K: usize> Scalar for Cyclotomic<K> {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        let mut p = vec![BigRational::zero(); K.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[(K - i % K) % K] += c;
        }
        trim(&mut p);
        Self::reduced(p)
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v.clone()))
    }

    /// Only real rational-representable values and `i` (for `4 | K`) convert.
    fn from_c64(z: C64) -> Option<Self> {
        let re = Self::from_rational(BigRational::from_float(z.re)?);
        if z.im == 0.0 {
            return Some(re);
        }
        let i = Self::root_of_unity(4, 1)?;
        Some(re + i * Self::from_rational(BigRational::from_float(z.im)?))
    }

    fn to_c64(&self) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                C64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / K as f64)
                    * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
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
        if order == 0 || !K.is_multiple_of(order) {
            return None;
        }
        Some(Self::zeta_pow((K / order) * (power % order)))
    }
}
