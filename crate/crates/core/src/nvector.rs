//! Sparse N-vectors in `∧ᴺCᴹ`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{binomial, combinations, MultiIndex};
use crate::scalar::Scalar;

/// An element of `∧ⁿCᵐ`, stored as a sparse map from basis index to
/// coefficient. Absent keys are zero; exact zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct NVector<S> {
    m: usize,
    n: usize,
    coeffs: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> NVector<S> {
    pub fn zero(m: usize, n: usize) -> Result<Self> {
        if n > m {
            return Err(Error::GradeMismatch(format!("grade {n} exceeds dimension {m}")));
        }
        Ok(Self {
            m,
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// The grade-0 vector `s` (the empty wedge times `s`).
    pub fn scalar(m: usize, s: S) -> Self {
        let mut v = Self::zero(m, 0).expect("grade 0 always fits");
        v.insert(MultiIndex::empty(), s);
        v
    }

    pub fn basis(m: usize, idx: MultiIndex) -> Result<Self> {
        Self::from_entries(m, idx.grade(), [(idx, S::one())])
    }

    /// `e_{i₁,…,i_k}` from 1-based labels.
    pub fn slater(m: usize, labels: &[usize]) -> Result<Self> {
        Self::basis(m, MultiIndex::from_one_based(labels, m)?)
    }

    /// Builds from entries; repeated keys accumulate.
    pub fn from_entries(
        m: usize,
        n: usize,
        entries: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut v = Self::zero(m, n)?;
        for (idx, s) in entries {
            if idx.grade() != n {
                return Err(Error::GradeMismatch(format!(
                    "index {idx:?} has grade {}, expected {n}",
                    idx.grade()
                )));
            }
            if idx.as_slice().last().is_some_and(|&i| i >= m) {
                return Err(Error::InvalidIndex(format!("{idx:?} exceeds dimension {m}")));
            }
            if !s.is_finite() {
                return Err(Error::NonFinite);
            }
            v.add_at(idx, s);
        }
        Ok(v)
    }

    /// Builds from coefficients in lexicographic basis order.
    pub fn from_dense(m: usize, n: usize, dense: Vec<S>) -> Result<Self> {
        if dense.len() != binomial(m, n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                binomial(m, n),
                dense.len()
            )));
        }
        Self::from_entries(m, n, combinations(m, n).into_iter().zip(dense))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C(m, n)`.
    pub fn ambient_dim(&self) -> usize {
        binomial(self.m, self.n)
    }

    pub fn get(&self, idx: &MultiIndex) -> S {
        self.coeffs.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient_dim()];
        for (idx, s) in &self.coeffs {
            out[idx.rank(self.m)] = s.clone();
        }
        out
    }

    pub fn norm_sqr_f64(&self) -> f64 {
        self.coeffs.values().map(Scalar::norm_sqr_f64).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr_f64().sqrt()
    }

    /// Exact `Σ |coeff|²`.
    pub fn norm_sqr(&self) -> S {
        self.coeffs
            .values()
            .fold(S::zero(), |acc, s| acc + s.conj() * s.clone())
    }

    pub(crate) fn insert(&mut self, idx: MultiIndex, s: S) {
        if s.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, s);
        }
    }

    pub(crate) fn add_at(&mut self, idx: MultiIndex, s: S) {
        let cur = self.get(&idx);
        self.insert(idx, cur + s);
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self {
            m: self.m,
            n: self.n,
            coeffs: BTreeMap::new(),
        };
        for (idx, c) in &self.coeffs {
            out.insert(idx.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.m, other.m)));
        }
        if self.n != other.n {
            return Err(Error::GradeMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    /// `self + s · other`.
    pub fn axpy(&self, s: &S, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_at(idx.clone(), s.clone() * c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&-S::one(), other)
    }

    /// Explicit backend conversion.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> NVector<T> {
        let mut out = NVector {
            m: self.m,
            n: self.n,
            coeffs: BTreeMap::new(),
        };
        for (idx, c) in &self.coeffs {
            out.insert(idx.clone(), f(c));
        }
        out
    }

    /// Re-embeds into `∧ⁿC^{m'}` for `m' ≥ m` by keeping index labels.
    pub fn embed(&self, new_m: usize) -> Result<Self> {
        if new_m < self.m {
            return Err(Error::DimensionMismatch(format!(
                "cannot embed dimension {} into {new_m}",
                self.m
            )));
        }
        Ok(Self {
            m: new_m,
            n: self.n,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Drops floating coefficients below `tol · max|coeff|`.
    pub fn pruned(&self, tol: f64) -> Self {
        let scale = self
            .coeffs
            .values()
            .map(|c| c.norm_sqr_f64())
            .fold(0.0, f64::max)
            .sqrt();
        let mut out = self.clone();
        out.coeffs.retain(|_, c| !c.is_negligible(scale, tol));
        out
    }

    /// Whether all coefficients agree within `tol` (exactly on exact backends).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.check_same_space(other).is_ok()
            && self
                .sub(other)
                .map(|d| d.coeffs.values().all(|c| c.is_negligible(1.0, tol)))
                .unwrap_or(false)
    }
}

impl<S: Scalar> NVector<S> {
    pub(crate) fn nonzero(&self) -> Result<()> {
        if self.coeffs.values().all(Zero::is_zero) {
            Err(Error::ZeroVector)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C64, CQ};

    #[test]
    fn construction_rejects_nan_and_wrong_grade() {
        let idx = MultiIndex::from_one_based(&[1, 2], 4).unwrap();
        let bad = NVector::from_entries(4, 2, [(idx.clone(), C64::new(f64::NAN, 0.0))]);
        assert_eq!(bad, Err(Error::NonFinite));
        assert!(NVector::<C64>::from_entries(4, 3, [(idx, C64::new(1.0, 0.0))]).is_err());
        assert!(NVector::<C64>::zero(2, 3).is_err());
    }

    #[test]
    fn zero_is_empty_map_and_cancellation_prunes() {
        let e = NVector::<CQ>::slater(4, &[1, 2]).unwrap();
        let z = e.sub(&e).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.nnz(), 0);
        assert_eq!(z, NVector::zero(4, 2).unwrap());
    }

    #[test]
    fn dense_round_trip() {
        let dense: Vec<CQ> = (1..=6).map(CQ::from_i64).collect();
        let v = NVector::from_dense(4, 2, dense.clone()).unwrap();
        assert_eq!(v.to_dense(), dense);
        assert_eq!(v.get(&MultiIndex::from_one_based(&[1, 3], 4).unwrap()), CQ::from_i64(2));
    }
}
