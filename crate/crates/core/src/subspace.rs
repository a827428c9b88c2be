//! Subspaces of `∧ⁿCᵐ` with an eagerly computed orthogonal basis.

use crate::error::{Error, Result};
use crate::index::binomial;
use crate::linalg::{dot, orthogonal_residual};
use crate::nvector::NVector;
use crate::scalar::Scalar;

/// A span of N-vectors. The orthogonal basis is computed at construction
/// (orthonormal on binary64, exact Gram–Schmidt on exact backends), so the
/// value is immutable and freely shareable across threads.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    m: usize,
    n: usize,
    basis: Vec<NVector<S>>,
    ortho: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(m: usize, n: usize, vectors: Vec<NVector<S>>) -> Result<Self> {
        Self::span_with_tol(m, n, vectors, crate::ZERO_TOL)
    }

    pub fn span_with_tol(m: usize, n: usize, vectors: Vec<NVector<S>>, tol: f64) -> Result<Self> {
        for v in &vectors {
            if v.m() != m || v.n() != n {
                return Err(Error::GradeMismatch(format!(
                    "vector in ∧^{}C^{} does not belong to ∧^{n}C^{m}",
                    v.n(),
                    v.m()
                )));
            }
        }
        let rows: Vec<Vec<S>> = vectors.iter().map(NVector::to_dense).collect();
        let ortho = S::orthogonal_row_basis(&rows, tol);
        Ok(Self {
            m,
            n,
            basis: vectors,
            ortho,
        })
    }

    /// The whole space `∧ⁿCᵐ`.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        let vectors = crate::index::combinations(m, n)
            .into_iter()
            .map(|idx| NVector::basis(m, idx))
            .collect::<Result<Vec<_>>>()?;
        Self::span(m, n, vectors)
    }

    fn from_ortho(m: usize, n: usize, ortho: Vec<Vec<S>>) -> Self {
        let basis = ortho
            .iter()
            .map(|v| NVector::from_dense(m, n, v.clone()).expect("dense length matches"))
            .collect();
        Self { m, n, basis, ortho }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.ortho.len()
    }

    pub fn ambient_dim(&self) -> usize {
        binomial(self.m, self.n)
    }

    /// The generating vectors as given.
    pub fn generators(&self) -> &[NVector<S>] {
        &self.basis
    }

    /// Orthogonal basis vectors as N-vectors.
    pub fn orthogonal_basis(&self) -> Vec<NVector<S>> {
        self.ortho
            .iter()
            .map(|v| NVector::from_dense(self.m, self.n, v.clone()).expect("dense length matches"))
            .collect()
    }

    fn check(&self, v: &NVector<S>) -> Result<()> {
        if v.m() != self.m || v.n() != self.n {
            return Err(Error::GradeMismatch(format!(
                "vector in ∧^{}C^{} projected onto ∧^{}C^{}",
                v.n(),
                v.m(),
                self.n,
                self.m
            )));
        }
        Ok(())
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &NVector<S>) -> Result<NVector<S>> {
        self.check(v)?;
        let x = v.to_dense();
        let mut out = vec![S::zero(); x.len()];
        for q in &self.ortho {
            let c = dot(q, &x) / dot(q, q);
            for (o, qi) in out.iter_mut().zip(q) {
                *o = o.clone() + c.clone() * qi.clone();
            }
        }
        NVector::from_dense(self.m, self.n, out)
    }

    /// `v − Π v`, computed directly to avoid cancellation.
    pub fn reject(&self, v: &NVector<S>) -> Result<NVector<S>> {
        self.check(v)?;
        NVector::from_dense(self.m, self.n, orthogonal_residual(&self.ortho, &v.to_dense()))
    }

    pub fn contains(&self, v: &NVector<S>, tol: f64) -> Result<bool> {
        let r = self.reject(v)?;
        Ok(if S::EXACT {
            r.is_zero()
        } else {
            r.norm() <= tol * v.norm()
        })
    }

    pub fn complement(&self) -> Subspace<S> {
        let comp = S::orthogonal_complement(&self.ortho, self.ambient_dim(), crate::ZERO_TOL);
        Self::from_ortho(self.m, self.n, comp)
    }

    /// `self ∩ v^⊥`.
    pub fn orthogonal_to(&self, v: &NVector<S>) -> Result<Subspace<S>> {
        self.check(v)?;
        let w = self.project(v)?;
        if w.is_zero() || (!S::EXACT && w.norm() <= crate::ZERO_TOL * v.norm()) {
            return Ok(self.clone());
        }
        let wd = [w.to_dense()];
        let rows: Vec<Vec<S>> = self
            .ortho
            .iter()
            .map(|q| orthogonal_residual(&wd, q))
            .collect();
        let mut ortho = S::orthogonal_row_basis(&rows, crate::ZERO_TOL);
        ortho.truncate(self.dim() - 1);
        Ok(Self::from_ortho(self.m, self.n, ortho))
    }
}
