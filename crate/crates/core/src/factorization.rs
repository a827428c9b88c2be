//! Decomposable N-vectors given by their factors.

use crate::error::{Error, Result};
use crate::exterior::support;
use crate::index::combinations;
use crate::linalg::{determinant, dot};
use crate::nvector::NVector;
use crate::scalar::Scalar;

/// An ordered list of `n` vectors of `Cᵐ`, standing for `v₁ ∧ ⋯ ∧ vₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    m: usize,
    factors: Vec<Vec<S>>,
}

impl<S: Scalar> Factorization<S> {
    pub fn new(m: usize, factors: Vec<Vec<S>>) -> Result<Self> {
        if factors.len() > m {
            return Err(Error::GradeMismatch(format!(
                "{} factors in dimension {m}",
                factors.len()
            )));
        }
        for f in &factors {
            if f.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "factor of length {} in dimension {m}",
                    f.len()
                )));
            }
            if !f.iter().all(Scalar::is_finite) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { m, factors })
    }

    /// `|i₁⟩ ∧ ⋯ ∧ |i_k⟩` from 1-based labels.
    pub fn slater(m: usize, labels: &[usize]) -> Result<Self> {
        let factors = labels
            .iter()
            .map(|&l| {
                if l == 0 || l > m {
                    return Err(Error::InvalidIndex(format!("label {l} in dimension {m}")));
                }
                Ok(unit(m, l - 1))
            })
            .collect::<Result<_>>()?;
        Self::new(m, factors)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<S>] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Vec<S>> {
        self.factors
    }

    /// Coefficient at `(i₁<⋯<iₙ)` is the minor of the factor matrix on those rows.
    pub fn wedge_expand(&self) -> NVector<S> {
        let n = self.n();
        let entries = combinations(self.m, n).into_iter().map(|idx| {
            let minor: Vec<Vec<S>> = idx
                .as_slice()
                .iter()
                .map(|&row| self.factors.iter().map(|f| f[row].clone()).collect())
                .collect();
            (idx, determinant(minor))
        });
        NVector::from_entries(self.m, n, entries).expect("minors are well-formed")
    }

    /// `det[⟨uᵢ|wⱼ⟩]`.
    pub fn gram_inner_product(&self, other: &Self) -> Result<S> {
        self.check_same_space(other)?;
        let gram: Vec<Vec<S>> = self
            .factors
            .iter()
            .map(|u| other.factors.iter().map(|w| dot(u, w)).collect())
            .collect();
        Ok(determinant(gram))
    }

    pub fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.m, other.m)));
        }
        if self.n() != other.n() {
            return Err(Error::GradeMismatch(format!("{} vs {}", self.n(), other.n())));
        }
        Ok(())
    }

    /// `‖v₁ ∧ ⋯ ∧ vₙ‖` via the Gram determinant.
    pub fn norm(&self) -> f64 {
        self.gram_inner_product(self)
            .map(|g| g.to_c64().re.max(0.0).sqrt())
            .unwrap_or(0.0)
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Factorization<T> {
        Factorization {
            m: self.m,
            factors: self
                .factors
                .iter()
                .map(|v| v.iter().map(&f).collect())
                .collect(),
        }
    }

    /// Zero-pads every factor to dimension `new_m`, starting at `offset`.
    pub fn embed(&self, new_m: usize, offset: usize) -> Result<Self> {
        if offset + self.m > new_m {
            return Err(Error::DimensionMismatch(format!(
                "cannot place dimension {} at offset {offset} in {new_m}",
                self.m
            )));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let mut v = vec![S::zero(); new_m];
                v[offset..offset + self.m].clone_from_slice(f);
                v
            })
            .collect();
        Ok(Self { m: new_m, factors })
    }

    /// Appends factors; the result is `self ∧ (extra₁ ∧ ⋯)`.
    pub fn extend(&self, extra: impl IntoIterator<Item = Vec<S>>) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend(extra);
        Self::new(self.m, factors)
    }

    /// Multiplies the first factor by `s`.
    pub fn scaled(&self, s: &S) -> Self {
        let mut out = self.clone();
        if let Some(f) = out.factors.first_mut() {
            f.iter_mut().for_each(|x| *x = x.clone() * s.clone());
        }
        out
    }
}

pub(crate) fn unit<S: Scalar>(m: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); m];
    v[i] = S::one();
    v
}

/// Factors a decomposable `psi`: support vectors `u₁…uₙ` and the scale
/// `⟨u₁∧⋯∧uₙ|ψ⟩ / ‖u₁∧⋯∧uₙ‖²` folded into the first factor.
///
/// Exact backends require an exactly `n`-dimensional support. On binary64 the
/// leading `n` support directions are used and the result is accepted when it
/// reproduces `psi` to `tol` relative to `‖psi‖`.
pub fn factorize<S: Scalar>(psi: &NVector<S>, tol: f64) -> Result<Factorization<S>> {
    psi.nonzero()?;
    let n = psi.n();
    let m = psi.m();
    if n == 0 {
        return Factorization::new(m, Vec::new());
    }
    let basis = if S::EXACT {
        let b = support(psi)?;
        if b.len() != n {
            return Err(Error::NotDecomposable(f64::INFINITY));
        }
        b
    } else {
        crate::exterior::leading_support(psi, n)?
    };
    let frame = Factorization::new(m, basis)?;
    let w = frame.wedge_expand();
    let c = crate::exterior::inner_product(&w, psi)? / w.norm_sqr();
    let out = frame.scaled(&c);
    let err = out.wedge_expand().sub(psi)?.norm() / psi.norm();
    if S::EXACT && err != 0.0 || !S::EXACT && err > tol {
        return Err(Error::NotDecomposable(err));
    }
    Ok(out)
}
