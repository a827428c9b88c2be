//! Products, duality and supports of N-vectors.
//!
//! The basis `{e_I : I increasing}` is orthonormal and the inner product is
//! conjugate-linear in its first argument, so for decomposables
//! `⟨u₁∧⋯∧uₙ | w₁∧⋯∧wₙ⟩ = det[⟨uᵢ|wⱼ⟩]` with no `n!` factor.

use crate::error::{Error, Result};
use crate::index::combinations;
use crate::linalg::{determinant, svd_leading_rows};
use crate::nvector::NVector;
use crate::scalar::{Scalar, C64};

fn sign<S: Scalar>(s: i8) -> S {
    if s < 0 {
        -S::one()
    } else {
        S::one()
    }
}

/// `Σ_I conj(u_I) v_I`.
pub fn inner_product<S: Scalar>(u: &NVector<S>, v: &NVector<S>) -> Result<S> {
    u.check_same_space(v)?;
    Ok(u.entries().fold(S::zero(), |acc, (idx, a)| {
        acc + a.conj() * v.get(idx)
    }))
}

/// Bilinear extension of `e_I ∧ e_J = ±e_{I∪J}`.
pub fn wedge_product<S: Scalar>(u: &NVector<S>, v: &NVector<S>) -> Result<NVector<S>> {
    if u.m() != v.m() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", u.m(), v.m())));
    }
    let mut out = NVector::zero(u.m(), u.n() + v.n())?;
    for (i, a) in u.entries() {
        for (j, b) in v.entries() {
            if let Some((k, s)) = i.merge(j) {
                out.add_at(k, sign::<S>(s) * a.clone() * b.clone());
            }
        }
    }
    Ok(out)
}

/// Contraction adjoint to wedging on the right:
/// `⟨ι(ψ, φ) | ξ⟩ = ⟨ψ | ξ ∧ φ⟩` for every `ξ` of grade `n − k`.
pub fn interior_product<S: Scalar>(psi: &NVector<S>, phi: &NVector<S>) -> Result<NVector<S>> {
    if psi.m() != phi.m() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", psi.m(), phi.m())));
    }
    if phi.n() > psi.n() {
        return Err(Error::GradeMismatch(format!(
            "cannot contract grade {} by grade {}",
            psi.n(),
            phi.n()
        )));
    }
    let mut out = NVector::zero(psi.m(), psi.n() - phi.n())?;
    for (i, a) in psi.entries() {
        for (k, b) in phi.entries() {
            if let Some((rest, s)) = i.remove(k) {
                out.add_at(rest, sign::<S>(s) * b.conj() * a.clone());
            }
        }
    }
    Ok(out)
}

/// Conjugate-linear Hodge star: `⋆e_I = sgn(I, Iᶜ) e_{Iᶜ}`, coefficients conjugated.
pub fn hodge_dual<S: Scalar>(psi: &NVector<S>) -> NVector<S> {
    let m = psi.m();
    let mut out = NVector::zero(m, m - psi.n()).expect("complement grade fits");
    for (i, a) in psi.entries() {
        let c = i.complement(m);
        let (_, s) = i.merge(&c).expect("disjoint by construction");
        out.add_at(c, sign::<S>(s) * a.conj());
    }
    out
}

/// `∧ⁿA ψ` for an `m × m` matrix `A` (given by rows).
pub fn exterior_power_apply<S: Scalar>(a: &[Vec<S>], psi: &NVector<S>) -> Result<NVector<S>> {
    let m = psi.m();
    if a.len() != m || a.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch(format!("operator must be {m}×{m}")));
    }
    let mut out = NVector::zero(m, psi.n())?;
    for j in combinations(m, psi.n()) {
        let mut acc = S::zero();
        for (i, c) in psi.entries() {
            let minor: Vec<Vec<S>> = j
                .as_slice()
                .iter()
                .map(|&r| i.as_slice().iter().map(|&col| a[r][col].clone()).collect())
                .collect();
            acc = acc + determinant(minor) * c.clone();
        }
        out.add_at(j, acc);
    }
    Ok(out)
}

/// Antisymmetric `K` with `K_ij = ψ_(i,j)` for `i < j`.
pub fn to_antisymmetric_matrix<S: Scalar>(psi: &NVector<S>) -> Result<Vec<Vec<S>>> {
    if psi.n() != 2 {
        return Err(Error::GradeMismatch(format!("expected grade 2, got {}", psi.n())));
    }
    let m = psi.m();
    let mut k = vec![vec![S::zero(); m]; m];
    for (idx, c) in psi.entries() {
        let (i, j) = (idx.as_slice()[0], idx.as_slice()[1]);
        k[i][j] = c.clone();
        k[j][i] = -c.clone();
    }
    Ok(k)
}

/// Inverse of [`to_antisymmetric_matrix`]; `K + Kᵀ` must vanish (to `tol` on binary64).
pub fn from_antisymmetric_matrix<S: Scalar>(k: &[Vec<S>], tol: f64) -> Result<NVector<S>> {
    let m = k.len();
    if k.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    let scale = k
        .iter()
        .flatten()
        .map(|x| x.norm_sqr_f64())
        .fold(0.0, f64::max)
        .sqrt();
    for i in 0..m {
        for j in i..m {
            if !(k[i][j].clone() + k[j][i].clone()).is_negligible(scale, tol) {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let entries = combinations(m, 2).into_iter().map(|idx| {
        let (i, j) = (idx.as_slice()[0], idx.as_slice()[1]);
        (idx, k[i][j].clone())
    });
    NVector::from_entries(m, 2, entries)
}

/// Vectors `ι(ψ, e_J)` over all `(n−1)`-subsets `J`; they span the range of
/// the one-party reduced operator.
fn contraction_rows<S: Scalar>(psi: &NVector<S>) -> Result<Vec<Vec<S>>> {
    let m = psi.m();
    combinations(m, psi.n() - 1)
        .into_iter()
        .map(|j| {
            let x = interior_product(psi, &NVector::basis(m, j)?)?;
            let mut row = vec![S::zero(); m];
            for (idx, c) in x.entries() {
                row[idx.as_slice()[0]] = c.clone();
            }
            Ok(row)
        })
        .filter(|r: &Result<Vec<S>>| r.as_ref().map_or(true, |v| v.iter().any(|c| !c.is_zero())))
        .collect()
}

/// Basis of `sp(ψ)`, the smallest subspace `W` with `ψ ∈ ∧ⁿW`.
/// Orthonormal on binary64, orthogonal on exact backends.
pub fn support<S: Scalar>(psi: &NVector<S>) -> Result<Vec<Vec<S>>> {
    psi.nonzero()?;
    if psi.n() == 0 {
        return Ok(Vec::new());
    }
    let rows = contraction_rows(psi)?;
    Ok(S::orthogonal_row_basis(&rows, crate::ZERO_TOL))
}

/// The `k` dominant directions of the reduced operator (binary64 view).
pub(crate) fn leading_support<S: Scalar>(psi: &NVector<S>, k: usize) -> Result<Vec<Vec<S>>> {
    psi.nonzero()?;
    let rows: Vec<Vec<C64>> = contraction_rows(psi)?
        .iter()
        .map(|r| r.iter().map(Scalar::to_c64).collect())
        .collect();
    svd_leading_rows(&rows, k)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|z| S::from_c64(z).ok_or(Error::NonFinite))
                .collect()
        })
        .collect()
}

/// `e_{i₁} ∧ ⋯` for a contiguous 1-based label range, e.g. `e_{5,…,N+2}`;
/// the empty range gives the scalar `1`.
pub fn slater_range<S: Scalar>(m: usize, first: usize, last: usize) -> Result<NVector<S>> {
    if last < first {
        return Ok(NVector::scalar(m, S::one()));
    }
    let labels: Vec<usize> = (first..=last).collect();
    NVector::slater(m, &labels)
}
