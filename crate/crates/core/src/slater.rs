//! Canonical form of 2-vectors under the unitary diagonal action:
//! every `ψ ∈ ∧²Cᵐ` is `∧²U`-equivalent to `Σ cᵢ e_{2i−1,2i}` with
//! `c₁ ≥ ⋯ ≥ c_k > 0` uniquely determined.
//!
//! The coefficients are the square roots of the (doubly degenerate) eigenvalues
//! of `K K†`, `K` the antisymmetric matrix of `ψ`. The unitary is assembled by
//! deflation: for a unit eigenvector `w₁` of `K K†` with eigenvalue `c²`,
//! `w₂ = −K w̄₁ / c` is a unit vector orthogonal to `w₁` and
//! `K − c (w₁w₂ᵀ − w₂w₁ᵀ)` annihilates `w̄₁, w̄₂`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exterior::to_antisymmetric_matrix;
use crate::linalg::projector_complement;
use crate::nvector::NVector;
use crate::scalar::C64;

#[derive(Clone, Debug)]
pub struct SlaterDecomposition {
    /// `c₁ ≥ c₂ ≥ ⋯ > 0`.
    pub coeffs: Vec<f64>,
    /// Rows of the unitary `u` with `∧²u ψ = Σ cᵢ e_{2i−1,2i}`.
    pub unitary: Vec<Vec<C64>>,
}

/// Slater decomposition of a grade-2 vector; pairs with `c ≤ tol · ‖ψ‖`
/// are treated as zero.
pub fn slater_decomposition(psi: &NVector<C64>, tol: f64) -> Result<SlaterDecomposition> {
    let k_rows = to_antisymmetric_matrix(psi)?;
    let m = psi.m();
    let mut k = DMatrix::from_fn(m, m, |i, j| k_rows[i][j]);
    let scale = psi.norm();
    let mut coeffs = Vec::new();
    let mut columns: Vec<Vec<C64>> = Vec::new();
    for _ in 0..m / 2 {
        let h = &k * k.adjoint();
        let eig = h.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let c2 = eig.eigenvalues[top];
        if !(c2 > 0.0) || c2.sqrt() <= tol * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        let c = c2.sqrt();
        let w1 = eig.eigenvectors.column(top).into_owned();
        let w2 = -(&k * w1.map(|z| z.conj())) / C64::new(c, 0.0);
        let pair = &w1 * w2.transpose() - &w2 * w1.transpose();
        k -= pair * C64::new(c, 0.0);
        coeffs.push(c);
        columns.push(w1.iter().copied().collect());
        columns.push(w2.iter().copied().collect());
    }
    // re-orthonormalize the pair vectors against accumulated rounding
    let mut cols = columns;
    if !crate::linalg::orthonormalize_rows(&mut cols) {
        return Err(Error::Domain("degenerate Slater frame".into()));
    }
    let rest = projector_complement(&cols, m);
    cols.extend(rest);
    // u = W†: row r of u is conj(column r of W)
    let unitary = cols
        .into_iter()
        .map(|c| c.into_iter().map(|z| z.conj()).collect())
        .collect();
    Ok(SlaterDecomposition { coeffs, unitary })
}

/// `Σ cᵢ e_{2i−1,2i}` in `∧²Cᵐ`.
pub fn canonical_form(m: usize, coeffs: &[f64]) -> Result<NVector<C64>> {
    if 2 * coeffs.len() > m {
        return Err(Error::Domain(format!("{} pairs do not fit in dimension {m}", coeffs.len())));
    }
    let mut out = NVector::zero(m, 2)?;
    for (i, &c) in coeffs.iter().enumerate() {
        out = out.add(&NVector::slater(m, &[2 * i + 1, 2 * i + 2])?.scale(&C64::new(c, 0.0)))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::exterior_power_apply;

    fn check(psi: &NVector<C64>, expected: &[f64]) {
        let d = slater_decomposition(psi, 1e-12).unwrap();
        assert_eq!(d.coeffs.len(), expected.len());
        for (a, b) in d.coeffs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10, "{:?} vs {expected:?}", d.coeffs);
        }
        let img = exterior_power_apply(&d.unitary, psi).unwrap();
        let canon = canonical_form(psi.m(), &d.coeffs).unwrap();
        assert!(img.sub(&canon).unwrap().norm() < 1e-10);
    }

    #[test]
    fn single_pair() {
        check(&NVector::slater(4, &[1, 2]).unwrap(), &[1.0]);
    }

    #[test]
    fn already_canonical() {
        let psi = canonical_form(4, &[1.0, 1.0]).unwrap();
        check(&psi, &[1.0, 1.0]);
    }

    #[test]
    fn permuted_pairs_are_reordered() {
        let psi = NVector::slater(5, &[2, 5])
            .unwrap()
            .scale(&C64::new(0.0, 2.0))
            .add(&NVector::slater(5, &[1, 3]).unwrap().scale(&C64::new(-3.0, 0.0)))
            .unwrap();
        check(&psi, &[3.0, 2.0]);
    }

    #[test]
    fn rejects_other_grades() {
        assert!(slater_decomposition(&NVector::slater(4, &[1, 2, 3]).unwrap(), 1e-12).is_err());
    }
}
