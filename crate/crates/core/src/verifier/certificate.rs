//! Exact and closed-form certificates for small complements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{factorize, Factorization};
use crate::index::MultiIndex;
use crate::nvector::NVector;
use crate::plucker::{first_nonzero_relation, plucker_residual};
use crate::scalar::{Scalar, C64};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    None,
    /// The complement is `{0}`.
    FullSpan,
    /// The complement is a line whose generator violates a Plücker relation.
    Dim1Plucker,
    /// Closed-form decomposable element of a 2-dimensional complement in `∧²C⁴`.
    PencilM4,
}

/// Evidence that the generator of a 1-dimensional subspace is entangled.
#[derive(Clone, Debug, PartialEq)]
pub struct Dim1Certificate<S> {
    pub generator: NVector<S>,
    /// The nonzero relation, `(J, J')` with its value (exact backends only).
    pub relation: Option<(MultiIndex, MultiIndex, S)>,
    pub plucker_residual: f64,
}

/// Certifies that a line contains no nonzero decomposable vector.
///
/// Exact backends certify iff some Plücker relation is nonzero. On binary64 a
/// certificate is issued only when the residual exceeds `10³ · tol_found`.
pub fn certify_dim1<S: Scalar>(t: &Subspace<S>, tol_found: f64) -> Result<Option<Dim1Certificate<S>>> {
    if t.dim() != 1 {
        return Err(Error::Domain(format!("expected a line, got dimension {}", t.dim())));
    }
    let generator = t.orthogonal_basis().remove(0);
    let residual = plucker_residual(&generator)?;
    if S::EXACT {
        return Ok(first_nonzero_relation(&generator)?.map(|r| Dim1Certificate {
            relation: Some((r.j, r.j_prime, r.value)),
            generator: generator.clone(),
            plucker_residual: residual,
        }));
    }
    Ok((residual > 1e3 * tol_found).then_some(Dim1Certificate {
        generator,
        relation: None,
        plucker_residual: residual,
    }))
}

/// `P₁₂P₃₄ − P₁₃P₂₄ + P₁₄P₂₃`, so that `ψ ∧ ψ = 2 Q(ψ) e₁₂₃₄`.
fn klein(psi: &NVector<C64>) -> C64 {
    let p = |a: usize, b: usize| psi.get(&MultiIndex::from_sorted_unchecked(vec![a, b]));
    p(0, 1) * p(2, 3) - p(0, 2) * p(1, 3) + p(0, 3) * p(1, 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilWitness {
    /// `None` stands for the point at infinity, i.e. `ψ_B` itself.
    pub lambda: Option<C64>,
    pub witness: NVector<C64>,
    pub factors: Factorization<C64>,
    pub plucker_residual: f64,
}

/// Decomposable element of a 2-dimensional subspace of `∧²C⁴`: a root of
/// `λ ↦ Q(ψ_A + λψ_B)`, where `Q` is the Klein quadric.
pub fn certify_pencil_m4(t: &Subspace<C64>) -> Result<PencilWitness> {
    if (t.n(), t.m(), t.dim()) != (2, 4, 2) {
        return Err(Error::Domain(format!(
            "pencil certificate needs a 2-dimensional subspace of ∧²C⁴, got dimension {} in ∧^{}C^{}",
            t.dim(),
            t.n(),
            t.m()
        )));
    }
    let gens = t.generators();
    let (a, b) = if gens.len() == 2 {
        (gens[0].clone(), gens[1].clone())
    } else {
        let mut o = t.orthogonal_basis();
        let b = o.pop().expect("two basis vectors");
        (o.pop().expect("two basis vectors"), b)
    };
    let (a, b) = (
        a.scale(&C64::new(1.0 / a.norm(), 0.0)),
        b.scale(&C64::new(1.0 / b.norm(), 0.0)),
    );
    let qa = klein(&a);
    let qb = klein(&b);
    let lin = klein(&a.add(&b)?) - qa - qb;
    const EPS: f64 = 1e-14;
    let lambda = if qa.norm() <= EPS {
        Some(C64::new(0.0, 0.0))
    } else if qb.norm() <= EPS {
        None
    } else {
        // roots of qb λ² + lin λ + qa; the smaller one in modulus, computed stably
        let disc = (lin * lin - qb * qa * 4.0).sqrt();
        let q = if (lin.conj() * disc).re >= 0.0 {
            -(lin + disc) / 2.0
        } else {
            -(lin - disc) / 2.0
        };
        let r1 = q / qb;
        let r2 = if q.norm() > 0.0 { qa / q } else { r1 };
        Some(if r1.norm() <= r2.norm() { r1 } else { r2 })
    };
    let witness = match lambda {
        Some(l) => a.axpy(&l, &b)?,
        None => b,
    };
    let residual = plucker_residual(&witness)?;
    let factors = factorize(&witness, 1e-8)?;
    Ok(PencilWitness {
        lambda,
        witness,
        factors,
        plucker_residual: residual,
    })
}
