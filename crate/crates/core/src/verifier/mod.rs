//! Checks that a candidate set is an (orthogonal or generalized) FUPB.
//!
//! Verdicts are three-valued. Unextendibility is *proven* only by a
//! certificate, *refuted* only by an explicit decomposable witness in the
//! complement, and otherwise the numerical search can at best report an
//! *inconclusive pass*.

mod certificate;
mod search;

pub use certificate::{certify_dim1, certify_pencil_m4, Certificate, Dim1Certificate, PencilWitness};
pub use search::{search_decomposable, Objective, SearchConfig, SearchResult};

use serde::{Deserialize, Serialize};

use crate::constructions::CandidateSet;
use crate::error::{Error, Result};
use crate::factorization::{factorize, Factorization};
use crate::index::binomial;
use crate::nvector::NVector;
use crate::plucker::plucker_residual;
use crate::scalar::{Scalar, C64};
use crate::subspace::Subspace;

/// Orthogonality claims above this residual are rejected as inconsistent.
pub const CLAIM_TOL: f64 = 1e-6;

fn check_domain(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("need 1 ≤ N ≤ M, got N={n}, M={m}")));
    }
    Ok(())
}

/// Largest dimension of a completely entangled subspace of `∧ᴺCᴹ`:
/// `C(M,N) − N(M−N) − 1`.
pub fn ces_max_dim(n: usize, m: usize) -> Result<usize> {
    check_domain(n, m)?;
    Ok(binomial(m, n) - n * (m - n) - 1)
}

/// `N(M−N) + 1`.
pub fn gfupb_min_cardinality(n: usize, m: usize) -> Result<usize> {
    check_domain(n, m)?;
    Ok(n * (m - n) + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorBounds {
    /// `Σdᵢ − N + 1`, the least cardinality of a generalized UPB.
    pub l: usize,
    /// `Πdᵢ`.
    pub d: usize,
    /// Minimum UPB cardinality; known only for two parties.
    pub f_m: Option<usize>,
}

pub fn tensor_upb_bounds(dims: &[usize]) -> Result<TensorBounds> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Domain(format!("dimensions must be positive, got {dims:?}")));
    }
    Ok(TensorBounds {
        l: dims.iter().sum::<usize>() - dims.len() + 1,
        d: dims.iter().product(),
        f_m: bipartite_min_upb(dims).ok(),
    })
}

/// Minimum UPB cardinality of `C^{d₁} ⊗ C^{d₂}`. Not known beyond two parties.
pub fn bipartite_min_upb(dims: &[usize]) -> Result<usize> {
    let &[d1, d2] = dims else {
        return Err(Error::Domain(format!(
            "minimum UPB size is only tabulated for two parties, got {}",
            dims.len()
        )));
    };
    if d1 == 0 || d2 == 0 {
        return Err(Error::Domain("dimensions must be positive".into()));
    }
    Ok(if d1.min(d2) == 2 {
        d1 * d2
    } else if d1 >= 4 && d2 >= 4 && d1 % 2 == 0 && d2 % 2 == 0 {
        d1 + d2
    } else {
        d1 + d2 - 1
    })
}

/// Largest normalized overlap `|⟨ψᵢ|ψⱼ⟩| / (‖ψᵢ‖‖ψⱼ‖)` over pairs of members.
pub fn check_orthogonality<S: Scalar>(set: &CandidateSet<S>) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::Domain("empty candidate set".into()));
    }
    let norms: Vec<f64> = set.members.iter().map(Factorization::norm).collect();
    let mut worst: f64 = 0.0;
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let ip = set.members[i].gram_inner_product(&set.members[j])?;
            worst = worst.max(ip.norm_sqr_f64().sqrt() / (norms[i] * norms[j]));
        }
    }
    Ok(worst)
}

/// Rank of the expansions: exact elimination on exact backends, singular
/// values above `10⁻¹⁰ σ_max` on binary64.
pub fn check_independence<S: Scalar>(set: &CandidateSet<S>) -> usize {
    let rows: Vec<Vec<S>> = set.expansions().iter().map(NVector::to_dense).collect();
    S::rank(&rows, crate::ZERO_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unextendible {
    Proven,
    Refuted,
    /// Search exhausted with every restart at or above `tol_clear`.
    InconclusivePass,
    /// Search exhausted with a best residual between `tol_found` and `tol_clear`.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub unextendible: Unextendible,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChecks {
    /// `|S| ≥ N(M−N)+1` whenever the complement is nonzero.
    pub min_cardinality_ok: bool,
    /// Complement dimension within the completely-entangled maximum.
    pub ces_dim_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub best_residual: Option<f64>,
    pub restarts_used: usize,
    pub witness: Option<Factorization<C64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub n: usize,
    pub cardinality: usize,
    pub orthogonality_residual: f64,
    pub independence_rank: usize,
    pub member_decomposability_residual: f64,
    pub complement_dim: usize,
    pub bound_checks: BoundChecks,
    pub search: SearchSummary,
    pub verdict: Verdict,
    /// Plücker residual of the certified generator, when a dim-1 certificate applies.
    pub certificate_residual: Option<f64>,
    pub seed: u64,
}

fn to_float_subspace<S: Scalar>(t: &Subspace<S>) -> Result<Subspace<C64>> {
    let rows = t
        .orthogonal_basis()
        .iter()
        .map(|v| v.map_scalar(Scalar::to_c64))
        .collect();
    Subspace::span(t.m(), t.n(), rows)
}

/// Runs the full pipeline: member and claim checks, bounds, the complement,
/// then a certificate or the numerical search.
///
/// Claim violations (orthogonality or independence claimed but not held)
/// are errors, not verdicts.
pub fn verify_candidate<S: Scalar>(set: &CandidateSet<S>, cfg: &SearchConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if set.is_empty() {
        return Err(Error::Domain("empty candidate set".into()));
    }
    let (m, n) = (set.m, set.n);
    check_domain(n, m)?;
    let expansions = set.expansions();
    let mut member_residual: f64 = 0.0;
    for e in &expansions {
        member_residual = member_residual.max(plucker_residual(e)?);
    }
    let orthogonality = check_orthogonality(set)?;
    if set.claims.orthogonal && orthogonality > CLAIM_TOL {
        return Err(Error::ClaimViolation(format!(
            "orthogonality claimed but the largest overlap is {orthogonality:e}"
        )));
    }
    let rank = check_independence(set);
    if set.claims.independent && rank < set.len() {
        return Err(Error::ClaimViolation(format!(
            "independence claimed but {} members have rank {rank}",
            set.len()
        )));
    }
    let span = Subspace::span(m, n, expansions)?;
    let complement = span.complement();
    let complement_dim = binomial(m, n) - rank;
    let bound_checks = BoundChecks {
        min_cardinality_ok: complement_dim == 0 || set.len() >= gfupb_min_cardinality(n, m)?,
        ces_dim_ok: complement_dim <= ces_max_dim(n, m)?,
    };
    let mut report = VerificationReport {
        m,
        n,
        cardinality: set.len(),
        orthogonality_residual: orthogonality,
        independence_rank: rank,
        member_decomposability_residual: member_residual,
        complement_dim,
        bound_checks,
        search: SearchSummary {
            best_residual: None,
            restarts_used: 0,
            witness: None,
        },
        verdict: Verdict {
            unextendible: Unextendible::Inconclusive,
            certificate: Certificate::None,
        },
        certificate_residual: None,
        seed: cfg.seed,
    };
    if complement_dim == 0 || complement.dim() == 0 {
        report.verdict = Verdict {
            unextendible: Unextendible::Proven,
            certificate: Certificate::FullSpan,
        };
        return Ok(report);
    }
    if complement.dim() == 1 {
        match certify_dim1(&complement, cfg.tol_found)? {
            Some(cert) => {
                report.certificate_residual = Some(cert.plucker_residual);
                report.verdict = Verdict {
                    unextendible: Unextendible::Proven,
                    certificate: Certificate::Dim1Plucker,
                };
                return Ok(report);
            }
            None => {
                let g = complement.orthogonal_basis().remove(0).map_scalar(Scalar::to_c64);
                let residual = plucker_residual(&g)?;
                if residual <= cfg.tol_found {
                    let w = factorize(&g, cfg.tol_found.max(1e-8))?;
                    report.search = SearchSummary {
                        best_residual: Some(residual),
                        restarts_used: 0,
                        witness: Some(w),
                    };
                    report.verdict = Verdict {
                        unextendible: Unextendible::Refuted,
                        certificate: Certificate::None,
                    };
                    return Ok(report);
                }
            }
        }
    }
    let t = to_float_subspace(&complement)?;
    if (n, m, t.dim()) == (2, 4, 2) {
        let p = certify_pencil_m4(&t)?;
        report.search = SearchSummary {
            best_residual: Some(p.plucker_residual),
            restarts_used: 0,
            witness: Some(p.factors),
        };
        report.verdict = Verdict {
            unextendible: Unextendible::Refuted,
            certificate: Certificate::PencilM4,
        };
        return Ok(report);
    }
    let r = search_decomposable(&t, cfg)?;
    let unextendible = if r.witness.is_some() {
        Unextendible::Refuted
    } else if r.best_residual >= cfg.tol_clear {
        Unextendible::InconclusivePass
    } else {
        Unextendible::Inconclusive
    };
    report.search = SearchSummary {
        best_residual: Some(r.best_residual),
        restarts_used: r.restarts_used,
        witness: r.witness,
    };
    report.verdict = Verdict {
        unextendible,
        certificate: Certificate::None,
    };
    Ok(report)
}

/// Checks a refutation independently of how it was found: the witness lies
/// in the complement of `span(set)` and is decomposable, both to `tol`.
pub fn check_witness<S: Scalar>(set: &CandidateSet<S>, witness: &Factorization<C64>, tol: f64) -> Result<bool> {
    let w = witness.wedge_expand();
    let rows: Vec<NVector<C64>> = set
        .expansions()
        .iter()
        .map(|v| v.map_scalar(Scalar::to_c64))
        .collect();
    let span = Subspace::span(set.m, set.n, rows)?;
    let inside = span.project(&w)?.norm() / w.norm();
    Ok(inside <= tol && plucker_residual(&w)? <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub members: Vec<Factorization<C64>>,
    /// Whether the greedy loop ended with an exhausted subspace rather than a
    /// failed search.
    pub exhausted: bool,
}

/// Greedy extraction of pairwise orthogonal decomposables from `f`: find one,
/// pass to its orthogonal complement within `f`, repeat.
pub fn extract_orthogonal_decomposables(f: &Subspace<C64>, cfg: &SearchConfig) -> Result<Extraction> {
    cfg.validate()?;
    let mut current = f.clone();
    let mut members = Vec::new();
    let mut round = 0u64;
    while current.dim() > 0 {
        let found = if (current.n(), current.m(), current.dim()) == (2, 4, 2) {
            Some(certify_pencil_m4(&current)?.factors)
        } else {
            let local = SearchConfig {
                seed: cfg.seed.wrapping_add(round),
                ..*cfg
            };
            search_decomposable(&current, &local)?.witness
        };
        let Some(w) = found else {
            return Ok(Extraction {
                members,
                exhausted: false,
            });
        };
        let proj = current.project(&w.wedge_expand())?;
        current = current.orthogonal_to(&proj)?;
        members.push(w);
        round += 1;
    }
    Ok(Extraction {
        members,
        exhausted: true,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Intersection {
    /// Orthonormal rows spanning `F`.
    pub basis: Vec<Vec<C64>>,
    /// `sin` of the smallest principal angle between `F` and each `Sᵢ`.
    pub angles: Vec<f64>,
}

/// Sine of the smallest principal angle between two row spaces.
fn smallest_angle(f: &[Vec<C64>], s: &[Vec<C64>]) -> f64 {
    let mut s_orth = s.to_vec();
    crate::linalg::orthonormalize_rows(&mut s_orth);
    let residuals: Vec<Vec<C64>> = f
        .iter()
        .map(|v| crate::linalg::orthogonal_residual(&s_orth, v))
        .collect();
    crate::linalg::singular_values(&residuals)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
        .min(1.0)
}

/// An `N`-dimensional `F ⊂ Cᴹ` meeting each `Sᵢ` (given by basis rows,
/// `dim Sᵢ = M − N`) nontrivially, for at most `N(M−N)` subspaces.
///
/// `Sᵢ^⊥` gives a decomposable `ψᵢ`, and `F` is the support of a decomposable
/// vector orthogonal to every `ψᵢ`.
pub fn intersecting_subspace(
    m: usize,
    n: usize,
    subspaces: &[Vec<Vec<C64>>],
    cfg: &SearchConfig,
) -> Result<Intersection> {
    check_domain(n, m)?;
    if n == m {
        return Err(Error::Domain("need N < M".into()));
    }
    if subspaces.len() > n * (m - n) {
        return Err(Error::Domain(format!(
            "{} subspaces exceed the bound N(M−N) = {}",
            subspaces.len(),
            n * (m - n)
        )));
    }
    let mut psis = Vec::with_capacity(subspaces.len());
    for s in subspaces {
        if s.iter().any(|r| r.len() != m) || crate::linalg::svd_rank(s, crate::ZERO_TOL) != m - n {
            return Err(Error::DimensionMismatch(format!(
                "each subspace must have dimension {} in C^{m}",
                m - n
            )));
        }
        let perp = crate::linalg::projector_complement(&crate::linalg::svd_row_basis(s, crate::ZERO_TOL), m);
        psis.push(Factorization::new(m, perp)?.wedge_expand());
    }
    let t = Subspace::span(m, n, psis)?.complement();
    let r = search_decomposable(&t, cfg)?;
    let Some(w) = r.witness else {
        return Err(Error::SearchFailed(format!(
            "no decomposable vector found; best residual {:e}",
            r.best_residual
        )));
    };
    let basis = w.into_factors();
    let angles = subspaces.iter().map(|s| smallest_angle(&basis, s)).collect();
    Ok(Intersection { basis, angles })
}
