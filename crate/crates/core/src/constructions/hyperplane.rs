//! Hyperplane FUPBs, hyperplanes spanned by decomposables, and a codimension-3
//! subspace that is not.

use super::{fupb_c4, CandidateSet, C4FupbParams, Claims, Kind};
use crate::error::{Error, Result};
use crate::factorization::{unit, Factorization};
use crate::index::{combinations, MultiIndex};
use crate::nvector::NVector;
use crate::scalar::{Scalar, C64};
use crate::subspace::Subspace;

/// Labels `5, …, N+2` (0-based `4..N+2`) of the tail `e_{5,…,N+2}`.
fn tail(n: usize) -> Vec<usize> {
    (4..n + 2).collect()
}

fn check_hyperplane_domain(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < n + 2 {
        return Err(Error::Domain(format!("need N ≥ 2 and M ≥ N+2, got N={n}, M={m}")));
    }
    Ok(())
}

/// FUPB of cardinality `C(M,N) − 1`: every basis Slater determinant except
/// the six `e_{ij} ∧ e_{5,…,N+2}` with `i < j ≤ 4`, plus the members of the
/// `∧²C⁴` FUPB wedged with the same tail.
pub fn hyperplane_fupb(n: usize, m: usize, params: &C4FupbParams) -> Result<CandidateSet<C64>> {
    check_hyperplane_domain(n, m)?;
    let t = tail(n);
    let block = fupb_c4(params)?;
    let mut members = Vec::new();
    for idx in combinations(m, n) {
        let s = idx.as_slice();
        let replaced = t.iter().all(|i| s.contains(i)) && s.iter().filter(|&&i| i < 4).count() == 2;
        if !replaced {
            members.push(Factorization::slater(m, &idx.one_based())?);
        }
    }
    for f in &block.members {
        members.push(f.embed(m, 0)?.extend(t.iter().map(|&i| unit(m, i)))?);
    }
    let mut out = CandidateSet::new(
        m,
        n,
        Kind::Fupb,
        Claims {
            orthogonal: true,
            independent: true,
        },
        members,
    )?;
    out.metadata = block.metadata;
    Ok(out)
}

/// `Σ_{i=1}^{k} e_{2i−1,2i}`.
pub fn paired_state<S: Scalar>(m: usize, k: usize) -> Result<NVector<S>> {
    check_pairs(m, k)?;
    let mut out = NVector::zero(m, 2)?;
    for i in 1..=k {
        out = out.add(&NVector::slater(m, &[2 * i - 1, 2 * i])?)?;
    }
    Ok(out)
}

fn check_pairs(m: usize, k: usize) -> Result<()> {
    if k == 0 || 2 * k > m {
        return Err(Error::Domain(format!("need 1 ≤ k ≤ M/2, got M={m}, k={k}")));
    }
    Ok(())
}

/// Decomposable 2-vectors spanning the hyperplane orthogonal to
/// `Σ_{i≤k} e_{2i−1,2i}`: the basis vectors `e_{ij}` other than the `k`
/// pairs, and `(Σ_l ω^{j(l−1)}|2l−1⟩) ∧ (Σ_l |2l⟩)` for `j = 1..k−1`,
/// `ω = e^{2πi/k}`. The backend must represent `k`-th roots of unity.
pub fn hyperplane_gfupb_spanning<S: Scalar>(m: usize, k: usize) -> Result<Vec<Factorization<S>>> {
    check_pairs(m, k)?;
    let mut out = Vec::new();
    for idx in combinations(m, 2) {
        let s = idx.as_slice();
        let is_pair = s[0] % 2 == 0 && s[1] == s[0] + 1 && s[1] < 2 * k;
        if !is_pair {
            out.push(Factorization::slater(m, &idx.one_based())?);
        }
    }
    let mut evens = vec![S::zero(); m];
    for l in 0..k {
        evens[2 * l + 1] = S::one();
    }
    for j in 1..k {
        let mut odds = vec![S::zero(); m];
        for l in 0..k {
            odds[2 * l] = S::root_of_unity(k, (j * l) % k).ok_or_else(|| {
                Error::Domain(format!("backend has no primitive {k}-th root of unity"))
            })?;
        }
        out.push(Factorization::new(m, vec![odds, evens.clone()])?);
    }
    Ok(out)
}

/// Codimension-3 subspace `L = span(L₀, ψ)` not spanned by decomposables,
/// with `φ = e_{5,…,N+2}` and `ψ = (e₁₂ + e₃₄) ∧ φ`.
#[derive(Clone, Debug)]
pub struct Codim3<S> {
    pub l: Subspace<S>,
    /// Spanned by the basis vectors except `e_{ij} ∧ φ`, `(i,j) ∈ {12, 23, 24, 34}`.
    pub l0: Subspace<S>,
    pub phi: NVector<S>,
    pub psi: NVector<S>,
}

pub fn codim3_not_spanned<S: Scalar>(n: usize, m: usize) -> Result<Codim3<S>> {
    check_hyperplane_domain(n, m)?;
    let t = tail(n);
    let excluded: Vec<MultiIndex> = [(0, 1), (1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| {
            let mut v = vec![i, j];
            v.extend(&t);
            MultiIndex::new(v, m)
        })
        .collect::<Result<_>>()?;
    let l0_gens = combinations(m, n)
        .into_iter()
        .filter(|idx| !excluded.contains(idx))
        .map(|idx| NVector::basis(m, idx))
        .collect::<Result<Vec<_>>>()?;
    let phi = NVector::basis(m, MultiIndex::new(t.clone(), m)?)?;
    let pair = NVector::slater(m, &[1, 2])?.add(&NVector::slater(m, &[3, 4])?)?;
    let psi = crate::exterior::wedge_product(&pair, &phi)?;
    let mut l_gens = l0_gens.clone();
    l_gens.push(psi.clone());
    Ok(Codim3 {
        l: Subspace::span(m, n, l_gens)?,
        l0: Subspace::span(m, n, l0_gens)?,
        phi,
        psi,
    })
}
