//! Concrete (generalized) fermionic UPBs and related subspaces.

mod c4;
mod hyperplane;
mod tensor;
mod vandermonde;

pub use c4::{
    fupb_c4, fupb_c4_unchecked, real_canonical_members, real_extension_witness,
    sample_real_canonical_params, solve_c4_double_root, C4FupbParams, RealCanonicalParams,
    PUBLISHED_C, PUBLISHED_D,
};
pub use hyperplane::{
    codim3_not_spanned, hyperplane_fupb, hyperplane_gfupb_spanning, paired_state, Codim3,
};
pub use tensor::{
    block_unitary_upb, compose_3_3_pentagon, compose_bipartite_fupb, pentagon_upb, ProductPair,
    ProductTuple,
};
pub use vandermonde::{
    delta_polynomial, g_polynomial, vandermonde_constant, vandermonde_gfupb, DeltaPolynomial,
};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exterior::hodge_dual;
use crate::factorization::{factorize, Factorization};
use crate::index::combinations;
use crate::nvector::NVector;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Trivial,
    Gfupb,
    Fupb,
    UpbEmbedded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub orthogonal: bool,
    pub independent: bool,
}

/// Decomposable vectors claimed to form a (generalized) FUPB.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet<S> {
    pub m: usize,
    pub n: usize,
    pub kind: Kind,
    pub claims: Claims,
    pub members: Vec<Factorization<S>>,
    /// Free-form details echoed in JSON output (parameters, offsets).
    pub metadata: Map<String, Value>,
}

impl<S: Scalar> CandidateSet<S> {
    pub fn new(
        m: usize,
        n: usize,
        kind: Kind,
        claims: Claims,
        members: Vec<Factorization<S>>,
    ) -> Result<Self> {
        for (i, f) in members.iter().enumerate() {
            if f.m() != m || f.n() != n {
                return Err(Error::GradeMismatch(format!(
                    "member {i} lives in ∧^{}C^{}, expected ∧^{n}C^{m}",
                    f.n(),
                    f.m()
                )));
            }
            if f.wedge_expand().is_zero() {
                return Err(Error::Domain(format!("member {i} expands to zero")));
            }
        }
        Ok(Self {
            m,
            n,
            kind,
            claims,
            members,
            metadata: Map::new(),
        })
    }

    pub fn with_metadata(mut self, key: &str, value: Value) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn expansions(&self) -> Vec<NVector<S>> {
        self.members.iter().map(Factorization::wedge_expand).collect()
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> CandidateSet<T> {
        CandidateSet {
            m: self.m,
            n: self.n,
            kind: self.kind,
            claims: self.claims,
            members: self.members.iter().map(|x| x.map_scalar(f)).collect(),
            metadata: self.metadata.clone(),
        }
    }
}

/// All `C(m, n)` basis Slater determinants: the trivial FUPB.
pub fn slater_basis<S: Scalar>(n: usize, m: usize) -> Result<CandidateSet<S>> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("need 1 ≤ N ≤ M, got N={n}, M={m}")));
    }
    let members = combinations(m, n)
        .into_iter()
        .map(|idx| Factorization::slater(m, &idx.one_based()))
        .collect::<Result<Vec<_>>>()?;
    CandidateSet::new(
        m,
        n,
        Kind::Trivial,
        Claims {
            orthogonal: true,
            independent: true,
        },
        members,
    )
}

/// Grade-2 set in `∧²Cᵐ` re-embedded in `∧²C^{m+1}` plus `|m+1⟩ ∧ |i⟩`, `i = 1..m`.
pub fn pad_fupb<S: Scalar>(set: &CandidateSet<S>) -> Result<CandidateSet<S>> {
    if set.n != 2 {
        return Err(Error::GradeMismatch(format!("padding needs grade 2, got {}", set.n)));
    }
    let m = set.m + 1;
    let mut members = set
        .members
        .iter()
        .map(|f| f.embed(m, 0))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..m {
        members.push(Factorization::slater(m, &[m, i])?);
    }
    let mut out = CandidateSet::new(m, 2, set.kind, set.claims, members)?;
    out.metadata = set.metadata.clone();
    Ok(out.with_metadata("padded_from", Value::from(set.m)))
}

/// Hodge duals of the members, refactored into grade `m − n`.
pub fn dual_fupb<S: Scalar>(set: &CandidateSet<S>) -> Result<CandidateSet<S>> {
    let members = set
        .members
        .iter()
        .map(|f| factorize(&hodge_dual(&f.wedge_expand()), crate::ZERO_TOL * 100.0))
        .collect::<Result<Vec<_>>>()?;
    let mut out = CandidateSet::new(set.m, set.m - set.n, set.kind, set.claims, members)?;
    out.metadata = set.metadata.clone();
    Ok(out.with_metadata("dual_of_grade", Value::from(set.n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CQ;

    #[test]
    fn slater_basis_cardinalities() {
        let s = slater_basis::<CQ>(2, 3).unwrap();
        assert_eq!(s.len(), 3);
        let labels: Vec<Vec<usize>> = s
            .expansions()
            .iter()
            .map(|v| v.entries().next().unwrap().0.one_based())
            .collect();
        assert_eq!(labels, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(slater_basis::<CQ>(2, 4).unwrap().len(), 6);
        assert!(slater_basis::<CQ>(5, 4).is_err());
    }

    #[test]
    fn pad_adds_m_members() {
        let s = slater_basis::<CQ>(2, 4).unwrap();
        let p = pad_fupb(&s).unwrap();
        assert_eq!((p.m, p.len()), (5, 10));
        let p3 = slater_basis::<CQ>(3, 4).unwrap();
        assert!(pad_fupb(&p3).is_err());
    }

    #[test]
    fn dual_of_trivial_is_trivial_span() {
        let s = slater_basis::<CQ>(2, 4).unwrap();
        let d = dual_fupb(&s).unwrap();
        assert_eq!((d.m, d.n, d.len()), (4, 2, 6));
        let span = crate::Subspace::span(4, 2, d.expansions()).unwrap();
        assert_eq!(span.dim(), 6);
    }

    #[test]
    fn members_must_share_the_space() {
        let a = Factorization::<CQ>::slater(4, &[1, 2]).unwrap();
        let b = Factorization::<CQ>::slater(5, &[1, 2]).unwrap();
        let claims = Claims {
            orthogonal: true,
            independent: true,
        };
        assert!(CandidateSet::new(4, 2, Kind::Fupb, claims, vec![a.clone(), b]).is_err());
        let dep = Factorization::<CQ>::new(4, vec![vec![CQ::from_i64(1); 4]; 2]).unwrap();
        assert!(CandidateSet::new(4, 2, Kind::Fupb, claims, vec![a, dep]).is_err());
    }
}
