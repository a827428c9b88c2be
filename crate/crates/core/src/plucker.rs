//! Plücker relations: the quadrics cutting out decomposable N-vectors.
//!
//! For an `(n−1)`-subset `J` and an `(n+1)`-subset `J'` the relation reads
//! `Σ_t (−1)^t P_{J, j'_t} · P_{J' \ j'_t} = 0`, with `P` extended
//! antisymmetrically to unsorted index sequences. The full (redundant) family
//! over all such pairs is used.

use crate::error::Result;
use crate::index::{combinations, sort_with_sign, MultiIndex};
use crate::nvector::NVector;
use crate::scalar::Scalar;

/// Coordinate of `psi` at an arbitrary index sequence (zero if an index repeats).
pub fn coordinate<S: Scalar>(psi: &NVector<S>, seq: &[usize]) -> S {
    match sort_with_sign(seq) {
        Some((idx, s)) => {
            let c = psi.get(&idx);
            if s < 0 {
                -c
            } else {
                c
            }
        }
        None => S::zero(),
    }
}

/// One relation of the family, evaluated at some vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerRelation<S> {
    pub j: MultiIndex,
    pub j_prime: MultiIndex,
    pub value: S,
}

/// Value of the relation indexed by `(j, j_prime)`.
pub fn relation_value<S: Scalar>(psi: &NVector<S>, j: &MultiIndex, j_prime: &MultiIndex) -> S {
    let jp = j_prime.as_slice();
    let mut acc = S::zero();
    for t in 0..jp.len() {
        let mut left: Vec<usize> = j.as_slice().to_vec();
        left.push(jp[t]);
        let a = coordinate(psi, &left);
        if a.is_zero() {
            continue;
        }
        let right: Vec<usize> = jp
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != t)
            .map(|(_, &x)| x)
            .collect();
        let b = coordinate(psi, &right);
        // (−1)^t with t counted from 1
        let term = a * b;
        acc = if t % 2 == 0 { acc - term } else { acc + term };
    }
    acc
}

/// All `(J, J')` index pairs of the family for `∧ⁿCᵐ`.
pub fn relation_family(m: usize, n: usize) -> Vec<(MultiIndex, MultiIndex)> {
    if n == 0 || n >= m {
        return Vec::new();
    }
    let js = combinations(m, n - 1);
    let jps = combinations(m, n + 1);
    js.iter()
        .flat_map(|j| jps.iter().map(move |jp| (j.clone(), jp.clone())))
        .collect()
}

pub fn relation_values<S: Scalar>(psi: &NVector<S>) -> Vec<PluckerRelation<S>> {
    relation_family(psi.m(), psi.n())
        .into_iter()
        .map(|(j, jp)| {
            let value = relation_value(psi, &j, &jp);
            PluckerRelation {
                j,
                j_prime: jp,
                value,
            }
        })
        .collect()
}

/// `√(Σ |relation|²) / ‖ψ‖²`; zero iff `psi` is decomposable.
pub fn plucker_residual<S: Scalar>(psi: &NVector<S>) -> Result<f64> {
    psi.nonzero()?;
    let sum: f64 = relation_values(psi)
        .iter()
        .map(|r| r.value.norm_sqr_f64())
        .sum();
    Ok(sum.sqrt() / psi.norm_sqr_f64())
}

/// First relation that does not vanish exactly, if any. On exact backends
/// `None` certifies decomposability and `Some` certifies entanglement.
pub fn first_nonzero_relation<S: Scalar>(psi: &NVector<S>) -> Result<Option<PluckerRelation<S>>> {
    psi.nonzero()?;
    Ok(relation_family(psi.m(), psi.n()).into_iter().find_map(|(j, jp)| {
        let value = relation_value(psi, &j, &jp);
        (!value.is_zero()).then_some(PluckerRelation {
            j,
            j_prime: jp,
            value,
        })
    }))
}

/// Exact decomposability on exact backends; residual `≤ tol` on binary64.
pub fn is_decomposable<S: Scalar>(psi: &NVector<S>, tol: f64) -> Result<bool> {
    if S::EXACT {
        Ok(first_nonzero_relation(psi)?.is_none())
    } else {
        Ok(plucker_residual(psi)? <= tol)
    }
}
