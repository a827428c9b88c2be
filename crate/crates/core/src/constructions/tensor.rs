//! Product bases of tensor spaces and their embedding into `∧²`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::Value;

use super::{slater_basis, CandidateSet, Claims, Kind};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::linalg::{dot, orthonormalize_rows};
use crate::scalar::C64;

/// A product vector `x ⊗ y` of a bipartite space.
pub type ProductPair = (Vec<C64>, Vec<C64>);

/// A product vector `x₁ ⊗ ⋯ ⊗ x_N`, one factor per party.
pub type ProductTuple = Vec<Vec<C64>>;

/// The pentagon UPB of `C³ ⊗ C³`: pairs `(v_j, v_{2j mod 5})` with the apex
/// height chosen so that `⟨v_j|v_{j±2}⟩ = 0`.
pub fn pentagon_upb() -> Vec<ProductPair> {
    // cos(4π/5) + h² = 0
    let h = 0.5 * (1.0 + 5f64.sqrt()).sqrt();
    let norm = (1.0 + h * h).sqrt();
    let v: Vec<Vec<C64>> = (0..5)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / 5.0;
            [a.cos(), a.sin(), h]
                .iter()
                .map(|&x| C64::new(x / norm, 0.0))
                .collect()
        })
        .collect();
    (0..5).map(|j| (v[j].clone(), v[(2 * j) % 5].clone())).collect()
}

fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<C64>> {
    loop {
        let mut rows: Vec<Vec<C64>> = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                    .collect()
            })
            .collect();
        if orthonormalize_rows(&mut rows) {
            return rows;
        }
    }
}

fn pairwise_distinct(columns: &[Vec<C64>]) -> bool {
    for i in 0..columns.len() {
        for j in i + 1..columns.len() {
            if dot(&columns[i], &columns[j]).norm() > 1.0 - 1e-8 {
                return false;
            }
        }
    }
    true
}

/// Full orthonormal product basis of `C^{d₁} ⊗ ⋯ ⊗ C^{d_N}` built from random
/// unitary blocks: the party-`k` factor of `|i₁…i_N⟩` is column `i_k` of the
/// block indexed by `(i₁, …, i_{k−1})`. Columns of each `A_k` are pairwise
/// non-parallel, so the basis is not equivalent to the computational one.
pub fn block_unitary_upb(dims: &[usize], seed: u64) -> Result<Vec<ProductTuple>> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Domain(format!("dimensions must be positive, got {dims:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // blocks[k][prefix] holds the columns of one unitary block of A_k
    let mut blocks: Vec<Vec<Vec<Vec<C64>>>> = Vec::with_capacity(dims.len());
    let mut prefixes = 1usize;
    for &d in dims {
        let all = loop {
            let cand: Vec<Vec<Vec<C64>>> =
                (0..prefixes).map(|_| random_unitary(&mut rng, d)).collect();
            let columns: Vec<Vec<C64>> = cand.iter().flatten().cloned().collect();
            if d == 1 || pairwise_distinct(&columns) {
                break cand;
            }
        };
        blocks.push(all);
        prefixes *= d;
    }
    let total = prefixes;
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        // mixed-radix digits i₁…i_N, first party most significant
        let mut digits = vec![0; dims.len()];
        let mut r = flat;
        for k in (0..dims.len()).rev() {
            digits[k] = r % dims[k];
            r /= dims[k];
        }
        let mut prefix = 0;
        let mut tuple = Vec::with_capacity(dims.len());
        for (k, &i) in digits.iter().enumerate() {
            tuple.push(blocks[k][prefix][i].clone());
            prefix = prefix * dims[k] + i;
        }
        out.push(tuple);
    }
    Ok(out)
}

fn pad(v: &[C64], m: usize, offset: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); m];
    out[offset..offset + v.len()].copy_from_slice(v);
    out
}

/// Union of per-block FUPBs and embedded bipartite UPBs in `∧²(⊕ᵢ C^{dᵢ})`.
///
/// Block `i` occupies indices `offset_i + 1 ..= offset_i + d_i`, offsets being
/// prefix sums of `dims`. `x[i] = None` selects the trivial FUPB, allowed
/// only for blocks of dimension at most 3. `y` maps every 0-based block pair
/// `(j, k)`, `j < k`, to a UPB of `C^{d_j} ⊗ C^{d_k}`; a product pair `(u, v)`
/// becomes `u ∧ v`.
pub fn compose_bipartite_fupb(
    dims: &[usize],
    x: Vec<Option<CandidateSet<C64>>>,
    y: &BTreeMap<(usize, usize), Vec<ProductPair>>,
) -> Result<CandidateSet<C64>> {
    if x.len() != dims.len() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "{} block sets for {} blocks {dims:?}",
            x.len(),
            dims.len()
        )));
    }
    let m: usize = dims.iter().sum();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut members = Vec::new();
    for (i, xi) in x.into_iter().enumerate() {
        let d = dims[i];
        let set = match xi {
            Some(s) => {
                if s.m != d || s.n != 2 {
                    return Err(Error::DimensionMismatch(format!(
                        "block {i} set lives in ∧^{}C^{}, expected ∧^2C^{d}",
                        s.n, s.m
                    )));
                }
                Some(s)
            }
            None if d == 1 => None,
            None if d <= 3 => Some(slater_basis(2, d)?),
            None => {
                return Err(Error::Domain(format!(
                    "block {i} of dimension {d} needs an explicit FUPB"
                )))
            }
        };
        for f in set.iter().flat_map(|s| &s.members) {
            members.push(f.embed(m, offsets[i])?);
        }
    }
    for j in 0..dims.len() {
        for k in j + 1..dims.len() {
            let pairs = y.get(&(j, k)).ok_or_else(|| {
                Error::Domain(format!("missing UPB for block pair ({j}, {k})"))
            })?;
            for (u, v) in pairs {
                if u.len() != dims[j] || v.len() != dims[k] {
                    return Err(Error::DimensionMismatch(format!(
                        "product pair of shape {}×{} for blocks {}×{}",
                        u.len(),
                        v.len(),
                        dims[j],
                        dims[k]
                    )));
                }
                members.push(Factorization::new(
                    m,
                    vec![pad(u, m, offsets[j]), pad(v, m, offsets[k])],
                )?);
            }
        }
    }
    Ok(CandidateSet::new(
        m,
        2,
        Kind::Fupb,
        Claims {
            orthogonal: true,
            independent: true,
        },
        members,
    )?
    .with_metadata(
        "block_offsets",
        Value::from(offsets.iter().map(|o| o + 1).collect::<Vec<_>>()),
    ))
}

/// Two trivial FUPBs of `∧²C³` and the pentagon UPB: eleven members in `∧²C⁶`.
pub fn compose_3_3_pentagon() -> Result<CandidateSet<C64>> {
    let mut y = BTreeMap::new();
    y.insert((0, 1), pentagon_upb());
    compose_bipartite_fupb(&[3, 3], vec![None, None], &y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_overlap(a: &[Vec<C64>], b: &[Vec<C64>]) -> C64 {
        a.iter().zip(b).map(|(x, y)| dot(x, y)).product()
    }

    #[test]
    fn pentagon_is_orthogonal() {
        let p = pentagon_upb();
        assert_eq!(p.len(), 5);
        for i in 0..5 {
            for j in i + 1..5 {
                let a = [p[i].0.clone(), p[i].1.clone()];
                let b = [p[j].0.clone(), p[j].1.clone()];
                assert!(product_overlap(&a, &b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn block_unitary_is_orthonormal() {
        for dims in [vec![2, 2], vec![3, 3], vec![2, 3, 2]] {
            let basis = block_unitary_upb(&dims, 11).unwrap();
            assert_eq!(basis.len(), dims.iter().product::<usize>());
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((product_overlap(a, b) - expected).norm() < 1e-10);
                }
            }
        }
        assert!(block_unitary_upb(&[2, 0], 0).is_err());
    }

    #[test]
    fn composition_counts() {
        let s = compose_3_3_pentagon().unwrap();
        assert_eq!((s.m, s.n, s.len()), (6, 2, 11));
        let mut y = BTreeMap::new();
        y.insert((0, 1), pentagon_upb());
        assert!(compose_bipartite_fupb(&[4, 3], vec![None, None], &y).is_err());
        assert!(compose_bipartite_fupb(&[3, 3], vec![None, None], &BTreeMap::new()).is_err());
    }
}
