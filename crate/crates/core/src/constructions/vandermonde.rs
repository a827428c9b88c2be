use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{CandidateSet, Claims, Kind};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::index::{combinations, MultiIndex};
use crate::nvector::NVector;
use crate::scalar::Scalar;

/// Generalized FUPB of `N(M−N)+1` members; factor `j` of member `t` is
/// `Σ_p (t+j−1)^{p−1} |p⟩`.
pub fn vandermonde_gfupb<S: Scalar>(n: usize, m: usize) -> Result<CandidateSet<S>> {
    if n < 2 || m < 4 || n >= m {
        return Err(Error::Domain(format!(
            "need N ≥ 2, M ≥ 4, N < M, got N={n}, M={m}"
        )));
    }
    let count = n * (m - n) + 1;
    let mut members = Vec::with_capacity(count);
    for t in 1..=count {
        let factors = (1..=n)
            .map(|j| {
                let x = BigInt::from(t + j - 1);
                let mut pow = BigInt::one();
                (0..m)
                    .map(|_| {
                        let v = S::from_bigint(&pow);
                        pow *= &x;
                        v
                    })
                    .collect()
            })
            .collect();
        members.push(Factorization::new(m, factors)?);
    }
    Ok(CandidateSet::new(
        m,
        n,
        Kind::Gfupb,
        Claims {
            orthogonal: false,
            independent: true,
        },
        members,
    )?
    .with_metadata("t_range", Value::from(vec![1, count])))
}

/// Integer polynomial in `t`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl DeltaPolynomial {
    fn trimmed(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % d).is_zero() {
                return None;
            }
            out.push(c / d);
        }
        Some(Self::trimmed(out))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_assign(acc: &mut Vec<BigInt>, p: &[BigInt], negate: bool) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        if negate {
            *a -= c;
        } else {
            *a += c;
        }
    }
}

/// `(t + shift)^e` expanded by the binomial theorem.
fn shifted_power(shift: usize, e: usize) -> Vec<BigInt> {
    let s = BigInt::from(shift);
    let mut out = Vec::with_capacity(e + 1);
    let mut binom = BigInt::one();
    for k in 0..=e {
        // coefficient of t^k: C(e,k) s^{e−k}
        out.push(&binom * num_traits::pow(s.clone(), e - k));
        binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
    }
    out
}

/// Permutations of `0..n` with their signs (Heap-free recursive listing).
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            // inserting at `pos` moves the new maximum past len−pos elements
            let flips = perm.len() - pos;
            out.push((p, odd ^ (flips % 2 == 1)));
        }
    }
    out
}

/// `Δ_p(t) = det[(t+r−1)^{p_s−1}]_{r,s}` for a 1-based `N`-subset `p` of `[1, M]`.
pub fn delta_polynomial(n: usize, m: usize, p: &MultiIndex) -> Result<DeltaPolynomial> {
    if p.grade() != n || p.as_slice().iter().any(|&i| i >= m) {
        return Err(Error::InvalidIndex(format!(
            "{p:?} is not a {n}-subset of [1, {m}]"
        )));
    }
    let exps: Vec<usize> = p.as_slice().to_vec();
    let entries: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|r| exps.iter().map(|&e| shifted_power(r, e)).collect())
        .collect();
    let mut acc = Vec::new();
    for (perm, odd) in permutations(n) {
        let term = (0..n).fold(vec![BigInt::one()], |t, r| poly_mul(&t, &entries[r][perm[r]]));
        poly_add_assign(&mut acc, &term, odd);
    }
    Ok(DeltaPolynomial::trimmed(acc))
}

/// `Π_{i<j} (j − i)`, the Vandermonde determinant of `t, t+1, …, t+N−1`.
pub fn vandermonde_constant(n: usize) -> BigInt {
    (1..n).fold(BigInt::one(), |acc, k| {
        acc * (1..=k).fold(BigInt::one(), |f, i| f * BigInt::from(i))
    })
}

/// `g(t) = Σ_I Δ_I(t) · φ_I`, which vanishes at every member parameter `t`
/// exactly when `φ` is orthogonal to the corresponding Vandermonde members.
/// Coefficients from the constant term up.
pub fn g_polynomial<S: Scalar>(phi: &NVector<S>) -> Result<Vec<S>> {
    let (n, m) = (phi.n(), phi.m());
    let mut out: Vec<S> = Vec::new();
    for idx in combinations(m, n) {
        let c = phi.get(&idx);
        if c.is_zero() {
            continue;
        }
        let delta = delta_polynomial(n, m, &idx)?;
        if out.len() < delta.coeffs.len() {
            out.resize(delta.coeffs.len(), S::zero());
        }
        for (o, d) in out.iter_mut().zip(&delta.coeffs) {
            *o = o.clone() + S::from_bigint(d) * c.clone();
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}
