//! Multi-start first-order search for decomposable vectors in a subspace.
//!
//! For an `N × M` factor matrix `X` with expansion `ω = ∧ rows(X)` the
//! objective is `f(X) = ‖(I − Π_T)ω‖² / ‖ω‖²`. It is invariant under
//! `X ↦ AX`, so the descent runs on the Grassmannian: rows are kept
//! orthonormal and the gradient is automatically horizontal.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::index::combinations;
use crate::linalg::orthonormalize_rows;
use crate::scalar::C64;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// A restart whose residual `√f` falls to this level yields a witness.
    pub tol_found: f64,
    /// Best residual at or above this level counts as an inconclusive pass.
    pub tol_clear: f64,
    pub seed: u64,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    /// Backtracking factor.
    pub shrink: f64,
    /// Restarts dispatched together; fixed so results do not depend on the
    /// thread count.
    pub batch: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iters: 2000,
            tol_found: 1e-10,
            tol_clear: 1e-6,
            seed: 0,
            armijo: 1e-4,
            shrink: 0.5,
            batch: 32,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 || self.batch == 0 {
            return Err(Error::Domain("restarts, max_iters and batch must be positive".into()));
        }
        if !(self.tol_found > 0.0 && self.tol_found < self.tol_clear) {
            return Err(Error::Domain(format!(
                "need 0 < tol_found < tol_clear, got {} and {}",
                self.tol_found, self.tol_clear
            )));
        }
        if !(self.armijo > 0.0 && self.armijo < 1.0 && self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::Domain("step controller constants must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// Smallest `√f` seen over the restarts that were run.
    pub best_residual: f64,
    pub restarts_used: usize,
    pub witness: Option<Factorization<C64>>,
}

/// Dense objective and gradient for one subspace.
pub struct Objective {
    n: usize,
    m: usize,
    /// Orthonormal basis of `T`, dense rows.
    basis: Vec<Vec<C64>>,
    subsets: Vec<Vec<usize>>,
    /// For each `(N−1)`-subset `J` (by rank), the pairs `(p, rank of J ∪ p, position of p)`.
    cofactor_table: Vec<Vec<(usize, usize, usize)>>,
    minor_subsets: Vec<Vec<usize>>,
}

fn det(mut a: Vec<C64>, k: usize) -> C64 {
    let mut d = C64::new(1.0, 0.0);
    for c in 0..k {
        let p = (c..k)
            .max_by(|&i, &j| a[i * k + c].norm_sqr().total_cmp(&a[j * k + c].norm_sqr()))
            .unwrap();
        if a[p * k + c] == C64::new(0.0, 0.0) {
            return C64::new(0.0, 0.0);
        }
        if p != c {
            for j in 0..k {
                a.swap(p * k + j, c * k + j);
            }
            d = -d;
        }
        let piv = a[c * k + c];
        d *= piv;
        for r in c + 1..k {
            let f = a[r * k + c] / piv;
            for j in c..k {
                let v = a[c * k + j];
                a[r * k + j] -= f * v;
            }
        }
    }
    d
}

impl Objective {
    pub fn new(t: &Subspace<C64>) -> Result<Self> {
        if t.dim() == 0 {
            return Err(Error::Domain("search space is zero-dimensional".into()));
        }
        let (m, n) = (t.m(), t.n());
        let subsets: Vec<Vec<usize>> =
            combinations(m, n).into_iter().map(|i| i.as_slice().to_vec()).collect();
        let minor_subsets: Vec<Vec<usize>> = if n == 0 {
            Vec::new()
        } else {
            combinations(m, n - 1).into_iter().map(|i| i.as_slice().to_vec()).collect()
        };
        let cofactor_table = minor_subsets
            .iter()
            .map(|j| {
                (0..m)
                    .filter(|p| !j.contains(p))
                    .map(|p| {
                        let mut full = j.clone();
                        let pos = full.partition_point(|&x| x < p);
                        full.insert(pos, p);
                        let rank = crate::index::MultiIndex::new(full, m)
                            .expect("valid subset")
                            .rank(m);
                        (p, rank, pos)
                    })
                    .collect()
            })
            .collect();
        let mut basis: Vec<Vec<C64>> =
            t.orthogonal_basis().iter().map(|v| v.to_dense()).collect();
        if !orthonormalize_rows(&mut basis) {
            return Err(Error::Domain("degenerate subspace basis".into()));
        }
        Ok(Self {
            n,
            m,
            basis,
            subsets,
            cofactor_table,
            minor_subsets,
        })
    }

    fn expand(&self, x: &[Vec<C64>]) -> Vec<C64> {
        let n = self.n;
        self.subsets
            .iter()
            .map(|cols| {
                let a = (0..n)
                    .flat_map(|r| cols.iter().map(move |&c| x[r][c]))
                    .collect();
                det(a, n)
            })
            .collect()
    }

    /// `(f, ω, (I − Π_T)ω)`.
    fn value_parts(&self, x: &[Vec<C64>]) -> (f64, Vec<C64>, Vec<C64>) {
        let omega = self.expand(x);
        let mut r = omega.clone();
        for q in &self.basis {
            let c: C64 = q.iter().zip(&omega).map(|(a, b)| a.conj() * b).sum();
            for (ri, qi) in r.iter_mut().zip(q) {
                *ri -= c * qi;
            }
        }
        let den: f64 = omega.iter().map(|z| z.norm_sqr()).sum();
        let num: f64 = r.iter().map(|z| z.norm_sqr()).sum();
        let f = if den > 0.0 { num / den } else { f64::INFINITY };
        (f, omega, r)
    }

    pub fn value(&self, x: &[Vec<C64>]) -> f64 {
        self.value_parts(x).0
    }

    /// `f` and its gradient with real and imaginary parts of `X` as
    /// independent variables, packed as `∂f/∂Re X + i ∂f/∂Im X`.
    pub fn value_and_gradient(&self, x: &[Vec<C64>]) -> (f64, Vec<Vec<C64>>) {
        let (f, omega, r) = self.value_parts(x);
        let (n, m) = (self.n, self.m);
        let mut grad = vec![vec![C64::new(0.0, 0.0); m]; n];
        if !f.is_finite() || n == 0 {
            return (f, grad);
        }
        let den: f64 = omega.iter().map(|z| z.norm_sqr()).sum();
        // ∂f/∂ω̄ = ((I − Π_T)ω − f ω) / ‖ω‖²
        let g: Vec<C64> = r
            .iter()
            .zip(&omega)
            .map(|(ri, wi)| (ri - wi * f) / den)
            .collect();
        for k in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != k).collect();
            for (jr, cols) in self.minor_subsets.iter().enumerate() {
                let a = rows
                    .iter()
                    .flat_map(|&r| cols.iter().map(move |&c| x[r][c]))
                    .collect();
                let minor = det(a, n - 1).conj();
                if minor == C64::new(0.0, 0.0) {
                    continue;
                }
                for &(p, rank, pos) in &self.cofactor_table[jr] {
                    // ∂ω_I/∂X_{kp} = (−1)^{k+pos} · minor
                    let term = g[rank] * minor;
                    if (k + pos) % 2 == 0 {
                        grad[k][p] += term;
                    } else {
                        grad[k][p] -= term;
                    }
                }
            }
        }
        for row in &mut grad {
            for z in row.iter_mut() {
                *z *= 2.0;
            }
        }
        (f, grad)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }
}

fn inner(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u.conj() * v).re))
        .sum()
}

fn random_start(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<C64>> {
    loop {
        let mut x: Vec<Vec<C64>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                    .collect()
            })
            .collect();
        if orthonormalize_rows(&mut x) {
            return x;
        }
    }
}

/// One restart: Barzilai–Borwein initial steps with Armijo backtracking.
/// Returns the final `√f` and factor rows.
fn descend(obj: &Objective, cfg: &SearchConfig, restart: usize) -> (f64, Vec<Vec<C64>>) {
    let (n, m) = obj.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let mut x = random_start(&mut rng, n, m);
    let (mut f, mut g) = obj.value_and_gradient(&x);
    let target = cfg.tol_found * cfg.tol_found;
    let mut step = 1.0;
    let mut prev: Option<(Vec<Vec<C64>>, Vec<Vec<C64>>)> = None;
    for _ in 0..cfg.max_iters {
        if f <= target {
            break;
        }
        let gg = inner(&g, &g);
        if gg <= f64::MIN_POSITIVE {
            break;
        }
        if let Some((px, pg)) = &prev {
            let s: Vec<Vec<C64>> = x
                .iter()
                .zip(px)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect())
                .collect();
            let y: Vec<Vec<C64>> = g
                .iter()
                .zip(pg)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect())
                .collect();
            let sy = inner(&s, &y).abs();
            if sy > 0.0 {
                step = (inner(&s, &s) / sy).clamp(1e-8, 1e8);
            }
        }
        let mut accepted = None;
        let mut alpha = step;
        while alpha > 1e-20 {
            let mut trial: Vec<Vec<C64>> = x
                .iter()
                .zip(&g)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v * alpha).collect())
                .collect();
            if orthonormalize_rows(&mut trial) {
                let ft = obj.value(&trial);
                if ft <= f - cfg.armijo * alpha * gg {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            alpha *= cfg.shrink;
        }
        let Some((nx, _)) = accepted else { break };
        let (nf, ng) = obj.value_and_gradient(&nx);
        prev = Some((std::mem::replace(&mut x, nx), std::mem::replace(&mut g, ng)));
        f = nf;
    }
    (f.max(0.0).sqrt(), x)
}

/// Multi-start search for a decomposable vector in `t`. Deterministic in
/// `cfg.seed`: restart `r` draws from stream `r` of the seeded generator and
/// the first witness by restart index wins.
pub fn search_decomposable(t: &Subspace<C64>, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let obj = Objective::new(t)?;
    let mut best = f64::INFINITY;
    let mut used = 0;
    let mut start = 0;
    while start < cfg.restarts {
        let end = (start + cfg.batch).min(cfg.restarts);
        let results: Vec<(f64, Vec<Vec<C64>>)> = (start..end)
            .into_par_iter()
            .map(|r| descend(&obj, cfg, r))
            .collect();
        for (offset, (res, x)) in results.into_iter().enumerate() {
            used = start + offset + 1;
            if res < best {
                best = res;
            }
            if res <= cfg.tol_found {
                let witness = Factorization::new(t.m(), x)?;
                return Ok(SearchResult {
                    best_residual: best,
                    restarts_used: used,
                    witness: Some(witness),
                });
            }
        }
        start = end;
    }
    Ok(SearchResult {
        best_residual: best,
        restarts_used: used,
        witness: None,
    })
}
