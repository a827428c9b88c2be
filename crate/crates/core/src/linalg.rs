//! Small dense linear algebra over any [`Scalar`].
//!
//! Exact backends use exact elimination; the binary64 backend overrides the
//! rank and basis routines with SVD / Hermitian eigen-solvers from `nalgebra`.

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::scalar::{Scalar, C64};

/// `Σ conj(u_i) v_i`.
pub fn dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    u.iter()
        .zip(v)
        .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

pub fn norm_f64<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(Scalar::norm_sqr_f64).sum::<f64>().sqrt()
}

fn max_entry<S: Scalar>(rows: &[Vec<S>]) -> f64 {
    rows.iter()
        .flatten()
        .map(|x| x.norm_sqr_f64())
        .fold(0.0, f64::max)
        .sqrt()
}

/// Determinant of a square matrix by elimination with pivoting on
/// [`Scalar::pivot_weight`].
pub fn determinant<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut det = S::one();
    for col in 0..n {
        let (piv, weight) = (col..n)
            .map(|r| (r, a[r][col].pivot_weight()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if weight <= 0.0 {
            return S::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / p.clone();
            for c in col..n {
                let t = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * t;
            }
        }
    }
    det
}

/// Row echelon form; returns the pivot columns. Entries below `tol` times the
/// largest input entry count as zero on floating backends.
pub fn row_echelon<S: Scalar>(a: &mut [Vec<S>], tol: f64) -> Vec<usize> {
    let scale = max_entry(a);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (piv, weight) = (r..rows)
            .map(|i| (i, a[i][c].pivot_weight()))
            .fold((r, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if weight <= 0.0 || a[piv][c].is_negligible(scale, tol) {
            continue;
        }
        a.swap(piv, r);
        let p = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / p.clone();
            for j in c..cols {
                let t = a[r][j].clone();
                a[i][j] = a[i][j].clone() - f.clone() * t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn echelon_rank<S: Scalar>(rows: &[Vec<S>], tol: f64) -> usize {
    let mut a = rows.to_vec();
    row_echelon(&mut a, tol).len()
}

/// Residual of `v` after removing its components along the (orthogonal) `basis`.
pub fn orthogonal_residual<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Vec<S> {
    let mut r = v.to_vec();
    for q in basis {
        let qq = dot(q, q);
        let c = dot(q, &r) / qq;
        for (ri, qi) in r.iter_mut().zip(q) {
            *ri = ri.clone() - c.clone() * qi.clone();
        }
    }
    r
}

/// Classical Gram–Schmidt without normalization (exact on exact backends).
pub fn gram_schmidt<S: Scalar>(rows: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    let mut basis: Vec<Vec<S>> = Vec::new();
    for v in rows {
        let scale = norm_f64(v);
        let r = orthogonal_residual(&basis, v);
        if norm_f64(&r) > 0.0 && !r.iter().all(|x| x.is_negligible(scale, tol)) {
            basis.push(r);
        }
    }
    basis
}

/// Extends the orthogonal `basis` by standard basis vectors; returns only the
/// new vectors, which span the orthogonal complement.
pub fn gram_schmidt_extend<S: Scalar>(basis: &[Vec<S>], dim: usize, tol: f64) -> Vec<Vec<S>> {
    let mut all = basis.to_vec();
    let start = all.len();
    for k in 0..dim {
        if all.len() == dim {
            break;
        }
        let mut e = vec![S::zero(); dim];
        e[k] = S::one();
        let r = orthogonal_residual(&all, &e);
        if !r.iter().all(|x| x.is_negligible(1.0, tol)) {
            all.push(r);
        }
    }
    all.split_off(start)
}

pub fn to_dmatrix(rows: &[Vec<C64>], cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

/// Orthonormal basis of the row space: right singular vectors whose singular
/// value exceeds `tol · σ_max`.
pub fn svd_row_basis(rows: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    if cols == 0 {
        return Vec::new();
    }
    let svd = to_dmatrix(rows, cols).svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    order
        .into_iter()
        .filter(|&k| svd.singular_values[k] > tol * smax)
        .map(|k| v_t.row(k).iter().copied().collect())
        .collect()
}

/// Top-`k` right singular vectors, regardless of the singular values.
pub fn svd_leading_rows(rows: &[Vec<C64>], k: usize) -> Vec<Vec<C64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let svd = to_dmatrix(rows, cols).svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    order
        .into_iter()
        .take(k)
        .map(|i| v_t.row(i).iter().copied().collect())
        .collect()
}

pub fn singular_values(rows: &[Vec<C64>]) -> Vec<f64> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_dmatrix(rows, cols)
        .singular_values()
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn svd_rank(rows: &[Vec<C64>], tol: f64) -> usize {
    let s = singular_values(rows);
    match s.first() {
        Some(&smax) if smax > 0.0 => s.iter().filter(|&&x| x > tol * smax).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the complement of the orthonormal rows `basis`, from
/// the eigenvectors of the projector `I − Σ q q†`.
pub fn projector_complement(basis: &[Vec<C64>], dim: usize) -> Vec<Vec<C64>> {
    let want = dim.saturating_sub(basis.len());
    if want == 0 {
        return Vec::new();
    }
    let mut p = DMatrix::<C64>::identity(dim, dim);
    for q in basis {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] -= q[i] * q[j].conj();
            }
        }
    }
    let eig = p.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order
        .into_iter()
        .take(want)
        .map(|k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect()
}

/// Orthonormalizes the rows in place (modified Gram–Schmidt, two passes).
/// Returns `false` if the rows are numerically dependent.
pub fn orthonormalize_rows(rows: &mut [Vec<C64>]) -> bool {
    for i in 0..rows.len() {
        for _ in 0..2 {
            for j in 0..i {
                let c = dot(&rows[j], &rows[i]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, q) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= c * q;
                }
            }
        }
        let n = norm_f64(&rows[i]);
        if !(n > 1e-300) {
            return false;
        }
        rows[i].iter_mut().for_each(|x| *x /= n);
    }
    true
}

/// Whether every entry of `v` is exactly zero.
pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(Zero::is_zero)
}
