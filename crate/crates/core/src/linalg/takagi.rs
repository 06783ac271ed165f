//! Takagi factorization `S = U diag(b) Uᵀ` of a complex symmetric matrix.
//!
//! The positive eigenpairs of the real symmetric embedding
//! `[[Re S, Im S], [Im S, −Re S]]` give the Takagi vectors directly:
//! an eigenvector `(x; y)` with eigenvalue `σ > 0` satisfies `S ū = σ u`
//! for `u = x + i y`. Values far below the largest are re-solved on the
//! compressed block so that they keep relative accuracy.

use num_complex::Complex64;

use super::eigen::hermitian_eigen;
use super::matrix::{
    complete_basis, fix_phase, fix_sign, norm, orthogonalize, scale_in_place, ComplexMatrix,
    UnitaryMatrix,
};
use crate::error::{Error, Result};

/// Values below this fraction of the largest are deflated to a sub-problem.
pub(crate) const DEFLATION_RATIO: f64 = 1e-4;

#[derive(Clone, Debug)]
pub struct Takagi {
    pub u: UnitaryMatrix,
    /// Takagi values (the singular values of S), descending.
    pub b: Vec<f64>,
}

impl Takagi {
    /// `U diag(b) Uᵀ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = self.u.matrix();
        let n = u.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &bk) in self.b.iter().enumerate() {
            if bk == 0.0 {
                continue;
            }
            let col = u.column(k);
            for i in 0..n {
                let ci = col[i] * bk;
                for j in 0..n {
                    out[(i, j)] += ci * col[j];
                }
            }
        }
        out
    }
}

pub fn takagi(s: &ComplexMatrix) -> Result<Takagi> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch {
            expected: s.rows(),
            found: s.cols(),
        });
    }
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = s.transpose_residual(-1.0);
    if residual > 1e-10 * (1.0 + s.max_abs()) {
        return Err(Error::NotSymmetric { residual });
    }
    let sym = symmetrized(s);
    let floor = f64::EPSILON * sym.frobenius_norm();
    let (cols, b) = solve(&sym, floor)?;
    Ok(Takagi {
        u: UnitaryMatrix::new_unchecked(ComplexMatrix::from_columns(&cols)),
        b,
    })
}

fn symmetrized(s: &ComplexMatrix) -> ComplexMatrix {
    let n = s.rows();
    let mut out = s.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = (s[(i, j)] + s[(j, i)]) * 0.5;
            out[(i, j)] = m;
            out[(j, i)] = m;
        }
    }
    out
}

/// Returns Takagi columns and values of a symmetric `s`; values at or
/// below `floor` are reported as zero.
fn solve(s: &ComplexMatrix, floor: f64) -> Result<(Vec<Vec<Complex64>>, Vec<f64>)> {
    let n = s.rows();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let scale = s.frobenius_norm();
    if scale <= floor {
        let cols = complete_basis(&[], n);
        return Ok((cols, vec![0.0; n]));
    }

    let mut emb = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = s[(i, j)];
            emb[(i, j)] = Complex64::new(z.re, 0.0);
            emb[(i, n + j)] = Complex64::new(z.im, 0.0);
            emb[(n + i, j)] = Complex64::new(z.im, 0.0);
            emb[(n + i, n + j)] = Complex64::new(-z.re, 0.0);
        }
    }
    let eig = hermitian_eigen(&emb)?;
    let top = eig.eigenvalues[2 * n - 1];
    let keep = (top * DEFLATION_RATIO).max(floor);

    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    let mut vals: Vec<f64> = Vec::new();
    for k in (0..2 * n).rev() {
        let lambda = eig.eigenvalues[k];
        if lambda < keep || cols.len() == n {
            break;
        }
        let e = eig.eigenvectors.column(k);
        let mut u: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(e[i].re, e[n + i].re))
            .collect();
        orthogonalize(&mut u, &cols);
        let nu = norm(&u);
        if nu < 0.5 {
            // Numerically a repeat of a direction already taken.
            continue;
        }
        scale_in_place(&mut u, 1.0 / nu);
        fix_sign(&mut u);
        cols.push(u);
        vals.push(lambda);
    }

    let rest = n - cols.len();
    if rest > 0 {
        let q = complete_basis(&cols, n);
        // Compressed block B = Q† S Q̄, symmetric.
        let qm = ComplexMatrix::from_columns(&q);
        let block = symmetrized(&qm.adjoint().matmul(s).matmul(&qm.conj()));
        let (sub_cols, sub_vals) = solve(&block, floor)?;
        for (w, val) in sub_cols.into_iter().zip(sub_vals) {
            let mut u = qm.mul_vec(&w);
            if val > 0.0 {
                fix_sign(&mut u);
            } else {
                fix_phase(&mut u);
            }
            cols.push(u);
            vals.push(val);
        }
    }
    sort_descending(&mut cols, &mut vals);
    Ok((cols, vals))
}

/// Descending values; columns with equal values (to 1e-12 relative) are
/// ordered by the index of their leading significant coordinate.
fn sort_descending(cols: &mut Vec<Vec<Complex64>>, vals: &mut Vec<f64>) {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let tie = 1e-12 * vals.iter().cloned().fold(0.0, f64::max);
    let lead = |v: &[Complex64]| {
        let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        v.iter().position(|z| z.norm() >= 0.5 * m).unwrap_or(0)
    };
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && vals[idx[start]] - vals[idx[end]] <= tie {
            end += 1;
        }
        idx[start..end].sort_by_key(|&i| lead(&cols[i]));
        start = end;
    }
    *cols = idx.iter().map(|&i| cols[i].clone()).collect();
    *vals = idx.iter().map(|&i| vals[i]).collect();
}
