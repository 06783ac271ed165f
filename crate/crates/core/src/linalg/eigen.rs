//! Cyclic Jacobi eigensolver for dense Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{fix_phase, ComplexMatrix, UnitaryMatrix, ZERO};
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: UnitaryMatrix,
}

impl HermitianEigen {
    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = self.eigenvectors.matrix();
        let lambda: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        v.matmul(&ComplexMatrix::from_diagonal(&lambda))
            .matmul(&v.adjoint())
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Requires `max|H − H†| ≤ 1e-10·(1 + max|H|)`; the Hermitian part is used.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            found: h.cols(),
        });
    }
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = h.hermitian_residual();
    if residual > 1e-10 * (1.0 + h.max_abs()) {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let m = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = m;
            a[(j, i)] = m.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    jacobi(&mut a, &mut v)?;

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let mut vecs = ComplexMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_phase(&mut col);
        vecs.set_column(k, &col);
    }
    Ok(HermitianEigen {
        eigenvalues: order.iter().map(|&i| diag[i]).collect(),
        eigenvectors: UnitaryMatrix::new_unchecked(vecs),
    })
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `a` in place, accumulating rotations into `v`.
fn jacobi(a: &mut ComplexMatrix, v: &mut ComplexMatrix) -> Result<()> {
    let n = a.rows();
    let scale = a.frobenius_norm();
    if n < 2 || scale == 0.0 {
        return Ok(());
    }
    let max_sweeps = 100 * n * n;
    let floor = f64::EPSILON * 1e-2 * scale;
    for _ in 0..max_sweeps {
        if off_norm(a) <= f64::EPSILON * 1e-2 * scale {
            return Ok(());
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let bn = b.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if bn <= floor || bn <= f64::EPSILON * 0.5 * (app.abs() * aqq.abs()).sqrt() {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                rotated = true;
                rotate(a, v, p, q, b, bn, app, aqq);
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence {
        routine: "hermitian_eigen",
        sweeps: max_sweeps,
    })
}

/// Applies G = Φ R with Φ = diag(1, e^{-iφ}) on (p, q) and a real rotation
/// R that annihilates the (p, q) entry.
#[allow(clippy::too_many_arguments)]
fn rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    b: Complex64,
    bn: f64,
    app: f64,
    aqq: f64,
) {
    let n = a.rows();
    let w = b / bn; // e^{iφ}
    let zeta = (aqq - app) / (2.0 * bn);
    let t = if zeta == 0.0 {
        1.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    let wc = w.conj();
    // G = [[c, s], [-s w̄, c w̄]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -wc * s;
    let g_qq = wc * c;

    // A ← A G (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A ← G† A (rows p, q)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, p)] = Complex64::new(app - t * bn, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * bn, 0.0);
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
