//! One-sided (Hestenes) Jacobi SVD.
//!
//! Kept independent of the eigensolver so that it can serve as an oracle
//! for the Takagi and Youla factorizations.

use num_complex::Complex64;

use super::matrix::{complete_basis, fix_phase, inner, ComplexMatrix, UnitaryMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Svd {
    pub u: UnitaryMatrix,
    /// Singular values, descending.
    pub sigma: Vec<f64>,
    pub v: UnitaryMatrix,
}

impl Svd {
    /// `U diag(σ) V†`, shaped like the input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let m = self.u.dim();
        let n = self.v.dim();
        let mut s = ComplexMatrix::zeros(m, n);
        for (i, &x) in self.sigma.iter().enumerate() {
            s[(i, i)] = Complex64::new(x, 0.0);
        }
        self.u
            .matrix()
            .matmul(&s)
            .matmul(&self.v.matrix().adjoint())
    }
}

/// `M = U diag(σ) V†` with σ descending and nonnegative.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    let rows = m.rows();
    let n = m.cols();
    let mut g: Vec<Vec<Complex64>> = m.columns();
    let mut v: Vec<Vec<Complex64>> = ComplexMatrix::identity(n).columns();
    hestenes(&mut g, &mut v)?;

    let norms: Vec<f64> = g.iter().map(|c| super::matrix::norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let scale = norms.iter().cloned().fold(0.0, f64::max);
    let cutoff = scale * f64::EPSILON * (rows.max(1) as f64);
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(rows);
    let mut v_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut null_slots = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        sigma.push(norms[j]);
        let mut vj = v[j].clone();
        if norms[j] > cutoff {
            let mut uj: Vec<Complex64> = g[j].iter().map(|z| z / norms[j]).collect();
            // Phase rule applied to u; v follows so that M v = σ u still holds.
            let before = uj.clone();
            fix_phase(&mut uj);
            let ph = inner(&before, &uj);
            for z in vj.iter_mut() {
                *z *= ph;
            }
            u_cols.push(uj);
        } else {
            null_slots.push(k);
            fix_phase(&mut vj);
            u_cols.push(Vec::new());
        }
        v_cols.push(vj);
    }
    // Left vectors for negligible σ, and the extra rows of a tall matrix.
    let known: Vec<Vec<Complex64>> = u_cols.iter().filter(|c| !c.is_empty()).cloned().collect();
    let mut extra = complete_basis(&known, rows).into_iter();
    for k in null_slots {
        u_cols[k] = extra.next().expect("basis completion");
    }
    u_cols.extend(extra);

    Ok(Svd {
        u: UnitaryMatrix::new_unchecked(ComplexMatrix::from_columns(&u_cols)),
        sigma,
        v: UnitaryMatrix::new_unchecked(ComplexMatrix::from_columns(&v_cols)),
    })
}

fn hestenes(g: &mut [Vec<Complex64>], v: &mut [Vec<Complex64>]) -> Result<()> {
    let n = g.len();
    if n < 2 {
        return Ok(());
    }
    let max_sweeps = 100 * n * n;
    let tol = f64::EPSILON;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for j in 0..n - 1 {
            for k in (j + 1)..n {
                let alpha: f64 = g[j].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = g[k].iter().map(Complex64::norm_sqr).sum();
                let gamma = inner(&g[j], &g[k]);
                let gn = gamma.norm();
                if gn == 0.0 || gn <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let w = gamma / gn;
                let zeta = (beta - alpha) / (2.0 * gn);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // with g̃_k = w̄ g_k: g_j ← c g_j − s g̃_k, g_k ← s g_j + c g̃_k
                let sw = w.conj() * s;
                let cw = w.conj() * c;
                apply(g, j, k, c, sw, s, cw);
                apply(v, j, k, c, sw, s, cw);
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::NoConvergence {
        routine: "svd",
        sweeps: max_sweeps,
    })
}

fn apply(cols: &mut [Vec<Complex64>], j: usize, k: usize, c: f64, sw: Complex64, s: f64, cw: Complex64) {
    let (lo, hi) = cols.split_at_mut(k);
    let a = &mut lo[j];
    let b = &mut hi[0];
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let xo = *x;
        let yo = *y;
        *x = xo * c - yo * sw;
        *y = xo * s + yo * cw;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_util::random_matrix;

    #[test]
    fn diagonal_with_zero() {
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 0.0]]);
        let s = svd(&m).unwrap();
        assert_eq!(s.sigma, vec![3.0, 0.0]);
        assert!(s.u.unitarity_error() < 1e-14);
        assert!(s.reconstruct().sub(&m).max_abs() < 1e-14);
    }

    #[test]
    fn singlet_matrix_has_equal_singular_values() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_rows(&[&[0.0, h], &[-h, 0.0]]);
        let s = svd(&m).unwrap();
        for x in &s.sigma {
            assert!((x - h).abs() < 1e-15);
        }
        assert!(s.reconstruct().sub(&m).max_abs() < 1e-15);
    }

    #[test]
    fn random_square_reconstruction() {
        for seed in 0..10 {
            let m = random_matrix(6, 6, seed);
            let s = svd(&m).unwrap();
            let err = s.reconstruct().sub(&m).frobenius_norm();
            assert!(err < 1e-9 * (1.0 + m.frobenius_norm()), "err {err}");
            assert!(s.u.unitarity_error() < 1e-10);
            assert!(s.v.unitarity_error() < 1e-10);
            assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let a = random_matrix(5, 2, 3);
        let b = random_matrix(2, 4, 4);
        let m = a.matmul(&b); // 5x4, rank 2
        let s = svd(&m).unwrap();
        assert_eq!(s.u.dim(), 5);
        assert_eq!(s.v.dim(), 4);
        assert!(s.sigma[2] < 1e-12 && s.sigma[3] < 1e-12);
        assert!(s.reconstruct().sub(&m).frobenius_norm() < 1e-12);
        assert!(s.u.unitarity_error() < 1e-10);

        let w = random_matrix(3, 7, 5);
        let s = svd(&w).unwrap();
        assert_eq!(s.sigma.len(), 3);
        assert!(s.reconstruct().sub(&w).frobenius_norm() < 1e-12);
    }

    #[test]
    fn agrees_with_nalgebra() {
        let m = random_matrix(7, 7, 11);
        let s = svd(&m).unwrap();
        let na = nalgebra::DMatrix::from_fn(7, 7, |i, j| m[(i, j)]);
        let mut theirs: Vec<f64> = na.singular_values().iter().cloned().collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in s.sigma.iter().zip(&theirs) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
