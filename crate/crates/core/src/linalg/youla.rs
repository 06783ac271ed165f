//! Youla canonical form `A = U Z Uᵀ` of a complex antisymmetric matrix,
//! with `Z = ⊕ z_i [[0, 1], [−1, 0]]` (plus a zero row/column for odd d).
//!
//! The pairs come from eigenvectors of `A A†`: for a unit eigenvector `u₁`
//! with eigenvalue `z²`, the vector `u₂ = −A ū₁ / z` is orthonormal to it and
//! `A ū₂ = z u₁`. Inside a degenerate cluster the first vector of each new
//! pair is taken orthogonal to every vector already chosen, which keeps the
//! partners orthogonal as well.

use num_complex::Complex64;

use super::eigen::hermitian_eigen;
use super::matrix::{
    complete_basis, conj_vec, fix_phase, norm, orthogonalize, scale_in_place, ComplexMatrix,
    UnitaryMatrix,
};
use super::takagi::DEFLATION_RATIO;
use crate::error::{Error, Result};

/// Relative width of an eigenvalue cluster of `A A†` (in units of `z`).
const CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct Youla {
    /// Columns `2i, 2i+1` hold the i-th pair; the last column is the null
    /// direction when the dimension is odd.
    pub u: UnitaryMatrix,
    /// Block values, descending, length ⌊d/2⌋.
    pub z: Vec<f64>,
}

impl Youla {
    pub fn block_matrix(&self) -> ComplexMatrix {
        let n = self.u.dim();
        let mut zm = ComplexMatrix::zeros(n, n);
        for (i, &zi) in self.z.iter().enumerate() {
            zm[(2 * i, 2 * i + 1)] = Complex64::new(zi, 0.0);
            zm[(2 * i + 1, 2 * i)] = Complex64::new(-zi, 0.0);
        }
        zm
    }

    /// `U Z Uᵀ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = self.u.matrix();
        u.matmul(&self.block_matrix()).matmul(&u.transpose())
    }
}

pub fn youla_antisymmetric(a: &ComplexMatrix) -> Result<Youla> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = a.transpose_residual(1.0);
    if residual > 1e-10 * (1.0 + a.max_abs()) {
        return Err(Error::NotAntisymmetric { residual });
    }
    let anti = antisymmetrized(a);
    let floor = f64::EPSILON * anti.frobenius_norm();
    let (pairs, null) = solve(&anti, floor)?;

    let mut cols = Vec::with_capacity(a.rows());
    let mut z = Vec::with_capacity(pairs.len());
    for p in pairs {
        cols.push(p.first);
        cols.push(p.second);
        z.push(p.value);
    }
    cols.extend(null);
    Ok(Youla {
        u: UnitaryMatrix::new_unchecked(ComplexMatrix::from_columns(&cols)),
        z,
    })
}

fn antisymmetrized(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut out = a.clone();
    for i in 0..n {
        out[(i, i)] = Complex64::new(0.0, 0.0);
        for j in (i + 1)..n {
            let m = (a[(i, j)] - a[(j, i)]) * 0.5;
            out[(i, j)] = m;
            out[(j, i)] = -m;
        }
    }
    out
}

struct Pair {
    first: Vec<Complex64>,
    second: Vec<Complex64>,
    value: f64,
}

/// Pairs sorted by descending value, plus the null column for odd size.
fn solve(a: &ComplexMatrix, floor: f64) -> Result<(Vec<Pair>, Vec<Vec<Complex64>>)> {
    let n = a.rows();
    let n_pairs = n / 2;
    if n_pairs == 0 || a.frobenius_norm() <= floor {
        return Ok(zero_pairs(&[], n));
    }

    let h = a.matmul(&a.adjoint());
    let eig = hermitian_eigen(&h)?;
    // descending z = √λ
    let zs: Vec<f64> = (0..n)
        .rev()
        .map(|k| eig.eigenvalues[k].max(0.0).sqrt())
        .collect();
    let vecs: Vec<Vec<Complex64>> = (0..n).rev().map(|k| eig.eigenvectors.column(k)).collect();
    let zmax = zs[0];
    let keep = (zmax * DEFLATION_RATIO).max(floor);

    let mut chosen: Vec<Vec<Complex64>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut start = 0;
    while start < n && pairs.len() < n_pairs && zs[start] >= keep {
        let mut end = start + 1;
        while end < n && zs[end - 1] - zs[end] <= CLUSTER_TOL * zmax {
            end += 1;
        }
        let mut width = end - start;
        if width % 2 == 1 {
            // a split pair; only happens when the cluster touches the cutoff
            if end < n {
                end += 1;
                width += 1;
            } else {
                width -= 1;
            }
        }
        for _ in 0..width / 2 {
            if pairs.len() == n_pairs {
                break;
            }
            let Some(p) = next_pair(a, &vecs[start..end], &chosen) else {
                break;
            };
            chosen.push(p.first.clone());
            chosen.push(p.second.clone());
            pairs.push(p);
        }
        start = end;
    }

    if pairs.len() < n_pairs || n % 2 == 1 {
        let q = complete_basis(&chosen, n);
        if pairs.len() < n_pairs {
            let qm = ComplexMatrix::from_columns(&q);
            let block = antisymmetrized(&qm.adjoint().matmul(a).matmul(&qm.conj()));
            let (sub_pairs, sub_null) = solve(&block, floor)?;
            for p in sub_pairs {
                pairs.push(Pair {
                    first: qm.mul_vec(&p.first),
                    second: qm.mul_vec(&p.second),
                    value: p.value,
                });
            }
            let null: Vec<Vec<Complex64>> = sub_null
                .into_iter()
                .map(|w| {
                    let mut v = qm.mul_vec(&w);
                    fix_phase(&mut v);
                    v
                })
                .collect();
            pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
            return Ok((pairs, null));
        }
        return Ok((pairs, q));
    }
    Ok((pairs, Vec::new()))
}

/// Picks from `cluster` the eigenvector with the largest component outside
/// `chosen` and builds its partner.
fn next_pair(a: &ComplexMatrix, cluster: &[Vec<Complex64>], chosen: &[Vec<Complex64>]) -> Option<Pair> {
    let residuals: Vec<(f64, Vec<Complex64>)> = cluster
        .iter()
        .map(|v| {
            let mut r = v.clone();
            orthogonalize(&mut r, chosen);
            (norm(&r), r)
        })
        .collect();
    let top = residuals.iter().map(|(n, _)| *n).fold(0.0, f64::max);
    // Near-ties go to the vector whose leading significant coordinate comes first.
    let (nr, mut first) = residuals
        .into_iter()
        .filter(|(n, _)| *n >= top * (1.0 - 1e-9))
        .min_by_key(|(n, r)| r.iter().position(|z| z.norm() > 1e-9 * n).unwrap_or(usize::MAX))?;
    if nr < 0.3 {
        return None;
    }
    scale_in_place(&mut first, 1.0 / nr);
    fix_phase(&mut first);

    let w = a.mul_vec(&conj_vec(&first));
    let value = norm(&w);
    if value == 0.0 {
        return None;
    }
    let mut second: Vec<Complex64> = w.iter().map(|x| -x / value).collect();
    let mut basis = chosen.to_vec();
    basis.push(first.clone());
    orthogonalize(&mut second, &basis);
    let ns = norm(&second);
    scale_in_place(&mut second, 1.0 / ns);
    Some(Pair {
        first,
        second,
        value,
    })
}

/// Arbitrary orthonormal completion paired with zero values.
fn zero_pairs(chosen: &[Vec<Complex64>], n: usize) -> (Vec<Pair>, Vec<Vec<Complex64>>) {
    let q = complete_basis(chosen, n);
    let mut it = q.into_iter();
    let mut pairs = Vec::new();
    let mut null = Vec::new();
    loop {
        match (it.next(), it.next()) {
            (Some(first), Some(second)) => pairs.push(Pair {
                first,
                second,
                value: 0.0,
            }),
            (Some(last), None) => {
                null.push(last);
                break;
            }
            _ => break,
        }
    }
    (pairs, null)
}
