//! Dense complex kernels: Hermitian eigendecomposition, SVD, Takagi
//! factorization and the Youla form of antisymmetric matrices.

mod eigen;
mod matrix;
mod svd;
mod takagi;
mod youla;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::{inner, norm, unitarity_error, ComplexMatrix, UnitaryMatrix};
pub use svd::{svd, Svd};
pub use takagi::{takagi, Takagi};
pub use youla::{youla_antisymmetric, Youla};

#[allow(unused_imports)]
pub(crate) use matrix::{conj_vec, fix_phase, orthogonalize, scale_in_place};

/// Unitarity tolerance for every returned basis.
pub const UNITARY_TOL: f64 = 1e-10;

#[cfg(test)]
pub(crate) mod test_util {
    use super::ComplexMatrix;
    use crate::random::{gaussian_matrix, rng};

    pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        gaussian_matrix(&mut rng(seed, 0), rows, cols)
    }

    pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let g = random_matrix(n, n, seed);
        g.add(&g.adjoint())
    }

    pub fn random_symmetric(n: usize, seed: u64) -> ComplexMatrix {
        let g = random_matrix(n, n, seed);
        g.add(&g.transpose())
    }

    pub fn random_antisymmetric(n: usize, seed: u64) -> ComplexMatrix {
        let g = random_matrix(n, n, seed);
        g.sub(&g.transpose())
    }
}
