//! One-particle reduced density operators and their von Neumann entropy
//! (in bits).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::states::TwoParticleState;

/// Eigenvalues below this are treated as exact zeros in the entropy.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

const TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite `d×d` operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(ComplexMatrix);

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let residual = matrix.hermitian_residual();
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if residual > TOL {
            return Err(Error::NotHermitian { residual });
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm: tr });
        }
        let rho = Self(matrix);
        let min = rho.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.0)?.eigenvalues)
    }

    /// `⟨p|ρ|p⟩`.
    pub fn expectation(&self, p: &[Complex64]) -> f64 {
        let rp = self.0.mul_vec(p);
        crate::linalg::inner(p, &rp).re
    }
}

/// `ρ = C C†`, the partial trace of `|ψ⟩⟨ψ|` over the second particle.
/// By exchange symmetry this equals the trace over the first particle.
pub fn reduced_density(psi: &TwoParticleState) -> DensityOperator {
    let c = psi.coeffs();
    DensityOperator(hermitize(&c.matmul(&c.adjoint())))
}

/// `ρ₂ = Cᵀ C̄`, the partial trace over the first particle.
pub fn reduced_density_second(psi: &TwoParticleState) -> DensityOperator {
    let c = psi.coeffs();
    DensityOperator(hermitize(&c.transpose().matmul(&c.conj())))
}

fn hermitize(m: &ComplexMatrix) -> ComplexMatrix {
    m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// `−Σ λ log₂ λ` over the spectrum, clamped to `[0, log₂ d]`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let s = entropy_of_spectrum(&rho.eigenvalues()?);
    Ok(s.clamp(0.0, (rho.dim() as f64).log2()))
}

pub(crate) fn entropy_of_spectrum(lambda: &[f64]) -> f64 {
    -lambda
        .iter()
        .filter(|&&x| x >= EIGENVALUE_FLOOR)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

fn check_coefficients(c: &[f64]) -> Result<()> {
    let n2: f64 = c.iter().map(|x| x * x).sum();
    if c.iter().any(|&x| !(x >= 0.0)) || (n2 - 1.0).abs() > TOL {
        return Err(Error::NotNormalized { norm: n2.sqrt() });
    }
    Ok(())
}

/// `1 − Σ a_i² log₂ a_i²` for the Slater coefficients of a fermion state.
pub fn entropy_from_slater(a: &[f64]) -> Result<f64> {
    check_coefficients(a)?;
    Ok(1.0 + plogp(a))
}

/// `−Σ b_i² log₂ b_i²` for the Schmidt coefficients of a boson state.
pub fn entropy_from_schmidt(b: &[f64]) -> Result<f64> {
    check_coefficients(b)?;
    Ok(plogp(b))
}

fn plogp(c: &[f64]) -> f64 {
    -c.iter()
        .map(|x| x * x)
        .filter(|&p| p > 0.0)
        .map(|p| p * p.log2())
        .sum::<f64>()
}
