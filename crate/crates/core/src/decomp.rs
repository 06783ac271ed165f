//! Slater decomposition (fermions), bosonic Schmidt decomposition, and the
//! distinguishable-particle Schmidt decomposition used as a baseline.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{svd, takagi, youla_antisymmetric, ComplexMatrix, UnitaryMatrix};
use crate::states::{Statistics, TwoParticleState};

/// Default threshold for counting a coefficient as nonzero.
pub const DEFAULT_COUNT_EPS: f64 = 1e-9;

fn check_eps(eps: f64) -> Result<()> {
    if !(1e-12..=1e-3).contains(&eps) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
        });
    }
    Ok(())
}

fn count_above(c: &[f64], eps: f64) -> usize {
    c.iter().filter(|&&x| x > eps).count()
}

fn check_coefficients(c: &[f64]) -> Result<()> {
    let n2: f64 = c.iter().map(|x| x * x).sum();
    if c.iter().any(|&x| !(x >= 0.0)) || (n2 - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: n2.sqrt() });
    }
    Ok(())
}

/// `|ψ⟩ = Σ a_i (|2i−1⟩|2i⟩ − |2i⟩|2i−1⟩)/√2`.
#[derive(Clone, Debug)]
pub struct SlaterDecomposition {
    pub dim: usize,
    /// Columns `2i, 2i+1` are the i-th pair.
    pub pair_basis: UnitaryMatrix,
    /// Real, nonnegative, descending, `Σ a_i² = 1`.
    pub coefficients: Vec<f64>,
    pub slater_number: usize,
    pub threshold: f64,
}

impl SlaterDecomposition {
    /// Assembles a decomposition from a pair basis and coefficients.
    pub fn from_parts(pair_basis: UnitaryMatrix, coefficients: Vec<f64>, threshold: f64) -> Result<Self> {
        check_eps(threshold)?;
        check_coefficients(&coefficients)?;
        let dim = pair_basis.dim();
        if coefficients.len() > dim / 2 {
            return Err(Error::DimensionMismatch {
                expected: dim / 2,
                found: coefficients.len(),
            });
        }
        Ok(Self {
            dim,
            slater_number: count_above(&coefficients, threshold),
            pair_basis,
            coefficients,
            threshold,
        })
    }

    pub fn pair(&self, i: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        (self.pair_basis.column(2 * i), self.pair_basis.column(2 * i + 1))
    }

    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(self.dim, self.dim);
        for (i, &a) in self.coefficients.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let (u1, u2) = self.pair(i);
            let blk = ComplexMatrix::outer(&u1, &u2).sub(&ComplexMatrix::outer(&u2, &u1));
            c = c.add(&blk.scale(Complex64::new(a * FRAC_1_SQRT_2, 0.0)));
        }
        c
    }

    pub fn reconstruct(&self) -> Result<TwoParticleState> {
        TwoParticleState::from_matrix(self.dim, Statistics::Fermion, self.coefficient_matrix())
    }
}

/// `|ψ⟩ = Σ b_i |i⟩|i⟩`.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub dim: usize,
    pub basis: UnitaryMatrix,
    /// Real, nonnegative, descending, `Σ b_i² = 1`.
    pub coefficients: Vec<f64>,
    pub schmidt_number: usize,
    pub threshold: f64,
}

impl SchmidtDecomposition {
    pub fn from_parts(basis: UnitaryMatrix, coefficients: Vec<f64>, threshold: f64) -> Result<Self> {
        check_eps(threshold)?;
        check_coefficients(&coefficients)?;
        let dim = basis.dim();
        if coefficients.len() > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coefficients.len(),
            });
        }
        Ok(Self {
            dim,
            schmidt_number: count_above(&coefficients, threshold),
            basis,
            coefficients,
            threshold,
        })
    }

    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(self.dim, self.dim);
        for (k, &b) in self.coefficients.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            let u = self.basis.column(k);
            c = c.add(&ComplexMatrix::outer(&u, &u).scale(Complex64::new(b, 0.0)));
        }
        c
    }

    pub fn reconstruct(&self) -> Result<TwoParticleState> {
        TwoParticleState::from_matrix(self.dim, Statistics::Boson, self.coefficient_matrix())
    }
}

/// Biorthonormal decomposition `M = Σ σ_i |l_i⟩ ⊗ |r_i⟩` for two
/// distinguishable particles.
#[derive(Clone, Debug)]
pub struct DistinguishableSchmidt {
    pub left: UnitaryMatrix,
    pub right: UnitaryMatrix,
    pub coefficients: Vec<f64>,
    pub schmidt_number: usize,
    pub threshold: f64,
}

impl DistinguishableSchmidt {
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(self.left.dim(), self.right.dim());
        for (k, &s) in self.coefficients.iter().enumerate() {
            let l = self.left.column(k);
            let r = self.right.column(k);
            c = c.add(&ComplexMatrix::outer(&l, &r).scale(Complex64::new(s, 0.0)));
        }
        c
    }
}

/// Either decomposition, chosen by the state's statistics.
#[derive(Clone, Debug)]
pub enum Decomposition {
    Slater(SlaterDecomposition),
    Schmidt(SchmidtDecomposition),
}

impl Decomposition {
    pub fn coefficients(&self) -> &[f64] {
        match self {
            Decomposition::Slater(d) => &d.coefficients,
            Decomposition::Schmidt(d) => &d.coefficients,
        }
    }

    /// Slater or Schmidt number.
    pub fn number(&self) -> usize {
        match self {
            Decomposition::Slater(d) => d.slater_number,
            Decomposition::Schmidt(d) => d.schmidt_number,
        }
    }

    pub fn basis(&self) -> &UnitaryMatrix {
        match self {
            Decomposition::Slater(d) => &d.pair_basis,
            Decomposition::Schmidt(d) => &d.basis,
        }
    }

    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        match self {
            Decomposition::Slater(d) => d.coefficient_matrix(),
            Decomposition::Schmidt(d) => d.coefficient_matrix(),
        }
    }

    pub fn reconstruct(&self) -> Result<TwoParticleState> {
        match self {
            Decomposition::Slater(d) => d.reconstruct(),
            Decomposition::Schmidt(d) => d.reconstruct(),
        }
    }
}

pub fn decompose(psi: &TwoParticleState, eps: f64) -> Result<Decomposition> {
    match psi.statistics() {
        Statistics::Fermion => slater_decompose(psi, eps).map(Decomposition::Slater),
        Statistics::Boson => schmidt_decompose(psi, eps).map(Decomposition::Schmidt),
    }
}

fn require(psi: &TwoParticleState, stats: Statistics) -> Result<()> {
    if psi.statistics() != stats {
        return Err(Error::WrongSymmetry {
            statistics: stats.as_str(),
            residual: psi
                .coeffs()
                .transpose_residual(-stats.exchange_sign()),
        });
    }
    Ok(())
}

/// Slater decomposition of a fermion state via the Youla form of `C`.
pub fn slater_decompose(psi: &TwoParticleState, eps: f64) -> Result<SlaterDecomposition> {
    require(psi, Statistics::Fermion)?;
    check_eps(eps)?;
    let y = youla_antisymmetric(psi.coeffs())?;
    let coefficients: Vec<f64> = y.z.iter().map(|z| z * SQRT_2).collect();
    Ok(SlaterDecomposition {
        dim: psi.dim(),
        slater_number: count_above(&coefficients, eps),
        pair_basis: y.u,
        coefficients,
        threshold: eps,
    })
}

/// Bosonic Schmidt decomposition via the Takagi factorization of `C`.
pub fn schmidt_decompose(psi: &TwoParticleState, eps: f64) -> Result<SchmidtDecomposition> {
    require(psi, Statistics::Boson)?;
    check_eps(eps)?;
    let t = takagi(psi.coeffs())?;
    Ok(SchmidtDecomposition {
        dim: psi.dim(),
        schmidt_number: count_above(&t.b, eps),
        basis: t.u,
        coefficients: t.b,
        threshold: eps,
    })
}

/// SVD-based Schmidt decomposition of a normalized coefficient matrix,
/// treating the two particles as distinguishable.
pub fn schmidt_distinguishable(m: &ComplexMatrix, eps: f64) -> Result<DistinguishableSchmidt> {
    check_eps(eps)?;
    let n = m.frobenius_norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: n });
    }
    let s = svd(m)?;
    // M = U Σ V† = Σ σ_k u_k (v̄_k)ᵀ
    let right = UnitaryMatrix::new(s.v.matrix().conj(), crate::linalg::UNITARY_TOL)?;
    Ok(DistinguishableSchmidt {
        schmidt_number: count_above(&s.sigma, eps),
        left: s.u,
        right,
        coefficients: s.sigma,
        threshold: eps,
    })
}
