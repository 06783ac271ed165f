//! Pure states of two identical particles and their constructors.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, norm, ComplexMatrix};
use crate::random::{gaussian_matrix, rng};

/// Exchange statistics of the two particles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
        }
    }

    /// `-1` for fermions (`C = −Cᵀ`), `+1` for bosons.
    pub fn exchange_sign(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            Statistics::Boson => 1.0,
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "fermion" | "fermions" => Ok(Statistics::Fermion),
            "boson" | "bosons" => Ok(Statistics::Boson),
            other => Err(format!("unknown statistics {other:?} (expected fermion or boson)")),
        }
    }
}

/// Unit vector of the one-particle space.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleParticleVector(Vec<Complex64>);

impl SingleParticleVector {
    /// Accepts amplitudes that are already normalized within 1e-10.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall {
                dim: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self(amplitudes))
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall {
                dim: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self(amplitudes.into_iter().map(|z| z / n).collect()))
    }

    /// Standard basis vector `|index+1⟩` of ℂᵈ.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(dim >= 2 && index < dim);
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[index] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        inner(&self.0, &other.0)
    }
}

/// `|ψ⟩ = Σ C_ij |i⟩⊗|j⟩` with `C = ∓Cᵀ` and `‖C‖_F = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleState {
    statistics: Statistics,
    coeffs: ComplexMatrix,
}

const SYMMETRY_TOL: f64 = 1e-10;
const RENORMALIZE_TOL: f64 = 1e-6;

impl TwoParticleState {
    /// Validates `c` as a `d×d` coefficient matrix. A norm within 1e-6 of
    /// one is rescaled to exactly one; the matrix is then projected onto
    /// the exchange-symmetric subspace if its residual is within 1e-10.
    pub fn from_matrix(dim: usize, statistics: Statistics, c: ComplexMatrix) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim });
        }
        if c.rows() != dim || c.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: if c.rows() != dim { c.rows() } else { c.cols() },
            });
        }
        if !c.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = c.frobenius_norm();
        if (n - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        let c = c.scale(Complex64::new(1.0 / n, 0.0));
        let sign = statistics.exchange_sign();
        // |C ∓ Cᵀ|: fermions need C + Cᵀ = 0, bosons C − Cᵀ = 0.
        let residual = c.transpose_residual(-sign);
        if residual > SYMMETRY_TOL {
            return Err(Error::WrongSymmetry {
                statistics: statistics.as_str(),
                residual,
            });
        }
        Ok(Self::from_projected(statistics, c))
    }

    /// Projects onto the (anti)symmetric part and renormalizes.
    fn from_projected(statistics: Statistics, c: ComplexMatrix) -> Self {
        let sign = statistics.exchange_sign();
        let p = c
            .add(&c.transpose().scale(Complex64::new(sign, 0.0)))
            .scale(Complex64::new(0.5, 0.0));
        let n = p.frobenius_norm();
        Self {
            statistics,
            coeffs: p.scale(Complex64::new(1.0 / n, 0.0)),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    /// Amplitudes of `|ψ⟩` in the product basis, index `i·d + j`.
    pub fn amplitudes(&self) -> &[Complex64] {
        self.coeffs.as_slice()
    }

    /// `max |C ∓ Cᵀ|` for the state's own statistics.
    pub fn symmetry_residual(&self) -> f64 {
        self.coeffs
            .transpose_residual(-self.statistics.exchange_sign())
    }

    /// Same state with the first non-negligible coefficient (row-major)
    /// made real and positive.
    pub fn canonical_phase(&self) -> Self {
        let scale = self.coeffs.max_abs();
        let lead = self
            .amplitudes()
            .iter()
            .find(|z| z.norm() > 1e-12 * scale)
            .copied();
        match lead {
            Some(z) => Self {
                statistics: self.statistics,
                coeffs: self.coeffs.scale(z.conj() / z.norm()),
            },
            None => self.clone(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        inner(self.amplitudes(), other.amplitudes())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.overlap(other).norm_sqr()
    }

    /// `min_θ ‖C₁ − e^{iθ} C₂‖_F`.
    pub fn phase_aligned_distance(&self, other: &Self) -> f64 {
        phase_aligned_distance(&self.coeffs, &other.coeffs)
    }
}

/// `min_θ ‖a − e^{iθ} b‖_F`.
pub fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let ov = inner(b.as_slice(), a.as_slice());
    let ph = if ov.norm() > 0.0 {
        ov / ov.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.sub(&b.scale(ph)).frobenius_norm()
}

/// Normalized `φ⊗χ − χ⊗φ`.
pub fn antisymmetrize(phi: &SingleParticleVector, chi: &SingleParticleVector) -> Result<TwoParticleState> {
    if phi.dim() != chi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: chi.dim(),
        });
    }
    let ov = phi.inner(chi).norm();
    if ov >= 1.0 - 1e-12 {
        return Err(Error::LinearlyDependent { overlap: ov });
    }
    let p = phi.amplitudes();
    let x = chi.amplitudes();
    let c = ComplexMatrix::outer(p, x).sub(&ComplexMatrix::outer(x, p));
    let k = 1.0 / (2.0 * (1.0 - ov * ov)).sqrt();
    TwoParticleState::from_matrix(phi.dim(), Statistics::Fermion, c.scale(Complex64::new(k, 0.0)))
}

/// Normalized `φ⊗χ + χ⊗φ`; for `φ = χ` this is the product `φ⊗φ`.
pub fn symmetrize(phi: &SingleParticleVector, chi: &SingleParticleVector) -> Result<TwoParticleState> {
    if phi.dim() != chi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: chi.dim(),
        });
    }
    let ov = phi.inner(chi).norm();
    let p = phi.amplitudes();
    let x = chi.amplitudes();
    let c = ComplexMatrix::outer(p, x).add(&ComplexMatrix::outer(x, p));
    let k = 1.0 / (2.0 * (1.0 + ov * ov)).sqrt();
    TwoParticleState::from_matrix(phi.dim(), Statistics::Boson, c.scale(Complex64::new(k, 0.0)))
}

/// Gaussian coefficient matrix projected onto the (anti)symmetric subspace.
/// Deterministic in `seed`.
pub fn random_state(dim: usize, statistics: Statistics, seed: u64) -> Result<TwoParticleState> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim });
    }
    let g = gaussian_matrix(&mut rng(seed, 0), dim, dim);
    Ok(TwoParticleState::from_projected(statistics, g).canonical_phase())
}
