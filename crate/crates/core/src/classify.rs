//! The entanglement verdict for two identical particles.
//!
//! Fermions are non-entangled iff the Slater number is 1 (equivalently
//! `S = 1`). Bosons are non-entangled iff the Schmidt number is 1, or it is
//! 2 with equal coefficients (equivalently `S = 1`). Both criteria are
//! evaluated and cross-checked.

use std::fmt;

use num_complex::Complex64;

use crate::analysis::{reduced_density, von_neumann_entropy};
use crate::decomp::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::states::{SingleParticleVector, Statistics, TwoParticleState};

/// `|S − 1|` (or `S`) below this counts as equality.
pub const ENTROPY_TOL: f64 = 1e-7;
/// `|b₁ − b₂|` below this counts as equal coefficients.
pub const COEFFICIENT_TOL: f64 = 1e-8;
/// Values within this factor of a threshold are flagged marginal.
const MARGIN: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonEntangled,
    Entangled,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonEntangled => "non-entangled",
            Verdict::Entangled => "entangled",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which theorem decided the verdict. `marginal` marks inputs within a
/// factor of ten of one of the equality thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub marginal: bool,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id)?;
        if self.marginal {
            f.write_str(" (marginal)")?;
        }
        Ok(())
    }
}

/// A pair `(φ, χ)` whose (anti)symmetrization reproduces the state.
#[derive(Clone, Debug, PartialEq)]
pub struct Desymmetrized {
    pub phi: SingleParticleVector,
    pub chi: SingleParticleVector,
    /// `|⟨φ|χ⟩|`.
    pub overlap: f64,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub statistics: Statistics,
    /// Slater or Schmidt number.
    pub number: usize,
    /// Slater or Schmidt coefficients.
    pub coefficients: Vec<f64>,
    /// Von Neumann entropy of ρ, in bits.
    pub entropy: f64,
    pub verdict: Verdict,
    pub rule: Rule,
    pub factorizing_pair: Option<Desymmetrized>,
}

impl ClassificationReport {
    pub fn overlap(&self) -> Option<f64> {
        self.factorizing_pair.as_ref().map(|p| p.overlap)
    }
}

fn inconsistent(detail: String) -> Error {
    Error::NumericalInconsistency { detail }
}

fn near(x: f64, threshold: f64) -> bool {
    x > threshold / MARGIN && x <= threshold * MARGIN
}

pub fn classify(psi: &TwoParticleState, eps: f64) -> Result<ClassificationReport> {
    let dec = decompose(psi, eps)?;
    let entropy = von_neumann_entropy(&reduced_density(psi))?;
    let number = dec.number();
    let coefficients = dec.coefficients().to_vec();
    let count_marginal = coefficients.iter().any(|&c| near(c, eps));
    let dev = (entropy - 1.0).abs();
    let entropy_one = dev <= ENTROPY_TOL;

    let (verdict, id, marginal) = match (psi.statistics(), number) {
        (Statistics::Fermion, 1) => {
            if !entropy_one {
                return Err(inconsistent(format!(
                    "Slater number 1 but |S - 1| = {dev:e}"
                )));
            }
            (Verdict::NonEntangled, "fermion-slater-1", count_marginal || near(dev, ENTROPY_TOL))
        }
        (Statistics::Fermion, _) => (
            Verdict::Entangled,
            "fermion-slater-n",
            count_marginal || entropy_one || near(dev, ENTROPY_TOL),
        ),
        (Statistics::Boson, 1) => {
            if entropy > ENTROPY_TOL {
                return Err(inconsistent(format!("Schmidt number 1 but S = {entropy:e}")));
            }
            (Verdict::NonEntangled, "boson-schmidt-1", count_marginal || near(entropy, ENTROPY_TOL))
        }
        (Statistics::Boson, 2) => {
            let gap = coefficients[0] - coefficients[1];
            let coeff_equal = gap <= COEFFICIENT_TOL;
            if coeff_equal && !entropy_one {
                return Err(inconsistent(format!(
                    "equal Schmidt coefficients but |S - 1| = {dev:e}"
                )));
            }
            let marginal = count_marginal
                || near(dev, ENTROPY_TOL)
                || near(gap, COEFFICIENT_TOL)
                || coeff_equal != entropy_one;
            if entropy_one {
                (Verdict::NonEntangled, "boson-schmidt-2-equal", marginal)
            } else {
                (Verdict::Entangled, "boson-schmidt-2-unequal", marginal)
            }
        }
        (Statistics::Boson, _) => (Verdict::Entangled, "boson-schmidt-3plus", count_marginal),
    };

    Ok(ClassificationReport {
        statistics: psi.statistics(),
        number,
        coefficients,
        entropy,
        verdict,
        rule: Rule { id, marginal },
        factorizing_pair: pair_from(&dec)?,
    })
}

/// Single-particle vectors whose (anti)symmetrized product is `ψ` (up to
/// a global phase), or `None` when no such pair exists: Slater number ≥ 2
/// or Schmidt number ≥ 3.
pub fn desymmetrize(psi: &TwoParticleState, eps: f64) -> Result<Option<Desymmetrized>> {
    pair_from(&decompose(psi, eps)?)
}

fn pair_from(dec: &Decomposition) -> Result<Option<Desymmetrized>> {
    let pair = match dec {
        Decomposition::Slater(s) if s.slater_number == 1 => {
            let (u1, u2) = s.pair(0);
            Some((u1, u2))
        }
        Decomposition::Schmidt(s) if s.schmidt_number == 1 => {
            let u = s.basis.column(0);
            Some((u.clone(), u))
        }
        Decomposition::Schmidt(s) if s.schmidt_number == 2 => {
            // φ, χ ∝ √b₁ u₁ ± i √b₂ u₂
            let (u1, u2) = (s.basis.column(0), s.basis.column(1));
            let (w1, w2) = (s.coefficients[0].sqrt(), s.coefficients[1].sqrt());
            let mk = |sign: f64| -> Vec<Complex64> {
                u1.iter()
                    .zip(&u2)
                    .map(|(&a, &b)| a * w1 + Complex64::new(0.0, sign * w2) * b)
                    .collect()
            };
            Some((mk(1.0), mk(-1.0)))
        }
        _ => None,
    };
    pair.map(|(p, c)| {
        let phi = SingleParticleVector::normalized(p)?;
        let chi = SingleParticleVector::normalized(c)?;
        let overlap = phi.inner(&chi).norm();
        Ok(Desymmetrized { phi, chi, overlap })
    })
    .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::DEFAULT_COUNT_EPS;
    use crate::linalg::ComplexMatrix;
    use crate::states::{antisymmetrize, random_state, symmetrize};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn state(stats: Statistics, rows: &[&[f64]]) -> TwoParticleState {
        let m = ComplexMatrix::from_real_rows(rows);
        TwoParticleState::from_matrix(m.rows(), stats, m).unwrap()
    }

    fn boson_diag(b: &[f64]) -> TwoParticleState {
        let d: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        TwoParticleState::from_matrix(b.len(), Statistics::Boson, ComplexMatrix::from_diagonal(&d)).unwrap()
    }

    fn resymmetrize(psi: &TwoParticleState, p: &Desymmetrized) -> TwoParticleState {
        match psi.statistics() {
            Statistics::Fermion => antisymmetrize(&p.phi, &p.chi).unwrap(),
            Statistics::Boson => symmetrize(&p.phi, &p.chi).unwrap(),
        }
    }

    #[test]
    fn singlet() {
        let h = FRAC_1_SQRT_2;
        let s = state(Statistics::Fermion, &[&[0.0, h], &[-h, 0.0]]);
        let r = classify(&s, DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.number, r.verdict), (1, Verdict::NonEntangled));
        assert_eq!(r.rule.to_string(), "fermion-slater-1");
        assert!((r.entropy - 1.0).abs() < 1e-12);
        let p = r.factorizing_pair.unwrap();
        assert!(resymmetrize(&s, &p).phase_aligned_distance(&s) < 1e-12);
    }

    #[test]
    fn boson_examples() {
        let r = classify(&boson_diag(&[0.8f64.sqrt(), 0.2f64.sqrt()]), DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.number, r.verdict), (2, Verdict::Entangled));
        assert_eq!(r.rule.id, "boson-schmidt-2-unequal");
        assert!((r.entropy - 0.721928).abs() < 1e-6);
        assert!(!r.rule.marginal);

        let t = 1.0 / 3f64.sqrt();
        let r = classify(&boson_diag(&[t, t, t]), DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.number, r.verdict), (3, Verdict::Entangled));
        assert_eq!(r.rule.id, "boson-schmidt-3plus");
        assert!((r.entropy - 3f64.log2()).abs() < 1e-9);
        assert!(r.factorizing_pair.is_none() && r.overlap().is_none());

        let r = classify(&boson_diag(&[1.0, 0.0]), DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.rule.id, r.verdict), ("boson-schmidt-1", Verdict::NonEntangled));
    }

    #[test]
    fn equal_schmidt_pair_is_orthogonal() {
        let h = FRAC_1_SQRT_2;
        let s = boson_diag(&[h, h]);
        let r = classify(&s, DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.rule.id, r.verdict), ("boson-schmidt-2-equal", Verdict::NonEntangled));
        let p = desymmetrize(&s, DEFAULT_COUNT_EPS).unwrap().unwrap();
        assert!(p.overlap < 1e-12);
        let i = Complex64::new(0.0, h);
        assert!((p.phi.amplitudes()[0] - h).norm() < 1e-12 && (p.phi.amplitudes()[1] - i).norm() < 1e-12);
        assert!((p.chi.amplitudes()[1] + i).norm() < 1e-12);
        assert!(resymmetrize(&s, &p).fidelity(&s) > 1.0 - 1e-12);
    }

    #[test]
    fn unequal_schmidt_pair_overlap() {
        for (b1, b2) in [(0.8f64.sqrt(), 0.2f64.sqrt()), (0.99f64.sqrt(), 0.01f64.sqrt())] {
            let s = boson_diag(&[b1, b2]);
            let p = desymmetrize(&s, DEFAULT_COUNT_EPS).unwrap().unwrap();
            assert!((p.overlap - (b1 - b2) / (b1 + b2)).abs() < 1e-9);
            assert!(resymmetrize(&s, &p).phase_aligned_distance(&s) < 1e-9);
        }
        // (√0.8 − √0.2)/(√0.8 + √0.2) = 1/3
        let p = desymmetrize(&boson_diag(&[0.8f64.sqrt(), 0.2f64.sqrt()]), DEFAULT_COUNT_EPS)
            .unwrap()
            .unwrap();
        assert!((p.overlap - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_determinants_are_entangled() {
        let h = 0.5;
        let s = state(
            Statistics::Fermion,
            &[&[0.0, h, 0.0, 0.0], &[-h, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, h], &[0.0, 0.0, -h, 0.0]],
        );
        let r = classify(&s, DEFAULT_COUNT_EPS).unwrap();
        assert_eq!((r.number, r.verdict, r.rule.id), (2, Verdict::Entangled, "fermion-slater-n"));
        assert!((r.entropy - 2.0).abs() < 1e-12);
        assert!(desymmetrize(&s, DEFAULT_COUNT_EPS).unwrap().is_none());
    }

    #[test]
    fn random_pairs_round_trip() {
        for seed in 0..20 {
            let d = 2 + seed as usize % 6;
            for stats in [Statistics::Fermion, Statistics::Boson] {
                let s = random_state(d, stats, seed).unwrap();
                let r = classify(&s, DEFAULT_COUNT_EPS).unwrap();
                if let Some(p) = &r.factorizing_pair {
                    assert!(resymmetrize(&s, p).phase_aligned_distance(&s) < 1e-9);
                }
                // d = 2, 3 fermions are always single determinants.
                if stats == Statistics::Fermion && d <= 3 {
                    assert_eq!(r.verdict, Verdict::NonEntangled);
                }
            }
        }
    }

    #[test]
    fn near_threshold_is_marginal() {
        let b2: f64 = 5e-9;
        let b1 = (1.0 - b2 * b2).sqrt();
        let r = classify(&boson_diag(&[b1, b2]), DEFAULT_COUNT_EPS).unwrap();
        assert_eq!(r.number, 2);
        assert!(r.rule.marginal);
        assert!(r.rule.to_string().ends_with("(marginal)"));
        let b: f64 = FRAC_1_SQRT_2;
        let r = classify(&boson_diag(&[b + 1e-5, (1.0f64 - (b + 1e-5).powi(2)).sqrt()]), DEFAULT_COUNT_EPS).unwrap();
        // |S − 1| ≈ 3e-10 while b₁ − b₂ ≈ 2e-5
        assert_eq!(r.verdict, Verdict::NonEntangled);
        assert!(r.rule.marginal);
    }
}
