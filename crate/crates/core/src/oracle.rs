//! Brute-force verifiers. None of these reuse the fast kernels they check:
//! entropies go through the full `d²×d²` density operator and an explicit
//! partial trace, diagonalized with nalgebra; property functionals are
//! evaluated by index summation over the `d²` amplitude vector.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::analysis::{entropy_from_schmidt, entropy_from_slater, reduced_density, von_neumann_entropy};
use crate::classify::{classify, Verdict};
use crate::decomp::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::properties::{find_property_projector, SearchOptions};
use crate::random::{rng, unit_vector};
use crate::states::{Statistics, TwoParticleState};

/// Largest single-particle dimension the brute-force oracles accept.
pub const MAX_BRUTE_DIM: usize = 16;
/// Tolerance of [`reconstruction_check`].
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

const SHARDS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationOutcome {
    pub check_name: String,
    pub passed: bool,
    pub measured_error: f64,
    pub tolerance: f64,
}

impl VerificationOutcome {
    pub fn new(check_name: impl Into<String>, measured_error: f64, tolerance: f64) -> Self {
        Self {
            check_name: check_name.into(),
            passed: measured_error <= tolerance,
            measured_error,
            tolerance,
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_BRUTE_DIM {
        return Err(Error::DimensionTooLarge { dim: d, max: MAX_BRUTE_DIM });
    }
    Ok(())
}

/// Eigenpairs of a Hermitian matrix through the real symmetric embedding
/// `[[Re H, −Im H], [Im H, Re H]]`; every eigenvalue appears twice.
fn embedded_eigen(h: &DMatrix<Complex64>) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let n = h.nrows();
    let emb = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    SymmetricEigen::new(emb)
}

/// `ρ` by explicit partial trace of the full `|ψ⟩⟨ψ|` over the second slot.
fn brute_reduced_density(psi: &TwoParticleState) -> DMatrix<Complex64> {
    let d = psi.dim();
    let amp = psi.amplitudes();
    let full = DMatrix::<Complex64>::from_fn(d * d, d * d, |r, c| amp[r] * amp[c].conj());
    DMatrix::from_fn(d, d, |i, k| (0..d).map(|j| full[(i * d + j, k * d + j)]).sum())
}

/// Von Neumann entropy (bits) of the one-particle reduced density.
pub fn brute_entropy(psi: &TwoParticleState) -> Result<f64> {
    let d = psi.dim();
    check_dim(d)?;
    let eig = embedded_eigen(&brute_reduced_density(psi));
    let mut lambda: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    lambda.sort_by(|a, b| a.total_cmp(b));
    let s: f64 = lambda
        .iter()
        .step_by(2)
        .filter(|&&x| x >= 1e-12)
        .map(|&x| -x * x.log2())
        .sum();
    Ok(s.clamp(0.0, (d as f64).log2()))
}

/// `⟨a b|ψ⟩ = Σ_ij ā_i b̄_j ψ_{id+j}`.
fn amplitude(psi: &[Complex64], d: usize, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            s += a[i].conj() * b[j].conj() * psi[i * d + j];
        }
    }
    s
}

/// `⟨ψ|P⊗I + I⊗P − P⊗P|ψ⟩` by index summation.
fn ep_brute(psi: &[Complex64], d: usize, p: &[Complex64]) -> f64 {
    let mut first = 0.0;
    let mut second = 0.0;
    for k in 0..d {
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        for i in 0..d {
            a += p[i].conj() * psi[i * d + k];
            b += p[i].conj() * psi[k * d + i];
        }
        first += a.norm_sqr();
        second += b.norm_sqr();
    }
    first + second - amplitude(psi, d, p, p).norm_sqr()
}

fn density_eigenvectors(psi: &TwoParticleState) -> Vec<Vec<Complex64>> {
    let d = psi.dim();
    let eig = embedded_eigen(&brute_reduced_density(psi));
    (0..2 * d)
        .map(|k| {
            let v = eig.eigenvectors.column(k);
            (0..d).map(|i| Complex64::new(v[i], v[d + i])).collect()
        })
        .collect()
}

fn sharded_max<F>(samples: usize, seed: u64, exec: Execution, f: F) -> f64
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync + Send,
{
    let per = samples.div_ceil(SHARDS);
    exec.map_indexed(SHARDS, |s| {
        let mut r = rng(seed, 1000 + s as u64);
        let count = per.min(samples.saturating_sub(s * per));
        (0..count).map(|_| f(&mut r)).fold(0.0, f64::max)
    })
    .into_iter()
    .fold(0.0, f64::max)
}

/// Largest `⟨ψ|E_P|ψ⟩` over the ρ eigenvectors and `samples` uniformly
/// random unit vectors. A lower bound on the supremum.
pub fn brute_max_ep(psi: &TwoParticleState, samples: usize, seed: u64, exec: Execution) -> Result<f64> {
    let d = psi.dim();
    check_dim(d)?;
    let amp = psi.amplitudes();
    let exact = density_eigenvectors(psi)
        .iter()
        .map(|p| ep_brute(amp, d, p))
        .fold(0.0, f64::max);
    let sampled = sharded_max(samples, seed, exec, |r| ep_brute(amp, d, &unit_vector(r, d)));
    Ok(exact.max(sampled).clamp(0.0, 1.0))
}

/// Largest `max(⟨P⊗P⟩, ⟨P⊗Q + Q⊗P⟩)` over `samples` random orthonormal
/// pairs `(p, q)`. A lower bound on the both-constituents functional.
pub fn brute_max_pair(psi: &TwoParticleState, samples: usize, seed: u64, exec: Execution) -> Result<f64> {
    let d = psi.dim();
    check_dim(d)?;
    let amp = psi.amplitudes();
    let best = sharded_max(samples, seed, exec, |r| {
        let p = unit_vector(r, d);
        let mut q = unit_vector(r, d);
        let c: Complex64 = p.iter().zip(&q).map(|(a, b)| a.conj() * b).sum();
        for (qi, pi) in q.iter_mut().zip(&p) {
            *qi -= c * pi;
        }
        let nq = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.iter_mut().for_each(|z| *z /= nq);
        let pp = amplitude(amp, d, &p, &p).norm_sqr();
        let pq = amplitude(amp, d, &p, &q).norm_sqr() + amplitude(amp, d, &q, &p).norm_sqr();
        pp.max(pq)
    });
    Ok(best.clamp(0.0, 1.0))
}

/// `min_θ ‖a − e^{iθ} b‖` over flattened coefficient vectors.
fn aligned_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ov: Complex64 = b.iter().zip(a).map(|(x, y)| x.conj() * y).sum();
    let ph = if ov.norm() > 0.0 { ov / ov.norm() } else { Complex64::new(1.0, 0.0) };
    a.iter().zip(b).map(|(x, y)| (x - y * ph).norm_sqr()).sum::<f64>().sqrt()
}

/// Phase-aligned distance between `ψ` and the state rebuilt from `dec`.
pub fn check_decomposition(psi: &TwoParticleState, dec: &Decomposition) -> VerificationOutcome {
    let rebuilt = dec.coefficient_matrix();
    let err = if rebuilt.rows() == psi.dim() {
        aligned_distance(psi.amplitudes(), rebuilt.as_slice())
    } else {
        f64::INFINITY
    };
    VerificationOutcome::new("reconstruction", err, RECONSTRUCTION_TOL)
}

/// Decomposes per statistics, rebuilds, and compares with `ψ`.
pub fn reconstruction_check(psi: &TwoParticleState, eps: f64) -> Result<VerificationOutcome> {
    Ok(check_decomposition(psi, &decompose(psi, eps)?))
}

/// The full oracle suite run by `twinstate verify`.
pub fn verify_all(
    psi: &TwoParticleState,
    eps: f64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<VerificationOutcome>> {
    let dec = decompose(psi, eps)?;
    let mut out = vec![check_decomposition(psi, &dec)];

    let brute = brute_entropy(psi)?;
    let fast = von_neumann_entropy(&reduced_density(psi))?;
    out.push(VerificationOutcome::new("entropy-vs-brute", (fast - brute).abs(), 1e-9));
    let closed = match (&dec, psi.statistics()) {
        (Decomposition::Slater(s), Statistics::Fermion) => entropy_from_slater(&s.coefficients)?,
        (Decomposition::Schmidt(s), _) => entropy_from_schmidt(&s.coefficients)?,
        _ => unreachable!("decompose follows the statistics"),
    };
    out.push(VerificationOutcome::new("closed-form-entropy-vs-brute", (closed - brute).abs(), 1e-9));

    let opts = SearchOptions { seed, execution: exec, ..SearchOptions::default() };
    let report = find_property_projector(psi, &opts)?;
    let verdict = classify(psi, eps)?.verdict;
    let agree = (verdict == Verdict::NonEntangled) == report.attained;
    out.push(VerificationOutcome::new("verdict-matches-property-attainment", if agree { 0.0 } else { 1.0 }, 0.0));

    let pair = brute_max_pair(psi, samples, seed, exec)?;
    out.push(VerificationOutcome::new(
        "sampled-pair-below-search",
        (pair - report.max_value).max(0.0),
        1e-6,
    ));
    let ep = brute_max_ep(psi, samples, seed, exec)?;
    out.push(VerificationOutcome::new(
        "sampled-ep-below-search",
        (ep - report.one_particle_max).max(0.0),
        1e-6,
    ));
    Ok(out)
}
