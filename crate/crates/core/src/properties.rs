//! Property attribution: the expectation of
//! `E_P = P⊗(I−P) + (I−P)⊗P + P⊗P` for a rank-one projector `P = |p⟩⟨p|`,
//! and a search for projectors that give each constituent a definite state.
//!
//! Writing `x(p) = Cᵀ p̄` (so `⟨p|ρ|p⟩ = ‖x‖²`) the quantities involved are
//!
//! * `f(p) = |p†x|² = ⟨ψ|P⊗P|ψ⟩` — both particles in `|p⟩`;
//! * `g(p) = 2‖x − p(p†x)‖² = max_{q⊥p} ⟨ψ|P⊗Q + Q⊗P|ψ⟩` — one particle in
//!   `|p⟩`, the other in the best orthogonal `|q⟩`;
//! * `ep(p) = 2‖x‖² − f(p) = f(p) + g(p)`.
//!
//! Both constituents possess a complete set of properties iff
//! `Φ = sup_p max(f, g) = 1`. Since `ep ≥ max(f, g)`, such a `p` also gives
//! `⟨ψ|E_P|ψ⟩ = 1`. The converse fails for bosons (every `d = 2` boson state
//! has `sup ep = 1`), so attainment is decided by `Φ`; `sup ep` is reported
//! separately as `one_particle_max`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::analysis::reduced_density;
use crate::decomp::{decompose, Decomposition, DEFAULT_COUNT_EPS};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{conj_vec, hermitian_eigen, inner, norm, ComplexMatrix};
use crate::random::{rng, unit_vector};
use crate::states::{SingleParticleVector, Statistics, TwoParticleState};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_RESTARTS: usize = 32;

const MAX_ITERATIONS: usize = 5000;
/// Ascent stops once a step gains less than this.
const COARSE_GAIN: f64 = 1e-10;
const FINE_GAIN: f64 = 1e-15;

/// `⟨ψ|E_P|ψ⟩ = 2⟨p|ρ|p⟩ − |p†Cp̄|²`, clamped to `[0, 1]`.
pub fn ep_expectation(psi: &TwoParticleState, p: &SingleParticleVector) -> Result<f64> {
    if p.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: p.dim(),
        });
    }
    let v = Functional::new(psi.coeffs()).evaluate(p.amplitudes());
    Ok(v.ep.clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Attainment tolerance: attained iff `max_value ≥ 1 − tol`.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    /// Best `Φ` found; a lower bound on the supremum.
    pub max_value: f64,
    /// Projector direction for the first particle.
    pub argmax: SingleParticleVector,
    /// Orthogonal direction for the second particle, or `None` when both
    /// particles share `argmax`.
    pub partner: Option<SingleParticleVector>,
    pub attained: bool,
    /// Random restarts actually run (zero when an exact candidate attains).
    pub restarts_used: usize,
    pub tolerance: f64,
    /// Best `⟨ψ|E_P|ψ⟩` found, for the single-projector reading.
    pub one_particle_max: f64,
}

/// Searches for the projector(s) maximizing `Φ`: exact candidates from the
/// reduced density and the decomposition first, then projected gradient
/// ascent from `restarts` random starts (run in parallel when requested;
/// the merge takes the best value, ties going to the lowest index).
pub fn find_property_projector(psi: &TwoParticleState, opts: &SearchOptions) -> Result<PropertyReport> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: opts.tol,
        });
    }
    let func = Functional::new(psi.coeffs());
    let mut best = Best::default();
    for p in candidates(psi)? {
        best.offer(&func, p);
    }

    // Φ ≤ 1, so an exact candidate at 1 cannot be improved upon.
    let restarts_used = if best.phi.0 >= 1.0 - 1e-12 { 0 } else { opts.restarts };
    let d = psi.dim();
    // For fermions f ≡ 0, so g and ep coincide and one ascent covers both.
    let objectives: &[Objective] = match psi.statistics() {
        Statistics::Fermion => &[Objective::Pair],
        Statistics::Boson => &[Objective::Single, Objective::Pair, Objective::Ep],
    };
    let runs = opts.execution.map_indexed(restarts_used, |r| {
        let start = unit_vector(&mut rng(opts.seed, r as u64 + 1), d);
        let mut local = Best::default();
        for &obj in objectives {
            local.offer(&func, func.ascend(obj, start.clone(), COARSE_GAIN));
        }
        local
    });
    for run in runs {
        best.merge(run);
    }
    if restarts_used > 0 {
        // Polish only the winners.
        let obj = if best.phi_is_pair { Objective::Pair } else { Objective::Single };
        let p = func.ascend(obj, best.phi.1.clone(), FINE_GAIN);
        best.offer(&func, p);
        let p = func.ascend(Objective::Ep, best.ep.1.clone(), FINE_GAIN);
        best.offer(&func, p);
    }

    let one_particle_max = best.ep.0.clamp(0.0, 1.0);
    let (max_value, p) = best.phi;
    let max_value = max_value.clamp(0.0, 1.0);
    let partner = if best.phi_is_pair {
        Some(SingleParticleVector::normalized(func.partner(&p))?)
    } else {
        None
    };
    Ok(PropertyReport {
        max_value,
        argmax: SingleParticleVector::normalized(p)?,
        partner,
        attained: max_value >= 1.0 - opts.tol,
        restarts_used,
        tolerance: opts.tol,
        one_particle_max,
    })
}

/// Eigenvectors of ρ, decomposition columns, and for bosons the
/// `(u₁ ± i u₂)/√2` and `√b₁u₁ ± i√b₂u₂` directions.
fn candidates(psi: &TwoParticleState) -> Result<Vec<Vec<Complex64>>> {
    let mut out = hermitian_eigen(reduced_density(psi).matrix())?
        .eigenvectors
        .matrix()
        .columns();
    let dec = decompose(psi, DEFAULT_COUNT_EPS)?;
    out.extend(dec.basis().matrix().columns());
    if let Decomposition::Schmidt(s) = &dec {
        let (u1, u2) = (s.basis.column(0), s.basis.column(1));
        let (b1, b2) = (s.coefficients[0], s.coefficients.get(1).copied().unwrap_or(0.0));
        for (w1, w2) in [(FRAC_1_SQRT_2, FRAC_1_SQRT_2), (b1.sqrt(), b2.sqrt())] {
            for sign in [1.0, -1.0] {
                let v: Vec<Complex64> = u1
                    .iter()
                    .zip(&u2)
                    .map(|(&a, &b)| a * w1 + Complex64::new(0.0, sign * w2) * b)
                    .collect();
                if norm(&v) > 1e-12 {
                    out.push(v);
                }
            }
        }
    }
    for v in &mut out {
        let n = norm(v);
        v.iter_mut().for_each(|z| *z /= n);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
enum Objective {
    Single,
    Pair,
    Ep,
}

#[derive(Clone, Copy, Debug)]
struct Values {
    f: f64,
    g: f64,
    ep: f64,
}

struct Functional<'a> {
    c: &'a ComplexMatrix,
    ct: ComplexMatrix,
    c_adj: ComplexMatrix,
    sym: ComplexMatrix,
}

impl<'a> Functional<'a> {
    fn new(c: &'a ComplexMatrix) -> Self {
        let ct = c.transpose();
        let sym = c.add(&ct);
        Self { c, c_adj: c.adjoint(), ct, sym }
    }

    /// `x = Cᵀ p̄`.
    fn x(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.ct.mul_vec(&conj_vec(p))
    }

    fn evaluate(&self, p: &[Complex64]) -> Values {
        let x = self.x(p);
        let nx = x.iter().map(Complex64::norm_sqr).sum::<f64>();
        let f = inner(p, &x).norm_sqr();
        let g = 2.0 * (nx - f).max(0.0);
        Values { f, g, ep: 2.0 * nx - f }
    }

    fn value(&self, obj: Objective, p: &[Complex64]) -> f64 {
        let v = self.evaluate(p);
        match obj {
            Objective::Single => v.f,
            Objective::Pair => v.g,
            Objective::Ep => v.ep,
        }
    }

    /// Wirtinger gradient `∂/∂p̄` of the objective.
    fn gradient(&self, obj: Objective, p: &[Complex64]) -> Vec<Complex64> {
        // s = p†Cp̄, ∂f/∂p̄ = s̄ (C + Cᵀ) p̄; ∂‖x‖²/∂p̄ = ρp = C C† p.
        let s = inner(p, &self.x(p));
        let grad_f: Vec<Complex64> = self
            .sym
            .mul_vec(&conj_vec(p))
            .into_iter()
            .map(|z| z * s.conj())
            .collect();
        let rho_p = || self.c.mul_vec(&self.c_adj.mul_vec(p));
        match obj {
            Objective::Single => grad_f,
            Objective::Pair => rho_p()
                .iter()
                .zip(&grad_f)
                .map(|(a, b)| (a - b) * 2.0)
                .collect(),
            Objective::Ep => rho_p()
                .iter()
                .zip(&grad_f)
                .map(|(a, b)| a * 2.0 - b)
                .collect(),
        }
    }

    /// Projected gradient ascent on the unit sphere with an adaptive step.
    fn ascend(&self, obj: Objective, mut p: Vec<Complex64>, min_gain: f64) -> Vec<Complex64> {
        let mut value = self.value(obj, &p);
        let mut step = 1.0;
        for _ in 0..MAX_ITERATIONS {
            let mut g = self.gradient(obj, &p);
            let radial = inner(&p, &g).re;
            for (gi, pi) in g.iter_mut().zip(&p) {
                *gi -= pi * radial;
            }
            if norm(&g) < 1e-14 {
                break;
            }
            loop {
                let mut trial: Vec<Complex64> = p.iter().zip(&g).map(|(a, b)| a + b * step).collect();
                let n = norm(&trial);
                trial.iter_mut().for_each(|z| *z /= n);
                let v = self.value(obj, &trial);
                if v > value {
                    let gain = v - value;
                    p = trial;
                    value = v;
                    step = (step * 2.0).min(1e3);
                    if gain < min_gain {
                        return p;
                    }
                    break;
                }
                step *= 0.5;
                if step < 1e-12 {
                    return p;
                }
            }
        }
        p
    }

    /// Unit `q ⊥ p` maximizing `|p†Cq̄|`, i.e. the direction of `x − p(p†x)`.
    fn partner(&self, p: &[Complex64]) -> Vec<Complex64> {
        let mut x = self.x(p);
        let c = inner(p, &x);
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi -= c * pi;
        }
        x
    }
}

#[derive(Default)]
struct Best {
    phi: (f64, Vec<Complex64>),
    phi_is_pair: bool,
    ep: (f64, Vec<Complex64>),
}

impl Best {
    fn offer(&mut self, func: &Functional, p: Vec<Complex64>) {
        let v = func.evaluate(&p);
        if v.ep > self.ep.0 || self.ep.1.is_empty() {
            self.ep = (v.ep, p.clone());
        }
        // Prefer the shared-state reading on ties.
        let (val, pair) = if v.g > v.f { (v.g, true) } else { (v.f, false) };
        if val > self.phi.0 || self.phi.1.is_empty() {
            self.phi = (val, p);
            self.phi_is_pair = pair;
        }
    }

    fn merge(&mut self, other: Best) {
        if other.ep.0 > self.ep.0 {
            self.ep = other.ep;
        }
        if other.phi.0 > self.phi.0 {
            self.phi = other.phi;
            self.phi_is_pair = other.phi_is_pair;
        }
    }
}

/// Closed form of `Φ`: `a₁²` for fermions, `max(b₁², (b₁+b₂)²/2)` for bosons.
pub fn closed_form_max(dec: &Decomposition) -> f64 {
    let c = dec.coefficients();
    let c1 = c.first().copied().unwrap_or(0.0);
    let c2 = c.get(1).copied().unwrap_or(0.0);
    match dec {
        Decomposition::Slater(_) => c1 * c1,
        Decomposition::Schmidt(_) => (c1 * c1).max((c1 + c2).powi(2) / 2.0),
    }
}

/// `p†Cp̄ = ⟨p p|ψ⟩`; identically zero for fermions.
pub fn quadratic_term(psi: &TwoParticleState, p: &SingleParticleVector) -> Complex64 {
    let x = Functional::new(psi.coeffs()).x(p.amplitudes());
    inner(p.amplitudes(), &x)
}
