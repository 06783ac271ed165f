//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use twinstate::analysis::reduced_density;
use twinstate::linalg::{takagi, youla_antisymmetric, ComplexMatrix};
use twinstate::oracle::{brute_entropy, brute_max_ep};
use twinstate::random::{gaussian_matrix, rng, unit_vector};
use twinstate::states::{antisymmetrize, random_state, symmetrize};
use twinstate::{
    classify, decompose, desymmetrize, entropy_from_schmidt, entropy_from_slater,
    find_property_projector, von_neumann_entropy, Decomposition, Execution, SearchOptions,
    SingleParticleVector, Statistics, TwoParticleState, Verdict, DEFAULT_COUNT_EPS,
};

const EPS: f64 = DEFAULT_COUNT_EPS;

/// Collects the sub-checks of one criterion.
struct Criterion {
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new() -> Self {
        Self { failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn close(&mut self, measured: f64, expected: f64, tol: f64, name: &str) {
        self.check((measured - expected).abs() <= tol, || {
            format!("{name}: measured {measured:.17} expected {expected} (tol {tol:e})")
        });
    }
}

fn state(stats: Statistics, rows: &[&[f64]]) -> TwoParticleState {
    let m = ComplexMatrix::from_real_rows(rows);
    TwoParticleState::from_matrix(m.rows(), stats, m).unwrap()
}

fn boson_diag(b: &[f64]) -> TwoParticleState {
    let d: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    TwoParticleState::from_matrix(b.len(), Statistics::Boson, ComplexMatrix::from_diagonal(&d)).unwrap()
}

fn entropy(psi: &TwoParticleState) -> f64 {
    von_neumann_entropy(&reduced_density(psi)).unwrap()
}

fn spv(v: Vec<Complex64>) -> SingleParticleVector {
    SingleParticleVector::new(v).unwrap()
}

/// Unit vector orthogonal to `p`, drawn from `r`.
fn orthogonal_to(p: &[Complex64], r: &mut rand_chacha::ChaCha8Rng) -> Vec<Complex64> {
    let mut q = unit_vector(r, p.len());
    let c: Complex64 = p.iter().zip(&q).map(|(a, b)| a.conj() * b).sum();
    for (qi, pi) in q.iter_mut().zip(p) {
        *qi -= c * pi;
    }
    let n = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    q.into_iter().map(|z| z / n).collect()
}

fn criterion_1(c: &mut Criterion) {
    let h = FRAC_1_SQRT_2;
    let singlet = state(Statistics::Fermion, &[&[0.0, h], &[-h, 0.0]]);
    let mut r = rng(101, 0);
    let phi = spv(unit_vector(&mut r, 5));
    let chi = spv(unit_vector(&mut r, 5));
    let det5 = antisymmetrize(&phi, &chi).unwrap();
    for (name, psi) in [("singlet", singlet), ("d=5 determinant", det5)] {
        let rep = classify(&psi, EPS).unwrap();
        c.check(rep.number == 1, || format!("{name}: slater number {}", rep.number));
        c.close(rep.entropy, 1.0, 1e-9, &format!("{name}: entropy"));
        c.check(rep.verdict == Verdict::NonEntangled, || format!("{name}: verdict {}", rep.verdict));
        let prop = find_property_projector(&psi, &SearchOptions::default()).unwrap();
        c.check(prop.attained && prop.max_value >= 1.0 - 1e-9, || {
            format!("{name}: property max {}", prop.max_value)
        });
    }
}

fn criterion_2(c: &mut Criterion) {
    let h = 0.5;
    let psi = state(
        Statistics::Fermion,
        &[&[0.0, h, 0.0, 0.0], &[-h, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, h], &[0.0, 0.0, -h, 0.0]],
    );
    let rep = classify(&psi, EPS).unwrap();
    c.close(rep.entropy, 2.0, 1e-9, "entropy");
    c.check(rep.entropy > 1.0, || format!("entropy {} not > 1", rep.entropy));
    c.check(rep.verdict == Verdict::Entangled, || format!("verdict {}", rep.verdict));
    let m = brute_max_ep(&psi, 10_000, 2, Execution::default()).unwrap();
    c.check(m <= 0.5 + 1e-9, || format!("sampled max {m} > 0.5 + 1e-9"));
}

fn criterion_3(c: &mut Criterion) {
    let h = FRAC_1_SQRT_2;
    let psi = boson_diag(&[h, h]);
    let rep = classify(&psi, EPS).unwrap();
    c.check(rep.number == 2, || format!("schmidt number {}", rep.number));
    c.close(rep.entropy, 1.0, 1e-9, "entropy");
    c.check(rep.verdict == Verdict::NonEntangled, || format!("verdict {}", rep.verdict));
    match desymmetrize(&psi, EPS).unwrap() {
        Some(p) => {
            c.check(p.overlap < 1e-9, || format!("overlap {}", p.overlap));
            let f = symmetrize(&p.phi, &p.chi).unwrap().fidelity(&psi);
            c.check(f >= 1.0 - 1e-9, || format!("resymmetrization fidelity {f}"));
        }
        None => c.check(false, || "desymmetrize returned no pair".into()),
    }
}

fn criterion_4(c: &mut Criterion) {
    let (b1, b2) = (0.8f64.sqrt(), 0.2f64.sqrt());
    let psi = boson_diag(&[b1, b2]);
    let rep = classify(&psi, EPS).unwrap();
    c.close(rep.entropy, 0.721928, 1e-6, "entropy");
    c.check(rep.entropy > 0.0 && rep.entropy < 1.0, || format!("entropy {} outside (0,1)", rep.entropy));
    c.check(rep.verdict == Verdict::Entangled, || format!("verdict {}", rep.verdict));
    match desymmetrize(&psi, EPS).unwrap() {
        Some(p) => c.close(p.overlap, 0.6, 1e-9, "desymmetrize overlap"),
        None => c.check(false, || "desymmetrize returned no pair".into()),
    }
    let dec = decompose(&psi, EPS).unwrap();
    let top = dec.coefficients().iter().map(|b| b * b).fold(0.0, f64::max);
    c.close(top, 0.8, 1e-12, "max(b1^2, b2^2)");
    c.check(top > 0.5, || format!("max(b1^2, b2^2) = {top} not > 1/2"));
}

fn criterion_5(c: &mut Criterion) {
    let t = 1.0 / 3f64.sqrt();
    let psi = boson_diag(&[t, t, t]);
    let rep = classify(&psi, EPS).unwrap();
    c.close(rep.entropy, 3f64.log2(), 1e-9, "entropy");
    c.check(rep.entropy > 0.0 && rep.entropy <= 3f64.log2(), || format!("entropy {} outside (0, log2 3]", rep.entropy));
    c.check(rep.verdict == Verdict::Entangled, || format!("verdict {}", rep.verdict));
    c.check(desymmetrize(&psi, EPS).unwrap().is_none(), || "desymmetrize returned a pair".into());
}

/// One sweep member: verdict, attainment, Slater number and entropy.
struct Sample {
    label: String,
    stats: Statistics,
    verdict: Verdict,
    attained: bool,
    number: usize,
    entropy: f64,
}

fn evaluate(label: String, psi: &TwoParticleState, seed: u64) -> Result<Sample, String> {
    let rep = classify(psi, EPS).map_err(|e| format!("{label}: {e}"))?;
    let opts = SearchOptions { seed, execution: Execution::Sequential, ..SearchOptions::default() };
    let prop = find_property_projector(psi, &opts).map_err(|e| format!("{label}: {e}"))?;
    Ok(Sample {
        label,
        stats: psi.statistics(),
        verdict: rep.verdict,
        attained: prop.attained,
        number: rep.number,
        entropy: rep.entropy,
    })
}

fn criterion_6(c: &mut Criterion) {
    let exec = Execution::default();
    let mut jobs: Vec<(Statistics, usize, u64)> = Vec::new();
    for d in 2..=8 {
        for stats in [Statistics::Fermion, Statistics::Boson] {
            for k in 0..500 {
                jobs.push((stats, d, (d as u64) * 10_000 + k));
            }
        }
    }
    let mut results = exec.map_slice(&jobs, |&(stats, d, seed)| {
        let psi = random_state(d, stats, seed).unwrap();
        evaluate(format!("random {stats} d={d} seed={seed}"), &psi, seed)
    });

    let constructed = exec.map_indexed(400, |k| {
        let mut r = rng(6000 + k as u64, 0);
        let d = 2 + k % 7;
        let phi = unit_vector(&mut r, d);
        let psi = if k < 200 {
            let chi = unit_vector(&mut r, d);
            antisymmetrize(&spv(phi), &spv(chi)).unwrap()
        } else if k % 2 == 0 {
            let p = spv(phi);
            symmetrize(&p, &p).unwrap()
        } else {
            let chi = orthogonal_to(&phi, &mut r);
            symmetrize(&spv(phi), &spv(chi)).unwrap()
        };
        evaluate(format!("constructed #{k} d={d}"), &psi, k as u64)
    });
    results.extend(constructed);

    let mut disagreements = 0;
    let mut equivalence_breaks = 0;
    for res in &results {
        match res {
            Ok(s) => {
                if (s.verdict == Verdict::NonEntangled) != s.attained {
                    disagreements += 1;
                    if disagreements <= 3 {
                        c.check(false, || format!("{}: verdict {} but attained = {}", s.label, s.verdict, s.attained));
                    }
                }
                if s.stats == Statistics::Fermion && (s.number == 1) != ((s.entropy - 1.0).abs() <= 1e-7) {
                    equivalence_breaks += 1;
                    c.check(false, || format!("{}: slater number {} with S = {}", s.label, s.number, s.entropy));
                }
            }
            Err(e) => c.check(false, || e.clone()),
        }
    }
    let n = results.len();
    c.check(disagreements == 0, || format!("{disagreements} of {n} verdict/attainment disagreements"));
    c.check(equivalence_breaks == 0, || format!("{equivalence_breaks} Slater/entropy exceptions"));
    c.check(n == 7 * 1000 + 400, || format!("sweep size {n}"));
}

fn criterion_7(c: &mut Criterion) {
    let mut worst_takagi: f64 = 0.0;
    let mut worst_youla: f64 = 0.0;
    for k in 0..100u64 {
        let d = 2 + (k as usize % 11);
        let g = gaussian_matrix(&mut rng(7000 + k, 0), d, d);
        let s = g.add(&g.transpose());
        let s = s.scale(Complex64::new(1.0 / s.frobenius_norm(), 0.0));
        worst_takagi = worst_takagi.max(takagi(&s).unwrap().reconstruct().sub(&s).frobenius_norm());
        let a = g.sub(&g.transpose());
        let a = a.scale(Complex64::new(1.0 / a.frobenius_norm(), 0.0));
        worst_youla = worst_youla.max(youla_antisymmetric(&a).unwrap().reconstruct().sub(&a).frobenius_norm());
    }
    c.check(worst_takagi < 1e-10, || format!("Takagi reconstruction error {worst_takagi:e}"));
    c.check(worst_youla < 1e-10, || format!("Youla reconstruction error {worst_youla:e}"));

    let mut worst_entropy: f64 = 0.0;
    let mut worst_pairing: f64 = 0.0;
    for k in 0..100u64 {
        let d = 2 + (k as usize % 11);
        for stats in [Statistics::Fermion, Statistics::Boson] {
            let psi = random_state(d, stats, 7500 + k).unwrap();
            let brute = brute_entropy(&psi).unwrap();
            let closed = match decompose(&psi, EPS).unwrap() {
                Decomposition::Slater(s) => entropy_from_slater(&s.coefficients).unwrap(),
                Decomposition::Schmidt(s) => entropy_from_schmidt(&s.coefficients).unwrap(),
            };
            worst_entropy = worst_entropy.max((closed - brute).abs());
            if stats == Statistics::Fermion {
                let mut ev = reduced_density(&psi).eigenvalues().unwrap();
                ev.reverse();
                for k in 0..d / 2 {
                    worst_pairing = worst_pairing.max((ev[2 * k] - ev[2 * k + 1]).abs());
                }
            }
        }
    }
    c.check(worst_entropy <= 1e-9, || format!("closed-form vs brute entropy {worst_entropy:e}"));
    c.check(worst_pairing <= 1e-9, || format!("fermion spectrum pairing {worst_pairing:e}"));
}

fn criterion_8(c: &mut Criterion) {
    for k in 0..200u64 {
        let mut r = rng(8000 + k, 0);
        let d = 2 + (k as usize % 7);
        let phi = unit_vector(&mut r, d);
        let chi = unit_vector(&mut r, d);

        let f = antisymmetrize(&spv(phi.clone()), &spv(chi)).unwrap();
        let rep = classify(&f, EPS).unwrap();
        c.check(rep.verdict == Verdict::NonEntangled && rep.number == 1, || {
            format!("pair {k}: antisymmetrized gives {} with Slater number {}", rep.verdict, rep.number)
        });

        let perp = orthogonal_to(&phi, &mut r);
        let b = symmetrize(&spv(phi.clone()), &spv(perp.clone())).unwrap();
        let rep = classify(&b, EPS).unwrap();
        c.check(rep.verdict == Verdict::NonEntangled, || format!("pair {k}: orthogonal symmetrized gives {}", rep.verdict));

        // |⟨φ|χ⟩| = 1/2
        let half: Vec<Complex64> = phi.iter().zip(&perp).map(|(a, b)| a * 0.5 + b * 0.75f64.sqrt()).collect();
        let b = symmetrize(&spv(phi), &spv(half)).unwrap();
        let rep = classify(&b, EPS).unwrap();
        let s = entropy(&b);
        c.check(
            rep.verdict == Verdict::Entangled && rep.number == 2 && s > 0.0 && s < 1.0,
            || format!("pair {k}: overlap-1/2 symmetrized gives {} number {} S = {s}", rep.verdict, rep.number),
        );
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Criterion)); 8] = [
        ("single Slater determinant", criterion_1),
        ("fermion two-determinant state", criterion_2),
        ("boson equal Schmidt-2", criterion_3),
        ("boson unequal Schmidt-2", criterion_4),
        ("boson uniform Schmidt-3", criterion_5),
        ("criterion-equivalence sweep", criterion_6),
        ("kernel property suite", criterion_7),
        ("round-trip constructions", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut c = Criterion::new();
        run(&mut c);
        let secs = start.elapsed().as_secs_f64();
        if c.failures.is_empty() {
            println!("PASS criterion {}: {name} ({} checks, {secs:.2}s)", i + 1, c.checks);
        } else {
            failed += 1;
            println!(
                "FAIL criterion {}: {name} ({} of {} checks failed, {secs:.2}s): {}",
                i + 1,
                c.failures.len(),
                c.checks,
                c.failures.join("; ")
            );
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
