//! Report documents for the analysis subcommands.

use serde::Serialize;

use twinstate::analysis::reduced_density;
use twinstate::oracle::verify_all;
use twinstate::{
    classify, decompose, entropy_from_schmidt, entropy_from_slater, find_property_projector,
    schmidt_distinguishable, von_neumann_entropy, Decomposition, Execution, SearchOptions,
};

use crate::failure::{Failure, EXIT_NUMERICAL};
use crate::io::Loaded;
use crate::json::{complex_vec, matrix, nums, to_line, to_pretty, Num};

#[derive(Clone, Copy, Debug)]
pub enum Analysis {
    Classify { eps: f64 },
    Decompose { eps: f64 },
    Entropy { eps: f64 },
    Properties { tol: f64, restarts: usize, seed: u64 },
    Verify { eps: f64, samples: usize, seed: u64 },
}

impl Analysis {
    fn name(self) -> &'static str {
        match self {
            Analysis::Classify { .. } => "classify",
            Analysis::Decompose { .. } => "decompose",
            Analysis::Entropy { .. } => "entropy",
            Analysis::Properties { .. } => "properties",
            Analysis::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Pretty,
    Line,
}

#[derive(Serialize)]
struct Input {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Document<R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: Input,
    dim: usize,
    statistics: &'static str,
    report: R,
}

#[derive(Serialize)]
struct Pair {
    phi: Vec<[Num; 2]>,
    chi: Vec<[Num; 2]>,
}

#[derive(Serialize)]
struct ClassifyReport {
    number: usize,
    coefficients: Vec<Num>,
    entropy: Num,
    verdict: &'static str,
    rule: String,
    rule_id: &'static str,
    marginal: bool,
    factorizing_pair: Option<Pair>,
    overlap: Option<Num>,
    eps_count: Num,
}

#[derive(Serialize)]
struct Distinguishable {
    schmidt_number: usize,
    coefficients: Vec<Num>,
}

#[derive(Serialize)]
struct DecomposeReport {
    kind: &'static str,
    number: usize,
    coefficients: Vec<Num>,
    threshold: Num,
    basis: Vec<Vec<[Num; 2]>>,
    distinguishable: Distinguishable,
}

#[derive(Serialize)]
struct EntropyReport {
    entropy: Num,
    closed_form_entropy: Num,
    reduced_density_eigenvalues: Vec<Num>,
}

#[derive(Serialize)]
struct PropertiesReport {
    max_value: Num,
    attained: bool,
    tolerance: Num,
    restarts_used: usize,
    seed: u64,
    argmax: Vec<[Num; 2]>,
    partner: Option<Vec<[Num; 2]>>,
    one_particle_max: Num,
}

#[derive(Serialize)]
struct Check {
    check_name: String,
    passed: bool,
    measured_error: Num,
    tolerance: Num,
}

#[derive(Serialize)]
struct VerifyReport {
    all_passed: bool,
    samples: usize,
    seed: u64,
    checks: Vec<Check>,
}

fn render<R: Serialize>(loaded: &Loaded, command: &'static str, report: R, layout: Layout) -> String {
    let doc = Document {
        tool: "twinstate",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input: Input {
            path: loaded.path.display().to_string(),
            sha256: loaded.sha256.clone(),
        },
        dim: loaded.state.dim(),
        statistics: loaded.state.statistics().as_str(),
        report,
    };
    match layout {
        Layout::Pretty => to_pretty(&doc),
        Layout::Line => to_line(&doc),
    }
}

/// Runs `analysis` on one loaded state. Returns the rendered document and
/// the exit code it implies (non-zero only when a verification fails).
pub fn run(loaded: &Loaded, analysis: Analysis, layout: Layout, exec: Execution) -> Result<(String, u8), Failure> {
    let psi = &loaded.state;
    let name = analysis.name();
    let out = match analysis {
        Analysis::Classify { eps } => {
            let r = classify(psi, eps)?;
            let overlap = r.overlap().map(Num);
            let report = ClassifyReport {
                number: r.number,
                coefficients: nums(&r.coefficients),
                entropy: Num(r.entropy),
                verdict: r.verdict.as_str(),
                rule: r.rule.to_string(),
                rule_id: r.rule.id,
                marginal: r.rule.marginal,
                factorizing_pair: r.factorizing_pair.map(|p| Pair {
                    phi: complex_vec(p.phi.amplitudes()),
                    chi: complex_vec(p.chi.amplitudes()),
                }),
                overlap,
                eps_count: Num(eps),
            };
            (render(loaded, name, report, layout), 0)
        }
        Analysis::Decompose { eps } => {
            let dec = decompose(psi, eps)?;
            let dist = schmidt_distinguishable(psi.coeffs(), eps)?;
            let report = DecomposeReport {
                kind: match dec {
                    Decomposition::Slater(_) => "slater",
                    Decomposition::Schmidt(_) => "schmidt",
                },
                number: dec.number(),
                coefficients: nums(dec.coefficients()),
                threshold: Num(eps),
                basis: matrix(dec.basis().matrix()),
                distinguishable: Distinguishable {
                    schmidt_number: dist.schmidt_number,
                    coefficients: nums(&dist.coefficients),
                },
            };
            (render(loaded, name, report, layout), 0)
        }
        Analysis::Entropy { eps } => {
            let rho = reduced_density(psi);
            let mut ev = rho.eigenvalues()?;
            ev.reverse();
            let closed = match decompose(psi, eps)? {
                Decomposition::Slater(s) => entropy_from_slater(&s.coefficients)?,
                Decomposition::Schmidt(s) => entropy_from_schmidt(&s.coefficients)?,
            };
            let report = EntropyReport {
                entropy: Num(von_neumann_entropy(&rho)?),
                closed_form_entropy: Num(closed),
                reduced_density_eigenvalues: nums(&ev),
            };
            (render(loaded, name, report, layout), 0)
        }
        Analysis::Properties { tol, restarts, seed } => {
            let opts = SearchOptions { tol, restarts, seed, execution: exec };
            let r = find_property_projector(psi, &opts)?;
            let report = PropertiesReport {
                max_value: Num(r.max_value),
                attained: r.attained,
                tolerance: Num(r.tolerance),
                restarts_used: r.restarts_used,
                seed,
                argmax: complex_vec(r.argmax.amplitudes()),
                partner: r.partner.map(|p| complex_vec(p.amplitudes())),
                one_particle_max: Num(r.one_particle_max),
            };
            (render(loaded, name, report, layout), 0)
        }
        Analysis::Verify { eps, samples, seed } => {
            let checks = verify_all(psi, eps, samples, seed, exec)?;
            let all_passed = checks.iter().all(|c| c.passed);
            let report = VerifyReport {
                all_passed,
                samples,
                seed,
                checks: checks
                    .into_iter()
                    .map(|c| Check {
                        check_name: c.check_name,
                        passed: c.passed,
                        measured_error: Num(c.measured_error),
                        tolerance: Num(c.tolerance),
                    })
                    .collect(),
            };
            let code = if all_passed { 0 } else { EXIT_NUMERICAL };
            (render(loaded, name, report, layout), code)
        }
    };
    Ok(out)
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    path: String,
    error: &'a str,
    exit_code: u8,
}

/// One-line JSON record of a per-file failure in batch mode.
pub fn error_line(path: &std::path::Path, f: &Failure) -> String {
    to_line(&ErrorLine {
        path: path.display().to_string(),
        error: &f.message,
        exit_code: f.code,
    })
}
