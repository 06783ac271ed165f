//! State files: `{"dim": d, "statistics": "fermion"|"boson",
//! "matrix": [[[re, im], …], …]}`.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use twinstate::{ComplexMatrix, Statistics, TwoParticleState};

use crate::failure::Failure;
use crate::json::{matrix, to_line};

#[derive(Deserialize)]
struct RawStateFile {
    dim: usize,
    statistics: String,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// A parsed input with its provenance.
pub struct Loaded {
    pub path: PathBuf,
    pub sha256: String,
    pub state: TwoParticleState,
}

pub fn load(path: &Path) -> Result<Loaded, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let state = parse_state(&bytes).map_err(|f| f.context(&path.display().to_string()))?;
    Ok(Loaded {
        path: path.to_path_buf(),
        sha256,
        state,
    })
}

pub fn parse_state(bytes: &[u8]) -> Result<TwoParticleState, Failure> {
    let raw: RawStateFile =
        serde_json::from_slice(bytes).map_err(|e| Failure::parse(format!("malformed state file: {e}")))?;
    let statistics = Statistics::from_str(&raw.statistics).map_err(Failure::parse)?;
    let d = raw.dim;
    if raw.matrix.len() != d || raw.matrix.iter().any(|r| r.len() != d) {
        return Err(Failure::parse(format!("matrix must be {d} rows of {d} [re, im] entries")));
    }
    let data = raw
        .matrix
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let m = ComplexMatrix::from_row_major(d, d, data)?;
    Ok(TwoParticleState::from_matrix(d, statistics, m)?)
}

/// State file text with one matrix row per line.
pub fn render_state(psi: &TwoParticleState) -> String {
    let rows: Vec<String> = matrix(psi.coeffs())
        .iter()
        .map(|r| format!("    {}", to_line(r)))
        .collect();
    format!(
        "{{\n  \"dim\": {},\n  \"statistics\": \"{}\",\n  \"matrix\": [\n{}\n  ]\n}}\n",
        psi.dim(),
        psi.statistics().as_str(),
        rows.join(",\n")
    )
}

/// Writes to standard output; a closed pipe is not an error.
pub fn print(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

/// Writes to `out`, or standard output when absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            print(text);
            Ok(())
        }
    }
}

/// `*.json` files directly inside `dir`, sorted by path.
pub fn list_dir(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::parse(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Comma-separated complex amplitudes, e.g. `1,0.5+0.5i,-i`.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            Complex64::from_str(t).map_err(|_| format!("invalid complex number {t:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_lists() {
        let v = parse_complex_list("1, 0.5+0.5i,-2i").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.5), Complex64::new(0.0, -2.0)]);
        assert!(parse_complex_list("1,x").is_err());
    }

    #[test]
    fn state_round_trip() {
        let psi = twinstate::states::random_state(3, Statistics::Boson, 4).unwrap();
        let text = render_state(&psi);
        let back = parse_state(text.as_bytes()).unwrap();
        // Loading renormalizes, which may move entries by an ulp.
        let diff = back.coeffs().sub(psi.coeffs()).frobenius_norm();
        assert!(diff < 1e-15, "{diff}");
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = parse_state(br#"{"dim": 2, "statistics": "boson", "matrix": [[[1,0]]]}"#).unwrap_err();
        assert_eq!(f.code, crate::failure::EXIT_PARSE);
        let f = parse_state(br#"{"dim": 2, "statistics": "anyon", "matrix": []}"#).unwrap_err();
        assert_eq!(f.code, crate::failure::EXIT_PARSE);
    }
}
