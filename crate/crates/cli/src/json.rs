//! JSON output with every number printed at 17 significant digits.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use twinstate::ComplexMatrix;

/// `x` with 17 significant digits: fixed notation for `1e-5 ≤ |x| < 1e16`,
/// scientific otherwise. Round-trips exactly through `f64::from_str`.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

/// A number serialized through [`format_f64`].
#[derive(Clone, Copy, Debug)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().map(|&x| Num(x)).collect()
}

pub fn complex(z: Complex64) -> [Num; 2] {
    [Num(z.re), Num(z.im)]
}

pub fn complex_vec(v: &[Complex64]) -> Vec<[Num; 2]> {
    v.iter().map(|&z| complex(z)).collect()
}

/// Row-major `[[[re, im], …], …]`.
pub fn matrix(m: &ComplexMatrix) -> Vec<Vec<[Num; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| complex(m[(i, j)])).collect())
        .collect()
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

pub fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable report")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0, 0.1, 1.0 / 3.0, 0.7219280948873623, 2f64.sqrt(), 1e-7, 123456.789, 1e20, -0.25, 5e-324] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let digits: String = s.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
            assert_eq!(digits.trim_start_matches('0').len(), 17, "{s}");
        }
        assert_eq!(format_f64(1.0), "1.0000000000000000");
        assert_eq!(format_f64(0.5), "0.50000000000000000");
        assert_eq!(format_f64(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_f64(1e20), "1.0000000000000000e20");
    }

    #[test]
    fn raw_numbers_in_documents() {
        let s = to_line(&serde_json::json!({}));
        assert_eq!(s, "{}");
        #[derive(Serialize)]
        struct T {
            x: Num,
        }
        assert_eq!(to_line(&T { x: Num(0.5) }), r#"{"x":0.50000000000000000}"#);
    }
}
