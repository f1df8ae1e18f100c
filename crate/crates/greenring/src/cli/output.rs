//! Output formatting shared by the CLI commands.
//!
//! Floating-point values render with 12 significant digits so JSON and CSV
//! outputs are byte-stable golden-file material.

use num::BigInt;

/// Fixed-precision rendering: 12 significant digits, plain decimal notation.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return "null".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// JSON string literal with escaping.
pub fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

pub fn json_str_array(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| json_str(s)).collect();
    format!("[{}]", inner.join(", "))
}

pub fn json_int_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn json_bigint_matrix(m: &[Vec<BigInt>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn json_f64_array(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|&x| fmt_f64(x)).collect();
    format!("[{}]", cells.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(1.0), "1.00000000000");
        assert_eq!(fmt_f64(std::f64::consts::SQRT_2), "1.41421356237");
        assert_eq!(fmt_f64(-2.0), "-2.00000000000");
        assert_eq!(fmt_f64(123456789012345.0), "123456789012345");
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_str("a\"b"), "\"a\\\"b\"");
        assert_eq!(json_str_array(&["x".into()]), "[\"x\"]");
    }
}
