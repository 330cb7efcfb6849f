//! Plain-text coefficient dumps: one line `k re im` per stored coefficient,
//! 17 significant digits. Even lengths run `k = -n ..= n-1`, with the `-n`
//! line holding the top cosine amplitude.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::TrigPoly;
use crate::error::{Result, TrigError};

pub fn write_coeff_dump(p: &TrigPoly) -> String {
    let n = p.degree() as i64;
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        let k = i as i64 - n;
        writeln!(out, "{} {:.16e} {:.16e}", k, c.re, c.im).unwrap();
    }
    out
}

/// Parses a dump back into canonical-order coefficients. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_coeff_dump(text: &str) -> Result<Vec<Complex64>> {
    let mut ks = Vec::new();
    let mut coeffs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || TrigError::Shape(format!("line {}: expected `k re im`", lineno + 1));
        if fields.len() != 3 {
            return Err(bad());
        }
        let k: i64 = fields[0].parse().map_err(|_| bad())?;
        let re: f64 = fields[1].parse().map_err(|_| bad())?;
        let im: f64 = fields[2].parse().map_err(|_| bad())?;
        ks.push(k);
        coeffs.push(Complex64::new(re, im));
    }
    if coeffs.is_empty() {
        return Err(TrigError::Shape("empty coefficient dump".into()));
    }
    let len = coeffs.len() as i64;
    let n = len / 2;
    let consecutive = ks.iter().enumerate().all(|(i, &k)| k == i as i64 - n);
    if !consecutive {
        return Err(TrigError::Shape(format!(
            "indices must run consecutively from {} for {} coefficients",
            -n, len
        )));
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigcore::Interval;

    #[test]
    fn dump_round_trips_bit_exactly() {
        let c = vec![
            Complex64::new(0.1, -1.0 / 3.0),
            Complex64::new(std::f64::consts::PI, 0.0),
            Complex64::new(0.1, 1.0 / 3.0),
        ];
        let p = TrigPoly::from_coeffs(c.clone(), Interval::two_pi()).unwrap();
        let text = write_coeff_dump(&p);
        assert_eq!(text.lines().next().unwrap().split(' ').next(), Some("-1"));
        let back = parse_coeff_dump(&text).unwrap();
        assert_eq!(back, c);
        let q = TrigPoly::from_coeffs(back, Interval::two_pi()).unwrap();
        assert_eq!(write_coeff_dump(&q), text);
    }

    #[test]
    fn even_dump_indices() {
        let p = TrigPoly::from_coeffs(vec![Complex64::new(1.0, 0.0); 4], Interval::two_pi()).unwrap();
        let text = write_coeff_dump(&p);
        let ks: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
        assert_eq!(ks, vec!["-2", "-1", "0", "1"]);
        assert_eq!(parse_coeff_dump(&text).unwrap().len(), 4);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_coeff_dump("").is_err());
        assert!(parse_coeff_dump("0 1.0").is_err());
        assert!(parse_coeff_dump("-1 0 0\n1 0 0\n0 0 0").is_err());
    }
}
