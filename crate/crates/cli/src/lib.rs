//! Command-line front end for `trigfun`.

pub mod app;
pub mod expr;
pub mod problem;

use std::fmt;

use trigfun::{Complex64, Interval, TrigError};

pub use app::run;
pub use expr::{parse_expr, Expr, ParseError};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    /// Adaptive construction ran out of points or hit a non-finite sample.
    Resolve(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Resolve(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Resolve(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<TrigError> for CliError {
    fn from(e: TrigError) -> Self {
        match e {
            TrigError::NotResolved { .. } | TrigError::NonFinite { .. } => CliError::Resolve(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// A real constant expression such as `2*pi` or `-1`.
pub fn parse_real(src: &str) -> Result<f64, CliError> {
    let e = parse_expr(src.trim())?;
    if e.uses_t() || e.uses_u() {
        return Err(CliError::Parse(format!("`{src}` is not a constant")));
    }
    let v = e.eval(0.0);
    if v.im != 0.0 || !v.re.is_finite() {
        return Err(CliError::Parse(format!("`{src}` is not a finite real number")));
    }
    Ok(v.re)
}

/// Parses `a,b`.
pub fn parse_interval(src: &str) -> Result<Interval, CliError> {
    let (a, b) = src
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("interval `{src}` must have the form a,b")))?;
    Interval::new(parse_real(a)?, parse_real(b)?).map_err(|e| CliError::Parse(e.to_string()))
}

/// Shortest `%.17g`-style rendering: 17 significant digits, trailing zeros
/// dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let e: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&e) {
        let fixed = format!("{:.*}", (16 - e) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{}", trim_zeros(mant), e)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_complex(z: Complex64, real: bool) -> String {
    if real {
        fmt_num(z.re)
    } else {
        format!("{} {}", fmt_num(z.re), fmt_num(z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-0.5), "-0.5");
        assert_eq!(fmt_num(std::f64::consts::TAU), "6.2831853071795862");
        assert_eq!(fmt_num(1e-20), "9.9999999999999995e-21");
        assert_eq!(fmt_num(1.5e300), "1.5000000000000001e300");
        for x in [0.1, 1.0 / 3.0, 12345.678, 2.5e-7, -7.0e18] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn intervals() {
        let iv = parse_interval("0,2*pi").unwrap();
        assert_eq!(iv.b(), std::f64::consts::TAU);
        assert_eq!(parse_interval("-1,1").unwrap().a(), -1.0);
        assert!(matches!(parse_interval("1,1"), Err(CliError::Parse(_))));
        assert!(matches!(parse_interval("0;1"), Err(CliError::Parse(_))));
    }
}
