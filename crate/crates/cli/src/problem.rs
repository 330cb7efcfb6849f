//! Problem files for `solve` and `eigs`.
//!
//! ```text
//! # 0.001(u'' + u') - cos(t) u = 1
//! interval=0,6*pi
//! order=2
//! coeff[0]=-cos(t)
//! coeff[1]=0.001
//! coeff[2]=0.001
//! rhs=1
//! ```
//!
//! Nonlinear problems give the operator directly with `op=`, in terms of
//! `u` and `diff(u,k)`, and may supply `guess=`.

use crate::expr::{parse_expr, Expr, ParseError};
use crate::{parse_interval, CliError};
use trigfun::Interval;

#[derive(Debug, Clone)]
pub struct Problem {
    pub interval: Interval,
    /// `coeffs[j]` multiplies `u^(j)`; absent entries are zero.
    pub coeffs: Vec<Option<Expr>>,
    pub op: Option<Expr>,
    pub rhs: Option<Expr>,
    pub guess: Option<Expr>,
}

fn line_error(lineno: usize, e: ParseError) -> CliError {
    CliError::Parse(format!("line {lineno}: {e}"))
}

pub fn parse_problem(text: &str, default_interval: Interval) -> Result<Problem, CliError> {
    let mut interval = default_interval;
    let mut order: Option<usize> = None;
    let mut coeffs: Vec<(usize, Expr)> = Vec::new();
    let mut op = None;
    let mut rhs = None;
    let mut guess = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Parse(format!("line {lineno}: expected key=value")));
        };
        let (key, value) = (key.trim(), value.trim());
        let expr = || parse_expr(value).map_err(|e| line_error(lineno, e));
        match key {
            "interval" => interval = parse_interval(value).map_err(|e| CliError::Parse(format!("line {lineno}: {e}")))?,
            "order" => {
                order = Some(
                    value
                        .parse()
                        .map_err(|_| CliError::Parse(format!("line {lineno}: order must be a nonnegative integer")))?,
                )
            }
            "rhs" => rhs = Some(expr()?),
            "op" => op = Some(expr()?),
            "guess" => guess = Some(expr()?),
            _ => {
                let j = key
                    .strip_prefix("coeff[")
                    .and_then(|s| s.strip_suffix(']'))
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .ok_or_else(|| CliError::Parse(format!("line {lineno}: unknown key `{key}`")))?;
                let e = expr()?;
                if e.uses_u() {
                    return Err(CliError::Parse(format!("line {lineno}: coefficients cannot depend on u")));
                }
                coeffs.push((j, e));
            }
        }
    }
    let top = coeffs.iter().map(|c| c.0).max();
    let order = match (order, top) {
        (Some(m), Some(j)) if j > m => {
            return Err(CliError::Parse(format!("coeff[{j}] exceeds order={m}")));
        }
        (Some(m), _) => Some(m),
        (None, Some(j)) => Some(j),
        (None, None) => None,
    };
    let mut slots = vec![None; order.map_or(0, |m| m + 1)];
    for (j, e) in coeffs {
        slots[j] = Some(e);
    }
    if op.is_none() && slots.is_empty() {
        return Err(CliError::Parse("problem defines neither coeff[j] nor op".into()));
    }
    if op.is_some() && !slots.is_empty() {
        return Err(CliError::Parse("give either op= or coeff[j]=, not both".into()));
    }
    Ok(Problem {
        interval,
        coeffs: slots,
        op,
        rhs,
        guess,
    })
}
