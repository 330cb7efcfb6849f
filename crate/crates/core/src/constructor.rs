//! Adaptive construction: sample on grids 16, 32, 64, ..., test the discrete
//! Fourier coefficients for convergence, then chop to odd length.

use num_complex::Complex64;

use crate::error::{Result, TrigError};
use crate::trigcore::{interp_coeffs, trig_points, Interval, TrigPoly};

const FIRST_GRID: usize = 16;
const ZERO_ABS_TOL: f64 = 1e-300;
const REAL_DETECT_FACTOR: f64 = 8.0;

/// Headroom over `rel_tol` for transform rounding: exactly resolved data
/// shows discrete coefficients up to about `2 eps max|c|`.
pub(crate) const NOISE_ALLOWANCE: f64 = 8.0;

const SPOT_CHECK_POINTS: [f64; 3] = [0.2718281828459045, 0.5772156649015329, 0.8414709848078965];
const SPOT_CHECK_FACTOR: f64 = 1e4;

/// Controls for [`build_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Chopping threshold relative to the largest coefficient.
    pub rel_tol: f64,
    /// Largest grid tried before giving up; a power of two, at least 16.
    pub max_length: usize,
    /// Skip adaptivity and interpolate at exactly this many points.
    pub forced_length: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            rel_tol: f64::EPSILON,
            max_length: 1 << 16,
            forced_length: None,
        }
    }
}

impl BuildOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(TrigError::InvalidSize(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !self.max_length.is_power_of_two() || self.max_length < FIRST_GRID {
            return Err(TrigError::InvalidSize(format!(
                "max_length must be a power of two >= {FIRST_GRID}, got {}",
                self.max_length
            )));
        }
        if self.forced_length == Some(0) {
            return Err(TrigError::InvalidSize("forced_length must be positive".into()));
        }
        Ok(())
    }
}

/// Magnitude and entry count of each level `|k|`, from `k = 0` upwards.
fn level_magnitudes(coeffs: &[Complex64]) -> Vec<(f64, usize)> {
    let len = coeffs.len();
    let (body, top) = if len % 2 == 0 {
        (&coeffs[1..], Some(coeffs[0].norm()))
    } else {
        (coeffs, None)
    };
    let mid = body.len() / 2;
    let mut levels = Vec::with_capacity(mid + 2);
    levels.push((body[mid].norm(), 1));
    for k in 1..=mid {
        levels.push((body[mid + k].norm().max(body[mid - k].norm()), 2));
    }
    if let Some(m) = top {
        levels.push((m, 1));
    }
    levels
}

/// Decides where a sampled coefficient sequence (canonical order, odd or
/// even length) may be chopped.
///
/// Returns the smallest `n` with every `|c_k| <= rel_tol * max|c|` for
/// `|k| > n`, provided the below-threshold tail holds at least
/// `max(3, len / 8)` entries; `None` means the grid is not yet fine enough.
/// An all-zero sequence gives `Some(0)`.
pub fn chop_tail(coeffs: &[Complex64], rel_tol: f64) -> Option<usize> {
    if coeffs.is_empty() {
        return Some(0);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Some(0);
    }
    let thresh = rel_tol * scale;
    let levels = level_magnitudes(coeffs);
    let mut plateau = 0;
    let mut n = 0;
    for (k, &(mag, count)) in levels.iter().enumerate().rev() {
        if mag > thresh {
            n = k;
            break;
        }
        plateau += count;
    }
    let needed = 3.max(coeffs.len() / 8);
    (plateau >= needed).then_some(n)
}

/// Keeps modes `|k| <= n` of a canonical sequence, returning odd length
/// `2n + 1`. For even input `n` must be below the top level.
pub(crate) fn truncate_to_degree(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let body = if coeffs.len() % 2 == 0 {
        &coeffs[1..]
    } else {
        coeffs
    };
    let mid = body.len() / 2;
    debug_assert!(n <= mid);
    body[mid - n..=mid + n].to_vec()
}

fn sample<F, T>(f: &F, n: usize, interval: Interval) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    trig_points(n, interval)?
        .into_iter()
        .map(|t| {
            let v: Complex64 = f(t).into();
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(TrigError::NonFinite { t })
            }
        })
        .collect()
}

/// Forces exactly real samples when the imaginary parts are at rounding
/// level, so the interpolant comes out exactly conjugate symmetric.
fn detect_real(values: &mut [Complex64]) {
    let vmax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let imax = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imax <= REAL_DETECT_FACTOR * f64::EPSILON * vmax {
        for v in values.iter_mut() {
            v.im = 0.0;
        }
    }
}

/// Compares `p` with `f` at a few off-grid points, catching grids on which
/// a high mode aliases to a smooth-looking spectrum.
fn passes_spot_check<F, T>(f: &F, p: &TrigPoly, vmax: f64, rel_tol: f64) -> Result<bool>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let iv = p.interval();
    let tol = SPOT_CHECK_FACTOR * rel_tol * vmax;
    for s in SPOT_CHECK_POINTS {
        let t = iv.a() + s * iv.length();
        let v: Complex64 = f(t).into();
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(TrigError::NonFinite { t });
        }
        if (p.eval(t) - v).norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adaptive construction of a trigonometric polynomial from samples of `f`.
pub fn build_adaptive<F, T>(f: F, interval: Interval, opts: &BuildOptions) -> Result<TrigPoly>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    opts.validate()?;
    if let Some(n) = opts.forced_length {
        return build_fixed(f, interval, n);
    }
    let mut grid = FIRST_GRID;
    while grid <= opts.max_length {
        let mut values = sample(&f, grid, interval)?;
        if values.iter().all(|v| v.norm() <= ZERO_ABS_TOL) {
            return Ok(TrigPoly::zero(interval));
        }
        detect_real(&mut values);
        let raw = interp_coeffs(&values, interval)?;
        if let Some(n) = chop_tail(raw.coeffs(), opts.rel_tol * NOISE_ALLOWANCE) {
            let c = truncate_to_degree(raw.coeffs(), n);
            let p = TrigPoly::from_coeffs(c, interval)?;
            let p = if raw.is_real() { p.enforce_real_symmetry() } else { p };
            let vmax = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if passes_spot_check(&f, &p, vmax, opts.rel_tol)? {
                return Ok(p);
            }
        }
        grid *= 2;
    }
    Err(TrigError::NotResolved {
        points: opts.max_length,
    })
}

/// Interpolates `f` at exactly `n` trigonometric points (odd or even).
pub fn build_fixed<F, T>(f: F, interval: Interval, n: usize) -> Result<TrigPoly>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let mut values = sample(&f, n, interval)?;
    detect_real(&mut values);
    interp_coeffs(&values, interval)
}

/// Wraps a canonical-order coefficient sequence (odd, or even with the
/// top-cosine convention).
pub fn build_from_coeffs(coeffs: Vec<Complex64>, interval: Interval) -> Result<TrigPoly> {
    TrigPoly::from_coeffs(coeffs, interval)
}
