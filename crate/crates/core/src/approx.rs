//! Coefficient and error bounds, interpolation in arbitrary points, and best
//! approximation by the Remez exchange.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::calculus;
use crate::constructor::{build_adaptive, build_fixed, BuildOptions};
use crate::error::{Result, TrigError};
use crate::linalg::{self, Mat};
use crate::trigcore::trig_points;
use crate::{Interval, TrigPoly};

/// Smoothness class of `f` on a period normalized to `2 pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayBoundParams {
    /// `f^(nu)` has total variation `v`.
    BoundedVariation { nu: u32, v: f64 },
    /// `|f| <= m` in the strip `|Im t| < alpha`.
    Analytic { alpha: f64, m: f64 },
}

impl DecayBoundParams {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            DecayBoundParams::BoundedVariation { v, .. } => v > 0.0 && v.is_finite(),
            DecayBoundParams::Analytic { alpha, m } => alpha > 0.0 && m > 0.0 && alpha.is_finite() && m.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(TrigError::InvalidSize(format!("invalid bound parameters {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxKind {
    Projection,
    Interpolant,
}

/// Upper bound on `|c_k|`.
pub fn coeff_bound(k: i64, params: DecayBoundParams) -> Result<f64> {
    params.validate()?;
    let ka = k.unsigned_abs() as f64;
    match params {
        DecayBoundParams::BoundedVariation { nu, v } => {
            if k == 0 {
                return Err(TrigError::InvalidSize("the variation bound needs k != 0".into()));
            }
            Ok(v / (2.0 * PI * ka.powi(nu as i32 + 1)))
        }
        DecayBoundParams::Analytic { alpha, m } => Ok(m * (-alpha * ka).exp()),
    }
}

/// Bound on the sup-norm error of the degree `n` projection or interpolant.
pub fn approx_error_bound(n: usize, which: ApproxKind, params: DecayBoundParams) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(TrigError::InvalidSize("degree must be positive".into()));
    }
    let nf = n as f64;
    let base = match params {
        DecayBoundParams::BoundedVariation { nu, v } => {
            if nu == 0 {
                return Err(TrigError::InvalidSize("the variation bound needs nu >= 1".into()));
            }
            v / (PI * nu as f64 * nf.powi(nu as i32))
        }
        DecayBoundParams::Analytic { alpha, m } => 2.0 * m * (-alpha * nf).exp() / (alpha.exp() - 1.0),
    };
    Ok(match which {
        ApproxKind::Projection => base,
        ApproxKind::Interpolant => 2.0 * base,
    })
}

/// Bound on the error of the `N`-point trapezoidal rule over `[0, 2 pi]`.
pub fn trap_error_bound(n: usize, params: DecayBoundParams) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(TrigError::InvalidSize("need at least one point".into()));
    }
    let nf = n as f64;
    Ok(match params {
        DecayBoundParams::BoundedVariation { nu, v } => 4.0 * v / nf.powi(nu as i32 + 1),
        DecayBoundParams::Analytic { alpha, m } => 4.0 * PI * m / (alpha * nf).exp_m1(),
    })
}

/// Barycentric trigonometric interpolant in arbitrary distinct points.
///
/// Odd counts `N = 2n + 1` interpolate in `P_n`. Even counts `N = 2n`
/// interpolate in `P_{n-1}` plus `sin(n w t - w S / 2)`, `S` the sum of the
/// nodes, which reduces to the usual `cos(n w t)` rule on equispaced grids.
#[derive(Debug, Clone)]
pub struct NonuniformInterp {
    points: Vec<f64>,
    values: Vec<Complex64>,
    weights: Vec<f64>,
    interval: Interval,
}

pub fn interp_nonuniform(points: &[f64], values: &[Complex64], interval: Interval) -> Result<NonuniformInterp> {
    NonuniformInterp::new(points, values, interval)
}

impl NonuniformInterp {
    pub fn new(points: &[f64], values: &[Complex64], interval: Interval) -> Result<Self> {
        if points.is_empty() {
            return Err(TrigError::InvalidSize("no interpolation points".into()));
        }
        if points.len() != values.len() {
            return Err(TrigError::Shape(format!("{} points but {} values", points.len(), values.len())));
        }
        let w = interval.omega();
        let n = points.len();
        let mut weights = vec![1.0; n];
        for j in 0..n {
            let mut prod = 1.0;
            for m in 0..n {
                if m == j {
                    continue;
                }
                let s = 2.0 * (0.5 * w * (points[j] - points[m])).sin();
                let gap = interval.wrap(points[j] - points[m] + interval.a()) - interval.a();
                if s == 0.0 || gap.min(interval.length() - gap) <= 1e-14 * interval.length() {
                    return Err(TrigError::DuplicateNode(j.max(m)));
                }
                prod *= s;
            }
            weights[j] = 1.0 / prod;
        }
        Ok(NonuniformInterp {
            points: points.to_vec(),
            values: values.to_vec(),
            weights,
            interval,
        })
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let n = self.points.len();
        if n == 1 {
            return self.values[0];
        }
        let w = self.interval.omega();
        let even = n % 2 == 0;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for j in 0..n {
            let x = 0.5 * w * (t - self.points[j]);
            let s = x.sin();
            if s == 0.0 {
                return self.values[j];
            }
            let k = if even { x.cos() / s } else { 1.0 / s } * self.weights[j];
            num += self.values[j] * k;
            den += k;
        }
        num / den
    }

    /// The interpolant as a polynomial of degree `N / 2`, recovered from
    /// `2 (N / 2) + 1` equispaced samples.
    pub fn to_trigpoly(&self) -> Result<TrigPoly> {
        let m = 2 * (self.points.len() / 2) + 1;
        let real = self.values.iter().all(|v| v.im == 0.0);
        build_fixed(
            |t| {
                let v = self.eval(t);
                if real {
                    Complex64::new(v.re, 0.0)
                } else {
                    v
                }
            },
            self.interval,
            m,
        )
    }
}

#[derive(Debug, Clone)]
pub struct RemezResult {
    pub best: TrigPoly,
    /// `max |f - best|`.
    pub level: f64,
    /// Equioscillation points in `[a, b)`, ascending.
    pub reference: Vec<f64>,
    /// Sign of `f - best` at each reference point.
    pub signs: Vec<i8>,
    pub iterations: usize,
    /// Set when the input could not be resolved and was sampled densely.
    pub warning: Option<String>,
}

const REMEZ_MAX_ITER: usize = 50;
const REMEZ_TOL: f64 = 1e-10;
const REMEZ_ACCEPT: f64 = 1e-6;
const FALLBACK_POINTS: usize = 1 << 14;

/// Best approximation of a black-box real function of degree `n`. The
/// function is resolved first; if that fails it is sampled at `2^14`
/// points and the result carries a warning.
pub fn trigremez_fn<F>(f: F, interval: Interval, n: usize) -> Result<RemezResult>
where
    F: Fn(f64) -> f64,
{
    match build_adaptive(&f, interval, &BuildOptions::default()) {
        Ok(p) => trigremez(&p, n),
        Err(TrigError::NotResolved { points }) => {
            let p = build_fixed(&f, interval, FALLBACK_POINTS + 1)?;
            let mut r = trigremez(&p, n)?;
            r.warning = Some(format!(
                "function not resolved using {points} pts; approximated from {} samples",
                FALLBACK_POINTS + 1
            ));
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Best sup-norm approximation of degree `n` to a real polynomial `f`.
pub fn trigremez(f: &TrigPoly, n: usize) -> Result<RemezResult> {
    if !f.is_real() {
        return Err(TrigError::NotReal);
    }
    let iv = f.interval();
    let m = 2 * n + 2;
    let start: Vec<f64> = trig_points(m, iv)?;
    if f.to_odd().degree() <= n {
        return Ok(RemezResult {
            best: f.to_odd(),
            level: 0.0,
            reference: start,
            signs: (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
            iterations: 0,
            warning: None,
        });
    }
    let grid = (16 * m.max(f.len())).next_power_of_two();
    let fs: Vec<f64> = f.samples(grid).iter().map(|z| z.re).collect();
    let mut reference = start;
    let mut last_spread = f64::INFINITY;
    for it in 1..=REMEZ_MAX_ITER {
        let p = level_solve(f, &reference, n)?;
        let ext = error_extrema(f, &p, &fs, grid, m)?;
        let mags: Vec<f64> = ext.iter().map(|e| e.1.abs()).collect();
        let hi = mags.iter().cloned().fold(0.0, f64::max);
        let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = (hi - lo) / hi;
        reference = ext.iter().map(|e| e.0).collect();
        if spread <= REMEZ_TOL || (it == REMEZ_MAX_ITER && spread <= REMEZ_ACCEPT) || (spread <= REMEZ_ACCEPT && spread >= last_spread) {
            return Ok(RemezResult {
                best: p,
                level: hi,
                signs: ext.iter().map(|e| if e.1 >= 0.0 { 1 } else { -1 }).collect(),
                reference,
                iterations: it,
                warning: None,
            });
        }
        last_spread = spread;
    }
    Err(TrigError::Convergence(format!("Remez exchange stagnated after {REMEZ_MAX_ITER} iterations")))
}

/// Solves for `p` in `P_n` and `h` with `f(x_i) - p(x_i) = (-1)^i h`.
fn level_solve(f: &TrigPoly, x: &[f64], n: usize) -> Result<TrigPoly> {
    let iv = f.interval();
    let w = iv.omega();
    let m = x.len();
    let a = Mat::from_fn(m, m, |i, j| {
        if j == m - 1 {
            if i % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        } else if j == 0 {
            1.0
        } else {
            let k = j.div_ceil(2) as f64;
            if j % 2 == 1 {
                (k * w * x[i]).cos()
            } else {
                (k * w * x[i]).sin()
            }
        }
    });
    let rhs: Vec<f64> = x.iter().map(|&t| f.eval_real(t)).collect();
    let sol = linalg::solve(a, &rhs)?;
    let mut ca = vec![Complex64::new(sol[0], 0.0)];
    let mut cb = Vec::with_capacity(n);
    for k in 1..=n {
        ca.push(Complex64::new(sol[2 * k - 1], 0.0));
        cb.push(Complex64::new(sol[2 * k], 0.0));
    }
    TrigPoly::cos_sin_to_exp(&ca, &cb, iv)
}

/// Alternating local extrema of `f - p`, reduced to exactly `m` points that
/// keep the largest one.
fn error_extrema(f: &TrigPoly, p: &TrigPoly, fs: &[f64], grid: usize, m: usize) -> Result<Vec<(f64, f64)>> {
    let iv = f.interval();
    let h = iv.length() / grid as f64;
    let ps = p.samples(grid);
    let e: Vec<f64> = fs.iter().zip(&ps).map(|(a, b)| a - b.re).collect();
    let ep = calculus::sub(f, p)?;
    let d1 = calculus::differentiate(&ep, 1);
    let d2 = calculus::differentiate(&ep, 2);
    let polish = |t0: f64| {
        let mut t = t0;
        for _ in 0..4 {
            let c = d2.eval_real(t);
            if c == 0.0 {
                break;
            }
            let next = t - d1.eval_real(t) / c;
            if (next - t0).abs() > 2.0 * h {
                break;
            }
            t = next;
        }
        t
    };
    let mut ext: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid {
        let l = e[(i + grid - 1) % grid];
        let c = e[i];
        let r = e[(i + 1) % grid];
        let is_max = c > 0.0 && c >= l && c > r;
        let is_min = c < 0.0 && c <= l && c < r;
        if !(is_max || is_min) {
            continue;
        }
        let den = l - 2.0 * c + r;
        let off = if den != 0.0 { (0.5 * (l - r) / den).clamp(-1.0, 1.0) } else { 0.0 };
        let t0 = iv.a() + i as f64 * h;
        let t = polish(t0 + off * h);
        let v = ep.eval_real(t);
        ext.push(if v.abs() >= c.abs() && v.signum() == c.signum() { (iv.wrap(t), v) } else { (t0, c) });
    }
    ext.sort_by(|a, b| a.0.total_cmp(&b.0));
    merge_same_sign(&mut ext);
    if ext.len() < m {
        return Err(TrigError::Convergence(format!(
            "error curve has {} alternating extrema, need {m}",
            ext.len()
        )));
    }
    while ext.len() > m {
        let (idx, _) = ext
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
            .expect("nonempty");
        ext.remove(idx);
        merge_same_sign(&mut ext);
    }
    Ok(ext)
}

/// Collapses circular runs of equal sign to their largest member.
fn merge_same_sign(ext: &mut Vec<(f64, f64)>) {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(ext.len());
    for &x in ext.iter() {
        match out.last_mut() {
            Some(last) if last.1.signum() == x.1.signum() => {
                if x.1.abs() > last.1.abs() {
                    *last = x;
                }
            }
            _ => out.push(x),
        }
    }
    while out.len() > 1 && out[0].1.signum() == out[out.len() - 1].1.signum() {
        let last = out.pop().expect("nonempty");
        if last.1.abs() > out[0].1.abs() {
            out[0] = last;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    *ext = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigcore::eval_barycentric;
    use std::f64::consts::E;

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn bound_examples() {
        let bv = DecayBoundParams::BoundedVariation { nu: 0, v: 4.0 };
        assert!((coeff_bound(3, bv).unwrap() - 4.0 / (2.0 * PI * 3.0)).abs() < 1e-15);
        assert!(coeff_bound(0, bv).is_err());
        let an = DecayBoundParams::Analytic { alpha: 1.0, m: E };
        assert!((coeff_bound(10, an).unwrap() - E * (-10f64).exp()).abs() < 1e-18);
        let bv1 = DecayBoundParams::BoundedVariation { nu: 1, v: PI };
        assert!((approx_error_bound(10, ApproxKind::Interpolant, bv1).unwrap() - 0.2).abs() < 1e-15);
        let an1 = DecayBoundParams::Analytic { alpha: 1.0, m: 1.0 };
        let want = 2.0 * (-5f64).exp() / (E - 1.0);
        assert!((approx_error_bound(5, ApproxKind::Projection, an1).unwrap() - want).abs() < 1e-16);
        assert!(approx_error_bound(0, ApproxKind::Projection, an1).is_err());
        let bvt = DecayBoundParams::BoundedVariation { nu: 1, v: 1.0 };
        assert!((trap_error_bound(10, bvt).unwrap() - 0.04).abs() < 1e-16);
        assert!((trap_error_bound(20, an1).unwrap() - 4.0 * PI / (20f64.exp() - 1.0)).abs() < 1e-20);
    }

    #[test]
    fn bounds_decrease() {
        let an = DecayBoundParams::Analytic { alpha: 0.5, m: 2.0 };
        let bv = DecayBoundParams::BoundedVariation { nu: 2, v: 3.0 };
        for p in [an, bv] {
            for n in 1..40 {
                assert!(approx_error_bound(n + 1, ApproxKind::Interpolant, p).unwrap() < approx_error_bound(n, ApproxKind::Interpolant, p).unwrap());
                assert!(trap_error_bound(n + 1, p).unwrap() < trap_error_bound(n, p).unwrap());
                assert!(coeff_bound(n as i64 + 1, p).unwrap() < coeff_bound(n as i64, p).unwrap());
            }
        }
    }

    #[test]
    fn nonuniform_abs_example() {
        let iv = Interval::new(-PI, PI).unwrap();
        let t = [-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5];
        let v: Vec<Complex64> = t.iter().map(|x: &f64| re(x.abs())).collect();
        let p = interp_nonuniform(&t, &v, iv).unwrap();
        for (x, y) in t.iter().zip(&v) {
            assert_eq!(p.eval(*x), *y);
        }
        let q = p.to_trigpoly().unwrap();
        assert_eq!(q.degree(), 4);
        for (x, y) in t.iter().zip(&v) {
            assert!((q.eval(*x) - y).norm() < 1e-13);
        }
        for s in [-2.7, 0.2, 1.9] {
            assert!((q.eval(s) - p.eval(s)).norm() < 1e-13);
        }
    }

    #[test]
    fn nonuniform_trivia_and_errors() {
        let iv = Interval::two_pi();
        let one = interp_nonuniform(&[1.0], &[re(3.0)], iv).unwrap();
        assert_eq!(one.eval(5.0), re(3.0));
        assert!(matches!(interp_nonuniform(&[0.0, 1.0, 2.0 * PI], &[re(0.0); 3], iv), Err(TrigError::DuplicateNode(_))));
        for n in [6usize, 7] {
            let t = trig_points(n, iv).unwrap();
            let v: Vec<Complex64> = (0..n).map(|j| re(((j * 7 + 3) % 5) as f64 - 2.0)).collect();
            let p = interp_nonuniform(&t, &v, iv).unwrap();
            for s in [0.1, 1.3, 4.4] {
                assert!((p.eval(s) - eval_barycentric(&v, iv, s)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn nonuniform_reproduces_its_space() {
        let iv = Interval::new(-1.0, 2.0).unwrap();
        let w = iv.omega();
        for n_pts in [5usize, 8, 13, 20, 41] {
            let t: Vec<f64> = (0..n_pts).map(|j| -1.0 + 3.0 * (j as f64 + 0.37 * ((j * j) % 3) as f64) / n_pts as f64).collect();
            let h = n_pts / 2;
            let s: f64 = t.iter().sum();
            let g = |x: f64| {
                let mut v = 0.3;
                let top = if n_pts % 2 == 0 { h - 1 } else { h };
                for k in 1..=top {
                    v += (k as f64 * w * x).cos() / k as f64 + 0.5 * (k as f64 * w * x + 0.2).sin();
                }
                if n_pts % 2 == 0 {
                    v += 0.7 * (h as f64 * w * x - 0.5 * w * s).sin();
                }
                v
            };
            let vals: Vec<Complex64> = t.iter().map(|&x| re(g(x))).collect();
            let p = interp_nonuniform(&t, &vals, iv).unwrap();
            for x in [-0.77, 0.123, 1.5, 1.99] {
                assert!((p.eval(x).re - g(x)).abs() < 1e-12 * 10.0, "N={n_pts} x={x}");
            }
        }
    }

    #[test]
    fn remez_of_a_polynomial_is_itself() {
        let iv = Interval::two_pi();
        let f = build_adaptive(|t: f64| t.cos() + (3.0 * t).sin() / 2.0, iv, &BuildOptions::default()).unwrap();
        let r = trigremez(&f, 3).unwrap();
        assert_eq!(r.level, 0.0);
        assert_eq!(r.best, f);
    }

    #[test]
    fn remez_of_high_mode_is_zero() {
        for (n, iv) in [(3usize, Interval::two_pi()), (5, Interval::new(-1.0, 1.0).unwrap())] {
            let w = iv.omega();
            let f = build_adaptive(|t: f64| ((n + 1) as f64 * w * t).cos(), iv, &BuildOptions::default()).unwrap();
            let r = trigremez(&f, n).unwrap();
            assert!((r.level - 1.0).abs() < 1e-12, "{n} {} {:?}", r.level, r.reference);
            assert!(r.best.max_abs_coeff() < 1e-12);
            assert_eq!(r.reference.len(), 2 * n + 2);
            for pair in r.signs.windows(2) {
                assert_eq!(pair[0], -pair[1]);
            }
        }
    }

    #[test]
    fn remez_equioscillates() {
        let iv = Interval::two_pi();
        let r = trigremez_fn(|t| (t.sin() + 0.5 * (2.0 * t).cos()).exp(), iv, 4).unwrap();
        assert!(r.warning.is_none());
        let f = build_adaptive(|t: f64| (t.sin() + 0.5 * (2.0 * t).cos()).exp(), iv, &BuildOptions::default()).unwrap();
        for (&x, &s) in r.reference.iter().zip(&r.signs) {
            let e = f.eval_real(x) - r.best.eval_real(x);
            assert!((e - s as f64 * r.level).abs() <= 1e-6 * r.level);
        }
        assert!(matches!(trigremez(&TrigPoly::from_coeffs(vec![re(0.0), re(0.0), Complex64::new(0.0, 1.0)], iv).unwrap(), 0), Err(TrigError::NotReal)));
    }
}
