//! Arithmetic and calculus on trigonometric polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constructor::{build_adaptive, BuildOptions, NOISE_ALLOWANCE};
use crate::error::{Result, TrigError};
use crate::linalg::{balance, eigenvalues, Mat};
use crate::{fft, Interval, TrigPoly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Companion matrices are used up to this degree; above it the period is
/// split into pieces with local Chebyshev interpolants.
const COMPANION_MAX_DEGREE: usize = 64;
const PIECE_CHEB_DEGREE: usize = 32;
/// Phase span `n w h / 2` of one subdivision piece of width `h`.
const PIECE_PHASE: f64 = 6.0;
const UNIT_CIRCLE_TOL: f64 = 1e-6;
const ROOT_RESIDUAL_TOL: f64 = 1e-12;
const DUPLICATE_TOL: f64 = 1e-10;

fn check_same(p: &TrigPoly, q: &TrigPoly) -> Result<Interval> {
    if p.interval() != q.interval() {
        return Err(TrigError::DomainMismatch);
    }
    Ok(p.interval())
}

/// Odd-length coefficients padded to degree `n`.
fn padded(p: &TrigPoly, n: usize) -> Vec<Complex64> {
    let q = p.to_odd();
    let d = q.degree();
    debug_assert!(d <= n);
    let mut c = vec![ZERO; 2 * n + 1];
    c[n - d..=n + d].copy_from_slice(q.coeffs());
    c
}

/// Drops outer levels whose magnitude is at most `rel_tol * max|c_k|`.
/// Unlike construction, no plateau is required.
pub fn simplify_with(p: &TrigPoly, rel_tol: f64) -> TrigPoly {
    let q = p.to_odd();
    let c = q.coeffs();
    let scale = q.max_abs_coeff();
    if scale == 0.0 {
        return TrigPoly::zero(p.interval());
    }
    let thresh = rel_tol * scale;
    let n = q.degree();
    let mut keep = 0;
    for k in (1..=n).rev() {
        if c[n + k].norm() > thresh || c[n - k].norm() > thresh {
            keep = k;
            break;
        }
    }
    if keep == n {
        return q;
    }
    TrigPoly::from_parts(c[n - keep..=n + keep].to_vec(), p.interval(), q.is_real())
}

/// [`simplify_with`] at the default arithmetic tolerance.
pub fn simplify(p: &TrigPoly) -> TrigPoly {
    simplify_with(p, BuildOptions::default().rel_tol * NOISE_ALLOWANCE)
}

fn combine(p: &TrigPoly, q: &TrigPoly, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<TrigPoly> {
    let iv = check_same(p, q)?;
    let n = p.to_odd().degree().max(q.to_odd().degree());
    let c: Vec<Complex64> = padded(p, n).into_iter().zip(padded(q, n)).map(|(x, y)| f(x, y)).collect();
    Ok(simplify(&TrigPoly::from_parts(c, iv, p.is_real() && q.is_real())))
}

pub fn add(p: &TrigPoly, q: &TrigPoly) -> Result<TrigPoly> {
    combine(p, q, |x, y| x + y)
}

pub fn sub(p: &TrigPoly, q: &TrigPoly) -> Result<TrigPoly> {
    combine(p, q, |x, y| x - y)
}

pub fn scale(p: &TrigPoly, s: Complex64) -> TrigPoly {
    let q = p.to_odd();
    let c = q.coeffs().iter().map(|c| c * s).collect();
    let r = TrigPoly::from_parts(c, p.interval(), false);
    if p.is_real() && s.im == 0.0 {
        simplify(&r.enforce_real_symmetry())
    } else {
        simplify(&r)
    }
}

/// `p + s`.
pub fn add_scalar(p: &TrigPoly, s: Complex64) -> TrigPoly {
    let q = p.to_odd();
    let n = q.degree();
    let mut c = q.coeffs().to_vec();
    c[n] += s;
    simplify(&TrigPoly::from_parts(c, p.interval(), p.is_real() && s.im == 0.0))
}

/// Product of two polynomials: exact linear convolution of the coefficients
/// (an alias-free transform length), then simplified.
pub fn multiply(p: &TrigPoly, q: &TrigPoly) -> Result<TrigPoly> {
    let iv = check_same(p, q)?;
    let a = p.to_odd();
    let b = q.to_odd();
    let len = a.len() + b.len() - 1;
    let c = if a.len().min(b.len()) <= 16 {
        let mut c = vec![ZERO; len];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        c
    } else {
        let m = len.next_power_of_two();
        let mut fa = vec![ZERO; m];
        let mut fb = vec![ZERO; m];
        fa[..a.len()].copy_from_slice(a.coeffs());
        fb[..b.len()].copy_from_slice(b.coeffs());
        fft::forward(&mut fa);
        fft::forward(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x *= y;
        }
        fft::inverse(&mut fa);
        let s = 1.0 / m as f64;
        fa.truncate(len);
        fa.iter_mut().for_each(|x| *x *= s);
        fa
    };
    let r = TrigPoly::from_parts(c, iv, false);
    let r = if p.is_real() && q.is_real() { r.enforce_real_symmetry() } else { r };
    Ok(simplify(&r))
}

/// `m`-th derivative. Even-length input is first stored with odd length, so
/// the derivative of the top cosine keeps its sine partner.
pub fn differentiate(p: &TrigPoly, m: u32) -> TrigPoly {
    let q = p.to_odd();
    let n = q.degree();
    let w = p.interval().omega();
    let c = q.coeffs();
    let mut out = vec![ZERO; c.len()];
    for k in 0..=n {
        let f = Complex64::new(0.0, k as f64 * w).powu(m);
        out[n + k] = c[n + k] * f;
        out[n - k] = if p.is_real() {
            out[n + k].conj()
        } else {
            c[n - k] * f.conj()
        };
    }
    if m > 0 {
        out[n] = ZERO;
    }
    let r = TrigPoly::from_parts(out, p.interval(), p.is_real());
    if p.is_even_length() {
        r
    } else {
        simplify(&r)
    }
}

/// Definite integral over one period, `L c_0`.
pub fn integral(p: &TrigPoly) -> Complex64 {
    p.coeff(0) * p.interval().length()
}

/// Mean value `c_0`.
pub fn mean(p: &TrigPoly) -> Complex64 {
    p.coeff(0)
}

/// `L^2` norm over one period by Parseval.
pub fn norm2(p: &TrigPoly) -> f64 {
    let q = p.to_odd();
    let s: f64 = q.coeffs().iter().map(|c| c.norm_sqr()).sum();
    (p.interval().length() * s).sqrt()
}

/// `max |p|` over the period: the largest samples on an oversampled grid,
/// each refined by a golden-section search between its neighbours.
pub fn norm_inf(p: &TrigPoly) -> f64 {
    if p.len() == 1 {
        return p.coeffs()[0].norm();
    }
    let m = (8 * p.len()).next_power_of_two().max(64);
    let vals = p.samples(m);
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&i, &j| vals[j].norm().total_cmp(&vals[i].norm()));
    let iv = p.interval();
    let h = iv.length() / m as f64;
    let mut best = vals[idx[0]].norm();
    for &i in idx.iter().take(3) {
        let t = iv.a() + i as f64 * h;
        best = best.max(golden_max(|x| p.eval(x).norm(), t - h, t + h));
    }
    best
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo <= 1e-15 * (1.0 + lo.abs()) {
            break;
        }
    }
    f1.max(f2)
}

/// Periodic convolution `int f(s) g(t - s) ds`: `c_k = L f_k g_k`.
pub fn circconv(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    let iv = check_same(f, g)?;
    let n = f.to_odd().degree().min(g.to_odd().degree());
    let big = f.to_odd().degree().max(g.to_odd().degree());
    let a = padded(f, big);
    let b = padded(g, big);
    let l = iv.length();
    let c: Vec<Complex64> = (big - n..=big + n).map(|i| a[i] * b[i] * l).collect();
    Ok(simplify(&TrigPoly::from_parts(c, iv, f.is_real() && g.is_real())))
}

/// Resamples `t -> h(p(t))` adaptively.
pub fn compose<H>(p: &TrigPoly, h: H) -> Result<TrigPoly>
where
    H: Fn(Complex64) -> Complex64,
{
    compose_with(p, h, &BuildOptions::default())
}

pub fn compose_with<H>(p: &TrigPoly, h: H, opts: &BuildOptions) -> Result<TrigPoly>
where
    H: Fn(Complex64) -> Complex64,
{
    build_adaptive(|t| h(p.eval(t)), p.interval(), opts)
}

/// Resamples `t -> h(p(t), q(t))` adaptively.
pub fn zip_with<H>(p: &TrigPoly, q: &TrigPoly, h: H) -> Result<TrigPoly>
where
    H: Fn(Complex64, Complex64) -> Complex64,
{
    let iv = check_same(p, q)?;
    build_adaptive(|t| h(p.eval(t), q.eval(t)), iv, &BuildOptions::default())
}

/// `p / q` by adaptive resampling.
pub fn divide(p: &TrigPoly, q: &TrigPoly) -> Result<TrigPoly> {
    zip_with(p, q, |x, y| x / y)
}

/// Real roots of `p` in `[a, b)`, sorted.
pub fn roots(p: &TrigPoly) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(TrigError::ZeroFunction);
    }
    let q = simplify(p);
    if q.degree() == 0 {
        return Ok(Vec::new());
    }
    let candidates = if q.degree() <= COMPANION_MAX_DEGREE {
        companion_candidates(&q)?
    } else {
        subdivision_candidates(&q)?
    };
    let dq = differentiate(&q, 1);
    let cmax = q.max_abs_coeff();
    let iv = q.interval();
    let mut found: Vec<f64> = candidates
        .into_iter()
        .filter_map(|t| {
            let t = polish(&q, &dq, t);
            let r = q.eval(t).norm();
            let slope = dq.eval(t).norm();
            (r <= ROOT_RESIDUAL_TOL * cmax * (1.0 + slope)).then(|| iv.wrap(t))
        })
        .collect();
    found.sort_by(f64::total_cmp);
    Ok(dedupe_periodic(found, iv))
}

fn polish(p: &TrigPoly, dp: &TrigPoly, mut t: f64) -> f64 {
    let mut best = (p.eval(t).norm(), t);
    for _ in 0..4 {
        let v = p.eval(t);
        let d = dp.eval(t);
        let dn = d.norm_sqr();
        if dn == 0.0 {
            break;
        }
        let step = (d.conj() * v).re / dn;
        if !step.is_finite() {
            break;
        }
        t -= step;
        let r = p.eval(t).norm();
        if r < best.0 {
            best = (r, t);
        }
        if step.abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
            break;
        }
    }
    best.1
}

fn dedupe_periodic(sorted: Vec<f64>, iv: Interval) -> Vec<f64> {
    let tol = DUPLICATE_TOL * iv.length();
    let mut out: Vec<f64> = Vec::with_capacity(sorted.len());
    for t in sorted {
        match out.last() {
            Some(&last) if t - last <= tol => {}
            _ => out.push(t),
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if first + iv.length() - last <= tol {
            out.pop();
        }
    }
    out
}

/// Unit-circle eigenvalues of the companion matrix of
/// `q(z) = sum c_k z^(k+n)`, mapped back to `t`.
fn companion_candidates(p: &TrigPoly) -> Result<Vec<f64>> {
    let c = p.coeffs();
    let mut hi = c.len() - 1;
    while hi > 0 && c[hi] == ZERO {
        hi -= 1;
    }
    let mut lo = 0;
    while lo < hi && c[lo] == ZERO {
        lo += 1;
    }
    let poly = &c[lo..=hi];
    let d = poly.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = poly[d];
    let m = Mat::from_fn(d, d, |i, j| {
        if i == 0 {
            -poly[d - 1 - j] / lead
        } else if j + 1 == i {
            Complex64::new(1.0, 0.0)
        } else {
            ZERO
        }
    });
    let w = p.interval().omega();
    Ok(eigenvalues(balance(m))?
        .into_iter()
        .filter(|z| (z.norm() - 1.0).abs() <= UNIT_CIRCLE_TOL)
        .map(|z| z.arg().rem_euclid(2.0 * PI) / w)
        .collect())
}

/// Splits the period into pieces, interpolates each by a Chebyshev series
/// and takes the real eigenvalues of its colleague matrix.
fn subdivision_candidates(p: &TrigPoly) -> Result<Vec<f64>> {
    let iv = p.interval();
    let n = p.degree() as f64;
    let pieces = ((n * PI) / PIECE_PHASE).ceil().max(1.0) as usize;
    let h = iv.length() / pieces as f64;
    let scale = p.coeffs().iter().map(|c| c.norm()).sum::<f64>();
    let mut out = Vec::new();
    for j in 0..pieces {
        let x0 = iv.a() + j as f64 * h;
        piece_roots(p, x0, x0 + h, scale, 0, &mut out)?;
    }
    Ok(out)
}

fn piece_roots(p: &TrigPoly, x0: f64, x1: f64, scale: f64, depth: u32, out: &mut Vec<f64>) -> Result<()> {
    let d = PIECE_CHEB_DEGREE;
    let mid = 0.5 * (x0 + x1);
    let half = 0.5 * (x1 - x0);
    let vals: Vec<Complex64> = (0..=d)
        .map(|j| p.eval(mid + half * (PI * j as f64 / d as f64).cos()))
        .collect();
    let mut a = cheb_coeffs(&vals);
    let tail = a[d].norm().max(a[d - 1].norm());
    if tail > 1e-13 * scale && depth < 12 {
        piece_roots(p, x0, mid, scale, depth + 1, out)?;
        return piece_roots(p, mid, x1, scale, depth + 1, out);
    }
    let floor = 1e-15 * scale;
    while a.len() > 1 && a.last().unwrap().norm() <= floor {
        a.pop();
    }
    for x in colleague_roots(&a)? {
        if x.im.abs() <= UNIT_CIRCLE_TOL && x.re.abs() <= 1.0 + 1e-8 {
            out.push(mid + half * x.re.clamp(-1.0, 1.0));
        }
    }
    Ok(())
}

/// Chebyshev coefficients from values at `cos(pi j / d)`, `j = 0..=d`.
fn cheb_coeffs(vals: &[Complex64]) -> Vec<Complex64> {
    let d = vals.len() - 1;
    let df = d as f64;
    (0..=d)
        .map(|k| {
            let mut s = ZERO;
            for (j, v) in vals.iter().enumerate() {
                let w = if j == 0 || j == d { 0.5 } else { 1.0 };
                s += v * (w * (PI * (j * k) as f64 / df).cos());
            }
            let f = if k == 0 || k == d { 1.0 / df } else { 2.0 / df };
            s * f
        })
        .collect()
}

fn colleague_roots(a: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = a.len() - 1;
    match d {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-a[0] / a[1]]),
        _ => {
            let half = Complex64::new(0.5, 0.0);
            let mut m = Mat::zeros(d, d);
            m[(0, 1)] = Complex64::new(1.0, 0.0);
            for i in 1..d - 1 {
                m[(i, i - 1)] = half;
                m[(i, i + 1)] = half;
            }
            m[(d - 1, d - 2)] = half;
            for j in 0..d {
                m[(d - 1, j)] -= a[j] / (a[d] * 2.0);
            }
            eigenvalues(balance(m))
        }
    }
}

/// Global extrema of a real polynomial: `(max, argmax, min, argmin)`.
pub fn extrema(p: &TrigPoly) -> Result<(f64, f64, f64, f64)> {
    if !p.is_real() {
        return Err(TrigError::NotReal);
    }
    let iv = p.interval();
    let mut cands = vec![iv.a()];
    let dp = differentiate(p, 1);
    if !dp.is_zero() {
        cands.extend(roots(&dp)?);
    }
    let mut best = (f64::NEG_INFINITY, iv.a(), f64::INFINITY, iv.a());
    for t in cands {
        let v = p.eval_real(t);
        if v > best.0 {
            best.0 = v;
            best.1 = t;
        }
        if v < best.2 {
            best.2 = v;
            best.3 = t;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_adaptive;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f0() -> TrigPoly {
        build_adaptive(|t: f64| t.cos() + (3.0 * t).sin() / 2.0, Interval::two_pi(), &BuildOptions::default()).unwrap()
    }

    fn cosine(iv: Interval) -> TrigPoly {
        TrigPoly::from_coeffs(vec![c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)], iv).unwrap()
    }

    #[test]
    fn square_of_cosine() {
        let p = cosine(Interval::two_pi());
        let q = multiply(&p, &p).unwrap();
        assert_eq!(q.degree(), 2);
        assert!(q.is_real());
        assert!((q.coeff(0).re - 0.5).abs() < 1e-16);
        assert!((q.coeff(2).re - 0.25).abs() < 1e-16);
        assert!(q.coeff(1).norm() < 1e-16);
    }

    #[test]
    fn p_minus_p_is_zero_of_length_one() {
        let p = f0();
        let z = add(&p, &scale(&p, c(-1.0, 0.0))).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z.is_zero());
        assert!(matches!(add(&p, &cosine(Interval::default())), Err(TrigError::DomainMismatch)));
    }

    #[test]
    fn product_matches_pointwise_product() {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let p = build_adaptive(|t: f64| (std::f64::consts::PI * t).sin().exp(), iv, &BuildOptions::default()).unwrap();
        let q = build_adaptive(|t: f64| 1.0 / (2.0 + (std::f64::consts::PI * t).cos()), iv, &BuildOptions::default()).unwrap();
        let r = multiply(&p, &q).unwrap();
        assert!(r.is_real());
        for i in 0..200 {
            let t = -1.0 + 0.01 * i as f64 + 0.003;
            let want = p.eval_real(t) * q.eval_real(t);
            assert!((r.eval_real(t) - want).abs() < 1e-14 * 4.0, "t={t}");
        }
    }

    #[test]
    fn derivative_examples() {
        let d = differentiate(&cosine(Interval::two_pi()), 1);
        let (a, b) = d.exp_to_cos_sin();
        assert!(a.iter().all(|x| x.norm() < 1e-16));
        assert!((b[0].re + 1.0).abs() < 1e-16);
        let k = differentiate(&TrigPoly::constant(c(3.0, 0.0), Interval::two_pi()), 1);
        assert!(k.is_zero());
        // even length: cos(2t) from sawtooth data
        let saw: Vec<Complex64> = (0..4).map(|j| c(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect();
        let e = crate::trigcore::interp_coeffs(&saw, Interval::two_pi()).unwrap();
        let de = differentiate(&e, 1);
        assert_eq!(de.len(), 5);
        let (_, b) = de.exp_to_cos_sin();
        assert!((b[1].re + 2.0).abs() < 1e-15, "{b:?}");
    }

    #[test]
    fn derivative_scales_with_interval() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let p = build_adaptive(|t: f64| (2.0 * PI * t).sin(), iv, &BuildOptions::default()).unwrap();
        let d = differentiate(&p, 1);
        assert!((d.eval_real(0.0) - 2.0 * PI).abs() < 1e-13);
        let d2 = differentiate(&p, 2);
        assert!((d2.eval_real(0.25) + 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn classic_calculus_numbers() {
        let f = f0();
        let f2 = multiply(&f, &f).unwrap();
        assert!((integral(&f2).re - 3.926990816987241).abs() < 1e-14);
        assert!((norm2(&f) - 1.981663648803005).abs() < 1e-14);
        let r = roots(&f).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.263651122898791).abs() < 1e-12);
        assert!((r[1] - 4.405243776488583).abs() < 1e-12);
        let (mx, _, _, _) = extrema(&f).unwrap();
        assert!((mx - 1.389383416980387).abs() < 1e-12);
    }

    #[test]
    fn integral_and_norm_trivia() {
        let iv = Interval::two_pi();
        let mode = TrigPoly::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], iv).unwrap();
        assert_eq!(integral(&mode), c(0.0, 0.0));
        assert!((norm2(&mode) - (2.0 * PI).sqrt()).abs() < 1e-15);
        assert_eq!(norm2(&TrigPoly::zero(iv)), 0.0);
        let e = build_adaptive(|t: f64| t.sin().exp(), iv, &BuildOptions::default()).unwrap();
        let n = 1_000_000;
        let h = 2.0 * PI / n as f64;
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for j in 0..n {
            let y = (j as f64 * h).sin().exp() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        let oracle = sum * h;
        assert!((integral(&e).re - oracle).abs() < 1e-13, "{} vs {oracle}", integral(&e).re);
        assert!((integral(&e).re - 7.954926521012846).abs() < 1e-13);
    }

    #[test]
    fn cosine_roots_and_max() {
        let p = cosine(Interval::two_pi());
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - PI / 2.0).abs() < 1e-14 && (r[1] - 1.5 * PI).abs() < 1e-14);
        let (mx, at, mn, _) = extrema(&p).unwrap();
        assert!((mx - 1.0).abs() < 1e-15 && at.abs() < 1e-12);
        assert!((mn + 1.0).abs() < 1e-15);
        assert!(matches!(roots(&TrigPoly::zero(Interval::two_pi())), Err(TrigError::ZeroFunction)));
        let cp = TrigPoly::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)], Interval::two_pi()).unwrap();
        assert!(matches!(extrema(&cp), Err(TrigError::NotReal)));
    }

    #[test]
    fn double_root_is_found_once() {
        // 1 + cos t has a double root at pi
        let p = add_scalar(&cosine(Interval::two_pi()), c(1.0, 0.0));
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 1, "{r:?}");
        assert!((r[0] - PI).abs() < 1e-7);
    }

    #[test]
    fn high_degree_roots_match_sign_changes() {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let p = build_adaptive(|t: f64| (90.0 * PI * t).sin() + 0.3 * (7.0 * PI * t).cos() * (2.0 * (PI * t).sin()).exp(), iv, &BuildOptions::default()).unwrap();
        assert!(p.degree() > COMPANION_MAX_DEGREE);
        let r = roots(&p).unwrap();
        let m = 100_000;
        let mut count = 0;
        let mut prev = p.eval_real(-1.0);
        for i in 1..=m {
            let t = -1.0 + 2.0 * i as f64 / m as f64;
            let v = p.eval_real(t);
            if v == 0.0 || v.signum() != prev.signum() {
                count += 1;
            }
            prev = v;
        }
        assert_eq!(r.len(), count);
        for t in r {
            assert!(p.eval_real(t).abs() < 1e-12);
        }
    }

    #[test]
    fn circconv_examples() {
        let iv = Interval::two_pi();
        let f = f0();
        let g = TrigPoly::constant(c(1.0 / iv.length(), 0.0), iv);
        let h = circconv(&f, &g).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h.coeff(0) - f.coeff(0)).norm() < 1e-16);
        let e = TrigPoly::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], iv).unwrap();
        let ee = circconv(&e, &e).unwrap();
        assert!((ee.coeff(1).re - 2.0 * PI).abs() < 1e-14);
        let p = f0();
        let q = build_adaptive(|t: f64| t.sin().exp(), iv, &BuildOptions::default()).unwrap();
        assert_eq!(circconv(&p, &q).unwrap(), circconv(&q, &p).unwrap());
    }

    #[test]
    fn derivative_has_zero_mean() {
        let iv = Interval::new(0.0, 3.0).unwrap();
        let p = build_adaptive(|t: f64| (t * 2.0 * PI / 3.0).cos().exp(), iv, &BuildOptions::default()).unwrap();
        let d = differentiate(&p, 1);
        assert!(integral(&d).norm() < 1e-14 * p.max_abs_coeff() * p.degree() as f64);
    }

    #[test]
    fn compose_and_divide() {
        let iv = Interval::two_pi();
        let z = build_adaptive(|t: f64| Complex64::cis(t), iv, &BuildOptions::default()).unwrap();
        let f = compose(&z, |z| z.cos() - z).unwrap();
        let df = differentiate(&f, 1);
        let m = integral(&divide(&df, &f).unwrap()) / Complex64::new(0.0, 2.0 * PI);
        assert!((m.re - 1.0).abs() < 1e-12, "{m}");
    }
}
