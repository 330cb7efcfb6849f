use std::f64::consts::PI;

use num_complex::Complex64;

use super::poly::cis_turns;
use super::{Interval, TrigPoly};
use crate::error::{Result, TrigError};
use crate::fft;

/// The `N` equispaced trigonometric points `a + k L / N`, `k = 0..N`.
/// The right endpoint is excluded.
pub fn trig_points(n: usize, interval: Interval) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(TrigError::InvalidSize("need at least one point".into()));
    }
    Ok((0..n).map(|k| grid_point(k, n, interval)).collect())
}

#[inline]
fn grid_point(k: usize, n: usize, interval: Interval) -> f64 {
    interval.a() + interval.length() * (k as f64) / (n as f64)
}

/// Trigonometric interpolant through `values` sampled at
/// `trig_points(values.len(), interval)`.
///
/// Odd `N = 2n + 1` gives degree `n`. Even `N = 2n` stores the `k = +-n`
/// mass as one cosine amplitude, so the sawtooth `(-1)^j` interpolates to
/// `cos(n w (t - a))`. Exactly real data yields an exactly real polynomial.
pub fn interp_coeffs(values: &[Complex64], interval: Interval) -> Result<TrigPoly> {
    let len = values.len();
    if len == 0 {
        return Err(TrigError::InvalidSize("no values to interpolate".into()));
    }
    let mut buf = values.to_vec();
    fft::forward(&mut buf);
    let scale = 1.0 / len as f64;
    let shift = interval.a() / interval.length();
    let n = (len / 2) as i64;
    let mut coeffs = Vec::with_capacity(len);
    let lo = if len % 2 == 0 {
        coeffs.push(buf[n as usize] * scale);
        -n + 1
    } else {
        -n
    };
    for k in lo..=-lo {
        let idx = k.rem_euclid(len as i64) as usize;
        coeffs.push(buf[idx] * scale * cis_turns(-(k as f64) * shift));
    }
    let p = TrigPoly::from_parts(coeffs, interval, false);
    if values.iter().all(|v| v.im == 0.0) {
        Ok(p.enforce_real_symmetry())
    } else {
        Ok(p)
    }
}

/// Barycentric evaluation of the equispaced trigonometric interpolant:
/// `(-1)^k csc` weights for odd `N`, `(-1)^k cot` weights for even `N`.
/// Returns `values[k]` exactly when `t` is the grid point `t_k`.
pub fn eval_barycentric(values: &[Complex64], interval: Interval, t: f64) -> Complex64 {
    let len = values.len();
    assert!(len > 0, "barycentric evaluation needs at least one value");
    if len == 1 {
        return values[0];
    }
    let nf = len as f64;
    let x = ((t - interval.a()) / interval.length()).rem_euclid(1.0) * nf;
    let nearest = (x.round() as usize) % len;
    if t == grid_point(nearest, len, interval) {
        return values[nearest];
    }
    let even = len % 2 == 0;
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (k, v) in values.iter().enumerate() {
        let theta = PI * (x - k as f64) / nf;
        let s = theta.sin();
        if s == 0.0 {
            return *v;
        }
        let mut w = if even { theta.cos() / s } else { 1.0 / s };
        if k % 2 == 1 {
            w = -w;
        }
        num += v * w;
        den += w;
    }
    num / den
}

/// Index in `[-n, n]` to which mode `k` aliases on a grid of odd size
/// `N = 2n + 1`.
pub fn alias_index(k: i64, n_points: usize) -> Result<i64> {
    if n_points % 2 == 0 {
        return Err(TrigError::EvenGrid("alias_index"));
    }
    let big_n = n_points as i64;
    let n = (big_n - 1) / 2;
    Ok((k + n).rem_euclid(big_n) - n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn trig_point_examples() {
        let p = trig_points(4, Interval::two_pi()).unwrap();
        assert_eq!(p, vec![0.0, PI / 2.0, PI, 3.0 * PI / 2.0]);
        assert_eq!(trig_points(1, Interval::two_pi()).unwrap(), vec![0.0]);
        let q = trig_points(3, Interval::new(-1.0, 1.0).unwrap()).unwrap();
        assert_eq!(q[0], -1.0);
        assert!((q[1] + 1.0 / 3.0).abs() < 1e-16);
        assert!((q[2] - 1.0 / 3.0).abs() < 1e-16);
        assert!(matches!(
            trig_points(0, Interval::two_pi()),
            Err(TrigError::InvalidSize(_))
        ));
    }

    #[test]
    fn interp_constant() {
        for n in 1..10 {
            let p = interp_coeffs(&re(&vec![1.0; n]), Interval::two_pi()).unwrap();
            assert!(p.is_real());
            for k in -(p.degree() as i64)..=(p.degree() as i64) {
                let want = if k == 0 { 1.0 } else { 0.0 };
                assert!((p.coeff(k).re - want).abs() < 1e-15 && p.coeff(k).im.abs() < 1e-15);
            }
        }
        assert!(interp_coeffs(&[], Interval::two_pi()).is_err());
    }

    #[test]
    fn interp_cos_plus_sin3() {
        let pts = trig_points(7, Interval::two_pi()).unwrap();
        let vals: Vec<f64> = pts.iter().map(|t| t.cos() + (3.0 * t).sin() / 2.0).collect();
        let p = interp_coeffs(&re(&vals), Interval::two_pi()).unwrap();
        assert_eq!(p.len(), 7);
        let want = [(0.0, 0.25), (0.0, 0.0), (0.5, 0.0), (0.0, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, -0.25)];
        for (c, (wr, wi)) in p.coeffs().iter().zip(want) {
            assert!((c - Complex64::new(wr, wi)).norm() < 1e-16 * 4.0);
        }
    }

    #[test]
    fn sawtooth_even_grid_is_cosine() {
        let vals: Vec<f64> = (0..4).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let p = interp_coeffs(&re(&vals), Interval::two_pi()).unwrap();
        assert!(p.is_even_length());
        let v = p.eval(PI / 4.0);
        assert!(v.norm() < 1e-15, "got {v}");
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn barycentric_examples() {
        let iv = Interval::two_pi();
        let pts = trig_points(7, iv).unwrap();
        let vals = re(&pts.iter().map(|t| t.cos() + (3.0 * t).sin() / 2.0).collect::<Vec<_>>());
        let p = interp_coeffs(&vals, iv).unwrap();
        assert!((eval_barycentric(&vals, iv, 1.0) - p.eval(1.0)).norm() < 1e-13);
        assert_eq!(eval_barycentric(&vals, iv, pts[3]), vals[3]);
        for n in 1..9 {
            let ones = re(&vec![1.0; n]);
            assert!((eval_barycentric(&ones, iv, 0.77).re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn barycentric_even_matches_coefficients() {
        let iv = Interval::new(-1.0, 2.0).unwrap();
        let vals = re(&[0.3, -1.0, 2.0, 0.5, 0.1, -0.7]);
        let p = interp_coeffs(&vals, iv).unwrap();
        for &t in &[-0.9, 0.0, 0.33, 1.7, 5.0] {
            assert!((eval_barycentric(&vals, iv, t) - p.eval(t)).norm() < 1e-13);
        }
    }

    #[test]
    fn alias_examples() {
        for n in 0..6i64 {
            let big = (2 * n + 1) as usize;
            assert_eq!(alias_index(n + 1, big).unwrap(), -n);
        }
        assert_eq!(alias_index(0, 9).unwrap(), 0);
        assert_eq!(alias_index(7, 5).unwrap(), 2);
        assert_eq!(alias_index(-3, 5).unwrap(), 2);
        assert!(alias_index(1, 4).is_err());
    }
}
