use std::f64::consts::TAU;

use num_complex::Complex64;

use super::Interval;
use crate::error::{Result, TrigError};
use crate::fft;

/// `exp(2 pi i x)` with `x` first reduced to `[0, 1)`.
#[inline]
pub(crate) fn cis_turns(x: f64) -> Complex64 {
    Complex64::cis(TAU * x.rem_euclid(1.0))
}

/// A trigonometric polynomial on a periodic interval.
///
/// Coefficients are stored in canonical order `c_{-n}, ..., c_n` against the
/// basis `exp(i k w t)`, `w = 2 pi / L`. An even length `N = 2n` is the
/// equispaced-interpolation convention: slot 0 holds the amplitude `A` of a
/// pure cosine `A cos(n w (t - a))` measured from the left endpoint, and
/// slots `1..N` hold `c_{-n+1}, ..., c_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<Complex64>,
    interval: Interval,
    is_real: bool,
}

impl TrigPoly {
    /// Builds a polynomial from canonical-order coefficients. The result is
    /// flagged real only when the coefficients are exactly conjugate symmetric.
    pub fn from_coeffs(coeffs: Vec<Complex64>, interval: Interval) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(TrigError::InvalidSize(
                "a trigonometric polynomial needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(TrigError::InvalidSize("non-finite coefficient".into()));
        }
        let is_real = exactly_conjugate_symmetric(&coeffs);
        Ok(TrigPoly {
            coeffs,
            interval,
            is_real,
        })
    }

    pub(crate) fn from_parts(coeffs: Vec<Complex64>, interval: Interval, is_real: bool) -> Self {
        debug_assert!(!coeffs.is_empty());
        TrigPoly {
            coeffs,
            interval,
            is_real,
        }
    }

    pub fn zero(interval: Interval) -> Self {
        Self::constant(Complex64::new(0.0, 0.0), interval)
    }

    pub fn constant(c: Complex64, interval: Interval) -> Self {
        TrigPoly {
            coeffs: vec![c],
            interval,
            is_real: c.im == 0.0,
        }
    }

    /// Number of stored coefficients `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Degree `n`: `N = 2n + 1` for odd length, `N = 2n` for even.
    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn is_even_length(&self) -> bool {
        self.coeffs.len() % 2 == 0
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// Canonical-order coefficients (see the type docs for even lengths).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficient of `exp(i k w t)`. For even lengths the top cosine is split
    /// into its two exponential halves.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let n = self.degree() as i64;
        if k.abs() > n {
            return Complex64::new(0.0, 0.0);
        }
        if self.is_even_length() {
            if k.abs() == n {
                return self.top_half(k);
            }
            self.coeffs[(k + n) as usize]
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    fn top_half(&self, k: i64) -> Complex64 {
        // A cos(n w (t - a)) = A/2 e^{-i n w a} e^{i n w t} + A/2 e^{i n w a} e^{-i n w t}
        let amp = self.coeffs[0] * 0.5;
        let n = self.degree() as f64;
        let phase = cis_turns(-n * self.interval.a() / self.interval.length());
        let pos = amp * phase;
        if k > 0 {
            pos
        } else if self.is_real {
            pos.conj()
        } else {
            amp * phase.conj()
        }
    }

    /// The same function stored with odd length (an even-length polynomial
    /// grows by one coefficient; odd lengths are returned unchanged).
    pub fn to_odd(&self) -> TrigPoly {
        if !self.is_even_length() {
            return self.clone();
        }
        let n = self.degree() as i64;
        let mut c = Vec::with_capacity(self.len() + 1);
        c.push(self.top_half(-n));
        c.extend_from_slice(&self.coeffs[1..]);
        c.push(self.top_half(n));
        TrigPoly::from_parts(c, self.interval, self.is_real)
    }

    /// Evaluates the polynomial at `t`. Points outside `[a, b)` are valid.
    pub fn eval(&self, t: f64) -> Complex64 {
        let turns = self.interval.turns(t);
        let z = cis_turns(turns);
        let n = self.degree();
        let (body, top) = if self.is_even_length() {
            let amp = self.coeffs[0];
            let x = self.interval.turns_from_left(t) * n as f64;
            (&self.coeffs[1..], Some(amp * (TAU * x.rem_euclid(1.0)).cos()))
        } else {
            (&self.coeffs[..], None)
        };
        let m = body.len() / 2;
        let mut pos = Complex64::new(0.0, 0.0);
        for c in body[m + 1..].iter().rev() {
            pos = (pos + c) * z;
        }
        let value = if self.is_real {
            Complex64::new(body[m].re + 2.0 * pos.re, 0.0)
        } else {
            let zc = z.conj();
            let mut neg = Complex64::new(0.0, 0.0);
            for c in body[..m].iter() {
                neg = (neg + c) * zc;
            }
            body[m] + pos + neg
        };
        match top {
            Some(v) if self.is_real => value + Complex64::new(v.re, 0.0),
            Some(v) => value + v,
            None => value,
        }
    }

    /// Real part of [`eval`](Self::eval).
    pub fn eval_real(&self, t: f64) -> f64 {
        self.eval(t).re
    }

    pub fn eval_many(&self, ts: &[f64]) -> Vec<Complex64> {
        ts.iter().map(|&t| self.eval(t)).collect()
    }

    /// Values at the `n` trigonometric points of the interval, via one
    /// inverse FFT. Coefficients beyond the grid are folded (aliased), which
    /// is exact at the grid points.
    pub fn samples(&self, n: usize) -> Vec<Complex64> {
        assert!(n > 0, "sample grid must be nonempty");
        let p = self.to_odd();
        let deg = p.degree() as i64;
        let shift = p.interval.a() / p.interval.length();
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in p.coeffs.iter().enumerate() {
            let k = i as i64 - deg;
            let idx = k.rem_euclid(n as i64) as usize;
            buf[idx] += c * cis_turns(k as f64 * shift);
        }
        fft::inverse(&mut buf);
        if self.is_real {
            for v in buf.iter_mut() {
                v.im = 0.0;
            }
        }
        buf
    }

    /// Cosine/sine coefficients `(a_0..a_n, b_1..b_n)` of
    /// `sum a_k cos(k w t) + sum b_k sin(k w t)`.
    pub fn exp_to_cos_sin(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let p = self.to_odd();
        let n = p.degree();
        let i = Complex64::new(0.0, 1.0);
        let mut a = Vec::with_capacity(n + 1);
        let mut b = Vec::with_capacity(n);
        a.push(p.coeffs[n]);
        for k in 1..=n {
            let cp = p.coeffs[n + k];
            let cm = p.coeffs[n - k];
            a.push(cp + cm);
            b.push(i * (cp - cm));
        }
        (a, b)
    }

    /// Inverse of [`exp_to_cos_sin`](Self::exp_to_cos_sin). `b` holds
    /// `b_1..b_n`, or `b_0..b_n` with an ignored leading slot.
    pub fn cos_sin_to_exp(a: &[Complex64], b: &[Complex64], interval: Interval) -> Result<Self> {
        if a.is_empty() {
            return Err(TrigError::Shape("cosine coefficients are empty".into()));
        }
        let n = a.len() - 1;
        let b = match b.len() {
            l if l == n => b,
            l if l == n + 1 => &b[1..],
            l => {
                return Err(TrigError::Shape(format!(
                    "expected {} or {} sine coefficients for {} cosine coefficients, got {}",
                    n,
                    n + 1,
                    n + 1,
                    l
                )))
            }
        };
        let half_i = Complex64::new(0.0, 0.5);
        let mut c = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
        c[n] = a[0];
        for k in 1..=n {
            let ak = a[k] * 0.5;
            let bk = b[k - 1] * half_i;
            c[n + k] = ak - bk;
            c[n - k] = ak + bk;
        }
        let is_real = a.iter().chain(b).all(|x| x.im == 0.0);
        Ok(TrigPoly::from_parts(c, interval, is_real))
    }

    /// Replaces `c_k` and `conj(c_{-k})` by their average, drops the
    /// imaginary part of `c_0` and flags the result real.
    pub fn enforce_real_symmetry(&self) -> TrigPoly {
        let mut c = self.coeffs.clone();
        let len = c.len();
        let (start, body) = if len % 2 == 0 {
            c[0].im = 0.0;
            (1, len - 1)
        } else {
            (0, len)
        };
        let mid = start + body / 2;
        c[mid].im = 0.0;
        for k in 1..=body / 2 {
            let avg = (c[mid + k] + c[mid - k].conj()) * 0.5;
            c[mid + k] = avg;
            c[mid - k] = avg.conj();
        }
        TrigPoly::from_parts(c, self.interval, true)
    }

    /// Moves the polynomial to `target`: the result `g` satisfies
    /// `g(a' + s L'/L) = p(a + s)`, with `g` expanded in the (fixed) basis
    /// of the target interval. For a pure translation by `d` this is
    /// `g(t) = p(t - d)`, `c_k -> c_k exp(-i k w d)`.
    pub fn transplant(&self, target: Interval) -> TrigPoly {
        let src = self.interval;
        let delta = src.a() / src.length() - target.a() / target.length();
        let mut c = self.coeffs.clone();
        let len = c.len();
        let (start, body) = if len % 2 == 0 { (1, len - 1) } else { (0, len) };
        let mid = start + body / 2;
        for k in 1..=body / 2 {
            let ph = cis_turns(k as f64 * delta);
            c[mid + k] *= ph;
            c[mid - k] = if self.is_real {
                c[mid + k].conj()
            } else {
                c[mid - k] * ph.conj()
            };
        }
        TrigPoly::from_parts(c, target, self.is_real)
    }
}

fn exactly_conjugate_symmetric(c: &[Complex64]) -> bool {
    let len = c.len();
    let (start, body) = if len % 2 == 0 {
        if c[0].im != 0.0 {
            return false;
        }
        (1, len - 1)
    } else {
        (0, len)
    };
    let mid = start + body / 2;
    c[mid].im == 0.0 && (1..=body / 2).all(|k| c[mid + k] == c[mid - k].conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos_plus_sin3() -> TrigPoly {
        let mut v = vec![c(0.0, 0.0); 7];
        v[2] = c(0.5, 0.0);
        v[4] = c(0.5, 0.0);
        v[0] = c(0.0, 0.25);
        v[6] = c(0.0, -0.25);
        TrigPoly::from_coeffs(v, Interval::two_pi()).unwrap()
    }

    #[test]
    fn exp_to_cos_sin_examples() {
        let cosine = TrigPoly::from_coeffs(
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
            Interval::two_pi(),
        )
        .unwrap();
        let (a, b) = cosine.exp_to_cos_sin();
        assert_eq!(a, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(b, vec![c(0.0, 0.0)]);

        let sine = TrigPoly::from_coeffs(
            vec![c(0.0, 0.5), c(0.0, 0.0), c(0.0, -0.5)],
            Interval::two_pi(),
        )
        .unwrap();
        let (a, b) = sine.exp_to_cos_sin();
        assert_eq!(a, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(b, vec![c(1.0, 0.0)]);

        let (a, b) = cos_plus_sin3().exp_to_cos_sin();
        let want_a = [0.0, 1.0, 0.0, 0.0];
        let want_b = [0.0, 0.0, 0.5];
        for (x, w) in a.iter().zip(want_a) {
            assert_eq!(*x, c(w, 0.0));
        }
        for (x, w) in b.iter().zip(want_b) {
            assert_eq!(*x, c(w, 0.0));
        }
    }

    #[test]
    fn cos_sin_to_exp_examples() {
        let p = TrigPoly::cos_sin_to_exp(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0)], Interval::two_pi())
            .unwrap();
        assert_eq!(p.coeffs(), &[c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert!(p.is_real());

        let k = TrigPoly::cos_sin_to_exp(&[c(3.0, 0.0)], &[], Interval::two_pi()).unwrap();
        assert_eq!(k.coeffs(), &[c(3.0, 0.0)]);

        let zero = c(0.0, 0.0);
        let p = TrigPoly::cos_sin_to_exp(
            &[zero, zero, zero, zero],
            &[zero, zero, c(0.5, 0.0)],
            Interval::two_pi(),
        )
        .unwrap();
        assert_eq!(p.coeff(3), c(0.0, -0.25));
        assert_eq!(p.coeff(-3), c(0.0, 0.25));
        assert_eq!(p.coeff(1), zero);

        // padded leading b slot
        let q = TrigPoly::cos_sin_to_exp(&[zero, c(1.0, 0.0)], &[c(9.0, 0.0), zero], Interval::two_pi())
            .unwrap();
        assert_eq!(q.coeffs(), &[c(0.5, 0.0), zero, c(0.5, 0.0)]);

        assert!(matches!(
            TrigPoly::cos_sin_to_exp(&[zero, zero], &[zero, zero, zero], Interval::two_pi()),
            Err(TrigError::Shape(_))
        ));
        assert!(TrigPoly::cos_sin_to_exp(&[], &[], Interval::two_pi()).is_err());
    }

    #[test]
    fn eval_matches_direct_sum_and_periodicity() {
        let p = cos_plus_sin3();
        assert!((p.eval(0.0) - c(1.0, 0.0)).norm() < 1e-15);
        for &t in &[0.3f64, 1.7, 4.0, -2.2, 19.0] {
            let exact = t.cos() + (3.0 * t).sin() / 2.0;
            assert!((p.eval_real(t) - exact).abs() < 1e-14);
            assert!((p.eval_real(t + 2.0 * PI) - p.eval_real(t)).abs() < 1e-14);
        }
        assert_eq!(p.eval(1.3).im, 0.0);
    }

    #[test]
    fn complex_eval() {
        let p = TrigPoly::from_coeffs(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], Interval::two_pi())
            .unwrap();
        assert!(!p.is_real());
        assert!((p.eval(PI) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn even_length_top_mode_is_cosine_from_left_endpoint() {
        let iv = Interval::new(-PI, PI).unwrap();
        // length 4 (n = 2), only the cosine amplitude set
        let p = TrigPoly::from_coeffs(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], iv)
            .unwrap();
        for &t in &[0.1, 1.0, 2.5] {
            assert!((p.eval_real(t) - (2.0 * (t + PI)).cos()).abs() < 1e-14);
        }
        let q = p.to_odd();
        assert_eq!(q.len(), 5);
        for &t in &[0.1, 1.0, 2.5] {
            assert!((q.eval(t) - p.eval(t)).norm() < 1e-14);
        }
    }

    #[test]
    fn samples_agree_with_eval() {
        let p = cos_plus_sin3();
        for n in [3usize, 7, 8, 16, 25] {
            let s = p.samples(n);
            for (j, v) in s.iter().enumerate() {
                let t = 2.0 * PI * j as f64 / n as f64;
                assert!((v - p.eval(t)).norm() < 1e-14, "n={n} j={j}");
            }
        }
        let shifted = p.transplant(Interval::new(-1.0, 2.0 * PI - 1.0).unwrap());
        let s = shifted.samples(9);
        for (j, v) in s.iter().enumerate() {
            let t = -1.0 + 2.0 * PI * j as f64 / 9.0;
            assert!((v - shifted.eval(t)).norm() < 1e-14);
        }
    }

    #[test]
    fn enforce_symmetry_examples() {
        let k = TrigPoly::from_coeffs(vec![c(1.0, 1e-17)], Interval::two_pi()).unwrap();
        assert!(!k.is_real());
        let k = k.enforce_real_symmetry();
        assert_eq!(k.coeffs(), &[c(1.0, 0.0)]);
        assert!(k.is_real());

        let p = TrigPoly::from_coeffs(vec![c(0.5, 1e-16), c(0.0, 0.0), c(0.5, 0.0)], Interval::two_pi())
            .unwrap();
        let q = p.enforce_real_symmetry();
        assert_eq!(q.coeff(1), q.coeff(-1).conj());
        assert!((q.coeff(1) - c(0.5, -5e-17)).norm() < 1e-30);
        let diff = (q.eval(0.4) - p.eval(0.4)).norm();
        assert!(diff <= 2.0 * 1e-16);
    }

    #[test]
    fn transplant_footnote_example() {
        let src = Interval::new(-PI, PI).unwrap();
        let f = TrigPoly::cos_sin_to_exp(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0)], src).unwrap();
        let g = f.transplant(Interval::two_pi());
        let (a, b) = g.exp_to_cos_sin();
        assert!((a[1] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(b[0].norm() < 1e-15);
        assert!(g.is_real());
        for &t in &[0.2, 1.0, 5.0] {
            assert!((g.eval_real(t) - (t - PI).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn transplant_constant_and_full_period() {
        let k = TrigPoly::constant(c(2.5, 0.0), Interval::two_pi());
        let moved = k.transplant(Interval::new(3.0, 3.0 + 2.0 * PI).unwrap());
        assert_eq!(moved.coeffs(), k.coeffs());

        let p = cos_plus_sin3();
        let moved = p.transplant(Interval::new(2.0 * PI, 4.0 * PI).unwrap());
        for (x, y) in moved.coeffs().iter().zip(p.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn transplant_with_dilation() {
        let p = cos_plus_sin3();
        let target = Interval::new(-1.0, 1.0).unwrap();
        let g = p.transplant(target);
        for &s in &[0.1, 0.5, 0.9] {
            let t_src = 2.0 * PI * s;
            let t_dst = -1.0 + 2.0 * s;
            assert!((g.eval(t_dst) - p.eval(t_src)).norm() < 1e-14);
        }
    }
}
