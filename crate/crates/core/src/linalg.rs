//! Small dense linear algebra: LU solves and a complex Schur/eigen solver.

use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Result, TrigError};

pub trait Scalar:
    Copy
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn abs(self) -> f64;
    fn from_f64(x: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Row-major dense square or rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = T::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    s += *a * *b;
                }
                s
            })
            .collect()
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let orow = other.row(k);
                let start = i * out.cols;
                for (o, b) in out.data[start..start + other.cols].iter_mut().zip(orow) {
                    *o += a * *b;
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat<f64> {
    pub fn to_complex(&self) -> Mat<Complex64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }
}

/// LU factorization with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Mat<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    /// Factors `a`. Pivots below `n * 64 eps max|a|` are reported as
    /// singular.
    pub fn new(mut a: Mat<T>) -> Result<Self> {
        let n = a.rows;
        if n != a.cols {
            return Err(TrigError::Shape(format!("LU needs a square matrix, got {}x{}", n, a.cols)));
        }
        let tiny = (n as f64) * 64.0 * f64::EPSILON * a.max_abs();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].abs();
            for i in k + 1..n {
                let v = a[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tiny || best == 0.0 {
                return Err(TrigError::Singular(format!("zero pivot in column {k}")));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f == T::zero() {
                    continue;
                }
                a[(i, k)] = f;
                let (top, bottom) = a.data.split_at_mut(i * n);
                let rk = &top[k * n + k + 1..k * n + n];
                let ri = &mut bottom[k + 1..n];
                for (x, y) in ri.iter_mut().zip(rk) {
                    *x -= f * *y;
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lu.rows;
        assert_eq!(b.len(), n);
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in 0..i {
                s -= row[j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in i + 1..n {
                s -= row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        x
    }
}

pub fn solve<T: Scalar>(a: Mat<T>, b: &[T]) -> Result<Vec<T>> {
    Ok(Lu::new(a)?.solve(b))
}

/// Diagonal similarity scaling (powers of two) that equalizes row and
/// column norms; returns the scaled matrix.
pub fn balance(mut a: Mat<Complex64>) -> Mat<Complex64> {
    let n = a.rows;
    let radix = 2.0f64;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let mut rr = r;
            while cc < rr / radix {
                f *= radix;
                cc *= radix;
                rr /= radix;
            }
            while cc > rr * radix {
                f /= radix;
                cc /= radix;
                rr *= radix;
            }
            if (cc + rr) < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// Reduces `a` to upper Hessenberg form by Householder reflections, returning
/// `(H, Q)` with `a = Q H Q^*` (`Q` only when requested).
fn hessenberg(mut a: Mat<Complex64>, want_q: bool) -> (Mat<Complex64>, Option<Mat<Complex64>>) {
    let n = a.rows;
    let mut q = want_q.then(|| Mat::identity(n));
    if n < 3 {
        return (a, q);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    for k in 0..n - 2 {
        let alpha_norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let beta = -phase * alpha_norm;
        for i in 0..n {
            v[i] = zero;
        }
        v[k + 1] = x0 - beta;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // a <- (I - tau v v^*) a
        for j in k..n {
            let mut s = zero;
            for i in k + 1..n {
                s += v[i].conj() * a[(i, j)];
            }
            s *= tau;
            for i in k + 1..n {
                let d = v[i] * s;
                a[(i, j)] -= d;
            }
        }
        // a <- a (I - tau v v^*)
        for i in 0..n {
            let mut s = zero;
            for j in k + 1..n {
                s += a[(i, j)] * v[j];
            }
            s *= tau;
            for j in k + 1..n {
                let d = s * v[j].conj();
                a[(i, j)] -= d;
            }
        }
        if let Some(q) = q.as_mut() {
            for i in 0..n {
                let mut s = zero;
                for j in k + 1..n {
                    s += q[(i, j)] * v[j];
                }
                s *= tau;
                for j in k + 1..n {
                    let d = s * v[j].conj();
                    q[(i, j)] -= d;
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = zero;
        }
    }
    (a, q)
}

/// Complex Givens rotation `[c s; -conj(s) c]` zeroing `b` in `(a, b)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Complex Schur decomposition `a = Z T Z^*` by shifted QR on the Hessenberg
/// form. Returns `(T, Z)` with `Z` only when requested.
pub fn schur(a: Mat<Complex64>, want_z: bool) -> Result<(Mat<Complex64>, Option<Mat<Complex64>>)> {
    let n = a.rows;
    let (mut h, mut z) = hessenberg(a, want_z);
    if n <= 1 {
        return Ok((h, z));
    }
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let max_iter = 60 * n.max(10);
    let mut total = 0usize;
    while hi > 0 {
        // find small subdiagonal
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].l1_norm() + h[(lo, lo)].l1_norm();
            let s = if s == 0.0 { h.max_abs() } else { s };
            if h[(lo, lo - 1)].l1_norm() <= eps * s {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_iter {
            return Err(TrigError::Convergence("QR iteration did not converge".into()));
        }
        let shift = if iter % 11 == 10 {
            // exceptional shift
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        // single-shift QR sweep on rows/cols lo..=hi via bulge chasing
        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let col0 = if k > lo { k - 1 } else { lo };
            // rows k, k+1
            let jmax = if want_z { n } else { hi + 1 };
            let jmin = if want_z { col0 } else { col0 };
            for j in jmin..jmax {
                let a1 = h[(k, j)];
                let a2 = h[(k + 1, j)];
                h[(k, j)] = a1 * c + s * a2;
                h[(k + 1, j)] = -s.conj() * a1 + a2 * c;
            }
            // columns k, k+1
            let imin = if want_z { 0 } else { lo };
            let imax = (k + 3).min(hi + 1);
            for i in imin..imax {
                let a1 = h[(i, k)];
                let a2 = h[(i, k + 1)];
                h[(i, k)] = a1 * c + a2 * s.conj();
                h[(i, k + 1)] = -a1 * s + a2 * c;
            }
            if let Some(z) = z.as_mut() {
                for i in 0..n {
                    let a1 = z[(i, k)];
                    let a2 = z[(i, k + 1)];
                    z[(i, k)] = a1 * c + a2 * s.conj();
                    z[(i, k + 1)] = -a1 * s + a2 * c;
                }
            }
            if k > lo {
                h[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok((h, z))
}

fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a b][c d]] closest to d
    let tr_half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(a: Mat<Complex64>) -> Result<Vec<Complex64>> {
    let (t, _) = schur(a, false)?;
    Ok((0..t.rows).map(|i| t[(i, i)]).collect())
}

/// Eigenvalues and unit-2-norm eigenvectors (columns of the returned matrix).
pub fn eigen(a: Mat<Complex64>) -> Result<(Vec<Complex64>, Mat<Complex64>)> {
    let n = a.rows;
    let (t, z) = schur(a, true)?;
    let z = z.expect("requested Schur vectors");
    let lambda: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let tnorm = t.max_abs().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * tnorm;
    let zero = Complex64::new(0.0, 0.0);
    let mut y = Mat::zeros(n, n);
    for k in 0..n {
        // back substitution for (T - lambda_k I) x = 0 with x_k = 1
        let mut x = vec![zero; k + 1];
        x[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = zero;
            for j in i + 1..=k {
                s += t[(i, j)] * x[j];
            }
            let mut d = t[(i, i)] - lambda[k];
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            x[i] = -s / d;
        }
        let mut v = vec![zero; n];
        for i in 0..n {
            let mut s = zero;
            for j in 0..=k {
                s += z[(i, j)] * x[j];
            }
            v[i] = s;
        }
        let nrm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            y[(i, k)] = v[i] / nrm;
        }
    }
    Ok((lambda, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lu_solves_real_and_complex() {
        let a = Mat::from_fn(3, 3, |i, j| [[2.0, 1.0, 1.0], [4.0, -6.0, 0.0], [-2.0, 7.0, 2.0]][i][j]);
        let x = solve(a.clone(), &[5.0, -2.0, 9.0]).unwrap();
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip([5.0, -2.0, 9.0]) {
            assert!((ri - bi).abs() < 1e-14);
        }
        let ac = Mat::from_fn(2, 2, |i, j| [[c(1.0, 1.0), c(2.0, 0.0)], [c(0.0, -1.0), c(3.0, 2.0)]][i][j]);
        let b = [c(1.0, 0.0), c(0.0, 1.0)];
        let x = solve(ac.clone(), &b).unwrap();
        let r = ac.mul_vec(&x);
        assert!((r[0] - b[0]).norm() < 1e-15 && (r[1] - b[1]).norm() < 1e-15);
    }

    #[test]
    fn lu_flags_singular() {
        let a = Mat::from_fn(3, 3, |i, j| (i + j) as f64);
        assert!(matches!(Lu::new(a), Err(TrigError::Singular(_))));
    }

    #[test]
    fn eigenvalues_of_companion() {
        // z^3 - 6 z^2 + 11 z - 6 = (z-1)(z-2)(z-3)
        let a = Mat::from_fn(3, 3, |i, j| {
            let v = match (i, j) {
                (0, 0) => 6.0,
                (0, 1) => -11.0,
                (0, 2) => 6.0,
                (1, 0) | (2, 1) => 1.0,
                _ => 0.0,
            };
            c(v, 0.0)
        });
        let mut ev: Vec<f64> = eigenvalues(balance(a)).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        for (e, w) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((e - w).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn eigenpairs_of_random_matrix() {
        let n = 12;
        let a = Mat::from_fn(n, n, |i, j| c(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64 - 2.0));
        let (lam, v) = eigen(a.clone()).unwrap();
        for k in 0..n {
            let col: Vec<Complex64> = (0..n).map(|i| v[(i, k)]).collect();
            let av = a.mul_vec(&col);
            let res: f64 = av.iter().zip(&col).map(|(x, y)| (x - lam[k] * y).norm()).fold(0.0, f64::max);
            assert!(res < 1e-11 * a.max_abs() * n as f64, "pair {k}: {res}");
        }
        let trace: Complex64 = (0..n).map(|i| a[(i, i)]).sum();
        let sum: Complex64 = lam.iter().sum();
        assert!((trace - sum).norm() < 1e-11);
    }

    #[test]
    fn rotation_matrix_has_unit_circle_eigenvalues() {
        let th = 0.7f64;
        let a = Mat::from_fn(2, 2, |i, j| {
            c([[th.cos(), -th.sin()], [th.sin(), th.cos()]][i][j], 0.0)
        });
        let ev = eigenvalues(a).unwrap();
        for z in ev {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!((z.arg().abs() - th).abs() < 1e-14);
        }
    }
}
