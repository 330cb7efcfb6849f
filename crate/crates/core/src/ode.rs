//! Fourier spectral collocation for periodic differential equations.

use std::sync::Arc;

use num_complex::Complex64;

use crate::calculus::{self, norm_inf};
use crate::constructor::{chop_tail, truncate_to_degree, NOISE_ALLOWANCE};
use crate::error::{Result, TrigError};
use crate::linalg::{self, Mat, Scalar};
use crate::trigcore::interp_coeffs;
use crate::{fft, BuildOptions, Interval, TrigPoly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Spectral differentiation matrix of order `m` on `N` (odd) trigonometric
/// points: circulant, with first column the inverse transform of `(i k w)^m`.
pub fn diff_matrix(n: usize, interval: Interval, m: u32) -> Result<Mat<f64>> {
    if n % 2 == 0 {
        return Err(TrigError::EvenGrid("diff_matrix"));
    }
    if n < 3 {
        return Err(TrigError::InvalidSize(format!("differentiation grid needs at least 3 points, got {n}")));
    }
    if m == 0 {
        return Err(TrigError::InvalidSize("derivative order must be at least 1".into()));
    }
    let col = diff_column(n, interval.omega(), m);
    Ok(Mat::from_fn(n, n, |i, l| col[(i + n - l) % n]))
}

fn diff_column(n: usize, w: f64, m: u32) -> Vec<f64> {
    let h = (n / 2) as i64;
    let mut buf = vec![ZERO; n];
    for k in -h..=h {
        buf[k.rem_euclid(n as i64) as usize] = Complex64::new(0.0, k as f64 * w).powu(m);
    }
    fft::inverse(&mut buf);
    buf.iter().map(|z| z.re / n as f64).collect()
}

/// `sum_j a_j(t) d^j/dt^j` with periodic boundary conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPeriodicOp {
    coeffs: Vec<TrigPoly>,
    interval: Interval,
}

impl LinearPeriodicOp {
    /// `coeffs[j]` multiplies the `j`-th derivative. Trailing zero
    /// coefficients are dropped.
    pub fn new(mut coeffs: Vec<TrigPoly>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let first = coeffs
            .first()
            .ok_or_else(|| TrigError::InvalidSize("operator needs at least one coefficient".into()))?;
        let interval = first.interval();
        if coeffs.iter().any(|c| c.interval() != interval) {
            return Err(TrigError::DomainMismatch);
        }
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(TrigError::Singular("zero operator".into()));
        }
        Ok(LinearPeriodicOp { coeffs, interval })
    }

    /// Constant-coefficient operator `sum_j a[j] d^j`.
    pub fn constant(a: &[f64], interval: Interval) -> Result<Self> {
        Self::new(a.iter().map(|&x| TrigPoly::constant(Complex64::new(x, 0.0), interval)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn coeffs(&self) -> &[TrigPoly] {
        &self.coeffs
    }

    fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// Applies the operator to a polynomial (exact up to chopping).
    pub fn apply(&self, u: &TrigPoly) -> Result<TrigPoly> {
        let mut acc = TrigPoly::zero(self.interval);
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = if j == 0 { u.clone() } else { calculus::differentiate(u, j as u32) };
            acc = calculus::add(&acc, &calculus::multiply(a, &d)?)?;
        }
        Ok(acc)
    }

    /// Collocation matrix on `n` (odd) trigonometric points.
    pub fn matrix(&self, n: usize) -> Result<Mat<Complex64>> {
        self.assemble(n, |z| z)
    }

    fn assemble<T: Scalar>(&self, n: usize, conv: impl Fn(Complex64) -> T) -> Result<Mat<T>> {
        if n % 2 == 0 {
            return Err(TrigError::EvenGrid("collocation"));
        }
        let mut a = Mat::zeros(n, n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let vals: Vec<T> = c.samples(n).into_iter().map(&conv).collect();
            if j == 0 {
                for i in 0..n {
                    a[(i, i)] += vals[i];
                }
                continue;
            }
            let col = diff_column(n, self.interval.omega(), j as u32);
            for i in 0..n {
                for l in 0..n {
                    a[(i, l)] += vals[i] * T::from_f64(col[(i + n - l) % n]);
                }
            }
        }
        Ok(a)
    }
}

/// Controls for the adaptive collocation solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative tail level at which solution coefficients count as converged.
    pub chop_tol: f64,
    /// Largest grid tried; grids are `2^k + 1` from 33.
    pub max_points: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            chop_tol: 1e-13,
            max_points: 8193,
        }
    }
}

fn grids(max_points: usize) -> impl Iterator<Item = usize> {
    (5..).map(|k| (1usize << k) + 1).take_while(move |&n| n <= max_points)
}

/// Smallest grid worth trying for a right-hand side of this length.
fn first_grid(len: usize) -> usize {
    let mut n = 33;
    while n < len + len / 4 + 2 {
        n = 2 * (n - 1) + 1;
    }
    n
}

pub fn solve_linear(op: &LinearPeriodicOp, rhs: &TrigPoly) -> Result<TrigPoly> {
    solve_linear_with(op, rhs, &SolveOptions::default())
}

/// Solves `op u = rhs` on grids of 33, 65, 129, ... points until the
/// solution's coefficients pass the chopping test.
pub fn solve_linear_with(op: &LinearPeriodicOp, rhs: &TrigPoly, opts: &SolveOptions) -> Result<TrigPoly> {
    solve_from(op, rhs, opts, rhs.len())
}

/// Adaptive solve whose first grid resolves `hint_len` coefficients.
fn solve_from(op: &LinearPeriodicOp, rhs: &TrigPoly, opts: &SolveOptions, hint_len: usize) -> Result<TrigPoly> {
    if rhs.interval() != op.interval {
        return Err(TrigError::DomainMismatch);
    }
    let iv = op.interval;
    if rhs.is_zero() {
        return Ok(TrigPoly::zero(iv));
    }
    let real = op.is_real() && rhs.is_real();
    let start = first_grid(hint_len);
    let mut last = 0;
    for n in grids(opts.max_points).filter(|&n| n >= start) {
        last = n;
        let b = rhs.samples(n);
        let values: Vec<Complex64> = if real {
            let a = op.assemble(n, |z| z.re)?;
            let br: Vec<f64> = b.iter().map(|z| z.re).collect();
            linalg::solve(a, &br)?.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
        } else {
            linalg::solve(op.matrix(n)?, &b)?
        };
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(TrigError::Singular("non-finite collocation solution".into()));
        }
        let p = interp_coeffs(&values, iv)?;
        if let Some(deg) = chop_tail(p.coeffs(), opts.chop_tol) {
            let c = truncate_to_degree(p.coeffs(), noise_cut(p.coeffs(), deg));
            let u = TrigPoly::from_coeffs(c, iv)?;
            return Ok(if real { u.enforce_real_symmetry() } else { u });
        }
    }
    Err(TrigError::NotResolved { points: last.max(start) })
}

/// Degree at which the coefficients meet the noise plateau at the top of
/// the spectrum (ten times its height, at least `8 eps`); at least `deg`.
fn noise_cut(coeffs: &[Complex64], deg: usize) -> usize {
    let odd = if coeffs.len() % 2 == 0 { &coeffs[1..] } else { coeffs };
    let mid = odd.len() / 2;
    let level = |k: usize| odd[mid + k].norm().max(odd[mid - k].norm());
    let width = 3.max(odd.len() / 8).div_ceil(2);
    let floor = (mid + 1 - width.min(mid)..=mid).map(level).fold(0.0, f64::max);
    let scale = (0..=mid).map(level).fold(0.0, f64::max);
    let thresh = (PLATEAU_MARGIN * floor).max(NOISE_ALLOWANCE * f64::EPSILON * scale);
    (deg..=mid).rev().find(|&k| level(k) > thresh).unwrap_or(deg).max(deg)
}

const PLATEAU_MARGIN: f64 = 10.0;

/// Which end of the spectrum [`eigs`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Which {
    #[default]
    SmallestReal,
    SmallestMagnitude,
}

#[derive(Debug, Clone)]
pub struct EigResult {
    pub eigenvalues: Vec<Complex64>,
    /// Eigenfunctions scaled to unit maximum modulus.
    pub eigenfunctions: Vec<TrigPoly>,
    pub grid: usize,
}

const EIG_TOL: f64 = 1e-8;
const EIG_MAX_POINTS: usize = 1025;

/// The `k` eigenpairs at the chosen end of the spectrum, refined on doubling
/// grids until the eigenvalues settle.
pub fn eigs(op: &LinearPeriodicOp, k: usize, which: Which) -> Result<EigResult> {
    if k == 0 {
        return Err(TrigError::InvalidSize("need at least one eigenvalue".into()));
    }
    let mut prev: Option<Vec<Complex64>> = None;
    for n in grids(EIG_MAX_POINTS) {
        if k > n - 2 {
            continue;
        }
        let a = op.matrix(n)?;
        let symmetric = op.is_real() && is_symmetric(&a);
        let (mut lam, vecs) = linalg::eigen(a)?;
        if symmetric {
            lam.iter_mut().for_each(|z| z.im = 0.0);
        }
        let mut order: Vec<usize> = (0..n).collect();
        match which {
            Which::SmallestReal => order.sort_by(|&i, &j| lam[i].re.total_cmp(&lam[j].re)),
            Which::SmallestMagnitude => order.sort_by(|&i, &j| lam[i].norm().total_cmp(&lam[j].norm())),
        }
        order.truncate(k);
        let chosen: Vec<Complex64> = order.iter().map(|&i| lam[i]).collect();
        let settled = prev.as_ref().is_some_and(|p| {
            p.iter().zip(&chosen).all(|(a, b)| (a - b).norm() <= EIG_TOL * (1.0 + b.norm()))
        });
        if settled {
            let funcs = order
                .iter()
                .map(|&i| eigenfunction(&vecs, i, n, op.interval, symmetric))
                .collect::<Result<Vec<_>>>()?;
            return Ok(EigResult {
                eigenvalues: chosen,
                eigenfunctions: funcs,
                grid: n,
            });
        }
        prev = Some(chosen);
    }
    if k > EIG_MAX_POINTS - 2 {
        return Err(TrigError::InvalidSize(format!("{k} eigenvalues requested")));
    }
    Err(TrigError::NotResolved { points: EIG_MAX_POINTS })
}

fn is_symmetric(a: &Mat<Complex64>) -> bool {
    let n = a.rows();
    let tol = 1e-12 * a.max_abs();
    (0..n).all(|i| (0..i).all(|j| (a[(i, j)] - a[(j, i)]).norm() <= tol))
}

fn eigenfunction(vecs: &Mat<Complex64>, col: usize, n: usize, iv: Interval, real: bool) -> Result<TrigPoly> {
    let mut v: Vec<Complex64> = (0..n).map(|i| vecs[(i, col)]).collect();
    let big = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(ZERO);
    if big != ZERO {
        v.iter_mut().for_each(|x| *x /= big);
    }
    if real {
        v.iter_mut().for_each(|x| x.im = 0.0);
    }
    let p = interp_coeffs(&v, iv)?;
    let deg = chop_tail(p.coeffs(), 1e-13).map_or(p.degree(), |d| noise_cut(p.coeffs(), d));
    let q = TrigPoly::from_coeffs(truncate_to_degree(p.coeffs(), deg), iv)?;
    let q = if real { q.enforce_real_symmetry() } else { q };
    let peak = calculus::norm_inf(&q);
    Ok(if peak == 0.0 { q } else { calculus::scale(&q, Complex64::new(1.0 / peak, 0.0)) })
}

/// Pointwise scalar functions with known derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unary {
    Exp,
    Sin,
    Cos,
    Tan,
    Tanh,
    Sqrt,
    Log,
}

impl Unary {
    pub fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Unary::Exp => z.exp(),
            Unary::Sin => z.sin(),
            Unary::Cos => z.cos(),
            Unary::Tan => z.tan(),
            Unary::Tanh => z.tanh(),
            Unary::Sqrt => z.sqrt(),
            Unary::Log => z.ln(),
        }
    }

    pub fn derivative(self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Unary::Exp => z.exp(),
            Unary::Sin => z.cos(),
            Unary::Cos => -z.sin(),
            Unary::Tan => one / (z.cos() * z.cos()),
            Unary::Tanh => one - z.tanh() * z.tanh(),
            Unary::Sqrt => 0.5 / z.sqrt(),
            Unary::Log => one / z,
        }
    }
}

pub type PointwiseFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A differential expression in the unknown `u`.
#[derive(Clone)]
pub enum Node {
    /// `u^(k)`; `Deriv(0)` is `u`.
    Deriv(u32),
    /// A fixed function of `t`.
    Func(TrigPoly),
    Const(Complex64),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Powi(Box<Node>, i32),
    Apply(Unary, Box<Node>),
    /// A pointwise map without a registered derivative; linearized by
    /// forward differences.
    Pointwise(PointwiseFn, Box<Node>),
}

impl std::fmt::Debug for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Node::Deriv(k) => write!(f, "D{k}(u)"),
            Node::Func(p) => write!(f, "Func(len {})", p.len()),
            Node::Const(c) => write!(f, "{c}"),
            Node::Neg(a) => write!(f, "-({a:?})"),
            Node::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            Node::Sub(a, b) => write!(f, "({a:?} - {b:?})"),
            Node::Mul(a, b) => write!(f, "({a:?} * {b:?})"),
            Node::Div(a, b) => write!(f, "({a:?} / {b:?})"),
            Node::Powi(a, k) => write!(f, "({a:?})^{k}"),
            Node::Apply(g, a) => write!(f, "{g:?}({a:?})"),
            Node::Pointwise(_, a) => write!(f, "g({a:?})"),
        }
    }
}

impl Node {
    pub fn u() -> Node {
        Node::Deriv(0)
    }

    pub fn constant(x: f64) -> Node {
        Node::Const(Complex64::new(x, 0.0))
    }

    /// Highest derivative of `u` appearing in the expression.
    pub fn order(&self) -> u32 {
        match self {
            Node::Deriv(k) => *k,
            Node::Func(_) | Node::Const(_) => 0,
            Node::Neg(a) | Node::Powi(a, _) | Node::Apply(_, a) | Node::Pointwise(_, a) => a.order(),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.order().max(b.order()),
        }
    }

    /// Value at `u`.
    pub fn eval(&self, u: &TrigPoly) -> Result<TrigPoly> {
        Ok(self.linearize(u, false)?.0)
    }

    /// Value at `u` and, when asked, the Frechet derivative as coefficients
    /// of `d^j` (index `j`).
    fn linearize(&self, u: &TrigPoly, want_lin: bool) -> Result<(TrigPoly, Vec<TrigPoly>)> {
        let iv = u.interval();
        let zero = || TrigPoly::zero(iv);
        let konst = |c: Complex64| TrigPoly::constant(c, iv);
        Ok(match self {
            Node::Deriv(k) => {
                let v = if *k == 0 { u.clone() } else { calculus::differentiate(u, *k) };
                let mut lin = vec![zero(); *k as usize + 1];
                lin[*k as usize] = konst(Complex64::new(1.0, 0.0));
                (v, lin)
            }
            Node::Func(p) => {
                if p.interval() != iv {
                    return Err(TrigError::DomainMismatch);
                }
                (p.clone(), Vec::new())
            }
            Node::Const(c) => (konst(*c), Vec::new()),
            Node::Neg(a) => {
                let (v, l) = a.linearize(u, want_lin)?;
                let m1 = Complex64::new(-1.0, 0.0);
                (calculus::scale(&v, m1), l.iter().map(|x| calculus::scale(x, m1)).collect())
            }
            Node::Add(a, b) | Node::Sub(a, b) => {
                let minus = matches!(self, Node::Sub(..));
                let (va, la) = a.linearize(u, want_lin)?;
                let (vb, lb) = b.linearize(u, want_lin)?;
                let v = if minus { calculus::sub(&va, &vb)? } else { calculus::add(&va, &vb)? };
                let lb = if minus {
                    lb.iter().map(|x| calculus::scale(x, Complex64::new(-1.0, 0.0))).collect()
                } else {
                    lb
                };
                (v, lin_sum(la, lb, iv)?)
            }
            Node::Mul(a, b) => {
                let (va, la) = a.linearize(u, want_lin)?;
                let (vb, lb) = b.linearize(u, want_lin)?;
                let v = calculus::multiply(&va, &vb)?;
                let lin = if want_lin {
                    lin_sum(lin_scale(&la, &vb)?, lin_scale(&lb, &va)?, iv)?
                } else {
                    Vec::new()
                };
                (v, lin)
            }
            Node::Div(a, b) => {
                let (va, la) = a.linearize(u, want_lin)?;
                let (vb, lb) = b.linearize(u, want_lin)?;
                let v = calculus::divide(&va, &vb)?;
                let lin = if want_lin {
                    let inv_b = calculus::compose(&vb, |z| 1.0 / z)?;
                    let q = calculus::multiply(&v, &inv_b)?;
                    let neg_q = calculus::scale(&q, Complex64::new(-1.0, 0.0));
                    lin_sum(lin_scale(&la, &inv_b)?, lin_scale(&lb, &neg_q)?, iv)?
                } else {
                    Vec::new()
                };
                (v, lin)
            }
            Node::Powi(a, k) => {
                let (va, la) = a.linearize(u, want_lin)?;
                let k = *k;
                let v = powi(&va, k)?;
                let lin = if want_lin {
                    let d = calculus::scale(&powi(&va, k - 1)?, Complex64::new(k as f64, 0.0));
                    lin_scale(&la, &d)?
                } else {
                    Vec::new()
                };
                (v, lin)
            }
            Node::Apply(g, a) => {
                let (va, la) = a.linearize(u, want_lin)?;
                let g = *g;
                let v = calculus::compose(&va, |z| g.apply(z))?;
                let lin = if want_lin {
                    lin_scale(&la, &calculus::compose(&va, |z| g.derivative(z))?)?
                } else {
                    Vec::new()
                };
                (v, lin)
            }
            Node::Pointwise(g, a) => {
                let (va, la) = a.linearize(u, want_lin)?;
                let v = calculus::compose(&va, |z| g(z))?;
                let lin = if want_lin {
                    let h = FD_STEP * (1.0 + norm_inf(&va));
                    let opts = BuildOptions {
                        rel_tol: FD_BUILD_TOL,
                        ..BuildOptions::default()
                    };
                    let d = calculus::compose_with(&va, |z| (g(z + h) - g(z)) / h, &opts)?;
                    lin_scale(&la, &d)?
                } else {
                    Vec::new()
                };
                (v, lin)
            }
        })
    }
}

const FD_STEP: f64 = 1e-7;
/// Forward differences carry about `eps / FD_STEP` noise.
const FD_BUILD_TOL: f64 = 1e-8;

fn powi(p: &TrigPoly, k: i32) -> Result<TrigPoly> {
    let iv = p.interval();
    if k < 0 {
        let inv = calculus::compose(p, |z| 1.0 / z)?;
        return powi(&inv, -k);
    }
    let mut acc = TrigPoly::constant(Complex64::new(1.0, 0.0), iv);
    let mut base = p.clone();
    let mut e = k as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = calculus::multiply(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = calculus::multiply(&base, &base)?;
        }
    }
    Ok(acc)
}

fn lin_sum(a: Vec<TrigPoly>, b: Vec<TrigPoly>, iv: Interval) -> Result<Vec<TrigPoly>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|j| match (a.get(j), b.get(j)) {
            (Some(x), Some(y)) => calculus::add(x, y),
            (Some(x), None) | (None, Some(x)) => Ok(x.clone()),
            (None, None) => Ok(TrigPoly::zero(iv)),
        })
        .collect()
}

fn lin_scale(a: &[TrigPoly], f: &TrigPoly) -> Result<Vec<TrigPoly>> {
    a.iter().map(|x| calculus::multiply(x, f)).collect()
}

/// `N(u) = rhs` with periodic boundary conditions.
#[derive(Debug, Clone)]
pub struct NonlinearProblem {
    pub op: Node,
    pub rhs: TrigPoly,
    /// Starting iterate; `None` means the zero function.
    pub guess: Option<TrigPoly>,
    pub max_iter: usize,
    /// Residual target relative to `max(1, |rhs|)`.
    pub tol: f64,
    /// Newton step target relative to `1 + |u|`.
    pub step_tol: f64,
    pub max_halvings: u32,
    pub solve: SolveOptions,
}

impl NonlinearProblem {
    pub fn new(op: Node, rhs: TrigPoly) -> Self {
        NonlinearProblem {
            op,
            rhs,
            guess: None,
            max_iter: 25,
            tol: 1e-6,
            step_tol: 1e-10,
            max_halvings: 10,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonSolution {
    pub u: TrigPoly,
    pub iterations: usize,
    /// `|N(u) - rhs|_inf` before the first step and after each step.
    pub residuals: Vec<f64>,
}

const DIVERGENCE_STREAK: usize = 8;
/// Residuals this small end the iteration without a further step.
const RESIDUAL_FLOOR: f64 = 1e-12;

/// Damped Newton iteration in function space: each step linearizes the
/// operator at the current iterate and solves the linear problem adaptively.
pub fn solve_nonlinear(prob: &NonlinearProblem) -> Result<NewtonSolution> {
    let iv = prob.rhs.interval();
    let mut u = prob.guess.clone().unwrap_or_else(|| TrigPoly::zero(iv));
    if u.interval() != iv {
        return Err(TrigError::DomainMismatch);
    }
    let scale = norm_inf(&prob.rhs).max(1.0);
    let (val, mut lin) = prob.op.linearize(&u, true)?;
    let mut r = calculus::sub(&val, &prob.rhs)?;
    let mut rn = norm_inf(&r);
    let mut residuals = vec![rn];
    let mut streak = 0;
    for it in 1..=prob.max_iter {
        let jac = LinearPeriodicOp::new(pad_lin(lin, iv))?;
        let delta = solve_from(&jac, &calculus::scale(&r, Complex64::new(-1.0, 0.0)), &prob.solve, u.len())?;
        let mut lambda = 1.0;
        let mut halvings = 0;
        let (next_u, next_val, next_lin, next_rn) = loop {
            let trial = calculus::add(&u, &calculus::scale(&delta, Complex64::new(lambda, 0.0)))?;
            let trial = calculus::simplify_with(&trial, prob.solve.chop_tol);
            let (v, l) = prob.op.linearize(&trial, true)?;
            let tr = calculus::sub(&v, &prob.rhs)?;
            let trn = norm_inf(&tr);
            if trn < rn || halvings >= prob.max_halvings {
                break (trial, tr, l, trn);
            }
            lambda *= 0.5;
            halvings += 1;
        };
        if next_rn >= rn {
            streak += 1;
        } else if halvings > 0 && next_rn > 0.5 * rn {
            streak += 1;
        } else {
            streak = 0;
        }
        let step = lambda * norm_inf(&delta);
        u = next_u;
        r = next_val;
        rn = next_rn;
        lin = next_lin;
        residuals.push(rn);
        if !rn.is_finite() {
            return Err(TrigError::Convergence("residual became non-finite".into()));
        }
        let small_step = step <= prob.step_tol * (1.0 + norm_inf(&u));
        if rn <= prob.tol * scale && (small_step || rn <= RESIDUAL_FLOOR * scale) {
            return Ok(NewtonSolution {
                u,
                iterations: it,
                residuals,
            });
        }
        if streak >= DIVERGENCE_STREAK {
            return Err(TrigError::Divergence {
                iterations: it,
                residual: rn,
                last: Box::new(u),
            });
        }
    }
    if rn <= prob.tol * scale {
        let iterations = residuals.len() - 1;
        return Ok(NewtonSolution { u, iterations, residuals });
    }
    Err(TrigError::Divergence {
        iterations: prob.max_iter,
        residual: rn,
        last: Box::new(u),
    })
}

fn pad_lin(mut lin: Vec<TrigPoly>, iv: Interval) -> Vec<TrigPoly> {
    if lin.is_empty() {
        lin.push(TrigPoly::zero(iv));
    }
    lin
}
