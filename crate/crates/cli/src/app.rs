use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use trigfun::approx::{
    approx_error_bound, coeff_bound, interp_nonuniform, trap_error_bound, trigremez, trigremez_fn, ApproxKind,
    DecayBoundParams, RemezResult,
};
use trigfun::calculus::{self, circconv, differentiate, extrema, integral, norm2, roots};
use trigfun::ode::{self, eigs, solve_linear, LinearPeriodicOp, NonlinearProblem, Which};
use trigfun::trigcore::{parse_coeff_dump, write_coeff_dump};
use trigfun::{build_fixed, build_from_coeffs, BuildOptions, Complex64, Interval, TrigError, TrigPoly};

use crate::problem::parse_problem;
use crate::{fmt_complex, fmt_num, parse_expr, parse_interval, parse_real, CliError};

#[derive(Debug, Parser)]
#[command(name = "trigfun", version, about = "Smooth periodic functions as trigonometric polynomials")]
pub struct Cli {
    /// Period interval `a,b`.
    #[arg(long, global = true, default_value = "-1,1", allow_hyphen_values = true)]
    pub interval: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a function and print its coefficient dump.
    Build {
        #[arg(allow_hyphen_values = true)]
        expr: Option<String>,
        /// Interpolate in exactly N points instead of adapting.
        #[arg(long)]
        trig_n: Option<usize>,
        /// Read a coefficient dump instead of an expression.
        #[arg(long, conflicts_with_all = ["expr", "trig_n"])]
        from_coeffs: Option<PathBuf>,
    },
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Comma separated points.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    Coeffs {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Print `k a_k b_k` in the cosine/sine basis.
        #[arg(long)]
        cos_sin: bool,
    },
    Roots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Definite integral over one period.
    Sum {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// 2-norm over one period.
    Norm {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Global maximum and its location.
    Max {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Circular convolution.
    Conv {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Interpolation in arbitrary points.
    Interp {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        values: PathBuf,
        /// Print the coefficient dump of the interpolant (the default when
        /// `--at` is absent).
        #[arg(long)]
        trig: bool,
        /// Evaluate the interpolant at these comma separated points.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Best approximation in the sup norm.
    Remez {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        degree: usize,
    },
    /// Periodic ODE from a problem file.
    Solve {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Eigenvalues of a linear periodic operator.
    Eigs {
        #[arg(long)]
        problem: PathBuf,
        #[arg(short, default_value_t = 5)]
        k: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::SmallestReal)]
        which: WhichArg,
    },
    /// Write a CSV of values on an equispaced grid including both ends.
    Sample {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tables of coefficient, approximation and quadrature error bounds.
    Bounds {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        #[arg(long)]
        v: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long, default_value_t = 32)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WhichArg {
    SmallestReal,
    SmallestMagnitude,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Bv,
    Analytic,
}

/// Runs the command line `args` (program name first) and returns the text
/// for standard output.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(e.to_string()),
            _ => Err(CliError::Parse(e.to_string())),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn build(src: &str, iv: Interval) -> Result<TrigPoly, CliError> {
    Ok(parse_expr(src)?.build(iv, &BuildOptions::default())?)
}

fn dump_with_header(p: &TrigPoly, out: &mut String) {
    let iv = p.interval();
    writeln!(out, "# interval {} {}", fmt_num(iv.a()), fmt_num(iv.b())).unwrap();
    writeln!(out, "# length {}", p.len()).unwrap();
    writeln!(out, "# real {}", p.is_real()).unwrap();
    out.push_str(&write_coeff_dump(p));
}

fn points(src: &str) -> Result<Vec<f64>, CliError> {
    src.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_real)
        .collect()
}

fn values(src: &str) -> Result<Vec<Complex64>, CliError> {
    let mut out = Vec::new();
    for line in src.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        match f.as_slice() {
            [re] => out.push(Complex64::new(parse_real(re)?, 0.0)),
            [re, im] => out.push(Complex64::new(parse_real(re)?, parse_real(im)?)),
            _ => return Err(CliError::Parse(format!("bad value line `{line}`"))),
        }
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let iv = parse_interval(&cli.interval)?;
    let mut out = String::new();
    match &cli.command {
        Command::Build { expr, trig_n, from_coeffs } => {
            let p = if let Some(path) = from_coeffs {
                let c = parse_coeff_dump(&read(path)?).map_err(|e| CliError::Parse(e.to_string()))?;
                build_from_coeffs(c, iv)?
            } else {
                let src = expr
                    .as_deref()
                    .ok_or_else(|| CliError::Parse("build needs an expression or --from-coeffs".into()))?;
                let e = parse_expr(src)?;
                match trig_n {
                    Some(n) => build_fixed(|t| e.eval(t), iv, *n)?,
                    None => e.build(iv, &BuildOptions::default())?,
                }
            };
            dump_with_header(&p, &mut out);
        }
        Command::Eval { expr, at } => {
            let p = build(expr, iv)?;
            for t in points(at)? {
                writeln!(out, "{}", fmt_complex(p.eval(t), p.is_real())).unwrap();
            }
        }
        Command::Coeffs { expr, cos_sin } => {
            let p = build(expr, iv)?;
            if *cos_sin {
                let (a, b) = p.exp_to_cos_sin();
                for (k, ak) in a.iter().enumerate() {
                    let bk = if k == 0 { Complex64::new(0.0, 0.0) } else { b[k - 1] };
                    writeln!(out, "{k} {} {}", fmt_complex(*ak, p.is_real()), fmt_complex(bk, p.is_real())).unwrap();
                }
            } else {
                out.push_str(&write_coeff_dump(&p));
            }
        }
        Command::Roots { expr } => {
            for r in roots(&build(expr, iv)?)? {
                writeln!(out, "{}", fmt_num(r)).unwrap();
            }
        }
        Command::Sum { expr } => {
            let p = build(expr, iv)?;
            writeln!(out, "{}", fmt_complex(integral(&p), p.is_real())).unwrap();
        }
        Command::Norm { expr } => {
            writeln!(out, "{}", fmt_num(norm2(&build(expr, iv)?))).unwrap();
        }
        Command::Max { expr } => {
            let (max, at, ..) = extrema(&build(expr, iv)?)?;
            writeln!(out, "{} {}", fmt_num(max), fmt_num(at)).unwrap();
        }
        Command::Diff { expr, order } => {
            dump_with_header(&differentiate(&build(expr, iv)?, *order), &mut out);
        }
        Command::Conv { f, g } => {
            dump_with_header(&circconv(&build(f, iv)?, &build(g, iv)?)?, &mut out);
        }
        Command::Interp { points: pf, values: vf, trig, at } => {
            let t = points(&read(pf)?)?;
            let v = values(&read(vf)?)?;
            let ip = interp_nonuniform(&t, &v, iv)?;
            let real = v.iter().all(|z| z.im == 0.0);
            if let Some(at) = at {
                for s in points(at)? {
                    writeln!(out, "{}", fmt_complex(ip.eval(s), real)).unwrap();
                }
            }
            if *trig || at.is_none() {
                dump_with_header(&ip.to_trigpoly()?, &mut out);
            }
        }
        Command::Remez { expr, degree } => {
            let e = parse_expr(expr)?;
            let r = match e.build(iv, &BuildOptions::default()) {
                Ok(p) => trigremez(&p, *degree)?,
                Err(TrigError::NotResolved { .. }) => trigremez_fn(|t| e.eval(t).re, iv, *degree)?,
                Err(err) => return Err(err.into()),
            };
            remez_report(&r, &mut out);
        }
        Command::Solve { problem } => solve(&read(problem)?, iv, &mut out)?,
        Command::Eigs { problem, k, which } => {
            let op = linear_op(&read(problem)?, iv)?;
            let which = match which {
                WhichArg::SmallestReal => Which::SmallestReal,
                WhichArg::SmallestMagnitude => Which::SmallestMagnitude,
            };
            let r = eigs(&op, *k, which)?;
            writeln!(out, "# grid {}", r.grid).unwrap();
            for l in &r.eigenvalues {
                writeln!(out, "{}", fmt_complex(*l, l.im == 0.0)).unwrap();
            }
        }
        Command::Sample { expr, n, out: path } => {
            if *n < 2 {
                return Err(CliError::Parse("--n must be at least 2".into()));
            }
            let p = build(expr, iv)?;
            let mut csv = String::from(if p.is_real() { "t,re\n" } else { "t,re,im\n" });
            for j in 0..*n {
                let t = if j == n - 1 { iv.b() } else { iv.a() + iv.length() * j as f64 / (n - 1) as f64 };
                let v = p.eval(t);
                if p.is_real() {
                    writeln!(csv, "{},{}", fmt_num(t), fmt_num(v.re)).unwrap();
                } else {
                    writeln!(csv, "{},{},{}", fmt_num(t), fmt_num(v.re), fmt_num(v.im)).unwrap();
                }
            }
            fs::write(path, csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {} samples to {}", n, path.display()).unwrap();
        }
        Command::Bounds { variant, nu, v, alpha, m, n_max } => {
            let need = |x: &Option<f64>, name: &str| {
                x.ok_or_else(|| CliError::Parse(format!("--{name} is required for this variant")))
            };
            let params = match variant {
                Variant::Bv => DecayBoundParams::BoundedVariation { nu: *nu, v: need(v, "v")? },
                Variant::Analytic => DecayBoundParams::Analytic {
                    alpha: need(alpha, "alpha")?,
                    m: need(m, "m")?,
                },
            };
            let cell = |r: Result<f64, TrigError>| r.map(fmt_num).unwrap_or_else(|_| "-".into());
            writeln!(out, "# n coeff projection interpolant trapezoid").unwrap();
            for n in 1..=*n_max {
                writeln!(
                    out,
                    "{n} {} {} {} {}",
                    cell(coeff_bound(n as i64, params)),
                    cell(approx_error_bound(n, ApproxKind::Projection, params)),
                    cell(approx_error_bound(n, ApproxKind::Interpolant, params)),
                    cell(trap_error_bound(n, params)),
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn remez_report(r: &RemezResult, out: &mut String) {
    if let Some(w) = &r.warning {
        writeln!(out, "# warning: {w}").unwrap();
    }
    writeln!(out, "# level {}", fmt_num(r.level)).unwrap();
    writeln!(out, "# iterations {}", r.iterations).unwrap();
    for (t, s) in r.reference.iter().zip(&r.signs) {
        writeln!(out, "# extremum {} {s}", fmt_num(*t)).unwrap();
    }
    dump_with_header(&r.best, out);
}

fn linear_op(text: &str, iv: Interval) -> Result<LinearPeriodicOp, CliError> {
    let prob = parse_problem(text, iv)?;
    if prob.op.is_some() {
        return Err(CliError::Parse("eigs needs a linear problem given by coeff[j]=".into()));
    }
    let coeffs = prob
        .coeffs
        .iter()
        .map(|c| match c {
            Some(e) => Ok(e.build(prob.interval, &BuildOptions::default())?),
            None => Ok(TrigPoly::zero(prob.interval)),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(LinearPeriodicOp::new(coeffs)?)
}

fn solve(text: &str, iv: Interval, out: &mut String) -> Result<(), CliError> {
    let prob = parse_problem(text, iv)?;
    let iv = prob.interval;
    let rhs = match &prob.rhs {
        Some(e) => e.build(iv, &BuildOptions::default())?,
        None => TrigPoly::zero(iv),
    };
    let (u, residual) = match &prob.op {
        None => {
            let op = linear_op(text, iv)?;
            let u = solve_linear(&op, &rhs)?;
            let r = calculus::norm_inf(&calculus::sub(&op.apply(&u)?, &rhs)?);
            (u, r)
        }
        Some(e) => {
            let node = e.to_node(iv)?;
            let mut nl = NonlinearProblem::new(node.clone(), rhs.clone());
            if let Some(g) = &prob.guess {
                nl.guess = Some(g.build(iv, &BuildOptions::default())?);
            }
            let sol = ode::solve_nonlinear(&nl)?;
            for (k, r) in sol.residuals.iter().enumerate() {
                writeln!(out, "# newton {k} {}", fmt_num(*r)).unwrap();
            }
            let r = calculus::norm_inf(&calculus::sub(&node.eval(&sol.u)?, &rhs)?);
            (sol.u, r)
        }
    };
    writeln!(out, "# degree {}", u.degree()).unwrap();
    writeln!(out, "# residual {}", fmt_num(residual)).unwrap();
    dump_with_header(&u, out);
    Ok(())
}
