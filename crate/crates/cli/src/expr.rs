//! A small expression language for scalar functions of `t`, and of the
//! unknown `u` inside differential operators.
//!
//! Precedence, loosest first: `+ -`, `* /`, unary `-`, `^` (right
//! associative). Complex literals take an `i` suffix, as in `1i`.

use std::fmt;
use std::sync::Arc;

use trigfun::ode::{Node, PointwiseFn, Unary};
use trigfun::{build_adaptive, BuildOptions, Complex64, Interval, TrigPoly, TrigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Abs,
    Exp,
    Sin,
    Cos,
    Tan,
    Tanh,
    Sqrt,
    Log,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Abs,
        Func::Exp,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Tanh,
        Func::Sqrt,
        Func::Log,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Abs => "abs",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    fn unary(self) -> Option<Unary> {
        Some(match self {
            Func::Abs => return None,
            Func::Exp => Unary::Exp,
            Func::Sin => Unary::Sin,
            Func::Cos => Unary::Cos,
            Func::Tan => Unary::Tan,
            Func::Tanh => Unary::Tanh,
            Func::Sqrt => Unary::Sqrt,
            Func::Log => Unary::Log,
        })
    }

    fn apply(self, z: Complex64) -> Complex64 {
        if z.im == 0.0 {
            let x = z.re;
            let r = match self {
                Func::Abs => Some(x.abs()),
                Func::Exp => Some(x.exp()),
                Func::Sin => Some(x.sin()),
                Func::Cos => Some(x.cos()),
                Func::Tan => Some(x.tan()),
                Func::Tanh => Some(x.tanh()),
                Func::Sqrt if x >= 0.0 => Some(x.sqrt()),
                Func::Log if x > 0.0 => Some(x.ln()),
                _ => None,
            };
            if let Some(r) = r {
                return Complex64::new(r, 0.0);
            }
        }
        match self {
            Func::Abs => Complex64::new(z.norm(), 0.0),
            f => f.unary().expect("not abs").apply(z),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Imaginary literal `x i`.
    Imag(f64),
    Pi,
    I,
    T,
    U,
    /// `diff(u, k)`.
    Diff(u32),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let b = src.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let ch = b[i];
            if ch.is_ascii_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() || (ch == b'.' && b.get(i + 1).is_some_and(u8::is_ascii_digit)) {
                i = lx.number(i)?;
            } else if ch.is_ascii_alphabetic() || ch == b'_' {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(src[start..i].to_string()), start));
            } else if b"+-*/^(),".contains(&ch) {
                lx.toks.push((Tok::Sym(ch as char), i));
                i += 1;
            } else {
                let c = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }

    fn number(&mut self, start: usize) -> Result<usize, ParseError> {
        let b = self.src.as_bytes();
        let digits = |mut i: usize| {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            i
        };
        let mut i = digits(start);
        if i < b.len() && b[i] == b'.' {
            i = digits(i + 1);
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if j < b.len() && b[j].is_ascii_digit() {
                i = digits(j);
            }
        }
        let value: f64 = self.src[start..i].parse().map_err(|_| ParseError {
            offset: start,
            message: format!("malformed number `{}`", &self.src[start..i]),
        })?;
        let imag = i < b.len() && b[i] == b'i' && !b.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
        if imag {
            i += 1;
        }
        self.toks.push((Tok::Num(value, imag), start));
        Ok(i)
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const OPERAND: &str = "expected a number, identifier, `(` or `-`";

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(x, imag) => {
                self.pos += 1;
                Ok(if imag { Expr::Imag(x) } else { Expr::Num(x) })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "t" => Ok(Expr::T),
                    "u" => Ok(Expr::U),
                    "pi" => Ok(Expr::Pi),
                    "i" => Ok(Expr::I),
                    "diff" => self.diff_call(),
                    _ => match Func::from_name(&name) {
                        Some(f) => {
                            self.expect('(')?;
                            let arg = self.expr()?;
                            self.expect(')')?;
                            Ok(Expr::Call(f, Box::new(arg)))
                        }
                        None => Err(ParseError {
                            offset: at,
                            message: format!("unknown identifier `{name}`"),
                        }),
                    },
                }
            }
            Tok::End => self.err(format!("unexpected end of input; {OPERAND}")),
            Tok::Sym(c) => self.err(format!("unexpected `{c}`; {OPERAND}")),
        }
    }

    fn diff_call(&mut self) -> Result<Expr, ParseError> {
        self.expect('(')?;
        if *self.peek() != Tok::Ident("u".into()) {
            return self.err("diff applies to the unknown `u` only");
        }
        self.pos += 1;
        let mut k = 1;
        if self.eat(',') {
            match *self.peek() {
                Tok::Num(x, false) if x.fract() == 0.0 && (0.0..=64.0).contains(&x) => {
                    k = x as u32;
                    self.pos += 1;
                }
                _ => return self.err("expected a derivative order between 0 and 64"),
            }
        }
        self.expect(')')?;
        Ok(Expr::Diff(k))
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: Lexer::run(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("expected an operator or end of input");
    }
    Ok(e)
}

/// Fully parenthesized, so that printing and reparsing is the identity.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::Imag(x) => write!(f, "{x:?}i"),
            Expr::Pi => f.write_str("pi"),
            Expr::I => f.write_str("i"),
            Expr::T => f.write_str("t"),
            Expr::U => f.write_str("u"),
            Expr::Diff(k) => write!(f, "diff(u,{k})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Call(g, a) => write!(f, "{}({a})", g.name()),
            Expr::Bin(op, a, b) => write!(f, "({a}{}{b})", op.symbol()),
        }
    }
}

fn pow(a: Complex64, b: Complex64) -> Complex64 {
    if b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() <= 64.0 {
        let k = b.re as i32;
        return if a.im == 0.0 { Complex64::new(a.re.powi(k), 0.0) } else { a.powi(k) };
    }
    if a.im == 0.0 && b.im == 0.0 && a.re >= 0.0 {
        return Complex64::new(a.re.powf(b.re), 0.0);
    }
    a.powc(b)
}

fn binary(op: BinOp, a: Complex64, b: Complex64) -> Complex64 {
    if a.im == 0.0 && b.im == 0.0 && op != BinOp::Pow {
        let (x, y) = (a.re, b.re);
        let r = match op {
            BinOp::Add => x + y,
            BinOp::Sub => x - y,
            BinOp::Mul => x * y,
            _ => x / y,
        };
        return Complex64::new(r, 0.0);
    }
    match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a * b,
        BinOp::Div => a / b,
        BinOp::Pow => pow(a, b),
    }
}

impl Expr {
    pub fn uses_u(&self) -> bool {
        match self {
            Expr::U | Expr::Diff(_) => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.uses_u(),
            Expr::Bin(_, a, b) => a.uses_u() || b.uses_u(),
            _ => false,
        }
    }

    pub fn uses_t(&self) -> bool {
        match self {
            Expr::T => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.uses_t(),
            Expr::Bin(_, a, b) => a.uses_t() || b.uses_t(),
            _ => false,
        }
    }

    /// Value at `t`. `u` and its derivatives evaluate to NaN.
    pub fn eval(&self, t: f64) -> Complex64 {
        let re = |x: f64| Complex64::new(x, 0.0);
        match self {
            Expr::Num(x) => re(*x),
            Expr::Imag(x) => Complex64::new(0.0, *x),
            Expr::Pi => re(std::f64::consts::PI),
            Expr::I => Complex64::new(0.0, 1.0),
            Expr::T => re(t),
            Expr::U | Expr::Diff(_) => re(f64::NAN),
            Expr::Neg(a) => -a.eval(t),
            Expr::Call(g, a) => g.apply(a.eval(t)),
            Expr::Bin(op, a, b) => binary(*op, a.eval(t), b.eval(t)),
        }
    }

    /// Adaptive trigonometric representation on `interval`.
    pub fn build(&self, interval: Interval, opts: &BuildOptions) -> Result<TrigPoly, TrigError> {
        if !self.uses_t() {
            let c = self.eval(0.0);
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(TrigError::NonFinite { t: interval.a() });
            }
            return Ok(TrigPoly::constant(c, interval));
        }
        build_adaptive(|t| self.eval(t), interval, opts)
    }

    /// Differential operator in `u`. Subtrees free of `u` become fixed
    /// functions of `t`.
    pub fn to_node(&self, interval: Interval) -> Result<Node, TrigError> {
        let b = |e: &Expr| -> Result<Box<Node>, TrigError> { Ok(Box::new(e.to_node(interval)?)) };
        if !self.uses_u() {
            if !self.uses_t() {
                return Ok(Node::Const(self.eval(0.0)));
            }
            return Ok(Node::Func(self.build(interval, &BuildOptions::default())?));
        }
        Ok(match self {
            Expr::U => Node::u(),
            Expr::Diff(k) => Node::Deriv(*k),
            Expr::Neg(a) => Node::Neg(b(a)?),
            Expr::Call(g, a) => match g.unary() {
                Some(un) => Node::Apply(un, b(a)?),
                None => {
                    let abs: PointwiseFn = Arc::new(|z: Complex64| Complex64::new(z.norm(), 0.0));
                    Node::Pointwise(abs, b(a)?)
                }
            },
            Expr::Bin(op, x, y) => match op {
                BinOp::Add => Node::Add(b(x)?, b(y)?),
                BinOp::Sub => Node::Sub(b(x)?, b(y)?),
                BinOp::Mul => Node::Mul(b(x)?, b(y)?),
                BinOp::Div => Node::Div(b(x)?, b(y)?),
                BinOp::Pow => {
                    if y.uses_u() || y.uses_t() {
                        return Err(TrigError::Shape("exponents of expressions in u must be constants".into()));
                    }
                    let e = y.eval(0.0);
                    if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= 64.0 {
                        Node::Powi(b(x)?, e.re as i32)
                    } else {
                        let g: PointwiseFn = Arc::new(move |z: Complex64| pow(z, e));
                        Node::Pointwise(g, b(x)?)
                    }
                }
            },
            _ => unreachable!("leaf without u"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let e = parse_expr("cos(t) + sin(3*t)/2").unwrap();
        assert_eq!(e.eval(0.0), Complex64::new(1.0, 0.0));
        let err = parse_expr("2*+3").unwrap_err();
        assert_eq!(err.offset, 2);
        let z = parse_expr("exp(1i*t)").unwrap().eval(std::f64::consts::PI);
        assert!((z - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn precedence() {
        let v = |s: &str| parse_expr(s).unwrap().eval(0.0).re;
        assert_eq!(v("-2^2"), -4.0);
        assert_eq!(v("2^3^2"), 512.0);
        assert_eq!(v("2^-1"), 0.5);
        assert_eq!(v("1-2-3"), -4.0);
        assert_eq!(v("8/2/2"), 2.0);
        assert_eq!(v("1+2*3"), 7.0);
        assert_eq!(v(".5e1"), 5.0);
    }

    #[test]
    fn errors() {
        let e = parse_expr("cos(t) + foo(t)").unwrap_err();
        assert_eq!(e.offset, 9);
        assert!(e.message.contains("foo"));
        assert_eq!(parse_expr("(1+2").unwrap_err().offset, 4);
        assert_eq!(parse_expr("1 2").unwrap_err().offset, 2);
        assert_eq!(parse_expr("3 $").unwrap_err().offset, 2);
        assert!(parse_expr("diff(t)").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn operators_in_u() {
        let e = parse_expr(".004*diff(u,2) + u*diff(u) - u").unwrap();
        assert!(e.uses_u());
        assert_eq!(e.to_node(Interval::two_pi()).unwrap().order(), 2);
        assert!(e.eval(0.0).re.is_nan());
    }
}
