//! Arithmetic expression language for vector fields and state constraints.
//!
//! Grammar (highest precedence first): `^` with a constant integer exponent,
//! unary minus, `*` `/`, `+` `-`; binary operators associate to the left.
//! Variables are `x1..xn` plus the time variable `t`; the function set is
//! sin, cos, exp, sqrt, abs, min, max.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// 1-based state coordinate.
    Var(usize),
    Time,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
    Min,
    Max,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            _ => 1,
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "min" => Func::Min,
            "max" => Func::Max,
            _ => return None,
        })
    }
}

impl Expr {
    /// Largest variable index mentioned (0 when none).
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Time => 0,
            Expr::Var(i) => *i,
            Expr::Neg(e) => e.max_var(),
            Expr::Pow(e, _) => e.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.max_var().max(b.max_var())
            }
            Expr::Call(_, args) => args.iter().map(Expr::max_var).max().unwrap_or(0),
        }
    }

    /// Evaluates against a state vector and a time value.
    pub fn eval(&self, state: &[f64], time: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Time => time,
            Expr::Var(i) => *state.get(i - 1).ok_or_else(|| {
                Error::Eval(format!("variable x{i} exceeds dimension {}", state.len()))
            })?,
            Expr::Neg(e) => -e.eval(state, time)?,
            Expr::Add(a, b) => a.eval(state, time)? + b.eval(state, time)?,
            Expr::Sub(a, b) => a.eval(state, time)? - b.eval(state, time)?,
            Expr::Mul(a, b) => a.eval(state, time)? * b.eval(state, time)?,
            Expr::Div(a, b) => {
                let den = b.eval(state, time)?;
                if den == 0.0 {
                    return Err(Error::Eval("division by zero".into()));
                }
                a.eval(state, time)? / den
            }
            Expr::Pow(e, k) => e.eval(state, time)?.powi(*k),
            Expr::Call(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(a.eval(state, time)?);
                }
                match f {
                    Func::Sin => vals[0].sin(),
                    Func::Cos => vals[0].cos(),
                    Func::Exp => vals[0].exp(),
                    Func::Sqrt => {
                        if vals[0] < 0.0 {
                            return Err(Error::Eval("square root of a negative value".into()));
                        }
                        vals[0].sqrt()
                    }
                    Func::Abs => vals[0].abs(),
                    Func::Min => vals[0].min(vals[1]),
                    Func::Max => vals[0].max(vals[1]),
                }
            }
        };
        if v.is_nan() {
            return Err(Error::Eval("evaluation produced NaN".into()));
        }
        Ok(v)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_child(&self, child: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min_prec {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

/// Canonical printer; `parse(print(e))` reproduces `e` structurally.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if *c < 0.0 {
                    // keep the printer inside the grammar: negative literals
                    // print as a unary minus
                    write!(f, "-{}", -c)
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Time => write!(f, "t"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                self.fmt_child(e, 4, f)
            }
            Expr::Add(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " + ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " - ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "*")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Div(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "/")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Pow(e, k) => {
                self.fmt_child(e, 5, f)?;
                write!(f, "^{k}")
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut node = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    node = Expr::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.bump();
                    node = Expr::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut node = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    node = Expr::Mul(Box::new(node), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.bump();
                    node = Expr::Div(Box::new(node), Box::new(self.unary()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            let negative = self.peek() == Some(b'-') && {
                self.bump();
                true
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a constant integer exponent"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let mut k: i32 = digits
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            if negative {
                k = -k;
            }
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || c == b'.')
        {
            self.pos += 1;
        }
        // scientific notation
        if self.peek() == Some(b'e') || self.peek() == Some(b'E') {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text
            .parse()
            .map_err(|_| self.err(format!("bad number literal {text:?}")))?;
        Ok(Expr::Const(value))
    }

    fn identifier(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if name == "t" {
            return Ok(Expr::Time);
        }
        if let Some(index) = name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            if index == 0 {
                return Err(self.err("variables are numbered from x1"));
            }
            return Ok(Expr::Var(index));
        }
        if let Some(func) = Func::from_name(name) {
            if !self.eat(b'(') {
                return Err(self.err(format!("expected '(' after {name}")));
            }
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            if args.len() != func.arity() {
                return Err(self.err(format!(
                    "{name} takes {} argument(s), got {}",
                    func.arity(),
                    args.len()
                )));
            }
            return Ok(Expr::Call(func, args));
        }
        Err(self.err(format!("unknown identifier {name:?}")))
    }
}

/// Parses an expression, rejecting trailing garbage.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

/// A state predicate: an inequality between two expressions, evaluated on
/// state vectors (the time variable is not available here).
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Predicate {
    pub fn holds(&self, state: &[f64]) -> Result<bool> {
        let a = self.lhs.eval(state, 0.0)?;
        let b = self.rhs.eval(state, 0.0)?;
        Ok(match self.op {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        })
    }

    pub fn max_var(&self) -> usize {
        self.lhs.max_var().max(self.rhs.max_var())
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

/// Parses `expr OP expr` with OP one of `<`, `<=`, `>`, `>=`.
pub fn parse_predicate(text: &str) -> Result<Predicate> {
    let candidates = [("<=", CmpOp::Le), (">=", CmpOp::Ge), ("<", CmpOp::Lt), (">", CmpOp::Gt)];
    for (sym, op) in candidates {
        if let Some(idx) = text.find(sym) {
            let lhs = parse_expr(&text[..idx])?;
            let rhs = parse_expr(&text[idx + sym.len()..])?;
            return Ok(Predicate { lhs, op, rhs });
        }
    }
    Err(Error::parse(1, 1, "expected a comparison operator"))
}
