//! Scalar expressions in the variables `s`, `t`, `w`.
//!
//! Radius functions and curve components use `s` alone. The free directions
//! of null-cone envelopes also use `t` and `w`.
//!
//! Grammar, from loosest to tightest binding:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'pi' | variable | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Exponents must fold to constants, which keeps differentiation inside the
//! grammar.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Independent variable of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    T,
    W,
}

/// Elementary function names accepted by the parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tan" => Func::Tan,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tan => "tan",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Expr {
    Const(f64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax { offset, message: message.into() }
}

fn domain(message: impl Into<String>) -> ExprError {
    ExprError::Domain(message.into())
}

/// Parses `text` into an expression.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, len: text.len() };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(tok) => Err(syntax(tok.offset, format!("unexpected {}", tok.kind.describe()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Op(char),
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(x) => format!("number {x}"),
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Op(c) => format!("`{c}`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lit = &text[start..i];
            let value = lit.parse::<f64>().map_err(|_| syntax(start, format!("malformed number `{lit}`")))?;
            out.push(Token { kind: TokenKind::Number(value), offset: start });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { kind: TokenKind::Ident(text[start..i].to_string()), offset: start });
        } else if b"+-*/^()".contains(&c) {
            out.push(Token { kind: TokenKind::Op(c as char), offset: i });
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(syntax(i, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token { kind: TokenKind::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.len, |t| t.offset)
    }

    fn expect_op(&mut self, op: char) -> Result<(), ExprError> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected `{op}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' { add(lhs, rhs) } else { sub(lhs, rhs) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' { mul(lhs, rhs) } else { div(lhs, rhs) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(neg(self.unary()?))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let exponent = self.unary()?;
        match exponent.constant_value() {
            Some(p) if p.is_finite() => Ok(pow(base, p)),
            _ => Err(syntax(at, "exponent must be a finite constant")),
        }
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(syntax(self.len, "unexpected end of input")),
        };
        self.pos += 1;
        match tok.kind {
            TokenKind::Number(x) => Ok(Expr::Const(x)),
            TokenKind::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                if self.peek_op() == Some('(') {
                    let func = Func::from_name(&name)
                        .ok_or_else(|| ExprError::UnknownFunction { name: name.clone(), offset: tok.offset })?;
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect_op(')')?;
                    return Ok(call(func, arg));
                }
                match name.as_str() {
                    "s" => Ok(Expr::Var(Var::S)),
                    "t" => Ok(Expr::Var(Var::T)),
                    "w" => Ok(Expr::Var(Var::W)),
                    "pi" => Ok(Expr::Const(std::f64::consts::PI)),
                    _ => Err(syntax(tok.offset, format!("unknown identifier `{name}`"))),
                }
            }
            other => Err(syntax(tok.offset, format!("unexpected {}", other.describe()))),
        }
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(x) => Expr::Const(-x),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(x), e) | (e, Expr::Const(x)) if x == 0.0 => e,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (e, Expr::Const(0.0)) => e,
        (Expr::Const(0.0), e) => neg(e),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(x), _) | (_, Expr::Const(x)) if x == 0.0 => Expr::Const(0.0),
        (Expr::Const(x), e) | (e, Expr::Const(x)) if x == 1.0 => e,
        (Expr::Const(x), e) | (e, Expr::Const(x)) if x == -1.0 => neg(e),
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) if y != 0.0 => Expr::Const(x / y),
        (Expr::Const(0.0), _) => Expr::Const(0.0),
        (e, Expr::Const(1.0)) => e,
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, p: f64) -> Expr {
    if p == 0.0 {
        return Expr::Const(1.0);
    }
    if p == 1.0 {
        return a;
    }
    match a {
        Expr::Const(x) if pow_value(x, p).is_ok() => Expr::Const(pow_value(x, p).unwrap()),
        other => Expr::Pow(Box::new(other), p),
    }
}

fn call(f: Func, a: Expr) -> Expr {
    if let Expr::Const(x) = a {
        if let Ok(v) = apply(f, x) {
            return Expr::Const(v);
        }
    }
    Expr::Call(f, Box::new(a))
}

fn pow_value(x: f64, p: f64) -> Result<f64, ExprError> {
    if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        if x == 0.0 && p < 0.0 {
            return Err(domain("zero raised to a negative power"));
        }
        return finite(x.powi(p as i32), "power");
    }
    if x < 0.0 {
        return Err(domain(format!("negative base {x} with non-integer exponent {p}")));
    }
    if x == 0.0 && p < 0.0 {
        return Err(domain("zero raised to a negative power"));
    }
    finite(x.powf(p), "power")
}

fn finite(v: f64, what: &str) -> Result<f64, ExprError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} is not finite")))
    }
}

fn apply(f: Func, x: f64) -> Result<f64, ExprError> {
    let v = match f {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Sinh => x.sinh(),
        Func::Cosh => x.cosh(),
        Func::Tan => x.tan(),
        Func::Tanh => x.tanh(),
        Func::Exp => x.exp(),
        Func::Log => {
            if x <= 0.0 {
                return Err(domain(format!("log of non-positive value {x}")));
            }
            x.ln()
        }
        Func::Sqrt => {
            if x < 0.0 {
                return Err(domain(format!("sqrt of negative value {x}")));
            }
            x.sqrt()
        }
    };
    finite(v, f.name())
}

impl Expr {
    /// The value of the expression if it contains no variables.
    pub fn constant_value(&self) -> Option<f64> {
        if self.uses_any_var() {
            None
        } else {
            self.eval_at(0.0, 0.0, 0.0).ok()
        }
    }

    /// Whether the variable `v` occurs in the tree.
    pub fn uses_var(&self, v: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(u) => *u == v,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.uses_var(v),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_var(v) || b.uses_var(v)
            }
        }
    }

    fn uses_any_var(&self) -> bool {
        self.uses_var(Var::S) || self.uses_var(Var::T) || self.uses_var(Var::W)
    }

    /// Evaluates with `t = w = 0`.
    pub fn eval(&self, s: f64) -> Result<f64, ExprError> {
        self.eval_at(s, 0.0, 0.0)
    }

    /// Evaluates at `(s, t, w)`, returning an error instead of a non-finite value.
    pub fn eval_at(&self, s: f64, t: f64, w: f64) -> Result<f64, ExprError> {
        match self {
            Expr::Const(x) => Ok(*x),
            Expr::Var(Var::S) => Ok(s),
            Expr::Var(Var::T) => Ok(t),
            Expr::Var(Var::W) => Ok(w),
            Expr::Neg(a) => Ok(-a.eval_at(s, t, w)?),
            Expr::Add(a, b) => finite(a.eval_at(s, t, w)? + b.eval_at(s, t, w)?, "sum"),
            Expr::Sub(a, b) => finite(a.eval_at(s, t, w)? - b.eval_at(s, t, w)?, "difference"),
            Expr::Mul(a, b) => finite(a.eval_at(s, t, w)? * b.eval_at(s, t, w)?, "product"),
            Expr::Div(a, b) => {
                let d = b.eval_at(s, t, w)?;
                if d == 0.0 {
                    return Err(domain("division by zero"));
                }
                finite(a.eval_at(s, t, w)? / d, "quotient")
            }
            Expr::Pow(a, p) => pow_value(a.eval_at(s, t, w)?, *p),
            Expr::Call(f, a) => apply(*f, a.eval_at(s, t, w)?),
        }
    }

    /// Exact symbolic derivative with respect to `s`.
    pub fn differentiate(&self) -> Expr {
        self.differentiate_by(Var::S)
    }

    /// Exact symbolic derivative with respect to `v`.
    pub fn differentiate_by(&self, v: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(u) => Expr::Const(if *u == v { 1.0 } else { 0.0 }),
            Expr::Neg(a) => neg(a.differentiate_by(v)),
            Expr::Add(a, b) => add(a.differentiate_by(v), b.differentiate_by(v)),
            Expr::Sub(a, b) => sub(a.differentiate_by(v), b.differentiate_by(v)),
            Expr::Mul(a, b) => add(
                mul(a.differentiate_by(v), (**b).clone()),
                mul((**a).clone(), b.differentiate_by(v)),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.differentiate_by(v), (**b).clone()),
                    mul((**a).clone(), b.differentiate_by(v)),
                ),
                pow((**b).clone(), 2.0),
            ),
            Expr::Pow(a, p) => mul(mul(Expr::Const(*p), pow((**a).clone(), p - 1.0)), a.differentiate_by(v)),
            Expr::Call(f, a) => {
                let u = (**a).clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, u),
                    Func::Cos => neg(call(Func::Sin, u)),
                    Func::Sinh => call(Func::Cosh, u),
                    Func::Cosh => call(Func::Sinh, u),
                    Func::Tan => pow(call(Func::Cos, u), -2.0),
                    Func::Tanh => pow(call(Func::Cosh, u), -2.0),
                    Func::Exp => call(Func::Exp, u),
                    Func::Log => div(Expr::Const(1.0), u),
                    Func::Sqrt => div(Expr::Const(0.5), call(Func::Sqrt, u)),
                };
                mul(outer, a.differentiate_by(v))
            }
        }
    }

    /// The `n`-th derivative with respect to `s`.
    pub fn nth_derivative(&self, n: usize) -> Expr {
        (0..n).fold(self.clone(), |e, _| e.differentiate())
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(x) if x.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        write!(f, "{x}")
    } else {
        write!(f, "{x:?}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(x) => write_number(f, *x),
            Expr::Var(Var::S) => f.write_str("s"),
            Expr::Var(Var::T) => f.write_str("t"),
            Expr::Var(Var::W) => f.write_str("w"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_child(f, 4)
            }
            Expr::Add(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(" + ")?;
                b.write_child(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_child(f, 1)?;
                f.write_str(" - ")?;
                b.write_child(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_child(f, 2)?;
                f.write_str("*")?;
                b.write_child(f, 4)
            }
            Expr::Div(a, b) => {
                a.write_child(f, 2)?;
                f.write_str("/")?;
                b.write_child(f, 4)
            }
            Expr::Pow(a, p) => {
                a.write_child(f, 5)?;
                f.write_str("^")?;
                if *p < 0.0 {
                    f.write_str("(")?;
                    write_number(f, *p)?;
                    f.write_str(")")
                } else {
                    write_number(f, *p)
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl TryFrom<String> for Expr {
    type Error = ExprError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        parse(&s)
    }
}

impl From<Expr> for String {
    fn from(e: Expr) -> String {
        e.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(text: &str, s: f64) -> f64 {
        parse(text).unwrap().eval(s).unwrap()
    }

    #[test]
    fn parses_linear_term() {
        assert_eq!(parse("2*s").unwrap(), Expr::Mul(Box::new(Expr::Const(2.0)), Box::new(Expr::Var(Var::S))));
    }

    #[test]
    fn parses_curve_component() {
        let e = parse("2*sinh(s)").unwrap();
        for s in [-1.3, 0.0, 0.7, 2.1] {
            assert!((e.eval(s).unwrap() - 2.0 * f64::sinh(s)).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_double_star() {
        assert!(matches!(parse("2**s"), Err(ExprError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn rejects_unknown_function_and_identifier() {
        assert!(matches!(parse("sec(s)"), Err(ExprError::UnknownFunction { offset: 0, .. })));
        assert!(matches!(parse("2*x"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("s^s"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("(s+1"), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(parse(""), Err(ExprError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn precedence_rules() {
        assert_eq!(ev("1 + 2*3", 0.0), 7.0);
        assert_eq!(ev("-2^2", 0.0), -4.0);
        assert_eq!(ev("8/4/2", 0.0), 1.0);
        assert_eq!(ev("5 - 3 - 1", 0.0), 1.0);
        assert_eq!(ev("2*s^2", 3.0), 18.0);
        assert_eq!(ev("s^-1", 4.0), 0.25);
        assert_eq!(ev("s^(1/2)", 9.0), 3.0);
        assert_eq!(ev(" 3 *\ts ", 2.0), 6.0);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(ev("2*s", 3.0), 6.0);
        assert_eq!(ev("2*cosh(s)", 0.0), 2.0);
        assert!(matches!(parse("sqrt(s)").unwrap().eval(-1.0), Err(ExprError::Domain(_))));
        assert!(matches!(parse("log(s)").unwrap().eval(0.0), Err(ExprError::Domain(_))));
        assert!(matches!(parse("1/s").unwrap().eval(0.0), Err(ExprError::Domain(_))));
        assert!(matches!(parse("s^0.5").unwrap().eval(-1.0), Err(ExprError::Domain(_))));
        assert_eq!(ev("s^3", -2.0), -8.0);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(parse("2*s").unwrap().differentiate(), Expr::Const(2.0));
        assert_eq!(parse("sinh(s)").unwrap().differentiate().to_string(), "cosh(s)");
        assert_eq!(parse("2*s").unwrap().nth_derivative(2), Expr::Const(0.0));
        let d = parse("s^3 + log(s)").unwrap().differentiate();
        assert!((d.eval(2.0).unwrap() - (12.0 + 0.5)).abs() < 1e-14);
    }

    #[test]
    fn partial_derivatives_in_other_variables() {
        let e = parse("cos(t)*sinh(w) + s*t").unwrap();
        let dt = e.differentiate_by(Var::T);
        let (s, t, w): (f64, f64, f64) = (0.3, 0.8, -0.4);
        let want = -t.sin() * w.sinh() + s;
        assert!((dt.eval_at(s, t, w).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn printing_round_trips() {
        for text in ["-(s+1)^2", "s - (s - 1)", "2/(s*3)", "-s^(-2)", "sqrt(3)*cos(s)", "(-2)^3", "1e-300*s"] {
            let e = parse(text).unwrap();
            let back = parse(&e.to_string()).unwrap();
            for s in [0.3, 1.7, 2.9] {
                assert_eq!(e.eval(s).ok(), back.eval(s).ok(), "{text} -> {e}");
            }
        }
    }

    #[test]
    fn serde_uses_text_form() {
        let e = parse("2*sinh(s)").unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, "\"2*sinh(s)\"");
        let back: Expr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
