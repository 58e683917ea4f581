//! A small expression language for holomorphic functions of `z`.
//!
//! ```text
//! sum   := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := number | 'z' | 'i' | 'pi' | 'e' | func '(' sum ')' | '(' sum ')'
//! func  := exp | cosh | sinh | cos | sin
//! ```

use std::fmt;

use num_complex::Complex64;

use super::jet::Jet;
use super::HolomorphicField;
use crate::error::{GeomError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Cosh,
    Sinh,
    Cos,
    Sin,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Cos => "cos",
            Func::Sin => "sin",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser {
            s: src.as_bytes(),
            pos: 0,
        };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => z,
            Expr::Neg(a) => -a.eval(z),
            Expr::Add(a, b) => a.eval(z) + b.eval(z),
            Expr::Sub(a, b) => a.eval(z) - b.eval(z),
            Expr::Mul(a, b) => a.eval(z) * b.eval(z),
            Expr::Div(a, b) => a.eval(z) / b.eval(z),
            Expr::Pow(a, n) => a.eval(z).powi(*n),
            Expr::Call(f, a) => {
                let w = a.eval(z);
                match f {
                    Func::Exp => w.exp(),
                    Func::Cosh => w.cosh(),
                    Func::Sinh => w.sinh(),
                    Func::Cos => w.cos(),
                    Func::Sin => w.sin(),
                }
            }
        }
    }

    pub fn eval_jet(&self, base: Complex64, order: usize) -> Jet {
        match self {
            Expr::Const(c) => Jet::constant(base, *c, order),
            Expr::Var => Jet::variable(base, order),
            Expr::Neg(a) => -a.eval_jet(base, order),
            Expr::Add(a, b) => a.eval_jet(base, order) + b.eval_jet(base, order),
            Expr::Sub(a, b) => a.eval_jet(base, order) - b.eval_jet(base, order),
            Expr::Mul(a, b) => a.eval_jet(base, order) * b.eval_jet(base, order),
            Expr::Div(a, b) => a.eval_jet(base, order) / b.eval_jet(base, order),
            Expr::Pow(a, n) => a.eval_jet(base, order).powi(*n),
            Expr::Call(f, a) => {
                let w = a.eval_jet(base, order);
                match f {
                    Func::Exp => w.exp(),
                    Func::Cosh => w.cosh(),
                    Func::Sinh => w.sinh(),
                    Func::Cos => w.cos(),
                    Func::Sin => w.sin(),
                }
            }
        }
    }
}

impl HolomorphicField for Expr {
    fn jet(&self, z: Complex64, order: usize) -> Result<Jet> {
        let j = self.eval_jet(z, order);
        if !j.is_finite() {
            return Err(GeomError::Degenerate(format!("field is singular at {z}")));
        }
        Ok(j)
    }

    fn value(&self, z: Complex64) -> Result<Complex64> {
        let v = self.eval(z);
        if !v.is_finite() {
            return Err(GeomError::Degenerate(format!("field is singular at {z}")));
        }
        Ok(v)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Expr::Const(c) => write!(f, "({} + {}*i)", c.re, c.im),
            Expr::Var => write!(f, "z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
            Expr::Call(g, a) => write!(f, "{}({a})", g.name()),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> GeomError {
        GeomError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(b'-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat(b'*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            let n: i32 = digits.parse().map_err(|_| self.error("expected an integer exponent"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let func = match word {
                    "z" => return Ok(Expr::Var),
                    "i" => return Ok(Expr::Const(Complex64::i())),
                    "pi" => return Ok(Expr::Const(std::f64::consts::PI.into())),
                    "e" => return Ok(Expr::Const(std::f64::consts::E.into())),
                    "exp" => Func::Exp,
                    "cosh" => Func::Cosh,
                    "sinh" => Func::Sinh,
                    "cos" => Func::Cos,
                    "sin" => Func::Sin,
                    _ => {
                        self.pos = start;
                        return Err(self.error(&format!("unknown name '{word}'")));
                    }
                };
                if !self.eat(b'(') {
                    return Err(self.error("expected '(' after function name"));
                }
                let arg = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < self.s.len() && (self.s[self.pos] == b'e' || self.s[self.pos] == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.pos < self.s.len() && (self.s[self.pos] == b'+' || self.s[self.pos] == b'-') {
                self.pos += 1;
            }
            if self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // `2e` is not an exponent; leave the `e` for the caller.
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| self.error("malformed number"))?;
        Ok(Expr::Const(v.into()))
    }
}
