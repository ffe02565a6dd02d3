use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Numeric constant: exact rational where possible, float otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Rational(BigRational),
    Float(f64),
}

impl Number {
    pub fn from_int(n: i64) -> Self {
        Number::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Float(v) => *v,
        }
    }

    /// Integer value if this constant is an exact integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Number::Rational(r) if r.is_integer() => Some(r.numer().clone()),
            Number::Float(v) if v.fract() == 0.0 && v.abs() < 2f64.powi(53) => {
                Some(BigInt::from(*v as i64))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_zero(),
            Number::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_one(),
            Number::Float(v) => *v == 1.0,
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree for a real-valued function of one variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Number),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn constant(n: i64) -> Expr {
        Expr::Const(Number::from_int(n))
    }

    fn domain_err(&self, reason: &str) -> Error {
        Error::Domain {
            expr: self.to_string(),
            reason: reason.to_string(),
        }
    }

    /// Floating-point evaluation at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Expr::Const(n) => Ok(n.to_f64()),
            Expr::Var => Ok(x),
            Expr::Neg(u) => Ok(-u.eval(x)?),
            Expr::Bin(op, a, b) => {
                let va = a.eval(x)?;
                match op {
                    BinOp::Add => Ok(va + b.eval(x)?),
                    BinOp::Sub => Ok(va - b.eval(x)?),
                    BinOp::Mul => Ok(va * b.eval(x)?),
                    BinOp::Div => {
                        let vb = b.eval(x)?;
                        if vb == 0.0 {
                            return Err(self.domain_err("division by zero"));
                        }
                        Ok(va / vb)
                    }
                    BinOp::Pow => self.eval_pow(va, b, x),
                }
            }
            Expr::Call(f, u) => {
                let v = u.eval(x)?;
                match f {
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Exp => Ok(v.exp()),
                    Func::Ln => {
                        if v <= 0.0 {
                            return Err(self.domain_err("ln of non-positive argument"));
                        }
                        Ok(v.ln())
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            return Err(self.domain_err("sqrt of negative argument"));
                        }
                        Ok(v.sqrt())
                    }
                }
            }
        }
    }

    // Integer constant exponents use repeated multiplication; anything else
    // goes through exp(b ln a), which needs a positive base.
    fn eval_pow(&self, base: f64, exponent: &Expr, x: f64) -> Result<f64> {
        if let Expr::Const(n) = exponent {
            if let Some(k) = n.as_integer() {
                if let Some(k) = k.to_i32() {
                    if k < 0 && base == 0.0 {
                        return Err(self.domain_err("zero base with negative exponent"));
                    }
                    return Ok(base.powi(k));
                }
            }
        }
        let e = exponent.eval(x)?;
        if base <= 0.0 {
            return Err(self.domain_err("non-integer power of non-positive base"));
        }
        Ok((e * base.ln()).exp())
    }

    /// Exact rational evaluation. Only defined for trees built from rational
    /// constants, `x`, `+ - * /`, and powers with integer constant exponent.
    pub fn eval_exact(&self, x: &BigRational) -> Result<BigRational> {
        match self {
            Expr::Const(Number::Rational(r)) => Ok(r.clone()),
            Expr::Const(Number::Float(_)) => {
                Err(Error::NotExact("float constant".to_string()))
            }
            Expr::Var => Ok(x.clone()),
            Expr::Neg(u) => Ok(-u.eval_exact(x)?),
            Expr::Bin(op, a, b) => {
                let va = a.eval_exact(x)?;
                match op {
                    BinOp::Add => Ok(va + b.eval_exact(x)?),
                    BinOp::Sub => Ok(va - b.eval_exact(x)?),
                    BinOp::Mul => Ok(va * b.eval_exact(x)?),
                    BinOp::Div => {
                        let vb = b.eval_exact(x)?;
                        if vb.is_zero() {
                            return Err(self.domain_err("division by zero"));
                        }
                        Ok(va / vb)
                    }
                    BinOp::Pow => {
                        let k = match b.as_ref() {
                            Expr::Const(n) => n.as_integer().and_then(|k| k.to_i32()),
                            _ => None,
                        };
                        let k = k.ok_or_else(|| {
                            Error::NotExact("non-integer exponent".to_string())
                        })?;
                        if k < 0 && va.is_zero() {
                            return Err(self.domain_err("zero base with negative exponent"));
                        }
                        Ok(va.pow(k))
                    }
                }
            }
            Expr::Call(f, _) => Err(Error::NotExact(format!("call to {}", f.name()))),
        }
    }

    /// True when the tree is a polynomial in `x` with rational constants.
    pub fn is_exact_polynomial(&self) -> bool {
        match self {
            Expr::Const(Number::Rational(_)) | Expr::Var => true,
            Expr::Const(Number::Float(_)) | Expr::Call(..) => false,
            Expr::Neg(u) => u.is_exact_polynomial(),
            Expr::Bin(BinOp::Pow, a, b) => {
                a.is_exact_polynomial()
                    && matches!(b.as_ref(), Expr::Const(n) if n.as_integer().map_or(false, |k| !k.is_negative()))
            }
            Expr::Bin(BinOp::Div, a, b) => {
                a.is_exact_polynomial() && matches!(b.as_ref(), Expr::Const(Number::Rational(r)) if !r.is_zero())
            }
            Expr::Bin(_, a, b) => a.is_exact_polynomial() && b.is_exact_polynomial(),
        }
    }
}

// Rendering. Precedence mirrors the parser: ^ (4, right-assoc) over unary
// minus (3) over * / (2) over + - (1).
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Const(n) if is_negative_const(n) => 3,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => 5,
        Expr::Neg(_) => 3,
        Expr::Bin(BinOp::Pow, ..) => 4,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
    }
}

fn is_negative_const(n: &Number) -> bool {
    match n {
        Number::Rational(r) => r.is_negative(),
        Number::Float(v) => *v < 0.0,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    if prec(child) < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else if let Some(s) = decimal_string(r) {
                    write!(f, "{s}")
                } else {
                    write!(f, "({}/{})", r.numer(), r.denom())
                }
            }
            Number::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Exact decimal expansion when the denominator is of the form 2^a 5^b.
fn decimal_string(r: &BigRational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut a = 0u32;
    let mut b = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        a += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        b += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = a.max(b);
    // numerator scaled so the denominator becomes 10^digits
    let scale = two.pow(digits - a) * five.pow(digits - b);
    let scaled = (r.numer() * scale).magnitude().to_string();
    let sign = if r.is_negative() { "-" } else { "" };
    let d = digits as usize;
    let padded = if scaled.len() <= d {
        format!("0.{}{}", "0".repeat(d - scaled.len()), scaled)
    } else {
        let (int, frac) = scaled.split_at(scaled.len() - d);
        format!("{int}.{frac}")
    };
    Some(format!("{sign}{padded}"))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(n) => write!(f, "{n}"),
            Expr::Var => write!(f, "x"),
            Expr::Neg(u) => {
                write!(f, "-")?;
                write_child(f, u, 3)
            }
            Expr::Bin(op, a, b) => {
                let (sym, p) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                if *op == BinOp::Pow {
                    // right-associative: parenthesize a non-atomic base
                    write_child(f, a, 5)?;
                    write!(f, "{sym}")?;
                    write_child(f, b, 3)
                } else {
                    write_child(f, a, p)?;
                    write!(f, "{sym}")?;
                    // left-associative: the right child must bind strictly tighter
                    write_child(f, b, p + 1)
                }
            }
            Expr::Call(func, u) => write!(f, "{}({})", func.name(), u),
        }
    }
}
