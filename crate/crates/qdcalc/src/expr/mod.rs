//! Expression frontend: parsing, evaluation, symbolic differentiation.
//!
//! The grammar (EBNF):
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?          (right-associative)
//! exponent := "-" exponent | power
//! atom     := number | "x" | func "(" expr ")" | "(" expr ")"
//! func     := "sin" | "cos" | "exp" | "ln" | "sqrt"
//! number   := digits ("." digits)?
//! ```
//!
//! Numeric literals are kept as exact rationals, so polynomial trees can be
//! evaluated without rounding via [`Expr::eval_exact`].
//!
//! ```
//! use qdcalc::expr::{parse, symbolic_derivative};
//!
//! let f = parse("x^2 + 1").unwrap();
//! assert_eq!(f.eval(2.0).unwrap(), 5.0);
//!
//! let df = symbolic_derivative(&f);
//! assert_eq!(df.eval(3.0).unwrap(), 6.0);
//! ```

mod ast;
mod derivative;
mod parser;

pub use ast::{BinOp, Expr, Func, Number};
pub use derivative::symbolic_derivative;
pub use parser::parse;

use crate::error::{Error, Result};

/// Two-sided difference quotient `(f(x+h) - f(x-h)) / (2h)`.
///
/// Second-order accurate; used throughout the crate as an oracle that is
/// independent of [`symbolic_derivative`].
pub fn central_difference(f: &Expr, x: f64, h: f64) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::InvalidArgument(format!("h must be positive, got {h}")));
    }
    Ok((f.eval(x + h)? - f.eval(x - h)?) / (2.0 * h))
}
