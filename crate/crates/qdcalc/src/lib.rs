//! Quantum-calculus differentiation and interpolation toolkit.
//!
//! The crate provides:
//!
//! - [`expr`]: an expression frontend with exact-rational polynomial
//!   evaluation and a symbolic-derivative oracle;
//! - [`identities`]: the discrete power-expansion identities and the
//!   xi-function, verified bit-exactly in rational arithmetic;
//! - [`qops`]: q-, (p,q)-, q-power- and (p,q)-power-difference operators
//!   with closed-form power evaluations;
//! - [`limit`]: Richardson-style extrapolation of difference quotients to
//!   their q -> 1 (or p -> q) limits;
//! - [`taylor`]: Taylor models, remainder bounds, and termwise operator
//!   differentiation;
//! - [`interp`]: Newton interpolation on uniform, geometric, and
//!   power-tower grids.
//!
//! See the book in `book/` for a guided tour.

pub mod error;
pub mod expr;
pub mod identities;
pub mod interp;
pub mod limit;
pub mod qops;
pub mod taylor;

pub use error::{Error, ParseError, Result};
