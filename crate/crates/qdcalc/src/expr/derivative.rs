use num::rational::BigRational;
use num::traits::One;

use super::ast::{BinOp, Expr, Func, Number};

/// Symbolic derivative with respect to `x`.
///
/// Standard sum, product, quotient and chain rules; the result is lightly
/// constant-folded but otherwise unsimplified.
pub fn symbolic_derivative(f: &Expr) -> Expr {
    match f {
        Expr::Const(_) => Expr::constant(0),
        Expr::Var => Expr::constant(1),
        Expr::Neg(u) => neg(symbolic_derivative(u)),
        Expr::Bin(BinOp::Add, a, b) => add(symbolic_derivative(a), symbolic_derivative(b)),
        Expr::Bin(BinOp::Sub, a, b) => sub(symbolic_derivative(a), symbolic_derivative(b)),
        Expr::Bin(BinOp::Mul, a, b) => {
            let da = symbolic_derivative(a);
            let db = symbolic_derivative(b);
            add(mul(da, (**b).clone()), mul((**a).clone(), db))
        }
        Expr::Bin(BinOp::Div, a, b) => {
            let da = symbolic_derivative(a);
            let db = symbolic_derivative(b);
            let num = sub(mul(da, (**b).clone()), mul((**a).clone(), db));
            let den = pow((**b).clone(), Expr::constant(2));
            div(num, den)
        }
        Expr::Bin(BinOp::Pow, a, b) => match b.as_ref() {
            // d/dx u^c = c u^(c-1) u'
            Expr::Const(c) => {
                let cm1 = number_sub_one(c);
                let da = symbolic_derivative(a);
                mul(
                    mul(Expr::Const(c.clone()), pow((**a).clone(), Expr::Const(cm1))),
                    da,
                )
            }
            // d/dx u^v = u^v (v' ln u + v u'/u)
            _ => {
                let da = symbolic_derivative(a);
                let db = symbolic_derivative(b);
                let inner = add(
                    mul(db, Expr::Call(Func::Ln, a.clone())),
                    mul((**b).clone(), div(da, (**a).clone())),
                );
                mul(f.clone(), inner)
            }
        },
        Expr::Call(func, u) => {
            let du = symbolic_derivative(u);
            let outer = match func {
                Func::Sin => Expr::Call(Func::Cos, u.clone()),
                Func::Cos => neg(Expr::Call(Func::Sin, u.clone())),
                Func::Exp => Expr::Call(Func::Exp, u.clone()),
                Func::Ln => {
                    return div(du, (**u).clone());
                }
                Func::Sqrt => {
                    return div(
                        du,
                        mul(Expr::constant(2), Expr::Call(Func::Sqrt, u.clone())),
                    );
                }
            };
            mul(outer, du)
        }
    }
}

fn number_sub_one(n: &Number) -> Number {
    match n {
        Number::Rational(r) => Number::Rational(r - BigRational::one()),
        Number::Float(v) => Number::Float(v - 1.0),
    }
}

fn as_const(e: &Expr) -> Option<&Number> {
    match e {
        Expr::Const(n) => Some(n),
        _ => None,
    }
}

fn fold2(op: BinOp, a: &Number, b: &Number) -> Option<Number> {
    use Number::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Some(Rational(match op {
            BinOp::Add => x + y,
            BinOp::Sub => x - y,
            BinOp::Mul => x * y,
            BinOp::Div | BinOp::Pow => return None,
        })),
        _ => {
            let (x, y) = (a.to_f64(), b.to_f64());
            Some(Float(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div | BinOp::Pow => return None,
            }))
        }
    }
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if let Some(n) = fold2(BinOp::Add, x, y) {
            return Expr::Const(n);
        }
    }
    if matches!(as_const(&a), Some(n) if n.is_zero()) {
        return b;
    }
    if matches!(as_const(&b), Some(n) if n.is_zero()) {
        return a;
    }
    Expr::Bin(BinOp::Add, Box::new(a), Box::new(b))
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if let Some(n) = fold2(BinOp::Sub, x, y) {
            return Expr::Const(n);
        }
    }
    if matches!(as_const(&b), Some(n) if n.is_zero()) {
        return a;
    }
    if matches!(as_const(&a), Some(n) if n.is_zero()) {
        return neg(b);
    }
    Expr::Bin(BinOp::Sub, Box::new(a), Box::new(b))
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if let Some(n) = fold2(BinOp::Mul, x, y) {
            return Expr::Const(n);
        }
    }
    if matches!(as_const(&a), Some(n) if n.is_zero())
        || matches!(as_const(&b), Some(n) if n.is_zero())
    {
        return Expr::constant(0);
    }
    if matches!(as_const(&a), Some(n) if n.is_one()) {
        return b;
    }
    if matches!(as_const(&b), Some(n) if n.is_one()) {
        return a;
    }
    Expr::Bin(BinOp::Mul, Box::new(a), Box::new(b))
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if matches!(as_const(&b), Some(n) if n.is_one()) {
        return a;
    }
    if matches!(as_const(&a), Some(n) if n.is_zero())
        && !matches!(as_const(&b), Some(n) if n.is_zero())
    {
        return Expr::constant(0);
    }
    Expr::Bin(BinOp::Div, Box::new(a), Box::new(b))
}

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(Number::Rational(r)) => Expr::Const(Number::Rational(-r)),
        Expr::Const(Number::Float(v)) => Expr::Const(Number::Float(-v)),
        other => Expr::Neg(Box::new(other)),
    }
}

pub(crate) fn pow(a: Expr, b: Expr) -> Expr {
    if matches!(as_const(&b), Some(n) if n.is_zero()) {
        return Expr::constant(1);
    }
    if matches!(as_const(&b), Some(n) if n.is_one()) {
        return a;
    }
    Expr::Bin(BinOp::Pow, Box::new(a), Box::new(b))
}
