//! The four difference-operator families: q-difference, (p,q)-difference,
//! q-power difference, and (p,q)-power difference, together with closed-form
//! power-derivative evaluations and the xi-based quotients.
//!
//! Each operator here is a single quotient evaluation; driving a parameter to
//! its limit lives in [`crate::limit`].
//!
//! ```
//! use qdcalc::expr::parse;
//! use qdcalc::qops::q_difference;
//!
//! let f = parse("x^2").unwrap();
//! assert_eq!(q_difference(&f, 2.0, 0.5).unwrap(), 3.0);
//! ```

use num::rational::BigRational;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::identities::xi_exact;

/// A tagged difference-operator family with its parameters.
///
/// Forward q-kinds approach the classical derivative from `q > 1`, backward
/// kinds from `0 < q < 1`; the quotient itself is the same algebraic
/// expression on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DifferenceScheme {
    QForward { q: f64 },
    QBackward { q: f64 },
    Pq { p: f64, q: f64 },
    QPowerForward { q: f64 },
    QPowerBackward { q: f64 },
    PqPower { p: f64, q: f64 },
}

impl DifferenceScheme {
    /// Check the family's parameter invariants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            DifferenceScheme::QForward { q } => {
                if q <= 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "forward q-difference requires q > 1, got {q}"
                    )));
                }
            }
            DifferenceScheme::QBackward { q } => {
                if q <= 0.0 || q >= 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "backward q-difference requires 0 < q < 1, got {q}"
                    )));
                }
            }
            DifferenceScheme::QPowerForward { q } => {
                if q <= 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "forward q-power difference requires q > 1, got {q}"
                    )));
                }
            }
            DifferenceScheme::QPowerBackward { q } => {
                if q <= 0.0 || q >= 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "backward q-power difference requires 0 < q < 1, got {q}"
                    )));
                }
            }
            DifferenceScheme::Pq { p, q } | DifferenceScheme::PqPower { p, q } => {
                if p == q {
                    return Err(Error::InvalidArgument(
                        "(p,q)-kinds require p != q".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether the evaluation point is admissible for this family.
    pub fn check_point(&self, x: f64) -> Result<()> {
        match self {
            DifferenceScheme::QForward { .. }
            | DifferenceScheme::QBackward { .. }
            | DifferenceScheme::Pq { .. } => {
                if x == 0.0 {
                    return Err(Error::DegenerateQuotient(
                        "x = 0 inadmissible for q-difference kinds".to_string(),
                    ));
                }
            }
            DifferenceScheme::QPowerForward { .. }
            | DifferenceScheme::QPowerBackward { .. }
            | DifferenceScheme::PqPower { .. } => {
                if x <= 0.0 || x == 1.0 {
                    return Err(Error::DegenerateQuotient(format!(
                        "power-difference kinds require x > 0 and x != 1, got {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate the family's single quotient at `x`.
    pub fn apply(&self, f: &Expr, x: f64) -> Result<f64> {
        match *self {
            DifferenceScheme::QForward { q } | DifferenceScheme::QBackward { q } => {
                q_difference(f, x, q)
            }
            DifferenceScheme::Pq { p, q } => pq_difference(f, x, p, q),
            DifferenceScheme::QPowerForward { q } | DifferenceScheme::QPowerBackward { q } => {
                q_power_difference(f, x, q)
            }
            DifferenceScheme::PqPower { p, q } => pq_power_difference(f, x, p, q),
        }
    }
}

/// Euler-Jackson q-difference `(f(x) - f(qx)) / ((1-q) x)`.
pub fn q_difference(f: &Expr, x: f64, q: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::DegenerateQuotient("x = 0".to_string()));
    }
    if q == 1.0 {
        return Err(Error::DegenerateQuotient("q = 1".to_string()));
    }
    Ok((f.eval(x)? - f.eval(q * x)?) / ((1.0 - q) * x))
}

/// Two-parameter difference `(f(px) - f(qx)) / ((p-q) x)`.
///
/// Reduces bit-exactly to [`q_difference`] at `p = 1`.
pub fn pq_difference(f: &Expr, x: f64, p: f64, q: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::DegenerateQuotient("x = 0".to_string()));
    }
    if p == q {
        return Err(Error::DegenerateQuotient("p = q".to_string()));
    }
    Ok((f.eval(p * x)? - f.eval(q * x)?) / ((p - q) * x))
}

fn power_point(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        x
    } else {
        x.powf(q)
    }
}

/// q-power difference `(f(x^q) - f(x)) / (x^q - x)`.
pub fn q_power_difference(f: &Expr, x: f64, q: f64) -> Result<f64> {
    if x <= 0.0 || x == 1.0 {
        return Err(Error::DegenerateQuotient(format!(
            "x^q = x for x = {x} (require x > 0, x != 1)"
        )));
    }
    if q == 1.0 {
        return Err(Error::DegenerateQuotient("q = 1".to_string()));
    }
    let xq = x.powf(q);
    Ok((f.eval(xq)? - f.eval(x)?) / (xq - x))
}

/// (p,q)-power difference `(f(x^p) - f(x^q)) / (x^p - x^q)`.
///
/// Reduces bit-exactly to [`q_power_difference`] at `q = 1`.
pub fn pq_power_difference(f: &Expr, x: f64, p: f64, q: f64) -> Result<f64> {
    if x <= 0.0 || x == 1.0 {
        return Err(Error::DegenerateQuotient(format!(
            "x^p = x^q for x = {x} (require x > 0, x != 1)"
        )));
    }
    if p == q {
        return Err(Error::DegenerateQuotient("p = q".to_string()));
    }
    let xp = power_point(x, p);
    let xq = power_point(x, q);
    Ok((f.eval(xp)? - f.eval(xq)?) / (xp - xq))
}

/// Closed form of the q-difference of `x^n`:
/// `x^(n-1) * sum_{k=0..n-1} q^k`. At `q = 1` this is `n x^(n-1)`.
pub fn q_derivative_power_closed_form(x: f64, n: u32, q: f64) -> f64 {
    let mut geo = 0.0;
    for k in 0..n {
        geo += q.powi(k as i32);
    }
    x.powi(n as i32 - 1) * geo
}

/// High-order power derivative
/// `x^(n-k) * prod_{j=0..k-1} sum_{m=0..n-j-1} q^m`.
///
/// At `q = 1` the corrected inner bound `n-j-1` gives `n!/(n-k)! x^(n-k)`,
/// the true k-th derivative of `x^n`. The literal inner bound `n-j` is kept
/// behind the flag for documentation; it evaluates to
/// `(n+1)!/(n-k+1)! x^(n-k)` at `q = 1`.
pub fn q_derivative_power_high_order(
    x: f64,
    n: u32,
    k: u32,
    q: f64,
    literal: bool,
) -> Result<f64> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "require 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let mut prod = 1.0;
    for j in 0..k {
        let bound = if literal { n - j } else { n - j - 1 };
        let mut s = 0.0;
        for m in 0..=bound {
            s += q.powi(m as i32);
        }
        prod *= s;
    }
    Ok(x.powi((n - k) as i32) * prod)
}

/// Closed form of the q-power difference of `x^m`:
/// `sum_{k=1..m} (x^q)^(m-k) * x^(k-1)`, the factorization of
/// `(a^m - b^m)/(a - b)` at `a = x^q`, `b = x`. At `q = 1` it is `m x^(m-1)`.
pub fn q_power_difference_power_closed_form(x: f64, m: u32, q: f64) -> f64 {
    let xq = power_point(x, q);
    let mut acc = 0.0;
    for k in 1..=m {
        acc += xq.powi((m - k) as i32) * x.powi(k as i32 - 1);
    }
    acc
}

/// xi-based q-quotient `(xi(x,q)_n - xi(x,1)_n) / (xq - x)`.
///
/// Equals `x^(n-1) (q^n - 1)/(q - 1)`, so its `q -> 1` limit is `n x^(n-1)`.
pub fn xi_q_quotient(x: u64, n: u32, q: f64) -> Result<f64> {
    if q == 1.0 {
        return Err(Error::DegenerateQuotient("q = 1".to_string()));
    }
    xi_pq_quotient(x, n, q, 1.0)
}

/// xi-based (p,q)-quotient `(xi(x,p)_n - xi(x,q)_n) / (xp - xq)`.
///
/// Equals `x^(n-1) (p^n - q^n)/(p - q)`; its `p -> q` limit is
/// `n q^(n-1) x^(n-1)`. The two xi values nearly cancel as `p -> q`, so the
/// quotient is formed in exact rational arithmetic (every f64 parameter is
/// an exact rational) and rounded once at the end.
pub fn xi_pq_quotient(x: u64, n: u32, p: f64, q: f64) -> Result<f64> {
    if p == q {
        return Err(Error::DegenerateQuotient("p = q".to_string()));
    }
    let pr = BigRational::from_float(p)
        .ok_or_else(|| Error::InvalidArgument(format!("non-finite p = {p}")))?;
    let qr = BigRational::from_float(q)
        .ok_or_else(|| Error::InvalidArgument(format!("non-finite q = {q}")))?;
    let num = xi_exact(x, &pr, n)? - xi_exact(x, &qr, n)?;
    let den = BigRational::from_integer(x.into()) * (pr - qr);
    Ok((num / den).to_f64().unwrap_or(f64::NAN))
}
