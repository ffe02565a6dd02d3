//! Taylor models: construction from expressions, polynomial evaluation,
//! Schlomilch-Roche remainder bounds, and termwise differentiation through
//! any difference scheme.
//!
//! ```
//! use qdcalc::expr::parse;
//! use qdcalc::taylor::taylor_from_expr;
//!
//! let f = parse("exp(x)").unwrap();
//! let tm = taylor_from_expr(&f, 0.0, 4, f64::INFINITY).unwrap();
//! assert_eq!(tm.coefficients[0], 1.0);
//! assert_eq!(tm.coefficients[3], 1.0 / 6.0);
//! ```

use crate::error::{Error, Result};
use crate::expr::{symbolic_derivative, Expr};
use crate::limit::{limit_extrapolate, ApproachSide, ExtrapolationResult, LimitSpec};
use crate::qops::{xi_pq_quotient, DifferenceScheme};

/// Smoothness class of the modeled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// C^n: the model order is a hard cap and the truncated remainder is
    /// not recoverable termwise.
    Finite(u32),
    Analytic,
}

/// Truncated Taylor expansion: center, scaled coefficients
/// `c_k = f^(k)(a)/k!`, and a validity radius.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorModel {
    pub center: f64,
    pub coefficients: Vec<f64>,
    pub radius: f64,
    pub smoothness: Smoothness,
}

impl TaylorModel {
    pub fn order(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    fn check_in_radius(&self, x: f64) -> Result<()> {
        if (x - self.center).abs() >= self.radius {
            return Err(Error::OutOfRadius {
                x,
                center: self.center,
                radius: self.radius,
            });
        }
        Ok(())
    }
}

/// Parameters of the Schlomilch-Roche remainder form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderSpec {
    /// The positive family parameter; `p = N+1` is Lagrange, `p = 1` Cauchy.
    pub p: f64,
    /// `M = sup |f^(N+1)|` over the interval between center and `x`.
    pub derivative_bound: f64,
}

/// Build a Taylor model by repeated symbolic differentiation at `a`.
pub fn taylor_from_expr(f: &Expr, a: f64, order: u32, radius: f64) -> Result<TaylorModel> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let mut coefficients = Vec::with_capacity(order as usize + 1);
    let mut derivative = f.clone();
    let mut k_factorial = 1.0;
    for k in 0..=order {
        if k > 0 {
            derivative = symbolic_derivative(&derivative);
            k_factorial *= k as f64;
        }
        let value = derivative.eval(a).map_err(|e| match e {
            Error::Domain { expr, reason } => Error::Domain {
                expr,
                reason: format!("{reason} (derivative order {k} at center {a})"),
            },
            other => other,
        })?;
        coefficients.push(value / k_factorial);
    }
    Ok(TaylorModel {
        center: a,
        coefficients,
        radius,
        smoothness: Smoothness::Analytic,
    })
}

/// Horner evaluation of the Taylor polynomial at `x`.
pub fn evaluate_polynomial(tm: &TaylorModel, x: f64) -> Result<f64> {
    tm.check_in_radius(x)?;
    let u = x - tm.center;
    let mut acc = 0.0;
    for &c in tm.coefficients.iter().rev() {
        acc = acc * u + c;
    }
    Ok(acc)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Schlomilch-Roche remainder bound
/// `M/(N! p) * |x-a|^p * max_c |x-c|^(N+1-p)` with `c` ranging over the
/// interval between the center and `x`.
pub fn remainder_bound(tm: &TaylorModel, x: f64, spec: &RemainderSpec) -> Result<f64> {
    if !(spec.p > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "remainder parameter p must be positive, got {}",
            spec.p
        )));
    }
    if spec.derivative_bound < 0.0 {
        return Err(Error::InvalidArgument(
            "derivative bound must be nonnegative".to_string(),
        ));
    }
    tm.check_in_radius(x)?;
    let n = tm.order();
    let d = (x - tm.center).abs();
    if d == 0.0 {
        return Ok(0.0);
    }
    let tail_exp = (n + 1) as f64 - spec.p;
    if tail_exp < 0.0 {
        // sup over c of |x-c|^(negative) is unbounded as c -> x
        return Ok(f64::INFINITY);
    }
    Ok(spec.derivative_bound / (factorial(n) * spec.p) * d.powf(spec.p) * d.powf(tail_exp))
}

/// Result of termwise operator differentiation of a Taylor model.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorDerivative {
    pub estimate: ExtrapolationResult,
    /// True when the natural-displacement xi quotients carried the monomials.
    pub used_xi_route: bool,
    /// Model order, attached when the model has finite smoothness and the
    /// truncated remainder's derivative is therefore unaccounted for.
    pub finite_order_warning: Option<u32>,
    pub terms_used: usize,
}

fn natural_displacement(u0: f64) -> Option<u64> {
    if u0 >= 1.0 && u0.fract() == 0.0 && u0 <= 2f64.powi(40) {
        Some(u0 as u64)
    } else {
        None
    }
}

fn monomial_quotient(
    scheme: &DifferenceScheme,
    side_sign: f64,
    u0: f64,
    k: u32,
    h: f64,
) -> Result<f64> {
    let ki = k as i32;
    match *scheme {
        DifferenceScheme::QForward { .. } | DifferenceScheme::QBackward { .. } => {
            let qq = match scheme {
                DifferenceScheme::QForward { .. } => 1.0 + h,
                _ => 1.0 - h,
            };
            Ok((u0.powi(ki) - (qq * u0).powi(ki)) / ((1.0 - qq) * u0))
        }
        DifferenceScheme::Pq { q, .. } => {
            let p = q + side_sign * h;
            Ok(((p * u0).powi(ki) - (q * u0).powi(ki)) / ((p - q) * u0))
        }
        DifferenceScheme::QPowerForward { .. } | DifferenceScheme::QPowerBackward { .. } => {
            let qq = match scheme {
                DifferenceScheme::QPowerForward { .. } => 1.0 + h,
                _ => 1.0 - h,
            };
            let uq = u0.powf(qq);
            Ok((uq.powi(ki) - u0.powi(ki)) / (uq - u0))
        }
        DifferenceScheme::PqPower { q, .. } => {
            let p = q + side_sign * h;
            let up = u0.powf(p);
            let uq = u0.powf(q);
            Ok((up.powi(ki) - uq.powi(ki)) / (up - uq))
        }
    }
}

fn xi_monomial_quotient(
    scheme: &DifferenceScheme,
    side_sign: f64,
    u0n: u64,
    k: u32,
    h: f64,
) -> Result<f64> {
    match *scheme {
        DifferenceScheme::QForward { .. } => xi_pq_quotient(u0n, k, 1.0 + h, 1.0),
        DifferenceScheme::QBackward { .. } => xi_pq_quotient(u0n, k, 1.0 - h, 1.0),
        DifferenceScheme::Pq { q, .. } => xi_pq_quotient(u0n, k, q + side_sign * h, q),
        _ => Err(Error::InvalidArgument(
            "xi route applies to scaling kinds only".to_string(),
        )),
    }
}

/// Differentiate the model termwise through the scheme's operator:
/// `sum_k c_k * lim Op[(x-a)^k]` evaluated at `x0`.
///
/// Monomials with natural displacement `x0 - a` under a scaling kind are
/// routed through the xi quotients; all other cases use the direct quotient.
/// Analytic models stop consuming terms once the next term's magnitude bound
/// drops below a tenth of the tolerance.
pub fn taylor_derivative_via_operator(
    tm: &TaylorModel,
    x0: f64,
    scheme: &DifferenceScheme,
    spec: &LimitSpec,
) -> Result<TaylorDerivative> {
    tm.check_in_radius(x0)?;
    spec.validate()?;
    let u0 = x0 - tm.center;
    scheme.check_point(u0)?;
    let sign = match spec.side {
        ApproachSide::Above => 1.0,
        ApproachSide::Below => -1.0,
    };
    let scaling_kind = matches!(
        scheme,
        DifferenceScheme::QForward { .. }
            | DifferenceScheme::QBackward { .. }
            | DifferenceScheme::Pq { .. }
    );
    let xi_node = if scaling_kind { natural_displacement(u0) } else { None };

    // per-term magnitude bounds |c_k| k |u0|^(k-1) and their suffix maxima;
    // consumption stops only once every remaining term is below tol/10
    let bounds: Vec<f64> = tm
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * k as f64 * u0.abs().powi(k as i32 - 1))
        .collect();
    let mut suffix_max = bounds.clone();
    for k in (1..suffix_max.len().saturating_sub(1)).rev() {
        suffix_max[k] = suffix_max[k].max(suffix_max[k + 1]);
    }

    let mut total = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    let mut steps = 0usize;
    let mut terms_used = 0usize;
    for (k, &c) in tm.coefficients.iter().enumerate().skip(1) {
        let k = k as u32;
        if tm.smoothness == Smoothness::Analytic
            && terms_used > 0
            && suffix_max[k as usize] < spec.rel_tol / 10.0
        {
            break;
        }
        terms_used += 1;
        if c == 0.0 {
            continue;
        }
        let r = match xi_node {
            Some(u0n) => {
                limit_extrapolate(|h| xi_monomial_quotient(scheme, sign, u0n, k, h), spec)?
            }
            None => limit_extrapolate(|h| monomial_quotient(scheme, sign, u0, k, h), spec)?,
        };
        total += c * r.value;
        error += c.abs() * r.error_estimate;
        converged &= r.converged;
        steps = steps.max(r.steps_used);
    }
    let finite_order_warning = match tm.smoothness {
        Smoothness::Finite(_) => Some(tm.order()),
        Smoothness::Analytic => None,
    };
    Ok(TaylorDerivative {
        estimate: ExtrapolationResult {
            value: total,
            error_estimate: error,
            steps_used: steps,
            converged,
            trace: Vec::new(),
        },
        used_xi_route: xi_node.is_some(),
        finite_order_warning,
        terms_used,
    })
}

/// N-fold application of the first-order q-power derivative to `x^m`.
///
/// Each application acts on the current degree's monomial through the
/// closed-form quotient and reduces the degree by one; the result approaches
/// `m!/(m-N)! x^(m-N)`.
pub fn iterated_power_derivative(
    m: u32,
    n_order: u32,
    x: f64,
    scheme: &DifferenceScheme,
    spec: &LimitSpec,
) -> Result<f64> {
    if n_order == 0 || n_order > m {
        return Err(Error::InvalidArgument(format!(
            "require 1 <= N <= m, got N = {n_order}, m = {m}"
        )));
    }
    let forward = match scheme {
        DifferenceScheme::QPowerForward { .. } => true,
        DifferenceScheme::QPowerBackward { .. } => false,
        _ => {
            return Err(Error::InvalidArgument(
                "iterated power derivative requires a q-power scheme".to_string(),
            ))
        }
    };
    scheme.check_point(x)?;
    spec.validate()?;
    let mut acc = 1.0;
    let mut drop_exp = 0i32;
    for deg in (m - n_order + 1..=m).rev() {
        let r = limit_extrapolate(
            |h| {
                let q = if forward { 1.0 + h } else { 1.0 - h };
                Ok(crate::qops::q_power_difference_power_closed_form(x, deg, q))
            },
            spec,
        )?;
        acc *= r.value;
        drop_exp += deg as i32 - 1;
    }
    Ok(acc * x.powi((m - n_order) as i32) / x.powi(drop_exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn model_of_exp() {
        let f = parse("exp(x)").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 4, f64::INFINITY).unwrap();
        let expect = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (c, e) in tm.coefficients.iter().zip(expect) {
            assert!((c - e).abs() < 1e-15);
        }
    }

    #[test]
    fn model_of_quadratic() {
        let f = parse("x^2").unwrap();
        let tm = taylor_from_expr(&f, 1.0, 2, f64::INFINITY).unwrap();
        assert_eq!(tm.coefficients, vec![1.0, 2.0, 1.0]);
        assert_eq!(evaluate_polynomial(&tm, 3.0).unwrap(), 9.0);
        assert_eq!(evaluate_polynomial(&tm, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn model_of_sin_off_center() {
        let f = parse("sin(x)").unwrap();
        let tm = taylor_from_expr(&f, 0.5, 9, f64::INFINITY).unwrap();
        assert!((tm.coefficients[0] - 0.5f64.sin()).abs() < 1e-15);
        assert!((tm.coefficients[1] - 0.5f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn model_domain_error_carries_order() {
        let f = parse("ln(x)").unwrap();
        let e = taylor_from_expr(&f, 0.0, 2, 1.0).unwrap_err();
        assert!(matches!(e, Error::Domain { .. }));
    }

    #[test]
    fn polynomial_evaluation_accuracy() {
        let f = parse("exp(x)").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 10, f64::INFINITY).unwrap();
        let got = evaluate_polynomial(&tm, 1.0).unwrap();
        assert!((got - 1f64.exp()).abs() < 1e-7);
    }

    #[test]
    fn radius_guard() {
        let f = parse("x^2").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 2, 1.0).unwrap();
        assert!(matches!(
            evaluate_polynomial(&tm, 2.0),
            Err(Error::OutOfRadius { .. })
        ));
    }

    #[test]
    fn remainder_bound_cases() {
        let f = parse("exp(x)").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 4, f64::INFINITY).unwrap();
        let e = 1f64.exp();
        // Lagrange at order 4, x = 1
        let b = remainder_bound(
            &tm,
            1.0,
            &RemainderSpec { p: 5.0, derivative_bound: e },
        )
        .unwrap();
        assert!((b - e / 120.0).abs() < 1e-12);
        // zero displacement
        assert_eq!(
            remainder_bound(&tm, 0.0, &RemainderSpec { p: 5.0, derivative_bound: e }).unwrap(),
            0.0
        );
        // Cauchy, order 1, |x-a| = 1, M = 1
        let tm1 = TaylorModel {
            center: 0.0,
            coefficients: vec![0.0, 0.0],
            radius: 2.0,
            smoothness: Smoothness::Analytic,
        };
        let b = remainder_bound(&tm1, 1.0, &RemainderSpec { p: 1.0, derivative_bound: 1.0 })
            .unwrap();
        assert_eq!(b, 1.0);
        // invalid p
        assert!(remainder_bound(&tm1, 1.0, &RemainderSpec { p: 0.0, derivative_bound: 1.0 })
            .is_err());
    }

    #[test]
    fn remainder_soundness_for_exp() {
        let f = parse("exp(x)").unwrap();
        let e = 1f64.exp();
        for order in 2..=8u32 {
            let tm = taylor_from_expr(&f, 0.0, order, f64::INFINITY).unwrap();
            for x in [0.25f64, 0.5, 0.75] {
                let truth = (x.exp() - evaluate_polynomial(&tm, x).unwrap()).abs();
                let bound = remainder_bound(
                    &tm,
                    x,
                    &RemainderSpec { p: (order + 1) as f64, derivative_bound: e },
                )
                .unwrap();
                assert!(truth <= bound, "order {order} x {x}: {truth} > {bound}");
            }
        }
    }

    #[test]
    fn termwise_derivative_of_sin() {
        let f = parse("sin(x)").unwrap();
        let tm = taylor_from_expr(&f, 0.5, 9, f64::INFINITY).unwrap();
        let oracle = 0.7f64.cos();
        let d = taylor_derivative_via_operator(
            &tm,
            0.7,
            &DifferenceScheme::QForward { q: 2.0 },
            &LimitSpec::default(),
        )
        .unwrap();
        assert!(!d.used_xi_route);
        assert!(close(d.estimate.value, oracle, 1e-6));
    }

    #[test]
    fn termwise_xi_route_on_natural_displacement() {
        let f = parse("x^3").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 3, f64::INFINITY).unwrap();
        let d = taylor_derivative_via_operator(
            &tm,
            2.0,
            &DifferenceScheme::QForward { q: 2.0 },
            &LimitSpec::default(),
        )
        .unwrap();
        assert!(d.used_xi_route);
        assert!(close(d.estimate.value, 12.0, 1e-8));
    }

    #[test]
    fn termwise_constant_model() {
        let tm = TaylorModel {
            center: 0.0,
            coefficients: vec![5.0],
            radius: f64::INFINITY,
            smoothness: Smoothness::Analytic,
        };
        let d = taylor_derivative_via_operator(
            &tm,
            2.5,
            &DifferenceScheme::QForward { q: 2.0 },
            &LimitSpec::default(),
        )
        .unwrap();
        assert_eq!(d.estimate.value, 0.0);
        assert_eq!(d.terms_used, 0);
    }

    #[test]
    fn termwise_routes_agree() {
        // xi route vs direct route at natural displacement
        let f = parse("x^3 + x").unwrap();
        let tm = taylor_from_expr(&f, 0.0, 3, f64::INFINITY).unwrap();
        let spec = LimitSpec::default();
        let xi = taylor_derivative_via_operator(
            &tm,
            2.0,
            &DifferenceScheme::QForward { q: 2.0 },
            &spec,
        )
        .unwrap();
        assert!(xi.used_xi_route);
        // the power kinds never take the xi route
        let direct = taylor_derivative_via_operator(
            &tm,
            2.0,
            &DifferenceScheme::QPowerForward { q: 2.0 },
            &spec,
        )
        .unwrap();
        assert!(!direct.used_xi_route);
        assert!(close(xi.estimate.value, direct.estimate.value, 1e-9));
    }

    #[test]
    fn termwise_finite_smoothness_warns() {
        let f = parse("x^4").unwrap();
        let mut tm = taylor_from_expr(&f, 0.0, 4, f64::INFINITY).unwrap();
        tm.smoothness = Smoothness::Finite(4);
        let d = taylor_derivative_via_operator(
            &tm,
            0.5,
            &DifferenceScheme::QForward { q: 2.0 },
            &LimitSpec::default(),
        )
        .unwrap();
        assert_eq!(d.finite_order_warning, Some(4));
        assert_eq!(d.terms_used, 4);
    }

    #[test]
    fn iterated_power_derivative_examples() {
        let spec = LimitSpec::default();
        let fwd = DifferenceScheme::QPowerForward { q: 2.0 };
        let got = iterated_power_derivative(3, 2, 3.0, &fwd, &spec).unwrap();
        assert!(close(got, 18.0, 1e-8));
        let got = iterated_power_derivative(4, 4, 2.0, &fwd, &spec).unwrap();
        assert!(close(got, 24.0, 1e-8));
        let got = iterated_power_derivative(2, 1, 5.0, &fwd, &spec).unwrap();
        assert!(close(got, 10.0, 1e-10));
        assert!(iterated_power_derivative(2, 3, 5.0, &fwd, &spec).is_err());
    }
}
