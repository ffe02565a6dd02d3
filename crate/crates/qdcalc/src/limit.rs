//! Numerical limits of difference quotients.
//!
//! A quotient is sampled along a geometric offset schedule
//! `h0, h0*rho, h0*rho^2, ...` and extrapolated to `h = 0` with a Neville
//! polynomial tableau in `h` (one-sided quotients have leading error linear
//! in the offset, so extrapolation is in `h`, not `h^2`).
//!
//! ```
//! use qdcalc::limit::{limit_extrapolate, LimitSpec};
//!
//! // derivative of x^2 at 3 through the plain forward quotient
//! let r = limit_extrapolate(|h| Ok(((3.0 + h).powi(2) - 9.0) / h), &LimitSpec::default()).unwrap();
//! assert!(r.converged);
//! assert!((r.value - 6.0).abs() < 1e-10);
//! ```

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::qops::{pq_difference, pq_power_difference, q_difference, q_power_difference, DifferenceScheme};

/// Which side the driven parameter approaches its limit from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproachSide {
    Above,
    Below,
}

/// Offset schedule and stopping rule for a limit evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSpec {
    /// Side for (p,q)-kind schemes; q-kind schemes carry their own direction.
    pub side: ApproachSide,
    /// Initial parameter offset.
    pub h0: f64,
    /// Geometric shrink ratio, in (0, 1).
    pub rho: f64,
    /// Maximum number of samples.
    pub max_steps: usize,
    /// Relative convergence tolerance.
    pub rel_tol: f64,
}

impl Default for LimitSpec {
    fn default() -> Self {
        LimitSpec {
            side: ApproachSide::Above,
            h0: 0.0625,
            rho: 0.5,
            max_steps: 24,
            rel_tol: 1e-10,
        }
    }
}

impl LimitSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.h0 > 0.0) {
            return Err(Error::InvalidArgument(format!("h0 must be positive, got {}", self.h0)));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rho must lie in (0, 1), got {}",
                self.rho
            )));
        }
        if self.max_steps < 2 {
            return Err(Error::InvalidArgument("max_steps must be at least 2".to_string()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

/// Outcome of a limit extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationResult {
    pub value: f64,
    /// Magnitude of the last tableau correction.
    pub error_estimate: f64,
    pub steps_used: usize,
    pub converged: bool,
    /// (offset, quotient value) pairs in evaluation order.
    pub trace: Vec<(f64, f64)>,
}

/// Extrapolate `quotient(h)` to `h -> 0+` along the spec's schedule.
///
/// Non-convergence within `max_steps` is reported in the result, not as an
/// error; a non-finite sample is an error carrying the offending offset.
pub fn limit_extrapolate<F>(quotient: F, spec: &LimitSpec) -> Result<ExtrapolationResult>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let mut prev_row: Vec<f64> = Vec::new();
    let mut trace = Vec::new();
    let mut value = f64::NAN;
    let mut error_estimate = f64::INFINITY;
    let mut h = spec.h0;
    for i in 0..spec.max_steps {
        let sample = quotient(h)?;
        if !sample.is_finite() {
            return Err(Error::NonFiniteSample { offset: h });
        }
        trace.push((h, sample));
        let mut row = Vec::with_capacity(i + 1);
        row.push(sample);
        for j in 1..=i {
            let prev = row[j - 1];
            let denom = spec.rho.powi(-(j as i32)) - 1.0;
            row.push(prev + (prev - prev_row[j - 1]) / denom);
        }
        value = row[i];
        if i >= 1 {
            error_estimate = (row[i] - row[i - 1]).abs();
            if error_estimate <= spec.rel_tol * value.abs().max(1.0) {
                return Ok(ExtrapolationResult {
                    value,
                    error_estimate,
                    steps_used: i + 1,
                    converged: true,
                    trace,
                });
            }
        }
        prev_row = row;
        h *= spec.rho;
    }
    Ok(ExtrapolationResult {
        value,
        error_estimate,
        steps_used: spec.max_steps,
        converged: false,
        trace,
    })
}

/// Derivative of `f` at `x` realized as the limit of the scheme's quotient.
///
/// For q-kinds the driven parameter is `q = 1 +/- h` and the limit is
/// `f'(x)`. For (p,q)-kinds the driven parameter is `p = q +/- h` at the
/// scheme's fixed base `q`, and the limit is `f'` at the composed point
/// (`qx` for the scaling kind, `x^q` for the power kind); at base `q = 1`
/// both reduce to `f'(x)`.
pub fn derivative_estimate(
    f: &Expr,
    x: f64,
    scheme: &DifferenceScheme,
    spec: &LimitSpec,
) -> Result<ExtrapolationResult> {
    scheme.check_point(x)?;
    spec.validate()?;
    let quotient: Box<dyn Fn(f64) -> Result<f64>> = match *scheme {
        DifferenceScheme::QForward { .. } => {
            Box::new(move |h| q_difference(f, x, 1.0 + h))
        }
        DifferenceScheme::QBackward { .. } => {
            Box::new(move |h| q_difference(f, x, 1.0 - h))
        }
        DifferenceScheme::Pq { q, .. } => {
            let sign = side_sign(spec.side);
            Box::new(move |h| pq_difference(f, x, q + sign * h, q))
        }
        DifferenceScheme::QPowerForward { .. } => {
            Box::new(move |h| q_power_difference(f, x, 1.0 + h))
        }
        DifferenceScheme::QPowerBackward { .. } => {
            Box::new(move |h| q_power_difference(f, x, 1.0 - h))
        }
        DifferenceScheme::PqPower { q, .. } => {
            let sign = side_sign(spec.side);
            Box::new(move |h| pq_power_difference(f, x, q + sign * h, q))
        }
    };
    limit_extrapolate(|h| quotient(h), spec)
}

fn side_sign(side: ApproachSide) -> f64 {
    match side {
        ApproachSide::Above => 1.0,
        ApproachSide::Below => -1.0,
    }
}
