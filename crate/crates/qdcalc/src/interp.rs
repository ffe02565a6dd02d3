//! Newton interpolation: the classical forward formula on unit grids,
//! divided differences on arbitrary node sets (the sound generalization to
//! geometric and power-tower grids), and the literal q-grid / q-power-grid
//! series rewrites as flagged experimental evaluators.
//!
//! ```
//! use qdcalc::expr::parse;
//! use qdcalc::interp::{divided_difference_interpolate, GridKind, GridSpec};
//!
//! let f = parse("x^2").unwrap();
//! let grid = GridSpec { kind: GridKind::Geometric { start: 1.0, ratio: 2.0 }, points: 3 };
//! let v = divided_difference_interpolate(&grid, &f, 3.0).unwrap();
//! assert!((v - 9.0).abs() < 1e-9);
//! ```

use crate::error::{Error, Result};
use crate::expr::Expr;
use num::rational::BigRational;
use num::ToPrimitive;

/// Node-set family for interpolation grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// Nodes `a, a+1, ..., a+K`.
    Uniform { start: f64 },
    /// Nodes `a * q^m`, m = 0..K. Requires `a > 0`, `q > 0`, `q != 1`.
    Geometric { start: f64, ratio: f64 },
    /// Nodes `a^(q^m)`, m = 0..K. Requires `a > 0`, `a != 1`, `q > 0`, `q != 1`.
    PowerTower { base: f64, ratio: f64 },
}

/// A grid kind together with its node count `K + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    /// Number of nodes (`K + 1 >= 1`).
    pub points: usize,
}

impl GridSpec {
    /// Materialize the node list, rejecting degenerate parameter choices.
    pub fn nodes(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::InvalidArgument("grid needs at least one node".to_string()));
        }
        let nodes: Vec<f64> = match self.kind {
            GridKind::Uniform { start } => {
                (0..self.points).map(|m| start + m as f64).collect()
            }
            GridKind::Geometric { start, ratio } => {
                if start <= 0.0 || ratio <= 0.0 || ratio == 1.0 {
                    return Err(Error::DuplicateNodes(format!(
                        "geometric grid requires start > 0 and ratio > 0, ratio != 1 (got a={start}, q={ratio})"
                    )));
                }
                (0..self.points)
                    .map(|m| start * ratio.powi(m as i32))
                    .collect()
            }
            GridKind::PowerTower { base, ratio } => {
                if base <= 0.0 || base == 1.0 || ratio <= 0.0 || ratio == 1.0 {
                    return Err(Error::DuplicateNodes(format!(
                        "power grid requires base > 0, base != 1 and ratio > 0, ratio != 1 (got a={base}, q={ratio})"
                    )));
                }
                (0..self.points)
                    .map(|m| base.powf(ratio.powi(m as i32)))
                    .collect()
            }
        };
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::DuplicateNodes(format!(
                        "nodes {} and {} coincide at {}",
                        i, j, nodes[i]
                    )));
                }
            }
        }
        Ok(nodes)
    }
}

/// Newton-form coefficients `f[x_0..x_j]` over an arbitrary node set.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDifferenceTable {
    pub nodes: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl DividedDifferenceTable {
    /// Build the triangular table from samples at the given nodes.
    pub fn build(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() || nodes.is_empty() {
            return Err(Error::InvalidArgument(
                "nodes and values must be equal-length and non-empty".to_string(),
            ));
        }
        let mut column = values;
        let mut coefficients = vec![column[0]];
        for order in 1..nodes.len() {
            for i in 0..nodes.len() - order {
                let dx = nodes[i + order] - nodes[i];
                if dx == 0.0 {
                    return Err(Error::DuplicateNodes(format!("node {} repeats", nodes[i])));
                }
                column[i] = (column[i + 1] - column[i]) / dx;
            }
            coefficients.push(column[0]);
        }
        Ok(DividedDifferenceTable { nodes, coefficients })
    }

    /// Evaluate the Newton-form interpolant at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.coefficients.len();
        let mut acc = self.coefficients[n - 1];
        for j in (0..n - 1).rev() {
            acc = acc * (x - self.nodes[j]) + self.coefficients[j];
        }
        acc
    }
}

/// Iterated forward differences `Delta^k f(a)` for `k = 0..K` from samples at
/// unit steps.
pub fn forward_difference_table(values: &[f64], order: usize) -> Result<Vec<f64>> {
    if values.len() < order + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} samples for order {}, got {}",
            order + 1,
            order,
            values.len()
        )));
    }
    let mut column = values[..order + 1].to_vec();
    let mut table = vec![column[0]];
    for k in 1..=order {
        for i in 0..=order - k {
            column[i] = column[i + 1] - column[i];
        }
        table.push(column[0]);
    }
    Ok(table)
}

/// Falling-factorial binomial `C(u, k) = u(u-1)...(u-k+1)/k!` for real `u`.
pub fn binomial_real(u: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (u - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// Newton forward interpolation
/// `sum_{k=0..K} C(x-a, k) Delta^k f(a)` on the unit grid anchored at `a`.
pub fn newton_forward_eval(table: &[f64], a: f64, x: f64, order: usize) -> f64 {
    let u = x - a;
    let mut acc = 0.0;
    for (k, &d) in table.iter().take(order + 1).enumerate() {
        acc += binomial_real(u, k as u32) * d;
    }
    acc
}

/// Sample `f` on the grid, build the divided-difference table, and evaluate
/// the interpolant at `x`. Exact on polynomials of degree at most `K` for
/// any admissible grid.
///
/// Polynomial inputs take an exact rational route through the table, so
/// reproduction holds even on power-tower grids whose node spread makes the
/// float Newton form cancel badly.
pub fn divided_difference_interpolate(grid: &GridSpec, f: &Expr, x: f64) -> Result<f64> {
    let nodes = grid.nodes()?;
    if f.is_exact_polynomial() && x.is_finite() {
        return exact_interpolate(&nodes, f, x);
    }
    let values = nodes.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>()?;
    Ok(DividedDifferenceTable::build(nodes, values)?.eval(x))
}

fn exact_interpolate(nodes: &[f64], f: &Expr, x: f64) -> Result<f64> {
    let to_rat = |v: f64| {
        BigRational::from_float(v)
            .ok_or_else(|| Error::InvalidArgument(format!("non-finite value {v}")))
    };
    let rnodes = nodes.iter().map(|&t| to_rat(t)).collect::<Result<Vec<_>>>()?;
    let mut column = rnodes
        .iter()
        .map(|t| f.eval_exact(t))
        .collect::<Result<Vec<_>>>()?;
    let mut coefficients = vec![column[0].clone()];
    for order in 1..rnodes.len() {
        for i in 0..rnodes.len() - order {
            let dx = &rnodes[i + order] - &rnodes[i];
            column[i] = (&column[i + 1] - &column[i]) / dx;
        }
        coefficients.push(column[0].clone());
    }
    let xr = to_rat(x)?;
    let n = coefficients.len();
    let mut acc = coefficients[n - 1].clone();
    for j in (0..n - 1).rev() {
        acc = acc * (&xr - &rnodes[j]) + &coefficients[j];
    }
    Ok(acc.to_f64().unwrap_or(f64::NAN))
}

/// The table behind [`divided_difference_interpolate`].
pub fn divided_difference_table(grid: &GridSpec, f: &Expr) -> Result<DividedDifferenceTable> {
    let nodes = grid.nodes()?;
    let values = nodes.iter().map(|&t| f.eval(t)).collect::<Result<Vec<_>>>()?;
    DividedDifferenceTable::build(nodes, values)
}

/// Value and residual report of a literal experimental evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiteralEvalReport {
    pub value: f64,
    /// Value of the sound divided-difference interpolant on the same grid.
    pub sound_value: f64,
    /// `value - sound_value`.
    pub residual: f64,
}

/// Literal geometric-grid series rewrite,
/// `sum_{k=0..K} C(x-a, k) sum_{m=0..k} (-1)^m C(k,m) f(a * q^(k-m))`,
/// reading the printed inner binomial as the standard alternating
/// finite-difference kernel and anchoring nodes at the center `a`.
///
/// Experimental: always reported together with its residual against the
/// sound geometric-grid interpolant.
pub fn literal_q_newton_eval(
    f: &Expr,
    a: f64,
    x: f64,
    q: f64,
    order: usize,
) -> Result<LiteralEvalReport> {
    let grid = GridSpec {
        kind: GridKind::Geometric { start: a, ratio: q },
        points: order + 1,
    };
    literal_eval(f, a, x, order, &grid, |k, m| a * q.powi((k - m) as i32))
}

/// Literal power-grid series rewrite with nodes `a^(q^(k-m))`; same reading
/// and residual reporting as [`literal_q_newton_eval`].
pub fn literal_qpower_newton_eval(
    f: &Expr,
    a: f64,
    x: f64,
    q: f64,
    order: usize,
) -> Result<LiteralEvalReport> {
    let grid = GridSpec {
        kind: GridKind::PowerTower { base: a, ratio: q },
        points: order + 1,
    };
    literal_eval(f, a, x, order, &grid, |k, m| a.powf(q.powi((k - m) as i32)))
}

fn literal_eval(
    f: &Expr,
    a: f64,
    x: f64,
    order: usize,
    grid: &GridSpec,
    node: impl Fn(u32, u32) -> f64,
) -> Result<LiteralEvalReport> {
    // validates grid parameters (q = 1 collapses the nodes)
    let sound_value = divided_difference_interpolate(grid, f, x)?;
    let u = x - a;
    let mut value = 0.0;
    for k in 0..=order as u32 {
        let mut inner = 0.0;
        for m in 0..=k {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            inner += sign * binomial_real(k as f64, m) * f.eval(node(k, m))?;
        }
        value += binomial_real(u, k) * inner;
    }
    Ok(LiteralEvalReport {
        value,
        sound_value,
        residual: value - sound_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::identities::forward_difference_power;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn forward_table_of_square() {
        let t = forward_difference_table(&[0.0, 1.0, 4.0], 2).unwrap();
        assert_eq!(t, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn forward_table_of_constant() {
        let t = forward_difference_table(&[7.0; 5], 4).unwrap();
        assert_eq!(&t[1..], &[0.0; 4]);
    }

    #[test]
    fn forward_table_needs_samples() {
        assert!(forward_difference_table(&[1.0, 2.0], 2).is_err());
    }

    #[test]
    fn forward_table_matches_power_difference() {
        // Delta^1 f(0) of x^3 equals the binomial forward-difference expansion
        let values: Vec<f64> = (0..4).map(|t| (t as f64).powi(3)).collect();
        let t = forward_difference_table(&values, 3).unwrap();
        assert_eq!(t[1], forward_difference_power(0.0, 3));
    }

    #[test]
    fn binomial_real_values() {
        assert_eq!(binomial_real(2.5, 2), 1.875);
        assert_eq!(binomial_real(6.0, 2), 15.0);
        assert_eq!(binomial_real(-1.3, 0), 1.0);
    }

    #[test]
    fn newton_forward_reproduces_square() {
        let values: Vec<f64> = (0..3).map(|t| (t as f64).powi(2)).collect();
        let table = forward_difference_table(&values, 2).unwrap();
        assert_eq!(newton_forward_eval(&table, 0.0, 2.5, 2), 6.25);
        assert_eq!(newton_forward_eval(&table, 0.0, 0.0, 2), 0.0);

        let values: Vec<f64> = (0..4).map(|t| (t as f64).powi(3)).collect();
        let table = forward_difference_table(&values, 3).unwrap();
        assert_eq!(newton_forward_eval(&table, 0.0, 7.0, 3), 343.0);
    }

    #[test]
    fn divided_difference_examples() {
        let f = parse("x^2").unwrap();
        let grid = GridSpec {
            kind: GridKind::Geometric { start: 1.0, ratio: 2.0 },
            points: 3,
        };
        assert!(close(divided_difference_interpolate(&grid, &f, 3.0).unwrap(), 9.0, 1e-12));

        let c = parse("4").unwrap();
        let grid = GridSpec { kind: GridKind::Uniform { start: 0.0 }, points: 4 };
        assert_eq!(divided_difference_interpolate(&grid, &c, 17.5).unwrap(), 4.0);

        let lin = parse("x").unwrap();
        let grid = GridSpec {
            kind: GridKind::PowerTower { base: 2.0, ratio: 2.0 },
            points: 2,
        };
        assert!(close(divided_difference_interpolate(&grid, &lin, 3.0).unwrap(), 3.0, 1e-12));
    }

    #[test]
    fn degenerate_grids_rejected() {
        let grid = GridSpec {
            kind: GridKind::Geometric { start: 1.0, ratio: 1.0 },
            points: 3,
        };
        assert!(matches!(grid.nodes(), Err(Error::DuplicateNodes(_))));
        let grid = GridSpec {
            kind: GridKind::PowerTower { base: 1.0, ratio: 2.0 },
            points: 3,
        };
        assert!(matches!(grid.nodes(), Err(Error::DuplicateNodes(_))));
    }

    #[test]
    fn polynomial_reproduction_sweep() {
        // x^d exact for d <= K across all grid families
        let grids = [
            GridKind::Uniform { start: 0.5 },
            GridKind::Geometric { start: 1.0, ratio: 1.5 },
            GridKind::Geometric { start: 0.5, ratio: 2.0 },
            GridKind::Geometric { start: 1.0, ratio: 3.0 },
            GridKind::PowerTower { base: 2.0, ratio: 1.5 },
            GridKind::PowerTower { base: 2.0, ratio: 2.0 },
        ];
        for kind in grids {
            for k in 0..=6usize {
                let grid = GridSpec { kind, points: k + 1 };
                let nodes = grid.nodes().unwrap();
                // query at geometric midpoints of adjacent nodes (inside the
                // hull; far extrapolation from wide grids is ill-conditioned)
                let queries: Vec<f64> = if nodes.len() == 1 {
                    vec![nodes[0]]
                } else {
                    nodes.windows(2).map(|w| (w[0] * w[1]).sqrt()).collect()
                };
                for d in 0..=k {
                    let f = parse(&format!("x^{d}")).unwrap();
                    for &x in &queries {
                        let got = divided_difference_interpolate(&grid, &f, x).unwrap();
                        let expect = x.powi(d as i32);
                        assert!(
                            close(got, expect, 1e-9),
                            "{kind:?} K={k} d={d} x={x}: {got} vs {expect}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_grid_matches_forward_formula() {
        let f = parse("x^3 - 2*x").unwrap();
        let a = 1.0;
        let order = 4;
        let values: Vec<f64> = (0..=order)
            .map(|m| f.eval(a + m as f64).unwrap())
            .collect();
        let table = forward_difference_table(&values, order).unwrap();
        let grid = GridSpec { kind: GridKind::Uniform { start: a }, points: order + 1 };
        for x in [0.2, 1.5, 3.75] {
            let nf = newton_forward_eval(&table, a, x, order);
            let dd = divided_difference_interpolate(&grid, &f, x).unwrap();
            assert!(close(dd, nf, 1e-10), "x={x}: {dd} vs {nf}");
        }
    }

    #[test]
    fn literal_evaluators_at_center() {
        let f = parse("x^2 + 1").unwrap();
        // x = a: every k >= 1 binomial factor vanishes, value = f(a)
        let r = literal_q_newton_eval(&f, 2.0, 2.0, 2.0, 3).unwrap();
        assert_eq!(r.value, f.eval(2.0).unwrap());
        let r = literal_qpower_newton_eval(&f, 2.0, 2.0, 2.0, 3).unwrap();
        assert_eq!(r.value, f.eval(2.0).unwrap());
        // K = 0 reduces to f(a) at any query point
        let r = literal_q_newton_eval(&f, 1.5, 9.0, 2.0, 0).unwrap();
        assert_eq!(r.value, f.eval(1.5).unwrap());
    }

    #[test]
    fn literal_evaluators_reject_unit_ratio() {
        let f = parse("x").unwrap();
        assert!(literal_q_newton_eval(&f, 1.0, 2.0, 1.0, 2).is_err());
        assert!(literal_qpower_newton_eval(&f, 2.0, 2.0, 1.0, 2).is_err());
    }

    #[test]
    fn literal_identity_function_example() {
        let f = parse("x").unwrap();
        let r = literal_q_newton_eval(&f, 1.0, 1.0, 2.0, 1).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.residual, 0.0);
    }
}
