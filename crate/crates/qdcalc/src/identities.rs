//! Discrete power identities over exact rational arithmetic.
//!
//! A power `x^n` with natural `x` can be written as a finite sum of values of
//! the quadratic-in-`k` term polynomial
//!
//! ```text
//! p(k) = j*k*x^(n-2) - j*k^2*x^(n-3) + x^(n-3),    j = 3! = 6
//! ```
//!
//! taken over one of three index sets, and the same term polynomial scaled by
//! `t^n` yields the finite-sum representation `xi(x, t)_n = (x*t)^n`. All
//! identities here are verified bit-exactly in rational arithmetic; `n < 3`
//! merely introduces negative powers of `x`, which rationals absorb.
//!
//! ```
//! use qdcalc::identities::{power_via_expansion, SetVariant};
//! use num::BigRational;
//!
//! let v = power_via_expansion(10, 3, SetVariant::U).unwrap();
//! assert_eq!(v, BigRational::from_integer(1000.into()));
//! ```

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The constant factor `j = 3! = 6` of the term polynomial.
pub const J: u32 = 6;

/// Index-set choice for the power expansion.
///
/// `C` is `{0..x}` with the `x^(n-2)` term kept outside the sum, `U` is
/// `{0..x-1}` and `S` is `{1..x}` with the full term polynomial summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetVariant {
    C,
    U,
    S,
}

impl SetVariant {
    /// Index range for a given point `x`.
    pub fn indices(self, x: u64) -> std::ops::RangeInclusive<u64> {
        match self {
            SetVariant::C => 0..=x,
            SetVariant::U => 0..=x - 1,
            SetVariant::S => 1..=x,
        }
    }
}

/// Exact term list of the power expansion at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTermList {
    pub x: u64,
    pub n: u32,
    pub variant: SetVariant,
    /// One exact term per index of the variant's index set.
    pub terms: Vec<BigRational>,
    /// The `x^(n-2)` kept outside the sum (C variant only).
    pub leading: Option<BigRational>,
    /// The constant `3! = 6`.
    pub j: u32,
}

impl ExpansionTermList {
    /// Exact sum of all terms (plus the leading term, if any).
    pub fn total(&self) -> BigRational {
        let mut acc: BigRational = self.terms.iter().sum();
        if let Some(lead) = &self.leading {
            acc += lead.clone();
        }
        acc
    }
}

/// `x^e` for signed exponent, as an exact rational.
pub(crate) fn xpow(x: u64, e: i64) -> BigRational {
    let b = BigInt::from(x);
    if e >= 0 {
        BigRational::from_integer(b.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), b.pow((-e) as u32))
    }
}

/// Exact binomial coefficient C(n, k).
pub(crate) fn binomial_int(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The term polynomial `j*k*x^(n-2) - j*k^2*x^(n-3) + x^(n-3)`.
fn term_poly(x: u64, n: u32, k: u64) -> BigRational {
    let n = n as i64;
    let k = BigRational::from_integer(BigInt::from(k));
    let j = BigRational::from_integer(BigInt::from(J));
    &j * &k * xpow(x, n - 2) - &j * &k * &k * xpow(x, n - 3) + xpow(x, n - 3)
}

/// One-step growth quotient `((x+dx)^n - x^n)/dx` written as its binomial
/// expansion `sum_{k=1..n} C(n,k) x^(n-k) dx^(k-1)`.
pub fn binomial_growth_expansion(x: f64, dx: f64, n: u32) -> f64 {
    let mut acc = 0.0;
    for k in 1..=n {
        let c = binomial_int(n, k).to_f64().expect("binomial fits f64");
        acc += c * x.powi((n - k) as i32) * dx.powi((k - 1) as i32);
    }
    acc
}

/// Forward difference of a power at unit step:
/// `Delta(x^n) = sum_{k=1..n} C(n,k) x^(n-k) = (x+1)^n - x^n`.
pub fn forward_difference_power(x: f64, n: u32) -> f64 {
    binomial_growth_expansion(x, 1.0, n)
}

fn check_point(x: u64, n: u32) -> Result<()> {
    if x == 0 {
        return Err(Error::InvalidArgument("x must be at least 1".to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".to_string()));
    }
    Ok(())
}

/// Exact term list of the power expansion of `x^n` under the chosen variant.
pub fn power_expansion_terms(x: u64, n: u32, variant: SetVariant) -> Result<ExpansionTermList> {
    check_point(x, n)?;
    let (terms, leading) = match variant {
        SetVariant::C => {
            // x^n = x^(n-2) + j * sum_{k=0..x} (k x^(n-2) - k^2 x^(n-3)),
            // so each stored term drops the +x^(n-3) of the U/S polynomial.
            let terms = variant
                .indices(x)
                .map(|k| term_poly(x, n, k) - xpow(x, n as i64 - 3))
                .collect();
            (terms, Some(xpow(x, n as i64 - 2)))
        }
        SetVariant::U | SetVariant::S => {
            let terms = variant.indices(x).map(|k| term_poly(x, n, k)).collect();
            (terms, None)
        }
    };
    Ok(ExpansionTermList {
        x,
        n,
        variant,
        terms,
        leading,
        j: J,
    })
}

/// `x^n` computed through the expansion; exact for every variant.
pub fn power_via_expansion(x: u64, n: u32, variant: SetVariant) -> Result<BigRational> {
    Ok(power_expansion_terms(x, n, variant)?.total())
}

/// Exact finite-sum representation of `(x*t)^n` for rational `t`.
pub fn xi_exact(x: u64, t: &BigRational, n: u32) -> Result<BigRational> {
    check_point(x, n)?;
    let tn = pow_rational(t, n);
    let mut acc = BigRational::zero();
    for k in 0..x {
        acc += term_poly(x, n, k) * &tn;
    }
    Ok(acc)
}

/// Floating-point evaluation of the same sum; `xi(x, t, n) = (x*t)^n`.
pub fn xi(x: u64, t: f64, n: u32) -> Result<f64> {
    check_point(x, n)?;
    let ni = n as i64;
    let tn = t.powi(n as i32);
    let xn2 = fpow(x, ni - 2);
    let xn3 = fpow(x, ni - 3);
    let j = J as f64;
    let mut acc = 0.0;
    for k in 0..x {
        let k = k as f64;
        acc += j * k * xn2 * tn - j * k * k * xn3 * tn + xn3 * tn;
    }
    Ok(acc)
}

fn fpow(x: u64, e: i64) -> f64 {
    (x as f64).powi(e as i32)
}

fn pow_rational(t: &BigRational, n: u32) -> BigRational {
    if t.is_zero() {
        if n == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    } else {
        t.pow(n as i32)
    }
}

/// Telescoping double sum.
///
/// The corrected form `sum_{t=1..x} sum_{k=1..n} C(n,k) (t-1)^(n-k)`
/// telescopes to `x^n`. With `literal = true` the inner power is `t^(n-k)`
/// as printed in the source identity, and the value is `(x+1)^n - 1`.
pub fn telescoping_power_sum(x: u64, n: u32, literal: bool) -> Result<BigInt> {
    check_point(x, n)?;
    let mut acc = BigInt::zero();
    for t in 1..=x {
        let base = BigInt::from(if literal { t } else { t - 1 });
        for k in 1..=n {
            acc += binomial_int(n, k) * base.pow(n - k);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_growth_examples() {
        assert_eq!(binomial_growth_expansion(2.0, 1.0, 3), 19.0);
        assert_eq!(binomial_growth_expansion(0.0, 1.0, 4), 1.0);
        // identity with the direct quotient
        for (x, dx, n) in [(2.0f64, 0.5f64, 4u32), (-1.5, 0.25, 5), (3.0, -1.0, 2)] {
            let direct = ((x + dx).powi(n as i32) - x.powi(n as i32)) / dx;
            let got = binomial_growth_expansion(x, dx, n);
            assert!((got - direct).abs() <= 1e-10 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn forward_difference_examples() {
        assert_eq!(forward_difference_power(2.0, 3), 19.0);
        assert_eq!(forward_difference_power(0.0, 5), 1.0);
        assert_eq!(forward_difference_power(10.0, 1), 1.0);
    }

    #[test]
    fn expansion_terms_figure_values() {
        let list = power_expansion_terms(10, 3, SetVariant::U).unwrap();
        let expect = [1, 55, 97, 127, 145, 151, 145, 127, 97, 55];
        assert_eq!(list.terms.len(), 10);
        for (term, e) in list.terms.iter().zip(expect) {
            assert_eq!(term, &int(e));
        }
        assert_eq!(list.total(), int(1000));
    }

    #[test]
    fn expansion_terms_small_cases() {
        let list = power_expansion_terms(2, 3, SetVariant::U).unwrap();
        assert_eq!(list.terms, vec![int(1), int(7)]);
        assert_eq!(list.total(), int(8));

        let list = power_expansion_terms(1, 6, SetVariant::U).unwrap();
        assert_eq!(list.terms, vec![int(1)]);

        // n = 2 needs rationals: x^(n-3) = 1/3 at x = 3
        assert_eq!(power_via_expansion(3, 2, SetVariant::U).unwrap(), int(9));
        let list = power_expansion_terms(3, 2, SetVariant::U).unwrap();
        assert_eq!(list.terms[0], rat(1, 3));
    }

    #[test]
    fn expansion_rejects_zero() {
        assert!(power_expansion_terms(0, 3, SetVariant::U).is_err());
        assert!(xi_exact(0, &int(1), 3).is_err());
    }

    #[test]
    fn exactness_sweep_small() {
        for x in 1..=12u64 {
            for n in 1..=8u32 {
                let expect = xpow(x, n as i64);
                for v in [SetVariant::C, SetVariant::U, SetVariant::S] {
                    assert_eq!(
                        power_via_expansion(x, n, v).unwrap(),
                        expect,
                        "x={x} n={n} {v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn variant_equivalences() {
        // T(x, U) = T(x, S) and U-variant(C) = same value, per the set identities
        for x in [2u64, 7, 13] {
            for n in [1u32, 2, 5] {
                let u = power_via_expansion(x, n, SetVariant::U).unwrap();
                let s = power_via_expansion(x, n, SetVariant::S).unwrap();
                let c = power_via_expansion(x, n, SetVariant::C).unwrap();
                assert_eq!(u, s);
                assert_eq!(u, c);
            }
        }
        assert_eq!(power_via_expansion(7, 5, SetVariant::U).unwrap(), int(16807));
    }

    #[test]
    fn c_variant_boundary_terms_equal() {
        // u(0) = u(x) = 0 for the C-variant term list
        for (x, n) in [(5u64, 4u32), (10, 3), (3, 2)] {
            let list = power_expansion_terms(x, n, SetVariant::C).unwrap();
            assert_eq!(list.terms.len() as u64, x + 1);
            assert_eq!(list.terms[0], list.terms[x as usize]);
            assert!(list.terms[0].is_zero());
        }
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(10, 1.0, 3).unwrap(), 1000.0);
        assert_eq!(xi_exact(2, &int(3), 2).unwrap(), int(36));
        assert_eq!(xi(5, 0.0, 4).unwrap(), 0.0);
        // the two terms of the x=2, t=3, n=2 sum are 9/2 and 63/2
        let t9 = term_poly(2, 2, 0) * int(9);
        let t63 = term_poly(2, 2, 1) * int(9);
        assert_eq!(t9, rat(9, 2));
        assert_eq!(t63, rat(63, 2));
    }

    #[test]
    fn telescoping_examples() {
        assert_eq!(telescoping_power_sum(3, 2, false).unwrap(), BigInt::from(9));
        assert_eq!(telescoping_power_sum(3, 2, true).unwrap(), BigInt::from(15));
        assert_eq!(telescoping_power_sum(1, 7, false).unwrap(), BigInt::from(1));
    }

    #[test]
    fn telescoping_sweep() {
        for x in 1..=20u64 {
            for n in 1..=8u32 {
                let xn = BigInt::from(x).pow(n);
                let dev = BigInt::from(x + 1).pow(n) - BigInt::one();
                assert_eq!(telescoping_power_sum(x, n, false).unwrap(), xn);
                assert_eq!(telescoping_power_sum(x, n, true).unwrap(), dev);
            }
        }
    }

    proptest! {
        #[test]
        fn term_symmetry(x in 1u64..=25, n in 1u32..=8, k in 0u64..=25) {
            prop_assume!(k <= x);
            prop_assert_eq!(term_poly(x, n, k), term_poly(x, n, x - k));
        }

        #[test]
        fn xi_factorization(x in 1u64..=15, n in 1u32..=6,
                            num in -20i64..=20, den in 1i64..=9) {
            let t = rat(num, den);
            let lhs = xi_exact(x, &t, n).unwrap();
            let rhs = xi_exact(x, &BigRational::one(), n).unwrap() * pow_rational(&t, n);
            prop_assert_eq!(&lhs, &rhs);
            // and the closed form (x*t)^n
            let xt = int(x as i64) * &t;
            prop_assert_eq!(lhs, pow_rational(&xt, n));
        }

        #[test]
        fn growth_matches_forward_difference(x in -6i32..=6, n in 1u32..=8) {
            let a = binomial_growth_expansion(x as f64, 1.0, n);
            let b = forward_difference_power(x as f64, n);
            prop_assert_eq!(a, b);
        }
    }
}
