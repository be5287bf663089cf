//! Arbitrary-precision rational arithmetic plus the Bernoulli numbers,
//! factorials and binomial coefficients used everywhere else.
//!
//! `Rational` is backed by `num_rational::BigRational`, which keeps values
//! in canonical form (gcd-reduced, positive denominator) after every
//! operation. The Bernoulli table is built once by the defining recurrence
//! and then read-only.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Exact rational number in canonical form.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for small integer literals as rationals.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 2^e as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let two = BigInt::from(2);
    if e >= 0 {
        Rational::from_integer(two.pow(e as u32))
    } else {
        Rational::new(BigInt::one(), two.pow((-e) as u32))
    }
}

/// Render as `p/q` (or just `p` when the denominator is 1).
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse the `p/q` form produced by [`render_rational`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// m! as an exact integer.
pub fn factorial(m: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=m as u64 {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k) for integer n (possibly negative) and k >= 0,
/// as an exact rational. Integer-valued whenever n >= 0.
pub fn binomial(n: i64, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc *= rat(n - i, i + 1);
    }
    acc
}

/// Default capacity of the process-wide Bernoulli table. The largest index
/// any desk-scale run consumes is 2nk with n, k <= 6.
pub const DEFAULT_BERNOULLI_CAPACITY: usize = 200;

/// Table of Bernoulli numbers B_0 .. B_maxIndex under the convention fixed
/// by the recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0, which yields B_1 = -1/2.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Build B_0 .. B_max_index. The even entries come from tangent numbers
    /// (Seidel triangle, integer-only, so no rational gcd churn on the way
    /// up): B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1)).
    pub fn with_capacity(max_index: usize) -> Self {
        let half = max_index / 2;
        let mut t: Vec<BigInt> = vec![BigInt::zero(); half + 1];
        if half >= 1 {
            t[1] = BigInt::one();
            for k in 2..=half {
                t[k] = &t[k - 1] * BigInt::from(k - 1);
            }
            for k in 2..=half {
                for j in k..=half {
                    t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
                }
            }
        }

        let mut values = Vec::with_capacity(max_index + 1);
        values.push(Rational::one());
        if max_index >= 1 {
            values.push(rat(-1, 2));
        }
        for n in 1..=half {
            let mut num = &t[n] * BigInt::from(2 * n);
            if n % 2 == 0 {
                num = -num;
            }
            let four_n = BigInt::from(4).pow(n as u32);
            let den = &four_n * (&four_n - BigInt::one());
            values.push(Rational::new(num, den));
            if 2 * n + 1 <= max_index {
                values.push(Rational::zero());
            }
        }
        debug_assert_eq!(values.len(), max_index + 1);
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> Result<&Rational> {
        self.values.get(m).ok_or(Error::Capacity {
            what: "Bernoulli table",
            requested: m as u64,
            limit: self.max_index() as u64,
        })
    }
}

static BERNOULLI: Lazy<BernoulliTable> =
    Lazy::new(|| BernoulliTable::with_capacity(DEFAULT_BERNOULLI_CAPACITY));

/// B_m from the process-wide table (capacity [`DEFAULT_BERNOULLI_CAPACITY`]).
pub fn bernoulli(m: usize) -> Result<Rational> {
    BERNOULLI.get(m).cloned()
}

/// zeta(2m) / pi^{2m} = (-1)^{m-1} 2^{2m-1} B_{2m} / (2m)!, exact.
pub fn even_zeta_over_pi_power(m: u32) -> Result<Rational> {
    let b = bernoulli(2 * m as usize)?;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    Ok(rat_int(sign) * pow2(2 * m as i64 - 1) * b
        / Rational::from_integer(factorial(2 * m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000_u64));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), rat_int(6));
        assert_eq!(binomial(7, 0), rat_int(1));
        assert_eq!(binomial(10, 5), rat_int(252));
        // Pascal recurrence as an independent cross-check.
        for n in 1..12i64 {
            for k in 1..=n as u32 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                );
            }
        }
        // Negative upper argument stays exact.
        assert_eq!(binomial(-1, 3), rat_int(-1));
        assert_eq!(binomial(-2, 2), rat_int(3));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), rat_int(1));
        assert_eq!(bernoulli(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(7).unwrap(), Rational::zero());
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_odd_indices_vanish() {
        for m in 1..40 {
            assert!(bernoulli(2 * m + 1).unwrap().is_zero(), "B_{} != 0", 2 * m + 1);
        }
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0 for every n >= 1 in the table.
        let table = BernoulliTable::with_capacity(40);
        for n in 1..=40usize {
            let mut sum = Rational::zero();
            for j in 0..n {
                sum += binomial(n as i64 + 1, j as u32) * table.get(j).unwrap();
            }
            sum += table.get(n).unwrap() * rat_int(n as i64 + 1);
            assert!(sum.is_zero(), "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn bernoulli_capacity_error() {
        let table = BernoulliTable::with_capacity(10);
        assert!(table.get(11).is_err());
        assert!(table.get(10).is_ok());
    }

    #[test]
    fn rational_render_parse_round_trip() {
        for q in [rat(-3, 4), rat_int(7), rat(22, 7), Rational::zero()] {
            assert_eq!(parse_rational(&render_rational(&q)).unwrap(), q);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exactness_round_trip() {
        // (a+b)-b = a and (a*b)/b = a for a grid of values.
        for an in -6..6i64 {
            for bn in 1..6i64 {
                let a = rat(an, 7);
                let b = rat(bn, 3);
                assert_eq!(&(&a + &b) - &b, a);
                assert_eq!(&(&a * &b) / &b, a);
            }
        }
    }
}
