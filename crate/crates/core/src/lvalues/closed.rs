//! Closed forms for the diagonal values S_k(n) with N = M = 2: the zeta-sum
//! expression Z_n(k), the weight-one variant with log 2 powers, the even
//! weight Bernoulli evaluations, and the depth-two values with mixed
//! weights (1, 2k) and (2k, 1).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{ring_pow, Ring};
use crate::cyclotomic::{monomial_at_roots, CyclotomicField};
use crate::error::{Error, Result};
use crate::partitions::{enumerate, z_mu};
use crate::rational::{bernoulli, factorial, pow2, rat_int, Rational};
use crate::symbolic::{
    log2_sym, normalize_even_zetas, sym_ring, zeta_sym, Generator, Monomial, SymbolicValue,
};

use super::nu;

/// Largest admitted n*k for the Bernoulli evaluations; keeps the composition
/// enumeration and Bernoulli indices small.
const BERNOULLI_DEGREE_GUARD: u32 = 18;

/// Z_n(k): the sum over partitions mu of k (all parts >= 2 when n = 1) of
/// nu(n mu) / z_mu times zeta(n mu_1) zeta(n mu_2) ...
pub fn z_n_k(n: u32, k: u32) -> Result<SymbolicValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("zeta argument scale must be positive".into()));
    }
    let ring = sym_ring();
    let mut acc = ring.zero();
    for mu in enumerate(k)? {
        if n == 1 && !mu.is_empty() && mu.min_part() == 1 {
            continue;
        }
        let mut coeff = z_mu(&mu).recip();
        let mut gens = ring.one();
        for &part in mu.parts() {
            coeff *= nu(n * part);
            gens = ring.mul(&gens, &zeta_sym(n * part)?);
        }
        acc = ring.add(&acc, &ring.scale(&gens, &coeff));
    }
    Ok(acc)
}

/// S_k(1) = sum over m <= k of (-log 2)^{k-m} / (k-m)! * Z_1(m).
pub fn closed_s_k_n1(k: u32) -> Result<SymbolicValue> {
    let ring = sym_ring();
    let minus_log2 = ring.neg(&log2_sym());
    let mut acc = ring.zero();
    for m in 0..=k {
        let pow = ring_pow(&ring, &minus_log2, (k - m) as u64);
        let coeff = Rational::new(BigInt::one(), factorial(k - m));
        acc = ring.add(&acc, &ring.mul(&ring.scale(&pow, &coeff), &z_n_k(1, m)?));
    }
    Ok(acc)
}

/// S_k(n) = Z_n(k) for n >= 2. Weight one needs [`closed_s_k_n1`].
pub fn closed_s_k_n(n: u32, k: u32) -> Result<SymbolicValue> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "closed form for weight one has its own log 2 expansion".into(),
        ));
    }
    z_n_k(n, k)
}

/// Which route to the even-weight value S_k(2n).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BernoulliForm {
    /// Composition sum over m_1 + ... + m_n = nk with a root-of-unity twist.
    Convolution,
    /// Partition sum weighted by monomial values at the n-th roots of unity.
    Plethysm,
    /// Z_{2n}(k) with every even zeta rewritten as a pi power.
    Zeta,
}

fn bernoulli_factor(m: u32) -> Result<Rational> {
    Ok(bernoulli(2 * m as usize)? / Rational::from(factorial(2 * m)))
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            return;
        }
        for take in 0..=remaining {
            current[pos] = take;
            rec(out, current, pos + 1, remaining - take);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut current, 0, total);
    out
}

fn bernoulli_convolution(n: u32, k: u32) -> Result<Rational> {
    let deg = n * k;
    // tally omega-exponent residues with rational weights, collapse once
    let mut residues = vec![Rational::zero(); n as usize];
    for comp in compositions(deg, n as usize) {
        let mut prod = Rational::one();
        let mut e: u64 = 0;
        for (i, &m_i) in comp.iter().enumerate() {
            prod *= bernoulli_factor(m_i)?;
            e += (i as u64 + 1) * m_i as u64;
        }
        residues[(e % n as u64) as usize] += prod;
    }
    let field = CyclotomicField::new(n);
    let mut tot = field.zero();
    for (r, c) in residues.into_iter().enumerate() {
        let term = field.mul(&field.from_rational(&c), &field.omega_pow(r as i64));
        tot = field.add(&tot, &term);
    }
    field.as_rational(&tot)
}

fn bernoulli_plethysm(n: u32, k: u32) -> Result<Rational> {
    let deg = n * k;
    let mut acc = Rational::zero();
    for lambda in enumerate(deg)? {
        let c = monomial_at_roots(&lambda, n)?;
        if c.is_zero() {
            continue;
        }
        let mut prod = Rational::from(c);
        for &part in lambda.parts() {
            prod *= bernoulli_factor(part)?;
        }
        acc += prod;
    }
    Ok(acc)
}

/// S_k(2n) as an explicit rational multiple of pi^{2nk}, by any of the three
/// routes. They agree exactly.
pub fn bernoulli_s_k_even(n: u32, k: u32, form: BernoulliForm) -> Result<SymbolicValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("half-weight must be positive".into()));
    }
    if n * k > BERNOULLI_DEGREE_GUARD {
        return Err(Error::Capacity {
            what: "Bernoulli evaluation degree",
            requested: (n * k) as u64,
            limit: BERNOULLI_DEGREE_GUARD as u64,
        });
    }
    let ring = sym_ring();
    if k == 0 {
        return Ok(ring.one());
    }
    let deg = n * k;
    let q = match form {
        BernoulliForm::Convolution => bernoulli_convolution(n, k)?,
        BernoulliForm::Plethysm => bernoulli_plethysm(n, k)?,
        BernoulliForm::Zeta => return normalize_even_zetas(&z_n_k(2 * n, k)?),
    };
    // multiply by (-pi^2)^{nk}
    let signed = if deg % 2 == 1 { -q } else { q };
    Ok(ring.term(Monomial::generator(Generator::PiSquared, deg), signed))
}

/// Index order for the depth-two values with one weight equal to one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DoubleZetaOrder {
    /// Weights (1, 2k): the unit weight sits on the smallest index.
    OneFirst,
    /// Weights (2k, 1): the unit weight sits on the largest index.
    OneLast,
}

/// Depth-two closed forms S_2(1, 2k) and S_2(2k, 1) in terms of odd
/// zeta values, zeta(2k) log 2, and lower products.
pub fn double_zeta_remark(k: u32, order: DoubleZetaOrder) -> Result<SymbolicValue> {
    if k == 0 {
        return Err(Error::InvalidArgument("even weight 2k needs k >= 1".into()));
    }
    let ring = sym_ring();
    // nu-scaled depth-one value nu(m) zeta(m)
    let s1 = |m: u32| -> Result<SymbolicValue> { Ok(ring.scale(&zeta_sym(m)?, &nu(m))) };
    let z2k_log2 = ring.mul(&zeta_sym(2 * k)?, &log2_sym());
    let mut cross = ring.zero();
    for p in 1..k {
        cross = ring.add(&cross, &ring.mul(&s1(2 * p + 1)?, &zeta_sym(2 * k - 2 * p)?));
    }
    match order {
        DoubleZetaOrder::OneFirst => {
            let mut acc = ring.scale(&s1(2 * k + 1)?, &rat_int(k as i64 + 1));
            let c = rat_int(2) - pow2(1 - 2 * k as i64);
            acc = ring.add(&acc, &ring.scale(&z2k_log2, &c));
            Ok(ring.sub(&acc, &cross))
        }
        DoubleZetaOrder::OneLast => {
            let mut acc = ring.scale(&s1(2 * k + 1)?, &rat_int(-(k as i64)));
            acc = ring.sub(&acc, &z2k_log2);
            Ok(ring.add(&acc, &cross))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::symbolic::pi_squared_pow;

    fn ring() -> crate::symbolic::SymbolicRing<crate::algebra::RationalField> {
        sym_ring()
    }

    fn zeta(m: u32) -> SymbolicValue {
        zeta_sym(m).unwrap()
    }

    #[test]
    fn z_values_low_depth() {
        let r = ring();
        assert_eq!(z_n_k(1, 0).unwrap(), r.one());
        assert_eq!(z_n_k(5, 0).unwrap(), r.one());
        // partitions of 2 with all parts >= 2: just (2)
        assert_eq!(z_n_k(1, 2).unwrap(), r.scale(&zeta(2), &rat(-1, 4)));
        // depth one: nu(n) zeta(n)
        assert_eq!(z_n_k(3, 1).unwrap(), r.scale(&zeta(3), &rat(-3, 4)));
    }

    #[test]
    fn weight_one_ladder() {
        let r = ring();
        let log2 = log2_sym();
        assert_eq!(closed_s_k_n1(0).unwrap(), r.one());
        assert_eq!(closed_s_k_n1(1).unwrap(), r.neg(&log2));

        // (log 2)^2/2 - zeta(2)/4
        let sq = r.scale(&r.mul(&log2, &log2), &rat(1, 2));
        let expect2 = r.sub(&sq, &r.scale(&zeta(2), &rat(1, 4)));
        assert_eq!(closed_s_k_n1(2).unwrap(), expect2);

        // -(log 2)^3/6 + (log 2) zeta(2)/4 - zeta(3)/4
        let cube = r.scale(&r.mul(&r.mul(&log2, &log2), &log2), &rat(-1, 6));
        let mid = r.scale(&r.mul(&log2, &zeta(2)), &rat(1, 4));
        let expect3 = r.sub(&r.add(&cube, &mid), &r.scale(&zeta(3), &rat(1, 4)));
        assert_eq!(closed_s_k_n1(3).unwrap(), expect3);
    }

    #[test]
    fn weight_three_ladder() {
        let r = ring();
        assert_eq!(closed_s_k_n(3, 1).unwrap(), r.scale(&zeta(3), &rat(-3, 4)));

        let expect2 = r.add(
            &r.scale(&zeta(6), &rat(-31, 64)),
            &r.scale(&r.mul(&zeta(3), &zeta(3)), &rat(9, 32)),
        );
        assert_eq!(closed_s_k_n(3, 2).unwrap(), expect2);

        let cube = r.mul(&r.mul(&zeta(3), &zeta(3)), &zeta(3));
        let expect3 = r.add(
            &r.add(
                &r.scale(&zeta(9), &rat(-85, 256)),
                &r.scale(&r.mul(&zeta(6), &zeta(3)), &rat(93, 256)),
            ),
            &r.scale(&cube, &rat(-9, 128)),
        );
        assert_eq!(closed_s_k_n(3, 3).unwrap(), expect3);
    }

    #[test]
    fn weight_one_is_rejected_by_the_general_form() {
        assert!(closed_s_k_n(1, 2).is_err());
        assert!(closed_s_k_n(0, 2).is_err());
    }

    #[test]
    fn bernoulli_weight_two_collapses_to_single_even_zeta() {
        // S_k(2) = -zeta(2k) / 2^{2k-1}; both sides as pi powers
        let r = ring();
        for k in 1..=6u32 {
            let conv = bernoulli_s_k_even(1, k, BernoulliForm::Convolution).unwrap();
            let expect = normalize_even_zetas(&r.scale(&zeta(2 * k), &pow2(1 - 2 * k as i64)))
                .map(|v| r.neg(&v))
                .unwrap();
            assert_eq!(conv, expect, "k={k}");
        }
    }

    #[test]
    fn bernoulli_three_routes_agree() {
        for n in 1..=3u32 {
            for k in 0..=2u32 {
                let conv = bernoulli_s_k_even(n, k, BernoulliForm::Convolution).unwrap();
                let ple = bernoulli_s_k_even(n, k, BernoulliForm::Plethysm).unwrap();
                let zet = bernoulli_s_k_even(n, k, BernoulliForm::Zeta).unwrap();
                assert_eq!(conv, ple, "n={n} k={k}");
                assert_eq!(conv, zet, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bernoulli_weight_four_hand_value() {
        // S_1(4) = -7 pi^4 / 720
        let r = ring();
        let got = bernoulli_s_k_even(2, 1, BernoulliForm::Convolution).unwrap();
        assert_eq!(got, r.scale(&pi_squared_pow(2), &rat(-7, 720)));
    }

    #[test]
    fn bernoulli_guard() {
        assert!(matches!(
            bernoulli_s_k_even(5, 4, BernoulliForm::Convolution),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn double_zeta_weight_two_values() {
        let r = ring();
        // S_2(1,2) = -(3/2) zeta(3) + (3/2) zeta(2) log 2
        let first = double_zeta_remark(1, DoubleZetaOrder::OneFirst).unwrap();
        let e1 = r.add(
            &r.scale(&zeta(3), &rat(-3, 2)),
            &r.scale(&r.mul(&zeta(2), &log2_sym()), &rat(3, 2)),
        );
        assert_eq!(first, e1);

        // S_2(2,1) = (3/4) zeta(3) - zeta(2) log 2
        let second = double_zeta_remark(1, DoubleZetaOrder::OneLast).unwrap();
        let e2 = r.sub(
            &r.scale(&zeta(3), &rat(3, 4)),
            &r.mul(&zeta(2), &log2_sym()),
        );
        assert_eq!(second, e2);
    }

    #[test]
    fn double_zeta_sum_rule() {
        // adding the two orders kills the cross terms:
        // S_2(1,2k) + S_2(2k,1) = nu(2k+1) zeta(2k+1) + (1 - 2^{1-2k}) zeta(2k) log 2
        let r = ring();
        for k in 1..=3u32 {
            let total = r.add(
                &double_zeta_remark(k, DoubleZetaOrder::OneFirst).unwrap(),
                &double_zeta_remark(k, DoubleZetaOrder::OneLast).unwrap(),
            );
            let expect = r.add(
                &r.scale(&zeta(2 * k + 1), &nu(2 * k + 1)),
                &r.scale(
                    &r.mul(&zeta(2 * k), &log2_sym()),
                    &(rat_int(1) - pow2(1 - 2 * k as i64)),
                ),
            );
            assert_eq!(total, expect, "k={k}");
        }
    }
}
