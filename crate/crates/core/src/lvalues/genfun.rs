//! Gamma-product generating functions. With G_U(x) carrying U_d at x^{2nd}
//! and G_S(x) carrying S(n; 1^r) at x^{nr}, the product carries S_k(n) at
//! x^{nk}. Exact mode expands log Gamma series over a cyclotomic ring whose
//! root combinations collapse to rationals; numeric mode evaluates the same
//! shape with Hurwitz zeta coefficients at arbitrary rational offsets.

use crate::algebra::{RationalField, Ring};
use crate::bigfloat::{BigFloat, ComplexField};
use crate::constants::root_of_unity;
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::rational::{rat, rat_int};
use crate::series::{
    log_gamma_at_exact, log_gamma_at_numeric, log_gamma_one_minus, map_series_coeffs,
    SymbolicSeries, TruncatedSeries,
};
use crate::symbolic::{log2_sym, sym_ring, zeta_sym, SymbolicRing};

use super::oracle::gate_precision;
use super::nu;

/// Series with exact symbolic coefficients (rationals times generator
/// monomials).
pub type ExactSeries = TruncatedSeries<SymbolicRing<RationalField>>;

type NumericSeries = TruncatedSeries<ComplexField>;

/// Extra working bits for the numeric series pipeline.
const SERIES_GUARD_BITS: u32 = 32;

fn check_positive(values: &[(u32, &str)]) -> Result<()> {
    for &(v, what) in values {
        if v == 0 {
            return Err(Error::InvalidArgument(format!("{what} must be positive")));
        }
    }
    Ok(())
}

/// Map cyclotomic coefficients down to rationals (every surviving root
/// combination must be rational) and reject any residual Euler-Mascheroni
/// term. Returns the log series over the plain symbolic ring.
fn collapse_exact_log(
    cyc: &CyclotomicField,
    log: &SymbolicSeries<CyclotomicField>,
) -> Result<ExactSeries> {
    let mapped = map_series_coeffs(log, &sym_ring(), |c| cyc.as_rational(c))?;
    for c in mapped.coeffs() {
        c.assert_gamma_free()?;
    }
    Ok(mapped)
}

/// Exact U generating function; needs M | N so that the repeat-twist
/// disappears and all Gamma arguments sit at 1.
pub fn genfun_u_exact(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    order: usize,
) -> Result<ExactSeries> {
    check_positive(&[
        (repeat_modulus, "repeat modulus"),
        (root_order, "root order"),
        (weight, "weight"),
    ])?;
    if repeat_modulus % root_order != 0 {
        return Err(Error::ExactModeUnsupported(
            "exact U series needs the root order to divide the repeat modulus".into(),
        ));
    }
    let two_n = 2 * weight;
    let cyc = CyclotomicField::new(two_n);
    let ring = SymbolicRing::new(cyc);
    let inv_n = cyc.from_rational(&rat(1, repeat_modulus as i64));
    let mut log = TruncatedSeries::zero(ring, order);
    for j in 0..two_n {
        let c = cyc.mul(&cyc.omega_pow(j as i64), &inv_n);
        log = log.add(&log_gamma_one_minus(&ring, &c, order))?;
    }
    collapse_exact_log(&cyc, &log)?.exp()
}

/// Exact S generating function; the Gamma-argument reduction exists for
/// M in {1, 2} only, and M = 1 with weight 1 is the divergent harmonic case.
pub fn genfun_s1_exact(root_order: u32, weight: u32, order: usize) -> Result<ExactSeries> {
    check_positive(&[(root_order, "root order"), (weight, "weight")])?;
    if root_order == 1 && weight == 1 {
        return Err(Error::Divergent);
    }
    let two_n = 2 * weight;
    let cyc = CyclotomicField::new(two_n);
    let ring = SymbolicRing::new(cyc);
    let mut log = TruncatedSeries::zero(ring, order);
    match root_order {
        1 => {
            for j in 0..weight {
                let c = cyc.omega_pow(2 * j as i64 + 1);
                log = log.sub(&log_gamma_one_minus(&ring, &c, order))?;
            }
        }
        2 => {
            let half = cyc.from_rational(&rat(1, 2));
            for j in 0..weight {
                let even = cyc.mul(&cyc.omega_pow(2 * j as i64), &half);
                let odd = cyc.mul(&cyc.omega_pow(2 * j as i64 + 1), &half);
                log = log.sub(&log_gamma_at_exact(&ring, &rat(1, 2), &even, order)?)?;
                log = log.sub(&log_gamma_one_minus(&ring, &odd, order))?;
            }
        }
        _ => {
            return Err(Error::ExactModeUnsupported(
                "exact S series needs root order 1 or 2".into(),
            ))
        }
    }
    collapse_exact_log(&cyc, &log)?.exp()
}

/// Exact full generating function: the product of the U and S factors.
/// Coefficient of x^{nk} is S_k(n).
pub fn genfun_p_exact(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    order: usize,
) -> Result<ExactSeries> {
    let u = genfun_u_exact(repeat_modulus, root_order, weight, order)?;
    let s = genfun_s1_exact(root_order, weight, order)?;
    u.mul(&s)
}

/// The N = M = 2 specialization built directly: log picks up
/// 2 log Gamma(1 - w x/2) - log Gamma(1 - w x) over the n-th roots w, plus
/// a 2^{-x} prefactor at weight one. Coefficient of x^{nk} is S_k(n).
pub fn genfun_p2(weight: u32, order: usize) -> Result<ExactSeries> {
    check_positive(&[(weight, "weight")])?;
    let cyc = CyclotomicField::new(weight);
    let ring = SymbolicRing::new(cyc);
    let half = cyc.from_rational(&rat(1, 2));
    let two = ring.from_i64(2);
    let mut log = TruncatedSeries::zero(ring, order);
    for j in 0..weight {
        let w = cyc.omega_pow(j as i64);
        let halved = log_gamma_one_minus(&ring, &cyc.mul(&w, &half), order);
        log = log.add(&halved.scale(&two))?;
        log = log.sub(&log_gamma_one_minus(&ring, &w, order))?;
    }
    let mut rational_log = collapse_exact_log(&cyc, &log)?;
    if weight == 1 && order >= 1 {
        let r = sym_ring();
        let adjusted = r.sub(rational_log.coeff(1), &log2_sym());
        rational_log.set_coeff(1, adjusted);
    }
    rational_log.exp()
}

/// The log of the zeta-sum generating function: sum over m >= 1 (with
/// nm >= 2) of nu(nm)/m zeta(nm) x^{nm}. Its exp has Z_n(k) at x^{nk}.
pub fn z_log_series(scale: u32, order: usize) -> Result<ExactSeries> {
    check_positive(&[(scale, "zeta argument scale")])?;
    let ring = sym_ring();
    let mut s = TruncatedSeries::zero(ring, order);
    let mut m = 1u32;
    while (scale as usize) * (m as usize) <= order {
        let d = scale * m;
        if d >= 2 {
            let c = ring.scale(&zeta_sym(d)?, &(nu(d) / rat_int(m as i64)));
            s.set_coeff(d as usize, c);
        }
        m += 1;
    }
    Ok(s)
}

/// Numeric U generating function for arbitrary (N, M).
pub fn genfun_u_numeric(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    order: usize,
    precision: u32,
) -> Result<NumericSeries> {
    check_positive(&[
        (repeat_modulus, "repeat modulus"),
        (root_order, "root order"),
        (weight, "weight"),
    ])?;
    let bits = gate_precision(precision)? + SERIES_GUARD_BITS;
    let field = ComplexField::new(bits);
    let two_n = 2 * weight;
    let scale = BigFloat::from_rational(&rat(1, (root_order * repeat_modulus) as i64), bits);
    let mut log = TruncatedSeries::zero(field, order);
    for k in 1..=root_order {
        let a = rat(k as i64, root_order as i64);
        let twist = root_of_unity(root_order * weight, (k * repeat_modulus) as i64, bits);
        for j in 0..two_n {
            let root = field.mul(&root_of_unity(two_n, j as i64, bits), &twist);
            let c = field.mul_real(&root, &scale);
            log = log.add(&log_gamma_at_numeric(&field, &a, &c, order)?)?;
        }
    }
    log.exp()
}

/// Numeric S generating function for arbitrary M. Depends only on M and the
/// weight; weight 1 with M = 1 diverges.
pub fn genfun_s1_numeric(
    root_order: u32,
    weight: u32,
    order: usize,
    precision: u32,
) -> Result<NumericSeries> {
    check_positive(&[(root_order, "root order"), (weight, "weight")])?;
    if root_order == 1 && weight == 1 {
        return Err(Error::Divergent);
    }
    let bits = gate_precision(precision)? + SERIES_GUARD_BITS;
    let field = ComplexField::new(bits);
    let two_n = 2 * weight;
    let scale = BigFloat::from_rational(&rat(1, root_order as i64), bits);
    let mut log = TruncatedSeries::zero(field, order);
    for k in 1..=root_order {
        let a = rat(k as i64, root_order as i64);
        let twist = root_of_unity(root_order * weight, k as i64, bits);
        for j in 0..weight {
            let root = field.mul(&root_of_unity(two_n, 2 * j as i64 - 1, bits), &twist);
            let c = field.mul_real(&root, &scale);
            log = log.sub(&log_gamma_at_numeric(&field, &a, &c, order)?)?;
        }
    }
    log.exp()
}

/// Numeric full generating function for arbitrary (N, M).
pub fn genfun_p_numeric(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    order: usize,
    precision: u32,
) -> Result<NumericSeries> {
    let u = genfun_u_numeric(repeat_modulus, root_order, weight, order, precision)?;
    let s = genfun_s1_numeric(root_order, weight, order, precision)?;
    u.mul(&s)
}

#[cfg(test)]
mod tests {
    use super::super::closed::{closed_s_k_n, closed_s_k_n1};
    use super::super::oracle::u_d_specialized_bits;
    use super::*;
    use crate::bigfloat::RealField;
    use crate::constants::{digits_to_bits, zeta_int};
    use crate::symbolic::SymbolicValue;

    fn sym_zeta(m: u32) -> SymbolicValue {
        zeta_sym(m).unwrap()
    }

    #[test]
    fn constant_terms_are_one() {
        let r = sym_ring();
        assert_eq!(genfun_u_exact(2, 2, 1, 4).unwrap().coeff(0), &r.one());
        assert_eq!(genfun_s1_exact(2, 1, 4).unwrap().coeff(0), &r.one());
        assert_eq!(genfun_p2(2, 4).unwrap().coeff(0), &r.one());
        let num = genfun_p_numeric(3, 3, 1, 3, 20).unwrap();
        assert!((num.coeff(0).re.to_f64() - 1.0).abs() < 1e-25);
        assert!(num.coeff(0).im.is_zero() || num.coeff(0).im.to_f64().abs() < 1e-25);
    }

    #[test]
    fn exact_u_first_coefficient() {
        // N=M=2, n=1: U_1 = zeta(2)/4 at x^2
        let r = sym_ring();
        let u = genfun_u_exact(2, 2, 1, 4).unwrap();
        assert_eq!(u.coeff(1), &r.zero());
        assert_eq!(u.coeff(2), &r.scale(&sym_zeta(2), &rat(1, 4)));
    }

    #[test]
    fn exact_u_requires_divisibility() {
        assert!(matches!(
            genfun_u_exact(3, 2, 1, 4),
            Err(Error::ExactModeUnsupported(_))
        ));
        assert!(genfun_u_exact(4, 2, 1, 4).is_ok());
    }

    #[test]
    fn exact_s_alternating_coefficients() {
        let r = sym_ring();
        // M=2, n=1: coefficient of x is -log 2
        let s = genfun_s1_exact(2, 1, 3).unwrap();
        assert_eq!(s.coeff(1), &r.neg(&log2_sym()));
        // M=2, n=2: coefficient of x^2 is -zeta(2)/2
        let s2 = genfun_s1_exact(2, 2, 4).unwrap();
        assert_eq!(s2.coeff(1), &r.zero());
        assert_eq!(s2.coeff(2), &r.scale(&sym_zeta(2), &rat(-1, 2)));
    }

    #[test]
    fn exact_s_plain_sums() {
        // M=1, n=2: coefficient of x^2 is the full zeta(2)
        let r = sym_ring();
        let s = genfun_s1_exact(1, 2, 4).unwrap();
        assert_eq!(s.coeff(2), &sym_zeta(2));
        // x^4 carries the distinct-index double sum; its value is
        // e_2 = (zeta(2)^2 - zeta(4))/2
        let sq = r.mul(&sym_zeta(2), &sym_zeta(2));
        let expect = r.scale(&r.sub(&sq, &sym_zeta(4)), &rat(1, 2));
        assert_eq!(s.coeff(4), &expect);
    }

    #[test]
    fn divergent_cases_are_rejected() {
        assert!(matches!(genfun_s1_exact(1, 1, 3), Err(Error::Divergent)));
        assert!(matches!(genfun_s1_numeric(1, 1, 3, 20), Err(Error::Divergent)));
        assert!(matches!(
            genfun_s1_exact(3, 1, 3),
            Err(Error::ExactModeUnsupported(_))
        ));
    }

    #[test]
    fn product_reproduces_weight_one_ladder() {
        let p = genfun_p_exact(2, 2, 1, 3).unwrap();
        for k in 0..=3u32 {
            assert_eq!(p.coeff(k as usize), &closed_s_k_n1(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn unrestricted_case_gives_plain_multiple_zetas() {
        // N=M=1, n=2: S_1(2) = zeta(2), S_2(2,2) = (zeta(2)^2 + zeta(4))/2
        let r = sym_ring();
        let p = genfun_p_exact(1, 1, 2, 4).unwrap();
        assert_eq!(p.coeff(2), &sym_zeta(2));
        let sq = r.mul(&sym_zeta(2), &sym_zeta(2));
        let expect = r.scale(&r.add(&sq, &sym_zeta(4)), &rat(1, 2));
        assert_eq!(p.coeff(4), &expect);
    }

    #[test]
    fn specialized_form_matches_product_form() {
        for n in 1..=3u32 {
            let order = 8;
            let direct = genfun_p2(n, order).unwrap();
            let product = genfun_p_exact(2, 2, n, order).unwrap();
            assert_eq!(direct.coeffs(), product.coeffs(), "n={n}");
        }
    }

    #[test]
    fn specialized_form_pins_first_values() {
        let r = sym_ring();
        assert_eq!(genfun_p2(1, 2).unwrap().coeff(1), &r.neg(&log2_sym()));
        assert_eq!(
            genfun_p2(2, 4).unwrap().coeff(2),
            &r.scale(&sym_zeta(2), &rat(-1, 2))
        );
        assert_eq!(
            genfun_p2(3, 4).unwrap().coeff(3),
            &r.scale(&sym_zeta(3), &rat(-3, 4))
        );
    }

    #[test]
    fn off_grid_coefficients_vanish() {
        let r = sym_ring();
        for n in 2..=3u32 {
            let p = genfun_p2(n, 9).unwrap();
            for m in 0..=9usize {
                if m % n as usize != 0 {
                    assert_eq!(p.coeff(m), &r.zero(), "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn zeta_log_route_agrees() {
        // exp(z-log + weight-one prefactor) is the same series
        let r = sym_ring();
        for n in 1..=3u32 {
            let order = 8;
            let mut log = z_log_series(n, order).unwrap();
            if n == 1 {
                log.set_coeff(1, r.neg(&log2_sym()));
            }
            assert_eq!(log.exp().unwrap().coeffs(), genfun_p2(n, order).unwrap().coeffs());
        }
    }

    #[test]
    fn exact_coefficients_match_closed_forms_at_grid() {
        for n in 2..=3u32 {
            let p = genfun_p2(n, 9).unwrap();
            for k in 0..=(9 / n) {
                assert_eq!(p.coeff((n * k) as usize), &closed_s_k_n(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn numeric_matches_exact_for_alternating_case() {
        let order = 4;
        let digits = 30;
        let bits = digits_to_bits(digits);
        let rf = RealField::new(bits);
        let exact = genfun_p_exact(2, 2, 2, order).unwrap();
        let numeric = genfun_p_numeric(2, 2, 2, order, digits).unwrap();
        for m in 0..=order {
            let e = exact.coeff(m).eval_real(bits).unwrap();
            let n = numeric.coeff(m).re.with_bits(bits);
            let gap = rf.sub(&e, &n).abs().to_f64();
            assert!(gap < 1e-25, "m={m} gap={gap}");
            assert!(numeric.coeff(m).im.to_f64().abs() < 1e-25, "m={m}");
        }
    }

    #[test]
    fn numeric_u_matches_known_values_and_oracle() {
        // N=M=3, n=1: U_1 = zeta(2)/9 at x^2, U_2 = (zeta(2)^2 + zeta(4))/162
        // at x^4. The truncated oracle agrees at its ~1/(3T) tail scale.
        let digits = 25;
        let bits = digits_to_bits(digits);
        let rf = RealField::new(bits);
        let u = genfun_u_numeric(3, 3, 1, 4, digits).unwrap();
        let c2 = u.coeff(2).re.with_bits(bits);
        let c4 = u.coeff(4).re.with_bits(bits);

        let z2 = zeta_int(2, bits).unwrap();
        let z4 = zeta_int(4, bits).unwrap();
        let u1 = rf.div(&z2, &BigFloat::from_i64(9, bits));
        let u2 = rf.div(
            &rf.add(&rf.mul(&z2, &z2), &z4),
            &BigFloat::from_i64(162, bits),
        );
        assert!(rf.sub(&c2, &u1).abs().to_f64() < 1e-20);
        assert!(rf.sub(&c4, &u2).abs().to_f64() < 1e-20);
        assert!(u.coeff(2).im.to_f64().abs() < 1e-20);

        let t = 1_000_000;
        let o1 = u_d_specialized_bits(3, 3, 1, 1, t, bits);
        let o2 = u_d_specialized_bits(3, 3, 1, 2, t, bits);
        assert!(rf.sub(&o1.re, &c2).abs().to_f64() < 5e-7);
        assert!(rf.sub(&o2.re, &c4).abs().to_f64() < 1e-6);
    }
}
