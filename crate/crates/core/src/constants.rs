//! Arbitrary-precision evaluation of the constants the closed forms live in:
//! pi, log 2, Euler's gamma, zeta at integers, Hurwitz zeta and digamma at
//! positive rationals, log Gamma, roots of unity, and elementary ln/exp.
//! Every routine works at an internal guard precision and rounds down to the
//! requested bits; results are cached per (input, bits).

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::algebra::Ring;
use crate::bigfloat::{div_round, BigComplex, BigFloat, ComplexField, RealField};
use crate::error::{Error, Result};
use crate::rational::{bernoulli, rat, rat_int, Rational};

static PI_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> = Lazy::new(Default::default);
static LOG2_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> = Lazy::new(Default::default);
static GAMMA_CACHE: Lazy<Mutex<HashMap<u32, BigFloat>>> = Lazy::new(Default::default);
static ZETA_CACHE: Lazy<Mutex<HashMap<(u32, u32), BigFloat>>> = Lazy::new(Default::default);
#[allow(clippy::type_complexity)]
static HURWITZ_CACHE: Lazy<Mutex<HashMap<(u32, BigInt, BigInt, u32), BigFloat>>> =
    Lazy::new(Default::default);
static DIGAMMA_CACHE: Lazy<Mutex<HashMap<(BigInt, BigInt, u32), BigFloat>>> =
    Lazy::new(Default::default);
static LNGAMMA_CACHE: Lazy<Mutex<HashMap<(BigInt, BigInt, u32), BigFloat>>> =
    Lazy::new(Default::default);
static ROOT_CACHE: Lazy<Mutex<HashMap<(u32, u32, u32), BigComplex>>> =
    Lazy::new(Default::default);

/// atan(1/x) * 2^work, by the alternating inverse-power series.
fn atan_inv_scaled(x: u64, work: u32) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << work) / BigInt::from(x);
    let mut acc = power.clone();
    let mut k = 1u64;
    loop {
        power = power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
        k += 1;
    }
    acc
}

pub fn pi(bits: u32) -> BigFloat {
    if let Some(hit) = PI_CACHE.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let work = bits + 32;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let v = atan_inv_scaled(5, work) * 16 - atan_inv_scaled(239, work) * 4;
    let out = BigFloat::from_mantissa(v, work).with_bits(bits);
    PI_CACHE.lock().unwrap().insert(bits, out.clone());
    out
}

pub fn log2(bits: u32) -> BigFloat {
    if let Some(hit) = LOG2_CACHE.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let work = bits + 32;
    // log 2 = sum_{k>=1} 1/(k 2^k)
    let mut acc = BigInt::zero();
    for k in 1..=work as u64 {
        acc += (BigInt::one() << (work as u64 - k)) / BigInt::from(k);
    }
    let out = BigFloat::from_mantissa(acc, work).with_bits(bits);
    LOG2_CACHE.lock().unwrap().insert(bits, out.clone());
    out
}

/// Natural log for positive x, at x's precision.
pub fn ln(x: &BigFloat) -> BigFloat {
    assert!(!x.is_negative() && !x.is_zero(), "ln needs a positive argument");
    let bits = x.bits();
    let work = bits + 32;
    let field = RealField::new(work);
    let xx = x.with_bits(work);

    // x = m * 2^e with m in [1, 2)
    let bl = xx.mantissa().bits() as i64;
    let e = bl - 1 - work as i64;
    let m = if work as i64 >= bl - 1 {
        BigFloat::from_mantissa(xx.mantissa() << ((work as i64 - (bl - 1)) as u32), work)
    } else {
        BigFloat::from_mantissa(
            div_round(xx.mantissa(), &(BigInt::one() << ((bl - 1 - work as i64) as u32))),
            work,
        )
    };

    // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3)
    let t = field.div(&field.sub(&m, &field.one()), &field.add(&m, &field.one()));
    let t2 = field.mul(&t, &t);
    let mut term = t.clone();
    let mut acc = t;
    let mut k = 1u64;
    while !term.is_zero() {
        term = field.mul(&term, &t2);
        if term.is_zero() {
            break;
        }
        acc = field.add(&acc, &field.div_int(&term, (2 * k + 1) as i64));
        k += 1;
    }
    let ln_m = field.scale_pow2(&acc, 1);
    let e_ln2 = field.mul(&BigFloat::from_i64(e, work), &log2(work));
    field.add(&ln_m, &e_ln2).with_bits(bits)
}

/// exp(x) at x's precision. The argument magnitude must stay below 2^28.
pub fn exp(x: &BigFloat) -> BigFloat {
    let bits = x.bits();
    let work = bits + 32;
    let field = RealField::new(work);
    let xx = x.with_bits(work);

    let q = (xx.to_f64() / std::f64::consts::LN_2).round();
    assert!(q.abs() < (1u64 << 28) as f64, "exp argument out of range");
    let q = q as i64;
    let r = field.sub(&xx, &field.mul(&BigFloat::from_i64(q, work), &log2(work)));

    let mut term = field.one();
    let mut acc = field.one();
    let mut k = 1i64;
    while !term.is_zero() {
        term = field.div_int(&field.mul(&term, &r), k);
        acc = field.add(&acc, &term);
        k += 1;
    }
    field.scale_pow2(&acc, q as i32).with_bits(bits)
}

pub fn euler_gamma(bits: u32) -> BigFloat {
    if let Some(hit) = GAMMA_CACHE.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    // gamma = sum_{k>=1} (-1)^{k+1} n^k/(k k!) - ln n - E1(n), E1(n) < e^-n.
    // The alternating sum cancels down from terms of size e^n, so work
    // precision carries an extra n*log2(e) bits.
    let n = (((bits + 16) as f64) * std::f64::consts::LN_2).ceil() as u64 + 2;
    let work = bits + ((n as f64) * std::f64::consts::LOG2_E).ceil() as u32 + 48;

    let big_n = BigInt::from(n);
    let mut term = &big_n << work; // n^k 2^work / k!
    let mut acc = term.clone(); // k = 1 contribution: term / 1
    let mut k = 2u64;
    loop {
        term = (term * &big_n) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(k);
        if k % 2 == 1 {
            acc += contrib;
        } else {
            acc -= contrib;
        }
        k += 1;
    }
    let series = BigFloat::from_mantissa(acc, work);
    let field = RealField::new(work);
    let out = field
        .sub(&series, &ln(&BigFloat::from_i64(n as i64, work)))
        .with_bits(bits);
    GAMMA_CACHE.lock().unwrap().insert(bits, out.clone());
    out
}

/// zeta(m) for integer m >= 2, by the accelerated alternating series.
pub fn zeta_int(m: u32, bits: u32) -> Result<BigFloat> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta({m}) is outside the convergent range"
        )));
    }
    if let Some(hit) = ZETA_CACHE.lock().unwrap().get(&(m, bits)) {
        return Ok(hit.clone());
    }
    let work = bits + 32;
    let field = RealField::new(work);
    // error ~ 3 / (3 + sqrt 8)^n
    let n = ((work as f64) * 0.3934).ceil() as usize + 8;

    // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), all integers
    let mut d = Vec::with_capacity(n + 1);
    let mut t = rat(1, n as i64);
    let mut partial = t.clone();
    d.push(rat_int(n as i64) * &partial);
    for i in 1..=n {
        let num = rat_int(4 * (n + i - 1) as i64) * rat_int((n - i + 1) as i64);
        let den = rat_int((2 * i) as i64) * rat_int((2 * i - 1) as i64);
        t = t * num / den;
        partial += &t;
        d.push(rat_int(n as i64) * &partial);
    }
    debug_assert!(d.iter().all(|x| x.is_integer()));

    let d_n = d[n].clone();
    let mut acc = field.zero();
    for (k, dk) in d.iter().take(n).enumerate() {
        let diff = field.from_rational(&(dk - &d_n));
        let denom = field.from_rational(&rat_int((k + 1) as i64).pow(m as i32));
        let term = field.div(&diff, &denom);
        if k % 2 == 0 {
            acc = field.add(&acc, &term);
        } else {
            acc = field.sub(&acc, &term);
        }
    }
    // zeta = -acc / (d_n (1 - 2^{1-m}))
    let scale = Rational::from_integer(BigInt::one() << (m - 1))
        / Rational::from_integer((BigInt::one() << (m - 1)) - 1);
    let out = field.neg(&field.div(&acc, &field.from_rational(&d_n)));
    let out = field.mul(&out, &field.from_rational(&scale)).with_bits(bits);
    ZETA_CACHE.lock().unwrap().insert((m, bits), out.clone());
    Ok(out)
}

fn require_positive(a: &Rational, what: &str) -> Result<()> {
    if a <= &rat_int(0) {
        return Err(Error::InvalidArgument(format!(
            "{what} needs a positive argument, got {a}"
        )));
    }
    Ok(())
}

/// Shared Euler-Maclaurin tail: sum over r >= 1 of
/// B_2r * pochhammer(s, 2r-1) / (2r)! / z^{s+2r-1}, as exact rationals until
/// the terms drop below 2^-work. Doubles the shift and retries if the
/// asymptotic series bottoms out too early.
fn em_tail(s: u32, z: &Rational, work: u32) -> Option<Rational> {
    let threshold = rat_int(1) / Rational::from_integer(BigInt::one() << work);
    let z_inv2 = z.pow(-2);
    let mut zpow = z.pow(1 - (s as i32)); // z^{1-s-2r} running, starts at r=0
    let mut poch = rat_int(1); // (s)_{2r-1} running
    let mut fact = rat_int(1); // (2r)! running
    let mut acc = rat_int(0);
    let mut prev_abs: Option<Rational> = None;
    for r in 1..=90u32 {
        zpow *= &z_inv2;
        if r == 1 {
            poch = rat_int(s as i64);
        } else {
            poch *= rat_int((s + 2 * r - 3) as i64) * rat_int((s + 2 * r - 2) as i64);
        }
        fact *= rat_int((2 * r - 1) as i64) * rat_int((2 * r) as i64);
        let b = bernoulli((2 * r) as usize).ok()?;
        let term = b * &poch / &fact * &zpow;
        let abs = if term < rat_int(0) { -term.clone() } else { term.clone() };
        if let Some(p) = &prev_abs {
            if abs > *p {
                // divergent regime reached before convergence
                return None;
            }
        }
        acc += &term;
        if abs < threshold {
            return Some(acc);
        }
        prev_abs = Some(abs);
    }
    None
}

/// Hurwitz zeta(s, a) for integer s >= 2 and rational a > 0.
pub fn hurwitz_zeta(s: u32, a: &Rational, bits: u32) -> Result<BigFloat> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "hurwitz zeta needs s >= 2, got {s}"
        )));
    }
    require_positive(a, "hurwitz zeta")?;
    let key = (s, a.numer().clone(), a.denom().clone(), bits);
    if let Some(hit) = HURWITZ_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let work = bits + 48;
    let field = RealField::new(work);
    let mut shift = ((work as f64) * 0.12).ceil() as u32 + s + 8;
    let out = loop {
        let z = a + rat_int(shift as i64);
        if let Some(tail) = em_tail(s, &z, work) {
            let mut head = field.zero();
            for i in 0..shift {
                let base = a + rat_int(i as i64);
                head = field.add(&head, &field.from_rational(&base.pow(-(s as i32))));
            }
            let mid = field.div_int(
                &field.from_rational(&z.pow(1 - s as i32)),
                (s - 1) as i64,
            );
            let half = field.scale_pow2(&field.from_rational(&z.pow(-(s as i32))), -1);
            let tail = field.from_rational(&tail);
            break field.add(&field.add(&head, &mid), &field.add(&half, &tail));
        }
        shift *= 2;
    };
    let out = out.with_bits(bits);
    HURWITZ_CACHE.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

/// digamma(a) for rational a > 0.
pub fn digamma(a: &Rational, bits: u32) -> Result<BigFloat> {
    require_positive(a, "digamma")?;
    let key = (a.numer().clone(), a.denom().clone(), bits);
    if let Some(hit) = DIGAMMA_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let work = bits + 48;
    let field = RealField::new(work);
    let mut shift = ((work as f64) * 0.12).ceil() as u32 + 8;
    let out = loop {
        let z = a + rat_int(shift as i64);
        // tail: sum_r B_2r / (2r z^{2r}); reuse em_tail identities directly
        if let Some(tail) = digamma_tail(&z, work) {
            let mut head = field.zero();
            for i in 0..shift {
                let base = a + rat_int(i as i64);
                head = field.add(&head, &field.from_rational(&base.recip()));
            }
            let ln_z = ln(&field.from_rational(&z));
            let half = field.scale_pow2(&field.from_rational(&z.recip()), -1);
            break field.sub(
                &field.sub(&field.sub(&ln_z, &half), &head),
                &field.from_rational(&tail),
            );
        }
        shift *= 2;
    };
    let out = out.with_bits(bits);
    DIGAMMA_CACHE.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

fn digamma_tail(z: &Rational, work: u32) -> Option<Rational> {
    let threshold = rat_int(1) / Rational::from_integer(BigInt::one() << work);
    let z_inv2 = z.pow(-2);
    let mut zpow = rat_int(1);
    let mut acc = rat_int(0);
    let mut prev_abs: Option<Rational> = None;
    for r in 1..=90u32 {
        zpow *= &z_inv2;
        let term = bernoulli((2 * r) as usize).ok()? / rat_int((2 * r) as i64) * &zpow;
        let abs = if term < rat_int(0) { -term.clone() } else { term.clone() };
        if let Some(p) = &prev_abs {
            if abs > *p {
                return None;
            }
        }
        acc += &term;
        if abs < threshold {
            return Some(acc);
        }
        prev_abs = Some(abs);
    }
    None
}

/// ln Gamma(a) for rational a > 0, by Stirling after an upward shift.
pub fn ln_gamma(a: &Rational, bits: u32) -> Result<BigFloat> {
    require_positive(a, "ln gamma")?;
    let key = (a.numer().clone(), a.denom().clone(), bits);
    if let Some(hit) = LNGAMMA_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let work = bits + 48;
    let field = RealField::new(work);
    let mut z_min = (((work as f64) * 0.12).ceil() as u32 + 10).max(10);
    let out = loop {
        let shift = {
            let deficit = rat_int(z_min as i64) - a;
            if deficit <= rat_int(0) {
                0u32
            } else {
                (deficit.ceil().to_integer().to_u32()).unwrap_or(0)
            }
        };
        let z = a + rat_int(shift as i64);
        if let Some(tail) = stirling_tail(&z, work) {
            // (z - 1/2) ln z - z + ln(2 pi)/2 + tail
            let zf = field.from_rational(&z);
            let ln_z = ln(&zf);
            let z_half = field.from_rational(&(&z - rat(1, 2)));
            let mut acc = field.sub(&field.mul(&z_half, &ln_z), &zf);
            let ln_2pi = field.add(&log2(work), &ln(&pi(work)));
            acc = field.add(&acc, &field.scale_pow2(&ln_2pi, -1));
            acc = field.add(&acc, &field.from_rational(&tail));
            // walk back down: ln Gamma(a) = ln Gamma(a + m) - sum ln(a + j)
            for j in 0..shift {
                let base = a + rat_int(j as i64);
                acc = field.sub(&acc, &ln(&field.from_rational(&base)));
            }
            break acc;
        }
        z_min *= 2;
    };
    let out = out.with_bits(bits);
    LNGAMMA_CACHE.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

fn stirling_tail(z: &Rational, work: u32) -> Option<Rational> {
    let threshold = rat_int(1) / Rational::from_integer(BigInt::one() << work);
    let z_inv2 = z.pow(-2);
    let mut zpow = z.recip();
    let mut acc = rat_int(0);
    let mut prev_abs: Option<Rational> = None;
    for r in 1..=90u32 {
        let term = bernoulli((2 * r) as usize).ok()?
            / rat_int((2 * r * (2 * r - 1)) as i64)
            * &zpow;
        let abs = if term < rat_int(0) { -term.clone() } else { term.clone() };
        if let Some(p) = &prev_abs {
            if abs > *p {
                return None;
            }
        }
        acc += &term;
        if abs < threshold {
            return Some(acc);
        }
        prev_abs = Some(abs);
        zpow *= &z_inv2;
    }
    None
}

/// e^{2 pi i e / q} at the given precision.
pub fn root_of_unity(q: u32, e: i64, bits: u32) -> BigComplex {
    assert!(q >= 1);
    let em = e.rem_euclid(q as i64) as u32;
    let key = (q, em, bits);
    if let Some(hit) = ROOT_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let work = bits + 32;
    let field = RealField::new(work);
    // theta = 2 pi em/q mapped into (-pi, pi]
    let frac = if 2 * em > q { rat_int(em as i64) / rat_int(q as i64) - rat_int(1) } else {
        rat(em as i64, q as i64)
    };
    let theta = field.mul(
        &field.scale_pow2(&pi(work), 1),
        &field.from_rational(&frac),
    );
    let theta2 = field.neg(&field.mul(&theta, &theta));

    let mut cos = field.one();
    let mut term = field.one();
    let mut k = 1i64;
    while !term.is_zero() {
        term = field.div_int(&field.mul(&term, &theta2), (2 * k - 1) * (2 * k));
        cos = field.add(&cos, &term);
        k += 1;
    }
    let mut sin = theta.clone();
    let mut term = theta;
    let mut k = 1i64;
    while !term.is_zero() {
        term = field.div_int(&field.mul(&term, &theta2), (2 * k) * (2 * k + 1));
        sin = field.add(&sin, &term);
        k += 1;
    }
    let out = BigComplex { re: cos.with_bits(bits), im: sin.with_bits(bits) };
    ROOT_CACHE.lock().unwrap().insert(key, out.clone());
    out
}

/// A cyclotomic element evaluated numerically.
pub fn cyclotomic_to_complex(
    field: &crate::cyclotomic::CyclotomicField,
    a: &crate::cyclotomic::Cyc,
    bits: u32,
) -> BigComplex {
    let cf = ComplexField::new(bits);
    let mut acc = cf.zero();
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let root = root_of_unity(field.order(), i as i64, bits);
        acc = cf.add(&acc, &cf.mul_real(&root, &BigFloat::from_rational(c, bits)));
    }
    acc
}

/// Decimal digits -> working bits, with headroom.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((digits as f64 + 15.0) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}
