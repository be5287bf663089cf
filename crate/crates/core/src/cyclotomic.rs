//! Arithmetic in Q(w) for w a primitive m-th root of unity, in the power
//! basis modulo the m-th cyclotomic polynomial. Evaluation of monomial
//! symmetric polynomials at the full set of n-th roots lives here too.

use std::collections::HashMap;
use std::sync::Arc;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::partitions::{multiset_permutations, Partition};
use crate::rational::{rat_int, Rational};

/// Euler's totient by trial division.
pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1);
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of the m-th cyclotomic polynomial, ascending, monic.
/// Computed by dividing x^m - 1 by the proper-divisor cyclotomics.
pub fn cyclotomic_polynomial(order: u32) -> Arc<Vec<BigInt>> {
    assert!(order >= 1);
    if let Some(hit) = CYCLOTOMIC_CACHE.lock().unwrap().get(&order) {
        return hit.clone();
    }
    let poly = if order == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^order - 1
        let mut num = vec![BigInt::zero(); order as usize + 1];
        num[0] = BigInt::from(-1);
        num[order as usize] = BigInt::one();
        for d in 1..order {
            if order % d == 0 {
                num = divide_exact(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    let arc = Arc::new(poly);
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(order, arc.clone());
    arc
}

/// Long division of integer polynomials known to divide exactly. Panics if a
/// remainder survives; that would mean a broken divisor table.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = dc * &c;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Element of Q(w_order): rational coefficients in the power basis
/// 1, w, ..., w^{phi-1}, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyc {
    coeffs: Vec<Rational>,
}

impl Cyc {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn trim(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }
}

/// Q(w_order) as a ring descriptor; every element handed to it must already
/// live in this order's power basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        Self { order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        euler_phi(self.order) as usize
    }

    /// Reduce raw power-basis coefficients (any length) mod the cyclotomic
    /// polynomial.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Cyc {
        let modulus = cyclotomic_polynomial(self.order);
        let deg = modulus.len() - 1;
        while coeffs.len() > deg {
            let c = coeffs.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = coeffs.len() - deg;
            for (j, m) in modulus.iter().take(deg).enumerate() {
                if !m.is_zero() {
                    coeffs[shift + j] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
        Cyc::trim(coeffs)
    }

    /// w_order^e, exponent taken mod order.
    pub fn omega_pow(&self, e: i64) -> Cyc {
        let m = self.order as i64;
        let e = e.rem_euclid(m) as usize;
        let mut coeffs = vec![rat_int(0); e + 1];
        coeffs[e] = rat_int(1);
        self.reduce(coeffs)
    }

    pub fn omega(&self) -> Cyc {
        self.omega_pow(1)
    }

    /// w_suborder^e viewed inside this field; suborder must divide order.
    pub fn embed_root(&self, suborder: u32, e: i64) -> Result<Cyc> {
        if suborder == 0 || self.order % suborder != 0 {
            return Err(Error::RingMismatch(format!(
                "root of order {suborder} does not embed in Q(w_{})",
                self.order
            )));
        }
        let stride = (self.order / suborder) as i64;
        Ok(self.omega_pow(e.rem_euclid(suborder as i64) * stride))
    }

    /// The element as a rational, if it lies in Q.
    pub fn as_rational(&self, a: &Cyc) -> Result<Rational> {
        if a.coeffs.len() > 1 {
            return Err(Error::NonRational(format!(
                "element {:?} of Q(w_{}) has nonzero root components",
                a, self.order
            )));
        }
        Ok(a.coeffs.first().cloned().unwrap_or_else(|| rat_int(0)))
    }
}

impl Ring for CyclotomicField {
    type Elem = Cyc;

    fn zero(&self) -> Cyc {
        Cyc { coeffs: Vec::new() }
    }

    fn one(&self) -> Cyc {
        Cyc { coeffs: vec![rat_int(1)] }
    }

    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![rat_int(0); n];
        for (i, c) in a.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Cyc::trim(out)
    }

    fn neg(&self, a: &Cyc) -> Cyc {
        Cyc { coeffs: a.coeffs.iter().map(|c| -c).collect() }
    }

    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut out = vec![rat_int(0); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    out[i + j] += ca * cb;
                }
            }
        }
        self.reduce(out)
    }

    fn is_zero(&self, a: &Cyc) -> bool {
        a.coeffs.is_empty()
    }

    fn from_rational(&self, q: &Rational) -> Cyc {
        Cyc::trim(vec![q.clone()])
    }

    fn div_int(&self, a: &Cyc, n: i64) -> Cyc {
        assert!(n != 0, "division by zero integer");
        let d = rat_int(n);
        Cyc { coeffs: a.coeffs.iter().map(|c| c / &d).collect() }
    }
}

/// Guard for the number of evaluation slots in [`monomial_at_roots`].
pub const ROOT_SLOT_GUARD: u32 = 10;

/// The power sum p_m(1, w, ..., w^{n-1}) over the n-th roots of unity:
/// n when n | m, zero otherwise.
pub fn power_sum_roots(n: u32, m: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("power sum over zero roots".into()));
    }
    let field = CyclotomicField::new(n);
    let mut acc = field.zero();
    for j in 0..n {
        acc = field.add(&acc, &field.omega_pow((j as i64) * (m as i64)));
    }
    field.as_rational(&acc)
}

/// The monomial symmetric polynomial m_lambda evaluated at the n-th roots of
/// unity 1, w, ..., w^{n-1}. Zero when lambda has more than n parts; always a
/// rational integer otherwise.
pub fn monomial_at_roots(lambda: &Partition, n: u32) -> Result<BigInt> {
    if n == 0 || n > ROOT_SLOT_GUARD {
        return Err(Error::Capacity {
            what: "root evaluation slots",
            requested: n as u64,
            limit: ROOT_SLOT_GUARD as u64,
        });
    }
    if lambda.len() > n as usize {
        return Ok(BigInt::zero());
    }
    let mut padded: Vec<u32> = lambda.parts().to_vec();
    padded.resize(n as usize, 0);

    // Tally w-exponents over distinct slot assignments, then reduce once.
    let mut counts = vec![0i64; n as usize];
    for perm in multiset_permutations(&padded) {
        let e: u64 = perm
            .iter()
            .enumerate()
            .map(|(slot, &part)| (slot as u64) * (part as u64))
            .sum();
        counts[(e % n as u64) as usize] += 1;
    }
    let field = CyclotomicField::new(n);
    let raw: Vec<Rational> = counts.into_iter().map(rat_int).collect();
    let value = field.as_rational(&field.reduce(raw))?;
    if !value.is_integer() {
        return Err(Error::NonIntegral(format!(
            "m_{lambda:?} at the {n}-th roots gave {value}"
        )));
    }
    Ok(value.to_integer())
}
