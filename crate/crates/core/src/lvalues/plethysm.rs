//! Brute-force witness for the expansion of h_k composed with a power sum:
//! p_n(h_k's variables) substituted, i.e. h_k(x_1^n, x_2^n, ...), equals
//! sum over lambda |- nk of m_lambda(1, w, ..., w^{n-1}) h_lambda. Working in
//! 2n concrete variables is enough to pin every coefficient that the
//! Bernoulli evaluation route consumes.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclotomic::monomial_at_roots;
use crate::error::{Error, Result};
use crate::partitions::enumerate;

/// Dense-exponent sparse polynomial: exponent vector (one entry per
/// variable) to integer coefficient. Zero coefficients are never stored.
pub type MultiPoly = BTreeMap<Vec<u32>, BigInt>;

fn poly_insert(p: &mut MultiPoly, expo: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match p.entry(expo) {
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
    }
}

fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let expo: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            poly_insert(&mut out, expo, ca * cb);
        }
    }
    out
}

fn poly_add_scaled(acc: &mut MultiPoly, p: &MultiPoly, c: &BigInt) {
    for (e, v) in p {
        poly_insert(acc, e.clone(), v * c);
    }
}

/// Complete homogeneous polynomial h_r in nvars variables: every monomial of
/// total degree r with coefficient one.
fn h_poly(r: u32, nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::new();
    let mut expo = vec![0u32; nvars];
    fn fill(out: &mut MultiPoly, expo: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == expo.len() {
            expo[pos] = remaining;
            out.insert(expo.clone(), BigInt::from(1));
            return;
        }
        for take in 0..=remaining {
            expo[pos] = take;
            fill(out, expo, pos + 1, remaining - take);
        }
    }
    if nvars == 0 {
        if r == 0 {
            out.insert(Vec::new(), BigInt::from(1));
        }
        return out;
    }
    fill(&mut out, &mut expo, 0, r);
    out
}

/// h_k evaluated at the n-th powers of the variables.
pub fn expand_h_of_powers(k: u32, n: u32, nvars: usize) -> MultiPoly {
    h_poly(k, nvars)
        .into_iter()
        .map(|(e, c)| (e.into_iter().map(|x| x * n).collect(), c))
        .collect()
}

/// The candidate expansion: sum over lambda |- nk of
/// m_lambda(1, w, ..., w^{n-1}) times h_lambda, expanded in nvars variables.
pub fn expand_in_h_basis(k: u32, n: u32, nvars: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("power index must be positive".into()));
    }
    let mut acc = MultiPoly::new();
    for lambda in enumerate(n * k)? {
        let c = monomial_at_roots(&lambda, n)?;
        if c.is_zero() {
            continue;
        }
        let mut h_lambda = h_poly(0, nvars);
        for &part in lambda.parts() {
            h_lambda = poly_mul(&h_lambda, &h_poly(part, nvars));
        }
        poly_add_scaled(&mut acc, &h_lambda, &c);
    }
    Ok(acc)
}

/// Verify the expansion identity for (n, k) in 2n variables. Returns the
/// number of basis partitions whose coefficient was exercised.
pub fn plethysm_check(n: u32, k: u32) -> Result<usize> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "plethysm check needs positive degree and power".into(),
        ));
    }
    let nvars = 2 * n as usize;
    let lhs = expand_h_of_powers(k, n, nvars);
    let rhs = expand_in_h_basis(k, n, nvars)?;
    if lhs != rhs {
        return Err(Error::InvalidArgument(format!(
            "h_{k}(x^{n}) expansion mismatch in {nvars} variables"
        )));
    }
    Ok(enumerate(n * k)?.len())
}
