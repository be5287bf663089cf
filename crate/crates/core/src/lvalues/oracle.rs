//! Truncated-sum evaluation straight from the defining series. The
//! non-strict sum runs a prefix-sum dynamic program in O(k T) ring
//! operations; strict sums (distinct indices with multiplicities) use the
//! same idea with the divisibility constraint folded in. All identities
//! between these sums hold exactly at every finite truncation, which is what
//! the lemma checks exploit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Ring;
use crate::bigfloat::{BigComplex, BigFloat, ComplexField, RealField};
use crate::constants::{digits_to_bits, root_of_unity};
use crate::error::{Error, Result};
use crate::partitions::{distinct_permutations, enumerate, scale, Composition, Partition};
use crate::rational::Rational;

use super::{Convergence, LValueSpec};

/// Guard bits on top of the requested output precision; they absorb the
/// rounding of ~T additions.
const ORACLE_GUARD_BITS: u32 = 24;

pub(crate) fn gate_precision(precision: u32) -> Result<u32> {
    if !(10..=100).contains(&precision) {
        return Err(Error::PrecisionRange(precision, 10, 100));
    }
    Ok(digits_to_bits(precision))
}

fn gate_truncation(t: u64) -> Result<()> {
    if t < 10 {
        return Err(Error::InvalidArgument(format!(
            "truncation {t} is below the minimum of 10"
        )));
    }
    Ok(())
}

/// A truncated evaluation: the value, a T/2-vs-T error estimate, and whether
/// the tail was window-averaged.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: BigComplex,
    pub error_estimate: BigFloat,
    pub averaged: bool,
}

impl OracleResult {
    pub fn real_part(&self) -> &BigFloat {
        &self.value.re
    }
}

struct DpAnswers<E> {
    full: E,
    half: E,
}

/// Prefix-sum DP for the non-strict sum over i_1 <= ... <= i_k <= t.
/// factor(i, n) supplies w^i / i^n; window > 1 averages the outermost
/// partial sums over that many consecutive truncation points.
fn prefix_dp<R: Ring + Clone>(
    ring: &R,
    weights: &[u32],
    repeat_modulus: u64,
    t: u64,
    window: usize,
    mut factor: impl FnMut(u64, u32) -> R::Elem,
) -> DpAnswers<R::Elem> {
    let k = weights.len();
    debug_assert!(k >= 1);
    let half_point = t / 2;
    let mut p: Vec<R::Elem> = vec![ring.zero(); k + 1];
    p[0] = ring.one();
    let mut b: Vec<R::Elem> = vec![ring.zero(); k + 1];
    let mut tail: Vec<R::Elem> = Vec::with_capacity(window);
    let mut cache: Vec<(u32, R::Elem)> = Vec::with_capacity(k);
    let mut half = ring.zero();

    let answer = |p_k: &R::Elem, tail: &[R::Elem]| -> R::Elem {
        if window <= 1 || tail.is_empty() {
            return p_k.clone();
        }
        let mut acc = ring.zero();
        for v in tail {
            acc = ring.add(&acc, v);
        }
        ring.div_int(&acc, tail.len() as i64)
    };

    for i in 1..=t {
        let repeat_ok = i % repeat_modulus == 0;
        cache.clear();
        for j in 1..=k {
            let n = weights[j - 1];
            let f = match cache.iter().find(|(w, _)| *w == n) {
                Some((_, v)) => v.clone(),
                None => {
                    let v = factor(i, n);
                    cache.push((n, v.clone()));
                    v
                }
            };
            let s = if repeat_ok {
                ring.add(&p[j - 1], &b[j - 1])
            } else {
                p[j - 1].clone()
            };
            b[j] = ring.mul(&f, &s);
        }
        for j in 1..=k {
            ring.add_assign(&mut p[j], &b[j]);
        }
        if window > 1 {
            if tail.len() == window {
                tail.remove(0);
            }
            tail.push(p[k].clone());
        }
        if i == half_point {
            half = answer(&p[k], &tail);
        }
    }
    DpAnswers { full: answer(&p[k], &tail), half }
}

fn oracle_real(spec: &LValueSpec, t: u64, bits: u32, window: usize) -> DpAnswers<BigFloat> {
    let f = RealField::new(bits);
    let alternating = spec.root_order() == 2;
    prefix_dp(
        &f,
        spec.weights(),
        spec.repeat_modulus() as u64,
        t,
        window,
        |i, n| {
            let v = f.inv_int_pow(i, n);
            if alternating && i % 2 == 1 {
                f.neg(&v)
            } else {
                v
            }
        },
    )
}

fn oracle_complex(spec: &LValueSpec, t: u64, bits: u32, window: usize) -> DpAnswers<BigComplex> {
    let cf = ComplexField::new(bits);
    let rf = RealField::new(bits);
    let m = spec.root_order();
    let roots: Vec<BigComplex> = (0..m).map(|e| root_of_unity(m, e as i64, bits)).collect();
    prefix_dp(
        &cf,
        spec.weights(),
        spec.repeat_modulus() as u64,
        t,
        window,
        |i, n| cf.mul_real(&roots[(i % m as u64) as usize], &rf.inv_int_pow(i, n)),
    )
}

/// Evaluate the defining sum truncated at t, at the given decimal precision.
/// Conditionally convergent tuples (a weight equal to 1) are averaged over a
/// window of root-order many truncation points; the error estimate compares
/// the answers at t/2 and t.
pub fn oracle_eval(spec: &LValueSpec, truncation: u64, precision: u32) -> Result<OracleResult> {
    let out_bits = gate_precision(precision)?;
    gate_truncation(truncation)?;
    let bits = out_bits + ORACLE_GUARD_BITS;
    if spec.k() == 0 {
        return Ok(OracleResult {
            value: BigComplex::from_real(BigFloat::from_i64(1, out_bits)),
            error_estimate: BigFloat::zero(out_bits),
            averaged: false,
        });
    }
    let averaged = spec.convergence() == Convergence::Conditional;
    let window = if averaged { spec.root_order() as usize } else { 1 };

    if spec.root_order() <= 2 {
        let out = oracle_real(spec, truncation, bits, window);
        let f = RealField::new(bits);
        let err = f.sub(&out.full, &out.half).abs();
        Ok(OracleResult {
            value: BigComplex::from_real(out.full.with_bits(out_bits)),
            error_estimate: err.with_bits(out_bits),
            averaged,
        })
    } else {
        let out = oracle_complex(spec, truncation, bits, window);
        let cf = ComplexField::new(bits);
        let err = cf.abs(&cf.sub(&out.full, &out.half));
        Ok(OracleResult {
            value: BigComplex {
                re: out.full.re.with_bits(out_bits),
                im: out.full.im.with_bits(out_bits),
            },
            error_estimate: err.with_bits(out_bits),
            averaged,
        })
    }
}

/// Plain partial sum at exactly t: no averaging, no trimming. The strict-sum
/// decompositions are exact identities of these prefix values, so the lemma
/// checks need this entry point rather than the smoothed one.
pub fn oracle_eval_raw(spec: &LValueSpec, t: u64, bits: u32) -> Result<BigComplex> {
    gate_truncation(t)?;
    if spec.k() == 0 {
        return Ok(BigComplex::from_real(BigFloat::from_i64(1, bits)));
    }
    if spec.root_order() <= 2 {
        Ok(BigComplex::from_real(oracle_real(spec, t, bits, 1).full))
    } else {
        Ok(oracle_complex(spec, t, bits, 1).full)
    }
}

/// Strict sum over j_1 < ... < j_l <= t with block multiplicities r: index
/// j_i contributes w^{r_i j_i} / j_i^{n r_i}, and r_i > 1 forces the repeat
/// modulus to divide j_i.
pub(crate) fn strict_sum_bits(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    mults: &[u32],
    t: u64,
    bits: u32,
) -> BigComplex {
    let cf = ComplexField::new(bits);
    let rf = RealField::new(bits);
    let l = mults.len();
    if l == 0 {
        return cf.one();
    }
    let m = root_order as u64;
    let roots: Vec<BigComplex> = (0..root_order)
        .map(|e| root_of_unity(root_order, e as i64, bits))
        .collect();
    let n_mod = repeat_modulus as u64;
    let mut q: Vec<BigComplex> = vec![cf.zero(); l + 1];
    q[0] = cf.one();
    let mut a: Vec<BigComplex> = vec![cf.zero(); l + 1];
    for i in 1..=t {
        let repeat_ok = i % n_mod == 0;
        for j in 1..=l {
            let r_j = mults[j - 1];
            if r_j > 1 && !repeat_ok {
                a[j] = cf.zero();
                continue;
            }
            let mag = rf.inv_int_pow(i, weight * r_j);
            let root = &roots[((r_j as u64 * i) % m) as usize];
            a[j] = cf.mul(&cf.mul_real(root, &mag), &q[j - 1]);
        }
        for j in 1..=l {
            cf.add_assign(&mut q[j], &a[j]);
        }
    }
    q[l].clone()
}

/// Public gated form of the strict sum.
pub fn strict_sum_oracle(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    mults: &Composition,
    truncation: u64,
    precision: u32,
) -> Result<BigComplex> {
    let out_bits = gate_precision(precision)?;
    gate_truncation(truncation)?;
    if repeat_modulus == 0 || root_order == 0 || weight == 0 {
        return Err(Error::InvalidArgument(
            "modulus, root order and weight are positive".into(),
        ));
    }
    let v = strict_sum_bits(
        repeat_modulus,
        root_order,
        weight,
        mults.entries(),
        truncation,
        out_bits + ORACLE_GUARD_BITS,
    );
    Ok(BigComplex { re: v.re.with_bits(out_bits), im: v.im.with_bits(out_bits) })
}

/// S(n; lambda) at finite truncation: the strict sums over every distinct
/// rearrangement of lambda's parts as the multiplicity word.
pub(crate) fn rearrangement_sum_bits(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    lambda: &Partition,
    t: u64,
    bits: u32,
) -> Result<BigComplex> {
    let cf = ComplexField::new(bits);
    let mut acc = cf.zero();
    for word in distinct_permutations(lambda)? {
        let v = strict_sum_bits(repeat_modulus, root_order, weight, word.entries(), t, bits);
        acc = cf.add(&acc, &v);
    }
    Ok(acc)
}

/// Public gated form of S(n; lambda).
pub fn sum_over_rearrangements(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    lambda: &Partition,
    truncation: u64,
    precision: u32,
) -> Result<BigComplex> {
    let out_bits = gate_precision(precision)?;
    gate_truncation(truncation)?;
    let v = rearrangement_sum_bits(
        repeat_modulus,
        root_order,
        weight,
        lambda,
        truncation,
        out_bits + ORACLE_GUARD_BITS,
    )?;
    Ok(BigComplex { re: v.re.with_bits(out_bits), im: v.im.with_bits(out_bits) })
}

pub(crate) fn u_d_bits(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    d: u32,
    t: u64,
    bits: u32,
) -> Result<BigComplex> {
    let cf = ComplexField::new(bits);
    let mut acc = cf.zero();
    for mu in enumerate(d)? {
        let doubled = scale(&mu, 2);
        let v = rearrangement_sum_bits(repeat_modulus, root_order, weight, &doubled, t, bits)?;
        acc = cf.add(&acc, &v);
    }
    Ok(acc)
}

/// U_d(n) = sum over mu |- d of S(n; 2 mu), by strict sums.
pub fn u_d_oracle(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    d: u32,
    truncation: u64,
    precision: u32,
) -> Result<BigComplex> {
    let out_bits = gate_precision(precision)?;
    gate_truncation(truncation)?;
    let v = u_d_bits(
        repeat_modulus,
        root_order,
        weight,
        d,
        truncation,
        out_bits + ORACLE_GUARD_BITS,
    )?;
    Ok(BigComplex { re: v.re.with_bits(out_bits), im: v.im.with_bits(out_bits) })
}

pub(crate) fn u_d_specialized_bits(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    d: u32,
    t: u64,
    bits: u32,
) -> BigComplex {
    let cf = ComplexField::new(bits);
    let rf = RealField::new(bits);
    let m = root_order as u64;
    let roots: Vec<BigComplex> = (0..root_order)
        .map(|e| root_of_unity(root_order, e as i64, bits))
        .collect();
    let n_mod = repeat_modulus as u64;
    // complete homogeneous h_d in the variables x_j = w^{2 j N} / (j N)^{2n},
    // one variable per multiple of the modulus up to t
    let mut h: Vec<BigComplex> = vec![cf.zero(); d as usize + 1];
    h[0] = cf.one();
    let mut j = n_mod;
    while j <= t {
        let mag = rf.inv_int_pow(j, 2 * weight);
        let x = cf.mul_real(&roots[((2 * j) % m) as usize], &mag);
        for level in 1..=d as usize {
            let t_add = cf.mul(&x, &h[level - 1]);
            cf.add_assign(&mut h[level], &t_add);
        }
        j += n_mod;
    }
    h[d as usize].clone()
}

/// Second route to U_d(n): the complete-homogeneous specialization
/// h_d(x_1, x_2, ...) with x_j = w^{2jN} / (jN)^{2n}. Agrees with
/// [`u_d_oracle`] exactly at every truncation.
pub fn u_d_specialized(
    repeat_modulus: u32,
    root_order: u32,
    weight: u32,
    d: u32,
    truncation: u64,
    precision: u32,
) -> Result<BigComplex> {
    let out_bits = gate_precision(precision)?;
    gate_truncation(truncation)?;
    let v = u_d_specialized_bits(
        repeat_modulus,
        root_order,
        weight,
        d,
        truncation,
        out_bits + ORACLE_GUARD_BITS,
    );
    Ok(BigComplex { re: v.re.with_bits(out_bits), im: v.im.with_bits(out_bits) })
}

const FINITE_PARTIAL_DEPTH_GUARD: u64 = 6;
const FINITE_PARTIAL_RANGE_GUARD: u64 = 100_000;

/// Exact finite partial sums with N = M = 2 and all weights 2: the sum over
/// 1 <= i_1 <= ... <= i_k <= 2p of (-1)^{i_1+...+i_k} / (i_1 ... i_k)^2 with
/// the repeat rule, for every depth 1..=k_max at once.
///
/// The DP runs over scaled integers: a depth-j value is an integer times
/// L^{-2j} for L = lcm(1..2p), so the only divisions are the exact L^2 / i^2
/// and one normalization per depth at the end.
pub fn finite_partial_s2_all(k_max: u64, p: u64) -> Result<Vec<Rational>> {
    if k_max == 0 || k_max > FINITE_PARTIAL_DEPTH_GUARD {
        return Err(Error::Capacity {
            what: "finite partial sum depth",
            requested: k_max,
            limit: FINITE_PARTIAL_DEPTH_GUARD,
        });
    }
    if p == 0 || p > FINITE_PARTIAL_RANGE_GUARD {
        return Err(Error::Capacity {
            what: "finite partial sum range",
            requested: p,
            limit: FINITE_PARTIAL_RANGE_GUARD,
        });
    }
    let t = 2 * p;
    let k = k_max as usize;
    let mut l = BigInt::one();
    for i in 2..=t {
        l = l.lcm(&BigInt::from(i));
    }
    let l2 = &l * &l;

    let mut prefix: Vec<BigInt> = vec![BigInt::zero(); k + 1];
    prefix[0] = BigInt::one();
    let mut b: Vec<BigInt> = vec![BigInt::zero(); k + 1];
    for i in 1..=t {
        let q = &l2 / BigInt::from(i * i);
        let even = i % 2 == 0;
        for j in 1..=k {
            let mut s = prefix[j - 1].clone();
            if even {
                s += &b[j - 1];
            }
            let mut v = &q * &s;
            if !even {
                v = -v;
            }
            b[j] = v;
        }
        for j in 1..=k {
            prefix[j] += &b[j];
        }
    }

    let mut den = BigInt::one();
    let mut out = Vec::with_capacity(k);
    for p_j in prefix.into_iter().skip(1) {
        den *= &l2;
        out.push(Rational::new(p_j, den.clone()));
    }
    Ok(out)
}

/// The depth-k finite partial sum; see [`finite_partial_s2_all`].
pub fn finite_partial_s2(k: u64, p: u64) -> Result<Rational> {
    Ok(finite_partial_s2_all(k, p)?.pop().expect("depth >= 1"))
}
