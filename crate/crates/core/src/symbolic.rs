//! Exact linear combinations of monomials in gamma, log2, pi^2 and zeta
//! values, with coefficients in a pluggable base ring. Even zeta generators
//! are kept as zeta(2m) by default so rendered output matches the usual
//! notation; normalize_even_zetas rewrites them into powers of pi^2 when a
//! canonical pi-form is wanted. Structural equality decides identity of
//! closed forms within either convention.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde_json::json;

use crate::algebra::{Ring, RationalField};
use crate::error::{Error, Result};
use crate::rational::{even_zeta_over_pi_power, rat_int, render_rational, Rational};

/// Transcendental generators, ordered for canonical term layout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    EulerGamma,
    Log2,
    /// pi^2; a power p of this generator stands for pi^{2p}.
    PiSquared,
    /// zeta(m) for m >= 2, kept opaque regardless of parity.
    Zeta(u32),
}

/// A product of generator powers; the empty monomial is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    factors: BTreeMap<Generator, u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator, power: u32) -> Self {
        let mut factors = BTreeMap::new();
        if power > 0 {
            factors.insert(g, power);
        }
        Self { factors }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.factors.iter().map(|(&g, &p)| (g, p))
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.factors.contains_key(&g)
    }

    fn merged(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&g, &p) in &other.factors {
            *factors.entry(g).or_insert(0) += p;
        }
        Self { factors }
    }

    fn render(&self) -> String {
        self.factors
            .iter()
            .map(|(&g, &p)| match g {
                Generator::EulerGamma if p == 1 => "gamma".to_string(),
                Generator::EulerGamma => format!("gamma^{p}"),
                Generator::Log2 if p == 1 => "log2".to_string(),
                Generator::Log2 => format!("log2^{p}"),
                Generator::PiSquared => format!("pi^{}", 2 * p),
                Generator::Zeta(m) if p == 1 => format!("zeta({m})"),
                Generator::Zeta(m) => format!("zeta({m})^{p}"),
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// A finite sum of monomials with coefficients of type C; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Symbolic<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> Symbolic<C> {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_gamma_free(&self) -> bool {
        !self
            .terms
            .keys()
            .any(|m| m.contains(Generator::EulerGamma))
    }

    pub fn assert_gamma_free(&self) -> Result<()>
    where
        C: fmt::Debug,
    {
        match self
            .terms
            .iter()
            .find(|(m, _)| m.contains(Generator::EulerGamma))
        {
            None => Ok(()),
            Some((m, c)) => Err(Error::ResidualGamma(format!(
                "term {:?} * {} survived",
                c,
                m.render()
            ))),
        }
    }

    /// Rebuild with mapped coefficients, dropping zeros per the target ring.
    pub fn map_coeffs<R2: Ring>(
        &self,
        target: &R2,
        mut f: impl FnMut(&C) -> Result<R2::Elem>,
    ) -> Result<Symbolic<R2::Elem>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !target.is_zero(&v) {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Symbolic { terms })
    }
}

/// Sums of generator monomials over the base ring F.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicRing<F> {
    base: F,
}

impl<F: Ring> SymbolicRing<F> {
    pub fn new(base: F) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Symbolic<F::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(m, c);
        }
        Symbolic { terms }
    }

    pub fn scale(&self, a: &Symbolic<F::Elem>, c: &F::Elem) -> Symbolic<F::Elem> {
        if self.base.is_zero(c) {
            return self.zero();
        }
        let mut terms = BTreeMap::new();
        for (m, v) in &a.terms {
            let w = self.base.mul(v, c);
            if !self.base.is_zero(&w) {
                terms.insert(m.clone(), w);
            }
        }
        Symbolic { terms }
    }

    pub fn coefficient(&self, a: &Symbolic<F::Elem>, m: &Monomial) -> F::Elem {
        a.terms.get(m).cloned().unwrap_or_else(|| self.base.zero())
    }
}

impl<F: Ring> Ring for SymbolicRing<F> {
    type Elem = Symbolic<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Symbolic { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.term(Monomial::unit(), self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(slot) => {
                    let s = self.base.add(slot, c);
                    if self.base.is_zero(&s) {
                        terms.remove(m);
                    } else {
                        *slot = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Symbolic { terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Symbolic {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let t = self.term(ma.merged(mb), self.base.mul(ca, cb));
                out = self.add(&out, &t);
            }
        }
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.term(Monomial::unit(), self.base.from_rational(q))
    }

    fn div_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        Symbolic {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.div_int(c, n)))
                .collect(),
        }
    }
}

/// The workhorse instance: generator monomials with rational coefficients.
pub type SymbolicValue = Symbolic<Rational>;

pub fn sym_ring() -> SymbolicRing<RationalField> {
    SymbolicRing::new(RationalField)
}

pub fn sym_rat(q: Rational) -> SymbolicValue {
    sym_ring().term(Monomial::unit(), q)
}

pub fn sym_int(n: i64) -> SymbolicValue {
    sym_rat(rat_int(n))
}

pub fn log2_sym() -> SymbolicValue {
    sym_ring().term(Monomial::generator(Generator::Log2, 1), rat_int(1))
}

pub fn gamma_sym() -> SymbolicValue {
    sym_ring().term(Monomial::generator(Generator::EulerGamma, 1), rat_int(1))
}

/// pi^{2p} as a symbolic value.
pub fn pi_squared_pow(p: u32) -> SymbolicValue {
    sym_ring().term(Monomial::generator(Generator::PiSquared, p), rat_int(1))
}

/// zeta(m) as a generator, for any m >= 2.
pub fn zeta_sym(m: u32) -> Result<SymbolicValue> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta({m}) is not a generator"
        )));
    }
    Ok(sym_ring().term(Monomial::generator(Generator::Zeta(m), 1), rat_int(1)))
}

/// Rewrite every zeta(2h) factor as its rational multiple of pi^{2h}.
/// Odd zeta factors are untouched.
pub fn normalize_even_zetas(v: &SymbolicValue) -> Result<SymbolicValue> {
    let r = sym_ring();
    let mut out = r.zero();
    for (m, c) in v.terms() {
        let mut factors = BTreeMap::new();
        let mut coeff = c.clone();
        for (g, p) in m.factors() {
            match g {
                Generator::Zeta(arg) if arg % 2 == 0 => {
                    let half = arg / 2;
                    let scale = even_zeta_over_pi_power(half)?;
                    for _ in 0..p {
                        coeff *= &scale;
                    }
                    *factors.entry(Generator::PiSquared).or_insert(0) += half * p;
                }
                _ => {
                    *factors.entry(g).or_insert(0) += p;
                }
            }
        }
        out = r.add(&out, &r.term(Monomial { factors }, coeff));
    }
    Ok(out)
}

impl SymbolicValue {
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &rat_int(0);
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_is_one = mag.is_one();
            if m.is_unit() {
                out.push_str(&render_rational(&mag));
            } else if coeff_is_one {
                out.push_str(&m.render());
            } else {
                out.push_str(&render_rational(&mag));
                out.push_str(" * ");
                out.push_str(&m.render());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let monomial: Vec<serde_json::Value> = m
                    .factors()
                    .map(|(g, p)| match g {
                        Generator::EulerGamma => json!({"gen": "gamma", "power": p}),
                        Generator::Log2 => json!({"gen": "log2", "power": p}),
                        Generator::PiSquared => json!({"gen": "pi", "power": 2 * p}),
                        Generator::Zeta(m) => json!({"gen": "zeta", "m": m, "power": p}),
                    })
                    .collect();
                json!({"coefficient": render_rational(c), "monomial": monomial})
            })
            .collect();
        json!({"rendered": self.render(), "terms": terms})
    }

    /// Numeric value at a decimal precision between 10 and 100 digits.
    pub fn numeric_eval(&self, precision: u32) -> Result<crate::bigfloat::BigFloat> {
        if !(10..=100).contains(&precision) {
            return Err(Error::PrecisionRange(precision, 10, 100));
        }
        let bits = crate::constants::digits_to_bits(precision);
        self.eval_real(bits)
    }

    /// Numeric value at the given precision.
    pub fn eval_real(&self, bits: u32) -> Result<crate::bigfloat::BigFloat> {
        let work = bits + 16;
        let field = crate::bigfloat::RealField::new(work);
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_rational(c);
            for (g, p) in m.factors() {
                let base = match g {
                    Generator::EulerGamma => crate::constants::euler_gamma(work),
                    Generator::Log2 => crate::constants::log2(work),
                    Generator::PiSquared => {
                        let pi = crate::constants::pi(work);
                        field.mul(&pi, &pi)
                    }
                    Generator::Zeta(m) => crate::constants::zeta_int(m, work)?,
                };
                t = field.mul(&t, &crate::algebra::ring_pow(&field, &base, p as u64));
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc.with_bits(bits))
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
