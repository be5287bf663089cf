//! Truncated power series over any coefficient ring: dense coefficients for
//! exponents 0..=order, with exp and log defined by the usual coefficient
//! recurrences. Orders must match across binary operations; there is no
//! silent truncation.
//!
//! Also home to the log Gamma expansions that seed the generating functions:
//! log Gamma(1 - cx) = gamma c x + sum_{m>=2} zeta(m) c^m x^m / m, and its
//! shift log[Gamma(a - cx)/Gamma(a)] = -psi(a) c x + sum_{j>=2} zeta(j,a)
//! c^j x^j / j, exactly over the symbolic ring for a in {1, 1/2} and
//! numerically for any rational a > 0.

use crate::algebra::Ring;
use crate::bigfloat::{BigComplex, ComplexField};
use crate::constants;
use crate::error::{Error, Result};
use crate::rational::{pow2, rat, rat_int, Rational};
use crate::symbolic::{Generator, Monomial, SymbolicRing};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring + Clone> TruncatedSeries<R> {
    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = (0..=order).map(|_| ring.zero()).collect();
        Self { ring, coeffs }
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        s
    }

    pub fn monomial(ring: R, order: usize, m: usize, c: R::Elem) -> Self {
        assert!(m <= order, "monomial degree beyond truncation order");
        let mut s = Self::zero(ring, order);
        s.coeffs[m] = c;
        s
    }

    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant");
        Self { ring, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Highest retained exponent.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &R::Elem {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, c: R::Elem) {
        self.coeffs[m] = c;
    }

    /// Drop coefficients above new_order. Extension is not allowed; growing a
    /// series would silently invent zero coefficients that were never computed.
    pub fn truncate(&self, new_order: usize) -> Result<Self> {
        if new_order > self.order() {
            return Err(Error::OrderMismatch(self.order(), new_order));
        }
        Ok(Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=new_order].to_vec(),
        })
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Self { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Self { ring: self.ring.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| self.ring.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.coeffs.len();
        let mut out = vec![self.ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !self.ring.is_zero(b) {
                    let t = self.ring.mul(a, b);
                    self.ring.add_assign(&mut out[i + j], &t);
                }
            }
        }
        Ok(Self { ring: self.ring.clone(), coeffs: out })
    }

    /// exp of a series with zero constant term:
    /// b_0 = 1, m b_m = sum_{j=1..m} j a_j b_{m-j}.
    pub fn exp(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(Error::InvalidArgument(
                "series exp needs a vanishing constant term".into(),
            ));
        }
        let n = self.coeffs.len();
        let mut b = vec![self.ring.zero(); n];
        b[0] = self.ring.one();
        for m in 1..n {
            let mut acc = self.ring.zero();
            for j in 1..=m {
                if self.ring.is_zero(&self.coeffs[j]) {
                    continue;
                }
                let ja = self.ring.mul(&self.ring.from_i64(j as i64), &self.coeffs[j]);
                let t = self.ring.mul(&ja, &b[m - j]);
                self.ring.add_assign(&mut acc, &t);
            }
            b[m] = self.ring.div_int(&acc, m as i64);
        }
        Ok(Self { ring: self.ring.clone(), coeffs: b })
    }

    /// log of a series with unit constant term:
    /// c_m = a_m - (1/m) sum_{j=1..m-1} j c_j a_{m-j}.
    pub fn log(&self) -> Result<Self> {
        let lead = self.ring.sub(&self.coeffs[0], &self.ring.one());
        if !self.ring.is_zero(&lead) {
            return Err(Error::InvalidArgument(
                "series log needs a unit constant term".into(),
            ));
        }
        let n = self.coeffs.len();
        let mut c = vec![self.ring.zero(); n];
        for m in 1..n {
            let mut acc = self.ring.zero();
            for j in 1..m {
                if self.ring.is_zero(&c[j]) || self.ring.is_zero(&self.coeffs[m - j]) {
                    continue;
                }
                let jc = self.ring.mul(&self.ring.from_i64(j as i64), &c[j]);
                let t = self.ring.mul(&jc, &self.coeffs[m - j]);
                self.ring.add_assign(&mut acc, &t);
            }
            c[m] = self.ring.sub(&self.coeffs[m], &self.ring.div_int(&acc, m as i64));
        }
        Ok(Self { ring: self.ring.clone(), coeffs: c })
    }
}

/// Series over the symbolic ring with scalar coefficients in F.
pub type SymbolicSeries<F> = TruncatedSeries<SymbolicRing<F>>;

/// log Gamma(1 - cx) up to the given order, over any scalar ring F that
/// holds c. The degree-1 coefficient is gamma * c; degree m >= 2 carries
/// zeta(m) c^m / m.
pub fn log_gamma_one_minus<F: Ring + Clone>(
    ring: &SymbolicRing<F>,
    c: &F::Elem,
    order: usize,
) -> SymbolicSeries<F> {
    let base = ring.base().clone();
    let mut s = TruncatedSeries::zero(ring.clone(), order);
    if order >= 1 {
        s.set_coeff(
            1,
            ring.term(Monomial::generator(Generator::EulerGamma, 1), c.clone()),
        );
    }
    let mut cpow = c.clone();
    for m in 2..=order {
        cpow = base.mul(&cpow, c);
        let coeff = base.div_int(&cpow, m as i64);
        s.set_coeff(
            m,
            ring.term(Monomial::generator(Generator::Zeta(m as u32), 1), coeff),
        );
    }
    s
}

/// log[Gamma(a - cx) / Gamma(a)] exactly, for a = 1 or a = 1/2. At 1/2 the
/// Hurwitz values collapse: psi(1/2) = -gamma - 2 log 2 and
/// zeta(j, 1/2) = (2^j - 1) zeta(j).
pub fn log_gamma_at_exact<F: Ring + Clone>(
    ring: &SymbolicRing<F>,
    a: &Rational,
    c: &F::Elem,
    order: usize,
) -> Result<SymbolicSeries<F>> {
    if *a == rat_int(1) {
        return Ok(log_gamma_one_minus(ring, c, order));
    }
    if *a != rat(1, 2) {
        return Err(Error::ExactModeUnsupported(format!(
            "log Gamma expansion around {a} needs numeric Hurwitz values"
        )));
    }
    let base = ring.base().clone();
    let mut s = TruncatedSeries::zero(ring.clone(), order);
    if order >= 1 {
        let gamma = ring.term(Monomial::generator(Generator::EulerGamma, 1), c.clone());
        let two_c = base.add(c, c);
        let log2 = ring.term(Monomial::generator(Generator::Log2, 1), two_c);
        s.set_coeff(1, ring.add(&gamma, &log2));
    }
    let mut cpow = c.clone();
    for j in 2..=order {
        cpow = base.mul(&cpow, c);
        let scale = base.from_rational(&(pow2(j as i64) - rat_int(1)));
        let coeff = base.div_int(&base.mul(&cpow, &scale), j as i64);
        s.set_coeff(
            j,
            ring.term(Monomial::generator(Generator::Zeta(j as u32), 1), coeff),
        );
    }
    Ok(s)
}

/// log[Gamma(a - cx) / Gamma(a)] numerically for any rational a > 0, with
/// polygamma data taken from the Hurwitz zeta evaluator.
pub fn log_gamma_at_numeric(
    field: &ComplexField,
    a: &Rational,
    c: &BigComplex,
    order: usize,
) -> Result<TruncatedSeries<ComplexField>> {
    let bits = field.bits();
    let mut s = TruncatedSeries::zero(*field, order);
    if order >= 1 {
        let psi = constants::digamma(a, bits)?;
        s.set_coeff(1, field.neg(&field.mul_real(c, &psi)));
    }
    let mut cpow = c.clone();
    for j in 2..=order {
        cpow = field.mul(&cpow, c);
        let z = constants::hurwitz_zeta(j as u32, a, bits)?;
        s.set_coeff(j, field.div_int(&field.mul_real(&cpow, &z), j as i64));
    }
    Ok(s)
}

/// Map a series of symbolic coefficients through a coefficient converter,
/// e.g. cyclotomic scalars down to rationals once root sums have collapsed.
pub fn map_series_coeffs<F: Ring + Clone, R2: Ring + Clone>(
    series: &TruncatedSeries<SymbolicRing<F>>,
    target: &SymbolicRing<R2>,
    mut f: impl FnMut(&F::Elem) -> Result<R2::Elem>,
) -> Result<TruncatedSeries<SymbolicRing<R2>>> {
    let coeffs = series
        .coeffs()
        .iter()
        .map(|sym| sym.map_coeffs(target.base(), &mut f))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(target.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalField;
    use crate::rational::{factorial, rat, rat_int, Rational};
    use proptest::prelude::*;

    type QSeries = TruncatedSeries<RationalField>;

    fn series(coeffs: Vec<Rational>) -> QSeries {
        QSeries::from_coeffs(RationalField, coeffs)
    }

    #[test]
    fn truncated_product() {
        let one_plus = series(vec![rat_int(1), rat_int(1), rat_int(0)]);
        let one_minus = series(vec![rat_int(1), rat_int(-1), rat_int(0)]);
        let p = one_plus.mul(&one_minus).unwrap();
        assert_eq!(p.coeffs(), &[rat_int(1), rat_int(0), rat_int(-1)]);
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = QSeries::one(RationalField, 3);
        let b = QSeries::one(RationalField, 4);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(3, 4))));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn exp_of_x_is_factorials() {
        let x = QSeries::monomial(RationalField, 8, 1, rat_int(1));
        let e = x.exp().unwrap();
        for m in 0..=8u32 {
            let expect = Rational::from_integer(factorial(m)).recip();
            assert_eq!(e.coeff(m as usize), &expect, "m = {m}");
        }
    }

    #[test]
    fn log_of_geometric_is_harmonic() {
        let geom = series((0..=9).map(|_| rat_int(1)).collect());
        let l = geom.log().unwrap();
        assert_eq!(l.coeff(0), &rat_int(0));
        for m in 1..=9 {
            assert_eq!(l.coeff(m), &rat(1, m as i64), "m = {m}");
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = series(vec![rat_int(1), rat_int(1)]);
        assert!(s.exp().is_err());
        let s = series(vec![rat_int(0), rat_int(1)]);
        assert!(s.log().is_err());
    }

    /// Independent oracle: for f with f(0) = 0 truncated at order d, exp(f)
    /// agrees with the nilpotent expansion sum_{i<=d} f^i / i!.
    fn exp_by_powers(f: &QSeries) -> QSeries {
        let d = f.order();
        let ring = RationalField;
        let mut acc = QSeries::one(ring, d);
        let mut fpow = QSeries::one(ring, d);
        for i in 1..=d as u32 {
            fpow = fpow.mul(f).unwrap();
            let term = fpow.scale(&Rational::from_integer(factorial(i)).recip());
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    fn small_series(order: usize) -> impl Strategy<Value = QSeries> {
        proptest::collection::vec((-8i64..=8, 1i64..=6), order)
            .prop_map(move |tail| {
                let mut coeffs = vec![rat_int(0)];
                coeffs.extend(tail.into_iter().map(|(n, d)| rat(n, d)));
                series(coeffs)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exp_matches_nilpotent_oracle(f in small_series(7)) {
            prop_assert_eq!(f.exp().unwrap(), exp_by_powers(&f));
        }

        #[test]
        fn log_inverts_exp(f in small_series(8)) {
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
        }

        #[test]
        fn exp_inverts_log(f in small_series(8)) {
            // 1 + tail has unit constant term
            let mut g = f.clone();
            g.set_coeff(0, rat_int(1));
            prop_assert_eq!(g.log().unwrap().exp().unwrap(), g);
        }

        #[test]
        fn exp_is_additive(f in small_series(6), g in small_series(6)) {
            let lhs = f.add(&g).unwrap().exp().unwrap();
            let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn truncate_drops_high_coefficients() {
        let s = series(vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4)]);
        let t = s.truncate(1).unwrap();
        assert_eq!(t.coeffs(), &[rat_int(1), rat_int(2)]);
        assert!(s.truncate(5).is_err());
    }

    mod log_gamma {
        use super::*;
        use crate::bigfloat::{BigComplex, BigFloat, ComplexField, RealField};
        use crate::constants::digits_to_bits;
        use crate::symbolic::{sym_ring, zeta_sym, Generator, Monomial, SymbolicValue};

        fn sym_coeff(v: &SymbolicValue, g: Generator, p: u32) -> Rational {
            sym_ring().coefficient(v, &Monomial::generator(g, p))
        }

        #[test]
        fn zero_scalar_gives_zero_series() {
            let r = sym_ring();
            let s = log_gamma_one_minus(&r, &rat_int(0), 5);
            assert!(s.coeffs().iter().all(|c| r.is_zero(c)));
        }

        #[test]
        fn duplication_combination_is_gamma_free() {
            // 2 log Gamma(1 - x/2) - log Gamma(1 - x): the linear gamma terms
            // cancel (2 * 1/2 - 1 = 0) and degree m keeps (2^{1-m} - 1)
            // zeta(m) / m.
            let r = sym_ring();
            let half = log_gamma_one_minus(&r, &rat(1, 2), 3);
            let whole = log_gamma_one_minus(&r, &rat_int(1), 3);
            let combo = half.scale(&r.from_i64(2)).sub(&whole).unwrap();
            assert!(r.is_zero(combo.coeff(1)));
            assert_eq!(
                combo.coeff(2),
                &r.scale(&zeta_sym(2).unwrap(), &rat(-1, 4))
            );
            assert_eq!(
                combo.coeff(3),
                &r.scale(&zeta_sym(3).unwrap(), &rat(-1, 4))
            );
            for c in combo.coeffs() {
                c.assert_gamma_free().unwrap();
            }
        }

        #[test]
        fn at_one_reduces_to_one_minus() {
            let r = sym_ring();
            let a = log_gamma_at_exact(&r, &rat_int(1), &rat(2, 3), 6).unwrap();
            let b = log_gamma_one_minus(&r, &rat(2, 3), 6);
            assert_eq!(a, b);
        }

        #[test]
        fn at_half_linear_coefficient() {
            let r = sym_ring();
            let c = rat(3, 5);
            let s = log_gamma_at_exact(&r, &rat(1, 2), &c, 4).unwrap();
            assert_eq!(sym_coeff(s.coeff(1), Generator::EulerGamma, 1), c);
            assert_eq!(
                sym_coeff(s.coeff(1), Generator::Log2, 1),
                rat(6, 5)
            );
            // zeta(j, 1/2) = (2^j - 1) zeta(j)
            assert_eq!(
                sym_coeff(s.coeff(2), Generator::Zeta(2), 1),
                rat(3, 2) * c.clone() * c.clone()
            );
            assert!(log_gamma_at_exact(&r, &rat(1, 3), &c, 4).is_err());
        }

        #[test]
        fn numeric_degree_two_is_half_zeta_two() {
            let field = ComplexField::new(digits_to_bits(30));
            let one = field.from_real(&BigFloat::from_i64(1, field.bits()));
            let s = log_gamma_at_numeric(&field, &rat_int(1), &one, 2).unwrap();
            let got = s.coeff(2).re.to_f64();
            assert!((got - 0.822467033424113218).abs() < 1e-12);
            assert!(s.coeff(2).im.is_zero());
        }

        #[test]
        fn numeric_linear_term_is_minus_digamma() {
            let field = ComplexField::new(digits_to_bits(30));
            let c = field.from_real(&BigFloat::from_i64(1, field.bits()));
            let s = log_gamma_at_numeric(&field, &rat(1, 3), &c, 1).unwrap();
            // psi(1/3) = -gamma - 3 log(3)/2 - pi/(2 sqrt(3)) ~ -3.13203378
            let got = s.coeff(1).re.to_f64();
            assert!((got - 3.1320337800208065).abs() < 1e-10, "got {got}");
        }

        #[test]
        fn exact_mode_matches_numeric_mode() {
            // coefficient-wise numeric evaluation of the exact series against
            // the numeric series, a in {1, 1/2}, complex-free scalar c
            let digits = 30u32;
            let bits = digits_to_bits(digits);
            let field = ComplexField::new(bits);
            let real = RealField::new(bits);
            let r = sym_ring();
            for a in [rat_int(1), rat(1, 2)] {
                for c in [rat(1, 2), rat_int(-2), rat(7, 4)] {
                    let exact = log_gamma_at_exact(&r, &a, &c, 10).unwrap();
                    let numeric = log_gamma_at_numeric(
                        &field,
                        &a,
                        &field.from_real(&BigFloat::from_rational(&c, bits)),
                        10,
                    )
                    .unwrap();
                    for m in 0..=10 {
                        let ex = exact.coeff(m).eval_real(bits).unwrap();
                        let nu: &BigComplex = numeric.coeff(m);
                        let gap = real.sub(&ex, &nu.re).abs().to_f64();
                        assert!(gap < 1e-22, "a={a} c={c} m={m} gap={gap}");
                        assert!(nu.im.is_zero());
                    }
                }
            }
        }
    }
}
