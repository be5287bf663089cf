//! Fixed-point big reals and complexes: a value is mant / 2^bits with an
//! exact BigInt mantissa. All operands of a field operation must carry the
//! same `bits`; rounding is to nearest on every multiply and divide, so
//! errors stay within a few ulps per operation and guard bits absorb them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::Ring;
use crate::rational::Rational;

/// Rounded integer division, ties away from zero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (&r * 2i32).abs() >= d.abs() {
        let bump: i32 = if (n.sign() == d.sign()) || r.is_zero() { 1 } else { -1 };
        q + bump
    } else {
        q
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigFloat {
    mant: BigInt,
    bits: u32,
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        Self { mant: BigInt::zero(), bits }
    }

    pub fn from_bigint(n: BigInt, bits: u32) -> Self {
        Self { mant: n << bits, bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Self::from_bigint(BigInt::from(n), bits)
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let mant = div_round(&(q.numer() << bits), q.denom());
        Self { mant, bits }
    }

    /// Raw mantissa; the value is mant / 2^bits.
    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Self { mant, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), bits: self.bits }
    }

    /// Exact value comparison; the operands may differ in precision.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let a = &self.mant << other.bits;
        let b = &other.mant << self.bits;
        a.cmp(&b)
    }

    /// Re-round to a different precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits >= self.bits {
            Self { mant: &self.mant << (bits - self.bits), bits }
        } else {
            let down = self.bits - bits;
            Self {
                mant: div_round(&self.mant, &(BigInt::from(1) << down)),
                bits,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bl = self.mant.bits();
        if bl == 0 {
            return 0.0;
        }
        let shift = bl.saturating_sub(53);
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// Decimal rendering with the given number of fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let pow10 = BigInt::from(10u32).pow(digits);
        let scaled = div_round(&(&self.mant * &pow10), &(BigInt::from(1) << self.bits));
        let neg = scaled.is_negative();
        let mut s = scaled.abs().to_string();
        if digits == 0 {
            return format!("{}{}", if neg { "-" } else { "" }, s);
        }
        let d = digits as usize;
        if s.len() <= d {
            s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
        }
        let point = s.len() - d;
        format!("{}{}.{}", if neg { "-" } else { "" }, &s[..point], &s[point..])
    }
}

/// Reals at a fixed precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealField {
    bits: u32,
}

impl RealField {
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 8, "unusably low precision");
        Self { bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn check(&self, a: &BigFloat) {
        debug_assert_eq!(a.bits, self.bits, "mixed-precision operands");
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.check(a);
        self.check(b);
        assert!(!b.is_zero(), "division by zero");
        BigFloat {
            mant: div_round(&(&a.mant << self.bits), &b.mant),
            bits: self.bits,
        }
    }

    pub fn recip(&self, a: &BigFloat) -> BigFloat {
        self.div(&self.one(), a)
    }

    /// a * 2^e.
    pub fn scale_pow2(&self, a: &BigFloat, e: i32) -> BigFloat {
        self.check(a);
        if e >= 0 {
            BigFloat { mant: &a.mant << e as u32, bits: self.bits }
        } else {
            BigFloat {
                mant: div_round(&a.mant, &(BigInt::from(1) << (-e) as u32)),
                bits: self.bits,
            }
        }
    }

    /// Nonnegative square root.
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        self.check(a);
        assert!(!a.mant.is_negative(), "sqrt of negative value");
        BigFloat {
            mant: (&a.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    /// 1 / i^n, one rounded division.
    pub fn inv_int_pow(&self, i: u64, n: u32) -> BigFloat {
        assert!(i > 0);
        let den = BigInt::from(i).pow(n);
        BigFloat {
            mant: div_round(&(BigInt::from(1) << self.bits), &den),
            bits: self.bits,
        }
    }
}

impl Ring for RealField {
    type Elem = BigFloat;

    fn zero(&self) -> BigFloat {
        BigFloat::zero(self.bits)
    }

    fn one(&self) -> BigFloat {
        BigFloat::from_i64(1, self.bits)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.check(a);
        self.check(b);
        BigFloat { mant: &a.mant + &b.mant, bits: self.bits }
    }

    fn neg(&self, a: &BigFloat) -> BigFloat {
        BigFloat { mant: -&a.mant, bits: self.bits }
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        self.check(a);
        self.check(b);
        BigFloat {
            mant: div_round(&(&a.mant * &b.mant), &(BigInt::from(1) << self.bits)),
            bits: self.bits,
        }
    }

    fn is_zero(&self, a: &BigFloat) -> bool {
        a.mant.is_zero()
    }

    fn from_rational(&self, q: &Rational) -> BigFloat {
        BigFloat::from_rational(q, self.bits)
    }

    fn div_int(&self, a: &BigFloat, n: i64) -> BigFloat {
        assert!(n != 0, "division by zero integer");
        BigFloat {
            mant: div_round(&a.mant, &BigInt::from(n)),
            bits: self.bits,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn from_real(re: BigFloat) -> Self {
        let bits = re.bits();
        Self { re, im: BigFloat::zero(bits) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Complexes at a fixed precision, componentwise fixed-point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexField {
    real: RealField,
}

impl ComplexField {
    pub fn new(bits: u32) -> Self {
        Self { real: RealField::new(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.real.bits()
    }

    pub fn real(&self) -> &RealField {
        &self.real
    }

    pub fn make(&self, re: BigFloat, im: BigFloat) -> BigComplex {
        BigComplex { re, im }
    }

    pub fn from_real(&self, re: &BigFloat) -> BigComplex {
        BigComplex { re: re.clone(), im: self.real.zero() }
    }

    pub fn mul_real(&self, a: &BigComplex, r: &BigFloat) -> BigComplex {
        BigComplex {
            re: self.real.mul(&a.re, r),
            im: self.real.mul(&a.im, r),
        }
    }

    pub fn conj(&self, a: &BigComplex) -> BigComplex {
        BigComplex { re: a.re.clone(), im: self.real.neg(&a.im) }
    }

    pub fn abs(&self, a: &BigComplex) -> BigFloat {
        let n = self.real.add(
            &self.real.mul(&a.re, &a.re),
            &self.real.mul(&a.im, &a.im),
        );
        self.real.sqrt(&n)
    }
}

impl Ring for ComplexField {
    type Elem = BigComplex;

    fn zero(&self) -> BigComplex {
        BigComplex {
            re: self.real.zero(),
            im: self.real.zero(),
        }
    }

    fn one(&self) -> BigComplex {
        BigComplex {
            re: self.real.one(),
            im: self.real.zero(),
        }
    }

    fn add(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.real.add(&a.re, &b.re),
            im: self.real.add(&a.im, &b.im),
        }
    }

    fn neg(&self, a: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.real.neg(&a.re),
            im: self.real.neg(&a.im),
        }
    }

    fn mul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let rr = self.real.mul(&a.re, &b.re);
        let ii = self.real.mul(&a.im, &b.im);
        let ri = self.real.mul(&a.re, &b.im);
        let ir = self.real.mul(&a.im, &b.re);
        BigComplex {
            re: self.real.sub(&rr, &ii),
            im: self.real.add(&ri, &ir),
        }
    }

    fn is_zero(&self, a: &BigComplex) -> bool {
        a.is_zero()
    }

    fn from_rational(&self, q: &Rational) -> BigComplex {
        BigComplex {
            re: self.real.from_rational(q),
            im: self.real.zero(),
        }
    }

    fn div_int(&self, a: &BigComplex, n: i64) -> BigComplex {
        BigComplex {
            re: self.real.div_int(&a.re, n),
            im: self.real.div_int(&a.im, n),
        }
    }
}
