//! Coefficient rings as descriptor values. A ring object carries the context
//! an element needs but does not store (cyclotomic order, working precision),
//! so elements stay plain data and series code is generic over the ring.

use std::fmt;

use crate::rational::{rat_int, Rational};

pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Embed an exact rational. Every ring used here contains Q.
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    /// Division by a nonzero integer. Exact in the exact rings, rounded in
    /// the float rings. Panics on n = 0.
    fn div_int(&self, a: &Self::Elem, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&rat_int(n))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
}

/// a^e by binary powering; e = 0 gives one().
pub fn ring_pow<R: Ring>(ring: &R, a: &R::Elem, e: u64) -> R::Elem {
    let mut acc = ring.one();
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = ring.mul(&base, &base);
        }
    }
    acc
}

/// Q with exact arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        rat_int(0)
    }

    fn one(&self) -> Rational {
        rat_int(1)
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn is_zero(&self, a: &Rational) -> bool {
        num_traits::Zero::is_zero(a)
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn div_int(&self, a: &Rational, n: i64) -> Rational {
        assert!(n != 0, "division by zero integer");
        a / rat_int(n)
    }
}
