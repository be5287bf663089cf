//! Partial multiple L-values S_k(n_1,...,n_k): non-strict k-fold sums over
//! i_1 <= ... <= i_k with numerator w^(i_1+...+i_k) for a root of unity w of
//! order M, where equal adjacent indices are allowed only at multiples of N.
//!
//! The submodules provide, in order of trust: truncated-sum oracles straight
//! from the definition, the strict-sum decomposition identities, generating
//! functions built from Gamma-factor expansions, and closed forms over the
//! symbolic zeta ring. Everything cross-checks against everything else.

mod checks;
mod closed;
mod genfun;
mod oracle;
mod plethysm;

pub use checks::{
    gamma_product_check, lemma_decomposition_check, DecompositionReport, GammaProductReport,
};
pub use closed::{
    bernoulli_s_k_even, closed_s_k_n, closed_s_k_n1, double_zeta_remark, z_n_k, BernoulliForm,
    DoubleZetaOrder,
};
pub use genfun::{
    genfun_p2, genfun_p_exact, genfun_p_numeric, genfun_s1_exact, genfun_s1_numeric,
    genfun_u_exact, genfun_u_numeric, z_log_series, ExactSeries,
};
pub use oracle::{
    finite_partial_s2, finite_partial_s2_all, oracle_eval, oracle_eval_raw, strict_sum_oracle,
    sum_over_rearrangements, u_d_oracle, u_d_specialized, OracleResult,
};
pub use plethysm::{expand_h_of_powers, expand_in_h_basis, plethysm_check, MultiPoly};

use crate::error::{Error, Result};
use crate::rational::{pow2, rat_int, Rational};

/// How a weight tuple behaves as the truncation grows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Convergence {
    Absolute,
    /// Some weight is 1 but the root numerator oscillates; the outermost
    /// partial sums need averaging.
    Conditional,
}

/// A value specification: the repeat rule modulus N, the numerator root
/// order M, and the weight tuple (n_1, ..., n_k). The weight n_1 sits on the
/// smallest index. Divergent combinations (a weight 1 with M = 1, so the
/// tail is harmonic) are rejected here, not at evaluation time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LValueSpec {
    repeat_modulus: u32,
    root_order: u32,
    weights: Vec<u32>,
}

impl LValueSpec {
    pub fn new(repeat_modulus: u32, root_order: u32, weights: Vec<u32>) -> Result<Self> {
        if repeat_modulus == 0 || root_order == 0 {
            return Err(Error::InvalidArgument(
                "the repeat modulus and root order are positive".into(),
            ));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("weights are positive".into()));
        }
        let spec = Self { repeat_modulus, root_order, weights };
        if spec.k() > 0 && spec.min_weight() == 1 && root_order == 1 {
            return Err(Error::Divergent);
        }
        Ok(spec)
    }

    pub fn repeat_modulus(&self) -> u32 {
        self.repeat_modulus
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Depth of the sum.
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn min_weight(&self) -> u32 {
        self.weights.iter().copied().min().unwrap_or(0)
    }

    pub fn convergence(&self) -> Convergence {
        if self.k() > 0 && self.min_weight() == 1 {
            Convergence::Conditional
        } else {
            Convergence::Absolute
        }
    }
}

/// The repeat rule: a pair of equal adjacent indices contributes factor zero
/// unless the index is a multiple of the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EpsilonRule {
    modulus: u32,
}

impl EpsilonRule {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus > 0, "the repeat modulus is positive");
        Self { modulus }
    }

    /// Factor for one adjacent pair: false means the term is killed.
    pub fn pair(&self, i: u64, j: u64) -> bool {
        i != j || i % self.modulus as u64 == 0
    }

    /// Product of the pair factors along a weakly increasing index tuple.
    pub fn tuple(&self, indices: &[u64]) -> bool {
        indices.windows(2).all(|w| self.pair(w[0], w[1]))
    }
}

/// nu(x) = 2^(1-x) - 1, the alternating-to-plain zeta ratio at integer
/// arguments: sum (-1)^i / i^x = nu(x) zeta(x).
pub fn nu(x: u32) -> Rational {
    pow2(1 - x as i64) - rat_int(1)
}

/// nu~(x) = 2^(x-1) - 1; satisfies (nu(x)+1)(nu~(x)+1) = 1.
pub fn nu_tilde(x: u32) -> Rational {
    pow2(x as i64 - 1) - rat_int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn spec_validation() {
        assert!(LValueSpec::new(2, 2, vec![1, 2]).is_ok());
        assert!(LValueSpec::new(0, 2, vec![2]).is_err());
        assert!(LValueSpec::new(2, 0, vec![2]).is_err());
        assert!(LValueSpec::new(2, 2, vec![0]).is_err());
        // harmonic tail: weight 1 with trivial numerator
        assert!(matches!(
            LValueSpec::new(3, 1, vec![2, 1]),
            Err(Error::Divergent)
        ));
        // M = 1 is fine when every weight is >= 2
        assert!(LValueSpec::new(3, 1, vec![2, 2]).is_ok());
        // empty tuple is the empty product
        let empty = LValueSpec::new(5, 1, vec![]).unwrap();
        assert_eq!(empty.k(), 0);
        assert_eq!(empty.convergence(), Convergence::Absolute);
    }

    #[test]
    fn convergence_classes() {
        let cond = LValueSpec::new(2, 2, vec![2, 1, 3]).unwrap();
        assert_eq!(cond.convergence(), Convergence::Conditional);
        let abs = LValueSpec::new(2, 2, vec![2, 2]).unwrap();
        assert_eq!(abs.convergence(), Convergence::Absolute);
    }

    #[test]
    fn epsilon_pairs() {
        let e = EpsilonRule::new(2);
        assert!(!e.pair(3, 3));
        assert!(e.pair(4, 4));
        assert!(e.pair(3, 4));
        assert!(e.pair(3, 17));
        // tuple: (1,1,2) dies on the first pair, (2,2,3) survives
        assert!(!e.tuple(&[1, 1, 2]));
        assert!(e.tuple(&[2, 2, 3]));
        assert!(e.tuple(&[]));
        assert!(e.tuple(&[7]));
        let e1 = EpsilonRule::new(1);
        assert!(e1.pair(3, 3));
    }

    #[test]
    fn nu_values_and_reciprocal_relation() {
        assert_eq!(nu(1), rat_int(0));
        assert_eq!(nu(2), rat(-1, 2));
        assert_eq!(nu(3), rat(-3, 4));
        assert_eq!(nu_tilde(2), rat_int(1));
        assert_eq!(nu_tilde(4), rat_int(7));
        for x in 1..=12 {
            let lhs = (nu(x) + rat_int(1)) * (nu_tilde(x) + rat_int(1));
            assert_eq!(lhs, rat_int(1), "x = {x}");
        }
    }
}
