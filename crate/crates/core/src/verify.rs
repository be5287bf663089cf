//! Named end-to-end checks, each pitting an exact identity or closed form
//! against an independent route: the series oracle, brute-force expansions,
//! or Gamma products. The registry drives both the acceptance tests and the
//! command-line `verify` subcommand; every check returns a verdict plus a
//! one-line detail string with the measured gaps.

use std::fmt;
use std::time::Instant;

use crate::algebra::Ring;
use crate::bigfloat::{BigComplex, BigFloat, ComplexField, RealField};
use crate::constants::digits_to_bits;
use crate::error::{Error, Result};
use crate::lvalues::{
    bernoulli_s_k_even, closed_s_k_n, closed_s_k_n1, double_zeta_remark, finite_partial_s2_all,
    gamma_product_check, genfun_p2, genfun_p_exact, genfun_p_numeric, lemma_decomposition_check,
    oracle_eval, plethysm_check, BernoulliForm, DoubleZetaOrder, LValueSpec,
};
use crate::partitions::{enumerate, is_vertical_strip, strip_ones, unique_even_mu};
use crate::rational::{pow2, rat, rat_int};
use crate::symbolic::{log2_sym, normalize_even_zetas, sym_ring, zeta_sym, SymbolicValue};

/// Knobs shared by the numeric checks; the exact checks run on fixed grids.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Truncation point for oracle sums.
    pub truncation: u64,
    /// Working precision in decimal digits (10..=100).
    pub precision: u32,
    /// Depth cap for the oracle-bound sweeps.
    pub max_k: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            truncation: 1_000_000,
            precision: 30,
            max_k: 3,
        }
    }
}

/// Whether a check settles its identities exactly or against float targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Numeric,
}

impl Suite {
    pub fn label(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Verdict of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub suite: Suite,
    pub passed: bool,
    pub detail: String,
    pub runtime_ms: u128,
}

type CheckFn = fn(&VerifyConfig) -> Result<(bool, String)>;

struct CheckDef {
    name: &'static str,
    suite: Suite,
    run: CheckFn,
}

static CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "sk2_bernoulli_identity",
        suite: Suite::Exact,
        run: sk2_bernoulli_identity,
    },
    CheckDef {
        name: "bernoulli_three_forms",
        suite: Suite::Exact,
        run: bernoulli_three_forms,
    },
    CheckDef {
        name: "closed_form_examples",
        suite: Suite::Exact,
        run: closed_form_examples,
    },
    CheckDef {
        name: "oracle_vs_closed_forms",
        suite: Suite::Numeric,
        run: oracle_vs_closed_forms,
    },
    CheckDef {
        name: "genfun_p2_matches_closed",
        suite: Suite::Exact,
        run: genfun_p2_matches_closed,
    },
    CheckDef {
        name: "genfun_general_vs_oracle",
        suite: Suite::Numeric,
        run: genfun_general_vs_oracle,
    },
    CheckDef {
        name: "plethysm_brute_force",
        suite: Suite::Exact,
        run: plethysm_brute_force,
    },
    CheckDef {
        name: "decomposition_lemmas",
        suite: Suite::Numeric,
        run: decomposition_lemmas,
    },
    CheckDef {
        name: "double_zeta_formulas",
        suite: Suite::Numeric,
        run: double_zeta_formulas,
    },
    CheckDef {
        name: "finite_partial_convergence",
        suite: Suite::Numeric,
        run: finite_partial_convergence,
    },
];

/// Names of all registered checks, in execution order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

/// Which suite a named check belongs to.
pub fn check_suite(name: &str) -> Option<Suite> {
    CHECKS.iter().find(|c| c.name == name).map(|c| c.suite)
}

/// Run one named check.
pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let def = CHECKS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check: {name}")))?;
    let start = Instant::now();
    let (passed, detail) = (def.run)(cfg)?;
    Ok(CheckOutcome {
        name: def.name,
        suite: def.suite,
        passed,
        detail,
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Run every check in the given suite (or all of them), in order.
pub fn run_suite(filter: Option<Suite>, cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    CHECKS
        .iter()
        .filter(|c| filter.map_or(true, |s| c.suite == s))
        .map(|c| run_check(c.name, cfg))
        .collect()
}

/// |x - y| as f64, with both sides trimmed to a common width first.
fn real_gap(x: &BigFloat, y: &BigFloat, bits: u32) -> f64 {
    let rf = RealField::new(bits);
    rf.sub(&x.with_bits(bits), &y.with_bits(bits)).abs().to_f64()
}

fn complex_gap(x: &BigComplex, y: &BigComplex, bits: u32) -> f64 {
    let cf = ComplexField::new(bits);
    let xn = cf.make(x.re.with_bits(bits), x.im.with_bits(bits));
    let yn = cf.make(y.re.with_bits(bits), y.im.with_bits(bits));
    cf.abs(&cf.sub(&xn, &yn)).to_f64()
}

fn verdict(failures: Vec<String>, ok_detail: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok_detail)
    } else {
        (false, failures.join("; "))
    }
}

/// The convolution Bernoulli form at weight 2 collapses to a single even
/// zeta value: S_k(2) = -zeta(2k) / 2^(2k-1), compared as exact pi powers.
fn sk2_bernoulli_identity(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let r = sym_ring();
    let mut failures = Vec::new();
    for k in 1..=6u32 {
        let got = bernoulli_s_k_even(1, k, BernoulliForm::Convolution)?;
        let scaled = r.scale(&zeta_sym(2 * k)?, &pow2(1 - 2 * k as i64));
        let want = r.neg(&normalize_even_zetas(&scaled)?);
        if got != want {
            failures.push(format!("k={k}: {} != {}", got.render(), want.render()));
        }
    }
    Ok(verdict(
        failures,
        "k = 1..6: convolution form equals -zeta(2k)/2^(2k-1) as exact pi powers".into(),
    ))
}

/// Convolution, plethysm, and zeta routes to S_k(2n) agree exactly.
fn bernoulli_three_forms(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for n in 1..=3u32 {
        for k in 1..=4u32 {
            let conv = bernoulli_s_k_even(n, k, BernoulliForm::Convolution)?;
            let ple = bernoulli_s_k_even(n, k, BernoulliForm::Plethysm)?;
            let zet = bernoulli_s_k_even(n, k, BernoulliForm::Zeta)?;
            if conv != ple || conv != zet {
                failures.push(format!("(n={n}, k={k}): routes disagree"));
            }
            pairs += 1;
        }
    }
    Ok(verdict(
        failures,
        format!("{pairs} (n, k) pairs: convolution, plethysm, and zeta routes identical"),
    ))
}

/// The low-depth ladder values in both the weight-1 and weight-3 columns,
/// pinned term by term, plus a numeric adjudication of the zeta(6)zeta(3)
/// coefficient in S_3(3) against the series oracle.
fn closed_form_examples(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let r = sym_ring();
    let z = |m: u32| zeta_sym(m);
    let log2 = log2_sym();
    let mut failures = Vec::new();

    let sq = r.scale(&r.mul(&log2, &log2), &rat(1, 2));
    let want_s21 = r.sub(&sq, &r.scale(&z(2)?, &rat(1, 4)));
    let cube = r.scale(&r.mul(&r.mul(&log2, &log2), &log2), &rat(-1, 6));
    let mid = r.scale(&r.mul(&log2, &z(2)?), &rat(1, 4));
    let want_s31 = r.sub(&r.add(&cube, &mid), &r.scale(&z(3)?, &rat(1, 4)));
    let want_s13 = r.scale(&z(3)?, &rat(-3, 4));
    let want_s23 = r.add(
        &r.scale(&z(6)?, &rat(-31, 64)),
        &r.scale(&r.mul(&z(3)?, &z(3)?), &rat(9, 32)),
    );
    let zcube = r.mul(&r.mul(&z(3)?, &z(3)?), &z(3)?);
    let want_s33 = r.add(
        &r.add(
            &r.scale(&z(9)?, &rat(-85, 256)),
            &r.scale(&r.mul(&z(6)?, &z(3)?), &rat(93, 256)),
        ),
        &r.scale(&zcube, &rat(-9, 128)),
    );

    let cases: [(&str, SymbolicValue, SymbolicValue); 6] = [
        ("S_1(1)", closed_s_k_n1(1)?, r.neg(&log2)),
        ("S_2(1)", closed_s_k_n1(2)?, want_s21),
        ("S_3(1)", closed_s_k_n1(3)?, want_s31),
        ("S_1(3)", closed_s_k_n(3, 1)?, want_s13),
        ("S_2(3)", closed_s_k_n(3, 2)?, want_s23),
        ("S_3(3)", closed_s_k_n(3, 3)?, want_s33.clone()),
    ];
    for (label, got, want) in &cases {
        if got != want {
            failures.push(format!("{label}: {} != {}", got.render(), want.render()));
        }
    }

    // The zeta(6)zeta(3) coefficient is the one value the exact routes cannot
    // cross-check among themselves; settle 93/256 against the oracle and show
    // the factor-two variant 93/128 is refuted.
    let variant = r.add(&want_s33, &r.scale(&r.mul(&z(6)?, &z(3)?), &rat(93, 256)));
    let spec = LValueSpec::new(2, 2, vec![3, 3, 3])?;
    let oracle = oracle_eval(&spec, 20_000, cfg.precision)?;
    let bits = digits_to_bits(cfg.precision);
    let ok_gap = real_gap(
        oracle.real_part(),
        &want_s33.numeric_eval(cfg.precision)?,
        bits,
    );
    let bad_gap = real_gap(
        oracle.real_part(),
        &variant.numeric_eval(cfg.precision)?,
        bits,
    );
    if ok_gap >= 1e-8 {
        failures.push(format!("S_3(3) oracle gap {ok_gap:.1e} too large"));
    }
    if bad_gap <= 1e-1 {
        failures.push(format!("93/128 variant not refuted (gap {bad_gap:.1e})"));
    }

    Ok(verdict(
        failures,
        format!(
            "six ladder values reproduced term by term; zeta(6)zeta(3) coefficient of S_3(3) \
             adjudicated numerically: 93/256 gives oracle gap {ok_gap:.1e}, \
             the factor-two variant 93/128 is off by {bad_gap:.1e}"
        ),
    ))
}

/// Oracle sums at N = M = 2 against the closed forms, across the weight and
/// depth grid; weight-1 columns exercise the window-averaged evaluation.
fn oracle_vs_closed_forms(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let bits = digits_to_bits(cfg.precision);
    let mut worst = (0.0f64, 0u32, 0u32);
    let mut configs = 0usize;
    for n in 1..=4u32 {
        for k in 1..=cfg.max_k {
            let closed = if n == 1 {
                closed_s_k_n1(k)?
            } else {
                closed_s_k_n(n, k)?
            };
            let target = closed.numeric_eval(cfg.precision)?;
            let spec = LValueSpec::new(2, 2, vec![n; k as usize])?;
            let got = oracle_eval(&spec, cfg.truncation, cfg.precision)?;
            let gap = real_gap(got.real_part(), &target, bits);
            if gap > worst.0 {
                worst = (gap, n, k);
            }
            configs += 1;
        }
    }
    let passed = worst.0 < 1e-8;
    Ok((
        passed,
        format!(
            "{configs} configs at T = {}: max |oracle - closed| = {:.1e} at (n, k) = ({}, {})",
            cfg.truncation, worst.0, worst.1, worst.2
        ),
    ))
}

/// The specialized weight-n generating function: grid coefficients up to
/// x^12 equal the closed forms, off-grid coefficients vanish, the general
/// product route gives the identical series, and nothing carries a residual
/// Euler-Mascheroni term.
fn genfun_p2_matches_closed(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let order = 12usize;
    let r = sym_ring();
    let mut failures = Vec::new();
    let mut grid = 0usize;
    for n in 1..=3u32 {
        let series = genfun_p2(n, order)?;
        let general = genfun_p_exact(2, 2, n, order)?;
        for m in 0..=order {
            let c = series.coeff(m);
            c.assert_gamma_free()?;
            general.coeff(m).assert_gamma_free()?;
            if c != general.coeff(m) {
                failures.push(format!("n={n}: routes disagree at x^{m}"));
            }
            if m == 0 {
                if *c != r.one() {
                    failures.push(format!("n={n}: constant term is {}", c.render()));
                }
            } else if m % n as usize == 0 {
                let k = (m / n as usize) as u32;
                let closed = if n == 1 {
                    closed_s_k_n1(k)?
                } else {
                    closed_s_k_n(n, k)?
                };
                if *c != closed {
                    failures.push(format!(
                        "n={n}, x^{m}: {} != {}",
                        c.render(),
                        closed.render()
                    ));
                } else {
                    grid += 1;
                }
            } else if c.num_terms() != 0 {
                failures.push(format!("n={n}: off-grid x^{m} = {}", c.render()));
            }
        }
    }
    Ok(verdict(
        failures,
        format!(
            "n in {{1,2,3}} through x^{order}: {grid} grid coefficients equal the closed \
             forms, off-grid coefficients vanish, both routes identical, all gamma-free"
        ),
    ))
}

/// Numeric generating function at N = M = 3, weight 2, against oracle sums.
fn genfun_general_vs_oracle(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let kmax = cfg.max_k.min(3);
    let order = 2 * kmax as usize;
    let series = genfun_p_numeric(3, 3, 2, order, cfg.precision)?;
    let bits = digits_to_bits(cfg.precision);
    let mut worst = (0.0f64, 0u32);
    for k in 1..=kmax {
        let spec = LValueSpec::new(3, 3, vec![2; k as usize])?;
        let got = oracle_eval(&spec, cfg.truncation, cfg.precision)?;
        let gap = complex_gap(&got.value, series.coeff(2 * k as usize), bits);
        if gap > worst.0 {
            worst = (gap, k);
        }
    }
    let passed = worst.0 < 1e-6;
    Ok((
        passed,
        format!(
            "N = M = 3, weight 2, coefficients x^2..x^{order} vs oracle at T = {}: \
             max gap {:.1e} at k = {}",
            cfg.truncation, worst.0, worst.1
        ),
    ))
}

/// Plethysm coefficients against brute-force expansion in 2n variables.
fn plethysm_brute_force(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut verified = 0usize;
    for n in 1..=3u32 {
        for k in 1..=3u32 {
            match plethysm_check(n, k) {
                Ok(count) => verified += count,
                Err(e) => failures.push(format!("(n={n}, k={k}): {e}")),
            }
        }
    }
    Ok(verdict(
        failures,
        format!(
            "9 (n, k) grids: {verified} partition coefficients matched against the \
             2n-variable expansion, all integral"
        ),
    ))
}

/// The strict-sum decomposition identities at finite truncation, the
/// uniqueness of the even core behind them, and the telescoping Gamma
/// products used by the generating functions.
fn decomposition_lemmas(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let t = 10_000u64;

    let mut worst2 = 0f64;
    let mut worst3 = 0f64;
    for depth in 1..=cfg.max_k.min(4) {
        for weight in 1..=2u32 {
            let r2 = lemma_decomposition_check(2, 2, weight, depth, t, cfg.precision)?;
            worst2 = worst2.max(r2.max_gap);
            let r3 = lemma_decomposition_check(3, 3, weight, depth, t, cfg.precision)?;
            worst3 = worst3.max(r3.max_gap);
        }
    }
    if worst2 >= 1e-8 {
        failures.push(format!("N = M = 2 decomposition gap {worst2:.1e}"));
    }
    if worst3 >= 1e-6 {
        failures.push(format!("N = M = 3 decomposition gap {worst3:.1e}"));
    }

    let mut checked = 0usize;
    for k in 0..=12u32 {
        let all = enumerate(k)?;
        for lambda in &all {
            let admissible: Vec<_> = all
                .iter()
                .filter(|mu| {
                    let core = strip_ones(mu);
                    core.is_even() && is_vertical_strip(lambda, &core)
                })
                .collect();
            let unique = unique_even_mu(lambda);
            if admissible.len() != 1 || *admissible[0] != unique {
                failures.push(format!(
                    "{lambda:?}: {} admissible even cores",
                    admissible.len()
                ));
            }
            checked += 1;
        }
    }

    let digits = 20;
    let fam1 = gamma_product_check(
        &[rat(1, 2), rat_int(2)],
        &[rat(1, 2), rat_int(2)],
        3,
        digits,
    )?;
    let fam2 = gamma_product_check(&[rat_int(1), rat_int(-1)], &[rat_int(0), rat_int(0)], 2, digits)?;
    let fam3 = gamma_product_check(
        &[rat(1, 2), rat(-1, 2)],
        &[rat_int(0), rat_int(0)],
        1,
        digits,
    )?;
    for (label, fam) in [("identical", &fam1), ("telescoping", &fam2), ("wallis", &fam3)] {
        if !fam.passed {
            failures.push(format!("gamma product {label}: gap {:.1e}", fam.gap));
        }
    }

    Ok(verdict(
        failures,
        format!(
            "decompositions exact at T = {t} (max gap {worst2:.1e} at N=M=2, {worst3:.1e} \
             at N=M=3); even core unique for all {checked} partitions through weight 12; \
             Gamma products at {digits} digits: gaps {:.1e}, {:.1e}, {:.1e}",
            fam1.gap, fam2.gap, fam3.gap
        ),
    ))
}

/// Depth-2 formulas with a weight-1 slot on either end, against the oracle.
fn double_zeta_formulas(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let bits = digits_to_bits(cfg.precision);
    let mut worst = 0f64;
    let mut count = 0usize;
    for k in 1..=cfg.max_k.min(2) {
        let grid: [(DoubleZetaOrder, Vec<u32>); 2] = [
            (DoubleZetaOrder::OneFirst, vec![1, 2 * k]),
            (DoubleZetaOrder::OneLast, vec![2 * k, 1]),
        ];
        for (order, weights) in grid {
            let formula = double_zeta_remark(k, order)?;
            let target = formula.numeric_eval(cfg.precision)?;
            let spec = LValueSpec::new(2, 2, weights)?;
            let got = oracle_eval(&spec, cfg.truncation, cfg.precision)?;
            worst = worst.max(real_gap(got.real_part(), &target, bits));
            count += 1;
        }
    }
    let passed = worst < 1e-6;
    Ok((
        passed,
        format!(
            "{count} weight patterns (1, 2k) and (2k, 1) at T = {}: \
             max |oracle - formula| = {worst:.1e}",
            cfg.truncation
        ),
    ))
}

/// Exact finite partial sums approach the closed-form limits, with the gap
/// shrinking monotonically along the range grid.
fn finite_partial_convergence(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let kmax = cfg.max_k.min(6) as usize;
    let bits = digits_to_bits(cfg.precision);
    let mut targets = Vec::with_capacity(kmax);
    for k in 1..=kmax as u32 {
        targets.push(closed_s_k_n(2, k)?.numeric_eval(cfg.precision)?.to_f64());
    }

    let ranges = [100u64, 1_000, 10_000];
    let mut gaps = vec![Vec::with_capacity(ranges.len()); kmax];
    for &p in &ranges {
        let values = finite_partial_s2_all(kmax as u64, p)?;
        for (k, value) in values.iter().enumerate() {
            let v = BigFloat::from_rational(value, bits).to_f64();
            gaps[k].push((v - targets[k]).abs());
        }
    }

    let mut failures = Vec::new();
    let mut lines = Vec::with_capacity(kmax);
    for (k, g) in gaps.iter().enumerate() {
        let monotone = g.windows(2).all(|w| w[1] < w[0]);
        if !monotone {
            failures.push(format!("k={}: gaps not shrinking: {g:?}", k + 1));
        }
        if g[ranges.len() - 1] >= 1e-4 {
            failures.push(format!("k={}: final gap {:.1e}", k + 1, g[ranges.len() - 1]));
        }
        lines.push(format!(
            "k={}: {:.1e} -> {:.1e} -> {:.1e}",
            k + 1,
            g[0],
            g[1],
            g[2]
        ));
    }
    Ok(verdict(
        failures,
        format!(
            "exact partial sums vs closed forms along p in {{100, 1000, 10000}}: {}",
            lines.join("; ")
        ),
    ))
}
