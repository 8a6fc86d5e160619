//! Suites over the free matrix group and its metabelian image at `t = 1`:
//! decomposition shape, the closed power formula, the product rule of the
//! appendix induction, and the integer-specialization freeness probe.

use burnside_core::groups::{
    basic_commutator_lambdas, basic_commutator_word, decompose_un, make_generators,
    power_formula, random_free_word, sample_series_expr, SamplerConfig, SeriesKind,
};
use burnside_core::laurent::Assignment;
use burnside_core::matrix::MatrixOps;
use burnside_core::trunc::is_in_sigma_power;

use super::{par_map, rng_for, salt, Issue};
use crate::{Result, SuiteParams, SuiteReport, VerifierError};

/// Every sampled word at `t = 1` decomposes as `u I + [lambda_i v]` with
/// `sum lambda_i (1 - x_i) = 1 - u` and `v M = v`, exactly.
pub fn lemma1(params: &SuiteParams) -> Result<SuiteReport> {
    let samples = params.samples.unwrap_or(500);
    let mut report = SuiteReport::new("lemma1", params.echo(Some(samples), None, None));
    let rank = params.rank;
    let gens = make_generators(rank)?;
    let ev = gens.evaluator_laurent_t1();
    let cfg = SamplerConfig::new(rank);
    let s = salt("lemma1");

    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let w = random_free_word(&cfg, &mut rng);
        let m = match ev.evaluate(&w) {
            Ok(m) => m,
            Err(e) => return Some(("evaluation error".into(), format!("{w}: {e}"))),
        };
        match decompose_un(&m, rank) {
            Ok(_) => None,
            Err(e) => Some(("decomposition failed".into(), format!("{w}: {e}"))),
        }
    });

    report.set_counter("samples", samples as i64);
    let failures: Vec<&Issue> = outcomes.iter().flatten().collect();
    report.set_counter("decomposed", (samples as usize - failures.len()) as i64);
    if let Some((label, text)) = failures.first() {
        report.fail(label, text);
    }
    Ok(report)
}

/// Power formula `M^n = u^n I + (1 + u + ... + u^{n-1}) N` against iterated
/// multiplication, plus the commutator lambda calculus: the closed form of
/// the 16 small basic commutators and the augmentation-degree growth of
/// lower central samples.
pub fn lemma2(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config(
            "lemma2 exercises the rank-2 commutator calculus".into(),
        ));
    }
    let samples = params.samples.unwrap_or(100);
    let mut report = SuiteReport::new("lemma2", params.echo(Some(samples), None, None));
    let gens = make_generators(2)?;
    let ev = gens.evaluator_laurent_t1();
    let s = salt("lemma2");

    // (i) closed power formula vs iterated products
    let power_outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let cfg = SamplerConfig::new(2).with_base_len(10);
        let w = random_free_word(&cfg, &mut rng);
        let ops = ev.ops();
        let m = match ev.evaluate(&w) {
            Ok(m) => m,
            Err(e) => return Some(("evaluation error".into(), format!("{w}: {e}"))),
        };
        for n in 2u64..=6 {
            let closed = match power_formula(&m, 2, n) {
                Ok(c) => c,
                Err(e) => return Some(("power formula error".into(), format!("{w}: {e}"))),
            };
            let iterated = match ops.pow(&m, n) {
                Ok(p) => p,
                Err(e) => return Some(("power error".into(), format!("{w}: {e}"))),
            };
            if !ops.eq(&closed, &iterated).unwrap_or(false) {
                return Some((
                    format!("power formula mismatch at n={n}"),
                    w.to_string(),
                ));
            }
        }
        None
    });
    report.set_counter("power_samples", samples as i64);
    if let Some((label, text)) = power_outcomes.iter().flatten().next() {
        report.fail(label, text);
    }

    // (ii) closed-form lambdas of the basic commutators, 0 <= a, b <= 3
    let mut commutator_cases = 0i64;
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let expr = basic_commutator_word(a, b);
            let (m, _) = ev.evaluate_expr(&expr)?;
            let dec = decompose_un(&m, 2)?;
            let (l1, l2) = basic_commutator_lambdas(a, b);
            if dec.lambdas[0] != l1 || dec.lambdas[1] != l2 {
                report.fail(
                    "basic commutator lambdas mismatch",
                    format!("a={a} b={b}: got ({}, {})", dec.lambdas[0], dec.lambdas[1]),
                );
            }
            commutator_cases += 1;
        }
    }
    report.set_counter("basic_commutator_cases", commutator_cases);

    // (ii) lower central descent: class j samples have lambdas in Sigma^{j-1}
    let mut lc_samples = 0i64;
    for class in 2..=5u32 {
        for i in 0..6u32 {
            let mut rng = rng_for(params.seed, s ^ 0x11, (class as u64) << 16 | i as u64);
            let cfg = SamplerConfig::new(2).with_base_len(5);
            let expr = sample_series_expr(SeriesKind::LowerCentral(class), &cfg, &mut rng);
            let (m, _) = ev.evaluate_expr(&expr)?;
            let dec = decompose_un(&m, 2)?;
            for lambda in &dec.lambdas {
                if !is_in_sigma_power(lambda, class - 1)? {
                    report.fail(
                        "lower central lambda below expected augmentation power",
                        format!("class {class}: {}", expr.flatten()),
                    );
                }
            }
            lc_samples += 1;
        }
    }
    report.set_counter("lower_central_samples", lc_samples);
    Ok(report)
}

/// The induction step of the decomposition proof: `v M = v` and the product
/// rule `unit(W1 W2) = u1 u2`, `lambda(W1 W2)_i = u1 delta_i + lambda_i`.
pub fn appendix(params: &SuiteParams) -> Result<SuiteReport> {
    let samples = params.samples.unwrap_or(200);
    let mut report = SuiteReport::new("appendix", params.echo(Some(samples), None, None));
    let rank = params.rank;
    let gens = make_generators(rank)?;
    let ev = gens.evaluator_laurent_t1();
    let cfg = SamplerConfig::new(rank).with_base_len(10);
    let s = salt("appendix");

    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let w1 = random_free_word(&cfg, &mut rng);
        let w2 = random_free_word(&cfg, &mut rng);
        let run = || -> std::result::Result<Option<Issue>, burnside_core::CoreError> {
            let d1 = decompose_un(&ev.evaluate(&w1)?, rank)?;
            let d2 = decompose_un(&ev.evaluate(&w2)?, rank)?;
            let d12 = decompose_un(&ev.evaluate(&w1.concat(&w2))?, rank)?;
            if d12.unit != d1.unit.mul(&d2.unit) {
                return Ok(Some((
                    "product unit is not u1*u2".into(),
                    format!("{w1} | {w2}"),
                )));
            }
            for i in 0..rank {
                let expect = d1.unit.mul(&d2.lambdas[i]).add(&d1.lambdas[i]);
                if d12.lambdas[i] != expect {
                    return Ok(Some((
                        "product lambda rule violated".into(),
                        format!("{w1} | {w2} at row {i}"),
                    )));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(issue) => issue,
            Err(e) => Some(("decomposition error".into(), format!("{w1} | {w2}: {e}"))),
        }
    });

    report.set_counter("pairs", samples as i64);
    if let Some((label, text)) = outcomes.iter().flatten().next() {
        report.fail(label, text);
    }
    Ok(report)
}

/// Freeness falsification probe: nonempty reduced words must evaluate to
/// non-identity integer matrices under `x = 1, y = t = -1`. Any identity
/// hit is a counterexample and fails the build.
pub fn sanov(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config(
            "the integer specialization probe is defined for rank 2".into(),
        ));
    }
    let samples = params.samples.unwrap_or(500);
    let mut report = SuiteReport::new("sanov", params.echo(Some(samples), None, None));
    let gens = make_generators(2)?;
    let ev = gens.evaluator_int(&Assignment::sanov())?;
    // letters * max exponent stays within the stated length bound of 12
    let cfg = SamplerConfig::new(2).with_base_len(6).with_max_exp(2);
    let s = salt("sanov");

    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let w = random_free_word(&cfg, &mut rng);
        let ring = burnside_core::matrix::IntRing;
        let ops = MatrixOps::new(&ring);
        match ev.evaluate(&w) {
            Ok(m) => {
                if ops.is_identity(&m) {
                    Some(("identity hit under the probe".into(), w.to_string()))
                } else {
                    None
                }
            }
            Err(e) => Some(("evaluation error".into(), format!("{w}: {e}"))),
        }
    });

    report.set_counter("samples", samples as i64);
    let hits = outcomes.iter().flatten().count();
    report.set_counter("identity_hits", hits as i64);
    if let Some((label, text)) = outcomes.iter().flatten().next() {
        report.fail(label, text);
    }
    Ok(report)
}
