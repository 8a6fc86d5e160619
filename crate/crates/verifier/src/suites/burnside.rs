//! Suites over `F(S(q)[t,t^-1])`: solvability at the computed derived
//! length with sharpness witnesses, the exponent/order dichotomy, and the
//! non-default nilpotence probe.

use burnside_core::groups::{
    element_order, make_generators, random_free_word, sample_series_expr, GroupWord,
    OrderVerdict, SamplerConfig, SeriesKind,
};
use burnside_core::lattice::{lattice_cache_file_name, IdealKind};
use burnside_core::quotient::{QuotientS, ABSORPTION_ASSUMPTION};

use super::{par_map, rng_for, salt, Issue};
use crate::{derived_length_bound, Result, SuiteParams, SuiteReport};

fn build_quotient(
    params: &SuiteParams,
    report: &mut SuiteReport,
) -> Result<std::sync::Arc<QuotientS>> {
    let bparams = params.params_for_q()?;
    let (s, cache_hash) = QuotientS::build(
        &bparams,
        params.rank,
        params.c,
        params.variant,
        params.unit_bound,
        params.cache_dir.as_deref(),
    )?;
    if let Some(hash) = cache_hash {
        report.cache_files.insert(
            lattice_cache_file_name(
                bparams.q,
                params.rank,
                s.trunc_order,
                IdealKind::CyclotomicTimesSigma,
                params.variant,
            ),
            hash,
        );
    }
    report.trust(ABSORPTION_ASSUMPTION);
    Ok(s)
}

/// Per-q sampling bounds for the deep derived suites: entry growth is
/// exponential in the bracket depth, so deeper levels use shorter base
/// words.
fn derived_sampling(q: u64, bound: u32) -> (u32, SamplerConfig) {
    match (q, bound) {
        (2, _) => (200, SamplerConfig::new(2).with_base_len(16)),
        (3, _) => (100, SamplerConfig::new(2).with_base_len(4)),
        _ => (3, SamplerConfig::new(2).with_base_len(2).with_max_exp(1)),
    }
}

/// Solvability at the computed derived length: every sampled word of the
/// `k`-th derived subgroup evaluates to the identity over `S(q)[t,t^-1]`,
/// and a sample one level up survives (sharpness).
pub fn thm1iv(params: &SuiteParams) -> Result<SuiteReport> {
    let bparams = params.params_for_q()?;
    let bound = derived_length_bound(&bparams);
    let (default_samples, cfg) = derived_sampling(bparams.q, bound);
    let samples = params.samples.unwrap_or(default_samples);
    let mut report = SuiteReport::new("thm1iv", params.echo(Some(samples), None, None));
    for q in [2u64, 3, 4, 5] {
        let b = burnside_core::lattice::BurnsideParams::new(q).unwrap();
        report.set_counter(
            &format!("derived_length_bound_q{q}"),
            derived_length_bound(&b) as i64,
        );
    }
    let s = build_quotient(params, &mut report)?;
    let gens = make_generators(params.rank)?;
    let ev = gens.evaluator_quotient(s)?;
    let salt_v = salt("thm1iv");

    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, salt_v, i as u64);
        let expr = sample_series_expr(SeriesKind::Derived(bound), &cfg, &mut rng);
        match ev.evaluate_expr(&expr) {
            Ok((m, _)) => {
                if ev.ops().is_identity(&m) {
                    None
                } else {
                    Some((
                        format!("derived-{bound} word survives over S({})[t,t^-1]", bparams.q),
                        expr.flatten().to_string(),
                    ))
                }
            }
            Err(e) => Some(("infrastructure".into(), format!("{e}"))),
        }
    });
    report.set_counter("identity_checks", samples as i64);
    if let Some((label, text)) = outcomes.iter().flatten().next() {
        report.fail(label, text);
    }

    // sharpness: one level higher must produce a survivor
    let sharp_level = bound - 1;
    let attempts = if bparams.q <= 3 { 20 } else { 5 };
    let sharp_cfg = if bparams.q <= 3 {
        SamplerConfig::new(2).with_base_len(6)
    } else {
        SamplerConfig::new(2).with_base_len(3).with_max_exp(1)
    };
    let mut survivor = None;
    for i in 0..attempts {
        let mut rng = rng_for(params.seed, salt_v ^ 0x5a, i as u64);
        let expr = sample_series_expr(SeriesKind::Derived(sharp_level), &sharp_cfg, &mut rng);
        let (m, _) = ev.evaluate_expr(&expr)?;
        if !ev.ops().is_identity(&m) {
            survivor = Some(expr.flatten());
            break;
        }
    }
    report.set_counter("sharpness_found", survivor.is_some() as i64);
    match survivor {
        Some(w) => report.witness(
            &format!("derived-{sharp_level} word surviving (bound is sharp)"),
            w,
        ),
        None => {
            if bparams.q <= 3 {
                report.fail(
                    "sharpness witness not found",
                    format!("{attempts} derived-{sharp_level} samples all vanished"),
                );
            } else {
                report.note(format!(
                    "sharpness at level {sharp_level} inconclusive within {attempts} samples \
                     (witness length unknown)"
                ));
                report.bound();
            }
        }
    }
    Ok(report)
}

/// Order dichotomy, exhaustively by construction: zero `T`-sum words
/// satisfy `W^q = I` exactly; nonzero `T`-sum words are certified infinite
/// and additionally checked to survive all powers up to `2q`, while their
/// `t = 1` images satisfy the congruence `W^q = I` over `S(q)`.
pub fn thm2(params: &SuiteParams) -> Result<SuiteReport> {
    let bparams = params.params_for_q()?;
    let q = bparams.q;
    let zero_samples = params.samples.unwrap_or(if q <= 3 { 100 } else { 20 });
    let nonzero_samples = (zero_samples / 2).max(1);
    let mut report = SuiteReport::new("thm2", params.echo(Some(zero_samples), None, None));
    let s = build_quotient(params, &mut report)?;
    let gens = make_generators(params.rank)?;
    let ev = gens.evaluator_quotient(s.clone())?;
    let ev_t1 = gens.evaluator_quotient_t1(s.clone())?;
    let salt_v = salt("thm2");
    let cfg = SamplerConfig::new(params.rank).with_base_len(8);

    // zero T-sum words: exact exponent q
    let zero_outcomes: Vec<Option<Issue>> = par_map(zero_samples, |i| {
        let mut rng = rng_for(params.seed, salt_v, i as u64);
        let mut w = random_free_word(&cfg, &mut rng);
        let t_sum = w.t_sum();
        if t_sum != 0 {
            w = w.concat(&GroupWord::new([(2, -t_sum)]));
        }
        debug_assert_eq!(w.t_sum(), 0);
        let run = || -> std::result::Result<Option<Issue>, crate::VerifierError> {
            let m = ev.evaluate(&w)?;
            let powered = ev.ops().pow(&m, q)?;
            if !ev.ops().is_identity(&powered) {
                return Ok(Some((
                    format!("zero T-sum word with W^{q} != I"),
                    w.to_string(),
                )));
            }
            Ok(None)
        };
        match run() {
            Ok(issue) => issue,
            Err(e) => Some(("infrastructure".into(), format!("{w}: {e}"))),
        }
    });

    // nonzero T-sum words: infinite order certificate plus low powers
    let nonzero_outcomes: Vec<Option<Issue>> = par_map(nonzero_samples, |i| {
        let mut rng = rng_for(params.seed, salt_v ^ 0x77, i as u64);
        let mut w = random_free_word(&cfg, &mut rng);
        for _ in 0..32 {
            if w.t_sum() != 0 {
                break;
            }
            w = random_free_word(&cfg, &mut rng);
        }
        if w.t_sum() == 0 {
            w = w.concat(&GroupWord::new([(2, 1)]));
        }
        let run = || -> std::result::Result<Option<Issue>, crate::VerifierError> {
            let m = ev.evaluate(&w)?;
            let ops = ev.ops();
            let mut acc = m.clone();
            for pow in 1..=(2 * q) {
                if ops.is_identity(&acc) {
                    return Ok(Some((
                        format!("nonzero T-sum word with W^{pow} = I"),
                        w.to_string(),
                    )));
                }
                acc = ops.mul(&acc, &m)?;
            }
            // the congruence clause: W^q = I modulo the second derived
            // subgroup, i.e. at t = 1
            let t1 = ev_t1.evaluate(&w)?;
            let t1_pow = ev_t1.ops().pow(&t1, q)?;
            if !ev_t1.ops().is_identity(&t1_pow) {
                return Ok(Some((
                    format!("infinite-order word with W^{q} != I at t = 1"),
                    w.to_string(),
                )));
            }
            Ok(None)
        };
        match run() {
            Ok(issue) => issue,
            Err(e) => Some(("infrastructure".into(), format!("{w}: {e}"))),
        }
    });

    report.set_counter("zero_t_sum_samples", zero_samples as i64);
    report.set_counter("nonzero_t_sum_samples", nonzero_samples as i64);
    let violations: Vec<&Issue> = zero_outcomes
        .iter()
        .flatten()
        .chain(nonzero_outcomes.iter().flatten())
        .collect();
    report.set_counter("violations", violations.len() as i64);
    if let Some((label, text)) = violations.first() {
        if params.report_only {
            report.note(format!("report-only violation: {label}: {text}"));
            report.bound();
        } else {
            report.fail(label, text);
        }
    }
    if params.report_only {
        report.bound();
        report.note("report-only mode: exponent claim for this q is recorded, not enforced");
    }
    Ok(report)
}

/// The dichotomy through the order computation: every random word is either
/// certified of finite order dividing q or certified infinite, with the
/// congruence clause checked for the infinite ones. An `unknown` verdict
/// contradicts the dichotomy and is reported loudly.
pub fn prop3(params: &SuiteParams) -> Result<SuiteReport> {
    let bparams = params.params_for_q()?;
    let q = bparams.q;
    let samples = params.samples.unwrap_or(if params.report_only { 20 } else { 60 });
    let mut report = SuiteReport::new("prop3", params.echo(Some(samples), None, None));
    let s = build_quotient(params, &mut report)?;
    let gens = make_generators(params.rank)?;
    let ev_t1 = gens.evaluator_quotient_t1(s.clone())?;
    let salt_v = salt("prop3");
    let cfg = SamplerConfig::new(params.rank).with_base_len(10);

    enum Outcome {
        Finite,
        Infinite,
        Issue(Issue),
    }

    let outcomes: Vec<Outcome> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, salt_v, i as u64);
        let w = random_free_word(&cfg, &mut rng);
        let run = || -> std::result::Result<Outcome, crate::VerifierError> {
            match element_order(&w, &gens, s.clone(), q)? {
                OrderVerdict::Finite { order } => {
                    if q % order != 0 {
                        return Ok(Outcome::Issue((
                            format!("finite order {order} does not divide {q}"),
                            w.to_string(),
                        )));
                    }
                    Ok(Outcome::Finite)
                }
                OrderVerdict::InfiniteTSum { .. } => {
                    let t1 = ev_t1.evaluate(&w)?;
                    let t1_pow = ev_t1.ops().pow(&t1, q)?;
                    if !ev_t1.ops().is_identity(&t1_pow) {
                        return Ok(Outcome::Issue((
                            format!("infinite-order word with W^{q} != I at t = 1"),
                            w.to_string(),
                        )));
                    }
                    Ok(Outcome::Infinite)
                }
                OrderVerdict::Unknown { tried } => Ok(Outcome::Issue((
                    format!("dichotomy violated: no certificate, tried powers {tried:?}"),
                    w.to_string(),
                ))),
            }
        };
        match run() {
            Ok(o) => o,
            Err(e) => Outcome::Issue(("infrastructure".into(), format!("{w}: {e}"))),
        }
    });

    let mut finite = 0i64;
    let mut infinite = 0i64;
    let mut first_issue: Option<&Issue> = None;
    let mut issues = 0i64;
    for o in &outcomes {
        match o {
            Outcome::Finite => finite += 1,
            Outcome::Infinite => infinite += 1,
            Outcome::Issue(issue) => {
                issues += 1;
                first_issue.get_or_insert(issue);
            }
        }
    }
    report.set_counter("samples", samples as i64);
    report.set_counter("finite_orders", finite);
    report.set_counter("infinite_orders", infinite);
    report.set_counter("violations", issues);
    if let Some((label, text)) = first_issue {
        if params.report_only {
            report.note(format!("report-only violation: {label}: {text}"));
        } else {
            report.fail(label, text);
        }
    }
    if params.report_only {
        report.bound();
        report.note("report-only mode: dichotomy for this q is recorded, not enforced");
    }
    Ok(report)
}

/// Non-default probe: lower-central samples of increasing class that stay
/// nontrivial over `S(q)[t,t^-1]` are evidence against nilpotence. Absence
/// of survivors is inconclusive, never a failure.
pub fn nilpotence(params: &SuiteParams) -> Result<SuiteReport> {
    let bparams = params.params_for_q()?;
    let max_class = params.c.unwrap_or(6);
    let samples_per_class = params.samples.unwrap_or(5);
    let mut report = SuiteReport::new("nilpotence", params.echo(Some(samples_per_class), Some(max_class), None));
    let s = build_quotient(params, &mut report)?;
    let gens = make_generators(params.rank)?;
    let ev = gens.evaluator_quotient(s)?;
    let salt_v = salt("nilpotence");
    let cfg = SamplerConfig::new(params.rank)
        .with_base_len(4)
        .with_max_exp(1);

    let mut deepest_survivor: Option<(u32, GroupWord)> = None;
    for class in 2..=max_class {
        let mut found = false;
        for i in 0..samples_per_class {
            let mut rng = rng_for(params.seed, salt_v ^ class as u64, i as u64);
            let expr = sample_series_expr(SeriesKind::LowerCentral(class), &cfg, &mut rng);
            let (m, _) = ev.evaluate_expr(&expr)?;
            if !ev.ops().is_identity(&m) {
                deepest_survivor = Some((class, expr.flatten()));
                found = true;
                break;
            }
        }
        if !found {
            break;
        }
    }
    match &deepest_survivor {
        Some((class, w)) => {
            report.set_counter("deepest_nontrivial_class", *class as i64);
            report.witness(&format!("class-{class} word surviving over S({})[t,t^-1]", bparams.q), w);
            report.note(format!(
                "nontrivial lower-central samples up to class {class}: bounded evidence against \
                 nilpotence (inconclusive beyond the budget)"
            ));
        }
        None => {
            report.note("no surviving lower-central sample found: inconclusive".to_string());
        }
    }
    report.bound();
    Ok(report)
}
