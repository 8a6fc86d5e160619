//! Suites over the `(t-1)`-series expansion: shape of the expansion, the
//! augmentation membership of the coefficients for commutator words, and
//! the doubling descent along the derived series.

use burnside_core::groups::{make_generators, sample_series_expr, SamplerConfig, SeriesKind};
use burnside_core::matrix::{LaurentRing, Matrix, MatrixOps};
use burnside_core::trunc::{
    matrix_sigma_order, series_coefficients_exact, to_truncated, SeriesExpansion, TruncPoly,
    TruncRing, TruncationContext,
};

use super::{par_map, rng_for, salt, Issue};
use crate::{Result, SuiteParams, SuiteReport, VerifierError};

fn trunc_matrix(
    m: &Matrix<burnside_core::laurent::LaurentPoly>,
    ctx: TruncationContext,
) -> Result<Matrix<TruncPoly>> {
    m.try_map(|e| to_truncated(e, ctx)).map_err(Into::into)
}

/// Shape of the series expansion: the frozen expansions of `M2 T` and its
/// inverse, the identity word, and two independent routes to the
/// coefficients of random words (truncated evaluation vs exact binomial
/// re-expansion over the Laurent ring).
pub fn lemma4(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config(
            "lemma4 checks the rank-2 displays".into(),
        ));
    }
    let samples = params.samples.unwrap_or(100);
    let c = params.c.unwrap_or(4);
    let d = params.series_d.unwrap_or(4);
    let mut report = SuiteReport::new("lemma4", params.echo(Some(samples), Some(c), Some(d)));
    let ctx = TruncationContext::new(2, c, d)?;
    let gens = make_generators(2)?;
    let ev = gens.evaluator_trunc(ctx)?;
    let laurent_ev = gens.evaluator_laurent();
    let ring = LaurentRing { rank: 2 };
    let lops = MatrixOps::new(&ring);
    let tring = TruncRing { ctx };
    let tops = MatrixOps::new(&tring);

    // frozen: M2 T = M2 + (t-1) M2 S, all higher coefficients zero
    let g2 = ev.evaluate(&burnside_core::groups::GroupWord::new([(2, 1)]))?;
    let series = SeriesExpansion::of_matrix(&g2, ctx);
    let m2_trunc = trunc_matrix(gens.m(2), ctx)?;
    if !tops.eq(&series.constant, &m2_trunc)? {
        report.fail("M2T constant term is not M2", "g2");
    }
    let m2s = lops.mul(gens.m(2), gens.shift(2))?;
    if !tops.eq(&series.coefficients[0], &trunc_matrix(&m2s, ctx)?)? {
        report.fail("M2T first coefficient is not M2*S", "g2");
    }
    for (i, a) in series.coefficients.iter().enumerate().skip(1) {
        if !a.entries().iter().all(|e| e.is_zero()) {
            report.fail(
                "M2T coefficient beyond degree 1 is nonzero",
                format!("index {}", i + 1),
            );
        }
    }

    // frozen: (M2 T)^-1 alternates +-(S M2^-1) from degree 1 on
    let g2_inv = ev.evaluate(&burnside_core::groups::GroupWord::new([(2, -1)]))?;
    let series_inv = SeriesExpansion::of_matrix(&g2_inv, ctx);
    let s_m2inv = lops.mul(gens.shift(2), gens.m_inv(2))?;
    for i in 1..d {
        let expected = if i % 2 == 1 {
            lops.scale(&burnside_core::laurent::LaurentPoly::from_i64(2, -1), &s_m2inv)
        } else {
            s_m2inv.clone()
        };
        let got = series_inv.coefficient(i).expect("materialized");
        if !tops.eq(got, &trunc_matrix(&expected, ctx)?)? {
            report.fail(
                "inverse series coefficient mismatch",
                format!("(M2T)^-1 at degree {i}"),
            );
        }
    }

    // identity word: constant I, all coefficients zero
    let id_series = SeriesExpansion::of_matrix(&ev.identity(), ctx);
    if !tops.is_identity(&id_series.constant)
        || !id_series
            .coefficients
            .iter()
            .all(|a| a.entries().iter().all(|e| e.is_zero()))
    {
        report.fail("identity word has a nontrivial expansion", "e");
    }

    // random words: reassembly, the t=1 route, and (on a subset) the exact
    // binomial route over the Laurent ring
    let s = salt("lemma4");
    let cfg = SamplerConfig::new(2).with_base_len(8);
    let ev_t1 = gens.evaluator_trunc_t1(ctx)?;
    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let w = burnside_core::groups::random_free_word(&cfg, &mut rng);
        let run = || -> std::result::Result<Option<Issue>, crate::VerifierError> {
            let m = ev.evaluate(&w)?;
            let series = SeriesExpansion::of_matrix(&m, ctx);
            if !tops.eq(&series.reassemble(), &m)? {
                return Ok(Some(("reassembly mismatch".into(), w.to_string())));
            }
            let t1 = ev_t1.evaluate(&w)?;
            if !tops.eq(&series.constant, &t1)? {
                return Ok(Some((
                    "constant term differs from the t=1 image".into(),
                    w.to_string(),
                )));
            }
            if i % 5 == 0 {
                // exact route: evaluate over R[t,t^-1], expand by binomials
                let exact = laurent_ev.evaluate(&w)?;
                let coeffs = series_coefficients_exact(&exact, 2, d);
                for (deg, coeff) in coeffs.iter().enumerate() {
                    let via_exact = trunc_matrix(coeff, ctx)?;
                    let via_series = series.coefficient(deg as u32).expect("below D");
                    if !tops.eq(&via_exact, via_series)? {
                        return Ok(Some((
                            format!("exact and truncated coefficient differ at degree {deg}"),
                            w.to_string(),
                        )));
                    }
                }
            }
            Ok(None)
        };
        match run() {
            Ok(issue) => issue,
            Err(e) => Some(("infrastructure".into(), format!("{w}: {e}"))),
        }
    });
    report.set_counter("samples", samples as i64);
    report.set_counter("exact_route_samples", (samples as usize).div_ceil(5) as i64);
    if let Some((label, text)) = outcomes.iter().flatten().next() {
        report.fail(label, text);
    }
    Ok(report)
}

/// Commutator words have every materialized series coefficient inside the
/// augmentation ideal.
pub fn lemma5(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config("lemma5 runs at rank 2".into()));
    }
    let samples = params.samples.unwrap_or(100);
    let c = params.c.unwrap_or(3);
    let d = params.series_d.unwrap_or(6);
    let mut report = SuiteReport::new("lemma5", params.echo(Some(samples), Some(c), Some(d)));
    let ctx = TruncationContext::new(2, c, d)?;
    let gens = make_generators(2)?;
    let ev = gens.evaluator_trunc(ctx)?;
    let s = salt("lemma5");
    let cfg = SamplerConfig::new(2);

    let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let expr = sample_series_expr(SeriesKind::Derived(1), &cfg, &mut rng);
        let (m, _) = match ev.evaluate_expr(&expr) {
            Ok(p) => p,
            Err(e) => return Some(("infrastructure".into(), format!("{e}"))),
        };
        let series = SeriesExpansion::of_matrix(&m, ctx);
        for i in 1..d {
            let a = series.coefficient(i).expect("below D");
            if matrix_sigma_order(a, ctx) < 1 {
                return Some((
                    format!("coefficient {i} outside the augmentation ideal"),
                    expr.flatten().to_string(),
                ));
            }
        }
        None
    });
    report.set_counter("samples", samples as i64);
    if let Some((label, text)) = outcomes.iter().flatten().next() {
        report.fail(label, text);
    }
    // membership is verified for materialized coefficients only
    report.bound();
    report.note(format!(
        "series coefficients checked for degrees 1..{d}; tails are outside the truncation"
    ));
    Ok(report)
}

/// Reported (non-blocking) refinement for second-derived words: first
/// coefficient in Sigma^3, the rest in Sigma^2. The constant term must be
/// the identity exactly.
pub fn lemma5_remark(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config("lemma5-remark runs at rank 2".into()));
    }
    let samples = params.samples.unwrap_or(50);
    let c = params.c.unwrap_or(5);
    let d = params.series_d.unwrap_or(6);
    let mut report =
        SuiteReport::new("lemma5-remark", params.echo(Some(samples), Some(c), Some(d)));
    let ctx = TruncationContext::new(2, c, d)?;
    let gens = make_generators(2)?;
    let ev = gens.evaluator_trunc(ctx)?;
    let tring = TruncRing { ctx };
    let tops = MatrixOps::new(&tring);
    let s = salt("lemma5-remark");
    let cfg = SamplerConfig::new(2).with_base_len(8);

    struct Sample {
        constant_ok: bool,
        a1_order: u32,
        rest_order: u32,
        word: String,
    }

    let outcomes: Vec<std::result::Result<Sample, Issue>> = par_map(samples, |i| {
        let mut rng = rng_for(params.seed, s, i as u64);
        let expr = sample_series_expr(SeriesKind::Derived(2), &cfg, &mut rng);
        let (m, _) = match ev.evaluate_expr(&expr) {
            Ok(p) => p,
            Err(e) => return Err(("infrastructure".into(), format!("{e}"))),
        };
        let series = SeriesExpansion::of_matrix(&m, ctx);
        let constant_ok = tops.is_identity(&series.constant);
        let a1_order = matrix_sigma_order(series.coefficient(1).unwrap(), ctx);
        let rest_order = (2..d)
            .map(|i| matrix_sigma_order(series.coefficient(i).unwrap(), ctx))
            .min()
            .unwrap_or(ctx.c);
        Ok(Sample {
            constant_ok,
            a1_order,
            rest_order,
            word: expr.flatten().to_string(),
        })
    });

    let mut min_a1 = ctx.c;
    let mut min_rest = ctx.c;
    let mut violations = 0i64;
    for outcome in &outcomes {
        match outcome {
            Err((label, text)) => report.fail(label, text),
            Ok(sample) => {
                if !sample.constant_ok {
                    // second-derived words evaluate to I at t = 1; a failure
                    // here is a real bug, not part of the reported claim
                    report.fail("second-derived constant term is not I", &sample.word);
                }
                min_a1 = min_a1.min(sample.a1_order);
                min_rest = min_rest.min(sample.rest_order);
                let holds = sample.a1_order >= 3 && sample.rest_order >= 2;
                if !holds {
                    violations += 1;
                    report.witness("claimed refinement violated by", &sample.word);
                }
            }
        }
    }
    report.set_counter("samples", samples as i64);
    report.set_counter("min_first_coefficient_order", min_a1 as i64);
    report.set_counter("min_remaining_coefficient_order", min_rest as i64);
    report.set_counter("refinement_violations", violations);
    report.note(
        "refinement claim (first coefficient in Sigma^3, rest in Sigma^2) is reported, \
         not build-blocking",
    );
    report.bound();
    Ok(report)
}

/// Descent along the derived series: level-k words have the first `d - 1`
/// coefficients exactly zero (`d = 2^{k-2}`) and every later materialized
/// coefficient inside `Sigma^{2d}`.
pub fn lemma67(params: &SuiteParams) -> Result<SuiteReport> {
    if params.rank != 2 {
        return Err(VerifierError::Config("lemma67 runs at rank 2".into()));
    }
    let base_samples = params.samples.unwrap_or(25);
    let mut report = SuiteReport::new("lemma67", params.echo(Some(base_samples), None, None));
    let gens = make_generators(2)?;
    let s = salt("lemma67");

    for level in [3u32, 4] {
        let d_gap = 1u32 << (level - 2); // 2^{k-2}
        let c = params.c.unwrap_or(2 * d_gap + 1);
        let depth = params.series_d.unwrap_or(d_gap + 2);
        let ctx = TruncationContext::new(2, c, depth)?;
        let ev = gens.evaluator_trunc(ctx)?;
        let tring = TruncRing { ctx };
        let tops = MatrixOps::new(&tring);
        let samples = if level == 3 {
            base_samples
        } else {
            (base_samples / 4).max(3)
        };
        let cfg = if level == 3 {
            SamplerConfig::new(2).with_base_len(6)
        } else {
            SamplerConfig::new(2).with_base_len(3).with_max_exp(1)
        };

        let outcomes: Vec<Option<Issue>> = par_map(samples, |i| {
            let mut rng = rng_for(params.seed, s ^ level as u64, i as u64);
            let expr = sample_series_expr(SeriesKind::Derived(level), &cfg, &mut rng);
            let (m, _) = match ev.evaluate_expr(&expr) {
                Ok(p) => p,
                Err(e) => return Some(("infrastructure".into(), format!("{e}"))),
            };
            let series = SeriesExpansion::of_matrix(&m, ctx);
            if !tops.is_identity(&series.constant) {
                return Some((
                    format!("level-{level} constant term is not I"),
                    expr.flatten().to_string(),
                ));
            }
            for i in 1..d_gap {
                let a = series.coefficient(i).expect("below D");
                if !a.entries().iter().all(|e| e.is_zero()) {
                    return Some((
                        format!("level-{level} coefficient {i} should vanish"),
                        expr.flatten().to_string(),
                    ));
                }
            }
            for i in d_gap..depth {
                let a = series.coefficient(i).expect("below D");
                if matrix_sigma_order(a, ctx) < 2 * d_gap {
                    return Some((
                        format!(
                            "level-{level} coefficient {i} below augmentation power {}",
                            2 * d_gap
                        ),
                        expr.flatten().to_string(),
                    ));
                }
            }
            None
        });
        report.count(&format!("level{level}_samples"), samples as i64);
        if let Some((label, text)) = outcomes.iter().flatten().next() {
            report.fail(label, text);
        }
    }
    report.bound();
    report.note("coefficient tails beyond the materialized depth are outside the truncation");
    Ok(report)
}
