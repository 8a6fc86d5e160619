//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test -- --nocapture`). Tolerances and sample
//! counts are pinned here, not configurable.

use burnside_core::groups::{closure_over_sq, make_generators};
use burnside_core::lattice::{
    saturate_ideal_lattice, BurnsideParams, IdealKind, MonomialIndex, UnitVariant,
};
use burnside_core::matrix::{MatrixOps, Ring};
use burnside_core::quotient::{QuotientS, SqRing};
use burnside_core::rng::SplitMix64;
use burnside_verifier::{
    derived_length_bound, run_suite, SuiteId, SuiteParams, Verdict,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashSet;
use std::time::Instant;

const SEED: u64 = 0xACCE_0001;

fn params() -> SuiteParams {
    SuiteParams::default().with_seed(SEED)
}

fn announce(criterion: u32, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_decomposition_500_words() {
    let start = Instant::now();
    let report = run_suite(SuiteId::Lemma1, &params().with_samples(500)).unwrap();
    let elapsed = start.elapsed();
    let ok = report.verdict == Verdict::Pass
        && report.counters["decomposed"] == 500
        && elapsed.as_secs() < 60;
    announce(
        1,
        ok,
        &format!(
            "500/500 rank-2 words decompose as uI+N with the linear relation and vM=v \
             ({} ms)",
            elapsed.as_millis()
        ),
    );
}

#[test]
fn criterion_02_power_formula() {
    let start = Instant::now();
    let report = run_suite(SuiteId::Lemma2, &params().with_samples(100)).unwrap();
    let elapsed = start.elapsed();
    let ok = report.verdict == Verdict::Pass
        && report.counters["power_samples"] == 100
        && elapsed.as_secs() < 60;
    announce(
        2,
        ok,
        &format!(
            "closed power formula equals iterated products for n in 2..=6 on 100 matrices \
             ({} ms)",
            elapsed.as_millis()
        ),
    );
}

#[test]
fn criterion_03_commutator_calculus() {
    let report = run_suite(SuiteId::Lemma2, &params()).unwrap();
    let ok = report.verdict == Verdict::Pass
        && report.counters["basic_commutator_cases"] == 16
        && report.counters["lower_central_samples"] >= 20;
    announce(
        3,
        ok,
        "16 basic-commutator lambda pairs match word evaluation; lower-central samples of \
         class <= 5 have lambdas in the expected augmentation powers",
    );
}

#[test]
fn criterion_04_cyclotomic_inclusions() {
    let dir = tempfile::tempdir().unwrap();
    let mut all_ok = true;
    let mut details = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let mut p = params().with_q(q);
        p.cache_dir = Some(dir.path().to_path_buf());
        let start = Instant::now();
        let report = run_suite(SuiteId::Lemma3i, &p).unwrap();
        let elapsed = start.elapsed();
        let mut ok = report.verdict == Verdict::BoundedPass
            && report.counters["stabilization_rounds"] >= 3
            && !report.witnesses.is_empty();
        if q == 4 {
            ok &= report.counters.get("p_power_included") == Some(&1);
        }
        if q <= 3 {
            ok &= elapsed.as_secs() < 10;
        } else {
            ok &= elapsed.as_secs() < 600;
        }
        all_ok &= ok;
        details.push(format!("q={q} {}ms", elapsed.as_millis()));
        // cached rerun must also be fast and agree
        let rerun = run_suite(SuiteId::Lemma3i, &p).unwrap();
        all_ok &= rerun.verdict == report.verdict && !rerun.cache_files.is_empty();
    }
    announce(
        4,
        all_ok,
        &format!(
            "bounded inclusion sigma^(e*phi) in I(q)+sigma^c with stabilized saturation, \
             strict-clause witnesses, and the scaled q=4 clause [{}]",
            details.join(", ")
        ),
    );
}

/// Independent hand-enumerable oracle for the `I(2)*Sigma` lattice at
/// truncation 2: expand `(1+u)(1-x_j)` by hand modulo degree 2 and span.
/// `u = x^i y^j` maps to `1 + i*a + j*b` modulo degree 2, so every
/// generator reduces to `-2a` or `-2b`.
fn brute_i2_sigma_vectors() -> Vec<Vec<i64>> {
    let mut gens: HashSet<Vec<i64>> = HashSet::new();
    for i in -3i64..=3 {
        for j in -3i64..=3 {
            // (2 + i a + j b) * (-a) = -2a (mod degree 2)
            // (2 + i a + j b) * (-b) = -2b
            let _ = (i, j); // the unit exponents cancel below degree 2
            gens.insert(vec![0, -2, 0]);
            gens.insert(vec![0, 0, -2]);
        }
    }
    gens.into_iter().collect()
}

#[test]
fn criterion_05_s2_structure() {
    // lattice route, pre-validated by the hand enumeration
    let bparams = BurnsideParams::new(2).unwrap();
    let lat = saturate_ideal_lattice(
        &bparams,
        2,
        IdealKind::CyclotomicTimesSigma,
        2,
        UnitVariant::IncludeUnitOne,
        8,
    )
    .unwrap();
    let brute = brute_i2_sigma_vectors();
    let mut oracle_ok = true;
    // every brute generator is in the computed lattice
    for g in &brute {
        let v: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
        oracle_ok &= lat.basis.contains(&v);
    }
    // computed basis rows lie in the integer span of the brute generators:
    // the span is { (0, 2i, 2j) }, directly checkable
    for row in lat.basis.rows() {
        oracle_ok &= row[0].is_zero()
            && (&row[1] % BigInt::from(2)).is_zero()
            && (&row[2] % BigInt::from(2)).is_zero();
    }

    // additive structure from SNF
    let (s, _) = QuotientS::build(&bparams, 2, None, UnitVariant::IncludeUnitOne, 8, None).unwrap();
    let divisors_ok = s.free_rank == 1
        && s.divisors == vec![BigInt::from(2), BigInt::from(2)]
        && s.dim() == 3;

    // exhaustive group closure over S(2)
    let gens = make_generators(2).unwrap();
    let closure = closure_over_sq(&gens, s.clone(), 64).unwrap().unwrap();
    let closure_ok = closure.len() == 4;
    let sq_ring = SqRing { s };
    let ops = MatrixOps::new(&sq_ring);
    let mut abelian = true;
    let mut exponent_two = true;
    for a in &closure {
        for b in &closure {
            abelian &= ops
                .eq(&ops.mul(a, b).unwrap(), &ops.mul(b, a).unwrap())
                .unwrap();
        }
        exponent_two &= ops.is_identity(&ops.pow(a, 2).unwrap());
    }

    announce(
        5,
        oracle_ok && divisors_ok && closure_ok && abelian && exponent_two,
        "S(2) additive group is Z + Z/2 + Z/2 (SNF, pre-validated by hand enumeration); \
         the matrix group closes into exactly 4 commuting exponent-2 matrices",
    );
}

#[test]
fn criterion_06_solvability_at_the_bound() {
    // derived length bounds
    let bounds: Vec<u32> = [2u64, 3, 4, 5]
        .iter()
        .map(|&q| derived_length_bound(&BurnsideParams::new(q).unwrap()))
        .collect();
    let bounds_ok = bounds == vec![2, 3, 4, 4];

    // q = 2: 200 second-derived words vanish
    let r2 = run_suite(SuiteId::Thm1iv, &params().with_q(2).with_samples(200)).unwrap();
    let q2_ok = r2.verdict == Verdict::Pass && r2.counters["identity_checks"] == 200;

    // q = 3: 100 third-derived words vanish and a second-derived word survives
    let r3 = run_suite(SuiteId::Thm1iv, &params().with_q(3).with_samples(100)).unwrap();
    let q3_ok = r3.verdict == Verdict::Pass
        && r3.counters["identity_checks"] == 100
        && r3.counters["sharpness_found"] == 1;

    // q = 4 (slow, flagged): fourth-derived words vanish; sharpness search is
    // best-effort and must not fail the run
    let r4 = run_suite(SuiteId::Thm1iv, &params().with_q(4).with_samples(3)).unwrap();
    let q4_ok = r4.verdict != Verdict::Fail && r4.counters["identity_checks"] == 3;

    announce(
        6,
        bounds_ok && q2_ok && q3_ok && q4_ok,
        &format!(
            "derived-length bounds {bounds:?}; identity checks exact for q=2 (200), q=3 \
             (100, sharp), q=4 (3, flagged)"
        ),
    );
}

#[test]
fn criterion_07_order_dichotomy() {
    let mut ok = true;
    for q in [2u64, 3] {
        let thm2 = run_suite(SuiteId::Thm2, &params().with_q(q).with_samples(100)).unwrap();
        ok &= thm2.verdict == Verdict::Pass
            && thm2.counters["zero_t_sum_samples"] == 100
            && thm2.counters["nonzero_t_sum_samples"] == 50
            && thm2.counters["violations"] == 0;
        let prop3 = run_suite(SuiteId::Prop3, &params().with_q(q)).unwrap();
        ok &= prop3.verdict == Verdict::Pass && prop3.counters["violations"] == 0;
    }
    // q = 4 runs in report-only mode: violations are recorded, never fatal
    let mut p4 = params().with_q(4).with_samples(20);
    p4.report_only = true;
    let thm2_q4 = run_suite(SuiteId::Thm2, &p4).unwrap();
    ok &= thm2_q4.verdict == Verdict::BoundedPass;
    let prop3_q4 = run_suite(SuiteId::Prop3, &p4).unwrap();
    ok &= prop3_q4.verdict == Verdict::BoundedPass;
    announce(
        7,
        ok,
        "zero T-sum words have W^q = I and nonzero T-sum words are certified infinite with \
         W^q = I at t=1, for q in {2,3}; q=4 recorded in report-only mode",
    );
}

#[test]
fn criterion_08_series_membership() {
    let mut p = params().with_samples(100);
    p.series_d = Some(6);
    let lemma5 = run_suite(SuiteId::Lemma5, &p).unwrap();
    let l5_ok = lemma5.verdict == Verdict::BoundedPass && lemma5.counters["samples"] == 100;

    let remark = run_suite(SuiteId::Lemma5Remark, &params().with_samples(50)).unwrap();
    let remark_ok = remark.verdict == Verdict::BoundedPass
        && remark.counters.contains_key("min_first_coefficient_order")
        && remark.counters.contains_key("refinement_violations");
    announce(
        8,
        l5_ok && remark_ok,
        &format!(
            "100 commutator words have all materialized coefficients in the augmentation \
             ideal (D=6); refinement reported non-blocking (min first-coefficient order {})",
            remark.counters["min_first_coefficient_order"]
        ),
    );
}

#[test]
fn criterion_09_derived_series_descent() {
    let report = run_suite(SuiteId::Lemma67, &params().with_samples(25)).unwrap();
    let ok = report.verdict == Verdict::BoundedPass
        && report.counters["level3_samples"] == 25
        && report.counters["level4_samples"] >= 3;
    announce(
        9,
        ok,
        "derived levels 3 and 4 (gaps d=2, d=4): coefficients vanish below d and sit in \
         sigma^(2d) from d on, exactly on materialized coefficients",
    );
}

#[test]
fn criterion_10_integer_probe() {
    let report = run_suite(SuiteId::Sanov, &params().with_samples(500)).unwrap();
    let ok = report.verdict == Verdict::Pass && report.counters["identity_hits"] == 0;
    announce(
        10,
        ok,
        "500 nonempty reduced words evaluate to non-identity integer matrices under \
         x=1, y=t=-1",
    );
}

#[test]
fn criterion_11_rank_generalization() {
    let tgens = run_suite(SuiteId::Tgens, &params()).unwrap();
    let tg_ok = tgens.verdict == Verdict::Pass
        && tgens.counters["rank3_commuting"] == 1
        && tgens.counters["guard_refuses_rank4_q2"] == 1;
    let lemma1_rank3 =
        run_suite(SuiteId::Lemma1, &params().with_rank(3).with_samples(100)).unwrap();
    let l1_ok = lemma1_rank3.verdict == Verdict::Pass
        && lemma1_rank3.counters["decomposed"] == 100;
    // the guard also fires at configuration time
    let guard = params().with_q(2).with_rank(4).validate(SuiteId::Thm2);
    announce(
        11,
        tg_ok && l1_ok && guard.is_err(),
        "rank-3 shift generators commute exactly, rank-3 decomposition passes 100 samples, \
         and quotient suites refuse rank 4 at q=2",
    );
}

#[test]
fn criterion_12_oracle_self_tests() {
    // (a) lattice membership vs reachability enumeration, ambient ranks 3 and 4
    let mut membership_ok = true;
    for (q, rank) in [(2u64, 2usize), (2, 3)] {
        let bparams = BurnsideParams::new(q).unwrap();
        let lat = saturate_ideal_lattice(
            &bparams,
            rank,
            IdealKind::CyclotomicTimesSigma,
            2,
            UnitVariant::IncludeUnitOne,
            8,
        )
        .unwrap();
        let index = MonomialIndex::new(rank, 2);
        let ambient = index.len();
        assert!(ambient <= 4);
        // brute span: BFS over +-basis-row moves inside a working box
        let rows: Vec<Vec<i64>> = lat
            .basis
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).expect("small lattice entries"))
                    .collect()
            })
            .collect();
        let work_bound = 30i64;
        let mut reachable: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = vec![vec![0i64; ambient]];
        reachable.insert(queue[0].clone());
        while let Some(v) = queue.pop() {
            for row in &rows {
                for sign in [1i64, -1] {
                    let next: Vec<i64> = v
                        .iter()
                        .zip(row)
                        .map(|(a, b)| a + sign * b)
                        .collect();
                    if next.iter().any(|x| x.abs() > work_bound) {
                        continue;
                    }
                    if reachable.insert(next.clone()) {
                        queue.push(next);
                    }
                }
            }
        }
        // exhaustive comparison on the test box
        let test_bound = 4i64;
        let mut coords = vec![-test_bound; ambient];
        loop {
            let as_big: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
            let by_lattice = lat.basis.contains(&as_big);
            let by_brute = reachable.contains(&coords);
            if by_lattice != by_brute {
                membership_ok = false;
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == ambient {
                    break;
                }
                coords[pos] += 1;
                if coords[pos] <= test_bound {
                    break;
                }
                coords[pos] = -test_bound;
                pos += 1;
            }
            if pos == ambient {
                break;
            }
        }
    }

    // (b) ring laws on 1000 random residue triples
    let mut laws_ok = true;
    for q in [2u64, 3] {
        let bparams = BurnsideParams::new(q).unwrap();
        let (s, _) =
            QuotientS::build(&bparams, 2, None, UnitVariant::IncludeUnitOne, 10, None).unwrap();
        let ring = SqRing { s: s.clone() };
        let mut rng = SplitMix64::new(SEED ^ q);
        let random_residue = |rng: &mut SplitMix64| {
            let raw: Vec<BigInt> = (0..s.dim())
                .map(|_| BigInt::from(rng.range_i64(-9, 9)))
                .collect();
            s.reduce(raw)
        };
        for _ in 0..500 {
            let a = random_residue(&mut rng);
            let b = random_residue(&mut rng);
            let c = random_residue(&mut rng);
            let assoc = ring.mul(&a, &ring.mul(&b, &c)) == ring.mul(&ring.mul(&a, &b), &c);
            let dist = ring.mul(&a, &ring.add(&b, &c))
                == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c));
            let comm = ring.mul(&a, &b) == ring.mul(&b, &a);
            let unital = ring.mul(&ring.one(), &a) == a;
            if !(assoc && dist && comm && unital) {
                laws_ok = false;
            }
        }
    }
    announce(
        12,
        membership_ok && laws_ok,
        "lattice membership agrees with exhaustive enumeration on ambient rank <= 4; \
         ring laws hold on 1000 random residue triples",
    );
}
