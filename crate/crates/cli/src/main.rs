//! Command-line front end.
//!
//! Exit codes: 0 = all checks passed (bounded-pass included), 1 = a
//! mathematical check failed, 2 = usage or infrastructure error. All
//! randomness flows from `--seed`; omitting it uses a fixed constant.

use burnside_core::groups::{
    decompose_un, element_order, make_generators, parse_word, specialize_t1_matrix, OrderVerdict,
};
use burnside_core::lattice::{BurnsideParams, UnitVariant};
use burnside_core::laurent::Assignment;
use burnside_core::matrix::{format_matrix, MatrixOps};
use burnside_core::quotient::QuotientS;
use burnside_verifier::{
    run_suite, Profile, RunReport, SuiteId, SuiteParams, DEFAULT_SEED, DEFAULT_UNIT_BOUND,
};
use clap::{Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "burnside",
    version,
    about = "Exact verification of metabelian Burnside matrix groups over Laurent polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// optional key=value configuration file; flags override file entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// prime-power exponent q
    #[arg(long, global = true)]
    q: Option<u64>,

    /// generator rank k (default 2)
    #[arg(long = "k", global = true)]
    rank: Option<usize>,

    /// augmentation truncation order
    #[arg(long, global = true)]
    c: Option<u32>,

    /// (t-1)-series truncation depth
    #[arg(long = "series-d", global = true)]
    series_d: Option<u32>,

    /// sample count override
    #[arg(long, global = true)]
    samples: Option<u32>,

    /// randomness seed (fixed constant when omitted, never wall clock)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// saturation unit-bound ceiling
    #[arg(long = "unit-bound", global = true)]
    unit_bound: Option<u32>,

    /// cyclotomic generator variant: include-unit-1 | exclude-unit-1
    #[arg(long, global = true)]
    variant: Option<String>,

    /// lattice cache directory
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,

    /// worker threads (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// output format: json | text
    #[arg(long, global = true)]
    format: Option<String>,

    /// report output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one verification suite, or `all` for the default matrix
    Verify {
        /// suite id (lemma1, lemma2, lemma3i, lemma3ii, lemma3iii, lemma4,
        /// lemma5, lemma5-remark, lemma67, thm1iv, thm2, prop3, sanov,
        /// appendix, tgens, nilpotence) or `all`
        suite: String,
        /// include the slow flagged runs (deep derived samples at q = 4)
        #[arg(long)]
        full: bool,
        /// include the non-default nilpotence probe
        #[arg(long)]
        nilpotence: bool,
    },
    /// Evaluate a word to a matrix over a chosen ring
    Eval {
        /// word in the textual format, e.g. "g1 g2^-1 [g2,g1]"
        word: String,
        /// coefficient ring: R (Laurent), S (Burnside quotient; needs --q),
        /// or sanov (integer probe)
        #[arg(long, default_value = "R")]
        ring: String,
        /// specialize t to an integer (1 or -1)
        #[arg(long)]
        t: Option<i64>,
    },
    /// Order of a word's image in the Burnside quotient group
    Order {
        word: String,
    },
    /// Structure of the quotient ring S(q)
    RingInfo,
    /// Decompose a word's t=1 image as u*I + [lambda_i v]
    Decompose {
        word: String,
    },
    /// Re-run the suites recorded in a report and compare verdicts
    Replay {
        report: PathBuf,
        /// restrict to one suite id
        #[arg(long)]
        suite: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Normalized configuration after merging the config file and flags.
struct Effective {
    params: SuiteParams,
    jobs: Option<usize>,
    format: String,
    out: Option<PathBuf>,
}

fn parse_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {} is not key=value", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn effective(cli: &Cli) -> Result<Effective, String> {
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    let get = |key: &str| file.get(key).cloned();
    let parse_num = |key: &str, v: String| {
        v.parse::<u64>()
            .map_err(|e| format!("config {key}: {e}"))
    };

    let mut params = SuiteParams::default();
    params.q = cli.q.or(match get("q") {
        Some(v) => Some(parse_num("q", v)?),
        None => None,
    });
    params.rank = cli
        .rank
        .or(match get("k") {
            Some(v) => Some(parse_num("k", v)? as usize),
            None => None,
        })
        .unwrap_or(2);
    params.c = cli.c.or(match get("c") {
        Some(v) => Some(parse_num("c", v)? as u32),
        None => None,
    });
    params.series_d = cli.series_d.or(match get("series-d") {
        Some(v) => Some(parse_num("series-d", v)? as u32),
        None => None,
    });
    params.samples = cli.samples.or(match get("samples") {
        Some(v) => Some(parse_num("samples", v)? as u32),
        None => None,
    });
    params.seed = cli
        .seed
        .or(match get("seed") {
            Some(v) => Some(parse_num("seed", v)?),
            None => None,
        })
        .unwrap_or(DEFAULT_SEED);
    params.unit_bound = cli
        .unit_bound
        .or(match get("unit-bound") {
            Some(v) => Some(parse_num("unit-bound", v)? as u32),
            None => None,
        })
        .unwrap_or(DEFAULT_UNIT_BOUND);
    if let Some(v) = cli.variant.clone().or(get("variant")) {
        params.variant = UnitVariant::parse(&v).map_err(|e| e.to_string())?;
    }
    params.cache_dir = cli.cache_dir.clone().or(get("cache-dir").map(PathBuf::from));

    let jobs = match cli.jobs.or(match get("jobs") {
        Some(v) => Some(parse_num("jobs", v)? as usize),
        None => None,
    }) {
        Some(0) => return Err("jobs must be at least 1".into()),
        other => other,
    };
    let format = cli
        .format
        .clone()
        .or(get("format"))
        .unwrap_or_else(|| "text".to_string());
    if format != "json" && format != "text" {
        return Err(format!("unknown format `{format}` (expected json or text)"));
    }
    let out = cli.out.clone().or(get("out").map(PathBuf::from));
    Ok(Effective {
        params,
        jobs,
        format,
        out,
    })
}

fn init_thread_pool(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // ignore failure when a pool already exists (e.g. repeated calls)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn emit_report(report: &RunReport, eff: &Effective) -> Result<(), String> {
    let body = match eff.format.as_str() {
        "json" => report.to_json(),
        _ => report.text_summary(),
    };
    match &eff.out {
        Some(path) => {
            // the report file is always the full JSON document; the format
            // flag controls the console rendering
            std::fs::write(path, report.to_json())
                .map_err(|e| format!("writing {}: {e}", path.display()))?;
            if eff.format == "text" {
                print!("{body}");
            }
            println!("report written to {}", path.display());
        }
        None => {
            print!("{body}");
            if eff.format == "text" {
                // text summaries end with a newline already
            } else {
                println!();
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, String> {
    let eff = effective(&cli)?;
    init_thread_pool(eff.jobs);
    match &cli.cmd {
        Cmd::Verify {
            suite,
            full,
            nilpotence,
        } => cmd_verify(&eff, suite, *full, *nilpotence),
        Cmd::Eval { word, ring, t } => cmd_eval(&eff, word, ring, *t),
        Cmd::Order { word } => cmd_order(&eff, word),
        Cmd::RingInfo => cmd_ring_info(&eff),
        Cmd::Decompose { word } => cmd_decompose(&eff, word),
        Cmd::Replay { report, suite } => cmd_replay(&eff, report, suite.as_deref()),
    }
}

fn config_echo(eff: &Effective) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    map.insert("seed".into(), eff.params.seed.to_string());
    map.insert("rank".into(), eff.params.rank.to_string());
    map.insert("unit-bound".into(), eff.params.unit_bound.to_string());
    map.insert("variant".into(), eff.params.variant.name().to_string());
    map.insert("format".into(), eff.format.clone());
    if let Some(q) = eff.params.q {
        map.insert("q".into(), q.to_string());
    }
    if let Some(c) = eff.params.c {
        map.insert("c".into(), c.to_string());
    }
    if let Some(d) = eff.params.series_d {
        map.insert("series-d".into(), d.to_string());
    }
    if let Some(s) = eff.params.samples {
        map.insert("samples".into(), s.to_string());
    }
    if let Some(j) = eff.jobs {
        map.insert("jobs".into(), j.to_string());
    }
    if let Some(dir) = &eff.params.cache_dir {
        map.insert("cache-dir".into(), dir.display().to_string());
    }
    map
}

fn cmd_verify(eff: &Effective, suite: &str, full: bool, nilpotence: bool) -> Result<u8, String> {
    let report = if suite == "all" {
        let mut profile = Profile {
            include_slow: full,
            include_nilpotence: nilpotence,
            base: eff.params.clone(),
            extra_config: config_echo(eff),
            ..Profile::default()
        };
        if let Some(q) = eff.params.q {
            profile.group_qs = vec![q];
            profile.lattice_qs = vec![q];
        }
        let mut base = profile.base.clone();
        base.q = None;
        profile.base = base;
        burnside_verifier::run_profile(&profile).map_err(|e| e.to_string())?
    } else {
        let id = SuiteId::parse(suite).map_err(|e| e.to_string())?;
        let suite_report = run_suite(id, &eff.params).map_err(|e| e.to_string())?;
        let mut report = RunReport::new(config_echo(eff));
        report.push(suite_report);
        report
    };
    emit_report(&report, eff)?;
    Ok(report.exit_code() as u8)
}

fn cmd_eval(eff: &Effective, word: &str, ring: &str, t: Option<i64>) -> Result<u8, String> {
    let expr = parse_word(word).map_err(|e| e.to_string())?;
    let w = expr.flatten();
    let rank = eff.params.rank;
    if w.max_index() > rank {
        return Err(format!(
            "word uses generator g{} but rank is {rank}",
            w.max_index()
        ));
    }
    let gens = make_generators(rank).map_err(|e| e.to_string())?;
    let rendered = match ring.to_ascii_lowercase().as_str() {
        "r" | "laurent" => {
            let ev = match t {
                None => gens.evaluator_laurent(),
                Some(1) => gens.evaluator_laurent_t1(),
                Some(v) => {
                    // general +-1 specialization of t only
                    if v != -1 {
                        return Err("t can only be specialized to 1 or -1".into());
                    }
                    let assignment = Assignment::new(rank)
                        .set_int(rank, -1)
                        .map_err(|e| e.to_string())?;
                    let m = gens
                        .evaluator_laurent()
                        .evaluate(&w)
                        .map_err(|e| e.to_string())?;
                    let spec = m
                        .try_map(|e| e.specialize(&assignment))
                        .map_err(|e| e.to_string())?;
                    return finish_eval(eff, format_matrix(&spec));
                }
            };
            let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
            format_matrix(&m)
        }
        "s" | "burnside" => {
            let q = eff.params.q.ok_or("--ring S requires --q")?;
            let bparams = BurnsideParams::new(q).map_err(|e| e.to_string())?;
            let (s, _) = QuotientS::build(
                &bparams,
                rank,
                eff.params.c,
                eff.params.variant,
                eff.params.unit_bound,
                eff.params.cache_dir.as_deref(),
            )
            .map_err(|e| e.to_string())?;
            match t {
                Some(1) => {
                    let ev = gens
                        .evaluator_quotient_t1(s.clone())
                        .map_err(|e| e.to_string())?;
                    let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
                    let shown = m.map(|r| s.describe_residue(r));
                    format_matrix(&shown)
                }
                Some(_) => return Err("over S the only t specialization is 1".into()),
                None => {
                    let ev = gens
                        .evaluator_quotient(s.clone())
                        .map_err(|e| e.to_string())?;
                    let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
                    let shown = m.map(|e| e.describe(&s));
                    format_matrix(&shown)
                }
            }
        }
        "sanov" => {
            if rank != 2 {
                return Err("the sanov probe is defined for rank 2".into());
            }
            let ev = gens
                .evaluator_int(&Assignment::sanov())
                .map_err(|e| e.to_string())?;
            let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
            format_matrix(&m)
        }
        other => return Err(format!("unknown ring `{other}` (expected R, S or sanov)")),
    };
    finish_eval(eff, rendered)
}

fn finish_eval(eff: &Effective, rendered: String) -> Result<u8, String> {
    if eff.format == "json" {
        println!("{}", serde_json::json!({ "matrix": rendered }));
    } else {
        println!("{rendered}");
    }
    Ok(0)
}

fn cmd_order(eff: &Effective, word: &str) -> Result<u8, String> {
    let q = eff.params.q.ok_or("order requires --q")?;
    let bparams = BurnsideParams::new(q).map_err(|e| e.to_string())?;
    let rank = eff.params.rank;
    bparams.check_rank(rank).map_err(|e| e.to_string())?;
    let w = parse_word(word).map_err(|e| e.to_string())?.flatten();
    let gens = make_generators(rank).map_err(|e| e.to_string())?;
    let (s, _) = QuotientS::build(
        &bparams,
        rank,
        eff.params.c,
        eff.params.variant,
        eff.params.unit_bound,
        eff.params.cache_dir.as_deref(),
    )
    .map_err(|e| e.to_string())?;
    let verdict = element_order(&w, &gens, s.clone(), q).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut exit = 0u8;
    match verdict {
        OrderVerdict::Finite { order } => {
            lines.push(format!("finite, order {order} (divides {q})"));
        }
        OrderVerdict::InfiniteTSum { t_sum } => {
            lines.push(format!("infinite (T-exponent sum {t_sum})"));
            // the congruence clause: W^q at t = 1 must be the identity
            let ev = gens
                .evaluator_quotient(s.clone())
                .map_err(|e| e.to_string())?;
            let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
            let powered = ev.ops().pow(&m, q).map_err(|e| e.to_string())?;
            let at_t1 = specialize_t1_matrix(&powered, &s);
            let sq = burnside_core::quotient::SqRing { s: s.clone() };
            let identity = MatrixOps::new(&sq).is_identity(&at_t1);
            lines.push(format!(
                "congruence clause: word^{q} = I at t = 1 over S({q}): {identity}"
            ));
            if !identity {
                exit = 1;
            }
        }
        OrderVerdict::Unknown { tried } => {
            lines.push(format!(
                "UNKNOWN: no certificate applies (tried powers {tried:?}); this \
                 contradicts the order dichotomy for prime q and is an open outcome for \
                 composite prime powers"
            ));
            exit = 1;
        }
    }
    if eff.format == "json" {
        println!(
            "{}",
            serde_json::json!({ "word": w.to_string(), "q": q, "report": lines })
        );
    } else {
        println!("word: {w}");
        for line in &lines {
            println!("{line}");
        }
    }
    Ok(exit)
}

fn cmd_ring_info(eff: &Effective) -> Result<u8, String> {
    let q = eff.params.q.ok_or("ring-info requires --q")?;
    let bparams = BurnsideParams::new(q).map_err(|e| e.to_string())?;
    let rank = eff.params.rank;
    bparams.check_rank(rank).map_err(|e| e.to_string())?;
    let (s, _) = QuotientS::build(
        &bparams,
        rank,
        eff.params.c,
        eff.params.variant,
        eff.params.unit_bound,
        eff.params.cache_dir.as_deref(),
    )
    .map_err(|e| e.to_string())?;
    let monomials: Vec<String> = (0..s.dim()).map(|i| s.index.describe(i)).collect();
    let divisors: Vec<String> = s.divisors.iter().map(|d| d.to_string()).collect();
    if eff.format == "json" {
        println!(
            "{}",
            serde_json::json!({
                "q": q,
                "p": bparams.p,
                "e": bparams.e,
                "variant": s.variant.name(),
                "truncation_order": s.trunc_order,
                "saturation_unit_bound": s.lattice.unit_bound,
                "ambient_rank": s.dim(),
                "free_rank": s.free_rank,
                "elementary_divisors": divisors,
                "basis_monomials": monomials,
            })
        );
    } else {
        println!("S({q}) = R/I({q})*Sigma  [variant {}]", s.variant.name());
        println!("truncation order c0 = {}", s.trunc_order);
        println!(
            "saturation: unit bound {} over {} rounds",
            s.lattice.unit_bound,
            s.stabilization().len()
        );
        println!(
            "additive structure: free rank {}, elementary divisors ({})",
            s.free_rank,
            divisors.join(",")
        );
        println!("basis monomials: {}", monomials.join(", "));
    }
    Ok(0)
}

fn cmd_decompose(eff: &Effective, word: &str) -> Result<u8, String> {
    let w = parse_word(word).map_err(|e| e.to_string())?.flatten();
    let rank = eff.params.rank;
    let gens = make_generators(rank).map_err(|e| e.to_string())?;
    let ev = gens.evaluator_laurent_t1();
    let m = ev.evaluate(&w).map_err(|e| e.to_string())?;
    let dec = decompose_un(&m, rank).map_err(|e| e.to_string())?;
    if eff.format == "json" {
        let lambdas: Vec<String> = dec.lambdas.iter().map(|l| l.to_string()).collect();
        println!(
            "{}",
            serde_json::json!({
                "word": w.to_string(),
                "unit": dec.unit.to_string(),
                "lambdas": lambdas,
            })
        );
    } else {
        println!("word: {w}");
        println!("u = {}", dec.unit);
        for (i, l) in dec.lambdas.iter().enumerate() {
            println!("lambda{} = {}", i + 1, l);
        }
    }
    Ok(0)
}

fn cmd_replay(eff: &Effective, path: &PathBuf, only: Option<&str>) -> Result<u8, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let recorded: RunReport =
        serde_json::from_str(&text).map_err(|e| format!("parsing report: {e}"))?;
    let mut mismatches = 0usize;
    let mut replayed = 0usize;
    for suite in &recorded.suites {
        if let Some(only_id) = only {
            if suite.suite != only_id {
                continue;
            }
        }
        let id = SuiteId::parse(&suite.suite).map_err(|e| e.to_string())?;
        let mut params = SuiteParams::from_echo(&suite.params).map_err(|e| e.to_string())?;
        params.cache_dir = eff.params.cache_dir.clone();
        let fresh = run_suite(id, &params).map_err(|e| e.to_string())?;
        replayed += 1;
        let matched = fresh.verdict == suite.verdict;
        if !matched {
            mismatches += 1;
        }
        println!(
            "{:<14} q={:<4} recorded {} replayed {} {}",
            suite.suite,
            suite
                .params
                .q
                .map(|q| q.to_string())
                .unwrap_or_else(|| "-".to_string()),
            suite.verdict,
            fresh.verdict,
            if matched { "ok" } else { "MISMATCH" }
        );
    }
    if replayed == 0 {
        return Err("no suites matched the replay filter".into());
    }
    println!("replayed {replayed} suites, {mismatches} mismatches");
    Ok(if mismatches == 0 { 0 } else { 1 })
}
