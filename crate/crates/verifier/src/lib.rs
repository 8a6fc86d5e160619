//! Seeded verification suites over the metabelian Burnside matrix groups.
//!
//! Every suite checks one structural statement about the groups built from
//! the generators over `R[t,t^-1]` and its quotients — decomposition shape,
//! power formula, ideal inclusions, `(t-1)`-series descent, exponent and
//! order dichotomies — with seeded randomness and machine-readable
//! pass/fail reports carrying reproducing witnesses.
//!
//! Verdicts are three-valued: `pass` for exact confirmations, `fail` with a
//! witness, and `bounded-pass` for adic/truncated confirmations (every
//! claim that quantifies over all augmentation degrees or all series
//! coefficients is only checkable below the configured truncation).

pub mod report;
mod suites;

pub use report::{ParamsEcho, RunReport, SuiteReport, Verdict, Witness};

use burnside_core::lattice::{BurnsideParams, UnitVariant};
use burnside_core::CoreError;
use std::collections::BTreeMap;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("infrastructure: {0}")]
    Infra(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, VerifierError>;

/// Seed used when the caller does not supply one (never wall-clock).
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

/// Default ceiling for the lattice saturation unit bound.
pub const DEFAULT_UNIT_BOUND: u32 = 12;

/// The suite identifiers. Each maps to exactly one verified statement; the
/// full statement table lives in the README.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Lemma1,
    Lemma2,
    Lemma3i,
    Lemma3ii,
    Lemma3iii,
    Lemma4,
    Lemma5,
    Lemma5Remark,
    Lemma67,
    Thm1iv,
    Thm2,
    Prop3,
    Sanov,
    Appendix,
    Tgens,
    Nilpotence,
}

impl SuiteId {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Lemma1 => "lemma1",
            SuiteId::Lemma2 => "lemma2",
            SuiteId::Lemma3i => "lemma3i",
            SuiteId::Lemma3ii => "lemma3ii",
            SuiteId::Lemma3iii => "lemma3iii",
            SuiteId::Lemma4 => "lemma4",
            SuiteId::Lemma5 => "lemma5",
            SuiteId::Lemma5Remark => "lemma5-remark",
            SuiteId::Lemma67 => "lemma67",
            SuiteId::Thm1iv => "thm1iv",
            SuiteId::Thm2 => "thm2",
            SuiteId::Prop3 => "prop3",
            SuiteId::Sanov => "sanov",
            SuiteId::Appendix => "appendix",
            SuiteId::Tgens => "tgens",
            SuiteId::Nilpotence => "nilpotence",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma1" => SuiteId::Lemma1,
            "lemma2" => SuiteId::Lemma2,
            "lemma3i" => SuiteId::Lemma3i,
            "lemma3ii" => SuiteId::Lemma3ii,
            "lemma3iii" => SuiteId::Lemma3iii,
            "lemma4" => SuiteId::Lemma4,
            "lemma5" => SuiteId::Lemma5,
            "lemma5-remark" => SuiteId::Lemma5Remark,
            "lemma67" => SuiteId::Lemma67,
            "thm1iv" => SuiteId::Thm1iv,
            "thm2" => SuiteId::Thm2,
            "prop3" => SuiteId::Prop3,
            "sanov" => SuiteId::Sanov,
            "appendix" => SuiteId::Appendix,
            "tgens" => SuiteId::Tgens,
            "nilpotence" => SuiteId::Nilpotence,
            _ => {
                return Err(VerifierError::Config(format!(
                    "unknown suite id `{s}`"
                )))
            }
        })
    }

    /// Whether the suite needs the quotient-ring parameter `q`.
    pub fn needs_q(&self) -> bool {
        matches!(
            self,
            SuiteId::Lemma3i
                | SuiteId::Lemma3iii
                | SuiteId::Thm1iv
                | SuiteId::Thm2
                | SuiteId::Prop3
                | SuiteId::Nilpotence
        )
    }

    pub fn all() -> &'static [SuiteId] {
        &[
            SuiteId::Sanov,
            SuiteId::Lemma1,
            SuiteId::Appendix,
            SuiteId::Lemma2,
            SuiteId::Lemma4,
            SuiteId::Lemma5,
            SuiteId::Lemma5Remark,
            SuiteId::Lemma67,
            SuiteId::Lemma3ii,
            SuiteId::Tgens,
            SuiteId::Lemma3i,
            SuiteId::Lemma3iii,
            SuiteId::Thm1iv,
            SuiteId::Thm2,
            SuiteId::Prop3,
            SuiteId::Nilpotence,
        ]
    }
}

/// Parameters of a single suite run. Unset fields fall back to per-suite
/// defaults.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub q: Option<u64>,
    pub rank: usize,
    pub c: Option<u32>,
    pub series_d: Option<u32>,
    pub samples: Option<u32>,
    pub seed: u64,
    pub unit_bound: u32,
    pub variant: UnitVariant,
    pub cache_dir: Option<PathBuf>,
    /// report-only mode: violations are recorded but do not fail the suite
    pub report_only: bool,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            q: None,
            rank: 2,
            c: None,
            series_d: None,
            samples: None,
            seed: DEFAULT_SEED,
            unit_bound: DEFAULT_UNIT_BOUND,
            variant: UnitVariant::IncludeUnitOne,
            cache_dir: None,
            report_only: false,
        }
    }
}

impl SuiteParams {
    pub fn with_q(mut self, q: u64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn with_samples(mut self, samples: u32) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn report_only(mut self) -> Self {
        self.report_only = true;
        self
    }

    pub fn echo(&self, used_samples: Option<u32>, used_c: Option<u32>, used_d: Option<u32>) -> ParamsEcho {
        ParamsEcho {
            q: self.q,
            rank: self.rank,
            c: used_c.or(self.c),
            series_d: used_d.or(self.series_d),
            samples: used_samples.or(self.samples),
            seed: self.seed,
            unit_bound: self.unit_bound,
            variant: self.variant.name().to_string(),
            report_only: self.report_only,
        }
    }

    /// Rebuild the parameters a report ran with (used by replay).
    pub fn from_echo(echo: &ParamsEcho) -> Result<Self> {
        Ok(SuiteParams {
            q: echo.q,
            rank: echo.rank,
            c: echo.c,
            series_d: echo.series_d,
            samples: echo.samples,
            seed: echo.seed,
            unit_bound: echo.unit_bound,
            variant: UnitVariant::parse(&echo.variant)?,
            cache_dir: None,
            report_only: echo.report_only,
        })
    }

    pub fn params_for_q(&self) -> Result<BurnsideParams> {
        let q = self
            .q
            .ok_or_else(|| VerifierError::Config("suite requires --q".into()))?;
        BurnsideParams::new(q).map_err(VerifierError::from)
    }

    pub fn validate(&self, id: SuiteId) -> Result<()> {
        if let Some(0) = self.samples {
            return Err(VerifierError::Config("samples must be at least 1".into()));
        }
        if id.needs_q() {
            let params = self.params_for_q()?;
            params
                .check_rank(self.rank)
                .map_err(VerifierError::from)?;
        }
        if self.rank < 2 {
            return Err(VerifierError::Config("rank must be at least 2".into()));
        }
        Ok(())
    }
}

/// Defaults tied to `q`: truncation `c = e*phi(q) + 2` (one degree beyond
/// what the statements consume) and series depth `D = 2 * derived-length
/// bound + 1`.
pub fn default_c_for(params: &BurnsideParams) -> u32 {
    params.e_phi() as u32 + 2
}

pub fn default_d_for(params: &BurnsideParams) -> u32 {
    2 * derived_length_bound(params) + 1
}

/// Minimal `k` with `2^{k-1} >= e*phi(q) + 1`: the derived-length bound of
/// the solvable matrix group over `S(q)[t,t^-1]`.
pub fn derived_length_bound(params: &BurnsideParams) -> u32 {
    let target = params.e_phi() + 1;
    let mut k = 1u32;
    while (1u64 << (k - 1)) < target {
        k += 1;
    }
    k
}

/// Run one suite. Mathematical failures surface as `Fail` verdicts inside
/// the report; `Err` is reserved for infrastructure problems.
pub fn run_suite(id: SuiteId, params: &SuiteParams) -> Result<SuiteReport> {
    params.validate(id)?;
    let start = std::time::Instant::now();
    let mut report = match id {
        SuiteId::Lemma1 => suites::free_group::lemma1(params)?,
        SuiteId::Lemma2 => suites::free_group::lemma2(params)?,
        SuiteId::Appendix => suites::free_group::appendix(params)?,
        SuiteId::Sanov => suites::free_group::sanov(params)?,
        SuiteId::Lemma4 => suites::series::lemma4(params)?,
        SuiteId::Lemma5 => suites::series::lemma5(params)?,
        SuiteId::Lemma5Remark => suites::series::lemma5_remark(params)?,
        SuiteId::Lemma67 => suites::series::lemma67(params)?,
        SuiteId::Lemma3i => suites::ideals::lemma3i(params)?,
        SuiteId::Lemma3ii => suites::ideals::lemma3ii(params)?,
        SuiteId::Lemma3iii => suites::ideals::lemma3iii(params)?,
        SuiteId::Thm1iv => suites::burnside::thm1iv(params)?,
        SuiteId::Thm2 => suites::burnside::thm2(params)?,
        SuiteId::Prop3 => suites::burnside::prop3(params)?,
        SuiteId::Nilpotence => suites::burnside::nilpotence(params)?,
        SuiteId::Tgens => suites::rank::tgens(params)?,
    };
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Which parts of the default matrix to run.
#[derive(Clone, Debug)]
pub struct Profile {
    /// quotient parameters for the group-level suites
    pub group_qs: Vec<u64>,
    /// quotient parameters for the lattice-level suite (cheap; wider range)
    pub lattice_qs: Vec<u64>,
    /// include the slow flagged runs (deep derived samples for q = 4)
    pub include_slow: bool,
    /// include the non-default nilpotence probe
    pub include_nilpotence: bool,
    pub base: SuiteParams,
    /// extra entries echoed into the report config
    pub extra_config: BTreeMap<String, String>,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            group_qs: vec![2, 3],
            lattice_qs: vec![2, 3, 4, 5],
            include_slow: false,
            include_nilpotence: false,
            base: SuiteParams::default(),
            extra_config: BTreeMap::new(),
        }
    }
}

impl Profile {
    pub fn config_echo(&self) -> BTreeMap<String, String> {
        let mut config = BTreeMap::new();
        config.insert(
            "group-qs".to_string(),
            self.group_qs
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        config.insert(
            "lattice-qs".to_string(),
            self.lattice_qs
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        config.insert("include-slow".to_string(), self.include_slow.to_string());
        config.insert("seed".to_string(), self.base.seed.to_string());
        config.insert("rank".to_string(), self.base.rank.to_string());
        config.insert(
            "unit-bound".to_string(),
            self.base.unit_bound.to_string(),
        );
        config.insert("variant".to_string(), self.base.variant.name().to_string());
        if let Some(dir) = &self.base.cache_dir {
            config.insert("cache-dir".to_string(), dir.display().to_string());
        }
        for (k, v) in &self.extra_config {
            config.insert(k.clone(), v.clone());
        }
        config
    }

    /// The `(suite, params)` rows this profile expands to.
    pub fn rows(&self) -> Vec<(SuiteId, SuiteParams)> {
        let base = &self.base;
        let mut rows: Vec<(SuiteId, SuiteParams)> = vec![
            (SuiteId::Sanov, base.clone()),
            (SuiteId::Lemma1, base.clone()),
            (
                SuiteId::Lemma1,
                base.clone().with_rank(3).with_samples(100),
            ),
            (SuiteId::Appendix, base.clone()),
            (SuiteId::Lemma2, base.clone()),
            (SuiteId::Lemma4, base.clone()),
            (SuiteId::Lemma5, base.clone()),
            (SuiteId::Lemma5Remark, base.clone()),
            (SuiteId::Lemma67, base.clone()),
            (SuiteId::Lemma3ii, base.clone()),
            (SuiteId::Tgens, base.clone()),
        ];
        for &q in &self.lattice_qs {
            rows.push((SuiteId::Lemma3i, base.clone().with_q(q)));
        }
        for &q in &self.group_qs {
            rows.push((SuiteId::Lemma3iii, base.clone().with_q(q)));
            rows.push((SuiteId::Thm1iv, base.clone().with_q(q)));
            rows.push((SuiteId::Thm2, base.clone().with_q(q)));
            rows.push((SuiteId::Prop3, base.clone().with_q(q)));
            if self.include_nilpotence {
                rows.push((SuiteId::Nilpotence, base.clone().with_q(q)));
            }
        }
        if self.include_slow {
            rows.push((SuiteId::Thm1iv, base.clone().with_q(4)));
            rows.push((SuiteId::Thm2, base.clone().with_q(4).report_only()));
            rows.push((SuiteId::Prop3, base.clone().with_q(4).report_only()));
        }
        rows
    }
}

/// Run the full suite matrix for a profile.
pub fn run_profile(profile: &Profile) -> Result<RunReport> {
    let mut report = RunReport::new(profile.config_echo());
    for (id, params) in profile.rows() {
        report.push(run_suite(id, &params)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_length_bounds() {
        for (q, k) in [(2u64, 2u32), (3, 3), (4, 4), (5, 4)] {
            let params = BurnsideParams::new(q).unwrap();
            assert_eq!(derived_length_bound(&params), k, "q = {q}");
        }
    }

    #[test]
    fn suite_id_roundtrip() {
        for id in SuiteId::all() {
            assert_eq!(SuiteId::parse(id.as_str()).unwrap(), *id);
        }
        assert!(SuiteId::parse("lemma9000").is_err());
    }

    #[test]
    fn zero_samples_invalid() {
        let params = SuiteParams::default().with_samples(0);
        assert!(params.validate(SuiteId::Lemma1).is_err());
    }

    #[test]
    fn rank_guard_applies_to_q_suites() {
        let params = SuiteParams::default().with_q(2).with_rank(4);
        assert!(params.validate(SuiteId::Thm2).is_err());
        let ok = SuiteParams::default().with_q(5).with_rank(4);
        assert!(ok.validate(SuiteId::Thm2).is_ok());
    }
}
