//! Machine-readable suite reports.
//!
//! One JSON document per run: run metadata, an array of suite reports, the
//! aggregated trusted-assumption list and the hashes of every lattice cache
//! file consulted. Report bodies are deterministic for a fixed seed; wall
//! times and the timestamp are the only nondeterministic fields, and the
//! golden-report comparison strips them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// exact confirmation
    Pass,
    /// a checked statement failed; a reproducing witness is attached
    Fail,
    /// adic / truncated / report-only confirmation: everything computable
    /// at the configured bounds holds
    BoundedPass,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::BoundedPass => write!(f, "bounded-pass"),
        }
    }
}

/// Witness attached to a verdict: a word, polynomial or matrix in the
/// textual formats, labelled by what it demonstrates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub text: String,
}

/// Echo of the parameters a suite actually ran with.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    pub seed: u64,
    pub unit_bound: u32,
    pub variant: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub report_only: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: ParamsEcho,
    pub verdict: Verdict,
    pub counters: BTreeMap<String, i64>,
    pub witnesses: Vec<Witness>,
    pub trusted_assumptions: Vec<String>,
    pub notes: Vec<String>,
    /// hashes of lattice cache files used, keyed by file name
    pub cache_files: BTreeMap<String, String>,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, params: ParamsEcho) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            params,
            verdict: Verdict::Pass,
            counters: BTreeMap::new(),
            witnesses: Vec::new(),
            trusted_assumptions: Vec::new(),
            notes: Vec::new(),
            cache_files: BTreeMap::new(),
            wall_ms: 0,
        }
    }

    pub fn count(&mut self, key: &str, value: i64) {
        *self.counters.entry(key.to_string()).or_insert(0) += value;
    }

    pub fn set_counter(&mut self, key: &str, value: i64) {
        self.counters.insert(key.to_string(), value);
    }

    pub fn witness(&mut self, label: &str, text: impl fmt::Display) {
        self.witnesses.push(Witness {
            label: label.to_string(),
            text: text.to_string(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn trust(&mut self, assumption: &str) {
        let s = assumption.to_string();
        if !self.trusted_assumptions.contains(&s) {
            self.trusted_assumptions.push(s);
        }
    }

    /// Mark a failed check, attaching the witness that reproduces it.
    pub fn fail(&mut self, label: &str, text: impl fmt::Display) {
        self.verdict = Verdict::Fail;
        self.witness(label, text);
    }

    /// Downgrade pass to bounded-pass (fail is never upgraded).
    pub fn bound(&mut self) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::BoundedPass;
        }
    }

    pub fn one_line(&self) -> String {
        let q = self
            .params
            .q
            .map(|q| format!(" q={q}"))
            .unwrap_or_default();
        format!("{:<14}{} {}", self.suite, q, self.verdict)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    /// unix seconds; excluded from determinism comparisons
    pub timestamp: u64,
    /// effective configuration echo
    pub config: BTreeMap<String, String>,
    pub suites: Vec<SuiteReport>,
    pub trusted_assumptions: Vec<String>,
    pub cache_hashes: BTreeMap<String, String>,
    pub total_wall_ms: u64,
}

impl RunReport {
    pub fn new(config: BTreeMap<String, String>) -> Self {
        RunReport {
            tool: "burnside".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config,
            suites: Vec::new(),
            trusted_assumptions: Vec::new(),
            cache_hashes: BTreeMap::new(),
            total_wall_ms: 0,
        }
    }

    pub fn push(&mut self, suite: SuiteReport) {
        for t in &suite.trusted_assumptions {
            if !self.trusted_assumptions.contains(t) {
                self.trusted_assumptions.push(t.clone());
            }
        }
        for (k, v) in &suite.cache_files {
            self.cache_hashes.insert(k.clone(), v.clone());
        }
        self.total_wall_ms += suite.wall_ms;
        self.suites.push(suite);
    }

    pub fn has_fail(&self) -> bool {
        self.suites.iter().any(|s| s.verdict == Verdict::Fail)
    }

    /// 0 = all pass (bounded-pass included), 1 = at least one FAIL.
    pub fn exit_code(&self) -> i32 {
        if self.has_fail() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Body with timing stripped: equal for identical configurations and
    /// seeds regardless of machine speed.
    pub fn normalized_json(&self) -> String {
        let mut clone = self.clone();
        clone.timestamp = 0;
        clone.total_wall_ms = 0;
        for s in &mut clone.suites {
            s.wall_ms = 0;
        }
        serde_json::to_string_pretty(&clone).expect("report serialization cannot fail")
    }

    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&s.one_line());
            out.push('\n');
        }
        if !self.trusted_assumptions.is_empty() {
            out.push_str("trusted assumptions:\n");
            for t in &self.trusted_assumptions {
                out.push_str(&format!("  - {t}\n"));
            }
        }
        out.push_str(&format!(
            "total: {} suites, {}\n",
            self.suites.len(),
            if self.has_fail() { "FAIL" } else { "ok" }
        ));
        out
    }
}
