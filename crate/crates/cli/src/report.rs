//! JSON report types. Key order is the struct field order and all values
//! are integers, strings, or booleans, so reports from identical
//! configurations and seeds are byte-identical. Timing fields are
//! emitted as 0 unless timings were requested.

use serde::Serialize;

use glcomm_core::{VerdictRecord, VerdictStatus};

#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub ring: Option<String>,
    pub ideals: Vec<String>,
    pub n: usize,
    pub theorem: Option<String>,
    pub tree: Option<String>,
    pub slots: Option<Vec<String>>,
    pub member_cap: usize,
    pub enum_cap: u64,
    pub seed: u64,
    pub profile: Option<String>,
    pub timings: bool,
}

/// One lemma-suite check: a named property, how many cases ran, and how
/// many failed.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub ring: String,
    pub ideals: Vec<String>,
    pub cases: u64,
    pub failures: u64,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Totals {
    pub verdicts: usize,
    pub verified: usize,
    pub mismatches: usize,
    pub degenerate: usize,
    pub not_verified_at_scale: usize,
    pub lemma_checks: usize,
    pub lemma_failures: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: ReportConfig,
    pub verdicts: Vec<VerdictRecord>,
    pub lemma_checks: Vec<LemmaCheck>,
    pub totals: Totals,
    pub version: String,
}

impl VerifyReport {
    pub fn new(
        config: ReportConfig,
        verdicts: Vec<VerdictRecord>,
        lemma_checks: Vec<LemmaCheck>,
    ) -> VerifyReport {
        let totals = Totals {
            verdicts: verdicts.len(),
            verified: verdicts
                .iter()
                .filter(|v| v.status == VerdictStatus::Verified)
                .count(),
            mismatches: verdicts
                .iter()
                .filter(|v| v.status == VerdictStatus::Mismatch)
                .count(),
            degenerate: verdicts.iter().filter(|v| v.degenerate).count(),
            not_verified_at_scale: verdicts
                .iter()
                .filter(|v| v.status == VerdictStatus::NotVerifiedAtThisScale)
                .count(),
            lemma_checks: lemma_checks.len(),
            lemma_failures: lemma_checks.iter().map(|l| l.failures).sum(),
        };
        let mut report = VerifyReport {
            config,
            verdicts,
            lemma_checks,
            totals,
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        if !report.config.timings {
            report.zero_timings();
        }
        report
    }

    fn zero_timings(&mut self) {
        for v in &mut self.verdicts {
            v.elapsed_ms = 0;
        }
        for l in &mut self.lemma_checks {
            l.elapsed_ms = 0;
        }
    }

    /// Exit code contract: 0 all verified, 1 mathematical mismatch,
    /// 2 cap exceeded ("not verified at this scale"), 3 is reserved for
    /// parse/config failures upstream of a report.
    pub fn exit_code(&self) -> i32 {
        if self.totals.mismatches > 0 || self.totals.lemma_failures > 0 {
            1
        } else if self.totals.not_verified_at_scale > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Human console summary, one line per verdict and lemma check.
    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        for v in &self.verdicts {
            let status = match v.status {
                VerdictStatus::Verified => "VERIFIED",
                VerdictStatus::Mismatch => "MISMATCH",
                VerdictStatus::NotVerifiedAtThisScale => "NOT VERIFIED AT THIS SCALE",
            };
            let orders = match (v.lhs_order, v.rhs_order) {
                (Some(l), Some(r)) => format!(" lhs={l} rhs={r}"),
                _ => String::new(),
            };
            let degenerate = if v.degenerate { " (degenerate)" } else { "" };
            let witness = v
                .witness
                .as_ref()
                .map(|w| format!(" witness={w}"))
                .unwrap_or_default();
            lines.push(format!(
                "{status}  {} n={} tree={} slots={}{orders}{degenerate}{witness}",
                v.ring,
                v.n,
                v.tree,
                v.slots.join(","),
            ));
        }
        for l in &self.lemma_checks {
            let status = if l.pass { "PASS" } else { "FAIL" };
            lines.push(format!(
                "{status}  {}  {} {}  cases={} failures={}",
                l.lemma,
                l.ring,
                l.ideals.join(","),
                l.cases,
                l.failures
            ));
        }
        lines.push(format!(
            "totals: {} verdicts ({} verified, {} mismatches, {} degenerate, {} not verified at this scale), {} lemma checks ({} failures)",
            self.totals.verdicts,
            self.totals.verified,
            self.totals.mismatches,
            self.totals.degenerate,
            self.totals.not_verified_at_scale,
            self.totals.lemma_checks,
            self.totals.lemma_failures,
        ));
        lines.join("\n")
    }
}
