//! Pass/fail bookkeeping for verification suites.
//!
//! A strict inequality `lhs < rhs` between certified values passes only when
//! it survives widening by both radii. If the midpoints satisfy it but the
//! widened enclosures overlap, the check is inconclusive rather than passed.
//! The `degraded` flag plays no part: radii are honest either way.

use std::fmt;

use crate::certified::CertifiedValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One check that did not pass.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub label: &'static str,
    /// The grid point or integer index the check was made at.
    pub at: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite_id: String,
    pub range_descr: String,
    pub n_checked: u64,
    pub n_failed: u64,
    pub n_inconclusive: u64,
    /// Smallest `rhs - lhs` over all inequality checks, and smallest
    /// `tolerance - |lhs - rhs|` over identity checks. `+∞` when empty.
    pub worst_margin: f64,
    pub failures: Vec<CheckRecord>,
    pub inconclusive: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(suite_id: impl Into<String>, range_descr: impl Into<String>) -> Self {
        Self {
            suite_id: suite_id.into(),
            range_descr: range_descr.into(),
            n_checked: 0,
            n_failed: 0,
            n_inconclusive: 0,
            worst_margin: f64::INFINITY,
            failures: Vec::new(),
            inconclusive: Vec::new(),
        }
    }

    /// Records an already decided check.
    pub fn record(&mut self, verdict: Verdict, margin: f64, rec: CheckRecord) -> Verdict {
        self.n_checked += 1;
        self.worst_margin = self.worst_margin.min(margin);
        match verdict {
            Verdict::Pass => {}
            Verdict::Fail => {
                self.n_failed += 1;
                self.failures.push(rec);
            }
            Verdict::Inconclusive => {
                self.n_inconclusive += 1;
                self.inconclusive.push(rec);
            }
        }
        verdict
    }

    /// Records `lhs < rhs`.
    pub fn check_lt(
        &mut self,
        label: &'static str,
        at: f64,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
    ) -> Verdict {
        let verdict = if lhs.hi() < rhs.lo() {
            Verdict::Pass
        } else if lhs.value < rhs.value {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        };
        self.finish(label, at, lhs, rhs, verdict)
    }

    /// Records `lhs ≤ rhs`.
    pub fn check_le(
        &mut self,
        label: &'static str,
        at: f64,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
    ) -> Verdict {
        let verdict = if lhs.hi() <= rhs.lo() {
            Verdict::Pass
        } else if lhs.value <= rhs.value {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        };
        self.finish(label, at, lhs, rhs, verdict)
    }

    /// Records `lo < mid < hi` as two strict checks.
    pub fn check_between(
        &mut self,
        label: &'static str,
        at: f64,
        lo: CertifiedValue,
        mid: CertifiedValue,
        hi: CertifiedValue,
    ) {
        self.check_lt(label, at, lo, mid);
        self.check_lt(label, at, mid, hi);
    }

    /// Records `|lhs - rhs| ≤ lhs.err + rhs.err + slack`.
    pub fn check_identity(
        &mut self,
        label: &'static str,
        at: f64,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
        slack: f64,
    ) -> Verdict {
        let tol = lhs.err + rhs.err + slack;
        let gap = (lhs.value - rhs.value).abs();
        let verdict = if gap <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let rec = CheckRecord {
            label,
            at,
            lhs: lhs.value,
            rhs: rhs.value,
        };
        self.record(verdict, tol - gap, rec)
    }

    /// Records a plain boolean fact about exactly computed quantities.
    pub fn check_fact(&mut self, label: &'static str, at: f64, holds: bool) -> Verdict {
        let verdict = if holds { Verdict::Pass } else { Verdict::Fail };
        let rec = CheckRecord {
            label,
            at,
            lhs: f64::NAN,
            rhs: f64::NAN,
        };
        self.n_checked += 1;
        if !holds {
            self.n_failed += 1;
            self.failures.push(rec);
        }
        verdict
    }

    fn finish(
        &mut self,
        label: &'static str,
        at: f64,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
        verdict: Verdict,
    ) -> Verdict {
        let rec = CheckRecord {
            label,
            at,
            lhs: lhs.value,
            rhs: rhs.value,
        };
        self.record(verdict, rhs.value - lhs.value, rec)
    }

    /// Appends `other`'s counts and records after this report's.
    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.n_checked += other.n_checked;
        self.n_failed += other.n_failed;
        self.n_inconclusive += other.n_inconclusive;
        self.worst_margin = self.worst_margin.min(other.worst_margin);
        self.failures.extend(other.failures);
        self.inconclusive.extend(other.inconclusive);
        self
    }

    /// Folds partial reports in order under this report's id and range.
    pub fn merge_all(self, parts: impl IntoIterator<Item = SuiteReport>) -> SuiteReport {
        parts.into_iter().fold(self, SuiteReport::merge)
    }

    pub fn verdict(&self) -> Verdict {
        if self.n_failed > 0 {
            Verdict::Fail
        } else if self.n_inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {} checked, {} failed, {} inconclusive, worst margin {:.3e}",
            self.suite_id,
            self.range_descr,
            self.n_checked,
            self.n_failed,
            self.n_inconclusive,
            self.worst_margin
        )
    }
}
