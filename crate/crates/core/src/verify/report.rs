use std::collections::BTreeMap;

use serde::Serialize;

use crate::{CVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Violation,
}

impl Verdict {
    /// Combination of two verdicts: violation dominates inconclusive, which dominates pass.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

/// Parameter echoed into a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Num(f64),
    Int(i64),
    Text(String),
    List(Vec<f64>),
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Num(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

impl From<Vec<f64>> for Param {
    fn from(v: Vec<f64>) -> Self {
        Param::List(v)
    }
}

/// A point (and optionally a time) where a margin was observed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Coordinates as `[re, im]` pairs.
    pub point: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Witness {
    pub fn new(coords: &[C64], t: Option<f64>, margin: f64) -> Self {
        Self {
            point: coords.iter().map(|c| [c.re, c.im]).collect(),
            t,
            margin,
            label: None,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn coords(&self) -> CVector {
        CVector::from_iterator(self.point.len(), self.point.iter().map(|p| C64::new(p[0], p[1])))
    }
}

/// Result of one sampled probe.
#[derive(Debug, Clone)]
pub enum Probe {
    Decided(Witness),
    Unknown,
}

/// A named condition inside a larger report.
#[derive(Debug, Clone, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub decided: usize,
    pub unknown: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Smallest decided margin; `+∞` (serialized as `null`) when nothing was decided.
    pub worst_margin: f64,
    pub decided: usize,
    pub unknown: usize,
    /// The worst probe first; violations carry the witness that reproduces them.
    pub witnesses: Vec<Witness>,
    pub parameters: BTreeMap<String, Param>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Best verdict reachable under any tolerance: set by failed prerequisites and sub-checks.
    #[serde(skip)]
    pub floor: Verdict,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn unknown_fraction(&self) -> f64 {
        let total = self.decided + self.unknown;
        if total == 0 {
            0.0
        } else {
            self.unknown as f64 / total as f64
        }
    }

    pub fn subcheck(&self, name: &str) -> Option<&SubCheck> {
        self.subchecks.iter().find(|s| s.name == name)
    }

    /// Report for a check whose prerequisites failed; nothing is asserted about the claim.
    pub fn inconclusive(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Inconclusive,
            worst_margin: f64::INFINITY,
            decided: 0,
            unknown: 0,
            witnesses: Vec::new(),
            parameters: BTreeMap::new(),
            subchecks: Vec::new(),
            notes: vec![note.into()],
            floor: Verdict::Inconclusive,
        }
    }

    /// Verdict recomputed from the recorded margins and counts under other tolerances.
    /// Sub-check verdicts are not recomputed; they act through [`CheckReport::floor`].
    pub fn with_tolerances(mut self, margin_tol: f64, unknown_budget: f64) -> Self {
        let sampled = if self.decided > 0 && self.worst_margin < -margin_tol {
            Verdict::Violation
        } else if self.decided == 0 || self.unknown_fraction() > unknown_budget {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self.verdict = sampled.and(self.floor);
        self
    }
}

/// Running tally of probe outcomes against a violation tolerance.
#[derive(Debug, Clone)]
pub struct Tally {
    tol: f64,
    pub worst: Option<Witness>,
    pub decided: usize,
    pub unknown: usize,
    pub violations: usize,
}

impl Tally {
    /// Probes with margin `≤ −tol` count as violations.
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            worst: None,
            decided: 0,
            unknown: 0,
            violations: 0,
        }
    }

    pub fn record(&mut self, probe: Probe) {
        match probe {
            Probe::Unknown => self.unknown += 1,
            Probe::Decided(w) => {
                self.decided += 1;
                if !(w.margin > -self.tol) {
                    self.violations += 1;
                }
                let worse = match &self.worst {
                    None => true,
                    Some(cur) => w.margin < cur.margin || (w.margin.is_nan() && !cur.margin.is_nan()),
                };
                if worse {
                    self.worst = Some(w);
                }
            }
        }
    }

    pub fn extend(&mut self, probes: impl IntoIterator<Item = Probe>) {
        for p in probes {
            self.record(p);
        }
    }

    pub fn worst_margin(&self) -> f64 {
        self.worst.as_ref().map_or(f64::INFINITY, |w| w.margin)
    }

    /// Violation if any decided probe fails; inconclusive above the unknown budget.
    pub fn verdict(&self, unknown_budget: f64) -> Verdict {
        let total = self.decided + self.unknown;
        if self.violations > 0 {
            Verdict::Violation
        } else if total == 0 || self.unknown as f64 > unknown_budget * total as f64 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn subcheck(&self, name: impl Into<String>, unknown_budget: f64) -> SubCheck {
        SubCheck {
            name: name.into(),
            verdict: self.verdict(unknown_budget),
            worst_margin: self.worst_margin(),
            decided: self.decided,
            unknown: self.unknown,
            witness: self.worst.clone(),
        }
    }
}

/// Assembles a [`CheckReport`] from tallies.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    name: String,
    parameters: BTreeMap<String, Param>,
    notes: Vec<String>,
    subchecks: Vec<SubCheck>,
}

impl ReportBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            subchecks: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(mut self, sub: SubCheck) -> Self {
        self.subchecks.push(sub);
        self
    }

    pub fn push_sub(&mut self, sub: SubCheck) {
        self.subchecks.push(sub);
    }

    /// Report built from a single tally.
    pub fn finish(self, tally: &Tally, unknown_budget: f64) -> CheckReport {
        let floor = self.subchecks.iter().fold(Verdict::Pass, |v, s| v.and(s.verdict));
        let verdict = tally.verdict(unknown_budget).and(floor);
        CheckReport {
            floor,
            name: self.name,
            verdict,
            worst_margin: tally.worst_margin(),
            decided: tally.decided,
            unknown: tally.unknown,
            witnesses: tally.worst.iter().cloned().collect(),
            parameters: self.parameters,
            subchecks: self.subchecks,
            notes: self.notes,
        }
    }

    /// Report whose verdict and counts come from the collected sub-checks.
    pub fn finish_from_subs(self) -> CheckReport {
        let verdict = self.subchecks.iter().fold(Verdict::Pass, |v, s| v.and(s.verdict));
        let worst = self
            .subchecks
            .iter()
            .filter_map(|s| s.witness.clone())
            .min_by(|a, b| a.margin.total_cmp(&b.margin));
        let worst_margin = self
            .subchecks
            .iter()
            .map(|s| s.worst_margin)
            .fold(f64::INFINITY, f64::min);
        CheckReport {
            name: self.name,
            verdict,
            worst_margin,
            decided: self.subchecks.iter().map(|s| s.decided).sum(),
            unknown: self.subchecks.iter().map(|s| s.unknown).sum(),
            witnesses: worst.into_iter().collect(),
            parameters: self.parameters,
            subchecks: self.subchecks,
            notes: self.notes,
            floor: Verdict::Pass,
        }
    }
}
