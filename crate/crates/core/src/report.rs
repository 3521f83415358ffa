//! Structured results of certification runs.
//!
//! Key names are stable: `check, params, trials, violations, observed_min,
//! pass` for [`CertReport`] and `genus, summands, total, bun_dim, match` for
//! [`DimensionBreakdown`].

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::series::Valuation;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub richardson: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One trial (or one exhaustive case) of a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub id: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub valuations: Vec<Valuation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TrialOutcome {
    pub fn new(id: impl Into<String>, ok: bool) -> Self {
        Self {
            id: id.into(),
            ok,
            valuations: Vec::new(),
            note: None,
        }
    }

    pub fn with_valuations(mut self, valuations: Vec<Valuation>) -> Self {
        self.valuations = valuations;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Smallest exact valuation seen for one invariant, next to its claimed bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservedMin {
    /// Index of the invariant `F_j`.
    pub j: usize,
    pub bound: i64,
    /// `None` when no sample produced an exact valuation.
    pub min: Option<i64>,
    /// Samples whose valuation equals the bound exactly.
    pub attained: usize,
    pub samples: usize,
    pub attained_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub check: String,
    pub params: Params,
    pub trials: Vec<TrialOutcome>,
    pub violations: Vec<String>,
    pub observed_min: Vec<ObservedMin>,
    pub pass: bool,
}

impl CertReport {
    pub fn new(
        check: impl Into<String>,
        params: Params,
        trials: Vec<TrialOutcome>,
        violations: Vec<String>,
        observed_min: Vec<ObservedMin>,
    ) -> Self {
        let pass = violations.is_empty();
        Self {
            check: check.into(),
            params,
            trials,
            violations,
            observed_min,
            pass,
        }
    }
}

/// Tracks the minimum exact valuation per invariant over many samples.
#[derive(Debug, Clone)]
pub struct MinTracker {
    entries: Vec<ObservedMin>,
}

impl MinTracker {
    pub fn new(bounds: impl IntoIterator<Item = (usize, i64)>) -> Self {
        Self {
            entries: bounds
                .into_iter()
                .map(|(j, bound)| ObservedMin {
                    j,
                    bound,
                    min: None,
                    attained: 0,
                    samples: 0,
                    attained_fraction: 0.0,
                })
                .collect(),
        }
    }

    /// Records a valuation for the `slot`-th tracked invariant.
    pub fn record(&mut self, slot: usize, v: Valuation) {
        let entry = &mut self.entries[slot];
        entry.samples += 1;
        if let Valuation::Exact(k) = v {
            entry.min = Some(entry.min.map_or(k, |m| m.min(k)));
            if k == entry.bound {
                entry.attained += 1;
            }
        }
    }

    pub fn finish(mut self) -> Vec<ObservedMin> {
        for e in &mut self.entries {
            e.attained_fraction = if e.samples == 0 {
                0.0
            } else {
                e.attained as f64 / e.samples as f64
            };
        }
        self.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    /// Invariant degree `d`.
    pub degree: usize,
    /// Pole order `c` at the marked point.
    pub pole_order: i64,
    /// Degree of `K^d(c x)`, i.e. `d (2g - 2) + c`.
    pub line_degree: i64,
    pub h0: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionBreakdown {
    pub genus: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub richardson: Option<String>,
    pub summands: Vec<Summand>,
    pub total: i64,
    pub bun_dim: Option<i64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

/// Serializes an exact rational as a JSON integer when it is one, else as `"p/q"`.
pub fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(r.to_integer())
    } else {
        s.serialize_str(&r.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_no_violations() {
        let ok = CertReport::new("x", Params::default(), vec![], vec![], vec![]);
        assert!(ok.pass);
        let bad = CertReport::new("x", Params::default(), vec![], vec!["boom".into()], vec![]);
        assert!(!bad.pass);
    }

    #[test]
    fn tracker_counts_attainment() {
        let mut t = MinTracker::new([(1, 1), (2, 2)]);
        t.record(0, Valuation::Exact(1));
        t.record(0, Valuation::Exact(3));
        t.record(1, Valuation::AtLeast(12));
        let out = t.finish();
        assert_eq!(out[0].min, Some(1));
        assert_eq!(out[0].attained, 1);
        assert_eq!(out[0].attained_fraction, 0.5);
        assert_eq!(out[1].min, None);
    }

    #[test]
    fn json_key_names_are_stable() {
        let report = CertReport::new("demo", Params::default(), vec![], vec![], vec![]);
        let v = serde_json::to_value(&report).unwrap();
        for key in ["check", "params", "trials", "violations", "observed_min", "pass"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let dims = DimensionBreakdown {
            genus: 2,
            kind: None,
            flag: None,
            richardson: None,
            summands: vec![],
            total: 0,
            bun_dim: Some(0),
            matches: Some(true),
        };
        let v = serde_json::to_value(&dims).unwrap();
        for key in ["genus", "summands", "total", "bun_dim", "match"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
