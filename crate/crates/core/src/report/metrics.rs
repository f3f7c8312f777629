//! Detector accuracy against hand-labelled verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::OracleLabels;
use crate::detectors::{Finding, RuleId, Verdict};

/// Counts with the antipattern as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn record(&mut self, predicted: Verdict, actual: Verdict) {
        match (predicted, actual) {
            (Verdict::Antipattern, Verdict::Antipattern) => self.tp += 1,
            (Verdict::Antipattern, Verdict::Pattern) => self.fp += 1,
            (Verdict::Pattern, Verdict::Antipattern) => self.fn_ += 1,
            (Verdict::Pattern, Verdict::Pattern) => self.tn += 1,
        }
    }

    pub fn accuracy(&self) -> Option<f64> {
        let total = self.total();
        (total > 0).then(|| (self.tp + self.tn) as f64 / total as f64)
    }

    /// Matthews correlation; `None` when a row or column of the matrix is empty.
    pub fn mcc(&self) -> Option<f64> {
        let (tp, fp, fn_, tn) = (self.tp as f64, self.fp as f64, self.fn_ as f64, self.tn as f64);
        let denom = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
        (denom > 0.0).then(|| (tp * tn - fp * fn_) / denom.sqrt())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Evaluation {
    pub per_rule: BTreeMap<RuleId, ConfusionMatrix>,
}

impl Evaluation {
    pub fn from_matrices(per_rule: BTreeMap<RuleId, ConfusionMatrix>) -> Self {
        Evaluation { per_rule }
    }

    /// Mean accuracy over rules with at least one labelled pair.
    pub fn macro_accuracy(&self) -> Option<f64> {
        mean(self.per_rule.values().filter_map(ConfusionMatrix::accuracy))
    }

    /// Mean MCC over rules where it is defined.
    pub fn macro_mcc(&self) -> Option<f64> {
        mean(self.per_rule.values().filter_map(ConfusionMatrix::mcc))
    }

    /// `{"<rule>": {tp, fp, fn, tn, accuracy, mcc}, "macro": {accuracy, mcc}}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (rule, m) in &self.per_rule {
            map.insert(
                rule.as_str().to_string(),
                serde_json::json!({
                    "tp": m.tp,
                    "fp": m.fp,
                    "fn": m.fn_,
                    "tn": m.tn,
                    "accuracy": m.accuracy(),
                    "mcc": m.mcc(),
                }),
            );
        }
        map.insert(
            "macro".into(),
            serde_json::json!({ "accuracy": self.macro_accuracy(), "mcc": self.macro_mcc() }),
        );
        serde_json::Value::Object(map)
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Score findings against oracle labels; unlabelled findings are ignored,
/// as are labels with no matching finding. Every rule gets a matrix.
pub fn evaluate(findings: &[Finding], oracle: &OracleLabels) -> Evaluation {
    let mut per_rule: BTreeMap<RuleId, ConfusionMatrix> = RuleId::ALL.iter().map(|r| (*r, ConfusionMatrix::default())).collect();
    for f in findings {
        if let Some(actual) = oracle.get(&f.entry_id, f.rule) {
            per_rule.get_mut(&f.rule).expect("all rules present").record(f.verdict, actual);
        }
    }
    Evaluation { per_rule }
}
