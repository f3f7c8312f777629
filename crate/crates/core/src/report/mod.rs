//! Summaries, evaluation metrics, statistics and report output.

mod growth;
mod metrics;
mod stats;

pub use growth::{fit_time_growth, GrowthFit};
pub use metrics::{evaluate, ConfusionMatrix, Evaluation};
pub use stats::{cliffs_delta, compare, wilcoxon_rank_sum, Magnitude, StatTestResult};

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::ApiCollection;
use crate::detectors::{Analysis, Finding, RuleId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleSummary {
    pub antipattern: usize,
    pub pattern: usize,
    /// Share of entries flagged, in percent, two decimals.
    pub pct_antipattern: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_sec: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiSummary {
    pub api: String,
    pub total_entries: usize,
    pub rules: BTreeMap<RuleId, RuleSummary>,
}

impl ApiSummary {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("summary: {e}")))
    }

    /// Drop the wall-clock fields, which differ from run to run.
    pub fn without_timings(mut self) -> Self {
        for r in self.rules.values_mut() {
            r.elapsed_sec = None;
        }
        self
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Per-rule counts over the rules the analysis completed.
pub fn summarize(analysis: &Analysis, collection: &ApiCollection) -> Result<ApiSummary> {
    let ids: HashSet<&str> = collection.entries.iter().map(|e| e.id.as_str()).collect();
    let total = collection.entries.len();
    let mut rules: BTreeMap<RuleId, RuleSummary> = analysis
        .rules
        .iter()
        .map(|r| {
            let s = RuleSummary {
                antipattern: 0,
                pattern: 0,
                pct_antipattern: 0.0,
                elapsed_sec: analysis.timings.get(r).copied(),
            };
            (*r, s)
        })
        .collect();
    for f in &analysis.findings {
        if !ids.contains(f.entry_id.as_str()) {
            return Err(Error::Validation(format!("finding refers to unknown entry `{}`", f.entry_id)));
        }
        let s = rules
            .get_mut(&f.rule)
            .ok_or_else(|| Error::Validation(format!("finding for rule {} that was not run", f.rule)))?;
        if f.verdict.is_antipattern() {
            s.antipattern += 1;
        } else {
            s.pattern += 1;
        }
    }
    for s in rules.values_mut() {
        if total > 0 {
            s.pct_antipattern = round2(100.0 * s.antipattern as f64 / total as f64);
        }
    }
    Ok(ApiSummary {
        api: collection.name.clone(),
        total_entries: total,
        rules,
    })
}

/// Serialize with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report values serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("json value serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(flatten)]
    pub summary: ApiSummary,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(summary: ApiSummary, findings: Vec<Finding>) -> Self {
        Report { summary, findings }
    }
}

fn evidence_text(f: &Finding) -> String {
    f.evidence.iter().map(|e| e.message.as_str()).collect::<Vec<_>>().join("; ")
}

/// One row per finding: `entry_id,rule_id,verdict,evidence`.
pub fn findings_csv(findings: &[Finding]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["entry_id", "rule_id", "verdict", "evidence"]).expect("in-memory write");
    for f in findings {
        w.write_record([f.entry_id.as_str(), f.rule.as_str(), f.verdict.as_str(), &evidence_text(f)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

fn summary_text(summary: &ApiSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "API: {} ({} URIs)", summary.api, summary.total_entries);
    let _ = writeln!(out, "{:<30} {:>6}   {:<28} {:>6} {:>8}", "Antipattern", "count", "Pattern", "count", "% anti");
    for (rule, s) in &summary.rules {
        let (anti, pat) = rule.names();
        let _ = write!(out, "{anti:<30} {:>6}   {pat:<28} {:>6} {:>7.2}%", s.antipattern, s.pattern, s.pct_antipattern);
        if let Some(t) = s.elapsed_sec {
            let _ = write!(out, "  {t:.3}s");
        }
        out.push('\n');
    }
    out
}

pub fn export_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => canonical_json(report),
        Format::Csv => findings_csv(&report.findings),
        Format::Text => {
            let mut out = summary_text(&report.summary);
            let flagged: Vec<&Finding> = report.findings.iter().filter(|f| f.verdict.is_antipattern()).collect();
            if !flagged.is_empty() {
                out.push('\n');
                for f in flagged {
                    let _ = writeln!(out, "{}  {}  {}", f.entry_id, f.rule.names().0, evidence_text(f));
                }
            }
            out
        }
    }
}

pub fn export_summary(summary: &ApiSummary, format: Format) -> String {
    match format {
        Format::Json => canonical_json(summary),
        Format::Text => summary_text(summary),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["api", "rule_id", "antipattern", "pattern", "pct_antipattern"]).expect("in-memory write");
            for (rule, s) in &summary.rules {
                w.write_record([
                    summary.api.clone(),
                    rule.as_str().to_string(),
                    s.antipattern.to_string(),
                    s.pattern.to_string(),
                    format!("{:.2}", s.pct_antipattern),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
    }
}

pub fn export_evaluation(eval: &Evaluation, format: Format) -> String {
    let fmt_opt = |v: Option<f64>, digits: usize| v.map_or("n/a".to_string(), |x| format!("{x:.digits$}"));
    match format {
        Format::Json => canonical_json(&eval.to_json_value()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["rule_id", "tp", "fp", "fn", "tn", "accuracy", "mcc"]).expect("in-memory write");
            for (rule, m) in &eval.per_rule {
                w.write_record([
                    rule.as_str().to_string(),
                    m.tp.to_string(),
                    m.fp.to_string(),
                    m.fn_.to_string(),
                    m.tn.to_string(),
                    fmt_opt(m.accuracy(), 4),
                    fmt_opt(m.mcc(), 4),
                ])
                .expect("in-memory write");
            }
            w.write_record([
                "macro".to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                fmt_opt(eval.macro_accuracy(), 4),
                fmt_opt(eval.macro_mcc(), 4),
            ])
            .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:<30} {:>4} {:>4} {:>4} {:>4} {:>9} {:>6}", "Antipattern", "TP", "FP", "FN", "TN", "Accuracy", "MCC");
            for (rule, m) in &eval.per_rule {
                let acc = m.accuracy().map_or("n/a".into(), |a| format!("{:.0}%", a * 100.0));
                let _ = writeln!(
                    out,
                    "{:<30} {:>4} {:>4} {:>4} {:>4} {:>9} {:>6}",
                    rule.names().0,
                    m.tp,
                    m.fp,
                    m.fn_,
                    m.tn,
                    acc,
                    fmt_opt(m.mcc(), 2)
                );
            }
            let acc = eval.macro_accuracy().map_or("n/a".into(), |a| format!("{:.0}%", a * 100.0));
            let _ = writeln!(out, "{:<30} {:>4} {:>4} {:>4} {:>4} {:>9} {:>6}", "Average", "", "", "", "", acc, fmt_opt(eval.macro_mcc(), 2));
            out
        }
    }
}
