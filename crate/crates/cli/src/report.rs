//! Audit report model, ordering, summary and rendering.

use std::fmt::Write as _;

use cyclic_audit_core::{DefectReport, EvalResult, Residual};
use serde::Serialize;
use serde_json::{json, Value};

use crate::manifest::Manifest;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Defect,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Defect => "defect",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub params: String,
    pub status: Status,
    /// Canonical exact text, or the magnitude of a numeric discrepancy.
    pub residual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Id of the known-discrepancy claim this defect matches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known: Option<String>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub nonconvergent: bool,
}

impl CheckEntry {
    pub fn from_defect(r: DefectReport) -> Self {
        let (residual, tolerance) = match r.residual {
            Residual::Exact(s) => (Value::String(s), None),
            Residual::Numeric { value, tolerance } => (json!(value), Some(tolerance)),
        };
        CheckEntry {
            name: r.check,
            params: r.params,
            status: if r.is_zero { Status::Verified } else { Status::Defect },
            residual,
            tolerance,
            error_estimate: r.error_estimate,
            value: None,
            error: None,
            known: None,
            elapsed_ms: r.elapsed_ms,
            nonconvergent: false,
        }
    }

    pub fn error(name: impl Into<String>, params: impl Into<String>, message: impl Into<String>, nonconvergent: bool) -> Self {
        CheckEntry {
            name: name.into(),
            params: params.into(),
            status: Status::Error,
            residual: Value::Null,
            tolerance: None,
            error_estimate: None,
            value: None,
            error: Some(message.into()),
            known: None,
            elapsed_ms: 0,
            nonconvergent,
        }
    }

    /// A numeric comparison `|got - expected| <= tolerance`.
    pub fn numeric(name: impl Into<String>, params: impl Into<String>, deviation: f64, tolerance: f64, error_estimate: f64) -> Self {
        Self::from_defect(DefectReport::numeric(name, params, deviation, tolerance).with_error_estimate(error_estimate))
    }

    pub fn with_value(mut self, v: Value) -> Self {
        self.value = Some(v);
        self
    }

    pub fn with_elapsed(mut self, ms: u64) -> Self {
        self.elapsed_ms = ms;
        self
    }
}

/// An unasserted value (no identity is claimed for it).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub params: String,
    pub value: Value,
}

impl Record {
    pub fn new(name: impl Into<String>, params: impl Into<String>, value: Value) -> Self {
        Record { name: name.into(), params: params.into(), value }
    }

    pub fn eval(name: impl Into<String>, r: &EvalResult) -> Self {
        Record::new(
            name,
            format!("s={},x={},tuning={}", r.params.s, r.params.x, r.params.tuning),
            json!({ "value": r.value, "error_estimate": r.error_estimate, "function": r.params.function }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub defect: usize,
    pub error: usize,
    /// Defects matched by the known-discrepancy manifest (a subset of `defect`).
    pub known: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub version: String,
    pub config: Value,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<Record>,
    pub summary: Summary,
}

/// One unit of audit output.
#[derive(Clone, Debug)]
pub enum Item {
    Check(CheckEntry),
    Record(Record),
}

impl From<CheckEntry> for Item {
    fn from(c: CheckEntry) -> Self {
        Item::Check(c)
    }
}

impl From<Record> for Item {
    fn from(r: Record) -> Self {
        Item::Record(r)
    }
}

impl From<DefectReport> for Item {
    fn from(r: DefectReport) -> Self {
        Item::Check(CheckEntry::from_defect(r))
    }
}

impl AuditReport {
    /// Sorts entries by (name, params), tags known discrepancies and counts.
    /// Elapsed times are zeroed unless `timings` is set.
    pub fn finalize(config: Value, items: Vec<Item>, manifest: &Manifest, timings: bool) -> Self {
        let mut checks = Vec::new();
        let mut records = Vec::new();
        for item in items {
            match item {
                Item::Check(c) => checks.push(c),
                Item::Record(r) => records.push(r),
            }
        }
        checks.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        records.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        let mut summary = Summary::default();
        for c in &mut checks {
            if !timings {
                c.elapsed_ms = 0;
            }
            match c.status {
                Status::Verified => summary.verified += 1,
                Status::Defect => {
                    summary.defect += 1;
                    c.known = manifest.classify(c).map(str::to_string);
                    if c.known.is_some() {
                        summary.known += 1;
                    }
                }
                Status::Error => summary.error += 1,
            }
        }
        AuditReport { version: VERSION.to_string(), config, checks, records, summary }
    }

    /// 3 on numeric non-convergence, then 1 on any error or unexcused defect.
    pub fn exit_code(&self, expect_known: bool) -> i32 {
        if self.checks.iter().any(|c| c.nonconvergent) {
            return 3;
        }
        let failing = self.checks.iter().any(|c| match c.status {
            Status::Verified => false,
            Status::Defect => !(expect_known && c.known.is_some()),
            Status::Error => true,
        });
        i32::from(failing)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let residual = match &c.residual {
                Value::String(s) => s.clone(),
                Value::Null => "-".to_string(),
                v => v.to_string(),
            };
            let _ = write!(out, "[{}] {} ({}): {}", c.status.label(), c.name, c.params, residual);
            if let Some(t) = c.tolerance {
                let _ = write!(out, " tol={t:e}");
            }
            if let Some(e) = c.error_estimate {
                let _ = write!(out, " est={e:e}");
            }
            if let Some(err) = &c.error {
                let _ = write!(out, " error: {err}");
            }
            if let Some(k) = &c.known {
                let _ = write!(out, " [known: {k}]");
            }
            if c.elapsed_ms > 0 {
                let _ = write!(out, " {}ms", c.elapsed_ms);
            }
            if let Some(v) = &c.value {
                let _ = write!(out, " value={v}");
            }
            out.push('\n');
        }
        for r in &self.records {
            let _ = writeln!(out, "{} ({}): {}", r.name, r.params, render_value(&r.value));
        }
        let s = &self.summary;
        let _ = writeln!(out, "summary: {} verified, {} defect ({} known), {} error", s.verified, s.defect, s.known, s.error);
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
