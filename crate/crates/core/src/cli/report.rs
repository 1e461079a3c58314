use num_bigint::BigUint;
use serde_json::{Map, Value};

use crate::center::CenterModel;
use crate::fusion::{FusionRing, ObjectVector};
use crate::obstruct::{ObstructionReport, SpreadBound};

use super::config::OutputMode;

pub const REPORT_VERSION: u32 = 1;

/// Output of one command: rows plus a summary, rendered as text or JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub banner: Option<String>,
    pub notes: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report {
            command: command.to_string(),
            input,
            banner: None,
            notes: Vec::new(),
            rows: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut summary = self.summary.clone();
        if let Some(b) = &self.banner {
            summary.insert("banner".into(), Value::String(b.clone()));
        }
        if !self.notes.is_empty() {
            summary.insert(
                "notes".into(),
                Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
            );
        }
        let mut doc = Map::new();
        doc.insert("version".into(), Value::from(REPORT_VERSION));
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.insert("input".into(), self.input.clone());
        doc.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        doc.insert("summary".into(), Value::Object(summary));
        Value::Object(doc)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(b) = &self.banner {
            out.push_str(&format!("*** {b} ***\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let mut columns: Vec<&String> = Vec::new();
        for row in &self.rows {
            for key in row.keys() {
                if !columns.contains(&key) {
                    columns.push(key);
                }
            }
        }
        if !columns.is_empty() {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|row| columns.iter().map(|c| row.get(*c).map_or("-".into(), render)).collect())
                .collect();
            let widths: Vec<usize> = columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<String>| {
                let padded: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(columns.iter().map(|c| c.to_string()).collect()));
            out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
            for r in cells {
                out.push_str(&line(r));
            }
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {}\n", render(v)));
        }
        out
    }

    pub fn emit(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            OutputMode::Text => self.to_text(),
        }
    }
}

/// Compact single-cell rendering; objects show their nonzero entries.
pub fn render(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "[]".into(),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(", "),
        Value::Object(map) => {
            let terms: Vec<String> = map
                .iter()
                .filter(|(_, x)| !is_zero(x))
                .map(|(k, x)| format!("{k}:{}", render(x)))
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" ")
            }
        }
        other => other.to_string(),
    }
}

fn is_zero(v: &Value) -> bool {
    matches!(v, Value::Number(n) if n.to_string() == "0")
}

pub fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse().expect("decimal integers are JSON numbers"))
}

pub fn center_vector(model: &CenterModel, v: &[BigUint]) -> Value {
    Value::Object(
        model
            .labels()
            .iter()
            .zip(v)
            .map(|(l, c)| (l.clone(), big(c)))
            .collect(),
    )
}

pub fn object(ring: &FusionRing, v: &ObjectVector) -> Value {
    Value::Object(
        ring.labels()
            .iter()
            .zip(v.coeffs())
            .map(|(l, c)| (l.clone(), big(c)))
            .collect(),
    )
}

pub fn spread(s: SpreadBound) -> Value {
    match s {
        SpreadBound::Vacuous => Value::String("vacuous".into()),
        SpreadBound::Max(x) => Value::from(x),
    }
}

/// Rows and summary of a scan; witness rows carry `s_max`.
pub fn fill_scan(report: &mut Report, model: &CenterModel, ring: &FusionRing, x: &ObjectVector, scan: &ObstructionReport) {
    for row in &scan.rows {
        let mut r = Map::new();
        r.insert("k".into(), Value::from(row.check.k));
        r.insert("m_k".into(), center_vector(model, &row.check.m_k));
        r.insert(
            "fixing".into(),
            Value::Array(
                row.check
                    .fixing
                    .iter()
                    .map(|&g| Value::String(model.label(g).to_string()))
                    .collect(),
            ),
        );
        if let Some(s) = row.s_max {
            r.insert("s_max".into(), spread(s));
        }
        report.rows.push(r);
    }
    let s = &mut report.summary;
    s.insert("generator".into(), object(ring, x));
    s.insert("generator_index".into(), Value::from(scan.generator_index));
    s.insert("witness_count".into(), Value::from(scan.witness_count()));
    s.insert("max_ruled_out_spread".into(), scan.max_ruled_out().map_or(Value::Null, spread));
    s.insert("statement".into(), Value::String(scan.summary()));
    s.insert("generator_statement".into(), Value::String(scan.generator_statement()));
    s.insert("necessary_condition_only".into(), Value::Bool(scan.necessary_condition_only));
    if scan.necessary_condition_only {
        report.banner = Some(crate::obstruct::TY_BANNER.to_string());
    }
    report.notes = scan.notes.clone();
}
