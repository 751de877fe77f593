//! Series families, output encodings and the renderers used by the binary.
//!
//! JSON output always has the shape
//! `{"command": ..., "parameters": {...}, "results": ...}` and writes every
//! count or coefficient as a decimal string.

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::automata::PathWord;
use crate::kernel;
use crate::series::SeriesError;
use crate::verify::{Status, VerifyReport};
use crate::{Rational, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Closed forms reachable from `series`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    DapF,
    DapG,
    DapLevel,
    DapTotal,
    RlA,
    RlB,
    SkewLevel,
    DapS2,
    SkewS2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::DapF => "dap-f",
            Family::DapG => "dap-g",
            Family::DapLevel => "dap-level",
            Family::DapTotal => "dap-total",
            Family::RlA => "rl-a",
            Family::RlB => "rl-b",
            Family::SkewLevel => "skew-level",
            Family::DapS2 => "dap-s2",
            Family::SkewS2 => "skew-s2",
        }
    }

    /// Whether the family is indexed by a level `k`.
    pub fn takes_level(self) -> bool {
        !matches!(self, Family::DapTotal | Family::DapS2 | Family::SkewS2)
    }

    /// Evaluates the family. `k` is ignored for unindexed families.
    pub fn evaluate(self, k: usize, order: usize) -> Result<Series, SeriesError> {
        match self {
            Family::DapF => kernel::dap_f::<Rational>(k, order),
            Family::DapG => kernel::dap_g(k, order),
            Family::DapLevel => kernel::dap_level(k, order),
            Family::DapTotal => kernel::dap_total(order),
            Family::RlA => kernel::rl_a(k, order),
            Family::RlB => kernel::rl_b(k, order),
            Family::SkewLevel => kernel::skew_level(k, order),
            Family::DapS2 => kernel::dap_s2(order),
            Family::SkewS2 => kernel::skew_s2(order),
        }
    }
}

fn envelope(command: &str, parameters: Value, results: Value) -> String {
    let doc = json!({ "command": command, "parameters": parameters, "results": results });
    serde_json::to_string_pretty(&doc).expect("json values always serialize") + "\n"
}

fn csv_document(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("writing to memory");
    for row in rows {
        writer.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

pub fn render_series(family: Family, k: Option<usize>, series: &Series, format: Format) -> String {
    let coeffs: Vec<String> = series.coeffs().iter().map(ToString::to_string).collect();
    match format {
        Format::Text => coeffs.join(",") + "\n",
        Format::Csv => csv_document(
            &["n", "coefficient"],
            coeffs.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.clone()]),
        ),
        Format::Json => envelope(
            "series",
            json!({ "family": family.name(), "k": k, "order": series.order() }),
            json!({ "coefficients": coeffs }),
        ),
    }
}

/// Renders a list of words for `enumerate` or `sample`.
pub fn render_words(command: &str, parameters: Value, words: &[PathWord], extra: Value, format: Format) -> String {
    match format {
        Format::Text => words
            .iter()
            .map(|w| format!("{w}\tlevel={}\tlayer={}\n", w.end_level(), w.end_layer()))
            .collect(),
        Format::Csv => csv_document(
            &["index", "word", "end_level", "end_layer"],
            words.iter().enumerate().map(|(i, w)| {
                vec![
                    i.to_string(),
                    w.to_string(),
                    w.end_level().to_string(),
                    w.end_layer().to_string(),
                ]
            }),
        ),
        Format::Json => {
            let records: Vec<Value> = words
                .iter()
                .map(|w| {
                    json!({
                        "word": w.to_string(),
                        "steps": w.len(),
                        "end_level": w.end_level(),
                        "end_layer": w.end_layer().name(),
                    })
                })
                .collect();
            let mut results = json!({ "count": words.len().to_string(), "words": records });
            if let (Value::Object(dst), Value::Object(src)) = (&mut results, extra) {
                dst.extend(src);
            }
            envelope(command, parameters, results)
        }
    }
}

pub fn render_report(report: &VerifyReport, format: Format) -> String {
    let status = |s: Status| match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    };
    match format {
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                out += &format!("{:4} {}", status(c.status), c.id);
                if let Some(d) = &c.detail {
                    out += &format!("  [{d}]");
                }
                if let Some(note) = &c.note {
                    out += &format!("  ({note})");
                }
                out.push('\n');
            }
            out += &format!("skew resolution: {}\n", report.skew_resolution);
            out += &format!("overall: {}\n", if report.success() { "PASS" } else { "FAIL" });
            out
        }
        Format::Csv => csv_document(
            &["check", "status", "parameters", "detail", "note"],
            report.checks.iter().map(|c| {
                vec![
                    c.id.clone(),
                    status(c.status).to_lowercase(),
                    c.parameters.to_string(),
                    c.detail.as_ref().map(ToString::to_string).unwrap_or_default(),
                    c.note.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Json => envelope(
            "verify",
            report.config.clone(),
            json!({
                "success": report.success(),
                "skew_resolution": report.skew_resolution,
                "checks": report.checks,
            }),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{enumerate, ModelId};

    #[test]
    fn series_text_and_csv() {
        let s = Family::DapLevel.evaluate(0, 5).unwrap();
        assert_eq!(render_series(Family::DapLevel, Some(0), &s, Format::Text), "1,0,1,1,2,4\n");
        let csv = render_series(Family::DapLevel, Some(0), &s, Format::Csv);
        assert!(csv.starts_with("n,coefficient\n0,1\n1,0\n"));
    }

    #[test]
    fn series_json_uses_strings() {
        let s = Family::SkewLevel.evaluate(0, 11).unwrap();
        let doc: Value = serde_json::from_str(&render_series(Family::SkewLevel, Some(0), &s, Format::Json)).unwrap();
        assert_eq!(doc["command"], "series");
        assert_eq!(doc["parameters"]["order"], 11);
        assert_eq!(doc["results"]["coefficients"][11], "2497");
    }

    #[test]
    fn words_json_merges_extra_fields() {
        let words = enumerate(ModelId::DapLr, 2, 2);
        let out = render_words("sample", json!({}), &words, json!({ "support_size": "2" }), Format::Json);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["results"]["support_size"], "2");
        assert_eq!(doc["results"]["words"][1]["word"], "UD1");
        assert_eq!(doc["results"]["words"][1]["end_layer"], "after-down");
    }

    #[test]
    fn unindexed_families() {
        assert!(!Family::DapTotal.takes_level());
        assert!(Family::RlA.takes_level());
        assert_eq!(Family::from_str("skew-s2", false).unwrap(), Family::SkewS2);
    }
}
