//! Tabular reports rendered as CSV, JSON or an aligned text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::count::{SquareSpectrum, StabilityCertificate};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
    AsciiTable,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "ascii-table" | "table" => Ok(Format::AsciiTable),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?} (csv, json, ascii-table)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityMeta {
    pub prefix_len: usize,
    pub certified: bool,
}

impl From<StabilityCertificate> for StabilityMeta {
    fn from(c: StabilityCertificate) -> Self {
        Self {
            prefix_len: c.prefix_len,
            certified: c.certified,
        }
    }
}

/// One command's output: a table plus metadata for traceability.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_meta: Option<Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<[u64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityMeta>,
    pub provenance: BTreeMap<String, Value>,
    /// Hard failures (mismatches between methods, failed invariants).
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn config(mut self, key: &str, value: impl Serialize) -> Self {
        self.config.insert(key.into(), json!(value));
        self
    }

    pub fn columns(mut self, cols: &[&str]) -> Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.provenance.insert(key.into(), json!(value));
    }

    /// Table `length,count` from a spectrum, also filling the `counts`/`total` summary.
    pub fn with_spectrum(mut self, spectrum: &SquareSpectrum, lengths: &[usize]) -> Self {
        self.columns = vec!["length".into(), "count".into()];
        let counts: Vec<[u64; 2]> = lengths
            .iter()
            .map(|&m| [m as u64, spectrum.at(m)])
            .collect();
        self.rows = counts
            .iter()
            .map(|[m, c]| vec![json!(m), json!(c)])
            .collect();
        self.total = Some(counts.iter().map(|c| c[1]).sum());
        self.counts = Some(counts);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::AsciiTable => self.to_table(),
        }
    }

    fn cell(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let quote = |s: String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        };
        out.push_str(
            &self
                .columns
                .iter()
                .cloned()
                .map(quote)
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            out.push_str(
                &row.iter()
                    .map(|v| quote(Self::cell(v)))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Self::cell).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .filter_map(|r| r.get(i))
                    .map(String::len)
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, items: &[String]| {
            let parts: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &self.columns);
        let _ = writeln!(
            out,
            "{}",
            widths
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .join("  ")
        );
        for r in &cells {
            line(&mut out, r);
        }
        for f in &self.failures {
            let _ = writeln!(out, "FAIL: {f}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let spec = SquareSpectrum::from_counts(5, [(4, 2)]);
        let r = Report::new("count")
            .config("word", "ababa")
            .with_spectrum(&spec, &[2, 4]);
        assert_eq!(r.to_csv(), "length,count\n2,0\n4,2\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["counts"], json!([[2, 0], [4, 2]]));
        assert_eq!(v["total"], json!(2));
        assert!(r.to_table().contains("length"));
    }

    #[test]
    fn csv_quoting() {
        let mut r = Report::new("x").columns(&["a"]);
        r.push_row(vec![json!("p,q")]);
        assert_eq!(r.to_csv(), "a\n\"p,q\"\n");
        assert_eq!("ascii-table".parse::<Format>().unwrap(), Format::AsciiTable);
        assert!("xml".parse::<Format>().is_err());
    }
}
