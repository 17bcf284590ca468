//! Rectangular result tables and their CSV/JSON encodings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Ordered columns, numeric rows and a string metadata block.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    meta: BTreeMap<String, String>,
    columns: Vec<String>,
    /// Non-finite values are written as `null`.
    rows: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    /// Panics on a row of the wrong width: column count is fixed per kind.
    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.meta {
            out.push_str(&format!("# {key} = {}\n", value.replace('\n', " ")));
        }
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row.iter().map(|x| format_number(*x))).expect("in-memory write");
        }
        let body = writer.into_inner().expect("in-memory flush");
        out.push_str(std::str::from_utf8(&body).expect("ascii output"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut meta = BTreeMap::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let (key, value) = line[1..]
                .split_once(" = ")
                .ok_or_else(|| CliError::usage(format!("malformed metadata line: {line}")))?;
            meta.insert(key.trim().to_string(), value.to_string());
        }
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let columns: Vec<String> = reader
            .headers()
            .map_err(|e| CliError::usage(format!("bad CSV header: {e}")))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| CliError::usage(format!("bad CSV row: {e}")))?;
            let row = record
                .iter()
                .map(|v| v.parse::<f64>().map_err(|e| CliError::usage(format!("bad number {v:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self { meta, columns, rows })
    }

    pub fn to_json(&self) -> String {
        let table = JsonTable {
            meta: self.meta.clone(),
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.is_finite().then_some(*x)).collect())
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&table).expect("serializable table");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let table: JsonTable = serde_json::from_str(text).map_err(|e| CliError::usage(format!("bad JSON table: {e}")))?;
        Ok(Self {
            meta: table.meta,
            columns: table.columns,
            rows: table
                .rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
                .collect(),
        })
    }

    /// Writes the encoded table, creating parent directories as needed.
    pub fn export(&self, format: Format, path: &Path) -> Result<(), CliError> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
        std::fs::write(path, self.encode(format)).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new(&["x", "y"]);
        t.set_meta("name", "demo");
        t.push(vec![0.1, 1.0 / 3.0]);
        t.push(vec![2.0, f64::MIN_POSITIVE]);
        t
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_number(2.0), "2.0000000000000000e0");
        assert_eq!(format_number(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn csv_round_trip() {
        let t = sample();
        let text = t.to_csv();
        assert!(text.starts_with("# name = demo\nx,y\n"));
        assert_eq!(ResultTable::from_csv(&text).unwrap(), t);
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        assert_eq!(ResultTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = ResultTable::new(&["a", "b"]);
        assert_eq!(t.to_csv(), "a,b\n");
    }

    #[test]
    fn non_finite_becomes_null() {
        let mut t = ResultTable::new(&["a"]);
        t.push(vec![f64::NAN]);
        assert!(t.to_json().contains("null"));
        assert!(ResultTable::from_json(&t.to_json()).unwrap().rows[0][0].is_nan());
    }
}
