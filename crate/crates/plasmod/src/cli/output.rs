//! Deterministic sweep output.
//!
//! CSV documents start with `# key: value` metadata comments (timestamp
//! included there) followed by the body: a header line and one row per
//! record. The body is byte-stable across runs for identical configs:
//! '.' decimal points, '\n' line endings, shortest-round-trip float
//! formatting, rows pre-sorted by the sweep parameter.

use std::fmt::Write as _;

/// Output encoding for the front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One output record: numeric values per schema column plus an optional
/// status flag ("singular", "no_real_frequency", ...).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub values: Vec<f64>,
    pub flag: Option<&'static str>,
}

impl SweepRow {
    pub fn ok(values: Vec<f64>) -> SweepRow {
        SweepRow { values, flag: None }
    }

    pub fn flagged(values: Vec<f64>, flag: &'static str) -> SweepRow {
        SweepRow {
            values,
            flag: Some(flag),
        }
    }
}

/// Result of one sweep command.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub command: &'static str,
    pub schema: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
    /// Ordered key/value metadata: config echo, tool version, timestamp,
    /// and per-command scalars. Excluded from the CSV body.
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    pub fn new(command: &'static str, schema: Vec<&'static str>, rows: Vec<SweepRow>) -> Self {
        SweepResult {
            command,
            schema,
            rows,
            metadata: Vec::new(),
        }
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    /// CSV body only: header plus data rows, no metadata.
    pub fn body_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.schema.join(","));
        out.push_str(",flag\n");
        for row in &self.rows {
            debug_assert_eq!(row.values.len(), self.schema.len());
            for (i, v) in row.values.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", v);
            }
            out.push(',');
            out.push_str(row.flag.unwrap_or(""));
            out.push('\n');
        }
        out
    }

    /// Full CSV document: `# key: value` comment lines, then the body.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# command: {}", self.command);
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {}: {}", k, v);
        }
        out.push_str(&self.body_csv());
        out
    }

    /// JSON document; NaN values map to null.
    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let values: Vec<Value> = row
                    .values
                    .iter()
                    .map(|v| if v.is_finite() { json!(v) } else { Value::Null })
                    .collect();
                json!({ "values": values, "flag": row.flag.unwrap_or("") })
            })
            .collect();
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), Value::String(v.clone()));
        }
        let doc = json!({
            "command": self.command,
            "schema": self.schema,
            "rows": rows,
            "metadata": Value::Object(meta),
        });
        serde_json::to_string_pretty(&doc).expect("sweep result serializes")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}
