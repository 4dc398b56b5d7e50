//! Deterministic report assembly. Numbers are printed at 17 significant
//! digits ('.' decimal, scientific), so identical configs reproduce reports
//! byte for byte.

use std::path::Path;

use crate::run::CliError;

/// 17 significant digits; NaN prints as "nan" (JSON mirrors it as null).
pub fn fmt(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub struct Report {
    /// `# key = value` header lines, in insertion order.
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    /// One entry per column; `None` renders as nan/null.
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Report {
    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.metadata.push((key.to_string(), fmt(value)));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map_or_else(|| "nan".to_string(), fmt))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config_echo: &str) -> String {
        let mut root = serde_json::Map::new();
        root.insert(
            "config".to_string(),
            serde_json::from_str(config_echo).expect("config echo is valid JSON"),
        );
        let mut meta = serde_json::Map::new();
        for (k, v) in &self.metadata {
            if k == "config" {
                continue; // carried structurally above
            }
            meta.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        root.insert("metadata".to_string(), serde_json::Value::Object(meta));
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = cell
                        .and_then(serde_json::Number::from_f64)
                        .map_or(serde_json::Value::Null, serde_json::Value::Number);
                    obj.insert((*name).to_string(), v);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        root.insert("rows".to_string(), serde_json::Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("report serializes");
        text.push('\n');
        text
    }
}

/// Write to the path, or stdout when none is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
