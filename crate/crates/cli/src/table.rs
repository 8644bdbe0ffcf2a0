//! Output table with an embedded metadata header.
//!
//! CSV: `#`-prefixed metadata lines, one column-header row, then data rows.
//! JSON mirrors the same schema. Both carry the command, every parameter
//! and the library version, enough to regenerate the file, and both render
//! byte-identically for identical configs.

use std::io::Write;

use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub config: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(command: &'static str) -> Self {
        Table {
            command,
            config: Vec::new(),
            notes: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn note(&mut self, text: impl ToString) {
        self.notes.push(text.to_string());
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# qho {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("# command: {}\n", self.command));
        for (key, value) in &self.config {
            out.push_str(&format!("# {key}: {value}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("# note: {note}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let config: serde_json::Map<String, serde_json::Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let value = json!({
            "tool": "qho",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": config,
            "notes": self.notes,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut out = serde_json::to_string_pretty(&value).expect("tables are always serializable");
        out.push('\n');
        out
    }

    pub fn write_to(&self, format: OutputFormat, out: Option<&std::path::Path>) -> std::io::Result<()> {
        let rendered = self.render(format);
        match out {
            Some(path) => std::fs::write(path, rendered),
            None => std::io::stdout().write_all(rendered.as_bytes()),
        }
    }
}
