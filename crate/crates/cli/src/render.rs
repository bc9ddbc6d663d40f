//! Output formats: pretty JSON, CSV tables, aligned text.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Rows for the CSV and text views.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn text(&self) -> String {
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> =
                cells.iter().zip(&width).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        out.push_str(&line(&width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// A command's result in every format.
pub struct Rendered {
    pub json: String,
    /// `key: value` lines shown above the text table.
    pub summary: Vec<(String, String)>,
    pub table: Table,
}

impl Rendered {
    pub fn new<T: Serialize>(report: &T, summary: Vec<(String, String)>, table: Table) -> Self {
        let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
        json.push('\n');
        Self { json, summary, table }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.table.csv(),
            Format::Text => {
                let mut out = String::new();
                let w = self.summary.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                for (k, v) in &self.summary {
                    out.push_str(&format!("{k}:{} {v}\n", " ".repeat(w - k.chars().count())));
                }
                if !self.summary.is_empty() {
                    out.push('\n');
                }
                out.push_str(&self.table.text());
                out
            }
        }
    }
}
