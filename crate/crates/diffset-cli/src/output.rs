//! Rendering of command reports as JSON, CSV or plain text.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for the CSV rendering.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// A command result in every supported rendering.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub text: String,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report { json, table: None, text }
    }

    pub fn with_table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    /// Renders in `format`, or returns `None` when the format is unavailable.
    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                Some(s)
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Some(s)
            }
            Format::Csv => {
                let table = self.table.as_ref()?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).ok()?;
                for row in &table.rows {
                    w.write_record(row).ok()?;
                }
                String::from_utf8(w.into_inner().ok()?).ok()
            }
        }
    }
}
