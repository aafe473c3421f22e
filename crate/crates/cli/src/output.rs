//! Rendering of command results as JSON or aligned text tables.

use serde_json::Value;

use crate::Format;

/// A command's result in both output forms. A report may carry a
/// validation failure, printed in full but signalled by the exit code.
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(json: Value, table: Table) -> Self {
        Report { json, table, failure: None }
    }

    pub fn failing(mut self, failure: Option<String>) -> Self {
        self.failure = failure;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.render(),
        }
    }
}

/// Rows of text cells under optional headers, with free-form notes below.
#[derive(Default)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    notes: Vec<String>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }

    /// A single bare value.
    pub fn scalar(v: impl ToString) -> Self {
        Table { rows: vec![vec![v.to_string()]], ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn render(&self) -> String {
        let cols = self.rows.iter().map(Vec::len).chain([self.headers.len()]).max().unwrap_or(0);
        let mut widths = vec![0; cols];
        for r in self.rows.iter().chain(std::iter::once(&self.headers)) {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            let mut s = padded.join("  ").trim_end().to_string();
            s.push('\n');
            s
        };
        let mut out = String::new();
        if !self.headers.is_empty() {
            out += &line(&self.headers);
        }
        for r in &self.rows {
            out += &line(r);
        }
        for n in &self.notes {
            out += n;
            out.push('\n');
        }
        out
    }
}
