//! Report documents: ordered key/value pairs followed by tables.
//!
//! `kv` output is one `key=value` line per pair and per table cell
//! (`table.row.column=value`, rows numbered from 1). `table` output aligns
//! pairs and columns for reading. Both are pure functions of the document,
//! so equal documents render to equal bytes.

use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Kv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "table" => Ok(Format::Table),
            "kv" => Ok(Format::Kv),
            _ => Err(format!("unknown format {s:?}; expected table or kv")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub pairs: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new() -> Document {
        Document::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.pairs.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => self.render_kv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            writeln!(out, "{k}={}", one_line(v)).expect("string write");
        }
        for t in &self.tables {
            for (i, row) in t.rows.iter().enumerate() {
                for (c, v) in t.columns.iter().zip(row) {
                    writeln!(out, "{}.{}.{c}={}", t.name, i + 1, one_line(v)).expect("string write");
                }
            }
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let width = self.pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.pairs {
            writeln!(out, "{k:<width$}  {}", one_line(v)).expect("string write");
        }
        for t in &self.tables {
            out.push('\n');
            writeln!(out, "[{}]", t.name).expect("string write");
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for row in &t.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&t.columns)).expect("string write");
            for row in &t.rows {
                writeln!(out, "{}", line(row)).expect("string write");
            }
        }
        out
    }
}

fn one_line(v: &str) -> String {
    v.replace('\n', " ")
}
