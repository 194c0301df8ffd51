//! Tabular output in CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

/// 17 significant digits, locale independent; non-finite values as `inf`, `-inf`, `nan`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(fmt_float(*v)),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A header plus rows, with free-form metadata for the JSON envelope.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
    /// Extra `# key=value` lines after the CSV body; a `notes` object in JSON.
    pub notes: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            meta: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(w, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(w, "{}", cells.join(","))?;
                }
                for (k, v) in &self.notes {
                    writeln!(w, "# {k}={}", v.csv())?;
                }
            }
            Format::Json => {
                let mut meta = self.meta.clone();
                meta.insert("columns".into(), json!(self.columns));
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect();
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(meta));
                doc.insert("rows".into(), Value::Array(rows));
                if !self.notes.is_empty() {
                    let notes: Map<String, Value> =
                        self.notes.iter().map(|(k, v)| (k.clone(), v.json())).collect();
                    doc.insert("notes".into(), Value::Object(notes));
                }
                serde_json::to_writer_pretty(&mut w, &Value::Object(doc))?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}
