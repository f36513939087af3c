//! Flat records and their CSV and JSON renderings.
//!
//! Every record of one run has the same keys in the same order, so a CSV
//! table has a single header and the JSON objects carry the same field names.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Bool(bool),
    /// Rendered with 17 significant digits.
    Real(f64),
    /// An error radius, rendered with 3 significant digits.
    Err(f64),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Err(v) => format!("{v:.2e}"),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Real(_) | Cell::Err(_) => {
                let text = self.render();
                // The JSON number is the value of the rendered decimal, so
                // both formats parse to the same f64.
                match text.parse::<f64>().ok().and_then(Number::from_f64) {
                    Some(n) => Value::Number(n),
                    None => Value::String(text),
                }
            }
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

/// Kind of an output record; rendered as the leading `kind` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Point,
    SequenceRow,
    Root,
    Suite,
    Na,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::SequenceRow => "sequence_row",
            Kind::Root => "root",
            Kind::Suite => "suite",
            Kind::Na => "na",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    fields: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn new(kind: Kind) -> Self {
        Self {
            fields: vec![("kind", Cell::from(kind.name()))],
        }
    }

    pub fn with(mut self, key: &'static str, cell: impl Into<Cell>) -> Self {
        self.fields.push((key, cell.into()));
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|(k, _)| *k)
    }
}

/// Rendering of a whole run: optional metadata plus records.
pub struct Table {
    pub meta: Option<Vec<(&'static str, String)>>,
    pub records: Vec<Record>,
}

impl Table {
    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        if let Some(meta) = &self.meta {
            for (k, v) in meta {
                writeln!(out, "# {k}={v}")?;
            }
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        if let Some(first) = self.records.first() {
            w.write_record(first.keys())?;
        }
        for r in &self.records {
            w.write_record(r.fields.iter().map(|(_, c)| c.render()))?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        let mut root = Map::new();
        if let Some(meta) = &self.meta {
            let m: Map<String, Value> = meta
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                .collect();
            root.insert("meta".into(), Value::Object(m));
        }
        let records = self
            .records
            .iter()
            .map(|r| {
                Value::Object(
                    r.fields
                        .iter()
                        .map(|(k, c)| (k.to_string(), c.to_json()))
                        .collect(),
                )
            })
            .collect();
        root.insert("records".into(), Value::Array(records));
        serde_json::to_writer_pretty(&mut *out, &Value::Object(root))?;
        writeln!(out)
    }
}
