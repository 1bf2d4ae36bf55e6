use std::io::{self, Write};

use linkadmit::Rational;
use serde_json::Value;

/// Command result: the JSON document, an optional flat table for CSV and
/// the process exit status.
pub struct Output {
    pub json: Value,
    pub table: Option<Table>,
    pub status: u8,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    /// Single-row table from `(column, value)` pairs.
    pub fn record<S: Into<String>>(pairs: impl IntoIterator<Item = (S, String)>) -> Self {
        let (header, row): (Vec<String>, Vec<String>) = pairs.into_iter().map(|(k, v)| (k.into(), v)).unzip();
        Table {
            header,
            rows: vec![row],
        }
    }
}

impl Output {
    pub fn ok(json: Value) -> Self {
        Output {
            json,
            table: None,
            status: 0,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }
}

pub fn write_json(out: &mut impl Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn write_csv(out: &mut impl Write, table: &Table) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// Decimal rendering for `--approx`; never used in comparisons.
pub fn approx(r: &Rational) -> Value {
    serde_json::Number::from_f64(r.to_f64()).map_or(Value::Null, Value::Number)
}

pub fn approx_text(r: &Rational) -> String {
    format!("{:.6}", r.to_f64())
}
