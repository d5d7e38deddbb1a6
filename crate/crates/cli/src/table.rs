//! Column tables and their CSV/JSON encodings.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which is
//! enough for every `f64` to survive a text round trip. Parsing infers a
//! cell's type from its text (integer, float, bool, empty, text), so
//! parse → emit reproduces the input bytes.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Not applicable: empty in CSV, `null` in JSON.
    Null,
}

impl Cell {
    pub fn to_csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    pub fn from_csv_field(s: &str) -> Cell {
        if s.is_empty() {
            return Cell::Null;
        }
        if let Ok(v) = s.parse::<i64>() {
            return Cell::Int(v);
        }
        if let Ok(v) = s.parse::<f64>() {
            return Cell::Float(v);
        }
        match s {
            "true" => Cell::Bool(true),
            "false" => Cell::Bool(false),
            _ => Cell::Text(s.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // JSON has no inf/NaN
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(_) | Cell::Null => Value::Null,
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
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

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>) -> Self {
        Table {
            name: name.into(),
            headers: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Appends a column; `values` must have one entry per existing row, or
    /// define the rows if this is the first column.
    pub fn push_column(&mut self, header: impl Into<String>, values: Vec<Cell>) {
        if self.headers.is_empty() && self.rows.is_empty() {
            self.rows = values.into_iter().map(|v| vec![v]).collect();
        } else {
            assert_eq!(values.len(), self.rows.len(), "column length mismatch");
            for (row, v) in self.rows.iter_mut().zip(values) {
                row.push(v);
            }
        }
        self.headers.push(header.into());
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row length mismatch");
        self.rows.push(row);
    }

    pub fn column(&self, header: &str) -> Option<Vec<&Cell>> {
        let i = self.headers.iter().position(|h| h == header)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn column_f64(&self, header: &str) -> Option<Vec<f64>> {
        self.column(header)?.into_iter().map(Cell::as_f64).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::internal(format!("csv write failed: {e}"));
        w.write_record(&self.headers).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv_field))
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn from_csv(name: impl Into<String>, text: &str) -> Result<Table, CliError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let bad = |e: csv::Error| CliError::validation(format!("malformed csv: {e}"));
        let headers = r
            .headers()
            .map_err(bad)?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec.map_err(bad)?.iter().map(Cell::from_csv_field).collect());
        }
        Ok(Table {
            name: name.into(),
            headers,
            rows,
        })
    }

    /// `{"<column>": [values…]}` in column order.
    pub fn to_json_columns(&self) -> Value {
        let mut obj = Map::new();
        for (i, h) in self.headers.iter().enumerate() {
            obj.insert(
                h.clone(),
                Value::Array(self.rows.iter().map(|r| r[i].to_json()).collect()),
            );
        }
        Value::Object(obj)
    }
}

/// Splits concatenated CSV output (tables separated by one blank line) back
/// into per-table text.
pub fn split_csv_sections(text: &str) -> Vec<&str> {
    text.split("\n\n")
        .filter(|s| !s.trim().is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let mut t = Table::new("t");
        t.push_column("m", vec![Cell::Int(-1), Cell::Int(0), Cell::Int(2)]);
        t.push_column(
            "v",
            vec![
                Cell::Float(0.1),
                Cell::Float(-0.0),
                Cell::Float(f64::INFINITY),
            ],
        );
        t.push_column("ok", vec![true.into(), false.into(), Cell::Null]);
        t.push_column("s", vec!["a,b".into(), "right".into(), "x \"y\"".into()]);
        let text = t.to_csv_string();
        let back = Table::from_csv("t", &text).unwrap();
        assert_eq!(back.to_csv_string(), text);
        assert_eq!(back.column_f64("v").unwrap()[0], 0.1);
    }

    #[test]
    fn floats_carry_seventeen_digits() {
        assert_eq!(Cell::Float(0.1).to_csv_field(), "1.0000000000000001e-1");
        assert_eq!(Cell::Float(1.2).to_csv_field(), "1.2000000000000000e0");
        for v in [std::f64::consts::PI, 1e-300, 6.02214076e23, -2.5e-7] {
            let s = Cell::Float(v).to_csv_field();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_columns() {
        let mut t = Table::new("t");
        t.push_column("a", vec![Cell::Int(1), Cell::Int(2)]);
        t.push_column("b", vec![Cell::Float(f64::NAN), Cell::Float(0.5)]);
        assert_eq!(t.to_json_columns(), json!({"a": [1, 2], "b": [null, 0.5]}));
    }
}
