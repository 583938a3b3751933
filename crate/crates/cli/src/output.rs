use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Text(String),
}

impl Cell {
    /// Shortest decimal that parses back to the same value.
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Number::from_f64(*v).map_or_else(|| Value::String(format!("{v:?}")), Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or_else(|| Cell::Text("none".to_string()), Cell::Float)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect();
                Value::Object(map)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &records)?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trips_floats() {
        let mut t = Table::new(&["n", "x", "b"]);
        t.push(vec![3.into(), 0.1.into(), None.into()]);
        t.push(vec![4.into(), 1e-300.into(), Some(2.0).into()]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,x,b\n3,0.1,none\n4,1e-300,2.0\n");
    }

    #[test]
    fn json_keeps_column_order() {
        let mut t = Table::new(&["re", "im"]);
        t.push(vec![1.5.into(), (-0.25).into()]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["re", "im"]);
        assert_eq!(v[0]["im"], -0.25);
    }
}
