//! Tidy tabular output in CSV or JSON.
//!
//! Every number is rounded to 12 significant digits before it is printed so
//! that repeated runs produce byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::CliError;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses back")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Num(x) => sig12(*x).to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Num(x) => json!(sig12(*x)),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV with a leading `# config: {...}` provenance line.
    pub fn write_csv<W: Write>(&self, out: W, config: &impl Serialize) -> Result<(), CliError> {
        let mut out = out;
        writeln!(out, "# config: {}", serde_json::to_string(config)?)?;
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv_text))?;
        }
        writer.flush()?;
        Ok(())
    }

    /// `{"config": ..., "rows": [{column: value}, ...]}`.
    pub fn write_json<W: Write>(&self, mut out: W, config: &impl Serialize) -> Result<(), CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.json_value());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "config": config, "rows": rows });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn write(&self, format: Format, target: Option<&Path>, config: &impl Serialize) -> Result<(), CliError> {
        let sink: Box<dyn Write> = match target {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        match format {
            Format::Csv => self.write_csv(sink, config),
            Format::Json => self.write_json(sink, config),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(sig12(0.029_563_161_011_900_874), 0.029_563_161_011_9);
        assert_eq!(sig12(-0.007_390_790_252_975_218), -0.007_390_790_252_98);
        assert_eq!(sig12(1.0), 1.0);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-0.0), 0.0);
    }

    #[test]
    fn csv_layout() {
        let mut table = Table::new(&["t", "value", "flag", "maybe"]);
        table.push(vec![0.5.into(), (1.0 / 3.0).into(), true.into(), None.into()]);
        let mut buf = Vec::new();
        table.write_csv(&mut buf, &json!({"seed": 1})).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# config: {\"seed\":1}\nt,value,flag,maybe\n0.5,0.333333333333,true,\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut table = Table::new(&["t", "maybe"]);
        table.push(vec![2.0.into(), Some(0.25).into()]);
        let mut buf = Vec::new();
        table.write_json(&mut buf, &json!({"seed": 1})).unwrap();
        let doc: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["rows"][0]["maybe"], json!(0.25));
        assert_eq!(doc["config"]["seed"], json!(1));
    }
}
