//! Table emission: CSV with a metadata header line and 15-significant-digit
//! floats, or JSON mirroring the same columns.

use std::io::{self, Write};

#[derive(Clone, Debug)]
pub enum Cell {
    I(i64),
    F(f64),
    S(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::I(v) => v.to_string(),
            Cell::F(v) => format_float(*v),
            Cell::S(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::I(v) => serde_json::Value::from(*v),
            Cell::F(v) => serde_json::Value::from(*v),
            Cell::S(v) => serde_json::Value::from(v.as_str()),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// 15 significant digits, scientific.
pub fn format_float(v: f64) -> String {
    format!("{v:.14e}")
}

pub struct Table {
    pub name: &'static str,
    pub meta: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# arcdet {} {}", env!("CARGO_PKG_VERSION"), self.meta)?;
        writeln!(out, "{}", self.headers.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn json_rows(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// One table serializes as a bare array of row objects; several tables as
/// an object keyed by table name.
pub fn write_json(out: &mut dyn Write, tables: &[Table]) -> io::Result<()> {
    let value = if tables.len() == 1 {
        tables[0].json_rows()
    } else {
        let map: serde_json::Map<String, serde_json::Value> = tables
            .iter()
            .map(|t| (t.name.to_string(), t.json_rows()))
            .collect();
        serde_json::Value::Object(map)
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable tables");
    writeln!(out, "{text}")
}
