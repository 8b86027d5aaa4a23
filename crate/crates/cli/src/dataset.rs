//! Tabular datasets and their CSV and JSON encodings.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), which
//! round-trips every finite f64 exactly.

use serde_json::value::RawValue;

use crate::config::OutputFormat;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Real(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Real(x) => format_real(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn parse(s: &str) -> Cell {
        if let Ok(i) = s.parse::<i64>() {
            return Cell::Int(i);
        }
        match s.parse::<f64>() {
            Ok(x) => Cell::Real(x),
            Err(_) => Cell::Text(s.to_string()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    /// Provenance, in insertion order.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r[j].as_f64()).collect()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut ds = Dataset::default();
        let mut header = true;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest
                    .split_once(": ")
                    .ok_or_else(|| CliError::Arg(format!("malformed header line: {line}")))?;
                ds.meta.push((k.to_string(), v.to_string()));
            } else if header {
                ds.columns = line.split(',').map(str::to_string).collect();
                header = false;
            } else if !line.is_empty() {
                let row: Vec<Cell> = line.split(',').map(Cell::parse).collect();
                if row.len() != ds.columns.len() {
                    return Err(CliError::Arg(format!("row has {} cells, expected {}", row.len(), ds.columns.len())));
                }
                ds.rows.push(row);
            }
        }
        Ok(ds)
    }

    pub fn to_json(&self) -> String {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let rows: Vec<Vec<Box<RawValue>>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(json_cell).collect())
            .collect();
        let doc = JsonDoc {
            meta: &meta,
            columns: &self.columns,
            rows,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Arg(format!("bad dataset JSON: {e}")))?;
        let bad = || CliError::Arg("dataset JSON must have meta, columns and rows".into());
        let meta = v["meta"]
            .as_object()
            .ok_or_else(bad)?
            .iter()
            .map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string()))
            .collect();
        let columns = v["columns"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_str().unwrap_or_default().to_string())
            .collect();
        let rows = v["rows"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(bad)
                    .map(|cells| cells.iter().map(cell_from_json).collect())
            })
            .collect::<Result<_, _>>()?;
        Ok(Dataset { meta, columns, rows })
    }
}

#[derive(serde::Serialize)]
struct JsonDoc<'a> {
    meta: &'a serde_json::Map<String, serde_json::Value>,
    columns: &'a [String],
    rows: Vec<Vec<Box<RawValue>>>,
}

fn json_cell(c: &Cell) -> Box<RawValue> {
    let text = match c {
        Cell::Real(x) if x.is_finite() => format_real(*x),
        Cell::Real(_) => "null".to_string(),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => serde_json::to_string(s).expect("string serializes"),
    };
    RawValue::from_string(text).expect("valid JSON scalar")
}

fn cell_from_json(v: &serde_json::Value) -> Cell {
    match v {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) if !n.to_string().contains(['.', 'e', 'E']) => Cell::Int(i),
            _ => Cell::Real(n.as_f64().unwrap_or(f64::NAN)),
        },
        serde_json::Value::String(s) => Cell::Text(s.clone()),
        serde_json::Value::Null => Cell::Real(f64::NAN),
        other => Cell::Text(other.to_string()),
    }
}
