//! Tabular reports and their text encodings.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// One value in a report. Reals are stored already rounded to 12 significant
/// digits so that every encoding reproduces them exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Real(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Cell {
        Cell::Int(v.into())
    }

    pub fn real(x: f64) -> Cell {
        Cell::Real(format_real(x).parse().expect("formatted reals parse"))
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(x) => format_real(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Real(_))
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::Number(Number::from_str(&v.to_string()).expect("integer literal")),
            Cell::Real(x) if x.is_finite() => Value::Number(Number::from_str(&format_real(*x)).expect("real literal")),
            Cell::Real(x) => Value::String(format_real(*x)),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }

    /// Inverse of the JSON encoding.
    pub fn from_json(v: &Value) -> Option<Cell> {
        Some(match v {
            Value::Null => Cell::Null,
            Value::Bool(b) => Cell::Bool(*b),
            Value::String(s) => Cell::Text(s.clone()),
            Value::Number(n) => {
                let s = n.to_string();
                if s.contains(['.', 'e', 'E']) {
                    Cell::Real(s.parse().ok()?)
                } else {
                    Cell::Int(s.parse().ok()?)
                }
            }
            _ => return None,
        })
    }
}

/// 12 significant digits, positional when the exponent is moderate, always
/// with a decimal point or exponent so reals never read back as integers.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if negative { "-" } else { "" };
    if !(-5..16).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        return format!("{sign}{head}.{tail}e{exp}");
    }
    let (int_part, frac_part) = if exp >= 0 {
        let split = exp as usize + 1;
        if digits.len() <= split {
            (format!("{digits}{}", "0".repeat(split - digits.len())), String::new())
        } else {
            (digits[..split].to_string(), digits[split..].to_string())
        }
    } else {
        ("0".to_string(), format!("{}{digits}", "0".repeat((-exp - 1) as usize)))
    };
    let frac_part = if frac_part.is_empty() { "0".to_string() } else { frac_part };
    format!("{sign}{int_part}.{frac_part}")
}

/// Named columns and rows of cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Report {
        Report {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Appends a column holding the same value in every row.
    pub fn stamp(&mut self, column: &str, value: Cell) {
        self.columns.push(column.to_string());
        for row in &mut self.rows {
            row.push(value.clone());
        }
    }

    /// Reads back JSON-lines output.
    pub fn from_json_lines(text: &str) -> Option<Report> {
        let mut columns: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let Value::Object(map) = serde_json::from_str::<Value>(line).ok()? else {
                return None;
            };
            let keys: Vec<String> = map.keys().cloned().collect();
            match &columns {
                Some(c) if *c != keys => return None,
                Some(_) => {}
                None => columns = Some(keys),
            }
            rows.push(map.values().map(Cell::from_json).collect::<Option<Vec<_>>>()?);
        }
        Some(Report {
            columns: columns.unwrap_or_default(),
            rows,
        })
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => emit_csv(report),
        Format::Table => emit_table(report),
    }
}

fn emit_json(report: &Report) -> String {
    let mut out = String::new();
    for row in &report.rows {
        let map: Map<String, Value> = report
            .columns
            .iter()
            .cloned()
            .zip(row.iter().map(Cell::to_json))
            .collect();
        out.push_str(&Value::Object(map).to_string());
        out.push('\n');
    }
    out
}

fn emit_csv(report: &Report) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&report.columns).expect("in-memory write");
    for row in &report.rows {
        w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn emit_table(report: &Report) -> String {
    let rendered: Vec<Vec<String>> = report.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
    let mut widths: Vec<usize> = report.columns.iter().map(|c| c.chars().count()).collect();
    for row in &rendered {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    // numeric columns are right-aligned, judged by the first row
    let right: Vec<bool> = (0..widths.len())
        .map(|i| report.rows.first().is_some_and(|r| r[i].is_numeric()))
        .collect();
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = widths[i] - cell.chars().count();
            if right[i] {
                let _ = write!(s, "{}{cell}", " ".repeat(pad));
            } else {
                let _ = write!(s, "{cell}{}", " ".repeat(pad));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&report.columns);
    for row in &rendered {
        line(row);
    }
    out
}
