//! Rectangular result tables and their CSV form.

use std::fmt::Write as _;

use crate::config::{Config, BANNER};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Flag(bool),
    /// Value not available, e.g. for an unstable parameter set.
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(x) => Some(x),
            Cell::Int(n) => Some(n as f64),
            Cell::Flag(b) => Some(b as u8 as f64),
            Cell::Empty => None,
        }
    }

    fn render(&self, out: &mut String) {
        match *self {
            Cell::Num(x) => out.push_str(&format_g17(x)),
            Cell::Int(n) => write!(out, "{n}").unwrap(),
            Cell::Flag(b) => out.push(if b { '1' } else { '0' }),
            Cell::Empty => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub command: String,
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl ScanTable {
    pub fn new(config: &Config, columns: &[&'static str]) -> Self {
        Self {
            command: config.command.name().to_string(),
            metadata: config.pairs().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn column(&self, name: &str) -> Vec<Option<f64>> {
        let i = self.column_index(name).unwrap_or_else(|| panic!("no column `{name}`"));
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    /// Rows flagged in the `unstable` column.
    pub fn unstable_rows(&self) -> usize {
        match self.column_index("unstable") {
            Some(i) => self.rows.iter().filter(|r| r[i] == Cell::Flag(true)).count(),
            None => 0,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{BANNER} {}", self.command).unwrap();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {v}").unwrap();
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

/// Formats like C's `printf("%.17g", x)`, which round-trips every `f64`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        trim_fraction(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
