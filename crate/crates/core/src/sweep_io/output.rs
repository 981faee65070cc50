use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::config::Output;
use super::run::{Row, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Spec(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

/// Shortest decimal that parses back to the same double.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite floats serialize")
    } else {
        x.to_string()
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Spec(format!("output: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Mu,
    N0,
    TOverTcr,
}

fn optional_columns(result: &SweepResult) -> Vec<Column> {
    let spec = &result.spec;
    let mut cols = Vec::new();
    if spec.ensemble.grand().is_some() && spec.outputs.contains(&Output::Mu) {
        cols.push(Column::Mu);
    }
    if spec.ensemble.is_bose() && spec.outputs.contains(&Output::N0) {
        cols.push(Column::N0);
    }
    if result.condensate.is_some() {
        cols.push(Column::TOverTcr);
    }
    cols
}

pub fn to_json(result: &SweepResult) -> Result<String> {
    serde_json::to_string_pretty(result).map_err(io_error)
}

pub fn from_json(text: &str) -> Result<SweepResult> {
    serde_json::from_str(text).map_err(io_error)
}

pub fn to_csv(result: &SweepResult) -> Result<String> {
    let mut out = Vec::new();
    writeln!(out, "# robin-thermo sweep").map_err(io_error)?;
    writeln!(out, "# spec: {}", json_line(&result.spec)).map_err(io_error)?;
    writeln!(out, "# extrema: {}", json_line(&result.extrema)).map_err(io_error)?;
    if let Some(c) = &result.condensate {
        writeln!(out, "# condensate: {}", json_line(c)).map_err(io_error)?;
    }
    for e in &result.errors {
        writeln!(out, "# error: {}", json_line(e)).map_err(io_error)?;
    }

    let cols = optional_columns(result);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["beta_inv", "beta", "mean_energy", "heat_capacity"];
    header.extend(cols.iter().map(|c| match c {
        Column::Mu => "mu",
        Column::N0 => "n0",
        Column::TOverTcr => "t_over_tcr",
    }));
    w.write_record(&header).map_err(io_error)?;
    let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
    for r in &result.rows {
        let mut rec = vec![
            format_number(r.beta_inv),
            format_number(r.beta),
            format_number(r.mean_energy),
            format_number(r.heat_capacity),
        ];
        rec.extend(cols.iter().map(|c| match c {
            Column::Mu => opt(r.mu),
            Column::N0 => opt(r.n0),
            Column::TOverTcr => opt(r.t_over_tcr),
        }));
        w.write_record(&rec).map_err(io_error)?;
    }
    let bytes = w.into_inner().map_err(io_error)?;
    String::from_utf8(bytes).map_err(io_error)
}

/// Reads the data rows of a sweep CSV back; missing columns become `None`.
pub fn rows_from_csv(text: &str) -> Result<Vec<Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(io_error)?.clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let required = |name: &str| find(name).ok_or_else(|| io_error(format!("missing column {name}")));
    let (bi, b, e, c) = (
        required("beta_inv")?,
        required("beta")?,
        required("mean_energy")?,
        required("heat_capacity")?,
    );
    let (mu, n0, t) = (find("mu"), find("n0"), find("t_over_tcr"));
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(io_error)?;
        let num = |i: usize| -> Result<f64> { rec[i].parse().map_err(io_error) };
        let opt = |i: Option<usize>| -> Result<Option<f64>> {
            match i {
                Some(i) if !rec[i].is_empty() => num(i).map(Some),
                _ => Ok(None),
            }
        };
        rows.push(Row {
            beta_inv: num(bi)?,
            beta: num(b)?,
            mean_energy: num(e)?,
            heat_capacity: num(c)?,
            mu: opt(mu)?,
            n0: opt(n0)?,
            t_over_tcr: opt(t)?,
        });
    }
    Ok(rows)
}

pub fn render(result: &SweepResult, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(result),
        Format::Json => to_json(result),
    }
}
