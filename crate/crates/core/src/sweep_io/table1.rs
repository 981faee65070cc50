use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grand_canonical::{EnsembleSpec, Statistics};
use crate::spectrum::{WallKind, WallSpec};

use super::config::{Ensemble, SweepSpec};
use super::output::format_number;
use super::run::run_sweep;

const DATA: &str = include_str!("../../data/table1.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub fields: Vec<f64>,
    pub column: Vec<ReferenceColumn>,
    pub zero_field: ZeroFieldReference,
    pub neumann: NeumannReference,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReferenceColumn {
    pub ensemble: String,
    #[serde(default)]
    pub particles: Option<u64>,
    pub tolerance: f64,
    pub cells: Vec<[f64; 2]>,
}

impl ReferenceColumn {
    pub fn ensemble(&self) -> Result<Ensemble> {
        if self.ensemble == "canonical" {
            return Ok(Ensemble::Canonical);
        }
        let statistics: Statistics = self.ensemble.parse()?;
        let n = self
            .particles
            .ok_or_else(|| Error::Spec(format!("column {} needs a particle count", self.ensemble)))?;
        Ok(Ensemble::Grand(EnsembleSpec::new(statistics, n)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ZeroFieldReference {
    pub max: [f64; 2],
    pub min: [f64; 2],
    pub c_tolerance: f64,
    pub location_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct NeumannReference {
    pub y: f64,
    pub c: f64,
    pub c_tolerance: f64,
    pub y_tolerance: f64,
}

pub fn reference_data() -> Result<ReferenceData> {
    toml::from_str(DATA).map_err(|e| Error::Spec(format!("embedded reference data: {e}")))
}

/// One reference cell: a field and an ensemble column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpec {
    pub field: f64,
    pub ensemble: Ensemble,
    pub beta_inv: f64,
    pub c_max: f64,
    pub tolerance: f64,
}

impl ReferenceData {
    pub fn cells(&self) -> Result<Vec<CellSpec>> {
        let mut out = Vec::new();
        for col in &self.column {
            if col.cells.len() != self.fields.len() {
                return Err(Error::Spec(format!(
                    "column {} has {} cells for {} fields",
                    col.ensemble,
                    col.cells.len(),
                    self.fields.len()
                )));
            }
            let ensemble = col.ensemble()?;
            for (&field, &[beta_inv, c_max]) in self.fields.iter().zip(&col.cells) {
                out.push(CellSpec {
                    field,
                    ensemble,
                    beta_inv,
                    c_max,
                    tolerance: col.tolerance,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellOutcome {
    pub field: f64,
    pub ensemble: String,
    pub expected: [f64; 2],
    pub achieved: Option<[f64; 2]>,
    pub rel_error: Option<[f64; 2]>,
    pub tolerance: f64,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Report {
    pub cells: Vec<CellOutcome>,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed).count()
    }

    /// Fixed-width text table, identical across runs.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<8} {:<16} {:>10} {:>10} {:>10} {:>10} {:>9} {:>9} {:>6}  status",
            "field", "ensemble", "ref T", "T", "ref c", "c", "err T", "err c", "tol"
        );
        for c in &self.cells {
            let (t, cv, et, ec) = match (c.achieved, c.rel_error) {
                (Some(a), Some(e)) => (
                    format!("{:.4}", a[0]),
                    format!("{:.3}", a[1]),
                    format!("{:.2e}", e[0]),
                    format!("{:.2e}", e[1]),
                ),
                _ => ("-".into(), "-".into(), "-".into(), "-".into()),
            };
            let status = match (&c.error, c.passed) {
                (Some(e), _) => format!("ERROR {e}"),
                (None, true) => "ok".into(),
                (None, false) => "FAIL".into(),
            };
            let _ = writeln!(
                s,
                "{:<8} {:<16} {:>10.4} {:>10} {:>10.3} {:>10} {:>9} {:>9} {:>6}  {}",
                format!("{:.0e}", c.field),
                c.ensemble,
                c.expected[0],
                t,
                c.expected[1],
                cv,
                et,
                ec,
                format_number(c.tolerance),
                status
            );
        }
        let _ = writeln!(
            s,
            "{} cells, {} failed: {}",
            self.cells.len(),
            self.failures(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        s
    }
}

/// Locates the heat-capacity peak for one cell on the default grid.
pub fn run_cell(cell: &CellSpec) -> CellOutcome {
    let expected = [cell.beta_inv, cell.c_max];
    let mut out = CellOutcome {
        field: cell.field,
        ensemble: cell.ensemble.label(),
        expected,
        achieved: None,
        rel_error: None,
        tolerance: cell.tolerance,
        passed: false,
        error: None,
    };
    let result = WallSpec::new(WallKind::RobinAttractive, cell.field)
        .and_then(|wall| run_sweep(&SweepSpec::new(wall, cell.ensemble)));
    match result {
        Err(e) => out.error = Some(e.to_string()),
        Ok(r) if !r.errors.is_empty() => out.error = Some(r.errors[0].message.clone()),
        Ok(r) => match r.extrema.max {
            None => out.error = Some("no interior maximum".into()),
            Some(m) => {
                let achieved = [m.beta_inv, m.c];
                let rel = [0, 1].map(|k| (achieved[k] - expected[k]).abs() / expected[k]);
                out.passed = rel.iter().all(|&e| e <= cell.tolerance);
                out.achieved = Some(achieved);
                out.rel_error = Some(rel);
            }
        },
    }
    out
}

/// Runs every cell accepted by `filter`, in table order.
pub fn table1_harness_with(filter: impl Fn(&CellSpec) -> bool + Sync) -> Result<Table1Report> {
    let cells: Vec<CellSpec> = reference_data()?.cells()?.into_iter().filter(|c| filter(c)).collect();
    let cells = cells.par_iter().map(run_cell).collect();
    Ok(Table1Report { cells })
}

pub fn table1_harness() -> Result<Table1Report> {
    table1_harness_with(|_| true)
}
