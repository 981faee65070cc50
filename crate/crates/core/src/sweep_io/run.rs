use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{self, locate_extrema_with, ExtremumReport, DEFAULT_LEVELS};
use crate::error::Result;
use crate::grand_canonical::{self, be_critical, CondensateReport};
use crate::spectrum::Spectrum;

use super::config::{Ensemble, SweepSpec};

/// One temperature of a sweep. Energies and heat capacities are per particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub beta_inv: f64,
    pub beta: f64,
    pub mean_energy: f64,
    pub heat_capacity: f64,
    pub mu: Option<f64>,
    pub n0: Option<f64>,
    pub t_over_tcr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowError {
    pub index: usize,
    pub beta_inv: f64,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
    pub extrema: ExtremumReport,
    pub condensate: Option<CondensateReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<RowError>,
}

impl SweepResult {
    /// 0 when every row succeeded, else the code of the first failure.
    pub fn exit_code(&self) -> i32 {
        self.errors.first().map_or(0, |e| e.exit_code)
    }
}

/// Rows evaluated back to back by one worker, with the chemical potential
/// of each row seeding the next. Fixed so results do not depend on the
/// thread count.
const CHUNK: usize = 16;

/// Evaluates one temperature, optionally seeded with a shifted chemical
/// potential. Returns the row and the shifted chemical potential found.
fn evaluate(spectrum: &Spectrum, ensemble: Ensemble, beta: f64, guess: Option<f64>) -> Result<(Row, Option<f64>)> {
    match ensemble {
        Ensemble::Canonical => {
            let p = canonical::canonical_point(spectrum, beta)?;
            Ok((
                Row {
                    beta_inv: 1.0 / beta,
                    beta,
                    mean_energy: p.mean_energy,
                    heat_capacity: p.heat_capacity,
                    mu: None,
                    n0: None,
                    t_over_tcr: None,
                },
                None,
            ))
        }
        Ensemble::Grand(ens) => {
            let p = grand_canonical::gc_point_from(spectrum, beta, ens, guess)?;
            Ok((
                Row {
                    beta_inv: 1.0 / beta,
                    beta,
                    mean_energy: p.mean_energy_per_particle(ens.n_particles),
                    heat_capacity: p.heat_capacity_per_particle,
                    mu: Some(p.mu),
                    n0: p.n0,
                    t_over_tcr: None,
                },
                Some(p.mu - spectrum.ground()),
            ))
        }
    }
}

/// Heat capacity per particle at `beta`, for extremum refinement.
pub fn heat_capacity_of(spectrum: &Spectrum, ensemble: Ensemble, beta: f64) -> Result<f64> {
    Ok(evaluate(spectrum, ensemble, beta, None)?.0.heat_capacity)
}

pub fn build_spectrum(spec: &SweepSpec) -> Result<Spectrum> {
    Spectrum::with_root_solved(spec.wall, DEFAULT_LEVELS, spec.root_solved_levels)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let spectrum = build_spectrum(spec)?;
    let condensate = match spec.ensemble.grand() {
        Some(e) if spec.ensemble.is_bose() => Some(be_critical(&spectrum, e.n_particles)?),
        _ => None,
    };
    let scale = match (spec.normalize_by_tcr, condensate) {
        (true, Some(c)) => c.t_cr,
        _ => 1.0,
    };
    let temps: Vec<f64> = spec.beta_grid.temperatures().iter().map(|t| t * scale).collect();

    let outcomes: Vec<Result<Row>> = temps
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut guess = None;
            chunk
                .iter()
                .map(|&t| {
                    let (mut row, nu) = evaluate(&spectrum, spec.ensemble, 1.0 / t, guess)?;
                    guess = nu;
                    if let Some(c) = condensate {
                        row.t_over_tcr = Some(t / c.t_cr);
                    }
                    Ok(row)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut errors = Vec::new();
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(row) => rows.push(row),
            Err(e) => errors.push(RowError {
                index,
                beta_inv: temps[index],
                exit_code: e.exit_code(),
                message: e.to_string(),
            }),
        }
    }

    let extrema = if errors.is_empty() {
        let t: Vec<f64> = rows.iter().map(|r| r.beta_inv).collect();
        let c: Vec<f64> = rows.iter().map(|r| r.heat_capacity).collect();
        locate_extrema_with(&t, &c, |b| heat_capacity_of(&spectrum, spec.ensemble, b), spec.extremum_tol)?
    } else {
        ExtremumReport::default()
    };
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        extrema,
        condensate,
        errors,
    })
}
