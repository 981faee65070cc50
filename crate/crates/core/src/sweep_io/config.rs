use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::canonical::{temperature_grid, EXTREMUM_TOL};
use crate::error::{Error, Result};
use crate::grand_canonical::{EnsembleSpec, Statistics};
use crate::spectrum::{WallSpec, N_EXACT_DEFAULT, N_EXACT_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Ensemble {
    Canonical,
    Grand(EnsembleSpec),
}

impl Ensemble {
    pub fn grand(&self) -> Option<EnsembleSpec> {
        match self {
            Ensemble::Canonical => None,
            Ensemble::Grand(e) => Some(*e),
        }
    }

    pub fn is_bose(&self) -> bool {
        matches!(self.grand(), Some(e) if e.statistics == Statistics::BoseEinstein)
    }

    pub fn label(&self) -> String {
        match self {
            Ensemble::Canonical => "canonical".into(),
            Ensemble::Grand(e) => format!("{} N={}", e.statistics, e.n_particles),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    LinearInT,
    LogInT,
}

/// Temperatures `β⁻¹` from `min` to `max`; with `normalize_by_tcr` they
/// are read as `T/T_cr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl BetaGrid {
    pub fn temperatures(&self) -> Vec<f64> {
        temperature_grid(self.min, self.max, self.points, self.spacing == Spacing::LogInT)
    }
}

impl Default for BetaGrid {
    fn default() -> Self {
        Self {
            min: 0.02,
            max: 100.0,
            points: 400,
            spacing: Spacing::LogInT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    MeanEnergy,
    HeatCapacity,
    Mu,
    N0,
}

impl Output {
    pub const ALL: [Output; 4] = [Output::MeanEnergy, Output::HeatCapacity, Output::Mu, Output::N0];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub wall: WallSpec,
    pub ensemble: Ensemble,
    pub beta_grid: BetaGrid,
    pub normalize_by_tcr: bool,
    pub outputs: BTreeSet<Output>,
    /// Minimum number of root-solved levels.
    pub root_solved_levels: usize,
    /// Golden-section tolerance in `ln β⁻¹` for the extrema.
    pub extremum_tol: f64,
}

impl SweepSpec {
    pub fn new(wall: WallSpec, ensemble: Ensemble) -> Self {
        Self {
            wall,
            ensemble,
            beta_grid: BetaGrid::default(),
            normalize_by_tcr: false,
            outputs: Output::ALL.into_iter().collect(),
            root_solved_levels: N_EXACT_DEFAULT,
            extremum_tol: EXTREMUM_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        WallSpec::new(self.wall.kind, self.wall.field)?;
        if let Some(e) = self.ensemble.grand() {
            EnsembleSpec::new(e.statistics, e.n_particles)?;
        }
        let g = &self.beta_grid;
        if !(g.min > 0.0 && g.min < g.max && g.max.is_finite()) {
            return Err(Error::Spec(format!(
                "temperature grid needs 0 < min < max, got [{}, {}]",
                g.min, g.max
            )));
        }
        if g.points < 2 {
            return Err(Error::Spec("temperature grid needs at least 2 points".into()));
        }
        if self.normalize_by_tcr && !self.ensemble.is_bose() {
            return Err(Error::Spec("normalize_by_tcr applies to bosons only".into()));
        }
        if self.root_solved_levels == 0 || self.root_solved_levels > N_EXACT_MAX {
            return Err(Error::Spec(format!(
                "root-solved levels must lie in 1..={N_EXACT_MAX}"
            )));
        }
        if !(self.extremum_tol > 0.0) {
            return Err(Error::Spec("tolerance must be positive".into()));
        }
        Ok(())
    }
}
