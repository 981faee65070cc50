//! Canonical ensemble: exact level sums for `Z`, `⟨E⟩` and `c_V`, closed
//! forms for the field-free walls, the Dirichlet/Neumann universal curves and
//! the weak-field resonance of the attractive wall.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::golden_section_max;
use crate::specfun::lambert_w;
use crate::spectrum::{Spectrum, WallKind, WallSpec};
use crate::summation::{level_sum, LevelSource, SumControl};

/// Levels stored by spectra built inside this module. The sums never need
/// more than a few thousand explicit levels before the smooth continuation
/// takes over.
pub const DEFAULT_LEVELS: usize = 8192;

/// Weak-field formulas are only trusted up to this field.
pub const WEAK_FIELD_MAX: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub beta: f64,
    pub mean_energy: f64,
    pub heat_capacity: f64,
}

impl ThermoPoint {
    /// `N` independent copies: both extensive quantities scale by `N`.
    pub fn scaled(self, n: f64) -> Self {
        Self {
            beta: self.beta,
            mean_energy: n * self.mean_energy,
            heat_capacity: n * self.heat_capacity,
        }
    }
}

/// `Z = e^{−β shift} · shifted`, kept apart so that large `β` never overflows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionFunction {
    pub shifted: f64,
    pub shift: f64,
    pub beta: f64,
}

impl PartitionFunction {
    pub fn ln_z(&self) -> f64 {
        self.shifted.ln() - self.beta * self.shift
    }

    /// The unshifted value; may overflow to infinity.
    pub fn value(&self) -> f64 {
        self.shifted * (-self.beta * self.shift).exp()
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "canonical",
            value: beta,
            reason: "beta must be positive and finite",
        })
    }
}

fn boltzmann_moments<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ctl: &SumControl,
) -> Result<[f64; 3]> {
    check_beta(beta)?;
    level_sum(source, beta, 0, 0.0, ctl, |e| {
        let w = (-beta * e).exp();
        [w, e * w, e * e * w]
    })
}

pub fn partition_function<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
) -> Result<PartitionFunction> {
    let [s0, ..] = boltzmann_moments(source, beta, &SumControl::default())?;
    Ok(PartitionFunction {
        shifted: s0,
        shift: source.ground(),
        beta,
    })
}

pub fn canonical_point<S: LevelSource + ?Sized>(source: &S, beta: f64) -> Result<ThermoPoint> {
    canonical_point_with(source, beta, &SumControl::default())
}

pub fn canonical_point_with<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ctl: &SumControl,
) -> Result<ThermoPoint> {
    let [s0, s1, s2] = boltzmann_moments(source, beta, ctl)?;
    let m1 = s1 / s0;
    let var = (s2 / s0 - m1 * m1).max(0.0);
    Ok(ThermoPoint {
        beta,
        mean_energy: source.ground() + m1,
        heat_capacity: beta * beta * var,
    })
}

pub fn mean_energy<S: LevelSource + ?Sized>(source: &S, beta: f64) -> Result<f64> {
    Ok(canonical_point(source, beta)?.mean_energy)
}

pub fn heat_capacity<S: LevelSource + ?Sized>(source: &S, beta: f64) -> Result<f64> {
    Ok(canonical_point(source, beta)?.heat_capacity)
}

/// `−β² ∂⟨E⟩/∂β` from a five-point stencil, for cross-checking.
pub fn heat_capacity_fd<S: LevelSource + ?Sized>(source: &S, beta: f64) -> Result<f64> {
    let h = 2e-3 * beta;
    let e = |b: f64| mean_energy(source, b);
    let d = (e(beta - 2.0 * h)? - 8.0 * e(beta - h)? + 8.0 * e(beta + h)? - e(beta + 2.0 * h)?)
        / (12.0 * h);
    Ok(-beta * beta * d)
}

/// Inverse temperature at which `⟨E⟩` crosses zero, bisected in `ln β`
/// on `[lo, hi]`.
pub fn zero_energy_beta<S: LevelSource + ?Sized>(source: &S, lo: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let fa = mean_energy(source, lo)?;
    let fb = mean_energy(source, hi)?;
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            what: "zero of the mean energy",
            lo,
            hi,
        });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a < 1e-13 {
            return Ok(m.exp());
        }
        // ⟨E⟩ decreases with β
        if mean_energy(source, m.exp())? > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    Err(Error::NoConvergence {
        what: "zero of the mean energy",
        iterations: 200,
        lo: a.exp(),
        hi: b.exp(),
    })
}

/// Field-free attractive wall: one bound state at `E = −1` over the
/// momentum continuum, `Z = e^β + √(2π/β)`.
pub fn zero_field_attractive(beta: f64) -> Result<ThermoPoint> {
    check_beta(beta)?;
    // ratios to e^β: r = √(2π/β) e^{−β}
    let r = (2.0 * PI / beta).sqrt() * (-beta).exp();
    let a = r / (2.0 * beta);
    let b = 3.0 * r / (4.0 * beta * beta);
    let z = 1.0 + r;
    // Z''/Z − (Z'/Z)² expanded so that the leading ones cancel exactly
    let var = (b + r + b * r + 2.0 * a - a * a) / (z * z);
    Ok(ThermoPoint {
        beta,
        mean_energy: -(1.0 - a) / z,
        heat_capacity: beta * beta * var,
    })
}

/// Leading terms of [`zero_field_attractive`] for `β → ∞`, as powers of the
/// continuum-to-bound weight ratio `r = √(2π/β) e^{−β}`.
pub fn zero_field_attractive_low_t(beta: f64) -> Result<ThermoPoint> {
    check_beta(beta)?;
    let r = (2.0 * PI / beta).sqrt() * (-beta).exp();
    let e = -1.0 + r * (1.0 + 0.5 / beta) - r * r * (1.0 + 0.5 / beta);
    let c = r * (0.75 + beta + beta * beta) - r * r * (1.0 + 2.0 * beta + 2.0 * beta * beta);
    Ok(ThermoPoint {
        beta,
        mean_energy: e,
        heat_capacity: c,
    })
}

/// Leading terms of [`zero_field_attractive`] for `β → 0`.
pub fn zero_field_attractive_high_t(beta: f64) -> Result<ThermoPoint> {
    check_beta(beta)?;
    let k = 1.5 + 0.25 / PI;
    let e = 0.5 / beta - 0.25 * (2.0 / (PI * beta)).sqrt() + 0.25 / PI
        - 0.5 * (2.0 * beta / PI).sqrt() * k;
    let s = (2.0 / PI).sqrt();
    let c = 0.5 - s * beta.sqrt() / 8.0 + 0.25 * s * k * beta.powf(1.5);
    Ok(ThermoPoint {
        beta,
        mean_energy: e,
        heat_capacity: c,
    })
}

/// Minimum of the truncated high-temperature series
/// [`zero_field_attractive_high_t`], where its derivative vanishes.
pub fn zero_field_attractive_min_estimate() -> ThermoPoint {
    let beta = 1.0 / (9.0 + 1.5 / PI);
    zero_field_attractive_high_t(beta).expect("positive beta")
}

/// Field-free Dirichlet, Neumann and repulsive walls: a free particle.
pub fn zero_field_free(beta: f64) -> Result<ThermoPoint> {
    check_beta(beta)?;
    Ok(ThermoPoint {
        beta,
        mean_energy: 0.5 / beta,
        heat_capacity: 0.5,
    })
}

/// Classical potential contribution at high temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalLimit {
    pub z_pot: f64,
    pub v_mean: f64,
    pub c_pot: f64,
}

impl ClassicalLimit {
    /// Potential plus the kinetic `1/2`.
    pub fn total_heat_capacity(&self) -> f64 {
        self.c_pot + 0.5
    }
}

pub fn classical_limit(beta: f64, field: f64) -> Result<ClassicalLimit> {
    check_beta(beta)?;
    WallSpec::new(WallKind::Dirichlet, field)?;
    Ok(ClassicalLimit {
        z_pot: 1.0 / (beta * field),
        v_mean: 1.0 / beta,
        c_pot: 1.0,
    })
}

fn unit_field_spectrum(kind: WallKind) -> Result<&'static Spectrum> {
    static D: OnceLock<Spectrum> = OnceLock::new();
    static N: OnceLock<Spectrum> = OnceLock::new();
    let cell = match kind {
        WallKind::Dirichlet => &D,
        WallKind::Neumann => &N,
        _ => {
            return Err(Error::Spec(format!(
                "universal curves exist for dirichlet and neumann walls, not {kind}"
            )))
        }
    };
    if let Some(sp) = cell.get() {
        return Ok(sp);
    }
    let sp = Spectrum::new(WallSpec::new(kind, 1.0)?, DEFAULT_LEVELS)?;
    Ok(cell.get_or_init(|| sp))
}

/// `(⟨E⟩/ℰ^{2/3}, c)` of a Dirichlet or Neumann wall as a function of
/// `y = βℰ^{2/3}` alone.
pub fn universal_dn_curve(y: f64, kind: WallKind) -> Result<(f64, f64)> {
    let sp = unit_field_spectrum(kind)?;
    let p = canonical_point(sp, y)?;
    Ok((p.mean_energy, p.heat_capacity))
}

/// Three-level expansion of [`universal_dn_curve`] for `y ≫ 1`.
pub fn universal_dn_large_y(y: f64, kind: WallKind) -> Result<(f64, f64)> {
    let sp = unit_field_spectrum(kind)?;
    let b1 = sp.level(0);
    let d2 = sp.level(1) - b1;
    let d3 = sp.level(2) - b1;
    let x2 = (-d2 * y).exp();
    let x3 = (-d3 * y).exp();
    let e = b1 + d2 * x2 + d3 * x3 + d2 * d2 * x2 * x2;
    let c = y * y * (d2 * d2 * x2 + d3 * d3 * x3 + 2.0 * d2.powi(3) * x2 * x2);
    Ok((e, c))
}

/// Heat capacity of [`universal_dn_curve`] for `y ≪ 1`.
pub fn universal_dn_small_y(y: f64, kind: WallKind) -> Result<f64> {
    let sign = match kind {
        WallKind::Dirichlet => -1.0,
        WallKind::Neumann => 1.0,
        _ => return Err(Error::Spec(format!("no universal curve for {kind}"))),
    };
    Ok(1.5 * (1.0 + sign * PI.sqrt() / 4.0 * y.powf(1.5)))
}

fn check_weak_field(field: f64) -> Result<()> {
    if field > 0.0 && field <= WEAK_FIELD_MAX {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "weak-field asymptotics",
            value: field,
            reason: "field must lie in (0, 1e-2]",
        })
    }
}

/// Lambert-W estimates of the attractive-wall resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonancePredictors {
    /// Inverse temperature at which `⟨E⟩` changes sign.
    pub beta_zero_energy: f64,
    pub beta_max: f64,
    pub c_max: f64,
}

pub fn resonance_predictors(field: f64) -> Result<ResonancePredictors> {
    check_weak_field(field)?;
    // β^{5/2} e^β = 3/(4√π ℰ)
    let a = 0.4 * (0.75 / PI.sqrt()).powf(0.4) * field.powf(-0.4);
    let beta_zero_energy = 2.5 * lambert_w(a)?;
    // 2√π ℰ β^{3/2} e^β = 1
    let b = 4f64.powf(2.0 / 3.0) / (6.0 * PI.cbrt() * field.powf(2.0 / 3.0));
    let beta_max = 1.5 * lambert_w(b)?;
    Ok(ResonancePredictors {
        beta_zero_energy,
        beta_max,
        c_max: beta_max * beta_max / 4.0,
    })
}

fn check_composite(beta: f64, field: f64) -> Result<()> {
    check_beta(beta)?;
    check_weak_field(field)?;
    if beta * field.powf(2.0 / 3.0) > 0.1 {
        return Err(Error::Domain {
            function: "weak-field composite",
            value: beta,
            reason: "beta * field^(2/3) must not exceed 0.1",
        });
    }
    Ok(())
}

/// Bound state plus a smoothed continuum: `(⟨E⟩, c)` of the attractive wall
/// at weak field.
pub fn weak_field_composite(beta: f64, field: f64) -> Result<(f64, f64)> {
    check_composite(beta, field)?;
    let sp = PI.sqrt();
    let eb = beta.exp();
    let e = (-eb + 0.75 / sp / (field * beta.powf(2.5))) / (eb + 0.5 / sp / (field * beta.powf(1.5)));
    let g = sp * field * beta.powf(1.5) * eb;
    let c = 0.5 * (3.0 + g * (4.0 * beta * beta + 12.0 * beta + 15.0)) / (1.0 + 2.0 * g).powi(2);
    Ok((e, c))
}

/// High-temperature expansion of the attractive-wall heat capacity.
pub fn high_t_series(beta: f64, field: f64) -> Result<f64> {
    check_beta(beta)?;
    let s = PI.sqrt() * field;
    Ok(1.5 + 1.5 * s * beta.powf(1.5) + 7.5 * s * beta.powf(2.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub beta_inv: f64,
    pub beta: f64,
    pub c: f64,
}

/// Interior extrema of `c` on a temperature scan. Absent entries mean the
/// scan found no interior extremum of that kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub max: Option<Extremum>,
    pub min: Option<Extremum>,
}

impl ExtremumReport {
    pub fn beta_inv_at_max(&self) -> Option<f64> {
        self.max.map(|m| m.beta_inv)
    }

    pub fn c_max(&self) -> Option<f64> {
        self.max.map(|m| m.c)
    }

    pub fn beta_inv_at_min(&self) -> Option<f64> {
        self.min.map(|m| m.beta_inv)
    }

    pub fn c_min(&self) -> Option<f64> {
        self.min.map(|m| m.c)
    }
}

/// Default golden-section tolerance in `ln β⁻¹`.
pub const EXTREMUM_TOL: f64 = 1e-7;

/// Evaluates `c(β)` on a grid of temperatures `β⁻¹` in parallel, then
/// refines the extrema with [`locate_extrema`].
pub fn find_extrema<F>(beta_inv_grid: &[f64], c_of_beta: F) -> Result<ExtremumReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values = beta_inv_grid
        .par_iter()
        .map(|&t| c_of_beta(1.0 / t))
        .collect::<Result<Vec<_>>>()?;
    locate_extrema(beta_inv_grid, &values, c_of_beta)
}

/// Picks the highest interior local maximum and the lowest interior local
/// minimum of precomputed scan values and refines each between its grid
/// neighbours by golden-section search in `ln β⁻¹`.
pub fn locate_extrema<F>(beta_inv_grid: &[f64], values: &[f64], c_of_beta: F) -> Result<ExtremumReport>
where
    F: Fn(f64) -> Result<f64>,
{
    locate_extrema_with(beta_inv_grid, values, c_of_beta, EXTREMUM_TOL)
}

/// [`locate_extrema`] with an explicit refinement tolerance in `ln β⁻¹`.
pub fn locate_extrema_with<F>(
    beta_inv_grid: &[f64],
    values: &[f64],
    c_of_beta: F,
    tol: f64,
) -> Result<ExtremumReport>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::Spec(format!("extremum tolerance must be positive, got {tol}")));
    }
    if beta_inv_grid.len() != values.len() {
        return Err(Error::Spec("grid and values differ in length".into()));
    }
    if beta_inv_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Spec("temperature grid must increase strictly".into()));
    }
    let mut best_max: Option<usize> = None;
    let mut best_min: Option<usize> = None;
    for i in 1..values.len().saturating_sub(1) {
        let (l, v, r) = (values[i - 1], values[i], values[i + 1]);
        if v > l && v >= r && best_max.is_none_or(|j| v > values[j]) {
            best_max = Some(i);
        }
        if v < l && v <= r && best_min.is_none_or(|j| v < values[j]) {
            best_min = Some(i);
        }
    }
    let refine = |i: usize, sign: f64| -> Result<Extremum> {
        let a = beta_inv_grid[i - 1].ln();
        let b = beta_inv_grid[i + 1].ln();
        let (lt, v) = golden_section_max(|lt: f64| Ok(sign * c_of_beta((-lt).exp())?), a, b, tol)?;
        let (t, c) = if sign * v >= sign * values[i] {
            (lt.exp(), sign * v)
        } else {
            (beta_inv_grid[i], values[i])
        };
        Ok(Extremum {
            beta_inv: t,
            beta: 1.0 / t,
            c,
        })
    };
    Ok(ExtremumReport {
        max: best_max.map(|i| refine(i, 1.0)).transpose()?,
        min: best_min.map(|i| refine(i, -1.0)).transpose()?,
    })
}

/// `points` temperatures from `min` to `max`, evenly spaced in `T` or in `ln T`.
pub fn temperature_grid(min: f64, max: f64, points: usize, log: bool) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            let s = i as f64 / last;
            if i == 0 {
                min
            } else if i + 1 == points {
                max
            } else if log {
                (min.ln() + s * (max.ln() - min.ln())).exp()
            } else {
                min + s * (max - min)
            }
        })
        .collect()
}
