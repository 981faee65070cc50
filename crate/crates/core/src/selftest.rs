//! Invariant suite behind the `selftest` subcommand. Every check reduces
//! to a worst-case figure compared against a fixed limit.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{self, temperature_grid, DEFAULT_LEVELS};
use crate::error::Result;
use crate::grand_canonical::{self, EnsembleSpec, Statistics};
use crate::specfun::{airy_zero, lambert_w, AiryZeroKind};
use crate::spectrum::{Spectrum, WallKind, WallSpec};

pub const FD_TOL: f64 = 1e-5;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const HIGH_T_TOL: f64 = 1e-2;
pub const LAMBERT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub worst: f64,
    pub limit: f64,
    pub cases: usize,
    pub passed: bool,
    pub error: Option<String>,
}

impl Check {
    fn from_outcome(name: &'static str, limit: f64, outcome: Result<(f64, usize)>) -> Self {
        match outcome {
            Ok((worst, cases)) => Check {
                name,
                worst,
                limit,
                cases,
                passed: worst <= limit,
                error: None,
            },
            Err(e) => Check {
                name,
                worst: f64::NAN,
                limit,
                cases: 0,
                passed: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(
                s,
                "{status} {:<28} worst {:.3e} limit {:.1e} over {} cases",
                c.name, c.worst, c.limit, c.cases
            );
            if let Some(e) = &c.error {
                let _ = write!(s, " ({e})");
            }
            s.push('\n');
        }
        s
    }
}

fn spectrum(kind: WallKind, field: f64) -> Result<Spectrum> {
    Spectrum::new(WallSpec::new(kind, field)?, DEFAULT_LEVELS)
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<(f64, usize)> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for v in values {
        worst = worst.max(v?);
        n += 1;
    }
    Ok((worst, n))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Fluctuation form of `c` against a numerical `−β² ∂⟨E⟩/∂β`, canonical
/// and grand canonical. Points sit where `c` is not exponentially small,
/// so the stencil error is measured relative to `c` itself.
fn fluctuation_dissipation() -> Result<(f64, usize)> {
    let mut cases = Vec::new();
    for kind in WallKind::ALL {
        for field in [1e-4, 1e-2, 1.0] {
            for beta in [0.05, 0.5, 2.0] {
                cases.push((kind, field, beta, None));
            }
        }
    }
    for stats in [Statistics::FermiDirac, Statistics::BoseEinstein] {
        for n in [1, 5] {
            for beta in [0.2, 2.0, 8.0] {
                cases.push((WallKind::RobinAttractive, 1e-4, beta, Some(EnsembleSpec { statistics: stats, n_particles: n })));
            }
        }
    }
    let errs: Vec<Result<f64>> = cases
        .par_iter()
        .map(|&(kind, field, beta, ens)| {
            let sp = spectrum(kind, field)?;
            let (c, c_fd) = match ens {
                None => (canonical::heat_capacity(&sp, beta)?, canonical::heat_capacity_fd(&sp, beta)?),
                Some(e) => (
                    grand_canonical::gc_point(&sp, beta, e)?.heat_capacity_per_particle,
                    grand_canonical::heat_capacity_fd(&sp, beta, e)?,
                ),
            };
            Ok(rel(c_fd, c))
        })
        .collect();
    max_of(errs)
}

fn gc_cases() -> Vec<(f64, f64, EnsembleSpec)> {
    let mut out = Vec::new();
    for stats in [Statistics::FermiDirac, Statistics::BoseEinstein] {
        for n in [1, 2, 10, 1000, 100_000] {
            for field in [1e-3, 1e-5] {
                for t in temperature_grid(0.05, 50.0, 6, true) {
                    out.push((field, 1.0 / t, EnsembleSpec { statistics: stats, n_particles: n }));
                }
            }
        }
    }
    out
}

/// Relative particle-number error after the chemical-potential solve.
fn particle_residual() -> Result<(f64, usize)> {
    let errs: Vec<Result<f64>> = gc_cases()
        .par_iter()
        .map(|&(field, beta, ens)| {
            let sp = spectrum(WallKind::RobinAttractive, field)?;
            Ok(grand_canonical::gc_point(&sp, beta, ens)?.particle_residual.abs())
        })
        .collect();
    max_of(errs)
}

/// Largest `μ − E₀` seen for bosons, which must stay negative.
fn bose_mu_below_ground() -> Result<(f64, usize)> {
    let vals: Vec<Result<f64>> = gc_cases()
        .into_par_iter()
        .filter(|c| c.2.statistics == Statistics::BoseEinstein)
        .map(|(field, beta, ens)| {
            let sp = spectrum(WallKind::RobinAttractive, field)?;
            let p = grand_canonical::gc_point(&sp, beta, ens)?;
            Ok(p.mu - sp.ground())
        })
        .collect();
    let mut worst = f64::NEG_INFINITY;
    let mut n = 0;
    for v in vals {
        worst = worst.max(v?);
        n += 1;
    }
    Ok((worst, n))
}

/// Largest violation of `0 ≤ n₀ ≤ 1` and of `n₀` decreasing with `T`.
fn condensate_monotone() -> Result<(f64, usize)> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (field, n) in [(1e-4, 100), (1e-4, 100_000), (1e-6, 1000)] {
        let sp = spectrum(WallKind::RobinAttractive, field)?;
        let temps = temperature_grid(0.02, 20.0, 40, true);
        let n0: Vec<Result<f64>> = temps
            .par_iter()
            .map(|t| grand_canonical::ground_occupation(&sp, 1.0 / t, n))
            .collect();
        let n0 = n0.into_iter().collect::<Result<Vec<f64>>>()?;
        for (i, &x) in n0.iter().enumerate() {
            worst = worst.max(-x).max(x - 1.0);
            if i > 0 {
                worst = worst.max(x - n0[i - 1]);
            }
        }
        cases += n0.len();
    }
    Ok((worst, cases))
}

/// Heat capacity per particle in the three ensembles at `β ℰ^{2/3} = 1e-4`.
fn high_temperature_agreement() -> Result<(f64, usize)> {
    let field: f64 = 1e-4;
    let beta = 1e-4 / field.powf(2.0 / 3.0);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for kind in WallKind::ALL {
        let sp = spectrum(kind, field)?;
        let c = canonical::heat_capacity(&sp, beta)?;
        for stats in [Statistics::FermiDirac, Statistics::BoseEinstein] {
            for n in [1, 10] {
                let p = grand_canonical::gc_point(&sp, beta, EnsembleSpec { statistics: stats, n_particles: n })?;
                worst = worst.max(rel(p.heat_capacity_per_particle, c));
                cases += 1;
            }
        }
    }
    Ok((worst, cases))
}

/// Zeros of Ai and Ai′ strictly alternate: `a'_1 > a_1 > a'_2 > a_2 > …`.
fn airy_interlacing() -> Result<(f64, usize)> {
    const N: usize = 2000;
    let mut violations = 0usize;
    let mut prev = 0.0;
    for n in 1..=N {
        let d = airy_zero(n, AiryZeroKind::DerivativeZero)?;
        let a = airy_zero(n, AiryZeroKind::FunctionZero)?;
        if !(d < prev && a < d) {
            violations += 1;
        }
        prev = a;
    }
    Ok((violations as f64, N))
}

/// Relative round-trip residual `|W e^W − x| / x`.
fn lambert_round_trip() -> Result<(f64, usize)> {
    let xs = (0..=624).map(|k| 10f64.powf(-12.0 + 0.5 * k as f64));
    max_of(xs.map(|x| {
        let w = lambert_w(x)?;
        // at large x, compare logarithms to avoid overflow of e^W
        Ok(if x > 1e100 {
            (w + w.ln() - x.ln()).abs() / x.ln()
        } else {
            rel(w * w.exp(), x)
        })
    }))
}

pub fn run_selftest() -> SelftestReport {
    type CheckFn = fn() -> Result<(f64, usize)>;
    let checks: [(&'static str, f64, CheckFn); 7] = [
        ("fluctuation-dissipation", FD_TOL, fluctuation_dissipation),
        ("particle-number residual", RESIDUAL_TOL, particle_residual),
        ("bose mu below ground", -f64::MIN_POSITIVE, bose_mu_below_ground),
        ("n0 bounded, decreasing in T", 1e-12, condensate_monotone),
        ("high-T ensemble agreement", HIGH_T_TOL, high_temperature_agreement),
        ("airy zero interlacing", 0.0, airy_interlacing),
        ("lambert round trip", LAMBERT_TOL, lambert_round_trip),
    ];
    let checks = checks
        .par_iter()
        .map(|&(name, limit, f)| Check::from_outcome(name, limit, f()))
        .collect();
    SelftestReport { checks }
}
