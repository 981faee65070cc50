//! Fermi-Dirac and Bose-Einstein gases of `N` independent particles on the
//! same spectrum: chemical potential, mean energy, heat capacity with the
//! implicit `∂μ/∂β`, condensate fraction and critical temperature.
//!
//! Internally the chemical potential is carried as `ν = μ − E_0`, the same
//! shift the level sums use, so that a Bose `μ` just below `E_0` keeps its
//! full relative precision.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{newton_bisect, RootSearch};
use crate::specfun::lambert_w;
use crate::spectrum::{Spectrum, WallKind};
use crate::summation::{level_sum, LevelSource, SumControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistics {
    FermiDirac,
    BoseEinstein,
}

impl Statistics {
    pub fn name(self) -> &'static str {
        match self {
            Statistics::FermiDirac => "fd",
            Statistics::BoseEinstein => "be",
        }
    }

    /// `+1` for fermions, `−1` for bosons: the sign in `1/(e^x ± 1)`.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::FermiDirac => 1.0,
            Statistics::BoseEinstein => -1.0,
        }
    }

    /// Occupation `f(x)` and `g(x) = −∂f/∂x` at `x = β(E − μ)`.
    #[inline]
    pub fn occupation(self, x: f64) -> (f64, f64) {
        match self {
            Statistics::FermiDirac => {
                let e = (-x.abs()).exp();
                let d = 1.0 + e;
                let f = if x > 0.0 { e / d } else { 1.0 / d };
                (f, e / (d * d))
            }
            Statistics::BoseEinstein => {
                let f = 1.0 / x.exp_m1();
                (f, f * (1.0 + f))
            }
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fd" | "fermi-dirac" => Ok(Statistics::FermiDirac),
            "be" | "bose-einstein" => Ok(Statistics::BoseEinstein),
            _ => Err(Error::Spec(format!("unknown statistics '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub statistics: Statistics,
    pub n_particles: u64,
}

impl EnsembleSpec {
    pub fn new(statistics: Statistics, n_particles: u64) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::Spec("particle number must be at least 1".into()));
        }
        Ok(Self {
            statistics,
            n_particles,
        })
    }

    pub fn fermions(n: u64) -> Result<Self> {
        Self::new(Statistics::FermiDirac, n)
    }

    pub fn bosons(n: u64) -> Result<Self> {
        Self::new(Statistics::BoseEinstein, n)
    }

    fn n(&self) -> f64 {
        self.n_particles as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GcPoint {
    pub beta: f64,
    pub mu: f64,
    /// Total energy of the `N` particles.
    pub mean_energy: f64,
    pub heat_capacity_per_particle: f64,
    /// Ground-level fraction `N_0/N`, bosons only.
    pub n0: Option<f64>,
    /// `Σ f_n / N − 1` recomputed after the solve.
    pub particle_residual: f64,
}

impl GcPoint {
    pub fn mean_energy_per_particle(&self, n_particles: u64) -> f64 {
        self.mean_energy / n_particles as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CondensateReport {
    pub n_particles: u64,
    pub beta_cr: f64,
    pub t_cr: f64,
    /// Lambert-W estimate for the attractive wall at weak field.
    pub asymptotic_beta_cr: f64,
    /// Relative residual of the critical condition at `beta_cr`.
    pub residual: f64,
}

/// Logarithmic residual at which the particle-number solve stops.
const MU_TOL: f64 = 1e-13;
/// Largest accepted relative error in the recomputed particle number.
pub const PARTICLE_TOL: f64 = 1e-10;
const MAX_ITER: usize = 300;

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "grand canonical",
            value: beta,
            reason: "beta must be positive and finite",
        })
    }
}

/// `Σ f` and `Σ g` at shifted chemical potential `nu`.
fn occupation_sums<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    stats: Statistics,
    nu: f64,
) -> Result<[f64; 2]> {
    level_sum(source, beta, 0, nu.max(0.0), &SumControl::default(), |e| {
        let (f, g) = stats.occupation(beta * (e - nu));
        [f, g]
    })
}

/// Shifted chemical potential `ν = μ − E_0` with `Σ f = N`.
///
/// `guess` is an optional starting `ν`, e.g. from a neighbouring temperature.
pub fn solve_nu<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ens: EnsembleSpec,
    guess: Option<f64>,
) -> Result<f64> {
    check_beta(beta)?;
    let target = ens.n().ln();
    match ens.statistics {
        Statistics::FermiDirac => solve_fd(source, beta, ens, target, guess),
        Statistics::BoseEinstein => solve_be(source, beta, ens, target, guess),
    }
}

/// Chemical potential `μ` with `Σ f = N`.
pub fn solve_mu<S: LevelSource + ?Sized>(source: &S, beta: f64, ens: EnsembleSpec) -> Result<f64> {
    Ok(source.ground() + solve_nu(source, beta, ens, None)?)
}

/// Classical estimate `ν ≈ ln(N/Z_1)/β`, exact at high temperature.
fn classical_nu<S: LevelSource + ?Sized>(source: &S, beta: f64, n: f64) -> Result<f64> {
    let [z] = level_sum(source, beta, 0, 0.0, &SumControl::default(), |e| [(-beta * e).exp()])?;
    Ok((n / z).ln() / beta)
}

fn solve_fd<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ens: EnsembleSpec,
    target: f64,
    guess: Option<f64>,
) -> Result<f64> {
    let stats = Statistics::FermiDirac;
    let residual = |nu: f64| -> Result<(f64, f64)> {
        let [n, g] = occupation_sums(source, beta, stats, nu)?;
        Ok((n.ln() - target, beta * g / n))
    };
    let start = match guess {
        Some(nu) if nu.is_finite() => nu,
        _ => classical_nu(source, beta, ens.n())?,
    };
    let (r0, _) = residual(start)?;
    if r0.abs() <= MU_TOL {
        return Ok(start);
    }
    // walk away from the start in doubling steps until the sign flips
    let dir = if r0 < 0.0 { 1.0 } else { -1.0 };
    let mut step = 1.0 / beta;
    let mut inner = start;
    let mut outer = start + dir * step;
    let mut found = false;
    for _ in 0..80 {
        let (r, _) = residual(outer)?;
        if (r < 0.0) != (r0 < 0.0) {
            found = true;
            break;
        }
        inner = outer;
        step *= 2.0;
        outer += dir * step;
    }
    if !found {
        return Err(Error::Bracket {
            what: "fermi-dirac chemical potential",
            lo: inner.min(outer),
            hi: inner.max(outer),
        });
    }
    finish(
        newton_bisect(residual, inner, outer, inner, MU_TOL, MAX_ITER)?,
        "fermi-dirac chemical potential",
        |x| x,
    )
}

fn solve_be<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ens: EnsembleSpec,
    target: f64,
    guess: Option<f64>,
) -> Result<f64> {
    let stats = Statistics::BoseEinstein;
    // in u = ln δ with ν = −δ; the ground term alone exceeds N below δ_lo
    let residual = |u: f64| -> Result<(f64, f64)> {
        let delta = u.exp();
        let [n, g] = occupation_sums(source, beta, stats, -delta)?;
        Ok((n.ln() - target, -beta * delta * g / n))
    };
    let delta_lo = 0.5 * (1.0 / ens.n()).ln_1p() / beta;
    let mut lo = delta_lo.ln();
    let start = match guess {
        Some(nu) if nu < 0.0 => (-nu).max(delta_lo),
        _ => (-classical_nu(source, beta, ens.n())?).max(2.0 * delta_lo),
    };
    let mut hi = start.ln();
    let mut found = false;
    for _ in 0..200 {
        let (r, _) = residual(hi)?;
        if r.abs() <= MU_TOL {
            return Ok(-hi.exp());
        }
        if r < 0.0 {
            found = true;
            break;
        }
        lo = hi;
        hi += std::f64::consts::LN_2;
    }
    if !found {
        return Err(Error::Bracket {
            what: "bose-einstein chemical potential",
            lo: -hi.exp(),
            hi: -lo.exp(),
        });
    }
    finish(
        newton_bisect(residual, lo, hi, hi, MU_TOL, MAX_ITER)?,
        "bose-einstein chemical potential",
        |u| -u.exp(),
    )
}

fn finish(r: RootSearch, what: &'static str, map: impl Fn(f64) -> f64) -> Result<f64> {
    match r {
        RootSearch::Converged(x) => Ok(map(x)),
        RootSearch::Stalled { lo, hi } => Err(Error::NoConvergence {
            what,
            iterations: MAX_ITER,
            lo: map(lo),
            hi: map(hi),
        }),
    }
}

pub fn gc_point<S: LevelSource + ?Sized>(source: &S, beta: f64, ens: EnsembleSpec) -> Result<GcPoint> {
    gc_point_from(source, beta, ens, None)
}

/// As [`gc_point`], seeding the solve with a shifted chemical potential `ν`.
pub fn gc_point_from<S: LevelSource + ?Sized>(
    source: &S,
    beta: f64,
    ens: EnsembleSpec,
    guess: Option<f64>,
) -> Result<GcPoint> {
    let nu = solve_nu(source, beta, ens, guess)?;
    let stats = ens.statistics;
    let [s0, s1, s2, s3, s4, s5] =
        level_sum(source, beta, 0, nu.max(0.0), &SumControl::default(), |e| {
            let (f, g) = stats.occupation(beta * (e - nu));
            [f, e * f, g, (e - nu) * g, e * g, e * (e - nu) * g]
        })?;
    let n = ens.n();
    let particle_residual = s0 / n - 1.0;
    if !(particle_residual.abs() <= PARTICLE_TOL) {
        return Err(Error::NoConvergence {
            what: "particle number",
            iterations: MAX_ITER,
            lo: s0,
            hi: n,
        });
    }
    // β ∂μ/∂β from differentiating Σ f = N at fixed N
    let beta_dmu = s3 / s2;
    let c_total = beta * beta * (s5 - beta_dmu * s4);
    let e0 = source.ground();
    let n0 = match stats {
        // normalized by the recomputed total so that rounding cannot push it past 1
        Statistics::BoseEinstein => Some(stats.occupation(-beta * nu).0 / s0),
        Statistics::FermiDirac => None,
    };
    Ok(GcPoint {
        beta,
        mu: e0 + nu,
        mean_energy: n * e0 + s1,
        heat_capacity_per_particle: c_total / n,
        n0,
        particle_residual,
    })
}

/// `−β² ∂⟨E⟩/∂β / N` by a five-point stencil, re-solving `μ` at every node.
pub fn heat_capacity_fd<S: LevelSource + ?Sized>(source: &S, beta: f64, ens: EnsembleSpec) -> Result<f64> {
    let h = 2e-3 * beta;
    let e = |b: f64| Ok::<_, Error>(gc_point(source, b, ens)?.mean_energy);
    let d = (e(beta - 2.0 * h)? - 8.0 * e(beta - h)? + 8.0 * e(beta + h)? - e(beta + 2.0 * h)?)
        / (12.0 * h);
    Ok(-beta * beta * d / ens.n())
}

/// Fraction of bosons on the ground level.
pub fn ground_occupation<S: LevelSource + ?Sized>(source: &S, beta: f64, n_particles: u64) -> Result<f64> {
    let p = gc_point(source, beta, EnsembleSpec::bosons(n_particles)?)?;
    Ok(p.n0.expect("bosons carry n0"))
}

/// Low-temperature plateau of the fermion heat capacity per particle.
pub fn fd_plateau(n_particles: u64) -> Result<f64> {
    if n_particles == 0 {
        return Err(Error::Spec("particle number must be at least 1".into()));
    }
    let n = n_particles as f64;
    Ok(1.5 * (n - 1.0) / n)
}

/// Lambert-W estimate of the single-fermion peak at the attractive wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdPeak {
    pub beta: f64,
    pub c_max: f64,
}

fn check_weak_field(field: f64) -> Result<()> {
    if field > 0.0 && field <= crate::canonical::WEAK_FIELD_MAX {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "weak-field asymptotics",
            value: field,
            reason: "field must lie in (0, 1e-2]",
        })
    }
}

pub fn fd_single_peak(field: f64) -> Result<FdPeak> {
    check_weak_field(field)?;
    // 8√π ℰ β^{3/2} e^β = 1
    let beta = 1.5 * lambert_w(1.0 / (6.0 * PI.cbrt() * field.powf(2.0 / 3.0)))?;
    let s2 = std::f64::consts::SQRT_2;
    Ok(FdPeak {
        beta,
        c_max: beta * beta / (s2 * (s2 + 1.0).powi(2)),
    })
}

/// Weak-field, high-temperature closed forms for the attractive wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GcAsymptotics {
    /// From the bound level plus the leading continuum term.
    pub mu: f64,
    /// Single-particle specialization of `mu`.
    pub mu_single: f64,
    /// Large-`N` expansion of `mu`.
    pub mu_large_n: f64,
    /// Total energy at `mu`.
    pub mean_energy: f64,
    /// `−β² ∂⟨E⟩/∂β / N` of the closed forms.
    pub c_n: f64,
    /// Large-`N` heat capacity per particle.
    pub c_n_large_n: f64,
}

fn asymptotic_mu(beta: f64, field: f64, stats: Statistics, n: f64) -> f64 {
    let s = stats.sign();
    let r = 1.0 / (2.0 * PI.sqrt() * beta.powf(1.5) * field);
    let x = (-beta).exp();
    // z = e^{βμ} solves N = z/(x + s z) + r z; bosons take the root below x
    let b = r * x + 1.0 - s * n;
    let r1 = (b * b + s * 4.0 * r * n * x).sqrt();
    let z = if b > 0.0 { 2.0 * n * x / (b + r1) } else { (r1 - b) / (2.0 * r) };
    z.ln() / beta
}

fn asymptotic_energy(beta: f64, field: f64, stats: Statistics, mu: f64) -> f64 {
    let s = stats.sign();
    -1.0 / ((-beta).exp() * (-mu * beta).exp() + s)
        + 0.75 / PI.sqrt() * (mu * beta).exp() / (beta.powf(2.5) * field)
}

pub fn asymptotic_mu_cn(beta: f64, field: f64, ens: EnsembleSpec) -> Result<GcAsymptotics> {
    check_beta(beta)?;
    check_weak_field(field)?;
    if beta * field.powf(2.0 / 3.0) > 0.1 {
        return Err(Error::Domain {
            function: "weak-field asymptotics",
            value: beta,
            reason: "beta * field^(2/3) must not exceed 0.1",
        });
    }
    let stats = ens.statistics;
    let s = stats.sign();
    let n = ens.n();
    let sp = PI.sqrt();
    let mu = asymptotic_mu(beta, field, stats, n);
    let g = 8.0 * sp * beta.powf(1.5) * field * beta.exp();
    let mu_single = match stats {
        Statistics::FermiDirac => (0.5 * (-beta).exp() * ((1.0 + g).sqrt() - 1.0)).ln() / beta,
        Statistics::BoseEinstein => {
            // the root below x = e^{-β}, written without cancellation
            let g2 = 16.0 * PI * beta.powi(3) * field * field * (2.0 * beta).exp();
            let rx = (-beta).exp() / (2.0 * sp * beta.powf(1.5) * field);
            (2.0 * (-beta).exp() / (rx * (1.0 + (1.0 + g2).sqrt()) + 2.0)).ln() / beta
        }
    };
    let q = 2.0 * sp * beta.powf(1.5) * field;
    let mu_large_n = ((n * q).ln() - s * 0.75 / n) / beta;
    let mean_energy = asymptotic_energy(beta, field, stats, mu);
    let h = 1e-4 * beta;
    let e = |b: f64| asymptotic_energy(b, field, stats, asymptotic_mu(b, field, stats, n));
    let d = (e(beta - 2.0 * h) - 8.0 * e(beta - h) + 8.0 * e(beta + h) - e(beta + 2.0 * h)) / (12.0 * h);
    let x = (-beta).exp();
    let c_n_large_n = 1.5 + sp * beta.powf(2.5) * field * (2.0 * beta + 3.0) * x / (q * n + s * x).powi(2);
    Ok(GcAsymptotics {
        mu,
        mu_single,
        mu_large_n,
        mean_energy,
        c_n: -beta * beta * d / n,
        c_n_large_n,
    })
}

/// High-temperature `(μ, ⟨E⟩)` of `N` particles at a Dirichlet or Neumann
/// wall, ensemble independent.
pub fn dn_high_t(beta: f64, field: f64, kind: WallKind, n_particles: u64) -> Result<(f64, f64)> {
    check_beta(beta)?;
    let sign = match kind {
        WallKind::Dirichlet => 1.0,
        WallKind::Neumann => -1.0,
        _ => return Err(Error::Spec(format!("no high-temperature form for {kind}"))),
    };
    let n = n_particles as f64;
    let r = 1.0 / (2.0 * PI.sqrt() * beta.powf(1.5) * field);
    let mu = (n / (r - sign * 0.25)).ln() / beta;
    let e = n * (1.5 / beta + sign * 0.75 * PI.sqrt() * beta.sqrt() * field);
    Ok((mu, e))
}

/// Lambert-W estimate of the condensation temperature at weak field.
pub fn be_critical_asymptotic(field: f64, n_particles: u64) -> Result<f64> {
    if !(field > 0.0) || n_particles == 0 {
        return Err(Error::Spec("need a positive field and at least one particle".into()));
    }
    let n = n_particles as f64;
    let arg = 4f64.powf(2.0 / 3.0) / (6.0 * PI.cbrt() * (n * field).powf(2.0 / 3.0));
    Ok(1.5 * lambert_w(arg)?)
}

/// Excited-state bosons at `μ = E_0`: `Σ_{n≥1} 1/(e^{βε_n} − 1)` and the
/// negative of its `β` derivative.
fn excited_bosons<S: LevelSource + ?Sized>(source: &S, beta: f64) -> Result<[f64; 2]> {
    level_sum(source, beta, 1, 0.0, &SumControl::default(), |e| {
        let (f, g) = Statistics::BoseEinstein.occupation(beta * e);
        [f, e * g]
    })
}

/// Highest temperature at which the excited levels alone hold `N` bosons.
pub fn be_critical(spectrum: &Spectrum, n_particles: u64) -> Result<CondensateReport> {
    let ens = EnsembleSpec::bosons(n_particles)?;
    let target = ens.n().ln();
    let asymptotic_beta_cr = be_critical_asymptotic(spectrum.wall().field, n_particles)?;
    let residual = |t: f64| -> Result<(f64, f64)> {
        let beta = t.exp();
        let [s, ds] = excited_bosons(spectrum, beta)?;
        Ok((s.ln() - target, -beta * ds / s))
    };
    let mut inner = asymptotic_beta_cr.max(1e-6).ln();
    let (r0, _) = residual(inner)?;
    // the excited population falls with β
    let dir = if r0 > 0.0 { 1.0 } else { -1.0 };
    let mut outer = inner + dir * 0.5;
    let mut found = false;
    for _ in 0..200 {
        let (r, _) = residual(outer)?;
        if (r > 0.0) != (r0 > 0.0) {
            found = true;
            break;
        }
        inner = outer;
        outer += dir * 0.5;
    }
    if !found {
        return Err(Error::Bracket {
            what: "critical temperature",
            lo: inner.min(outer).exp(),
            hi: inner.max(outer).exp(),
        });
    }
    let beta_cr = finish(
        newton_bisect(residual, inner, outer, inner, MU_TOL, MAX_ITER)?,
        "critical temperature",
        f64::exp,
    )?;
    let [s, _] = excited_bosons(spectrum, beta_cr)?;
    Ok(CondensateReport {
        n_particles,
        beta_cr,
        t_cr: 1.0 / beta_cr,
        asymptotic_beta_cr,
        residual: s / ens.n() - 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{self, DEFAULT_LEVELS};
    use crate::spectrum::WallSpec;
    use crate::summation::FiniteLevels;

    fn spectrum(kind: WallKind, field: f64) -> Spectrum {
        Spectrum::new(WallSpec::new(kind, field).unwrap(), DEFAULT_LEVELS).unwrap()
    }

    #[test]
    fn occupations_are_stable() {
        let (f, g) = Statistics::FermiDirac.occupation(800.0);
        assert!(f == 0.0 && g == 0.0);
        let (f, g) = Statistics::FermiDirac.occupation(-800.0);
        assert!(f == 1.0 && g == 0.0);
        let (f, g) = Statistics::FermiDirac.occupation(0.0);
        assert!((f - 0.5).abs() < 1e-16 && (g - 0.25).abs() < 1e-16);
        let (f, g) = Statistics::BoseEinstein.occupation(1e-8);
        assert!((f * 1e-8 - 1.0).abs() < 1e-8 && (g * 1e-16 - 1.0).abs() < 2e-8);
    }

    #[test]
    fn two_level_fermions() {
        // one fermion on {0, Δ}: μ sits halfway between for any β
        let src = FiniteLevels::new(vec![0.0, 1.0]).unwrap();
        let ens = EnsembleSpec::fermions(1).unwrap();
        let mu = solve_mu(&src, 3.0, ens).unwrap();
        assert!((mu - 0.5).abs() < 1e-12);
        let p = gc_point(&src, 3.0, ens).unwrap();
        // μ is pinned at ½, so E = f(β/2) and c = (β²/2) e^{β/2}/(e^{β/2} + 1)²
        let y: f64 = 1.5;
        let expect = 4.5 * y.exp() / (y.exp() + 1.0).powi(2);
        assert!((p.heat_capacity_per_particle - expect).abs() < 1e-12);
        // two fermions fill both levels
        assert!(gc_point(&src, 1.0, EnsembleSpec::fermions(3).unwrap()).is_err());
    }

    #[test]
    fn single_particle_orderings() {
        let sp = spectrum(WallKind::RobinAttractive, 1e-3);
        for beta in [1.0, 4.0, 40.0] {
            let b = gc_point(&sp, beta, EnsembleSpec::bosons(1).unwrap()).unwrap();
            let f = gc_point(&sp, beta, EnsembleSpec::fermions(1).unwrap()).unwrap();
            let c = canonical::canonical_point(&sp, beta).unwrap();
            assert!(b.particle_residual.abs() < PARTICLE_TOL);
            assert!(f.mu > b.mu);
            assert!(b.mu < sp.ground());
            // all three ensembles freeze into the bound level
            if beta == 40.0 {
                for e in [b.mean_energy, f.mean_energy, c.mean_energy] {
                    assert!((e - sp.ground()).abs() < 1e-6, "{e}");
                }
            }
        }
    }

    #[test]
    fn bose_cold_limit() {
        let sp = spectrum(WallKind::Dirichlet, 1.0);
        let n = 10;
        let beta = 60.0;
        let mu = solve_mu(&sp, beta, EnsembleSpec::bosons(n).unwrap()).unwrap();
        let expect = sp.ground() - (1.0 / n as f64).ln_1p() / beta;
        assert!((mu - expect).abs() < 1e-12, "{mu} {expect}");
        let n0 = ground_occupation(&sp, beta, n).unwrap();
        assert!((n0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fd_single_particle_mu_against_closed_form() {
        let (beta, field) = (8.0, 1e-4);
        let sp = spectrum(WallKind::RobinAttractive, field);
        let ens = EnsembleSpec::fermions(1).unwrap();
        let mu = solve_mu(&sp, beta, ens).unwrap();
        let a = asymptotic_mu_cn(beta, field, ens).unwrap();
        assert!((a.mu / mu - 1.0).abs() < 0.02, "{mu} {}", a.mu);
        assert!((a.mu_single - a.mu).abs() < 1e-12 * a.mu.abs());
        let b = asymptotic_mu_cn(beta, field, EnsembleSpec::bosons(1).unwrap()).unwrap();
        assert!((b.mu_single - b.mu).abs() < 1e-12 * b.mu.abs(), "{b:?}");
    }

    #[test]
    fn two_level_mu_tracks_exact_for_both_statistics() {
        let field = 1e-4;
        let sp = spectrum(WallKind::RobinAttractive, field);
        for (beta, n) in [(0.05, 1000), (2.0, 10), (6.0, 1)] {
            for ens in [EnsembleSpec::fermions(n).unwrap(), EnsembleSpec::bosons(n).unwrap()] {
                let mu = solve_mu(&sp, beta, ens).unwrap();
                let a = asymptotic_mu_cn(beta, field, ens).unwrap();
                assert!((a.mu / mu - 1.0).abs() < 0.02, "{ens:?} {beta}: {mu} {}", a.mu);
                if ens.statistics == Statistics::BoseEinstein {
                    assert!(a.mu < -1.0);
                }
            }
        }
    }

    #[test]
    fn high_temperature_dirichlet_mu() {
        let field: f64 = 1e-3;
        let beta = 1e-3 / field.powf(2.0 / 3.0);
        let sp = spectrum(WallKind::Dirichlet, field);
        for n in [1, 10] {
            let mu = solve_mu(&sp, beta, EnsembleSpec::fermions(n).unwrap()).unwrap();
            let (expect, _) = dn_high_t(beta, field, WallKind::Dirichlet, n).unwrap();
            assert!((mu / expect - 1.0).abs() < 0.02, "{mu} {expect}");
        }
    }

    #[test]
    fn implicit_heat_capacity_matches_finite_difference() {
        for (kind, field, beta, ens) in [
            (WallKind::RobinAttractive, 1e-4, 6.0, EnsembleSpec::fermions(1).unwrap()),
            (WallKind::RobinAttractive, 1e-5, 7.0, EnsembleSpec::fermions(5).unwrap()),
            (WallKind::RobinAttractive, 1e-3, 3.0, EnsembleSpec::bosons(10).unwrap()),
            (WallKind::Neumann, 0.1, 0.5, EnsembleSpec::bosons(1000).unwrap()),
        ] {
            let sp = spectrum(kind, field);
            let c = gc_point(&sp, beta, ens).unwrap().heat_capacity_per_particle;
            let fd = heat_capacity_fd(&sp, beta, ens).unwrap();
            assert!(((c - fd) / c).abs() < 1e-4, "{kind} {field} {beta} {ens:?}: {c} {fd}");
        }
    }

    #[test]
    fn large_n_fermions_against_exact() {
        let (beta, field) = (6.0, 1e-5);
        let sp = spectrum(WallKind::RobinAttractive, field);
        let ens = EnsembleSpec::fermions(100).unwrap();
        let exact = gc_point(&sp, beta, ens).unwrap();
        let a = asymptotic_mu_cn(beta, field, ens).unwrap();
        assert!(
            (a.c_n_large_n / exact.heat_capacity_per_particle - 1.0).abs() < 0.05,
            "{} {}",
            a.c_n_large_n,
            exact.heat_capacity_per_particle
        );
        assert!((a.mu_large_n - exact.mu).abs() < 0.05 * exact.mu.abs(), "{} {}", a.mu_large_n, exact.mu);
        // the large-N form flattens towards 3/2 as N grows
        let c = |n| asymptotic_mu_cn(beta, field, EnsembleSpec::fermions(n).unwrap()).unwrap().c_n_large_n;
        assert!(c(10) > c(100) && c(100) > c(1000) && (c(100_000) - 1.5).abs() < 1e-3);
    }

    #[test]
    fn fd_peak_predictor() {
        for field in [1e-4, 1e-6] {
            let p = fd_single_peak(field).unwrap();
            let lhs = 8.0 * PI.sqrt() * field * p.beta.powf(1.5) * p.beta.exp();
            assert!((lhs - 1.0).abs() < 1e-10);
        }
        assert!(fd_single_peak(1e-5).unwrap().c_max > fd_single_peak(1e-4).unwrap().c_max);
        assert!(fd_single_peak(1.0).is_err());
    }

    #[test]
    fn plateau_values() {
        assert_eq!(fd_plateau(1).unwrap(), 0.0);
        assert_eq!(fd_plateau(2).unwrap(), 0.75);
        assert!((fd_plateau(1_000_000).unwrap() - 1.4999985).abs() < 1e-12);
        assert!(fd_plateau(0).is_err());
    }

    #[test]
    fn critical_temperature() {
        let field = 1e-4;
        let sp = spectrum(WallKind::RobinAttractive, field);
        let a = be_critical(&sp, 100).unwrap();
        let b = be_critical(&sp, 1000).unwrap();
        assert!(a.residual.abs() < 1e-10 && b.residual.abs() < 1e-10);
        assert!(b.t_cr > a.t_cr);
        // denominator of the large-N heat capacity vanishes at the estimate
        let beta = b.asymptotic_beta_cr;
        let den = 2.0 * PI.sqrt() * beta.powf(1.5) * field * 1000.0 - (-beta).exp();
        assert!(den.abs() < 1e-12 * (-beta).exp());
        let weaker = be_critical(&spectrum(WallKind::RobinAttractive, 1e-6), 1000).unwrap();
        assert!(weaker.t_cr < b.t_cr);
    }

    #[test]
    fn condensate_fraction_orders() {
        let sp = spectrum(WallKind::RobinAttractive, 1e-7);
        let n = 100_000;
        let cr = be_critical(&sp, n).unwrap();
        let cold = ground_occupation(&sp, 2.0 * cr.beta_cr, n).unwrap();
        let hot = ground_occupation(&sp, 0.5 * cr.beta_cr, n).unwrap();
        assert!(cold > 0.5 && 0.5 > hot && hot > 0.0, "{cold} {hot}");
    }
}
