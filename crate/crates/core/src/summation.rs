//! Level sums shared by the canonical and grand-canonical ensembles.
//!
//! Terms are evaluated in the shifted energy `ε = E_n − E_0` and added in
//! ascending `n` with compensated summation. Far up a smooth spectrum the
//! remaining sum is replaced by its Euler-Maclaurin continuation: an
//! integral over the level density plus the first derivative correction.

use crate::error::{Error, Result};
use crate::numeric::{gl_panel, CompensatedSum};
use crate::spectrum::Spectrum;

/// A discrete, ascending set of energies.
pub trait LevelSource: Sync {
    /// Level `n`, or `None` past the end of a finite spectrum.
    fn level(&self, n: usize) -> Option<f64>;

    fn ground(&self) -> f64 {
        self.level(0).expect("level source has a ground state")
    }

    /// First index from which the levels are described by a smooth
    /// continuous index (see [`LevelSource::continuous_index`]).
    fn smooth_from(&self) -> Option<usize> {
        None
    }

    /// Continuous index `Q(E)` and density `dQ/dE`.
    fn continuous_index(&self, _e: f64) -> (f64, f64) {
        unreachable!("source has no smooth tail")
    }

    /// Energy at fractional index `q`.
    fn energy_at_index(&self, _q: f64) -> f64 {
        unreachable!("source has no smooth tail")
    }
}

impl LevelSource for Spectrum {
    fn level(&self, n: usize) -> Option<f64> {
        Some(Spectrum::level(self, n))
    }

    fn ground(&self) -> f64 {
        Spectrum::ground(self)
    }

    fn smooth_from(&self) -> Option<usize> {
        Some(self.tail_start())
    }

    fn continuous_index(&self, e: f64) -> (f64, f64) {
        Spectrum::continuous_index(self, e)
    }

    fn energy_at_index(&self, q: f64) -> f64 {
        Spectrum::energy_at_index(self, q)
    }
}

/// A finite level list, e.g. a toy spectrum for tests.
#[derive(Debug, Clone)]
pub struct FiniteLevels(Vec<f64>);

impl FiniteLevels {
    pub fn new(mut levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() || levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::Spec("finite spectrum needs finite levels".into()));
        }
        levels.sort_by(f64::total_cmp);
        Ok(Self(levels))
    }

    pub fn levels(&self) -> &[f64] {
        &self.0
    }
}

impl LevelSource for FiniteLevels {
    fn level(&self, n: usize) -> Option<f64> {
        self.0.get(n).copied()
    }
}

/// Truncation controls for level sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumControl {
    /// A term counts as negligible below `cutoff` times the running sum.
    pub cutoff: f64,
    /// Number of consecutive negligible terms that ends the sum.
    pub quiet_terms: usize,
    /// Maximum number of explicitly summed levels.
    pub budget: usize,
    /// Allow the Euler-Maclaurin continuation on smooth tails.
    pub continuation: bool,
}

impl Default for SumControl {
    fn default() -> Self {
        Self {
            cutoff: 1e-16,
            quiet_terms: 8,
            budget: 100_000_000,
            continuation: true,
        }
    }
}

/// Thermal energy multiples past the reference energy after which the stop
/// rule may fire.
const STOP_WINDOW: f64 = 45.0;
/// Integration window of the continuation, in units of `1/β`.
const TAIL_WINDOW: f64 = 60.0;
/// Continuation starts when neighbouring terms differ by at most this much
/// in `β δE`.
const SMOOTH_STEP: f64 = 0.01;
const SMOOTH_STEP_LATE: f64 = 0.05;
const LATE_INDEX: usize = 1 << 20;
const MIN_EXPLICIT: usize = 256;

/// `Σ_{n ≥ start} term(E_n − E_0)` for `K` simultaneous components.
///
/// Component 0 drives the stop rule and must be a nonnegative weight that
/// decays exponentially once `ε > eps_ref`.
pub(crate) fn level_sum<const K: usize, S, F>(
    source: &S,
    beta: f64,
    start: usize,
    eps_ref: f64,
    ctl: &SumControl,
    term: F,
) -> Result<[f64; K]>
where
    S: LevelSource + ?Sized,
    F: Fn(f64) -> [f64; K],
{
    let e0 = source.ground();
    let mut acc = [CompensatedSum::new(); K];
    let smooth_from = if ctl.continuation {
        source.smooth_from().map(|s| s.max(MIN_EXPLICIT))
    } else {
        None
    };
    let stop_after = eps_ref + STOP_WINDOW / beta;
    let mut quiet = 0;
    let mut prev: Option<(f64, [f64; K])> = None;
    let mut n = start;
    while let Some(e) = source.level(n) {
        let eps = e - e0;
        let t = term(eps);

        if let (Some(from), Some((e_prev, t_prev))) = (smooth_from, prev) {
            let step = beta * (e - e_prev);
            if n >= from
                && (step <= SMOOTH_STEP || (n >= LATE_INDEX && step <= SMOOTH_STEP_LATE))
            {
                let mut tail = [CompensatedSum::new(); K];
                continuation(source, beta, n, e0, eps_ref, &term, &mut tail);
                for k in 0..K {
                    acc[k].add(tail[k].value());
                    // midpoint Euler-Maclaurin: + g'(M − ½)/24
                    acc[k].add((t[k] - t_prev[k]) / 24.0);
                }
                return Ok(acc.map(|a| a.value()));
            }
        }

        for k in 0..K {
            acc[k].add(t[k]);
        }
        if eps > stop_after && t[0].abs() <= ctl.cutoff * acc[0].value().abs() {
            quiet += 1;
            if quiet >= ctl.quiet_terms {
                break;
            }
        } else {
            quiet = 0;
        }
        if n - start + 1 >= ctl.budget {
            return Err(Error::Budget {
                levels: ctl.budget,
                last_term: t[0],
            });
        }
        prev = Some((e, t));
        n += 1;
    }
    Ok(acc.map(|a| a.value()))
}

/// `∫_{E(M−½)}^∞ term(E − E_0) ρ(E) dE` on Gauss-Legendre panels: widths
/// grow geometrically from the lower end up to `2/β`, then stay uniform.
fn continuation<const K: usize, S, F>(
    source: &S,
    beta: f64,
    m: usize,
    e0: f64,
    eps_ref: f64,
    term: &F,
    acc: &mut [CompensatedSum; K],
) where
    S: LevelSource + ?Sized,
    F: Fn(f64) -> [f64; K],
{
    let ea = source.energy_at_index(m as f64 - 0.5);
    let e_hi = ea.max(e0 + eps_ref) + TAIL_WINDOW / beta;
    let max_width = 2.0 / beta;
    let mut integrand = |e: f64| {
        let (_, rho) = source.continuous_index(e);
        let t = term(e - e0);
        t.map(|v| v * rho)
    };
    let mut left = ea;
    while left < e_hi {
        let width = if left > 0.0 { left.min(max_width) } else { max_width };
        let right = (left + width).min(e_hi);
        gl_panel(left, right, &mut integrand, acc);
        left = right;
    }
}
