//! Small numerical building blocks shared by the thermodynamic kernels:
//! compensated accumulation, Gauss-Legendre panels and golden-section search.

use std::sync::OnceLock;

/// Neumaier-compensated running sum.
///
/// Keeps a separate correction term so that adding millions of small
/// Boltzmann weights to an O(1) total loses no more than a couple of ulps.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Number of nodes of the fixed Gauss-Legendre rule used for tail integrals.
pub const GL_ORDER: usize = 20;

/// Nodes and weights of the `GL_ORDER`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(GL_ORDER))
}

/// Nodes by Newton iteration on the three-term Legendre recurrence.
fn gauss_legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Integrates `f` over `[a, b]` with one Gauss-Legendre panel, accumulating
/// each of the `K` components into `acc`.
pub fn gl_panel<const K: usize>(
    a: f64,
    b: f64,
    f: &mut impl FnMut(f64) -> [f64; K],
    acc: &mut [CompensatedSum; K],
) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for &(x, w) in gauss_legendre() {
        let v = f(mid + half * x);
        for k in 0..K {
            acc[k].add(w * half * v[k]);
        }
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Stops when the bracket is narrower than `tol`. Returns the abscissa and
/// value of the best point seen.
pub fn golden_section_max<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64), E> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < 200 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
    }
    Ok(if fc > fd { (c, fc) } else { (d, fd) })
}

/// Outcome of [`newton_bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootSearch {
    Converged(f64),
    /// Iteration limit hit; carries the last bracket.
    Stalled { lo: f64, hi: f64 },
}

/// Newton iteration kept inside a sign-changing bracket `[a, b]`, falling
/// back to bisection whenever a step leaves the bracket or fails to halve
/// the residual. `f` returns the residual and its derivative.
pub fn newton_bisect<E>(
    mut f: impl FnMut(f64) -> Result<(f64, f64), E>,
    mut a: f64,
    mut b: f64,
    x0: f64,
    f_tol: f64,
    max_iter: usize,
) -> Result<RootSearch, E> {
    let (fa, _) = f(a)?;
    let rising = fa < 0.0;
    let mut x = if x0 > a.min(b) && x0 < a.max(b) { x0 } else { 0.5 * (a + b) };
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let (fx, dfx) = f(x)?;
        if fx.abs() <= f_tol {
            return Ok(RootSearch::Converged(x));
        }
        if (fx < 0.0) == rising {
            a = x;
        } else {
            b = x;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Ok(RootSearch::Converged(x));
        }
        let step = x - fx / dfx;
        x = if step.is_finite() && step > lo && step < hi && fx.abs() < 0.5 * last {
            step
        } else {
            0.5 * (lo + hi)
        };
        last = fx.abs();
    }
    Ok(RootSearch::Stalled {
        lo: a.min(b),
        hi: a.max(b),
    })
}
