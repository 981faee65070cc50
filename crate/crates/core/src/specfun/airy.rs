//! Airy function of the first kind and its derivative for real argument.
//!
//! Three regimes:
//!
//! * `|x| <= 1.5`: Maclaurin series (Taylor expansion of `y'' = x y` about 0).
//! * `1.5 < |x| < 10`: Taylor expansion about the nearest node of a table
//!   built once by stepping the Airy ODE. The positive half is stepped
//!   backwards from the asymptotic value at `x = 10` (the stable direction
//!   for the decaying solution), the negative half forwards from the
//!   Maclaurin value at `x = -1.5`.
//! * `|x| >= 10`: Poincaré asymptotic expansions, exponential form for
//!   `x > 0` and modulus/phase form for `x < 0`.
//!
//! For `x > 0` the scaled pair `Ai(x) e^ζ`, `Ai'(x) e^ζ` with
//! `ζ = (2/3) x^{3/2}` is available and never underflows.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// `Ai'(0) = -3^{-1/3} / Γ(1/3)`.
pub const AIP_ZERO: f64 = -0.258_819_403_792_806_8;

const MACLAURIN_RADIUS: f64 = 1.5;
const ASYMPTOTIC_SWITCH: f64 = 10.0;
const NODE_STEP: f64 = 0.25;

/// Value and derivative of Ai at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Airy {
    pub ai: f64,
    pub aip: f64,
}

/// Selects the zeros of Ai (`a_n`) or of Ai′ (`a'_n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AiryZeroKind {
    FunctionZero,
    DerivativeZero,
}

/// `Ai(x)` and `Ai'(x)`. Underflows to zero for large positive `x`; use
/// [`airy_scaled`] there.
pub fn airy(x: f64) -> Result<Airy> {
    check_finite("airy", x)?;
    if x >= ASYMPTOTIC_SWITCH {
        let zeta = zeta_of(x);
        let s = positive_asymptotic_scaled(x, zeta);
        let e = (-zeta).exp();
        return Ok(Airy {
            ai: s.ai * e,
            aip: s.aip * e,
        });
    }
    Ok(airy_unchecked(x))
}

/// For `x > 0`, `Ai(x) e^ζ` and `Ai'(x) e^ζ` with `ζ = (2/3) x^{3/2}`;
/// for `x <= 0` the unscaled values.
pub fn airy_scaled(x: f64) -> Result<Airy> {
    check_finite("airy_scaled", x)?;
    if x <= 0.0 {
        return Ok(airy_unchecked(x));
    }
    let zeta = zeta_of(x);
    if x >= ASYMPTOTIC_SWITCH {
        return Ok(positive_asymptotic_scaled(x, zeta));
    }
    let a = airy_unchecked(x);
    let e = zeta.exp();
    Ok(Airy {
        ai: a.ai * e,
        aip: a.aip * e,
    })
}

/// Logarithmic derivative `Ai'(x) / Ai(x)`, stable for large positive `x`.
pub fn airy_log_deriv(x: f64) -> Result<f64> {
    check_finite("airy_log_deriv", x)?;
    let (num, den) = log_deriv_parts(x);
    if den == 0.0 || den.abs() < 1e-15 * num.abs() {
        return Err(Error::Pole { x });
    }
    Ok(num / den)
}

/// Log-derivative without the pole check; returns ±∞ or huge values at the
/// zeros of Ai. Used inside bracketed root solves.
pub(crate) fn log_deriv_raw(x: f64) -> f64 {
    let (num, den) = log_deriv_parts(x);
    num / den
}

/// Numerator and denominator of `Ai'/Ai` with a common positive scale.
fn log_deriv_parts(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_SWITCH {
        let series = positive_series(zeta_of(x));
        (-x.sqrt() * series.1, series.0)
    } else if x <= -ASYMPTOTIC_SWITCH {
        let z = -x;
        let ph = PhaseSeries::at(zeta_of(z));
        let (s, c) = theta_sin_cos(ph.zeta);
        (
            z.sqrt() * (-c * ph.pv - s * ph.qv),
            s * ph.pu - c * ph.qu,
        )
    } else {
        let a = airy_unchecked(x);
        (a.aip, a.ai)
    }
}

fn check_finite(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            reason: "argument must be finite",
        })
    }
}

#[inline]
fn zeta_of(z: f64) -> f64 {
    2.0 / 3.0 * z * z.sqrt()
}

/// `sin θ`, `cos θ` for `θ = ζ + π/4`.
#[inline]
fn theta_sin_cos(zeta: f64) -> (f64, f64) {
    let (s, c) = zeta.sin_cos();
    ((s + c) * FRAC_1_SQRT_2, (c - s) * FRAC_1_SQRT_2)
}

fn airy_unchecked(x: f64) -> Airy {
    if x.abs() <= MACLAURIN_RADIUS {
        let (ai, aip) = taylor(0.0, AI_ZERO, AIP_ZERO, x);
        return Airy { ai, aip };
    }
    if x <= -ASYMPTOTIC_SWITCH {
        return negative_asymptotic(-x);
    }
    if x >= ASYMPTOTIC_SWITCH {
        let zeta = zeta_of(x);
        let s = positive_asymptotic_scaled(x, zeta);
        let e = (-zeta).exp();
        return Airy {
            ai: s.ai * e,
            aip: s.aip * e,
        };
    }
    let table = node_table();
    let (nodes, sign) = if x > 0.0 {
        (&table.positive, 1.0)
    } else {
        (&table.negative, -1.0)
    };
    let idx = ((x.abs() - MACLAURIN_RADIUS) / NODE_STEP).round() as usize;
    let idx = idx.min(nodes.len() - 1);
    let x0 = sign * (MACLAURIN_RADIUS + idx as f64 * NODE_STEP);
    let node = nodes[idx];
    let (ai, aip) = taylor(x0, node.ai, node.aip, x - x0);
    Airy { ai, aip }
}

struct NodeTable {
    positive: Vec<Airy>,
    negative: Vec<Airy>,
}

fn node_table() -> &'static NodeTable {
    static TABLE: OnceLock<NodeTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let count = ((ASYMPTOTIC_SWITCH - MACLAURIN_RADIUS) / NODE_STEP).round() as usize + 1;

        let mut positive = vec![
            Airy {
                ai: 0.0,
                aip: 0.0
            };
            count
        ];
        let zeta = zeta_of(ASYMPTOTIC_SWITCH);
        let s = positive_asymptotic_scaled(ASYMPTOTIC_SWITCH, zeta);
        let e = (-zeta).exp();
        let mut cur = Airy {
            ai: s.ai * e,
            aip: s.aip * e,
        };
        positive[count - 1] = cur;
        for i in (0..count - 1).rev() {
            let x0 = MACLAURIN_RADIUS + (i + 1) as f64 * NODE_STEP;
            let (ai, aip) = taylor(x0, cur.ai, cur.aip, -NODE_STEP);
            cur = Airy { ai, aip };
            positive[i] = cur;
        }

        let mut negative = Vec::with_capacity(count);
        let (ai, aip) = taylor(0.0, AI_ZERO, AIP_ZERO, -MACLAURIN_RADIUS);
        let mut cur = Airy { ai, aip };
        negative.push(cur);
        for i in 1..count {
            let x0 = -(MACLAURIN_RADIUS + (i - 1) as f64 * NODE_STEP);
            let (ai, aip) = taylor(x0, cur.ai, cur.aip, -NODE_STEP);
            cur = Airy { ai, aip };
            negative.push(cur);
        }
        NodeTable { positive, negative }
    })
}

/// Taylor expansion of the solution of `y'' = x y` with `y(x0) = y0`,
/// `y'(x0) = yp0`, evaluated at `x0 + t`.
fn taylor(x0: f64, y0: f64, yp0: f64, t: f64) -> (f64, f64) {
    // (k+2)(k+1) c_{k+2} = x0 c_k + c_{k-1}
    let mut c_km1 = 0.0;
    let mut c_k = y0;
    let mut c_kp1 = yp0;
    let mut y = y0 + yp0 * t;
    let mut yp = yp0;
    let mut tk = 1.0; // t^k
    let mut quiet = 0;
    for k in 0..400usize {
        let c_kp2 = (x0 * c_k + c_km1) / (((k + 2) * (k + 1)) as f64);
        let tk2 = tk * t * t;
        let term = c_kp2 * tk2;
        let dterm = (k + 2) as f64 * c_kp2 * tk * t;
        y += term;
        yp += dterm;
        let scale = y.abs().max(yp.abs()).max(1e-300);
        if term.abs() <= 1e-18 * scale && dterm.abs() <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        c_km1 = c_k;
        c_k = c_kp1;
        c_kp1 = c_kp2;
        tk *= t;
    }
    (y, yp)
}

/// Coefficients `u_k` of the Airy asymptotic expansions.
fn u_coeffs() -> &'static [f64] {
    static U: OnceLock<Vec<f64>> = OnceLock::new();
    U.get_or_init(|| {
        let mut u = vec![1.0];
        for k in 1..40usize {
            let kf = k as f64;
            let prev = u[k - 1];
            u.push(
                prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                    / ((2.0 * kf - 1.0) * 216.0 * kf),
            );
        }
        u
    })
}

/// Coefficients `v_k = -(6k+1)/(6k-1) u_k`.
fn v_coeffs() -> &'static [f64] {
    static V: OnceLock<Vec<f64>> = OnceLock::new();
    V.get_or_init(|| {
        u_coeffs()
            .iter()
            .enumerate()
            .map(|(k, &u)| {
                if k == 0 {
                    1.0
                } else {
                    let kf = k as f64;
                    -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u
                }
            })
            .collect()
    })
}

/// `(Σ (-1)^k u_k ζ^-k, Σ (-1)^k v_k ζ^-k)` truncated at the smallest term.
fn positive_series(zeta: f64) -> (f64, f64) {
    let (u, v) = (u_coeffs(), v_coeffs());
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut p = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..u.len() {
        p *= -1.0 / zeta;
        let tu = u[k] * p;
        let tv = v[k] * p;
        let mag = tu.abs().max(tv.abs());
        if mag > last {
            break;
        }
        su += tu;
        sv += tv;
        last = mag;
        if mag < 1e-17 {
            break;
        }
    }
    (su, sv)
}

fn positive_asymptotic_scaled(x: f64, zeta: f64) -> Airy {
    let (su, sv) = positive_series(zeta);
    let pref = 0.5 / PI.sqrt();
    let q = x.sqrt().sqrt();
    Airy {
        ai: pref / q * su,
        aip: -pref * q * sv,
    }
}

fn negative_asymptotic(z: f64) -> Airy {
    let ph = PhaseSeries::at(zeta_of(z));
    let (s, c) = theta_sin_cos(ph.zeta);
    let pref = 1.0 / PI.sqrt();
    let q = z.sqrt().sqrt();
    Airy {
        ai: pref / q * (s * ph.pu - c * ph.qu),
        aip: pref * q * (-c * ph.pv - s * ph.qv),
    }
}

/// Even/odd parts of the oscillatory asymptotic series and their
/// ζ-derivatives:
///
/// `Ai(-z) ~ π^{-1/2} z^{-1/4} [sin θ · pu − cos θ · qu]`,
/// `Ai'(-z) ~ π^{-1/2} z^{1/4} [−cos θ · pv − sin θ · qv]`, `θ = ζ + π/4`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PhaseSeries {
    pub zeta: f64,
    pub pu: f64,
    pub qu: f64,
    pub pv: f64,
    pub qv: f64,
    pub dpu: f64,
    pub dqu: f64,
    pub dpv: f64,
    pub dqv: f64,
}

impl PhaseSeries {
    pub fn at(zeta: f64) -> Self {
        let (u, v) = (u_coeffs(), v_coeffs());
        let inv = 1.0 / zeta;
        let mut out = PhaseSeries {
            zeta,
            pu: 1.0,
            qu: 0.0,
            pv: 1.0,
            qv: 0.0,
            dpu: 0.0,
            dqu: 0.0,
            dpv: 0.0,
            dqv: 0.0,
        };
        // term_k = (-1)^{floor(k/2)} c_k ζ^{-k}; even k -> p, odd k -> q
        let mut p = 1.0;
        let mut last = f64::INFINITY;
        for k in 1..u.len() {
            p *= inv;
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let tu = sign * u[k] * p;
            let tv = sign * v[k] * p;
            let mag = tu.abs().max(tv.abs());
            if mag > last {
                break;
            }
            let d = -(k as f64) * inv; // d/dζ ζ^{-k} = -k ζ^{-k-1}
            if k % 2 == 0 {
                out.pu += tu;
                out.pv += tv;
                out.dpu += tu * d;
                out.dpv += tv * d;
            } else {
                out.qu += tu;
                out.qv += tv;
                out.dqu += tu * d;
                out.dqv += tv * d;
            }
            last = mag;
            if mag < 1e-18 {
                break;
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Zeros

/// Number of Newton-refined zeros of each kind; larger indices use the
/// large-index expansion, whose error there is below 1e-15 relative.
pub const N_EXACT_ZEROS: usize = 64;

/// `n`-th zero (`n >= 1`) of Ai or Ai′. Both are negative.
pub fn airy_zero(n: usize, kind: AiryZeroKind) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain {
            function: "airy_zero",
            value: 0.0,
            reason: "zero index starts at 1",
        });
    }
    if n <= N_EXACT_ZEROS {
        let table = match kind {
            AiryZeroKind::FunctionZero => refined_zeros_ai(),
            AiryZeroKind::DerivativeZero => refined_zeros_aip(),
        };
        return Ok(table[n - 1]);
    }
    Ok(zero_expansion(n, kind, true))
}

/// Leading large-index law `-[(3π/8)(4n − 1)]^{2/3}` (Ai) or
/// `-[(3π/8)(4n − 3)]^{2/3}` (Ai′), without correction terms.
pub fn airy_zero_leading(n: usize, kind: AiryZeroKind) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain {
            function: "airy_zero_leading",
            value: 0.0,
            reason: "zero index starts at 1",
        });
    }
    let t = zero_argument(n, kind);
    Ok(-t.powf(2.0 / 3.0))
}

fn zero_argument(n: usize, kind: AiryZeroKind) -> f64 {
    let shift = match kind {
        AiryZeroKind::FunctionZero => 1.0,
        AiryZeroKind::DerivativeZero => 3.0,
    };
    3.0 * PI / 8.0 * (4.0 * n as f64 - shift)
}

/// Large-index expansion with the standard inverse-power corrections.
fn zero_expansion(n: usize, kind: AiryZeroKind, full: bool) -> f64 {
    let t = zero_argument(n, kind);
    let s = 1.0 / (t * t);
    let c: &[f64] = match kind {
        AiryZeroKind::FunctionZero => &[
            1.0,
            5.0 / 48.0,
            -5.0 / 36.0,
            77125.0 / 82944.0,
            -108_056_875.0 / 6_967_296.0,
        ],
        AiryZeroKind::DerivativeZero => &[
            1.0,
            -7.0 / 48.0,
            35.0 / 288.0,
            -181_223.0 / 207_360.0,
            18_683_371.0 / 1_244_160.0,
        ],
    };
    let terms = if full { c.len() } else { 3 };
    let mut acc = 0.0;
    let mut p = 1.0;
    for &ck in c.iter().take(terms) {
        acc += ck * p;
        p *= s;
    }
    -t.powf(2.0 / 3.0) * acc
}

fn refined_zeros_ai() -> &'static [f64] {
    static Z: OnceLock<Vec<f64>> = OnceLock::new();
    Z.get_or_init(|| {
        (1..=N_EXACT_ZEROS)
            .map(|n| {
                let mut x = zero_expansion(n, AiryZeroKind::FunctionZero, n > 3);
                for _ in 0..50 {
                    let a = airy_unchecked(x);
                    let dx = a.ai / a.aip;
                    x -= dx;
                    if dx.abs() <= 1e-16 * x.abs() {
                        break;
                    }
                }
                x
            })
            .collect()
    })
}

fn refined_zeros_aip() -> &'static [f64] {
    static Z: OnceLock<Vec<f64>> = OnceLock::new();
    Z.get_or_init(|| {
        (1..=N_EXACT_ZEROS)
            .map(|n| {
                let mut x = zero_expansion(n, AiryZeroKind::DerivativeZero, n > 3);
                for _ in 0..50 {
                    let a = airy_unchecked(x);
                    // (Ai')' = x Ai
                    let dx = a.aip / (x * a.ai);
                    x -= dx;
                    if dx.abs() <= 1e-16 * x.abs() {
                        break;
                    }
                }
                x
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;

    /// Straightforward Maclaurin series `Ai = c1 f − c2 g` as an oracle.
    fn maclaurin_oracle(x: f64, terms: usize) -> (f64, f64) {
        let c1 = 3f64.powf(-2.0 / 3.0) / gamma_fn(2.0 / 3.0).unwrap();
        let c2 = 3f64.powf(-1.0 / 3.0) / gamma_fn(1.0 / 3.0).unwrap();
        let (mut f, mut g, mut fp, mut gp) = (0.0, 0.0, 0.0, 0.0);
        // f = Σ 3^k (1/3)_k x^{3k} / (3k)!, g = Σ 3^k (2/3)_k x^{3k+1} / (3k+1)!
        let mut a = 1.0; // 3^k (1/3)_k / (3k)!
        let mut b = 1.0; // 3^k (2/3)_k / (3k+1)!
        for k in 0..terms {
            let kf = k as f64;
            f += a * x.powi(3 * k as i32);
            g += b * x.powi(3 * k as i32 + 1);
            if k > 0 {
                fp += a * 3.0 * kf * x.powi(3 * k as i32 - 1);
            }
            gp += b * (3.0 * kf + 1.0) * x.powi(3 * k as i32);
            a *= 3.0 * (kf + 1.0 / 3.0) / ((3.0 * kf + 1.0) * (3.0 * kf + 2.0) * (3.0 * kf + 3.0));
            b *= 3.0 * (kf + 2.0 / 3.0) / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        }
        (c1 * f - c2 * g, c1 * fp - c2 * gp)
    }

    #[test]
    fn values_at_origin_match_series_oracle() {
        let (ai, aip) = maclaurin_oracle(0.0, 30);
        let a = airy(0.0).unwrap();
        assert!((a.ai - ai).abs() < 1e-15);
        assert!((a.aip - aip).abs() < 1e-15);
        assert!((ai - 0.355_028_053_887_817_2).abs() < 1e-15);
    }

    #[test]
    fn maclaurin_oracle_agrees_inside_unit_interval() {
        for &x in &[-1.0, -0.6, -0.2, 0.3, 0.7, 1.0] {
            let (ai, aip) = maclaurin_oracle(x, 40);
            let a = airy(x).unwrap();
            assert!((a.ai - ai).abs() < 1e-15, "x={x}: {} vs {ai}", a.ai);
            assert!((a.aip - aip).abs() < 1e-15, "x={x}: {} vs {aip}", a.aip);
        }
    }

    // Reference values computed with 30-digit arithmetic (mpmath).
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-50.0, -0.161_881_423_612_320_92, 0.968_989_837_276_749_09),
        (-12.5, -0.276_274_561_381_160_25, -0.419_331_330_419_505_16),
        (-10.0, 0.040_241_238_486_443_191, 0.996_265_044_132_790_06),
        (-7.3, 0.335_770_370_515_147_28, -0.180_095_804_483_293_66),
        (-4.0, -0.070_265_532_949_289_515, -0.790_628_575_368_581_38),
        (-2.0, 0.227_407_428_201_685_58, 0.618_259_020_741_691_04),
        (1.75, 0.050_569_880_805_794_872, -0.072_853_713_762_028_385),
        (3.3, 0.003_787_288_426_826_754_6, -0.007_142_487_785_884_740_1),
        (6.7, 1.660_343_478_187_534_6e-6, -4.357_584_163_297_769_8e-6),
        (9.99, 1.140_517_695_637_491_5e-10, -3.632_831_449_485_575e-10),
        (25.0, 8.116_026_824_691_386_7e-38, -4.066_089_337_243_281e-37),
    ];

    #[test]
    fn matches_high_precision_reference() {
        for &(x, ai, aip) in REFERENCE {
            let a = airy(x).unwrap();
            assert!((a.ai - ai).abs() <= 1e-12 * ai.abs(), "Ai({x}) = {} vs {ai}", a.ai);
            assert!((a.aip - aip).abs() <= 1e-12 * aip.abs(), "Ai'({x}) = {} vs {aip}", a.aip);
        }
    }

    #[test]
    fn scaled_form_is_continuous_at_the_switch() {
        // table side just below the switch against the expansion at the switch
        let lo = airy_scaled(ASYMPTOTIC_SWITCH * (1.0 - f64::EPSILON)).unwrap();
        let hi = airy_scaled(ASYMPTOTIC_SWITCH).unwrap();
        assert!((lo.ai - hi.ai).abs() < 1e-12 * hi.ai.abs());
        assert!((lo.aip - hi.aip).abs() < 1e-12 * hi.aip.abs());
        let lo = airy(-ASYMPTOTIC_SWITCH * (1.0 - f64::EPSILON)).unwrap();
        let hi = airy(-ASYMPTOTIC_SWITCH).unwrap();
        assert!((lo.ai - hi.ai).abs() < 1e-12);
        assert!((lo.aip - hi.aip).abs() < 1e-11);
    }

    #[test]
    fn scaled_form_survives_underflow() {
        let s = airy_scaled(1.0e5).unwrap();
        assert!(s.ai > 0.0 && s.ai.is_finite());
        assert_eq!(airy(1.0e5).unwrap().ai, 0.0);
        // ratio is the log-derivative
        assert!((s.aip / s.ai + 1.0e5f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn ode_holds_by_finite_differences() {
        let h = 1e-4;
        let mut x = -10.0;
        while x <= 10.0 {
            let p = airy(x + h).unwrap().aip;
            let m = airy(x - h).unwrap().aip;
            let second = (p - m) / (2.0 * h);
            let a = airy(x).unwrap();
            let expected = x * a.ai;
            let scale = expected.abs().max(1e-3 * a.aip.abs()).max(1e-12);
            assert!(
                (second - expected).abs() <= 1e-6 * scale.max(expected.abs()) + 1e-9,
                "x={x}: {second} vs {expected}"
            );
            x += 0.173;
        }
    }

    #[test]
    fn log_derivative_at_origin() {
        let expected = -3f64.powf(1.0 / 3.0) * gamma_fn(2.0 / 3.0).unwrap()
            / gamma_fn(1.0 / 3.0).unwrap();
        let (ai, aip) = maclaurin_oracle(0.0, 30);
        assert!((airy_log_deriv(0.0).unwrap() - expected).abs() < 1e-14);
        assert!((aip / ai - expected).abs() < 1e-14);
    }

    #[test]
    fn log_derivative_large_argument() {
        let l = airy_log_deriv(1.0e4).unwrap();
        assert!((l + 100.0).abs() / 100.0 < 1e-4);
    }

    #[test]
    fn log_derivative_vanishes_at_first_derivative_zero() {
        let x = airy_zero(1, AiryZeroKind::DerivativeZero).unwrap();
        assert!(airy_log_deriv(x).unwrap().abs() < 1e-12);
    }

    #[test]
    fn log_derivative_reports_pole() {
        let x = airy_zero(3, AiryZeroKind::FunctionZero).unwrap();
        assert!(matches!(airy_log_deriv(x), Err(Error::Pole { .. })));
    }

    #[test]
    fn log_derivative_agrees_with_component_ratio() {
        let mut x = -30.0;
        while x < 30.0 {
            let a = airy_scaled(x).unwrap();
            if a.ai.abs() > 1e-3 * a.aip.abs() {
                let l = airy_log_deriv(x).unwrap();
                assert!((l - a.aip / a.ai).abs() <= 1e-9 * l.abs().max(1e-12), "x={x}");
            }
            x += 0.0917;
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(airy(f64::NAN).is_err());
        assert!(airy_log_deriv(f64::INFINITY).is_err());
    }

    #[test]
    fn first_zeros_match_published_digits() {
        let a1 = airy_zero(1, AiryZeroKind::FunctionZero).unwrap();
        let a2 = airy_zero(2, AiryZeroKind::FunctionZero).unwrap();
        let d1 = airy_zero(1, AiryZeroKind::DerivativeZero).unwrap();
        let d2 = airy_zero(2, AiryZeroKind::DerivativeZero).unwrap();
        assert!((a1 + 2.3381).abs() < 5e-5);
        assert!((d1 + 1.0188).abs() < 5e-5);
        assert!((a1 - a2 - 1.7498).abs() < 5e-5);
        assert!((d1 - d2 - 2.2294).abs() < 5e-5);
        assert!((a2 + 4.0879).abs() < 5e-5);
        assert!((d2 + 3.2482).abs() < 5e-5);
        // 16-digit reference values
        assert!((a1 + 2.338_107_410_459_767).abs() < 1e-14);
        assert!((d1 + 1.018_792_971_647_471).abs() < 1e-14);
    }

    #[test]
    fn zeros_are_zeros() {
        for n in 1..=N_EXACT_ZEROS {
            let a = airy_zero(n, AiryZeroKind::FunctionZero).unwrap();
            assert!(airy(a).unwrap().ai.abs() < 1e-12, "n={n}");
            let d = airy_zero(n, AiryZeroKind::DerivativeZero).unwrap();
            assert!(airy(d).unwrap().aip.abs() < 1e-12 * d.abs().sqrt().max(1.0), "n={n}");
        }
    }

    #[test]
    fn zeros_interlace() {
        for n in 1..=50 {
            let d = airy_zero(n, AiryZeroKind::DerivativeZero).unwrap();
            let a = airy_zero(n, AiryZeroKind::FunctionZero).unwrap();
            let d_next = airy_zero(n + 1, AiryZeroKind::DerivativeZero).unwrap();
            assert!(d > a && a > d_next, "n={n}");
        }
        // across the hand-off as well
        for n in 60..70 {
            let a = airy_zero(n, AiryZeroKind::FunctionZero).unwrap();
            let a_next = airy_zero(n + 1, AiryZeroKind::FunctionZero).unwrap();
            let d_next = airy_zero(n + 1, AiryZeroKind::DerivativeZero).unwrap();
            assert!(a > d_next && d_next > a_next);
        }
    }

    #[test]
    fn expansion_hands_off_to_refined_zeros() {
        for kind in [AiryZeroKind::FunctionZero, AiryZeroKind::DerivativeZero] {
            let exact = airy_zero(N_EXACT_ZEROS, kind).unwrap();
            let series = zero_expansion(N_EXACT_ZEROS, kind, true);
            assert!(((exact - series) / exact).abs() < 1e-8);
            // the bare law is visibly coarser but still close
            let bare = airy_zero_leading(N_EXACT_ZEROS, kind).unwrap();
            assert!(((exact - bare) / exact).abs() < 1e-5);
        }
    }

    #[test]
    fn zero_index_is_rejected() {
        assert!(airy_zero(0, AiryZeroKind::FunctionZero).is_err());
    }
}
