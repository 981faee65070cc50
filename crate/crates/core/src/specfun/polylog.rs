//! Real polylogarithm `Li_s(z) = Σ_{k≥1} z^k / k^s`.
//!
//! Direct summation for `0 <= z <= 0.9999`; for `-1 <= z < 0` the series
//! alternates and is summed with the Cohen-Rodriguez Villegas-Zagier
//! acceleration, which stays accurate up to and including `z = -1`.

use crate::error::{Error, Result};

/// Largest fugacity admitted on the positive side.
pub const POLYLOG_Z_MAX: f64 = 0.9999;

const ALTERNATING_TERMS: usize = 48;

pub fn polylog(s: f64, z: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain {
            function: "polylog",
            value: s,
            reason: "order must be positive and finite",
        });
    }
    if !z.is_finite() || z > POLYLOG_Z_MAX || z < -1.0 {
        return Err(Error::PolylogDomain { z });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z > 0.0 {
        Ok(positive_series(s, z))
    } else {
        Ok(-alternating(|k| (-z).powi(k as i32 + 1) / ((k + 1) as f64).powf(s)))
    }
}

fn positive_series(s: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zk = 1.0;
    let tail = z / (1.0 - z);
    for k in 1usize.. {
        zk *= z;
        let term = zk / (k as f64).powf(s);
        sum += term;
        // remaining terms are bounded by a geometric series
        if term * tail < 1e-15 * sum {
            break;
        }
    }
    sum
}

/// `Σ_{k≥0} (-1)^k a_k` for a totally monotone sequence `a_k`.
fn alternating(a: impl Fn(usize) -> f64) -> f64 {
    let n = ALTERNATING_TERMS;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}
