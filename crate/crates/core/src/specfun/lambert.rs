//! Principal branch of the Lambert W function on the nonnegative axis.

use crate::error::{Error, Result};

/// `W(x)` with `W e^W = x`, `x >= 0`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "lambert_w",
            value: x,
            reason: "only the principal branch on x >= 0 is supported",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= std::f64::consts::E {
        let l = x.ln_1p();
        let mut w = l * (1.0 - 0.25 * l / (1.0 + l));
        for _ in 0..100 {
            // Halley step on f(w) = w e^w − x
            let ew = w.exp();
            let f = w * ew - x;
            let fp = ew * (w + 1.0);
            let dw = f / (fp - 0.5 * f * (w + 2.0) / (w + 1.0));
            w -= dw;
            if dw.abs() <= 4.0 * f64::EPSILON * w.abs() {
                break;
            }
        }
        return Ok(w);
    }
    // above e, g(w) = w + ln w − ln x is well scaled and never overflows
    let lx = x.ln();
    let mut w = lx - lx.ln();
    for _ in 0..100 {
        let g = w + w.ln() - lx;
        let gp = 1.0 + 1.0 / w;
        let gpp = -1.0 / (w * w);
        let dw = g / (gp - 0.5 * g * gpp / gp);
        w -= dw;
        if dw.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_points() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip_of_t_exp_t() {
        for &t in &[0.5, 2.0, 10.0] {
            let x = t * f64::exp(t);
            assert!((lambert_w(x).unwrap() - t).abs() < 1e-13 * t);
        }
    }

    #[test]
    fn reference_values() {
        // mpmath
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_87).abs() < 1e-15);
        assert!((lambert_w(100.0).unwrap() - 3.385_630_140_290_050_2).abs() < 1e-14);
        assert!((lambert_w(1e300).unwrap() - 684.247_208_629_760_85).abs() < 1e-11);
    }

    #[test]
    fn residual_on_log_grid() {
        for i in 0..=160 {
            let x = 10f64.powf(-8.0 + 0.1 * i as f64);
            let w = lambert_w(x).unwrap();
            let r = (w * w.exp() - x).abs() / x;
            assert!(r <= 1e-12, "x={x}: residual {r}");
        }
    }

    #[test]
    fn negative_is_rejected() {
        assert!(lambert_w(-0.1).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }
}
