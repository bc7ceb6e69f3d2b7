//! Asymptotic Gilbert-Varshamov bound: the rate achievable at relative
//! minimum distance delta, and its inverse.

use crate::error::{Error, Result};
use crate::ring::RingSpec;

use super::saddle::{ball_threshold, sphere_exponent};

/// R(delta) = 1 - log_q f(rho) + delta M log_q rho at the saddle point of
/// the ball of relative radius delta M. Defined for delta M below the
/// saturation threshold; at the threshold the rate hits 0.
pub fn gv_rate(delta: f64, ring: &RingSpec) -> Result<f64> {
    if delta < 0.0 {
        return Err(Error::InvalidParams(format!("delta = {delta} negative")));
    }
    let t = delta * ring.max_weight() as f64;
    let thresh = ball_threshold(ring);
    if t >= thresh {
        if (t - thresh).abs() < 1e-12 {
            return Ok(0.0);
        }
        return Err(Error::InvalidParams(format!(
            "delta = {delta} beyond the GV validity region"
        )));
    }
    Ok(1.0 - sphere_exponent(t, ring)?.exponent)
}

/// Inverse of `gv_rate` by bisection; R(delta) is strictly decreasing from
/// 1 at delta = 0 to 0 at the threshold.
pub fn gv_delta(r: f64, ring: &RingSpec) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParams(format!("rate {r} outside [0, 1]")));
    }
    let m_wt = ring.max_weight() as f64;
    let mut lo = 0.0f64;
    let mut hi = ball_threshold(ring) / m_wt;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let rate = gv_rate(mid, ring)?;
        if rate > r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
