//! Saddle-point exponents of coefficient growth: for a generating
//! polynomial f with nonnegative coefficients and a relative weight T, the
//! exponent of [x^{Tn}] f(x)^n is log_q f(rho) - T log_q rho at the unique
//! positive root of Delta(x) = x f'(x) / f(x) = T.

use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Polynomial with nonnegative coefficients c_0..c_d, c_0 > 0.
#[derive(Debug, Clone)]
pub struct GeneratingPoly {
    coeffs: Vec<f64>,
}

impl GeneratingPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty() && coeffs[0] > 0.0);
        GeneratingPoly { coeffs }
    }

    /// Weight enumerator of one Lee coordinate: 1 + 2x + .. + 2x^M for odd
    /// modulus, 1 + 2x + .. + 2x^(M-1) + x^M for even.
    pub fn lee_sphere(ring: &RingSpec) -> Self {
        let m_wt = ring.max_weight() as usize;
        let mut coeffs = vec![2.0; m_wt + 1];
        coeffs[0] = 1.0;
        if ring.modulus() % 2 == 0 {
            coeffs[m_wt] = 1.0;
        }
        GeneratingPoly::new(coeffs)
    }

    /// Enumerator 1 + x + .. + x^eta of one coordinate with parts bounded by
    /// eta (the representation-count combinatorics).
    pub fn bounded_parts(eta: usize) -> Self {
        GeneratingPoly::new(vec![1.0; eta + 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Delta(x) = x f'(x) / f(x); strictly increasing on (0, inf) for our
    /// polynomials, with range [0, degree).
    pub fn delta(&self, x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        let mut pow = 1.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            num += i as f64 * c * pow;
            den += c * pow;
            pow *= x;
        }
        num / den
    }
}

/// A solved saddle point.
#[derive(Debug, Clone, Copy)]
pub struct SaddlePoint {
    pub rho: f64,
    pub f_rho: f64,
    /// log_q f(rho) - T log_q rho
    pub exponent: f64,
}

const BISECTION_ITERS: usize = 200;

/// Solves Delta(rho) = t by bisection and reports the coefficient exponent
/// in base-q units. Requires 0 <= t < degree.
pub fn saddle_exponent(poly: &GeneratingPoly, t: f64, q: f64) -> Result<SaddlePoint> {
    if !(0.0..poly.degree() as f64).contains(&t) {
        return Err(Error::InvalidParams(format!(
            "relative weight {t} outside [0, {})",
            poly.degree()
        )));
    }
    if t == 0.0 {
        return Ok(SaddlePoint {
            rho: 0.0,
            f_rho: poly.eval(0.0),
            exponent: 0.0,
        });
    }
    let mut hi = 1.0f64;
    while poly.delta(hi) <= t {
        hi *= 2.0;
        if hi > 1e18 {
            return Err(Error::InvalidParams(format!(
                "no saddle point below overflow for T = {t}"
            )));
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        if poly.delta(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    let f_rho = poly.eval(rho);
    let exponent = (f_rho.ln() - t * rho.ln()) / q.ln();
    Ok(SaddlePoint {
        rho,
        f_rho,
        exponent,
    })
}

/// Exponent of the Lee sphere F_L(n, Tn, q)^(1/n) in base q.
pub fn sphere_exponent(t: f64, ring: &RingSpec) -> Result<SaddlePoint> {
    let poly = GeneratingPoly::lee_sphere(ring);
    saddle_exponent(&poly, t, ring.modulus() as f64)
}

/// Threshold above which the ball volume exponent saturates at 1:
/// M(M+1)/(2M+1) for odd q, M/2 for even q (where Delta(1) = threshold).
pub fn ball_threshold(ring: &RingSpec) -> f64 {
    let m_wt = ring.max_weight() as f64;
    if ring.modulus() % 2 == 1 {
        m_wt * (m_wt + 1.0) / (2.0 * m_wt + 1.0)
    } else {
        m_wt / 2.0
    }
}

/// Exponent of the Lee ball V_L(n, Tn, q)^(1/n) in base q: equals the
/// sphere exponent below the threshold and 1 beyond it.
pub fn ball_exponent(t: f64, ring: &RingSpec) -> Result<f64> {
    if t >= ball_threshold(ring) {
        return Ok(1.0);
    }
    Ok(sphere_exponent(t, ring)?.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weight_point() {
        let ring = RingSpec::new(7, 1).unwrap();
        let sp = sphere_exponent(0.0, &ring).unwrap();
        assert_eq!(sp.exponent, 0.0);
        assert_eq!(sp.rho, 0.0);
    }

    #[test]
    fn threshold_gives_rho_one_and_exponent_one() {
        for m in [5u64, 7, 49] {
            let ring = RingSpec::from_modulus(m).unwrap();
            let m_wt = ring.max_weight() as f64;
            let t = m_wt * (m_wt + 1.0) / (2.0 * m_wt + 1.0);
            let sp = sphere_exponent(t, &ring).unwrap();
            assert!((sp.rho - 1.0).abs() < 1e-9, "m={m} rho={}", sp.rho);
            assert!((sp.exponent - 1.0).abs() < 1e-9);
            assert!((ball_exponent(t, &ring).unwrap() - 1.0).abs() < 1e-12);
        }
        for m in [4u64, 8, 256] {
            let ring = RingSpec::from_modulus(m).unwrap();
            let t = ring.max_weight() as f64 / 2.0;
            let sp = sphere_exponent(t, &ring).unwrap();
            assert!((sp.rho - 1.0).abs() < 1e-9);
            assert!((sp.exponent - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn saddle_residual_is_tiny() {
        let ring = RingSpec::new(7, 2).unwrap();
        let poly = GeneratingPoly::lee_sphere(&ring);
        for t in [0.5, 3.0, 7.7, 15.0, 22.0] {
            let sp = saddle_exponent(&poly, t, 49.0).unwrap();
            assert!((poly.delta(sp.rho) - t).abs() < 1e-10, "T={t}");
        }
    }

    #[test]
    fn delta_monotone() {
        let ring = RingSpec::new(2, 3).unwrap();
        let poly = GeneratingPoly::lee_sphere(&ring);
        let mut prev = 0.0;
        for i in 1..200 {
            let x = i as f64 * 0.05;
            let d = poly.delta(x);
            assert!(d > prev);
            prev = d;
        }
    }

    #[test]
    fn binary_bounded_parts_is_binomial_exponent() {
        // eta = 1: coefficient of x^(Tn) in (1+x)^n is binom(n, Tn);
        // exponent = H2(T) in base q
        let poly = GeneratingPoly::bounded_parts(1);
        let t = 0.3f64;
        let sp = saddle_exponent(&poly, t, 2.0).unwrap();
        let h2 = -(t * t.log2() + (1.0 - t) * (1.0 - t).log2());
        assert!((sp.exponent - h2).abs() < 1e-9);
    }
}
