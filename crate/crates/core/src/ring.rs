use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring Z/p^s together with the constants every formula needs: the
/// maximal Lee weight M = floor(p^s / 2), the expected Lee weight mu of a
/// uniform element, and the bit costs of one addition / multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    p: u64,
    s: u32,
    m: u64,
}

impl RingSpec {
    /// Ring Z/p^s. Fails if `p` is not prime, `s` is zero, or p^s overflows.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidParams("exponent s must be positive".into()));
        }
        let mut m: u64 = 1;
        for _ in 0..s {
            m = m
                .checked_mul(p)
                .ok_or_else(|| Error::InvalidParams(format!("{p}^{s} overflows u64")))?;
        }
        Ok(RingSpec { p, s, m })
    }

    /// Ring with modulus `m`, which must be a prime power.
    pub fn from_modulus(m: u64) -> Result<Self> {
        let (p, s) = factor_prime_power(m)
            .ok_or_else(|| Error::InvalidParams(format!("{m} is not a prime power")))?;
        RingSpec::new(p, s)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The modulus m = p^s.
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Maximal Lee weight M = floor(m/2).
    pub fn max_weight(&self) -> u64 {
        self.m / 2
    }

    /// Expected Lee weight of a uniform element: m/4 for p = 2 and
    /// (m^2 - 1)/(4m) for odd p.
    pub fn mu(&self) -> Ratio<u64> {
        if self.p == 2 {
            Ratio::new(self.m, 4)
        } else {
            Ratio::new(self.m * self.m - 1, 4 * self.m)
        }
    }

    pub fn mu_f64(&self) -> f64 {
        let r = self.mu();
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Cost of one addition in binary operations: ceil(log2 m).
    pub fn add_cost(&self) -> u64 {
        ceil_log2(self.m)
    }

    /// Cost of one multiplication in binary operations: ceil(log2 m)^2.
    pub fn mul_cost(&self) -> u64 {
        let c = ceil_log2(self.m);
        c * c
    }

    /// Canonical residue of a signed integer in [0, m).
    pub fn canon(&self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    /// Canonical residue of an unsigned integer.
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.m
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.m
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.m - b % self.m) % self.m
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    /// True iff `x` is a unit of Z/p^s, i.e. not divisible by p.
    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, x: u64) -> Result<u64> {
        if !self.is_unit(x % self.m) {
            return Err(Error::InvalidParams(format!(
                "{x} is not a unit mod {}",
                self.m
            )));
        }
        // extended Euclid on (x, m)
        let (mut r0, mut r1) = (self.m as i64, (x % self.m) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.canon(t0))
    }

    /// p-adic valuation of a residue; `s` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        if x % self.m == 0 {
            return self.s;
        }
        let mut v = 0;
        let mut y = x % self.m;
        while y % self.p == 0 {
            y /= self.p;
            v += 1;
        }
        v
    }
}

/// Lee weight of a residue: min(x, m - x) after canonicalization.
pub fn lee_weight(x: u64, ring: &RingSpec) -> u64 {
    let x = x % ring.modulus();
    x.min(ring.modulus() - x)
}

/// Lee weight over an arbitrary modulus (the counting layer supports any m).
pub fn lee_weight_mod(x: u64, m: u64) -> u64 {
    let x = x % m;
    x.min(m - x)
}

pub(crate) fn ceil_log2(m: u64) -> u64 {
    (64 - (m - 1).leading_zeros()) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn factor_prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut s = 0;
            let mut rest = m;
            while rest % p == 0 {
                rest /= p;
                s += 1;
            }
            return (rest == 1).then_some((p, s));
        }
        p += 1;
    }
    Some((m, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lee_weight_examples() {
        let z7 = RingSpec::new(7, 1).unwrap();
        assert_eq!(lee_weight(0, &z7), 0);
        assert_eq!(lee_weight(5, &z7), 2);
        let z8 = RingSpec::new(2, 3).unwrap();
        assert_eq!(lee_weight(4, &z8), 4);
    }

    #[test]
    fn lee_weight_symmetry() {
        for m in 2..=17u64 {
            for x in 0..m {
                assert_eq!(lee_weight_mod(x, m), lee_weight_mod(m - x, m));
            }
        }
    }

    #[test]
    fn mu_values() {
        let z8 = RingSpec::new(2, 3).unwrap();
        assert_eq!(z8.mu(), Ratio::new(2, 1));
        let z7 = RingSpec::new(7, 1).unwrap();
        assert_eq!(z7.mu(), Ratio::new(48, 28));
        let z841 = RingSpec::new(29, 2).unwrap();
        assert_eq!(z841.mu(), Ratio::new(841 * 841 - 1, 4 * 841));
    }

    #[test]
    fn costs() {
        let z8 = RingSpec::new(2, 3).unwrap();
        assert_eq!(z8.add_cost(), 3);
        assert_eq!(z8.mul_cost(), 9);
        let z841 = RingSpec::new(29, 2).unwrap();
        assert_eq!(z841.add_cost(), 10);
        assert_eq!(z841.mul_cost(), 100);
    }

    #[test]
    fn units_and_inverses() {
        let ring = RingSpec::new(3, 2).unwrap();
        for x in 0..9u64 {
            if ring.is_unit(x) {
                assert_eq!(ring.mul(x, ring.inv(x).unwrap()), 1);
            } else {
                assert!(ring.inv(x).is_err());
            }
        }
    }

    #[test]
    fn valuations() {
        let ring = RingSpec::new(2, 3).unwrap();
        assert_eq!(ring.valuation(0), 3);
        assert_eq!(ring.valuation(4), 2);
        assert_eq!(ring.valuation(6), 1);
        assert_eq!(ring.valuation(5), 0);
    }

    #[test]
    fn prime_power_recognition() {
        assert!(RingSpec::from_modulus(8).is_ok());
        assert!(RingSpec::from_modulus(9).is_ok());
        assert!(RingSpec::from_modulus(29 * 29).is_ok());
        assert!(RingSpec::from_modulus(6).is_err());
        assert!(RingSpec::from_modulus(1).is_err());
    }
}
