//! log2 tables of Lee sphere sizes and ball volumes for all lengths up to n,
//! derived from the exact big-integer counts (no floating intermediate
//! ratios: each entry is the log2 of an exactly computed integer).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::ring::RingSpec;

pub const NEG_INF: f64 = f64::NEG_INFINITY;

/// log2 of an exact count; -inf for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return NEG_INF;
    }
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}

#[derive(Debug)]
pub struct SphereTable {
    ring: RingSpec,
    max_len: usize,
    /// log2_f[len][w] = log2 F_L(len, w, q), w = 0..=len*M
    log2_f: Vec<Vec<f64>>,
    /// log2_v[len][w] = log2 V_L(len, w, q)
    log2_v: Vec<Vec<f64>>,
}

impl SphereTable {
    /// Builds the full triangle of sphere/ball log-sizes by iterating the
    /// weight-enumerator convolution one length at a time; a prefix-sum
    /// keeps each coefficient update O(1) big-integer additions.
    pub fn build(ring: &RingSpec, max_len: usize) -> Self {
        let m = ring.modulus();
        let big_m = (m / 2) as usize;
        let even = m % 2 == 0;

        let mut log2_f = Vec::with_capacity(max_len + 1);
        let mut log2_v = Vec::with_capacity(max_len + 1);
        log2_f.push(vec![0.0]);
        log2_v.push(vec![0.0]);

        let mut row: Vec<BigUint> = vec![BigUint::one()];
        for len in 1..=max_len {
            let wcap = len * big_m;
            let mut prefix = Vec::with_capacity(row.len() + 1);
            prefix.push(BigUint::zero());
            for x in &row {
                let next = prefix.last().unwrap() + x;
                prefix.push(next);
            }
            let prev_cap = row.len() - 1;
            let at = |w: usize| -> &BigUint {
                if w <= prev_cap {
                    &row[w]
                } else {
                    &prefix[0] // zero
                }
            };
            let mut next_row = Vec::with_capacity(wcap + 1);
            for w in 0..=wcap {
                let mut val = at(w).clone();
                if w >= 1 {
                    let hi = w.min(prev_cap + 1);
                    let lo = if even {
                        w.saturating_sub(big_m - 1).min(hi)
                    } else {
                        w.saturating_sub(big_m).min(hi)
                    };
                    val += (&prefix[hi] - &prefix[lo]) << 1;
                    if even && w >= big_m && w - big_m <= prev_cap {
                        val += &row[w - big_m];
                    }
                }
                next_row.push(val);
            }
            row = next_row;

            let mut f_log = Vec::with_capacity(wcap + 1);
            let mut v_log = Vec::with_capacity(wcap + 1);
            let mut acc = BigUint::zero();
            for x in &row {
                f_log.push(log2_biguint(x));
                acc += x;
                v_log.push(log2_biguint(&acc));
            }
            log2_f.push(f_log);
            log2_v.push(v_log);
        }

        SphereTable {
            ring: *ring,
            max_len,
            log2_f,
            log2_v,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// log2 F_L(len, w, q); -inf outside the weight range.
    pub fn log_f(&self, len: usize, w: u64) -> f64 {
        assert!(len <= self.max_len, "length {len} beyond table");
        let row = &self.log2_f[len];
        if (w as usize) < row.len() {
            row[w as usize]
        } else {
            NEG_INF
        }
    }

    /// log2 V_L(len, w, q); weights beyond len*M clamp to the whole space.
    pub fn log_v(&self, len: usize, w: u64) -> f64 {
        assert!(len <= self.max_len, "length {len} beyond table");
        let row = &self.log2_v[len];
        let idx = (w as usize).min(row.len() - 1);
        row[idx]
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }
}

/// log2 of a sum given the log2 of its terms; skips -inf terms.
pub fn log2_sum(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(NEG_INF, f64::max);
    if max == NEG_INF {
        return NEG_INF;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp2()).sum();
    max + sum.log2()
}

/// log2 of (L + 1) * log2(L) given log2(L): the cost of looking a list up
/// once per element. Tiny lists contribute at most a couple of bits.
pub fn log2_lookup_cost(l_log: f64) -> f64 {
    if l_log == NEG_INF {
        return NEG_INF;
    }
    log2_sum(&[l_log, 0.0]) + l_log.max(1.0).log2()
}

/// log2 of log2(L!) via the leading Stirling term L (log2 L - log2 e).
pub fn log2_factorial_log(l_log: f64) -> f64 {
    if l_log == NEG_INF {
        return NEG_INF;
    }
    if l_log < 10.0 {
        // small lists: evaluate exactly
        let l = l_log.exp2().floor() as u64;
        let v: f64 = (2..=l).map(|i| (i as f64).log2()).sum();
        return if v <= 0.0 { NEG_INF } else { v.log2() };
    }
    l_log + (l_log - std::f64::consts::LOG2_E).max(1.0).log2()
}
