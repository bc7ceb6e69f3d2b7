//! Enumeration of and uniform sampling from Lee spheres.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::counting::sphere_size;
use crate::error::{Error, Result};
use crate::ring::{lee_weight, RingSpec};
use crate::vector::LeeVector;

/// All vectors of (Z/m)^n with Lee weight exactly `w`, in a fixed
/// deterministic order. Intended for the small lists the decoders build.
pub fn enumerate_sphere(n: usize, w: u64, ring: &RingSpec) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    rec(&mut cur, 0, w, ring, &mut out);
    out
}

fn rec(cur: &mut Vec<u64>, pos: usize, remaining: u64, ring: &RingSpec, out: &mut Vec<Vec<u64>>) {
    let n = cur.len();
    if pos == n {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let slots_left = (n - pos) as u64;
    if remaining > slots_left * ring.max_weight() {
        return;
    }
    for x in 0..ring.modulus() {
        let wt = lee_weight(x, ring);
        if wt <= remaining {
            cur[pos] = x;
            rec(cur, pos + 1, remaining - wt, ring, out);
        }
    }
    cur[pos] = 0;
}

/// Uniform sample from the Lee sphere of radius `w`, exact by construction:
/// each coordinate is drawn from its conditional distribution using the
/// sphere-size counts, so the result is uniform over all F_L(n, w, m)
/// vectors. Reproducible from the seed.
pub fn sample_weight_w(n: usize, w: u64, ring: &RingSpec, seed: u64) -> Result<LeeVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_weight_w_rng(n, w, ring, &mut rng)
}

pub fn sample_weight_w_rng(
    n: usize,
    w: u64,
    ring: &RingSpec,
    rng: &mut impl rand::Rng,
) -> Result<LeeVector> {
    let m = ring.modulus();
    let max = n as u64 * ring.max_weight();
    if w > max {
        return Err(Error::WeightOutOfRange { w, max });
    }
    // counts[len][r] = F_L(len, r, m) for the suffix lengths we walk through
    let mut counts: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for len in 0..=n as u64 {
        counts.push((0..=w).map(|r| sphere_size(len, r, m)).collect());
    }

    let mut entries = Vec::with_capacity(n);
    let mut remaining = w;
    for pos in 0..n {
        let suffix_len = n - pos - 1;
        let total = &counts[suffix_len + 1][remaining as usize];
        debug_assert!(!total.is_zero());
        let mut ticket = rng.gen_biguint_below(total);
        let mut chosen = None;
        for x in 0..m {
            let wt = lee_weight(x, ring);
            if wt > remaining {
                continue;
            }
            let below = &counts[suffix_len][(remaining - wt) as usize];
            if &ticket < below {
                chosen = Some((x, wt));
                break;
            }
            ticket -= below;
        }
        let (x, wt) = chosen.expect("conditional counts exhausted");
        entries.push(x);
        remaining -= wt;
    }
    debug_assert_eq!(remaining, 0);
    Ok(LeeVector::new(entries, *ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn enumeration_matches_sphere_size() {
        for m in [3u64, 4, 5, 8] {
            let ring = RingSpec::from_modulus(m).unwrap();
            for n in 1..=4usize {
                for w in 0..=(n as u64 * ring.max_weight()) {
                    let listed = enumerate_sphere(n, w, &ring);
                    let expected = sphere_size(n as u64, w, m).to_usize().unwrap();
                    assert_eq!(listed.len(), expected, "n={n} w={w} m={m}");
                    for v in &listed {
                        let lv = LeeVector::new(v.clone(), ring);
                        assert_eq!(lv.lee_weight(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_weight_is_zero_vector() {
        let ring = RingSpec::new(5, 1).unwrap();
        let v = sample_weight_w(6, 0, &ring, 1).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn unique_max_weight_element_even_modulus() {
        let ring = RingSpec::new(2, 3).unwrap();
        let v = sample_weight_w(1, 4, &ring, 99).unwrap();
        assert_eq!(v.entries(), &[4]);
    }

    #[test]
    fn out_of_range_weight_rejected() {
        let ring = RingSpec::new(5, 1).unwrap();
        assert!(sample_weight_w(2, 5, &ring, 0).is_err());
    }

    #[test]
    fn sampling_hits_requested_weight() {
        let ring = RingSpec::new(3, 2).unwrap();
        for seed in 0..50 {
            let v = sample_weight_w(7, 11, &ring, seed).unwrap();
            assert_eq!(v.lee_weight(), 11);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let ring = RingSpec::new(2, 3).unwrap();
        let a = sample_weight_w(10, 13, &ring, 42).unwrap();
        let b = sample_weight_w(10, 13, &ring, 42).unwrap();
        assert_eq!(a, b);
    }
}
