//! Lee-BJMM: eight base lists over the two halves of the small instance are
//! concatenation-merged on u_0 positions, the four results are
//! representation-merged on u_1 positions, and the final pair is extended
//! and weight-checked.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_budget, finish, instance_profile, BjmmParams, DecodeResult, DecoderConfig};
use crate::counting::representation_u;
use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::merge::{last_merge, merge, merge_concat};
use crate::sampling::enumerate_sphere;
use crate::vector::LeeVector;

pub fn decode_bjmm(
    inst: &SdpInstance,
    params: &BjmmParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let ring = inst.ring;
    let n = inst.n();
    let profile = instance_profile(inst, seed)?;
    let big_k = profile.big_k();
    let k1 = profile.k1();
    let &BjmmParams {
        ell,
        v,
        eps0,
        eps1,
        u0,
        u1,
    } = params;

    if ell > n - big_k {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} exceeds n - K = {}",
            n - big_k
        )));
    }
    if v > inst.t {
        return Err(Error::InvalidParams(format!("v = {v} exceeds t = {}", inst.t)));
    }
    let head = big_k + ell;
    let b_rows = head - k1;
    // weight ladder: v2 = v/2 + eps1, v1 = v2/2 + eps0, v0 = v1/2
    if v % 2 != 0 {
        return Err(Error::InvalidParams("v must be even".into()));
    }
    let v2 = v / 2 + eps1;
    if v2 % 2 != 0 {
        return Err(Error::InvalidParams("v/2 + eps1 must be even".into()));
    }
    let v1 = v2 / 2 + eps0;
    if v1 % 2 != 0 {
        return Err(Error::InvalidParams("v/4 + eps1/2 + eps0 must be even".into()));
    }
    let v0 = v1 / 2;
    let max_wt = head as u64 * ring.max_weight();
    if eps1 > max_wt.saturating_sub(v) || eps0 > max_wt.saturating_sub(v2) {
        return Err(Error::InvalidParams("overlap weights out of range".into()));
    }

    let u1 = u1.unwrap_or_else(|| representation_u(eps1, head as u64, &ring).min(b_rows));
    // a smaller window than the representation bound only enlarges lists,
    // so the derived default may be clamped under u1
    let u0 = u0.unwrap_or_else(|| representation_u(eps0, head as u64, &ring).min(u1));
    if u0 > u1 || u1 > b_rows {
        return Err(Error::InvalidParams(format!(
            "need u0 <= u1 <= K + ell - k1, got {u0}, {u1}, {b_rows}"
        )));
    }

    let half = head / 2;
    let right = head - half;
    if v0 > half as u64 * ring.max_weight() || v0 > right as u64 * ring.max_weight() {
        return Err(Error::InvalidParams(format!(
            "base weight {v0} exceeds half capacity"
        )));
    }

    let w_outer = inst.t - v;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = 0u64;
    loop {
        check_budget(iterations, max_iters)?;
        iterations += 1;

        let pg = match crate::systematic::partial_gaussian_rng(&inst.h, ell, &mut rng) {
            Ok(pg) => pg,
            Err(Error::ShapeUnreachable(_)) => continue,
            Err(e) => return Err(e),
        };
        let s_u = pg.u.mul_vec_transpose(&inst.syndrome)?;
        let s1 = LeeVector::new(s_u.entries()[..n - big_k - ell].to_vec(), ring);
        let s2 = LeeVector::new(s_u.entries()[n - big_k - ell..].to_vec(), ring);
        let zero_target = LeeVector::zero(b_rows, ring);

        let left_frags = enumerate_sphere(half, v0, &ring);
        let right_frags = enumerate_sphere(right, v0, &ring);
        let b_left = pg.b.block(0, b_rows, 0, half);
        let b_right = pg.b.block(0, b_rows, half, head);

        // level 1: four concatenation merges; only the last targets s2
        let mut level1 = Vec::with_capacity(4);
        for j in 0..4 {
            let target = if j == 3 { &s2 } else { &zero_target };
            level1.push(merge_concat(
                &left_frags,
                &right_frags,
                u0,
                &b_left,
                &b_right,
                target,
            )?);
        }

        // level 2: two representation merges
        let l2_zero = merge(&level1[0], &level1[1], u1, v2, &pg.b, &zero_target)?;
        let l2_s2 = merge(&level1[2], &level1[3], u1, v2, &pg.b, &s2)?;

        if let Some((e1, e2, ext)) = last_merge(
            &l2_zero,
            &l2_s2,
            b_rows,
            v,
            &pg.b,
            &s2,
            &s1,
            &pg.a,
            w_outer,
            config.early_abort,
        )? {
            let mut permuted: Vec<u64> = e1
                .iter()
                .zip(&e2)
                .map(|(&x, &y)| ring.add(x, y))
                .collect();
            permuted.extend(ext);
            return finish(inst, permuted, |x| pg.unpermute(x), iterations);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::plant;
    use crate::ring::RingSpec;
    use crate::systematic::CodeType;

    #[test]
    fn solves_planted_z4() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(14, 5, 2).unwrap();
        for seed in 0..4 {
            let planted = plant(&profile, 6, &ring, 620 + seed).unwrap();
            // v = 4 splits as v2 = 2, v1 = 2 (overlap 1), v0 = 1
            let params = BjmmParams {
                ell: 1,
                v: 4,
                eps0: 1,
                eps1: 0,
                u0: None,
                u1: None,
            };
            let res = decode_bjmm(
                &planted.instance,
                &params,
                300_000,
                seed,
                &DecoderConfig::default(),
            )
            .unwrap();
            assert!(planted
                .instance
                .verify_solution_exact(&res.error_vector)
                .unwrap());
        }
    }

    #[test]
    fn degenerate_overlaps_still_correct() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(12, 4, 2).unwrap();
        let planted = plant(&profile, 9, &ring, 9).unwrap();
        let params = BjmmParams {
            ell: 2,
            v: 8,
            eps0: 0,
            eps1: 0,
            u0: Some(0),
            u1: Some(0),
        };
        let res = decode_bjmm(
            &planted.instance,
            &params,
            300_000,
            2,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(planted
            .instance
            .verify_solution_exact(&res.error_vector)
            .unwrap());
    }

    #[test]
    fn zero_syndrome_zero_weight() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(12, 4, 2).unwrap();
        let planted = plant(&profile, 0, &ring, 5).unwrap();
        let params = BjmmParams {
            ell: 1,
            v: 0,
            eps0: 0,
            eps1: 0,
            u0: None,
            u1: None,
        };
        let res = decode_bjmm(
            &planted.instance,
            &params,
            64,
            3,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(res.error_vector.is_zero());
    }

    #[test]
    fn overlap_with_representation_solves() {
        let ring = RingSpec::new(3, 1).unwrap();
        let profile = CodeType::free(12, 5, 1).unwrap();
        for seed in 0..3 {
            let planted = plant(&profile, 5, &ring, 710 + seed).unwrap();
            let params = BjmmParams {
                ell: 1,
                v: 4,
                eps0: 1,
                eps1: 0,
                u0: None,
                u1: None,
            };
            let res = decode_bjmm(
                &planted.instance,
                &params,
                300_000,
                seed,
                &DecoderConfig::default(),
            )
            .unwrap();
            assert!(planted
                .instance
                .verify_solution_exact(&res.error_vector)
                .unwrap());
        }
    }
}
