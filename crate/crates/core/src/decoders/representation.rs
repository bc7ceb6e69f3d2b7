//! Representation technique on `a` levels: the small instance's error is
//! searched as a sum of overlapping halves whose Lee weights exceed the
//! half weight by the overlap eps_i; merges cancel the overlap while
//! filtering on a window of the partial syndrome whose width defaults to
//! the representation-count lower bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_budget, finish, instance_profile, DecodeResult, DecoderConfig, RepTechParams};
use crate::counting::representation_u;
use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::merge::{last_merge, merge};
use crate::sampling::enumerate_sphere;
use crate::vector::LeeVector;

/// Weight schedule v_i = v / 2^(a-i) + sum_{b>=i} eps_b / 2^(b-i); fails if
/// any level weight is fractional.
pub fn weight_schedule(a: u32, v: u64, eps: &[u64]) -> Result<Vec<u64>> {
    let a = a as usize;
    let mut vs = vec![0u64; a + 1];
    vs[a] = v;
    for i in (0..a).rev() {
        // v_i = v_{i+1} / 2 + eps_i
        if vs[i + 1] % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "level weight v_{} = {} is odd and cannot be halved",
                i + 1,
                vs[i + 1]
            )));
        }
        vs[i] = vs[i + 1] / 2 + eps[i];
    }
    Ok(vs)
}

pub fn decode_representation(
    inst: &SdpInstance,
    params: &RepTechParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let ring = inst.ring;
    let n = inst.n();
    let profile = instance_profile(inst, seed)?;
    let big_k = profile.big_k();
    let k1 = profile.k1();
    let &RepTechParams {
        a,
        ell,
        v,
        ref eps,
        ref u,
    } = params;

    if a == 0 {
        return Err(Error::InvalidParams("need at least one level".into()));
    }
    if ell > n - big_k {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} exceeds n - K = {}",
            n - big_k
        )));
    }
    if eps.len() != a as usize {
        return Err(Error::InvalidParams(format!(
            "need {} overlap weights, got {}",
            a,
            eps.len()
        )));
    }
    if v > inst.t {
        return Err(Error::InvalidParams(format!("v = {v} exceeds t = {}", inst.t)));
    }
    let head = big_k + ell;
    let b_rows = head - k1;
    let vs = weight_schedule(a, v, eps)?;
    let max_wt = head as u64 * ring.max_weight();
    for (i, &eps_i) in eps.iter().enumerate() {
        if vs[i + 1] + eps_i > max_wt {
            return Err(Error::InvalidParams(format!(
                "eps_{i} = {eps_i} exceeds M(K + ell) - v_{} = {}",
                i + 1,
                max_wt - vs[i + 1]
            )));
        }
    }

    // windows: defaults from the representation lower bound, last forced to
    // the full syndrome width
    let windows: Vec<usize> = match u {
        Some(u) => {
            if u.len() != a as usize || u.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidParams(
                    "u must be a nondecreasing sequence of length a".into(),
                ));
            }
            if u.last() != Some(&b_rows) {
                return Err(Error::InvalidParams(format!(
                    "u_a must equal K + ell - k1 = {b_rows}"
                )));
            }
            u.clone()
        }
        None => {
            let mut w: Vec<usize> = (1..a as usize)
                .map(|i| representation_u(eps[i - 1], head as u64, &ring).min(b_rows))
                .collect();
            w.push(b_rows);
            if w.windows(2).any(|pair| pair[0] > pair[1]) {
                return Err(Error::InvalidParams(
                    "derived windows are not nondecreasing; override u explicitly".into(),
                ));
            }
            w
        }
    };

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

        let base = enumerate_sphere(head, vs[0], &ring);
        let mut level: Vec<Vec<Vec<u64>>> = vec![base; 1 << a];

        for i in 1..a as usize {
            let pairs = level.len() / 2;
            let mut next = Vec::with_capacity(pairs);
            for j in 0..pairs {
                let target = if j + 1 == pairs { &s2 } else { &zero_target };
                next.push(merge(
                    &level[2 * j],
                    &level[2 * j + 1],
                    windows[i - 1],
                    vs[i],
                    &pg.b,
                    target,
                )?);
            }
            level = next;
        }

        debug_assert_eq!(level.len(), 2);
        if let Some((e1, e2, ext)) = last_merge(
            &level[0],
            &level[1],
            windows[a as usize - 1],
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
    fn schedule_math() {
        // a = 2, v = 4, eps = (1, 2): v_2 = 4, v_1 = 4, v_0 = 3
        assert_eq!(weight_schedule(2, 4, &[1, 2]).unwrap(), vec![3, 4, 4]);
        // odd weight rejected at a = 1
        assert!(weight_schedule(1, 3, &[0]).is_err());
    }

    #[test]
    fn one_level_no_overlap_solves() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(16, 5, 3).unwrap();
        for seed in 0..6 {
            let planted = plant(&profile, 6, &ring, 300 + seed).unwrap();
            let params = RepTechParams {
                a: 1,
                ell: 2,
                v: 2,
                eps: vec![0],
                u: None,
            };
            let res = decode_representation(
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
    fn one_level_with_overlap_solves() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(14, 5, 2).unwrap();
        for seed in 0..4 {
            let planted = plant(&profile, 5, &ring, 410 + seed).unwrap();
            let params = RepTechParams {
                a: 1,
                ell: 1,
                v: 2,
                eps: vec![1],
                u: None,
            };
            let res = decode_representation(
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
    fn two_levels_solve() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(12, 4, 2).unwrap();
        for seed in 0..3 {
            let planted = plant(&profile, 6, &ring, 550 + seed).unwrap();
            let params = RepTechParams {
                a: 2,
                ell: 2,
                v: 4,
                eps: vec![0, 0],
                u: None,
            };
            let res = decode_representation(
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
    fn odd_v_rejected_at_one_level() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(16, 5, 3).unwrap();
        let planted = plant(&profile, 6, &ring, 1).unwrap();
        let params = RepTechParams {
            a: 1,
            ell: 2,
            v: 3,
            eps: vec![0],
            u: None,
        };
        assert!(matches!(
            decode_representation(
                &planted.instance,
                &params,
                10,
                0,
                &DecoderConfig::default()
            ),
            Err(Error::InvalidParams(_))
        ));
    }
}
