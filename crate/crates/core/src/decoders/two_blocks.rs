//! The two-blocks algorithm: the information set is split into two blocks
//! carrying v1 and v2 of the error weight, a zero window of size z is
//! assumed error free, and collisions between the two block lists are
//! checked on the zero-window syndrome part together with the graded part
//! of the parity-check matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::list_build::{build_keyed_list, KeyPart};
use super::{check_budget, finish, instance_profile, DecodeResult, DecoderConfig, TwoBlocksParams};
use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::matrix::RingMatrix;
use crate::merge::{extension_with_weight, MergeList};
use crate::ring::RingSpec;
use crate::systematic::systematic_form_rng;
use crate::vector::LeeVector;

pub fn decode_two_blocks(
    inst: &SdpInstance,
    params: &TwoBlocksParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let ring = inst.ring;
    let n = inst.n();
    let profile = instance_profile(inst, seed)?;
    let big_k = profile.big_k();
    validate(params, big_k, n, inst.t, &ring)?;

    let &TwoBlocksParams { m1, m2, z, v1, v2 } = params;
    let w_outer = inst.t - v1 - v2;
    let p = ring.p();
    let small_mod = ring.modulus() / p; // p^{s-1}; 1 when s = 1

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations: u64 = 0;
    loop {
        check_budget(iterations, max_iters)?;
        iterations += 1;

        let sf = match systematic_form_rng(&inst.h, &mut rng) {
            Ok(sf) => sf,
            Err(Error::RankDeficient(_)) | Err(Error::ZeroMatrix) => continue,
            Err(e) => return Err(e),
        };
        debug_assert_eq!(sf.profile.big_k(), big_k);
        let rows = sf.h_sys.rows();
        let n_k = n - big_k;

        // row layout of H_sys: [A (z) | B (n-K-z) | pC (K-k1)] on the first
        // K columns, identity on the rest
        let a = sf.h_sys.block(0, z, 0, big_k);
        let b = sf.h_sys.block(z, n_k, 0, big_k);
        let graded = sf.h_sys.block(n_k, rows, 0, big_k);
        let c = match divide_by_p(&graded, &ring) {
            Some(c) => c,
            None => continue,
        };

        let s_u = sf.u.mul_vec_transpose(&inst.syndrome)?;
        let s1: Vec<u64> = s_u.entries()[0..z].to_vec();
        let s2 = LeeVector::new(s_u.entries()[z..n_k].to_vec(), ring);
        let s3: Vec<u64> = match s_u.entries()[n_k..rows]
            .iter()
            .map(|&x| (x % p == 0).then_some(x / p % small_mod.max(1)))
            .collect()
        {
            Some(v) => v,
            None => continue,
        };

        let parts_x = [
            KeyPart {
                mat: &a,
                col_offset: 0,
                modulus: ring.modulus(),
            },
            KeyPart {
                mat: &c,
                col_offset: 0,
                modulus: small_mod.max(1),
            },
        ];
        let left = build_keyed_list(m1, v1, &ring, &parts_x, config.intermediate_sums);
        let sorted = MergeList::build(
            left.fragments
                .iter()
                .zip(&left.keys)
                .map(|(f, k)| {
                    let mut kk = k.clone();
                    kk.extend(f.iter());
                    kk
                })
                .collect::<Vec<_>>(),
            |joined| joined[..z + c.rows()].to_vec(),
        );

        let parts_y = [
            KeyPart {
                mat: &a,
                col_offset: m1,
                modulus: ring.modulus(),
            },
            KeyPart {
                mat: &c,
                col_offset: m1,
                modulus: small_mod.max(1),
            },
        ];
        let right = build_keyed_list(m2, v2, &ring, &parts_y, config.intermediate_sums);

        for (f2, k2) in right.fragments.iter().zip(&right.keys) {
            // want e1 A^T = s1 - e2 A^T and e1 C^T = s3 - e2 C^T
            let mut want = Vec::with_capacity(z + c.rows());
            for (i, &s) in s1.iter().enumerate() {
                want.push(ring.sub(s, k2[i]));
            }
            for (i, &s) in s3.iter().enumerate() {
                let sm = small_mod.max(1);
                want.push((s + sm - k2[z + i] % sm) % sm);
            }
            for (_, joined) in sorted.matches(&want) {
                let f1 = &joined[z + c.rows()..];
                let mut e_i = vec![0u64; big_k];
                e_i[..m1].copy_from_slice(f1);
                e_i[m1..].copy_from_slice(f2);
                if let Some(e_j) =
                    extension_with_weight(&b, &s2, &e_i, w_outer, config.early_abort)
                {
                    let mut permuted = e_i;
                    permuted.extend(std::iter::repeat(0).take(z));
                    permuted.extend(e_j);
                    return finish(inst, permuted, |x| sf.unpermute(x), iterations);
                }
            }
        }
    }
}

/// The graded rows are p * C with C over Z/p^{s-1}; fails on any entry not
/// divisible by p (the permutation cannot carry a solution then).
fn divide_by_p(graded: &RingMatrix, ring: &RingSpec) -> Option<RingMatrix> {
    let p = ring.p();
    let small = (ring.modulus() / p).max(1);
    let mut c = RingMatrix::zero(graded.rows(), graded.cols(), *ring);
    for r in 0..graded.rows() {
        for col in 0..graded.cols() {
            let x = graded.get(r, col);
            if x % p != 0 {
                return None;
            }
            c.set(r, col, x / p % small);
        }
    }
    Some(c)
}

fn validate(
    params: &TwoBlocksParams,
    big_k: usize,
    n: usize,
    t: u64,
    ring: &RingSpec,
) -> Result<()> {
    let &TwoBlocksParams { m1, m2, z, v1, v2 } = params;
    if m1 + m2 != big_k {
        return Err(Error::InvalidParams(format!(
            "m1 + m2 = {} but K = {big_k}",
            m1 + m2
        )));
    }
    if z >= n - big_k && !(z == 0 && n == big_k) {
        return Err(Error::InvalidParams(format!(
            "zero window z = {z} must be smaller than n - K = {}",
            n - big_k
        )));
    }
    let m_wt = ring.max_weight();
    if v1 > m_wt * m1 as u64 || v2 > m_wt * m2 as u64 {
        return Err(Error::InvalidParams(
            "block weight exceeds the block's maximal Lee weight".into(),
        ));
    }
    if v1 + v2 > t {
        return Err(Error::InvalidParams(format!(
            "v1 + v2 = {} exceeds t = {t}",
            v1 + v2
        )));
    }
    let outer = t - v1 - v2;
    if outer > m_wt * (n - big_k - z) as u64 {
        return Err(Error::InvalidParams(format!(
            "residual weight {outer} cannot fit outside the window"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::plant;
    use crate::systematic::CodeType;

    #[test]
    fn zero_weight_zero_syndrome() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(12, 4, 3).unwrap();
        let planted = plant(&profile, 0, &ring, 5).unwrap();
        let params = TwoBlocksParams {
            m1: 2,
            m2: 2,
            z: 1,
            v1: 0,
            v2: 0,
        };
        let res = decode_two_blocks(
            &planted.instance,
            &params,
            16,
            7,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(res.error_vector.is_zero());
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn solves_planted_instances() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(16, 5, 3).unwrap();
        for seed in 0..8 {
            let planted = plant(&profile, 6, &ring, 100 + seed).unwrap();
            let params = TwoBlocksParams {
                m1: 3,
                m2: 2,
                z: 1,
                v1: 1,
                v2: 1,
            };
            let res = decode_two_blocks(
                &planted.instance,
                &params,
                200_000,
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
    fn both_speedup_settings_agree() {
        let ring = RingSpec::new(3, 2).unwrap();
        let profile = CodeType::new(14, vec![3, 2]).unwrap();
        let planted = plant(&profile, 5, &ring, 31).unwrap();
        let params = TwoBlocksParams {
            m1: 3,
            m2: 2,
            z: 1,
            v1: 1,
            v2: 0,
        };
        let fast = decode_two_blocks(&planted.instance, &params, 100_000, 9, &DecoderConfig::default())
            .unwrap();
        let slow_cfg = DecoderConfig {
            early_abort: false,
            intermediate_sums: false,
        };
        let slow =
            decode_two_blocks(&planted.instance, &params, 100_000, 9, &slow_cfg).unwrap();
        assert_eq!(fast.error_vector, slow.error_vector);
        assert_eq!(fast.iterations, slow.iterations);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let ring = RingSpec::new(5, 1).unwrap();
        let profile = CodeType::free(10, 4, 1).unwrap();
        let planted = plant(&profile, 8, &ring, 3).unwrap();
        // impossible split: all weight in one block of size 1
        let params = TwoBlocksParams {
            m1: 4,
            m2: 0,
            z: 0,
            v1: 0,
            v2: 0,
        };
        let res = decode_two_blocks(
            &planted.instance,
            &params,
            8,
            1,
            &DecoderConfig::default(),
        );
        assert!(matches!(res, Err(Error::IterationBudgetExhausted(8))));
    }
}
