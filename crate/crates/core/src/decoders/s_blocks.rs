//! The s-blocks algorithm: walks the graded structure of the systematic
//! parity-check matrix. The weight-v_1 part of the error fixes the next
//! block modulo p through the last block row, each lift is filtered by its
//! Lee weight, and so on up the tower until the identity block determines
//! the part outside the information set.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_budget, finish, instance_profile, DecodeResult, DecoderConfig, SBlocksParams};
use super::{decode_two_blocks, TwoBlocksParams};
use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::ring::lee_weight;
use crate::sampling::enumerate_sphere;
use crate::systematic::{systematic_form_rng, SystematicForm};
use crate::vector::LeeVector;

pub fn decode_s_blocks(
    inst: &SdpInstance,
    params: &SBlocksParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let ring = inst.ring;
    let s = ring.s() as usize;
    let profile = instance_profile(inst, seed)?;
    let big_k = profile.big_k();

    if s == 1 {
        // no graded structure to exploit; fall back to Lee-Brickell
        let tb = TwoBlocksParams::lee_brickell(big_k, params.v);
        return decode_two_blocks(inst, &tb, max_iters, seed, config);
    }

    if params.v > inst.t || params.v > big_k as u64 * ring.max_weight() {
        return Err(Error::InvalidParams(format!(
            "information-set weight v = {} out of range",
            params.v
        )));
    }
    let splits: Vec<Vec<u64>> = match &params.fixed_split {
        Some(split) => {
            if split.len() != s || split.iter().sum::<u64>() != params.v {
                return Err(Error::InvalidParams(
                    "fixed split must have s parts summing to v".into(),
                ));
            }
            vec![split.clone()]
        }
        None => weak_compositions(params.v, s)
            .into_iter()
            .filter(|split| feasible_split(split, &profile.k_profile, ring.max_weight()))
            .collect(),
    };
    if splits.is_empty() {
        return Err(Error::InvalidParams(
            "no feasible weight distribution for this profile".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = 0u64;
    loop {
        check_budget(iterations, max_iters)?;
        iterations += 1;

        let sf = match systematic_form_rng(&inst.h, &mut rng) {
            Ok(sf) => sf,
            Err(Error::RankDeficient(_)) | Err(Error::ZeroMatrix) => continue,
            Err(e) => return Err(e),
        };
        let s_u = sf.u.mul_vec_transpose(&inst.syndrome)?;

        for split in &splits {
            if let Some(permuted) = search_split(inst, &sf, &s_u, split, config)? {
                return finish(inst, permuted, |x| sf.unpermute(x), iterations);
            }
        }
    }
}

/// All weak compositions of v into s nonnegative parts.
pub fn weak_compositions(v: u64, s: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; s];
    fn rec(cur: &mut Vec<u64>, idx: usize, left: u64, out: &mut Vec<Vec<u64>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[idx] = x;
            rec(cur, idx + 1, left - x, out);
        }
    }
    rec(&mut cur, 0, v, &mut out);
    out
}

fn feasible_split(split: &[u64], k_profile: &[usize], max_wt: u64) -> bool {
    split
        .iter()
        .zip(k_profile)
        .all(|(&v_j, &k_j)| v_j <= k_j as u64 * max_wt)
}

/// Layout of the systematic form as the s-blocks recursion sees it.
struct Layout {
    /// col_off[j] = first column of group j (1-based groups 1..=s+1)
    col_off: Vec<usize>,
    /// row_off[i] = first row of block row i (1-based 1..=s)
    row_off: Vec<usize>,
    p_pow: Vec<u64>,
}

fn layout(sf: &SystematicForm, s: usize, p: u64) -> Layout {
    let profile = &sf.profile;
    let n = profile.n;
    let big_k = profile.big_k();
    let mut col_off = vec![0usize; s + 2];
    for j in 1..=s {
        col_off[j] = col_off[j - 1] + profile.k_profile[j - 1];
    }
    col_off[s + 1] = n;
    // block row 1 = n-K unit rows; block row i >= 2 has k_{s-i+2} rows
    let mut row_off = vec![0usize; s + 1];
    row_off[1] = 0;
    let mut acc = n - big_k;
    for i in 2..=s {
        row_off[i] = acc;
        acc += profile.k_profile[s - i + 2 - 1];
    }
    let mut p_pow = vec![1u64; s + 1];
    for i in 1..=s {
        p_pow[i] = p_pow[i - 1] * p;
    }
    Layout {
        col_off,
        row_off,
        p_pow,
    }
}

fn search_split(
    inst: &SdpInstance,
    sf: &SystematicForm,
    s_u: &LeeVector,
    split: &[u64],
    config: &DecoderConfig,
) -> Result<Option<Vec<u64>>> {
    let ring = inst.ring;
    let s = ring.s() as usize;
    let lay = layout(sf, s, ring.p());
    let k1 = sf.profile.k1();
    let t_outer = inst.t - split.iter().sum::<u64>();

    let mut stacked = vec![0u64; sf.profile.big_k()];
    let mut found = None;
    for e1 in enumerate_sphere(k1, split[0], &ring) {
        stacked[..k1].copy_from_slice(&e1);
        if extend_stage(inst, sf, s_u, split, &lay, &mut stacked, 2, t_outer, config, &mut found)? {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Recursion over the groups j = 2..=s; on success fills `found` with the
/// full permuted error vector.
#[allow(clippy::too_many_arguments)]
fn extend_stage(
    inst: &SdpInstance,
    sf: &SystematicForm,
    s_u: &LeeVector,
    split: &[u64],
    lay: &Layout,
    stacked: &mut Vec<u64>,
    j: usize,
    t_outer: u64,
    config: &DecoderConfig,
    found: &mut Option<Vec<u64>>,
) -> Result<bool> {
    let ring = inst.ring;
    let s = ring.s() as usize;
    if j == s + 1 {
        // identity block determines the part outside the information set
        let n_k = sf.profile.n - sf.profile.big_k();
        let mut outer = Vec::with_capacity(n_k);
        let mut wt = 0u64;
        for r in 0..n_k {
            let mut acc: u128 = 0;
            for (c, &x) in stacked.iter().enumerate() {
                acc += sf.h_sys.get(r, c) as u128 * x as u128;
            }
            let val = ring.sub(s_u.get(r), (acc % ring.modulus() as u128) as u64);
            wt += lee_weight(val, &ring);
            outer.push(val);
            if config.early_abort && wt > t_outer {
                return Ok(false);
            }
        }
        if wt != t_outer {
            return Ok(false);
        }
        let mut permuted = stacked.clone();
        permuted.extend(outer);
        *found = Some(permuted);
        return Ok(true);
    }

    let k_j = sf.profile.k_profile[j - 1];
    let block_i = s - j + 2; // block row determining group j
    let lift = lay.p_pow[block_i - 1];
    let modulus_j = lay.p_pow[j - 1]; // e_j is fixed modulo p^{j-1}
    let lifts = lay.p_pow[s - j + 1]; // number of lifts per coordinate

    // residual of block row i over the stacked prefix
    let rows = lay.row_off[block_i]..lay.row_off[block_i] + k_j;
    let prefix_cols = lay.col_off[j - 1];
    let mut base = Vec::with_capacity(k_j);
    for r in rows {
        let mut acc: u128 = 0;
        for c in 0..prefix_cols {
            acc += sf.h_sys.get(r, c) as u128 * stacked[c] as u128;
        }
        let val = ring.sub(s_u.get(r), (acc % ring.modulus() as u128) as u64);
        if val % lift != 0 {
            // inconsistent syndrome residue for this permutation
            return Ok(false);
        }
        base.push(val / lift % modulus_j);
    }

    if k_j == 0 {
        if split[j - 1] != 0 {
            return Ok(false);
        }
        return extend_stage(inst, sf, s_u, split, lay, stacked, j + 1, t_outer, config, found);
    }

    // enumerate e_j in base + p^{j-1} * (lifts)^{k_j} of weight split[j-1]
    let target = split[j - 1];
    let col0 = lay.col_off[j - 1];
    enumerate_lifts(
        &base, lifts, modulus_j, target, &ring, /* pos */ 0, /* acc_wt */ 0, stacked, col0,
        &mut |stacked| extend_stage(inst, sf, s_u, split, lay, stacked, j + 1, t_outer, config, found),
    )
}

#[allow(clippy::too_many_arguments)]
fn enumerate_lifts(
    base: &[u64],
    lifts: u64,
    modulus_j: u64,
    target: u64,
    ring: &crate::ring::RingSpec,
    pos: usize,
    acc_wt: u64,
    stacked: &mut Vec<u64>,
    col0: usize,
    on_complete: &mut dyn FnMut(&mut Vec<u64>) -> Result<bool>,
) -> Result<bool> {
    if pos == base.len() {
        if acc_wt == target {
            return on_complete(stacked);
        }
        return Ok(false);
    }
    let slots_left = (base.len() - pos) as u64;
    if target - acc_wt > slots_left * ring.max_weight() {
        return Ok(false);
    }
    for y in 0..lifts {
        let val = (base[pos] + modulus_j * y) % ring.modulus();
        let wt = lee_weight(val, ring);
        if acc_wt + wt > target {
            continue;
        }
        stacked[col0 + pos] = val;
        if enumerate_lifts(
            base,
            lifts,
            modulus_j,
            target,
            ring,
            pos + 1,
            acc_wt + wt,
            stacked,
            col0,
            on_complete,
        )? {
            return Ok(true);
        }
    }
    stacked[col0 + pos] = 0;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::plant;
    use crate::ring::RingSpec;
    use crate::systematic::CodeType;

    #[test]
    fn weak_compositions_count() {
        assert_eq!(weak_compositions(4, 2).len(), 5);
        assert_eq!(weak_compositions(0, 3), vec![vec![0, 0, 0]]);
        // binom(v+s-1, s-1) = binom(6, 2) = 15
        assert_eq!(weak_compositions(4, 3).len(), 15);
    }

    #[test]
    fn solves_planted_z4_instances() {
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::new(14, vec![3, 3]).unwrap();
        for seed in 0..6 {
            let planted = plant(&profile, 5, &ring, 500 + seed).unwrap();
            let params = SBlocksParams {
                v: 2,
                fixed_split: None,
            };
            let res = decode_s_blocks(
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
    fn fixed_split_variant_solves() {
        let ring = RingSpec::new(3, 2).unwrap();
        let profile = CodeType::new(12, vec![2, 3]).unwrap();
        for seed in 0..6 {
            let planted = plant(&profile, 6, &ring, 900 + seed).unwrap();
            let params = SBlocksParams {
                v: 2,
                fixed_split: Some(vec![1, 1]),
            };
            match decode_s_blocks(
                &planted.instance,
                &params,
                50_000,
                seed,
                &DecoderConfig::default(),
            ) {
                Ok(res) => assert!(planted
                    .instance
                    .verify_solution_exact(&res.error_vector)
                    .unwrap()),
                Err(Error::IterationBudgetExhausted(_)) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn zero_split_prange_on_redundancy() {
        // all weight outside the information set
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::new(10, vec![2, 2]).unwrap();
        let mut solved = 0;
        for seed in 0..10 {
            let planted = plant(&profile, 2, &ring, 40 + seed).unwrap();
            let params = SBlocksParams {
                v: 0,
                fixed_split: Some(vec![0, 0]),
            };
            if let Ok(res) = decode_s_blocks(
                &planted.instance,
                &params,
                20_000,
                seed,
                &DecoderConfig::default(),
            ) {
                assert!(planted
                    .instance
                    .verify_solution_exact(&res.error_vector)
                    .unwrap());
                solved += 1;
            }
        }
        assert!(solved > 0);
    }

    #[test]
    fn free_code_degenerate_blocks() {
        // k_2 = 0: the lift sets have dimension zero and stage 2 only checks
        // the zero weight
        let ring = RingSpec::new(2, 2).unwrap();
        let profile = CodeType::free(12, 4, 2).unwrap();
        let planted = plant(&profile, 4, &ring, 77).unwrap();
        let params = SBlocksParams {
            v: 1,
            fixed_split: None,
        };
        let res = decode_s_blocks(
            &planted.instance,
            &params,
            200_000,
            3,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(planted
            .instance
            .verify_solution_exact(&res.error_vector)
            .unwrap());
    }

    #[test]
    fn s1_delegates_to_two_blocks() {
        let ring = RingSpec::new(5, 1).unwrap();
        let profile = CodeType::free(12, 4, 1).unwrap();
        let planted = plant(&profile, 4, &ring, 11).unwrap();
        let params = SBlocksParams {
            v: 1,
            fixed_split: None,
        };
        let res = decode_s_blocks(
            &planted.instance,
            &params,
            200_000,
            5,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(planted
            .instance
            .verify_solution_exact(&res.error_vector)
            .unwrap());
    }
}
