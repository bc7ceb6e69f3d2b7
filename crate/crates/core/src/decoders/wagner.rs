//! Wagner's approach on `a` levels after partial Gaussian elimination: the
//! small instance's error is split into 2^a disjoint blocks, per-block lists
//! are concatenation-merged pairwise on growing windows of the partial
//! syndrome, and survivors of the last level are extended through the
//! identity part and weight-checked.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_budget, finish, instance_profile, DecodeResult, DecoderConfig, WagnerParams};
use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::merge::{extension_with_weight, merge_concat};
use crate::sampling::enumerate_sphere;
use crate::vector::LeeVector;

pub fn decode_wagner(
    inst: &SdpInstance,
    params: &WagnerParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let ring = inst.ring;
    let n = inst.n();
    let profile = instance_profile(inst, seed)?;
    let big_k = profile.big_k();
    let k1 = profile.k1();
    let &WagnerParams { a, ell, v, ref u } = params;

    if ell > n - big_k {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} exceeds n - K = {}",
            n - big_k
        )));
    }
    let head = big_k + ell;
    let b_rows = head - k1;
    if u.len() != a as usize || u.windows(2).any(|w| w[0] > w[1]) || u.last() != Some(&b_rows) {
        return Err(Error::InvalidParams(format!(
            "u must be {} nondecreasing windows ending at K + ell - k1 = {b_rows}",
            a
        )));
    }
    if v > inst.t || v > head as u64 * ring.max_weight() {
        return Err(Error::InvalidParams(format!("weight v = {v} out of range")));
    }
    let blocks = 1usize << a;
    if head < blocks {
        return Err(Error::InvalidParams(format!(
            "cannot split {head} positions into {blocks} blocks"
        )));
    }

    // floor split with the remainder on the last block
    let base_len = head / blocks;
    let base_wt = v / blocks as u64;
    let lens: Vec<usize> = (0..blocks)
        .map(|j| {
            if j + 1 == blocks {
                head - base_len * (blocks - 1)
            } else {
                base_len
            }
        })
        .collect();
    let wts: Vec<u64> = (0..blocks)
        .map(|j| {
            if j + 1 == blocks {
                v - base_wt * (blocks as u64 - 1)
            } else {
                base_wt
            }
        })
        .collect();
    for (len, wt) in lens.iter().zip(&wts) {
        if *wt > *len as u64 * ring.max_weight() {
            return Err(Error::InvalidParams(format!(
                "block weight {wt} exceeds capacity of {len} positions"
            )));
        }
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

        // level-0 lists and the column offset each one starts at
        let mut level: Vec<(usize, Vec<Vec<u64>>)> = Vec::with_capacity(blocks);
        let mut off = 0usize;
        for j in 0..blocks {
            level.push((off, enumerate_sphere(lens[j], wts[j], &ring)));
            off += lens[j];
        }

        for i in 1..=a as usize {
            let pairs = level.len() / 2;
            let mut next = Vec::with_capacity(pairs);
            for j in 0..pairs {
                let (off_l, ref left) = level[2 * j];
                let (off_r, ref right) = level[2 * j + 1];
                let b_left = pg.b.block(0, b_rows, off_l, off_r);
                let b_right = pg
                    .b
                    .block(0, b_rows, off_r, off_r + right.first().map_or(0, |f| f.len()));
                let target = if j + 1 == pairs { &s2 } else { &zero_target };
                let joined = merge_concat(left, right, u[i - 1], &b_left, &b_right, target)?;
                next.push((off_l, joined));
            }
            level = next;
        }

        debug_assert_eq!(level.len(), 1);
        for e1 in &level[0].1 {
            if let Some(ext) = extension_with_weight(&pg.a, &s1, e1, w_outer, config.early_abort)
            {
                let mut permuted = e1.clone();
                permuted.extend(ext);
                return finish(inst, permuted, |x| pg.unpermute(x), iterations);
            }
        }
    }
}
