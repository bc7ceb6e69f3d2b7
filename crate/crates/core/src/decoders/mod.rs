//! Information set decoding algorithms for the Lee metric over Z/p^s.

mod bjmm;
mod list_build;
mod parallel;
mod representation;
mod s_blocks;
mod two_blocks;
mod wagner;

pub use bjmm::decode_bjmm;
pub use parallel::decode_parallel;
pub use representation::{decode_representation, weight_schedule as rep_weight_schedule};
pub use s_blocks::{decode_s_blocks, weak_compositions};
pub use two_blocks::decode_two_blocks;
pub use wagner::decode_wagner;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::SdpInstance;
use crate::systematic::CodeType;
use crate::vector::LeeVector;

/// Toggles for the speed-up techniques. Both change cost only, never the
/// result; correctness tests run with both settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecoderConfig {
    pub early_abort: bool,
    pub intermediate_sums: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            early_abort: true,
            intermediate_sums: true,
        }
    }
}

/// A decoding success: the error vector and how many information-set
/// resamplings it took.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub error_vector: LeeVector,
    pub iterations: u64,
}

/// Split sizes, zero-window size and per-block weights of the two-blocks
/// algorithm. m1 + m2 must equal K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBlocksParams {
    pub m1: usize,
    pub m2: usize,
    pub z: usize,
    pub v1: u64,
    pub v2: u64,
}

impl TwoBlocksParams {
    /// Prange: all weight is guessed inside the information set.
    pub fn prange(big_k: usize, t: u64) -> Self {
        TwoBlocksParams {
            m1: big_k,
            m2: 0,
            z: 0,
            v1: t,
            v2: 0,
        }
    }

    /// Lee-Brickell: weight v inside the information set, no zero window.
    pub fn lee_brickell(big_k: usize, v: u64) -> Self {
        TwoBlocksParams {
            m1: big_k,
            m2: 0,
            z: 0,
            v1: v,
            v2: 0,
        }
    }
}

/// Weight budget of the s-blocks algorithm; with `fixed_split` the second
/// variant runs on that single weight distribution instead of all weak
/// compositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SBlocksParams {
    pub v: u64,
    pub fixed_split: Option<Vec<u64>>,
}

/// Wagner on `a` levels after partial Gaussian elimination with parameter
/// `ell`: the small instance is solved with weight v and merge windows
/// u_1 <= ... <= u_a = K + ell - k_1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WagnerParams {
    pub a: u32,
    pub ell: usize,
    pub v: u64,
    pub u: Vec<usize>,
}

/// Representation technique on `a` levels: overlap weights eps_0..eps_{a-1};
/// merge windows default to the representation-count lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepTechParams {
    pub a: u32,
    pub ell: usize,
    pub v: u64,
    pub eps: Vec<u64>,
    pub u: Option<Vec<usize>>,
}

/// Lee-BJMM: two-level mix of concatenation and representation merges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BjmmParams {
    pub ell: usize,
    pub v: u64,
    pub eps0: u64,
    pub eps1: u64,
    pub u0: Option<usize>,
    pub u1: Option<usize>,
}

/// Parameter bundle for dispatching a decoder by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DecoderParams {
    TwoBlocks(TwoBlocksParams),
    SBlocks(SBlocksParams),
    Wagner(WagnerParams),
    Representation(RepTechParams),
    Bjmm(BjmmParams),
}

/// Runs the decoder selected by `params`.
pub fn decode(
    inst: &SdpInstance,
    params: &DecoderParams,
    max_iters: u64,
    seed: u64,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    match params {
        DecoderParams::TwoBlocks(p) => decode_two_blocks(inst, p, max_iters, seed, config),
        DecoderParams::SBlocks(p) => decode_s_blocks(inst, p, max_iters, seed, config),
        DecoderParams::Wagner(p) => decode_wagner(inst, p, max_iters, seed, config),
        DecoderParams::Representation(p) => {
            decode_representation(inst, p, max_iters, seed, config)
        }
        DecoderParams::Bjmm(p) => decode_bjmm(inst, p, max_iters, seed, config),
    }
}

pub(crate) fn instance_profile(inst: &SdpInstance, seed: u64) -> Result<CodeType> {
    inst.discovered_profile(seed)
}

/// Shared final step: scatter the permuted error back, sanity-check it
/// against the instance and package the result.
pub(crate) fn finish(
    inst: &SdpInstance,
    permuted: Vec<u64>,
    unpermute: impl Fn(&[u64]) -> Vec<u64>,
    iterations: u64,
) -> Result<DecodeResult> {
    let e = LeeVector::new(unpermute(&permuted), inst.ring);
    debug_assert!(inst.verify_solution_exact(&e).unwrap_or(false));
    Ok(DecodeResult {
        error_vector: e,
        iterations,
    })
}

pub(crate) fn check_budget(iterations: u64, max_iters: u64) -> Result<()> {
    if iterations >= max_iters {
        Err(Error::IterationBudgetExhausted(max_iters))
    } else {
        Ok(())
    }
}
