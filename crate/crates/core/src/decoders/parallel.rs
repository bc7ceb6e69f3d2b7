//! Optional parallel driver: independent iteration batches run on worker
//! threads with per-batch derived seeds; the first verified solution wins.
//! Across runs the winning solution may differ from the single-threaded one.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{decode, DecodeResult, DecoderConfig, DecoderParams};
use crate::error::{Error, Result};
use crate::instance::SdpInstance;

const BATCH: u64 = 8;

pub fn decode_parallel(
    inst: &SdpInstance,
    params: &DecoderParams,
    max_iters: u64,
    seed: u64,
    jobs: usize,
    config: &DecoderConfig,
) -> Result<DecodeResult> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return decode(inst, params, max_iters, seed, config);
    }
    let stop = AtomicBool::new(false);
    let spent = AtomicU64::new(0);
    let result = std::sync::Mutex::new(None::<Result<DecodeResult>>);

    std::thread::scope(|scope| {
        for worker in 0..jobs {
            let stop = &stop;
            let spent = &spent;
            let result = &result;
            scope.spawn(move || {
                let mut batch_index = worker as u64;
                loop {
                    if stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let claimed = spent.fetch_add(BATCH, Ordering::Relaxed);
                    if claimed >= max_iters {
                        return;
                    }
                    let budget = BATCH.min(max_iters - claimed);
                    let batch_seed = seed
                        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(batch_index + 1));
                    match decode(inst, params, budget, batch_seed, config) {
                        Ok(res) => {
                            stop.store(true, Ordering::Relaxed);
                            let mut slot = result.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(Ok(DecodeResult {
                                    error_vector: res.error_vector,
                                    iterations: claimed + res.iterations,
                                }));
                            }
                            return;
                        }
                        Err(Error::IterationBudgetExhausted(_)) => {
                            batch_index += jobs as u64;
                        }
                        Err(e) => {
                            stop.store(true, Ordering::Relaxed);
                            let mut slot = result.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(Err(e));
                            }
                            return;
                        }
                    }
                }
            });
        }
    });

    result
        .into_inner()
        .unwrap()
        .unwrap_or(Err(Error::IterationBudgetExhausted(max_iters)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::TwoBlocksParams;
    use crate::instance::plant;
    use crate::ring::RingSpec;
    use crate::systematic::CodeType;

    #[test]
    fn parallel_finds_verified_solution() {
        let ring = RingSpec::new(2, 3).unwrap();
        let profile = CodeType::free(16, 5, 3).unwrap();
        let planted = plant(&profile, 6, &ring, 21).unwrap();
        let params = DecoderParams::TwoBlocks(TwoBlocksParams {
            m1: 3,
            m2: 2,
            z: 1,
            v1: 1,
            v2: 1,
        });
        let res = decode_parallel(
            &planted.instance,
            &params,
            400_000,
            4,
            4,
            &DecoderConfig::default(),
        )
        .unwrap();
        assert!(planted
            .instance
            .verify_solution_exact(&res.error_vector)
            .unwrap());
    }
}
