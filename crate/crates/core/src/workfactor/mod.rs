//! Finite-regime workfactor estimation: bit-cost formulas for every
//! algorithm and internal-parameter optimization.

mod cost;
mod optimize;
pub mod tables;

pub use cost::{
    cost_bjmm, cost_representation, cost_s_blocks, cost_s_blocks_variant, cost_s_blocks_with,
    cost_two_blocks, cost_wagner, suggested_max_iters, two_blocks_success_log2,
    wagner_success_log2, CodeParams, CostReport, SBlocksSums,
};
pub use optimize::{optimize, AlgorithmId, SearchBudget};
pub use tables::SphereTable;
