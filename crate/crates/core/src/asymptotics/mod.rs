//! Saddle-point asymptotics: Lee sphere/ball exponents, the asymptotic
//! Gilbert-Varshamov bound, and per-algorithm complexity exponents e(R, q).

mod exponents;
mod gv;
mod saddle;

pub use exponents::{
    exponent, exponent_curve, worst_case_rate, AsymptoticAlgorithm, AsymptoticRegime,
    ExponentReport, OptBudget,
};
pub use gv::{gv_delta, gv_rate};
pub use saddle::{
    ball_exponent, ball_threshold, saddle_exponent, sphere_exponent, GeneratingPoly, SaddlePoint,
};
