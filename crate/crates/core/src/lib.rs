//! Lee-metric syndrome decoding toolkit over Z/p^s.
//!
//! The crate provides exact Lee sphere/ball combinatorics, finite-ring
//! linear algebra (systematic form, partial Gaussian elimination), planted
//! syndrome-decoding instances, five information-set-decoding algorithms,
//! finite-regime workfactor estimation with parameter optimization,
//! saddle-point asymptotics, and the 3DM reduction constructions.

pub mod asymptotics;
pub mod counting;
pub mod decoders;
pub mod error;
pub mod instance;
pub mod matrix;
pub mod merge;
pub mod reduction;
pub mod ring;
pub mod sampling;
pub mod systematic;
pub mod vector;
pub mod workfactor;

pub use error::{Error, Result};
pub use instance::{PlantedInstance, SdpInstance};
pub use matrix::{syndrome, RingMatrix};
pub use ring::{lee_weight, RingSpec};
pub use systematic::{partial_gaussian, systematic_form, CodeType, SystematicForm};
pub use vector::{lee_distance, LeeVector};
