//! Generating functions for Rényi information: relative information
//! generating functions, their divergence counterpart, estimators, coherent
//! systems and chaotic maps.

pub mod distributions;
pub mod chaos;
pub mod divergence;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod igf;
pub mod parallel;
pub mod quadrature;
pub mod rng;
pub(crate) mod solve;
pub mod special;
pub mod systems;

pub use distributions::{ContinuousModel, DiscretePmf, ModelSpec, MonotoneMap, OrderPair};
pub use error::{Error, Result};
pub use parallel::Parallelism;
pub use quadrature::{Interval, Tolerance};
