pub mod caps;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod f2core;
pub mod pauli;
pub mod rng;
pub mod sampling;
pub mod stabilizer;
pub mod state;

pub use error::{Error, Result};
