//! Simulated Bell sampling, Bell difference sampling and the two shot-based
//! estimators.
//!
//! Sampled labels use the table bit order: `v_bits` and `w_bits` are written
//! qubit 1 first, matching the basis order of state files.

mod bell;
mod estimate;

pub use bell::{
    bell_basis_probabilities, bell_difference_sample, bell_difference_sample_table, bell_sample,
    bell_sample_table, two_copy_plus_probability, TableSampler, BELL_SLOW_CAP, TWO_COPY_CAP,
};
pub use estimate::{
    default_shot_constant, estimate_from_table, estimate_gowers3_pow8, estimate_weyl_expect_q,
    estimator_shots, required_shots, write_samples_csv, write_shot_records_csv, EstimatorConfig,
    Quantity, ShotEstimate, ShotRecord,
};
