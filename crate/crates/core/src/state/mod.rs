//! Pure states, their characteristic and Weyl distributions, and Gowers norms.

mod construct;
mod gowers;
mod mixed;
mod phase;
mod tables;
mod vector;

pub use construct::{
    haar_random_state, make_stabilizer_state, noisy_stabilizer, random_lagrangian,
    random_stabilizer, random_stabilizer_generators, validate_stabilizer_generators,
    NoisyStabilizer, SignedPauli,
};
pub use gowers::{gowers_norm_definition, gowers_power_definition, GOWERS_SUM_CAP};
pub use mixed::{Ensemble, MixedCharTable};
pub use phase::{make_phase_state, PhasePolynomial};
pub use tables::{
    char_table, derivative, derivative_fourier, gowers3_pow8, weyl_expect_q, weyl_expectation,
    weyl_table, CharTable, WeylTable,
};
pub use vector::{StateFile, StateVector, FORMAT_TAG, NORM_TOLERANCE};
