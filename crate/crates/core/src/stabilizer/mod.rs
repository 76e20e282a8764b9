//! Lagrangian subspaces, stabilizer fidelity, coset masses and stabilizer
//! coverings of Pauli subgroups.

mod covering;
pub mod gf2k;
mod lagrangian;
mod mass;

pub use covering::{
    mub_spread, pauli_groups, stabilizer_covering, CoveringFile, CoveringMode,
    StabilizerCovering, MUB_K_CAP, PAULI_K_CAP,
};
pub use lagrangian::{
    best_lagrangian_mass, enumerate_lagrangians, enumerate_stabilizer_states, is_isotropic,
    lagrangian_count, lagrangian_mass, stabilizer_fidelity_bruteforce, FidelityResult,
    LagrangianSubspace, StabilizerEntry,
};
pub use mass::{
    coset_mass, coset_max_check, coset_rank_check, fact_b1_check, CosetMass, CosetMaxReport,
    CosetRankReport, FactB1Report,
};
