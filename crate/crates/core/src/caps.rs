//! Size caps for exhaustive and dense computations.
//!
//! Setting `GSTAB_MAX_N` to an integer replaces every qubit-count cap below
//! with that value. Use with care: the defaults keep memory and runtime at
//! desk scale.

/// Environment variable overriding all qubit-count caps.
pub const ENV_MAX_N: &str = "GSTAB_MAX_N";

pub const DEFAULT_TABLE_CAP: usize = 12;
pub const DEFAULT_DENSE_CAP: usize = 10;
pub const DEFAULT_CLIFFORD_CAP: usize = 8;
pub const DEFAULT_FIDELITY_CAP: usize = 4;

fn override_or(default: usize) -> usize {
    std::env::var(ENV_MAX_N)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// Characteristic and Weyl tables (`4^n` entries).
pub fn table_cap() -> usize {
    override_or(DEFAULT_TABLE_CAP)
}

/// Dense `2^n x 2^n` matrices.
pub fn dense_cap() -> usize {
    override_or(DEFAULT_DENSE_CAP)
}

/// Clifford realization of a symplectic map as a matrix.
pub fn clifford_cap() -> usize {
    override_or(DEFAULT_CLIFFORD_CAP)
}

/// Lagrangian enumeration and brute-force stabilizer fidelity.
pub fn fidelity_cap() -> usize {
    override_or(DEFAULT_FIDELITY_CAP)
}
