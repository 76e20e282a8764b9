//! Linear algebra over F2 and F2^(2n).

pub mod bits;
pub mod subspace;
pub mod transform;

pub use bits::{parity, swap_halves, symplectic_form_index, BitVec, SymplecticPoint, MAX_QUBITS};
pub use subspace::{all_subspaces, solve_linear, F2Subspace, DEFAULT_ENUMERATION_CAP};
pub use transform::{
    fwht_in_place, inverse_symplectic_fourier, inverse_walsh_hadamard, symplectic_fourier,
    walsh_hadamard, walsh_hadamard_real,
};

/// Symplectic product of two labels.
pub fn symplectic_product(x: &SymplecticPoint, y: &SymplecticPoint) -> crate::Result<u8> {
    x.symplectic_product(y)
}
