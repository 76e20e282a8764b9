//! Weyl operators, commutation, canonical forms of Pauli subgroups and their
//! Clifford realization.

mod symplectic;
mod weyl;

pub use symplectic::{
    canonical_subgroup, canonicalize_subgroup, transvection, CanonicalForm, Clifford,
    SymplecticMap,
};
pub use weyl::{anticommuting_family, commutes, i_pow, weyl_matrix, DenseMatrix, WeylOperator};
