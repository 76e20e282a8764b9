//! Sets of labels in `F2^(2n)`: closure statistics, the randomized choice
//! set, sumsets, anticommutation numbers, translate coverings and a search
//! harness for small-doubling sets.

mod choice;
mod conjecture;
mod cover;
mod nac;
mod sets;

pub use choice::{
    build_choice_set, build_choice_set_from_table, squared_expectation_sum, ChoiceSet,
    ChoiceSetReport,
};
pub use conjecture::{
    conjecture_search, ConjectureConfig, ConjectureReport, ConjectureRow, CONJECTURE_N_CAP,
};
pub use cover::{nac_translate_bound_check, translate_cover, NacBoundReport, TranslateCover};
pub use nac::{is_anticommuting_family, nac, NacResult, NAC_EXACT_CAP};
pub use sets::{
    closure_probability, doubling, iterated_sumset, plunnecke_check, sumset, PlunneckeReport,
    PointSet, PAIR_BUDGET,
};
