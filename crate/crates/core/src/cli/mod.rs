//! Command implementations behind the `gstab` binary, usable as library
//! calls.
//!
//! Exit codes: 0 close (or success), 3 far, 2 usage or invalid input,
//! 4 cap or budget exceeded, 1 I/O failure.

mod commands;
mod tester;

pub use commands::{
    cmd_conjecture, cmd_cover, cmd_estimate, cmd_exact, cmd_gen, cmd_test, parse_quantity,
    read_state, read_subgroup, ExactQuantity, GenSpec, SubgroupFile,
};
pub use tester::{run_tester, run_tester_on_table, Decision, TesterConfig, TesterVerdict};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAR: i32 = 3;
pub const EXIT_CAP: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } | Error::BudgetExceeded(_) => EXIT_CAP,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

pub fn decision_exit_code(d: Decision) -> i32 {
    match d {
        Decision::Close => EXIT_OK,
        Decision::Far => EXIT_FAR,
    }
}
