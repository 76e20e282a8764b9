//! Randomized choice sets of high-mass Weyl labels for |T>^4.
//!
//! cargo run --release --example choice_set

use gstab::combinatorics::build_choice_set_from_table;
use gstab::state::{CharTable, StateVector};

fn main() -> gstab::Result<()> {
    let psi = StateVector::t_state().tensor_power(4)?;
    let p = CharTable::from_state(&psi)?;
    let g8 = p.gowers3_pow8();
    let gamma = g8 * g8;
    println!("U3^8 = {g8:.6}, gamma = U3^16 = {gamma:.6}");
    println!("seed  |X|  |S|  L(S)     min <W>^2");
    for seed in 0..8 {
        let c = build_choice_set_from_table(&p, gamma, seed)?;
        let r = &c.report;
        println!(
            "{seed:<4}  {:<3}  {:<3}  {:.5}  {:.4}",
            r.x_size, r.s_size, r.l_value, r.min_expectation
        );
    }
    Ok(())
}
