//! Brute-force stabilizer fidelity next to the bounds from E_q and the best
//! Lagrangian mass.
//!
//! cargo run --release --example stabilizer_fidelity

use gstab::stabilizer::{best_lagrangian_mass, stabilizer_fidelity_bruteforce};
use gstab::state::{haar_random_state, CharTable, StateVector};

fn main() -> gstab::Result<()> {
    let t = StateVector::t_state();
    let r = stabilizer_fidelity_bruteforce(&t)?;
    let gens: Vec<String> = r.argmax.generators.iter().map(|g| g.to_string()).collect();
    println!("|T>: F_S = {:.10} (exact (2+sqrt2)/4 = {:.10}), argmax {gens:?}", r.value, (2.0 + 2f64.sqrt()) / 4.0);

    println!("\nseed  (4E_q-1)/3  F_S      E_q^(1/6)  best Lagrangian mass");
    for seed in 0..6 {
        let psi = haar_random_state(3, seed)?;
        let p = CharTable::from_state(&psi)?;
        let e = p.weyl_expect_q();
        let f = stabilizer_fidelity_bruteforce(&psi)?.value;
        let (mass, _) = best_lagrangian_mass(&p)?;
        println!(
            "{seed:<4}  {:>9.5}  {f:.5}  {:.5}    {mass:.5}",
            (4.0 * e - 1.0) / 3.0,
            e.powf(1.0 / 6.0)
        );
    }
    Ok(())
}
