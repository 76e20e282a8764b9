//! Bell and Bell-difference samples of |T>^2 against the exact tables.
//!
//! cargo run --example bell_sampling

use std::collections::BTreeMap;

use gstab::sampling::{bell_difference_sample, bell_sample};
use gstab::state::{CharTable, StateVector};

fn main() -> gstab::Result<()> {
    let psi = StateVector::t_state().tensor_power(2)?;
    let p = CharTable::from_state(&psi)?;
    let q = p.weyl_table();
    let shots = 100_000;

    let mut bell = BTreeMap::new();
    for x in bell_sample(&psi, shots, 7)? {
        *bell.entry(x.pauli_string()).or_insert(0u64) += 1;
    }
    let mut diff = BTreeMap::new();
    for x in bell_difference_sample(&psi, shots, 7)? {
        *diff.entry(x.pauli_string()).or_insert(0u64) += 1;
    }

    println!("label   p(x)     Bell freq   q(x)     diff freq");
    for i in 0..16u64 {
        let x = gstab::f2core::SymplecticPoint::from_index(2, i);
        let name = x.pauli_string();
        println!(
            "{name:<6}  {:.4}   {:.4}      {:.4}   {:.4}",
            p.get(&x),
            *bell.get(&name).unwrap_or(&0) as f64 / shots as f64,
            q.get(&x),
            *diff.get(&name).unwrap_or(&0) as f64 / shots as f64,
        );
    }
    Ok(())
}
