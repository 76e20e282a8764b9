//! Covers Pauli subgroups by Lagrangian subspaces in both modes.
//!
//! cargo run --example stabilizer_covering

use gstab::f2core::{F2Subspace, SymplecticPoint};
use gstab::stabilizer::{stabilizer_covering, CoveringMode};

fn show(label: &str, gens: &[&str]) -> gstab::Result<()> {
    let pts = gens
        .iter()
        .map(|s| SymplecticPoint::from_pauli_string(s))
        .collect::<gstab::Result<Vec<_>>>()?;
    let v = F2Subspace::from_points(pts[0].n(), &pts)?;
    for mode in [CoveringMode::Mub, CoveringMode::Paulis] {
        let c = stabilizer_covering(&v, mode)?;
        println!(
            "{label:<16} {mode:<6} k={} m={} groups={} covers={}",
            c.k,
            c.m,
            c.len(),
            c.covers_target()?
        );
        if c.len() <= 4 {
            for g in &c.groups {
                let names: Vec<String> = g.basis_points().iter().map(|p| p.pauli_string()).collect();
                println!("    <{}>", names.join(", "));
            }
        }
    }
    Ok(())
}

fn main() -> gstab::Result<()> {
    show("P^1", &["X", "Z"])?;
    show("P^1 x <Z>", &["XI", "ZI", "IZ"])?;
    show("isotropic", &["ZZI", "XXI"])?;
    show("P^2 x <Z>", &["XII", "ZII", "IXI", "IZI", "IIZ"])?;
    Ok(())
}
