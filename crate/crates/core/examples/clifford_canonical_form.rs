//! Canonical form of a random Pauli subgroup and the Clifford that realizes
//! it.
//!
//! cargo run --example clifford_canonical_form

use gstab::f2core::F2Subspace;
use gstab::pauli::{canonicalize_subgroup, Clifford};
use gstab::rng::{stream_rng, Domain};
use gstab::state::{haar_random_state, weyl_expectation, StateVector};

fn main() -> gstab::Result<()> {
    let n = 4;
    let mut rng = stream_rng(5, Domain::Subgroup, 0);
    let v = F2Subspace::random(2 * n, 5, &mut rng)?;
    let names: Vec<String> = v.basis_points().iter().map(|p| p.pauli_string()).collect();
    println!("V = <{}>", names.join(", "));

    let cf = canonicalize_subgroup(&v)?;
    println!("k = {}, m = {}  (nac(V) = {})", cf.k, cf.m, 2 * cf.k + 1);
    let image = cf.map.image(&v)?;
    let names: Vec<String> = image.basis_points().iter().map(|p| p.pauli_string()).collect();
    println!("M V = <{}>", names.join(", "));

    let u = Clifford::from_symplectic(&cf.map)?;
    println!("{} transvections", u.transvections().len());

    // U W_x U^dag = +-W_{Mx}: expectations move with the labels.
    let psi = haar_random_state(n, 1)?;
    let upsi = StateVector::new(n, u.apply(psi.amps())?)?;
    for p in v.basis_points().iter().take(3) {
        let mx = cf.map.apply(p)?;
        let before = weyl_expectation(&psi, p)?.re;
        let after = weyl_expectation(&upsi, &mx)?.re;
        println!("{:>6} -> {:>6}: {before:+.6} vs {after:+.6}", p.pauli_string(), mx.pauli_string());
    }
    Ok(())
}
