//! Anticommutation numbers, sumsets and translate coverings on small sets.
//!
//! cargo run --example anticommutation

use gstab::combinatorics::{
    doubling, nac, nac_translate_bound_check, plunnecke_check, sumset, translate_cover, PointSet,
};
use gstab::pauli::canonical_subgroup;

fn main() -> gstab::Result<()> {
    let all = PointSet::from_indices(2, 0..16)?;
    let r = nac(&all);
    let names: Vec<String> = r.witness.iter().map(|p| p.pauli_string()).collect();
    println!("nac(P^2) = {}: {names:?}", r.size);

    let v = canonical_subgroup(3, 1, 1)?;
    let b = PointSet::from_indices(3, v.span_members_words(16)?)?;
    println!("nac(P^1 x <Z>) = {}", nac(&b).size);

    let a = PointSet::from_indices(3, [0, 1, 2, 9, 17, 40])?;
    let a2 = sumset(&a, &a)?;
    println!("|A| = {}, |2A| = {}, doubling = {:.3}", a.len(), a2.len(), doubling(&a)?);
    let pl = plunnecke_check(&a)?;
    println!("|4A|/|2A| = {:.3} <= (|2A|/|A|)^4 = {:.3}: {}", pl.ratio, pl.bound, pl.holds);

    let c = translate_cover(&a, &b)?;
    println!(
        "A by translates of B: greedy {} shifts; Ruzsa packing {} <= |A+B|/|A| = {:.3}",
        c.greedy.len(),
        c.ruzsa.len(),
        c.ruzsa_bound
    );
    let rep = nac_translate_bound_check(&a, &b)?;
    println!(
        "nac(A) = {} <= 2*{}*{} : {}",
        rep.nac_a, rep.greedy_m, rep.nac_b, rep.greedy_holds
    );
    Ok(())
}
