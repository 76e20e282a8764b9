//! Gowers-3 and Gowers-4 norms of a few states, by the table route and by
//! the derivative definition.
//!
//! cargo run --example gowers_norms

use gstab::state::{
    gowers_norm_definition, haar_random_state, make_phase_state, random_stabilizer, CharTable,
    StateVector,
};

fn row(name: &str, psi: &StateVector) -> gstab::Result<()> {
    let p = CharTable::from_state(psi)?;
    let g8 = p.gowers3_pow8();
    println!(
        "{name:<22} n={}  U3^8={g8:.6}  U3={:.6}  U4={:.6}  E_q={:.6}",
        psi.n(),
        gowers_norm_definition(psi, 3)?,
        gowers_norm_definition(psi, 4)?,
        p.weyl_expect_q(),
    );
    Ok(())
}

fn main() -> gstab::Result<()> {
    row("|T>", &StateVector::t_state())?;
    row("|T>^3", &StateVector::t_state().tensor_power(3)?)?;
    row("random stabilizer", &random_stabilizer(4, 1)?)?;
    row("CZ-type phase (d=2)", &make_phase_state(4, 2, "x1x2 + x3x4")?)?;
    row("CCZ phase (d=3)", &make_phase_state(3, 3, "4x1x2x3")?)?;
    row("Haar", &haar_random_state(5, 3)?)?;
    Ok(())
}
