//! The tolerant tester on a stabilizer state, a noisy stabilizer state and a
//! Haar-random state at n = 8.
//!
//! cargo run --release --example tolerant_tester

use gstab::cli::{run_tester, TesterConfig};
use gstab::state::{haar_random_state, noisy_stabilizer, random_stabilizer};

fn main() -> gstab::Result<()> {
    let cfg = TesterConfig::new(0.9, 42);
    let (delta, threshold) = cfg.resolve()?;
    println!("eps1 = 0.9, delta = {delta:.5}, threshold = {threshold:.5}");

    let noisy = noisy_stabilizer(8, 0.05, 3)?;
    let cases = [
        ("stabilizer", random_stabilizer(8, 3)?),
        ("noisy (F = 0.95)", noisy.state),
        ("haar", haar_random_state(8, 3)?),
    ];
    for (name, psi) in &cases {
        let v = run_tester(psi, &cfg)?;
        println!(
            "{name:<18} E_q ~ {:.4} over {} shots -> {:?}",
            v.estimate.mean, v.estimate.shots, v.decision
        );
    }
    Ok(())
}
