//! Small-doubling sets S at n = 4 and how nac(2S) compares to nac(S).
//! A flagged row would be worth a closer look; none flagged proves nothing.
//!
//! cargo run --release --example conjecture_search

use gstab::combinatorics::{conjecture_search, ConjectureConfig};

fn main() -> gstab::Result<()> {
    let cfg = ConjectureConfig::new(4, 200, 1);
    let report = conjecture_search(&cfg)?;
    let mut worst = report.rows[0].clone();
    for r in &report.rows {
        if r.nac_2s as f64 / r.nac_s as f64 > worst.nac_2s as f64 / worst.nac_s as f64 {
            worst = r.clone();
        }
    }
    println!("{} trials, {} flagged against (K nac(S))^3", report.rows.len(), report.flagged());
    println!("largest nac(2S)/nac(S): {worst:?}");
    let mut head = report.clone();
    head.rows.truncate(10);
    head.write_csv(std::io::stdout().lock())?;
    Ok(())
}
