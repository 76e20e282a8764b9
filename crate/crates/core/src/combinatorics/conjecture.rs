use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::nac::nac;
use super::sets::{sumset, PointSet};
use crate::error::{Error, Result};
use crate::f2core::F2Subspace;
use crate::rng::{child_seed, stream_rng, Domain};

/// Largest `n` for which `nac(2S)` stays within the exact clique search.
pub const CONJECTURE_N_CAP: usize = 5;

const MAX_COSETS: usize = 4;
const ATTEMPTS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjectureConfig {
    pub n: usize,
    pub k_max: f64,
    pub trials: usize,
    pub seed: u64,
    /// A row is flagged when `nac(2S) > (K nac(S))^exponent`. The reference
    /// polynomial is a configuration choice, not a known bound.
    pub exponent: f64,
}

impl ConjectureConfig {
    pub fn new(n: usize, trials: usize, seed: u64) -> Self {
        Self {
            n,
            k_max: 16.0,
            trials,
            seed,
            exponent: 3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub trial: usize,
    pub seed: u64,
    #[serde(rename = "K")]
    pub k: f64,
    pub size_s: usize,
    pub size_2s: usize,
    pub nac_s: usize,
    pub nac_2s: usize,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub config: ConjectureConfig,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.flagged).count()
    }

    /// CSV `trial,seed,K,size_S,size_2S,nac_S,nac_2S,flagged`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["trial", "seed", "K", "size_S", "size_2S", "nac_S", "nac_2S", "flagged"])?;
        for r in &self.rows {
            w.write_record([
                r.trial.to_string(),
                r.seed.to_string(),
                r.k.to_string(),
                r.size_s.to_string(),
                r.size_2s.to_string(),
                r.nac_s.to_string(),
                r.nac_2s.to_string(),
                r.flagged.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A union of up to four random cosets of a random subspace, sometimes with
/// a couple of stray points.
fn sample_set<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PointSet> {
    let dim = rng.random_range(0..=2 * n);
    let v = F2Subspace::random(2 * n, dim, rng)?;
    let members = v.span_members_words(2 * n)?;
    let cosets = rng.random_range(1..=MAX_COSETS);
    let mut idx = Vec::with_capacity(cosets * members.len() + 2);
    for _ in 0..cosets {
        let z: u64 = rng.random_range(0..1u64 << (2 * n));
        idx.extend(members.iter().map(|&m| m ^ z));
    }
    if rng.random_bool(0.5) {
        for _ in 0..rng.random_range(1..=2) {
            idx.push(rng.random_range(0..1u64 << (2 * n)));
        }
    }
    PointSet::from_indices(n, idx)
}

fn doubling_k(n: usize, s: &PointSet, s2: &PointSet) -> f64 {
    let size = s.len() as f64;
    ((1u64 << n) as f64 / size).max(s2.len() as f64 / size)
}

fn run_trial(cfg: &ConjectureConfig, trial: usize) -> Result<ConjectureRow> {
    let seed = child_seed(cfg.seed, trial as u64);
    let mut rng = stream_rng(seed, Domain::Conjecture, 0);
    let mut found = None;
    for _ in 0..ATTEMPTS {
        let s = sample_set(cfg.n, &mut rng)?;
        let s2 = sumset(&s, &s)?;
        let k = doubling_k(cfg.n, &s, &s2);
        let ok = k <= cfg.k_max;
        found = Some((s, s2, k));
        if ok {
            break;
        }
    }
    let (s, s2, k) = found.expect("at least one attempt");
    let (a, b) = (nac(&s).size, nac(&s2).size);
    Ok(ConjectureRow {
        trial,
        seed,
        k,
        size_s: s.len(),
        size_2s: s2.len(),
        nac_s: a,
        nac_2s: b,
        flagged: b as f64 > (k * a as f64).powf(cfg.exponent),
    })
}

/// Samples sets `S` with `|S| >= 2^n / K` and `|2S| <= K |S|` and records
/// `nac(S)` and `nac(2S)`. Exploratory: a flagged row is a finding to inspect,
/// and an empty flag list proves nothing.
pub fn conjecture_search(cfg: &ConjectureConfig) -> Result<ConjectureReport> {
    if cfg.n == 0 || cfg.n > CONJECTURE_N_CAP {
        return Err(Error::CapExceeded {
            what: "conjecture search n",
            value: cfg.n,
            cap: CONJECTURE_N_CAP,
        });
    }
    if !(cfg.k_max >= 1.0) {
        return Err(Error::OutOfRange(format!("K_max = {} below 1", cfg.k_max)));
    }
    let rows = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport { config: *cfg, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let cfg = ConjectureConfig::new(3, 40, 1);
        let a = conjecture_search(&cfg).unwrap();
        let b = conjecture_search(&cfg).unwrap();
        assert_eq!(a, b);
        let mut buf = Vec::new();
        a.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("trial,seed,K,size_S,size_2S,nac_S,nac_2S,flagged\n"));
        assert_eq!(text.lines().count(), 41);
        for r in &a.rows {
            assert!(r.size_2s >= r.size_s && r.nac_2s >= 1);
            assert!(r.k <= cfg.k_max);
        }
    }

    #[test]
    fn subgroups_are_never_flagged() {
        let v = F2Subspace::from_basis_words(6, &[0b000011, 0b001100, 0b100000]).unwrap();
        let s = PointSet::from_indices(3, v.span_members_words(8).unwrap()).unwrap();
        let s2 = sumset(&s, &s).unwrap();
        assert_eq!(s, s2);
        assert_eq!(doubling_k(3, &s, &s2), 1.0);
    }

    #[test]
    fn rejects_large_n() {
        assert!(conjecture_search(&ConjectureConfig::new(6, 1, 0)).is_err());
    }
}
