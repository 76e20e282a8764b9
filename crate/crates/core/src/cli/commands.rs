use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::tester::{run_tester_on_table, TesterConfig, TesterVerdict};
use crate::combinatorics::{conjecture_search, ConjectureConfig, ConjectureReport};
use crate::error::{Error, Result};
use crate::f2core::{F2Subspace, SymplecticPoint};
use crate::sampling::{
    estimate_from_table, estimator_shots, EstimatorConfig, Quantity, ShotEstimate, ShotRecord,
};
use crate::stabilizer::{stabilizer_covering, stabilizer_fidelity_bruteforce, CoveringFile, CoveringMode};
use crate::state::{
    haar_random_state, make_phase_state, noisy_stabilizer, random_stabilizer, CharTable,
    StateFile, StateVector, FORMAT_TAG,
};

/// Parameters for `gen`.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Stabilizer { n: usize, seed: u64 },
    Phase { n: usize, d: u32, poly: String },
    Haar { n: usize, seed: u64 },
    Noisy { n: usize, eps: f64, seed: u64 },
}

/// Builds the requested state; the metadata records everything needed to
/// regenerate it.
pub fn cmd_gen(spec: &GenSpec) -> Result<StateFile> {
    let (psi, meta) = match spec {
        GenSpec::Stabilizer { n, seed } => (
            random_stabilizer(*n, *seed)?,
            json!({"kind": "stabilizer", "n": n, "seed": seed}),
        ),
        GenSpec::Phase { n, d, poly } => (
            make_phase_state(*n, *d, poly)?,
            json!({"kind": "phase", "n": n, "d": d, "poly": poly}),
        ),
        GenSpec::Haar { n, seed } => (
            haar_random_state(*n, *seed)?,
            json!({"kind": "haar", "n": n, "seed": seed}),
        ),
        GenSpec::Noisy { n, eps, seed } => {
            let s = noisy_stabilizer(*n, *eps, *seed)?;
            let meta = json!({
                "kind": "noisy", "n": n, "eps": eps, "seed": seed,
                "base_fidelity": s.base_fidelity,
            });
            (s.state, meta)
        }
    };
    Ok(psi.to_file(Some(meta)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactQuantity {
    Gowers3,
    WeylQ,
    CharTable,
    Fidelity,
}

impl FromStr for ExactQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gowers3" => Ok(Self::Gowers3),
            "weylq" => Ok(Self::WeylQ),
            "chartable" => Ok(Self::CharTable),
            "fidelity" => Ok(Self::Fidelity),
            _ => Err(Error::Malformed(format!("unknown quantity {s:?}"))),
        }
    }
}

impl fmt::Display for ExactQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gowers3 => "gowers3",
            Self::WeylQ => "weylq",
            Self::CharTable => "chartable",
            Self::Fidelity => "fidelity",
        })
    }
}

/// Exact values as a JSON report.
pub fn cmd_exact(psi: &StateVector, quantity: ExactQuantity) -> Result<Value> {
    let n = psi.n();
    let head = |value: Value| {
        let mut v = json!({"format": FORMAT_TAG, "quantity": quantity.to_string(), "n": n});
        v.as_object_mut().unwrap().extend(value.as_object().unwrap().clone());
        v
    };
    Ok(match quantity {
        ExactQuantity::Gowers3 => {
            let g8 = CharTable::from_state(psi)?.gowers3_pow8();
            head(json!({"value": g8, "gowers3_norm": g8.max(0.0).powf(0.125)}))
        }
        ExactQuantity::WeylQ => head(json!({"value": CharTable::from_state(psi)?.weyl_expect_q()})),
        ExactQuantity::CharTable => {
            let p = CharTable::from_state(psi)?;
            head(json!({"values": p.values()}))
        }
        ExactQuantity::Fidelity => {
            let r = stabilizer_fidelity_bruteforce(psi)?;
            let gens: Vec<String> = r.argmax.generators.iter().map(|g| g.to_string()).collect();
            head(json!({"value": r.value, "argmax_index": r.index, "argmax_generators": gens}))
        }
    })
}

pub fn parse_quantity(s: &str) -> Result<Quantity> {
    match s {
        "gowers3" | "gowers3_pow8" => Ok(Quantity::Gowers3Pow8),
        "weylq" | "weyl_expect_q" => Ok(Quantity::WeylExpectQ),
        _ => Err(Error::Malformed(format!("unknown estimator {s:?}"))),
    }
}

/// Runs an estimator; the per-shot records are returned when requested.
pub fn cmd_estimate(
    psi: &StateVector,
    quantity: Quantity,
    cfg: &EstimatorConfig,
    with_records: bool,
) -> Result<(ShotEstimate, Option<Vec<ShotRecord>>)> {
    let p = CharTable::from_state(psi)?;
    let est = estimate_from_table(&p, quantity, cfg)?;
    let records = if with_records {
        Some(estimator_shots(&p, quantity, cfg)?)
    } else {
        None
    };
    Ok((est, records))
}

pub fn cmd_test(psi: &StateVector, cfg: &TesterConfig) -> Result<TesterVerdict> {
    run_tester_on_table(&CharTable::from_state(psi)?, cfg)
}

/// `{"n", "basis": [bitstrings]}`; each bitstring is the `v` bits then the
/// `w` bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub n: usize,
    pub basis: Vec<String>,
}

impl SubgroupFile {
    pub fn from_subspace(v: &F2Subspace) -> Self {
        Self {
            format: Some(FORMAT_TAG.to_string()),
            n: v.n_ambient() / 2,
            basis: v.basis_points().iter().map(|p| p.to_bitstring()).collect(),
        }
    }

    /// Rejects dependent or wrongly sized rows.
    pub fn to_subspace(&self) -> Result<F2Subspace> {
        let pts = self
            .basis
            .iter()
            .map(|s| SymplecticPoint::from_bitstring(s))
            .collect::<Result<Vec<_>>>()?;
        let words: Vec<u64> = pts
            .iter()
            .map(|p| {
                if p.n() != self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, got: p.n() });
                }
                Ok(p.index())
            })
            .collect::<Result<_>>()?;
        F2Subspace::from_basis_words(2 * self.n, &words)
    }
}

pub fn cmd_cover(subgroup: &SubgroupFile, mode: CoveringMode) -> Result<CoveringFile> {
    Ok(stabilizer_covering(&subgroup.to_subspace()?, mode)?.to_file())
}

pub fn cmd_conjecture(cfg: &ConjectureConfig) -> Result<ConjectureReport> {
    conjecture_search(cfg)
}

pub fn read_state(path: &Path) -> Result<StateVector> {
    StateVector::read_json(path)
}

pub fn read_subgroup(path: &Path) -> Result<SubgroupFile> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_is_reproducible() {
        let spec = GenSpec::Stabilizer { n: 3, seed: 7 };
        let a = serde_json::to_string(&cmd_gen(&spec).unwrap()).unwrap();
        let b = serde_json::to_string(&cmd_gen(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gen_phase_cz() {
        let f = cmd_gen(&GenSpec::Phase { n: 2, d: 2, poly: "x1x2".into() }).unwrap();
        let psi = f.into_state().unwrap();
        let signs: Vec<f64> = psi.amps().iter().map(|a| a.re).collect();
        for (s, e) in signs.iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert!((s - e).abs() < 1e-12);
        }
    }

    #[test]
    fn gen_noisy_records_fidelity() {
        let f = cmd_gen(&GenSpec::Noisy { n: 4, eps: 0.1, seed: 2 }).unwrap();
        let bf = f.meta.as_ref().unwrap()["base_fidelity"].as_f64().unwrap();
        assert!((bf - 0.9).abs() < 1e-9);
    }

    #[test]
    fn exact_reports() {
        let t = StateVector::t_state();
        let g = cmd_exact(&t, ExactQuantity::Gowers3).unwrap();
        assert!((g["value"].as_f64().unwrap() - 0.75).abs() < 1e-12);
        let f = cmd_exact(&t, ExactQuantity::Fidelity).unwrap();
        assert!((f["value"].as_f64().unwrap() - (2.0 + 2f64.sqrt()) / 4.0).abs() < 1e-10);
        let s = random_stabilizer(3, 1).unwrap();
        let q = cmd_exact(&s, ExactQuantity::WeylQ).unwrap();
        assert!((q["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        let c = cmd_exact(&t, ExactQuantity::CharTable).unwrap();
        assert_eq!(c["values"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn cover_files() {
        let full = SubgroupFile { format: None, n: 1, basis: vec!["10".into(), "01".into()] };
        assert_eq!(cmd_cover(&full, CoveringMode::Mub).unwrap().groups.len(), 3);
        let iso = SubgroupFile { format: None, n: 2, basis: vec!["0011".into()] };
        assert_eq!(cmd_cover(&iso, CoveringMode::Mub).unwrap().groups.len(), 1);
        let dep = SubgroupFile { format: None, n: 1, basis: vec!["10".into(), "10".into()] };
        assert!(matches!(cmd_cover(&dep, CoveringMode::Mub), Err(Error::Dependent)));
    }
}
