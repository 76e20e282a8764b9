use std::fmt;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bell::TableSampler;
use crate::error::{Error, Result};
use crate::f2core::SymplecticPoint;
use crate::rng::{stream_rng, Domain};
use crate::state::{CharTable, StateVector, FORMAT_TAG};

/// `8 ln 200`: Hoeffding sizing for additive error `delta` with 99% confidence.
pub fn default_shot_constant() -> f64 {
    8.0 * 200f64.ln()
}

/// `ceil(c / delta^2)`.
pub fn required_shots(delta: f64, c: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::OutOfRange(format!("delta = {delta} not in (0, 1)")));
    }
    Ok((c / (delta * delta)).ceil() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "gowers3_pow8")]
    Gowers3Pow8,
    #[serde(rename = "weyl_expect_q")]
    WeylExpectQ,
}

impl Quantity {
    fn domain(self) -> Domain {
        match self {
            Quantity::Gowers3Pow8 => Domain::EstimateGowers,
            Quantity::WeylExpectQ => Domain::EstimateWeyl,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Gowers3Pow8 => "gowers3_pow8",
            Quantity::WeylExpectQ => "weyl_expect_q",
        })
    }
}

/// Shot configuration for an estimator run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub delta: f64,
    /// `None` uses `ceil(c / delta^2)`.
    pub shots: Option<u64>,
    pub seed: u64,
    pub shot_constant: f64,
}

impl EstimatorConfig {
    pub fn new(delta: f64, seed: u64) -> Self {
        Self {
            delta,
            shots: None,
            seed,
            shot_constant: default_shot_constant(),
        }
    }

    pub fn with_shots(mut self, shots: u64) -> Self {
        self.shots = Some(shots);
        self
    }

    /// Resolved shot count; explicit counts below the requirement are rejected.
    pub fn resolve_shots(&self) -> Result<u64> {
        let needed = required_shots(self.delta, self.shot_constant)?;
        match self.shots {
            None => Ok(needed),
            Some(s) if s >= needed => Ok(s),
            Some(s) => Err(Error::InvalidConfig(format!(
                "{s} shots are fewer than the {needed} required for delta = {}",
                self.delta
            ))),
        }
    }
}

/// A shot-based estimate with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShotEstimate {
    pub format: String,
    pub quantity: Quantity,
    pub mean: f64,
    pub shots: u64,
    pub seed: u64,
    pub target_error: f64,
    /// Number of `+1` outcomes.
    pub plus_count: u64,
}

impl ShotEstimate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// One simulated shot: the sampled label and the `+-1` outcome of the
/// two-copy `W_x (x) W_x` measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShotRecord {
    pub shot_index: u64,
    pub point: SymplecticPoint,
    pub outcome: i8,
}

/// Draw the label for the quantity, then a `+-1` outcome with
/// `Pr[+1] = (1 + <W_x>^2)/2`, where `<W_x>^2 = 2^n p(x)`.
fn one_shot(
    quantity: Quantity,
    sampler: &TableSampler,
    p: &CharTable,
    seed: u64,
    shot: u64,
) -> ShotRecord {
    let mut rng = stream_rng(seed, quantity.domain(), shot);
    let x = match quantity {
        Quantity::Gowers3Pow8 => sampler.draw(&mut rng),
        Quantity::WeylExpectQ => sampler.draw(&mut rng) ^ sampler.draw(&mut rng),
    };
    let e2 = (p.at(x) * (1u64 << p.n()) as f64).min(1.0);
    let plus = rng.random::<f64>() < (1.0 + e2) / 2.0;
    ShotRecord {
        shot_index: shot,
        point: SymplecticPoint::from_index(p.n(), x),
        outcome: if plus { 1 } else { -1 },
    }
}

/// Estimate `quantity` from the exact table of the state.
pub fn estimate_from_table(
    p: &CharTable,
    quantity: Quantity,
    cfg: &EstimatorConfig,
) -> Result<ShotEstimate> {
    let shots = cfg.resolve_shots()?;
    let sampler = TableSampler::from_char_table(p)?;
    let plus: u64 = (0..shots)
        .into_par_iter()
        .map(|i| (one_shot(quantity, &sampler, p, cfg.seed, i).outcome == 1) as u64)
        .sum();
    let sum = 2 * plus as i64 - shots as i64;
    Ok(ShotEstimate {
        format: FORMAT_TAG.to_string(),
        quantity,
        mean: sum as f64 / shots as f64,
        shots,
        seed: cfg.seed,
        target_error: cfg.delta,
        plus_count: plus,
    })
}

/// Per-shot records of an estimator run, in shot order.
pub fn estimator_shots(
    p: &CharTable,
    quantity: Quantity,
    cfg: &EstimatorConfig,
) -> Result<Vec<ShotRecord>> {
    let shots = cfg.resolve_shots()?;
    let sampler = TableSampler::from_char_table(p)?;
    Ok((0..shots)
        .into_par_iter()
        .map(|i| one_shot(quantity, &sampler, p, cfg.seed, i))
        .collect())
}

/// Estimator of `||psi||_{U3}^8 = E_{x~p} <W_x>^2`.
pub fn estimate_gowers3_pow8(psi: &StateVector, delta: f64, seed: u64) -> Result<ShotEstimate> {
    let p = CharTable::from_state(psi)?;
    estimate_from_table(&p, Quantity::Gowers3Pow8, &EstimatorConfig::new(delta, seed))
}

/// Estimator of `E_{x~q} <W_x>^2`; labels come only from
/// Bell difference sampling.
pub fn estimate_weyl_expect_q(psi: &StateVector, delta: f64, seed: u64) -> Result<ShotEstimate> {
    let p = CharTable::from_state(psi)?;
    estimate_from_table(&p, Quantity::WeylExpectQ, &EstimatorConfig::new(delta, seed))
}

/// CSV `shot_index,v_bits,w_bits,outcome`; `outcome` is empty for plain
/// sampling runs.
pub fn write_samples_csv<W: Write>(
    out: W,
    points: &[SymplecticPoint],
    outcomes: Option<&[i8]>,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["shot_index", "v_bits", "w_bits", "outcome"])?;
    for (i, x) in points.iter().enumerate() {
        let outcome = outcomes.map(|o| o[i].to_string()).unwrap_or_default();
        wtr.write_record([
            i.to_string(),
            x.v_bits().to_bitstring(),
            x.w_bits().to_bitstring(),
            outcome,
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_shot_records_csv<W: Write>(out: W, records: &[ShotRecord]) -> Result<()> {
    let points: Vec<SymplecticPoint> = records.iter().map(|r| r.point).collect();
    let outcomes: Vec<i8> = records.iter().map(|r| r.outcome).collect();
    write_samples_csv(out, &points, Some(&outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::random_stabilizer;

    #[test]
    fn stabilizer_estimates_are_exactly_one() {
        let psi = random_stabilizer(4, 1).unwrap();
        let g = estimate_gowers3_pow8(&psi, 0.1, 3).unwrap();
        let q = estimate_weyl_expect_q(&psi, 0.1, 3).unwrap();
        assert_eq!(g.mean, 1.0);
        assert_eq!(q.mean, 1.0);
    }

    #[test]
    fn t_state_estimates() {
        let t = StateVector::t_state();
        let g = estimate_gowers3_pow8(&t, 0.02, 11).unwrap();
        assert!((0.73..=0.77).contains(&g.mean), "{}", g.mean);
        let q = estimate_weyl_expect_q(&t, 0.02, 11).unwrap();
        assert!((0.605..=0.645).contains(&q.mean), "{}", q.mean);
        assert_eq!(g, estimate_gowers3_pow8(&t, 0.02, 11).unwrap());
    }

    #[test]
    fn shot_sizing() {
        assert_eq!(required_shots(0.05, default_shot_constant()).unwrap(), 16955);
        let cfg = EstimatorConfig::new(0.05, 0).with_shots(100);
        assert!(matches!(cfg.resolve_shots(), Err(Error::InvalidConfig(_))));
        assert!(required_shots(0.0, 1.0).is_err());
        assert!(required_shots(1.0, 1.0).is_err());
    }

    #[test]
    fn records_agree_with_estimate() {
        let p = CharTable::from_state(&StateVector::t_state()).unwrap();
        let cfg = EstimatorConfig::new(0.2, 4);
        let recs = estimator_shots(&p, Quantity::WeylExpectQ, &cfg).unwrap();
        let est = estimate_from_table(&p, Quantity::WeylExpectQ, &cfg).unwrap();
        let plus = recs.iter().filter(|r| r.outcome == 1).count() as u64;
        assert_eq!(plus, est.plus_count);
        let mut buf = Vec::new();
        write_shot_records_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("shot_index,v_bits,w_bits,outcome\n0,"));
    }
}
