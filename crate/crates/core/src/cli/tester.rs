use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{estimate_from_table, EstimatorConfig, Quantity, ShotEstimate};
use crate::state::{CharTable, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterConfig {
    pub eps1: f64,
    /// Far-side parameter; only checked against `eps1^C` in auto mode.
    pub eps2: Option<f64>,
    pub exponent_c: f64,
    /// `None` is auto: `delta = eps1^C / 10`.
    pub delta: Option<f64>,
    /// `None` is auto: the Hoeffding count for `delta / 2`.
    pub shots: Option<u64>,
    pub seed: u64,
}

impl TesterConfig {
    pub fn new(eps1: f64, seed: u64) -> Self {
        Self {
            eps1,
            eps2: None,
            exponent_c: 6.0,
            delta: None,
            shots: None,
            seed,
        }
    }

    /// `(delta, threshold)` after validation; the threshold is
    /// `eps1^C - delta / 2`.
    pub fn resolve(&self) -> Result<(f64, f64)> {
        if !(self.eps1 > 0.0 && self.eps1 <= 1.0) {
            return Err(Error::InvalidConfig(format!("eps1 = {} not in (0, 1]", self.eps1)));
        }
        if !(self.exponent_c > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "exponent C = {} must exceed 1",
                self.exponent_c
            )));
        }
        let yes = self.eps1.powf(self.exponent_c);
        let delta = match self.delta {
            Some(d) => d,
            None => {
                if let Some(e2) = self.eps2 {
                    if e2 > yes {
                        return Err(Error::InvalidConfig(format!(
                            "eps2 = {e2} exceeds eps1^C = {yes}; auto delta needs eps2 <= eps1^C"
                        )));
                    }
                }
                yes / 10.0
            }
        };
        if !(delta > 0.0 && delta < 2.0) {
            return Err(Error::InvalidConfig(format!("delta = {delta} must lie in (0, 2)")));
        }
        Ok((delta, yes - delta / 2.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Close,
    Far,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterVerdict {
    pub decision: Decision,
    pub estimate: ShotEstimate,
    pub threshold: f64,
    pub delta: f64,
    /// `(4E - 1) / 3`, a lower bound on stabilizer fidelity, reported when
    /// the estimate `E` is at least `1/4`.
    pub fidelity_lower_bound: Option<f64>,
    pub config: TesterConfig,
}

/// Estimates `E_{x~q} <W_x>^2` to within `delta / 2` and accepts when the
/// estimate reaches the threshold.
pub fn run_tester_on_table(p: &CharTable, cfg: &TesterConfig) -> Result<TesterVerdict> {
    let (delta, threshold) = cfg.resolve()?;
    let mut est_cfg = EstimatorConfig::new(delta / 2.0, cfg.seed);
    est_cfg.shots = cfg.shots;
    let estimate = estimate_from_table(p, Quantity::WeylExpectQ, &est_cfg)?;
    let e = estimate.mean;
    Ok(TesterVerdict {
        decision: if e >= threshold { Decision::Close } else { Decision::Far },
        threshold,
        delta,
        fidelity_lower_bound: (e >= 0.25).then(|| (4.0 * e - 1.0) / 3.0),
        config: *cfg,
        estimate,
    })
}

pub fn run_tester(psi: &StateVector, cfg: &TesterConfig) -> Result<TesterVerdict> {
    run_tester_on_table(&CharTable::from_state(psi)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_is_close() {
        let psi = StateVector::basis(8, 0).unwrap();
        let v = run_tester(&psi, &TesterConfig::new(0.9, 1)).unwrap();
        assert_eq!(v.decision, Decision::Close);
        assert_eq!(v.estimate.mean, 1.0);
        assert!((v.threshold - 0.95 * 0.9f64.powi(6)).abs() < 1e-12);
        assert_eq!(v.fidelity_lower_bound, Some(1.0));
    }

    #[test]
    fn eps2_validated_in_auto_mode() {
        let mut cfg = TesterConfig::new(0.9, 0);
        cfg.eps2 = Some(0.6);
        assert!(matches!(cfg.resolve(), Err(Error::InvalidConfig(_))));
        cfg.eps2 = Some(0.5);
        assert!(cfg.resolve().is_ok());
        cfg.eps2 = Some(0.6);
        cfg.delta = Some(0.05);
        assert!(cfg.resolve().is_ok());
        assert!(TesterConfig::new(0.0, 0).resolve().is_err());
        let mut bad = TesterConfig::new(0.5, 0);
        bad.delta = Some(0.0);
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn verdict_flips_monotonically_in_eps1() {
        let t = StateVector::t_state().tensor_power(2).unwrap();
        let p = CharTable::from_state(&t).unwrap();
        let mut seen_far = false;
        for i in 1..=20 {
            let mut cfg = TesterConfig::new(0.8 + 0.01 * i as f64, 3);
            cfg.shots = Some(400_000);
            let v = run_tester_on_table(&p, &cfg).unwrap();
            if seen_far {
                assert_eq!(v.decision, Decision::Far);
            }
            seen_far |= v.decision == Decision::Far;
        }
        assert!(seen_far);
    }
}
