use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sets::{closure_probability, PointSet};
use crate::error::{Error, Result};
use crate::f2core::SymplecticPoint;
use crate::rng::{stream_rng, Domain};
use crate::state::{CharTable, StateVector};

/// Slack on the threshold `2^n p(x) >= gamma / 4`.
const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceSetReport {
    pub gamma: f64,
    #[serde(rename = "X_size")]
    pub x_size: usize,
    #[serde(rename = "S_size")]
    pub s_size: usize,
    #[serde(rename = "L_value")]
    pub l_value: f64,
    pub contains_zero: bool,
    /// Minimum of `<W_x>^2 = 2^n p(x)` over `S`.
    pub min_expectation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChoiceSet {
    /// Labels with `2^n p(x) >= gamma / 4`.
    pub x: PointSet,
    pub s: PointSet,
    pub report: ChoiceSetReport,
}

/// Keeps each `x` of the high-mass set with probability `2^n p(x)`; the
/// identity label is always kept.
pub fn build_choice_set_from_table(p: &CharTable, gamma: f64, seed: u64) -> Result<ChoiceSet> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::OutOfRange(format!("gamma = {gamma} not in (0, 1]")));
    }
    let n = p.n();
    let scale = (1u64 << n) as f64;
    let mut rng = stream_rng(seed, Domain::ChoiceSet, 0);
    let mut xs = Vec::new();
    let mut ss = Vec::new();
    for (i, &pi) in p.values().iter().enumerate() {
        let e = scale * pi;
        if e < gamma / 4.0 - THRESHOLD_SLACK {
            continue;
        }
        xs.push(i as u64);
        let u: f64 = rng.random();
        if i == 0 || u < e {
            ss.push(i as u64);
        }
    }
    let x = PointSet::from_indices(n, xs)?;
    let s = PointSet::from_indices(n, ss)?;
    let min_expectation = s
        .indices()
        .iter()
        .map(|&i| scale * p.at(i))
        .fold(f64::INFINITY, f64::min);
    let report = ChoiceSetReport {
        gamma,
        x_size: x.len(),
        s_size: s.len(),
        l_value: closure_probability(&s)?,
        contains_zero: s.contains(0),
        min_expectation,
    };
    Ok(ChoiceSet { x, s, report })
}

pub fn build_choice_set(psi: &StateVector, gamma: f64, seed: u64) -> Result<ChoiceSet> {
    build_choice_set_from_table(&CharTable::from_state(psi)?, gamma, seed)
}

/// `sum_j <W_{P_j}>^2` over a family of labels.
pub fn squared_expectation_sum(p: &CharTable, family: &[SymplecticPoint]) -> f64 {
    let scale = (1u64 << p.n()) as f64;
    family.iter().map(|x| scale * p.get(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::nac;
    use crate::state::{haar_random_state, random_stabilizer};

    #[test]
    fn stabilizer_choice_set_is_the_group() {
        let psi = random_stabilizer(3, 9).unwrap();
        for gamma in [0.1, 0.5, 1.0] {
            let c = build_choice_set(&psi, gamma, 1).unwrap();
            assert_eq!(c.x, c.s);
            assert_eq!(c.report.s_size, 8);
            assert_eq!(c.report.l_value, 1.0);
            assert!((c.report.min_expectation - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn t_squared_has_nine_candidates() {
        let t2 = StateVector::t_state().tensor_power(2).unwrap();
        let p = CharTable::from_state(&t2).unwrap();
        let mut mean = 0.0;
        let mut var = 0.0;
        for &i in build_choice_set_from_table(&p, 0.25, 0).unwrap().x.indices() {
            let e = 4.0 * p.at(i);
            if i != 0 {
                mean += e;
                var += e * (1.0 - e);
            }
        }
        mean += 1.0;
        let seeds = 400;
        let mut total = 0usize;
        for seed in 0..seeds {
            let c = build_choice_set_from_table(&p, 0.25, seed).unwrap();
            assert_eq!(c.report.x_size, 9);
            assert!(c.report.contains_zero && c.s.is_subset_of(&c.x));
            total += c.report.s_size;
        }
        let emp = total as f64 / seeds as f64;
        let sigma = (var / seeds as f64).sqrt();
        assert!((emp - mean).abs() < 3.0 * sigma, "{emp} vs {mean}");
    }

    #[test]
    fn uncertainty_relation_on_witnesses() {
        for seed in 0..10 {
            let psi = haar_random_state(2, seed).unwrap();
            let p = CharTable::from_state(&psi).unwrap();
            let all = PointSet::from_indices(2, 0..16).unwrap();
            let w = nac(&all).witness;
            assert!(squared_expectation_sum(&p, &w) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn gamma_validated() {
        let p = CharTable::from_state(&StateVector::t_state()).unwrap();
        assert!(build_choice_set_from_table(&p, 0.0, 0).is_err());
        assert!(build_choice_set_from_table(&p, 1.5, 0).is_err());
    }
}
