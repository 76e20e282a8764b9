use rayon::prelude::*;

use super::tables::weyl_expectation;
use super::vector::StateVector;
use crate::error::{check_dims, Error, Result};
use crate::f2core::{fwht_in_place, SymplecticPoint};

/// A mixed state given as an ensemble `rho = sum_i w_i |psi_i><psi_i|`.
#[derive(Clone, Debug)]
pub struct Ensemble {
    n: usize,
    members: Vec<(f64, StateVector)>,
}

impl Ensemble {
    /// Weights must be nonnegative and sum to 1 (within 1e-10).
    pub fn new(members: Vec<(f64, StateVector)>) -> Result<Self> {
        let n = members.first().map(|m| m.1.n()).ok_or(Error::EmptySet)?;
        for (w, s) in &members {
            check_dims(n, s.n())?;
            if *w < 0.0 {
                return Err(Error::OutOfRange(format!("negative weight {w}")));
            }
        }
        let total: f64 = members.iter().map(|m| m.0).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::OutOfRange(format!("weights sum to {total}")));
        }
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Tr(rho W_x)`, real since `W_x` is Hermitian.
    pub fn expectation(&self, x: &SymplecticPoint) -> Result<f64> {
        let mut acc = 0.0;
        for (w, s) in &self.members {
            acc += w * weyl_expectation(s, x)?.re;
        }
        Ok(acc)
    }
}

/// `p_rho(x) = Tr(rho W_x)^2 / 2^n`. Sums to the purity `Tr rho^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedCharTable {
    n: usize,
    p: Vec<f64>,
}

impl MixedCharTable {
    pub fn from_ensemble(rho: &Ensemble) -> Result<Self> {
        let n = rho.n();
        let cap = crate::caps::table_cap().min(8);
        if n > cap {
            return Err(Error::CapExceeded {
                what: "mixed table qubit count",
                value: n,
                cap,
            });
        }
        let inv = 1.0 / (1u64 << n) as f64;
        let p = (0..1u64 << (2 * n))
            .into_par_iter()
            .map(|i| {
                let e = rho
                    .expectation(&SymplecticPoint::from_index(n, i))
                    .expect("matching n");
                e * e * inv
            })
            .collect();
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn purity(&self) -> f64 {
        self.p.iter().sum()
    }

    /// `2^{3n} E_{x,y} sum_{a,b} p(x,a) p(y,b) p(x+y,a+b) = 2^n sum_z p(z) (p*p)(z)`.
    pub fn triple_product(&self) -> f64 {
        let mut h = self.p.clone();
        fwht_in_place(&mut h).expect("power-of-two length");
        h.iter_mut().for_each(|z| *z *= *z);
        fwht_in_place(&mut h).expect("power-of-two length");
        let inv = 1.0 / h.len() as f64;
        let s = (1u64 << self.n) as f64;
        h.iter().zip(&self.p).map(|(c, p)| c * inv * p * s).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{haar_random_state, CharTable};

    fn naive_triple(n: usize, p: &[f64]) -> f64 {
        let len = p.len();
        let mut acc = 0.0;
        for a in 0..len {
            for b in 0..len {
                acc += p[a] * p[b] * p[a ^ b];
            }
        }
        acc * (1u64 << n) as f64
    }

    #[test]
    fn pure_ensemble_matches_pure_table() {
        let psi = haar_random_state(3, 4).unwrap();
        let rho = Ensemble::new(vec![(1.0, psi.clone())]).unwrap();
        let m = MixedCharTable::from_ensemble(&rho).unwrap();
        let p = CharTable::from_state(&psi).unwrap();
        for (a, b) in m.values().iter().zip(p.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((m.triple_product() - p.weyl_expect_q()).abs() < 1e-10);
    }

    #[test]
    fn mixed_table_bounds_and_triple_product() {
        let n = 3;
        let rho = Ensemble::new(vec![
            (0.3, haar_random_state(n, 1).unwrap()),
            (0.7, haar_random_state(n, 2).unwrap()),
        ])
        .unwrap();
        let m = MixedCharTable::from_ensemble(&rho).unwrap();
        let inv = 1.0 / 8.0;
        assert!(m.values().iter().all(|&v| v <= inv + 1e-12));
        assert!(m.purity() < 1.0);
        assert!((m.triple_product() - naive_triple(n, m.values())).abs() < 1e-12);
    }
}
