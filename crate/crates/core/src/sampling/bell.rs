use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::f2core::SymplecticPoint;
use crate::pauli::WeylOperator;
use crate::rng::{stream_rng, Domain};
use crate::state::{CharTable, StateVector};

/// Inverse-CDF sampler over a table indexed by packed labels.
#[derive(Clone, Debug)]
pub struct TableSampler {
    n: usize,
    cdf: Vec<f64>,
}

impl TableSampler {
    pub fn new(n: usize, weights: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let cdf: Vec<f64> = weights
            .iter()
            .map(|&w| {
                if w < 0.0 {
                    return f64::NAN;
                }
                acc += w;
                acc
            })
            .collect();
        if cdf.iter().any(|c| c.is_nan()) || !(acc > 0.0) {
            return Err(Error::Malformed("sampling weights must be nonnegative".into()));
        }
        Ok(Self { n, cdf })
    }

    pub fn from_char_table(p: &CharTable) -> Result<Self> {
        Self::new(p.n(), p.values())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// First index whose cumulative mass exceeds `u * total`; zero-mass
    /// entries are never returned.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let total = *self.cdf.last().expect("nonempty table");
        let u = rng.random::<f64>() * total;
        let i = self.cdf.partition_point(|&c| c <= u);
        i.min(self.cdf.len() - 1) as u64
    }
}

/// `shots` i.i.d. draws from `p`, as Bell sampling on `psi (x) psi*` yields.
/// Shot `i` reads keystream `i`, so the output is independent of threading.
pub fn bell_sample_table(p: &CharTable, shots: u64, seed: u64) -> Result<Vec<SymplecticPoint>> {
    let sampler = TableSampler::from_char_table(p)?;
    let n = p.n();
    Ok((0..shots)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, Domain::BellSample, i);
            SymplecticPoint::from_index(n, sampler.draw(&mut rng))
        })
        .collect())
}

pub fn bell_sample(psi: &StateVector, shots: u64, seed: u64) -> Result<Vec<SymplecticPoint>> {
    bell_sample_table(&CharTable::from_state(psi)?, shots, seed)
}

/// Draws `x + y` with `x, y` independent draws from `p`, i.e. a draw from
/// `q = p * p`.
pub fn bell_difference_sample_table(
    p: &CharTable,
    shots: u64,
    seed: u64,
) -> Result<Vec<SymplecticPoint>> {
    let sampler = TableSampler::from_char_table(p)?;
    let n = p.n();
    Ok((0..shots)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, Domain::BellDifference, i);
            let x = sampler.draw(&mut rng);
            let y = sampler.draw(&mut rng);
            SymplecticPoint::from_index(n, x ^ y)
        })
        .collect())
}

pub fn bell_difference_sample(
    psi: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<Vec<SymplecticPoint>> {
    bell_difference_sample_table(&CharTable::from_state(psi)?, shots, seed)
}

/// Largest `n` for the explicit `4^n`-dimensional two-register simulations.
pub const BELL_SLOW_CAP: usize = 4;
pub const TWO_COPY_CAP: usize = 3;

fn check_cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, value: n, cap });
    }
    Ok(())
}

/// Apply a Weyl operator to register A (low `n` bits) or B (high `n` bits)
/// of a two-register vector.
fn apply_on_register(
    n: usize,
    x: &SymplecticPoint,
    high: bool,
    vec: &[Complex64],
) -> Result<Vec<Complex64>> {
    let dim = 1usize << n;
    let w = WeylOperator::new(*x);
    let mut out = vec![Complex64::new(0.0, 0.0); vec.len()];
    if high {
        for a in 0..dim {
            let col: Vec<Complex64> = (0..dim).map(|b| vec[a | (b << n)]).collect();
            for (b, z) in w.apply(&col)?.into_iter().enumerate() {
                out[a | (b << n)] = z;
            }
        }
    } else {
        for b in 0..dim {
            let row = &vec[b << n..(b + 1) << n];
            out[b << n..(b + 1) << n].copy_from_slice(&w.apply(row)?);
        }
    }
    Ok(out)
}

/// `|<Phi_x| psi (x) psi*>|^2` for every label, with
/// `|Phi_x> = (W_x (x) I) 2^{-n/2} sum_y |y>|y>`, from explicit vectors.
pub fn bell_basis_probabilities(psi: &StateVector) -> Result<Vec<f64>> {
    let n = psi.n();
    check_cap(n, BELL_SLOW_CAP, "explicit Bell-basis qubit count")?;
    let dim = 1usize << n;
    let f = psi.amps();
    let mut joint = vec![Complex64::new(0.0, 0.0); dim * dim];
    for b in 0..dim {
        for a in 0..dim {
            joint[a | (b << n)] = f[a] * f[b].conj();
        }
    }
    let mut phi_plus = vec![Complex64::new(0.0, 0.0); dim * dim];
    let s = 1.0 / (dim as f64).sqrt();
    for y in 0..dim {
        phi_plus[y | (y << n)] = Complex64::new(s, 0.0);
    }
    (0..1u64 << (2 * n))
        .map(|i| {
            let x = SymplecticPoint::from_index(n, i);
            let phi = apply_on_register(n, &x, false, &phi_plus)?;
            let amp: Complex64 = phi.iter().zip(&joint).map(|(a, b)| a.conj() * b).sum();
            Ok(amp.norm_sqr())
        })
        .collect()
}

/// `Pr[+1]` when measuring `W_x (x) W_x` on `psi (x) psi`, from the explicit
/// two-copy vector: `<psi psi| (I + W (x) W)/2 |psi psi>`.
pub fn two_copy_plus_probability(psi: &StateVector, x: &SymplecticPoint) -> Result<f64> {
    let n = psi.n();
    check_cap(n, TWO_COPY_CAP, "explicit two-copy qubit count")?;
    let dim = 1usize << n;
    let f = psi.amps();
    let mut joint = vec![Complex64::new(0.0, 0.0); dim * dim];
    for b in 0..dim {
        for a in 0..dim {
            joint[a | (b << n)] = f[a] * f[b];
        }
    }
    let ww = apply_on_register(n, x, true, &apply_on_register(n, x, false, &joint)?)?;
    let overlap: Complex64 = joint.iter().zip(&ww).map(|(a, b)| a.conj() * b).sum();
    Ok((1.0 + overlap.re) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{haar_random_state, random_stabilizer, weyl_expectation};

    #[test]
    fn slow_bell_path_matches_table() {
        for n in 1..=4 {
            let psi = haar_random_state(n, 70 + n as u64).unwrap();
            let slow = bell_basis_probabilities(&psi).unwrap();
            let p = CharTable::from_state(&psi).unwrap();
            for (a, b) in slow.iter().zip(p.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn two_copy_collapse() {
        for n in 1..=3 {
            let psi = haar_random_state(n, n as u64).unwrap();
            for i in 0..1u64 << (2 * n) {
                let x = SymplecticPoint::from_index(n, i);
                let e = weyl_expectation(&psi, &x).unwrap().re;
                let pr = two_copy_plus_probability(&psi, &x).unwrap();
                assert!((pr - (1.0 + e * e) / 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stabilizer_samples_stay_in_the_group() {
        let psi = random_stabilizer(4, 3).unwrap();
        let p = CharTable::from_state(&psi).unwrap();
        for x in bell_sample(&psi, 2000, 1).unwrap() {
            assert!(p.get(&x) > 1e-9);
        }
        for x in bell_difference_sample(&psi, 2000, 1).unwrap() {
            assert!(p.get(&x) > 1e-9);
        }
    }

    #[test]
    fn zero_mass_never_drawn() {
        let s = TableSampler::new(2, &[0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let mut rng = stream_rng(0, Domain::Fixture, 0);
        for _ in 0..1000 {
            let d = s.draw(&mut rng);
            assert!(d == 1 || d == 4);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let psi = haar_random_state(3, 0).unwrap();
        assert_eq!(bell_sample(&psi, 100, 5).unwrap(), bell_sample(&psi, 100, 5).unwrap());
        assert_ne!(bell_sample(&psi, 100, 5).unwrap(), bell_sample(&psi, 100, 6).unwrap());
    }
}
