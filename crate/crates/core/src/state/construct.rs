use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::vector::StateVector;
use crate::error::{check_dims, Error, Result};
use crate::f2core::{solve_linear, swap_halves, F2Subspace, SymplecticPoint};
use crate::pauli::WeylOperator;
use crate::rng::{stream_rng, Domain};

/// A signed Weyl label `(-1)^s W_x`, written like `+XZ` or `-YY`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub point: SymplecticPoint,
    pub negative: bool,
}

impl SignedPauli {
    pub fn new(point: SymplecticPoint, negative: bool) -> Self {
        Self { point, negative }
    }

    pub fn positive(point: SymplecticPoint) -> Self {
        Self::new(point, false)
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}", self.point.pauli_string())
    }
}

impl FromStr for SignedPauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.chars().next() {
            Some('-') => (true, &s[1..]),
            Some('+') => (false, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::Malformed(format!("empty Pauli string {s:?}")));
        }
        Ok(Self::new(SymplecticPoint::from_pauli_string(body)?, negative))
    }
}

/// Checks that the generators are `n` commuting, independent labels.
pub fn validate_stabilizer_generators(gens: &[SignedPauli]) -> Result<usize> {
    let n = gens
        .first()
        .map(|g| g.point.n())
        .ok_or_else(|| Error::Malformed("no generators".into()))?;
    for g in gens {
        check_dims(n, g.point.n())?;
    }
    check_dims(n, gens.len())?;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.point.symplectic_product(&b.point)? == 1 {
                return Err(Error::NonCommuting);
            }
        }
    }
    let words: Vec<u64> = gens.iter().map(|g| g.point.index()).collect();
    F2Subspace::from_basis_words(2 * n, &words)?;
    Ok(n)
}

fn project(psi: &mut Vec<Complex64>, g: &SignedPauli) -> Result<()> {
    let w = WeylOperator::new(g.point).apply(psi)?;
    let sign = if g.negative { -1.0 } else { 1.0 };
    for (p, wv) in psi.iter_mut().zip(w) {
        *p = (*p + wv * sign) * 0.5;
    }
    Ok(())
}

/// The unique state with `P|psi> = |psi>` for every generator.
///
/// Projects computational basis states with `prod (I + P)/2` until one has
/// nonzero overlap, then normalizes and fixes the global phase (first
/// amplitude of maximal modulus real positive).
pub fn make_stabilizer_state(gens: &[SignedPauli]) -> Result<StateVector> {
    let n = validate_stabilizer_generators(gens)?;
    let dim = 1usize << n;
    // Overlaps |<stab|x>|^2 are 0 or at least 2^-n.
    let threshold = 0.5 / dim as f64;
    for x in 0..dim {
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[x] = Complex64::new(1.0, 0.0);
        for g in gens {
            project(&mut psi, g)?;
        }
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 > threshold {
            let mut s = StateVector::from_unnormalized(n, psi)?;
            s.fix_global_phase();
            return Ok(s);
        }
    }
    Err(Error::InvalidConfig("stabilizer projection vanished".into()))
}

/// A uniformly random Lagrangian basis: each new vector is uniform in the
/// symplectic complement of the current span, minus the span itself.
pub fn random_lagrangian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<SymplecticPoint>> {
    let mut span = F2Subspace::zero(2 * n)?;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let rows: Vec<(u64, u8)> = span
            .basis_words()
            .iter()
            .map(|&b| (swap_halves(n, b), 0))
            .collect();
        let (_, null) = solve_linear(2 * n, &rows).expect("homogeneous system");
        let x = null
            .iter()
            .fold(0u64, |acc, &b| if rng.random::<bool>() { acc ^ b } else { acc });
        if span.contains_word(x) {
            continue;
        }
        span.insert(x);
        out.push(SymplecticPoint::from_index(n, x));
    }
    Ok(out)
}

/// Random signed generators of a uniformly random stabilizer state.
pub fn random_stabilizer_generators<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<Vec<SignedPauli>> {
    Ok(random_lagrangian(n, rng)?
        .into_iter()
        .map(|p| SignedPauli::new(p, rng.random::<bool>()))
        .collect())
}

/// Uniformly random stabilizer state, reproducible from `seed`.
pub fn random_stabilizer(n: usize, seed: u64) -> Result<StateVector> {
    let mut rng = stream_rng(seed, Domain::StabilizerState, n as u64);
    make_stabilizer_state(&random_stabilizer_generators(n, &mut rng)?)
}

fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random pure state: complex Gaussian vector, normalized.
pub fn haar_random_state(n: usize, seed: u64) -> Result<StateVector> {
    let mut rng = stream_rng(seed, Domain::HaarState, n as u64);
    StateVector::from_unnormalized(n, gaussian_vector(1 << n, &mut rng))
}

/// `sqrt(1-eps)|stab> + sqrt(eps)|perp>` and its base state.
#[derive(Clone, Debug)]
pub struct NoisyStabilizer {
    pub state: StateVector,
    pub base: StateVector,
    pub eps: f64,
    /// `|<base|state>|^2`, equal to `1 - eps` up to rounding.
    pub base_fidelity: f64,
}

/// Random stabilizer mixed coherently with a Haar vector orthogonal to it.
pub fn noisy_stabilizer(n: usize, eps: f64, seed: u64) -> Result<NoisyStabilizer> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::OutOfRange(format!("eps = {eps} not in [0, 1]")));
    }
    let base = random_stabilizer(n, seed)?;
    let mut rng = stream_rng(seed, Domain::NoisyState, n as u64);
    let mut perp = gaussian_vector(1 << n, &mut rng);
    if n == 0 && eps > 0.0 {
        return Err(Error::OutOfRange("no orthogonal direction on 0 qubits".into()));
    }
    let overlap: Complex64 = base
        .amps()
        .iter()
        .zip(&perp)
        .map(|(b, p)| b.conj() * p)
        .sum();
    for (p, b) in perp.iter_mut().zip(base.amps()) {
        *p -= overlap * b;
    }
    let perp = StateVector::from_unnormalized(n, perp)?;
    let (a, c) = ((1.0 - eps).sqrt(), eps.sqrt());
    let amps = base
        .amps()
        .iter()
        .zip(perp.amps())
        .map(|(b, p)| b * a + p * c)
        .collect();
    let state = StateVector::from_unnormalized(n, amps)?;
    let base_fidelity = base.fidelity(&state)?;
    Ok(NoisyStabilizer {
        state,
        base,
        eps,
        base_fidelity,
    })
}
