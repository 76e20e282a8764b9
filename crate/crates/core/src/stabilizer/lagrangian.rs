use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::f2core::{symplectic_form_index, F2Subspace, SymplecticPoint};
use crate::state::{make_stabilizer_state, CharTable, SignedPauli, StateVector};

/// An isotropic subspace of F2^(2n) of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LagrangianSubspace {
    n: usize,
    subspace: F2Subspace,
}

impl LagrangianSubspace {
    pub fn new(subspace: F2Subspace) -> Result<Self> {
        if subspace.n_ambient() % 2 != 0 {
            return Err(Error::NotLagrangian("odd ambient dimension".into()));
        }
        let n = subspace.n_ambient() / 2;
        if subspace.dim() != n {
            return Err(Error::NotLagrangian(format!(
                "dimension {} != n = {n}",
                subspace.dim()
            )));
        }
        if !is_isotropic(n, subspace.basis_words()) {
            return Err(Error::NotLagrangian("basis is not isotropic".into()));
        }
        Ok(Self { n, subspace })
    }

    pub fn from_points(points: &[SymplecticPoint]) -> Result<Self> {
        let n = points
            .first()
            .map(|p| p.n())
            .ok_or_else(|| Error::NotLagrangian("empty basis".into()))?;
        Self::new(F2Subspace::from_points(n, points)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subspace(&self) -> &F2Subspace {
        &self.subspace
    }

    pub fn basis_points(&self) -> Vec<SymplecticPoint> {
        self.subspace.basis_points()
    }

    pub fn contains(&self, x: &SymplecticPoint) -> bool {
        self.subspace.contains_point(x)
    }

    pub fn members(&self) -> Result<Vec<u64>> {
        self.subspace
            .span_members_words(crate::f2core::DEFAULT_ENUMERATION_CAP)
    }
}

/// All pairwise symplectic products vanish.
pub fn is_isotropic(n: usize, words: &[u64]) -> bool {
    words
        .iter()
        .enumerate()
        .all(|(i, &a)| words[i + 1..].iter().all(|&b| symplectic_form_index(n, a, b) == 0))
}

/// `prod_{i=1}^n (2^i + 1)`.
pub fn lagrangian_count(n: usize) -> u64 {
    (1..=n as u32).map(|i| (1u64 << i) + 1).product()
}

fn check_fidelity_cap(n: usize) -> Result<()> {
    let cap = crate::caps::fidelity_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "Lagrangian enumeration qubit count",
            value: n,
            cap,
        });
    }
    Ok(())
}

fn enumerate_uncached(n: usize) -> Vec<LagrangianSubspace> {
    let mut level: BTreeSet<F2Subspace> = BTreeSet::new();
    level.insert(F2Subspace::zero(2 * n).expect("small ambient"));
    for _ in 0..n {
        let next: BTreeSet<F2Subspace> = level
            .par_iter()
            .flat_map_iter(|s| {
                let basis = s.basis_words().to_vec();
                (1..1u64 << (2 * n))
                    .filter(move |&x| {
                        !s.contains_word(x)
                            && basis.iter().all(|&b| symplectic_form_index(n, x, b) == 0)
                    })
                    .map(move |x| {
                        let mut t = s.clone();
                        t.insert(x);
                        t
                    })
            })
            .collect();
        level = next;
    }
    level
        .into_iter()
        .map(|s| LagrangianSubspace { n, subspace: s })
        .collect()
}

static LAGRANGIANS: [OnceLock<Vec<LagrangianSubspace>>; 9] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// Every Lagrangian subspace of F2^(2n), in canonical order; cached per `n`.
pub fn enumerate_lagrangians(n: usize) -> Result<&'static [LagrangianSubspace]> {
    check_fidelity_cap(n)?;
    let slot = LAGRANGIANS.get(n).ok_or(Error::CapExceeded {
        what: "Lagrangian enumeration qubit count",
        value: n,
        cap: LAGRANGIANS.len() - 1,
    })?;
    Ok(slot.get_or_init(|| enumerate_uncached(n)))
}

/// A stabilizer state together with its signed generators.
#[derive(Clone, Debug)]
pub struct StabilizerEntry {
    pub generators: Vec<SignedPauli>,
    pub state: StateVector,
}

static STABILIZER_STATES: [OnceLock<Vec<StabilizerEntry>>; 9] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// All `2^n |Lagrangians|` stabilizer states: Lagrangians in enumeration
/// order, then sign patterns in increasing binary order.
pub fn enumerate_stabilizer_states(n: usize) -> Result<&'static [StabilizerEntry]> {
    let lags = enumerate_lagrangians(n)?;
    let slot = &STABILIZER_STATES[n];
    Ok(slot.get_or_init(|| {
        lags.par_iter()
            .flat_map_iter(|l| {
                let basis = l.basis_points();
                (0..1u64 << n).map(move |signs| {
                    let generators: Vec<SignedPauli> = basis
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| SignedPauli::new(p, (signs >> i) & 1 == 1))
                        .collect();
                    let state = make_stabilizer_state(&generators).expect("valid generators");
                    StabilizerEntry { generators, state }
                })
            })
            .collect()
    }))
}

/// Result of the brute-force stabilizer fidelity search.
#[derive(Clone, Debug)]
pub struct FidelityResult {
    pub value: f64,
    /// Position in [`enumerate_stabilizer_states`] order.
    pub index: usize,
    pub argmax: StabilizerEntry,
}

/// `max |<phi|psi>|^2` over every stabilizer state; ties go to the first in
/// enumeration order.
pub fn stabilizer_fidelity_bruteforce(psi: &StateVector) -> Result<FidelityResult> {
    let states = enumerate_stabilizer_states(psi.n())?;
    let (index, value) = states
        .par_iter()
        .enumerate()
        .map(|(i, e)| (i, e.state.fidelity(psi).expect("matching n")))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(FidelityResult {
        value,
        index,
        argmax: states[index].clone(),
    })
}

/// `sum_{x in T} p(x)`, a lower bound on the stabilizer fidelity.
pub fn lagrangian_mass(p: &CharTable, t: &LagrangianSubspace) -> Result<f64> {
    crate::error::check_dims(p.n(), t.n())?;
    Ok(t.members()?.iter().map(|&x| p.at(x)).sum())
}

/// `max_T sum_{x in T} p(x)` over all Lagrangians (`n <= 4`).
pub fn best_lagrangian_mass(p: &CharTable) -> Result<(f64, usize)> {
    let lags = enumerate_lagrangians(p.n())?;
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, l) in lags.iter().enumerate() {
        let m = lagrangian_mass(p, l)?;
        if m > best.0 {
            best = (m, i);
        }
    }
    Ok(best)
}
