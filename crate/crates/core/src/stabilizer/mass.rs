use rayon::prelude::*;

use crate::error::{check_dims, Error, Result};
use crate::f2core::{F2Subspace, SymplecticPoint, DEFAULT_ENUMERATION_CAP};
use crate::pauli::{canonical_subgroup, canonicalize_subgroup, Clifford};
use crate::state::{weyl_expectation, CharTable, StateVector};

/// `R_V(z) = 2^n sum_{y in V} p(y + z)` and its average over `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosetMass {
    pub total: f64,
    /// `E_{y in V} [2^n p(y + z)]`.
    pub mean: f64,
}

pub fn coset_mass(p: &CharTable, v: &F2Subspace, z: &SymplecticPoint) -> Result<CosetMass> {
    check_dims(2 * p.n(), v.n_ambient())?;
    check_dims(p.n(), z.n())?;
    let scale = (1u64 << p.n()) as f64;
    let members = v.coset_members_words(z.index(), DEFAULT_ENUMERATION_CAP)?;
    let total = scale * members.iter().map(|&x| p.at(x)).sum::<f64>();
    Ok(CosetMass {
        total,
        mean: total / members.len() as f64,
    })
}

/// Maximum of `R_V` over all shifts and over shifts inside `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosetMaxReport {
    pub global_max: f64,
    pub max_in_v: f64,
    /// `max_in_v` attains `global_max` (within `1e-12` relative).
    pub attained_in_v: bool,
}

/// Exhaustive over all `4^n` shifts; each coset sum is read off a table of
/// coset totals indexed by the quotient.
pub fn coset_max_check(p: &CharTable, v: &F2Subspace) -> Result<CosetMaxReport> {
    check_dims(2 * p.n(), v.n_ambient())?;
    let scale = (1u64 << p.n()) as f64;
    // R_V is constant on cosets: accumulate by the reduced representative.
    let mut by_coset = std::collections::HashMap::<u64, f64>::new();
    for (x, px) in p.values().iter().enumerate() {
        *by_coset.entry(v.reduce(x as u64)).or_default() += px;
    }
    let global_max = by_coset.values().cloned().fold(f64::NEG_INFINITY, f64::max) * scale;
    let max_in_v = by_coset.get(&0).copied().unwrap_or(0.0) * scale;
    Ok(CosetMaxReport {
        global_max,
        max_in_v,
        attained_in_v: max_in_v >= global_max * (1.0 - 1e-12),
    })
}

/// Both sides of the Pauli 1-design bound for `V` in canonical form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactB1Report {
    pub k: usize,
    pub m: usize,
    /// `sum_{t in <P^k, Z^m>} <psi~|W_t|psi~>^2` on the Clifford-rotated state.
    pub lhs: f64,
    /// The same sum read off the labels of `V` on the original state.
    pub lhs_labels: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn check_clifford_cap(n: usize) -> Result<()> {
    let cap = crate::caps::clifford_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "Clifford realization qubit count",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// Rotates `psi` by a Clifford `U` with `U V U^dag` canonical and sums the
/// squared expectations of the canonical subgroup; the bound is `2^{k+m}`.
pub fn fact_b1_check(psi: &StateVector, v: &F2Subspace) -> Result<FactB1Report> {
    let n = psi.n();
    check_dims(2 * n, v.n_ambient())?;
    check_clifford_cap(n)?;
    let cf = canonicalize_subgroup(v)?;
    let u = Clifford::from_symplectic(&cf.map)?;
    let rotated = StateVector::from_unnormalized(n, u.apply(psi.amps())?)?;
    let canon = canonical_subgroup(n, cf.k, cf.m)?;
    let lhs: f64 = canon
        .span_members_words(DEFAULT_ENUMERATION_CAP)?
        .par_iter()
        .map(|&t| {
            weyl_expectation(&rotated, &SymplecticPoint::from_index(n, t))
                .expect("matching n")
                .norm_sqr()
        })
        .sum();
    let lhs_labels: f64 = v
        .span_members_words(DEFAULT_ENUMERATION_CAP)?
        .par_iter()
        .map(|&x| {
            weyl_expectation(psi, &SymplecticPoint::from_index(n, x))
                .expect("matching n")
                .norm_sqr()
        })
        .sum();
    let rhs = (1u64 << (cf.k + cf.m)) as f64;
    Ok(FactB1Report {
        k: cf.k,
        m: cf.m,
        lhs,
        lhs_labels,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12),
    })
}

/// `gamma = E_{y in V} [2^n p(y)]` against the canonical `k` of `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosetRankReport {
    pub k: usize,
    pub m: usize,
    pub gamma: f64,
    /// `2^k <= 1/gamma`.
    pub holds: bool,
}

pub fn coset_rank_check(p: &CharTable, v: &F2Subspace) -> Result<CosetRankReport> {
    let cf = canonicalize_subgroup(v)?;
    let gamma = coset_mass(p, v, &SymplecticPoint::identity(p.n()))?.mean;
    Ok(CosetRankReport {
        k: cf.k,
        m: cf.m,
        gamma,
        holds: (1u64 << cf.k) as f64 * gamma <= 1.0 + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Domain};
    use crate::state::{haar_random_state, make_stabilizer_state, random_stabilizer_generators};

    #[test]
    fn full_space_total_mass() {
        let p = CharTable::from_state(&haar_random_state(3, 1).unwrap()).unwrap();
        let v = F2Subspace::full(6).unwrap();
        let z = SymplecticPoint::from_index(3, 17);
        let r = coset_mass(&p, &v, &z).unwrap();
        assert!((r.total - 8.0).abs() < 1e-10);
    }

    #[test]
    fn stabilizer_own_group() {
        let mut rng = stream_rng(2, Domain::Fixture, 0);
        for n in 1..=5 {
            let gens = random_stabilizer_generators(n, &mut rng).unwrap();
            let psi = make_stabilizer_state(&gens).unwrap();
            let pts: Vec<SymplecticPoint> = gens.iter().map(|g| g.point).collect();
            let v = F2Subspace::from_points(n, &pts).unwrap();
            let p = CharTable::from_state(&psi).unwrap();
            let r = coset_mass(&p, &v, &SymplecticPoint::identity(n)).unwrap();
            assert!((r.mean - 1.0).abs() < 1e-10);
            let b1 = fact_b1_check(&psi, &v).unwrap();
            assert_eq!((b1.k, b1.m), (0, n));
            assert!((b1.lhs - (1u64 << n) as f64).abs() < 1e-9);
            assert!(b1.holds);
        }
    }

    #[test]
    fn coset_max_in_v_brute_force() {
        let mut rng = stream_rng(3, Domain::Fixture, 0);
        for n in 1..=3 {
            let p = CharTable::from_state(&haar_random_state(n, n as u64).unwrap()).unwrap();
            for dim in 0..=2 * n {
                let v = F2Subspace::random(2 * n, dim, &mut rng).unwrap();
                let rep = coset_max_check(&p, &v).unwrap();
                let brute = (0..1u64 << (2 * n))
                    .map(|z| coset_mass(&p, &v, &SymplecticPoint::from_index(n, z)).unwrap().total)
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!((brute - rep.global_max).abs() < 1e-12);
                assert!(rep.attained_in_v);
            }
        }
    }

    #[test]
    fn b1_routes_agree_and_full_group_is_purity() {
        let mut rng = stream_rng(4, Domain::Fixture, 0);
        let psi = haar_random_state(4, 9).unwrap();
        for dim in 0..=8 {
            let v = F2Subspace::random(8, dim, &mut rng).unwrap();
            let r = fact_b1_check(&psi, &v).unwrap();
            assert!((r.lhs - r.lhs_labels).abs() < 1e-9);
            assert!(r.holds);
        }
        let r = fact_b1_check(&psi, &F2Subspace::full(8).unwrap()).unwrap();
        assert_eq!((r.k, r.m), (4, 0));
        assert!((r.lhs - 16.0).abs() < 1e-9);
    }
}
