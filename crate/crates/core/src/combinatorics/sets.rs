use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::f2core::{SymplecticPoint, MAX_QUBITS};

/// Pair-operation budget for sumsets and closure statistics.
pub const PAIR_BUDGET: u64 = 100_000_000;

/// A set of labels in `F2^(2n)`, kept sorted by packed index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    members: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::OutOfRange(format!("n = {n} exceeds {MAX_QUBITS}")));
        }
        Ok(Self { n, members: Vec::new() })
    }

    /// Deduplicates; every index must fit in `2n` bits.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        let bound = if 2 * n >= 64 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
        for x in indices {
            if x > bound {
                return Err(Error::OutOfRange(format!("index {x} outside F2^{}", 2 * n)));
            }
            s.members.push(x);
        }
        s.members.sort_unstable();
        s.members.dedup();
        Ok(s)
    }

    pub fn from_points(n: usize, points: &[SymplecticPoint]) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: p.n() });
        }
        Self::from_indices(n, points.iter().map(|p| p.index()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> &[u64] {
        &self.members
    }

    pub fn points(&self) -> Vec<SymplecticPoint> {
        self.members
            .iter()
            .map(|&x| SymplecticPoint::from_index(self.n, x))
            .collect()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn contains_point(&self, p: &SymplecticPoint) -> bool {
        p.n() == self.n && self.contains(p.index())
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.n == other.n && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.same_n(other)?;
        PointSet::from_indices(self.n, self.members.iter().chain(&other.members).copied())
    }

    /// `c + A`.
    pub fn translate(&self, c: u64) -> PointSet {
        let mut members: Vec<u64> = self.members.iter().map(|&x| x ^ c).collect();
        members.sort_unstable();
        PointSet { n: self.n, members }
    }

    fn same_n(&self, other: &PointSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }
}

pub(crate) fn check_pairs(a: usize, b: usize) -> Result<()> {
    let pairs = a as u64 * b as u64;
    if pairs > PAIR_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{pairs} pair operations exceed {PAIR_BUDGET}"
        )));
    }
    Ok(())
}

/// Pr over uniform ordered pairs `(x, y)` of `S` that `x + y` lies in `S`.
pub fn closure_probability(s: &PointSet) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    check_pairs(s.len(), s.len())?;
    let m = s.indices();
    let hits: u64 = m
        .iter()
        .map(|&x| m.iter().filter(|&&y| s.contains(x ^ y)).count() as u64)
        .sum();
    Ok(hits as f64 / (m.len() * m.len()) as f64)
}

/// `A + B`.
pub fn sumset(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    a.same_n(b)?;
    check_pairs(a.len(), b.len())?;
    let n = a.n;
    if 2 * n <= 26 {
        let mut seen = vec![false; 1usize << (2 * n)];
        for &x in a.indices() {
            for &y in b.indices() {
                seen[(x ^ y) as usize] = true;
            }
        }
        let members = (0..seen.len() as u64).filter(|&i| seen[i as usize]).collect();
        return Ok(PointSet { n, members });
    }
    let mut seen = HashSet::new();
    for &x in a.indices() {
        for &y in b.indices() {
            seen.insert(x ^ y);
        }
    }
    PointSet::from_indices(n, seen)
}

/// `tA = A + ... + A` (`t` summands, `t >= 1`).
pub fn iterated_sumset(a: &PointSet, t: usize) -> Result<PointSet> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..t {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

/// `|A + A| / |A|`.
pub fn doubling(a: &PointSet) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(sumset(a, a)?.len() as f64 / a.len() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlunneckeReport {
    pub size_a: usize,
    pub size_2a: usize,
    pub size_4a: usize,
    /// `|4A| / |2A|`.
    pub ratio: f64,
    /// `(|2A| / |A|)^4`.
    pub bound: f64,
    pub holds: bool,
}

/// Checks `|4A|/|2A| <= (|2A|/|A|)^4`.
pub fn plunnecke_check(a: &PointSet) -> Result<PlunneckeReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let a2 = sumset(a, a)?;
    let a4 = sumset(&a2, &a2)?;
    let ratio = a4.len() as f64 / a2.len() as f64;
    let bound = (a2.len() as f64 / a.len() as f64).powi(4);
    Ok(PlunneckeReport {
        size_a: a.len(),
        size_2a: a2.len(),
        size_4a: a4.len(),
        ratio,
        bound,
        holds: ratio <= bound * (1.0 + 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::F2Subspace;
    use crate::rng::{stream_rng, Domain};
    use rand::seq::index::sample;
    use std::collections::BTreeSet;

    fn naive_sumset(a: &PointSet, b: &PointSet) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for &x in a.indices() {
            for &y in b.indices() {
                out.insert(x ^ y);
            }
        }
        out
    }

    fn random_set(n: usize, size: usize, seed: u64) -> PointSet {
        let mut rng = stream_rng(seed, Domain::Fixture, 0);
        let idx = sample(&mut rng, 1 << (2 * n), size);
        PointSet::from_indices(n, idx.into_iter().map(|i| i as u64)).unwrap()
    }

    #[test]
    fn closure_of_small_sets() {
        let v = F2Subspace::from_basis_words(4, &[0b0001, 0b0110]).unwrap();
        let s = PointSet::from_indices(2, v.span_members_words(8).unwrap()).unwrap();
        assert_eq!(closure_probability(&s).unwrap(), 1.0);
        let s = PointSet::from_indices(2, [0, 1]).unwrap();
        assert_eq!(closure_probability(&s).unwrap(), 1.0);
        let s = PointSet::from_indices(2, [0, 1, 2]).unwrap();
        assert!((closure_probability(&s).unwrap() - 7.0 / 9.0).abs() < 1e-15);
        assert!(closure_probability(&PointSet::empty(2).unwrap()).is_err());
    }

    #[test]
    fn closure_one_iff_subgroup() {
        // All subsets of F2^4 of size <= 8 are too many to list quickly in
        // debug builds; subsets of size <= 4 of F2^4 cover every subgroup
        // of order <= 4 and plenty of near misses.
        let subgroups: BTreeSet<Vec<u64>> = crate::f2core::all_subspaces(4)
            .unwrap()
            .iter()
            .map(|v| {
                let mut m = v.span_members_words(8).unwrap();
                m.sort_unstable();
                m
            })
            .collect();
        for mask in 1u32..1 << 16 {
            if mask.count_ones() > 4 {
                continue;
            }
            let s = PointSet::from_indices(2, (0..16u64).filter(|i| mask >> i & 1 == 1)).unwrap();
            let l = closure_probability(&s).unwrap();
            assert_eq!(l == 1.0, subgroups.contains(s.indices()), "{:?}", s.indices());
        }
    }

    #[test]
    fn sumset_examples() {
        let a = PointSet::from_indices(2, [0, 1, 2]).unwrap();
        let a2 = sumset(&a, &a).unwrap();
        assert_eq!(a2.indices(), &[0, 1, 2, 3]);
        assert!((doubling(&a).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let v = F2Subspace::from_basis_words(6, &[0b000011, 0b110000]).unwrap();
        let s = PointSet::from_indices(3, v.span_members_words(8).unwrap()).unwrap();
        assert_eq!(sumset(&s, &s).unwrap(), s);
        assert_eq!(doubling(&s).unwrap(), 1.0);
    }

    #[test]
    fn sumset_matches_naive_and_is_commutative() {
        for seed in 0..20 {
            let a = random_set(3, 10, seed);
            let b = random_set(3, 7, seed + 100);
            let c = random_set(3, 5, seed + 200);
            let ab = sumset(&a, &b).unwrap();
            assert_eq!(ab.indices().iter().copied().collect::<BTreeSet<_>>(), naive_sumset(&a, &b));
            assert_eq!(ab, sumset(&b, &a).unwrap());
            assert_eq!(
                sumset(&ab, &c).unwrap(),
                sumset(&a, &sumset(&b, &c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn iterated_and_plunnecke() {
        for seed in 0..10 {
            let a = random_set(4, 32, seed);
            let r = plunnecke_check(&a).unwrap();
            assert!(r.holds);
            assert_eq!(iterated_sumset(&a, 4).unwrap().len(), r.size_4a);
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(check_pairs(10_001, 10_000).is_err());
        assert!(check_pairs(10_000, 10_000).is_ok());
    }
}
