use std::collections::BTreeSet;

use rand::Rng;

use super::bits::{low_mask, BitVec, SymplecticPoint, MAX_BITS};
use crate::error::{check_dims, Error, Result};

/// Default cap on `dim` for explicit enumeration of a subspace.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// An F2-linear subspace of F2^L, stored as a reduced row-echelon basis.
///
/// Pivots are the highest set bit of each basis word; the basis is sorted by
/// decreasing pivot and every pivot column is cleared in all other rows, so the
/// representation is canonical: equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Subspace {
    n_ambient: usize,
    basis: Vec<u64>,
}

impl F2Subspace {
    pub fn zero(n_ambient: usize) -> Result<Self> {
        Self::span_words(n_ambient, std::iter::empty())
    }

    /// The whole space F2^L.
    pub fn full(n_ambient: usize) -> Result<Self> {
        Self::span_words(n_ambient, (0..n_ambient).map(|i| 1u64 << i))
    }

    /// Span of arbitrary (possibly dependent) words.
    pub fn span_words(n_ambient: usize, gens: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n_ambient > MAX_BITS {
            return Err(Error::CapExceeded {
                what: "ambient dimension",
                value: n_ambient,
                cap: MAX_BITS,
            });
        }
        let mask = low_mask(n_ambient);
        let mut s = Self {
            n_ambient,
            basis: Vec::new(),
        };
        for g in gens {
            if g & !mask != 0 {
                return Err(Error::OutOfRange(format!(
                    "generator {g:#x} exceeds ambient dimension {n_ambient}"
                )));
            }
            s.insert(g);
        }
        Ok(s)
    }

    pub fn span(n_ambient: usize, gens: &[BitVec]) -> Result<Self> {
        for g in gens {
            check_dims(n_ambient, g.len())?;
        }
        Self::span_words(n_ambient, gens.iter().map(|g| g.word()))
    }

    /// Like [`Self::span_words`] but rejects dependent generators.
    pub fn from_basis_words(n_ambient: usize, gens: &[u64]) -> Result<Self> {
        let s = Self::span_words(n_ambient, gens.iter().copied())?;
        if s.dim() != gens.len() {
            return Err(Error::Dependent);
        }
        Ok(s)
    }

    pub fn from_basis(n_ambient: usize, gens: &[BitVec]) -> Result<Self> {
        for g in gens {
            check_dims(n_ambient, g.len())?;
        }
        let words: Vec<u64> = gens.iter().map(|g| g.word()).collect();
        Self::from_basis_words(n_ambient, &words)
    }

    /// Subspace of F2^(2n) spanned by symplectic labels (packed by table index).
    pub fn from_points(n: usize, points: &[SymplecticPoint]) -> Result<Self> {
        for p in points {
            check_dims(n, p.n())?;
        }
        Self::span_words(2 * n, points.iter().map(|p| p.index()))
    }

    /// Insert a vector; returns false if it was already in the span.
    pub fn insert(&mut self, g: u64) -> bool {
        let r = self.reduce(g);
        if r == 0 {
            return false;
        }
        let pivot = 63 - r.leading_zeros();
        for b in self.basis.iter_mut() {
            if (*b >> pivot) & 1 == 1 {
                *b ^= r;
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|b| (63 - b.leading_zeros()) < pivot)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, r);
        true
    }

    /// Residue of `x` after elimination against the basis; zero iff `x` is a member.
    pub fn reduce(&self, mut x: u64) -> u64 {
        for &b in &self.basis {
            let pivot = 63 - b.leading_zeros();
            if (x >> pivot) & 1 == 1 {
                x ^= b;
            }
        }
        x
    }

    pub fn contains_word(&self, x: u64) -> bool {
        self.reduce(x) == 0
    }

    pub fn contains(&self, x: &BitVec) -> Result<bool> {
        check_dims(self.n_ambient, x.len())?;
        Ok(self.contains_word(x.word()))
    }

    pub fn contains_point(&self, p: &SymplecticPoint) -> bool {
        2 * p.n() == self.n_ambient && self.contains_word(p.index())
    }

    pub fn n_ambient(&self) -> usize {
        self.n_ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_words(&self) -> &[u64] {
        &self.basis
    }

    pub fn basis(&self) -> Vec<BitVec> {
        self.basis
            .iter()
            .map(|&b| BitVec::from_word(self.n_ambient, b).expect("basis word fits"))
            .collect()
    }

    /// Basis as symplectic labels; requires an even ambient dimension.
    pub fn basis_points(&self) -> Vec<SymplecticPoint> {
        let n = self.n_ambient / 2;
        self.basis
            .iter()
            .map(|&b| SymplecticPoint::from_index(n, b))
            .collect()
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.n_ambient == other.n_ambient && self.basis.iter().all(|&b| other.contains_word(b))
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &F2Subspace) -> Result<F2Subspace> {
        check_dims(self.n_ambient, other.n_ambient)?;
        Self::span_words(
            self.n_ambient,
            self.basis.iter().chain(other.basis.iter()).copied(),
        )
    }

    /// All `2^dim` members in Gray-code order over the basis coefficients.
    pub fn span_members_words(&self, cap: usize) -> Result<Vec<u64>> {
        self.coset_members_words(0, cap)
    }

    pub fn span_members(&self) -> Result<Vec<BitVec>> {
        Ok(self
            .span_members_words(DEFAULT_ENUMERATION_CAP)?
            .into_iter()
            .map(|w| BitVec::from_word(self.n_ambient, w).expect("member fits"))
            .collect())
    }

    /// Members of `z + V` in Gray-code order (starting at `z`).
    pub fn coset_members_words(&self, z: u64, cap: usize) -> Result<Vec<u64>> {
        if self.dim() > cap {
            return Err(Error::CapExceeded {
                what: "enumeration dimension",
                value: self.dim(),
                cap,
            });
        }
        let count = 1usize << self.dim();
        let mut out = Vec::with_capacity(count);
        let mut cur = z;
        out.push(cur);
        for i in 1..count {
            // Gray code step: flip the coefficient of the lowest set bit of i.
            cur ^= self.basis[i.trailing_zeros() as usize];
            out.push(cur);
        }
        Ok(out)
    }

    pub fn coset_members(&self, z: &BitVec) -> Result<Vec<BitVec>> {
        check_dims(self.n_ambient, z.len())?;
        Ok(self
            .coset_members_words(z.word(), DEFAULT_ENUMERATION_CAP)?
            .into_iter()
            .map(|w| BitVec::from_word(self.n_ambient, w).expect("member fits"))
            .collect())
    }

    /// Uniformly random subspace of the given dimension.
    pub fn random<R: Rng + ?Sized>(n_ambient: usize, dim: usize, rng: &mut R) -> Result<Self> {
        if dim > n_ambient {
            return Err(Error::OutOfRange(format!(
                "dimension {dim} exceeds ambient {n_ambient}"
            )));
        }
        let mask = low_mask(n_ambient);
        let mut s = Self::zero(n_ambient)?;
        while s.dim() < dim {
            s.insert(rng.random::<u64>() & mask);
        }
        Ok(s)
    }
}

/// Solve `<row_t, x> = rhs_t` over F2 for `x` in F2^L.
///
/// Returns a particular solution together with a basis of the solution space
/// of the homogeneous system, or `None` when the system is inconsistent.
pub fn solve_linear(n_ambient: usize, rows: &[(u64, u8)]) -> Option<(u64, Vec<u64>)> {
    // Augmented rows: bit `n_ambient` carries the right-hand side.
    let aug = 1u64 << n_ambient;
    let mut m: Vec<u64> = rows
        .iter()
        .map(|&(r, b)| r | if b & 1 == 1 { aug } else { 0 })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n_ambient {
        let Some(sel) = (row..m.len()).find(|&i| (m[i] >> col) & 1 == 1) else {
            continue;
        };
        m.swap(row, sel);
        for i in 0..m.len() {
            if i != row && (m[i] >> col) & 1 == 1 {
                m[i] ^= m[row];
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    if m[row..].iter().any(|&r| r & aug != 0) {
        return None;
    }
    let mut particular = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if m[i] & aug != 0 {
            particular |= 1 << col;
        }
    }
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut null = Vec::new();
    for free in (0..n_ambient).filter(|c| !pivot_set.contains(c)) {
        let mut x = 1u64 << free;
        for (i, &col) in pivots.iter().enumerate() {
            if (m[i] >> free) & 1 == 1 {
                x |= 1 << col;
            }
        }
        null.push(x);
    }
    Some((particular, null))
}

/// Every subspace of F2^L, in canonical order. Intended for `L <= 6`.
pub fn all_subspaces(n_ambient: usize) -> Result<Vec<F2Subspace>> {
    if n_ambient > 8 {
        return Err(Error::CapExceeded {
            what: "exhaustive subspace ambient dimension",
            value: n_ambient,
            cap: 8,
        });
    }
    let mut seen: BTreeSet<F2Subspace> = BTreeSet::new();
    let mut frontier = vec![F2Subspace::zero(n_ambient)?];
    seen.insert(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for x in 1..(1u64 << n_ambient) {
            if s.contains_word(x) {
                continue;
            }
            let mut t = s.clone();
            t.insert(x);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
