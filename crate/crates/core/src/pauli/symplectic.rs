use num_complex::Complex64;

use super::weyl::{DenseMatrix, WeylOperator};
use crate::error::{check_dims, Error, Result};
use crate::f2core::{solve_linear, swap_halves, symplectic_form_index, F2Subspace, SymplecticPoint};

/// An F2-linear map on F2^(2n), stored by the images of the unit vectors of
/// the packed index (bit `j < n` is `Z_{j+1}`, bit `n + j` is `X_{j+1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMap {
    n: usize,
    cols: Vec<u64>,
}

impl SymplecticMap {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            cols: (0..2 * n).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn from_columns(n: usize, cols: Vec<u64>) -> Result<Self> {
        check_dims(2 * n, cols.len())?;
        Ok(Self { n, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    #[inline]
    pub fn apply_index(&self, x: u64) -> u64 {
        let mut out = 0;
        let mut rest = x;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            out ^= self.cols[j];
            rest &= rest - 1;
        }
        out
    }

    pub fn apply(&self, x: &SymplecticPoint) -> Result<SymplecticPoint> {
        check_dims(self.n, x.n())?;
        Ok(SymplecticPoint::from_index(self.n, self.apply_index(x.index())))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SymplecticMap) -> Result<SymplecticMap> {
        check_dims(self.n, other.n)?;
        Ok(SymplecticMap {
            n: self.n,
            cols: other.cols.iter().map(|&c| self.apply_index(c)).collect(),
        })
    }

    /// `[M e_i, M e_j] = [e_i, e_j]` for all unit vectors.
    pub fn is_symplectic(&self) -> bool {
        let dim = 2 * self.n;
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                symplectic_form_index(self.n, self.cols[i], self.cols[j])
                    == symplectic_form_index(self.n, 1 << i, 1 << j)
            })
        })
    }

    pub fn inverse(&self) -> Result<SymplecticMap> {
        let dim = 2 * self.n;
        let rows: Vec<u64> = (0..dim)
            .map(|i| {
                (0..dim).fold(0u64, |acc, j| acc | (((self.cols[j] >> i) & 1) << j))
            })
            .collect();
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            let system: Vec<(u64, u8)> = rows
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, (i == j) as u8))
                .collect();
            match solve_linear(dim, &system) {
                Some((x, null)) if null.is_empty() => cols.push(x),
                _ => return Err(Error::Dependent),
            }
        }
        Ok(SymplecticMap { n: self.n, cols })
    }

    /// Image of a subspace of F2^(2n).
    pub fn image(&self, v: &F2Subspace) -> Result<F2Subspace> {
        check_dims(2 * self.n, v.n_ambient())?;
        F2Subspace::span_words(2 * self.n, v.basis_words().iter().map(|&b| self.apply_index(b)))
    }
}

/// Canonical form of a subgroup `V`: a symplectic map carrying `V` onto
/// `<Z_1, X_1, ..., Z_k, X_k, Z_{k+1}, ..., Z_{k+m}>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// Forward map, `map(V)` is the canonical subgroup.
    pub map: SymplecticMap,
    /// `map^-1`; its columns are the adapted symplectic basis.
    pub inverse: SymplecticMap,
}

impl CanonicalForm {
    pub fn dim(&self) -> usize {
        2 * self.k + self.m
    }
}

/// `<Z_1, X_1, ..., Z_k, X_k, Z_{k+1}, ..., Z_{k+m}>` on `n` qubits.
pub fn canonical_subgroup(n: usize, k: usize, m: usize) -> Result<F2Subspace> {
    if k + m > n {
        return Err(Error::OutOfRange(format!("k + m = {} exceeds n = {n}", k + m)));
    }
    let gens = (0..k + m)
        .map(|j| 1u64 << j)
        .chain((0..k).map(|j| 1u64 << (n + j)));
    F2Subspace::span_words(2 * n, gens)
}

fn form(n: usize, a: u64, b: u64) -> u8 {
    symplectic_form_index(n, a, b)
}

/// Solve `[d, a_t] = r_t` for `d`; `[d, a] = <d, swap(a)>`.
fn solve_form(n: usize, constraints: &[(u64, u8)]) -> Option<(u64, Vec<u64>)> {
    let rows: Vec<(u64, u8)> = constraints
        .iter()
        .map(|&(a, r)| (swap_halves(n, a), r))
        .collect();
    solve_linear(2 * n, &rows)
}

/// Symplectic Gram-Schmidt on a basis of `V`, then extension to a full
/// symplectic basis of F2^(2n).
pub fn canonicalize_subgroup(v: &F2Subspace) -> Result<CanonicalForm> {
    if v.n_ambient() % 2 != 0 {
        return Err(Error::DimensionMismatch {
            expected: v.n_ambient() + 1,
            got: v.n_ambient(),
        });
    }
    let n = v.n_ambient() / 2;
    let mut rest: Vec<u64> = v.basis_words().to_vec();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    loop {
        let found = (0..rest.len()).find_map(|i| {
            (0..rest.len())
                .find(|&j| form(n, rest[i], rest[j]) == 1)
                .map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        let (u, w) = (rest[i], rest[j]);
        rest = rest
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != i && t != j)
            .map(|(_, &r)| {
                let mut r2 = r;
                if form(n, r, w) == 1 {
                    r2 ^= u;
                }
                if form(n, r, u) == 1 {
                    r2 ^= w;
                }
                r2
            })
            .collect();
        pairs.push((u, w));
    }
    let k = pairs.len();
    let m = rest.len();

    // zs[j] maps to Z_j, xs[j] to X_j.
    let mut zs: Vec<u64> = pairs.iter().map(|p| p.0).chain(rest.iter().copied()).collect();
    let mut xs: Vec<u64> = pairs.iter().map(|p| p.1).collect();

    let partner = |zs: &[u64], xs: &[u64], target: usize| -> Result<u64> {
        let mut cons: Vec<(u64, u8)> = zs
            .iter()
            .enumerate()
            .map(|(i, &z)| (z, (i == target) as u8))
            .collect();
        cons.extend(xs.iter().map(|&x| (x, 0)));
        solve_form(n, &cons)
            .map(|(d, _)| d)
            .ok_or_else(|| Error::InvalidConfig("symplectic extension failed".into()))
    };

    for l in 0..m {
        let d = partner(&zs, &xs, k + l)?;
        xs.push(d);
    }
    for j in k + m..n {
        let cons: Vec<(u64, u8)> = zs.iter().chain(xs.iter()).map(|&a| (a, 0)).collect();
        let (_, null) = solve_form(n, &cons)
            .ok_or_else(|| Error::InvalidConfig("symplectic extension failed".into()))?;
        let z = *null
            .first()
            .ok_or_else(|| Error::InvalidConfig("symplectic extension failed".into()))?;
        zs.push(z);
        let x = partner(&zs, &xs, j)?;
        xs.push(x);
    }

    let mut cols = vec![0u64; 2 * n];
    for j in 0..n {
        cols[j] = zs[j];
        cols[n + j] = xs[j];
    }
    let inverse = SymplecticMap::from_columns(n, cols)?;
    let map = inverse.inverse()?;
    Ok(CanonicalForm {
        n,
        k,
        m,
        map,
        inverse,
    })
}

/// `T_h(x) = x + [x,h] h`.
#[inline]
pub fn transvection(n: usize, h: u64, x: u64) -> u64 {
    if form(n, x, h) == 1 {
        x ^ h
    } else {
        x
    }
}

/// A Clifford unitary `U = U_{h_1} ... U_{h_r}`, `U_h = (I + i W_h)/sqrt 2`,
/// with `U W_x U^dag = +-W_{M x}` for `M = T_{h_1} o ... o T_{h_r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clifford {
    n: usize,
    transvections: Vec<u64>,
}

impl Clifford {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transvections(&self) -> Vec<SymplecticPoint> {
        self.transvections
            .iter()
            .map(|&h| SymplecticPoint::from_index(self.n, h))
            .collect()
    }

    /// Decompose a symplectic map into transvections, qubit by qubit.
    pub fn from_symplectic(map: &SymplecticMap) -> Result<Self> {
        if !map.is_symplectic() {
            return Err(Error::InvalidConfig("map is not symplectic".into()));
        }
        let n = map.n();
        let mut cur = map.clone();
        let mut hs: Vec<u64> = Vec::new();
        let push = |cur: &mut SymplecticMap, hs: &mut Vec<u64>, h: u64| {
            for c in cur.cols.iter_mut() {
                *c = transvection(n, h, *c);
            }
            hs.push(h);
        };
        for i in 0..n {
            let a = 1u64 << (n + i);
            let b = 1u64 << i;
            let u = cur.cols[n + i];
            if u != a {
                if form(n, u, a) == 1 {
                    push(&mut cur, &mut hs, u ^ a);
                } else {
                    let z = if (u >> (n + i)) & 1 == 1 {
                        b
                    } else {
                        let j = (i + 1..n)
                            .find(|&j| (u >> j) & 1 == 1 || (u >> (n + j)) & 1 == 1)
                            .ok_or_else(|| Error::InvalidConfig("transvection search".into()))?;
                        // Single-qubit label on j anticommuting with u there.
                        let p = if (u >> j) & 1 == 1 { 1u64 << (n + j) } else { 1u64 << j };
                        b ^ p
                    };
                    push(&mut cur, &mut hs, u ^ z);
                    push(&mut cur, &mut hs, z ^ a);
                }
            }
            let u = cur.cols[i];
            if u != b {
                if form(n, u, b) == 1 {
                    push(&mut cur, &mut hs, u ^ b);
                } else {
                    let z = a ^ b;
                    push(&mut cur, &mut hs, u ^ z);
                    push(&mut cur, &mut hs, z ^ b);
                }
            }
        }
        debug_assert_eq!(cur, SymplecticMap::identity(n));
        Ok(Self {
            n,
            transvections: hs,
        })
    }

    /// The symplectic map realized by the unitary.
    pub fn symplectic_map(&self) -> SymplecticMap {
        let mut m = SymplecticMap::identity(self.n);
        for &h in self.transvections.iter().rev() {
            for c in m.cols.iter_mut() {
                *c = transvection(self.n, h, *c);
            }
        }
        m
    }

    /// `U psi`.
    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dims(1 << self.n, psi.len())?;
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::new(0.0, 1.0);
        let mut cur = psi.to_vec();
        for &h in self.transvections.iter().rev() {
            let w = WeylOperator::new(SymplecticPoint::from_index(self.n, h)).apply(&cur)?;
            for (c, wv) in cur.iter_mut().zip(w) {
                *c = (*c + i * wv) * scale;
            }
        }
        Ok(cur)
    }

    /// Dense `2^n x 2^n` matrix of `U`.
    pub fn matrix(&self) -> Result<DenseMatrix> {
        let cap = crate::caps::clifford_cap();
        if self.n > cap {
            return Err(Error::CapExceeded {
                what: "Clifford matrix qubit count",
                value: self.n,
                cap,
            });
        }
        let dim = 1usize << self.n;
        let mut m = DenseMatrix::zeros(dim, dim);
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        for col in 0..dim {
            e[col] = Complex64::new(1.0, 0.0);
            let out = self.apply(&e)?;
            for (row, z) in out.into_iter().enumerate() {
                m[(row, col)] = z;
            }
            e[col] = Complex64::new(0.0, 0.0);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::weyl_matrix;
    use crate::rng::{stream_rng, Domain};

    fn same_span(a: &F2Subspace, b: &F2Subspace) -> bool {
        let mut x = a.span_members_words(24).unwrap();
        let mut y = b.span_members_words(24).unwrap();
        x.sort();
        y.sort();
        x == y
    }

    #[test]
    fn single_z_and_full_single_qubit() {
        let v = F2Subspace::span_words(2, [0b01]).unwrap();
        let c = canonicalize_subgroup(&v).unwrap();
        assert_eq!((c.k, c.m), (0, 1));
        let full = F2Subspace::full(2).unwrap();
        let c = canonicalize_subgroup(&full).unwrap();
        assert_eq!((c.k, c.m), (1, 0));
    }

    #[test]
    fn random_subgroups_canonicalize() {
        let mut rng = stream_rng(11, Domain::Fixture, 0);
        for n in 1..=4 {
            for dim in 0..=2 * n {
                for _ in 0..20 {
                    let v = F2Subspace::random(2 * n, dim, &mut rng).unwrap();
                    let c = canonicalize_subgroup(&v).unwrap();
                    assert!(c.map.is_symplectic());
                    assert_eq!(2 * c.k + c.m, dim);
                    assert!(c.k + c.m <= n);
                    let img = c.map.image(&v).unwrap();
                    assert!(same_span(&img, &canonical_subgroup(n, c.k, c.m).unwrap()));
                    assert_eq!(
                        c.map.compose(&c.inverse).unwrap(),
                        SymplecticMap::identity(n)
                    );
                }
            }
        }
    }

    #[test]
    fn k_is_half_the_rank_of_the_restricted_form() {
        let mut rng = stream_rng(12, Domain::Fixture, 0);
        for _ in 0..50 {
            let v = F2Subspace::random(8, 4, &mut rng).unwrap();
            let b = v.basis_words();
            // Rank of the Gram matrix of the form over F2.
            let gram: Vec<u64> = b
                .iter()
                .map(|&x| {
                    b.iter()
                        .enumerate()
                        .fold(0, |acc, (j, &y)| acc | ((form(4, x, y) as u64) << j))
                })
                .collect();
            let rank = F2Subspace::span_words(4, gram).unwrap().dim();
            assert_eq!(canonicalize_subgroup(&v).unwrap().k * 2, rank);
        }
    }

    #[test]
    fn clifford_realizes_the_symplectic_map() {
        let mut rng = stream_rng(13, Domain::Fixture, 0);
        for n in 1..=3 {
            for _ in 0..10 {
                let v = F2Subspace::random(2 * n, n, &mut rng).unwrap();
                let map = canonicalize_subgroup(&v).unwrap().map;
                let u = Clifford::from_symplectic(&map).unwrap();
                assert_eq!(u.symplectic_map(), map);
                let um = u.matrix().unwrap();
                let dim = 1 << n;
                assert!((&um * um.adjoint() - DenseMatrix::identity(dim, dim))
                    .iter()
                    .all(|z| z.norm() < 1e-12));
                for x in 0..1u64 << (2 * n) {
                    let p = SymplecticPoint::from_index(n, x);
                    let lhs = &um * weyl_matrix(&p).unwrap() * um.adjoint();
                    let target = weyl_matrix(&map.apply(&p).unwrap()).unwrap();
                    let plus = (&lhs - &target).iter().all(|z| z.norm() < 1e-10);
                    let minus = (&lhs + &target).iter().all(|z| z.norm() < 1e-10);
                    assert!(plus || minus);
                }
            }
        }
    }
}
