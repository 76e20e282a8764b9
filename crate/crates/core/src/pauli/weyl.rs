use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{check_dims, Error, Result};
use crate::f2core::{parity, SymplecticPoint};

pub type DenseMatrix = DMatrix<Complex64>;

/// `i^k` for `k mod 4`.
#[inline]
pub fn i_pow(k: u32) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub(crate) fn check_dense_cap(n: usize) -> Result<()> {
    let cap = crate::caps::dense_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "dense matrix qubit count",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// The Weyl operator `W_{a,b} = i^{a.b} X^a Z^b`; Hermitian and unitary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylOperator {
    pub point: SymplecticPoint,
}

impl WeylOperator {
    pub fn new(point: SymplecticPoint) -> Self {
        Self { point }
    }

    pub fn n(&self) -> usize {
        self.point.n()
    }

    /// `W_x W_y = (-1)^{[x,y]} W_y W_x`.
    pub fn commutes_with(&self, other: &WeylOperator) -> Result<bool> {
        Ok(self.point.symplectic_product(&other.point)? == 0)
    }

    /// `(W psi)(y) = i^{a.b} (-1)^{b.(y+a)} psi(y+a)`.
    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dims(1 << self.n(), psi.len())?;
        let (a, b) = (self.point.v(), self.point.w());
        let global = i_pow((a & b).count_ones());
        Ok((0..psi.len() as u64)
            .map(|y| {
                let x = y ^ a;
                let amp = psi[x as usize] * global;
                if parity(b & x) == 1 {
                    -amp
                } else {
                    amp
                }
            })
            .collect())
    }

    /// `<phi| W |psi>`.
    pub fn matrix_element(&self, phi: &[Complex64], psi: &[Complex64]) -> Result<Complex64> {
        let w = self.apply(psi)?;
        check_dims(w.len(), phi.len())?;
        Ok(phi.iter().zip(&w).map(|(p, q)| p.conj() * q).sum())
    }

    pub fn matrix(&self) -> Result<DenseMatrix> {
        weyl_matrix(&self.point)
    }
}

/// Dense matrix of `W_x` in the computational basis (qubit 1 = bit 0).
pub fn weyl_matrix(x: &SymplecticPoint) -> Result<DenseMatrix> {
    let n = x.n();
    check_dense_cap(n)?;
    let dim = 1usize << n;
    let (a, b) = (x.v(), x.w());
    let global = i_pow((a & b).count_ones());
    let mut m = DenseMatrix::zeros(dim, dim);
    for col in 0..dim as u64 {
        let row = col ^ a;
        let sign = if parity(b & col) == 1 { -1.0 } else { 1.0 };
        m[(row as usize, col as usize)] = global * sign;
    }
    Ok(m)
}

/// True iff `W_x` and `W_y` commute.
pub fn commutes(x: &SymplecticPoint, y: &SymplecticPoint) -> Result<bool> {
    Ok(x.symplectic_product(y)? == 0)
}

/// `2k+1` pairwise anticommuting labels on `k` qubits.
///
/// For each qubit `j` the pair `Z..Z X_j`, `Z..Z Y_j` (with `Z` on the qubits
/// before `j`), followed by `Z` on every qubit.
pub fn anticommuting_family(k: usize) -> Result<Vec<SymplecticPoint>> {
    if k == 0 {
        return Err(Error::OutOfRange("anticommuting family needs k >= 1".into()));
    }
    let mut out = Vec::with_capacity(2 * k + 1);
    for j in 0..k {
        let before = (1u64 << j) - 1;
        let bit = 1u64 << j;
        out.push(SymplecticPoint::new(k, bit, before)?);
        out.push(SymplecticPoint::new(k, bit, before | bit)?);
    }
    out.push(SymplecticPoint::new(k, 0, (1u64 << k) - 1)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Domain};
    use rand::Rng;

    fn close(a: &DenseMatrix, b: &DenseMatrix) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn y_and_identity() {
        let y = weyl_matrix(&SymplecticPoint::new(1, 1, 1).unwrap()).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let expected =
            DenseMatrix::from_row_slice(2, 2, &[0.0.into(), -i, i, 0.0.into()]);
        assert!(close(&y, &expected));
        let id = weyl_matrix(&SymplecticPoint::identity(1)).unwrap();
        assert!(close(&id, &DenseMatrix::identity(2, 2)));
    }

    #[test]
    fn hermitian_unitary_traceless() {
        let mut rng = stream_rng(1, Domain::Fixture, 0);
        for n in 1..=3 {
            for _ in 0..10 {
                let x = SymplecticPoint::from_index(n, rng.random::<u64>() & ((1 << (2 * n)) - 1));
                let m = weyl_matrix(&x).unwrap();
                let dim = 1 << n;
                assert!(close(&m, &m.adjoint()));
                assert!(close(&(&m * &m), &DenseMatrix::identity(dim, dim)));
                let expected = if x.is_identity() { dim as f64 } else { 0.0 };
                assert!((m.trace() - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn commutation_and_orthogonality_exhaustive_n2() {
        let n = 2;
        let mats: Vec<DenseMatrix> = (0..16)
            .map(|i| weyl_matrix(&SymplecticPoint::from_index(n, i)).unwrap())
            .collect();
        for i in 0..16u64 {
            for j in 0..16u64 {
                let (x, y) = (
                    SymplecticPoint::from_index(n, i),
                    SymplecticPoint::from_index(n, j),
                );
                let xy = &mats[i as usize] * &mats[j as usize];
                let yx = &mats[j as usize] * &mats[i as usize];
                let matrix_commutes = close(&xy, &yx);
                assert_eq!(commutes(&x, &y).unwrap(), matrix_commutes);
                let sign = if x.symplectic_product(&y).unwrap() == 1 { -1.0 } else { 1.0 };
                assert!(close(&xy, &(yx * Complex64::new(sign, 0.0))));
                let tr = (&mats[i as usize] * &mats[j as usize]).trace();
                let expected = if i == j { 4.0 } else { 0.0 };
                assert!((tr - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn apply_matches_matrix() {
        let mut rng = stream_rng(2, Domain::Fixture, 0);
        let n = 3;
        let psi: Vec<Complex64> = (0..8)
            .map(|_| Complex64::new(rng.random(), rng.random()))
            .collect();
        for i in 0..64 {
            let x = SymplecticPoint::from_index(n, i);
            let m = weyl_matrix(&x).unwrap();
            let direct = &m * nalgebra::DVector::from_vec(psi.clone());
            let fast = WeylOperator::new(x).apply(&psi).unwrap();
            for (a, b) in direct.iter().zip(&fast) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn families_pairwise_anticommute() {
        let k1 = anticommuting_family(1).unwrap();
        let names: Vec<String> = k1.iter().map(|p| p.pauli_string()).collect();
        assert_eq!(names, vec!["X", "Y", "Z"]);
        for k in 1..=6 {
            let fam = anticommuting_family(k).unwrap();
            assert_eq!(fam.len(), 2 * k + 1);
            for (i, a) in fam.iter().enumerate() {
                for b in &fam[i + 1..] {
                    assert_eq!(a.symplectic_product(b).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn dense_cap_enforced() {
        assert!(matches!(
            weyl_matrix(&SymplecticPoint::identity(11)),
            Err(Error::CapExceeded { .. })
        ));
    }
}
