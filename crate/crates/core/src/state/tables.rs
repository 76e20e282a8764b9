use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use super::vector::StateVector;
use crate::error::{check_dims, Error, Result};
use crate::f2core::{fwht_in_place, transform::qubits_for_table_len, SymplecticPoint};
use crate::pauli::i_pow;

fn check_table_cap(n: usize) -> Result<()> {
    let cap = crate::caps::table_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "table qubit count",
            value: n,
            cap,
        });
    }
    Ok(())
}

/// `<psi| W_x |psi> = i^{v.w} 2^n f^_v(w)`, evaluated in `O(2^n)`.
pub fn weyl_expectation(psi: &StateVector, x: &SymplecticPoint) -> Result<Complex64> {
    check_dims(psi.n(), x.n())?;
    let f = psi.amps();
    let (v, w) = (x.v(), x.w());
    let mut acc = Complex64::new(0.0, 0.0);
    for (y, fy) in f.iter().enumerate() {
        let term = fy * f[y ^ v as usize].conj();
        if ((y as u64) & w).count_ones() & 1 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(i_pow((v & w).count_ones()) * acc)
}

/// Derivative `f_v(x) = f(x) conj(f(x+v))`.
pub fn derivative(psi: &StateVector, v: u64) -> Vec<Complex64> {
    let f = psi.amps();
    (0..f.len())
        .map(|x| f[x] * f[x ^ v as usize].conj())
        .collect()
}

/// Expectation-normalized Fourier coefficients `f^_v(w)` of the derivative.
pub fn derivative_fourier(psi: &StateVector, v: u64) -> Vec<Complex64> {
    let mut d = derivative(psi, v);
    fwht_in_place(&mut d).expect("power-of-two length");
    let s = 1.0 / d.len() as f64;
    d.iter_mut().for_each(|z| *z *= s);
    d
}

/// The characteristic distribution `p(x) = 2^-n <psi|W_x|psi>^2` over the
/// `4^n` labels, indexed by `(v << n) | w`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharTable {
    n: usize,
    p: Vec<f64>,
}

impl CharTable {
    /// `p(v,w) = 2^-n |(H f_v)(w)|^2`: one Walsh-Hadamard per direction `v`,
    /// `O(n 4^n)` in total, parallel over `v`.
    pub fn from_state(psi: &StateVector) -> Result<Self> {
        let n = psi.n();
        check_table_cap(n)?;
        let dim = 1usize << n;
        let inv = 1.0 / dim as f64;
        let mut p = vec![0.0; dim * dim];
        p.par_chunks_mut(dim).enumerate().for_each(|(v, row)| {
            let mut d = derivative(psi, v as u64);
            fwht_in_place(&mut d).expect("power-of-two length");
            for (slot, z) in row.iter_mut().zip(&d) {
                *slot = z.norm_sqr() * inv;
            }
        });
        Ok(Self { n, p })
    }

    /// Entrywise evaluation of `2^-n |<psi|W_x|psi>|^2`, `O(8^n)`.
    pub fn from_state_direct(psi: &StateVector) -> Result<Self> {
        let n = psi.n();
        check_table_cap(n)?;
        let inv = 1.0 / (1u64 << n) as f64;
        let p = (0..1u64 << (2 * n))
            .into_par_iter()
            .map(|i| {
                weyl_expectation(psi, &SymplecticPoint::from_index(n, i))
                    .expect("matching n")
                    .norm_sqr()
                    * inv
            })
            .collect();
        Ok(Self { n, p })
    }

    pub fn from_values(p: Vec<f64>) -> Result<Self> {
        let n = qubits_for_table_len(p.len())?;
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, x: &SymplecticPoint) -> f64 {
        self.p[x.index() as usize]
    }

    pub fn at(&self, index: u64) -> f64 {
        self.p[index as usize]
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    fn scale(&self) -> f64 {
        (1u64 << self.n) as f64
    }

    /// `||psi||_{U3}^8 = E_{x~p} <W_x>^2 = 2^n sum p^2`.
    pub fn gowers3_pow8(&self) -> f64 {
        self.scale() * self.p.iter().map(|x| x * x).sum::<f64>()
    }

    /// `E_{x~q} <W_x>^2 = 2^{2n} sum p^3`.
    pub fn weyl_expect_q(&self) -> f64 {
        self.scale() * self.scale() * self.p.iter().map(|x| x * x * x).sum::<f64>()
    }

    /// `q = p * p` through the Walsh-Hadamard convolution theorem.
    pub fn weyl_table(&self) -> WeylTable {
        let mut h = self.p.clone();
        fwht_in_place(&mut h).expect("power-of-two length");
        h.iter_mut().for_each(|z| *z *= *z);
        fwht_in_place(&mut h).expect("power-of-two length");
        let inv = 1.0 / h.len() as f64;
        h.iter_mut().for_each(|z| *z *= inv);
        WeylTable { n: self.n, q: h }
    }

    /// `q(x) = sum_y p(y) p(x+y)` by direct double loop (`n <= 6`).
    pub fn weyl_table_naive(&self) -> Result<WeylTable> {
        if self.n > 6 {
            return Err(Error::CapExceeded {
                what: "naive convolution qubit count",
                value: self.n,
                cap: 6,
            });
        }
        let len = self.p.len();
        let q = (0..len)
            .into_par_iter()
            .map(|x| (0..len).map(|y| self.p[y] * self.p[x ^ y]).sum())
            .collect();
        Ok(WeylTable { n: self.n, q })
    }

    /// Rows `v,w,p` in table order; `v` and `w` as bitstrings, qubit 1 first.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["v", "w", "p"])?;
        for (i, p) in self.p.iter().enumerate() {
            let x = SymplecticPoint::from_index(self.n, i as u64);
            wtr.write_record([
                x.v_bits().to_bitstring(),
                x.w_bits().to_bitstring(),
                format!("{p:e}"),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// The Weyl distribution `q = p * p`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylTable {
    n: usize,
    q: Vec<f64>,
}

impl WeylTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.q
    }

    pub fn get(&self, x: &SymplecticPoint) -> f64 {
        self.q[x.index() as usize]
    }

    pub fn total(&self) -> f64 {
        self.q.iter().sum()
    }

    /// `E_{x~q} <W_x>^2 = sum_x q(x) 2^n p(x)`.
    pub fn expectation_of(&self, p: &CharTable) -> Result<f64> {
        check_dims(self.n, p.n())?;
        let s = (1u64 << self.n) as f64;
        Ok(self.q.iter().zip(p.values()).map(|(q, p)| q * s * p).sum())
    }
}

/// Exact characteristic table of a state.
pub fn char_table(psi: &StateVector) -> Result<CharTable> {
    CharTable::from_state(psi)
}

pub fn weyl_table(p: &CharTable) -> WeylTable {
    p.weyl_table()
}

pub fn gowers3_pow8(psi: &StateVector) -> Result<f64> {
    Ok(CharTable::from_state(psi)?.gowers3_pow8())
}

pub fn weyl_expect_q(psi: &StateVector) -> Result<f64> {
    Ok(CharTable::from_state(psi)?.weyl_expect_q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::weyl_matrix;
    use crate::state::{haar_random_state, random_stabilizer};
    use nalgebra::DVector;

    #[test]
    fn expectation_matches_dense_matrix() {
        for n in 1..=4 {
            let psi = haar_random_state(n, n as u64).unwrap();
            let vec = DVector::from_vec(psi.amps().to_vec());
            for i in 0..1u64 << (2 * n) {
                let x = SymplecticPoint::from_index(n, i);
                let m = weyl_matrix(&x).unwrap();
                let dense = vec.dotc(&(&m * &vec));
                assert!((dense - weyl_expectation(&psi, &x).unwrap()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_state_and_t_state_tables() {
        let zero = CharTable::from_state(&StateVector::basis(1, 0).unwrap()).unwrap();
        // Index order (v,w): I=00, Z=01, X=10, Y=11.
        assert_eq!(zero.values(), &[0.5, 0.5, 0.0, 0.0]);
        let t = CharTable::from_state(&StateVector::t_state()).unwrap();
        let expected = [0.5, 0.0, 0.25, 0.25];
        for (a, b) in t.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let q = t.weyl_table();
        let expected_q = [0.375, 0.125, 0.25, 0.25];
        for (a, b) in q.values().iter().zip(expected_q) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((t.gowers3_pow8() - 0.75).abs() < 1e-15);
        assert!((t.weyl_expect_q() - 0.625).abs() < 1e-15);
    }

    #[test]
    fn fast_table_matches_direct_and_invariants() {
        for n in 1..=5 {
            let psi = haar_random_state(n, 40 + n as u64).unwrap();
            let fast = CharTable::from_state(&psi).unwrap();
            let slow = CharTable::from_state_direct(&psi).unwrap();
            let inv = 1.0 / (1u64 << n) as f64;
            for (a, b) in fast.values().iter().zip(slow.values()) {
                assert!((a - b).abs() < 1e-12);
                assert!(*a <= inv + 1e-12 && *a >= 0.0);
            }
            assert!((fast.total() - 1.0).abs() < 1e-9);
            assert!((fast.at(0) - inv).abs() < 1e-12);
        }
    }

    #[test]
    fn fast_convolution_matches_naive() {
        for n in 1..=4 {
            let p = CharTable::from_state(&haar_random_state(n, n as u64).unwrap()).unwrap();
            let fast = p.weyl_table();
            let slow = p.weyl_table_naive().unwrap();
            for (a, b) in fast.values().iter().zip(slow.values()) {
                assert!((a - b).abs() < 1e-14);
            }
            assert!((fast.total() - 1.0).abs() < 1e-9);
            let via_q = fast.expectation_of(&p).unwrap();
            assert!((via_q - p.weyl_expect_q()).abs() < 1e-10);
        }
    }

    #[test]
    fn stabilizer_q_equals_p() {
        for n in 1..=5 {
            let p = CharTable::from_state(&random_stabilizer(n, 9).unwrap()).unwrap();
            let q = p.weyl_table();
            for (a, b) in p.values().iter().zip(q.values()) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!((p.gowers3_pow8() - 1.0).abs() < 1e-10);
            assert!((p.weyl_expect_q() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn tensor_with_stabilizer_multiplies() {
        let t = StateVector::t_state();
        let s = random_stabilizer(3, 2).unwrap();
        let p = CharTable::from_state(&s.tensor(&t).unwrap()).unwrap();
        assert!((p.gowers3_pow8() - 0.75).abs() < 1e-12);
        assert!((p.weyl_expect_q() - 0.625).abs() < 1e-12);
    }

    #[test]
    fn csv_rows_are_lexicographic() {
        let p = CharTable::from_state(&StateVector::basis(1, 0).unwrap()).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "v,w,p");
        assert_eq!(lines[1], "0,0,5e-1");
        assert_eq!(lines[2], "0,1,5e-1");
        assert_eq!(lines.len(), 5);
    }
}
