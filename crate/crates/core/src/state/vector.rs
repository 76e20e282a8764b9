use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::f2core::MAX_QUBITS;

/// Version tag written into every file this crate produces.
pub const FORMAT_TAG: &str = "gowers-stab/v1";

/// Allowed drift of `sum |f(x)|^2` from 1 before construction fails.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A normalized pure state `sum_x f(x)|x>`; basis index bit `j` is qubit `j+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Validates the length and the norm (within [`NORM_TOLERANCE`]) and
    /// renormalizes exactly.
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let s = Self::normalized(n, amps)?;
        Ok(s)
    }

    fn check_len(n: usize, len: usize) -> Result<()> {
        if n > MAX_QUBITS {
            return Err(Error::CapExceeded {
                what: "qubit count",
                value: n,
                cap: MAX_QUBITS,
            });
        }
        check_dims(1usize << n, len)
    }

    fn normalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        Self::check_len(n, amps.len())?;
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Malformed(format!(
                "state norm^2 is {norm2}, expected 1"
            )));
        }
        let s = 1.0 / norm2.sqrt();
        for z in amps.iter_mut() {
            *z *= s;
        }
        Ok(Self { n, amps })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_unnormalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        Self::check_len(n, amps.len())?;
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Malformed("cannot normalize a zero vector".into()));
        }
        let s = 1.0 / norm2.sqrt();
        for z in amps.iter_mut() {
            *z *= s;
        }
        Ok(Self { n, amps })
    }

    /// Computational basis state `|x>`.
    pub fn basis(n: usize, x: u64) -> Result<Self> {
        Self::check_len(n, 1usize << n)?;
        if x >> n != 0 {
            return Err(Error::OutOfRange(format!("basis index {x} on {n} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[x as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// `(|0> + e^{i pi/4}|1>)/sqrt 2`.
    pub fn t_state() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            n: 1,
            amps: vec![
                Complex64::new(h, 0.0),
                Complex64::from_polar(h, std::f64::consts::FRAC_PI_4),
            ],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// `self (x) other`; `self` occupies the low qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n + other.n;
        Self::check_len(n, 1usize << n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { n, amps })
    }

    pub fn tensor_power(&self, k: usize) -> Result<StateVector> {
        let mut out = StateVector::basis(0, 0)?;
        for _ in 0..k {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        check_dims(self.n, other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Multiply by a phase so the first amplitude of maximal modulus is real
    /// and positive.
    pub fn fix_global_phase(&mut self) {
        let mut best = 0;
        for (i, z) in self.amps.iter().enumerate() {
            if z.norm() > self.amps[best].norm() + 1e-12 {
                best = i;
            }
        }
        let z = self.amps[best];
        if z.norm() > 0.0 {
            let phase = z.conj() / z.norm();
            for a in self.amps.iter_mut() {
                *a *= phase;
            }
        }
    }

    pub fn to_file(&self, meta: Option<serde_json::Value>) -> StateFile {
        StateFile {
            format: FORMAT_TAG.to_string(),
            n: self.n,
            amps: self.amps.iter().map(|z| [z.re, z.im]).collect(),
            meta,
        }
    }

    pub fn to_json(&self, meta: Option<serde_json::Value>) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file(meta))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(s)?;
        file.into_state()
    }

    pub fn write_json(&self, path: &Path, meta: Option<serde_json::Value>) -> Result<()> {
        std::fs::write(path, self.to_json(meta)? + "\n")?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// On-disk state: `{"format", "n", "amps": [[re, im], ...], "meta"?}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StateFile {
    #[serde(default = "default_format")]
    pub format: String,
    pub n: usize,
    pub amps: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

fn default_format() -> String {
    FORMAT_TAG.to_string()
}

impl StateFile {
    pub fn into_state(self) -> Result<StateVector> {
        if self.format != FORMAT_TAG {
            return Err(Error::Malformed(format!(
                "unsupported format tag {:?}",
                self.format
            )));
        }
        let amps = self
            .amps
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(self.n, amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_norm_and_length() {
        let z = Complex64::new(0.0, 0.0);
        assert!(matches!(
            StateVector::new(1, vec![z, z]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            StateVector::new(2, vec![Complex64::new(1.0, 0.0), z]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = StateVector::t_state().tensor(&StateVector::basis(1, 1).unwrap()).unwrap();
        let s = t.to_json(None).unwrap();
        let back = StateVector::from_json(&s).unwrap();
        assert_eq!(back.n(), 2);
        for (a, b) in back.amps().iter().zip(t.amps()) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(s.contains(FORMAT_TAG));
    }

    #[test]
    fn tensor_layout_low_qubits_first() {
        let one = StateVector::basis(1, 1).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        // |1> on qubit 1, |0> on qubit 2: index 0b01.
        let s = one.tensor(&zero).unwrap();
        assert_eq!(s.amps()[1], Complex64::new(1.0, 0.0));
    }
}
