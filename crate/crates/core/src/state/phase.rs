use std::fmt;

use num_complex::Complex64;

use super::vector::StateVector;
use crate::error::{Error, Result};

/// `f(x) = sum_T c_T prod_{j in T} x_j (mod 2^d)`.
///
/// Text form: terms joined by `+`, each an optional integer coefficient
/// followed by variables `x1`, `x2`, ... (1-based), e.g. `x1x2 + 4x1x2x3 + 3x2`.
/// A monomial written without a coefficient gets the smallest allowed one,
/// `2^(|T|-1)`, so `x1x2` at `d = 2` is the CZ phase `(-1)^{x1 x2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePolynomial {
    n: usize,
    d: u32,
    terms: Vec<(u64, u64)>,
}

impl PhasePolynomial {
    pub const MAX_DEGREE: u32 = 16;

    /// Terms as `(variable mask, coefficient)`.
    pub fn new(n: usize, d: u32, terms: Vec<(u64, u64)>) -> Result<Self> {
        if d == 0 || d > Self::MAX_DEGREE {
            return Err(Error::OutOfRange(format!(
                "degree {d} not in 1..={}",
                Self::MAX_DEGREE
            )));
        }
        let q = 1u64 << d;
        for &(mask, c) in &terms {
            if n < 64 && mask >> n != 0 {
                return Err(Error::OutOfRange(format!(
                    "monomial mask {mask:#b} uses variables beyond x{n}"
                )));
            }
            let size = mask.count_ones();
            if size == 0 {
                if c >= q {
                    return Err(Error::CoefficientDomain(format!(
                        "constant {c} not in Z_{q}"
                    )));
                }
                continue;
            }
            if size > d {
                return Err(Error::CoefficientDomain(format!(
                    "monomial of degree {size} exceeds d = {d}"
                )));
            }
            let step = 1u64 << (size - 1);
            if c % step != 0 || c >= q {
                return Err(Error::CoefficientDomain(format!(
                    "coefficient {c} of a degree-{size} monomial must lie in {step}*Z_{}",
                    q / step
                )));
            }
        }
        Ok(Self { n, d, terms })
    }

    pub fn parse(n: usize, d: u32, s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if t.is_empty() {
                return Err(Error::Malformed(format!("empty term in {s:?}")));
            }
            let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut rest = &t[digits.len()..];
            if let Some(r) = rest.strip_prefix('*') {
                rest = r;
            }
            let mut mask = 0u64;
            while !rest.is_empty() {
                let r = rest
                    .strip_prefix('x')
                    .ok_or_else(|| Error::Malformed(format!("bad term {t:?}")))?;
                let idx: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
                let j: usize = idx
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad variable in {t:?}")))?;
                if j == 0 || j > n {
                    return Err(Error::OutOfRange(format!("variable x{j} on {n} qubits")));
                }
                mask |= 1 << (j - 1);
                rest = &r[idx.len()..];
            }
            let c = if digits.is_empty() {
                if mask == 0 {
                    return Err(Error::Malformed(format!("bad term {t:?}")));
                }
                1u64 << (mask.count_ones() - 1)
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad coefficient in {t:?}")))?
            };
            terms.push((mask, c));
        }
        Self::new(n, d, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn eval(&self, x: u64) -> u64 {
        let q = 1u64 << self.d;
        self.terms
            .iter()
            .filter(|(mask, _)| x & mask == *mask)
            .fold(0, |acc, (_, c)| (acc + c) % q)
    }

    /// `2^{-n/2} sum_x w_q^{f(x)} |x>` with `q = 2^d`.
    pub fn state(&self) -> Result<StateVector> {
        let q = (1u64 << self.d) as f64;
        let scale = (1.0 / (1u64 << self.n) as f64).sqrt();
        let amps = (0..1u64 << self.n)
            .map(|x| {
                Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * self.eval(x) as f64 / q)
            })
            .collect();
        StateVector::new(self.n, amps)
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(mask, c)| {
                let vars: String = (0..64)
                    .filter(|j| (mask >> j) & 1 == 1)
                    .map(|j| format!("x{}", j + 1))
                    .collect();
                format!("{c}{vars}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Phase state of a degree-`d` polynomial given in text form.
pub fn make_phase_state(n: usize, d: u32, poly: &str) -> Result<StateVector> {
    PhasePolynomial::parse(n, d, poly)?.state()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cz_plus_plus() {
        let s = make_phase_state(2, 2, "x1x2").unwrap();
        let signs = [1.0, 1.0, 1.0, -1.0];
        for (a, sgn) in s.amps().iter().zip(signs) {
            assert!((a - Complex64::new(0.5 * sgn, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn coefficient_domain() {
        assert!(PhasePolynomial::parse(3, 3, "4x1x2x3").is_ok());
        assert!(matches!(
            PhasePolynomial::parse(3, 3, "2x1x2x3"),
            Err(Error::CoefficientDomain(_))
        ));
        assert!(matches!(
            PhasePolynomial::parse(3, 2, "x1x2x3"),
            Err(Error::CoefficientDomain(_))
        ));
        assert!(matches!(
            PhasePolynomial::parse(2, 2, "3x1x2"),
            Err(Error::CoefficientDomain(_))
        ));
        assert!(matches!(
            PhasePolynomial::parse(2, 2, "x3"),
            Err(Error::OutOfRange(_))
        ));
        assert!(PhasePolynomial::parse(2, 2, "3x1 + 2*x1x2 + 1").is_ok());
    }

    #[test]
    fn eval_matches_hand_computation() {
        let p = PhasePolynomial::parse(3, 3, "4x1x2x3 + 2x1x2 + 3x3").unwrap();
        assert_eq!(p.eval(0b111), (4 + 2 + 3) % 8);
        assert_eq!(p.eval(0b011), 2);
        assert_eq!(p.eval(0b100), 3);
    }
}
