//! Walsh-Hadamard and symplectic Fourier transforms.
//!
//! Normalizations, fixed once here:
//!
//! * [`walsh_hadamard`] is the expectation convention
//!   `f^(S) = E_x f(x) (-1)^{S.x} = 2^-n sum_x f(x) (-1)^{S.x}`.
//!   Its inverse [`inverse_walsh_hadamard`] is the unnormalized sum, so
//!   applying the forward transform twice returns `f / 2^n`.
//! * [`symplectic_fourier`] is `g~(a) = 4^-n sum_x (-1)^{[a,x]} g(x)` and
//!   [`inverse_symplectic_fourier`] is `g(x) = sum_a (-1)^{[a,x]} g~(a)`.
//!
//! Vectors over F2^(2n) are indexed by the packed table index `(v << n) | w`.

use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::bits::swap_halves;
use crate::error::{Error, Result};

/// In-place unnormalized butterfly `f <- H f`, `H_{S,x} = (-1)^{S.x}`.
pub fn fwht_in_place<T>(data: &mut [T]) -> Result<()>
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let len = data.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// `log2(len)` for a power-of-two length.
pub fn log2_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Number of qubits `n` for a table of length `4^n`.
pub fn qubits_for_table_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() || len.trailing_zeros() % 2 != 0 {
        return Err(Error::NotPowerOfFour { len });
    }
    Ok(len.trailing_zeros() as usize / 2)
}

pub fn walsh_hadamard(f: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = f.to_vec();
    fwht_in_place(&mut out)?;
    let scale = 1.0 / f.len() as f64;
    for z in out.iter_mut() {
        *z *= scale;
    }
    Ok(out)
}

pub fn inverse_walsh_hadamard(fhat: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = fhat.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}

/// Real-valued expectation-normalized transform.
pub fn walsh_hadamard_real(f: &[f64]) -> Result<Vec<f64>> {
    let mut out = f.to_vec();
    fwht_in_place(&mut out)?;
    let scale = 1.0 / f.len() as f64;
    for z in out.iter_mut() {
        *z *= scale;
    }
    Ok(out)
}

fn permute_swap(n: usize, g: &[f64]) -> Vec<f64> {
    (0..g.len())
        .map(|a| g[swap_halves(n, a as u64) as usize])
        .collect()
}

/// `g~(a) = 4^-n sum_x (-1)^{[a,x]} g(x)`.
///
/// Since `[a,x] = <swap(a), x>` this is the ordinary transform evaluated at
/// the half-swapped index.
pub fn symplectic_fourier(g: &[f64]) -> Result<Vec<f64>> {
    let n = qubits_for_table_len(g.len())?;
    let ghat = walsh_hadamard_real(g)?;
    Ok(permute_swap(n, &ghat))
}

/// `g(x) = sum_a (-1)^{[a,x]} g~(a)`.
pub fn inverse_symplectic_fourier(gt: &[f64]) -> Result<Vec<f64>> {
    let n = qubits_for_table_len(gt.len())?;
    let mut out = permute_swap(n, gt);
    fwht_in_place(&mut out)?;
    Ok(out)
}
