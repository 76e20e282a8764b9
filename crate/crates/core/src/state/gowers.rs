use num_complex::Complex64;
use rayon::prelude::*;

use super::vector::StateVector;
use crate::error::{Error, Result};

/// Cap on `n (k+1)`, the log2 of the number of `(x, h_1, ..., h_k)` tuples.
pub const GOWERS_SUM_CAP: usize = 26;

fn sum_derivatives(g: &[Complex64], depth: usize, scratch: &mut [Vec<Complex64>]) -> Complex64 {
    if depth == 0 {
        return g.iter().sum();
    }
    let (head, tail) = scratch.split_first_mut().expect("scratch per depth");
    let mut acc = Complex64::new(0.0, 0.0);
    for h in 0..g.len() {
        for (x, slot) in head.iter_mut().enumerate() {
            *slot = g[x] * g[x ^ h].conj();
        }
        acc += sum_derivatives(head, depth - 1, tail);
    }
    acc
}

/// `||psi||_{U^k}^{2^k} = 2^{n 2^{k-1}} E_{x,h_1..h_k} prod_w C^{|w|} f(x + w.h)`,
/// summed directly over all `2^{n(k+1)}` tuples.
///
/// The product over `w in F2^k` is the iterated multiplicative derivative
/// `D_{h_k} ... D_{h_1} f (x)` with `D_h g(x) = g(x) conj(g(x+h))`.
pub fn gowers_power_definition(psi: &StateVector, k: usize) -> Result<f64> {
    if !(2..=4).contains(&k) {
        return Err(Error::OutOfRange(format!("Gowers order k = {k} not in 2..=4")));
    }
    let n = psi.n();
    if n * (k + 1) > GOWERS_SUM_CAP {
        return Err(Error::CapExceeded {
            what: "Gowers direct-sum size n(k+1)",
            value: n * (k + 1),
            cap: GOWERS_SUM_CAP,
        });
    }
    let dim = 1usize << n;
    // Rescale so the 2^{n 2^{k-1}} prefactor is absorbed: (2^{n/2})^{2^k}.
    let s = (dim as f64).sqrt();
    let f: Vec<Complex64> = psi.amps().iter().map(|z| z * s).collect();
    let total: Complex64 = (0..dim)
        .into_par_iter()
        .map(|h1| {
            let first: Vec<Complex64> = (0..dim).map(|x| f[x] * f[x ^ h1].conj()).collect();
            let mut scratch = vec![vec![Complex64::new(0.0, 0.0); dim]; k - 1];
            sum_derivatives(&first, k - 1, &mut scratch)
        })
        .sum();
    let tuples = (1u64 << (n * (k + 1))) as f64;
    Ok(total.re / tuples)
}

/// `||psi||_{U^k}` from the defining sum.
///
/// With this prefactor, a state that is uniform on an affine subspace of
/// dimension `r` has power `2^{(n-r)(2^{k-1}-k-1)}`. That is 1 for `k = 3`,
/// but above 1 for `k >= 4` unless the support is full.
pub fn gowers_norm_definition(psi: &StateVector, k: usize) -> Result<f64> {
    let v = gowers_power_definition(psi, k)?;
    Ok(v.max(0.0).powf(1.0 / (1u32 << k) as f64))
}
