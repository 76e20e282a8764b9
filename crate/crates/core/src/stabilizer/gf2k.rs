//! Arithmetic in GF(2^k) with a polynomial basis, enough for the
//! symplectic spread behind the `2^k + 1` covering.

/// GF(2^k) modulo an irreducible polynomial (bit `k` set).
#[derive(Clone, Copy, Debug)]
pub struct Gf2k {
    k: u32,
    modulus: u64,
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while a != 0 && 63 - a.leading_zeros() >= dm {
        a ^= m << (63 - a.leading_zeros() - dm);
    }
    a
}

fn is_irreducible(p: u64) -> bool {
    let d = 63 - p.leading_zeros();
    // Trial division by every polynomial of degree 1..=d/2.
    (1..=d / 2).all(|e| (1u64 << e..1u64 << (e + 1)).all(|q| poly_mod(p, q) != 0))
}

impl Gf2k {
    /// Uses the lexicographically smallest irreducible polynomial of degree `k`.
    pub fn new(k: u32) -> Self {
        assert!((1..=20).contains(&k), "field degree {k} unsupported");
        let modulus = (1u64 << k..1u64 << (k + 1))
            .find(|&p| is_irreducible(p))
            .expect("irreducible polynomials exist in every degree");
        Self { k, modulus }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.k) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    /// Absolute trace `sum_{i<k} a^{2^i}`, an element of GF(2).
    pub fn trace(&self, a: u64) -> u8 {
        let mut t = 0u64;
        let mut x = a;
        for _ in 0..self.k {
            t ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(t <= 1);
        t as u8
    }

    /// Symmetric matrix `M_a[i][j] = Tr(a x^i x^j)`, rows packed as words.
    pub fn trace_form_matrix(&self, a: u64) -> Vec<u64> {
        let k = self.k as usize;
        let mut rows = vec![0u64; k];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..k {
                let prod = self.mul(a, self.mul(1 << i, 1 << j));
                *row |= (self.trace(prod) as u64) << j;
            }
        }
        rows
    }
}
