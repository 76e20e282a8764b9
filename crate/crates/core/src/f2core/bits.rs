use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{check_dims, Error, Result};

/// Largest vector length representable in one packed word.
pub const MAX_BITS: usize = 64;
/// Largest qubit count for which a symplectic point packs into one word.
pub const MAX_QUBITS: usize = MAX_BITS / 2;

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
pub fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

/// A vector in F2^L with `L <= 64`, packed little-endian: bit 0 is coordinate 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    bits: u64,
}

impl BitVec {
    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_word(len, 0)
    }

    pub fn from_word(len: usize, bits: u64) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::CapExceeded {
                what: "bit vector length",
                value: len,
                cap: MAX_BITS,
            });
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::OutOfRange(format!(
                "word {bits:#x} has bits beyond length {len}"
            )));
        }
        Ok(Self { len, bits })
    }

    /// Unit vector with coordinate `i` (0-based) set.
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        if i >= len {
            return Err(Error::OutOfRange(format!("coordinate {i} >= length {len}")));
        }
        Self::from_word(len, 1 << i)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> Result<u8> {
        check_dims(self.len, other.len)?;
        Ok(parity(self.bits & other.bits))
    }

    pub fn try_add(&self, other: &BitVec) -> Result<BitVec> {
        check_dims(self.len, other.len)?;
        Ok(BitVec {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// Bitstring with coordinate 1 first.
    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        let mut len = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => {
                    if i < 64 {
                        bits |= 1 << i;
                    }
                }
                _ => return Err(Error::Malformed(format!("invalid bit character {c:?}"))),
            }
            len = i + 1;
        }
        Self::from_word(len, bits)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

/// Panics on length mismatch; use [`BitVec::try_add`] for checked addition.
impl Add for BitVec {
    type Output = BitVec;
    fn add(self, rhs: BitVec) -> BitVec {
        self.try_add(&rhs).expect("BitVec length mismatch")
    }
}

/// A point `(v, w)` of F2^(2n): the label of the Weyl operator `W_{v,w}`.
///
/// `v` is the X-part and `w` the Z-part, each packed with qubit 1 at bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticPoint {
    n: usize,
    v: u64,
    w: u64,
}

impl SymplecticPoint {
    pub fn new(n: usize, v: u64, w: u64) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::CapExceeded {
                what: "qubit count",
                value: n,
                cap: MAX_QUBITS,
            });
        }
        let mask = low_mask(n);
        if v & !mask != 0 || w & !mask != 0 {
            return Err(Error::OutOfRange(format!(
                "label ({v:#x}, {w:#x}) exceeds {n} qubits"
            )));
        }
        Ok(Self { n, v, w })
    }

    pub fn from_parts(v: &BitVec, w: &BitVec) -> Result<Self> {
        check_dims(v.len(), w.len())?;
        Self::new(v.len(), v.word(), w.word())
    }

    pub fn identity(n: usize) -> Self {
        Self { n, v: 0, w: 0 }
    }

    /// Pauli X on qubit `q` (0-based).
    pub fn x(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self { n, v: 1 << q, w: 0 }
    }

    /// Pauli Z on qubit `q` (0-based).
    pub fn z(n: usize, q: usize) -> Self {
        assert!(q < n);
        Self { n, v: 0, w: 1 << q }
    }

    /// Table index: `(v << n) | w`, i.e. lexicographic with `v` major.
    pub fn from_index(n: usize, index: u64) -> Self {
        let mask = low_mask(n);
        Self {
            n,
            v: (index >> n) & mask,
            w: index & mask,
        }
    }

    #[inline]
    pub fn index(&self) -> u64 {
        (self.v << self.n) | self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn v_bits(&self) -> BitVec {
        BitVec {
            len: self.n,
            bits: self.v,
        }
    }

    pub fn w_bits(&self) -> BitVec {
        BitVec {
            len: self.n,
            bits: self.w,
        }
    }

    /// The packed 2n-bit vector whose word equals [`Self::index`].
    pub fn to_bitvec(&self) -> BitVec {
        BitVec {
            len: 2 * self.n,
            bits: self.index(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.v == 0 && self.w == 0
    }

    /// Number of qubits on which the label acts non-trivially.
    pub fn support_weight(&self) -> u32 {
        (self.v | self.w).count_ones()
    }

    /// `[x, y] = <x_v, y_w> + <x_w, y_v> mod 2`.
    pub fn symplectic_product(&self, other: &SymplecticPoint) -> Result<u8> {
        check_dims(self.n, other.n)?;
        Ok(self.form(other))
    }

    #[inline]
    pub(crate) fn form(&self, other: &SymplecticPoint) -> u8 {
        parity((self.v & other.w) ^ (self.w & other.v))
    }

    pub fn try_add(&self, other: &SymplecticPoint) -> Result<SymplecticPoint> {
        check_dims(self.n, other.n)?;
        Ok(*self + *other)
    }

    /// Bitstring of length 2n: the v bits then the w bits, qubit 1 first.
    pub fn to_bitstring(&self) -> String {
        format!(
            "{}{}",
            self.v_bits().to_bitstring(),
            self.w_bits().to_bitstring()
        )
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits = BitVec::from_bitstring(s)?;
        if bits.len() % 2 != 0 {
            return Err(Error::Malformed(format!(
                "symplectic bitstring {s:?} has odd length"
            )));
        }
        let n = bits.len() / 2;
        let mask = low_mask(n);
        Self::new(n, bits.word() & mask, bits.word() >> n)
    }

    /// Pauli letters, qubit 1 first (`I`, `X`, `Y`, `Z`).
    pub fn pauli_string(&self) -> String {
        (0..self.n)
            .map(|q| match ((self.v >> q) & 1, (self.w >> q) & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (1, 1) => 'Y',
                _ => 'Z',
            })
            .collect()
    }

    pub fn from_pauli_string(s: &str) -> Result<Self> {
        let mut v = 0u64;
        let mut w = 0u64;
        let mut n = 0;
        for (q, c) in s.chars().enumerate() {
            if q >= MAX_QUBITS {
                return Err(Error::CapExceeded {
                    what: "qubit count",
                    value: q + 1,
                    cap: MAX_QUBITS,
                });
            }
            match c {
                'I' => {}
                'X' => v |= 1 << q,
                'Y' => {
                    v |= 1 << q;
                    w |= 1 << q;
                }
                'Z' => w |= 1 << q,
                _ => return Err(Error::Malformed(format!("invalid Pauli letter {c:?}"))),
            }
            n = q + 1;
        }
        Self::new(n, v, w)
    }
}

impl fmt::Debug for SymplecticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli_string())
    }
}

impl fmt::Display for SymplecticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli_string())
    }
}

impl PartialOrd for SymplecticPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymplecticPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.index()).cmp(&(other.n, other.index()))
    }
}

/// Panics if the qubit counts differ.
impl Add for SymplecticPoint {
    type Output = SymplecticPoint;
    #[inline]
    fn add(self, rhs: SymplecticPoint) -> SymplecticPoint {
        assert_eq!(self.n, rhs.n, "symplectic point qubit counts differ");
        SymplecticPoint {
            n: self.n,
            v: self.v ^ rhs.v,
            w: self.w ^ rhs.w,
        }
    }
}

impl AddAssign for SymplecticPoint {
    fn add_assign(&mut self, rhs: SymplecticPoint) {
        *self = *self + rhs;
    }
}

/// Symplectic form on packed table indices of an `n`-qubit space.
#[inline]
pub fn symplectic_form_index(n: usize, a: u64, b: u64) -> u8 {
    let mask = low_mask(n);
    parity(((a >> n) & b & mask) ^ (a & mask & (b >> n)))
}

/// Swap the v and w halves of a packed index: `[a, x] = <swap(a), x>`.
#[inline]
pub fn swap_halves(n: usize, a: u64) -> u64 {
    let mask = low_mask(n);
    ((a & mask) << n) | ((a >> n) & mask)
}
