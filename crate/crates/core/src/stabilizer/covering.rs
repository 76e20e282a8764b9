use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gf2k::Gf2k;
use super::lagrangian::LagrangianSubspace;
use crate::error::{Error, Result};
use crate::f2core::{symplectic_form_index, F2Subspace, SymplecticPoint};
use crate::pauli::canonicalize_subgroup;
use crate::state::FORMAT_TAG;

/// Largest `k` for which a covering is materialized.
pub const MUB_K_CAP: usize = 16;
pub const PAULI_K_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoveringMode {
    /// `2^k + 1` groups from a symplectic spread (mutually unbiased bases).
    Mub,
    /// `4^k` groups, one per Pauli on the `k` paired qubits.
    Paulis,
}

impl fmt::Display for CoveringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoveringMode::Mub => "mub",
            CoveringMode::Paulis => "paulis",
        })
    }
}

impl FromStr for CoveringMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mub" => Ok(CoveringMode::Mub),
            "paulis" => Ok(CoveringMode::Paulis),
            _ => Err(Error::Malformed(format!("unknown covering mode {s:?}"))),
        }
    }
}

/// Lagrangians whose union contains `target`.
#[derive(Clone, Debug)]
pub struct StabilizerCovering {
    pub k: usize,
    pub m: usize,
    pub mode: CoveringMode,
    pub groups: Vec<LagrangianSubspace>,
    pub target: F2Subspace,
}

/// Packs a label on `k` qubits into an `n`-qubit index.
fn embed(n: usize, k: usize, x: u64) -> u64 {
    let mask = (1u64 << k) - 1;
    let (v, w) = ((x >> k) & mask, x & mask);
    (v << n) | w
}

/// Spread of F2^(2k): `{(0,w)}` and `{(v, M_a v)}` for `a in GF(2^k)`.
pub fn mub_spread(k: usize) -> Result<Vec<Vec<u64>>> {
    if k == 0 {
        return Ok(vec![vec![]]);
    }
    if k > MUB_K_CAP {
        return Err(Error::CapExceeded {
            what: "covering k (mub)",
            value: k,
            cap: MUB_K_CAP,
        });
    }
    let field = Gf2k::new(k as u32);
    let mut out = vec![(0..k).map(|j| 1u64 << j).collect::<Vec<_>>()];
    for a in 0..1u64 << k {
        let rows = field.trace_form_matrix(a);
        // Basis (e_j, M_a e_j); M_a is symmetric so column j equals row j.
        out.push(
            (0..k)
                .map(|j| ((1u64 << j) << k) | rows[j])
                .collect(),
        );
    }
    Ok(out)
}

/// One Lagrangian of F2^(2k) per label `t`, grown greedily from `t` over
/// candidates in increasing index order.
pub fn pauli_groups(k: usize) -> Result<Vec<Vec<u64>>> {
    if k > PAULI_K_CAP {
        return Err(Error::CapExceeded {
            what: "covering k (paulis)",
            value: k,
            cap: PAULI_K_CAP,
        });
    }
    let mut out = Vec::with_capacity(1 << (2 * k));
    for t in 0..1u64 << (2 * k) {
        let mut span = F2Subspace::zero(2 * k)?;
        span.insert(t);
        for c in 1..1u64 << (2 * k) {
            if span.dim() == k {
                break;
            }
            if !span.contains_word(c)
                && span
                    .basis_words()
                    .iter()
                    .all(|&b| symplectic_form_index(k, b, c) == 0)
            {
                span.insert(c);
            }
        }
        out.push(span.basis_words().to_vec());
    }
    Ok(out)
}

/// Covers `V` by Lagrangians: canonicalize `V`, cover the paired block `P^k`,
/// extend each group with `Z` on the other `n - k` qubits, and pull back.
pub fn stabilizer_covering(v: &F2Subspace, mode: CoveringMode) -> Result<StabilizerCovering> {
    let cf = canonicalize_subgroup(v)?;
    let (n, k) = (cf.n, cf.k);
    let blocks = match mode {
        CoveringMode::Mub => mub_spread(k)?,
        CoveringMode::Paulis => pauli_groups(k)?,
    };
    let tail: Vec<u64> = (k..n).map(|j| 1u64 << j).collect();
    let mut groups = Vec::with_capacity(blocks.len());
    for block in blocks {
        let words = block
            .iter()
            .map(|&x| embed(n, k, x))
            .chain(tail.iter().copied())
            .map(|x| cf.inverse.apply_index(x));
        groups.push(LagrangianSubspace::new(F2Subspace::span_words(2 * n, words)?)?);
    }
    Ok(StabilizerCovering {
        k,
        m: cf.m,
        mode,
        groups,
        target: v.clone(),
    })
}

impl StabilizerCovering {
    pub fn n(&self) -> usize {
        self.target.n_ambient() / 2
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// `2^k + 1` or `4^k`; an isotropic target (`k = 0`) needs one group.
    pub fn expected_len(&self) -> usize {
        match self.mode {
            CoveringMode::Mub if self.k == 0 => 1,
            CoveringMode::Mub => (1 << self.k) + 1,
            CoveringMode::Paulis => 1 << (2 * self.k),
        }
    }

    /// Exhaustive check that every member of the target lies in some group.
    pub fn covers_target(&self) -> Result<bool> {
        let members = self.target.span_members_words(16)?;
        Ok(members
            .iter()
            .all(|&x| self.groups.iter().any(|g| g.subspace().contains_word(x))))
    }

    pub fn to_file(&self) -> CoveringFile {
        let n = self.n();
        CoveringFile {
            format: FORMAT_TAG.to_string(),
            n,
            k: self.k,
            m: self.m,
            mode: self.mode,
            groups: self
                .groups
                .iter()
                .map(|g| g.basis_points().iter().map(|p| p.to_bitstring()).collect())
                .collect(),
        }
    }
}

/// `{"k", "m", "mode", "groups": [[basis rows as bitstrings], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoveringFile {
    pub format: String,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub mode: CoveringMode,
    pub groups: Vec<Vec<String>>,
}

impl CoveringFile {
    pub fn group_subspaces(&self) -> Result<Vec<LagrangianSubspace>> {
        self.groups
            .iter()
            .map(|rows| {
                let pts = rows
                    .iter()
                    .map(|r| SymplecticPoint::from_bitstring(r))
                    .collect::<Result<Vec<_>>>()?;
                LagrangianSubspace::new(F2Subspace::from_points(self.n, &pts)?)
            })
            .collect()
    }
}
