use super::sets::PointSet;
use crate::f2core::{symplectic_form_index, SymplecticPoint};

/// Largest set handled by the exact clique search.
pub const NAC_EXACT_CAP: usize = 2000;

/// Largest pairwise anticommuting subset found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NacResult {
    pub size: usize,
    pub witness: Vec<SymplecticPoint>,
    /// `false` when the set was too large and the greedy lower bound is reported.
    pub exact: bool,
}

struct Graph {
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl Graph {
    fn anticommutation(n: usize, pts: &[u64]) -> Self {
        let words = pts.len().div_ceil(64);
        let mut adj = vec![vec![0u64; words]; pts.len()];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if symplectic_form_index(n, pts[i], pts[j]) == 1 {
                    adj[i][j / 64] |= 1 << (j % 64);
                    adj[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Self { words, adj }
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].iter().map(|w| w.count_ones()).sum()
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

/// Greedy sequential colouring of `p`; returns vertices in colour order with
/// their colour numbers (1-based).
fn colour_sort(g: &Graph, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = p.to_vec();
    let mut order = Vec::new();
    let mut colours = Vec::new();
    let mut c = 0;
    while uncoloured.iter().any(|&w| w != 0) {
        c += 1;
        let mut q = uncoloured.clone();
        loop {
            let Some(v) = bits(&q).next() else { break };
            q[v / 64] &= !(1 << (v % 64));
            uncoloured[v / 64] &= !(1 << (v % 64));
            for (qw, aw) in q.iter_mut().zip(&g.adj[v]) {
                *qw &= !aw;
            }
            order.push(v);
            colours.push(c);
        }
    }
    (order, colours)
}

fn expand(
    g: &Graph,
    p: &mut [u64],
    clique: &mut Vec<usize>,
    best: &mut Vec<usize>,
    ceiling: usize,
) {
    let (order, colours) = colour_sort(g, p);
    for i in (0..order.len()).rev() {
        if clique.len() + colours[i] <= best.len() || best.len() >= ceiling {
            return;
        }
        let v = order[i];
        clique.push(v);
        let mut np: Vec<u64> = p.iter().zip(&g.adj[v]).map(|(a, b)| a & b).collect();
        if np.iter().all(|&w| w == 0) {
            if clique.len() > best.len() {
                *best = clique.clone();
            }
        } else {
            expand(g, &mut np, clique, best, ceiling);
        }
        clique.pop();
        p[v / 64] &= !(1 << (v % 64));
    }
}

/// Maximum clique of the anticommutation graph of `pts` (branch and bound
/// with a colouring bound). Returns positions into `pts`. No anticommuting
/// family on `n` qubits exceeds `2n + 1`, which ends the search early.
fn max_clique(n: usize, pts: &[u64]) -> Vec<usize> {
    if pts.is_empty() {
        return Vec::new();
    }
    let g = Graph::anticommutation(n, pts);
    let mut p = vec![0u64; g.words];
    for v in 0..pts.len() {
        p[v / 64] |= 1 << (v % 64);
    }
    let mut best = vec![0];
    expand(&g, &mut p, &mut Vec::new(), &mut best, 2 * n + 1);
    best
}

fn greedy_clique(n: usize, pts: &[u64]) -> Vec<usize> {
    if pts.is_empty() {
        return Vec::new();
    }
    let g = Graph::anticommutation(n, pts);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.adj[u][v / 64] >> (v % 64) & 1 == 1) {
            clique.push(v);
        }
    }
    clique
}

/// `nac(A)`: the size of a largest pairwise anticommuting subset of `A`.
/// Any single label counts as a family of size 1, so `nac` is 1 on nonempty
/// isotropic sets and 0 on the empty set.
pub fn nac(a: &PointSet) -> NacResult {
    let n = a.n();
    let pts = a.indices();
    let exact = pts.len() <= NAC_EXACT_CAP;
    let chosen = if exact { max_clique(n, pts) } else { greedy_clique(n, pts) };
    let mut witness: Vec<SymplecticPoint> = chosen
        .into_iter()
        .map(|i| SymplecticPoint::from_index(n, pts[i]))
        .collect();
    witness.sort();
    NacResult {
        size: witness.len(),
        witness,
        exact,
    }
}

/// True when every pair in `family` anticommutes.
pub fn is_anticommuting_family(family: &[SymplecticPoint]) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family[i + 1..]
            .iter()
            .all(|b| a.n() == b.n() && a.symplectic_product(b) == Ok(1))
    })
}
