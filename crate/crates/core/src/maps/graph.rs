use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use super::perm::{next_permutation, Perm};
use crate::error::{Error, Result};
use crate::exact::Laurent;
use crate::young::Partition;

/// Bipartite graph with white and black vertices. `adj[w]` is a bitmask of
/// the black neighbours of white vertex `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicoloredGraph {
    whites: usize,
    blacks: usize,
    adj: Vec<u32>,
}

impl BicoloredGraph {
    pub fn new(blacks: usize, adj: Vec<u32>) -> Result<Self> {
        assert!(blacks <= 32, "at most 32 black vertices");
        let g = BicoloredGraph {
            whites: adj.len(),
            blacks,
            adj,
        };
        if g.has_isolated_vertex() {
            return Err(Error::IsolatedVertex);
        }
        Ok(g)
    }

    /// Single white joined to a single black.
    pub fn single_edge() -> Self {
        BicoloredGraph {
            whites: 1,
            blacks: 1,
            adj: vec![1],
        }
    }

    pub fn whites(&self) -> usize {
        self.whites
    }

    pub fn blacks(&self) -> usize {
        self.blacks
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn has_edge(&self, w: usize, b: usize) -> bool {
        self.adj[w] >> b & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum()
    }

    fn has_isolated_vertex(&self) -> bool {
        let covered = self.adj.iter().fold(0u32, |acc, m| acc | m);
        self.adj.contains(&0) || covered.count_ones() as usize != self.blacks
    }

    pub fn is_connected(&self) -> bool {
        if self.whites == 0 {
            return self.blacks <= 1;
        }
        let mut wseen = vec![false; self.whites];
        let mut bseen = 0u32;
        let mut stack = vec![0usize];
        wseen[0] = true;
        while let Some(w) = stack.pop() {
            let fresh = self.adj[w] & !bseen;
            bseen |= fresh;
            for (v, seen) in wseen.iter_mut().enumerate() {
                if !*seen && self.adj[v] & fresh != 0 {
                    *seen = true;
                    stack.push(v);
                }
            }
        }
        wseen.iter().all(|&s| s) && bseen.count_ones() as usize == self.blacks
    }

    /// Number of white vertices adjacent to at least one black vertex in `mask`.
    pub fn white_neighbourhood(&self, mask: u32) -> usize {
        self.adj.iter().filter(|&&m| m & mask != 0).count()
    }

    /// Isomorphism-invariant form: black vertices are ordered by degree with
    /// every tie order tried, white masks are sorted, and the smallest result wins.
    pub fn canonical_form(&self) -> (usize, Vec<u32>) {
        let degree = |b: usize| self.adj.iter().filter(|&&m| m >> b & 1 == 1).count();
        let mut order: Vec<usize> = (0..self.blacks).collect();
        order.sort_by_key(|&b| degree(b));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &b in &order {
            match blocks.last_mut() {
                Some(bl) if degree(bl[0]) == degree(b) => bl.push(b),
                _ => blocks.push(vec![b]),
            }
        }
        let mut best: Option<Vec<u32>> = None;
        let mut perms: Vec<Vec<usize>> = blocks.clone();
        for p in perms.iter_mut() {
            p.sort_unstable();
        }
        loop {
            let flat: Vec<usize> = perms.iter().flatten().copied().collect();
            let mut pos = [0usize; 32];
            for (i, &b) in flat.iter().enumerate() {
                pos[b] = i;
            }
            let mut masks: Vec<u32> = self
                .adj
                .iter()
                .map(|&m| {
                    (0..self.blacks)
                        .filter(|&b| m >> b & 1 == 1)
                        .fold(0u32, |acc, b| acc | 1 << pos[b])
                })
                .collect();
            masks.sort_unstable();
            if best.as_ref().is_none_or(|cur| masks < *cur) {
                best = Some(masks);
            }
            // odometer over the blocks
            let mut k = 0;
            loop {
                if k == perms.len() {
                    return (self.blacks, best.unwrap_or_default());
                }
                if next_permutation(&mut perms[k]) {
                    break;
                }
                perms[k].sort_unstable();
                k += 1;
            }
        }
    }
}

/// `G(σ₁, σ₂)`: whites are the cycles of `a`, blacks the cycles of `b`, joined
/// when the cycles share an element.
pub fn graph_of_pair(a: &Perm, b: &Perm) -> Result<BicoloredGraph> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let (wc, bc) = (a.cycles(), b.cycles());
    let mut black_of = vec![0usize; b.n()];
    for (k, c) in bc.iter().enumerate() {
        for &i in c {
            black_of[i] = k;
        }
    }
    let adj = wc
        .iter()
        .map(|c| c.iter().fold(0u32, |m, &i| m | 1 << black_of[i]))
        .collect();
    Ok(BicoloredGraph {
        whites: wc.len(),
        blacks: bc.len(),
        adj,
    })
}

/// `N_G(λ)` via `Σ_{f₂} Π_w min_{b ~ w} λ_{f₂(b)}`.
pub fn count_embeddings(g: &BicoloredGraph, lam: &Partition) -> Result<BigInt> {
    if g.has_isolated_vertex() {
        return Err(Error::IsolatedVertex);
    }
    let rows = lam.parts();
    if rows.is_empty() {
        return Ok(BigInt::from(0));
    }
    let mut f2 = vec![0usize; g.blacks];
    let mut total = BigInt::from(0);
    loop {
        let mut prod = BigInt::from(1);
        for &m in &g.adj {
            let mut low = u32::MAX;
            let mut bits = m;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                low = low.min(rows[f2[b]]);
                bits &= bits - 1;
            }
            prod *= low;
        }
        total += prod;
        let mut k = 0;
        loop {
            if k == g.blacks {
                return Ok(total);
            }
            f2[k] += 1;
            if f2[k] < rows.len() {
                break;
            }
            f2[k] = 0;
            k += 1;
        }
    }
}

/// Reference count by enumerating both `f₁` (columns) and `f₂` (rows) and
/// checking every edge lands in a box of `λ`.
pub fn count_embeddings_naive(g: &BicoloredGraph, lam: &Partition) -> Result<BigInt> {
    if g.has_isolated_vertex() {
        return Err(Error::IsolatedVertex);
    }
    let (rows, cols) = (lam.len(), lam.row(1) as usize);
    if rows == 0 {
        return Ok(BigInt::from(0));
    }
    let slots = g.whites + g.blacks;
    let radix: Vec<usize> = (0..slots).map(|i| if i < g.whites { cols } else { rows }).collect();
    let mut f = vec![0usize; slots];
    let mut count = 0u64;
    loop {
        let ok = (0..g.whites).all(|w| {
            (0..g.blacks).all(|b| !g.has_edge(w, b) || f[w] < lam.row(f[g.whites + b] + 1) as usize)
        });
        if ok {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == slots {
                return Ok(BigInt::from(count));
            }
            f[k] += 1;
            if f[k] < radix[k] {
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}

/// `𝔑_G(λ) = A^{|𝒱∘|} (−1/A)^{|𝒱•|} N_G(λ)`.
pub fn normalize(g: &BicoloredGraph, count: BigInt) -> Laurent {
    let sign = if g.blacks.is_multiple_of(2) { 1 } else { -1 };
    Laurent::monomial(
        crate::exact::Rat::from_integer(count * sign),
        g.whites as i32 - g.blacks as i32,
    )
}

pub fn normalized_embeddings(a: &Perm, b: &Perm, lam: &Partition) -> Result<Laurent> {
    let g = graph_of_pair(a, b)?;
    Ok(normalize(&g, count_embeddings(&g, lam)?))
}

/// Embedding counts memoized by `(canonical graph form, λ)`; safe to share
/// across worker threads.
#[derive(Default)]
pub struct EmbeddingMemo {
    table: Mutex<HashMap<((usize, Vec<u32>), Partition), BigInt>>,
}

impl EmbeddingMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self, g: &BicoloredGraph, lam: &Partition) -> Result<BigInt> {
        let key = (g.canonical_form(), lam.clone());
        if let Some(v) = self.table.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = count_embeddings(g, lam)?;
        self.table.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All bicolored graphs without isolated vertices on exactly `whites` and
/// `blacks` vertices, as raw adjacency lists (isomorphic copies included).
pub fn all_graphs(whites: usize, blacks: usize) -> Vec<BicoloredGraph> {
    let full = (1u32 << blacks) - 1;
    let mut out = Vec::new();
    let mut adj = vec![1u32; whites];
    if whites == 0 || blacks == 0 {
        return out;
    }
    loop {
        if let Ok(g) = BicoloredGraph::new(blacks, adj.clone()) {
            out.push(g);
        }
        let mut k = 0;
        loop {
            if k == whites {
                return out;
            }
            if adj[k] < full {
                adj[k] += 1;
                break;
            }
            adj[k] = 1;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn lam(v: &[u32]) -> Partition {
        Partition::from(v.to_vec())
    }

    #[test]
    fn graphs_of_pairs() {
        let g = graph_of_pair(&Perm::identity(2), &p("2,1")).unwrap();
        assert_eq!((g.whites(), g.blacks()), (2, 1));
        assert!(g.has_edge(0, 0) && g.has_edge(1, 0));
        let g = graph_of_pair(&p("2,1"), &p("2,1")).unwrap();
        assert_eq!((g.whites(), g.blacks(), g.edge_count()), (1, 1, 1));
        assert_eq!(graph_of_pair(&Perm::identity(1), &Perm::identity(1)).unwrap(), BicoloredGraph::single_edge());
    }

    #[test]
    fn embedding_counts() {
        let e = BicoloredGraph::single_edge();
        assert_eq!(count_embeddings(&e, &lam(&[2, 1])).unwrap(), BigInt::from(3));
        assert_eq!(count_embeddings(&e, &Partition::empty()).unwrap(), BigInt::from(0));
        let path = BicoloredGraph::new(1, vec![1, 1]).unwrap();
        assert_eq!(count_embeddings(&path, &lam(&[1])).unwrap(), BigInt::from(1));
        assert!(matches!(BicoloredGraph::new(2, vec![1]), Err(Error::IsolatedVertex)));
    }

    #[test]
    fn normalized() {
        let one = lam(&[1]);
        assert_eq!(
            normalized_embeddings(&Perm::identity(2), &p("2,1"), &one).unwrap(),
            Laurent::monomial(int(-1), 1)
        );
        assert_eq!(
            normalized_embeddings(&p("2,1"), &Perm::identity(2), &one).unwrap(),
            Laurent::monomial(int(1), -1)
        );
        assert!(normalized_embeddings(&p("2,1"), &p("2,1"), &Partition::empty()).unwrap().is_zero());
    }

    #[test]
    fn canonical_forms_identify_isomorphic_graphs() {
        // a white of degree 2 and a white of degree 1, in both black labelings
        let g1 = BicoloredGraph::new(2, vec![0b11, 0b01]).unwrap();
        let g2 = BicoloredGraph::new(2, vec![0b10, 0b11]).unwrap();
        assert_eq!(g1.canonical_form(), g2.canonical_form());
        let g3 = BicoloredGraph::new(2, vec![0b11, 0b11]).unwrap();
        assert_ne!(g1.canonical_form(), g3.canonical_form());
    }

    #[test]
    fn connectivity() {
        assert!(BicoloredGraph::new(2, vec![0b11, 0b01]).unwrap().is_connected());
        assert!(!BicoloredGraph::new(2, vec![0b01, 0b10]).unwrap().is_connected());
        assert_eq!(all_graphs(1, 1).len(), 1);
        assert_eq!(all_graphs(2, 1).len(), 1);
        // 2x2: 9 nonzero mask pairs minus the two leaving a black isolated
        assert_eq!(all_graphs(2, 2).len(), 7);
    }
}
