//! Top-degree part of `Ch_n` as a sum over unlabeled rooted bicolored maps,
//! its Kerov–Lassalle polynomial via expanders, and the moment and cumulant
//! functionals `M_π`, `K_π`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::exact::{factorial, int, GammaPoly, KlKey, KlPoly, Laurent, Rat};
use crate::maps::{
    enumerate_transitive_pairs, graph_of_pair, normalized_embeddings, orbit_census, BicoloredGraph,
    EmbeddingMemo, Orbit, Perm, MAX_N,
};
use crate::young::Partition;

pub const DEFAULT_BUDGET: usize = 6;

const KLTOP_KIND: &str = "kl_top";

/// Weights `q(v) ≥ 2` on the black vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpanderWeight {
    q: Vec<u32>,
}

impl ExpanderWeight {
    pub fn new(q: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = q.iter().find(|&&v| v < 2) {
            return Err(Error::BadIndex(bad as usize, 2));
        }
        Ok(ExpanderWeight { q })
    }

    pub fn values(&self) -> &[u32] {
        &self.q
    }
}

/// Conditions: `|𝒱∘| = Σ (q − 1)`, and every proper nonempty set of black
/// vertices has strictly more white neighbours than its `Σ (q − 1)`.
pub fn is_expander(g: &BicoloredGraph, w: &ExpanderWeight) -> Result<bool> {
    if w.q.len() != g.blacks() {
        return Err(Error::DomainMismatch);
    }
    Ok(expander_check(g, &w.q))
}

fn expander_check(g: &BicoloredGraph, q: &[u32]) -> bool {
    let total: u32 = q.iter().map(|v| v - 1).sum();
    if total as usize != g.whites() {
        return false;
    }
    let k = g.blacks();
    let full = (1u32 << k) - 1;
    (1..full).all(|mask| {
        let need: u32 = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| q[b] - 1).sum();
        g.white_neighbourhood(mask) > need as usize
    })
}

/// Compositions of `total` into `parts` positive parts, colexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: usize, parts: usize, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(Vec::new());
            }
            return;
        }
        if total < parts {
            return;
        }
        // last part varies slowest
        for last in 1..=total - (parts - 1) {
            let mut prefixes = Vec::new();
            rec(total - last, parts - 1, &mut prefixes);
            for mut p in prefixes {
                p.push(last as u32);
                out.push(p);
            }
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut out);
    out
}

/// All expander weights on `g`, in colexicographic order of `q − 1`.
pub fn expander_weights(g: &BicoloredGraph) -> Vec<ExpanderWeight> {
    compositions(g.whites(), g.blacks())
        .into_iter()
        .map(|c| c.into_iter().map(|p| p + 1).collect::<Vec<u32>>())
        .filter(|q| expander_check(g, q))
        .map(|q| ExpanderWeight { q })
        .collect()
}

/// `Σ_G Σ_q (−m_G) Π_v R_{q(v)}` over expanders on each graph.
pub fn kl_from_graphs(collection: &[(BicoloredGraph, GammaPoly)]) -> Result<KlPoly> {
    let mut out = KlPoly::zero();
    for (g, mult) in collection {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        for w in expander_weights(g) {
            for (j, c) in mult.0.coeffs().iter().enumerate() {
                out.add_term(KlKey::new(j as u32, w.q.clone()), -c);
            }
        }
    }
    Ok(out)
}

/// Orbit representative with its graph.
#[derive(Clone, Debug)]
pub struct MapRep {
    pub orbit: Orbit,
    pub graph: BicoloredGraph,
    /// `n + 1 − |C(σ₁)| − |C(σ₂)|`
    pub gamma_exp: u32,
}

/// Orbit representatives of `𝒳_n`, computed once per `n`.
pub fn map_reps(n: usize) -> Result<Arc<Vec<MapRep>>> {
    if n == 0 || n > MAX_N {
        return Err(Error::BadIndex(n, 1));
    }
    type Table = Mutex<HashMap<usize, Arc<OnceLock<Arc<Vec<MapRep>>>>>>;
    static TABLE: OnceLock<Table> = OnceLock::new();
    let slot = TABLE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(n)
        .or_default()
        .clone();
    let reps = slot.get_or_init(|| {
        let census = orbit_census(n).expect("n checked above");
        Arc::new(
            census
                .into_iter()
                .map(|o| {
                    let graph = graph_of_pair(&o.sigma1, &o.sigma2).expect("same size");
                    let gamma_exp = (n + 1 - graph.whites() - graph.blacks()) as u32;
                    MapRep { orbit: o, graph, gamma_exp }
                })
                .collect(),
        )
    });
    Ok(reps.clone())
}

/// Budgeted entry points with an optional on-disk cache for `kl_top`.
#[derive(Clone, Debug)]
pub struct TopDegree {
    budget: usize,
    cache: Option<Cache>,
}

impl Default for TopDegree {
    fn default() -> Self {
        TopDegree::new(DEFAULT_BUDGET)
    }
}

impl TopDegree {
    pub fn new(budget: usize) -> Self {
        TopDegree { budget, cache: None }
    }

    pub fn with_cache(mut self, cache: Cache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn check_budget(&self, n: usize) -> Result<()> {
        if n > self.budget || n > MAX_N {
            return Err(Error::BudgetExceeded {
                requested: n,
                budget: self.budget.min(MAX_N),
            });
        }
        Ok(())
    }

    /// `Ch^top_n(λ) = −Σ_reps γ^{n+1−|C₁|−|C₂|} 𝔑(λ)`.
    pub fn ch_top_eval(&self, n: usize, lam: &Partition) -> Result<Laurent> {
        self.check_budget(n)?;
        if n == 0 {
            return Err(Error::BadIndex(0, 1));
        }
        let reps = map_reps(n)?;
        let memo = EmbeddingMemo::new();
        let gamma = Laurent::gamma();
        let parts: Vec<Laurent> = reps
            .par_iter()
            .map(|r| -> Result<Laurent> {
                let count = memo.count(&r.graph, lam)?;
                Ok(gamma.pow(r.gamma_exp) * crate::maps::normalize(&r.graph, count))
            })
            .collect::<Result<_>>()?;
        Ok(-parts.iter().sum::<Laurent>())
    }

    /// Same value from the labeled sum over all of `𝒳_n`, divided by `(n−1)!`.
    pub fn ch_top_eval_labeled(&self, n: usize, lam: &Partition) -> Result<Laurent> {
        self.check_budget(n)?;
        let gamma = Laurent::gamma();
        let mut total = Laurent::zero();
        for (a, b) in enumerate_transitive_pairs(n) {
            let e = n + 1 - a.cycle_count() - b.cycle_count();
            total += &(gamma.pow(e as u32) * normalized_embeddings(&a, &b, lam)?);
        }
        let f = Rat::new(BigInt::from(-1), factorial(n as u64 - 1));
        Ok(total.scale(&f))
    }

    /// Kerov–Lassalle polynomial of `Ch^top_n`: one `γ^{n+1−|C₁|−|C₂|} Π R_q`
    /// per orbit and expander weight.
    pub fn kl_top(&self, n: usize) -> Result<KlPoly> {
        self.check_budget(n)?;
        if n == 0 {
            return Err(Error::BadIndex(0, 1));
        }
        let name = format!("kltop_{n}");
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.load(&name, KLTOP_KIND) {
                if let Ok(p) = KlPoly::from_json(&v) {
                    return Ok(p);
                }
            }
        }
        let reps = map_reps(n)?;
        let out = reps
            .par_iter()
            .map(|r| {
                let mut local = KlPoly::zero();
                for w in expander_weights(&r.graph) {
                    local.add_term(KlKey::new(r.gamma_exp, w.q), int(1));
                }
                local
            })
            .reduce(KlPoly::zero, |a, b| &a + &b);
        if let Some(cache) = &self.cache {
            let v: serde_json::Value = serde_json::from_str(&out.to_json())?;
            cache.store(&name, KLTOP_KIND, &v)?;
        }
        Ok(out)
    }

    /// The map-formula collection `{(G(σ₁,σ₂), −γ^{…})}` over orbit representatives.
    pub fn map_collection(&self, n: usize) -> Result<Vec<(BicoloredGraph, GammaPoly)>> {
        self.check_budget(n)?;
        Ok(map_reps(n)?
            .iter()
            .map(|r| (r.graph.clone(), GammaPoly::monomial(int(-1), r.gamma_exp as usize)))
            .collect())
    }
}

pub fn ch_top_eval(n: usize, lam: &Partition) -> Result<Laurent> {
    TopDegree::default().ch_top_eval(n, lam)
}

pub fn kl_top(n: usize) -> Result<KlPoly> {
    TopDegree::default().kl_top(n)
}

fn factorization_sum(pi: &Perm, lam: &Partition, transitive_only: bool) -> Result<Laurent> {
    let n = pi.n();
    let mut total = Laurent::zero();
    for s1 in Perm::all(n) {
        let s2 = Perm::compose(&s1.inverse(), pi)?;
        if transitive_only && !crate::maps::is_transitive_pair(&s1, &s2)? {
            continue;
        }
        total += &normalized_embeddings(&s1, &s2, lam)?;
    }
    let sign = if pi.cycle_count().is_multiple_of(2) { 1 } else { -1 };
    Ok(total.scale(&int(sign)))
}

/// `M_π(λ) = (−1)^{|C(π)|} Σ_{σ₁σ₂=π} 𝔑_{G(σ₁,σ₂)}(λ)`.
pub fn moment_m(pi: &Perm, lam: &Partition) -> Result<Laurent> {
    factorization_sum(pi, lam, false)
}

/// `K_π(λ)`: as [`moment_m`], keeping only transitive factorizations.
pub fn cumulant_k(pi: &Perm, lam: &Partition) -> Result<Laurent> {
    factorization_sum(pi, lam, true)
}

/// `π` restricted to a union of its cycles, relabelled order-preservingly.
pub fn restrict(pi: &Perm, block: &[usize]) -> Result<Perm> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    let index = |x: usize| sorted.binary_search(&x).ok();
    let images = sorted
        .iter()
        .map(|&i| index(pi.apply(i)).ok_or_else(|| Error::InvalidPerm("block is not π-invariant".into())))
        .collect::<Result<Vec<usize>>>()?;
    Perm::new(images)
}

/// All set partitions of `{0, …, k−1}` (restricted growth strings).
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, k, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, k, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{P ≥ C(π)} Π_{B ∈ P} K_{π|B}(λ)`, the cumulant side of the
/// moment–cumulant relation.
pub fn moment_from_cumulants(pi: &Perm, lam: &Partition) -> Result<Laurent> {
    let cycles = pi.cycles();
    let mut total = Laurent::zero();
    for sp in set_partitions(cycles.len()) {
        let mut term = Laurent::one();
        for block in sp {
            let elems: Vec<usize> = block.iter().flat_map(|&c| cycles[c].iter().copied()).collect();
            term = &term * &cumulant_k(&restrict(pi, &elems)?, lam)?;
        }
        total += &term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: &[u32]) -> Partition {
        Partition::from(v.to_vec())
    }

    #[test]
    fn small_top_degree_values() {
        for l in [lam(&[1]), lam(&[2, 1]), lam(&[3, 3])] {
            assert_eq!(ch_top_eval(1, &l).unwrap(), Laurent::from(l.size() as i64));
        }
        assert!(ch_top_eval(2, &lam(&[1])).unwrap().is_zero());
        assert_eq!(ch_top_eval(2, &lam(&[2])).unwrap(), Laurent::monomial(int(2), 1));
        assert!(matches!(
            ch_top_eval(7, &lam(&[1])),
            Err(Error::BudgetExceeded { requested: 7, .. })
        ));
    }

    #[test]
    fn expanders() {
        let star = BicoloredGraph::new(1, vec![1, 1, 1]).unwrap();
        assert!(is_expander(&star, &ExpanderWeight::new(vec![4]).unwrap()).unwrap());
        let two_blacks = BicoloredGraph::new(2, vec![0b11]).unwrap();
        assert!(expander_weights(&two_blacks).is_empty());
        let edge = BicoloredGraph::single_edge();
        assert!(is_expander(&edge, &ExpanderWeight::new(vec![2]).unwrap()).unwrap());
        assert!(matches!(
            is_expander(&edge, &ExpanderWeight::new(vec![2, 2]).unwrap()),
            Err(Error::DomainMismatch)
        ));
    }

    #[test]
    fn compositions_in_colex_order() {
        assert_eq!(compositions(4, 2), vec![vec![3, 1], vec![2, 2], vec![1, 3]]);
        assert_eq!(compositions(2, 3), Vec::<Vec<u32>>::new());
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn small_kl_tops() {
        assert_eq!(kl_top(1).unwrap(), KlPoly::term(0, vec![2], int(1)));
        let two = &KlPoly::term(0, vec![3], int(1)) + &KlPoly::term(1, vec![2], int(1));
        assert_eq!(kl_top(2).unwrap(), two);
        let td = TopDegree::default();
        assert_eq!(kl_from_graphs(&td.map_collection(2).unwrap()).unwrap(), two);
        let single = [(BicoloredGraph::single_edge(), GammaPoly::constant(int(-1)))];
        assert_eq!(kl_from_graphs(&single).unwrap(), KlPoly::term(0, vec![2], int(1)));
        assert!(kl_from_graphs(&[]).unwrap().is_zero());
        let split = BicoloredGraph::new(2, vec![0b01, 0b10]).unwrap();
        assert!(matches!(
            kl_from_graphs(&[(split, GammaPoly::one())]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn moments_for_one_element() {
        let id = Perm::identity(1);
        for l in [lam(&[2]), lam(&[3, 1])] {
            assert_eq!(moment_m(&id, &l).unwrap(), Laurent::from(l.size() as i64));
            assert_eq!(cumulant_k(&id, &l).unwrap(), Laurent::from(l.size() as i64));
        }
        assert!(moment_m(&Perm::identity(3), &Partition::empty()).unwrap().is_zero());
    }

    #[test]
    fn restriction_and_set_partitions() {
        let pi: Perm = "2,1,3".parse().unwrap();
        assert_eq!(restrict(&pi, &[0, 1]).unwrap(), "2,1".parse().unwrap());
        assert_eq!(restrict(&pi, &[2]).unwrap(), Perm::identity(1));
        assert!(restrict(&pi, &[0, 2]).is_err());
        let bell: Vec<usize> = (0..6).map(|k| set_partitions(k).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
    }
}
