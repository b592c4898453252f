//! Shape functionals `T_n`, `S_n`, the γ-polynomials converting between them,
//! free cumulants `R_k`, and evaluation of Kerov–Lassalle polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{binomial, gamma_recover, int, subst_gamma, GammaPoly, KlPoly, Laurent, Rat};
use crate::maps::{graph_of_pair, count_embeddings, normalize, BicoloredGraph, Perm};
use crate::young::{content, Partition};

/// `T_n(λ) = (n−1) Σ_{□ ∈ λ} c(□)^{n−2}`.
pub fn t_functional(n: usize, lam: &Partition) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    let sum: Laurent = lam.boxes().map(|b| content(b).pow(n as u32 - 2)).sum();
    Ok(sum.scale(&int(n as i64 - 1)))
}

/// `S_n(λ)` summed box by box. Writing `c` for the content of a box, the
/// box's lower-left corner sits at `c + γ` and the integral of `z^{n−2}` over it
/// gives `−(1/n)[c^n − (c + 1/A)^n − (c − A)^n + (c + γ)^n]`.
pub fn s_functional(n: usize, lam: &Partition) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    let k = n as u32;
    let (ainv, a, gamma) = (Laurent::a_inv(), Laurent::a(), Laurent::gamma());
    let mut total = Laurent::zero();
    for b in lam.boxes() {
        let c = content(b);
        total += &(c.pow(k) - (&c + &ainv).pow(k) - (&c - &a).pow(k) + (&c + &gamma).pow(k));
    }
    Ok(total.scale(&crate::exact::rat(-1, n as i64)))
}

/// `S_n` of the multirectangular diagram `P′ × Q′` from the corner formula,
/// with `p_i = p′_i / A` and `q_i = A q′_i`.
pub fn s_functional_multirect(n: usize, p_prime: &[u32], q_prime: &[u32]) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    if p_prime.len() != q_prime.len() {
        return Err(Error::SizeMismatch(p_prime.len(), q_prime.len()));
    }
    let k = n as u32;
    let mut total = Laurent::zero();
    let mut before = Laurent::zero();
    for (&pp, &qq) in p_prime.iter().zip(q_prime) {
        let after = &before + &Laurent::monomial(int(pp as i64), -1);
        let q = Laurent::monomial(int(qq as i64), 1);
        total += &((-&before).pow(k) - (-&after).pow(k) - (&q - &before).pow(k) + (&q - &after).pow(k));
        before = after;
    }
    Ok(total.scale(&crate::exact::rat(-1, n as i64)))
}

/// `P_k` with `S_n = Σ_{2≤k≤n} P_k(γ) T_k`. Expanding the box integral in
/// powers of the content gives the coefficient of `T_k` as
/// `binom(n, k−2)/(n(k−1)) · [A^{−m} + (−A)^m − γ^m − 0^m]`, `m = n + 2 − k`.
pub fn conversion_p(n: usize) -> Result<BTreeMap<usize, GammaPoly>> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let m = (n + 2 - k) as u32;
        let mut bracket = Laurent::monomial(int(1), -(m as i32)) + Laurent::monomial(int(if m.is_multiple_of(2) { 1 } else { -1 }), m as i32)
            - Laurent::gamma().pow(m);
        if m == 0 {
            bracket -= &Laurent::one();
        }
        let factor = Rat::new(binomial(n as u64, k as u64 - 2), (n * (k - 1)).into());
        out.insert(k, gamma_recover(&bracket.scale(&factor))?);
    }
    Ok(out)
}

/// `Q_k` with `T_n = Σ_{2≤k≤n} Q_k(γ) S_k`, by back-substitution through the
/// `P` tables of all smaller indices.
pub fn conversion_q(n: usize) -> Result<BTreeMap<usize, GammaPoly>> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    let mut q_tables: Vec<BTreeMap<usize, GammaPoly>> = vec![BTreeMap::new(); n + 1];
    for j in 2..=n {
        let p = conversion_p(j)?;
        let mut q: BTreeMap<usize, GammaPoly> = BTreeMap::new();
        q.insert(j, GammaPoly::one());
        for k in 2..j {
            for (i, qi) in &q_tables[k] {
                let term = &p[&k] * qi;
                let slot = q.entry(*i).or_default();
                *slot = &*slot - &term;
            }
        }
        q.retain(|_, v| !v.is_zero());
        q_tables[j] = q;
    }
    Ok(q_tables.swap_remove(n))
}

/// Pairs `(σ₁, σ₂)` in `𝔖_{k−1}` with `σ₁σ₂ = (1 … k−1)` and `k` cycles in
/// total, as graphs.
pub fn free_cumulant_graphs(k: usize) -> Result<&'static [BicoloredGraph]> {
    if k < 2 {
        return Err(Error::BadIndex(k, 2));
    }
    static TABLE: OnceLock<Mutex<HashMap<usize, &'static [BicoloredGraph]>>> = OnceLock::new();
    let table = TABLE.get_or_init(Default::default);
    if let Some(g) = table.lock().unwrap().get(&k) {
        return Ok(g);
    }
    let m = k - 1;
    let c = Perm::full_cycle(m);
    let mut graphs = Vec::new();
    for s1 in Perm::all(m) {
        let s2 = Perm::compose(&s1.inverse(), &c)?;
        if s1.cycle_count() + s2.cycle_count() == k {
            graphs.push(graph_of_pair(&s1, &s2)?);
        }
    }
    let leaked: &'static [BicoloredGraph] = Box::leak(graphs.into_boxed_slice());
    Ok(*table.lock().unwrap().entry(k).or_insert(leaked))
}

/// `R_k(λ) = −Σ 𝔑_{G(σ₁,σ₂)}(λ)` over the pairs of [`free_cumulant_graphs`].
pub fn free_cumulant(k: usize, lam: &Partition) -> Result<Laurent> {
    if k < 2 {
        return Err(Error::BadIndex(k, 2));
    }
    type Memo = Mutex<HashMap<(usize, Partition), Laurent>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&(k, lam.clone())) {
        return Ok(v.clone());
    }
    let mut total = Laurent::zero();
    for g in free_cumulant_graphs(k)? {
        total -= &normalize(g, count_embeddings(g, lam)?);
    }
    memo.lock().unwrap().insert((k, lam.clone()), total.clone());
    Ok(total)
}

/// `Σ c · γ^g · Π R_{μ_i}(λ)`.
pub fn kl_evaluate(p: &KlPoly, lam: &Partition) -> Result<Laurent> {
    let mut total = Laurent::zero();
    let gamma = Laurent::gamma();
    for (key, c) in p.terms() {
        let mut term = gamma.pow(key.g).scale(c);
        for &m in &key.mu {
            term = &term * &free_cumulant(m as usize, lam)?;
        }
        total += &term;
    }
    Ok(total)
}

/// `Σ_k P_k(γ) F(k)` for a table of γ-coefficients.
pub fn combine(table: &BTreeMap<usize, GammaPoly>, f: impl Fn(usize) -> Result<Laurent>) -> Result<Laurent> {
    let mut total = Laurent::zero();
    for (&k, p) in table {
        total += &(subst_gamma(p) * f(k)?);
    }
    Ok(total)
}
