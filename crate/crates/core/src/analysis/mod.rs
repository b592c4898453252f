//! Difference operators, the characterization conditions, row-polynomial
//! fitting and Kerov–Lassalle expansion of Jack characters by interpolation.

pub mod linalg;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, KlKey, KlPoly, Laurent, Rat};
use crate::functionals::free_cumulant;
use crate::jackref::{ensure_global_bound, JackOracle};
use crate::topdegree::DEFAULT_BUDGET;
use crate::young::{enumerate_partitions, partitions_of, Partition};

use linalg::reduce;

/// A functional on Young diagrams.
pub type Evaluator<'a> = dyn Fn(&Partition) -> Result<Laurent> + Sync + 'a;

/// Pass/fail outcome of one check, with human-readable witnesses of failures.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(check: &str, params: Value, witnesses: Vec<String>) -> Self {
        Report {
            check: check.into(),
            params,
            pass: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Passing report that carries informational notes.
    pub fn passed_with_notes(check: &str, params: Value, notes: Vec<String>) -> Self {
        Report {
            check: check.into(),
            params,
            pass: true,
            witnesses: notes,
        }
    }

    /// Keys in the order `check`, `params`, `pass`, `witnesses`.
    pub fn to_json(&self) -> String {
        format!(
            r#"{{"check":{},"params":{},"pass":{},"witnesses":{}}}"#,
            Value::String(self.check.clone()),
            self.params,
            self.pass,
            Value::from(self.witnesses.clone())
        )
    }
}

/// `F` at the decreasing rearrangement of `xi`, zeros dropped.
pub fn sym_eval(f: &Evaluator, xi: &[u32]) -> Result<Laurent> {
    f(&Partition::from_unsorted(xi.iter().copied()))
}

/// `Δ_{λ₁} ⋯ Δ_{λ_k} F^sym(λ₁, …, λ_k)` as the signed sum over the `2^k`
/// ways of incrementing a subset of the arguments.
pub fn iterated_delta(f: &Evaluator, lam: &[u32]) -> Result<Laurent> {
    let k = lam.len();
    let mut total = Laurent::zero();
    for mask in 0u32..1 << k {
        let xi: Vec<u32> = (0..k).map(|i| lam[i] + (mask >> i & 1)).collect();
        let v = sym_eval(f, &xi)?;
        if (k as u32 - mask.count_ones()).is_multiple_of(2) {
            total += &v;
        } else {
            total -= &v;
        }
    }
    Ok(total)
}

/// A nonzero `[A^{n+1−2k}] Δ⋯Δ F^sym(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct T3Violation {
    pub k: usize,
    pub lam: Vec<u32>,
    pub coeff: Rat,
}

// k-tuples of nonnegative integers with sum at most `max`
fn tuples(k: usize, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in tuples(k - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The `(k, λ)` instances of the top-degree condition: `k = 0` with `λ = ∅`,
/// `k = 1` with `λ₁ ≤ n − 2`, and `k ≥ 2` with `|λ| ≤ n + 1 − 2k`.
pub fn t3_instances(n: usize) -> Vec<(usize, Vec<u32>)> {
    let mut out = vec![(0, Vec::new())];
    if n >= 2 {
        out.extend((0..=n as u32 - 2).map(|l| (1, vec![l])));
    }
    let mut k = 2;
    while n + 1 >= 2 * k {
        out.extend(tuples(k, (n + 1 - 2 * k) as u32).into_iter().map(|t| (k, t)));
        k += 1;
    }
    out
}

pub fn check_t3(n: usize, f: &Evaluator) -> Result<Vec<T3Violation>> {
    let found: Vec<Option<T3Violation>> = t3_instances(n)
        .into_par_iter()
        .map(|(k, lam)| -> Result<Option<T3Violation>> {
            let e = n as i32 + 1 - 2 * k as i32;
            let c = iterated_delta(f, &lam)?.coeff(e);
            Ok((!c.is_zero()).then_some(T3Violation { k, lam, coeff: c }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Polynomial in the row lengths `λ₁, …, λ_m` with Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowPolynomial {
    pub m: usize,
    pub coeffs: BTreeMap<Vec<u32>, Laurent>,
}

impl RowPolynomial {
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> RowPolynomial {
        RowPolynomial {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[u32]) -> Laurent {
        self.coeffs
            .iter()
            .map(|(e, c)| c.scale(&int(monomial_value(e, x))))
            .sum()
    }

    /// `c · p_π(λ₁, …, λ_m)`
    pub fn power_sum(pi: &Partition, m: usize, c: &Laurent) -> RowPolynomial {
        let mut acc: BTreeMap<Vec<u32>, Laurent> = BTreeMap::from([(vec![0; m], c.clone())]);
        for &part in pi.parts() {
            let mut next: BTreeMap<Vec<u32>, Laurent> = BTreeMap::new();
            for (e, v) in &acc {
                for i in 0..m {
                    let mut e2 = e.clone();
                    e2[i] += part;
                    *next.entry(e2).or_default() += v;
                }
            }
            acc = next;
        }
        acc.retain(|_, v| !v.is_zero());
        RowPolynomial { m, coeffs: acc }
    }
}

fn monomial_value(e: &[u32], x: &[u32]) -> i64 {
    e.iter().zip(x).map(|(&k, &v)| (v as i64).pow(k)).product()
}

// exponent vectors in m variables with total degree ≤ d
fn exponents(m: usize, d: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponents(m - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// weakly decreasing m-tuples with entries in [lo..=hi] for the first entry
// and sum ≤ max_sum
fn decreasing_tuples(m: usize, first_lo: u32, first_hi: u32, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, cap: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap.min(budget) {
            cur.push(v);
            rec(m - 1, v, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for first in first_lo..=first_hi.min(max_sum) {
        let mut cur = vec![first];
        rec(m - 1, first, max_sum - first, &mut cur, &mut out);
    }
    out
}

fn laurent_columns(values: &[Laurent]) -> Vec<i32> {
    let set: BTreeSet<i32> = values.iter().flat_map(|v| v.terms().map(|(e, _)| e)).collect();
    set.into_iter().collect()
}

/// Interpolates `F` restricted to diagrams with at most `m` rows by a
/// polynomial `W` of degree ≤ `degree_bound` in the row lengths.
///
/// Fit points are the decreasing `m`-tuples with `λ₁ ≤ degree_bound` (a
/// simplex grid in the gaps `λ_i − λ_{i+1}`, hence unisolvent). The fit is
/// then checked on decreasing tuples with `degree_bound < λ₁ ≤ degree_bound + m`.
pub fn fit_row_polynomial(f: &Evaluator, m: usize, degree_bound: u32) -> Result<RowPolynomial> {
    if m == 0 {
        return Err(Error::BadIndex(0, 1));
    }
    let monos = exponents(m, degree_bound);
    let grid = decreasing_tuples(m, 0, degree_bound, m as u32 * degree_bound);
    debug_assert_eq!(grid.len(), monos.len());
    let values: Vec<Laurent> = grid
        .par_iter()
        .map(|x| sym_eval(f, x))
        .collect::<Result<_>>()?;
    let cols = laurent_columns(&values);
    let rows: Vec<Vec<Rat>> = grid
        .iter()
        .zip(&values)
        .map(|(x, v)| {
            let mut row: Vec<Rat> = monos.iter().map(|e| int(monomial_value(e, x))).collect();
            row.extend(cols.iter().map(|&c| v.coeff(c)));
            row
        })
        .collect();
    let red = reduce(rows, monos.len());
    let sol = red
        .solution
        .ok_or_else(|| Error::RankDeficient(format!("fit grid has rank {} of {}", red.rank, monos.len())))?;
    let mut coeffs = BTreeMap::new();
    for (e, row) in monos.into_iter().zip(sol) {
        let c = Laurent::from_pairs(cols.iter().copied().zip(row));
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
    }
    let w = RowPolynomial { m, coeffs };
    let check_sum = (m as u32 * degree_bound).max(degree_bound + m as u32);
    let extra = decreasing_tuples(m, degree_bound + 1, degree_bound + m as u32, check_sum);
    for x in extra {
        if w.eval(&x) != sym_eval(f, &x)? {
            return Err(Error::RankDeficient(format!(
                "fitted polynomial of degree {degree_bound} misses the value at {x:?}"
            )));
        }
    }
    Ok(w)
}

/// Value of `γ^g Π R_{μ_i}` on one diagram.
fn kl_basis_value(key: &KlKey, cumulants: &[Laurent]) -> Laurent {
    let mut v = Laurent::gamma().pow(key.g);
    for &m in &key.mu {
        v = &v * &cumulants[m as usize];
    }
    v
}

fn cumulant_table(lam: &Partition, max_k: u32) -> Result<Vec<Laurent>> {
    let mut out = vec![Laurent::zero(), Laurent::zero()];
    for k in 2..=max_k.max(1) as usize {
        out.push(free_cumulant(k, lam)?);
    }
    Ok(out)
}

/// Maximum number of staircase extensions tried when the system is rank deficient.
pub const EXTENSION_LIMIT: usize = 4;

/// Solves for the Kerov–Lassalle polynomial of `Ch_π` among all keys of grade
/// at most `grade_bound`, matching coefficients of `A` on every diagram of size
/// ≤ `grade_bound + 1` (plus staircases while the system is rank deficient) and
/// then checking three held-out diagrams of size `grade_bound + 2`.
pub fn kl_expand(pi: &Partition, grade_bound: u32) -> Result<KlPoly> {
    let holdout_size = grade_bound as usize + 2;
    ensure_global_bound(holdout_size);
    let oracle = JackOracle::global();
    let keys: Vec<KlKey> = (0..=grade_bound).flat_map(KlKey::of_grade).collect();
    let max_k = grade_bound;
    let mut diagrams = enumerate_partitions(grade_bound + 1);
    let equations = |diags: &[Partition]| -> Result<Vec<Vec<Rat>>> {
        let per: Vec<Vec<Vec<Rat>>> = diags
            .par_iter()
            .map(|lam| -> Result<Vec<Vec<Rat>>> {
                let cum = cumulant_table(lam, max_k)?;
                let basis: Vec<Laurent> = keys.iter().map(|k| kl_basis_value(k, &cum)).collect();
                let target = oracle.jack_character(pi, lam)?;
                let mut all = basis.clone();
                all.push(target.clone());
                Ok(laurent_columns(&all)
                    .into_iter()
                    .map(|e| {
                        let mut row: Vec<Rat> = basis.iter().map(|b| b.coeff(e)).collect();
                        row.push(target.coeff(e));
                        row
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(per.into_iter().flatten().collect())
    };
    let mut rows = equations(&diagrams)?;
    let mut extension = 0;
    let solution = loop {
        let red = reduce(rows.clone(), keys.len());
        if red.inconsistent > 0 {
            return Err(Error::RankDeficient(format!(
                "no combination of grade ≤ {grade_bound} matches Ch_{pi}"
            )));
        }
        if let Some(sol) = red.solution {
            break sol;
        }
        if extension == EXTENSION_LIMIT {
            return Err(Error::RankDeficient(format!(
                "rank {} of {} after {EXTENSION_LIMIT} extensions",
                red.rank,
                keys.len()
            )));
        }
        extension += 1;
        let top = grade_bound + 1;
        let stair = Partition::from_unsorted((0..=extension as u32).map(|i| top - i.min(top - 1)));
        if stair.size() > oracle.bound() {
            return Err(Error::RankDeficient(format!(
                "rank {} of {}; next staircase {stair} exceeds the oracle bound",
                red.rank,
                keys.len()
            )));
        }
        let extra = equations(std::slice::from_ref(&stair))?;
        diagrams.push(stair);
        rows.extend(extra);
    };
    let result = KlPoly::from_terms(keys.iter().cloned().zip(solution.into_iter().map(|mut r| r.remove(0))));
    for lam in holdout(holdout_size as u32) {
        let v = crate::functionals::kl_evaluate(&result, &lam)?;
        if v != oracle.jack_character(pi, &lam)? {
            return Err(Error::RankDeficient(format!("held-out diagram {lam} disagrees")));
        }
    }
    Ok(result)
}

/// First, middle and last partition of `size` in lexicographically decreasing order.
pub fn holdout(size: u32) -> Vec<Partition> {
    let all = partitions_of(size);
    let mut picks = vec![all[0].clone(), all[all.len() / 2].clone(), all[all.len() - 1].clone()];
    picks.dedup();
    picks
}

/// Full Kerov–Lassalle polynomial of `Ch_n`.
pub fn kl_expand_full(n: usize) -> Result<KlPoly> {
    if n > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget: DEFAULT_BUDGET,
        });
    }
    if n == 0 {
        return kl_expand(&Partition::empty(), 0);
    }
    kl_expand(&Partition::from(vec![n as u32]), n as u32 + 1)
}

/// Largest `|π|` for which the general (`ℓ(π) ≥ 2`) expansion is attempted.
pub const K1_GENERAL_LIMIT: usize = 4;

/// Conditions K1–K4 of the characterization of `Ch_π`.
pub fn check_k_conditions(pi: &Partition) -> Result<Vec<Report>> {
    let np = pi.size();
    let len = pi.len();
    let params = json!({"pi": pi.to_string()});
    let oracle = JackOracle::global();
    let ch = |lam: &Partition| oracle.jack_character(pi, lam);
    let mut reports = Vec::new();

    // K1: Kerov–Lassalle degree at most |π| + ℓ(π)
    let bound = (np + len) as u32;
    let k1 = if len <= 1 || np <= K1_GENERAL_LIMIT {
        let expansion = if len == 1 {
            kl_expand_full(np)
        } else {
            kl_expand(pi, bound)
        };
        match expansion {
            Ok(p) => {
                let mut w = Vec::new();
                if p.max_grade().is_some_and(|g| g > bound) {
                    w.push(format!("grade {} exceeds {bound}", p.max_grade().unwrap()));
                }
                Report::new("K1", params.clone(), w)
            }
            Err(e) => Report::new("K1", params.clone(), vec![e.to_string()]),
        }
    } else {
        Report::passed_with_notes("K1", params.clone(), vec![format!("skipped: |π| > {K1_GENERAL_LIMIT}")])
    };
    reports.push(k1);

    // K2: polynomial in the row lengths with top part A^{|π|−ℓ} p_π
    let mut w2 = Vec::new();
    for m in 1..=2 {
        match fit_row_polynomial(&ch, m, np as u32) {
            Ok(w) => {
                let expect = RowPolynomial::power_sum(pi, m, &Laurent::monomial(Rat::one(), (np - len) as i32));
                if w.degree() != Some(np as u32) {
                    w2.push(format!("m={m}: degree {:?}, expected {np}", w.degree()));
                }
                if w.homogeneous_part(np as u32) != expect {
                    w2.push(format!("m={m}: top-degree part differs from A^{}·p_π", np - len));
                }
            }
            Err(e) => w2.push(format!("m={m}: {e}")),
        }
    }
    reports.push(Report::new("K2", params.clone(), w2));

    // K3: vanishing below |π|
    let mut w3 = Vec::new();
    for lam in enumerate_partitions(np.saturating_sub(1) as u32) {
        if lam.size() < np && !ch(&lam)?.is_zero() {
            w3.push(format!("Ch({lam}) ≠ 0"));
        }
    }
    reports.push(Report::new("K3", params.clone(), w3));

    // K4: Laurent degree at most |π| − ℓ(π)
    if len >= 2 {
        let mut w4 = Vec::new();
        for lam in enumerate_partitions(6) {
            let v = ch(&lam)?;
            if v.degree().is_some_and(|d| d > (np - len) as i32) {
                w4.push(format!("Ch({lam}) = {v}"));
            }
        }
        reports.push(Report::new("K4", params, w4));
    } else {
        reports.push(Report::passed_with_notes("K4", params, vec!["not applicable: ℓ(π) < 2".into()]));
    }
    Ok(reports)
}

/// `[A^{n−1}] (Ch_n(λ₁+1) − Ch_n(λ₁)) = n (λ₁)(λ₁−1)⋯(λ₁−n+2)` for `0 ≤ λ₁ ≤ n+2`.
pub fn check_p1top(n: usize) -> Result<Report> {
    if n < 2 {
        return Err(Error::BadIndex(n, 2));
    }
    ensure_global_bound(n + 3);
    let oracle = JackOracle::global();
    let pi = Partition::from(vec![n as u32]);
    let mut witnesses = Vec::new();
    for l1 in 0..=(n + 2) as i64 {
        let hi = oracle.jack_character(&pi, &Partition::from(vec![l1 as u32 + 1]))?;
        let lo = oracle.jack_character(&pi, &Partition::from(vec![l1 as u32]))?;
        let lhs = (hi - lo).coeff(n as i32 - 1);
        let rhs: i64 = n as i64 * (1..n as i64).map(|j| l1 + 1 - j).product::<i64>();
        if lhs != int(rhs) {
            witnesses.push(format!("λ₁={l1}: {lhs} vs {rhs}"));
        }
    }
    Ok(Report::new("p1top", json!({"n": n}), witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size_fn(lam: &Partition) -> Result<Laurent> {
        Ok(Laurent::from(lam.size() as i64))
    }

    #[test]
    fn symmetric_extension_and_differences() {
        assert_eq!(sym_eval(&size_fn, &[1, 3, 2]).unwrap(), Laurent::from(6));
        let c = |lam: &Partition| -> Result<Laurent> { Ok(Laurent::from(lam.len() as i64 + 7)) };
        assert_eq!(sym_eval(&c, &[0, 0]).unwrap(), Laurent::from(7));
        assert_eq!(iterated_delta(&size_fn, &[3]).unwrap(), Laurent::one());
        assert!(iterated_delta(&size_fn, &[2, 1]).unwrap().is_zero());
        let one = |_: &Partition| -> Result<Laurent> { Ok(Laurent::one()) };
        assert!(iterated_delta(&one, &[0, 4, 1]).unwrap().is_zero());
        assert!(check_t3(1, &one).unwrap().is_empty());
    }

    #[test]
    fn t3_instance_list() {
        let i = t3_instances(3);
        // k=0: ∅; k=1: λ₁ ∈ {0,1}; k=2: |λ| ≤ 0
        assert_eq!(i, vec![(0, vec![]), (1, vec![0]), (1, vec![1]), (2, vec![0, 0])]);
        assert_eq!(t3_instances(1), vec![(0, vec![])]);
    }

    #[test]
    fn row_fit_of_simple_functions() {
        let w = fit_row_polynomial(&size_fn, 1, 1).unwrap();
        assert_eq!(w.coeffs, BTreeMap::from([(vec![1], Laurent::one())]));
        let c = |_: &Partition| -> Result<Laurent> { Ok(Laurent::a()) };
        let w = fit_row_polynomial(&c, 2, 0).unwrap();
        assert_eq!(w.coeffs, BTreeMap::from([(vec![0, 0], Laurent::a())]));
        let sq = |lam: &Partition| -> Result<Laurent> { Ok(Laurent::from((lam.size() * lam.size()) as i64)) };
        assert!(matches!(fit_row_polynomial(&sq, 2, 1), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn grids_are_square() {
        for m in 1..=3 {
            for d in 0..=4 {
                let g = decreasing_tuples(m, 0, d, m as u32 * d);
                assert_eq!(g.len(), exponents(m, d).len());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = Report::new("x", json!({"n": 2}), vec![]);
        assert_eq!(r.to_json(), r#"{"check":"x","params":{"n":2},"pass":true,"witnesses":[]}"#);
    }
}
