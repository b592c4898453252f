//! Named verification suites. Each returns one [`Report`] per check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::json;

use crate::analysis::{check_k_conditions, check_p1top, check_t3, kl_expand_full, Report};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, rat, GammaPoly, KlPoly, Laurent, Rat};
use crate::functionals::{
    combine, conversion_p, conversion_q, free_cumulant, free_cumulant_graphs, kl_evaluate, s_functional,
    s_functional_multirect, t_functional,
};
use crate::jackref::JackOracle;
use crate::maps::{
    all_graphs, count_embeddings, count_embeddings_naive, graph_of_pair, orbit_census, Perm,
};
use crate::topdegree::{moment_from_cumulants, moment_m, TopDegree};
use crate::young::{content, enumerate_partitions, MultiRect, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    PrologueTables,
    JackExamples,
    Stanley,
    Vanishing,
    LaurentDegree,
    StConversion,
    Equivalence,
    TopVsFull,
    T3,
    P1Top,
    Orbits,
    MomentCumulant,
    Catalan,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::PrologueTables,
        Suite::JackExamples,
        Suite::Stanley,
        Suite::Vanishing,
        Suite::LaurentDegree,
        Suite::StConversion,
        Suite::Equivalence,
        Suite::TopVsFull,
        Suite::T3,
        Suite::P1Top,
        Suite::Orbits,
        Suite::MomentCumulant,
        Suite::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PrologueTables => "prologue-tables",
            Suite::JackExamples => "jack-examples",
            Suite::Stanley => "stanley",
            Suite::Vanishing => "vanishing",
            Suite::LaurentDegree => "laurent-degree",
            Suite::StConversion => "st-conversion",
            Suite::Equivalence => "equivalence",
            Suite::TopVsFull => "top-vs-full",
            Suite::T3 => "t3",
            Suite::P1Top => "p1top",
            Suite::Orbits => "orbits",
            Suite::MomentCumulant => "moment-cumulant",
            Suite::Catalan => "catalan",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Runs `suite` with size parameter `n`.
pub fn run(suite: Suite, n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    match suite {
        Suite::PrologueTables => reference_tables(n, td),
        Suite::JackExamples => jack_examples(n),
        Suite::Stanley => stanley(n as u32),
        Suite::Vanishing => vanishing(n),
        Suite::LaurentDegree => laurent_degree(n),
        Suite::StConversion => st_conversion(n),
        Suite::Equivalence => equivalence(n, td),
        Suite::TopVsFull => top_vs_full(n, td),
        Suite::T3 => t3(n, td),
        Suite::P1Top => (2..=n).map(check_p1top).collect(),
        Suite::Orbits => orbits(n, td),
        Suite::MomentCumulant => moment_cumulant(n),
        Suite::Catalan => catalan(n),
    }
}

fn key(g: u32, mu: &[u32], c: i64) -> (crate::exact::KlKey, Rat) {
    (crate::exact::KlKey::new(g, mu.to_vec()), int(c))
}

/// Top-degree parts of `Ch_1, …, Ch_4` and the lower-order remainders.
pub fn reference_table(n: usize) -> Option<(KlPoly, KlPoly)> {
    let (top, rest) = match n {
        1 => (vec![key(0, &[2], 1)], vec![]),
        2 => (vec![key(0, &[3], 1), key(1, &[2], 1)], vec![]),
        3 => (vec![key(0, &[4], 1), key(1, &[3], 3), key(2, &[2], 2)], vec![key(0, &[2], 1)]),
        4 => (
            vec![
                key(0, &[5], 1),
                key(1, &[4], 6),
                key(1, &[2, 2], 1),
                key(2, &[3], 11),
                key(3, &[2], 6),
            ],
            vec![key(0, &[3], 5), key(1, &[2], 7)],
        ),
        _ => return None,
    };
    Some((KlPoly::from_terms(top), KlPoly::from_terms(rest)))
}

fn reference_tables(n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for k in 1..=n.min(4) {
        let (top, rest) = reference_table(k).unwrap();
        let got = td.kl_top(k)?;
        let w = if got == top { vec![] } else { vec![format!("kl_top = {got}, expected {top}")] };
        out.push(Report::new("kl_top", json!({"n": k}), w));
        let full = kl_expand_full(k)?;
        let expect = &top + &rest;
        let w = if full == expect { vec![] } else { vec![format!("Ch = {full}, expected {expect}")] };
        out.push(Report::new("kl_expand_full", json!({"n": k}), w));
    }
    Ok(out)
}

fn partitions_upto(n: usize) -> Vec<Partition> {
    enumerate_partitions(n as u32)
}

fn closed_form(pi: &[u32], lam: &Partition) -> Laurent {
    let size = lam.size() as i64;
    let gamma = Laurent::gamma();
    let per_box = |f: &dyn Fn(&Laurent) -> Laurent| -> Laurent { lam.boxes().map(|b| f(&content(b))).sum() };
    match pi {
        [] => Laurent::one(),
        [1] => Laurent::from(size),
        [2] => per_box(&|c| (c + &gamma).scale(&int(2))),
        [3] => {
            let single = per_box(&|c| {
                let t = (c + &gamma) * (c + &gamma.scale(&int(2)));
                t.scale(&int(3)) + Laurent::constant(rat(3, 2))
            });
            single - Laurent::constant(rat(3, 2) * int(size * size))
        }
        [1, 1] => Laurent::from(size * size - size),
        _ => unreachable!(),
    }
}

fn jack_examples(n: usize) -> Result<Vec<Report>> {
    let oracle = JackOracle::global();
    let mut out = Vec::new();
    for pi in [&[][..], &[1], &[2], &[3], &[1, 1]] {
        let pp = Partition::from(pi.to_vec());
        let mut w = Vec::new();
        for lam in partitions_upto(n) {
            let got = oracle.jack_character(&pp, &lam)?;
            let want = closed_form(pi, &lam);
            if got != want {
                w.push(format!("λ={lam}: {got} vs {want}"));
            }
        }
        out.push(Report::new("closed-form", json!({"pi": pp.to_string(), "maxSize": n}), w));
    }
    Ok(out)
}

/// The printed Stanley polynomial of `Ch_n`, `n ≤ 3`, with `p = p′/A` and `q = A q′`.
pub fn stanley_formula(n: usize, p_prime: &[u32], q_prime: &[u32]) -> Laurent {
    let p: Vec<Laurent> = p_prime.iter().map(|&v| Laurent::monomial(int(v as i64), -1)).collect();
    let q: Vec<Laurent> = q_prime.iter().map(|&v| Laurent::monomial(int(v as i64), 1)).collect();
    let g = Laurent::gamma();
    let l = p.len();
    let c = |v: i64| Laurent::from(v);
    let mut total = Laurent::zero();
    match n {
        1 => {
            for i in 0..l {
                total += &(&p[i] * &q[i]);
            }
        }
        2 => {
            for i in 0..l {
                total += &(&p[i] * &q[i] * (&q[i] - &p[i] + &g));
                for j in i + 1..l {
                    total -= &(c(2) * &p[i] * &p[j] * &q[j]);
                }
            }
        }
        3 => {
            for i in 0..l {
                let (pi, qi) = (&p[i], &q[i]);
                let bracket = qi * qi - c(3) * pi * qi + pi * pi + c(3) * &g * (qi - pi) + c(2) * &g * &g + c(1);
                total += &(pi * qi * bracket);
                for j in i + 1..l {
                    let (pj, qj) = (&p[j], &q[j]);
                    let inner = (qi - pi + &g) + (qj - pj + &g);
                    total -= &(c(3) * pi * pj * qj * inner);
                    for k in j + 1..l {
                        total += &(c(6) * pi * pj * &p[k] * &q[k]);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    total
}

/// Multirectangular parameters with `ℓ ≤ 3`, entries in `0..=max_entry` and
/// diagram size within the oracle bound.
pub fn stanley_cases(max_entry: u32, size_bound: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for l in 1..=3usize {
        let vectors = |decreasing: bool| -> Vec<Vec<u32>> {
            let mut all = vec![Vec::new()];
            for _ in 0..l {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<u32>| {
                        (0..=max_entry).filter_map(move |x| {
                            if decreasing && v.last().is_some_and(|&y| y < x) {
                                return None;
                            }
                            let mut w = v.clone();
                            w.push(x);
                            Some(w)
                        })
                    })
                    .collect();
            }
            all
        };
        for pp in vectors(false) {
            for qq in vectors(true) {
                let size: u32 = pp.iter().zip(&qq).map(|(a, b)| a * b).sum();
                if size as usize <= size_bound {
                    out.push((pp.clone(), qq));
                }
            }
        }
    }
    out
}

fn stanley(max_entry: u32) -> Result<Vec<Report>> {
    let oracle = JackOracle::global();
    let cases = stanley_cases(max_entry, oracle.bound());
    let mut out = Vec::new();
    for n in 1..=3usize {
        let pi = Partition::from(vec![n as u32]);
        let mut w = Vec::new();
        for (pp, qq) in &cases {
            let lam = MultiRect::new(pp.clone(), qq.clone())?.to_partition()?;
            let got = oracle.jack_character(&pi, &lam)?;
            let want = stanley_formula(n, pp, qq);
            if got != want {
                w.push(format!("P′={pp:?} Q′={qq:?}: {got} vs {want}"));
            }
        }
        out.push(Report::new("stanley", json!({"n": n, "cases": cases.len()}), w));
    }
    Ok(out)
}

fn vanishing(n: usize) -> Result<Vec<Report>> {
    let oracle = JackOracle::global();
    let mut w = Vec::new();
    for pi in partitions_upto(n) {
        for lam in partitions_upto(pi.size().saturating_sub(1)) {
            if lam.size() < pi.size() && !oracle.jack_character(&pi, &lam)?.is_zero() {
                w.push(format!("Ch_{pi}({lam}) ≠ 0"));
            }
        }
    }
    Ok(vec![Report::new("vanishing", json!({"maxPi": n}), w)])
}

fn laurent_degree(n: usize) -> Result<Vec<Report>> {
    let oracle = JackOracle::global();
    let max_lam = (n + 1).max(6);
    let mut w = Vec::new();
    for pi in partitions_upto(n).into_iter().filter(|p| !p.is_empty()) {
        let bound = (pi.size() - pi.len()) as i32;
        for lam in partitions_upto(max_lam) {
            let v = oracle.jack_character(&pi, &lam)?;
            if v.degree().is_some_and(|d| d > bound) {
                w.push(format!("Ch_{pi}({lam}) = {v} has degree above {bound}"));
            }
        }
    }
    Ok(vec![Report::new("laurent-degree", json!({"maxPi": n, "maxLambda": max_lam}), w)])
}

/// Printed coefficient tables `S_n = Σ P_k T_k` and `T_n = Σ Q_k S_k` for `n ≤ 4`.
pub fn printed_conversion(n: usize) -> Option<(Vec<GammaPoly>, Vec<GammaPoly>)> {
    let g = |c: &[Rat]| GammaPoly::from_coeffs(c.to_vec());
    let half = rat(1, 2);
    // index 0 is k = 2
    Some(match n {
        2 => (vec![GammaPoly::one()], vec![GammaPoly::one()]),
        3 => (
            vec![GammaPoly::gamma(), GammaPoly::one()],
            vec![GammaPoly::gamma().scale(&int(-1)), GammaPoly::one()],
        ),
        4 => (
            vec![g(&[half.clone(), int(0), int(1)]), g(&[int(0), rat(3, 2)]), GammaPoly::one()],
            vec![g(&[-half.clone(), int(0), half]), g(&[int(0), rat(-3, 2)]), GammaPoly::one()],
        ),
        _ => return None,
    })
}

const ST_DIAGRAM_SIZE: usize = 8;

fn st_conversion(n: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let diagrams = partitions_upto(ST_DIAGRAM_SIZE);
    for k in 2..=n {
        let p = conversion_p(k)?;
        let q = conversion_q(k)?;
        let mut w = Vec::new();
        for lam in &diagrams {
            let s = s_functional(k, lam)?;
            let t = t_functional(k, lam)?;
            if combine(&p, |j| t_functional(j, lam))? != s {
                w.push(format!("S_{k}({lam}) ≠ Σ P T"));
            }
            if combine(&q, |j| s_functional(j, lam))? != t {
                w.push(format!("T_{k}({lam}) ≠ Σ Q S"));
            }
            let ones = vec![1; lam.len()];
            if s_functional_multirect(k, &ones, lam.parts())? != s {
                w.push(format!("S_{k}({lam}) differs from the multirectangular form"));
            }
        }
        // P composed with Q is the identity
        let mut composed: Vec<GammaPoly> = vec![GammaPoly::zero(); k + 1];
        for (&j, pj) in &p {
            for (&i, qi) in &conversion_q(j)? {
                composed[i] = &composed[i] + &(pj * qi);
            }
        }
        for (i, c) in composed.iter().enumerate().skip(2) {
            let want = if i == k { GammaPoly::one() } else { GammaPoly::zero() };
            if *c != want {
                w.push(format!("Σ P Q at index {i} is {c}"));
            }
        }
        if let Some((pp, qq)) = printed_conversion(k) {
            for (idx, (a, b)) in pp.iter().zip(&qq).enumerate() {
                let j = idx + 2;
                if p.get(&j).cloned().unwrap_or_else(GammaPoly::zero) != *a {
                    w.push(format!("P_{j} for n={k} is not {a}"));
                }
                if q.get(&j).cloned().unwrap_or_else(GammaPoly::zero) != *b {
                    w.push(format!("Q_{j} for n={k} is not {b}"));
                }
            }
        }
        out.push(Report::new("st-conversion", json!({"n": k, "maxLambda": ST_DIAGRAM_SIZE}), w));
    }
    Ok(out)
}

const EQUIVALENCE_DIAGRAM_SIZE: usize = 6;
const LABELED_MAX: usize = 4;

fn equivalence(n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    td.check_budget(n)?;
    let diagrams = partitions_upto(EQUIVALENCE_DIAGRAM_SIZE);
    let mut out = Vec::new();
    for k in 1..=n {
        let kl = td.kl_top(k)?;
        let mut w = Vec::new();
        for lam in &diagrams {
            let a = kl_evaluate(&kl, lam)?;
            let b = td.ch_top_eval(k, lam)?;
            if a != b {
                w.push(format!("λ={lam}: {a} vs {b}"));
            }
            if k <= LABELED_MAX && lam.size() <= LABELED_MAX {
                let c = td.ch_top_eval_labeled(k, lam)?;
                if c != b {
                    w.push(format!("λ={lam}: labeled sum {c} vs {b}"));
                }
            }
        }
        out.push(Report::new("equivalence", json!({"n": k, "maxLambda": EQUIVALENCE_DIAGRAM_SIZE}), w));
    }
    Ok(out)
}

fn top_vs_full(n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    td.check_budget(n)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let full = kl_expand_full(k)?;
        let top = td.kl_top(k)?;
        let g = k as u32;
        let mut w = Vec::new();
        if full.graded_part(g + 1) != top {
            w.push(format!("top part {} vs kl_top {top}", full.graded_part(g + 1)));
        }
        if !full.graded_part(g).is_zero() {
            w.push(format!("degree-{k} part {} is nonzero", full.graded_part(g)));
        }
        if full.max_grade().is_some_and(|d| d > g + 1) {
            w.push(format!("grade {} exceeds {}", full.max_grade().unwrap(), g + 1));
        }
        out.push(Report::new("top-vs-full", json!({"n": k}), w));
    }
    Ok(out)
}

fn t3(n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    td.check_budget(n)?;
    let oracle = JackOracle::global();
    let mut out = Vec::new();
    for k in 1..=n {
        let top = |lam: &Partition| td.ch_top_eval(k, lam);
        let pi = Partition::from(vec![k as u32]);
        let ch = |lam: &Partition| oracle.jack_character(&pi, lam);
        for (name, v) in [("T3 top", check_t3(k, &top)?), ("T3 Ch", check_t3(k, &ch)?)] {
            let w = v
                .iter()
                .map(|x| format!("k={} λ={:?}: coefficient {}", x.k, x.lam, x.coeff))
                .collect();
            out.push(Report::new(name, json!({"n": k}), w));
        }
    }
    for pi in partitions_upto(n) {
        out.extend(check_k_conditions(&pi)?);
    }
    Ok(out)
}

const EMBEDDING_VERTICES: usize = 4;
const EMBEDDING_DIAGRAM_SIZE: usize = 4;

fn orbits(n: usize, td: &TopDegree) -> Result<Vec<Report>> {
    td.check_budget(n)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let census = orbit_census(k)?;
        let expect = factorial(k as u64 - 1);
        let mut w = Vec::new();
        for o in &census {
            if BigInt::from(o.size) != expect {
                w.push(format!("orbit of ({}, {}) has size {}", o.sigma1, o.sigma2, o.size));
            }
            if !graph_of_pair(&o.sigma1, &o.sigma2)?.is_connected() {
                w.push(format!("graph of ({}, {}) is disconnected", o.sigma1, o.sigma2));
            }
        }
        out.push(Report::new("orbits", json!({"n": k, "orbits": census.len()}), w));
    }
    let mut w = Vec::new();
    let diagrams = partitions_upto(EMBEDDING_DIAGRAM_SIZE);
    for whites in 1..EMBEDDING_VERTICES {
        for blacks in 1..=EMBEDDING_VERTICES - whites {
            for g in all_graphs(whites, blacks) {
                for lam in &diagrams {
                    let a = count_embeddings(&g, lam)?;
                    let b = count_embeddings_naive(&g, lam)?;
                    if a != b {
                        w.push(format!("{whites}+{blacks} vertices {:?} on {lam}: {a} vs {b}", g.adjacency()));
                    }
                }
            }
        }
    }
    out.push(Report::new(
        "embeddings",
        json!({"maxVertices": EMBEDDING_VERTICES, "maxLambda": EMBEDDING_DIAGRAM_SIZE}),
        w,
    ));
    Ok(out)
}

fn moment_cumulant(n: usize) -> Result<Vec<Report>> {
    let diagrams = partitions_upto(n);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut w = Vec::new();
        for pi in Perm::all(k) {
            for lam in &diagrams {
                let m = moment_m(&pi, lam)?;
                let c = moment_from_cumulants(&pi, lam)?;
                if m != c {
                    w.push(format!("π={pi} λ={lam}: {m} vs {c}"));
                }
            }
        }
        out.push(Report::new("moment-cumulant", json!({"n": k, "maxLambda": n}), w));
    }
    Ok(out)
}

/// `C_m = (2m)! / (m! (m+1)!)`
pub fn catalan_number(m: u64) -> BigInt {
    factorial(2 * m) / (factorial(m) * factorial(m + 1))
}

const CUMULANT_DIAGRAM_SIZE: usize = 6;

fn catalan(n: usize) -> Result<Vec<Report>> {
    let diagrams = partitions_upto(CUMULANT_DIAGRAM_SIZE);
    let mut out = Vec::new();
    for k in 2..=n {
        let count = free_cumulant_graphs(k)?.len();
        let expect = catalan_number(k as u64 - 1);
        let mut w = Vec::new();
        if BigInt::from(count) != expect {
            w.push(format!("{count} pairs, Catalan number is {expect}"));
        }
        for lam in &diagrams {
            let r = free_cumulant(k, lam)?;
            if r.degree().is_some_and(|d| d > k as i32 - 2) {
                w.push(format!("R_{k}({lam}) = {r} has degree above {}", k - 2));
            }
        }
        out.push(Report::new("catalan", json!({"k": k, "pairs": count}), w));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn catalan_closed_form() {
        let v: Vec<BigInt> = (0..6).map(catalan_number).collect();
        assert_eq!(v, [1, 1, 2, 5, 14, 42].map(BigInt::from));
    }

    #[test]
    fn closed_forms_on_small_diagrams() {
        let two = Partition::from(vec![2]);
        assert_eq!(closed_form(&[2], &two), Laurent::monomial(int(2), 1));
        assert_eq!(closed_form(&[1, 1], &Partition::from(vec![2, 1])), Laurent::from(6));
        // Ch_3 vanishes below size 3
        assert!(closed_form(&[3], &two).is_zero());
        assert!(closed_form(&[3], &Partition::from(vec![1, 1])).is_zero());
    }

    #[test]
    fn stanley_formula_first_cases() {
        // single box: Ch_1 = 1 and Ch_2 = 0
        assert_eq!(stanley_formula(1, &[1], &[1]), Laurent::one());
        assert!(stanley_formula(2, &[1], &[1]).is_zero());
        assert!(stanley_formula(3, &[1, 1], &[1, 1]).is_zero());
        assert!(stanley_cases(3, 8).len() >= 20);
    }

    #[test]
    fn quick_suites_pass() {
        let td = TopDegree::default();
        for (s, n) in [(Suite::PrologueTables, 2), (Suite::Catalan, 4), (Suite::MomentCumulant, 2), (Suite::P1Top, 3)] {
            for r in run(s, n, &td).unwrap() {
                assert!(r.pass, "{s}: {}", r.to_json());
            }
        }
    }
}
