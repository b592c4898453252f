use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::young::Partition;

/// Permutation of `{0, …, n−1}` stored in one-line form. Text form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPerm(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPerm(format!("{images:?}")));
        }
        Perm::new(images.iter().map(|&i| i - 1).collect())
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        Perm(images)
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The cycle `(1 2 … n)`.
    pub fn full_cycle(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n.max(1)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `compose(a, b)(i) = a(b(i))`.
    pub fn compose(a: &Perm, b: &Perm) -> Result<Perm> {
        if a.n() != b.n() {
            return Err(Error::SizeMismatch(a.n(), b.n()));
        }
        Ok(Perm(b.0.iter().map(|&i| a.0[i]).collect()))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `p ∘ self ∘ p⁻¹`
    pub fn conjugate_by(&self, p: &Perm) -> Perm {
        let mut out = vec![0; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            out[p.0[i]] = p.0[j];
        }
        Perm(out)
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.0)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(|c| c.len() as u32))
    }

    /// All permutations of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Perm(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Perm(cur.clone()));
        }
        out
    }
}

pub(crate) fn cycle_count(images: &[usize]) -> usize {
    let mut seen = [false; 64];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
        }
    }
    count
}

/// Advances to the next permutation in lexicographic order; false after the last.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// One-line 1-based form, `"2,1,3"`.
    fn from_str(s: &str) -> Result<Perm> {
        let v = s
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation {s:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Perm::from_one_based(&v).map_err(|_| Error::Parse(format!("not a permutation: {s:?}")))
    }
}

/// Whether `⟨a, b⟩` acts transitively, by union-find over the cycles of both.
pub fn is_transitive_pair(a: &Perm, b: &Perm) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(transitive(&a.0, &b.0))
}

pub(crate) fn transitive(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut classes = n;
    for perm in [a, b] {
        for (i, &j) in perm.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                classes -= 1;
            }
        }
    }
    classes <= 1
}

/// All pairs `(σ₁, σ₂)` in `𝔖_n²` generating a transitive subgroup, ordered
/// by `σ₁` then `σ₂` lexicographically.
pub fn enumerate_transitive_pairs(n: usize) -> Vec<(Perm, Perm)> {
    let all = Perm::all(n);
    all.iter()
        .flat_map(|a| transitive_partners(a, &all))
        .collect()
}

/// The chunk of [`enumerate_transitive_pairs`] whose first permutation is `a`.
pub fn transitive_partners(a: &Perm, all: &[Perm]) -> Vec<(Perm, Perm)> {
    all.iter()
        .filter(|b| transitive(&a.0, &b.0))
        .map(|b| (a.clone(), b.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn cycles_and_compose() {
        assert_eq!(Perm::identity(3).cycle_count(), 3);
        assert_eq!(Perm::full_cycle(3).cycles().len(), 1);
        assert_eq!(Perm::compose(&p("2,1"), &p("2,1")).unwrap(), Perm::identity(2));
        // a(b(i)) convention
        let a = p("2,3,1");
        let b = p("2,1,3");
        assert_eq!(Perm::compose(&a, &b).unwrap(), p("3,2,1"));
        assert!(matches!(
            Perm::compose(&a, &Perm::identity(2)),
            Err(Error::SizeMismatch(3, 2))
        ));
        assert_eq!(p("3,1,2").cycle_type(), Partition::from(vec![3]));
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive_pair(&Perm::identity(4), &Perm::full_cycle(4)).unwrap());
        assert!(!is_transitive_pair(&Perm::identity(2), &Perm::identity(2)).unwrap());
        assert_eq!(enumerate_transitive_pairs(1).len(), 1);
        let two = enumerate_transitive_pairs(2);
        assert_eq!(two.len(), 3);
        assert!(!two.contains(&(Perm::identity(2), Perm::identity(2))));
    }

    #[test]
    fn lex_order() {
        let all = Perm::all(3);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Perm::identity(3));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("2,1,3").to_string(), "2,1,3");
        assert!("1,1".parse::<Perm>().is_err());
        assert!("0,1".parse::<Perm>().is_err());
        let c = p("2,3,1");
        assert_eq!(c.conjugate_by(&Perm::identity(3)), c);
        assert_eq!(Perm::compose(&c, &c.inverse()).unwrap(), Perm::identity(3));
    }
}
