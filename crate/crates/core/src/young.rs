//! Partitions, Young diagrams (French convention, 1-indexed), α-contents and
//! multirectangular diagrams.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, Laurent};

/// Weakly decreasing list of positive parts. The empty list is `∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts decreasingly and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Fails unless `parts` is already weakly decreasing; trailing zeros are dropped.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(Partition(parts.into_iter().filter(|&p| p > 0).collect()))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length `λ_y` with 1-indexed `y`; zero beyond the last row.
    pub fn row(&self, y: usize) -> u32 {
        self.0.get(y.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `m_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `(i, m_i)` for every part value present, increasing in `i`.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in self.0.iter().rev() {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_π = Π i^{m_i} m_i!`
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::from(1), |acc, (i, m)| {
                acc * num_traits::pow(BigInt::from(i), m) * factorial(m as u64)
            })
    }

    /// Boxes `(x, y)` row by row.
    pub fn boxes(&self) -> impl Iterator<Item = Box> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |x| Box { x, y: r as u32 + 1 }))
    }

    pub fn transpose(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=width)
                .map(|x| self.0.iter().filter(|&&p| p >= x).count() as u32)
                .collect(),
        )
    }

    /// `π ∪ 1^k`
    pub fn with_ones(&self, k: usize) -> Partition {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(1, k));
        Partition(v)
    }

    /// Dominance order `self ≤ other` for partitions of equal size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl From<Vec<u32>> for Partition {
    fn from(v: Vec<u32>) -> Self {
        Partition::from_unsorted(v)
    }
}

impl From<&[u32]> for Partition {
    fn from(v: &[u32]) -> Self {
        Partition::from_unsorted(v.iter().copied())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"4,2,2"`; `""` and `"0"` are the empty diagram.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts).map_err(|_| Error::Parse(format!("parts of {s:?} are not decreasing")))
    }
}

/// Box in column `x`, row `y`, both starting at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Box {
    pub x: u32,
    pub y: u32,
}

/// α-content `A·x − A⁻¹·y`.
pub fn content(b: Box) -> Laurent {
    Laurent::from_pairs([(1, int(b.x as i64)), (-1, int(-(b.y as i64)))])
}

/// Multirectangular diagram: row length `q′_i` repeated `p′_i` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiRect {
    pub p_prime: Vec<u32>,
    pub q_prime: Vec<u32>,
}

impl MultiRect {
    pub fn new(p_prime: Vec<u32>, q_prime: Vec<u32>) -> Result<Self> {
        if p_prime.len() != q_prime.len() {
            return Err(Error::SizeMismatch(p_prime.len(), q_prime.len()));
        }
        if q_prime.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(MultiRect { p_prime, q_prime })
    }

    pub fn to_partition(&self) -> Result<Partition> {
        if self.q_prime.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing);
        }
        let mut v = Vec::new();
        for (&p, &q) in self.p_prime.iter().zip(&self.q_prime) {
            v.extend(std::iter::repeat_n(q, p as usize));
        }
        Partition::new(v)
    }
}

/// All partitions of `n`, lexicographically decreasing.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size `0..=max_size`, size ascending.
pub fn enumerate_partitions(max_size: u32) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn contents() {
        let c = |x, y| content(Box { x, y });
        assert_eq!(c(1, 1), Laurent::from_pairs([(1, int(1)), (-1, int(-1))]));
        assert_eq!(c(2, 1), Laurent::from_pairs([(1, int(2)), (-1, int(-1))]));
        assert_eq!(c(1, 2), Laurent::from_pairs([(1, int(1)), (-1, int(-2))]));
    }

    #[test]
    fn z_factors() {
        let q = p(&[2, 1, 1]);
        assert_eq!((q.size(), q.len(), q.multiplicity(1), q.multiplicity(2)), (4, 3, 2, 1));
        assert_eq!(q.z(), BigInt::from(4));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
        assert_eq!(p(&[3]).z(), BigInt::from(3));
    }

    #[test]
    fn boxes_and_transpose() {
        let b: Vec<(u32, u32)> = p(&[2, 1]).boxes().map(|b| (b.x, b.y)).collect();
        assert_eq!(b, vec![(1, 1), (2, 1), (1, 2)]);
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(enumerate_partitions(4).len(), 12);
        assert_eq!(partitions_of(4)[0], p(&[4]));
        assert_eq!(partitions_of(4)[4], p(&[1, 1, 1, 1]));
    }

    #[test]
    fn multirect() {
        let m = |a: &[u32], b: &[u32]| MultiRect::new(a.to_vec(), b.to_vec()).unwrap().to_partition().unwrap();
        assert_eq!(m(&[1, 2], &[4, 2]), p(&[4, 2, 2]));
        assert_eq!(m(&[0, 1], &[5, 3]), p(&[3]));
        assert_eq!(m(&[3], &[2]), p(&[2, 2, 2]));
        assert!(MultiRect::new(vec![1, 1], vec![1, 2]).is_err());
    }

    #[test]
    fn text_syntax() {
        assert_eq!("4,2,2".parse::<Partition>().unwrap(), p(&[4, 2, 2]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
    }

    #[test]
    fn dominance() {
        assert!(p(&[2, 1, 1]).dominated_by(&p(&[2, 2])));
        assert!(!p(&[3, 1]).dominated_by(&p(&[2, 2])));
    }
}
