use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{parse_rat, Rat};
use crate::error::{Error, Result};

/// Monomial `γ^g · R_{μ₁} R_{μ₂} ⋯`, with `μ` weakly decreasing and every part ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KlKey {
    pub g: u32,
    pub mu: Vec<u32>,
}

impl KlKey {
    pub fn new(g: u32, mut mu: Vec<u32>) -> Self {
        mu.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(mu.iter().all(|&m| m >= 2));
        KlKey { g, mu }
    }

    /// `deg γ = 1`, `deg R_k = k`.
    pub fn grade(&self) -> u32 {
        self.g + self.mu.iter().sum::<u32>()
    }

    fn times(&self, other: &KlKey) -> KlKey {
        let mut mu = self.mu.clone();
        mu.extend_from_slice(&other.mu);
        KlKey::new(self.g + other.g, mu)
    }

    /// All keys of grade exactly `d`.
    pub fn of_grade(d: u32) -> Vec<KlKey> {
        let mut out = Vec::new();
        for g in 0..=d {
            for mu in parts_at_least_two(d - g, d - g) {
                out.push(KlKey { g, mu });
            }
        }
        out.sort();
        out
    }
}

// partitions of n into parts in [2, max], weakly decreasing
fn parts_at_least_two(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (2..=max.min(n)).rev() {
        for mut rest in parts_at_least_two(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Ord for KlKey {
    /// Grade ascending, then `g` ascending, then `μ` lexicographically descending.
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then(self.g.cmp(&other.g))
            .then_with(|| other.mu.cmp(&self.mu))
    }
}

impl PartialOrd for KlKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KlKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut i = 0;
        while i < self.mu.len() {
            let m = self.mu[i];
            let run = self.mu[i..].iter().take_while(|&&x| x == m).count();
            factors.push(if run == 1 {
                format!("R{m}")
            } else {
                format!("R{m}^{run}")
            });
            i += run;
        }
        match self.g {
            0 => {}
            1 => factors.push("g".into()),
            g => factors.push(format!("g^{g}")),
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Element of the graded ring ℚ[γ; R₂, R₃, …].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KlPoly(BTreeMap<KlKey, Rat>);

impl KlPoly {
    pub fn zero() -> Self {
        KlPoly(BTreeMap::new())
    }

    pub fn term(g: u32, mu: Vec<u32>, c: Rat) -> Self {
        let mut p = KlPoly::zero();
        p.add_term(KlKey::new(g, mu), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (KlKey, Rat)>>(terms: I) -> Self {
        let mut p = KlPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, key: KlKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn coeff(&self, key: &KlKey) -> Rat {
        self.0.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KlKey, &Rat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return KlPoly::zero();
        }
        KlPoly(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn graded_part(&self, d: u32) -> Self {
        KlPoly(
            self.0
                .iter()
                .filter(|(k, _)| k.grade() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.0.keys().map(KlKey::grade).max()
    }

    pub fn all_nonneg_integers(&self) -> bool {
        self.0.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|(k, c)| json!({"gamma": k.g, "mu": k.mu, "coeff": c.to_string()}))
                .collect(),
        )
    }

    /// Field order `gamma`, `mu`, `coeff`, written by hand so it does not depend
    /// on the JSON map implementation.
    pub fn to_json(&self) -> String {
        let items: Vec<String> = self
            .0
            .iter()
            .map(|(k, c)| {
                let mu: Vec<String> = k.mu.iter().map(u32::to_string).collect();
                format!(r#"{{"gamma":{},"mu":[{}],"coeff":"{}"}}"#, k.g, mu.join(","), c)
            })
            .collect();
        format!("[{}]", items.join(","))
    }

    pub fn from_json(value: &Value) -> Result<KlPoly> {
        let bad = || Error::Parse("malformed KL polynomial JSON".into());
        let arr = value.as_array().ok_or_else(bad)?;
        let mut out = KlPoly::zero();
        for item in arr {
            let g = item.get("gamma").and_then(Value::as_u64).ok_or_else(bad)? as u32;
            let mu = item
                .get("mu")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|m| m.as_u64().map(|x| x as u32).filter(|&x| x >= 2))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(bad)?;
            let c = parse_rat(item.get("coeff").and_then(Value::as_str).ok_or_else(bad)?)?;
            out.add_term(KlKey::new(g, mu), c);
        }
        Ok(out)
    }
}

impl fmt::Display for KlPoly {
    /// e.g. `R5 + 6*R4*g + R2^2*g`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let constant = k.g == 0 && k.mu.is_empty();
            if constant {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{mag}*{k}")?;
            }
        }
        Ok(())
    }
}

impl Add for &KlPoly {
    type Output = KlPoly;
    fn add(self, rhs: &KlPoly) -> KlPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &KlPoly {
    type Output = KlPoly;
    fn sub(self, rhs: &KlPoly) -> KlPoly {
        self + &(-rhs)
    }
}

impl Neg for &KlPoly {
    type Output = KlPoly;
    fn neg(self) -> KlPoly {
        KlPoly(self.0.iter().map(|(k, c)| (k.clone(), -c)).collect())
    }
}

impl Mul for &KlPoly {
    type Output = KlPoly;
    fn mul(self, rhs: &KlPoly) -> KlPoly {
        let mut out = KlPoly::zero();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &rhs.0 {
                out.add_term(k1.times(k2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn t(g: u32, mu: &[u32], c: i64) -> (KlKey, Rat) {
        (KlKey::new(g, mu.to_vec()), int(c))
    }

    #[test]
    fn graded_parts() {
        let p = KlPoly::from_terms([t(0, &[3], 1), t(1, &[2], 1), t(0, &[2], 5)]);
        assert_eq!(
            p.graded_part(3),
            KlPoly::from_terms([t(0, &[3], 1), t(1, &[2], 1)])
        );
        assert!(p.graded_part(0).is_zero());
        let q = KlPoly::from_terms([t(2, &[], 1)]);
        assert_eq!((&p + &q).len(), 4);
    }

    #[test]
    fn ordering_and_rendering() {
        let p = KlPoly::from_terms([
            t(3, &[2], 6),
            t(0, &[5], 1),
            t(2, &[3], 11),
            t(1, &[2, 2], 1),
            t(1, &[4], 6),
        ]);
        assert_eq!(p.to_string(), "R5 + 6*R4*g + R2^2*g + 11*R3*g^2 + 6*R2*g^3");
        let js = p.to_json();
        assert!(js.starts_with(r#"[{"gamma":0,"mu":[5],"coeff":"1"},{"gamma":1,"mu":[4],"coeff":"6"}"#));
        let back = KlPoly::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(KlPoly::from_terms([t(0, &[], -2)]).to_string(), "-2");
    }

    #[test]
    fn keys_of_grade() {
        // grade 3: R3, g·R2, g^3
        let k = KlKey::of_grade(3);
        assert_eq!(k.len(), 3);
        assert!(k.windows(2).all(|w| w[0] < w[1]));
        let total: usize = (0..=6).map(|d| KlKey::of_grade(d).len()).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn products() {
        let r2 = KlPoly::term(0, vec![2], int(1));
        let g = KlPoly::term(1, vec![], int(1));
        assert_eq!(&(&r2 * &r2) * &g, KlPoly::term(1, vec![2, 2], int(1)));
    }
}
