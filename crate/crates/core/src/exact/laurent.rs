use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{int, parse_rat, Rat};
use crate::error::{Error, Result};

/// Laurent polynomial in `A` with rational coefficients, stored sparsely.
/// Zero coefficients are never stored, so the zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent(BTreeMap<i32, Rat>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rat, exp: i32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(exp, c);
        }
        Laurent(m)
    }

    /// The indeterminate `A`.
    pub fn a() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn a_inv() -> Self {
        Self::monomial(Rat::one(), -1)
    }

    /// `γ = -A + 1/A`.
    pub fn gamma() -> Self {
        Self::from_pairs([(1, int(-1)), (-1, int(1))])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, Rat)>>(pairs: I) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(exp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> Rat {
        self.0.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest exponent, `None` for zero (degree −∞).
    pub fn degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent(self.0.iter().map(|(e, v)| (*e, v * c)).collect())
    }

    pub fn shift(&self, by: i32) -> Self {
        Laurent(self.0.iter().map(|(e, v)| (e + by, v.clone())).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Laurent::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The substitution `A ↦ -1/A`.
    pub fn s_involution(&self) -> Self {
        Laurent(
            self.0
                .iter()
                .map(|(e, c)| (-e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        )
    }

    /// Exact division; fails with `NotLaurent` when the divisor does not
    /// divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &Laurent) -> Result<Laurent> {
        let (dtop, dlead) = match d.0.iter().next_back() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::NotLaurent),
        };
        let dlow = d.low_degree().unwrap();
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        while let Some(rtop) = rem.degree() {
            let rlow = rem.low_degree().unwrap();
            // the remainder's span can never shrink below the divisor's span
            if rtop - rlow < dtop - dlow {
                return Err(Error::NotLaurent);
            }
            let e = rtop - dtop;
            let c = rem.coeff(rtop) / &dlead;
            let t = Laurent::monomial(c.clone(), e);
            rem = &rem - &(&t * d);
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    /// Evaluates at a rational value of `A` (nonzero unless `self` is a polynomial).
    pub fn eval(&self, a: &Rat) -> Rat {
        self.0.iter().fold(Rat::zero(), |acc, (e, c)| {
            let p = if *e >= 0 {
                num_traits::pow(a.clone(), *e as usize)
            } else {
                num_traits::pow(a.recip(), (-*e) as usize)
            };
            acc + c * p
        })
    }

    /// JSON object keyed by decimal exponent, in increasing exponent order.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .0
            .iter()
            .map(|(e, c)| format!("\"{e}\":\"{c}\""))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Laurent> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("Laurent JSON must be an object".into()))?;
        let mut out = Laurent::zero();
        for (k, v) in obj {
            let e: i32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let s = v
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            out.add_term(e, parse_rat(s)?);
        }
        Ok(out)
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(int(c))
    }
}

impl From<Rat> for Laurent {
    fn from(c: Rat) -> Self {
        Laurent::constant(c)
    }
}

impl fmt::Display for Laurent {
    /// Highest power first, e.g. `2*A - A^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.0.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "A".to_string(),
                _ => format!("A^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.0 {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.0 {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                self.$m(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl AddAssign for Laurent {
    fn add_assign(&mut self, rhs: Laurent) {
        *self += &rhs;
    }
}

impl Sum for Laurent {
    fn sum<I: Iterator<Item = Laurent>>(iter: I) -> Laurent {
        iter.fold(Laurent::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Laurent> for Laurent {
    fn sum<I: Iterator<Item = &'a Laurent>>(iter: I) -> Laurent {
        iter.fold(Laurent::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn l(pairs: &[(i32, i64)]) -> Laurent {
        Laurent::from_pairs(pairs.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Laurent::a() * Laurent::a(), l(&[(2, 1)]));
        assert!((l(&[(1, 1), (-1, -1)]) + l(&[(1, -1), (-1, 1)])).is_zero());
        let f = l(&[(1, 2), (-1, -1)]);
        assert_eq!(&f * &f, l(&[(2, 4), (0, -4), (-2, 1)]));
        assert_eq!(f.pow(2), &f * &f);
        assert_eq!(f.pow(0), Laurent::one());
    }

    #[test]
    fn coefficients_and_degree() {
        let f = Laurent::from_pairs([(2, int(3)), (-1, rat(-1, 2))]);
        assert_eq!(f.coeff(2), int(3));
        assert_eq!(f.coeff(0), int(0));
        assert_eq!(f.degree(), Some(2));
        assert_eq!(Laurent::zero().degree(), None);
    }

    #[test]
    fn involution() {
        assert_eq!(Laurent::a().s_involution(), l(&[(-1, -1)]));
        assert_eq!(Laurent::gamma().s_involution(), Laurent::gamma());
        assert_eq!(Laurent::one().s_involution(), Laurent::one());
    }

    #[test]
    fn exact_division() {
        let f = l(&[(1, 2), (-1, -1)]);
        let g = l(&[(3, 1), (0, -7), (-2, 5)]);
        assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        assert!(l(&[(0, 1)]).div_exact(&l(&[(1, 1), (0, 1)])).is_err());
        assert!(l(&[(0, 1)]).div_exact(&Laurent::zero()).is_err());
    }

    #[test]
    fn json_and_text() {
        let f = l(&[(1, 2), (-1, -1)]);
        assert_eq!(f.to_json(), r#"{"-1":"-1","1":"2"}"#);
        assert_eq!(Laurent::zero().to_json(), "{}");
        let back: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(Laurent::from_json(&back).unwrap(), f);
        assert_eq!(f.to_string(), "2*A - A^-1");
        assert_eq!(Laurent::from_pairs([(0, rat(-3, 2))]).to_string(), "-3/2");
    }
}
