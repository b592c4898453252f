use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Laurent, QPoly, Rat};
use crate::error::{Error, Result};

/// Rational function in `α`, kept reduced with a monic denominator so that
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = QPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.lead().unwrap().recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    /// The indeterminate `α`.
    pub fn alpha() -> Self {
        Self::from_poly(QPoly::x())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, alpha: &Rat) -> Rat {
        self.num.eval(alpha) / self.den.eval(alpha)
    }

    /// Substitutes `α := A²` and divides exactly.
    pub fn alpha_to_a(&self) -> Result<Laurent> {
        let a2 = Laurent::monomial(Rat::one(), 2);
        let n = self.num.eval_laurent(&a2);
        let d = self.den.eval_laurent(&a2);
        n.div_exact(&d).map_err(|_| Error::NotLaurent)
    }

    /// `"(num)/(den)"` in the variable `a`.
    pub fn render(&self) -> String {
        format!("({})/({})", self.num.render("a"), self.den.render("a"))
    }

    pub fn parse(s: &str) -> Result<RatFunc> {
        let bad = || Error::Parse(format!("bad rational function {s:?}"));
        let s = s.trim();
        let inner = s.strip_prefix('(').ok_or_else(bad)?;
        let (n, d) = inner.split_once(")/(").ok_or_else(bad)?;
        let d = d.strip_suffix(')').ok_or_else(bad)?;
        let den = QPoly::parse(d, "a")?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(RatFunc::new(QPoly::parse(n, "a")?, den))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
