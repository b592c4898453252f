use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, Laurent, QPoly, Rat};
use crate::error::{Error, Result};

/// Polynomial in `γ` over ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GammaPoly(pub QPoly);

impl GammaPoly {
    pub fn zero() -> Self {
        GammaPoly(QPoly::zero())
    }

    pub fn one() -> Self {
        GammaPoly(QPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        GammaPoly(QPoly::constant(c))
    }

    /// `c·γ^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        GammaPoly(QPoly::monomial(c, k))
    }

    pub fn gamma() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        GammaPoly(QPoly::new(coeffs))
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.coeff(k)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GammaPoly(self.0.scale(c))
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.render("g"))
    }
}

impl Add for &GammaPoly {
    type Output = GammaPoly;
    fn add(self, rhs: &GammaPoly) -> GammaPoly {
        GammaPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &GammaPoly {
    type Output = GammaPoly;
    fn sub(self, rhs: &GammaPoly) -> GammaPoly {
        GammaPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &GammaPoly {
    type Output = GammaPoly;
    fn mul(self, rhs: &GammaPoly) -> GammaPoly {
        GammaPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &GammaPoly {
    type Output = GammaPoly;
    fn neg(self) -> GammaPoly {
        GammaPoly(-&self.0)
    }
}

/// Image under `γ ↦ -A + 1/A`.
pub fn subst_gamma(p: &GammaPoly) -> Laurent {
    p.0.eval_laurent(&Laurent::gamma())
}

/// Inverse of [`subst_gamma`] on `(A ↦ -1/A)`-invariant Laurent polynomials.
///
/// The top coefficient of `γ^d` under the substitution is `(-1)^d A^d`, so the
/// preimage is peeled off degree by degree from the top.
pub fn gamma_recover(f: &Laurent) -> Result<GammaPoly> {
    if f.s_involution() != *f {
        return Err(Error::NotInvariant);
    }
    let mut rem = f.clone();
    let mut coeffs: Vec<Rat> = Vec::new();
    let gamma = Laurent::gamma();
    while let Some(d) = rem.degree() {
        if d < 0 {
            return Err(Error::NoPreimage);
        }
        let d = d as usize;
        let sign = if d.is_multiple_of(2) { int(1) } else { int(-1) };
        let c = rem.coeff(d as i32) * sign;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, Rat::zero());
        }
        rem = &rem - &gamma.pow(d as u32).scale(&c);
        coeffs[d] = c;
    }
    Ok(GammaPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        assert_eq!(subst_gamma(&GammaPoly::gamma()), Laurent::gamma());
        assert_eq!(subst_gamma(&GammaPoly::one()), Laurent::one());
        let g2 = GammaPoly::monomial(int(1), 2);
        assert_eq!(
            subst_gamma(&g2),
            Laurent::from_pairs([(2, int(1)), (0, int(-2)), (-2, int(1))])
        );
        assert_eq!(subst_gamma(&g2).coeff(-2), int(1));
    }

    #[test]
    fn recovery() {
        assert_eq!(gamma_recover(&Laurent::gamma()).unwrap(), GammaPoly::gamma());
        assert_eq!(gamma_recover(&Laurent::zero()).unwrap(), GammaPoly::zero());
        let f = Laurent::from_pairs([(2, int(1)), (0, int(-2)), (-2, int(1))]);
        assert_eq!(
            gamma_recover(&f).unwrap(),
            GammaPoly::monomial(int(1), 2)
        );
        assert!(matches!(
            gamma_recover(&Laurent::a()),
            Err(Error::NotInvariant)
        ));
    }
}
