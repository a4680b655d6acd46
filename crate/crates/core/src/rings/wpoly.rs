//! Univariate polynomials in the loop/interpolation variable `w` over Q.
//!
//! Erasing a loop in the diagram category multiplies by `w`; evaluating at
//! `w = n` recovers the classical picture for `gl_n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{FieldLike, IntegralDomain, Rat, Ring};

/// Dense polynomial in `w`; `coeffs[d]` is the coefficient of `w^d`, trailing
/// coefficient nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WPoly {
    coeffs: Vec<Rat>,
}

impl WPoly {
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = WPoly { coeffs };
        p.normalize();
        p
    }

    pub fn constant(c: Rat) -> Self {
        WPoly::from_coeffs(vec![c])
    }

    /// The variable `w`.
    pub fn var() -> Self {
        WPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, d: usize) -> Rat {
        self.coeffs.get(d).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Evaluation `w -> t`; a ring homomorphism.
    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl From<i64> for WPoly {
    fn from(n: i64) -> Self {
        WPoly::constant(Rat::from(n))
    }
}

impl From<Rat> for WPoly {
    fn from(c: Rat) -> Self {
        WPoly::constant(c)
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "w")?,
                1 => write!(f, "{c}*w")?,
                _ if c.is_one() => write!(f, "w^{d}")?,
                _ => write!(f, "{c}*w^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for WPoly {
    type Output = WPoly;
    fn add(self, rhs: WPoly) -> WPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for WPoly {
    type Output = WPoly;
    fn sub(self, rhs: WPoly) -> WPoly {
        self.sub_ref(&rhs)
    }
}

impl Mul for WPoly {
    type Output = WPoly;
    fn mul(self, rhs: WPoly) -> WPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for WPoly {
    type Output = WPoly;
    fn neg(self) -> WPoly {
        self.neg_ref()
    }
}

impl Ring for WPoly {
    fn zero() -> Self {
        WPoly { coeffs: vec![] }
    }

    fn one() -> Self {
        WPoly::constant(Rat::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            out.push(&self.coeff(d) + &other.coeff(d));
        }
        WPoly::from_coeffs(out)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return WPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WPoly::from_coeffs(out)
    }

    fn neg_ref(&self) -> Self {
        WPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    fn from_int(n: i64) -> Self {
        WPoly::from(n)
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return WPoly::zero();
        }
        WPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl IntegralDomain for WPoly {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(WPoly::zero());
        }
        let (dn, dd) = (self.coeffs.len() - 1, other.coeffs.len() - 1);
        if dn < dd {
            return None;
        }
        let lead_inv = other.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let q = &rem[k + dd] * &lead_inv;
            if !q.is_zero() {
                for (i, b) in other.coeffs.iter().enumerate() {
                    let t = &q * b;
                    rem[k + i] -= t;
                }
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(WPoly::from_coeffs(quot))
        } else {
            None
        }
    }
}

impl FieldLike for WPoly {
    fn try_inv(&self) -> Option<Self> {
        self.as_constant()?.inv().map(WPoly::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_is_homomorphism() {
        let p = WPoly::from_coeffs(vec![Rat::from(1), Rat::from(-2), Rat::from(3)]);
        let q = WPoly::from_coeffs(vec![Rat::from(5), Rat::from(7)]);
        let t = Rat::new(3, 2);
        assert_eq!(p.mul_ref(&q).eval(&t), &p.eval(&t) * &q.eval(&t));
        assert_eq!(p.add_ref(&q).eval(&t), &p.eval(&t) + &q.eval(&t));
    }

    #[test]
    fn exact_division() {
        let p = WPoly::var().sub_ref(&WPoly::from(3));
        let q = WPoly::var().add_ref(&WPoly::from(1));
        let prod = p.mul_ref(&q);
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!(prod.add_ref(&WPoly::one()).div_exact(&p), None);
    }
}
