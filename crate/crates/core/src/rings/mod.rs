//! Exact coefficient arithmetic shared by every other module: rationals,
//! polynomials in the interpolation variable `w`, multivariate polynomials in
//! the operator-coefficient generators, partial-fraction rational functions of
//! `u`, and truncated Laurent series in `x`.

mod laurent;
mod mpoly;
mod rat;
mod ratfn;
mod wpoly;

pub use laurent::Laurent;
pub use mpoly::{MPoly, Monomial, YVar};
pub use rat::Rat;
pub use ratfn::RatFn;
pub use wpoly::WPoly;

/// Commutative ring with a Q-algebra structure. Everything in this crate is a
/// Q-algebra, so scalar action by `Rat` is part of the interface.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(n: i64) -> Self;
    fn scale(&self, c: &Rat) -> Self;

    fn from_rat(c: &Rat) -> Self {
        Self::one().scale(c)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Sum of an iterator of elements.
    fn sum<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        iter.into_iter().fold(Self::zero(), |a, b| a.add_ref(&b))
    }
}

/// Rings without zero divisors where exact division can be tested. Needed by
/// fraction-free Gaussian elimination.
pub trait IntegralDomain: Ring {
    /// Returns `self / other` when the division is exact, `None` otherwise.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

/// Rings in which some elements have multiplicative inverses that we can
/// actually compute (fields, or constants inside larger rings).
pub trait FieldLike: Ring {
    fn try_inv(&self) -> Option<Self>;
}

/// Rings carrying a distinguished derivation (`d/du` for rational functions,
/// `d/dx` for Laurent series).
pub trait DiffRing: Ring {
    fn derivative(&self) -> Self;
}

/// Falling factorial `alpha (alpha-1) ... (alpha-j+1)`; the empty product is 1.
pub fn falling_factorial<R: Ring>(alpha: &R, j: usize) -> R {
    let mut acc = R::one();
    for k in 0..j {
        acc = acc.mul_ref(&alpha.sub_ref(&R::from_int(k as i64)));
    }
    acc
}

/// Binomial `C(alpha, k)` with ring-valued top argument: `alpha^{falling k} / k!`.
pub fn binomial<R: Ring>(alpha: &R, k: usize) -> R {
    let ff = falling_factorial(alpha, k);
    ff.scale(&Rat::factorial(k).inv().expect("factorial is nonzero"))
}

/// Binomial coefficient of two machine integers as a `Rat` (0 when `k < 0` or
/// `n < 0 <= k` does not apply; standard generalized binomial for negative `n`).
pub fn binom_i64(n: i64, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    binomial(&Rat::from(n), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_examples() {
        // 5 * 4 * 3
        assert_eq!(falling_factorial(&Rat::from(5), 3), Rat::from(60));
        // empty product
        assert_eq!(falling_factorial(&Rat::from(17), 0), Rat::one());
        // w(w-1) = w^2 - w
        let w = WPoly::var();
        let expect = w.mul_ref(&w).sub_ref(&w);
        assert_eq!(falling_factorial(&w, 2), expect);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_i64(5, 2), Rat::from(10));
        assert_eq!(binom_i64(-3, 2), Rat::from(6));
        assert_eq!(binom_i64(4, -1), Rat::zero());
        // C(w-1, 2) = (w-1)(w-2)/2
        let arg = WPoly::var().sub_ref(&WPoly::one());
        let got = binomial(&arg, 2);
        assert_eq!(
            got.eval(&Rat::from(5)),
            Rat::from(6) // C(4,2)
        );
    }
}
