//! Truncated Laurent series in `x` with exact coefficients.
//!
//! A series knows every coefficient up to and including exponent `trunc`;
//! exponents beyond that are unknown. Ring constants are exact (`trunc`
//! saturates at `i64::MAX`), so precision only degrades through genuinely
//! truncated inputs.

use std::fmt;

use super::{DiffRing, FieldLike, Rat, Ring};

pub const EXACT: i64 = i64::MAX / 4;

/// `sum_{e >= val} coeffs[e - val] x^e`, exact for all exponents `<= trunc`.
/// Empty `coeffs` means the series is zero up to `trunc`.
#[derive(Clone, PartialEq)]
pub struct Laurent<R: Ring> {
    val: i64,
    coeffs: Vec<R>,
    trunc: i64,
}

impl<R: Ring> Laurent<R> {
    pub fn new(val: i64, coeffs: Vec<R>, trunc: i64) -> Self {
        let mut s = Laurent { val, coeffs, trunc };
        s.normalize();
        s
    }

    /// Zero up to (and including) `trunc`.
    pub fn zero_to(trunc: i64) -> Self {
        Laurent {
            val: trunc.saturating_add(1),
            coeffs: vec![],
            trunc,
        }
    }

    pub fn constant(c: R) -> Self {
        Laurent::new(0, vec![c], EXACT)
    }

    /// `c * x^e`, exact.
    pub fn monomial(e: i64, c: R) -> Self {
        Laurent::new(e, vec![c], EXACT)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Laurent::monomial(1, R::one())
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.val += 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        // discard stored coefficients beyond the reliability horizon
        if !self.coeffs.is_empty() {
            let last = self.val + self.coeffs.len() as i64 - 1;
            if last > self.trunc {
                let keep = (self.trunc - self.val + 1).max(0) as usize;
                self.coeffs.truncate(keep);
            }
        }
        if self.coeffs.is_empty() {
            self.val = self.trunc.saturating_add(1);
        }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lowest exponent with a nonzero known coefficient; `None` if zero up to `trunc`.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn is_zero_to_trunc(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^e`; `None` when `e` lies beyond the horizon.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e > self.trunc {
            return None;
        }
        if e < self.val || e >= self.val + self.coeffs.len() as i64 {
            return Some(R::zero());
        }
        Some(self.coeffs[(e - self.val) as usize].clone())
    }

    /// Coefficient of `x^e`, treating unknown as zero. Use only where the
    /// caller has already checked the horizon.
    pub fn coeff_or_zero(&self, e: i64) -> R {
        self.coeff(e).unwrap_or_else(R::zero)
    }

    pub fn truncate(&self, to: i64) -> Self {
        let mut s = self.clone();
        s.trunc = s.trunc.min(to);
        s.normalize();
        s
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc.saturating_add(k),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::new(self.val, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Effective valuation used in truncation bookkeeping: for a series that is
    /// zero to its horizon, the first unknown exponent.
    fn val_eff(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.trunc.saturating_add(1)
        } else {
            self.val
        }
    }

    /// Reciprocal; requires the leading coefficient to be invertible.
    ///
    /// An exact input must be a single monomial; anything longer has an
    /// infinite reciprocal and the caller must truncate to a horizon first.
    pub fn try_inv(&self) -> Option<Self>
    where
        R: FieldLike,
    {
        let v = self.valuation()?;
        let lead_inv = self.coeffs[0].try_inv()?;
        if self.coeffs.len() == 1 {
            return Some(
                Laurent::monomial(-v, lead_inv).truncate(if self.trunc >= EXACT {
                    EXACT
                } else {
                    self.trunc - 2 * v
                }),
            );
        }
        if self.trunc >= EXACT {
            return None;
        }
        // self = c x^v (1 + u); the recursion for coefficient k of the
        // reciprocal consumes self up to exponent v + k, so the result is
        // reliable to exponent -v + (trunc - v).
        let out_trunc = self.trunc - 2 * v;
        let n = self.trunc - v + 1; // exponents -v ..= out_trunc
        if n <= 0 {
            return Some(Laurent::zero_to(out_trunc));
        }
        let mut out = vec![R::zero(); n as usize];
        out[0] = lead_inv.clone();
        for k in 1..out.len() {
            // coefficient of x^{-v+k}: sum_{j=1..k} a_{v+j} b_{-v+k-j} + a_v b_{-v+k} = 0
            let mut acc = R::zero();
            for j in 1..=k {
                let a = self.coeff_or_zero(v + j as i64);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&a.mul_ref(&out[k - j]));
            }
            out[k] = acc.neg_ref().mul_ref(&lead_inv);
        }
        Some(Laurent::new(-v, out, out_trunc))
    }

    /// Exact division; requires the divisor's leading coefficient invertible.
    pub fn try_div(&self, other: &Self) -> Option<Self>
    where
        R: FieldLike,
    {
        Some(self.mul_ref(&other.try_inv()?))
    }
}

impl<R: Ring> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "O(x^{})", self.trunc.saturating_add(1))?;
            return Ok(());
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.val + k as i64;
            if e == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*x^{e}")?;
            }
        }
        if self.trunc < EXACT {
            write!(f, " + O(x^{})", self.trunc + 1)?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero() -> Self {
        Laurent::zero_to(EXACT)
    }

    fn one() -> Self {
        Laurent::constant(R::one())
    }

    fn is_zero(&self) -> bool {
        // zero as far as we can see
        self.coeffs.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Laurent::zero_to(trunc);
        }
        let top = |s: &Self| {
            if s.coeffs.is_empty() {
                i64::MIN
            } else {
                s.val + s.coeffs.len() as i64 - 1
            }
        };
        let lo = self.val_eff().min(other.val_eff()).min(trunc);
        let hi = trunc.min(top(self).max(top(other)));
        if hi < lo {
            return Laurent::zero_to(trunc);
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            out.push(self.coeff_or_zero(e).add_ref(&other.coeff_or_zero(e)));
        }
        Laurent::new(lo, out, trunc)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let trunc = if self.trunc >= EXACT && other.trunc >= EXACT {
            EXACT
        } else {
            (self.trunc.saturating_add(other.val_eff()))
                .min(other.trunc.saturating_add(self.val_eff()))
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Laurent::zero_to(trunc);
        }
        let lo = self.val + other.val;
        let hi_stored =
            self.val + self.coeffs.len() as i64 - 1 + other.val + other.coeffs.len() as i64 - 1;
        let hi = hi_stored.min(trunc);
        if hi < lo {
            return Laurent::zero_to(trunc);
        }
        let mut out = vec![R::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = self.val + i as i64 + other.val + j as i64;
                if e > hi {
                    break;
                }
                let slot = (e - lo) as usize;
                out[slot] = out[slot].add_ref(&a.mul_ref(b));
            }
        }
        Laurent::new(lo, out, trunc)
    }

    fn neg_ref(&self) -> Self {
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
            trunc: self.trunc,
        }
    }

    fn from_int(n: i64) -> Self {
        Laurent::constant(R::from_int(n))
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Laurent::zero_to(self.trunc);
        }
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl<R: Ring> DiffRing for Laurent<R> {
    fn derivative(&self) -> Self {
        let trunc = if self.trunc >= EXACT {
            EXACT
        } else {
            self.trunc - 1
        };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&Rat::from(self.val + k as i64)))
            .collect();
        Laurent::new(self.val - 1, coeffs, trunc)
    }
}

impl<R: FieldLike> FieldLike for Laurent<R> {
    fn try_inv(&self) -> Option<Self> {
        Laurent::try_inv(self)
    }
}
