//! Localization of an operator at a finite point or at infinity, and the
//! indicial polynomials read off the local coefficients.

use crate::rings::{falling_factorial, Laurent, Rat, Ring};

use super::{FuchsError, FuchsOp};

/// Local operator `sum_{i=0}^{n} b_i(x) d^{n-i}` with truncated Laurent
/// coefficients; `b_0 = 1` for localizations of monic operators. At a finite
/// point the coefficient valuations are at least `-i`, at infinity at least
/// `-2i + 1`.
#[derive(Clone, PartialEq)]
pub struct LocalOp<R: Ring> {
    n: usize,
    coeffs: Vec<Laurent<R>>,
}

impl<R: Ring> LocalOp<R> {
    pub fn new(n: usize, coeffs: Vec<Laurent<R>>) -> Self {
        assert_eq!(coeffs.len(), n + 1);
        LocalOp { n, coeffs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficient series of `d^{n-i}`.
    pub fn series(&self, i: usize) -> &Laurent<R> {
        &self.coeffs[i]
    }

    /// `b_{i,k}`: coefficient of `x^k` in the series multiplying `d^{n-i}`.
    /// Errors past the truncation horizon.
    pub fn b(&self, i: usize, k: i64) -> Result<R, FuchsError> {
        self.coeffs[i]
            .coeff(k)
            .ok_or(FuchsError::HorizonExceeded { needed: k })
    }

    /// Indicial polynomial value `r_k(alpha) = sum_i b_{i,-i+k} ff(alpha, n-i)`.
    pub fn indicial(&self, k: i64, alpha: &R) -> Result<R, FuchsError> {
        let mut acc = R::zero();
        for i in 0..=self.n {
            let b = self.b(i, -(i as i64) + k)?;
            if b.is_zero() {
                continue;
            }
            acc = acc.add_ref(&b.mul_ref(&falling_factorial(alpha, self.n - i)));
        }
        Ok(acc)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LocalOp<S> {
        LocalOp {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.map_coeffs(&f)).collect(),
        }
    }

    /// Applies the operator to a Laurent series.
    pub fn apply(&self, f: &Laurent<R>) -> Laurent<R> {
        use crate::rings::DiffRing;
        let mut acc = Laurent::zero_to(f.trunc());
        for i in 0..=self.n {
            let mut d = f.clone();
            for _ in 0..self.n - i {
                d = d.derivative();
            }
            acc = acc.add_ref(&self.coeffs[i].mul_ref(&d));
        }
        acc
    }
}

impl<R: Ring> std::fmt::Debug for LocalOp<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "  [{c}] d^{}", self.n - i)?;
        }
        Ok(())
    }
}

impl<R: Ring> FuchsOp<R> {
    /// Laurent-expands every coefficient at the `a`-th pole (1-based), in the
    /// local coordinate `x = u - z_a`, exactly up to `x^trunc`.
    pub fn localize(&self, a: usize, trunc: i64) -> Result<LocalOp<R>, FuchsError> {
        if a == 0 || a > self.poles().len() {
            return Err(FuchsError::BadOperator(format!("no pole index {a}")));
        }
        let z = self.poles()[a - 1].clone();
        let coeffs = (0..=self.order())
            .map(|i| self.coeff_fn(i).laurent_at(&z, trunc))
            .collect();
        Ok(LocalOp::new(self.order(), coeffs))
    }

    /// Conjugated expansion at infinity in `x = 1/u`: the composite
    /// `(-x^2)^{-n} . sum_i b_i(1/x) (-x^2 d)^{n-i}` brought to normal form,
    /// exact up to `x^trunc` in every coefficient.
    pub fn localize_infinity(&self, trunc: i64) -> LocalOp<R> {
        let n = self.order();
        let inner = trunc + 2 * n as i64 + 1;
        // normal forms of (-x^2 d)^k, as maps power-of-d -> Laurent coefficient
        let mut conj: Vec<Vec<Laurent<R>>> = Vec::with_capacity(n + 1);
        conj.push(vec![Laurent::one()]);
        for k in 0..n {
            let prev = &conj[k];
            let mut next: Vec<Laurent<R>> = vec![Laurent::zero_to(inner); k + 2];
            let x2 = Laurent::monomial(2, R::one());
            for (p, g) in prev.iter().enumerate() {
                use crate::rings::DiffRing;
                // (-x^2 d)(g d^p) = -x^2 g' d^p - x^2 g d^{p+1}
                next[p] = next[p].add_ref(&x2.mul_ref(&g.derivative()).neg_ref());
                next[p + 1] = next[p + 1].add_ref(&x2.mul_ref(g).neg_ref());
            }
            conj.push(next);
        }
        let mut total: Vec<Laurent<R>> = vec![Laurent::zero_to(inner); n + 1];
        for i in 0..=n {
            let s = self.coeff_fn(i).expand_at_infinity(inner);
            for (p, g) in conj[n - i].iter().enumerate() {
                total[p] = total[p].add_ref(&s.mul_ref(g));
            }
        }
        // multiply by (-1)^n x^{-2n} and re-index so coeffs[i] sits at d^{n-i}
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let coeffs = (0..=n)
            .map(|i| {
                total[n - i]
                    .shift(-2 * (n as i64))
                    .scale(&Rat::from(sign))
                    .truncate(trunc)
            })
            .collect();
        LocalOp::new(n, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::WPoly;
    use std::collections::BTreeMap;

    fn op(n: usize, entries: &[(usize, usize, usize, i64)]) -> FuchsOp<Rat> {
        let coeffs = entries
            .iter()
            .map(|&(i, j, a, v)| ((i, j, a), Rat::from(v)))
            .collect();
        FuchsOp::new(n, vec![Rat::from(0), Rat::from(1)], coeffs).unwrap()
    }

    #[test]
    fn localize_simple_pole() {
        // d + y/(u - 0) at the first point: d + y x^{-1}
        let d = op(1, &[(1, 1, 1, 5)]);
        let l = d.localize(1, 3).unwrap();
        assert_eq!(l.b(1, -1).unwrap(), Rat::from(5));
        assert_eq!(l.b(1, 0).unwrap(), Rat::zero());
        assert_eq!(l.b(0, 0).unwrap(), Rat::one());
    }

    #[test]
    fn localize_at_other_pole_expands_geometrically() {
        // d^2 + c/(u-1) at z=0: coefficient c(-1 - x - x^2 - ...)
        let d = op(2, &[(2, 1, 2, 7)]);
        let l = d.localize(1, 2).unwrap();
        for k in 0..=2 {
            assert_eq!(l.b(2, k).unwrap(), Rat::from(-7));
        }
    }

    #[test]
    fn infinity_of_plain_derivative() {
        // d at infinity is d (order-1 case unwinds)
        let d: FuchsOp<Rat> = FuchsOp::new(1, vec![Rat::from(0)], BTreeMap::new()).unwrap();
        let l = d.localize_infinity(4);
        assert_eq!(l.b(0, 0).unwrap(), Rat::one());
        for k in 1..=4 {
            assert_eq!(l.b(0, k).unwrap(), Rat::zero());
        }
        assert!(l.series(1).is_zero_to_trunc());
    }

    #[test]
    fn infinity_shape_bound() {
        // order 2: (-x^2 d)^2 conjugation produces x^{-1}-terms in the d^1
        // coefficient: (-1/x^2)^2 (x^4 d^2 + 2 x^3 d) = d^2 + 2 x^{-1} d
        let d: FuchsOp<Rat> = FuchsOp::new(2, vec![Rat::from(0)], BTreeMap::new()).unwrap();
        let l = d.localize_infinity(4);
        assert_eq!(l.b(0, 0).unwrap(), Rat::one());
        assert_eq!(l.b(1, -1).unwrap(), Rat::from(2));
        // indicial at infinity: r_0(alpha) = alpha(alpha-1) + 2 alpha
        let r0 = l.indicial(0, &Rat::from(3)).unwrap();
        assert_eq!(r0, Rat::from(3 * 2 + 2 * 3));
    }

    #[test]
    fn indicial_examples() {
        // pure d^2: r_0(alpha) = alpha (alpha - 1)
        let d = op(2, &[]);
        let l = d.localize(1, 2).unwrap();
        let alpha = Rat::from(5);
        assert_eq!(l.indicial(0, &alpha).unwrap(), Rat::from(20));

        // d^2 - 2 x^{-2}: r_0(alpha) = alpha(alpha-1) - 2 = (alpha-2)(alpha+1)
        let d = op(2, &[(2, 2, 1, -2)]);
        let l = d.localize(1, 2).unwrap();
        let w = WPoly::var();
        let lw = l.map_coeffs(|c| WPoly::constant(c.clone()));
        let r0 = lw.indicial(0, &w).unwrap();
        let expect = w
            .sub_ref(&WPoly::from(2))
            .mul_ref(&w.add_ref(&WPoly::from(1)));
        assert_eq!(r0, expect);
    }
}
