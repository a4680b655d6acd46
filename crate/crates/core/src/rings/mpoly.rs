//! Multivariate polynomials in the operator-coefficient generators
//! `y[i,j;a]` (pole order `j <= i`, point index `a`), with coefficients in
//! Q[w]. Setting every coefficient constant recovers the plain polynomial
//! algebra; keeping `w` gives its one-parameter interpolation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{IntegralDomain, Rat, Ring, WPoly};

/// Generator `y[i,j;a]`: coefficient of `(u - z_a)^{-j} d^{n-i}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub struct YVar {
    pub i: u16,
    pub j: u16,
    pub point: u8,
}

impl YVar {
    pub fn new(i: usize, j: usize, point: usize) -> Self {
        YVar {
            i: i as u16,
            j: j as u16,
            point: point as u8,
        }
    }
}

impl fmt::Display for YVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{},{};{}]", self.i, self.j, self.point)
    }
}

/// Sorted exponent vector; ordered by graded lexicographic order so that
/// multivariate division terminates.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Monomial(Vec<(YVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(vec![])
    }

    pub fn var(v: YVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = (YVar, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(YVar, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` when every exponent of `other` fits inside `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut rem: BTreeMap<YVar, u32> = self.0.iter().copied().collect();
        for (v, e) in &other.0 {
            let slot = rem.get_mut(v)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(Monomial(rem.into_iter().filter(|(_, e)| *e > 0).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // graded, then lexicographic on the merged exponent vector
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // earlier variable present only on one side: that side has
                    // a positive exponent where the other has zero
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in the `y` generators over `Q[w]`; no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, WPoly>,
}

impl MPoly {
    pub fn constant(c: WPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn from_rat(c: Rat) -> Self {
        MPoly::constant(WPoly::constant(c))
    }

    pub fn var(v: YVar) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), WPoly::one());
        MPoly { terms }
    }

    /// The interpolation variable `w` as a constant-in-`y` polynomial.
    pub fn w() -> Self {
        MPoly::constant(WPoly::var())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &WPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> WPoly {
        self.terms.get(m).cloned().unwrap_or_else(WPoly::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<WPoly> {
        match self.terms.len() {
            0 => Some(WPoly::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<YVar> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                out.insert(v);
            }
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: WPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn mul_wpoly(&self, c: &WPoly) -> Self {
        if c.is_zero() {
            return MPoly::default();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul_ref(c)))
                .collect(),
        }
    }

    /// Evaluation `w -> t` on every coefficient.
    pub fn eval_w(&self, t: &Rat) -> Self {
        let mut out = MPoly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), WPoly::constant(c.eval(t)));
        }
        out
    }

    /// Projection killing every generator with first index above `n`.
    pub fn project_max_i(&self, n: usize) -> Self {
        let mut out = MPoly::default();
        for (m, c) in &self.terms {
            if m.vars().all(|(v, _)| (v.i as usize) <= n) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Substitutes a polynomial for a single generator.
    pub fn subst_var(&self, v: YVar, replacement: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (m, c) in &self.terms {
            let mut exp = 0;
            let rest: Vec<(YVar, u32)> = m
                .vars()
                .filter(|(var, e)| {
                    if *var == v {
                        exp = *e;
                        false
                    } else {
                        true
                    }
                })
                .collect();
            if exp == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut term = MPoly::default();
            term.add_term(Monomial(rest), c.clone());
            for _ in 0..exp {
                term = term.mul_ref(replacement);
            }
            out = out.add_ref(&term);
        }
        out
    }

    /// Full substitution of every generator by a rational value.
    pub fn subst_y(&self, values: &dyn Fn(YVar) -> Rat) -> WPoly {
        let mut acc = WPoly::zero();
        for (m, c) in &self.terms {
            let mut scalar = Rat::one();
            for (v, e) in m.vars() {
                scalar *= values(v).pow(e as i64);
            }
            acc = acc.add_ref(&c.scale(&scalar));
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &WPoly)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }

    fn one() -> Self {
        MPoly::constant(WPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    fn from_int(n: i64) -> Self {
        MPoly::from_rat(Rat::from(n))
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MPoly::default();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.scale(c)))
                .collect(),
        }
    }
}

impl IntegralDomain for MPoly {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = MPoly::default();
        let (lm, lc) = {
            let (m, c) = other.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&lm)?;
            let qc = rc.div_exact(&lc)?;
            let mut t = MPoly::default();
            t.add_term(qm, qc);
            rem = rem.sub_ref(&t.mul_ref(other));
            quot = quot.add_ref(&t);
        }
        Some(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: usize, j: usize, a: usize) -> MPoly {
        MPoly::var(YVar::new(i, j, a))
    }

    #[test]
    fn ring_basics() {
        let p = y(1, 1, 1).add_ref(&MPoly::w());
        let q = y(2, 1, 1).sub_ref(&MPoly::one());
        let pq = p.mul_ref(&q);
        assert_eq!(pq.sub_ref(&q.mul_ref(&p)), MPoly::zero());
        assert_eq!(p.mul_ref(&MPoly::zero()), MPoly::zero());
    }

    #[test]
    fn monomial_order_is_multiplicative() {
        let a = Monomial::var(YVar::new(1, 1, 1));
        let b = Monomial::var(YVar::new(2, 1, 1));
        assert!(a > b || a < b);
        let c = Monomial::var(YVar::new(1, 1, 2));
        let (lo, hi) = if a < b { (&a, &b) } else { (&b, &a) };
        assert!(lo.mul(&c) < hi.mul(&c));
    }

    #[test]
    fn exact_division_round_trip() {
        let p = y(1, 1, 1)
            .mul_ref(&y(2, 2, 1))
            .add_ref(&y(3, 1, 2).mul_wpoly(&WPoly::var()));
        let q = y(1, 1, 1).add_ref(&MPoly::from_rat(Rat::new(2, 3)));
        let prod = p.mul_ref(&q);
        assert_eq!(prod.div_exact(&q), Some(p.clone()));
        assert_eq!(prod.add_ref(&MPoly::one()).div_exact(&q), None);
    }

    #[test]
    fn projection_and_substitution() {
        let p = y(3, 1, 1).add_ref(&y(1, 1, 1).mul_ref(&y(2, 1, 1)));
        assert_eq!(p.project_max_i(2), y(1, 1, 1).mul_ref(&y(2, 1, 1)));
        let val = p.subst_y(&|v| Rat::from(v.i as i64));
        // 3 + 1*2
        assert_eq!(val, WPoly::from(5));
    }
}
