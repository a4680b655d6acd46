//! The universal, rank-independent expansion of the Gaudin generating series:
//! traces of powers of `d/du - L(u)` written over cyclic-word symbols, the
//! Newton recursion producing the characteristic-polynomial coefficients, and
//! two evaluation backends (matrices on a chosen tensor module, morphisms in
//! the diagram category).

mod cdet;
mod deligne;
mod module;
mod newton;
mod trace;

pub use cdet::{cdet_direct, manin_check, DiffOpMat};
pub use deligne::DeligneEvaluator;
pub use module::{GlnModule, ModuleEvaluator};
pub use newton::{bethe_generator, newton_sigma, sigma_power, trace_generator};
pub use trace::trace_power;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::rings::{Rat, RatFn, Ring};

/// Cyclic-word symbol: the trace of a cyclic product of matrix units hitting
/// the listed points (1-based). The empty word is the trace of the identity
/// and evaluates to the rank (`n`, or `w` diagrammatically).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CyclicWord(pub Vec<usize>);

impl CyclicWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Ordered product of cyclic words. Products are never reordered or rotated:
/// the expansion is deterministic instead, so both backends receive the same
/// symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct WordProduct(pub Vec<CyclicWord>);

impl WordProduct {
    pub fn one() -> Self {
        WordProduct(vec![])
    }

    pub fn single(w: CyclicWord) -> Self {
        WordProduct(vec![w])
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        WordProduct(v)
    }
}

impl fmt::Display for WordProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, w) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Noncommutative polynomial: finite sum of ordered word products with
/// rational-function-of-`u` coefficients.
#[derive(Clone, PartialEq, Default)]
pub struct NcPoly {
    terms: BTreeMap<WordProduct, RatFn<Rat>>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::scalar(RatFn::one())
    }

    pub fn scalar(c: RatFn<Rat>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(WordProduct::one(), c);
        }
        NcPoly { terms }
    }

    pub fn word(w: CyclicWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(WordProduct::single(w), RatFn::one());
        NcPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WordProduct, &RatFn<Rat>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: WordProduct, c: RatFn<Rat>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = NcPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.scale(c)))
                .collect(),
        }
    }

    pub fn mul_fn(&self, c: &RatFn<Rat>) -> Self {
        let mut out = NcPoly::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.mul_ref(c));
        }
        out
    }

    /// `d/du` of the coefficients (the word symbols are constants).
    pub fn derivative(&self) -> Self {
        use crate::rings::DiffRing;
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.derivative());
        }
        out
    }

    /// The sub-polynomial multiplying `1/(u - z)^j`, with constant coefficients.
    pub fn extract_pole(&self, z: &Rat, j: u32) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let coeff = c.pole_coeff(z, j);
            out.add_term(w.clone(), RatFn::constant(coeff));
        }
        out
    }

    /// All coefficients as plain rationals, when no term depends on `u`.
    pub fn constant_terms(&self) -> Option<Vec<(WordProduct, Rat)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            if c.pole_terms().next().is_some() || c.poly_degree().unwrap_or(0) > 0 {
                return None;
            }
            out.push((w.clone(), c.poly_coeff(0)));
        }
        Some(out)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]*{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            words: &'a WordProduct,
            coeff: &'a RatFn<Rat>,
        }
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&Term { words: w, coeff: c })?;
        }
        seq.end()
    }
}

/// Differential operator with noncommutative-polynomial coefficients:
/// a finite sum of `NcPoly * d^p`.
#[derive(Clone, PartialEq, Default)]
pub struct NcDiffOp {
    coeffs: BTreeMap<u32, NcPoly>,
}

impl NcDiffOp {
    pub fn zero() -> Self {
        NcDiffOp::default()
    }

    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, NcPoly::one());
        NcDiffOp { coeffs }
    }

    pub fn from_coeff(p: u32, c: NcPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(p, c);
        }
        NcDiffOp { coeffs }
    }

    pub fn coeff(&self, p: u32) -> NcPoly {
        self.coeffs.get(&p).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &NcPoly)> {
        self.coeffs.iter()
    }

    pub fn max_order(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    fn add_coeff(&mut self, p: u32, c: NcPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p).or_insert_with(NcPoly::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_coeff(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rat::from(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        NcDiffOp {
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, a)| (*p, a.scale(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Operator composition: `d^p` moved through a coefficient `g` produces
    /// `sum_i C(p, i) g^(i) d^{p-i}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = NcDiffOp::zero();
        for (&p, f) in &self.coeffs {
            for (&q, g) in &other.coeffs {
                let mut gd = g.clone();
                for i in 0..=p {
                    let scalar = crate::rings::binom_i64(p as i64, i as i64);
                    if !scalar.is_zero() {
                        out.add_coeff(p - i + q, f.mul(&gd).scale(&scalar));
                    }
                    if i < p {
                        gd = gd.derivative();
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for NcDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d^{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_products_are_order_sensitive() {
        let a = CyclicWord(vec![1]);
        let b = CyclicWord(vec![2]);
        let ab = NcPoly::word(a.clone()).mul(&NcPoly::word(b.clone()));
        let ba = NcPoly::word(b).mul(&NcPoly::word(a));
        assert_ne!(ab, ba);
    }

    #[test]
    fn diff_op_commutation() {
        // d * f = f * d + f' with f = 1/(u - 2)
        let f = NcPoly::scalar(RatFn::pole_term(Rat::from(2), 1, Rat::one()));
        let d = NcDiffOp::from_coeff(1, NcPoly::one());
        let left = d.mul(&NcDiffOp::from_coeff(0, f.clone()));
        let expect =
            NcDiffOp::from_coeff(1, f.clone()).add(&NcDiffOp::from_coeff(0, f.derivative()));
        assert_eq!(left, expect);
    }
}
