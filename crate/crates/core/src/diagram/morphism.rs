//! `Q[w]`-linear combinations of diagrams: the morphisms of the category.
//! Composing two diagrams multiplies by `w` for every loop erased.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::rings::{Rat, Ring, WPoly};

use super::diagram::{Diagram, Vertex};
use super::word::{Color, Word};
use super::DiagramError;

#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Word,
    target: Word,
    terms: BTreeMap<Diagram, WPoly>,
}

impl Morphism {
    pub fn zero(source: Word, target: Word) -> Self {
        Morphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Morphism::from_terms(vec![(d, WPoly::one())])
    }

    pub fn from_terms(terms: Vec<(Diagram, WPoly)>) -> Self {
        let (source, target) = {
            let d = &terms.first().expect("need at least one term").0;
            (d.top().clone(), d.bottom().clone())
        };
        let mut m = Morphism::zero(source, target);
        for (d, c) in terms {
            m.add_term(d, c);
        }
        m
    }

    pub fn identity(word: &Word) -> Self {
        Morphism::from_diagram(Diagram::identity(word))
    }

    /// Coevaluation: the empty word into black-white with a bottom arc.
    pub fn cup() -> Self {
        let d = Diagram::new(
            Word::empty(),
            Word(vec![Color::Black, Color::White]),
            vec![(Vertex::bottom(0), Vertex::bottom(1))],
        )
        .unwrap();
        Morphism::from_diagram(d)
    }

    /// Evaluation: black-white to the empty word with a top arc.
    pub fn cap() -> Self {
        let d = Diagram::new(
            Word(vec![Color::Black, Color::White]),
            Word::empty(),
            vec![(Vertex::top(0), Vertex::top(1))],
        )
        .unwrap();
        Morphism::from_diagram(d)
    }

    /// Permutation of `k` strands of one color, mapping top `i` to bottom
    /// `sigma[i]`; composition realizes function composition.
    pub fn permutation(sigma: &[usize], color: Color) -> Self {
        let word = Word::repeated(color, sigma.len());
        let edges = sigma
            .iter()
            .enumerate()
            .map(|(i, &si)| (Vertex::top(i), Vertex::bottom(si)))
            .collect();
        Morphism::from_diagram(Diagram::new(word.clone(), word, edges).unwrap())
    }

    /// Block permutation of `k` adjoint pairs (each pair moves as one unit).
    pub fn pair_permutation(sigma: &[usize]) -> Self {
        let word = Word::adjoint_power(sigma.len());
        let edges = sigma
            .iter()
            .enumerate()
            .flat_map(|(i, &si)| {
                [
                    (Vertex::top(2 * i), Vertex::bottom(2 * si)),
                    (Vertex::top(2 * i + 1), Vertex::bottom(2 * si + 1)),
                ]
            })
            .collect();
        Morphism::from_diagram(Diagram::new(word.clone(), word, edges).unwrap())
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &WPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, d: Diagram, c: WPoly) {
        if c.is_zero() {
            return;
        }
        assert!(
            *d.top() == self.source && *d.bottom() == self.target,
            "diagram words do not match morphism words"
        );
        match self.terms.entry(d) {
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

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.scale_wpoly(&WPoly::from(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Morphism {
        self.scale_wpoly(&WPoly::constant(c.clone()))
    }

    pub fn scale_wpoly(&self, c: &WPoly) -> Morphism {
        if c.is_zero() {
            return Morphism::zero(self.source.clone(), self.target.clone());
        }
        let mut out = Morphism::zero(self.source.clone(), self.target.clone());
        for (d, a) in &self.terms {
            out.add_term(d.clone(), a.mul_ref(c));
        }
        out
    }

    /// `self` after `first`: requires `first.target == self.source`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism, DiagramError> {
        if first.target != self.source {
            return Err(DiagramError::WordMismatch {
                got: self.source.to_string(),
                expected: first.target.to_string(),
            });
        }
        let mut out = Morphism::zero(first.source.clone(), self.target.clone());
        for (dx, cx) in &first.terms {
            for (dy, cy) in &self.terms {
                let (d, loops) = dx.stack(dy)?;
                let mut c = cx.mul_ref(cy);
                for _ in 0..loops {
                    c = c.mul_ref(&WPoly::var());
                }
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Morphism) -> Morphism {
        let mut out = Morphism::zero(
            self.source.concat(&other.source),
            self.target.concat(&other.target),
        );
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                out.add_term(da.tensor(db), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Applies `w -> t` to every coefficient.
    pub fn eval_w(&self, t: &Rat) -> Morphism {
        let mut out = Morphism::zero(self.source.clone(), self.target.clone());
        for (d, c) in &self.terms {
            out.add_term(d.clone(), WPoly::constant(c.eval(t)));
        }
        out
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0: {} -> {}", self.source, self.target);
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*[{d}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            diagram: &'a Diagram,
            coeff: &'a WPoly,
        }
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&Term {
                diagram: d,
                coeff: c,
            })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_after_cup_is_loop() {
        let m = Morphism::cap().compose(&Morphism::cup()).unwrap();
        // the single closed loop evaluates to w * (empty diagram)
        assert_eq!(m.num_terms(), 1);
        let (d, c) = m.terms().next().unwrap();
        assert!(d.top().is_empty() && d.bottom().is_empty());
        assert_eq!(*c, WPoly::var());
    }

    #[test]
    fn permutations_compose_like_functions() {
        let s = Morphism::permutation(&[1, 0, 2], Color::Black);
        let t = Morphism::permutation(&[2, 0, 1], Color::Black);
        // t after s sends i to t[s[i]]
        let ts = t.compose(&s).unwrap();
        let expect = Morphism::permutation(&[0, 2, 1], Color::Black);
        assert_eq!(ts, expect);
    }

    #[test]
    fn identity_is_neutral() {
        let s = Morphism::permutation(&[1, 2, 0], Color::White);
        let id = Morphism::identity(s.source());
        assert_eq!(s.compose(&id).unwrap(), s);
        assert_eq!(id.compose(&s).unwrap(), s);
    }
}
