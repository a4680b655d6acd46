//! Evaluation of cyclic-word polynomials to endomorphisms of a projected
//! tensor product in the diagram category. Each letter of a word acts through
//! the single-point action morphism and products of words become compositions,
//! so the evaluation is an algebra map matching the matrix backend after
//! rank evaluation.

use std::collections::HashMap;

use crate::diagram::{
    cyclic_word_on_product, product_idempotent, Bipartition, DiagramError, Morphism,
};
use crate::rings::{Rat, Ring};

use super::{CyclicWord, NcPoly, WordProduct};

pub struct DeligneEvaluator {
    bips: Vec<Bipartition>,
    word_cache: HashMap<Vec<usize>, Morphism>,
}

impl DeligneEvaluator {
    pub fn new(bips: &[Bipartition]) -> Self {
        DeligneEvaluator {
            bips: bips.to_vec(),
            word_cache: HashMap::new(),
        }
    }

    pub fn bipartitions(&self) -> &[Bipartition] {
        &self.bips
    }

    /// The identity of the projected product (the product idempotent).
    pub fn identity(&self) -> Morphism {
        product_idempotent(&self.bips)
    }

    pub fn word(&mut self, w: &CyclicWord) -> Result<Morphism, DiagramError> {
        if let Some(m) = self.word_cache.get(&w.0) {
            return Ok(m.clone());
        }
        let m = cyclic_word_on_product(&self.bips, &w.0)?;
        self.word_cache.insert(w.0.clone(), m.clone());
        Ok(m)
    }

    fn word_product(&mut self, wp: &WordProduct) -> Result<Morphism, DiagramError> {
        // the product w1 w2 ... acts as a(w1) after a(w2) after ...
        let mut acc = self.identity();
        for w in &wp.0 {
            let m = self.word(w)?;
            acc = acc.compose(&m)?;
        }
        Ok(acc)
    }

    /// Evaluation of a constant-coefficient polynomial in cyclic words.
    pub fn poly(&mut self, p: &NcPoly) -> Result<Morphism, DiagramError> {
        let consts = p
            .constant_terms()
            .expect("polynomial must have constant coefficients; extract a pole first");
        let mut acc = self.identity().scale(&Rat::zero());
        for (wp, c) in consts {
            acc = acc.add(&self.word_product(&wp)?.scale(&c));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::{GlnModule, ModuleEvaluator};
    use crate::diagram::{evaluate_gl, Partition};
    use crate::linalg::Mat;

    fn configs() -> Vec<Vec<Bipartition>> {
        vec![
            vec![
                Bipartition::left(Partition::new(vec![1])),
                Bipartition::left(Partition::new(vec![1])),
            ],
            vec![
                Bipartition::left(Partition::new(vec![1])),
                Bipartition::right(Partition::new(vec![1])),
            ],
        ]
    }

    #[test]
    fn words_transport_to_matrices() {
        // evaluate_gl(deligne word) == projected matrix word, for ranks past
        // the total degree
        for bips in configs() {
            let mut dev = DeligneEvaluator::new(&bips);
            for n in 2..=3 {
                let module = GlnModule::new(n, &bips);
                let mut mev = ModuleEvaluator::new(&module);
                for word in [
                    vec![1],
                    vec![2],
                    vec![1, 2],
                    vec![2, 1],
                    vec![1, 1],
                    vec![1, 2, 1],
                ] {
                    let dm = evaluate_gl(&dev.word(&CyclicWord(word.clone())).unwrap(), n);
                    let mm = module.project(&mev.word(&CyclicWord(word.clone())));
                    assert_eq!(dm, mm, "word {word:?} at rank {n} on {bips:?}");
                }
            }
        }
    }

    #[test]
    fn products_transport_to_matrix_products() {
        let bips = configs().remove(1);
        let mut dev = DeligneEvaluator::new(&bips);
        let n = 2;
        let module = GlnModule::new(n, &bips);
        let mut mev = ModuleEvaluator::new(&module);
        let p = NcPoly::word(CyclicWord(vec![1, 2])).mul(&NcPoly::word(CyclicWord(vec![2])));
        let dm = evaluate_gl(&dev.poly(&p).unwrap(), n);
        let mm = module.project(
            &mev.word(&CyclicWord(vec![1, 2]))
                .mul(&mev.word(&CyclicWord(vec![2]))),
        );
        assert_eq!(dm, mm);
        let _: Mat<Rat> = mm;
    }
}
