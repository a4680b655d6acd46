//! Concrete tensor modules for integer rank: each point carries either a
//! power of the standard column space (black, projected by a Young
//! symmetrizer) or of its dual (white, acting by minus transpose), and cyclic
//! words evaluate through an auxiliary-index transfer product.

use std::collections::HashMap;

use crate::diagram::{evaluate_gl, young_idempotent, Bipartition, Color};
use crate::linalg::Mat;
use crate::rings::{Rat, RatFn, Ring};

use super::{CyclicWord, NcPoly, WordProduct};

/// Tensor product of one-sided projected factors over rank `n`. Operators are
/// represented on the ambient tensor space, cut down by the product projector.
#[derive(Clone)]
pub struct GlnModule {
    n: usize,
    bips: Vec<Bipartition>,
    /// strand layout: (point index, dual?) per ambient slot
    slots: Vec<(usize, bool)>,
    dim: usize,
    projector: Mat<Rat>,
}

/// Default ambient dimension guard; everything in this crate stays far
/// below it. Use [`GlnModule::with_cap`] to raise it deliberately.
pub const DEFAULT_DIM_CAP: usize = 20_000;

impl GlnModule {
    pub fn new(n: usize, bips: &[Bipartition]) -> Self {
        GlnModule::with_cap(n, bips, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(n: usize, bips: &[Bipartition], cap: usize) -> Self {
        assert!(n >= 1);
        let mut slots = Vec::new();
        for (a, b) in bips.iter().enumerate() {
            let (sz, dual) = if !b.left_part().is_empty() {
                (b.left_part().size(), false)
            } else {
                (b.right_part().size(), true)
            };
            for _ in 0..sz {
                slots.push((a, dual));
            }
        }
        let dim = n
            .checked_pow(slots.len() as u32)
            .filter(|&d| d <= cap)
            .expect("module dimension exceeds the configured cap");
        // product projector: kron of per-point young projectors
        let mut projector = Mat::identity(1);
        for b in bips {
            let p = if !b.left_part().is_empty() {
                evaluate_gl(&young_idempotent(b.left_part(), Color::Black), n)
            } else if !b.right_part().is_empty() {
                evaluate_gl(&young_idempotent(b.right_part(), Color::White), n)
            } else {
                Mat::identity(1)
            };
            projector = kron(&projector, &p);
        }
        GlnModule {
            n,
            bips: bips.to_vec(),
            slots,
            dim,
            projector,
        }
    }

    /// Module for a list of weights: nonnegative entries become a left
    /// partition, nonpositive entries a right partition.
    pub fn from_weights(n: usize, weights: &[Vec<i64>]) -> Self {
        let bips: Vec<Bipartition> = weights
            .iter()
            .map(|w| bipartition_of_weight(w).expect("weight must be one-sided dominant"))
            .collect();
        GlnModule::new(n, &bips)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bipartitions(&self) -> &[Bipartition] {
        &self.bips
    }

    pub fn num_points(&self) -> usize {
        self.bips.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn projector(&self) -> &Mat<Rat> {
        &self.projector
    }

    /// Action of the matrix unit `e_pq` (0-based `p`, `q`) at `point`
    /// (1-based) on the ambient space: standard action on black slots, minus
    /// transpose on dual slots.
    pub fn unit_action(&self, point: usize, p: usize, q: usize) -> Mat<Rat> {
        debug_assert!(p < self.n && q < self.n);
        let n = self.n;
        let k = self.slots.len();
        let mut out: Mat<Rat> = Mat::zero(self.dim, self.dim);
        for (s, &(pt, dual)) in self.slots.iter().enumerate() {
            if pt + 1 != point {
                continue;
            }
            // iterate over all basis tuples with the required slot content
            for idx in 0..self.dim {
                let tuple = decode(idx, n, k);
                if !dual && tuple[s] == q {
                    let mut t = tuple.clone();
                    t[s] = p;
                    let out_idx = encode(&t, n);
                    out[(out_idx, idx)] = out[(out_idx, idx)].add_ref(&Rat::one());
                } else if dual && tuple[s] == p {
                    let mut t = tuple.clone();
                    t[s] = q;
                    let out_idx = encode(&t, n);
                    out[(out_idx, idx)] = out[(out_idx, idx)].sub_ref(&Rat::one());
                }
            }
        }
        out
    }

    /// `P M P` for the product projector `P`.
    pub fn project(&self, m: &Mat<Rat>) -> Mat<Rat> {
        self.projector.mul(m).mul(&self.projector)
    }
}

fn bipartition_of_weight(w: &[i64]) -> Option<Bipartition> {
    let pos: Vec<u32> = w.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
    let neg: Vec<u32> = w
        .iter()
        .rev()
        .filter(|&&x| x < 0)
        .map(|&x| (-x) as u32)
        .collect();
    if !pos.is_empty() && !neg.is_empty() {
        return None;
    }
    if w.windows(2).any(|p| p[0] < p[1]) {
        return None;
    }
    Some(if neg.is_empty() {
        Bipartition::left(crate::diagram::Partition::new(pos))
    } else {
        Bipartition::right(crate::diagram::Partition::new(neg))
    })
}

pub fn kron(a: &Mat<Rat>, b: &Mat<Rat>) -> Mat<Rat> {
    let mut out: Mat<Rat> = Mat::zero(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a[(i, j)].is_zero() {
                continue;
            }
            for p in 0..b.rows {
                for q in 0..b.cols {
                    if b[(p, q)].is_zero() {
                        continue;
                    }
                    out[(i * b.rows + p, j * b.cols + q)] = &a[(i, j)] * &b[(p, q)];
                }
            }
        }
    }
    out
}

fn decode(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in (0..k).rev() {
        out[slot] = idx % n;
        idx /= n;
    }
    out
}

fn encode(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

/// Evaluates cyclic words and their polynomials on a module, memoizing per
/// word. The empty word evaluates to `n` times the identity.
pub struct ModuleEvaluator<'a> {
    module: &'a GlnModule,
    unit_cache: HashMap<(usize, usize, usize), Mat<Rat>>,
    word_cache: HashMap<Vec<usize>, Mat<Rat>>,
}

impl<'a> ModuleEvaluator<'a> {
    pub fn new(module: &'a GlnModule) -> Self {
        ModuleEvaluator {
            module,
            unit_cache: HashMap::new(),
            word_cache: HashMap::new(),
        }
    }

    pub fn module(&self) -> &GlnModule {
        self.module
    }

    fn unit(&mut self, point: usize, p: usize, q: usize) -> Mat<Rat> {
        if let Some(m) = self.unit_cache.get(&(point, p, q)) {
            return m.clone();
        }
        let m = self.module.unit_action(point, p, q);
        self.unit_cache.insert((point, p, q), m.clone());
        m
    }

    /// Action of one cyclic word: the trace over an auxiliary rank-`n` index
    /// of the product of per-letter unit matrices.
    pub fn word(&mut self, w: &CyclicWord) -> Mat<Rat> {
        if let Some(m) = self.word_cache.get(&w.0) {
            return m.clone();
        }
        let n = self.module.n;
        let dim = self.module.dim;
        let result = if w.is_empty() {
            Mat::identity(dim).scale(&Rat::from(n as i64))
        } else {
            // transfer[p][q] starts as the unit action of the first letter and
            // is extended letter by letter; the final trace closes the cycle.
            let k = w.len();
            let mut transfer: Vec<Vec<Mat<Rat>>> = (0..n)
                .map(|p| (0..n).map(|q| self.unit(w.0[0], p, q)).collect())
                .collect();
            for s in 1..k {
                let mut next: Vec<Vec<Mat<Rat>>> = vec![vec![Mat::zero(dim, dim); n]; n];
                for p in 0..n {
                    for q in 0..n {
                        let mut acc = Mat::zero(dim, dim);
                        for r in 0..n {
                            let left = &transfer[p][r];
                            if left.is_zero() {
                                continue;
                            }
                            let right = self.unit(w.0[s], r, q);
                            if right.is_zero() {
                                continue;
                            }
                            acc = acc.add(&left.mul(&right));
                        }
                        next[p][q] = acc;
                    }
                }
                transfer = next;
            }
            let mut acc = Mat::zero(dim, dim);
            for (p, row) in transfer.iter().enumerate() {
                acc = acc.add(&row[p]);
            }
            acc
        };
        self.word_cache.insert(w.0.clone(), result.clone());
        result
    }

    fn word_product(&mut self, wp: &WordProduct) -> Mat<Rat> {
        let dim = self.module.dim;
        let mut acc = Mat::identity(dim);
        for w in &wp.0 {
            acc = acc.mul(&self.word(w));
        }
        acc
    }

    /// Evaluation of a constant-coefficient polynomial in cyclic words.
    pub fn poly(&mut self, p: &NcPoly) -> Mat<Rat> {
        let consts = p
            .constant_terms()
            .expect("polynomial must have constant coefficients; extract a pole first");
        let mut acc = Mat::zero(self.module.dim, self.module.dim);
        for (wp, c) in consts {
            acc = acc.add(&self.word_product(&wp).scale(&c));
        }
        acc
    }

    /// Evaluation of a whole differential operator: a matrix-coefficient
    /// operator on the module.
    pub fn diff_op(&mut self, op: &super::NcDiffOp) -> super::DiffOpMat {
        let dim = self.module.dim;
        let mut out = super::DiffOpMat::zero(dim);
        for (p, c) in op.coeffs() {
            out = out.add(&super::DiffOpMat::from_coeff(*p, self.poly_fn(c)));
        }
        out
    }

    /// Evaluation with rational-function coefficients: a matrix of functions.
    pub fn poly_fn(&mut self, p: &NcPoly) -> Mat<RatFn<Rat>> {
        let dim = self.module.dim;
        let mut acc: Mat<RatFn<Rat>> = Mat::zero(dim, dim);
        for (wp, c) in p.terms() {
            let m = self.word_product(wp);
            for i in 0..dim {
                for j in 0..dim {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    let t = c.scale(&m[(i, j)]);
                    acc[(i, j)] = acc[(i, j)].add_ref(&t);
                }
            }
        }
        acc
    }
}
