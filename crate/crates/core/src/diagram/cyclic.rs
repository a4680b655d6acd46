//! The coevaluation morphisms carrying cyclic words of matrix units, the
//! action of adjoint factors on a tensor product of one-sided irreducibles,
//! and the letter-by-letter evaluation of cyclic words on such a product.

use crate::rings::{Rat, WPoly};

use super::diagram::{Diagram, Vertex};
use super::morphism::Morphism;
use super::partition::Bipartition;
use super::word::{Color, Word};
use super::young::young_idempotent;
use super::DiagramError;

/// Basic cyclic coevaluation on `k` adjoint pairs: white of pair `s` joins
/// black of pair `s+1`, black of pair `1` joins white of pair `k`.
pub fn cycle_coev(k: usize) -> Morphism {
    assert!(k >= 1);
    let word = Word::adjoint_power(k);
    let black = |s: usize| Vertex::bottom(2 * s);
    let white = |s: usize| Vertex::bottom(2 * s + 1);
    let mut edges = Vec::with_capacity(k);
    for s in 0..k - 1 {
        edges.push((white(s), black(s + 1)));
    }
    edges.push((black(0), white(k - 1)));
    Morphism::from_diagram(Diagram::new(Word::empty(), word, edges).unwrap())
}

/// Merge morphism from `k` adjoint pairs to `m` adjoint pairs: pairs listed in
/// `indices` (1-based values in `1..=m`) multiply into their slot in listing
/// order; unused slots receive a coevaluation arc.
fn merge_morphism(indices: &[usize], m: usize) -> Morphism {
    let k = indices.len();
    let top_black = |s: usize| Vertex::top(2 * s);
    let top_white = |s: usize| Vertex::top(2 * s + 1);
    let bot_black = |a: usize| Vertex::bottom(2 * a);
    let bot_white = |a: usize| Vertex::bottom(2 * a + 1);
    let mut edges = Vec::new();
    for a in 0..m {
        let occ: Vec<usize> = (0..k).filter(|&s| indices[s] == a + 1).collect();
        if occ.is_empty() {
            edges.push((bot_black(a), bot_white(a)));
            continue;
        }
        edges.push((top_black(occ[0]), bot_black(a)));
        edges.push((top_white(occ[occ.len() - 1]), bot_white(a)));
        for t in 0..occ.len() - 1 {
            edges.push((top_white(occ[t]), top_black(occ[t + 1])));
        }
    }
    Morphism::from_diagram(
        Diagram::new(Word::adjoint_power(k), Word::adjoint_power(m), edges).unwrap(),
    )
}

/// The cyclic-word coevaluation into `m` adjoint pairs: the cycle on `k`
/// pairs followed by the merge that multiplies repeated slots together and
/// pads unused slots with single coevaluations.
pub fn cyclic_morphism(indices: &[usize], m: usize) -> Result<Morphism, DiagramError> {
    if indices.is_empty() {
        return Err(DiagramError::Malformed(
            "cyclic word must have at least one letter; the empty word is handled by its evaluation"
                .into(),
        ));
    }
    if indices.iter().any(|&i| i == 0 || i > m) {
        return Err(DiagramError::IndexOutOfRange {
            index: *indices.iter().find(|&&i| i == 0 || i > m).unwrap(),
            bound: m,
        });
    }
    merge_morphism(indices, m).compose(&cycle_coev(indices.len()))
}

/// The word of a one-sided tensor factor: black strands for a left partition,
/// white strands for a right partition.
pub fn factor_word(b: &Bipartition) -> Word {
    if !b.left_part().is_empty() {
        Word::repeated(Color::Black, b.left_part().size())
    } else {
        Word::repeated(Color::White, b.right_part().size())
    }
}

pub fn product_word(bips: &[Bipartition]) -> Word {
    let mut w = Word::empty();
    for b in bips {
        w = w.concat(&factor_word(b));
    }
    w
}

/// Tensor product of the per-factor projecting idempotents; the identity of
/// the projected object.
pub fn product_idempotent(bips: &[Bipartition]) -> Morphism {
    let mut acc = Morphism::identity(&Word::empty());
    for b in bips {
        let e = if !b.left_part().is_empty() {
            young_idempotent(b.left_part(), Color::Black)
        } else if !b.right_part().is_empty() {
            young_idempotent(b.right_part(), Color::White)
        } else {
            Morphism::identity(&Word::empty())
        };
        acc = acc.tensor(&e);
    }
    acc
}

/// Raw action of `count` adjoint factors on the unprojected tensor word:
/// factor `t` (0-based) pairs into the strands of the tensor factor
/// `targets[t]` (0-based point index), one strand choice each, summed over
/// all choices. A pairing into a white (dual) strand carries a minus sign;
/// that is the sign that makes the contraction the honest Lie action on the
/// dual, and evaluation at rank `n` then matches the matrix side exactly.
fn raw_action(bips: &[Bipartition], targets: &[usize]) -> Morphism {
    let count = targets.len();
    let g_word = Word::adjoint_power(count);
    let w_word = product_word(bips);
    let source = g_word.concat(&w_word);
    let target = w_word.clone();
    // strand ranges per point inside the tensor word
    let mut ranges = Vec::with_capacity(bips.len());
    let mut off = 0;
    for b in bips {
        let d = factor_word(b).len();
        ranges.push(off..off + d);
        off += d;
    }
    let g_black = |t: usize| Vertex::top(2 * t);
    let g_white = |t: usize| Vertex::top(2 * t + 1);
    let strand_top = |p: usize| Vertex::top(2 * count + p);
    let strand_bottom = |p: usize| Vertex::bottom(p);

    let mut acc = Morphism::zero(source.clone(), target.clone());
    // one choice of strand per adjoint factor
    let mut choice = vec![0usize; count];
    loop {
        // build the diagram for this assignment if every factor has a strand
        let mut ok = true;
        let mut edges = Vec::new();
        let mut used = vec![false; w_word.len()];
        let mut sign = 1i64;
        for t in 0..count {
            let range = ranges[targets[t]].clone();
            let strands: Vec<usize> = range.collect();
            if strands.is_empty() {
                ok = false;
                break;
            }
            let p = strands[choice[t]];
            if used[p] {
                ok = false;
                break;
            }
            used[p] = true;
            match w_word.letter(p) {
                Color::Black => {
                    edges.push((g_white(t), strand_top(p)));
                    edges.push((g_black(t), strand_bottom(p)));
                }
                Color::White => {
                    edges.push((g_black(t), strand_top(p)));
                    edges.push((g_white(t), strand_bottom(p)));
                    sign = -sign;
                }
            }
        }
        if ok {
            for p in 0..w_word.len() {
                if !used[p] {
                    edges.push((strand_top(p), strand_bottom(p)));
                }
            }
            let d = Diagram::new(source.clone(), target.clone(), edges)
                .expect("action diagram is well-formed");
            acc = acc.add(&Morphism::from_diagram(d).scale(&Rat::from(sign)));
        }
        // advance the mixed-radix choice vector
        let mut t = 0;
        loop {
            if t == count {
                return acc;
            }
            let width = ranges[targets[t]].len().max(1);
            choice[t] += 1;
            if choice[t] < width {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
        if count == 0 {
            return acc;
        }
    }
}

/// The action of `m` adjoint factors (one per tensor point) on the projected
/// product: idempotents applied on both sides.
pub fn action_morphism(bips: &[Bipartition]) -> Result<Morphism, DiagramError> {
    let m = bips.len();
    let targets: Vec<usize> = (0..m).collect();
    let raw = raw_action(bips, &targets);
    conjugate_by_idempotents(bips, m, raw)
}

/// Action of a single adjoint factor on point `a` (1-based).
pub fn point_action(bips: &[Bipartition], a: usize) -> Result<Morphism, DiagramError> {
    if a == 0 || a > bips.len() {
        return Err(DiagramError::IndexOutOfRange {
            index: a,
            bound: bips.len(),
        });
    }
    let raw = raw_action(bips, &[a - 1]);
    conjugate_by_idempotents(bips, 1, raw)
}

fn conjugate_by_idempotents(
    bips: &[Bipartition],
    g_count: usize,
    raw: Morphism,
) -> Result<Morphism, DiagramError> {
    let e = product_idempotent(bips);
    let id_g = Morphism::identity(&Word::adjoint_power(g_count));
    let pre = id_g.tensor(&e);
    e.compose(&raw.compose(&pre)?)
}

/// Evaluation of one cyclic word on the projected product: feed the cycle's
/// adjoint pairs to their points one letter at a time, leftmost letter acting
/// last. The empty word evaluates to `w` times the identity (a closed loop).
pub fn cyclic_word_on_product(
    bips: &[Bipartition],
    indices: &[usize],
) -> Result<Morphism, DiagramError> {
    let e = product_idempotent(bips);
    if indices.is_empty() {
        return Ok(e.scale_wpoly(&WPoly::var()));
    }
    let k = indices.len();
    let vbar = product_word(bips);
    // start: cycle (x) identity on the projected product
    let mut acc = cycle_coev(k).tensor(&e);
    // feed letters right to left: at step t the rightmost adjoint pair acts
    for t in (0..k).rev() {
        let step =
            Morphism::identity(&Word::adjoint_power(t)).tensor(&point_action(bips, indices[t])?);
        acc = step.compose(&acc)?;
    }
    debug_assert_eq!(*acc.source(), vbar);
    Ok(acc)
}
