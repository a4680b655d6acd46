//! Evaluation of diagrams on concrete `n`-dimensional tensor slots: each
//! diagram becomes an exact matrix by index contraction, and coefficients are
//! evaluated at `w = n`. This is the functor that collapses the interpolated
//! category down to honest `gl_n` tensor calculus.

use crate::linalg::Mat;
use crate::rings::{Rat, Ring};

use super::diagram::{Diagram, Row, Vertex};
use super::morphism::Morphism;

/// Mixed-radix index helpers: a word of length `k` indexes `n^k` basis
/// tuples, first slot most significant.
fn tuple_count(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor dimension overflow")
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

/// Contraction matrix of a single diagram: rows indexed by target tuples,
/// columns by source tuples. Entries are 0/1.
pub fn diagram_matrix(d: &Diagram, n: usize) -> Mat<Rat> {
    assert!(n >= 1);
    let s = d.top().len();
    let t = d.bottom().len();
    let (ns, nt) = (tuple_count(n, s), tuple_count(n, t));
    let mut out: Mat<Rat> = Mat::zero(nt, ns);

    // classify edges
    let mut cross: Vec<(usize, usize)> = Vec::new(); // (top pos, bottom pos)
    let mut top_arcs: Vec<(usize, usize)> = Vec::new();
    let mut bottom_arcs: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in d.edges() {
        match (u.row, v.row) {
            (Row::Top, Row::Top) => top_arcs.push((u.pos, v.pos)),
            (Row::Bottom, Row::Bottom) => bottom_arcs.push((u.pos, v.pos)),
            (Row::Top, Row::Bottom) => cross.push((u.pos, v.pos)),
            (Row::Bottom, Row::Top) => cross.push((v.pos, u.pos)),
        }
    }

    let free = bottom_arcs.len();
    let n_free = tuple_count(n, free);
    for in_idx in 0..ns {
        let input = decode(in_idx, n, s);
        // top arcs constrain the input tuple
        if !top_arcs.iter().all(|&(p, q)| input[p] == input[q]) {
            continue;
        }
        for f_idx in 0..n_free {
            let f = decode(f_idx, n, free);
            let mut output = vec![0usize; t];
            for (&(p, q), &val) in bottom_arcs.iter().zip(f.iter()) {
                output[p] = val;
                output[q] = val;
            }
            for &(p, q) in &cross {
                output[q] = input[p];
            }
            let out_idx = encode(&output, n);
            out[(out_idx, in_idx)] = out[(out_idx, in_idx)].add_ref(&Rat::one());
        }
    }
    out
}

/// Evaluates a whole morphism at rank `n`, with coefficients at `w = n`.
pub fn evaluate_gl(m: &Morphism, n: usize) -> Mat<Rat> {
    let s = m.source().len();
    let t = m.target().len();
    let mut acc = Mat::zero(tuple_count(n, t), tuple_count(n, s));
    let w_val = Rat::from(n as i64);
    for (d, c) in m.terms() {
        let scalar = c.eval(&w_val);
        if scalar.is_zero() {
            continue;
        }
        acc = acc.add(&diagram_matrix(d, n).scale(&scalar));
    }
    acc
}

/// Convenience wrapper keeping the vertex type visible to callers.
pub fn vertex(row_top: bool, pos: usize) -> Vertex {
    if row_top {
        Vertex::top(pos)
    } else {
        Vertex::bottom(pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::word::{Color, Word};

    #[test]
    fn identity_maps_to_identity() {
        let id = Morphism::identity(&Word(vec![Color::Black]));
        for n in 1..=3 {
            assert_eq!(evaluate_gl(&id, n), Mat::identity(n));
        }
    }

    #[test]
    fn loop_scalar_is_n() {
        let m = Morphism::cap().compose(&Morphism::cup()).unwrap();
        let v = evaluate_gl(&m, 2);
        assert_eq!(v.rows, 1);
        assert_eq!(v[(0, 0)], Rat::from(2));
    }

    #[test]
    fn swap_is_flip_matrix() {
        let sw = Morphism::permutation(&[1, 0], Color::Black);
        let m = evaluate_gl(&sw, 2);
        // flip on Q^2 tensor Q^2: basis (00,01,10,11)
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            assert_eq!(m[(i, j)], Rat::one(), "entry {i},{j}");
        }
        // flip convention check: e_0 (x) e_1 maps to e_1 (x) e_0
        let col = 1usize; // input (0,1)
        assert_eq!(m[(2, col)], Rat::one());
    }

    #[test]
    fn functor_respects_composition_on_cups_and_caps() {
        // snake identity: contract the middle white-black pair of b,w,b
        use crate::diagram::diagram::Diagram;
        let id_b = Morphism::identity(&Word(vec![Color::Black]));
        let first = Morphism::cup().tensor(&id_b); // b -> b,w,b
        let second = Morphism::from_diagram(
            Diagram::new(
                Word(vec![Color::Black, Color::White, Color::Black]),
                Word(vec![Color::Black]),
                vec![
                    (super::Vertex::top(1), super::Vertex::top(2)),
                    (super::Vertex::top(0), super::Vertex::bottom(0)),
                ],
            )
            .unwrap(),
        );
        let zig = second.compose(&first).unwrap();
        for n in 1..=3 {
            assert_eq!(evaluate_gl(&zig, n), Mat::identity(n));
        }
    }
}
