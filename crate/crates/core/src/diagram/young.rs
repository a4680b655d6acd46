//! Young symmetrizer idempotents inside the group algebra of permutation
//! diagrams on single-color strands.
//!
//! Normalization: with `c = (row sum)(signed column sum)` for the canonical
//! tableau, the scaled element `(f/k!) c` is the unique idempotent multiple,
//! `f` being the number of standard tableaux.

use crate::rings::Rat;

use super::morphism::Morphism;
use super::partition::Partition;
use super::word::Color;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..k {
        let mut next = Vec::new();
        for p in out {
            for slot in 0..=i {
                let mut q = p.clone();
                q.insert(slot, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut s = 1i64;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Row and column groups of the canonical tableau (cells filled row by row).
fn tableau_groups(lambda: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = lambda.size();
    // cell index -> (row, col)
    let mut cell_of = Vec::with_capacity(k);
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len as usize {
            cell_of.push((r, c));
        }
    }
    let all = permutations(k);
    let preserves = |p: &[usize], by_row: bool| {
        p.iter().enumerate().all(|(i, &pi)| {
            if by_row {
                cell_of[i].0 == cell_of[pi].0
            } else {
                cell_of[i].1 == cell_of[pi].1
            }
        })
    };
    let rows = all.iter().filter(|p| preserves(p, true)).cloned().collect();
    let cols = all
        .iter()
        .filter(|p| preserves(p, false))
        .cloned()
        .collect();
    (rows, cols)
}

/// The idempotent projecting `V^{tensor k}` (or its dual power, for white
/// strands) onto the irreducible labelled by `lambda`. Coefficients are
/// rational constants; they do not involve `w`.
pub fn young_idempotent(lambda: &Partition, color: Color) -> Morphism {
    let k = lambda.size();
    assert!(k >= 1, "need a nonempty partition");
    assert!(k <= 8, "young idempotent restricted to small degrees");
    let (rows, cols) = tableau_groups(lambda);
    let compose_perms = |p: &[usize], q: &[usize]| -> Vec<usize> {
        // p after q
        (0..k).map(|i| p[q[i]]).collect()
    };
    let mut acc = Morphism::zero(
        crate::diagram::Word::repeated(color, k),
        crate::diagram::Word::repeated(color, k),
    );
    for p in &rows {
        for q in &cols {
            let s = sign(q);
            let m = Morphism::permutation(&compose_perms(p, q), color).scale(&Rat::from(s));
            acc = acc.add(&m);
        }
    }
    let f = lambda.standard_tableaux();
    let scalar = Rat::from(f as i64) * Rat::factorial(k).inv().unwrap();
    acc.scale(&scalar)
}
