//! Simultaneous eigen-decomposition of a commuting family over Q, and the
//! bridge from eigenvalue tuples to numeric operators fed back into the
//! monodromy check.
//!
//! Everything is exact rational arithmetic; the requested precision only
//! controls the decimal rendering of reported values, and tolerance
//! comparisons are performed exactly against the rational bound.

use std::collections::BTreeMap;

use gaudin_core::fuchs::{no_monodromy_check, FuchsError, FuchsOp};
use gaudin_core::linalg::{
    char_poly, column_space, kernel_basis, rational_roots_complete, solve, Mat,
};
use gaudin_core::rings::{Rat, Ring};

#[derive(thiserror::Error, Debug)]
pub enum SpectrumError {
    #[error("operators do not commute exactly: pair ({0}, {1})")]
    NonCommuting(usize, usize),
    #[error("spectrum does not split over the rationals for operator {0}")]
    IrrationalSpectrum(usize),
    #[error(transparent)]
    Fuchs(#[from] FuchsError),
}

#[derive(Clone, Debug)]
pub struct SpectrumBlock {
    /// Dimension of the common eigenspace.
    pub dim: usize,
    /// One eigenvalue per operator, in input order.
    pub values: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct SpectrumOutcome {
    pub blocks: Vec<SpectrumBlock>,
    /// Human-readable degeneracy warnings (blocks of dimension > 1).
    pub warnings: Vec<String>,
}

/// Restricts `m` to the column space of `basis` (which must be invariant).
fn restrict(m: &Mat<Rat>, basis: &Mat<Rat>) -> Mat<Rat> {
    let cols = basis.cols;
    let mut out = Mat::zero(cols, cols);
    for j in 0..cols {
        let v: Vec<Rat> = (0..basis.rows).map(|i| basis[(i, j)].clone()).collect();
        let mv = m.mul_vec(&v);
        let x = solve(basis, &mv).expect("operator must preserve the subspace");
        for i in 0..cols {
            out[(i, j)] = x[i].clone();
        }
    }
    out
}

/// Splits the standard space into common eigenspaces of an exactly commuting
/// family. Fails when some restricted characteristic polynomial does not
/// factor over Q.
pub fn simultaneous_eigenspaces(ops: &[Mat<Rat>]) -> Result<SpectrumOutcome, SpectrumError> {
    let dim = ops.first().map_or(0, |m| m.rows);
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate().skip(i + 1) {
            if !a.commutator(b).is_zero() {
                return Err(SpectrumError::NonCommuting(i, j));
            }
        }
    }
    // blocks as (basis, values-so-far)
    let mut blocks: Vec<(Mat<Rat>, Vec<Rat>)> = vec![(Mat::identity(dim), vec![])];
    for (k, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for (basis, values) in blocks {
            let r = restrict(op, &basis);
            let cp = char_poly(&r);
            let mut roots =
                rational_roots_complete(&cp).ok_or(SpectrumError::IrrationalSpectrum(k))?;
            roots.sort();
            roots.dedup();
            let mut covered = 0;
            for root in roots {
                let shifted = {
                    let mut s = r.clone();
                    for i in 0..s.rows {
                        s[(i, i)] = &s[(i, i)] - &root;
                    }
                    s
                };
                let ker = kernel_basis(&shifted);
                if ker.is_empty() {
                    continue;
                }
                covered += ker.len();
                // lift kernel vectors through the basis
                let lifted = Mat::from_fn(basis.rows, ker.len(), |i, j| {
                    let mut acc = Rat::zero();
                    for (t, kv) in ker[j].iter().enumerate() {
                        if !kv.is_zero() {
                            acc += &basis[(i, t)] * kv;
                        }
                    }
                    acc
                });
                let mut vals = values.clone();
                vals.push(root.clone());
                next.push((lifted, vals));
            }
            if covered != basis.cols {
                // defective restriction: the family is not semisimple here
                return Err(SpectrumError::IrrationalSpectrum(k));
            }
        }
        blocks = next;
    }
    let mut outcome = SpectrumOutcome {
        blocks: Vec::new(),
        warnings: Vec::new(),
    };
    for (basis, values) in blocks {
        if basis.cols > 1 {
            outcome.warnings.push(format!(
                "degenerate common eigenspace of dimension {}",
                basis.cols
            ));
        }
        outcome.blocks.push(SpectrumBlock {
            dim: basis.cols,
            values,
        });
    }
    outcome.blocks.sort_by(|a, b| a.values.cmp(&b.values));
    Ok(outcome)
}

pub struct BridgeReport {
    pub blocks: Vec<SpectrumBlock>,
    pub warnings: Vec<String>,
    /// Per block: list of (generator id, exact value, decimal rendering).
    pub residuals: Vec<Vec<(String, Rat, String)>>,
    /// Every residual below the tolerance?
    pub within_tolerance: bool,
}

/// Full bridge: decompose the family, then assemble each eigenvalue tuple
/// into an operator and evaluate the monodromy generators. The tuple order
/// must match `labels`, each a coefficient slot `(i, j, a)`.
pub fn spectrum_bridge(
    ops: &[(usize, usize, usize, Mat<Rat>)],
    z: &[Rat],
    order: usize,
    weights: &[Vec<i64>],
    precision_digits: usize,
    tolerance_exp: u32,
) -> Result<BridgeReport, SpectrumError> {
    let mats: Vec<Mat<Rat>> = ops.iter().map(|(_, _, _, m)| m.clone()).collect();
    let outcome = simultaneous_eigenspaces(&mats)?;
    let tol = Rat::from(10).pow(-(tolerance_exp as i64));
    let mut residuals = Vec::new();
    let mut within = true;
    for block in &outcome.blocks {
        let coeffs: BTreeMap<(usize, usize, usize), Rat> = ops
            .iter()
            .zip(&block.values)
            .map(|((i, j, a, _), v)| ((*i, *j, *a), v.clone()))
            .collect();
        let op = FuchsOp::new(order, z.to_vec(), coeffs)?;
        let rep = no_monodromy_check(&op, weights)?;
        let mut rows = Vec::new();
        for r in rep.records {
            let below = r.value.abs() < tol;
            within &= below;
            rows.push((r.id, r.value.clone(), r.value.to_decimal(precision_digits)));
        }
        residuals.push(rows);
    }
    Ok(BridgeReport {
        blocks: outcome.blocks,
        warnings: outcome.warnings,
        residuals,
        within_tolerance: within,
    })
}

/// Restriction of an ambient-space family to the image of a projector.
pub fn restrict_family(projector: &Mat<Rat>, ops: &[Mat<Rat>]) -> (Mat<Rat>, Vec<Mat<Rat>>) {
    let basis = column_space(projector);
    let restricted = ops.iter().map(|m| restrict(m, &basis)).collect();
    (basis, restricted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_commuting_pair() {
        // diag(1,1,2) and a matrix mixing the eigenvalue-1 plane
        let a = Mat::from_rows(vec![
            vec![Rat::from(1), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), Rat::from(1), Rat::zero()],
            vec![Rat::zero(), Rat::zero(), Rat::from(2)],
        ]);
        let b = Mat::from_rows(vec![
            vec![Rat::zero(), Rat::from(1), Rat::zero()],
            vec![Rat::from(1), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), Rat::zero(), Rat::from(5)],
        ]);
        let out = simultaneous_eigenspaces(&[a, b]).unwrap();
        assert_eq!(out.blocks.len(), 3);
        let dims: Vec<usize> = out.blocks.iter().map(|b| b.dim).collect();
        assert_eq!(dims, vec![1, 1, 1]);
    }

    #[test]
    fn rejects_noncommuting() {
        let a = Mat::from_rows(vec![
            vec![Rat::zero(), Rat::from(1)],
            vec![Rat::zero(), Rat::zero()],
        ]);
        let b = Mat::from_rows(vec![
            vec![Rat::from(1), Rat::zero()],
            vec![Rat::zero(), Rat::from(2)],
        ]);
        assert!(matches!(
            simultaneous_eigenspaces(&[a, b]),
            Err(SpectrumError::NonCommuting(0, 1))
        ));
    }
}
