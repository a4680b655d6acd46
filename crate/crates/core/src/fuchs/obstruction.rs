//! The banded obstruction matrices built from indicial values, whose reduced
//! determinants (together with the indicial roots) cut out the operators with
//! a full set of local series solutions.

use crate::linalg::Mat;
use crate::rings::Ring;

use super::{Exponents, FuchsError, LocalOp};

/// Builds the full matrix and its reduction for the exponent pair `i < j`
/// (1-based). The full matrix has size `m_j - m_i`, row `d+1` holding
/// `r_{c-d}(m_i + d)`; the reduction deletes the row and column containing
/// each intermediate indicial root `r_0(m_l)`, `i < l < j`.
pub fn obstruction_matrices<R: Ring>(
    local: &LocalOp<R>,
    exps: &Exponents,
    i: usize,
    j: usize,
) -> Result<(Mat<R>, Mat<R>), FuchsError> {
    if !(1 <= i && i < j && j <= exps.n()) {
        return Err(FuchsError::BadOperator(format!(
            "need 1 <= i < j <= n, got ({i}, {j})"
        )));
    }
    if exps.n() != local.order() {
        return Err(FuchsError::BadOperator(
            "exponent count differs from operator order".into(),
        ));
    }
    let (mi, mj) = (exps.m(i), exps.m(j));
    let k = (mj - mi) as usize;
    let mut full: Mat<R> = Mat::zero(k, k);
    for r in 0..k {
        for c in 0..k {
            let s = c as i64 + 1 - r as i64;
            if s < 0 {
                continue;
            }
            let alpha = R::from_int(mi + r as i64);
            full[(r, c)] = local.indicial(s, &alpha)?;
        }
    }
    let mut drop_rows = Vec::new();
    let mut drop_cols = Vec::new();
    for l in i + 1..j {
        let d = (exps.m(l) - mi) as usize;
        drop_rows.push(d);
        drop_cols.push(d - 1);
    }
    let reduced = full.minor(&drop_rows, &drop_cols);
    Ok((full, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchs::FuchsOp;
    use crate::linalg::det_bareiss;
    use crate::rings::Rat;
    use std::collections::BTreeMap;

    fn perturbed_op(c: i64) -> FuchsOp<Rat> {
        // d^2 - x^{-1} d + c x^{-1}
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1, 1), Rat::from(-1));
        coeffs.insert((2, 1, 1), Rat::from(c));
        FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap()
    }

    #[test]
    fn one_by_one_case() {
        // exponents (0, 1): the matrix is [r_1(m_1)]
        let d = perturbed_op(0);
        let l = d.localize(1, 4).unwrap();
        let e = Exponents::new(vec![0, 1]).unwrap();
        let (a, ab) = obstruction_matrices(&l, &e, 1, 2).unwrap();
        assert_eq!(a.rows, 1);
        assert_eq!(a, ab);
    }

    #[test]
    fn two_by_two_determinant_is_c_squared() {
        // exponents (0, 2): det [[r_1(0), r_2(0)], [r_0(1), r_1(1)]] = c^2
        let c = 5;
        let d = perturbed_op(c);
        let l = d.localize(1, 4).unwrap();
        let e = Exponents::new(vec![0, 2]).unwrap();
        let (a, ab) = obstruction_matrices(&l, &e, 1, 2).unwrap();
        assert_eq!(a, ab); // no intermediate exponents
        assert_eq!(a[(0, 0)], Rat::from(c)); // r_1(0) = c
        assert_eq!(a[(1, 0)], Rat::from(-1)); // r_0(1) = 1*0 - 1
        assert_eq!(det_bareiss(&a), Rat::from(c * c));
    }

    #[test]
    fn resonance_free_gap_has_zero_determinant() {
        // d^2 - 2x^{-2} with exponents (-1, 2): every r_k with k >= 1
        // vanishes, so the whole first row is zero and the determinant with it
        let mut coeffs = BTreeMap::new();
        coeffs.insert((2, 2, 1), Rat::from(-2));
        let d = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        let l = d.localize(1, 6).unwrap();
        for k in 1..=4 {
            assert_eq!(l.indicial(k, &Rat::from(7)).unwrap(), Rat::zero());
        }
        let e = Exponents::new(vec![-1, 2]).unwrap();
        let (a, ab) = obstruction_matrices(&l, &e, 1, 2).unwrap();
        assert_eq!(a, ab); // no intermediate exponents to cross out
        for c in 0..3 {
            assert_eq!(ab[(0, c)], Rat::zero());
        }
        assert_eq!(det_bareiss(&ab), Rat::zero());
    }
}
