//! Series solutions at a regular singular point by the indicial recursion.
//!
//! With exponents `m_1 < ... < m_n`, the candidate solution at `m_i` is
//! `x^{m_i} (1 + a_1 x + ...)`; level `l` of the recursion determines `a_l`
//! unless `m_i + l` is itself an exponent, where the gauge sets `a_l = 0` and
//! the recursion instead imposes a consistency value that must vanish.

use crate::rings::{Laurent, Rat, Ring};

use super::{Exponents, FuchsError, LocalOp};

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSolution {
    /// The exponent `m_i` the solution starts at.
    pub exponent: i64,
    /// `a_0 = 1, a_1, ..., a_depth`.
    pub coeffs: Vec<Rat>,
}

impl FrobeniusSolution {
    pub fn series(&self) -> Laurent<Rat> {
        Laurent::new(
            self.exponent,
            self.coeffs.clone(),
            self.exponent + self.coeffs.len() as i64 - 1,
        )
    }
}

/// Solves for the series at exponent index `which` (1-based), to `depth`
/// coefficients past the leading one.
///
/// Requires the residue condition `r_0(m_k) = 0` for every `k`; a nonzero
/// consistency value at a degenerate level is returned as an obstruction.
pub fn frobenius_solve(
    local: &LocalOp<Rat>,
    exps: &Exponents,
    which: usize,
    depth: usize,
) -> Result<FrobeniusSolution, FuchsError> {
    assert!(1 <= which && which <= exps.n());
    // residue condition
    for k in 1..=exps.n() {
        let v = local.indicial(0, &Rat::from(exps.m(k)))?;
        if !v.is_zero() {
            return Err(FuchsError::ResidueFailure {
                exponent: exps.m(k),
                value: v,
            });
        }
    }
    let mi = exps.m(which);
    let mut coeffs = vec![Rat::one()];
    for l in 1..=depth {
        let mut s = Rat::zero();
        for (j, aj) in coeffs.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let r = local.indicial((l - j) as i64, &Rat::from(mi + j as i64))?;
            s += aj * &r;
        }
        if exps.contains(mi + l as i64) {
            if !s.is_zero() {
                return Err(FuchsError::Obstruction { level: l, value: s });
            }
            coeffs.push(Rat::zero());
        } else {
            let r0 = local.indicial(0, &Rat::from(mi + l as i64))?;
            let inv = r0.inv().ok_or(FuchsError::NonUnitIndicial { level: l })?;
            coeffs.push(s.neg_ref() * inv);
        }
    }
    Ok(FrobeniusSolution {
        exponent: mi,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchs::FuchsOp;
    use std::collections::BTreeMap;

    fn op(n: usize, entries: &[(usize, usize, i64)]) -> FuchsOp<Rat> {
        let coeffs = entries
            .iter()
            .map(|&(i, j, v)| ((i, j, 1), Rat::from(v)))
            .collect();
        FuchsOp::new(n, vec![Rat::from(0)], coeffs).unwrap()
    }

    #[test]
    fn plain_second_derivative() {
        let d = op(2, &[]);
        let l = d.localize(1, 8).unwrap();
        let e = Exponents::new(vec![0, 1]).unwrap();
        let s = frobenius_solve(&l, &e, 1, 6).unwrap();
        assert_eq!(s.exponent, 0);
        assert!(s.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inverse_power_solution() {
        // d^2 - 2 x^{-2}: solution x^{-1} exactly
        let d = op(2, &[(2, 2, -2)]);
        let l = d.localize(1, 8).unwrap();
        let e = Exponents::new(vec![-1, 2]).unwrap();
        let s = frobenius_solve(&l, &e, 1, 6).unwrap();
        assert_eq!(s.exponent, -1);
        assert!(s.coeffs[1..].iter().all(|c| c.is_zero()));
        // residual check: the operator annihilates the series
        let res = l.apply(&s.series());
        assert!(res.is_zero_to_trunc(), "residual {res}");
    }

    #[test]
    fn obstruction_matches_reduced_determinant() {
        // d^2 - x^{-1} d + c x^{-1}, exponents (0, 2): obstruction at level 2
        // with value c^2
        let c = 7;
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1, 1), Rat::from(-1));
        coeffs.insert((2, 1, 1), Rat::from(c));
        let d = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        let l = d.localize(1, 8).unwrap();
        let e = Exponents::new(vec![0, 2]).unwrap();
        match frobenius_solve(&l, &e, 1, 6) {
            Err(FuchsError::Obstruction { level, value }) => {
                assert_eq!(level, 2);
                assert_eq!(value, Rat::from(c * c));
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn infinite_series_solution_has_zero_residual() {
        // first order with solution x^2 (1+x)^3: g'/g = 2/x + 3/(1+x);
        // localized at 0 the coefficient expands geometrically
        // d - 2/x - 3 + 3x - 3x^2 + ...
        let trunc = 10;
        let geo = Laurent::new(
            0,
            (0..=trunc)
                .map(|k| Rat::from(if k % 2 == 0 { 3 } else { -3 }))
                .collect(),
            trunc,
        );
        let b1 = Laurent::monomial(-1, Rat::from(-2))
            .truncate(trunc)
            .add_ref(&geo.neg_ref());
        let l = LocalOp::new(1, vec![Laurent::one().truncate(trunc), b1]);
        let e = Exponents::new(vec![2]).unwrap();
        let s = frobenius_solve(&l, &e, 1, 6).unwrap();
        // (1+x)^3 = 1 + 3x + 3x^2 + x^3
        assert_eq!(s.coeffs[1], Rat::from(3));
        assert_eq!(s.coeffs[2], Rat::from(3));
        assert_eq!(s.coeffs[3], Rat::from(1));
        assert_eq!(s.coeffs[4], Rat::zero());
        let res = l.apply(&s.series());
        assert!(res.is_zero_to_trunc(), "residual {res}");
    }
}
