//! Wronskian factorization of a monodromy-free local operator into first
//! order factors `d - g'/g`.

use crate::fuchs::{frobenius_solve, Exponents, LocalOp};
use crate::linalg::Mat;
use crate::rings::{DiffRing, Laurent, Rat, Ring};

use super::{LocalPsdo, PsdoError, PseudoDiffOp};

/// `W(h_1, ..., h_k) = det(d^{j-1} h_i)`.
pub fn wronskian(h: &[Laurent<Rat>]) -> Laurent<Rat> {
    let k = h.len();
    let mut rows = Vec::with_capacity(k);
    for f in h {
        let mut row = Vec::with_capacity(k);
        let mut d = f.clone();
        for _ in 0..k {
            row.push(d.clone());
            d = d.derivative();
        }
        rows.push(row);
    }
    let m = Mat::from_rows(rows);
    det_laurent(&m)
}

fn det_laurent(m: &Mat<Laurent<Rat>>) -> Laurent<Rat> {
    // cofactor expansion; the matrices here stay tiny
    let n = m.rows;
    if n == 0 {
        return Laurent::one();
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = Laurent::zero();
    for r in 0..n {
        if m[(r, 0)].is_zero() {
            continue;
        }
        let sub = m.minor(&[r], &[0]);
        let term = m[(r, 0)].mul_ref(&det_laurent(&sub));
        acc = if r % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

/// Factorizes a monodromy-free local operator with the given exponents into
/// first-order local factors `d - g_i'/g_i` with
/// `g_i = W(f_1..f_i)/W(f_1..f_{i-1})`. The product of the returned factors
/// reproduces the operator to the requested depth; the localized input must
/// be expanded at least to `depth + spread + order + 4`.
pub fn wronskian_factorize(
    local: &LocalOp<Rat>,
    exps: &Exponents,
    depth: usize,
) -> Result<Vec<LocalPsdo>, PsdoError> {
    let n = exps.n();
    let spread = (exps.m(n) - exps.m(1)).unsigned_abs() as i64;
    let reserve = depth as i64 + spread + n as i64 + 4;
    let sols: Vec<Laurent<Rat>> = (1..=n)
        .map(|i| Ok(frobenius_solve(local, exps, i, reserve as usize)?.series()))
        .collect::<Result<_, PsdoError>>()?;
    let mut wronskians = Vec::with_capacity(n + 1);
    wronskians.push(Laurent::one());
    for i in 1..=n {
        let w = wronskian(&sols[..i]);
        if w.is_zero() {
            return Err(PsdoError::BadInput(
                "vanishing wronskian in factorization".into(),
            ));
        }
        wronskians.push(w);
    }
    let mut factors = Vec::with_capacity(n);
    for i in (1..=n).rev() {
        let g = wronskians[i]
            .try_div(&wronskians[i - 1])
            .ok_or(PsdoError::NonInvertibleLeading)?;
        let ratio = g
            .derivative()
            .try_div(&g)
            .ok_or(PsdoError::NonInvertibleLeading)?;
        let mut coeffs = vec![Laurent::zero_to(ratio.trunc()); depth + 1];
        coeffs[0] = Laurent::one().truncate(ratio.trunc() + 1);
        coeffs[1] = ratio.neg_ref();
        factors.push(PseudoDiffOp::new(Laurent::constant(Rat::one()), coeffs));
    }
    Ok(factors)
}

/// Multiplies the factor list back together (left to right).
pub fn factor_product(factors: &[LocalPsdo]) -> Result<LocalPsdo, PsdoError> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchs::FuchsOp;
    use std::collections::BTreeMap;

    #[test]
    fn wronskian_hand_example() {
        // W(x^{-1}, x^2) = det [[x^-1, -x^-2], [x^2, 2x]] = 2 + 1 = 3
        let h = vec![
            Laurent::monomial(-1, Rat::one()).truncate(6),
            Laurent::monomial(2, Rat::one()).truncate(6),
        ];
        let w = wronskian(&h);
        assert_eq!(w.coeff(0), Some(Rat::from(3)));
        assert!(w.valuation() == Some(0));
    }

    #[test]
    fn first_order_factor_is_itself() {
        // d - 3/x
        let trunc = 14;
        let b1 = Laurent::monomial(-1, Rat::from(-3)).truncate(trunc);
        let local = LocalOp::new(1, vec![Laurent::one().truncate(trunc), b1]);
        let e = Exponents::new(vec![3]).unwrap();
        let factors = wronskian_factorize(&local, &e, 4).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].coeff(1).coeff(-1), Some(Rat::from(-3)));
    }

    #[test]
    fn factorization_round_trip() {
        // d^2 - 2 x^{-2}, exponents (-1, 2)
        let mut coeffs = BTreeMap::new();
        coeffs.insert((2, 2, 1), Rat::from(-2));
        let d: FuchsOp<Rat> = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        let local = d.localize(1, 24).unwrap();
        let e = Exponents::new(vec![-1, 2]).unwrap();
        let depth = 6;
        let factors = wronskian_factorize(&local, &e, depth).unwrap();
        assert_eq!(factors.len(), 2);
        // residues: the x^{-1} coefficients are minus the factor exponents,
        // summing to binom(n,2) - m_1 - m_2
        let r0 = factors[0].coeff(1).coeff(-1).unwrap();
        let r1 = factors[1].coeff(1).coeff(-1).unwrap();
        assert_eq!(r0, Rat::from(-1));
        assert_eq!(&r0 + &r1, Rat::zero());
        let prod = factor_product(&factors).unwrap();
        // compare against the localized operator to the available depth
        for i in 0..=2usize {
            let expect = local.series(i);
            let got = prod.coeff(i);
            for k in -(i as i64)..=4 {
                assert_eq!(
                    got.coeff(k).unwrap(),
                    expect.coeff(k).unwrap(),
                    "coeff {i}, x^{k}"
                );
            }
        }
        for i in 3..=depth {
            let got = prod.coeff(i);
            for k in -(i as i64)..=4 {
                assert_eq!(got.coeff(k).unwrap(), Rat::zero(), "coeff {i}, x^{k}");
            }
        }
    }
}
