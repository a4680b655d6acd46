//! Verified constructors for monodromy-free operators. Operators with
//! prescribed exponent data form finite sets, so they are solved for, not
//! sampled: either from an explicit polynomial kernel, or in the closed-form
//! single-point case.

use std::collections::BTreeMap;

use crate::fuchs::{no_monodromy_check, Exponents, FuchsError, FuchsOp};
use crate::linalg::{solve, Mat};
use crate::rings::{falling_factorial, DiffRing, MPoly, Rat, RatFn, Ring, WPoly, YVar};

use super::PsdoError;

/// Operator with kernel spanned by pure powers `(u - z_a)^{m_i}` at one pole:
/// all coefficients sit at that pole with `j = i`, and the values solve
/// `sum_i E_i ff(alpha, n - i) = prod_i (alpha - m_i)`.
pub fn power_kernel_operator(
    z: &[Rat],
    point: usize,
    weight: &[i64],
) -> Result<FuchsOp<Rat>, FuchsError> {
    let n = weight.len();
    let exps = Exponents::from_weight(weight)?;
    // expand prod (alpha - m_i) in the falling-factorial basis by repeated
    // subtraction of the leading term
    let mut target = WPoly::one();
    for i in 1..=n {
        target = target.mul_ref(&WPoly::var().sub_ref(&WPoly::from(exps.m(i))));
    }
    let w = WPoly::var();
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // coefficient of ff(alpha, n - i)
        let ff = falling_factorial(&w, n - i);
        let deg = n - i;
        let lead = target.coeff(deg);
        values.push(lead.clone());
        target = target.sub_ref(&ff.scale(&lead));
    }
    assert!(target.is_zero());
    let mut coeffs = BTreeMap::new();
    for (i, v) in values.iter().enumerate().skip(1) {
        if !v.is_zero() {
            coeffs.insert((i, i, point), v.clone());
        }
    }
    FuchsOp::new(n, z.to_vec(), coeffs)
}

/// Solves for the operator of the given order annihilating the span of the
/// supplied polynomials (coefficients listed by ascending degree), with poles
/// restricted to `z`. Errors when no operator of that shape exists.
pub fn operator_from_poly_kernel(
    kernel: &[Vec<Rat>],
    z: &[Rat],
) -> Result<FuchsOp<Rat>, PsdoError> {
    let n = kernel.len();
    if n == 0 {
        return Err(PsdoError::BadInput("empty kernel".into()));
    }
    let m = z.len();
    let universal = FuchsOp::<MPoly>::universal(n, z.to_vec()).map_err(PsdoError::Fuchs)?;
    // unknowns in a fixed order
    let mut vars: Vec<YVar> = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            for a in 1..=m {
                vars.push(YVar::new(i, j, a));
            }
        }
    }
    // rows: for each kernel element, the coefficients of D(p) over the
    // partial-fraction basis must vanish
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for p in kernel {
        let poly = RatFn::from_poly(p.clone());
        // derivatives of p
        let mut ders = vec![poly.clone()];
        for _ in 0..n {
            ders.push(ders.last().unwrap().derivative());
        }
        // D(p) = p^(n) + sum y_{ija} (u - z_a)^{-j} p^{(n-i)}
        // basis: polynomial coefficients up to deg p, and pole coefficients
        // (a, order) up to n + deg p
        let deg = p.len();
        let mut basis: Vec<(Option<(usize, u32)>, usize)> = Vec::new();
        for k in 0..deg {
            basis.push((None, k));
        }
        for a in 0..m {
            for j in 1..=(n + deg) as u32 {
                basis.push((Some((a, j)), 0));
            }
        }
        let coeff_of = |f: &RatFn<Rat>, b: &(Option<(usize, u32)>, usize)| -> Rat {
            match b {
                (None, k) => f.poly_coeff(*k),
                (Some((a, j)), _) => f.pole_coeff(&z[*a], *j),
            }
        };
        let mut cols: Vec<RatFn<Rat>> = Vec::with_capacity(vars.len());
        for v in &vars {
            let term = RatFn::pole_term(z[(v.point - 1) as usize].clone(), v.j as u32, Rat::one())
                .mul_ref(&ders[n - v.i as usize]);
            cols.push(term);
        }
        let lead = ders[n].clone();
        for b in &basis {
            let row: Vec<Rat> = cols.iter().map(|c| coeff_of(c, b)).collect();
            if row.iter().all(|x| x.is_zero()) && coeff_of(&lead, b).is_zero() {
                continue;
            }
            rows.push(row);
            rhs.push(coeff_of(&lead, b).neg_ref());
        }
    }
    let mat = Mat::from_rows(rows);
    let sol = solve(&mat, &rhs).ok_or_else(|| {
        PsdoError::BadInput("kernel does not match an operator of this pole shape".into())
    })?;
    let values: BTreeMap<YVar, Rat> = vars.into_iter().zip(sol).collect();
    let op = FuchsOp::from_universal(&universal, &|v| {
        values.get(&v).cloned().unwrap_or_else(Rat::zero)
    });
    // re-verify: the operator must actually kill the kernel
    for p in kernel {
        let poly = RatFn::from_poly(p.clone());
        let mut acc = {
            let mut d = poly.clone();
            for _ in 0..n {
                d = d.derivative();
            }
            d
        };
        for i in 1..=n {
            let mut d = poly.clone();
            for _ in 0..(n - i) {
                d = d.derivative();
            }
            acc = acc.add_ref(&op.coeff_fn(i).mul_ref(&d));
        }
        if !acc.is_zero() {
            return Err(PsdoError::BadInput(
                "solver produced an operator that misses the kernel".into(),
            ));
        }
    }
    Ok(op)
}

/// The two-point order-2 operator with kernel `{2u^2 - u, u^3}`: exponent
/// data (1,3) at 0 and (0,2) at 1, i.e. weights (2,1) and (1,0).
pub fn desk_numerator() -> FuchsOp<Rat> {
    operator_from_poly_kernel(
        &[
            vec![Rat::from(0), Rat::from(-1), Rat::from(2)],
            vec![Rat::from(0), Rat::from(0), Rat::from(0), Rat::from(1)],
        ],
        &[Rat::from(0), Rat::from(1)],
    )
    .expect("desk kernel is consistent")
}

/// First-order operator with kernel `u^{-1}`: weight (-1) at 0, (0) at 1.
pub fn desk_denominator() -> FuchsOp<Rat> {
    let mut coeffs = BTreeMap::new();
    coeffs.insert((1, 1, 1), Rat::from(1));
    FuchsOp::new(1, vec![Rat::from(0), Rat::from(1)], coeffs).unwrap()
}

/// Builds and verifies an operator for the given per-point weights, when one
/// of the supported patterns applies: all weights trivial, or exactly one
/// nontrivial point (power kernel).
pub fn standard_operator(z: &[Rat], weights: &[Vec<i64>]) -> Result<FuchsOp<Rat>, PsdoError> {
    let n = weights
        .first()
        .map(|w| w.len())
        .ok_or_else(|| PsdoError::BadInput("need at least one point".into()))?;
    if weights.iter().any(|w| w.len() != n) {
        return Err(PsdoError::BadInput("weights must share the order".into()));
    }
    let nontrivial: Vec<usize> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.iter().any(|&x| x != 0))
        .map(|(a, _)| a)
        .collect();
    let op = match nontrivial.len() {
        0 => FuchsOp::new(n, z.to_vec(), BTreeMap::new()).map_err(PsdoError::Fuchs)?,
        1 => power_kernel_operator(z, nontrivial[0] + 1, &weights[nontrivial[0]])
            .map_err(PsdoError::Fuchs)?,
        _ => {
            return Err(PsdoError::BadInput(
                "no built-in construction for several nontrivial points; \
                 supply the operator explicitly"
                    .into(),
            ))
        }
    };
    let rep = no_monodromy_check(&op, weights).map_err(PsdoError::Fuchs)?;
    if !rep.passed {
        return Err(PsdoError::BadInput(
            "constructed operator fails its own monodromy check".into(),
        ));
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_kernel_closed_form() {
        // kernel {u, u^2} at 0: d^2 - 2/u d + 2/u^2
        let op = power_kernel_operator(&[Rat::from(0)], 1, &[1, 1]).unwrap();
        assert_eq!(op.coeff(1, 1, 1), Rat::from(-2));
        assert_eq!(op.coeff(2, 2, 1), Rat::from(2));
        let rep = no_monodromy_check(&op, &[vec![1, 1]]).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn desk_numerator_matches_hand_computation() {
        let op = desk_numerator();
        assert_eq!(op.coeff(1, 1, 1), Rat::from(-3));
        assert_eq!(op.coeff(1, 1, 2), Rat::from(-1));
        assert_eq!(op.coeff(2, 1, 1), Rat::from(-3));
        assert_eq!(op.coeff(2, 2, 1), Rat::from(3));
        assert_eq!(op.coeff(2, 1, 2), Rat::from(3));
        assert_eq!(op.coeff(2, 2, 2), Rat::zero());
        let rep = no_monodromy_check(&op, &[vec![2, 1], vec![1, 0]]).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn inconsistent_kernel_is_rejected() {
        // {1, u^2}: the annihilator d^2 - (1/u) d has a pole at 0 only, fine;
        // but {u+1, ...} with poles excluding -1 cannot work
        let r = operator_from_poly_kernel(
            &[
                vec![Rat::from(1), Rat::from(1)],
                vec![Rat::from(0), Rat::from(0), Rat::from(1)],
            ],
            &[Rat::from(0)],
        );
        assert!(r.is_err());
    }
}
