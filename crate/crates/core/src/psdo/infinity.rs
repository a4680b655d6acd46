//! Regular singularity at infinity for global pseudo-differential operators:
//! the expansion of the `i`-th coefficient in `x = 1/u` must have valuation
//! at least `i`.

use serde::Serialize;

use crate::rings::Rat;

use super::GlobalPsdo;

#[derive(Clone, Debug, Serialize)]
pub struct InfinityRecord {
    pub index: usize,
    /// Lowest exponent with a nonzero coefficient, if any below the bound.
    pub violation: Option<(i64, Rat)>,
    pub ok: bool,
}

/// Checks `val_infinity(a_i) >= i` for every coefficient up to the depth.
pub fn regular_at_infinity(op: &GlobalPsdo) -> (bool, Vec<InfinityRecord>) {
    let mut records = Vec::new();
    let mut all_ok = true;
    for i in 0..=op.depth() {
        let series = op.coeff(i).expand_at_infinity(i as i64);
        let mut violation = None;
        if let Some(v) = series.valuation() {
            if v < i as i64 {
                violation = Some((v, series.coeff_or_zero(v)));
            }
        }
        let ok = violation.is_none();
        all_ok &= ok;
        records.push(InfinityRecord {
            index: i,
            violation,
            ok,
        });
    }
    (all_ok, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psdo::PseudoDiffOp;
    use crate::rings::{RatFn, Ring};

    #[test]
    fn plain_power_is_regular() {
        let op: GlobalPsdo = PseudoDiffOp::power_of_d(RatFn::constant(Rat::new(5, 3)), 4);
        let (ok, _) = regular_at_infinity(&op);
        assert!(ok);
    }

    #[test]
    fn simple_pole_is_regular() {
        // d + 1/(u - z): expansion x + z x^2 + ..., valuation 1
        let mut coeffs = vec![RatFn::zero(); 5];
        coeffs[0] = RatFn::one();
        coeffs[1] = RatFn::pole_term(Rat::from(2), 1, Rat::one());
        let op = GlobalPsdo::new(RatFn::constant(Rat::one()), coeffs);
        let (ok, _) = regular_at_infinity(&op);
        assert!(ok);
    }

    #[test]
    fn polynomial_coefficient_is_not() {
        // d + u
        let mut coeffs = vec![RatFn::zero(); 3];
        coeffs[0] = RatFn::one();
        coeffs[1] = RatFn::var();
        let op = GlobalPsdo::new(RatFn::constant(Rat::one()), coeffs);
        let (ok, records) = regular_at_infinity(&op);
        assert!(!ok);
        assert_eq!(records[1].violation.as_ref().unwrap().0, -1);
    }
}
