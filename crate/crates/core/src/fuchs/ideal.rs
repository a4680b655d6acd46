//! The vanishing conditions cutting out monodromy-free operators: indicial
//! roots and reduced obstruction determinants at every finite pole, plus the
//! pole-depth bounds of the expansion at infinity.

use serde::Serialize;

use crate::linalg::det_bareiss;
use crate::rings::{Rat, Ring};

use super::{obstruction_matrices, Exponents, FuchsError, FuchsOp};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenRecord {
    pub id: String,
    pub value: Rat,
    pub is_zero: bool,
}

impl GenRecord {
    pub fn new(id: String, value: Rat) -> Self {
        let is_zero = value.is_zero();
        GenRecord { id, value, is_zero }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub records: Vec<GenRecord>,
    pub passed: bool,
}

impl MonodromyReport {
    fn from_records(mut records: Vec<GenRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = records.iter().all(|r| r.is_zero);
        MonodromyReport { records, passed }
    }
}

/// Evaluates every generator of the no-monodromy ideal on a numeric operator:
/// for each pole the indicial roots at the prescribed exponents and all
/// reduced obstruction determinants, and at infinity the coefficients below
/// the regular-singularity depth. The operator is monodromy free with the
/// prescribed data exactly when every record vanishes.
pub fn no_monodromy_check(
    op: &FuchsOp<Rat>,
    weights: &[Vec<i64>],
) -> Result<MonodromyReport, FuchsError> {
    let n = op.order();
    if weights.len() != op.num_points() {
        return Err(FuchsError::BadOperator("need one weight per pole".into()));
    }
    let mut records = Vec::new();
    for (a, weight) in weights.iter().enumerate() {
        if weight.len() != n {
            return Err(FuchsError::BadOperator(format!(
                "weight at point {} must have {n} entries",
                a + 1
            )));
        }
        let exps = Exponents::from_weight(weight)?;
        let spread = exps.m(n) - exps.m(1);
        let local = op.localize(a + 1, spread + 1)?;
        for k in 1..=n {
            let v = local.indicial(0, &Rat::from(exps.m(k)))?;
            records.push(GenRecord::new(format!("z{}/r0[{k}]", a + 1), v));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let (_, red) = obstruction_matrices(&local, &exps, i, j)?;
                records.push(GenRecord::new(
                    format!("z{}/detA[{i},{j}]", a + 1),
                    det_bareiss(&red),
                ));
            }
        }
    }
    let inf = op.localize_infinity(1);
    for i in 1..=n {
        for jj in (-2 * (i as i64) + 1)..=(-(i as i64) - 1) {
            records.push(GenRecord::new(format!("inf/b[{i},{jj}]"), inf.b(i, jj)?));
        }
    }
    Ok(MonodromyReport::from_records(records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn plain_operator_with_trivial_weight_passes() {
        let d: FuchsOp<Rat> = FuchsOp::new(2, vec![Rat::from(0)], BTreeMap::new()).unwrap();
        let rep = no_monodromy_check(&d, &[vec![0, 0]]).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn kernel_power_operator_passes() {
        // kernel {x, x^2} at 0: D = d^2 - (2/x) d + 2/x^2, weight (1, 1)...
        // exponents (1, 2) correspond to nu = (1, 1): m_{2} = 2+1-1, m_1 = 2+1-2
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1, 1), Rat::from(-2));
        coeffs.insert((2, 2, 1), Rat::from(2));
        let d = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        let rep = no_monodromy_check(&d, &[vec![1, 1]]).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn perturbation_fails_with_nonzero_generator() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1, 1), Rat::from(-1));
        coeffs.insert((2, 1, 1), Rat::from(3));
        let d = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        // r_0 roots are (0, 2) here (weight (1, 0)); the determinant condition fails
        let rep = no_monodromy_check(&d, &[vec![1, 0]]).unwrap();
        assert!(!rep.passed);
        let det = rep.records.iter().find(|r| r.id == "z1/detA[1,2]").unwrap();
        assert_eq!(det.value, Rat::from(9));
    }
}
