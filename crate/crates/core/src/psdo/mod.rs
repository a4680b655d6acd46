//! Truncated pseudo-differential calculus: formal series
//! `sum_{r=0}^{I} a_r d^{t-r}` of possibly non-integer (or symbolic) order
//! `t`, with product, inverse, residue and no-monodromy predicates, regular
//! singularity at infinity, Wronskian factorization, and the full ratio
//! check for quotients of monodromy-free operators.

mod constructions;
mod hooks;
mod infinity;
mod ratio;
mod residue;
mod wronskian;

pub use constructions::{
    desk_denominator, desk_numerator, operator_from_poly_kernel, power_kernel_operator,
    standard_operator,
};
pub use hooks::{hook_data, hook_partition, HookData};
pub use infinity::{regular_at_infinity, InfinityRecord};
pub use ratio::{
    build_ratio, embed_global, localize_global, ratio_check, RatioConfig, RatioRecord, RatioReport,
};
pub use residue::{
    has_no_monodromy, has_residue, residue_indicial, residue_obstruction_matrix, ConditionRecord,
    ResidueReport,
};
pub use wronskian::{factor_product, wronskian, wronskian_factorize};

use std::fmt;

use crate::rings::{falling_factorial, DiffRing, FieldLike, Laurent, Rat, RatFn, Ring};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum PsdoError {
    #[error("truncation depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("residue precondition violated: {0}")]
    ResidueViolated(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Fuchs(#[from] crate::fuchs::FuchsError),
}

/// Truncated pseudo-differential operator `sum_{r=0}^{depth} a_r d^{t-r}`.
/// The order `t` lives in the coefficient ring as a scalar-like element
/// (a rational constant, or the symbol `w`); coefficients are Laurent series
/// for local operators and rational functions of `u` for global ones.
#[derive(Clone, PartialEq)]
pub struct PseudoDiffOp<C: Ring> {
    order: C,
    coeffs: Vec<C>,
}

/// Local flavor: Laurent-series coefficients in `x`.
pub type LocalPsdo = PseudoDiffOp<Laurent<Rat>>;
/// Global flavor: partial-fraction rational coefficients in `u`.
pub type GlobalPsdo = PseudoDiffOp<RatFn<Rat>>;

impl<C: DiffRing> PseudoDiffOp<C> {
    pub fn new(order: C, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "need at least the leading coefficient");
        PseudoDiffOp { order, coeffs }
    }

    /// `d^t` truncated to the given depth.
    pub fn power_of_d(order: C, depth: usize) -> Self {
        let mut coeffs = vec![C::zero(); depth + 1];
        coeffs[0] = C::one();
        PseudoDiffOp { order, coeffs }
    }

    pub fn order(&self) -> &C {
        &self.order
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `d^{t-r}`.
    pub fn coeff(&self, r: usize) -> &C {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, depth: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(depth + 1);
        coeffs.resize(depth + 1, C::zero());
        PseudoDiffOp {
            order: self.order.clone(),
            coeffs,
        }
    }

    pub fn map_coeffs<D: DiffRing>(&self, order: D, f: impl Fn(&C) -> D) -> PseudoDiffOp<D> {
        PseudoDiffOp {
            order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PsdoError> {
        if self.order != other.order {
            return Err(PsdoError::BadInput("order mismatch in addition".into()));
        }
        if self.depth() != other.depth() {
            return Err(PsdoError::DepthMismatch {
                left: self.depth(),
                right: other.depth(),
            });
        }
        Ok(PseudoDiffOp {
            order: self.order.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    /// Associative product: orders add, and
    /// `d^mu a = sum_i ff(mu, i)/i! (d^i a) d^{mu-i}`.
    pub fn mul(&self, other: &Self) -> Result<Self, PsdoError> {
        if self.depth() != other.depth() {
            return Err(PsdoError::DepthMismatch {
                left: self.depth(),
                right: other.depth(),
            });
        }
        let depth = self.depth();
        let mut out = vec![C::zero(); depth + 1];
        for (r, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // mu = t1 - r
            let mu = self.order.sub_ref(&C::from_int(r as i64));
            let mut db = other.coeffs.clone();
            for i in 0..=depth - r {
                let scalar = falling_factorial(&mu, i).scale(&Rat::factorial(i).inv().unwrap());
                if !scalar.is_zero() {
                    for (s, b) in db.iter().enumerate().take(depth - r - i + 1) {
                        if b.is_zero() {
                            continue;
                        }
                        let l = r + i + s;
                        out[l] = out[l].add_ref(&a.mul_ref(&scalar).mul_ref(b));
                    }
                }
                if i < depth - r {
                    for b in db.iter_mut() {
                        *b = b.derivative();
                    }
                }
            }
        }
        Ok(PseudoDiffOp {
            order: self.order.add_ref(&other.order),
            coeffs: out,
        })
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        PseudoDiffOp {
            order: self.order.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PsdoError> {
        self.add(&PseudoDiffOp {
            order: other.order.clone(),
            coeffs: other.coeffs.iter().map(|c| c.neg_ref()).collect(),
        })
    }

    /// Is the operator the identity as far as the truncations can see?
    pub fn is_one_to_depth(&self) -> bool {
        self.coeffs[0].sub_ref(&C::one()).is_zero() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Two-sided inverse to the truncation depth: solves the triangular
    /// system `self * X = 1` (the leading coefficient must be invertible).
    pub fn inverse(&self) -> Result<Self, PsdoError>
    where
        C: FieldLike,
    {
        let depth = self.depth();
        let a0_inv = self.coeffs[0]
            .try_inv()
            .ok_or(PsdoError::NonInvertibleLeading)?;
        let neg_order = self.order.neg_ref();
        let mut x: Vec<C> = Vec::with_capacity(depth + 1);
        x.push(a0_inv.clone());
        for l in 1..=depth {
            // coefficient of d^{-l}: sum over r + i + s = l of
            // a_r ff(t - r, i)/i! d^i(x_s), with the s = l (r = i = 0) term
            // isolated as a_0 x_l
            let mut acc = C::zero();
            for r in 0..=l {
                let mu = self.order.sub_ref(&C::from_int(r as i64));
                for s in 0..l.min(l - r + 1) {
                    let i = l - r - s;
                    if s == l {
                        continue;
                    }
                    let scalar = falling_factorial(&mu, i).scale(&Rat::factorial(i).inv().unwrap());
                    if scalar.is_zero() {
                        continue;
                    }
                    let mut ds = x[s].clone();
                    for _ in 0..i {
                        ds = ds.derivative();
                    }
                    acc = acc.add_ref(&self.coeffs[r].mul_ref(&scalar).mul_ref(&ds));
                }
            }
            x.push(acc.neg_ref().mul_ref(&a0_inv));
        }
        Ok(PseudoDiffOp {
            order: neg_order,
            coeffs: x,
        })
    }
}

impl<C: Ring> fmt::Display for PseudoDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^({})", self.order)?;
        for (r, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                write!(f, " + ({c}) d^({} - {r})", self.order)?;
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for PseudoDiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::WPoly;

    type SymLocal = PseudoDiffOp<Laurent<WPoly>>;

    fn x_mult(depth: usize) -> SymLocal {
        // multiplication by x, as an operator of order 0
        let mut coeffs = vec![Laurent::zero(); depth + 1];
        coeffs[0] = Laurent::x();
        PseudoDiffOp::new(Laurent::zero(), coeffs)
    }

    #[test]
    fn symbolic_leibniz() {
        // d^t x = x d^t + t d^{t-1}
        let depth = 4;
        let t = Laurent::constant(WPoly::var());
        let d_t = SymLocal::power_of_d(t.clone(), depth);
        let prod = d_t.mul(&x_mult(depth)).unwrap();
        assert_eq!(*prod.coeff(0), Laurent::x());
        assert_eq!(*prod.coeff(1), t);
        for r in 2..=depth {
            assert!(prod.coeff(r).is_zero());
        }
    }

    #[test]
    fn unit_is_neutral() {
        let depth = 3;
        let d_t: LocalPsdo = PseudoDiffOp::power_of_d(Laurent::constant(Rat::new(5, 2)), depth);
        let one = LocalPsdo::power_of_d(Laurent::zero(), depth);
        assert_eq!(d_t.mul(&one).unwrap(), d_t);
        assert_eq!(one.mul(&d_t).unwrap(), d_t);
    }

    #[test]
    fn first_order_factors_commutator() {
        // (d - s/x)(d + s/x) - (d + s/x)(d - s/x) = 2s/x^2
        let depth = 3;
        let trunc = 8;
        let s = Rat::from(3);
        let factor = |sign: i64| -> LocalPsdo {
            let mut coeffs = vec![Laurent::zero_to(trunc); depth + 1];
            coeffs[0] = Laurent::one().truncate(trunc);
            coeffs[1] = Laurent::monomial(-1, &s * &Rat::from(sign)).truncate(trunc);
            PseudoDiffOp::new(Laurent::constant(Rat::one()), coeffs)
        };
        // (d - s/x)(d + s/x) = d^2 - s/x^2 - s^2/x^2, and the reverse order
        // flips the first correction: the two products differ by 2s/x^2
        let ab = factor(-1).mul(&factor(1)).unwrap();
        let ba = factor(1).mul(&factor(-1)).unwrap();
        let diff = ba.sub(&ab).unwrap();
        assert!(diff.coeff(0).is_zero() && diff.coeff(1).is_zero());
        assert_eq!(diff.coeff(2).coeff(-2), Some(Rat::from(6)));
    }

    #[test]
    fn inverse_is_two_sided() {
        let depth = 5;
        let trunc = 10;
        // d + q/x + x
        let mut coeffs = vec![Laurent::zero_to(trunc); depth + 1];
        coeffs[0] = Laurent::one().truncate(trunc);
        coeffs[1] = Laurent::monomial(-1, Rat::from(2))
            .add_ref(&Laurent::x())
            .truncate(trunc);
        let d: LocalPsdo = PseudoDiffOp::new(Laurent::constant(Rat::one()), coeffs);
        let inv = d.inverse().unwrap();
        let left = d.mul(&inv).unwrap();
        let right = inv.mul(&d).unwrap();
        assert!(left.is_one_to_depth(), "D D^-1 = {left}");
        assert!(right.is_one_to_depth(), "D^-1 D = {right}");
        // first correction: x_1 = -(q/x + x)
        assert_eq!(inv.coeff(1).coeff(-1), Some(Rat::from(-2)));
    }
}
