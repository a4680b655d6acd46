//! Fuchsian differential operators with prescribed rational poles, their
//! local data (indicial polynomials, obstruction determinants, Frobenius
//! series), the vanishing conditions cutting out monodromy-free operators,
//! and the rank-stabilized interpolation of those conditions.

mod compare;
mod frobenius;
mod ideal;
mod local;
mod obstruction;
mod stabilized;

pub use compare::{
    high_index_elimination_check, mutual_reduction_report, vandermonde_derivative_det,
    CompareReport, LinearReducer, ReductionRecord,
};
pub use frobenius::{frobenius_solve, FrobeniusSolution};
pub use ideal::{no_monodromy_check, GenRecord, MonodromyReport};
pub use local::LocalOp;
pub use obstruction::obstruction_matrices;
pub use stabilized::{
    eval_generator, indicial_to_shifted_values, infinity_taylor_coeff, project_to_order,
    raw_generators, shifted_basis_coeffs, shifted_to_indicial_values, stabilized_generators,
    universal_local, StabMode, StabilizedSet,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rings::{MPoly, Rat, RatFn, Ring, YVar};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum FuchsError {
    #[error("invalid operator data: {0}")]
    BadOperator(String),
    #[error("series obstruction at level {level}: value {value}")]
    Obstruction { level: usize, value: Rat },
    #[error("indicial value at a non-exponent level is not invertible (level {level})")]
    NonUnitIndicial { level: usize },
    #[error("residue condition fails at exponent {exponent}: value {value}")]
    ResidueFailure { exponent: i64, value: Rat },
    #[error("truncation horizon exceeded: needed coefficient at order {needed}")]
    HorizonExceeded { needed: i64 },
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// Monic operator `d^n + sum_{i,j,a} c_{ij}^{(a)} (u - z_a)^{-j} d^{n-i}`
/// with `1 <= j <= i <= n` and poles at the distinct rational points `z`.
#[derive(Clone, PartialEq)]
pub struct FuchsOp<R: Ring> {
    n: usize,
    z: Vec<Rat>,
    coeffs: BTreeMap<(usize, usize, usize), R>,
}

impl<R: Ring> FuchsOp<R> {
    pub fn new(
        n: usize,
        z: Vec<Rat>,
        coeffs: BTreeMap<(usize, usize, usize), R>,
    ) -> Result<Self, FuchsError> {
        if n == 0 {
            return Err(FuchsError::BadOperator("order must be positive".into()));
        }
        for (i, a) in z.iter().enumerate() {
            for b in z.iter().skip(i + 1) {
                if a == b {
                    return Err(FuchsError::BadOperator(format!("repeated pole {a}")));
                }
            }
        }
        for &(i, j, a) in coeffs.keys() {
            if !(1 <= j && j <= i && i <= n) || a == 0 || a > z.len() {
                return Err(FuchsError::BadOperator(format!(
                    "coefficient index (i={i}, j={j}, a={a}) out of range"
                )));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(FuchsOp { n, z, coeffs })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn poles(&self) -> &[Rat] {
        &self.z
    }

    pub fn num_points(&self) -> usize {
        self.z.len()
    }

    pub fn coeff(&self, i: usize, j: usize, a: usize) -> R {
        self.coeffs.get(&(i, j, a)).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeff_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &R)> {
        self.coeffs.iter()
    }

    /// Coefficient of `d^{n-i}` as a rational function of `u`. Index 0 gives
    /// the leading 1.
    pub fn coeff_fn(&self, i: usize) -> RatFn<R> {
        if i == 0 {
            return RatFn::one();
        }
        let mut acc = RatFn::zero();
        for ((ci, j, a), c) in &self.coeffs {
            if *ci == i {
                acc = acc.add_ref(&RatFn::pole_term(
                    self.z[a - 1].clone(),
                    *j as u32,
                    c.clone(),
                ));
            }
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> FuchsOp<S> {
        FuchsOp {
            n: self.n,
            z: self.z.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl FuchsOp<MPoly> {
    /// The universal operator: coefficient `(i, j, a)` is the free generator
    /// `y[i,j;a]`.
    pub fn universal(n: usize, z: Vec<Rat>) -> Result<Self, FuchsError> {
        let m = z.len();
        let mut coeffs = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=i {
                for a in 1..=m {
                    coeffs.insert((i, j, a), MPoly::var(YVar::new(i, j, a)));
                }
            }
        }
        FuchsOp::new(n, z, coeffs)
    }
}

impl FuchsOp<Rat> {
    /// Substitutes numeric values into a universal operator.
    pub fn from_universal(op: &FuchsOp<MPoly>, values: &dyn Fn(YVar) -> Rat) -> Self {
        let coeffs = op
            .coeffs
            .iter()
            .map(|(k, c)| (*k, c.subst_y(values).as_constant().expect("w-free")))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FuchsOp {
            n: op.n,
            z: op.z.clone(),
            coeffs,
        }
    }
}

impl<R: Ring> fmt::Display for FuchsOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{}", self.n)?;
        for ((i, j, a), c) in &self.coeffs {
            write!(f, " + ({c})/(u-{})^{j} d^{}", self.z[a - 1], self.n - i)?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for FuchsOp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct FuchsOpWire {
    order: usize,
    poles: Vec<Rat>,
    coeffs: Vec<CoeffWire>,
}

#[derive(Serialize, Deserialize)]
struct CoeffWire {
    i: usize,
    j: usize,
    a: usize,
    value: Rat,
}

impl Serialize for FuchsOp<Rat> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = FuchsOpWire {
            order: self.n,
            poles: self.z.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j, a), c)| CoeffWire {
                    i,
                    j,
                    a,
                    value: c.clone(),
                })
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FuchsOp<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = FuchsOpWire::deserialize(de)?;
        let coeffs = wire
            .coeffs
            .into_iter()
            .map(|c| ((c.i, c.j, c.a), c.value))
            .collect();
        FuchsOp::new(wire.order, wire.poles, coeffs).map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing local exponents `m_1 < ... < m_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct Exponents(Vec<i64>);

impl Exponents {
    pub fn new(list: Vec<i64>) -> Result<Self, FuchsError> {
        if list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FuchsError::BadOperator(
                "exponents must be strictly increasing".into(),
            ));
        }
        Ok(Exponents(list))
    }

    /// Exponents prescribed by a dominant weight: `m_{n+1-i} = n + nu_i - i`.
    pub fn from_weight(weight: &[i64]) -> Result<Self, FuchsError> {
        let n = weight.len();
        if weight.windows(2).any(|w| w[0] < w[1]) {
            return Err(FuchsError::BadOperator(
                "weight must be dominant (weakly decreasing)".into(),
            ));
        }
        let list = (1..=n)
            .rev()
            .map(|i| n as i64 + weight[i - 1] - i as i64)
            .collect();
        Exponents::new(list)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `m_i`, 1-based.
    pub fn m(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn list(&self) -> &[i64] {
        &self.0
    }

    pub fn contains(&self, v: i64) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}
