//! Integer partitions, bipartitions restricted to one-sided pairs, and the
//! translation between bipartitions and `gl_n` weights.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::DiagramError;

/// Weakly decreasing sequence of positive parts; zero parts are dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `lambda_i` with 1-based `i`; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0) as usize;
        let parts = (1..=cols)
            .map(|j| self.0.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn standard_tableaux(&self) -> u64 {
        let n = self.size() as u64;
        let conj = self.conjugate();
        let mut numer: u64 = 1;
        for k in 1..=n {
            numer = numer.checked_mul(k).expect("tableau count overflow");
        }
        let mut hooks: u64 = 1;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 1..=len as usize {
                let arm = len as usize - c;
                let leg = conj.part(c) as usize - (r + 1);
                hooks = hooks
                    .checked_mul((arm + leg + 1) as u64)
                    .expect("hook product overflow");
            }
        }
        numer / hooks
    }

    /// Attach a row of length `s` on top; requires `s >= lambda_1`.
    pub fn attach_row(&self, s: u32) -> Result<Partition, DiagramError> {
        if s < self.part(1) {
            return Err(DiagramError::BadAttachment(format!(
                "row length {s} is shorter than the first part {}",
                self.part(1)
            )));
        }
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(s);
        parts.extend_from_slice(&self.0);
        Ok(Partition::new(parts))
    }

    /// Attach a column of height `q` on the left; requires `q >= len`.
    pub fn attach_col(&self, q: u32) -> Result<Partition, DiagramError> {
        if (q as usize) < self.len() {
            return Err(DiagramError::BadAttachment(format!(
                "column height {q} is shorter than the number of parts {}",
                self.len()
            )));
        }
        let parts = (1..=q as usize).map(|i| self.part(i) + 1).collect();
        Ok(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pair of partitions labelling an indecomposable object. This crate only
/// supports one-sided pairs: when both sides are nonzero the projecting
/// idempotents stop being polynomial in the loop variable, so no `Q[w]`-level
/// interpolation exists for them.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Bipartition {
    left: Partition,
    right: Partition,
}

impl Bipartition {
    pub fn new(left: Partition, right: Partition) -> Result<Self, DiagramError> {
        if !left.is_empty() && !right.is_empty() {
            return Err(DiagramError::TwoSidedBipartition);
        }
        Ok(Bipartition { left, right })
    }

    pub fn left(left: Partition) -> Self {
        Bipartition {
            left,
            right: Partition::empty(),
        }
    }

    pub fn right(right: Partition) -> Self {
        Bipartition {
            left: Partition::empty(),
            right,
        }
    }

    pub fn trivial() -> Self {
        Bipartition {
            left: Partition::empty(),
            right: Partition::empty(),
        }
    }

    pub fn left_part(&self) -> &Partition {
        &self.left
    }

    pub fn right_part(&self) -> &Partition {
        &self.right
    }

    /// Tensor degree `|lambda| + |mu|`.
    pub fn degree(&self) -> usize {
        self.left.size() + self.right.size()
    }

    /// The `gl_n` weight `(lambda_1, ..., 0, ..., -mu_2, -mu_1)`; requires
    /// `n >= l_lambda + l_mu` (below that the object maps to zero).
    pub fn weight(&self, n: usize) -> Result<Vec<i64>, DiagramError> {
        let (ll, lm) = (self.left.len(), self.right.len());
        if n < ll + lm {
            return Err(DiagramError::RankTooSmall { n, need: ll + lm });
        }
        let mut w = vec![0i64; n];
        for i in 0..ll {
            w[i] = self.left.part(i + 1) as i64;
        }
        for i in 0..lm {
            w[n - 1 - i] = -(self.right.part(i + 1) as i64);
        }
        Ok(w)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hook_counts() {
        assert_eq!(Partition::new(vec![1]).standard_tableaux(), 1);
        assert_eq!(Partition::new(vec![2, 1]).standard_tableaux(), 2);
        assert_eq!(Partition::new(vec![2, 2]).standard_tableaux(), 2);
        assert_eq!(Partition::new(vec![3, 1]).standard_tableaux(), 3);
        assert_eq!(Partition::new(vec![2, 1, 1]).standard_tableaux(), 3);
    }

    #[test]
    fn attachments() {
        let lam = Partition::new(vec![2, 1]);
        assert_eq!(lam.attach_row(3).unwrap(), Partition::new(vec![3, 2, 1]));
        assert_eq!(lam.attach_col(3).unwrap(), Partition::new(vec![3, 2, 1]));
        assert!(lam.attach_row(1).is_err());
        assert!(lam.attach_col(1).is_err());
        // attaching a zero-length row to the empty partition is a no-op
        assert_eq!(
            Partition::empty().attach_row(0).unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn weights_from_bipartitions() {
        let b = Bipartition::left(Partition::new(vec![2, 1]));
        assert_eq!(b.weight(3).unwrap(), vec![2, 1, 0]);
        let b = Bipartition::right(Partition::new(vec![2, 1]));
        assert_eq!(b.weight(3).unwrap(), vec![0, -1, -2]);
        assert!(b.weight(1).is_err());
        assert!(Bipartition::new(Partition::new(vec![1]), Partition::new(vec![1])).is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(
            Partition::new(vec![3, 1]).conjugate(),
            Partition::new(vec![2, 1, 1])
        );
    }
}
