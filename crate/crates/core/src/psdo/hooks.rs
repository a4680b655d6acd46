//! Hook partitions: the shape carried by a ratio of operators with weight
//! data `nu` (nonnegative, width side) and `eta` (nonpositive convention,
//! height side).

use crate::diagram::Partition;

use super::PsdoError;

#[derive(Clone, Debug)]
pub struct HookData {
    pub nu: Vec<Vec<i64>>,
    pub eta: Vec<Vec<i64>>,
    pub lambdas: Vec<Partition>,
}

/// Builds the hook partition of one point: `lambda_j = nu_j` for `j <= n`,
/// then the conjugate counts of the positive parts of `eta` for
/// `n < j <= n + n'`. The `eta` weight is given in the nonpositive dominant
/// convention `(-e_{n'}, ..., -e_1)` with `e_j >= 0`.
pub fn hook_partition(
    nu: &[i64],
    eta: &[i64],
    n: usize,
    n_prime: usize,
) -> Result<Partition, PsdoError> {
    if nu.len() != n || eta.len() != n_prime {
        return Err(PsdoError::BadInput(
            "weight lengths must match the orders".into(),
        ));
    }
    if nu.iter().any(|&x| x < 0) || nu.windows(2).any(|w| w[0] < w[1]) {
        return Err(PsdoError::BadInput(
            "first weight must be dominant with nonnegative entries".into(),
        ));
    }
    // recover e_1 >= e_2 >= ... >= e_{n'} >= 0 from (-e_{n'}, ..., -e_1)
    let e: Vec<i64> = eta.iter().rev().map(|&x| -x).collect();
    if e.iter().any(|&x| x < 0) || e.windows(2).any(|w| w[0] < w[1]) {
        return Err(PsdoError::BadInput(
            "second weight must be dominant with nonpositive entries".into(),
        ));
    }
    let mut parts: Vec<u32> = nu.iter().map(|&x| x as u32).collect();
    for j in 1..=n_prime {
        // conjugate count: number of e-parts of size >= j
        let c = e.iter().filter(|&&x| x >= j as i64).count() as u32;
        parts.push(c);
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(PsdoError::BadInput(format!(
            "weights do not form a hook shape: {parts:?} is not a partition"
        )));
    }
    let p = Partition::new(parts);
    if p.part(n + 1) > n_prime as u32 {
        return Err(PsdoError::BadInput(format!(
            "shape violates the hook bound: part {} at row {} exceeds {}",
            p.part(n + 1),
            n + 1,
            n_prime
        )));
    }
    Ok(p)
}

/// Hook data for every point of a two-weight family.
pub fn hook_data(
    nu: &[Vec<i64>],
    eta: &[Vec<i64>],
    n: usize,
    n_prime: usize,
) -> Result<HookData, PsdoError> {
    if nu.len() != eta.len() {
        return Err(PsdoError::BadInput(
            "need matching point counts in the two weight lists".into(),
        ));
    }
    let lambdas = nu
        .iter()
        .zip(eta)
        .map(|(a, b)| hook_partition(a, b, n, n_prime))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HookData {
        nu: nu.to_vec(),
        eta: eta.to_vec(),
        lambdas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        // nu = (2,1), eta = (-1), n = 2, n' = 1: lambda = (2,1,1)
        assert_eq!(
            hook_partition(&[2, 1], &[-1], 2, 1).unwrap(),
            Partition::new(vec![2, 1, 1])
        );
        // zero eta pads with nothing
        assert_eq!(
            hook_partition(&[3, 1], &[0, 0], 2, 2).unwrap(),
            Partition::new(vec![3, 1])
        );
        // nu = (1,1), eta = (-2): lambda = (1,1,1)
        assert_eq!(
            hook_partition(&[1, 1], &[-2], 2, 1).unwrap(),
            Partition::new(vec![1, 1, 1])
        );
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        // nu ends at 0 but eta demands two rows of width 2: not a partition
        assert!(hook_partition(&[1, 0], &[-2, -2], 2, 2).is_err());
    }
}
