//! Dense matrices over exact rings: fraction-free determinants for polynomial
//! entries, Gaussian elimination and eigen-decomposition over Q.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::Serialize;

use crate::rings::{IntegralDomain, Rat, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Serialize)]
pub struct Mat<R> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg_ref()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn scale_ring(&self, c: &R) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Mat<R> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul_ref(b);
                    out[(i, j)] = out[(i, j)].add_ref(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc.add_ref(&self[(i, j)].mul_ref(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square());
        let mut acc = R::zero();
        for i in 0..self.rows {
            acc = acc.add_ref(&self[(i, i)]);
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Delete the given (sorted, deduplicated) rows and columns.
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !drop_rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !drop_cols.contains(j)).collect();
        Mat::from_fn(keep_r.len(), keep_c.len(), |i, j| {
            self[(keep_r[i], keep_c[j])].clone()
        })
    }
}

impl<R> std::ops::Index<(usize, usize)> for Mat<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by fraction-free Gaussian elimination (Bareiss). Divisions are
/// exact in any integral domain, which keeps polynomial entries from blowing
/// up into rational functions.
pub fn det_bareiss<R: IntegralDomain>(m: &Mat<R>) -> R {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return R::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            // pivot search
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return R::zero();
            };
            for j in 0..n {
                let t = a[(k, j)].clone();
                a[(k, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(k, k)]
                    .mul_ref(&a[(i, j)])
                    .sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                a[(i, j)] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            a[(i, k)] = R::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if sign {
        det.neg_ref()
    } else {
        det
    }
}

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref(m: &mut Mat<Rat>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        for j in 0..m.cols {
            let t = m[(r, j)].clone();
            m[(r, j)] = m[(p, j)].clone();
            m[(p, j)] = t;
        }
        let inv = m[(r, c)].inv().unwrap();
        for j in 0..m.cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b`; returns `None` when inconsistent.
pub fn solve(a: &Mat<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows, b.len());
    let mut aug = Mat::from_fn(a.rows, a.cols + 1, |i, j| {
        if j < a.cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, a.cols)].clone();
    }
    Some(x)
}

/// Basis (as columns) of the null space of `A`.
pub fn kernel_basis(a: &Mat<Rat>) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..a.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); a.cols];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = m[(r, free)].neg_ref();
        }
        basis.push(v);
    }
    basis
}

/// Column-space basis of `A`, returned as a matrix whose columns span the image.
pub fn column_space(a: &Mat<Rat>) -> Mat<Rat> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    Mat::from_fn(a.rows, pivots.len(), |i, j| a[(i, pivots[j])].clone())
}

/// Coordinates of `v` in the column basis `b`; `None` if `v` is outside.
pub fn coords_in_basis(b: &Mat<Rat>, v: &[Rat]) -> Option<Vec<Rat>> {
    solve(b, v)
}

/// Characteristic polynomial coefficients `c_0 + c_1 t + ... + c_n t^n` by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(m: &Mat<Rat>) -> Vec<Rat> {
    assert!(m.is_square());
    let n = m.rows;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux = Mat::<Rat>::zero(n, n);
    let mut c = Rat::one();
    for k in 1..=n {
        for i in 0..n {
            aux[(i, i)] = &aux[(i, i)] + &c;
        }
        aux = m.mul(&aux);
        c = aux.trace().neg_ref() * Rat::from(k as i64).inv().unwrap();
        coeffs[n - k] = c.clone();
    }
    coeffs
}

/// All rational roots (with multiplicity) of a rational-coefficient
/// polynomial. Returns `None` when the polynomial does not factor completely
/// over Q (some root is irrational or the divisor search gave out).
pub fn rational_roots_complete(coeffs: &[Rat]) -> Option<Vec<Rat>> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(vec![]);
    }
    let mut roots = Vec::new();
    loop {
        if c.len() == 1 {
            return Some(roots);
        }
        if c.len() == 2 {
            roots.push((&c[0] / &c[1]).neg_ref());
            return Some(roots);
        }
        // strip zero roots
        if c[0].is_zero() {
            roots.push(Rat::zero());
            c.remove(0);
            continue;
        }
        // clear denominators
        let mut den = BigInt::one();
        for x in &c {
            den = den.lcm(x.denom());
        }
        let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let d0 = divisors(&a0)?;
        let dn = divisors(&an)?;
        let mut found = None;
        'search: for p in &d0 {
            for q in &dn {
                for sign in [1i64, -1] {
                    let cand =
                        Rat::from_big(num::BigRational::new(p * BigInt::from(sign), q.clone()));
                    if eval_poly(&c, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let root = found?;
        roots.push(root.clone());
        c = deflate(&c, &root);
    }
}

fn eval_poly(c: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for k in c.iter().rev() {
        acc = &(&acc * x) + k;
    }
    acc
}

fn deflate(c: &[Rat], root: &Rat) -> Vec<Rat> {
    // synthetic division by (x - root)
    let n = c.len() - 1;
    let mut out = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for k in (0..n).rev() {
        out[k] = &c[k + 1] + &(&carry * root);
        carry = out[k].clone();
    }
    out
}

/// Positive divisors; `None` when the trial-division budget is exceeded.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut rem = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let budget = BigInt::from(1_000_000u64);
    while &p * &p <= rem {
        if p > budget {
            return None;
        }
        let mut e = 0;
        while (&rem % &p).is_zero() {
            rem /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if rem > BigInt::one() {
        factors.push((rem, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > 100_000 {
            return None;
        }
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::WPoly;

    #[test]
    fn bareiss_matches_cofactor_on_rationals() {
        let m = Mat::from_rows(vec![
            vec![Rat::from(2), Rat::from(-1), Rat::from(3)],
            vec![Rat::from(0), Rat::from(4), Rat::from(1)],
            vec![Rat::from(5), Rat::from(2), Rat::from(-2)],
        ]);
        // cofactor by hand: 2*(4*-2-1*2) +1*(0*-2-1*5) +3*(0*2-4*5) = -85
        assert_eq!(det_bareiss(&m), Rat::from(-85));
    }

    #[test]
    fn bareiss_over_polynomials() {
        let w = WPoly::var();
        // det [[w, 1], [1, w]] = w^2 - 1
        let m = Mat::from_rows(vec![
            vec![w.clone(), WPoly::one()],
            vec![WPoly::one(), w.clone()],
        ]);
        assert_eq!(det_bareiss(&m), w.mul_ref(&w).sub_ref(&WPoly::one()));
    }

    #[test]
    fn solve_and_kernel() {
        let a = Mat::from_rows(vec![
            vec![Rat::from(1), Rat::from(2)],
            vec![Rat::from(2), Rat::from(4)],
        ]);
        assert_eq!(
            solve(&a, &[Rat::from(3), Rat::from(6)]),
            Some(vec![Rat::from(3), Rat::zero()])
        );
        assert_eq!(solve(&a, &[Rat::from(3), Rat::from(7)]), None);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn char_poly_and_roots() {
        let m = Mat::from_rows(vec![
            vec![Rat::from(2), Rat::from(1)],
            vec![Rat::from(0), Rat::from(3)],
        ]);
        // (t-2)(t-3) = 6 - 5t + t^2
        assert_eq!(char_poly(&m), vec![Rat::from(6), Rat::from(-5), Rat::one()]);
        let mut roots = rational_roots_complete(&char_poly(&m)).unwrap();
        roots.sort();
        assert_eq!(roots, vec![Rat::from(2), Rat::from(3)]);
    }
}
