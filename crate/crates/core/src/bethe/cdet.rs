//! Direct column-determinant expansion of the operator matrix `d - L(u)`
//! acting on a tensor module: the independent oracle for the Newton route.

use std::collections::BTreeMap;

use crate::linalg::Mat;
use crate::rings::{binom_i64, DiffRing, Rat, RatFn, Ring};

use super::module::GlnModule;

/// Differential operator whose coefficients are matrices of rational
/// functions acting on a fixed module.
#[derive(Clone, PartialEq)]
pub struct DiffOpMat {
    dim: usize,
    coeffs: BTreeMap<u32, Mat<RatFn<Rat>>>,
}

impl DiffOpMat {
    pub fn zero(dim: usize) -> Self {
        DiffOpMat {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        DiffOpMat::from_coeff(0, Mat::identity(dim))
    }

    pub fn from_coeff(p: u32, m: Mat<RatFn<Rat>>) -> Self {
        let dim = m.rows;
        let mut coeffs = BTreeMap::new();
        if !m.is_zero() {
            coeffs.insert(p, m);
        }
        DiffOpMat { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, p: u32) -> Mat<RatFn<Rat>> {
        self.coeffs
            .get(&p)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim, self.dim))
    }

    pub fn orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_coeff(&mut self, p: u32, m: Mat<RatFn<Rat>>) {
        if m.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&m);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, m) in &other.coeffs {
            out.add_coeff(*p, m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rat::from(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        DiffOpMat {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(p, m)| (*p, m.scale(c))).collect(),
        }
    }

    /// Operator composition with the commutation `d^p g = sum C(p,i) g^(i) d^{p-i}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = DiffOpMat::zero(self.dim);
        for (&p, f) in &self.coeffs {
            for (&q, g) in &other.coeffs {
                let mut gd = g.clone();
                for i in 0..=p {
                    let scalar = binom_i64(p as i64, i as i64);
                    if !scalar.is_zero() {
                        out.add_coeff(p - i + q, f.mul(&gd).scale(&scalar));
                    }
                    if i < p {
                        gd = Mat::from_fn(g.rows, g.cols, |r, s| gd[(r, s)].derivative());
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl std::fmt::Debug for DiffOpMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiffOpMat(dim {}, orders ", self.dim)?;
        for p in self.coeffs.keys() {
            write!(f, "{p} ")?;
        }
        write!(f, ")")
    }
}

/// Entries of the operator matrix `delta_ij d - L_ij(u)` on the module.
pub fn operator_matrix_entry(module: &GlnModule, z: &[Rat], i: usize, j: usize) -> DiffOpMat {
    let dim = module.ambient_dim();
    let mut lax: Mat<RatFn<Rat>> = Mat::zero(dim, dim);
    for (a, za) in z.iter().enumerate() {
        let unit = module.unit_action(a + 1, i - 1, j - 1);
        let f = RatFn::pole_term(za.clone(), 1, Rat::one());
        for r in 0..dim {
            for s in 0..dim {
                if unit[(r, s)].is_zero() {
                    continue;
                }
                let t = f.scale(&unit[(r, s)]);
                lax[(r, s)] = lax[(r, s)].add_ref(&t);
            }
        }
    }
    let mut out = DiffOpMat::from_coeff(0, lax.scale(&Rat::from(-1)));
    if i == j {
        out = out.add(&DiffOpMat::from_coeff(1, Mat::identity(dim)));
    }
    out
}

/// Direct `n!`-term column determinant of `d - L(u)` on the module; with
/// `alpha` grading the result is the list of coefficients of
/// `cdet(1 + alpha (d - L))` by degree in `alpha`.
pub fn cdet_direct(module: &GlnModule, z: &[Rat], with_alpha: bool) -> Vec<DiffOpMat> {
    let n = module.rank();
    assert!(n <= 5, "factorial expansion capped at rank 5");
    let dim = module.ambient_dim();
    // precompute entries
    let mut entries: Vec<Vec<DiffOpMat>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(operator_matrix_entry(module, z, i, j));
        }
        entries.push(row);
    }
    let degree = if with_alpha { n } else { 0 };
    let mut acc: Vec<DiffOpMat> = vec![DiffOpMat::zero(dim); degree + 1];
    for (sigma, sign) in permutations_with_sign(n) {
        // product over columns c of (maybe 1 +) alpha * entry(sigma(c), c)
        // graded by alpha when requested
        let mut term: Vec<DiffOpMat> = vec![DiffOpMat::zero(dim); degree + 1];
        term[0] = DiffOpMat::one(dim);
        for c in 0..n {
            let e = &entries[sigma[c]][c];
            if with_alpha {
                let mut next: Vec<DiffOpMat> = vec![DiffOpMat::zero(dim); degree + 1];
                for (d, t) in term.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    // identity contribution (only present on the diagonal)
                    if sigma[c] == c {
                        next[d] = next[d].add(t);
                    }
                    if d < degree {
                        let prod = t.mul(e);
                        next[d + 1] = next[d + 1].add(&prod);
                    }
                }
                term = next;
            } else {
                term[0] = term[0].mul(e);
            }
        }
        for (d, t) in term.into_iter().enumerate() {
            if !t.is_zero() {
                acc[d] = acc[d].add(&t.scale(&Rat::from(sign)));
            }
        }
    }
    acc
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = vec![(vec![], 1i64)];
    for i in 0..n {
        let mut next = Vec::new();
        for (p, s) in out {
            for slot in 0..=i {
                let mut q = p.clone();
                q.insert(slot, i);
                // inserting at `slot` among i existing entries costs (i - slot) transpositions
                let extra = if (i - slot) % 2 == 0 { 1 } else { -1 };
                next.push((q, s * extra));
            }
        }
        out = next;
    }
    out
}

/// Spot check that the operator matrix `d - L(u)` is a Manin matrix on the
/// module: `[a_ij, a_pq] = [a_pj, a_iq]` for the given index quadruple.
pub fn manin_check(module: &GlnModule, z: &[Rat], i: usize, j: usize, p: usize, q: usize) -> bool {
    let a_ij = operator_matrix_entry(module, z, i, j);
    let a_pq = operator_matrix_entry(module, z, p, q);
    let a_pj = operator_matrix_entry(module, z, p, j);
    let a_iq = operator_matrix_entry(module, z, i, q);
    a_ij.commutator(&a_pq) == a_pj.commutator(&a_iq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Bipartition, Partition};

    fn std_module(n: usize, m: usize) -> GlnModule {
        let bip = Bipartition::left(Partition::new(vec![1]));
        GlnModule::new(n, &vec![bip; m])
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        let total: i64 = perms.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 0);
        for (p, s) in &perms {
            if p == &vec![0, 1, 2] {
                assert_eq!(*s, 1);
            }
            if p == &vec![1, 0, 2] {
                assert_eq!(*s, -1);
            }
        }
    }

    #[test]
    fn rank_one_cdet_is_the_entry() {
        let module = std_module(1, 1);
        let z = vec![Rat::from(0)];
        let c = cdet_direct(&module, &z, false);
        let entry = operator_matrix_entry(&module, &z, 1, 1);
        assert_eq!(c[0], entry);
    }

    #[test]
    fn manin_property_small() {
        let module = std_module(2, 2);
        let z = vec![Rat::from(0), Rat::from(1)];
        for (i, j, p, q) in [(1, 1, 2, 2), (1, 2, 2, 1), (1, 2, 1, 1), (2, 1, 1, 2)] {
            assert!(manin_check(&module, &z, i, j, p, q));
        }
    }
}
