//! Exact comparison of the raw and stabilized generating sets: every raw
//! generator must lie in the ideal of the stabilized set and conversely.
//!
//! Both sets split into affine-linear elements plus paired determinants, and
//! each determinant congruence holds modulo the linear elements alone, so
//! membership reduces to substitution along the linear span followed by a
//! proportionality check of the surviving determinant pair.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::Bipartition;
use crate::rings::{MPoly, Rat, Ring, YVar};

use super::{raw_generators, stabilized_generators, FuchsError, StabMode};

/// Affine-linear normal-form machine: substitution rules derived from a list
/// of affine-linear polynomials by Gaussian elimination.
pub struct LinearReducer {
    rules: Vec<(YVar, MPoly)>,
    inconsistent: bool,
}

fn as_affine(p: &MPoly) -> Option<(BTreeMap<YVar, Rat>, Rat)> {
    let mut linear = BTreeMap::new();
    let mut constant = Rat::zero();
    for (m, c) in p.terms() {
        let c = c.as_constant()?;
        match m.degree() {
            0 => constant = c,
            1 => {
                let (v, _) = m.vars().next().unwrap();
                linear.insert(v, c);
            }
            _ => return None,
        }
    }
    Some((linear, constant))
}

impl LinearReducer {
    pub fn new(polys: &[MPoly]) -> Self {
        let mut rows: Vec<(BTreeMap<YVar, Rat>, Rat)> = polys
            .iter()
            .filter(|p| !p.is_zero())
            .filter_map(as_affine)
            .collect();
        let mut rules: Vec<(YVar, MPoly)> = Vec::new();
        let mut inconsistent = false;
        // forward elimination: repeatedly pick a row, normalize on its
        // largest variable, substitute into the rest
        while let Some(pos) = rows.iter().position(|(l, _)| !l.is_empty()) {
            let (lin, cst) = rows.swap_remove(pos);
            let (&lead, coeff) = lin.iter().next_back().unwrap();
            let inv = coeff.inv().unwrap();
            // lead = -(cst + rest)/coeff
            let mut rhs = MPoly::from_rat((&cst * &inv).neg_ref());
            for (v, c) in lin.iter() {
                if *v == lead {
                    continue;
                }
                rhs = rhs.sub_ref(&MPoly::var(*v).scale(&(c * &inv)));
            }
            // substitute into pending rows
            for (l, k) in rows.iter_mut() {
                if let Some(c) = l.remove(&lead) {
                    // add c * rhs to the row
                    for (m, coef) in rhs.terms() {
                        let coef = coef.as_constant().unwrap();
                        if m.is_one() {
                            *k = &*k + &(&c * &coef);
                        } else {
                            let (v, _) = m.vars().next().unwrap();
                            let e = l.entry(v).or_insert_with(Rat::zero);
                            *e = &*e + &(&c * &coef);
                            if e.is_zero() {
                                l.remove(&v);
                            }
                        }
                    }
                }
            }
            // substitute into existing rules
            for (_, r) in rules.iter_mut() {
                *r = r.subst_var(lead, &rhs);
            }
            rules.push((lead, rhs));
            rows.retain(|(l, k)| {
                if l.is_empty() {
                    if !k.is_zero() {
                        inconsistent = true;
                    }
                    false
                } else {
                    true
                }
            });
        }
        for (_, k) in &rows {
            if !k.is_zero() {
                inconsistent = true;
            }
        }
        LinearReducer {
            rules,
            inconsistent,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Normal form: substitutes every rule (the rules are fully reduced
    /// against each other, so one pass suffices).
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        let mut out = p.clone();
        for (v, r) in &self.rules {
            out = out.subst_var(*v, r);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionRecord {
    pub id: String,
    pub direction: String,
    pub outcome: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub records: Vec<ReductionRecord>,
    pub passed: bool,
}

fn is_linear(p: &MPoly) -> bool {
    as_affine(p).is_some()
}

/// Proportionality by a nonzero rational.
fn proportional(a: &MPoly, b: &MPoly) -> Option<Rat> {
    if a.is_zero() || b.is_zero() {
        return if a.is_zero() && b.is_zero() {
            Some(Rat::one())
        } else {
            None
        };
    }
    let (m, ca) = a.terms().next_back()?;
    let cb = b.coeff(m);
    let ca = ca.as_constant()?;
    let cb = cb.as_constant()?;
    if cb.is_zero() {
        return None;
    }
    let ratio = &ca / &cb;
    if *a == b.scale(&ratio) {
        Some(ratio)
    } else {
        None
    }
}

/// Mutual reduction of the raw and stabilized sets at a fixed order: each
/// linear element must vanish modulo the other side's linear span; each
/// determinant must become proportional to its partner.
pub fn mutual_reduction_report(
    bips: &[Bipartition],
    z: &[Rat],
    n: usize,
) -> Result<CompareReport, FuchsError> {
    let raw = raw_generators(bips, z, n)?;
    let stab = stabilized_generators(bips, z, &StabMode::AtN(n))?;

    let lin_raw: Vec<MPoly> = raw
        .iter()
        .filter(|(_, p)| is_linear(p))
        .map(|(_, p)| p.clone())
        .collect();
    let lin_stab: Vec<MPoly> = stab
        .entries
        .iter()
        .filter(|(_, p)| is_linear(p))
        .map(|(_, p)| p.clone())
        .collect();
    let red_to_stab = LinearReducer::new(&lin_stab);
    let red_to_raw = LinearReducer::new(&lin_raw);

    // pairing of determinant ids: detA[i,j] at a left-sided point matches
    // detM[n+1-i, n+1-j]; at a right-sided point the labels agree
    let det_partner = |id: &str| -> Option<String> {
        let (point, rest) = id.split_once('/')?;
        let inside = rest.strip_prefix("detA[")?.strip_suffix(']')?;
        let (i, j) = inside.split_once(',')?;
        let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
        let a: usize = point.strip_prefix('z')?.parse().ok()?;
        let left_sided = !bips[a - 1].left_part().is_empty() || bips[a - 1].right_part().is_empty();
        Some(if left_sided {
            format!("{point}/detM[{},{}]", n + 1 - i, n + 1 - j)
        } else {
            format!("{point}/detM[{i},{j}]")
        })
    };

    let mut records = Vec::new();
    // raw into the stabilized ideal
    for (id, p) in &raw {
        let nf = red_to_stab.reduce(p);
        let (outcome, ok) = if nf.is_zero() {
            ("reduced to zero".to_string(), true)
        } else if let Some(partner) = det_partner(id) {
            match stab.find(&partner) {
                Some(q) => match proportional(&nf, &red_to_stab.reduce(q)) {
                    Some(c) => (format!("proportional to {partner} by {c}"), !c.is_zero()),
                    None => (format!("not proportional to {partner}"), false),
                },
                None => (format!("partner {partner} missing"), false),
            }
        } else {
            ("nonzero residue".to_string(), false)
        };
        records.push(ReductionRecord {
            id: id.clone(),
            direction: "raw->stabilized".into(),
            outcome,
            ok,
        });
    }
    // stabilized into the raw ideal
    let det_partner_back = |id: &str| -> Option<String> {
        let (point, rest) = id.split_once('/')?;
        let inside = rest.strip_prefix("detM[")?.strip_suffix(']')?;
        let (i, j) = inside.split_once(',')?;
        let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
        let a: usize = point.strip_prefix('z')?.parse().ok()?;
        let left_sided = !bips[a - 1].left_part().is_empty() || bips[a - 1].right_part().is_empty();
        Some(if left_sided {
            format!("{point}/detA[{},{}]", n + 1 - i, n + 1 - j)
        } else {
            format!("{point}/detA[{i},{j}]")
        })
    };
    for (id, p) in &stab.entries {
        let nf = red_to_raw.reduce(p);
        let (outcome, ok) = if nf.is_zero() {
            ("reduced to zero".to_string(), true)
        } else if let Some(partner) = det_partner_back(id) {
            let q = raw
                .iter()
                .find(|(rid, _)| *rid == partner)
                .map(|(_, q)| q.clone());
            match q {
                Some(q) => match proportional(&nf, &red_to_raw.reduce(&q)) {
                    Some(c) => (format!("proportional to {partner} by {c}"), !c.is_zero()),
                    None => (format!("not proportional to {partner}"), false),
                },
                None => (format!("partner {partner} missing"), false),
            }
        } else {
            ("nonzero residue".to_string(), false)
        };
        records.push(ReductionRecord {
            id: id.clone(),
            direction: "stabilized->raw".into(),
            outcome,
            ok,
        });
    }
    let passed =
        records.iter().all(|r| r.ok) && red_to_stab.is_consistent() && red_to_raw.is_consistent();
    Ok(CompareReport { records, passed })
}

/// High-index elimination: the linear span of the interpolated set, projected
/// to order `n`, contains every generator `y[i,j;a]` with `n < i <= i_hi`.
pub fn high_index_elimination_check(
    bips: &[Bipartition],
    z: &[Rat],
    n: usize,
    i_hi: usize,
) -> Result<bool, FuchsError> {
    let sym = stabilized_generators(bips, z, &StabMode::SymbolicWindow { n_max: i_hi })?;
    // evaluate the order symbol without projecting: the relations live in the
    // full generator algebra
    let projected: Vec<MPoly> = sym
        .entries
        .iter()
        .map(|(_, p)| p.eval_w(&Rat::from(n as i64)))
        .collect();
    // keep only affine-linear ones and reduce the target variables
    let lin: Vec<MPoly> = projected.into_iter().filter(is_linear_owned).collect();
    let red = LinearReducer::new(&lin);
    for a in 1..=bips.len() {
        for i in (n + 1)..=i_hi {
            for j in 1..=i {
                let v = MPoly::var(YVar::new(i, j, a));
                if !red.reduce(&v).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn is_linear_owned(p: &MPoly) -> bool {
    is_linear(p)
}

/// Hook for tests: the derivative-Vandermonde determinant that controls the
/// leading block of the infinity relations (fixture only, not a public
/// operation of the calculus).
pub fn vandermonde_derivative_det(z: &[Rat], size: usize) -> Rat {
    // det of the matrix L_1 whose k-th row lists z_a^{k-1-j} C(k-1, j) blocks
    let m = z.len();
    let mat = crate::linalg::Mat::from_fn(size, size, |k, col| {
        let j = col / m;
        let a = col % m;
        if k < j {
            Rat::zero()
        } else {
            crate::rings::binom_i64(k as i64, j as i64).mul_ref(&z[a].pow((k - j) as i64))
        }
    });
    crate::linalg::det_bareiss(&mat)
}
