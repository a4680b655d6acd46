//! Seeded random instances for the property experiments: composable
//! morphism pairs, local operators with prescribed exponents, regular global
//! pseudo-differential operators, and factor-built local operators with a
//! prescribed residue shape.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{enumerate_diagrams, Color, Morphism, Partition, Word};
use crate::fuchs::{Exponents, LocalOp};
use crate::psdo::{GlobalPsdo, LocalPsdo, PseudoDiffOp};
use crate::rings::{Laurent, Rat, RatFn, Ring, WPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `lo..=hi`.
pub fn int_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

/// Small nonzero rational with numerator in `[-4, 4]` and denominator in
/// `{1, 2, 3}`.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let v = rng.gen_range(-4i64..=4);
        if v != 0 {
            break v;
        }
    };
    Rat::new(num, rng.gen_range(1i64..=3))
}

pub fn small_rat_or_zero(rng: &mut ChaCha8Rng) -> Rat {
    if rng.gen_bool(0.3) {
        Rat::zero()
    } else {
        small_rat(rng)
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect(),
    )
}

fn random_combination(rng: &mut ChaCha8Rng, diagrams: &[crate::diagram::Diagram]) -> Morphism {
    let terms = rng.gen_range(1..=2usize.min(diagrams.len()));
    let mut picks = Vec::new();
    for _ in 0..terms {
        let d = diagrams[rng.gen_range(0..diagrams.len())].clone();
        let c = WPoly::constant(small_rat(rng));
        picks.push((d, c));
    }
    Morphism::from_terms(picks)
}

/// A composable pair `(second, first)` with small random words and small
/// integer combinations of basis diagrams.
pub fn random_composable_pair(rng: &mut ChaCha8Rng, max_len: usize) -> (Morphism, Morphism) {
    loop {
        let f = random_word(rng, max_len);
        let g = random_word(rng, max_len);
        let h = random_word(rng, max_len);
        let first = enumerate_diagrams(&f, &g);
        let second = enumerate_diagrams(&g, &h);
        if first.is_empty() || second.is_empty() {
            continue;
        }
        return (
            random_combination(rng, &second),
            random_combination(rng, &first),
        );
    }
}

/// Random strictly increasing exponents of the given count inside a small
/// window.
pub fn random_exponents(rng: &mut ChaCha8Rng, n: usize) -> Exponents {
    let mut list = Vec::with_capacity(n);
    let mut cur = rng.gen_range(-2i64..=1);
    for _ in 0..n {
        list.push(cur);
        cur += rng.gen_range(1i64..=2);
    }
    Exponents::new(list).unwrap()
}

/// Random local operator of the given order whose residue indicial polynomial
/// is forced to `prod (alpha - m_i)`; the higher coefficients are free.
pub fn random_local_with_exponents(
    rng: &mut ChaCha8Rng,
    exps: &Exponents,
    trunc: i64,
) -> LocalOp<Rat> {
    let n = exps.n();
    // r_0 = prod (alpha - m_i): solve for the b_{i,-i} in the falling basis
    let mut target = WPoly::one();
    for i in 1..=n {
        target = target.mul_ref(&WPoly::var().sub_ref(&WPoly::from(exps.m(i))));
    }
    let w = WPoly::var();
    let mut leading = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ff = crate::rings::falling_factorial(&w, n - i);
        let lead = target.coeff(n - i);
        leading.push(lead.clone());
        target = target.sub_ref(&ff.scale(&lead));
    }
    let coeffs = (0..=n)
        .map(|i| {
            let mut c = Laurent::monomial(-(i as i64), leading[i].clone()).truncate(trunc);
            if i >= 1 {
                for k in 1..=(trunc + i as i64).min(4) {
                    c = c.add_ref(
                        &Laurent::monomial(-(i as i64) + k, small_rat_or_zero(rng)).truncate(trunc),
                    );
                }
            }
            c
        })
        .collect();
    LocalOp::new(n, coeffs)
}

/// Random monic global operator with regular singularity at infinity: the
/// `i`-th coefficient only carries poles of order `>= i`.
pub fn random_regular_global(
    rng: &mut ChaCha8Rng,
    z: &[Rat],
    order: Rat,
    depth: usize,
) -> GlobalPsdo {
    let mut coeffs = vec![RatFn::zero(); depth + 1];
    coeffs[0] = RatFn::one();
    for (i, c) in coeffs.iter_mut().enumerate().skip(1) {
        for za in z {
            for j in i..=(i + 1) {
                *c = c.add_ref(&RatFn::pole_term(
                    za.clone(),
                    j as u32,
                    small_rat_or_zero(rng),
                ));
            }
        }
    }
    PseudoDiffOp::new(RatFn::constant(order), coeffs)
}

/// First-order local factor `d - s/x + sum a_i x^i` with random tail.
pub fn attachment_factor(rng: &mut ChaCha8Rng, s: i64, depth: usize, trunc: i64) -> LocalPsdo {
    let mut coeffs = vec![Laurent::zero_to(trunc); depth + 1];
    coeffs[0] = Laurent::one().truncate(trunc);
    let mut c = Laurent::monomial(-1, Rat::from(-s)).truncate(trunc);
    for k in 0..=3 {
        c = c.add_ref(&Laurent::monomial(k, small_rat_or_zero(rng)).truncate(trunc));
    }
    coeffs[1] = c;
    PseudoDiffOp::new(Laurent::constant(Rat::one()), coeffs)
}

/// Factor-built local operator with residue shape `lambda` and no monodromy:
/// rows attached from the smallest part up, each with a random regular tail.
pub fn factor_built_local(
    rng: &mut ChaCha8Rng,
    lambda: &Partition,
    depth: usize,
    trunc: i64,
) -> LocalPsdo {
    let mut acc: LocalPsdo = PseudoDiffOp::power_of_d(Laurent::zero(), depth);
    for idx in (1..=lambda.len()).rev() {
        let f = attachment_factor(rng, lambda.part(idx) as i64, depth, trunc);
        acc = f.mul(&acc).expect("depths agree");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psdo::has_no_monodromy;

    #[test]
    fn composable_pairs_compose() {
        let mut r = rng(7);
        for _ in 0..20 {
            let (y, x) = random_composable_pair(&mut r, 3);
            y.compose(&x).unwrap();
        }
    }

    #[test]
    fn factor_built_operators_pass_their_shape() {
        let mut r = rng(11);
        for parts in [vec![2u32], vec![2, 1], vec![3, 1, 1]] {
            let lambda = Partition::new(parts);
            let op = factor_built_local(&mut r, &lambda, 9, 16);
            let rep = has_no_monodromy(&op, &lambda).unwrap();
            assert!(rep.passed, "{lambda}: {rep:?}");
        }
    }

    #[test]
    fn forced_residue_operators_have_the_roots() {
        let mut r = rng(3);
        for _ in 0..5 {
            let exps = random_exponents(&mut r, 3);
            let local = random_local_with_exponents(&mut r, &exps, 10);
            for k in 1..=3 {
                assert_eq!(
                    local.indicial(0, &Rat::from(exps.m(k))).unwrap(),
                    Rat::zero()
                );
            }
        }
    }
}
