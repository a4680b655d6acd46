//! Cross checks of the pseudo-differential predicates: the embedded
//! differential operator against the obstruction matrices, the determinant
//! scaling identities for row/column attachment on adjacent pairs, and the
//! factorization route to the localized ratio.

use gaudin_core::diagram::Partition;
use gaudin_core::fuchs::{obstruction_matrices, Exponents, FuchsOp};
use gaudin_core::linalg::det_bareiss;
use gaudin_core::psdo::{
    build_ratio, desk_denominator, desk_numerator, embed_global, factor_product, has_residue,
    localize_global, residue_obstruction_matrix, wronskian_factorize, LocalPsdo, PseudoDiffOp,
};
use gaudin_core::rings::{Laurent, Rat, Ring};
use gaudin_core::sample;
use std::collections::BTreeMap;

fn embed_local(op: &FuchsOp<Rat>, depth: usize, trunc: i64) -> LocalPsdo {
    let local = op.localize(1, trunc).unwrap();
    let n = op.order();
    let mut coeffs = vec![Laurent::zero_to(trunc); depth + 1];
    for (i, c) in coeffs.iter_mut().enumerate() {
        if i <= n {
            *c = local.series(i).clone();
        }
    }
    PseudoDiffOp::new(Laurent::constant(Rat::from(n as i64)), coeffs)
}

/// A perturbed order-2 operator with exponents (1,3) embeds as a
/// pseudo-differential operator with residue shape (2,1); its reduced
/// determinant reproduces the obstruction determinant up to a fixed nonzero
/// factor that does not depend on the perturbation.
#[test]
fn embedded_operator_determinant_scaling() {
    let lambda = Partition::new(vec![2, 1]); // exponents (1,3) <-> weight (2,1)
    let exps = Exponents::new(vec![1, 3]).unwrap();
    let mut ratios = Vec::new();
    for c in [2i64, 5, 7] {
        // d^2 - 3/u d + (c/u + 3/u^2): residue roots forced, pair broken by c
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1, 1), Rat::from(-3));
        coeffs.insert((2, 1, 1), Rat::from(c));
        coeffs.insert((2, 2, 1), Rat::from(3));
        let d = FuchsOp::new(2, vec![Rat::from(0)], coeffs).unwrap();
        let local = d.localize(1, 8).unwrap();
        let (_, red) = obstruction_matrices(&local, &exps, 1, 2).unwrap();
        let det_a = det_bareiss(&red);
        assert_eq!(det_a, Rat::from(c * c));

        let psdo = embed_local(&d, 7, 10);
        let rep = has_residue(&psdo, &lambda).unwrap();
        assert!(rep.passed, "{rep:?}");
        let (_, red_r) = residue_obstruction_matrix(&psdo, &lambda, 1, 2).unwrap();
        let det_r = det_bareiss(&red_r);
        assert!(!det_r.is_zero());
        ratios.push(&det_r / &det_a);
    }
    // the scaling factor is a fixed product of falling factorials
    assert_eq!(ratios[0], ratios[1]);
    assert_eq!(ratios[1], ratios[2]);
}

/// Row attachment on an adjacent pair: the determinant of the attached
/// matrix equals the stated product of linear factors times the original.
#[test]
fn row_attachment_determinant_scaling() {
    let mut rng = sample::rng(23);
    let lambda = Partition::new(vec![2, 1]);
    let depth = 9;
    let trunc = 18;
    for s in [2i64, 3, 4] {
        // residue lambda, monodromy broken by a harmless-looking perturbation
        let mut d = sample::factor_built_local(&mut rng, &lambda, depth, trunc);
        let mut coeffs = d.coeffs().to_vec();
        coeffs[3] = coeffs[3].add_ref(&Laurent::monomial(-1, Rat::one()).truncate(trunc));
        d = PseudoDiffOp::new(d.order().clone(), coeffs);
        assert!(has_residue(&d, &lambda).unwrap().passed);

        let f = sample::attachment_factor(&mut rng, s, depth, trunc);
        let attached = f.mul(&d).unwrap();
        let tilde = lambda.attach_row(s as u32).unwrap();

        // pair (2,3) upstairs corresponds to (1,2) downstairs
        let (_, r_tilde) = residue_obstruction_matrix(&attached, &tilde, 2, 3).unwrap();
        let (_, r_base) = residue_obstruction_matrix(&d, &lambda, 1, 2).unwrap();
        let det_tilde = det_bareiss(&r_tilde);
        let det_base = det_bareiss(&r_base);
        assert!(!det_base.is_zero(), "perturbation should break the pair");

        let k_gap = r_tilde.rows as i64;
        let mut factor = Rat::one();
        for k in 1..=k_gap {
            // linear factor (tilde_lambda_j - j + 1 + k - s) at j = 3
            factor = factor * Rat::from(tilde.part(3) as i64 - 3 + 1 + k - s);
        }
        assert_eq!(det_tilde, factor * det_base, "s = {s}");
    }
}

/// Column attachment (inverse factor, no constant term) on the pair (1,2):
/// the determinant ratio is a fixed nonzero rational depending only on the
/// shape and the column height, never on the random series tails.
#[test]
fn col_attachment_determinant_scaling() {
    let lambda = Partition::new(vec![2, 1]);
    let depth = 9;
    let trunc = 18;
    let mut ratios_by_q: Vec<Vec<Rat>> = vec![Vec::new(); 3];
    for seed in [29u64, 31, 37] {
        let mut rng = sample::rng(seed);
        for (qi, q) in [2i64, 3, 4].into_iter().enumerate() {
            let mut d = sample::factor_built_local(&mut rng, &lambda, depth, trunc);
            let mut coeffs = d.coeffs().to_vec();
            coeffs[3] = coeffs[3].add_ref(&Laurent::monomial(-1, Rat::one()).truncate(trunc));
            d = PseudoDiffOp::new(d.order().clone(), coeffs);

            let mut fc = vec![Laurent::zero_to(trunc); depth + 1];
            fc[0] = Laurent::one().truncate(trunc);
            fc[1] = Laurent::monomial(-1, Rat::from(q))
                .add_ref(&Laurent::monomial(1, sample::small_rat(&mut rng)))
                .add_ref(&Laurent::monomial(2, sample::small_rat(&mut rng)))
                .truncate(trunc);
            let f: LocalPsdo = PseudoDiffOp::new(Laurent::constant(Rat::one()), fc);
            let attached = f.inverse().unwrap().mul(&d).unwrap();
            let tilde = lambda.attach_col(q as u32).unwrap();

            let (_, r_tilde) = residue_obstruction_matrix(&attached, &tilde, 1, 2).unwrap();
            let (_, r_base) = residue_obstruction_matrix(&d, &lambda, 1, 2).unwrap();
            let det_tilde = det_bareiss(&r_tilde);
            let det_base = det_bareiss(&r_base);
            assert!(!det_base.is_zero());
            ratios_by_q[qi].push(&det_tilde / &det_base);
        }
    }
    for ratios in &ratios_by_q {
        assert!(!ratios[0].is_zero());
        assert!(ratios.iter().all(|r| r == &ratios[0]), "{ratios:?}");
    }
    // frozen values for this shape
    assert_eq!(ratios_by_q[0][0], Rat::new(8, 3));
    assert_eq!(ratios_by_q[1][0], Rat::new(200, 3));
    assert_eq!(ratios_by_q[2][0], Rat::from(2400));
}

/// The ratio of the worked operators, localized at the first pole, equals
/// the product of the numerator's local factors with the inverted local
/// factor of the denominator.
#[test]
fn localized_ratio_agrees_with_factor_route() {
    let num = desk_numerator();
    let den = desk_denominator();
    let depth = 8;
    let ratio = build_ratio(&num, Some(&den), depth).unwrap();
    let z0 = Rat::from(0);
    let direct = localize_global(&ratio, &z0, 24);

    // factor route: factorize both locally, multiply, invert
    let exps_num = Exponents::new(vec![1, 3]).unwrap();
    let local_num = num.localize(1, 40).unwrap();
    let factors = wronskian_factorize(&local_num, &exps_num, depth).unwrap();
    let num_local = factor_product(&factors).unwrap();
    let den_local = localize_global(&embed_global(&den, depth), &z0, 24);
    let via_factors = num_local.mul(&den_local.inverse().unwrap()).unwrap();

    for r in 0..=depth {
        let a = direct.coeff(r);
        let b = via_factors.coeff(r);
        let hi = a.trunc().min(b.trunc()).min(6);
        for e in -(r as i64)..=hi {
            assert_eq!(
                a.coeff_or_zero(e),
                b.coeff_or_zero(e),
                "coefficient {r}, exponent {e}"
            );
        }
    }
}
