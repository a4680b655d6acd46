//! Property tests for the coefficient rings: exact ring axioms, the
//! partial-fraction round trip, compatibility of local expansion with
//! multiplication, and evaluation homomorphisms.

use proptest::prelude::*;

use gaudin_core::rings::{Laurent, Rat, RatFn, Ring, WPoly};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn wpoly_strategy() -> impl Strategy<Value = WPoly> {
    prop::collection::vec(rat_strategy(), 0..4).prop_map(WPoly::from_coeffs)
}

fn ratfn_strategy() -> impl Strategy<Value = RatFn<Rat>> {
    let poles = prop::collection::vec((0i64..=2, 1u32..=2, rat_strategy()), 0..3);
    let poly = prop::collection::vec(rat_strategy(), 0..3);
    (poles, poly).prop_map(|(poles, poly)| {
        let mut f = RatFn::from_poly(poly);
        for (z, j, c) in poles {
            f = f.add_ref(&RatFn::pole_term(Rat::from(z), j, c));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wpoly_ring_axioms(a in wpoly_strategy(), b in wpoly_strategy(), c in wpoly_strategy()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(
            a.mul_ref(&b.add_ref(&c)),
            a.mul_ref(&b).add_ref(&a.mul_ref(&c))
        );
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
    }

    #[test]
    fn wpoly_evaluation_is_homomorphism(
        a in wpoly_strategy(),
        b in wpoly_strategy(),
        t in rat_strategy()
    ) {
        prop_assert_eq!(a.mul_ref(&b).eval(&t), a.eval(&t) * b.eval(&t));
        prop_assert_eq!(a.add_ref(&b).eval(&t), a.eval(&t) + b.eval(&t));
    }

    #[test]
    fn ratfn_ring_axioms(a in ratfn_strategy(), b in ratfn_strategy(), c in ratfn_strategy()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(
            a.mul_ref(&b.add_ref(&c)),
            a.mul_ref(&b).add_ref(&a.mul_ref(&c))
        );
    }

    #[test]
    fn ratfn_matches_pointwise_products(a in ratfn_strategy(), b in ratfn_strategy()) {
        // partial-fraction recombination agrees with evaluation away from poles
        let prod = a.mul_ref(&b);
        for u in [4i64, 5, -3, 7, 11] {
            let u = Rat::from(u);
            prop_assert_eq!(prod.eval(&u), a.eval(&u).mul_ref(&b.eval(&u)));
        }
    }

    #[test]
    fn local_expansion_is_multiplicative(a in ratfn_strategy(), b in ratfn_strategy()) {
        // laurent_at(a b) = laurent_at(a) laurent_at(b), truncated
        let z = Rat::from(0);
        let t = 4i64;
        let lhs = a.mul_ref(&b).laurent_at(&z, t);
        let rhs = a.laurent_at(&z, t + 4).mul_ref(&b.laurent_at(&z, t + 4)).truncate(t);
        for e in -8..=t {
            prop_assert_eq!(lhs.coeff_or_zero(e), rhs.coeff_or_zero(e), "exponent {}", e);
        }
    }

    #[test]
    fn infinity_expansion_is_multiplicative(a in ratfn_strategy(), b in ratfn_strategy()) {
        let t = 4i64;
        let lhs = a.mul_ref(&b).expand_at_infinity(t);
        let rhs = a
            .expand_at_infinity(t + 8)
            .mul_ref(&b.expand_at_infinity(t + 8))
            .truncate(t);
        for e in -8..=t {
            prop_assert_eq!(lhs.coeff_or_zero(e), rhs.coeff_or_zero(e), "exponent {}", e);
        }
    }

    #[test]
    fn fraction_round_trip(f in ratfn_strategy()) {
        // collecting over a common denominator and decomposing again is the
        // identity on the partial-fraction form
        let (num, factors) = f.to_fraction();
        let back = RatFn::from_fraction(&num, &factors);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn laurent_inverse_round_trip(
        c0 in rat_strategy().prop_filter("unit", |c| !c.is_zero()),
        tail in prop::collection::vec(rat_strategy(), 0..4),
        val in -3i64..=3
    ) {
        let mut coeffs = vec![c0];
        coeffs.extend(tail);
        let s: Laurent<Rat> = Laurent::new(val, coeffs, val + 10);
        let inv = s.try_inv().unwrap();
        let prod = s.mul_ref(&inv);
        prop_assert_eq!(prod.coeff_or_zero(0), Rat::one());
        for e in 1..=prod.trunc() {
            prop_assert_eq!(prod.coeff_or_zero(e), Rat::zero());
        }
    }
}

/// Independent series-division oracle for the expansion of a double pole at a
/// different point: divide 1 by ((z - b) + x)^2 coefficient-wise.
#[test]
fn double_pole_expansion_against_division_oracle() {
    let (za, zb) = (Rat::from(2), Rat::from(5));
    let f: RatFn<Rat> = RatFn::pole_term(za.clone(), 2, Rat::one());
    let t = 6i64;
    let got = f.laurent_at(&zb, t);
    assert_eq!(got.valuation(), Some(0));
    // divide 1 by (c + x)^2 where c = zb - za: long division
    let c = &zb - &za;
    let denom: Laurent<Rat> = Laurent::new(
        0,
        vec![&c * &c, Rat::from(2) * c.clone(), Rat::one()],
        t + 1,
    );
    let inv = denom.try_inv().unwrap();
    for e in 0..=t {
        assert_eq!(got.coeff_or_zero(e), inv.coeff_or_zero(e), "exponent {e}");
    }
}
