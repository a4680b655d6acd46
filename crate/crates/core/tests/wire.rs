//! The serialized shapes named in the interface contracts: rationals as
//! "p/q" strings, words over b/w, diagrams as prefixed vertex pairs,
//! morphisms as {diagram, coeff} lists, operators with {i, j, a, value}
//! coefficient rows.

use gaudin_core::bethe::{CyclicWord, NcPoly};
use gaudin_core::diagram::{Color, Morphism, Word};
use gaudin_core::psdo::desk_numerator;
use gaudin_core::rings::{Rat, RatFn, Ring};

#[test]
fn rational_strings() {
    assert_eq!(serde_json::to_string(&Rat::new(-3, 2)).unwrap(), "\"-3/2\"");
    assert_eq!(serde_json::to_string(&Rat::from(7)).unwrap(), "\"7\"");
    let back: Rat = serde_json::from_str("\"5/10\"").unwrap();
    assert_eq!(back, Rat::new(1, 2));
}

#[test]
fn word_strings() {
    let w = Word(vec![Color::Black, Color::White, Color::Black]);
    assert_eq!(serde_json::to_string(&w).unwrap(), "\"bwb\"");
    let back: Word = serde_json::from_str("\"bwb\"").unwrap();
    assert_eq!(back, w);
}

#[test]
fn morphism_terms_carry_prefixed_vertex_pairs() {
    let v = serde_json::to_value(Morphism::cup()).unwrap();
    let terms = v.as_array().unwrap();
    assert_eq!(terms.len(), 1);
    let edge = &terms[0]["diagram"][0];
    assert_eq!(edge[0], "b0");
    assert_eq!(edge[1], "b1");
    assert!(terms[0]["coeff"].is_array());
}

#[test]
fn cyclic_word_polynomials() {
    let p = NcPoly::word(CyclicWord(vec![1, 2])).mul_fn(&RatFn::pole_term(
        Rat::from(0),
        1,
        Rat::one(),
    ));
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v[0]["words"][0], serde_json::json!([1, 2]));
    assert_eq!(v[0]["coeff"]["poles"][0]["z"], "0");
}

#[test]
fn operator_coefficient_rows() {
    let v = serde_json::to_value(desk_numerator()).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["poles"][0], "0");
    let rows = v["coeffs"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|r| r["i"] == 1 && r["j"] == 1 && r["a"] == 1 && r["value"] == "-3"));
}
