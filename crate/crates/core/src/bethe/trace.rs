//! Expansion of `tr (d/du - L(u))^k` over cyclic-word symbols.
//!
//! `L(u)` has entries `sum_a e_ij^{(a)} / (u - z_a)`. Powers are expanded
//! noncommutatively (`d f = f d + f'`), the trace of a product of derivative
//! decorations `L^{(d_1)} ... L^{(d_j)}` contributes, for every index tuple,
//! the cyclic word of the tuple with coefficient
//! `prod_s (d/du)^{d_s} 1/(u - z_{i_s})`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::rings::{Rat, RatFn, Ring};

use super::{CyclicWord, NcDiffOp, NcPoly};

/// Key: word of derivative orders of the `L` factors plus the trailing
/// `d`-power, with an integer multiplicity.
type Expansion = BTreeMap<(Vec<u32>, u32), i64>;

fn expand_power(k: usize) -> Expansion {
    let mut acc: Expansion = BTreeMap::new();
    acc.insert((vec![], 0), 1);
    for _ in 0..k {
        let mut next: Expansion = BTreeMap::new();
        let add = |next: &mut Expansion, key: (Vec<u32>, u32), v: i64| {
            let e = next.entry(key.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                next.remove(&key);
            }
        };
        for ((word, p), c) in &acc {
            // d * (word d^p): Leibniz over the factors, plus the shifted power
            for s in 0..word.len() {
                let mut w = word.clone();
                w[s] += 1;
                add(&mut next, (w, *p), *c);
            }
            add(&mut next, (word.clone(), p + 1), *c);
            // (-L) * (word d^p)
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(0);
            w.extend_from_slice(word);
            add(&mut next, (w, *p), -*c);
        }
        acc = next;
    }
    acc
}

/// `(d/du)^d 1/(u - z) = (-1)^d d! / (u - z)^{d+1}`.
fn pole_derivative(z: &Rat, d: u32) -> RatFn<Rat> {
    let mut c = Rat::factorial(d as usize);
    if d % 2 == 1 {
        c = c.neg_ref();
    }
    RatFn::pole_term(z.clone(), d + 1, c)
}

fn trace_of_expansion(exp: &Expansion, m: usize, z: &[Rat]) -> NcDiffOp {
    let mut out = NcDiffOp::zero();
    for ((word, p), mult) in exp {
        let scalar = Rat::from(*mult);
        if word.is_empty() {
            // trace of the identity: the empty-word symbol
            out = out.add(&NcDiffOp::from_coeff(
                *p,
                NcPoly::word(CyclicWord(vec![])).scale(&scalar),
            ));
            continue;
        }
        let j = word.len();
        // all index tuples in {1..m}^j
        let mut tuple = vec![1usize; j];
        loop {
            let mut coeff = RatFn::constant(scalar.clone());
            for (s, &d) in word.iter().enumerate() {
                coeff = coeff.mul_ref(&pole_derivative(&z[tuple[s] - 1], d));
            }
            out = out.add(&NcDiffOp::from_coeff(
                *p,
                NcPoly::word(CyclicWord(tuple.clone())).mul_fn(&coeff),
            ));
            // advance
            let mut s = 0;
            loop {
                if s == j {
                    break;
                }
                tuple[s] += 1;
                if tuple[s] <= m {
                    break;
                }
                tuple[s] = 1;
                s += 1;
            }
            if s == j {
                break;
            }
        }
    }
    out
}

type CacheKey = (usize, usize, Vec<Rat>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<NcDiffOp>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<NcDiffOp>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The universal operator `tr (d/du - L(u))^k` for `m` points at the
/// (distinct) rational positions `z`. Memoized per `(k, m, z)`.
pub fn trace_power(k: usize, m: usize, z: &[Rat]) -> Arc<NcDiffOp> {
    assert!(k >= 1 && m >= 1);
    assert_eq!(z.len(), m, "need one position per point");
    for (i, a) in z.iter().enumerate() {
        for b in z.iter().skip(i + 1) {
            assert!(a != b, "pole positions must be distinct");
        }
    }
    let key = (k, m, z.to_vec());
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let result = Arc::new(trace_of_expansion(&expand_power(k), m, z));
    cache().lock().unwrap().insert(key, result.clone());
    result
}
