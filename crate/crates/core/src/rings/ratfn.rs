//! Rational functions of `u` kept natively in partial-fraction form.
//!
//! Every formula downstream reads off coefficients of `1/(u-z)^j`, so the
//! decomposition is the representation: a polynomial part plus a finite map
//! from (pole, order) to coefficient. Poles are rational; coefficients live in
//! an arbitrary Q-algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{binom_i64, DiffRing, FieldLike, Laurent, Rat, Ring};

/// `poly(u) + sum c_{z,j} / (u - z)^j`.
#[derive(Clone, PartialEq)]
pub struct RatFn<R: Ring> {
    poly: Vec<R>,
    poles: BTreeMap<(Rat, u32), R>,
}

impl<R: Ring> RatFn<R> {
    pub fn constant(c: R) -> Self {
        let poly = if c.is_zero() { vec![] } else { vec![c] };
        RatFn {
            poly,
            poles: BTreeMap::new(),
        }
    }

    /// The variable `u`.
    pub fn var() -> Self {
        RatFn {
            poly: vec![R::zero(), R::one()],
            poles: BTreeMap::new(),
        }
    }

    pub fn from_poly(coeffs: Vec<R>) -> Self {
        let mut f = RatFn {
            poly: coeffs,
            poles: BTreeMap::new(),
        };
        f.normalize();
        f
    }

    /// `c / (u - z)^j`.
    pub fn pole_term(z: Rat, j: u32, c: R) -> Self {
        assert!(j >= 1, "pole order must be >= 1");
        let mut poles = BTreeMap::new();
        if !c.is_zero() {
            poles.insert((z, j), c);
        }
        RatFn {
            poly: vec![],
            poles,
        }
    }

    fn normalize(&mut self) {
        while self.poly.last().is_some_and(|c| c.is_zero()) {
            self.poly.pop();
        }
        self.poles.retain(|_, c| !c.is_zero());
    }

    pub fn poly_coeff(&self, k: usize) -> R {
        self.poly.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn poly_degree(&self) -> Option<usize> {
        if self.poly.is_empty() {
            None
        } else {
            Some(self.poly.len() - 1)
        }
    }

    /// Coefficient of `1/(u - z)^j`.
    pub fn pole_coeff(&self, z: &Rat, j: u32) -> R {
        self.poles
            .get(&(z.clone(), j))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn pole_terms(&self) -> impl Iterator<Item = (&(Rat, u32), &R)> {
        self.poles.iter()
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> RatFn<S> {
        let mut out = RatFn {
            poly: self.poly.iter().map(&f).collect(),
            poles: self.poles.iter().map(|(k, c)| (k.clone(), f(c))).collect(),
        };
        out.normalize();
        out
    }

    /// Taylor coefficients of `poly` around `z`: returns `q` with
    /// `poly(u) = sum q[k] (u - z)^k`.
    fn poly_shifted(&self, z: &Rat) -> Vec<R> {
        let n = self.poly.len();
        let mut q = vec![R::zero(); n];
        for (t, c) in self.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // c * u^t = c * ((u-z) + z)^t
            for (k, slot) in q.iter_mut().enumerate().take(t + 1) {
                let scalar = binom_i64(t as i64, k as i64).mul_ref(&z.pow((t - k) as i64));
                *slot = slot.add_ref(&c.scale(&scalar));
            }
        }
        q
    }

    fn add_poly_in_shifted_basis(&mut self, z: &Rat, k: u32, c: &R) {
        // c * (u - z)^k expanded back into the u-basis
        for t in 0..=k {
            let scalar = binom_i64(k as i64, t as i64).mul_ref(&z.neg_ref().pow((k - t) as i64));
            if self.poly.len() <= t as usize {
                self.poly.resize(t as usize + 1, R::zero());
            }
            self.poly[t as usize] = self.poly[t as usize].add_ref(&c.scale(&scalar));
        }
    }

    fn add_pole(&mut self, z: Rat, j: u32, c: R) {
        if c.is_zero() {
            return;
        }
        let e = self.poles.entry((z, j)).or_insert_with(R::zero);
        *e = e.add_ref(&c);
    }

    /// Laurent expansion at `z` in the local coordinate `x = u - z`, exact up
    /// to `x^T`.
    pub fn laurent_at(&self, z: &Rat, trunc: i64) -> Laurent<R> {
        let mut acc = Laurent::zero_to(trunc);
        // polynomial part, shifted
        for (k, c) in self.poly_shifted(z).into_iter().enumerate() {
            acc = acc.add_ref(&Laurent::monomial(k as i64, c).truncate(trunc));
        }
        for ((b, j), c) in &self.poles {
            if b == z {
                acc = acc.add_ref(&Laurent::monomial(-(*j as i64), c.clone()).truncate(trunc));
            } else {
                // 1/(u-b)^j = ((z-b) + x)^{-j}: binomial series in x/(z-b)
                let base = z.sub_ref(b);
                let base_inv = base.inv().expect("distinct poles");
                let mut coeffs = Vec::new();
                for s in 0..=trunc.max(0) {
                    let scalar = binom_i64(-(*j as i64), s)
                        .mul_ref(&base.pow(-(*j as i64)))
                        .mul_ref(&base_inv.pow(s));
                    coeffs.push(c.scale(&scalar));
                }
                acc = acc.add_ref(&Laurent::new(0, coeffs, trunc));
            }
        }
        acc
    }

    /// Expansion at infinity in the coordinate `x = 1/u`, exact up to `x^T`.
    /// Polynomial parts contribute negative exponents.
    pub fn expand_at_infinity(&self, trunc: i64) -> Laurent<R> {
        let mut acc = Laurent::zero_to(trunc);
        for (k, c) in self.poly.iter().enumerate() {
            acc = acc.add_ref(&Laurent::monomial(-(k as i64), c.clone()).truncate(trunc));
        }
        for ((z, j), c) in &self.poles {
            // 1/(u-z)^j = x^j / (1-zx)^j = sum_{s>=0} C(j+s-1, s) z^s x^{j+s}
            let j64 = *j as i64;
            let mut coeffs = Vec::new();
            for s in 0..=(trunc - j64).max(-1) {
                let scalar = binom_i64(j64 + s - 1, s).mul_ref(&z.pow(s));
                coeffs.push(c.scale(&scalar));
            }
            if !coeffs.is_empty() {
                acc = acc.add_ref(&Laurent::new(j64, coeffs, trunc));
            }
        }
        acc
    }

    /// Collects everything over the common denominator: returns the
    /// numerator coefficients and the denominator as (pole, multiplicity)
    /// factors. Inverse of [`RatFn::from_fraction`].
    pub fn to_fraction(&self) -> (Vec<R>, Vec<(Rat, u32)>) {
        let mut factors: Vec<(Rat, u32)> = Vec::new();
        for ((z, j), _) in &self.poles {
            match factors.iter_mut().find(|(b, _)| b == z) {
                Some((_, e)) => *e = (*e).max(*j),
                None => factors.push((z.clone(), *j)),
            }
        }
        // denominator as a monic rational polynomial
        let mut den = vec![Rat::one()];
        for (z, e) in &factors {
            for _ in 0..*e {
                den = mul_rat_poly(&den, &[z.neg_ref(), Rat::one()]);
            }
        }
        // numerator = poly * den + sum of pole terms * (den / (u-z)^j)
        let mut num = mul_poly_scalarpoly(&self.poly, &den);
        for ((z, j), c) in &self.poles {
            let mut rest = vec![Rat::one()];
            for (b, e) in &factors {
                let m = if b == z { e - j } else { *e };
                for _ in 0..m {
                    rest = mul_rat_poly(&rest, &[b.neg_ref(), Rat::one()]);
                }
            }
            let term: Vec<R> = rest.iter().map(|a| c.scale(a)).collect();
            num = add_poly(&num, &term);
        }
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        (num, factors)
    }

    /// Rebuilds the partial-fraction form from a numerator and a list of
    /// distinct linear denominator factors with multiplicities.
    pub fn from_fraction(numerator: &[R], factors: &[(Rat, u32)]) -> RatFn<R> {
        let mut den = vec![Rat::one()];
        for (z, e) in factors {
            for _ in 0..*e {
                den = mul_rat_poly(&den, &[z.neg_ref(), Rat::one()]);
            }
        }
        // monic division: numerator = q * den + rem
        let mut rem: Vec<R> = numerator.to_vec();
        let d = den.len() - 1;
        let mut quot: Vec<R> = Vec::new();
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let lead = rem.last().unwrap().clone();
            if quot.len() <= k {
                quot.resize(k + 1, R::zero());
            }
            quot[k] = lead.clone();
            for (t, dc) in den.iter().enumerate() {
                let sub = lead.scale(dc);
                rem[k + t] = rem[k + t].sub_ref(&sub);
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() > k + d {
                // leading term did not cancel; numerical invariant broken
                break;
            }
        }
        let mut out = RatFn::from_poly(quot);
        // pole coefficients from the local expansion of rem / den at each z
        let rem_fn = RatFn {
            poly: rem,
            poles: BTreeMap::new(),
        };
        for (z, e) in factors {
            let mut series = rem_fn.laurent_at(z, *e as i64);
            for (b, m) in factors {
                if b == z {
                    continue;
                }
                // multiply by the expansion of (u - b)^{-m} at z
                let shifted: Laurent<R> = RatFn::pole_term(b.clone(), *m, R::one())
                    .laurent_at(z, *e as i64);
                series = series.mul_ref(&shifted);
            }
            for t in 0..*e {
                let c = series.coeff_or_zero(t as i64);
                out.add_pole(z.clone(), e - t, c);
            }
        }
        out.normalize();
        out
    }

    /// Evaluation at a rational point which must not be a pole.
    pub fn eval(&self, u: &Rat) -> R {
        let mut acc = R::zero();
        for (k, c) in self.poly.iter().enumerate() {
            acc = acc.add_ref(&c.scale(&u.pow(k as i64)));
        }
        for ((z, j), c) in &self.poles {
            let d = u.sub_ref(z);
            let dinv = d.inv().expect("evaluation at a pole");
            acc = acc.add_ref(&c.scale(&dinv.pow(*j as i64)));
        }
        acc
    }
}


fn mul_rat_poly(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn mul_poly_scalarpoly<R: Ring>(a: &[R], b: &[Rat]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.scale(y));
        }
    }
    out
}

fn add_poly<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(R::zero);
            let y = b.get(k).cloned().unwrap_or_else(R::zero);
            x.add_ref(&y)
        })
        .collect()
}

impl<R: Ring> fmt::Display for RatFn<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match k {
                0 => parts.push(format!("({c})")),
                1 => parts.push(format!("({c})*u")),
                _ => parts.push(format!("({c})*u^{k}")),
            }
        }
        for ((z, j), c) in &self.poles {
            parts.push(format!("({c})/(u-{z})^{j}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<R: Ring> fmt::Debug for RatFn<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Ring + Serialize> Serialize for RatFn<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pole<'a, R> {
            z: String,
            j: u32,
            coeff: &'a R,
        }
        let poles: Vec<Pole<'_, R>> = self
            .poles
            .iter()
            .map(|((z, j), c)| Pole {
                z: z.to_string(),
                j: *j,
                coeff: c,
            })
            .collect();
        let mut s = ser.serialize_struct("RatFn", 2)?;
        s.serialize_field("poly", &self.poly)?;
        s.serialize_field("poles", &poles)?;
        s.end()
    }
}

impl<R: Ring> Ring for RatFn<R> {
    fn zero() -> Self {
        RatFn::constant(R::zero())
    }

    fn one() -> Self {
        RatFn::constant(R::one())
    }

    fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.poles.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.poly.len().max(other.poly.len());
        let mut poly = Vec::with_capacity(n);
        for k in 0..n {
            poly.push(self.poly_coeff(k).add_ref(&other.poly_coeff(k)));
        }
        let mut out = RatFn {
            poly,
            poles: self.poles.clone(),
        };
        for ((z, j), c) in &other.poles {
            out.add_pole(z.clone(), *j, c.clone());
        }
        out.normalize();
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = RatFn::zero();

        // poly x poly
        if !self.poly.is_empty() && !other.poly.is_empty() {
            let mut poly = vec![R::zero(); self.poly.len() + other.poly.len() - 1];
            for (i, a) in self.poly.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.poly.iter().enumerate() {
                    poly[i + j] = poly[i + j].add_ref(&a.mul_ref(b));
                }
            }
            out = out.add_ref(&RatFn::from_poly(poly));
        }

        // poly x pole (both directions)
        for (p, q) in [(&self.poly, &other.poles), (&other.poly, &self.poles)] {
            if p.is_empty() {
                continue;
            }
            let probe = RatFn {
                poly: p.clone(),
                poles: BTreeMap::new(),
            };
            for ((z, j), c) in q.iter() {
                let shifted = probe.poly_shifted(z);
                for (k, a) in shifted.into_iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let prod = a.mul_ref(c);
                    if (k as i64) < *j as i64 {
                        out.add_pole(z.clone(), j - k as u32, prod);
                    } else {
                        out.add_poly_in_shifted_basis(z, k as u32 - j, &prod);
                    }
                }
            }
        }

        // pole x pole
        for ((za, ja), ca) in &self.poles {
            for ((zb, jb), cb) in &other.poles {
                let prod = ca.mul_ref(cb);
                if za == zb {
                    out.add_pole(za.clone(), ja + jb, prod);
                } else {
                    // partial fractions of 1/((u-a)^i (u-b)^j):
                    // coefficient of 1/(u-a)^k is C(-j, i-k) (a-b)^{-(i+j-k)+...}
                    let (i, j) = (*ja as i64, *jb as i64);
                    let d = za.sub_ref(zb); // a - b
                    for k in 1..=i {
                        let s = i - k;
                        let scalar = binom_i64(-j, s).mul_ref(&d.pow(-j - s));
                        out.add_pole(za.clone(), k as u32, prod.scale(&scalar));
                    }
                    let d2 = zb.sub_ref(za); // b - a
                    for k in 1..=j {
                        let s = j - k;
                        let scalar = binom_i64(-i, s).mul_ref(&d2.pow(-i - s));
                        out.add_pole(zb.clone(), k as u32, prod.scale(&scalar));
                    }
                }
            }
        }

        out.normalize();
        out
    }

    fn neg_ref(&self) -> Self {
        RatFn {
            poly: self.poly.iter().map(|c| c.neg_ref()).collect(),
            poles: self
                .poles
                .iter()
                .map(|(k, c)| (k.clone(), c.neg_ref()))
                .collect(),
        }
    }

    fn from_int(n: i64) -> Self {
        RatFn::constant(R::from_int(n))
    }

    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            poly: self.poly.iter().map(|a| a.scale(c)).collect(),
            poles: self
                .poles
                .iter()
                .map(|(k, a)| (k.clone(), a.scale(c)))
                .collect(),
        }
    }
}

impl<R: Ring> DiffRing for RatFn<R> {
    fn derivative(&self) -> Self {
        let mut poly = Vec::new();
        for (k, c) in self.poly.iter().enumerate().skip(1) {
            poly.push(c.scale(&Rat::from(k as i64)));
        }
        let mut out = RatFn {
            poly,
            poles: BTreeMap::new(),
        };
        for ((z, j), c) in &self.poles {
            out.add_pole(z.clone(), j + 1, c.scale(&Rat::from(-(*j as i64))));
        }
        out.normalize();
        out
    }
}

impl<R: Ring> FieldLike for RatFn<R> {
    /// Only constants are inverted; that is all the pseudo-differential
    /// calculus ever needs (monic leading coefficients).
    fn try_inv(&self) -> Option<Self> {
        if !self.poles.is_empty() || self.poly.len() > 1 {
            return None;
        }
        if self.poly.is_empty() {
            return None;
        }
        // R-level inversion is only available through scale by Rat; handle the
        // common case of a rational constant times one.
        let c = &self.poly[0];
        let one = R::one();
        // c = q * 1 for some rational q exactly when c is "scalar"; test by
        // round-trip against the multiplicative unit.
        // General R cannot be inverted; special-case R-units via FieldLike.
        scalar_inverse(c).map(|inv| RatFn::constant(inv.mul_ref(&one)))
    }
}

/// Inverts ring elements that support it (used for monic leading
/// coefficients). Falls back to `None` when the ring cannot invert.
fn scalar_inverse<R: Ring>(c: &R) -> Option<R> {
    if c.is_zero() {
        return None;
    }
    if c.is_one() {
        return Some(R::one());
    }
    if *c == R::one().neg_ref() {
        return Some(R::one().neg_ref());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pole(z: i64, j: u32, c: i64) -> RatFn<Rat> {
        RatFn::pole_term(Rat::from(z), j, Rat::from(c))
    }

    #[test]
    fn forced_partial_fractions() {
        // 1/(u(u-1)) = 1/(u-1) - 1/u
        let lhs = pole(0, 1, 1).mul_ref(&pole(1, 1, 1));
        let rhs = pole(1, 1, 1).sub_ref(&pole(0, 1, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_simple_pole() {
        // d/du 1/(u-z) = -1/(u-z)^2
        let f = pole(3, 1, 1);
        assert_eq!(f.derivative(), pole(3, 2, -1));
    }

    #[test]
    fn same_pole_product() {
        assert_eq!(pole(0, 1, 1).mul_ref(&pole(0, 1, 1)), pole(0, 2, 1));
    }

    #[test]
    fn round_trip_against_naive_product() {
        // (u + 1/(u-2)^2) * (u^2 - 3/(u+1)) evaluated at sample points agrees
        // with the partial-fraction product.
        let a = RatFn::from_poly(vec![Rat::zero(), Rat::one()]).add_ref(&pole(2, 2, 1));
        let b =
            RatFn::from_poly(vec![Rat::zero(), Rat::zero(), Rat::one()]).add_ref(&pole(-1, 1, -3));
        let prod = a.mul_ref(&b);
        for u in [3i64, 5, -4, 7] {
            let u = Rat::from(u);
            assert_eq!(prod.eval(&u), &a.eval(&u) * &b.eval(&u));
        }
    }

    #[test]
    fn laurent_expansion_examples() {
        // 1/(u - z) at z: x^{-1}
        let f = pole(5, 1, 1);
        let s = f.laurent_at(&Rat::from(5), 2);
        assert_eq!(s.coeff(-1), Some(Rat::one()));
        assert_eq!(s.coeff(0), Some(Rat::zero()));

        // 1/(u-1) at 0: -1 - x - x^2 - ...
        let g = pole(1, 1, 1);
        let s = g.laurent_at(&Rat::from(0), 2);
        for e in 0..=2 {
            assert_eq!(s.coeff(e), Some(Rat::from(-1)));
        }
    }

    #[test]
    fn infinity_expansion_examples() {
        // 1/(u-z): x + z x^2 + z^2 x^3
        let f = pole(4, 1, 1);
        let s = f.expand_at_infinity(3);
        assert_eq!(s.coeff(1), Some(Rat::one()));
        assert_eq!(s.coeff(2), Some(Rat::from(4)));
        assert_eq!(s.coeff(3), Some(Rat::from(16)));

        // constants stay constants
        let c: RatFn<Rat> = RatFn::constant(Rat::one());
        assert_eq!(c.expand_at_infinity(5).coeff(0), Some(Rat::one()));

        // 1/(u-z)^2: x^2 + 2z x^3 + 3z^2 x^4
        let g = pole(4, 2, 1);
        let s = g.expand_at_infinity(4);
        assert_eq!(s.coeff(2), Some(Rat::one()));
        assert_eq!(s.coeff(3), Some(Rat::from(8)));
        assert_eq!(s.coeff(4), Some(Rat::from(48)));
    }
}
