//! Rank-stabilized generators of the no-monodromy ideal for one-sided
//! bipartition data, and their one-parameter interpolation.
//!
//! The raw generators (indicial roots, reduced obstruction determinants,
//! infinity coefficients) have ranges and formulas that move with the order
//! `n`. Rewriting the indicial polynomial in the falling-factorial basis
//! shifted by `l_mu` produces coefficients `btilde` whose high-index slice
//! generates the same ideal together with boundary data whose formulas no
//! longer grow with `n`; the order then only enters polynomially and can be
//! read at the symbol `w`. Evaluating `w` at an integer makes exactly the
//! right binomial coefficients vanish, so the interpolated set projects onto
//! the fixed-order set.

use crate::diagram::Bipartition;
use crate::linalg::{det_bareiss, Mat};
use crate::rings::{binomial, falling_factorial, MPoly, Rat, Ring};

use super::{Exponents, FuchsError, FuchsOp, LocalOp};

/// Which value the order symbol takes in the generator formulas.
#[derive(Clone, Debug)]
pub enum StabMode {
    /// Fixed integer order: plain polynomial generators, shifted sums capped
    /// at the order.
    AtN(usize),
    /// Interpolated generators for every window `K <= n <= n_max`, with the
    /// order symbol kept as `w` and uncapped shifted sums.
    SymbolicWindow { n_max: usize },
}

impl StabMode {
    /// Default interpolation window: orders `K ..= K*m + 4` where `K` is the
    /// largest bipartition length and `m` the number of points.
    pub fn default_window(bips: &[Bipartition]) -> StabMode {
        let k = bips
            .iter()
            .map(|b| point_data(b).l)
            .max()
            .unwrap_or(1)
            .max(1);
        StabMode::SymbolicWindow {
            n_max: k * bips.len() + 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilizedSet {
    /// Windows the set covers (a single `n` in fixed mode).
    pub windows: Vec<usize>,
    pub entries: Vec<(String, MPoly)>,
}

impl StabilizedSet {
    pub fn find(&self, id: &str) -> Option<&MPoly> {
        self.entries.iter().find(|(k, _)| k == id).map(|(_, p)| p)
    }
}

/// `btilde_{j, -j+k}` for `j = 0..=i_max`, defined by rewriting
/// `sum_i b_{i,-i+k} ff(alpha, n-i)` as `sum_i btilde_{i,-i+k} ff(alpha - l_mu, n-i)`:
/// by the Vandermonde identity for falling factorials,
/// `btilde_j = sum_s b_{j-s, -(j-s)+k} C(n-j+s, s) ff(l_mu, s)`, the sum
/// capped at `s <= min(j, l_mu)`. The order enters polynomially and is passed
/// as a ring element (a constant, or `w`).
pub fn shifted_basis_coeffs(
    b: &dyn Fn(usize, i64) -> Result<MPoly, FuchsError>,
    order: &MPoly,
    l_mu: usize,
    i_max: usize,
    k: i64,
) -> Result<Vec<MPoly>, FuchsError> {
    let mut out = Vec::with_capacity(i_max + 1);
    for j in 0..=i_max {
        let mut acc = MPoly::zero();
        for s in 0..=j.min(l_mu) {
            let bval = b(j - s, -((j - s) as i64) + k)?;
            if bval.is_zero() {
                continue;
            }
            let top = order
                .sub_ref(&MPoly::from_int(j as i64))
                .add_ref(&MPoly::from_int(s as i64));
            let scalar = binomial(&top, s).mul_ref(&MPoly::from_rat(falling_factorial(
                &Rat::from(l_mu as i64),
                s,
            )));
            acc = acc.add_ref(&bval.mul_ref(&scalar));
        }
        out.push(acc);
    }
    Ok(out)
}

/// `rtilde_k` evaluated at the shifted argument `gamma = alpha - n + l_lambda + k`:
/// `sum_{i=0}^{l+k} btilde_{i,-i+k} ff(gamma, l+k-i)`; entries beyond the
/// stored table are zero (the fixed-order cap).
fn rtilde_at(btilde_k: &[MPoly], l: usize, k: usize, gamma: &MPoly) -> MPoly {
    let mut acc = MPoly::zero();
    for (i, bt) in btilde_k.iter().enumerate().take(l + k + 1) {
        if bt.is_zero() {
            continue;
        }
        acc = acc.add_ref(&bt.mul_ref(&falling_factorial(gamma, l + k - i)));
    }
    acc
}

/// Finite-difference conversion from indicial values to shifted-basis
/// coefficients: `btilde_{n-i+1, -n+i-1+k} = (1/(i-1)!) (T^{i-1} r_k)(l_mu + i - 1)`
/// where `T f(a) = f(a) - f(a-1)`. `vals[t]` must hold `r_k(l_mu + t)`.
pub fn indicial_to_shifted_values<R: Ring>(vals: &[R]) -> Vec<R> {
    let count = vals.len();
    let mut out = Vec::with_capacity(count);
    for i in 1..=count {
        let mut acc = R::zero();
        for t in 0..i {
            let c = crate::rings::binom_i64((i - 1) as i64, t as i64);
            let c = if t % 2 == 0 { c } else { c.neg_ref() };
            acc = acc.add_ref(&vals[i - 1 - t].scale(&c));
        }
        out.push(acc.scale(&Rat::factorial(i - 1).inv().unwrap()));
    }
    out
}

/// Inverse conversion: `r_k(l_mu + i - 1) = sum_{t=1}^{i} btilde'_t ff(i-1, t-1)`
/// in the output order of [`indicial_to_shifted_values`].
pub fn shifted_to_indicial_values<R: Ring>(btilde: &[R]) -> Vec<R> {
    let count = btilde.len();
    let mut out = Vec::with_capacity(count);
    for i in 1..=count {
        let mut acc = R::zero();
        for (t, bt) in btilde.iter().enumerate().take(i) {
            let ff = falling_factorial(&Rat::from((i - 1) as i64), t);
            acc = acc.add_ref(&bt.scale(&ff));
        }
        out.push(acc);
    }
    out
}

/// Taylor coefficient at infinity `a^inf_{i,k}`: coefficient of `x^k` in the
/// expansion of the `i`-th coefficient function in `x = 1/u`.
pub fn infinity_taylor_coeff(op: &FuchsOp<MPoly>, i: usize, k: i64) -> Result<MPoly, FuchsError> {
    let s = op.coeff_fn(i).expand_at_infinity(k + 1);
    s.coeff(k).ok_or(FuchsError::HorizonExceeded { needed: k })
}

struct PointData {
    l_lambda: usize,
    l_mu: usize,
    l: usize,
}

fn point_data(b: &Bipartition) -> PointData {
    let l_lambda = b.left_part().len();
    let l_mu = b.right_part().len();
    PointData {
        l_lambda,
        l_mu,
        l: l_lambda + l_mu,
    }
}

/// Right-sided exponent `m_t = -mu_t + t - 1` (order free; `mu_t = 0` past the
/// last part). Left-sided exponents are handled top-anchored:
/// `m_{n+1-i} = lambda_i - i + ORDER` uniformly in `i`.
fn right_exponent(bip: &Bipartition, t: usize) -> i64 {
    -(bip.right_part().part(t) as i64) + t as i64 - 1
}

/// The stabilized generating set for the given one-sided bipartitions at the
/// points `z`. In fixed mode this is the generating set for that order; in
/// symbolic mode the union of the interpolated sets over the window range,
/// with the order symbol `w`.
pub fn stabilized_generators(
    bips: &[Bipartition],
    z: &[Rat],
    mode: &StabMode,
) -> Result<StabilizedSet, FuchsError> {
    assert_eq!(bips.len(), z.len());
    let k_min = bips
        .iter()
        .map(|b| point_data(b).l)
        .max()
        .unwrap_or(0)
        .max(1);
    let (windows, symbolic): (Vec<usize>, bool) = match mode {
        StabMode::AtN(n) => (vec![*n], false),
        StabMode::SymbolicWindow { n_max } => ((k_min..=*n_max).collect(), true),
    };
    if windows.is_empty() {
        return Err(FuchsError::BadOperator("empty window range".into()));
    }

    let mut entries: Vec<(String, MPoly)> = Vec::new();
    let push = |entries: &mut Vec<(String, MPoly)>, id: String, p: MPoly| {
        if !entries.iter().any(|(k, q)| *k == id && *q == p) {
            entries.push((id, p));
        }
    };

    for &n in &windows {
        if bips.iter().any(|b| point_data(b).l > n) {
            return Err(FuchsError::BadOperator(format!(
                "window order {n} below a bipartition length"
            )));
        }
        let order_sym = if symbolic {
            MPoly::w()
        } else {
            MPoly::from_int(n as i64)
        };

        // per-point gap bound, to size operators and expansions
        let mut i_cap = n;
        let mut k_caps = Vec::with_capacity(bips.len());
        for bip in bips {
            let pd = point_data(bip);
            let first = bip.left_part().part(1).max(bip.right_part().part(1)) as usize;
            let gap = first + n + 1;
            k_caps.push(gap.max(n.saturating_sub(pd.l)));
            if symbolic {
                i_cap = i_cap.max(pd.l + gap);
            }
        }
        let op = FuchsOp::universal(i_cap, z.to_vec())?;

        // infinity generators: 1 <= i <= n, 1 <= k <= i-1 (order independent)
        for i in 1..=n {
            for k in 1..=(i as i64 - 1) {
                push(
                    &mut entries,
                    format!("inf/a[{i},{k}]"),
                    infinity_taylor_coeff(&op, i, k)?,
                );
            }
        }

        for (a0, bip) in bips.iter().enumerate() {
            let a = a0 + 1;
            let pd = point_data(bip);
            let k_cap = k_caps[a0];
            let local = op.localize(a, k_cap as i64 + 1)?;
            let b_at = |i: usize, kk: i64| local.b(i, kk);

            let mut btilde: Vec<Vec<MPoly>> = Vec::with_capacity(k_cap + 1);
            for k in 0..=k_cap {
                btilde.push(shifted_basis_coeffs(
                    &b_at, &order_sym, pd.l_mu, i_cap, k as i64,
                )?);
            }

            // slice generators btilde_{i, -i+k}: 0 <= k < n - l, k + l < i <= n
            for k in 0..n.saturating_sub(pd.l) {
                for i in (k + pd.l + 1)..=n {
                    push(
                        &mut entries,
                        format!("z{a}/btilde[{i},{k}]"),
                        btilde[k][i].clone(),
                    );
                }
            }

            // boundary data: indicial roots of the rewritten polynomial and
            // determinants of the rewritten reduced matrices
            if pd.l_mu == 0 {
                for j in 1..=pd.l {
                    let gamma = MPoly::from_int(
                        bip.left_part().part(j) as i64 - j as i64 + pd.l_lambda as i64,
                    );
                    push(
                        &mut entries,
                        format!("z{a}/rtilde0[{j}]"),
                        rtilde_at(&btilde[0], pd.l, 0, &gamma),
                    );
                }
            } else {
                for i in 1..=pd.l {
                    let gamma = MPoly::from_int(right_exponent(bip, i)).sub_ref(&order_sym);
                    push(
                        &mut entries,
                        format!("z{a}/rtilde0[{i}]"),
                        rtilde_at(&btilde[0], pd.l, 0, &gamma),
                    );
                }
            }

            // determinant generators: row exponents written against the
            // order symbol; the gap and the reduction pattern are order free
            struct PairSpec {
                id: String,
                m_lo_const: i64,
                m_lo_has_order: bool,
                k_gap: usize,
                drops: Vec<usize>,
            }
            let mut pairs: Vec<PairSpec> = Vec::new();
            if pd.l_mu == 0 {
                // top-anchored: m_{n+1-i} = lambda_i - i + ORDER for every i
                let lam = |i: usize| bip.left_part().part(i) as i64;
                for j in 1..=pd.l {
                    for i in (j + 1)..=n {
                        let gap = lam(j) - j as i64 - (lam(i) - i as i64);
                        let drops = ((j + 1)..i)
                            .map(|t| (lam(t) - t as i64 - (lam(i) - i as i64)) as usize)
                            .collect();
                        pairs.push(PairSpec {
                            id: format!("z{a}/detM[{i},{j}]"),
                            m_lo_const: lam(i) - i as i64,
                            m_lo_has_order: true,
                            k_gap: gap as usize,
                            drops,
                        });
                    }
                }
            } else {
                for i in 1..=pd.l {
                    for j in (i + 1)..=n {
                        let mi = right_exponent(bip, i);
                        let gap = right_exponent(bip, j) - mi;
                        let drops = ((i + 1)..j)
                            .map(|t| (right_exponent(bip, t) - mi) as usize)
                            .collect();
                        pairs.push(PairSpec {
                            id: format!("z{a}/detM[{i},{j}]"),
                            m_lo_const: mi,
                            m_lo_has_order: false,
                            k_gap: gap as usize,
                            drops,
                        });
                    }
                }
            }

            for spec in pairs {
                let k_gap = spec.k_gap;
                if k_gap == 0 {
                    continue;
                }
                debug_assert!(k_gap <= k_cap, "gap {k_gap} beyond table {k_cap}");
                let m_lo_sym = if spec.m_lo_has_order {
                    MPoly::from_int(spec.m_lo_const).add_ref(&order_sym)
                } else {
                    MPoly::from_int(spec.m_lo_const)
                };
                let pref_base = m_lo_sym
                    .add_ref(&MPoly::from_int(pd.l_lambda as i64 + k_gap as i64))
                    .sub_ref(&order_sym);
                let mut full: Mat<MPoly> = Mat::zero(k_gap, k_gap);
                for r in 0..k_gap {
                    for c in 0..k_gap {
                        let s = c as i64 + 1 - r as i64;
                        if s < 0 {
                            continue;
                        }
                        let s = s as usize;
                        let pref = falling_factorial(&pref_base, k_gap - c - 1);
                        let gamma = m_lo_sym
                            .add_ref(&MPoly::from_int(r as i64 + pd.l_lambda as i64 + s as i64))
                            .sub_ref(&order_sym);
                        full[(r, c)] = pref.mul_ref(&rtilde_at(&btilde[s], pd.l, s, &gamma));
                    }
                }
                let drop_cols: Vec<usize> = spec.drops.iter().map(|d| d - 1).collect();
                let red = full.minor(&spec.drops, &drop_cols);
                push(&mut entries, spec.id, det_bareiss(&red));
            }
        }
    }
    Ok(StabilizedSet { windows, entries })
}

/// Projection `pr . pi_n`: evaluate `w -> n` and kill generators above `n`.
pub fn project_to_order(p: &MPoly, n: usize) -> MPoly {
    p.eval_w(&Rat::from(n as i64)).project_max_i(n)
}

/// The raw generator set (indicial roots, reduced determinants, infinity
/// bounds) of the universal operator at fixed order, as polynomials.
pub fn raw_generators(
    bips: &[Bipartition],
    z: &[Rat],
    n: usize,
) -> Result<Vec<(String, MPoly)>, FuchsError> {
    let op = FuchsOp::universal(n, z.to_vec())?;
    let mut entries = Vec::new();
    for (a0, bip) in bips.iter().enumerate() {
        let a = a0 + 1;
        let weight = bip.weight(n)?;
        let exps = Exponents::from_weight(&weight)?;
        let spread = (exps.m(n) - exps.m(1)).max(0);
        let local = op.localize(a, spread + 1)?;
        for k in 1..=n {
            let v = local.indicial(0, &MPoly::from_int(exps.m(k)))?;
            entries.push((format!("z{a}/r0[{k}]"), v));
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let (_, red) = super::obstruction_matrices(&local, &exps, i, j)?;
                entries.push((format!("z{a}/detA[{i},{j}]"), det_bareiss(&red)));
            }
        }
    }
    let inf = op.localize_infinity(1);
    for i in 1..=n {
        for jj in (-2 * (i as i64) + 1)..=(-(i as i64) - 1) {
            entries.push((format!("inf/b[{i},{jj}]"), inf.b(i, jj)?));
        }
    }
    Ok(entries)
}

/// Substitutes the numeric coefficients of `op` into a generator polynomial.
pub fn eval_generator(p: &MPoly, op: &FuchsOp<Rat>) -> Rat {
    let values = |v: crate::rings::YVar| op.coeff(v.i as usize, v.j as usize, v.point as usize);
    p.subst_y(&values)
        .as_constant()
        .expect("generator must be w-free before numeric evaluation")
}

/// A localized view of a universal operator, used by ideal-comparison tests.
pub fn universal_local(
    n: usize,
    z: &[Rat],
    a: usize,
    trunc: i64,
) -> Result<LocalOp<MPoly>, FuchsError> {
    FuchsOp::universal(n, z.to_vec())?.localize(a, trunc)
}
