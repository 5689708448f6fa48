use std::collections::{BTreeMap, HashMap};

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::fields::{a_minus_apply, a_plus_apply, basis_monomials, e_minus, e_plus_apply, inverse_power_in, lift, one_minus_ratio_pow, single};
use super::laurent::{MultiLaurent, Window};
use super::lemma::vandermonde_pow;
use crate::error::{Error, Result};
use crate::fock::{FockElement, Poly};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{binomial, q, Q};
use crate::vertexops::y_lattice_mode;

/// Outcome of one windowed identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Value,
    pub window: Value,
    pub verdict: bool,
    pub witness: Option<Value>,
}

impl IdentityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "params": self.params,
            "window": self.window,
            "verdict": self.verdict,
            "witness": self.witness,
        })
    }
}

type Series = BTreeMap<Vec<i64>, FockElement>;

fn accumulate(map: &mut Series, key: Vec<i64>, v: &FockElement, c: &Q) {
    if v.is_zero() || c.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_insert_with(|| v.zero_like());
    slot.add_scaled(v, c);
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// Compares two coefficient maps on the keys accepted by `keep`; returns the
/// number of compared coefficients and the first mismatch.
fn compare(lhs: &Series, rhs: &Series, keep: impl Fn(&[i64]) -> bool) -> (usize, Option<Value>) {
    let mut keys: Vec<&Vec<i64>> = lhs.keys().chain(rhs.keys()).filter(|k| keep(k)).collect();
    keys.sort();
    keys.dedup();
    for k in &keys {
        let a = lhs.get(*k);
        let b = rhs.get(*k);
        let same = match (a, b) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        };
        if !same {
            let show = |x: Option<&FockElement>| x.map_or_else(|| "0".to_string(), |e| e.to_string());
            return (keys.len(), Some(json!({ "exp": k, "lhs": show(a), "rhs": show(b) })));
        }
    }
    (keys.len(), None)
}

fn report(identity: &str, params: Value, window: Value, checked: usize, witness: Option<Value>) -> IdentityReport {
    let mut window = window;
    if let Value::Object(m) = &mut window {
        m.insert("checked".into(), json!(checked));
    }
    IdentityReport { identity: identity.into(), params, window, verdict: witness.is_none(), witness }
}

fn ints(v: &LatticeVector) -> Result<Vec<i64>> {
    v.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()))
}

fn int_pairing(lattice: &Lattice, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
    let p = lattice.pairing(a, b)?;
    if !p.is_integer() {
        return Err(Error::NotInDual(b.to_string()));
    }
    p.to_integer().to_i64().ok_or_else(|| Error::Invalid("pairing overflow".into()))
}

fn vec_json(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(LatticeVector::to_json).collect())
}

fn wide(vars: usize) -> Window {
    Window::cube(vars, -1_000_000, 1_000_000)
}

fn embed(s: &MultiLaurent<Q>, at: usize, vars: usize) -> MultiLaurent<Q> {
    let mut out = MultiLaurent::zero(wide(vars));
    for (e, c) in s.terms() {
        let mut f = vec![0; vars];
        f[at..at + e.len()].copy_from_slice(e);
        out.add_term(f, c.clone());
    }
    out
}

fn charged(lattice: &Lattice, charge: &LatticeVector, f: &Poly) -> Result<FockElement> {
    Ok(FockElement::exp(lattice, charge)?.mul_poly(f))
}

fn to_series(lattice: &Lattice, charge: &LatticeVector, s: &MultiLaurent<Poly>) -> Result<Series> {
    let mut out = Series::new();
    for (e, p) in s.terms() {
        out.insert(e.clone(), charged(lattice, charge, p)?);
    }
    Ok(out)
}

/// Coefficient of `w^b` in `E^-(-β, w)`.
fn h_coeff(beta: &[i64], b: i64) -> Poly {
    e_minus(beta, 0, &Window::cube(1, 0, b)).coeff(&[b])
}

/// A window in which every coefficient of the product formula has
/// Heisenberg degree at most `degree`.
pub fn product_window(
    lattice: &Lattice,
    alpha: &LatticeVector,
    r: usize,
    betas: &[LatticeVector],
    eta: &LatticeVector,
    degree: u32,
) -> Result<Window> {
    let ae = int_pairing(lattice, alpha, eta)?;
    let norm = int_pairing(lattice, alpha, alpha)?;
    let d = degree as i64;
    let l = betas.len() as i64;
    let mut lo = vec![ae - l * d; r];
    let mut hi = vec![ae + norm * (r as i64 - 1) + d; r];
    lo.extend(vec![0; betas.len()]);
    hi.extend(vec![d; betas.len()]);
    Window::new(lo, hi)
}

/// Checks `Y(e^α,z_1)⋯Y(e^α,z_r) E^-(-β_1,w_1)⋯E^-(-β_l,w_l) e^η` against the
/// closed product of the sign, `(z_1⋯z_r)^{⟨α,η⟩}`, `∏(z_k - z_s)^{⟨α,α⟩}`,
/// `∏(1 - w_s/z_k)^{⟨α,β_s⟩}` and the `E^-` series, on every window coefficient
/// of Heisenberg degree at most `max_degree`.
pub fn product_formula_check(
    lattice: &Lattice,
    alpha: &LatticeVector,
    r: usize,
    betas: &[LatticeVector],
    eta: &LatticeVector,
    window: &Window,
    max_degree: u32,
) -> Result<IdentityReport> {
    let l = betas.len();
    let vars = r + l;
    if r == 0 || window.vars() != vars {
        return Err(Error::WindowTooSmall(format!("need a window in {vars} variables (z then w)")));
    }
    let a = ints(alpha)?;
    let bs: Vec<Vec<i64>> = betas.iter().map(ints).collect::<Result<_>>()?;
    let norm = int_pairing(lattice, alpha, alpha)?;
    if norm < 0 {
        return Err(Error::Invalid("the Vandermonde factor needs ⟨α,α⟩ ≥ 0".into()));
    }
    let ae = int_pairing(lattice, alpha, eta)?;
    let base = FockElement::exp(lattice, eta)?;
    let eta_off = base.components().keys().next().cloned().unwrap_or_else(|| vec![0; lattice.rank()]);
    let mut sign = 1;
    let mut cur = eta_off.clone();
    for _ in 0..r {
        sign *= lattice.cocycle().eval(&a, &cur);
        for (c, x) in cur.iter_mut().zip(&a) {
            *c += x;
        }
    }
    let out_charge = eta.add(&alpha.scale(&q(r as i64)));

    // formula side: the E^- product truncated at Heisenberg degree `max_degree`
    // (exact, every coefficient being homogeneous), times the finite scalar part
    let d = max_degree as i64;
    let whi: Vec<i64> = (0..l).map(|s| window.hi[r + s].max(0)).collect();
    let gen = Window::cube(vars, 0, d);
    let mut series = MultiLaurent::<Poly>::one(gen.clone());
    for k in 0..r {
        series = series.mul_where(&e_minus(&a, k, &gen), |e| e.iter().sum::<i64>() <= d);
    }
    for (s, b) in bs.iter().enumerate() {
        series = series.mul_where(&e_minus(b, r + s, &gen), |e| e.iter().sum::<i64>() <= d);
    }
    let mut start_exp = vec![ae; r];
    start_exp.extend(vec![0; l]);
    let mut scalar = MultiLaurent::monomial(wide(vars), start_exp, q(sign));
    let top = norm * (r as i64 - 1);
    let vand = vandermonde_pow(r, norm as u32, &Window::cube(r, 0, top))?;
    scalar = scalar.mul(&embed(&vand, 0, vars));
    for k in 0..r {
        for (s, beta) in betas.iter().enumerate() {
            let c = int_pairing(lattice, alpha, beta)?;
            scalar = scalar.mul(&one_minus_ratio_pow(c, k, r + s, whi[s], &wide(vars)));
        }
    }
    let formula = lift(&scalar).mul(&series.with_window(wide(vars))).with_window(window.clone());
    let rhs = to_series(lattice, &out_charge, &formula)?;
    let shift = r as i64 * ae + norm * (r * (r - 1)) as i64 / 2;
    let degree_ok = |e: &[i64]| e.iter().sum::<i64>() - shift <= d;

    // operator side
    let mut lhs = Series::new();
    let wpoints: Vec<Vec<i64>> = if l == 0 {
        vec![Vec::new()]
    } else {
        Window::new(vec![0; l], whi.clone())?.points()
    };
    for bvec in wpoints {
        // only z-exponent sums up to `budget` reach degree ≤ max_degree
        let budget = d + shift - bvec.iter().sum::<i64>();
        let lo_sum = |k: usize| window.lo[..k].iter().sum::<i64>();
        if lo_sum(r) > budget {
            continue;
        }
        let mut u = base.clone();
        for (b, &bi) in bs.iter().zip(&bvec) {
            u = u.mul_poly(&h_coeff(b, bi));
        }
        let mut layer: Vec<(Vec<i64>, FockElement)> = vec![(Vec::new(), u)];
        for k in (0..r).rev() {
            let mut next = Vec::new();
            for (exps, v) in &layer {
                let used: i64 = exps.iter().sum();
                let top = window.hi[k].min(budget - used - lo_sum(k));
                for ak in window.lo[k]..=top {
                    let y = y_lattice_mode(lattice, alpha, -ak - 1, v)?;
                    if !y.is_zero() {
                        let mut e = vec![ak];
                        e.extend(exps.iter().cloned());
                        next.push((e, y));
                    }
                }
            }
            layer = next;
        }
        for (mut exps, v) in layer {
            exps.extend(bvec.iter().cloned());
            accumulate(&mut lhs, exps, &v, &q(1));
        }
    }
    let (checked, witness) = compare(&lhs, &rhs, |e| window.contains(e) && degree_ok(e));
    let params = json!({
        "gram": lattice.gram(), "alpha": alpha.to_json(), "r": r, "max_degree": max_degree,
        "betas": vec_json(betas), "eta": eta.to_json(),
    });
    Ok(report("product_formula", params, window.to_json(), checked, witness))
}

/// Checks `E^+(-α,z) E^-(-β,w) = E^-(-β,w) E^+(-α,z) (1 - w/z)^{⟨α,β⟩}` on
/// every Fock monomial of degree at most `degree`, for `w`-exponents up to `degree`.
pub fn contraction_check(lattice: &Lattice, alpha: &LatticeVector, beta: &LatticeVector, degree: u32) -> Result<IdentityReport> {
    let a = ints(alpha)?;
    let b = ints(beta)?;
    let pa = lattice.gram_times(&a);
    let c = lattice.pairing_int(&a, &b);
    let d = degree as i64;
    let win = Window::new(vec![-4 * d - 1, 0], vec![0, d])?;
    let em = e_minus(&b, 1, &win);
    let contraction = lift(&one_minus_ratio_pow(c, 0, 1, d, &wide(2)));
    let zero = LatticeVector::zero(lattice.rank());
    let mut checked = 0;
    let mut witness = None;
    for m in basis_monomials(lattice.rank(), degree) {
        let u = Poly::monomial(m.clone(), q(1));
        let mut lhs = MultiLaurent::zero(win.clone());
        for (e, hb) in em.terms() {
            let g = hb.mul(&u);
            let img = e_plus_apply(&pa, &g, 0, &win);
            for (ez, p) in img.terms() {
                lhs.add_term(vec![ez[0], e[1]], p.clone());
            }
        }
        let rhs = e_plus_apply(&pa, &u, 0, &win).mul(&em).mul(&contraction);
        let (n, w) = compare(&to_series(lattice, &zero, &lhs)?, &to_series(lattice, &zero, &rhs)?, |e| e[1] <= d);
        checked += n;
        if let Some(mut w) = w {
            w["on"] = json!(m.to_string());
            witness = Some(w);
            break;
        }
    }
    let params = json!({ "gram": lattice.gram(), "alpha": alpha.to_json(), "beta": beta.to_json() });
    Ok(report("contraction", params, json!({ "degree": degree, "w_max": degree }), checked, witness))
}

fn sample_elements(lattice: &Lattice, degree: u32, charges: &[LatticeVector]) -> Result<Vec<FockElement>> {
    let mut out = Vec::new();
    for ch in charges {
        for m in basis_monomials(lattice.rank(), degree) {
            out.push(charged(lattice, ch, &Poly::monomial(m, q(1)))?);
        }
    }
    Ok(out)
}

fn a_plus_chain(lattice: &Lattice, ops: &[(LatticeVector, u32)], u: BTreeMap<i64, FockElement>) -> BTreeMap<i64, FockElement> {
    ops.iter().fold(u, |acc, (b, m)| a_plus_apply(lattice, b, *m, &acc))
}

fn a_minus_chain(lattice: &Lattice, ops: &[(LatticeVector, u32)], u: BTreeMap<i64, FockElement>, zmax: i64) -> BTreeMap<i64, FockElement> {
    ops.iter().fold(u, |acc, (b, m)| a_minus_apply(lattice, b, *m, &acc, zmax))
}

/// `(-1)^{m-1}⟨α,β⟩ Σ_{k≥1} k C(k+m-1,m-1) C(k-1,n-1) z^{-k-m} w^{k-n}` up to `k = kmax`.
fn contraction_series(pairing: i64, m: u32, n: u32, kmax: i64) -> BTreeMap<(i64, i64), Q> {
    let mut out = BTreeMap::new();
    let sign = if m % 2 == 1 { 1 } else { -1 };
    for k in 1..=kmax {
        let c = Q::from_integer(binomial(k + m as i64 - 1, m as i64 - 1) * binomial(k - 1, n as i64 - 1)) * q(sign * pairing * k);
        if !c.is_zero() {
            out.insert((-k - m as i64, k - n as i64), c);
        }
    }
    out
}

/// `[A^+(z), A^-(w)] u` for a product of annihilators and one creator.
fn commutator_on(
    lattice: &Lattice,
    plus: &[(LatticeVector, u32)],
    minus: &(LatticeVector, u32),
    u: &FockElement,
    wmax: i64,
) -> Series {
    let mut out = Series::new();
    let mk = |m: &BTreeMap<i64, FockElement>| m.clone();
    let am = a_minus_chain(lattice, std::slice::from_ref(minus), single(u.clone()), wmax);
    for (we, v) in &am {
        for (ze, x) in a_plus_chain(lattice, plus, single(v.clone())) {
            accumulate(&mut out, vec![ze, *we], &x, &q(1));
        }
    }
    let ap = a_plus_chain(lattice, plus, single(u.clone()));
    for (ze, v) in mk(&ap) {
        for (we, x) in a_minus_chain(lattice, std::slice::from_ref(minus), single(v), wmax) {
            accumulate(&mut out, vec![ze, we], &x, &q(-1));
        }
    }
    out
}

/// Checks `[A^+_{α,m}(z), A^-_{β,n}(w)]` against its scalar contraction series
/// on all monomials of degree at most `degree` with charges `0` and `β`.
pub fn wick_commutator_check(
    lattice: &Lattice,
    alpha: &LatticeVector,
    beta: &LatticeVector,
    m: u32,
    n: u32,
    degree: u32,
) -> Result<IdentityReport> {
    if m == 0 || n == 0 {
        return Err(Error::Invalid("mode indices must be at least 1".into()));
    }
    let pairing = int_pairing(lattice, alpha, beta)?;
    let kmax = degree as i64 + 2;
    let wmax = kmax - n as i64;
    let series = contraction_series(pairing, m, n, kmax);
    let charges = [LatticeVector::zero(lattice.rank()), beta.clone()];
    let mut checked = 0;
    let mut witness = None;
    for u in sample_elements(lattice, degree, &charges)? {
        let lhs = commutator_on(lattice, &[(alpha.clone(), m)], &(beta.clone(), n), &u, wmax);
        let mut rhs = Series::new();
        for ((ze, we), c) in &series {
            accumulate(&mut rhs, vec![*ze, *we], &u, c);
        }
        let (k, w) = compare(&lhs, &rhs, |e| e[1] <= wmax);
        checked += k;
        if let Some(mut w) = w {
            w["on"] = json!(u.to_string());
            witness = Some(w);
            break;
        }
    }
    let params = json!({ "gram": lattice.gram(), "alpha": alpha.to_json(), "beta": beta.to_json(), "m": m, "n": n });
    Ok(report("wick_commutator", params, json!({ "degree": degree, "k_max": kmax }), checked, witness))
}

/// Checks `[A^+_{α_1,m_1}(z) A^+_{α_2,m_2}(z), A^-_{β,n}(w)]
/// = C_2(z,w) A^+_{α_1,m_1}(z) + C_1(z,w) A^+_{α_2,m_2}(z)` with the
/// pairwise contraction series `C_j`.
pub fn wick_two_factor_check(
    lattice: &Lattice,
    first: &(LatticeVector, u32),
    second: &(LatticeVector, u32),
    beta: &(LatticeVector, u32),
    degree: u32,
) -> Result<IdentityReport> {
    let kmax = degree as i64 + 2;
    let n = beta.1;
    if first.1 == 0 || second.1 == 0 || n == 0 {
        return Err(Error::Invalid("mode indices must be at least 1".into()));
    }
    let wmax = kmax - n as i64;
    let c1 = contraction_series(int_pairing(lattice, &first.0, &beta.0)?, first.1, n, kmax);
    let c2 = contraction_series(int_pairing(lattice, &second.0, &beta.0)?, second.1, n, kmax);
    let charges = [LatticeVector::zero(lattice.rank()), beta.0.clone()];
    let mut checked = 0;
    let mut witness = None;
    for u in sample_elements(lattice, degree, &charges)? {
        let lhs = commutator_on(lattice, &[first.clone(), second.clone()], beta, &u, wmax);
        let mut rhs = Series::new();
        for (series, other) in [(&c2, first), (&c1, second)] {
            let img = a_plus_chain(lattice, std::slice::from_ref(other), single(u.clone()));
            for ((sz, sw), c) in series {
                for (ze, v) in &img {
                    accumulate(&mut rhs, vec![sz + ze, *sw], v, c);
                }
            }
        }
        let (k, w) = compare(&lhs, &rhs, |e| e[1] <= wmax);
        checked += k;
        if let Some(mut w) = w {
            w["on"] = json!(u.to_string());
            witness = Some(w);
            break;
        }
    }
    let params = json!({
        "gram": lattice.gram(),
        "plus": [[first.0.to_json(), first.1], [second.0.to_json(), second.1]],
        "minus": [beta.0.to_json(), n],
    });
    Ok(report("wick_two_factor", params, json!({ "degree": degree, "k_max": kmax }), checked, witness))
}

/// Checks `A^+_{α(λ)}(z) ∏_i E^-(-β_i,w_i) e^{|β|} = f_{α(λ)}(β,z;w) ∏_i E^-(-β_i,w_i) e^{|β|}`
/// where `f` is the product over `j` of `Σ_i ⟨α_j,β_i⟩(-1)^{λ_j-1}(z-w_i)^{-λ_j}`
/// expanded in the `w_i`, for all `w`-exponents up to `degree`.
pub fn annihilator_exponential_check(
    lattice: &Lattice,
    alphas: &[(LatticeVector, u32)],
    betas: &[LatticeVector],
    degree: u32,
) -> Result<IdentityReport> {
    let l = betas.len();
    let vars = 1 + l;
    let d = degree as i64;
    let bs: Vec<Vec<i64>> = betas.iter().map(ints).collect::<Result<_>>()?;
    let total = betas.iter().fold(LatticeVector::zero(lattice.rank()), |acc, b| acc.add(b));
    let lam: i64 = alphas.iter().map(|(_, m)| *m as i64).sum();
    let zlo = -lam - alphas.len() as i64 * l as i64 * d - 1;
    let mut lo = vec![zlo];
    lo.extend(vec![0; l]);
    let mut hi = vec![0];
    hi.extend(vec![d; l]);
    let win = Window::new(lo, hi)?;

    let mut formula = MultiLaurent::<Poly>::one(win.clone());
    for (alpha, m) in alphas {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let mut factor = MultiLaurent::<Q>::zero(wide(vars));
        for (i, beta) in betas.iter().enumerate() {
            let c = int_pairing(lattice, alpha, beta)? * sign;
            factor = factor.add(&inverse_power_in(*m, 0, 1 + i, d, &wide(vars)).scale(&q(c)));
        }
        formula = formula.mul(&lift(&factor));
    }
    for (i, b) in bs.iter().enumerate() {
        formula = formula.mul(&e_minus(b, 1 + i, &win));
    }
    let rhs = to_series(lattice, &total, &formula)?;

    let mut lhs = Series::new();
    let wpoints = if l == 0 { vec![Vec::new()] } else { Window::cube(l, 0, d).points() };
    for bvec in wpoints {
        let mut u = FockElement::exp(lattice, &total)?;
        for (b, &bi) in bs.iter().zip(&bvec) {
            u = u.mul_poly(&h_coeff(b, bi));
        }
        for (ze, v) in a_plus_chain(lattice, alphas, single(u)) {
            let mut key = vec![ze];
            key.extend(bvec.iter().cloned());
            accumulate(&mut lhs, key, &v, &q(1));
        }
    }
    let (checked, witness) = compare(&lhs, &rhs, |e| win.contains(e));
    let params = json!({
        "gram": lattice.gram(),
        "alphas": alphas.iter().map(|(a, m)| json!([a.to_json(), m])).collect::<Vec<_>>(),
        "betas": vec_json(betas),
    });
    Ok(report("annihilator_exponential", params, win.to_json(), checked, witness))
}

fn subsets<T: Clone>(items: &[T], mask: u64) -> (Vec<T>, Vec<T>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (j, x) in items.iter().enumerate() {
        if mask >> j & 1 == 1 {
            inside.push(x.clone());
        } else {
            outside.push(x.clone());
        }
    }
    (inside, outside)
}

/// Checks `A^+_{α(λ)}(z) Y(e^β,w) = Y(e^β,w) ∏_p (A^+_{α_p,λ_p}(z) + (-1)^{λ_p-1}⟨α_p,β⟩(z-w)^{-λ_p})`
/// (expanded in `w`) on `samples`, for `z`-exponents in `[zlo, 0]` and `w`-exponents in `[wlo, whi]`.
pub fn annihilator_vertex_check(
    lattice: &Lattice,
    alphas: &[(LatticeVector, u32)],
    beta: &LatticeVector,
    samples: &[FockElement],
    zlo: i64,
    wlo: i64,
    whi: i64,
) -> Result<IdentityReport> {
    let k = alphas.len();
    let mut checked = 0;
    let mut witness = None;
    let kmax = -zlo;
    for u in samples {
        let mut lhs = Series::new();
        for e in wlo..=whi {
            let y = y_lattice_mode(lattice, beta, -e - 1, u)?;
            for (ze, v) in a_plus_chain(lattice, alphas, single(y)) {
                if ze >= zlo {
                    accumulate(&mut lhs, vec![ze, e], &v, &q(1));
                }
            }
        }
        let mut rhs = Series::new();
        let mut ycache: HashMap<(i64, i64, u64), FockElement> = HashMap::new();
        for mask in 0..1u64 << k {
            let (inside, outside) = subsets(alphas, mask);
            let mut scalar = MultiLaurent::<Q>::one(Window::new(vec![zlo, 0], vec![0, kmax])?);
            for (alpha, m) in &inside {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                let c = int_pairing(lattice, alpha, beta)? * sign;
                scalar = scalar.mul(&inverse_power_in(*m, 0, 1, kmax, &wide(2)).scale(&q(c)));
            }
            let img = a_plus_chain(lattice, &outside, single(u.clone()));
            for (se, c) in scalar.terms() {
                for (ze, v) in &img {
                    if se[0] + ze < zlo {
                        continue;
                    }
                    for e in wlo..=whi {
                        let n = -(e - se[1]) - 1;
                        let y = ycache
                            .entry((*ze, n, mask))
                            .or_insert_with(|| y_lattice_mode(lattice, beta, n, v).expect("validated"))
                            .clone();
                        accumulate(&mut rhs, vec![se[0] + ze, e], &y, c);
                    }
                }
            }
        }
        let (n, w) = compare(&lhs, &rhs, |e| e[0] >= zlo && wlo <= e[1] && e[1] <= whi);
        checked += n;
        if let Some(mut w) = w {
            w["on"] = json!(u.to_string());
            witness = Some(w);
            break;
        }
    }
    let params = json!({
        "gram": lattice.gram(),
        "alphas": alphas.iter().map(|(a, m)| json!([a.to_json(), m])).collect::<Vec<_>>(),
        "beta": beta.to_json(),
        "samples": samples.len(),
    });
    Ok(report("annihilator_vertex", params, json!({ "z": [zlo, 0], "w": [wlo, whi] }), checked, witness))
}

/// Checks `Y(e^β,w) A^-_{α(λ)}(z) = ∏_p (A^-_{α_p,λ_p}(z) - ⟨α_p,β⟩(w-z)^{-λ_p}) Y(e^β,w)`
/// (expanded in `z`) on `samples`, for `z`-exponents in `[0, zhi]` and `w`-exponents in `[wlo, whi]`.
pub fn vertex_creator_check(
    lattice: &Lattice,
    alphas: &[(LatticeVector, u32)],
    beta: &LatticeVector,
    samples: &[FockElement],
    zhi: i64,
    wlo: i64,
    whi: i64,
) -> Result<IdentityReport> {
    let k = alphas.len();
    let mut checked = 0;
    let mut witness = None;
    for u in samples {
        let mut lhs = Series::new();
        for (ze, v) in a_minus_chain(lattice, alphas, single(u.clone()), zhi) {
            for e in wlo..=whi {
                let y = y_lattice_mode(lattice, beta, -e - 1, &v)?;
                accumulate(&mut lhs, vec![ze, e], &y, &q(1));
            }
        }
        let mut rhs = Series::new();
        for mask in 0..1u64 << k {
            let (inside, outside) = subsets(alphas, mask);
            let lam: i64 = inside.iter().map(|(_, m)| *m as i64).sum();
            let mut scalar = MultiLaurent::<Q>::one(Window::new(vec![0, -lam - zhi], vec![zhi, 0])?);
            for (alpha, m) in &inside {
                let c = -int_pairing(lattice, alpha, beta)?;
                scalar = scalar.mul(&inverse_power_in(*m, 1, 0, zhi, &wide(2)).scale(&q(c)));
            }
            for (se, c) in scalar.terms() {
                for e in wlo..=whi {
                    let y = y_lattice_mode(lattice, beta, -(e - se[1]) - 1, u)?;
                    for (ze, v) in a_minus_chain(lattice, &outside, single(y), zhi - se[0]) {
                        accumulate(&mut rhs, vec![se[0] + ze, e], &v, c);
                    }
                }
            }
        }
        let (n, w) = compare(&lhs, &rhs, |e| e[0] <= zhi && wlo <= e[1] && e[1] <= whi);
        checked += n;
        if let Some(mut w) = w {
            w["on"] = json!(u.to_string());
            witness = Some(w);
            break;
        }
    }
    let params = json!({
        "gram": lattice.gram(),
        "alphas": alphas.iter().map(|(a, m)| json!([a.to_json(), m])).collect::<Vec<_>>(),
        "beta": beta.to_json(),
        "samples": samples.len(),
    });
    Ok(report("vertex_creator", params, json!({ "z": [0, zhi], "w": [wlo, whi] }), checked, witness))
}
