use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::modes::{charge_pairings, coset_pairings, general_mode_unchecked, h_series_arc};
use super::word::VertexWord;
use crate::error::{Error, Result};
use crate::fock::{compositions, FockElement, Poly};
use crate::lattice::Lattice;
use crate::memo::{memo, Cache};
use crate::rational::{factorial, q, Q};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

type Vandermonde = BTreeMap<Vec<u32>, BigInt>;
static VANDERMONDE: Cache<(usize, u32), Vandermonde> = Cache::new(Default::default);

/// `∏_{k<s} (z_k - z_s)^N` as `{exponent vector ↦ coefficient}`.
fn vandermonde(r: usize, pow: u32) -> std::sync::Arc<Vandermonde> {
    memo(&VANDERMONDE, (r, pow), || {
        let mut acc: Vandermonde = BTreeMap::new();
        acc.insert(vec![0; r], BigInt::one());
        for k in 0..r {
            for s in k + 1..r {
                for _ in 0..pow {
                    let mut next: Vandermonde = BTreeMap::new();
                    for (e, c) in &acc {
                        let mut a = e.clone();
                        a[k] += 1;
                        *next.entry(a).or_default() += c;
                        let mut b = e.clone();
                        b[s] += 1;
                        *next.entry(b).or_default() -= c;
                    }
                    next.retain(|_, c| !c.is_zero());
                    acc = next;
                }
            }
        }
        acc
    })
}

/// `y_n^r elem / r!` for `Y(e^α,z)` via the closed product formula for
/// `Y(e^α,z_1) ⋯ Y(e^α,z_r)`.
fn lattice_divided_power(lattice: &Lattice, alpha: &[i64], n: i64, r: usize, elem: &FockElement) -> FockElement {
    let norm = lattice.pairing_int(alpha, alpha);
    let pow = norm as u32;
    let vand = vandermonde(r, pow);
    let shift = lattice.gram_times(alpha);
    let cp = coset_pairings(lattice, elem);
    let ri = r as i64;
    let denom = Q::from_integer(factorial(r as u64));

    let comps: Vec<(&Vec<i64>, &Poly)> = elem.components().iter().collect();
    let parts: Vec<(Vec<i64>, Poly)> = comps
        .par_iter()
        .filter_map(|(off, p)| {
            let ge = dot(alpha, &charge_pairings(lattice, &cp, off));
            let mut sign = 1;
            let mut cur = (*off).clone();
            for _ in 0..r {
                sign *= lattice.cocycle().eval(alpha, &cur);
                for (c, a) in cur.iter_mut().zip(alpha) {
                    *c += a;
                }
            }
            let t = -n - 1 - ge;
            let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
            for (mono, c) in p.terms() {
                by_deg.entry(mono.degree()).or_default().add_term(mono.clone(), c.clone());
            }
            let mut acc = Poly::zero();
            let mut memo_g: HashMap<Vec<i64>, Poly> = HashMap::new();
            for (d, piece) in by_deg {
                let d_out = d as i64 + ri * (norm / 2 - n - 1) - ri * ge - ri * ri * norm / 2;
                if d_out < 0 {
                    continue;
                }
                for (j, f) in piece.shift(&shift, r, Some(d_out as u32)) {
                    let u: Vec<i64> = j.iter().map(|&jk| t + jk as i64).collect();
                    let g = memo_g.entry(u.clone()).or_insert_with(|| {
                        let mut g = Poly::zero();
                        for (a, c) in vand.iter() {
                            let ms: Vec<i64> = u.iter().zip(a).map(|(uk, &ak)| uk - ak as i64).collect();
                            if ms.iter().any(|&m| m < 0) {
                                continue;
                            }
                            let mut prod = Poly::constant(Q::from_integer(c.clone()));
                            for m in ms {
                                prod = prod.mul(&h_series_arc(alpha, m as u32));
                            }
                            g.add_assign(&prod);
                        }
                        g
                    });
                    if g.is_zero() {
                        continue;
                    }
                    f.mul_into(g, &q(sign), &mut acc);
                }
            }
            if acc.is_zero() {
                None
            } else {
                Some((cur, acc))
            }
        })
        .collect();
    let mut out = elem.zero_like();
    let inv = Q::one() / denom;
    for (off, p) in parts {
        out.add_poly(&off, &p, &inv);
    }
    out
}

/// `(v_n)^r elem / r!` by `r` successive mode applications and exact division.
pub fn divided_power_iterated(
    lattice: &Lattice,
    word: &VertexWord,
    n: i64,
    r: usize,
    elem: &FockElement,
) -> Result<FockElement> {
    word.check(lattice)?;
    let mut cur = elem.clone();
    for _ in 0..r {
        cur = general_mode_unchecked(lattice, word, n, &cur);
        if cur.is_zero() {
            break;
        }
    }
    Ok(cur.scale(&(Q::one() / Q::from_integer(factorial(r as u64)))))
}

/// The divided power `v_n^{(r)} = v_n^r / r!` applied to `elem`.
///
/// Pure charge words on lattices where `⟨γ,γ⟩ ≥ 0` use the product formula;
/// everything else is computed by iteration.
pub fn divided_power(lattice: &Lattice, word: &VertexWord, n: i64, r: usize, elem: &FockElement) -> Result<FockElement> {
    word.check(lattice)?;
    if elem.rank() != lattice.rank() {
        return Err(Error::RankMismatch { expected: lattice.rank(), got: elem.rank() });
    }
    if r == 0 {
        return Ok(elem.clone());
    }
    if word.is_pure_charge() && r > 1 && lattice.pairing_int(word.gamma(), word.gamma()) >= 0 {
        return Ok(lattice_divided_power(lattice, word.gamma(), n, r, elem));
    }
    divided_power_iterated(lattice, word, n, r, elem)
}

/// `(Σ_i v^i_n)^{(r)}` for pairwise commuting modes, expanded as
/// `Σ_{r_1+⋯+r_s=r} ∏_i (v^i_n)^{(r_i)}`.
pub fn divided_power_sum(
    lattice: &Lattice,
    words: &[VertexWord],
    n: i64,
    r: usize,
    elem: &FockElement,
) -> Result<FockElement> {
    let mut out = elem.zero_like();
    if words.is_empty() {
        return Ok(if r == 0 { elem.clone() } else { out });
    }
    for comp in compositions(r as u32, words.len()) {
        let mut cur = elem.clone();
        for (w, &ri) in words.iter().zip(&comp).rev() {
            cur = divided_power(lattice, w, n, ri as usize, &cur)?;
            if cur.is_zero() {
                break;
            }
        }
        out.add_scaled(&cur, &Q::one());
    }
    Ok(out)
}

/// `exp(t v_n) elem = Σ_r t^r v_n^{(r)} elem`, summed until the first
/// vanishing term. Fails with the partial sum if none vanishes by `r = cap`.
pub fn exp_mode(
    lattice: &Lattice,
    word: &VertexWord,
    n: i64,
    t: i64,
    elem: &FockElement,
    cap: usize,
) -> Result<FockElement> {
    word.check(lattice)?;
    if t == 0 {
        return Ok(elem.clone());
    }
    let mut sum = elem.clone();
    let mut term = elem.clone();
    for r in 1..=cap {
        term = general_mode_unchecked(lattice, word, n, &term).scale(&Q::new(t.into(), (r as i64).into()));
        if term.is_zero() {
            return Ok(sum);
        }
        sum.add_scaled(&term, &Q::one());
    }
    Err(Error::CapExceeded { cap, partial: Box::new(sum) })
}

/// Largest `n` for which `v_n^r elem` can be nonzero, judged by conformal
/// weight: `None` for the zero element.
pub fn support_top(lattice: &Lattice, word: &VertexWord, r: usize, elem: &FockElement) -> Option<i64> {
    let r = r.max(1) as i64;
    let gamma = word.gamma();
    let norm = lattice.pairing_int(gamma, gamma);
    let wt = word.weight(lattice);
    let cp = coset_pairings(lattice, elem);
    let mut best: Option<i64> = None;
    for (off, p) in elem.components() {
        let ge = dot(gamma, &charge_pairings(lattice, &cp, off));
        for d in p.degrees() {
            let num = d as i64 + r * (wt - 1 - ge) - r * r * norm / 2;
            let top = Integer::div_floor(&num, &r);
            best = Some(best.map_or(top, |b: i64| b.max(top)));
        }
    }
    best
}

/// The `width` modes `n_top, n_top - 1, …` at the top of the support.
pub fn mode_window(lattice: &Lattice, word: &VertexWord, r: usize, elem: &FockElement, width: usize) -> Vec<i64> {
    match support_top(lattice, word, r, elem) {
        Some(top) => (0..width as i64).map(|i| top - i).collect(),
        None => Vec::new(),
    }
}
