use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::word::{a_mode_coeff, ModeSign, VertexWord};
use crate::error::{Error, Result};
use crate::fock::{FockElement, Poly};
use crate::lattice::{Lattice, LatticeVector};
use crate::memo::{memo, Cache};
use crate::rational::{q, Q};

pub(crate) fn lattice_ints(v: &LatticeVector) -> Result<Vec<i64>> {
    v.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()))
}

fn check_elem(lattice: &Lattice, elem: &FockElement) -> Result<()> {
    if elem.rank() != lattice.rank() {
        return Err(Error::RankMismatch { expected: lattice.rank(), got: elem.rank() });
    }
    Ok(())
}

/// `(⟨ε_1, η⟩, …, ⟨ε_d, η⟩)` for the charge `η = γ + offset`.
pub(crate) fn charge_pairings(lattice: &Lattice, coset_pairings: &[i64], offset: &[i64]) -> Vec<i64> {
    let g = lattice.gram_times(offset);
    coset_pairings.iter().zip(g).map(|(a, b)| a + b).collect()
}

pub(crate) fn coset_pairings(lattice: &Lattice, elem: &FockElement) -> Vec<i64> {
    lattice.dual_pairings(elem.coset()).expect("coset representative lies in the dual lattice")
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `β(n)` with `β` given by integer coordinates; the central element is 1.
pub(crate) fn heis_ints(lattice: &Lattice, beta: &[i64], n: i64, elem: &FockElement) -> FockElement {
    let mut out = elem.zero_like();
    if n < 0 {
        let lin = Poly::linear(beta, (-n) as u32);
        return elem.mul_poly(&lin);
    }
    if n == 0 {
        let cp = coset_pairings(lattice, elem);
        for (off, p) in elem.components() {
            let s = dot(beta, &charge_pairings(lattice, &cp, off));
            out.add_poly(off, p, &q(s));
        }
        return out;
    }
    let bg = lattice.gram_times(beta);
    for (off, p) in elem.components() {
        let mut acc = Poly::zero();
        for (i, &c) in bg.iter().enumerate() {
            if c != 0 {
                acc.add_scaled(&p.derivative(i, n as u32), &q(c * n));
            }
        }
        out.add_poly(off, &acc, &Q::one());
    }
    out
}

/// The Heisenberg mode `α(n)`.
pub fn heis_mode(lattice: &Lattice, alpha: &LatticeVector, n: i64, elem: &FockElement) -> Result<FockElement> {
    check_elem(lattice, elem)?;
    let a = lattice_ints(alpha)?;
    if a.len() != lattice.rank() {
        return Err(Error::RankMismatch { expected: lattice.rank(), got: a.len() });
    }
    Ok(heis_ints(lattice, &a, n, elem))
}

static H_SERIES: Cache<(Vec<i64>, u32), Poly> = Cache::new(Default::default);

/// `h_{α,-m}`: the coefficient of `z^m` in `E^-(-α,z)`.
pub fn h_series(alpha: &[i64], m: u32) -> Poly {
    (*h_series_arc(alpha, m)).clone()
}

pub(crate) fn h_series_arc(alpha: &[i64], m: u32) -> std::sync::Arc<Poly> {
    memo(&H_SERIES, (alpha.to_vec(), m), || {
        if m == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for j in 1..=m {
            let prev = h_series_arc(alpha, m - j);
            Poly::linear(alpha, j).mul_into(&prev, &Q::one(), &mut acc);
        }
        acc.scale(&Q::new(1.into(), (m as i64).into()))
    })
}

type CreationKey = (Vec<(Vec<i64>, u32)>, Vec<i64>, i64);
static CREATION: Cache<CreationKey, Poly> = Cache::new(Default::default);

/// Coefficient of `z^e` in `A^-_S(z) E^-(-γ,z)`, where `S` lists `(β_j, m_j)`.
fn creation_coeff(s: &[(Vec<i64>, u32)], gamma: &[i64], e: i64) -> std::sync::Arc<Poly> {
    memo(&CREATION, (s.to_vec(), gamma.to_vec(), e), || {
        let msum: i64 = s.iter().map(|(_, m)| *m as i64).sum();
        // Σ n_j + mm = e + Σ m_j with n_j ≥ max(1, m_j) for nonzero weight
        let total = e + msum;
        if total < 0 {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        creation_rec(s, gamma, total, Poly::one(), &mut out);
        out
    })
}

fn creation_rec(s: &[(Vec<i64>, u32)], gamma: &[i64], budget: i64, acc: Poly, out: &mut Poly) {
    match s.split_first() {
        None => {
            let h = h_series_arc(gamma, budget as u32);
            acc.mul_into(&h, &Q::one(), out);
        }
        Some(((beta, m), rest)) => {
            let lo = (*m).max(1) as i64;
            let reserve: i64 = rest.iter().map(|(_, m)| (*m).max(1) as i64).sum();
            for n in lo..=budget - reserve {
                let w = a_mode_coeff(ModeSign::Minus, *m, n);
                if w.is_zero() {
                    continue;
                }
                let term = acc.mul(&Poly::linear(beta, n as u32)).scale(&Q::from_integer(w));
                creation_rec(rest, gamma, budget - n, term, out);
            }
        }
    }
}

/// Applies `∏_{j} A^+_{β_j,m_j}(z)`; returns `{a ↦ coefficient of z^{-a}}`.
fn apply_annihilators(
    lattice: &Lattice,
    ops: &[(Vec<i64>, u32)],
    elem: &FockElement,
) -> BTreeMap<i64, FockElement> {
    let mut cur: BTreeMap<i64, FockElement> = BTreeMap::new();
    cur.insert(0, elem.clone());
    for (beta, m) in ops {
        let mut next: BTreeMap<i64, FockElement> = BTreeMap::new();
        for (a, w) in &cur {
            for n in 0..=w.max_degree() as i64 {
                let c = a_mode_coeff(ModeSign::Plus, *m, n);
                let img = heis_ints(lattice, beta, n, w);
                if img.is_zero() {
                    continue;
                }
                let e = a + n + *m as i64;
                let slot = next.entry(e).or_insert_with(|| w.zero_like());
                slot.add_scaled(&img, &Q::from_integer(c));
            }
        }
        next.retain(|_, w| !w.is_zero());
        cur = next;
    }
    cur
}

/// Coefficient of `z^{-n-1}` in `A^-_S(z) Y(e^γ,z) A^+_{S^c}(z) elem`.
fn normal_ordered_term(
    lattice: &Lattice,
    word: &VertexWord,
    subset: u64,
    n: i64,
    elem: &FockElement,
) -> FockElement {
    let gamma = word.gamma();
    let mut s = Vec::new();
    let mut sc = Vec::new();
    for (j, h) in word.heis().iter().enumerate() {
        if subset >> j & 1 == 1 {
            s.push(h.clone());
        } else {
            sc.push(h.clone());
        }
    }
    let msum_s: i64 = s.iter().map(|(_, m)| *m as i64).sum();
    let shift = lattice.gram_times(gamma);
    let cp = coset_pairings(lattice, elem);

    let mut out = elem.zero_like();
    for (a, w) in apply_annihilators(lattice, &sc, elem) {
        for (off, p) in w.components() {
            let eta_pair = charge_pairings(lattice, &cp, off);
            let ge = dot(gamma, &eta_pair);
            let sign = lattice.cocycle().eval(gamma, off);
            let new_off: Vec<i64> = off.iter().zip(gamma).map(|(x, y)| x + y).collect();
            let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
            for (mono, c) in p.terms() {
                by_deg.entry(mono.degree()).or_default().add_term(mono.clone(), c.clone());
            }
            for (dw, piece) in by_deg {
                // Heisenberg degree of the output, independent of the E^+ split
                let d_out = -n - 1 + a - ge + msum_s + dw as i64;
                if d_out < 0 {
                    continue;
                }
                for (j, f) in piece.shift(&shift, 1, Some(d_out as u32)) {
                    let e = -n - 1 + a - ge + j[0] as i64;
                    let mult = creation_coeff(&s, gamma, e);
                    if mult.is_zero() {
                        continue;
                    }
                    let prod = f.mul(&mult);
                    out.add_poly(&new_off, &prod, &q(sign));
                }
            }
        }
    }
    out
}

/// Mode `y_n` of the lattice vertex operator `Y(e^α, z)`.
pub fn y_lattice_mode(lattice: &Lattice, alpha: &LatticeVector, n: i64, elem: &FockElement) -> Result<FockElement> {
    let a = lattice_ints(alpha)?;
    y_general_mode(lattice, &VertexWord::new(Vec::new(), a)?, n, elem)
}

/// Mode `v_n`: the coefficient of `z^{-n-1}` in `Y(v,z) elem`.
pub fn y_general_mode(lattice: &Lattice, word: &VertexWord, n: i64, elem: &FockElement) -> Result<FockElement> {
    word.check(lattice)?;
    check_elem(lattice, elem)?;
    Ok(general_mode_unchecked(lattice, word, n, elem))
}

pub(crate) fn general_mode_unchecked(lattice: &Lattice, word: &VertexWord, n: i64, elem: &FockElement) -> FockElement {
    let k = word.heis().len();
    let parts: Vec<FockElement> = (0..1u64 << k)
        .into_par_iter()
        .map(|s| normal_ordered_term(lattice, word, s, n, elem))
        .collect();
    let mut out = elem.zero_like();
    for p in &parts {
        out.add_scaled(p, &Q::one());
    }
    out
}
