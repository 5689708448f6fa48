//! Schur functions from the vertex operator
//! `S(α, z) = E⁻(-α, z) E⁺(-α/2, z) = Σ_n S(α)_n z^{-n}`.
//!
//! On one alphabet with `⟨α, α⟩ = 2`, `α(n)` acts on `p_n = α(-n)` as
//! `2n ∂/∂p_n`, so `E⁺(-α/2, z) = exp(-Σ_n z^{-n} ∂/∂p_n)` is the shift
//! `p_n ↦ p_n - z^{-n}`.

use std::collections::BTreeMap;

use num_traits::One;

use super::partition::Partition;
use super::sympoly::{Basis, SymPoly};
use super::transition::{change_basis, h_in_p};
use crate::rational::{binomial, Q};

/// `f(p_n - z^{-n})` as `{ j ↦ coefficient of z^{-j} }`.
fn shifted(f: &SymPoly) -> BTreeMap<u32, SymPoly> {
    let mut out: BTreeMap<u32, SymPoly> = BTreeMap::new();
    for (key, c) in f.terms() {
        // expand Π_n (p_n - z^{-n})^{e_n} one factor at a time
        let mut acc: BTreeMap<u32, SymPoly> = BTreeMap::new();
        acc.insert(0, SymPoly::term(Basis::P, Partition::empty(), c.clone()));
        for (n, e) in key.multiplicities() {
            let mut next: BTreeMap<u32, SymPoly> = BTreeMap::new();
            for b in 0..=e {
                let sign = if b % 2 == 0 { 1 } else { -1 };
                let w = Q::from_integer(binomial(e as i64, b as i64) * sign);
                let kept = SymPoly::term(
                    Basis::P,
                    Partition::from_unsorted(vec![n; (e - b) as usize]),
                    w,
                );
                for (j, g) in &acc {
                    next.entry(j + n * b)
                        .or_insert_with(|| SymPoly::zero(Basis::P))
                        .add_scaled(&g.mul(&kept), &Q::one());
                }
            }
            acc = next;
        }
        for (j, g) in acc {
            out.entry(j).or_insert_with(|| SymPoly::zero(Basis::P)).add_scaled(&g, &Q::one());
        }
    }
    out.retain(|_, g| !g.is_zero());
    out
}

/// `S(α)_m f`, returned in the power-sum basis.
pub fn bernstein_mode(m: i64, f: &SymPoly) -> SymPoly {
    let f = change_basis(f, Basis::P);
    let mut out = SymPoly::zero(Basis::P);
    for (j, g) in shifted(&f) {
        // E⁻ contributes h_k z^k; need k - j = -m
        let k = j as i64 - m;
        if k < 0 {
            continue;
        }
        out = out.add(&h_in_p(k as u32).mul(&g));
    }
    out
}

/// `S(α)_{-λ1} ⋯ S(α)_{-λl} · 1`, returned in the `H` basis.
pub fn schur_by_vertex(lambda: &Partition) -> SymPoly {
    let mut acc = SymPoly::one(Basis::P);
    for &part in lambda.parts().iter().rev() {
        acc = bernstein_mode(-(part as i64), &acc);
    }
    if acc.is_zero() {
        return SymPoly::zero(Basis::H);
    }
    change_basis(&acc, Basis::H)
}

