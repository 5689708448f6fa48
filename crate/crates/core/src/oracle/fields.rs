use std::collections::BTreeMap;

use num_traits::Zero;

use super::laurent::{MultiLaurent, Window};
use crate::fock::{FockElement, PSMonomial, Poly};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{binomial, q, Q};
use crate::vertexops::heis_mode;

/// `E^-(-α, z_var) = exp(Σ_{n≥1} α(-n) z^n / n)` up to the window's top exponent.
pub fn e_minus(alpha: &[i64], var: usize, window: &Window) -> MultiLaurent<Poly> {
    let top = window.hi[var].max(0);
    let r = window.vars();
    let mut s = MultiLaurent::zero(window.clone());
    for n in 1..=top {
        let mut e = vec![0; r];
        e[var] = n;
        s.add_term(e, Poly::linear(alpha, n as u32).scale(&Q::new(1.into(), n.into())));
    }
    let mut sum = MultiLaurent::one(window.clone());
    let mut term = MultiLaurent::one(window.clone());
    for k in 1..=top {
        term = term.mul(&s).scale(&Q::new(1.into(), k.into()));
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    sum
}

/// `E^+(-α, z_var) f = exp(-Σ_{n≥1} α(n) z^{-n} / n) f`, summed until the
/// derivation series vanishes. `pairings` is `(⟨α, ε_1⟩, …, ⟨α, ε_d⟩)`.
pub fn e_plus_apply(pairings: &[i64], f: &Poly, var: usize, window: &Window) -> MultiLaurent<Poly> {
    let r = window.vars();
    let start = MultiLaurent::monomial(window.clone(), vec![0; r], f.clone());
    let mut sum = start.clone();
    let mut term = start;
    let mut k = 0i64;
    loop {
        k += 1;
        let mut next = MultiLaurent::zero(window.clone());
        for (e, p) in term.terms() {
            let top = p.max_degree().unwrap_or(0);
            for (i, &c) in pairings.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for n in 1..=top {
                    let d = p.derivative(i, n);
                    if d.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[var] -= n as i64;
                    next.add_term(e2, d.scale(&Q::new((-c).into(), k.into())));
                }
            }
        }
        if next.is_zero() {
            return sum;
        }
        sum = sum.add(&next);
        term = next;
    }
}

/// `Σ_{k=0}^{kmax} C(c,k) (-w/z)^k` in the variables `z = zvar`, `w = wvar`.
pub fn one_minus_ratio_pow(c: i64, zvar: usize, wvar: usize, kmax: i64, window: &Window) -> MultiLaurent<Q> {
    let r = window.vars();
    let mut out = MultiLaurent::zero(window.clone());
    for k in 0..=kmax {
        let b = Q::from_integer(binomial(c, k));
        let mut e = vec![0; r];
        e[zvar] -= k;
        e[wvar] += k;
        out.add_term(e, if k % 2 == 0 { b } else { -b });
    }
    out
}

/// `(x - y)^{-m}` expanded as a power series in `y`, up to `y^{kmax}`.
pub fn inverse_power_in(m: u32, xvar: usize, yvar: usize, kmax: i64, window: &Window) -> MultiLaurent<Q> {
    let r = window.vars();
    let mut out = MultiLaurent::zero(window.clone());
    for k in 0..=kmax {
        let mut e = vec![0; r];
        e[xvar] = -(m as i64) - k;
        e[yvar] = k;
        out.add_term(e, Q::from_integer(binomial(m as i64 + k - 1, k)));
    }
    out
}

pub fn lift(s: &MultiLaurent<Q>) -> MultiLaurent<Poly> {
    let mut out = MultiLaurent::zero(s.window().clone());
    for (e, c) in s.terms() {
        out.add_term(e.clone(), Poly::constant(c.clone()));
    }
    out
}

/// `A^+_{β,m}(z) u = Σ_{n≥0} (-1)^{m-1} C(n+m-1, m-1) β(n) z^{-n-m} u` as
/// `{z-exponent ↦ coefficient}`.
pub fn a_plus_apply(lattice: &Lattice, beta: &LatticeVector, m: u32, u: &BTreeMap<i64, FockElement>) -> BTreeMap<i64, FockElement> {
    let mut out: BTreeMap<i64, FockElement> = BTreeMap::new();
    let sign = if m % 2 == 1 { q(1) } else { q(-1) };
    for (z, v) in u {
        for n in 0..=v.max_degree() as i64 {
            let img = heis_mode(lattice, beta, n, v).expect("lattice vector");
            if img.is_zero() {
                continue;
            }
            let c = &sign * Q::from_integer(binomial(n + m as i64 - 1, m as i64 - 1));
            out.entry(z - n - m as i64).or_insert_with(|| v.zero_like()).add_scaled(&img, &c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `A^-_{β,m}(z) u = Σ_{n≥1} C(n-1, m-1) β(-n) z^{n-m} u`, up to `z^{zmax}`.
pub fn a_minus_apply(
    lattice: &Lattice,
    beta: &LatticeVector,
    m: u32,
    u: &BTreeMap<i64, FockElement>,
    zmax: i64,
) -> BTreeMap<i64, FockElement> {
    let mut out: BTreeMap<i64, FockElement> = BTreeMap::new();
    for (z, v) in u {
        let mut n = 1i64;
        while z + n - m as i64 <= zmax {
            let c = Q::from_integer(binomial(n - 1, m as i64 - 1));
            if !c.is_zero() {
                let img = heis_mode(lattice, beta, -n, v).expect("lattice vector");
                out.entry(z + n - m as i64).or_insert_with(|| v.zero_like()).add_scaled(&img, &c);
            }
            n += 1;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// All Fock monomials of degree at most `degree` in `rank` directions.
pub fn basis_monomials(rank: usize, degree: u32) -> Vec<PSMonomial> {
    let mut vars = Vec::new();
    for dir in 0..rank {
        for mode in 1..=degree {
            vars.push((dir, mode));
        }
    }
    let mut out = Vec::new();
    fn rec(vars: &[(usize, u32)], budget: u32, acc: &mut Vec<(usize, u32, u32)>, out: &mut Vec<PSMonomial>) {
        match vars.split_first() {
            None => out.push(PSMonomial::from_factors(acc.clone())),
            Some((&(dir, mode), rest)) => {
                rec(rest, budget, acc, out);
                let mut e = 1;
                while mode * e <= budget {
                    acc.push((dir, mode, e));
                    rec(rest, budget - mode * e, acc, out);
                    acc.pop();
                    e += 1;
                }
            }
        }
    }
    rec(&vars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub(crate) fn single(elem: FockElement) -> BTreeMap<i64, FockElement> {
    let mut m = BTreeMap::new();
    if !elem.is_zero() {
        m.insert(0, elem);
    }
    m
}
