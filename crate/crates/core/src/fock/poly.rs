use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mono::PSMonomial;
use crate::rational::{binomial, factorial, q, Q};

/// Polynomial in the variables `ε_i(-n)` with exact coefficients: the
/// `M(1)` factor of a Fock-space element.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<PSMonomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(PSMonomial::one(), Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::monomial(PSMonomial::one(), c)
    }

    pub fn monomial(m: PSMonomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// `α(-n) = Σ_i a_i ε_i(-n)`.
    pub fn linear(coords: &[i64], mode: u32) -> Self {
        let mut p = Poly::zero();
        for (i, &a) in coords.iter().enumerate() {
            p.add_term(PSMonomial::var(i, mode), q(a));
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<PSMonomial, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<PSMonomial, Q> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PSMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: PSMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        self.mul_into(other, &Q::one(), &mut out);
        out
    }

    /// `out += c · self · other`.
    pub fn mul_into(&self, other: &Poly, c: &Q, out: &mut Poly) {
        if c.is_zero() {
            return;
        }
        for (ma, ca) in &self.terms {
            let cac = ca * c;
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &cac * cb);
            }
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(PSMonomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(PSMonomial::degree).max()
    }

    /// `∂/∂ε_dir(-mode)`
    pub fn derivative(&self, dir: usize, mode: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(dir, mode);
            if e > 0 {
                out.add_term(m.lower(dir, mode, 1).unwrap(), c * q(e as i64));
            }
        }
        out
    }

    /// Substitutes `ε_i(-n) ↦ ε_i(-n) - shift_i · (z_1^{-n} + ⋯ + z_r^{-n})`
    /// and returns `{ (j_1, …, j_r) ↦ coefficient of z_1^{-j_1} ⋯ z_r^{-j_r} }`.
    ///
    /// Terms whose remaining Heisenberg degree exceeds `cap` are dropped.
    pub fn shift(&self, shift: &[i64], r: usize, cap: Option<u32>) -> BTreeMap<Vec<u32>, Poly> {
        let cap = cap.unwrap_or(u32::MAX);
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            // expand each factor separately, then combine
            let mut acc: Vec<(Vec<u32>, PSMonomial, u32, Q)> =
                vec![(vec![0; r], PSMonomial::one(), 0, c.clone())];
            for &(dir, n, e) in m.factors() {
                let s = shift[dir];
                let mut next = Vec::new();
                for b in 0..=e {
                    if s == 0 && b > 0 {
                        break;
                    }
                    let kept_deg = n * (e - b);
                    let base = Q::from_integer(binomial(e as i64, b as i64) * BigInt::from(-s).pow(b));
                    let kept = PSMonomial::from_factors(vec![(dir, n, e - b)]);
                    for comp in compositions(b, r) {
                        let w = &base * Q::from_integer(multinomial(b, &comp));
                        for (j, mono, deg, coef) in &acc {
                            if deg + kept_deg > cap {
                                continue;
                            }
                            let mut j2 = j.clone();
                            for (jk, ck) in j2.iter_mut().zip(&comp) {
                                *jk += n * ck;
                            }
                            next.push((j2, mono.mul(&kept), deg + kept_deg, coef * &w));
                        }
                    }
                }
                acc = next;
            }
            for (j, mono, _, coef) in acc {
                out.entry(j).or_default().add_term(mono, coef);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

/// All `r`-tuples of nonnegative integers summing to `b`.
pub(crate) fn compositions(b: u32, r: usize) -> Vec<Vec<u32>> {
    if r == 1 {
        return vec![vec![b]];
    }
    let mut out = Vec::new();
    for first in 0..=b {
        for mut rest in compositions(b - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(b: u32, parts: &[u32]) -> BigInt {
    parts.iter().fold(factorial(b as u64), |acc, &p| acc / factorial(p as u64))
}
