//! Transitions between the power-sum, complete-homogeneous and Schur bases.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::partition::Partition;
use super::sympoly::{Basis, SymPoly};
use crate::memo::{memo, Cache};
use crate::rational::{q, Q};

static H_IN_P: Cache<u32, SymPoly> = Cache::new(Default::default);
static P_IN_H: Cache<u32, SymPoly> = Cache::new(Default::default);
static JT: Cache<Partition, SymPoly> = Cache::new(Default::default);
static P_PART_IN_H: Cache<Partition, SymPoly> = Cache::new(Default::default);
static H_PART_IN_P: Cache<Partition, SymPoly> = Cache::new(Default::default);

/// `h_n` in power sums, from `n h_n = Σ_{i=1..n} p_i h_{n-i}`.
pub fn h_in_p(n: u32) -> SymPoly {
    (*h_in_p_arc(n)).clone()
}

fn h_in_p_arc(n: u32) -> Arc<SymPoly> {
    memo(&H_IN_P, n, || {
        if n == 0 {
            return SymPoly::one(Basis::P);
        }
        let mut acc = SymPoly::zero(Basis::P);
        for i in 1..=n {
            acc = acc.add(&SymPoly::generator(Basis::P, i).mul(&h_in_p_arc(n - i)));
        }
        acc.scale(&Q::new(1.into(), n.into()))
    })
}

/// `p_n` as an integer polynomial in the `h`'s (Newton's identity).
pub fn p_in_h(n: u32) -> SymPoly {
    assert!(n >= 1, "p_0 is not a generator");
    (*p_in_h_arc(n)).clone()
}

fn p_in_h_arc(n: u32) -> Arc<SymPoly> {
    memo(&P_IN_H, n, || {
        // p_n = n h_n - Σ_{i=1}^{n-1} p_i h_{n-i}
        let mut acc = SymPoly::term(Basis::H, Partition::single(n), q(n as i64));
        for i in 1..n {
            let t = p_in_h_arc(i).mul(&SymPoly::generator(Basis::H, n - i));
            acc = acc.sub(&t);
        }
        acc
    })
}

/// `s_λ = det(h_{λ_i - i + j})` in the `H` basis, with `h_0 = 1` and
/// `h_m = 0` for `m < 0`.
pub fn jacobi_trudi(lambda: &Partition) -> SymPoly {
    (*jacobi_trudi_arc(lambda)).clone()
}

pub(crate) fn jacobi_trudi_arc(lambda: &Partition) -> Arc<SymPoly> {
    memo(&JT, lambda.clone(), || {
        let l = lambda.len();
        let parts: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
        let mut out = SymPoly::zero(Basis::H);
        let mut used = vec![false; l];
        let mut acc = Vec::with_capacity(l);
        leibniz(&parts, 0, &mut used, &mut acc, 1, &mut out);
        out
    })
}

fn leibniz(
    parts: &[i64],
    row: usize,
    used: &mut [bool],
    chosen: &mut Vec<u32>,
    sign: i64,
    out: &mut SymPoly,
) {
    let l = parts.len();
    if row == l {
        out.add_term(Partition::from_unsorted(chosen.clone()), q(sign));
        return;
    }
    for col in 0..l {
        if used[col] {
            continue;
        }
        let m = parts[row] - row as i64 + col as i64;
        if m < 0 {
            continue;
        }
        // sign of the permutation: count earlier-placed columns greater than `col`
        let inversions = used[col + 1..].iter().filter(|&&u| u).count();
        let s = if inversions % 2 == 0 { sign } else { -sign };
        used[col] = true;
        chosen.push(m as u32);
        leibniz(parts, row + 1, used, chosen, s, out);
        chosen.pop();
        used[col] = false;
    }
}

pub(crate) fn p_partition_in_h(lambda: &Partition) -> Arc<SymPoly> {
    memo(&P_PART_IN_H, lambda.clone(), || {
        lambda
            .parts()
            .iter()
            .fold(SymPoly::one(Basis::H), |acc, &n| acc.mul(&p_in_h_arc(n)))
    })
}

pub(crate) fn h_partition_in_p(lambda: &Partition) -> Arc<SymPoly> {
    memo(&H_PART_IN_P, lambda.clone(), || {
        lambda
            .parts()
            .iter()
            .fold(SymPoly::one(Basis::P), |acc, &n| acc.mul(&h_in_p_arc(n)))
    })
}

fn expand(f: &SymPoly, target: Basis, image: impl Fn(&Partition) -> Arc<SymPoly>) -> SymPoly {
    let mut out = SymPoly::zero(target);
    for (k, c) in f.terms() {
        out.add_scaled(&image(k), c);
    }
    out
}

/// Peels off Schur functions from the lexicographically smallest key
/// upwards; `s_λ = h_λ + (h_μ with μ > λ)` makes this triangular.
fn h_to_s(f: &SymPoly) -> SymPoly {
    let mut rest = f.clone();
    let mut out = SymPoly::zero(Basis::S);
    while let Some((k, c)) = rest.terms().iter().next().map(|(k, c)| (k.clone(), c.clone())) {
        rest.add_scaled(&jacobi_trudi_arc(&k), &-c.clone());
        out.add_term(k, c);
    }
    out
}

/// Re-expresses `f` in `target`. Exact; `H ↔ S` stays integral.
pub fn change_basis(f: &SymPoly, target: Basis) -> SymPoly {
    use Basis::*;
    match (f.basis(), target) {
        (a, b) if a == b => f.clone(),
        (P, H) => expand(f, H, p_partition_in_h),
        (H, P) => expand(f, P, h_partition_in_p),
        (S, H) => expand(f, H, jacobi_trudi_arc),
        (H, S) => h_to_s(f),
        (P, S) => h_to_s(&change_basis(f, H)),
        (S, P) => change_basis(&change_basis(f, H), P),
        _ => unreachable!(),
    }
}

/// Matrix whose column `λ` is the expansion of the `from` basis element
/// `λ` in the `to` basis; rows and columns indexed by [`Partition::all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub degree: u32,
    pub from: Basis,
    pub to: Basis,
    pub index: Vec<Partition>,
    pub entries: Vec<Vec<Q>>,
}

impl TransitionMatrix {
    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(crate::rational::is_integer)
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> Q {
        det(self.entries.clone())
    }
}

pub(crate) fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

pub fn transition_matrix(degree: u32, from: Basis, to: Basis) -> TransitionMatrix {
    let index = Partition::all(degree);
    let n = index.len();
    let mut entries = vec![vec![Q::zero(); n]; n];
    for (col, lam) in index.iter().enumerate() {
        let img = change_basis(&SymPoly::term(from, lam.clone(), Q::one()), to);
        for (row, mu) in index.iter().enumerate() {
            entries[row][col] = img.coeff(mu);
        }
    }
    TransitionMatrix { degree, from, to, index, entries }
}
