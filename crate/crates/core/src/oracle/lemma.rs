use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::laurent::{MultiLaurent, Window};
use crate::error::{Error, Result};
use crate::rational::{factorial, q, Q};

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..r {
            let mut s: Vec<usize> = p.iter().map(|&x| if x >= pos { x + 1 } else { x }).collect();
            s.insert(0, pos);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Number of inversions `l(σ)`.
pub fn inversions(sigma: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                n += 1;
            }
        }
    }
    n
}

/// `∏_{1≤i<j≤r} (z_i - z_j)^k`, which must fit in `window`.
pub fn vandermonde_pow(r: usize, k: u32, window: &Window) -> Result<MultiLaurent<Q>> {
    if window.vars() != r || r == 0 {
        return Err(Error::WindowTooSmall(format!("need a window in {r} variables")));
    }
    let top = k as i64 * (r as i64 - 1);
    if !window.contains_window(&Window::cube(r, 0, top)) {
        return Err(Error::WindowTooSmall(format!("exponents range over [0, {top}] in each variable")));
    }
    let mut out = MultiLaurent::one(window.clone());
    for i in 0..r {
        for j in i + 1..r {
            let mut f = MultiLaurent::zero(window.clone());
            let mut a = vec![0; r];
            a[i] = 1;
            f.add_term(a, Q::one());
            let mut b = vec![0; r];
            b[j] = 1;
            f.add_term(b, -Q::one());
            out = out.mul(&f.pow(k));
        }
    }
    Ok(out)
}

/// `Σ_σ (-1)^{l(σ)} z^{σ(δ)}` with `δ = (r-1, …, 0)`.
pub fn vandermonde_sigma_sum(r: usize) -> MultiLaurent<Q> {
    let window = Window::cube(r, 0, r as i64 - 1);
    let mut out = MultiLaurent::zero(window);
    for sigma in permutations(r) {
        let mut e = vec![0; r];
        for (i, &s) in sigma.iter().enumerate() {
            e[s] = (r - 1 - i) as i64;
        }
        let sign = if inversions(&sigma) % 2 == 0 { q(1) } else { q(-1) };
        out.add_term(e, sign);
    }
    out
}

/// Exact invariance under every variable permutation.
pub fn is_symmetric(g: &MultiLaurent<Q>) -> bool {
    let r = g.vars();
    (0..r.saturating_sub(1)).all(|i| {
        let mut swap: Vec<usize> = (0..r).collect();
        swap.swap(i, i + 1);
        g.permute(&swap).terms() == g.terms()
    })
}

fn diagonal_window_check(g: &MultiLaurent<Q>, r: usize, k: u32, n: i64) -> Result<()> {
    if g.vars() != r {
        return Err(Error::RankMismatch { expected: r, got: g.vars() });
    }
    let need = Window::cube(r, n - k as i64 * (r as i64 - 1), n);
    if !g.window().contains_window(&need) {
        return Err(Error::WindowTooSmall(format!(
            "the diagonal coefficient at {n} depends on exponents in [{}, {n}]",
            need.lo[0]
        )));
    }
    Ok(())
}

fn diagonal_of_product(v: &MultiLaurent<Q>, g: &MultiLaurent<Q>, n: i64) -> Q {
    let mut acc = Q::zero();
    for (a, c) in v.terms() {
        let e: Vec<i64> = a.iter().map(|x| n - x).collect();
        if let Some(gc) = g.terms().get(&e) {
            acc += c * gc;
        }
    }
    acc
}

/// Coefficient of `(z_1 ⋯ z_r)^n` in `∏_{i<j}(z_i - z_j)^k G` and whether it
/// is divisible by `r!` (over the integers spanned by the coefficients of `G`).
pub fn lemma_divisibility(g: &MultiLaurent<Q>, r: usize, k: u32, n: i64) -> Result<(Q, bool)> {
    diagonal_window_check(g, r, k, n)?;
    if !is_symmetric(g) {
        return Err(Error::Invalid("G is not invariant under permutations of its variables".into()));
    }
    let top = k as i64 * (r as i64 - 1);
    let v = vandermonde_pow(r, k, &Window::cube(r, 0, top))?;
    let c = diagonal_of_product(&v, g, n);
    let den = g.terms().values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = &c * Q::from_integer(den) / Q::from_integer(factorial(r as u64));
    Ok((c, scaled.is_integer()))
}

/// Coefficient `c_n` of `(z_1 ⋯ z_r)^n` in `z^δ ∏_{i<j}(z_i - z_j)^{k-1} G`;
/// for even `k` the diagonal coefficient of `∏(z_i - z_j)^k G` is `r! c_n`.
pub fn diagonal_factor(g: &MultiLaurent<Q>, r: usize, k: u32, n: i64) -> Result<Q> {
    diagonal_window_check(g, r, k, n)?;
    if k == 0 {
        return Err(Error::Invalid("the factorization needs k ≥ 1".into()));
    }
    let top = k as i64 * (r as i64 - 1);
    let window = Window::cube(r, 0, top);
    let mut zd = MultiLaurent::zero(window.clone());
    zd.add_term((0..r).map(|i| (r - 1 - i) as i64).collect(), Q::one());
    let v = zd.mul(&vandermonde_pow(r, k - 1, &window)?);
    Ok(diagonal_of_product(&v, g, n))
}

/// Symmetrization `Σ_σ σ.P` of a seeded sparse Laurent polynomial `P` with
/// `terms` monomials, exponents in `[-spread, spread]`, coefficients in `[-5, 5]`.
pub fn random_symmetric(r: usize, terms: usize, spread: i64, seed: u64, window: &Window) -> MultiLaurent<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = MultiLaurent::zero(window.clone());
    for _ in 0..terms {
        let e: Vec<i64> = (0..r).map(|_| rng.gen_range(-spread..=spread)).collect();
        p.add_term(e, q(rng.gen_range(-5..=5)));
    }
    let mut g = MultiLaurent::zero(window.clone());
    for sigma in permutations(r) {
        g = g.add(&p.permute(&sigma));
    }
    g
}
