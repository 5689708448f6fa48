use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fock::Poly;
use crate::rational::{fmt_q, Q};

/// Coefficient ring of a [`MultiLaurent`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    fn render(&self) -> String;
}

impl Coefficient for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        Poly::add_assign(self, other);
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn scale(&self, c: &Q) -> Self {
        Poly::scale(self, c)
    }
    fn render(&self) -> String {
        let parts: Vec<String> = self.terms().iter().map(|(m, c)| format!("{}*{}", fmt_q(c), m)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Per-variable inclusive exponent bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Invalid("window bounds must be nonempty and of equal length".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Invalid("window has an empty range".into()));
        }
        Ok(Window { lo, hi })
    }

    /// The same range `[lo, hi]` in each of `r` variables.
    pub fn cube(r: usize, lo: i64, hi: i64) -> Self {
        Window { lo: vec![lo; r], hi: vec![hi; r] }
    }

    pub fn vars(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        e.len() == self.vars() && e.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// All exponent vectors in the window, lexicographically.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for (a, b) in self.lo.iter().zip(&self.hi) {
            let mut next = Vec::new();
            for p in &out {
                for x in *a..=*b {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "lo": self.lo, "hi": self.hi })
    }
}

/// Truncated multivariate Laurent polynomial. Terms that would leave the
/// window are discarded and the result is flagged as clipped.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLaurent<C: Coefficient> {
    window: Window,
    terms: BTreeMap<Vec<i64>, C>,
    clipped: bool,
}

impl<C: Coefficient> MultiLaurent<C> {
    pub fn zero(window: Window) -> Self {
        MultiLaurent { window, terms: BTreeMap::new(), clipped: false }
    }

    pub fn monomial(window: Window, exp: Vec<i64>, c: C) -> Self {
        let mut m = Self::zero(window);
        m.add_term(exp, c);
        m
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn vars(&self) -> usize {
        self.window.vars()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, C> {
        &self.terms
    }

    pub fn is_clipped(&self) -> bool {
        self.clipped
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

    pub fn coeff(&self, exp: &[i64]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        if !self.window.contains(&exp) {
            self.clipped = true;
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.clipped |= other.clipped;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.window.clone());
        out.clipped = self.clipped;
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.scale(c));
        }
        out
    }

    /// Product, kept inside `self`'s window.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_where(other, |_| true)
    }

    /// Product restricted to exponents accepted by `keep` (and the window).
    pub fn mul_where(&self, other: &Self, keep: impl Fn(&[i64]) -> bool) -> Self {
        let mut out = Self::zero(self.window.clone());
        out.clipped = self.clipped || other.clipped;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !out.window.contains(&e) || !keep(&e) {
                    out.clipped = true;
                    continue;
                }
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn one(window: Window) -> Self {
        let r = window.vars();
        Self::monomial(window, vec![0; r], C::one())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.window.clone());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Same terms in a new window; terms outside it are dropped and flagged.
    pub fn with_window(&self, window: Window) -> Self {
        let mut out = Self::zero(window);
        out.clipped = self.clipped;
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// `σ.f(z_1, …, z_r) = f(z_{σ⁻¹(1)}, …, z_{σ⁻¹(r)})`: the exponent of
    /// `z_i` moves to slot `σ(i)`.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let mut out = Self::zero(self.window.clone());
        out.clipped = self.clipped;
        for (e, c) in &self.terms {
            let mut f = vec![0; e.len()];
            for (i, &x) in e.iter().enumerate() {
                f[sigma[i]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(e, c)| json!({ "exp": e, "coeff": c.render() })).collect();
        json!({ "window": self.window.to_json(), "clipped": self.clipped, "terms": terms })
    }
}
