use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_integer, q_from_json, Q};

/// Which family the keys of a [`SymPoly`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// power sums `p_λ = p_{λ1} p_{λ2} ⋯`
    P,
    /// complete homogeneous `h_λ = h_{λ1} h_{λ2} ⋯`
    H,
    /// Schur functions `s_λ`
    S,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::P => 'p',
            Basis::H => 'h',
            Basis::S => 's',
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "P" | "p" => Ok(Basis::P),
            "H" | "h" => Ok(Basis::H),
            "S" | "s" => Ok(Basis::S),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// A symmetric function in one alphabet, stored sparsely in one basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    basis: Basis,
    terms: BTreeMap<Partition, Q>,
}

impl SymPoly {
    pub fn zero(basis: Basis) -> Self {
        SymPoly { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::term(basis, Partition::empty(), Q::one())
    }

    pub fn term(basis: Basis, key: Partition, coeff: Q) -> Self {
        let mut p = Self::zero(basis);
        p.add_term(key, coeff);
        p
    }

    /// `p_n`, `h_n` or `s_(n)`; `n = 0` gives 1.
    pub fn generator(basis: Basis, n: u32) -> Self {
        Self::term(basis, Partition::single(n), Q::one())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, key: &Partition) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
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

    pub fn add_term(&mut self, key: Partition, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymPoly, c: &Q) {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> SymPoly {
        let mut out = Self::zero(self.basis);
        out.add_scaled(self, c);
        out
    }

    /// Product. In the Schur basis the product is computed through `H`.
    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        if self.basis == Basis::S {
            let a = super::change_basis(self, Basis::H);
            let b = super::change_basis(other, Basis::H);
            return super::change_basis(&a.mul(&b), Basis::S);
        }
        let mut out = Self::zero(self.basis);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka.union(kb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut out = Self::one(self.basis);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Weights of the keys present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Partition::weight).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    /// Equality as symmetric functions, regardless of storage basis.
    pub fn same_function(&self, other: &SymPoly) -> bool {
        super::change_basis(self, Basis::P) == super::change_basis(other, Basis::P)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let key: Vec<Value> =
                    k.multiplicities().iter().map(|&(i, e)| json!([i, e])).collect();
                json!({ "key": key, "coeff": fmt_q(c) })
            })
            .collect();
        json!({ "basis": self.basis.letter().to_ascii_uppercase().to_string(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<SymPoly> {
        let bad = |m: &str| Error::Parse(format!("sympoly: {m}"));
        let basis = Basis::parse(v["basis"].as_str().ok_or_else(|| bad("missing basis"))?)?;
        let mut out = SymPoly::zero(basis);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let mut pairs = Vec::new();
            for pair in t["key"].as_array().ok_or_else(|| bad("missing key"))? {
                let i = pair[0].as_u64().ok_or_else(|| bad("key index"))?;
                let e = pair[1].as_u64().ok_or_else(|| bad("key exponent"))?;
                pairs.push((i as u32, e as u32));
            }
            let key = Partition::from_multiplicities(&pairs)?;
            out.add_term(key, q_from_json(&t["coeff"])?);
        }
        Ok(out)
    }
}

fn fmt_key(basis: Basis, key: &Partition) -> String {
    if basis == Basis::S {
        let parts: Vec<String> = key.parts().iter().map(u32::to_string).collect();
        return format!("s[{}]", parts.join(","));
    }
    let l = basis.letter();
    key.multiplicities()
        .iter()
        .map(|&(i, e)| if e == 1 { format!("{l}[{i}]") } else { format!("{l}[{i}]^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SymPoly {
    /// Renders like `2*h[2] - h[1]^2`, largest keys first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = key.is_empty();
            let body = fmt_key(self.basis, key);
            if constant {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{a}*{body}")?;
            }
        }
        Ok(())
    }
}
