use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::mono::PSMonomial;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{fmt_q, q_from_json, Q};

/// A finite element of `V_{L+γ} = M(1) ⊗ ℂ{L+γ}`.
///
/// Charges are stored as integer offsets from the coset representative
/// `γ ∈ [0,1)^d`, so every charge is congruent to `γ` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockElement {
    coset: LatticeVector,
    comps: BTreeMap<Vec<i64>, Poly>,
}

impl FockElement {
    /// Zero element of `V_{L+γ}`; `γ` must lie in the dual lattice.
    pub fn zero_in(lattice: &Lattice, coset: &LatticeVector) -> Result<Self> {
        if !lattice.dual_membership(coset) {
            return Err(Error::NotInDual(coset.to_string()));
        }
        Ok(FockElement { coset: lattice.coset_rep_of(coset), comps: BTreeMap::new() })
    }

    /// Trusts `coset` to be a reduced dual-lattice representative.
    pub(crate) fn with_coset(coset: LatticeVector) -> Self {
        FockElement { coset, comps: BTreeMap::new() }
    }

    /// Zero in the same space as `self`.
    pub fn zero_like(&self) -> Self {
        FockElement { coset: self.coset.clone(), comps: BTreeMap::new() }
    }

    pub fn zero(rank: usize) -> Self {
        FockElement { coset: LatticeVector::zero(rank), comps: BTreeMap::new() }
    }

    /// The vacuum `1 ⊗ e^0`.
    pub fn vacuum(rank: usize) -> Self {
        let mut v = Self::zero(rank);
        v.add_term(PSMonomial::one(), vec![0; rank], Q::one());
        v
    }

    /// `e^η` for `η` in the dual lattice.
    pub fn exp(lattice: &Lattice, eta: &LatticeVector) -> Result<Self> {
        let mut v = Self::zero_in(lattice, eta)?;
        let off = v.offset_of(eta)?;
        v.add_term(PSMonomial::one(), off, Q::one());
        Ok(v)
    }

    pub fn coset(&self) -> &LatticeVector {
        &self.coset
    }

    pub fn rank(&self) -> usize {
        self.coset.rank()
    }

    pub fn components(&self) -> &BTreeMap<Vec<i64>, Poly> {
        &self.comps
    }

    pub fn charge_of(&self, offset: &[i64]) -> LatticeVector {
        self.coset.add_ints(offset)
    }

    /// Integer offset of a full charge; errors unless `η - γ ∈ L`.
    pub fn offset_of(&self, eta: &LatticeVector) -> Result<Vec<i64>> {
        if eta.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: eta.rank() });
        }
        eta.sub(&self.coset).to_ints().ok_or_else(|| Error::WrongCoset(eta.to_string()))
    }

    pub fn add_term(&mut self, m: PSMonomial, offset: Vec<i64>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.comps.entry(offset.clone()).or_default();
        e.add_term(m, c);
        if e.is_zero() {
            self.comps.remove(&offset);
        }
    }

    pub fn add_poly(&mut self, offset: &[i64], p: &Poly, c: &Q) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let e = self.comps.entry(offset.to_vec()).or_default();
        e.add_scaled(p, c);
        if e.is_zero() {
            self.comps.remove(offset);
        }
    }

    pub fn add_scaled(&mut self, other: &FockElement, c: &Q) {
        assert_eq!(self.coset, other.coset, "adding elements of different modules");
        for (off, p) in &other.comps {
            self.add_poly(off, p, c);
        }
    }

    pub fn add(&self, other: &FockElement) -> FockElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &FockElement) -> FockElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> FockElement {
        let mut out = self.zero_like();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every component by a charge-free polynomial.
    pub fn mul_poly(&self, p: &Poly) -> FockElement {
        let mut out = self.zero_like();
        for (off, f) in &self.comps {
            let g = f.mul(p);
            out.add_poly(off, &g, &Q::one());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Number of `(monomial, charge)` terms.
    pub fn len(&self) -> usize {
        self.comps.values().map(Poly::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.comps.values().filter_map(Poly::max_degree).max().unwrap_or(0)
    }

    /// `(monomial, full charge, coefficient)` triples in canonical order.
    pub fn terms(&self) -> Vec<(PSMonomial, LatticeVector, Q)> {
        let mut out = Vec::with_capacity(self.len());
        for (off, p) in &self.comps {
            let charge = self.charge_of(off);
            for (m, c) in p.terms() {
                out.push((m.clone(), charge.clone(), c.clone()));
            }
        }
        out
    }

    /// Coefficient-wise map; zero results are dropped.
    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> FockElement {
        let mut out = self.zero_like();
        for (off, p) in &self.comps {
            for (m, c) in p.terms() {
                out.add_term(m.clone(), off.clone(), f(c));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut terms = Vec::new();
        for (off, p) in &self.comps {
            let charge = self.charge_of(off).to_json();
            for (m, c) in p.terms() {
                let mono: Vec<Value> =
                    m.factors().iter().map(|&(d, n, e)| json!([d + 1, n, e])).collect();
                terms.push(json!({ "coeff": fmt_q(c), "charge": charge, "monomial": mono }));
            }
        }
        json!({ "coset": self.coset.to_json(), "terms": terms })
    }

    pub fn from_json(lattice: &Lattice, v: &Value) -> Result<FockElement> {
        let bad = |m: &str| Error::Parse(format!("element: {m}"));
        let coset = match v.get("coset") {
            Some(c) => LatticeVector::from_json(c)?,
            None => LatticeVector::zero(lattice.rank()),
        };
        let mut out = FockElement::zero_in(lattice, &coset)?;
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let c = q_from_json(&t["coeff"])?;
            let charge = LatticeVector::from_json(&t["charge"])?;
            let off = out.offset_of(&charge)?;
            let mut factors = Vec::new();
            for f in t["monomial"].as_array().ok_or_else(|| bad("missing monomial"))? {
                let idx = |k: usize| f[k].as_u64().ok_or_else(|| bad("monomial entry"));
                let (d, n, e) = (idx(0)?, idx(1)?, idx(2)?);
                if d == 0 || d as usize > lattice.rank() || n == 0 {
                    return Err(bad("monomial index out of range"));
                }
                factors.push((d as usize - 1, n as u32, e as u32));
            }
            out.add_term(PSMonomial::from_factors(factors), off, c);
        }
        Ok(out)
    }
}

impl fmt::Display for FockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, charge, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            write!(f, "e^{charge}")?;
        }
        Ok(())
    }
}

