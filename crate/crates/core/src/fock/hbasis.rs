//! The integral basis `Π_i h_{ε_i, -μ^(i)} ⊗ e^η` and everything built on
//! it: integrality verdicts, Schur re-expansion and reduction mod `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::element::FockElement;
use super::mono::PSMonomial;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{fmt_q, is_integer, residue, Q};
use crate::symfunc::{change_basis, h_partition_in_p, p_partition_in_h, Basis, Partition, SymPoly};

/// One partition per direction plus the charge offset from the coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HBasisKey {
    pub parts: Vec<Partition>,
    pub offset: Vec<i64>,
}

impl HBasisKey {
    pub fn degree(&self) -> u32 {
        self.parts.iter().map(Partition::weight).sum()
    }

    fn to_json(&self, coset: &LatticeVector) -> Value {
        let hkey: Vec<Value> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(i, p)| json!([i + 1, p.parts()]))
            .collect();
        json!({ "hkey": hkey, "charge": coset.add_ints(&self.offset).to_json() })
    }
}

impl fmt::Display for HBasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if !p.is_empty() {
                write!(f, "h{}{p}*", i + 1)?;
            }
        }
        write!(f, "e^{:?}", self.offset)
    }
}

/// An element expanded over per-direction keys in one basis (`H` or `S`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyedElement {
    pub basis: Basis,
    pub coset: LatticeVector,
    pub terms: BTreeMap<HBasisKey, Q>,
}

impl KeyedElement {
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut t = k.to_json(&self.coset);
                t["coeff"] = json!(fmt_q(c));
                t
            })
            .collect();
        json!({
            "basis": self.basis.letter().to_ascii_uppercase().to_string(),
            "coset": self.coset.to_json(),
            "terms": terms,
        })
    }
}

type Mixed = BTreeMap<(Vec<Partition>, Vec<i64>), Q>;

/// Rewrites direction `dir` of every key through `image`.
fn convert_direction(map: Mixed, dir: usize, image: &dyn Fn(&Partition) -> Arc<SymPoly>) -> Mixed {
    let mut out: Mixed = BTreeMap::new();
    for ((parts, off), c) in map {
        let img = image(&parts[dir]);
        for (k, v) in img.terms() {
            let mut p2 = parts.clone();
            p2[dir] = k.clone();
            let e = out.entry((p2, off.clone())).or_insert_with(Q::zero);
            *e += &c * v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn to_mixed(elem: &FockElement) -> Mixed {
    let rank = elem.rank();
    let mut m = Mixed::new();
    for (off, p) in elem.components() {
        for (mono, c) in p.terms() {
            m.insert((mono.per_direction(rank), off.clone()), c.clone());
        }
    }
    m
}

fn keyed(basis: Basis, coset: &LatticeVector, m: Mixed) -> KeyedElement {
    KeyedElement {
        basis,
        coset: coset.clone(),
        terms: m.into_iter().map(|((parts, offset), c)| (HBasisKey { parts, offset }, c)).collect(),
    }
}

/// Exact expansion in the integral `h`-basis.
pub fn to_h_basis(elem: &FockElement) -> KeyedElement {
    let mut m = to_mixed(elem);
    for dir in 0..elem.rank() {
        m = convert_direction(m, dir, &p_partition_in_h);
    }
    keyed(Basis::H, elem.coset(), m)
}

fn unit(basis: Basis, p: &Partition) -> SymPoly {
    SymPoly::term(basis, p.clone(), Q::one())
}

/// Expansion in per-direction Schur functions.
pub fn to_s_basis(elem: &FockElement) -> KeyedElement {
    let h = to_h_basis(elem);
    let mut m: Mixed = h.terms.into_iter().map(|(k, c)| ((k.parts, k.offset), c)).collect();
    let image = |p: &Partition| Arc::new(change_basis(&unit(Basis::H, p), Basis::S));
    for dir in 0..elem.rank() {
        m = convert_direction(m, dir, &image);
    }
    keyed(Basis::S, elem.coset(), m)
}

impl KeyedElement {
    pub fn from_json(lattice: &Lattice, v: &Value) -> Result<KeyedElement> {
        let bad = |m: &str| Error::Parse(format!("keyed element: {m}"));
        let basis = Basis::parse(v["basis"].as_str().ok_or_else(|| bad("missing basis"))?)?;
        if basis == Basis::P {
            return Err(bad("keyed elements use the H or S basis"));
        }
        let coset = match v.get("coset") {
            Some(c) => LatticeVector::from_json(c)?,
            None => LatticeVector::zero(lattice.rank()),
        };
        let zero = FockElement::zero_in(lattice, &coset)?;
        let mut terms = BTreeMap::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let offset = zero.offset_of(&LatticeVector::from_json(&t["charge"])?)?;
            let mut parts = vec![Partition::empty(); lattice.rank()];
            for entry in t["hkey"].as_array().ok_or_else(|| bad("missing hkey"))? {
                let dir = entry[0].as_u64().filter(|&d| d >= 1 && d as usize <= lattice.rank());
                let dir = dir.ok_or_else(|| bad("direction out of range"))? as usize - 1;
                let list = entry[1].as_array().ok_or_else(|| bad("partition"))?;
                let ps = list.iter().map(|x| x.as_u64().map(|p| p as u32)).collect::<Option<Vec<u32>>>();
                parts[dir] = Partition::new(ps.ok_or_else(|| bad("partition part"))?)?;
            }
            let c = crate::rational::q_from_json(&t["coeff"])?;
            let e = terms.entry(HBasisKey { parts, offset }).or_insert_with(Q::zero);
            *e += c;
        }
        terms.retain(|_, c: &mut Q| !c.is_zero());
        Ok(KeyedElement { basis, coset: zero.coset().clone(), terms })
    }
}

/// Reads an element in any output form: power-sum monomials, or keyed in
/// the `H` or `S` basis.
pub fn element_from_json(lattice: &Lattice, v: &Value) -> Result<FockElement> {
    if v.get("basis").is_some() {
        Ok(from_keyed(&KeyedElement::from_json(lattice, v)?))
    } else {
        FockElement::from_json(lattice, v)
    }
}

/// Inverse of [`to_h_basis`] and [`to_s_basis`].
pub fn from_keyed(k: &KeyedElement) -> FockElement {
    let rank = k.coset.rank();
    let mut m: Mixed =
        k.terms.iter().map(|(key, c)| ((key.parts.clone(), key.offset.clone()), c.clone())).collect();
    if k.basis == Basis::S {
        let image = |p: &Partition| Arc::new(change_basis(&unit(Basis::S, p), Basis::H));
        for dir in 0..rank {
            m = convert_direction(m, dir, &image);
        }
    }
    if k.basis != Basis::P {
        for dir in 0..rank {
            m = convert_direction(m, dir, &h_partition_in_p);
        }
    }
    let mut out = FockElement::with_coset(k.coset.clone());
    for ((parts, off), c) in m {
        out.add_term(PSMonomial::from_partitions(&parts), off, c);
    }
    out
}

/// Membership verdict for the integral form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Integral,
    NotIntegral { key: HBasisKey, coeff: Q },
}

impl Verdict {
    pub fn is_integral(&self) -> bool {
        matches!(self, Verdict::Integral)
    }
}

pub fn integrality_check(elem: &FockElement) -> Verdict {
    let h = to_h_basis(elem);
    match h.terms.into_iter().find(|(_, c)| !is_integer(c)) {
        None => Verdict::Integral,
        Some((key, coeff)) => Verdict::NotIntegral { key, coeff },
    }
}

/// `h`-basis coefficients reduced to `[0, p)`; zero residues dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPElement {
    pub p: u64,
    pub coset: LatticeVector,
    pub terms: BTreeMap<HBasisKey, u64>,
}

impl ModPElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut t = k.to_json(&self.coset);
                t["coeff"] = json!(c);
                t
            })
            .collect();
        json!({ "p": self.p, "coset": self.coset.to_json(), "terms": terms })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn reduce_mod_p(elem: &FockElement, p: u64) -> Result<ModPElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let h = to_h_basis(elem);
    let mut terms = BTreeMap::new();
    for (k, c) in h.terms {
        let r = residue(&c, p).ok_or_else(|| Error::NotIntegral { key: k.to_string(), coeff: c.clone() })?;
        if r != 0 {
            terms.insert(k, r);
        }
    }
    Ok(ModPElement { p, coset: h.coset, terms })
}

/// Splits an element by `(conformal weight, charge)` where the weight of
/// `m ⊗ e^η` is `deg m + ⟨η, η⟩ / 2`.
pub fn grade(lattice: &Lattice, elem: &FockElement) -> BTreeMap<(Q, LatticeVector), FockElement> {
    let mut out: BTreeMap<(Q, LatticeVector), FockElement> = BTreeMap::new();
    for (off, p) in elem.components() {
        let charge = elem.charge_of(off);
        let half_norm = lattice.pairing(&charge, &charge).expect("rank checked") / Q::from_integer(2.into());
        for (m, c) in p.terms() {
            let w = Q::from_integer((m.degree() as i64).into()) + &half_norm;
            out.entry((w, charge.clone()))
                .or_insert_with(|| elem.zero_like())
                .add_term(m.clone(), off.clone(), c.clone());
        }
    }
    out
}
