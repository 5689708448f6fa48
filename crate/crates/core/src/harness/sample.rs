use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::Result;
use crate::fock::{from_keyed, FockElement, HBasisKey, KeyedElement};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::q;
use crate::symfunc::{Basis, Partition};

/// An integer combination of integral basis keys in one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub coset: LatticeVector,
    pub terms: BTreeMap<HBasisKey, i64>,
}

impl Sample {
    pub fn element(&self) -> FockElement {
        let k = KeyedElement {
            basis: Basis::H,
            coset: self.coset.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), q(*c))).collect(),
        };
        from_keyed(&k)
    }

    pub fn to_json(&self) -> Value {
        let k = KeyedElement {
            basis: Basis::H,
            coset: self.coset.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), q(*c))).collect(),
        };
        k.to_json()
    }

    /// One-step simplifications: drop a term, unit coefficient, drop a part.
    fn shrink_candidates(&self) -> Vec<Sample> {
        let mut out = Vec::new();
        for key in self.terms.keys() {
            if self.terms.len() > 1 {
                let mut s = self.clone();
                s.terms.remove(key);
                out.push(s);
            }
        }
        for (key, &c) in &self.terms {
            if c.abs() > 1 {
                let mut s = self.clone();
                s.terms.insert(key.clone(), c.signum());
                out.push(s);
            }
        }
        for (key, &c) in &self.terms {
            for (dir, p) in key.parts.iter().enumerate() {
                if p.is_empty() {
                    continue;
                }
                let mut parts = p.parts().to_vec();
                parts.pop();
                let mut k2 = key.clone();
                k2.parts[dir] = Partition::from_unsorted(parts);
                let mut s = self.clone();
                s.terms.remove(key);
                let e = s.terms.entry(k2).or_insert(0);
                *e += c;
                s.terms.retain(|_, c| *c != 0);
                if !s.terms.is_empty() {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Greedily simplifies `sample` while `fails` keeps returning `Some`.
pub fn shrink<T>(sample: Sample, witness: T, fails: impl Fn(&Sample) -> Option<T>) -> (Sample, T) {
    let mut cur = sample;
    let mut wit = witness;
    'outer: loop {
        for cand in cur.shrink_candidates() {
            if let Some(w) = fails(&cand) {
                cur = cand;
                wit = w;
                continue 'outer;
            }
        }
        return (cur, wit);
    }
}

fn random_key(rng: &mut ChaCha8Rng, rank: usize, max_degree: u32, offset: &[i64]) -> HBasisKey {
    let degree = rng.gen_range(0..=max_degree);
    let mut weights = vec![0u32; rank];
    for _ in 0..degree {
        weights[rng.gen_range(0..rank)] += 1;
    }
    let parts = weights
        .iter()
        .map(|&w| Partition::all(w).choose(rng).cloned().unwrap_or_else(Partition::empty))
        .collect();
    HBasisKey { parts, offset: offset.to_vec() }
}

/// A seeded sample: up to five keys of degree at most `max_degree`, sharing
/// one charge `γ + offset` with offset coordinates in `[-1, 1]`, and
/// coefficients in `[-3, 3] \ {0}`.
pub fn random_sample(lattice: &Lattice, coset: &LatticeVector, max_degree: u32, seed: u64) -> Result<Sample> {
    let zero = FockElement::zero_in(lattice, coset)?;
    let rank = lattice.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset: Vec<i64> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
    let count = rng.gen_range(1..=5);
    let mut terms = BTreeMap::new();
    for _ in 0..count {
        let key = random_key(&mut rng, rank, max_degree, &offset);
        let mut c = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        *terms.entry(key).or_insert(0) += c;
    }
    terms.retain(|_, c| *c != 0);
    if terms.is_empty() {
        terms.insert(HBasisKey { parts: vec![Partition::empty(); rank], offset }, 1);
    }
    Ok(Sample { coset: zero.coset().clone(), terms })
}

/// The element of [`random_sample`]; integral by construction.
pub fn random_element(lattice: &Lattice, coset: &LatticeVector, max_degree: u32, seed: u64) -> Result<FockElement> {
    Ok(random_sample(lattice, coset, max_degree, seed)?.element())
}

/// A seeded nonzero lattice vector with coordinates in `[-2, 2]`.
pub fn random_root(rng: &mut ChaCha8Rng, rank: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

pub(crate) fn seed_for(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(base ^ 0x9e37_79b9_7f4a_7c15, |acc, &p| {
        acc.rotate_left(17).wrapping_mul(0x100_0000_01b3) ^ p.wrapping_add(0x51_7cc1_b727_220a)
    })
}
