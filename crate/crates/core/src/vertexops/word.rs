use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::binomial;

/// `v = α_1(-n_1) ⋯ α_k(-n_k) e^γ` with every `α_j, γ ∈ L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexWord {
    heis: Vec<(Vec<i64>, u32)>,
    gamma: Vec<i64>,
}

impl VertexWord {
    pub fn new(heis: Vec<(Vec<i64>, u32)>, gamma: Vec<i64>) -> Result<Self> {
        let d = gamma.len();
        for (alpha, n) in &heis {
            if *n == 0 {
                return Err(Error::Invalid("Heisenberg mode index must be at least 1".into()));
            }
            if alpha.len() != d {
                return Err(Error::RankMismatch { expected: d, got: alpha.len() });
            }
        }
        Ok(VertexWord { heis, gamma })
    }

    /// `e^γ`.
    pub fn charge(gamma: &[i64]) -> Self {
        VertexWord { heis: Vec::new(), gamma: gamma.to_vec() }
    }

    pub fn from_vectors(heis: &[(LatticeVector, u32)], gamma: &LatticeVector) -> Result<Self> {
        let ints = |v: &LatticeVector| v.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()));
        let h = heis.iter().map(|(a, n)| Ok((ints(a)?, *n))).collect::<Result<Vec<_>>>()?;
        VertexWord::new(h, ints(gamma)?)
    }

    pub fn heis(&self) -> &[(Vec<i64>, u32)] {
        &self.heis
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn rank(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_pure_charge(&self) -> bool {
        self.heis.is_empty()
    }

    /// Conformal weight `Σ n_j + ⟨γ,γ⟩/2`.
    pub fn weight(&self, lattice: &Lattice) -> i64 {
        let h: i64 = self.heis.iter().map(|(_, n)| *n as i64).sum();
        h + lattice.pairing_int(&self.gamma, &self.gamma) / 2
    }

    pub(crate) fn check(&self, lattice: &Lattice) -> Result<()> {
        if self.rank() != lattice.rank() {
            return Err(Error::RankMismatch { expected: lattice.rank(), got: self.rank() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let heis: Vec<Value> =
            self.heis.iter().map(|(a, n)| json!({ "alpha": a, "n": n })).collect();
        json!({ "heis": heis, "gamma": self.gamma })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("vertex word: {what}"));
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array()
                .ok_or_else(|| bad("expected an integer array"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("lattice coordinates must be integers")))
                .collect()
        };
        let gamma = ints(v.get("gamma").ok_or_else(|| bad("missing gamma"))?)?;
        let mut heis = Vec::new();
        if let Some(h) = v.get("heis") {
            for item in h.as_array().ok_or_else(|| bad("heis must be an array"))? {
                let alpha = ints(item.get("alpha").ok_or_else(|| bad("missing alpha"))?)?;
                let n = item
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing or negative n"))?;
                heis.push((alpha, n as u32));
            }
        }
        VertexWord::new(heis, gamma)
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, n) in &self.heis {
            write!(f, "{}(-{n})", LatticeVector::from_ints(a))?;
        }
        write!(f, "e^{}", LatticeVector::from_ints(&self.gamma))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSign {
    Plus,
    Minus,
}

/// Binomial weight of `β(±j)` inside `A^±_{β,m}(z)`.
///
/// `Plus`: `(-1)^{m-1} C(j+m-1, m-1)` for `j ≥ 0`.
/// `Minus`: `C(j-1, m-1)` for `j ≥ 1`. Out-of-range indices give 0.
pub fn a_mode_coeff(sign: ModeSign, m: u32, j: i64) -> BigInt {
    if m == 0 {
        return BigInt::zero();
    }
    let m = m as i64;
    match sign {
        ModeSign::Plus if j >= 0 => {
            let b = binomial(j + m - 1, m - 1);
            if m % 2 == 0 {
                -b
            } else {
                b
            }
        }
        ModeSign::Minus if j >= 1 => binomial(j - 1, m - 1),
        _ => BigInt::zero(),
    }
}
