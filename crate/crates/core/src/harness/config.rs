use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::rational::{fmt_q, parse_q};

/// Per-suite case counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub divided: usize,
    pub general: usize,
    pub sum: usize,
    pub garland: usize,
    pub divisibility: usize,
    pub automorphism: usize,
}

/// A module `V_{L+γ}` to repeat the integrality suites on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSpec {
    pub gram: Vec<Vec<i64>>,
    /// Coordinates of `γ` as `"num/den"` strings.
    pub coset: Vec<String>,
}

impl CosetSpec {
    pub fn resolve(&self) -> Result<(Lattice, LatticeVector)> {
        let lattice = Lattice::new(self.gram.clone())?;
        let coords = self.coset.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        let gamma = LatticeVector(coords);
        if gamma.rank() != lattice.rank() {
            return Err(Error::RankMismatch { expected: lattice.rank(), got: gamma.rank() });
        }
        if !lattice.dual_membership(&gamma) {
            return Err(Error::NotInDual(gamma.to_string()));
        }
        Ok((lattice, gamma))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub lattices: Vec<Vec<Vec<i64>>>,
    pub max_degree: u32,
    pub max_r: usize,
    pub general_max_r: usize,
    /// Number of modes checked below the top of the support.
    pub mode_window: usize,
    pub cosets: Vec<CosetSpec>,
    pub seed: u64,
    pub cases: CaseCounts,
    pub primes: Vec<u64>,
    pub schur_degree: u32,
    pub unimodular_degree: u32,
    pub identity_degree: u32,
    pub exp_cap: usize,
    /// Record per-case wall time; off by default so reports are reproducible.
    pub timings: bool,
}

fn a2_third() -> CosetSpec {
    CosetSpec { gram: vec![vec![2, -1], vec![-1, 2]], coset: vec!["1/3".into(), "2/3".into()] }
}

impl SuiteConfig {
    pub fn default_preset(seed: u64) -> Self {
        SuiteConfig {
            lattices: vec![vec![vec![2]], vec![vec![2, -1], vec![-1, 2]], vec![vec![2, 0], vec![0, 4]]],
            max_degree: 6,
            max_r: 3,
            general_max_r: 2,
            mode_window: 3,
            cosets: vec![CosetSpec { gram: vec![vec![2]], coset: vec!["1/2".into()] }, a2_third()],
            seed,
            cases: CaseCounts { divided: 50, general: 25, sum: 10, garland: 25, divisibility: 20, automorphism: 10 },
            primes: vec![2, 3, 5],
            schur_degree: 6,
            unimodular_degree: 8,
            identity_degree: 5,
            exp_cap: 12,
            timings: false,
        }
    }

    /// A small configuration for smoke runs.
    pub fn quick_preset(seed: u64) -> Self {
        SuiteConfig {
            lattices: vec![vec![vec![2]], vec![vec![2, -1], vec![-1, 2]]],
            max_degree: 3,
            max_r: 2,
            general_max_r: 2,
            mode_window: 2,
            cosets: vec![CosetSpec { gram: vec![vec![2]], coset: vec!["1/2".into()] }],
            seed,
            cases: CaseCounts { divided: 4, general: 3, sum: 2, garland: 3, divisibility: 3, automorphism: 3 },
            primes: vec![2, 3],
            schur_degree: 4,
            unimodular_degree: 5,
            identity_degree: 3,
            exp_cap: 12,
            timings: false,
        }
    }

    pub fn preset(name: &str, seed: u64) -> Result<Self> {
        match name {
            "default" => Ok(Self::default_preset(seed)),
            "quick" => Ok(Self::quick_preset(seed)),
            _ => Err(Error::Invalid(format!("unknown preset {name:?} (expected default or quick)"))),
        }
    }

    /// Builds every lattice and coset, failing on odd or degenerate forms.
    pub fn validate(&self) -> Result<(Vec<Lattice>, Vec<(Lattice, LatticeVector)>)> {
        if self.max_r == 0 || self.mode_window == 0 {
            return Err(Error::Invalid("max_r and mode_window must be positive".into()));
        }
        for &p in &self.primes {
            crate::fock::reduce_mod_p(&crate::fock::FockElement::vacuum(1), p)?;
        }
        let lattices = self.lattices.iter().map(|g| Lattice::new(g.clone())).collect::<Result<Vec<_>>>()?;
        let cosets = self.cosets.iter().map(CosetSpec::resolve).collect::<Result<Vec<_>>>()?;
        Ok((lattices, cosets))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub(crate) fn coset_json(gamma: &LatticeVector) -> Vec<String> {
    gamma.0.iter().map(fmt_q).collect()
}
