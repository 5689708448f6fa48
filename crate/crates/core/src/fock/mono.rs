use std::fmt;

use crate::symfunc::Partition;

/// `Π ε_i(-n)^e`, stored as `(direction, mode, exponent)` sorted by
/// direction then mode; exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PSMonomial {
    factors: Vec<(usize, u32, u32)>,
}

impl PSMonomial {
    pub fn one() -> Self {
        PSMonomial::default()
    }

    /// `ε_dir(-mode)`
    pub fn var(dir: usize, mode: u32) -> Self {
        assert!(mode >= 1);
        PSMonomial { factors: vec![(dir, mode, 1)] }
    }

    pub fn from_factors(mut f: Vec<(usize, u32, u32)>) -> Self {
        f.retain(|&(_, _, e)| e > 0);
        f.sort_unstable();
        let mut out: Vec<(usize, u32, u32)> = Vec::with_capacity(f.len());
        for (d, n, e) in f {
            match out.last_mut() {
                Some((d0, n0, e0)) if *d0 == d && *n0 == n => *e0 += e,
                _ => out.push((d, n, e)),
            }
        }
        PSMonomial { factors: out }
    }

    pub fn factors(&self) -> &[(usize, u32, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ n e`: the Heisenberg degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, n, e)| n * e).sum()
    }

    pub fn exponent(&self, dir: usize, mode: u32) -> u32 {
        self.factors
            .binary_search_by(|&(d, n, _)| (d, n).cmp(&(dir, mode)))
            .map(|i| self.factors[i].2)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &PSMonomial) -> PSMonomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ka, kb) = ((a[i].0, a[i].1), (b[j].0, b[j].1));
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((ka.0, ka.1, a[i].2 + b[j].2));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PSMonomial { factors: out }
    }

    /// Lowers the exponent of `ε_dir(-mode)` by `by`; `None` if too small.
    pub fn lower(&self, dir: usize, mode: u32, by: u32) -> Option<PSMonomial> {
        let mut f = self.factors.clone();
        let i = f.binary_search_by(|&(d, n, _)| (d, n).cmp(&(dir, mode))).ok()?;
        if f[i].2 < by {
            return None;
        }
        f[i].2 -= by;
        if f[i].2 == 0 {
            f.remove(i);
        }
        Some(PSMonomial { factors: f })
    }

    /// The power-sum partition carried by each direction `0..rank`.
    pub fn per_direction(&self, rank: usize) -> Vec<Partition> {
        let mut parts = vec![Vec::new(); rank];
        for &(d, n, e) in &self.factors {
            parts[d].extend(std::iter::repeat_n(n, e as usize));
        }
        parts.into_iter().map(Partition::from_unsorted).collect()
    }

    pub fn from_partitions(parts: &[Partition]) -> PSMonomial {
        let mut f = Vec::new();
        for (d, p) in parts.iter().enumerate() {
            for (n, e) in p.multiplicities() {
                f.push((d, n, e));
            }
        }
        PSMonomial::from_factors(f)
    }
}

impl fmt::Display for PSMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, &(d, n, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "e{}(-{n})", d + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
