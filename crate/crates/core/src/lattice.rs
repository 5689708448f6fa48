//! Even integral lattices: Gram matrix, pairing, dual cosets and the sign
//! cocycle of the twisted group algebra.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_integer, q, q_from_json, Q};

/// Coordinates in the basis `ε_1, …, ε_d`; rational so that dual-lattice
/// vectors fit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<Q>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Q::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| q(x)).collect())
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self::from_ints(&v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| if is_integer(c) { c.numer().to_i64() } else { None }).collect()
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_ints(&self, o: &[i64]) -> LatticeVector {
        LatticeVector(self.0.iter().zip(o).map(|(a, &b)| a + q(b)).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|c| json!(fmt_q(c))).collect())
    }

    pub fn from_json(v: &Value) -> Result<LatticeVector> {
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected vector, got {v}")))?;
        Ok(LatticeVector(arr.iter().map(q_from_json).collect::<Result<_>>()?))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Signs `ε(ε_i, ε_j)` on basis pairs; extended bimultiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    signs: Vec<Vec<i8>>,
}

impl CocycleTable {
    /// `+1` for `i ≤ j`, `(-1)^{⟨ε_i, ε_j⟩}` for `i > j`.
    fn standard(gram: &[Vec<i64>]) -> Self {
        let d = gram.len();
        let signs = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i <= j || gram[i][j].rem_euclid(2) == 0 { 1 } else { -1 })
                    .collect()
            })
            .collect();
        CocycleTable { signs }
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.signs[i][j]
    }

    /// `ε(u, v)` for integer coordinate vectors.
    pub fn eval(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut odd = 0i64;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if self.signs[i][j] < 0 {
                    odd += ui * vj;
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    cocycle: CocycleTable,
}

impl Lattice {
    /// Validates symmetry, non-degeneracy and evenness.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Lattice> {
        let d = gram.len();
        if d == 0 || gram.iter().any(|row| row.len() != d) {
            return Err(Error::NotSquare);
        }
        for i in 0..d {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let m: Vec<Vec<Q>> = gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        if crate::symfunc::det(m).is_zero() {
            return Err(Error::Degenerate);
        }
        if let Some(i) = (0..d).find(|&i| gram[i][i].rem_euclid(2) != 0) {
            return Err(Error::OddLattice(i));
        }
        let cocycle = CocycleTable::standard(&gram);
        Ok(Lattice { gram, cocycle })
    }

    pub fn a1() -> Lattice {
        Lattice::new(vec![vec![2]]).unwrap()
    }

    pub fn a2() -> Lattice {
        Lattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    /// All diagonal entries are even; construction guarantees it.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn determinant(&self) -> i64 {
        let m: Vec<Vec<Q>> =
            self.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        crate::symfunc::det(m).to_integer().to_i64().expect("determinant fits i64")
    }

    fn check_rank(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: v.rank() });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<Q> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        let mut acc = Q::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                acc += ui * vj * q(self.gram[i][j]);
            }
        }
        Ok(acc)
    }

    pub fn pairing_int(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                acc += ui * self.gram[i][j] * vj;
            }
        }
        acc
    }

    /// `(⟨u, ε_1⟩, …, ⟨u, ε_d⟩)`.
    pub fn gram_times(&self, u: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| u.iter().enumerate().map(|(i, &ui)| ui * self.gram[i][j]).sum())
            .collect()
    }

    /// Same as [`Lattice::gram_times`] for a dual-lattice vector; `None` if
    /// some pairing is not integral.
    pub fn dual_pairings(&self, g: &LatticeVector) -> Option<Vec<i64>> {
        (0..self.rank())
            .map(|j| {
                let s: Q = g.0.iter().enumerate().map(|(i, c)| c * q(self.gram[i][j])).sum();
                if is_integer(&s) {
                    s.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn epsilon(&self, u: &LatticeVector, v: &LatticeVector) -> Result<i64> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        let a = u.to_ints().ok_or_else(|| Error::NotInLattice(u.to_string()))?;
        let b = v.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()))?;
        Ok(self.cocycle.eval(&a, &b))
    }

    pub fn dual_membership(&self, g: &LatticeVector) -> bool {
        g.rank() == self.rank() && self.dual_pairings(g).is_some()
    }

    /// Representatives of `L°/L`, one per class, each with coordinates in
    /// `[0, 1)`, sorted lexicographically.
    pub fn dual_coset_reps(&self) -> Vec<LatticeVector> {
        let d = self.rank();
        let h = column_hnf(&self.gram);
        let diag: Vec<i64> = (0..d).map(|i| h[i][i] as i64).collect();
        let mut reps = Vec::new();
        let mut k = vec![0i64; d];
        loop {
            let rhs: Vec<Q> = k.iter().map(|&x| q(x)).collect();
            let g = solve(&self.gram, &rhs);
            reps.push(LatticeVector(g.into_iter().map(|c| c.clone() - c.floor()).collect()));
            // odometer over 0 <= k_i < diag_i
            let mut i = 0;
            loop {
                if i == d {
                    reps.sort();
                    reps.dedup();
                    return reps;
                }
                k[i] += 1;
                if k[i] < diag[i] {
                    break;
                }
                k[i] = 0;
                i += 1;
            }
        }
    }

    /// Reduces a dual vector to its representative in `[0, 1)^d`.
    pub fn coset_rep_of(&self, g: &LatticeVector) -> LatticeVector {
        LatticeVector(g.0.iter().map(|c| c - c.floor()).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({ "gram": self.gram })
    }

    pub fn from_json(v: &Value) -> Result<Lattice> {
        let rows = v["gram"].as_array().ok_or_else(|| Error::Parse("missing gram".into()))?;
        let gram = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("gram row".into()))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Parse("gram entry".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Lattice::new(gram)
    }
}

/// Lower-triangular column Hermite form with positive diagonal; the
/// columns span the same lattice as the columns of `m`.
fn column_hnf(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let d = m.len();
    let mut h: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let col_op = |h: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in h.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    for i in 0..d {
        loop {
            let nz: Vec<usize> = (i..d).filter(|&j| h[i][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    if j != i {
                        for row in h.iter_mut() {
                            row.swap(i, j);
                        }
                    }
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| h[i][j].abs()).unwrap();
            for &j in &nz {
                if j != p {
                    let f = Integer::div_floor(&h[i][j], &h[i][p]);
                    col_op(&mut h, j, p, f);
                }
            }
        }
        if h[i][i] < 0 {
            for row in h.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    h
}

/// Solves `m x = rhs` over the rationals; `m` must be invertible.
fn solve(m: &[Vec<i64>], rhs: &[Q]) -> Vec<Q> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().map(|&x| q(x)).chain(std::iter::once(b.clone())).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n].clone()).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn construction() {
        assert_eq!(Lattice::a1().rank(), 1);
        assert!(Lattice::a1().is_even());
        assert_eq!(Lattice::a2().determinant(), 3);
        assert!(matches!(Lattice::new(vec![vec![1]]), Err(Error::OddLattice(0))));
        assert!(matches!(Lattice::new(vec![vec![2, 1], vec![0, 2]]), Err(Error::NotSymmetric(1, 0))));
        assert!(matches!(Lattice::new(vec![vec![2, 2], vec![2, 2]]), Err(Error::Degenerate)));
        assert!(matches!(Lattice::new(vec![vec![2, 1]]), Err(Error::NotSquare)));
    }

    #[test]
    fn pairings() {
        let a1 = Lattice::a1();
        assert_eq!(a1.pairing(&v(&[1]), &v(&[1])).unwrap(), q(2));
        let a2 = Lattice::a2();
        assert_eq!(a2.pairing(&v(&[1, 0]), &v(&[0, 1])).unwrap(), q(-1));
        let half = LatticeVector(vec![qf(1, 2)]);
        assert_eq!(a1.pairing(&half, &v(&[1])).unwrap(), q(1));
        assert!(matches!(a1.pairing(&v(&[1, 0]), &v(&[1])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn epsilon_examples() {
        let a2 = Lattice::a2();
        assert_eq!(a2.epsilon(&v(&[0, 0]), &v(&[3, -1])).unwrap(), 1);
        assert_eq!(a2.epsilon(&v(&[1, 0]), &v(&[0, 1])).unwrap(), 1);
        assert_eq!(a2.epsilon(&v(&[0, 1]), &v(&[1, 0])).unwrap(), -1);
        assert_eq!(Lattice::a1().epsilon(&v(&[1]), &v(&[1])).unwrap(), 1);
        let half = LatticeVector(vec![qf(1, 2)]);
        assert!(Lattice::a1().epsilon(&half, &v(&[1])).is_err());
    }

    #[test]
    fn dual_membership_examples() {
        let a1 = Lattice::a1();
        assert!(a1.dual_membership(&LatticeVector(vec![qf(1, 2)])));
        assert!(!a1.dual_membership(&LatticeVector(vec![qf(1, 3)])));
        assert!(a1.dual_membership(&v(&[5])));
    }

    #[test]
    fn coset_examples() {
        assert_eq!(
            Lattice::a1().dual_coset_reps(),
            vec![LatticeVector::zero(1), LatticeVector(vec![qf(1, 2)])]
        );
        assert_eq!(Lattice::a2().dual_coset_reps().len(), 3);
        let l = Lattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(l.dual_coset_reps().len(), 3);
        let e8ish = Lattice::new(vec![vec![2, 1], vec![1, 0]]).unwrap();
        assert_eq!(e8ish.determinant(), -1);
        assert_eq!(e8ish.dual_coset_reps(), vec![LatticeVector::zero(2)]);
        let l = Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(l.dual_coset_reps().len(), 8);
    }

    fn lattices() -> Vec<Lattice> {
        vec![
            Lattice::a1(),
            Lattice::a2(),
            Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap(),
            Lattice::new(vec![vec![4, 2, 0], vec![2, 6, 3], vec![0, 3, 8]]).unwrap(),
        ]
    }

    #[test]
    fn cosets_are_distinct_dual_and_complete() {
        for l in lattices() {
            let reps = l.dual_coset_reps();
            assert_eq!(reps.len() as i64, l.determinant().abs());
            for (i, a) in reps.iter().enumerate() {
                assert!(l.dual_membership(a));
                for b in &reps[i + 1..] {
                    assert!(!a.sub(b).is_integral());
                }
            }
        }
    }

    fn arb_vec(d: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..=3, d)
    }

    proptest! {
        #[test]
        fn cocycle_properties(a in arb_vec(3), b in arb_vec(3), c in arb_vec(3)) {
            let l = &lattices()[3];
            let t = l.cocycle();
            let sum = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(p, q)| p + q).collect() };
            let comm = t.eval(&a, &b) * t.eval(&b, &a);
            prop_assert_eq!(comm, if l.pairing_int(&a, &b).rem_euclid(2) == 0 { 1 } else { -1 });
            prop_assert_eq!(
                t.eval(&a, &b) * t.eval(&sum(&a, &b), &c),
                t.eval(&b, &c) * t.eval(&a, &sum(&b, &c))
            );
            prop_assert_eq!(t.eval(&a, &[0, 0, 0]), 1);
            prop_assert_eq!(t.eval(&[0, 0, 0], &a), 1);
        }

        #[test]
        fn pairing_symmetric_bilinear(a in arb_vec(2), b in arb_vec(2), c in arb_vec(2), k in -3i64..=3) {
            let l = Lattice::a2();
            let (va, vb, vc) = (v(&a), v(&b), v(&c));
            prop_assert_eq!(l.pairing(&va, &vb).unwrap(), l.pairing(&vb, &va).unwrap());
            let lhs = l.pairing(&va.scale(&q(k)).add(&vb), &vc).unwrap();
            let rhs = l.pairing(&va, &vc).unwrap() * q(k) + l.pairing(&vb, &vc).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(l.pairing(&va, &vb).unwrap(), q(l.pairing_int(&a, &b)));
        }
    }
}
