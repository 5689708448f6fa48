use crate::error::{Error, Result};
use crate::fock::{FockElement, Poly};
use crate::lattice::{Lattice, LatticeVector};
use crate::memo::{memo, Cache};
use crate::rational::Q;
use crate::symfunc::{change_basis, Basis, Partition, SymPoly};

use super::modes::lattice_ints;

static GARLAND_P: Cache<(u32, u32), SymPoly> = Cache::new(Default::default);

/// `h^{[k]}_{-n}` in power sums, from `n h^{[k]}_{-n} = Σ_{m=1}^{n} p_{km} h^{[k]}_{-(n-m)}`.
fn garland_p(k: u32, n: u32) -> std::sync::Arc<SymPoly> {
    memo(&GARLAND_P, (k, n), || {
        if n == 0 {
            return SymPoly::one(Basis::P);
        }
        let mut acc = SymPoly::zero(Basis::P);
        for m in 1..=n {
            let prev = garland_p(k, n - m);
            acc = acc.add(&SymPoly::generator(Basis::P, k * m).mul(&prev));
        }
        acc.scale(&Q::new(1.into(), (n as i64).into()))
    })
}

/// Garland polynomial `h^{[k]}_{-n}`: the coefficient of `z^n` in
/// `exp(Σ_{m≥1} p_{km} z^m / m)`, expanded in complete homogeneous functions.
pub fn garland_poly(k: u32, n: u32) -> Result<SymPoly> {
    if k == 0 {
        return Err(Error::Invalid("Garland index k must be at least 1".into()));
    }
    Ok(change_basis(&garland_p(k, n), Basis::H))
}

/// Substitutes `p_m ↦ α(-m)` into a symmetric function.
pub fn instantiate(f: &SymPoly, alpha: &[i64]) -> Poly {
    let f = change_basis(f, Basis::P);
    let mut out = Poly::zero();
    for (key, c) in f.terms() {
        let mut term = Poly::constant(c.clone());
        for &part in Partition::parts(key) {
            term = term.mul(&Poly::linear(alpha, part));
        }
        out.add_assign(&term);
    }
    out
}

/// Multiplication by `h^{[k]}_{α,-n}`.
pub fn garland_apply(lattice: &Lattice, alpha: &LatticeVector, k: u32, n: u32, elem: &FockElement) -> Result<FockElement> {
    let a = lattice_ints(alpha)?;
    if a.len() != lattice.rank() {
        return Err(Error::RankMismatch { expected: lattice.rank(), got: a.len() });
    }
    if k == 0 {
        return Err(Error::Invalid("Garland index k must be at least 1".into()));
    }
    Ok(elem.mul_poly(&instantiate(&garland_p(k, n), &a)))
}
