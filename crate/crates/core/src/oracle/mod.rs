//! Independent oracles for the field identities behind the integrality
//! theorems.
//!
//! Everything here is computed in truncated multivariate Laurent series
//! ([`MultiLaurent`]) over an explicit exponent window, never by reusing the
//! closed formulas of `vertexops`. Each check compares an operator side
//! (modes applied to Fock elements) with a formula side (products of series)
//! coefficient by coefficient and reports the first mismatch.

mod fields;
mod identities;
mod laurent;
mod lemma;

pub use fields::{a_minus_apply, a_plus_apply, basis_monomials, e_minus, e_plus_apply, inverse_power_in, lift, one_minus_ratio_pow};
pub use identities::{
    annihilator_exponential_check, annihilator_vertex_check, contraction_check, product_formula_check, product_window,
    vertex_creator_check, wick_commutator_check, wick_two_factor_check, IdentityReport,
};
pub use laurent::{Coefficient, MultiLaurent, Window};
pub use lemma::{
    diagonal_factor, inversions, is_symmetric, lemma_divisibility, permutations, random_symmetric, vandermonde_pow,
    vandermonde_sigma_sum,
};
