//! Symmetric functions in a single alphabet: power sums, complete
//! homogeneous functions and Schur functions with exact transitions.

mod bernstein;
mod partition;
mod sympoly;
mod transition;

pub use bernstein::{bernstein_mode, schur_by_vertex};
pub use partition::Partition;
pub use sympoly::{Basis, SymPoly};
pub use transition::{
    change_basis, h_in_p, jacobi_trudi, p_in_h, transition_matrix, TransitionMatrix,
};
pub(crate) use transition::{det, h_partition_in_p, p_partition_in_h};
