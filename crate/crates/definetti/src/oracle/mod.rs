//! Brute-force counterparts of every closed form in `definetti_core`.

pub mod cg;
pub mod heisenberg;
pub mod lambda;
pub mod mc;
pub mod symmetric;

pub use cg::{cg_oracle, CgScalar, CgTable};
pub use heisenberg::{heis_annihilation_residual, heis_oracle, heis_orthogonality, HeisOracleReport};
pub use lambda::lambda_up_set;
pub use mc::{mc_theorem1, mc_theorem1_with_state, McConfig, McReport};
pub use symmetric::{brute_delta_symmetric, brute_term_overlaps, sym_basis, SymBasis};
