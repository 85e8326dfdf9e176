//! Exact closed forms for de Finetti-type approximation errors derived from
//! group representations.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`weights`]: SU(d) weight-lattice arithmetic (simple roots, dominance
//!   order, heights, weights of `Sym^n(C^d)`, type classes, exact radius).
//! * [`su2_cg`]: exact SU(2) Clebsch–Gordan coefficients (Racah form) and the
//!   overlap functional `δ` for angular-momentum couplings.
//! * [`symmetric`]: the exponential error `ε(n,k,r,d)` for symmetric states,
//!   its combinatorial identities and the two exponential upper bounds.
//! * [`heisenberg`]: number-space overlaps for the Heisenberg group and the
//!   coherent-state bound.
//!
//! Exact values are carried as big rationals, or as [`exact::ExactReal`]
//! (`±√q`) where a square root is unavoidable. Floating point only appears in
//! the exponential bounds and for real Heisenberg parameters.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod exact;
pub mod heisenberg;
pub mod report;
pub mod su2_cg;
pub mod symmetric;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{ExactReal, FactorialTable, SurdSum};
pub use report::{DeltaReport, DeltaValue, Formula};
pub use su2_cg::TwoJ;
pub use weights::{Direction, Weight};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
