//! Brute-force oracles, verification suites, figure export and the
//! command-line front end for [`definetti_core`].

pub mod compute;
pub mod dense;
mod error;
pub mod figure;
pub mod oracle;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
