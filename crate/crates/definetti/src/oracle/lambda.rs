//! `Λ↑ = {w ∈ W_μ : w + ν ∈ W_λ}` for SU(2) by enumeration.

use definetti_core::{TwoJ, Weight};

use crate::{Error, Result};

/// All weights of the SU(2) irrep with highest weight `(λ1, λ2)`.
pub fn su2_weights(highest: &Weight) -> Vec<Weight> {
    let (l1, l2) = (highest.entries()[0], highest.entries()[1]);
    (0..=(l1 - l2))
        .map(|i| Weight::new(vec![l1 - i, l2 + i]).expect("two entries"))
        .collect()
}

/// Highest weights `(μ, ν, λ)` for spins `j1`, `j2` and total `j`:
/// `μ = (2j1, 0)`, `ν = (2j2, 0)`, `λ = (j1+j2+j, j1+j2-j)`.
pub fn su2_highest_weights(j1: TwoJ, j2: TwoJ, j: TwoJ) -> Result<(Weight, Weight, Weight)> {
    let (a, b, c) = (j1.doubled(), j2.doubled(), j.doubled());
    if a < 0 || b < 0 || c < 0 {
        return Err(Error::Invalid(format!("spins must be nonnegative: {j1}, {j2}, {j}")));
    }
    if c < (a - b).abs() || c > a + b {
        return Err(definetti_core::Error::Triangle { j1: a, j2: b, j: c }.into());
    }
    if (a + b + c) % 2 != 0 {
        return Err(definetti_core::Error::Parity(format!("j1 + j2 + j = {j1} + {j2} + {j}")).into());
    }
    let mu = Weight::new(vec![a, 0])?;
    let nu = Weight::new(vec![b, 0])?;
    let lambda = Weight::new(vec![(a + b + c) / 2, (a + b - c) / 2])?;
    Ok((mu, nu, lambda))
}

pub fn lambda_up_set(j1: TwoJ, j2: TwoJ, j: TwoJ) -> Result<Vec<Weight>> {
    let (mu, nu, lambda) = su2_highest_weights(j1, j2, j)?;
    let targets = su2_weights(&lambda);
    let mut out = Vec::new();
    for w in su2_weights(&mu) {
        let shifted = w.checked_add(&nu)?;
        if targets.contains(&shifted) {
            out.push(w);
        }
    }
    Ok(out)
}
