//! Truncated two-mode Fock space oracle for `H_μ ⊗ H_ν`.
//!
//! A two-mode vector is stored as a `levels × levels` matrix of amplitudes
//! `V[n1][n2]`; ladder operators act on rows (first mode) or columns
//! (second mode), so the full Kronecker operators are never formed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dense::{CMatrix, DenseOperator};
use crate::{Error, Result};

/// Minimum headroom of the cutoff above `r + Δ`.
pub const CUTOFF_MARGIN: u64 = 40;

type Modes = DMatrix<f64>;

/// Single-mode annihilation operator on `levels` number states.
pub fn annihilation_operator(levels: usize) -> DenseOperator {
    let mut m = CMatrix::zeros(levels, levels);
    for n in 1..levels {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let labels = (0..levels).map(|n| format!("|{n}>")).collect();
    DenseOperator::new(m, labels).expect("square")
}

fn lower_first(v: &Modes) -> Modes {
    let n = v.nrows();
    Modes::from_fn(n, n, |i, j| if i + 1 < n { ((i + 1) as f64).sqrt() * v[(i + 1, j)] } else { 0.0 })
}

fn lower_second(v: &Modes) -> Modes {
    let n = v.nrows();
    Modes::from_fn(n, n, |i, j| if j + 1 < n { ((j + 1) as f64).sqrt() * v[(i, j + 1)] } else { 0.0 })
}

fn raise_first(v: &Modes) -> Modes {
    let n = v.nrows();
    Modes::from_fn(n, n, |i, j| if i > 0 { (i as f64).sqrt() * v[(i - 1, j)] } else { 0.0 })
}

fn raise_second(v: &Modes) -> Modes {
    let n = v.nrows();
    Modes::from_fn(n, n, |i, j| if j > 0 { (j as f64).sqrt() * v[(i, j - 1)] } else { 0.0 })
}

/// `a_{μ⊗ν} = (√μ a₁ + √ν a₂)/√(μ+ν)`.
fn joint_lower(v: &Modes, mu: f64, nu: f64) -> Modes {
    let s = (mu + nu).sqrt();
    lower_first(v) * (mu.sqrt() / s) + lower_second(v) * (nu.sqrt() / s)
}

fn joint_raise(v: &Modes, mu: f64, nu: f64) -> Modes {
    let s = (mu + nu).sqrt();
    raise_first(v) * (mu.sqrt() / s) + raise_second(v) * (nu.sqrt() / s)
}

fn binomial(n: u64, k: u64) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// `|ψ^Δ⟩ = Σ_ℓ (-1)^ℓ √α_ℓ |Δ-ℓ⟩ ⊗ |ℓ⟩`, `α_ℓ = C(Δ,ℓ) μ^ℓ ν^{Δ-ℓ}/(μ+ν)^Δ`.
fn killed_vector(mu: f64, nu: f64, excitation: u64, levels: usize) -> Modes {
    let mut v = Modes::zeros(levels, levels);
    let (p, q) = (nu / (mu + nu), mu / (mu + nu));
    for ell in 0..=excitation {
        let alpha = binomial(excitation, ell) * q.powi(ell as i32) * p.powi((excitation - ell) as i32);
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        v[((excitation - ell) as usize, ell as usize)] = sign * alpha.sqrt();
    }
    v
}

/// `|ψ^Δ_n⟩ = (a†_{μ⊗ν})ⁿ |ψ^Δ⟩ / √(n!)` for `n = 0..=max_n`.
fn ladder(mu: f64, nu: f64, excitation: u64, max_n: u64, levels: usize) -> Vec<Modes> {
    let mut out = Vec::with_capacity(max_n as usize + 1);
    let mut v = killed_vector(mu, nu, excitation, levels);
    for n in 0..=max_n {
        if n > 0 {
            v = joint_raise(&v, mu, nu) / (n as f64).sqrt();
        }
        out.push(v.clone());
    }
    out
}

fn check(mu: f64, nu: f64) -> Result<()> {
    if !(mu > 0.0 && nu > 0.0 && mu.is_finite() && nu.is_finite()) {
        return Err(Error::Invalid(format!("mu and nu must be positive, got mu={mu} nu={nu}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisOracleReport {
    pub delta: f64,
    /// `‖a_{μ⊗ν}|ψ^Δ⟩‖`.
    pub annihilation_residual: f64,
    /// `max_n |‖ψ^Δ_n‖² - 1|` over the kept ladder; nonzero only if the
    /// cutoff clipped a state.
    pub norm_defect: f64,
}

/// `δ = (ν/(μ+ν)) Σ_n Σ_{n'≤r} |⟨ψ^Δ_n | n', 0⟩|²` on a truncated Fock
/// space with `cutoff + 1` levels per mode.
///
/// Every `|ψ^Δ_n⟩` has exactly `n + Δ` quanta, so states beyond the cutoff
/// cannot overlap `|n' ≤ r⟩ ⊗ |0⟩` and dropping them loses nothing.
pub fn heis_oracle(mu: f64, nu: f64, excitation: u64, r: u64, cutoff: u64) -> Result<HeisOracleReport> {
    check(mu, nu)?;
    if cutoff < r + excitation + CUTOFF_MARGIN {
        return Err(Error::SizeGuard(format!(
            "cutoff {cutoff} below r + Delta + {CUTOFF_MARGIN} = {}",
            r + excitation + CUTOFF_MARGIN
        )));
    }
    let levels = cutoff as usize + 1;
    let states = ladder(mu, nu, excitation, cutoff - excitation, levels);
    let residual = joint_lower(&states[0], mu, nu).norm();
    let mut sum = 0.0;
    let mut defect: f64 = 0.0;
    for v in &states {
        defect = defect.max((v.norm_squared() - 1.0).abs());
        sum += (0..=r as usize).map(|n| v[(n, 0)] * v[(n, 0)]).sum::<f64>();
    }
    Ok(HeisOracleReport {
        delta: nu / (mu + nu) * sum,
        annihilation_residual: residual,
        norm_defect: defect,
    })
}

/// `max |⟨ψ^Δ_n | ψ^{Δ'}_{n'}⟩ - δ_{ΔΔ'} δ_{nn'}|` over `Δ, Δ', n, n' ≤ max_index`.
pub fn heis_orthogonality(mu: f64, nu: f64, max_index: u64, cutoff: u64) -> Result<f64> {
    check(mu, nu)?;
    if cutoff < 2 * max_index + CUTOFF_MARGIN {
        return Err(Error::SizeGuard(format!("cutoff {cutoff} too small for indices <= {max_index}")));
    }
    let levels = cutoff as usize + 1;
    let all: Vec<(u64, u64, Modes)> = (0..=max_index)
        .flat_map(|d| {
            ladder(mu, nu, d, max_index, levels)
                .into_iter()
                .enumerate()
                .map(move |(n, v)| (d, n as u64, v))
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (d1, n1, v1) in &all {
        for (d2, n2, v2) in &all {
            let target = if d1 == d2 && n1 == n2 { 1.0 } else { 0.0 };
            worst = worst.max((v1.dot(v2) - target).abs());
        }
    }
    Ok(worst)
}

/// `‖a_{μ⊗ν}|ψ^Δ⟩‖` for `Δ = 0..=max_excitation`, largest value.
pub fn heis_annihilation_residual(mu: f64, nu: f64, max_excitation: u64) -> Result<f64> {
    check(mu, nu)?;
    let levels = (max_excitation + CUTOFF_MARGIN) as usize;
    Ok((0..=max_excitation)
        .map(|d| joint_lower(&killed_vector(mu, nu, d, levels), mu, nu).norm())
        .fold(0.0, f64::max))
}
