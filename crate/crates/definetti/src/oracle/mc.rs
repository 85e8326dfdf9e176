//! Monte Carlo check of the approximation theorem for `Sym^n(C^2)`.
//!
//! With `ψ = |1⟩^{⊗(n-k)}` and `ψ_g = g^{⊗(n-k)}ψ` for Haar-random
//! `g ∈ SU(2)`, the vectors `Φ_g = (I ⊗ ⟨ψ_g|)Ψ` satisfy
//! `∫ d_B |Φ_g⟩⟨Φ_g| dg = tr_B |Ψ⟩⟨Ψ|`. Sampling `g` and weighting each
//! normalised `χ̃_g = Φ_g/‖Φ_g‖` by `d_B‖Φ_g‖²` estimates the partial
//! trace; projecting `χ̃_g` onto `g^{⊗k} X` gives the approximating mixture.

use definetti_core::symmetric::{delta_symmetric, SymTriple};
use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::dense::{partial_trace_second, trace_distance, CMatrix, CVector};
use crate::oracle::symmetric::sym_basis;
use crate::{Error, Result};

/// Samples drawn from one RNG stream.
const CHUNK: usize = 4096;
/// Largest `2^n` accepted.
const MAX_PRODUCT_DIM: usize = 1 << 16;
pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    pub n_samples: usize,
    pub seed: u64,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub n_samples: usize,
    pub seed: u64,
    /// `½‖tr_B|Ψ⟩⟨Ψ| - ∫|χ_g⟩⟨χ_g| dm(g)‖₁` with the integral sampled.
    pub lhs_distance: f64,
    /// `2(1 - δ_ψ(W^r))`.
    pub bound: f64,
    pub delta: f64,
    /// Distance between the sampled unprojected mixture and the exact
    /// partial trace.
    pub identity_residual: f64,
    pub identity_standard_error: f64,
    pub lhs_standard_error: f64,
    /// `5 ×` the standard error of the projected-mixture estimate.
    pub mc_tolerance: f64,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.lhs_distance <= self.bound + self.mc_tolerance
    }
}

fn gaussian(rng: &mut ChaCha12Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random element of SU(2): a uniform point on S³ mapped to
/// `[[α, -β̄], [β, ᾱ]]`.
pub fn haar_su2(rng: &mut ChaCha12Rng) -> Matrix2<Complex64> {
    let x: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let alpha = Complex64::new(x[0], x[1]) / norm;
    let beta = Complex64::new(x[2], x[3]) / norm;
    Matrix2::new(alpha, -beta.conj(), beta, alpha.conj())
}

fn stream(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-random unit vector of `Sym^n(C^2)` expanded in the product basis,
/// drawn from stream 0 of `seed`.
pub fn random_symmetric_state(n: u64, seed: u64) -> Result<CVector> {
    let basis = sym_basis(n, 2)?;
    let mut rng = stream(seed, 0);
    let coeffs: Vec<Complex64> = (0..basis.len())
        .map(|_| Complex64::new(gaussian(&mut rng), gaussian(&mut rng)))
        .collect();
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut psi = CVector::zeros(basis.product_dim());
    for (c, v) in coeffs.iter().zip(&basis.vectors) {
        psi += v * (c / norm);
    }
    Ok(psi)
}

/// `u^{⊗m}` applied to every factor of a vector in `(C^2)^{⊗m}`.
fn apply_each(u: &Matrix2<Complex64>, v: &CVector, m: u32) -> CVector {
    let mut out = v.clone();
    let dim = 1usize << m;
    for slot in 0..m {
        let stride = 1usize << (m - 1 - slot);
        let mut next = CVector::zeros(dim);
        for idx in 0..dim {
            if idx & stride != 0 {
                continue;
            }
            let (a, b) = (out[idx], out[idx | stride]);
            next[idx] = u[(0, 0)] * a + u[(0, 1)] * b;
            next[idx | stride] = u[(1, 0)] * a + u[(1, 1)] * b;
        }
        out = next;
    }
    out
}

/// `(g|1⟩)^{⊗m}`.
fn product_power(column: [Complex64; 2], m: u32) -> CVector {
    let dim = 1usize << m;
    CVector::from_fn(dim, |idx, _| {
        (0..m).fold(Complex64::new(1.0, 0.0), |acc, slot| {
            acc * column[(idx >> (m - 1 - slot)) & 1]
        })
    })
}

/// Running sums for a self-normalised estimator `Σ X_s / Σ w_s`.
#[derive(Debug, Clone)]
struct Moments {
    sum_x: CMatrix,
    sum_wx: CMatrix,
    sum_xx: f64,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Moments {
            sum_x: CMatrix::zeros(dim, dim),
            sum_wx: CMatrix::zeros(dim, dim),
            sum_xx: 0.0,
        }
    }

    fn push(&mut self, w: f64, x: &CMatrix) {
        self.sum_x += x;
        self.sum_wx += x * Complex64::new(w, 0.0);
        self.sum_xx += x.norm_squared();
    }

    fn merge(&mut self, other: &Moments) {
        self.sum_x += &other.sum_x;
        self.sum_wx += &other.sum_wx;
        self.sum_xx += other.sum_xx;
    }

    /// Ratio estimate and its Frobenius standard error (delta method).
    fn estimate(&self, sum_w: f64, sum_ww: f64, count: usize) -> (CMatrix, f64) {
        let ratio = &self.sum_x / Complex64::new(sum_w, 0.0);
        // Σ‖X_s - R w_s‖²_F
        let cross = self.sum_wx.iter().zip(ratio.iter()).map(|(a, b)| (a * b.conj()).re).sum::<f64>();
        let resid = (self.sum_xx - 2.0 * cross + ratio.norm_squared() * sum_ww).max(0.0);
        let n = count as f64;
        let mean_w = sum_w / n;
        let se = (resid / (n * (n - 1.0))).sqrt() / mean_w;
        (ratio, se)
    }
}

#[derive(Debug, Clone)]
struct Accumulator {
    unprojected: Moments,
    projected: Moments,
    sum_w: f64,
    sum_ww: f64,
}

impl Accumulator {
    fn new(dim: usize) -> Self {
        Accumulator {
            unprojected: Moments::new(dim),
            projected: Moments::new(dim),
            sum_w: 0.0,
            sum_ww: 0.0,
        }
    }

    fn merge(mut self, other: &Accumulator) -> Self {
        self.unprojected.merge(&other.unprojected);
        self.projected.merge(&other.projected);
        self.sum_w += other.sum_w;
        self.sum_ww += other.sum_ww;
        self
    }
}

struct Problem<'a> {
    psi: &'a CVector,
    n_a: u32,
    n_b: u32,
    d_b: f64,
    x_basis: &'a [CVector],
}

impl Problem<'_> {
    fn sample(&self, g: &Matrix2<Complex64>, acc: &mut Accumulator) {
        let dim_a = 1usize << self.n_a;
        let dim_b = 1usize << self.n_b;
        let psi_g = product_power([g[(0, 0)], g[(1, 0)]], self.n_b);
        // Φ_g = (I ⊗ ⟨ψ_g|) Ψ
        let phi = CVector::from_fn(dim_a, |i, _| {
            (0..dim_b).map(|j| psi_g[j].conj() * self.psi[i * dim_b + j]).sum()
        });
        let norm_sq = phi.norm_squared();
        let w = self.d_b * norm_sq;
        acc.sum_w += w;
        acc.sum_ww += w * w;
        if norm_sq == 0.0 {
            return;
        }
        let chi_tilde = &phi / Complex64::new(norm_sq.sqrt(), 0.0);
        acc.unprojected.push(w, &(&chi_tilde * chi_tilde.adjoint() * Complex64::new(w, 0.0)));

        // P_g χ̃ with P_g = g^{⊗k} P_X g^{†⊗k}
        let back = apply_each(&g.adjoint(), &chi_tilde, self.n_a);
        let mut projected = CVector::zeros(dim_a);
        for x in self.x_basis {
            projected += x * x.dotc(&back);
        }
        let projected = apply_each(g, &projected, self.n_a);
        let p_norm = projected.norm();
        if p_norm > 0.0 {
            let chi = projected / Complex64::new(p_norm, 0.0);
            acc.projected.push(w, &(&chi * chi.adjoint() * Complex64::new(w, 0.0)));
        }
    }
}

/// Runs the estimator for `config` on a Haar-random symmetric state drawn
/// from `config.seed`.
pub fn mc_theorem1(config: &McConfig) -> Result<McReport> {
    let psi = random_symmetric_state(config.n, config.seed)?;
    mc_theorem1_with_state(config, &psi)
}

/// Same as [`mc_theorem1`] for a caller-supplied `Ψ ∈ Sym^n(C^2)`.
pub fn mc_theorem1_with_state(config: &McConfig, psi: &CVector) -> Result<McReport> {
    let McConfig {
        n,
        k,
        r,
        n_samples,
        seed,
        parallel,
    } = *config;
    let triple = SymTriple::new(n, k, r, 2)?;
    if (1usize << n.min(63)) > MAX_PRODUCT_DIM || n > 16 {
        return Err(Error::SizeGuard(format!("2^n with n = {n} exceeds 2^16")));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::Invalid(format!("need at least {MIN_SAMPLES} samples, got {n_samples}")));
    }
    if psi.len() != 1usize << n {
        return Err(Error::Invalid(format!("state has length {}, expected 2^{n}", psi.len())));
    }
    let (n_a, n_b) = (k as u32, (n - k) as u32);
    let dim_a = 1usize << n_a;
    let small = sym_basis(k, 2)?;
    let x_basis: Vec<CVector> = small
        .weights
        .iter()
        .zip(&small.vectors)
        .filter(|(w, _)| w.entries()[0] >= (k - r) as i64)
        .map(|(_, v)| v.clone())
        .collect();
    let problem = Problem {
        psi,
        n_a,
        n_b,
        d_b: (n - k + 1) as f64,
        x_basis: &x_basis,
    };

    let chunks = n_samples.div_ceil(CHUNK);
    let run_chunk = |c: usize| {
        let mut rng = stream(seed, c as u64 + 1);
        let mut acc = Accumulator::new(dim_a);
        let count = CHUNK.min(n_samples - c * CHUNK);
        for _ in 0..count {
            let g = haar_su2(&mut rng);
            problem.sample(&g, &mut acc);
        }
        acc
    };
    // chunk results are merged in index order either way
    let parts: Vec<Accumulator> = if parallel {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        (0..chunks).map(run_chunk).collect()
    };
    let total = parts.iter().fold(Accumulator::new(dim_a), |a, b| a.merge(b));

    let exact = partial_trace_second(psi, dim_a, 1usize << n_b);
    let (rho_hat, se_rho) = total.unprojected.estimate(total.sum_w, total.sum_ww, n_samples);
    let (sigma_hat, se_sigma) = total.projected.estimate(total.sum_w, total.sum_ww, n_samples);
    // ½‖A‖₁ ≤ ½√rank ‖A‖_F on Sym^k, rank ≤ k + 1
    let to_trace = ((k + 1) as f64).sqrt() / 2.0;
    let delta = delta_symmetric(&triple).delta_f64();
    Ok(McReport {
        n_samples,
        seed,
        lhs_distance: trace_distance(&exact, &sigma_hat),
        bound: 2.0 * (1.0 - delta),
        delta,
        identity_residual: trace_distance(&exact, &rho_hat),
        identity_standard_error: to_trace * se_rho,
        lhs_standard_error: to_trace * se_sigma,
        mc_tolerance: 5.0 * to_trace * se_sigma,
    })
}

/// Largest deviation of the sampled `E[U_ij conj(U_kl)]` from the Haar value
/// `δ_ik δ_jl / 2`, and the acceptance threshold `3/√N`.
pub fn haar_moment_check(n_samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = stream(seed, 0);
    let mut sums = [[Complex64::new(0.0, 0.0); 4]; 4];
    for _ in 0..n_samples {
        let u = haar_su2(&mut rng);
        for (a, row) in sums.iter_mut().enumerate() {
            for (b, sum) in row.iter_mut().enumerate() {
                *sum += u[(a / 2, a % 2)] * u[(b / 2, b % 2)].conj();
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (a, row) in sums.iter().enumerate() {
        for (b, sum) in row.iter().enumerate() {
            let target = if a == b { 0.5 } else { 0.0 };
            let mean = sum / n_samples as f64;
            worst = worst.max((mean - Complex64::new(target, 0.0)).norm());
        }
    }
    (worst, 3.0 / (n_samples as f64).sqrt())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
