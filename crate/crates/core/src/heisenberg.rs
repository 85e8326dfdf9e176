//! Number-space overlaps for `H^Δ_{μ+ν} ⊂ H_μ ⊗ H_ν` (Heisenberg group,
//! `μ, ν > 0`) and the coherent-state bound.
//!
//! Two evaluation paths: `f64` for arbitrary positive reals, and exact
//! rationals when `μ` and `ν` are rational.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::report::{DeltaReport, DeltaValue, Formula};
use crate::{Error, Result};

/// `(μ, ν, Δ, r)` with real couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergTriple {
    mu: f64,
    nu: f64,
    excitation: u64,
    r: u64,
}

impl HeisenbergTriple {
    pub fn new(mu: f64, nu: f64, excitation: u64, r: u64) -> Result<Self> {
        if !(mu > 0.0 && nu > 0.0 && mu.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "mu and nu must be positive and finite, got mu={mu} nu={nu}"
            )));
        }
        Ok(HeisenbergTriple {
            mu,
            nu,
            excitation,
            r,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    /// `Δ`, which copy of `H_{μ+ν}` inside the tensor product.
    pub fn excitation(&self) -> u64 {
        self.excitation
    }
    pub fn r(&self) -> u64 {
        self.r
    }
}

/// `(μ, ν, Δ, r)` with rational couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactHeisenbergTriple {
    mu: BigRational,
    nu: BigRational,
    excitation: u64,
    r: u64,
}

impl ExactHeisenbergTriple {
    pub fn new(mu: BigRational, nu: BigRational, excitation: u64, r: u64) -> Result<Self> {
        if !mu.is_positive() || !nu.is_positive() {
            return Err(Error::InvalidParameters(format!(
                "mu and nu must be positive, got mu={mu} nu={nu}"
            )));
        }
        Ok(ExactHeisenbergTriple {
            mu,
            nu,
            excitation,
            r,
        })
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }
    pub fn nu(&self) -> &BigRational {
        &self.nu
    }
    pub fn excitation(&self) -> u64 {
        self.excitation
    }
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn to_real(&self) -> HeisenbergTriple {
        HeisenbergTriple {
            mu: self.mu.to_f64().unwrap_or(f64::NAN),
            nu: self.nu.to_f64().unwrap_or(f64::NAN),
            excitation: self.excitation,
            r: self.r,
        }
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// `α_ℓ = C(Δ,ℓ)·μ^ℓ·ν^{Δ-ℓ}/(μ+ν)^Δ`, the squared amplitudes of the
/// vector killed by `a_{μ⊗ν}`.
pub fn alpha_coeff(excitation: u64, ell: u64, mu: f64, nu: f64) -> Result<f64> {
    if ell > excitation {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= ell <= Delta, got ell={ell} Delta={excitation}"
        )));
    }
    let s = mu + nu;
    Ok(binomial_f64(excitation, ell)
        * libm::pow(mu / s, ell as f64)
        * libm::pow(nu / s, (excitation - ell) as f64))
}

/// `α_{Δ,n} = (ν/(μ+ν))^Δ·C(n+Δ,Δ)·(μ/(μ+ν))^n`.
pub fn alpha_weight(excitation: u64, n: u64, mu: f64, nu: f64) -> f64 {
    let s = mu + nu;
    libm::pow(nu / s, excitation as f64) * binomial_f64(n + excitation, excitation) * libm::pow(mu / s, n as f64)
}

fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}

fn binomial_exact(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(num_integer::binomial(
        num_bigint::BigUint::from(n),
        num_bigint::BigUint::from(k),
    )))
}

/// Exact `α_{Δ,n}`.
pub fn alpha_weight_exact(excitation: u64, n: u64, mu: &BigRational, nu: &BigRational) -> BigRational {
    let s = mu + nu;
    rational_pow(&(nu / &s), excitation) * binomial_exact(n + excitation, excitation) * rational_pow(&(mu / &s), n)
}

fn psi_label(excitation: u64, r: u64) -> String {
    format!("|0> in H_nu, N^{r} in H_mu, Delta={excitation}")
}

/// `δ_{|0⟩}(N^r) = (ν/(μ+ν))^{Δ+1}·Σ_{n=0}^{r-Δ} C(n+Δ,Δ)·(μ/(μ+ν))^n`,
/// zero when `r < Δ`.
pub fn delta_number_space(t: &HeisenbergTriple) -> DeltaReport {
    let HeisenbergTriple {
        mu,
        nu,
        excitation,
        r,
    } = *t;
    let p = nu / (mu + nu);
    let q = mu / (mu + nu);
    let mut acc = Neumaier::default();
    if r >= excitation {
        let mut term = 1.0;
        for n in 0..=(r - excitation) {
            if n > 0 {
                term *= q * (n + excitation) as f64 / n as f64;
            }
            acc.add(term);
        }
    }
    let delta = (libm::pow(p, (excitation + 1) as f64) * acc.total()).clamp(0.0, 1.0);
    let mut report =
        DeltaReport::new(DeltaValue::Approx(delta), Formula::NumberSpace, psi_label(excitation, r));
    let deficit = deficit_number_space(t);
    report.bound_sqrt = 2.0 * libm::sqrt(deficit);
    report.bound_linear = 2.0 * deficit;
    report
}

/// `1 - δ` without cancellation. `δ` is a negative-binomial distribution
/// function, so its complement is a binomial one:
/// `1 - δ = Σ_{ℓ=0}^{Δ} C(r+1,ℓ)·p^ℓ·q^{r+1-ℓ}` with `p = ν/(μ+ν)`,
/// `q = μ/(μ+ν)`. Every term is positive.
pub fn deficit_number_space(t: &HeisenbergTriple) -> f64 {
    let HeisenbergTriple {
        mu,
        nu,
        excitation,
        r,
    } = *t;
    let trials = r + 1;
    if excitation >= trials {
        return 1.0;
    }
    let ln_p = libm::log(nu / (mu + nu));
    let ln_q = libm::log(mu / (mu + nu));
    let mut ln_term = trials as f64 * ln_q;
    let mut acc = Neumaier::default();
    acc.add(libm::exp(ln_term));
    for ell in 1..=excitation {
        ln_term += libm::log((trials - ell + 1) as f64 / ell as f64) + ln_p - ln_q;
        acc.add(libm::exp(ln_term));
    }
    acc.total().clamp(0.0, 1.0)
}

/// Exact `1 - δ` from the binomial form; see [`deficit_number_space`].
pub fn deficit_number_space_exact(t: &ExactHeisenbergTriple) -> BigRational {
    let s = &t.mu + &t.nu;
    let p = &t.nu / &s;
    let q = &t.mu / &s;
    let trials = t.r + 1;
    (0..=t.excitation.min(trials)).fold(BigRational::zero(), |acc, ell| {
        acc + binomial_exact(trials, ell) * rational_pow(&p, ell) * rational_pow(&q, trials - ell)
    })
}

/// Exact-rational version of [`delta_number_space`].
pub fn delta_number_space_exact(t: &ExactHeisenbergTriple) -> DeltaReport {
    let s = &t.mu + &t.nu;
    let p = &t.nu / &s;
    let q = &t.mu / &s;
    let mut sum = BigRational::zero();
    if t.r >= t.excitation {
        let mut term = BigRational::one();
        for n in 0..=(t.r - t.excitation) {
            if n > 0 {
                term = term * &q * BigRational::new(BigInt::from(n + t.excitation), BigInt::from(n));
            }
            sum += &term;
        }
    }
    let delta = rational_pow(&p, t.excitation + 1) * sum;
    DeltaReport::new(
        DeltaValue::Exact(delta),
        Formula::NumberSpace,
        psi_label(t.excitation, t.r),
    )
}

fn piecewise_epsilon(excitation: u64, r: u64, deficit: f64) -> f64 {
    let deficit = deficit.max(0.0);
    if excitation == 0 && r == 0 {
        2.0 * deficit
    } else {
        2.0 * libm::sqrt(deficit)
    }
}

/// `2(1-δ)` for `Δ = r = 0`, otherwise `2√(1-δ)`.
pub fn epsilon_heisenberg(t: &HeisenbergTriple) -> f64 {
    piecewise_epsilon(t.excitation, t.r, deficit_number_space(t))
}

pub fn epsilon_heisenberg_exact(t: &ExactHeisenbergTriple) -> f64 {
    let report = delta_number_space_exact(t);
    let deficit = report
        .deficit()
        .exact()
        .and_then(|d| d.to_f64())
        .unwrap_or(f64::NAN);
    piecewise_epsilon(t.excitation, t.r, deficit)
}

/// `ε` for `Δ = 0` straight from its closed form: `2μ/(μ+ν)` at `r = 0`,
/// `2(μ/(μ+ν))^{(r+1)/2}` otherwise.
pub fn epsilon_heisenberg_ground(mu: f64, nu: f64, r: u64) -> f64 {
    let q = mu / (mu + nu);
    if r == 0 {
        2.0 * q
    } else {
        2.0 * libm::pow(q, (r as f64 + 1.0) / 2.0)
    }
}

fn check_coherent(n: u64, k: u64) -> Result<()> {
    if !(0 < k && k < n) {
        return Err(Error::InvalidParameters(format!("need 0 < k < n, got n={n} k={k}")));
    }
    Ok(())
}

/// Coherent-state bound: `2k/n` for `r = 0`, else `2(k/n)^{(r+1)/2}`.
pub fn coherent_bound(n: u64, k: u64, r: u64) -> Result<f64> {
    check_coherent(n, k)?;
    Ok(epsilon_heisenberg_ground(k as f64, (n - k) as f64, r))
}

/// The coherent-state bound when it is rational (`r = 0` or `r` odd).
pub fn coherent_bound_exact(n: u64, k: u64, r: u64) -> Result<Option<BigRational>> {
    check_coherent(n, k)?;
    let q = BigRational::new(BigInt::from(k), BigInt::from(n));
    let two = BigRational::from_integer(2.into());
    Ok(if r == 0 {
        Some(two * q)
    } else if r % 2 == 1 {
        Some(two * rational_pow(&q, r.div_ceil(2)))
    } else {
        None
    })
}
