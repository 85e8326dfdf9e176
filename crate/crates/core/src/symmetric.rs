//! Closed forms for `Sym^n(C^d) ⊂ Sym^k(C^d) ⊗ Sym^{n-k}(C^d)` with the
//! fixed vector `ψ = |1⟩^{⊗(n-k)}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::report::{DeltaReport, DeltaValue, Formula};
use crate::weights::{Direction, Weight};
use crate::{Error, Result};

/// `(n, k, r, d)`: `n` systems in total, `k` kept, radius `r`, local
/// dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymTriple {
    n: u64,
    k: u64,
    r: u64,
    d: u64,
}

impl SymTriple {
    pub fn new(n: u64, k: u64, r: u64, d: u64) -> Result<Self> {
        if k > n || r > k || d < 2 {
            return Err(Error::InvalidParameters(format!(
                "need 0 <= r <= k <= n and d >= 2, got n={n} k={k} r={r} d={d}"
            )));
        }
        Ok(SymTriple { n, k, r, d })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn d(&self) -> u64 {
        self.d
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binomial(big(n), big(k))
}

fn ratio(numer: BigUint, denom: BigUint) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn falling(from: u64, count: u64) -> BigUint {
    // from · (from-1) ⋯ (from-count+1)
    (0..count).fold(BigUint::one(), |acc, i| acc * big(from - i))
}

/// `dim Sym^n(C^d) = C(n+d-1, n)`.
pub fn dim_sym(n: u64, d: u64) -> BigUint {
    assert!(d >= 1, "dim_sym needs d >= 1");
    choose(n + d - 1, n)
}

/// `ε(n,k,r,d) = 2·dim Sym^{n-k}/dim Sym^n · Σ_{i=r+1}^{k} C(k,i)/C(n,i)·C(i+d-2,i)`.
///
/// Equals `2(1 - δ_ψ(W^r))`; zero for `r = k` (empty sum).
pub fn epsilon(t: &SymTriple) -> BigRational {
    let SymTriple { n, k, r, d } = *t;
    let mut sum = BigRational::zero();
    for i in (r + 1)..=k {
        sum += ratio(choose(k, i) * choose(i + d - 2, i), choose(n, i));
    }
    BigRational::from_integer(2.into()) * ratio(dim_sym(n - k, d), dim_sym(n, d)) * sum
}

/// `δ_ψ(W)` from the weight-count profile `f`, where `f[i]` is the number of
/// weights in `W ⊆ W(Sym^k)` with `w_1 = i` (`f.len() ≤ k + 1`).
pub fn delta_psi_weights(n: u64, k: u64, d: u64, profile: &[u64]) -> Result<BigRational> {
    if k > n || d < 2 {
        return Err(Error::InvalidParameters(format!(
            "need k <= n and d >= 2, got n={n} k={k} d={d}"
        )));
    }
    if profile.len() as u64 > k + 1 {
        return Err(Error::InvalidParameters(format!(
            "profile has {} entries, expected at most k + 1 = {}",
            profile.len(),
            k + 1
        )));
    }
    let mut sum = BigUint::zero();
    for (i, &count) in profile.iter().enumerate() {
        let i = i as u64;
        // weights with w_1 = i: compositions of k - i into d - 1 parts
        let available = dim_sym(k - i, d - 1);
        if big(count) > available {
            return Err(Error::ProfileTooLarge {
                index: i as usize,
                requested: count,
                available: available.to_u64().unwrap_or(u64::MAX),
            });
        }
        // (n-k+i)!/i!
        sum += falling(n - k + i, n - k) * big(count);
    }
    // dim(n-k)/dim(n) · k!/n!
    let scale = ratio(dim_sym(n - k, d), dim_sym(n, d)) * ratio(BigUint::one(), falling(n, n - k));
    Ok(scale * BigRational::from_integer(BigInt::from(sum)))
}

/// `f_i(W)`: the number of weights of `W` with first entry `i`, for
/// `i = 0..=k`.
pub fn weight_profile(weights: &[Weight], k: u64) -> Result<Vec<u64>> {
    let mut f = vec![0u64; k as usize + 1];
    for w in weights {
        check_sym_weight(w, k)?;
        f[w.entries()[0] as usize] += 1;
    }
    Ok(f)
}

/// `δ_ψ(W^r)` as a report; `ψ = |1⟩^{⊗(n-k)}`.
pub fn delta_symmetric(t: &SymTriple) -> DeltaReport {
    let SymTriple { n, k, r, d } = *t;
    let weights = crate::weights::w_r_set(k, d as usize, r, Direction::Down);
    let profile = weight_profile(&weights, k).expect("w_r_set yields weights of Sym^k");
    let delta = delta_psi_weights(n, k, d, &profile).expect("profile from w_r_set is admissible");
    DeltaReport::new(
        DeltaValue::Exact(delta),
        Formula::SymmetricWeights,
        format!("|1>^(n-k) with n={n} k={k}, W^{r} down, d={d}"),
    )
}

fn check_sym_weight(w: &Weight, k: u64) -> Result<()> {
    if w.entries().iter().any(|&x| x < 0) || w.total() != k as i64 {
        return Err(Error::NotSymmetricWeight {
            weight: format!("{w}"),
            n: k,
        });
    }
    Ok(())
}

/// `tr(P_Sym^n (|w⟩⟨w| ⊗ |1⟩⟨1|^{⊗(n-k)})) = (k!/n!)·(w_1+n-k)!/w_1!`.
pub fn term_overlap(w: &Weight, n: u64, k: u64) -> Result<BigRational> {
    check_sym_weight(w, k)?;
    if k > n {
        return Err(Error::InvalidParameters(format!("need k <= n, got n={n} k={k}")));
    }
    let w1 = w.entries()[0] as u64;
    Ok(ratio(falling(w1 + n - k, n - k), falling(n, n - k)))
}

/// `Σ_{i=r+1}^{k} C(k,i)/C(n,i) = k!(n-r)! / ((n-k+1)·n!·(k-r-1)!)`, zero
/// for `r ≥ k`.
pub fn closed_form_sum(n: u64, k: u64, r: u64) -> Result<BigRational> {
    if k > n {
        return Err(Error::InvalidParameters(format!("need k <= n, got n={n} k={k}")));
    }
    if r >= k {
        return Ok(BigRational::zero());
    }
    // k!/(k-r-1)! = falling(k, r+1);  (n-r)!/n! = 1/falling(n, r)
    Ok(ratio(falling(k, r + 1), falling(n, r) * big(n - k + 1)))
}

/// The two exponential upper bounds on `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialBound {
    /// `2 e^{3d}/(d-2)! · (k/(n-r))^{r+1} · (k(n-k)/(n-r))^{d-2}`, bounds `ε`.
    pub headline: f64,
    /// `(1/(d-2)!)·(k/(n-r))^{d-1+r}·(n-k)^{d-2}·exp((d-1)r/k + (d-1)²/k + (d-1)²/(n-k))`,
    /// bounds `ε/2`.
    pub intermediate: f64,
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| libm::log(i as f64)).sum()
}

/// Valid when `d ≤ min(k, n-k)`.
pub fn bound_exponential(t: &SymTriple) -> Result<ExponentialBound> {
    let SymTriple { n, k, r, d } = *t;
    if d > k.min(n - k) {
        return Err(Error::InvalidParameters(format!(
            "exponential bound needs d <= min(k, n-k), got n={n} k={k} d={d}"
        )));
    }
    let (nf, kf, rf, df) = (n as f64, k as f64, r as f64, d as f64);
    let ln_ratio = libm::log(kf / (nf - rf));
    let ln_fact = ln_factorial(d - 2);

    let ln_headline = libm::log(2.0) + 3.0 * df - ln_fact
        + (rf + 1.0) * ln_ratio
        + (df - 2.0) * libm::log(kf * (nf - kf) / (nf - rf));
    let exponent = (df - 1.0) * rf / kf + (df - 1.0) * (df - 1.0) / kf + (df - 1.0) * (df - 1.0) / (nf - kf);
    let ln_intermediate =
        -ln_fact + (df - 1.0 + rf) * ln_ratio + (df - 2.0) * libm::log(nf - kf) + exponent;
    Ok(ExponentialBound {
        headline: libm::exp(ln_headline),
        intermediate: libm::exp(ln_intermediate),
    })
}

/// For `d = 2` the error is `2·k!/(k-r-1)!·(n-r)!/(n+1)!`; zero for `r ≥ k`.
pub fn exact_error_d2(n: u64, k: u64, r: u64) -> Result<BigRational> {
    if k > n {
        return Err(Error::InvalidParameters(format!("need k <= n, got n={n} k={k}")));
    }
    if r >= k {
        return Ok(BigRational::zero());
    }
    Ok(ratio(big(2) * falling(k, r + 1), falling(n + 1, r + 1)))
}
