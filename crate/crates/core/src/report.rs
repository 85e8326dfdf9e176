use alloc::string::String;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Which closed form produced a [`DeltaReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `(2j2+1)/(2j+1) Σ |⟨j (m1+m2) | j1 m1 j2 m2⟩|²`
    ClebschGordanSum,
    /// Weight-count formula for `Sym^n ⊂ Sym^k ⊗ Sym^{n-k}`.
    SymmetricWeights,
    /// Negative-binomial sum for `H^Δ_{μ+ν} ⊂ H_μ ⊗ H_ν`.
    NumberSpace,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::ClebschGordanSum => "clebsch-gordan-sum",
            Formula::SymmetricWeights => "symmetric-weights",
            Formula::NumberSpace => "number-space",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeltaValue {
    Exact(BigRational),
    Approx(f64),
}

impl DeltaValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            DeltaValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            DeltaValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            DeltaValue::Exact(q) => Some(q),
            DeltaValue::Approx(_) => None,
        }
    }
}

/// `δ_ψ(X)` for one fixed `ψ`, with the two error bounds it implies:
/// `2√(1-δ)` in general and `2(1-δ)` when the target irrep has multiplicity
/// one.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub delta: DeltaValue,
    pub bound_sqrt: f64,
    pub bound_linear: f64,
    pub formula: Formula,
    pub psi: String,
}

impl DeltaReport {
    pub(crate) fn new(delta: DeltaValue, formula: Formula, psi: String) -> Self {
        let deficit = match &delta {
            DeltaValue::Exact(q) => (BigRational::one() - q).to_f64().unwrap_or(f64::NAN),
            DeltaValue::Approx(x) => 1.0 - x,
        }
        .max(0.0);
        DeltaReport {
            delta,
            bound_sqrt: 2.0 * libm::sqrt(deficit),
            bound_linear: 2.0 * deficit,
            formula,
            psi,
        }
    }

    /// `1 - δ`, exactly when available.
    pub fn deficit(&self) -> DeltaValue {
        match &self.delta {
            DeltaValue::Exact(q) => DeltaValue::Exact(BigRational::one() - q),
            DeltaValue::Approx(x) => DeltaValue::Approx(1.0 - x),
        }
    }

    pub fn delta_f64(&self) -> f64 {
        self.delta.to_f64()
    }

    pub fn is_within_unit_interval(&self) -> bool {
        match &self.delta {
            DeltaValue::Exact(q) => !(q < &BigRational::zero()) && q <= &BigRational::one(),
            DeltaValue::Approx(x) => (0.0..=1.0).contains(x),
        }
    }
}
