//! Weight-lattice arithmetic for SU(d).
//!
//! Weights are integer `d`-tuples. Two tuples that differ by a multiple of
//! `(1, …, 1)` label the same SU(d) weight; [`Weight::normalized`] picks the
//! representative with last entry zero.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::WeightTooShort(entries.len()));
        }
        Ok(Weight(entries))
    }

    pub fn zero(d: usize) -> Result<Self> {
        Weight::new(vec![0; d])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coordinate reversal `w_i ↔ w_{d+1-i}`.
    pub fn reversed(&self) -> Weight {
        let mut v = self.0.clone();
        v.reverse();
        Weight(v)
    }

    /// Subtracts `w_d·(1, …, 1)`. Idempotent.
    pub fn normalized(&self) -> Weight {
        let last = *self.0.last().expect("weights have at least two entries");
        Weight(self.0.iter().map(|x| x - last).collect())
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        same_dim(self, other)?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        same_dim(self, other)?;
        Ok(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    fn prefix_sums(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().scan(0i64, |acc, x| {
            *acc += x;
            Some(*acc)
        })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn same_dim(a: &Weight, b: &Weight) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::LengthMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// Index `i` of the simple root `α_i` of su(d), `1 ≤ i ≤ d-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootIndex {
    index: usize,
    dim: usize,
}

impl RootIndex {
    pub fn new(index: usize, dim: usize) -> Result<Self> {
        if dim < 2 || index == 0 || index >= dim {
            return Err(Error::RootIndexOutOfRange { index, dim });
        }
        Ok(RootIndex { index, dim })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `α_i = (0,…,0,1,-1,0,…,0)` with the `1` in position `i`.
pub fn simple_root(i: RootIndex) -> Weight {
    let mut v = vec![0; i.dim];
    v[i.index - 1] = 1;
    v[i.index] = -1;
    Weight(v)
}

/// Dominance order: `w ⪯ w2` iff every prefix sum of `w` is at most the
/// corresponding prefix sum of `w2`. Weights with different coordinate sums
/// are incomparable and yield `None`.
pub fn dominance(w: &Weight, w2: &Weight) -> Result<Option<Ordering>> {
    same_dim(w, w2)?;
    if w.total() != w2.total() {
        return Ok(None);
    }
    let (mut le, mut ge) = (true, true);
    for (a, b) in w.prefix_sums().zip(w2.prefix_sums()) {
        le &= a <= b;
        ge &= a >= b;
    }
    Ok(match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    })
}

/// `w ⪯ w2`. Incomparable pairs (including mismatched sums) give `false`;
/// use [`dominance`] to tell the two cases apart.
pub fn weight_leq(w: &Weight, w2: &Weight) -> Result<bool> {
    Ok(matches!(
        dominance(w, w2)?,
        Some(Ordering::Less | Ordering::Equal)
    ))
}

/// Coefficients of a zero-sum vector in the simple-root basis together with
/// the largest absolute coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightDecomposition {
    pub coefficients: Vec<Rational64>,
    pub height: Rational64,
}

impl HeightDecomposition {
    /// Solves `v = Σ c_i α_i`. The coefficients are the prefix sums of `v`;
    /// the caller guarantees `Σ v = 0`.
    fn from_zero_sum(v: &[Rational64]) -> Self {
        let d = v.len();
        let mut acc = Rational64::zero();
        let coefficients: Vec<Rational64> = v[..d - 1]
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect();
        let height = coefficients
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational64::zero);
        HeightDecomposition {
            coefficients,
            height,
        }
    }

    /// `Σ c_i α_i` as a rational vector of length `d`.
    pub fn reconstruct(&self) -> Vec<Rational64> {
        let d = self.coefficients.len() + 1;
        let mut out = vec![Rational64::zero(); d];
        for (i, c) in self.coefficients.iter().enumerate() {
            out[i] += c;
            out[i + 1] -= c;
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }
}

fn to_rational(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

fn checked_diff(a: &Weight, b: &Weight) -> Result<Weight> {
    same_dim(a, b)?;
    if a.total() != b.total() {
        return Err(Error::SumMismatch(a.total(), b.total()));
    }
    a.checked_sub(b)
}

/// `ht↓_λ(w)`: write `w = λ - Σ n_i α_i` and take `max_i |n_i|`.
pub fn height_down(lambda: &Weight, w: &Weight) -> Result<HeightDecomposition> {
    let diff = checked_diff(lambda, w)?;
    Ok(HeightDecomposition::from_zero_sum(&to_rational(diff.entries())))
}

/// Lowest weight of the irrep with highest weight `mu`: the coordinate
/// reversal, which is the longest Weyl-group element acting on `mu`.
pub fn lowest_weight(mu: &Weight) -> Weight {
    mu.reversed()
}

/// `ht↑_μ(w)`: write `w = μ_* + Σ m_i α_i` and take `max_i |m_i|`.
pub fn height_up(mu: &Weight, w: &Weight) -> Result<HeightDecomposition> {
    let diff = checked_diff(w, &lowest_weight(mu))?;
    Ok(HeightDecomposition::from_zero_sum(&to_rational(diff.entries())))
}

/// All weights of `Sym^n(C^d)`: compositions of `n` into `d` nonnegative
/// parts, ordered with `w_1` descending (highest weight first).
pub fn sym_weights(n: u64, d: usize) -> Vec<Weight> {
    assert!(d >= 2, "sym_weights needs d >= 2");
    let mut out = Vec::new();
    let mut current = vec![0i64; d];
    compositions(n as i64, 0, &mut current, &mut out);
    out
}

fn compositions(remaining: i64, pos: usize, current: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Weight(current.clone()));
        return;
    }
    for part in (0..=remaining).rev() {
        current[pos] = part;
        compositions(remaining - part, pos + 1, current, out);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Within distance `r` of the lowest weight.
    Up,
    /// Within distance `r` of the highest weight.
    Down,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// Weights of `Sym^n(C^d)` within height `r` of the highest weight
/// (`w_1 ≥ n - r`) or of the lowest weight (`w_d ≥ n - r`).
pub fn w_r_set(n: u64, d: usize, r: u64, direction: Direction) -> Vec<Weight> {
    let threshold = n as i64 - r as i64;
    sym_weights(n, d)
        .into_iter()
        .filter(|w| match direction {
            Direction::Down => w.0[0] >= threshold,
            Direction::Up => w.0[d - 1] >= threshold,
        })
        .collect()
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `|T^w| = (Σ w_i)! / Π w_i!`.
pub fn type_class_size(w: &Weight) -> Result<BigUint> {
    if let Some(&neg) = w.0.iter().find(|&&x| x < 0) {
        return Err(Error::NegativeEntry(neg));
    }
    let denom = w
        .0
        .iter()
        .fold(BigUint::one(), |acc, &x| acc * factorial(x as u64));
    Ok(factorial(w.total() as u64) / denom)
}

/// Radius `r = ht↑_μ(λ - ν)` at which the partial trace over `R_ν` of every
/// state in `R_λ ⊂ R_μ ⊗ R_ν` is exactly a mixture of `W^r`-states.
///
/// All three highest weights are normalized first. The offset `λ - ν - μ_*`
/// is then taken modulo `(1, …, 1)`, i.e. projected onto the zero-sum plane,
/// before solving for the simple-root coefficients. A non-integral solution
/// means `R_λ` cannot occur in `R_μ ⊗ R_ν`.
pub fn exact_radius(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    same_dim(lambda, mu)?;
    same_dim(lambda, nu)?;
    let (l, m, n) = (lambda.normalized(), mu.normalized(), nu.normalized());
    let diff = l.checked_sub(&n)?.checked_sub(&lowest_weight(&m))?;
    let d = diff.dim() as i64;
    let shift = Rational64::new(diff.total(), d);
    let projected: Vec<Rational64> = diff
        .entries()
        .iter()
        .map(|&x| Rational64::from_integer(x) - shift)
        .collect();
    let decomposition = HeightDecomposition::from_zero_sum(&projected);
    if !decomposition.is_integral() {
        return Err(Error::NonIntegralRadius {
            lambda: format!("{lambda}"),
            mu: format!("{mu}"),
            nu: format!("{nu}"),
        });
    }
    Ok(decomposition.height.to_integer() as u64)
}
