//! SU(2) Clebsch–Gordan coefficients in exact arithmetic, and the overlap
//! `δ_{|j2 m2⟩}(W^r)` for the coupling `R_j ⊂ R_{j1} ⊗ R_{j2}`.
//!
//! Coefficients follow the Condon–Shortley phase convention and are computed
//! from Racah's single-sum formula. Angular momenta are passed as [`TwoJ`]
//! (twice the value), so half-integers stay integral.

use alloc::borrow::Cow;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{ExactReal, FactorialTable};
use crate::report::{DeltaReport, DeltaValue, Formula};
use crate::weights::Direction;
use crate::{Error, Result};

/// An angular momentum or projection stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoJ(i64);

impl TwoJ {
    pub const fn from_doubled(doubled: i64) -> Self {
        TwoJ(doubled)
    }

    pub const fn integer(value: i64) -> Self {
        TwoJ(2 * value)
    }

    /// A spin `j`; rejects negative values.
    pub fn spin(doubled: i64) -> Result<Self> {
        if doubled < 0 {
            return Err(Error::NegativeSpin(doubled));
        }
        Ok(TwoJ(doubled))
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Multiplicity `2j + 1`.
    pub const fn multiplicity(self) -> i64 {
        self.0 + 1
    }
}

impl fmt::Display for TwoJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for TwoJ {
    type Err = Error;

    /// Accepts `3`, `-3/2`, `1.5` or `-0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("not an integer or half-integer: {s:?}"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(TwoJ(2 * num)),
                "2" => Ok(TwoJ(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let int: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let doubled = 2 * int.abs() + half;
            return Ok(TwoJ(if negative { -doubled } else { doubled }));
        }
        s.parse::<i64>().map(TwoJ::integer).map_err(|_| bad())
    }
}

fn parity(label: &str, a: TwoJ, b: TwoJ) -> Result<()> {
    if (a.0 - b.0) % 2 != 0 {
        return Err(Error::Parity(format!("{label}: {a} and {b} differ by a half-integer")));
    }
    Ok(())
}

fn triangle(j1: TwoJ, j2: TwoJ, j: TwoJ) -> bool {
    (j1.0 - j2.0).abs() <= j.0 && j.0 <= j1.0 + j2.0
}

/// Checks parities and signs. Returns `Ok(false)` when a selection rule makes
/// the coefficient vanish.
fn admissible(j1: TwoJ, m1: TwoJ, j2: TwoJ, m2: TwoJ, j: TwoJ, m: TwoJ) -> Result<bool> {
    for s in [j1, j2, j] {
        if s.0 < 0 {
            return Err(Error::NegativeSpin(s.0));
        }
    }
    parity("j1/m1", j1, m1)?;
    parity("j2/m2", j2, m2)?;
    parity("j/m", j, m)?;
    if (j1.0 + j2.0 + j.0) % 2 != 0 {
        return Err(Error::Parity(format!("j1 + j2 + j = {j1} + {j2} + {j} is not an integer")));
    }
    Ok(m.0 == m1.0 + m2.0
        && m1.0.abs() <= j1.0
        && m2.0.abs() <= j2.0
        && m.0.abs() <= j.0
        && triangle(j1, j2, j))
}

/// Racah-formula evaluator with a preallocated factorial table.
#[derive(Debug, Clone)]
pub struct ClebschGordan {
    table: FactorialTable,
}

impl ClebschGordan {
    /// Sized for all couplings with `2(j1 + j2) ≤ max_doubled_sum`.
    pub fn new(max_doubled_sum: i64) -> Self {
        ClebschGordan {
            table: FactorialTable::up_to(max_doubled_sum.max(0) as usize + 1),
        }
    }

    fn table_for(&self, j1: TwoJ, j2: TwoJ) -> Cow<'_, FactorialTable> {
        let need = (j1.0 + j2.0) as usize + 1;
        if need <= self.table.max() {
            Cow::Borrowed(&self.table)
        } else {
            Cow::Owned(FactorialTable::up_to(need))
        }
    }

    /// Returns `(P, S)` with coefficient `sign(S)·√P·|S|`, or `None` when a
    /// selection rule forces zero.
    fn racah(
        &self,
        j1: TwoJ,
        m1: TwoJ,
        j2: TwoJ,
        m2: TwoJ,
        j: TwoJ,
        m: TwoJ,
    ) -> Result<Option<(BigRational, BigRational)>> {
        if !admissible(j1, m1, j2, m2, j, m)? {
            return Ok(None);
        }
        let table = self.table_for(j1, j2);
        let f = |doubled: i64| -> BigInt {
            debug_assert!(doubled >= 0 && doubled % 2 == 0);
            table.get_int((doubled / 2) as usize)
        };
        let (j1, m1, j2, m2, j, m) = (j1.0, m1.0, j2.0, m2.0, j.0, m.0);

        let numer = BigInt::from(j + 1)
            * f(j + j1 - j2)
            * f(j - j1 + j2)
            * f(j1 + j2 - j)
            * f(j + m)
            * f(j - m)
            * f(j1 - m1)
            * f(j1 + m1)
            * f(j2 - m2)
            * f(j2 + m2);
        let denom = f(j1 + j2 + j + 2);
        let prefactor = BigRational::new(numer, denom);

        // Summation bounds, all in doubled units.
        let k_min = 0.max(j2 - j - m1).max(j1 - j + m2);
        let k_max = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
        let mut sum = BigRational::zero();
        let mut k = k_min;
        while k <= k_max {
            let d = f(k)
                * f(j1 + j2 - j - k)
                * f(j1 - m1 - k)
                * f(j2 + m2 - k)
                * f(j - j2 + m1 + k)
                * f(j - j1 - m2 + k);
            let term = BigRational::new(BigInt::one(), d);
            if (k / 2) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            k += 2;
        }
        Ok(Some((prefactor, sum)))
    }

    /// `⟨j1 m1 j2 m2 | j m⟩`. Selection-rule violations give an exact zero;
    /// malformed parities are errors.
    pub fn cg(&self, j1: TwoJ, m1: TwoJ, j2: TwoJ, m2: TwoJ, j: TwoJ, m: TwoJ) -> Result<ExactReal> {
        Ok(match self.racah(j1, m1, j2, m2, j, m)? {
            None => ExactReal::zero(),
            Some((p, s)) => {
                let sign = if s.is_negative() {
                    Sign::Minus
                } else if s.is_zero() {
                    Sign::NoSign
                } else {
                    Sign::Plus
                };
                ExactReal::from_signed_square(sign, p * &s * &s)
            }
        })
    }

    /// `|⟨j1 m1 j2 m2 | j m⟩|²` as an exact rational.
    pub fn cg_squared(
        &self,
        j1: TwoJ,
        m1: TwoJ,
        j2: TwoJ,
        m2: TwoJ,
        j: TwoJ,
        m: TwoJ,
    ) -> Result<BigRational> {
        Ok(match self.racah(j1, m1, j2, m2, j, m)? {
            None => BigRational::zero(),
            Some((p, s)) => p * &s * &s,
        })
    }

    /// The squared coefficients entering `δ`, ordered by increasing `r`:
    /// entry `r` is the term with `m1 = j1 - r` (down) or `m1 = -j1 + r` (up).
    fn delta_terms(
        &self,
        j1: TwoJ,
        j2: TwoJ,
        j: TwoJ,
        m2: TwoJ,
        r_max: u64,
        direction: Direction,
    ) -> Result<Vec<BigRational>> {
        check_delta_inputs(j1, j2, j, m2)?;
        let steps = (r_max as i64).min(j1.0);
        (0..=steps)
            .map(|step| {
                let m1 = match direction {
                    Direction::Down => j1.0 - 2 * step,
                    Direction::Up => -j1.0 + 2 * step,
                };
                let m1 = TwoJ(m1);
                self.cg_squared(j1, m1, j2, m2, j, TwoJ(m1.0 + m2.0))
            })
            .collect()
    }

    /// `δ_{|j2 m2⟩}(W^r) = (2j2+1)/(2j+1) Σ_{m1} |⟨j (m1+m2) | j1 m1 j2 m2⟩|²`
    /// with `m1 ∈ [j1-r, j1]` (down) or `m1 ∈ [-j1, -j1+r]` (up).
    pub fn delta(
        &self,
        j1: TwoJ,
        j2: TwoJ,
        j: TwoJ,
        m2: TwoJ,
        r: u64,
        direction: Direction,
    ) -> Result<DeltaReport> {
        let terms = self.delta_terms(j1, j2, j, m2, r, direction)?;
        let sum = terms.iter().fold(BigRational::zero(), |acc, t| acc + t);
        let delta = sum * prefactor(j2, j);
        Ok(DeltaReport::new(
            DeltaValue::Exact(delta),
            Formula::ClebschGordanSum,
            psi_label(j2, m2, direction),
        ))
    }

    /// `1 - δ` for every `r` in `0..=r_max`, sharing the partial sums.
    pub fn deficit_curve(
        &self,
        j1: TwoJ,
        j2: TwoJ,
        j: TwoJ,
        m2: TwoJ,
        r_max: u64,
        direction: Direction,
    ) -> Result<Vec<BigRational>> {
        let terms = self.delta_terms(j1, j2, j, m2, r_max, direction)?;
        let pre = prefactor(j2, j);
        let mut acc = BigRational::zero();
        let mut out = Vec::with_capacity(r_max as usize + 1);
        for t in &terms {
            acc += t;
            out.push(BigRational::one() - &acc * &pre);
        }
        // past r = 2j1 every m1 is included and δ stays put
        while out.len() <= r_max as usize {
            let last = out.last().cloned().expect("at least the r = 0 term");
            out.push(last);
        }
        Ok(out)
    }
}

fn prefactor(j2: TwoJ, j: TwoJ) -> BigRational {
    BigRational::new(BigInt::from(j2.multiplicity()), BigInt::from(j.multiplicity()))
}

fn psi_label(j2: TwoJ, m2: TwoJ, direction: Direction) -> String {
    format!("|j2 m2> = |{j2} {m2}>, W^r {direction}")
}

fn check_delta_inputs(j1: TwoJ, j2: TwoJ, j: TwoJ, m2: TwoJ) -> Result<()> {
    for s in [j1, j2, j] {
        if s.0 < 0 {
            return Err(Error::NegativeSpin(s.0));
        }
    }
    if (j1.0 + j2.0 + j.0) % 2 != 0 {
        return Err(Error::Parity(format!("j1 + j2 + j = {j1} + {j2} + {j} is not an integer")));
    }
    if !triangle(j1, j2, j) {
        return Err(Error::Triangle {
            j1: j1.0,
            j2: j2.0,
            j: j.0,
        });
    }
    parity("j2/m2", j2, m2)?;
    if m2.0.abs() > j2.0 {
        return Err(Error::ProjectionOutOfRange { j: j2.0, m: m2.0 });
    }
    Ok(())
}

/// One-off `⟨j1 m1 j2 m2 | j m⟩`.
pub fn cg(j1: TwoJ, m1: TwoJ, j2: TwoJ, m2: TwoJ, j: TwoJ, m: TwoJ) -> Result<ExactReal> {
    ClebschGordan::new(j1.0.max(0) + j2.0.max(0)).cg(j1, m1, j2, m2, j, m)
}

/// One-off `δ_{|j2 m2⟩}(W^r)`; see [`ClebschGordan::delta`].
pub fn delta_su2(
    j1: TwoJ,
    j2: TwoJ,
    j: TwoJ,
    m2: TwoJ,
    r: u64,
    direction: Direction,
) -> Result<DeltaReport> {
    ClebschGordan::new(j1.0.max(0) + j2.0.max(0)).delta(j1, j2, j, m2, r, direction)
}
