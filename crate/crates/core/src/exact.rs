//! Exact carriers: factorial tables, `±√q` reals and finite sums of surds.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Factorials `0!, …, n!` computed once. Read-only after construction, so a
/// table can be shared between threads freely.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    values: Vec<BigUint>,
}

impl FactorialTable {
    pub fn up_to(n: usize) -> Self {
        let mut values = Vec::with_capacity(n + 1);
        values.push(BigUint::one());
        for i in 1..=n {
            let next = &values[i - 1] * BigUint::from(i);
            values.push(next);
        }
        FactorialTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    /// Panics if `n` exceeds the table.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn get_int(&self, n: usize) -> BigInt {
        BigInt::from(self.values[n].clone())
    }
}

/// A real number `sign · √radicand` with `radicand` a nonnegative rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactReal {
    sign: Sign,
    radicand: BigRational,
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal {
            sign: Sign::NoSign,
            radicand: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        ExactReal {
            sign: Sign::Plus,
            radicand: BigRational::one(),
        }
    }

    /// `sign · √square`. A zero `square` forces the zero sign.
    ///
    /// Panics if `square` is negative.
    pub fn from_signed_square(sign: Sign, square: BigRational) -> Self {
        assert!(!square.is_negative(), "radicand must be nonnegative");
        if square.is_zero() || sign == Sign::NoSign {
            return ExactReal::zero();
        }
        ExactReal {
            sign,
            radicand: square,
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let sign = if q.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        ExactReal::from_signed_square(sign, &q * &q)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::NoSign
    }

    /// The (rational) square of the value.
    pub fn square(&self) -> &BigRational {
        &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        let magnitude = libm::sqrt(self.radicand.to_f64().unwrap_or(f64::NAN));
        match self.sign {
            Sign::Minus => -magnitude,
            Sign::NoSign => 0.0,
            Sign::Plus => magnitude,
        }
    }

    /// Writes the value as `c·√s` with `s` squarefree.
    pub fn to_surd(&self) -> SurdSum {
        if self.is_zero() {
            return SurdSum::zero();
        }
        // √(p/q) = √(p·q) / q
        let p = self.radicand.numer().magnitude();
        let q = self.radicand.denom().magnitude();
        let (outer, squarefree) = split_square(&(p * q));
        let mut coefficient = BigRational::new(BigInt::from(outer), BigInt::from(q.clone()));
        if self.sign == Sign::Minus {
            coefficient = -coefficient;
        }
        SurdSum::term(coefficient, squarefree)
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(mut self) -> ExactReal {
        self.sign = -self.sign;
        self
    }
}

impl Mul for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        ExactReal::from_signed_square(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                Sign::Plus => self.radicand.cmp(&other.radicand),
                Sign::Minus => other.radicand.cmp(&self.radicand),
                Sign::NoSign => Ordering::Equal,
            },
            ord => ord,
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::NoSign => f.write_str("0"),
            Sign::Plus => write!(f, "+√({})", self.radicand),
            Sign::Minus => write!(f, "-√({})", self.radicand),
        }
    }
}

/// Primes used for squarefree splitting. Radicands met in practice are
/// products of factorials and small integers times perfect squares, so trial
/// division by these plus a perfect-square test of the cofactor suffices.
const TRIAL_PRIME_LIMIT: u32 = 2000;

fn trial_primes() -> impl Iterator<Item = u32> {
    (2..TRIAL_PRIME_LIMIT).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
}

/// Splits `n = outer² · squarefree`.
///
/// After trial division the remaining cofactor is either a perfect square or
/// is treated as squarefree.
pub fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut outer = BigUint::one();
    let mut squarefree = BigUint::one();
    for p in trial_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut exponent = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            exponent += 1;
        }
        outer *= bp.pow(exponent / 2);
        if exponent % 2 == 1 {
            squarefree *= &bp;
        }
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        outer *= root;
    } else {
        squarefree *= rest;
    }
    (outer, squarefree)
}

/// A finite sum `Σ c_s √s` over distinct squarefree integers `s` with
/// rational coefficients.
///
/// Square roots of distinct squarefree integers are linearly independent over
/// the rationals, so the sum is zero iff every coefficient is zero. This gives
/// exact equality tests for sums of Clebsch–Gordan products.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurdSum {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn from_rational(q: BigRational) -> Self {
        SurdSum::term(q, BigUint::one())
    }

    /// `coefficient · √squarefree`; `squarefree` must already be squarefree.
    pub fn term(coefficient: BigRational, squarefree: BigUint) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(squarefree, coefficient);
        }
        SurdSum { terms }
    }

    /// `√(p/q)` for a nonnegative rational.
    pub fn sqrt_of(q: &BigRational) -> Self {
        ExactReal::from_signed_square(Sign::Plus, q.clone()).to_surd()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    /// The value if it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    /// The value if it is a single surd `±√q`.
    pub fn as_exact_real(&self) -> Option<ExactReal> {
        match self.terms.len() {
            0 => Some(ExactReal::zero()),
            1 => {
                let (s, c) = self.terms.iter().next()?;
                let sign = if c.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                let square = c * c * BigRational::from_integer(BigInt::from(s.clone()));
                Some(ExactReal::from_signed_square(sign, square))
            }
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, c)| c.to_f64().unwrap_or(f64::NAN) * libm::sqrt(s.to_f64().unwrap_or(f64::NAN)))
            .sum()
    }

    fn accumulate(&mut self, s: BigUint, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn scale(&self, q: &BigRational) -> SurdSum {
        if q.is_zero() {
            return SurdSum::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * q)).collect(),
        }
    }
}

impl Add for &SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.accumulate(s.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (s, c) in &self.terms {
            for (t, e) in &rhs.terms {
                // √s·√t = g·√(st/g²) for squarefree s, t with g = gcd(s, t)
                let g = s.gcd(t);
                let rest = (s / &g) * (t / &g);
                let coefficient = c * e * BigRational::from_integer(BigInt::from(g));
                out.accumulate(rest, coefficient);
            }
        }
        out
    }
}
