//! Clebsch–Gordan tables synthesised from the top state down with the
//! lowering operator, independently of the Racah sum.
//!
//! For each total `j` the top state `|j j⟩` spans the part of the `m = j`
//! weight space orthogonal to every `|j' j⟩` with `j' > j`, which is the
//! kernel of `J₊` there. Solving `J₊|j j⟩ = 0` coefficient by coefficient
//! and making `⟨j1 j1 j2 (j-j1) | j j⟩` positive gives the Condon–Shortley
//! phase. Explicit Gram–Schmidt against the higher states gives the same
//! vector but cancels badly in floating point for small `j`.
//!
//! States with `m ≥ 0` follow from `J₋ = J₋⁽¹⁾ + J₋⁽²⁾`; those with `m < 0`
//! are raised with `J₊` from `|j -j⟩`, the mirror image of `|j j⟩` times
//! `(-1)^{j1+j2-j}`. Lowering all the way down instead loses precision near
//! `m = -j`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use definetti_core::{BigInt, BigRational, SurdSum, TwoJ};
use num_traits::Signed;

use crate::{Error, Result};

/// Largest `j1`, `j2` (in units of one, i.e. `2j ≤ 24`) the oracle accepts.
pub const MAX_SPIN_DOUBLED: i64 = 24;

/// Arithmetic the synthesis needs: a ring containing `√(p/q)`.
pub trait CgScalar: Clone + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `√(num/den)` for nonnegative `num`, positive `den`.
    fn sqrt_ratio(num: i64, den: i64) -> Self;
    /// `1/√x` for a value that is known to be a positive rational.
    fn inv_sqrt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
}

impl CgScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sqrt_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64).sqrt()
    }
    fn inv_sqrt(&self) -> Option<Self> {
        (*self > 0.0).then(|| 1.0 / self.sqrt())
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl CgScalar for SurdSum {
    fn zero() -> Self {
        SurdSum::zero()
    }
    fn one() -> Self {
        SurdSum::from_rational(BigRational::from_integer(BigInt::from(1)))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sqrt_ratio(num: i64, den: i64) -> Self {
        SurdSum::sqrt_of(&BigRational::new(num.into(), den.into()))
    }
    fn inv_sqrt(&self) -> Option<Self> {
        let q = self.as_rational()?;
        q.is_positive().then(|| SurdSum::sqrt_of(&q.recip()))
    }
    fn to_f64(&self) -> f64 {
        SurdSum::to_f64(self)
    }
}

/// Coefficients of one `|j m⟩` in the product basis, indexed by `m1`
/// (from `-j1` upwards, step one); `m2 = m - m1`.
#[derive(Debug, Clone)]
struct State<S> {
    m: i64,
    amps: Vec<S>,
}

/// All `⟨j1 m1 j2 m2 | j m⟩` for fixed `j1`, `j2`.
#[derive(Debug, Clone)]
pub struct CgTable<S> {
    j1: TwoJ,
    j2: TwoJ,
    states: BTreeMap<(i64, i64), Vec<S>>,
}

impl<S: CgScalar> CgTable<S> {
    pub fn j1(&self) -> TwoJ {
        self.j1
    }
    pub fn j2(&self) -> TwoJ {
        self.j2
    }

    /// Allowed totals `j`, as doubled values.
    pub fn totals(&self) -> Vec<TwoJ> {
        let (a, b) = (self.j1.doubled(), self.j2.doubled());
        ((a - b).abs()..=a + b).step_by(2).map(TwoJ::from_doubled).collect()
    }

    /// `⟨j1 m1 j2 m2 | j m⟩`; zero outside the selection rules.
    pub fn get(&self, m1: TwoJ, m2: TwoJ, j: TwoJ, m: TwoJ) -> S {
        let (a, b) = (self.j1.doubled(), self.j2.doubled());
        let (m1, m2) = (m1.doubled(), m2.doubled());
        if m1 + m2 != m.doubled() || m1.abs() > a || m2.abs() > b || (m1 + a) % 2 != 0 {
            return S::zero();
        }
        match self.states.get(&(j.doubled(), m.doubled())) {
            Some(amps) => amps[((m1 + a) / 2) as usize].clone(),
            None => S::zero(),
        }
    }

    /// Every nonzero-slot entry as `(m1, m2, j, m, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (TwoJ, TwoJ, TwoJ, TwoJ, &S)> {
        let a = self.j1.doubled();
        let b = self.j2.doubled();
        self.states.iter().flat_map(move |(&(j, m), amps)| {
            amps.iter().enumerate().filter_map(move |(i, v)| {
                let m1 = -a + 2 * i as i64;
                let m2 = m - m1;
                (m2.abs() <= b).then(|| {
                    (
                        TwoJ::from_doubled(m1),
                        TwoJ::from_doubled(m2),
                        TwoJ::from_doubled(j),
                        TwoJ::from_doubled(m),
                        v,
                    )
                })
            })
        })
    }
}

fn inner<S: CgScalar>(x: &[S], y: &[S]) -> S {
    x.iter().zip(y).fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn lower<S: CgScalar>(state: &State<S>, a: i64, b: i64, j: i64) -> State<S> {
    let mut out = vec![S::zero(); state.amps.len()];
    for (i, c) in state.amps.iter().enumerate() {
        let m1 = -a + 2 * i as i64;
        let m2 = state.m - m1;
        if m2.abs() > b {
            continue;
        }
        // J₋|j m⟩ = √((j+m)(j-m+1)) |j m-1⟩, in doubled units ((J+M)(J-M+2))/4
        if m1 > -a {
            let f = S::sqrt_ratio((a + m1) * (a - m1 + 2), 4);
            out[i - 1] = out[i - 1].add(&c.mul(&f));
        }
        if m2 > -b {
            let f = S::sqrt_ratio((b + m2) * (b - m2 + 2), 4);
            out[i] = out[i].add(&c.mul(&f));
        }
    }
    let norm = S::sqrt_ratio(4, (j + state.m) * (j - state.m + 2));
    State {
        m: state.m - 2,
        amps: out.iter().map(|x| x.mul(&norm)).collect(),
    }
}

fn raise<S: CgScalar>(state: &State<S>, a: i64, b: i64, j: i64) -> State<S> {
    let mut out = vec![S::zero(); state.amps.len()];
    for (i, c) in state.amps.iter().enumerate() {
        let m1 = -a + 2 * i as i64;
        let m2 = state.m - m1;
        if m2.abs() > b {
            continue;
        }
        // J₊|j m⟩ = √((j-m)(j+m+1)) |j m+1⟩
        if m1 < a {
            let f = S::sqrt_ratio((a - m1) * (a + m1 + 2), 4);
            out[i + 1] = out[i + 1].add(&c.mul(&f));
        }
        if m2 < b {
            let f = S::sqrt_ratio((b - m2) * (b + m2 + 2), 4);
            out[i] = out[i].add(&c.mul(&f));
        }
    }
    let norm = S::sqrt_ratio(4, (j - state.m) * (j + state.m + 2));
    State {
        m: state.m + 2,
        amps: out.iter().map(|x| x.mul(&norm)).collect(),
    }
}

/// Synthesises the full table for `(j1, j2)`.
pub fn cg_oracle<S: CgScalar>(j1: TwoJ, j2: TwoJ) -> Result<CgTable<S>> {
    let (a, b) = (j1.doubled(), j2.doubled());
    if a < 0 || b < 0 {
        return Err(Error::Invalid(format!("spins must be nonnegative, got {j1} and {j2}")));
    }
    if a > MAX_SPIN_DOUBLED || b > MAX_SPIN_DOUBLED {
        return Err(Error::SizeGuard(format!(
            "cg_oracle supports j1, j2 <= {}, got {j1} and {j2}",
            MAX_SPIN_DOUBLED / 2
        )));
    }
    let width = a as usize + 1;
    let mut states: BTreeMap<(i64, i64), Vec<S>> = BTreeMap::new();
    let mut j = a + b;
    while j >= (a - b).abs() {
        // J₊|j j⟩ = 0 fixes each coefficient from its neighbour:
        // c(m1+1)·√((j2-m2+1)(j2+m2)) = -c(m1)·√((j1-m1)(j1+m1+1)), m2 = j - m1
        let mut v = vec![S::zero(); width];
        let lo = (-a).max(j - b);
        let mut i = ((lo + a) / 2) as usize;
        v[i] = S::one();
        let mut m1 = lo;
        while m1 < a {
            let m2 = j - m1;
            let up = S::sqrt_ratio((a - m1) * (a + m1 + 2), (b - m2 + 2) * (b + m2));
            v[i + 1] = v[i].mul(&up).neg();
            i += 1;
            m1 += 2;
        }
        let norm_sq = inner(&v, &v);
        let mut scale = norm_sq
            .inv_sqrt()
            .ok_or_else(|| Error::Oracle(format!("top state for 2j = {j} has norm² {norm_sq:?}")))?;
        if v[width - 1].to_f64() < 0.0 {
            scale = scale.neg();
        }
        let top = State {
            m: j,
            amps: v.iter().map(|x| x.mul(&scale)).collect(),
        };
        let flip = ((a + b - j) / 2) % 2 == 1;
        let bottom = State {
            m: -j,
            amps: top
                .amps
                .iter()
                .rev()
                .map(|x| if flip { x.neg() } else { x.clone() })
                .collect(),
        };
        let mut state = top;
        loop {
            states.insert((j, state.m), state.amps.clone());
            if state.m - 2 < 0 {
                break;
            }
            state = lower(&state, a, b, j);
        }
        let mut state = bottom;
        while state.m < 0 {
            states.insert((j, state.m), state.amps.clone());
            state = raise(&state, a, b, j);
        }
        j -= 2;
    }
    Ok(CgTable { j1, j2, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use definetti_core::ExactReal;

    fn t(x: i64) -> TwoJ {
        TwoJ::from_doubled(x)
    }

    fn exact(table: &CgTable<SurdSum>, m1: i64, m2: i64, j: i64, m: i64) -> ExactReal {
        table.get(t(m1), t(m2), t(j), t(m)).as_exact_real().expect("single surd")
    }

    #[test]
    fn singlet_and_triplet() {
        let table = cg_oracle::<SurdSum>(t(1), t(1)).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let plus = ExactReal::from_signed_square(num_bigint::Sign::Plus, half.clone());
        let minus = ExactReal::from_signed_square(num_bigint::Sign::Minus, half);
        assert_eq!(exact(&table, 1, 1, 2, 2), ExactReal::one());
        assert_eq!(exact(&table, 1, -1, 2, 0), plus);
        assert_eq!(exact(&table, -1, 1, 2, 0), plus);
        assert_eq!(exact(&table, 1, -1, 0, 0), plus);
        assert_eq!(exact(&table, -1, 1, 0, 0), minus);
        assert_eq!(exact(&table, -1, -1, 2, -2), ExactReal::one());
    }

    #[test]
    fn stretched_state_is_one() {
        for a in 0..=8 {
            for b in 0..=8 {
                let table = cg_oracle::<SurdSum>(t(a), t(b)).unwrap();
                assert_eq!(exact(&table, a, b, a + b, a + b), ExactReal::one());
            }
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let e = cg_oracle::<SurdSum>(t(5), t(4)).unwrap();
        let f = cg_oracle::<f64>(t(5), t(4)).unwrap();
        for (m1, m2, j, m, v) in e.entries() {
            assert!((v.to_f64() - f.get(m1, m2, j, m)).abs() < 1e-13);
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(cg_oracle::<f64>(t(26), t(2)), Err(Error::SizeGuard(_))));
        assert!(cg_oracle::<f64>(t(24), t(24)).is_ok());
    }
}
