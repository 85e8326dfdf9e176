//! Verification suites: every closed form against its brute-force oracle
//! or an independent identity, reported check by check.
//!
//! The formulas under test are reached through [`Formulas`], so a suite can
//! be pointed at a deliberately broken variant to confirm it notices.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use definetti_core::heisenberg::{
    coherent_bound, delta_number_space, delta_number_space_exact, epsilon_heisenberg, ExactHeisenbergTriple,
    HeisenbergTriple,
};
use definetti_core::su2_cg::ClebschGordan;
use definetti_core::symmetric::{
    bound_exponential, closed_form_sum, dim_sym, epsilon, exact_error_d2, term_overlap, SymTriple,
};
use definetti_core::weights::{exact_radius, lowest_weight, sym_weights, type_class_size, w_r_set};
use definetti_core::{BigInt, BigRational, BigUint, Direction, SurdSum, TwoJ};
use num_integer::binomial;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::oracle::cg::cg_oracle;
use crate::oracle::heisenberg::{heis_annihilation_residual, heis_oracle, heis_orthogonality, CUTOFF_MARGIN};
use crate::oracle::lambda::{lambda_up_set, su2_highest_weights};
use crate::oracle::mc::{haar_moment_check, mc_theorem1, McConfig};
use crate::oracle::symmetric::{brute_delta_symmetric_curve, brute_term_overlaps};
use crate::Result;

pub type CoreResult<T> = definetti_core::Result<T>;

/// `δ` for SU(2) coupling, as an exact rational.
pub type Su2DeltaFn = fn(&ClebschGordan, TwoJ, TwoJ, TwoJ, TwoJ, u64, Direction) -> CoreResult<BigRational>;

/// The closed forms a suite exercises.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub epsilon: fn(&SymTriple) -> BigRational,
    pub delta_su2: Su2DeltaFn,
}

fn delta_su2_exact(
    cg: &ClebschGordan,
    j1: TwoJ,
    j2: TwoJ,
    j: TwoJ,
    m2: TwoJ,
    r: u64,
    direction: Direction,
) -> CoreResult<BigRational> {
    let report = cg.delta(j1, j2, j, m2, r, direction)?;
    Ok(report.delta.exact().cloned().expect("clebsch-gordan path is exact"))
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            epsilon,
            delta_su2: delta_su2_exact,
        }
    }
}

/// Faults the harness can inject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// The `i`-sum of `ε` starts at `r` instead of `r + 1`.
    EpsSumOffByOne,
    /// `δ` for SU(2) loses its `(2j2+1)/(2j+1)` factor.
    DropCgPrefactor,
}

impl Mutation {
    pub const ALL: [Mutation; 2] = [Mutation::EpsSumOffByOne, Mutation::DropCgPrefactor];

    pub fn formulas(self) -> Formulas {
        match self {
            Mutation::EpsSumOffByOne => Formulas {
                epsilon: epsilon_off_by_one,
                ..Formulas::default()
            },
            Mutation::DropCgPrefactor => Formulas {
                delta_su2: delta_su2_without_prefactor,
                ..Formulas::default()
            },
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutation::EpsSumOffByOne => "eps-sum-off-by-one",
            Mutation::DropCgPrefactor => "drop-cg-prefactor",
        })
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| format!("unknown mutation {s:?}"))
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ratio(a: BigUint, b: BigUint) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn epsilon_off_by_one(t: &SymTriple) -> BigRational {
    let (n, k, r, d) = (t.n(), t.k(), t.r(), t.d());
    let mut sum = BigRational::zero();
    for i in r..=k {
        sum += ratio(binomial(big(k), big(i)) * binomial(big(i + d - 2), big(i)), binomial(big(n), big(i)));
    }
    BigRational::from_integer(2.into()) * ratio(dim_sym(n - k, d), dim_sym(n, d)) * sum
}

fn delta_su2_without_prefactor(
    cg: &ClebschGordan,
    j1: TwoJ,
    j2: TwoJ,
    j: TwoJ,
    m2: TwoJ,
    r: u64,
    direction: Direction,
) -> CoreResult<BigRational> {
    let delta = delta_su2_exact(cg, j1, j2, j, m2, r, direction)?;
    Ok(delta * BigRational::new(j.multiplicity().into(), j2.multiplicity().into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Weights,
    Cg,
    Symmetric,
    Heisenberg,
    Mc,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["weights", "cg", "symmetric", "heisenberg", "mc", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "weights" => Suite::Weights,
            "cg" => Suite::Cg,
            "symmetric" => Suite::Symmetric,
            "heisenberg" => Suite::Heisenberg,
            "mc" => Suite::Mc,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Overrides the floating-point tolerance of every oracle comparison.
    pub tol: Option<f64>,
    pub parallel: bool,
    pub mc_samples: usize,
    pub formulas: Formulas,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            tol: None,
            parallel: false,
            mc_samples: 10_000,
            formulas: Formulas::default(),
        }
    }
}

impl VerifyOptions {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Outcome = Result<(bool, String)>;
type CheckFn = fn(&VerifyOptions) -> Outcome;

fn outcome(passed: bool, detail: String) -> Outcome {
    Ok((passed, detail))
}

/// Tracks the worst residual and the first failure over a grid.
#[derive(Default)]
struct Worst {
    cases: usize,
    failures: usize,
    max: f64,
    at: String,
}

impl Worst {
    fn record(&mut self, residual: f64, tol: f64, at: impl FnOnce() -> String) {
        self.cases += 1;
        if residual.is_nan() || residual > tol {
            self.failures += 1;
            if self.failures == 1 {
                self.at = at();
            }
        }
        if residual > self.max || residual.is_nan() {
            self.max = if residual.is_nan() { f64::INFINITY } else { residual };
        }
    }

    fn flag(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { f64::INFINITY }, 0.0, at);
    }

    fn finish(self, tol: f64) -> Outcome {
        let detail = if self.failures == 0 {
            format!("{} cases, max residual {:.3e} (tol {tol:.0e})", self.cases, self.max)
        } else {
            format!("{}/{} cases failed, first at {}", self.failures, self.cases, self.at)
        };
        outcome(self.failures == 0, detail)
    }

    fn finish_exact(self) -> Outcome {
        let detail = if self.failures == 0 {
            format!("{} exact matches", self.cases)
        } else {
            format!("{}/{} cases failed, first at {}", self.failures, self.cases, self.at)
        };
        outcome(self.failures == 0, detail)
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

// ---- weights ----

fn weights_example_radius(_: &VerifyOptions) -> Outcome {
    let mut worst = Worst::default();
    for n in 2..=20i64 {
        for k in 0..=n {
            for l in 0..=k.min(n - k) {
                let lambda = definetti_core::Weight::new(vec![n - l, l])?;
                let mu = definetti_core::Weight::new(vec![k, 0])?;
                let nu = definetti_core::Weight::new(vec![n - k, 0])?;
                let r = exact_radius(&lambda, &mu, &nu)?;
                worst.flag(r == (k - l) as u64, || format!("n={n} k={k} l={l}: got {r}"));
            }
        }
    }
    worst.finish_exact()
}

fn weights_counts(_: &VerifyOptions) -> Outcome {
    let mut worst = Worst::default();
    for d in 2..=4usize {
        for n in 0..=10u64 {
            let ws = sym_weights(n, d);
            worst.flag(BigUint::from(ws.len()) == dim_sym(n, d as u64), || format!("count n={n} d={d}"));
            let total = ws.iter().try_fold(BigUint::zero(), |acc, w| type_class_size(w).map(|s| acc + s))?;
            worst.flag(total == big(d as u64).pow(n as u32), || format!("type classes n={n} d={d}"));
        }
    }
    worst.finish_exact()
}

/// `Λ↑` contains the lowest weight of `μ` and lies in `W^{↑r}`,
/// `r = exact_radius`, for all spins up to 10.
pub fn lambda_check(max_doubled: i64) -> Outcome {
    let mut worst = Worst::default();
    for a in 0..=max_doubled {
        for b in 0..=max_doubled {
            let mut c = (a - b).abs();
            while c <= (a + b).min(max_doubled) {
                let (j1, j2, j) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b), TwoJ::from_doubled(c));
                let (mu, nu, lambda) = su2_highest_weights(j1, j2, j)?;
                let set = lambda_up_set(j1, j2, j)?;
                let r = exact_radius(&lambda, &mu, &nu)?;
                let ball = w_r_set(a as u64, 2, r, Direction::Up);
                let ok = set.contains(&lowest_weight(&mu)) && set.iter().all(|w| ball.contains(w));
                worst.flag(ok, || format!("j1={j1} j2={j2} j={j} r={r}"));
                c += 2;
            }
        }
    }
    worst.finish_exact()
}

fn weights_lambda(_: &VerifyOptions) -> Outcome {
    lambda_check(20)
}

// ---- cg ----

/// Exact agreement of the lowering-operator table with Racah's formula.
pub fn cg_exact_match(max_doubled: i64) -> Outcome {
    let racah = ClebschGordan::new(2 * max_doubled);
    let mut worst = Worst::default();
    for a in 0..=max_doubled {
        for b in 0..=max_doubled {
            let (j1, j2) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b));
            let table = cg_oracle::<SurdSum>(j1, j2)?;
            for (m1, m2, j, m, v) in table.entries() {
                let expected = racah.cg(j1, m1, j2, m2, j, m)?;
                worst.flag(v.as_exact_real().as_ref() == Some(&expected), || {
                    format!("<{j1} {m1} {j2} {m2}|{j} {m}>")
                });
            }
        }
    }
    worst.finish_exact()
}

/// Floating-point agreement for larger spins; pairs run in parallel.
pub fn cg_float_match(max_doubled: i64, tol: f64) -> Outcome {
    let racah = ClebschGordan::new(2 * max_doubled);
    let pairs: Vec<(i64, i64)> = (0..=max_doubled).flat_map(|a| (0..=max_doubled).map(move |b| (a, b))).collect();
    let per_pair = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (j1, j2) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b));
            let table = cg_oracle::<f64>(j1, j2)?;
            let mut worst = (0usize, 0.0f64, String::new());
            for (m1, m2, j, m, v) in table.entries() {
                let expected = racah.cg(j1, m1, j2, m2, j, m)?.to_f64();
                let resid = (v - expected).abs();
                worst.0 += 1;
                if resid.is_nan() || resid > worst.1 {
                    worst.1 = if resid.is_nan() { f64::INFINITY } else { resid };
                    worst.2 = format!("<{j1} {m1} {j2} {m2}|{j} {m}>");
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    let cases: usize = per_pair.iter().map(|w| w.0).sum();
    let (max, at) = per_pair
        .iter()
        .fold((0.0f64, String::new()), |acc, w| if w.1 > acc.0 { (w.1, w.2.clone()) } else { acc });
    outcome(max <= tol, format!("{cases} entries, max residual {max:.3e} at {at} (tol {tol:.0e})"))
}

/// Orthogonality and completeness of Racah's coefficients, summed exactly.
pub fn cg_unitarity(max_doubled: i64) -> Outcome {
    let racah = ClebschGordan::new(2 * max_doubled);
    let one = SurdSum::from_rational(BigRational::one());
    let mut worst = Worst::default();
    for a in 0..=max_doubled {
        for b in 0..=max_doubled {
            let (j1, j2) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b));
            let mut m = -(a + b);
            while m <= a + b {
                // rows: totals j with |m| ≤ j; columns: m1 with |m - m1| ≤ b
                let m1s: Vec<i64> = (-a..=a).step_by(2).filter(|m1| (m - m1).abs() <= b).collect();
                let js: Vec<i64> = ((a - b).abs()..=a + b).step_by(2).filter(|j| *j >= m.abs()).collect();
                let rows = js
                    .iter()
                    .map(|&j| {
                        m1s.iter()
                            .map(|&m1| {
                                racah
                                    .cg(j1, TwoJ::from_doubled(m1), j2, TwoJ::from_doubled(m - m1), TwoJ::from_doubled(j), TwoJ::from_doubled(m))
                                    .map(|c| c.to_surd())
                            })
                            .collect::<CoreResult<Vec<_>>>()
                    })
                    .collect::<CoreResult<Vec<_>>>()?;
                let dot = |x: &[SurdSum], y: &[SurdSum]| x.iter().zip(y).fold(SurdSum::zero(), |acc, (u, v)| &acc + &(u * v));
                for (i, ri) in rows.iter().enumerate() {
                    for (k, rk) in rows.iter().enumerate() {
                        let target = if i == k { one.clone() } else { SurdSum::zero() };
                        worst.flag(dot(ri, rk) == target, || format!("orthogonality j1={j1} j2={j2} 2m={m}"));
                    }
                }
                let cols: Vec<Vec<SurdSum>> = (0..m1s.len()).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
                for (i, ci) in cols.iter().enumerate() {
                    for (k, ck) in cols.iter().enumerate() {
                        let target = if i == k { one.clone() } else { SurdSum::zero() };
                        worst.flag(dot(ci, ck) == target, || format!("completeness j1={j1} j2={j2} 2m={m}"));
                    }
                }
                m += 2;
            }
        }
    }
    worst.finish_exact()
}

/// `δ = (2j2+1)/(2j+1)` at `j = j1 + j2`, `r = 0`, `m2 = j2`.
pub fn cg_stretched(formulas: &Formulas, max_doubled: i64) -> Outcome {
    let racah = ClebschGordan::new(2 * max_doubled);
    let mut worst = Worst::default();
    let half = TwoJ::from_doubled(1);
    let d = (formulas.delta_su2)(&racah, half, half, TwoJ::integer(1), half, 0, Direction::Down)?;
    worst.flag(d == q(2, 3), || format!("spin-1/2 pair gave {d}"));
    for a in 0..=max_doubled {
        for b in 0..=max_doubled {
            let (j1, j2, j) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b), TwoJ::from_doubled(a + b));
            let d = (formulas.delta_su2)(&racah, j1, j2, j, j2, 0, Direction::Down)?;
            worst.flag(d == q(b + 1, a + b + 1), || format!("j1={j1} j2={j2}: got {d}"));
        }
    }
    worst.finish_exact()
}

/// `δ` from the synthesised table (with the multiplicity ratio applied
/// independently) against the formula under test.
fn cg_delta_vs_table(formulas: &Formulas, max_doubled: i64, tol: f64) -> Outcome {
    let racah = ClebschGordan::new(2 * max_doubled);
    let mut worst = Worst::default();
    for a in 0..=max_doubled {
        for b in 0..=max_doubled {
            let (j1, j2) = (TwoJ::from_doubled(a), TwoJ::from_doubled(b));
            let table = cg_oracle::<f64>(j1, j2)?;
            for j in table.totals() {
                for direction in [Direction::Down, Direction::Up] {
                    for m2 in (-b..=b).step_by(2).map(TwoJ::from_doubled) {
                        for r in 0..=a as u64 {
                            let formula = to_f64(&(formulas.delta_su2)(&racah, j1, j2, j, m2, r, direction)?);
                            let sum: f64 = (0..=r as i64)
                                .map(|s| {
                                    let m1 = match direction {
                                        Direction::Down => a - 2 * s,
                                        Direction::Up => -a + 2 * s,
                                    };
                                    let m1 = TwoJ::from_doubled(m1);
                                    let m = TwoJ::from_doubled(m1.doubled() + m2.doubled());
                                    table.get(m1, m2, j, m).powi(2)
                                })
                                .sum();
                            let brute = sum * (b + 1) as f64 / j.multiplicity() as f64;
                            worst.record((formula - brute).abs(), tol, || {
                                format!("j1={j1} j2={j2} j={j} m2={m2} r={r} {direction}")
                            });
                        }
                    }
                }
            }
        }
    }
    worst.finish(tol)
}

fn cg_check_exact(_: &VerifyOptions) -> Outcome {
    cg_exact_match(8)
}

fn cg_check_float(o: &VerifyOptions) -> Outcome {
    cg_float_match(24, o.tol(1e-12))
}

fn cg_check_unitarity(_: &VerifyOptions) -> Outcome {
    cg_unitarity(8)
}

fn cg_check_stretched(o: &VerifyOptions) -> Outcome {
    cg_stretched(&o.formulas, 40)
}

fn cg_check_delta(o: &VerifyOptions) -> Outcome {
    cg_delta_vs_table(&o.formulas, 8, o.tol(1e-12))
}

// ---- symmetric ----

/// Dense `δ` against `1 - ε/2` over `k ≤ n ≤ max_n`, `r ≤ k`.
pub fn symmetric_oracle(formulas: &Formulas, d: u64, max_n: u64, tol: f64) -> Outcome {
    let mut worst = Worst::default();
    for n in 0..=max_n {
        for k in 0..=n {
            let curve = brute_delta_symmetric_curve(n, k, d as usize)?;
            for (r, brute) in curve.iter().enumerate() {
                let t = SymTriple::new(n, k, r as u64, d)?;
                let formula = 1.0 - to_f64(&(formulas.epsilon)(&t)) / 2.0;
                worst.record((formula - brute).abs(), tol, || format!("n={n} k={k} r={r} d={d}"));
            }
        }
    }
    worst.finish(tol)
}

fn sym_check_oracle_d2(o: &VerifyOptions) -> Outcome {
    symmetric_oracle(&o.formulas, 2, 12, o.tol(1e-10))
}

fn sym_check_oracle_d3(o: &VerifyOptions) -> Outcome {
    symmetric_oracle(&o.formulas, 3, 8, o.tol(1e-10))
}

fn sym_check_term_overlaps(o: &VerifyOptions) -> Outcome {
    let tol = o.tol(1e-12);
    let mut worst = Worst::default();
    for d in 2..=3usize {
        let max_n = if d == 2 { 10 } else { 8 };
        for n in 0..=max_n {
            for k in 0..=n {
                for (w, brute) in brute_term_overlaps(n, k, d)? {
                    let formula = to_f64(&term_overlap(&w, n, k)?);
                    worst.record((formula - brute).abs(), tol, || format!("w={w} n={n} k={k}"));
                }
            }
        }
    }
    worst.finish(tol)
}

/// `ε(n,k,0,d) = 2(1 - dim Sym^{n-k}/dim Sym^n)`.
pub fn symmetric_r0_identity(formulas: &Formulas, max_n: u64, max_d: u64) -> Outcome {
    let mut worst = Worst::default();
    for d in 2..=max_d {
        for n in 0..=max_n {
            for k in 0..=n {
                let t = SymTriple::new(n, k, 0, d)?;
                let expected = BigRational::from_integer(2.into())
                    * (BigRational::one() - ratio(dim_sym(n - k, d), dim_sym(n, d)));
                worst.flag((formulas.epsilon)(&t) == expected, || format!("n={n} k={k} d={d}"));
            }
        }
    }
    worst.finish_exact()
}

/// Closed-form sum against the direct sum, and its recursion.
pub fn symmetric_closed_form(max_n: u64) -> Outcome {
    let mut worst = Worst::default();
    for n in 0..=max_n {
        for k in 1..=n {
            let term = |i: u64| ratio(binomial(big(k), big(i)), binomial(big(n), big(i)));
            let mut direct = (1..=k).fold(BigRational::zero(), |acc, i| acc + term(i));
            let mut previous = None;
            for r in 0..k {
                let closed = closed_form_sum(n, k, r)?;
                worst.flag(closed == direct, || format!("sum n={n} k={k} r={r}"));
                if let Some(prev) = previous {
                    worst.flag(closed == prev - term(r), || format!("recursion n={n} k={k} r={r}"));
                }
                direct -= term(r + 1);
                previous = Some(closed);
            }
        }
    }
    worst.finish_exact()
}

/// `ε/2 ≤ intermediate ≤ headline` for `d ≤ min(k, n-k, max_d)`, and the
/// `d = 2` error formula equals `ε`.
pub fn symmetric_bound_chain(formulas: &Formulas, max_n: u64, max_d: u64) -> Outcome {
    let mut worst = Worst::default();
    let slack = 1.0 + 1e-12;
    for n in 0..=max_n {
        for k in 0..=n {
            for r in 0..=k {
                let t2 = SymTriple::new(n, k, r, 2)?;
                worst.flag(exact_error_d2(n, k, r)? == (formulas.epsilon)(&t2), || format!("d=2 error n={n} k={k} r={r}"));
                for d in 2..=max_d.min(k).min(n - k) {
                    let t = SymTriple::new(n, k, r, d)?;
                    let half_eps = to_f64(&(formulas.epsilon)(&t)) / 2.0;
                    let b = bound_exponential(&t)?;
                    let ok = half_eps <= b.intermediate * slack && b.intermediate <= b.headline * slack;
                    worst.flag(ok, || {
                        format!("n={n} k={k} r={r} d={d}: eps/2={half_eps:e} mid={:e} top={:e}", b.intermediate, b.headline)
                    });
                }
            }
        }
    }
    worst.finish_exact()
}

fn sym_check_r0(o: &VerifyOptions) -> Outcome {
    symmetric_r0_identity(&o.formulas, 30, 6)
}

fn sym_check_closed_form(_: &VerifyOptions) -> Outcome {
    symmetric_closed_form(30)
}

fn sym_check_bounds(o: &VerifyOptions) -> Outcome {
    symmetric_bound_chain(&o.formulas, 30, 5)
}

// ---- heisenberg ----

/// Fock oracle against the number-space formula for integer `μ, ν ≤ max`.
pub fn heisenberg_oracle(max_mu: u64, max_excitation: u64, max_r: u64, tol: f64) -> Outcome {
    let cases: Vec<(u64, u64, u64)> = (1..=max_mu)
        .flat_map(|mu| (1..=max_mu).flat_map(move |nu| (0..=max_excitation).map(move |d| (mu, nu, d))))
        .collect();
    let results = cases
        .par_iter()
        .map(|&(mu, nu, d)| {
            let mut out = Vec::new();
            for r in 0..=max_r {
                let rep = heis_oracle(mu as f64, nu as f64, d, r, r + d + CUTOFF_MARGIN)?;
                let t = HeisenbergTriple::new(mu as f64, nu as f64, d, r)?;
                let resid = (rep.delta - delta_number_space(&t).delta_f64()).abs().max(rep.norm_defect);
                out.push((resid, format!("mu={mu} nu={nu} Delta={d} r={r}")));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut worst = Worst::default();
    for (resid, at) in results.into_iter().flatten() {
        worst.record(resid, tol, || at);
    }
    worst.finish(tol)
}

fn heis_check_oracle(o: &VerifyOptions) -> Outcome {
    heisenberg_oracle(10, 5, 10, o.tol(1e-10))
}

fn heis_check_structure(o: &VerifyOptions) -> Outcome {
    let tol = o.tol(1e-10);
    let mut worst = Worst::default();
    for (mu, nu) in [(1.0, 1.0), (2.0, 3.0), (10.0, 1.0), (0.5, 7.0)] {
        let a = heis_annihilation_residual(mu, nu, 8)?;
        worst.record(a, tol, || format!("annihilation mu={mu} nu={nu}"));
        let g = heis_orthogonality(mu, nu, 8, 2 * 8 + CUTOFF_MARGIN)?;
        worst.record(g, tol, || format!("orthogonality mu={mu} nu={nu}"));
    }
    worst.finish(tol)
}

/// `Δ = 0`: `δ = 1 - (μ/(μ+ν))^{r+1}` in exact arithmetic.
pub fn heisenberg_ground_exact(max_mu: i64, max_r: u64) -> Outcome {
    let mut worst = Worst::default();
    for mu in 1..=max_mu {
        for nu in 1..=max_mu {
            for r in 0..=max_r {
                let t = ExactHeisenbergTriple::new(q(mu, 1), q(nu, 1), 0, r)?;
                let got = delta_number_space_exact(&t).delta.exact().cloned();
                let expected = BigRational::one() - Pow::pow(q(mu, mu + nu), (r + 1) as u32);
                worst.flag(got.as_ref() == Some(&expected), || format!("mu={mu} nu={nu} r={r}"));
            }
        }
    }
    worst.finish_exact()
}

fn heis_check_ground(_: &VerifyOptions) -> Outcome {
    heisenberg_ground_exact(10, 10)
}

/// `coherent_bound(n,k,r) = ε_Heis(μ=k, ν=n-k, Δ=0, r)` for `n ≤ max_n`.
pub fn coherent_sweep(max_n: u64, max_r: u64, tol: f64) -> Outcome {
    let mut worst = Worst::default();
    let anchor = coherent_bound(100, 10, 0)?;
    worst.record((anchor - 0.2).abs(), tol, || format!("coherent_bound(100,10,0) = {anchor}"));
    for n in 2..=max_n {
        for k in 1..n {
            for r in 0..=max_r {
                let c = coherent_bound(n, k, r)?;
                let e = epsilon_heisenberg(&HeisenbergTriple::new(k as f64, (n - k) as f64, 0, r)?);
                worst.record((c - e).abs() / c.max(f64::MIN_POSITIVE), tol, || format!("n={n} k={k} r={r}"));
            }
        }
    }
    worst.finish(tol)
}

fn heis_check_coherent(o: &VerifyOptions) -> Outcome {
    coherent_sweep(200, 10, o.tol(1e-10))
}

// ---- mc ----

fn mc_check_haar(o: &VerifyOptions) -> Outcome {
    let (dev, thr) = haar_moment_check(o.mc_samples, o.seed);
    outcome(dev <= thr, format!("max moment deviation {dev:.3e}, threshold 3/sqrt(N) = {thr:.3e}"))
}

fn mc_check_theorem(o: &VerifyOptions) -> Outcome {
    let mut passed = true;
    let mut lines = Vec::new();
    for r in 0..=2 {
        let cfg = McConfig { n: 4, k: 2, r, n_samples: o.mc_samples, seed: o.seed, parallel: o.parallel };
        let rep = mc_theorem1(&cfg)?;
        let id_ok = rep.identity_residual <= 5.0 * rep.identity_standard_error;
        passed &= rep.passed() && id_ok;
        lines.push(format!(
            "r={r}: lhs_distance={:.4e} bound={:.4e} mc_tolerance={:.2e} identity_residual={:.3e}",
            rep.lhs_distance, rep.bound, rep.mc_tolerance, rep.identity_residual
        ));
    }
    outcome(passed, format!("n=4 k=2 N={} seed={}; {}", o.mc_samples, o.seed, lines.join("; ")))
}

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("weights", "two-row-exact-radius", weights_example_radius),
    ("weights", "weight-and-type-class-counts", weights_counts),
    ("weights", "lambda-up-lowest-and-radius", weights_lambda),
    ("cg", "oracle-exact-j-le-4", cg_check_exact),
    ("cg", "oracle-float-j-le-12", cg_check_float),
    ("cg", "orthogonality-completeness-j-le-4", cg_check_unitarity),
    ("cg", "stretched-delta-j-le-20", cg_check_stretched),
    ("cg", "delta-vs-table-j-le-4", cg_check_delta),
    ("symmetric", "dense-oracle-d2-n-le-12", sym_check_oracle_d2),
    ("symmetric", "dense-oracle-d3-n-le-8", sym_check_oracle_d3),
    ("symmetric", "term-overlaps", sym_check_term_overlaps),
    ("symmetric", "r0-identity", sym_check_r0),
    ("symmetric", "closed-form-sum", sym_check_closed_form),
    ("symmetric", "bound-chain", sym_check_bounds),
    ("heisenberg", "fock-oracle", heis_check_oracle),
    ("heisenberg", "annihilation-orthogonality", heis_check_structure),
    ("heisenberg", "ground-closed-form", heis_check_ground),
    ("heisenberg", "coherent-sweep", heis_check_coherent),
    ("mc", "haar-moments", mc_check_haar),
    ("mc", "theorem-inequality", mc_check_theorem),
];

fn run_one(suite: &'static str, name: &'static str, f: CheckFn, opts: &VerifyOptions) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f(opts) {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    Check { suite, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs `suite`, calling `on_check` as each result becomes available in
/// order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions, mut on_check: impl FnMut(&Check)) -> Vec<Check> {
    let name = match suite {
        Suite::Weights => Some("weights"),
        Suite::Cg => Some("cg"),
        Suite::Symmetric => Some("symmetric"),
        Suite::Heisenberg => Some("heisenberg"),
        Suite::Mc => Some("mc"),
        Suite::All => None,
    };
    let selected: Vec<_> = CHECKS.iter().filter(|(s, _, _)| name.is_none_or(|n| n == *s)).collect();
    if opts.parallel {
        let checks: Vec<Check> = selected.par_iter().map(|(s, n, f)| run_one(s, n, *f, opts)).collect();
        checks.iter().for_each(&mut on_check);
        checks
    } else {
        selected
            .iter()
            .map(|(s, n, f)| {
                let c = run_one(s, n, *f, opts);
                on_check(&c);
                c
            })
            .collect()
    }
}
