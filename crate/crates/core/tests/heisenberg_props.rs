use definetti_core::heisenberg::{
    alpha_weight, alpha_weight_exact, coherent_bound, coherent_bound_exact, delta_number_space,
    delta_number_space_exact, epsilon_heisenberg, epsilon_heisenberg_ground, ExactHeisenbergTriple,
    HeisenbergTriple,
};
use definetti_core::{BigInt, BigRational, DeltaValue};
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

const COUPLINGS: [f64; 4] = [0.5, 1.0, 2.0, 50.0];

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn delta_increases_to_one() {
    for &mu in &COUPLINGS {
        for &nu in &COUPLINGS {
            for excitation in 0..=10 {
                let mut last = 0.0;
                let mut r = 0;
                loop {
                    let t = HeisenbergTriple::new(mu, nu, excitation, r).unwrap();
                    let d = delta_number_space(&t).delta_f64();
                    assert!(d >= last - 1e-15, "mu={mu} nu={nu} Δ={excitation} r={r}");
                    assert!((0.0..=1.0).contains(&d));
                    last = d;
                    if 1.0 - d < 1e-8 {
                        break;
                    }
                    r += 1;
                    assert!(r < 20_000, "δ did not approach 1");
                }
            }
        }
    }
}

#[test]
fn delta_is_scaled_alpha_sum_exactly() {
    for mu in 1..=6i64 {
        for nu in 1..=6i64 {
            for excitation in 0..=5u64 {
                for r in 0..=12u64 {
                    let t = ExactHeisenbergTriple::new(int(mu), int(nu), excitation, r).unwrap();
                    let sum = if r >= excitation {
                        (0..=(r - excitation)).fold(BigRational::zero(), |acc, n| {
                            acc + alpha_weight_exact(excitation, n, &int(mu), &int(nu))
                        })
                    } else {
                        BigRational::zero()
                    };
                    let expected = BigRational::new(nu.into(), (mu + nu).into()) * sum;
                    assert_eq!(delta_number_space_exact(&t).delta, DeltaValue::Exact(expected));

                    let float_sum: f64 = if r >= excitation {
                        (0..=(r - excitation))
                            .map(|n| alpha_weight(excitation, n, mu as f64, nu as f64))
                            .sum()
                    } else {
                        0.0
                    };
                    let float = nu as f64 / (mu + nu) as f64 * float_sum;
                    let approx = delta_number_space(&t.to_real()).delta_f64();
                    assert!((approx - float).abs() < 1e-13);
                }
            }
        }
    }
}

#[test]
fn exact_and_float_paths_agree() {
    for mu in 1..=10i64 {
        for nu in 1..=10i64 {
            for excitation in 0..=5u64 {
                for r in 0..=10u64 {
                    let t = ExactHeisenbergTriple::new(int(mu), int(nu), excitation, r).unwrap();
                    let exact = delta_number_space_exact(&t).delta_f64();
                    let approx = delta_number_space(&t.to_real()).delta_f64();
                    assert!((exact - approx).abs() < 1e-14);
                }
            }
        }
    }
}

#[test]
fn ground_closed_forms_agree_with_piecewise_epsilon() {
    for &mu in &COUPLINGS {
        for &nu in &COUPLINGS {
            for r in 0..60 {
                let t = HeisenbergTriple::new(mu, nu, 0, r).unwrap();
                let a = epsilon_heisenberg(&t);
                let b = epsilon_heisenberg_ground(mu, nu, r);
                assert!((a - b).abs() <= 1e-12 * b.max(1e-300) + 1e-15, "mu={mu} nu={nu} r={r}");
            }
        }
    }
}

#[test]
fn coherent_bound_is_heisenberg_epsilon() {
    for n in 2..=200u64 {
        for k in 1..n {
            for r in 0..=10u64 {
                let c = coherent_bound(n, k, r).unwrap();
                let t = HeisenbergTriple::new(k as f64, (n - k) as f64, 0, r).unwrap();
                let e = epsilon_heisenberg(&t);
                assert!((c - e).abs() <= 1e-10 * c + 1e-14, "n={n} k={k} r={r}: {c} vs {e}");
                if let Some(q) = coherent_bound_exact(n, k, r).unwrap() {
                    assert!((q.to_f64().unwrap() - c).abs() <= 1e-14 * c.max(1e-300));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn delta_in_unit_interval(mu in 1e-3f64..1e3, nu in 1e-3f64..1e3, excitation in 0u64..12, r in 0u64..200) {
        let t = HeisenbergTriple::new(mu, nu, excitation, r).unwrap();
        let d = delta_number_space(&t).delta_f64();
        prop_assert!((0.0..=1.0).contains(&d));
        let e = epsilon_heisenberg(&t);
        prop_assert!((0.0..=2.0).contains(&e));
    }

    #[test]
    fn rational_delta_stays_below_one(mu in 1i64..50, nu in 1i64..50, excitation in 0u64..6, r in 0u64..30) {
        let t = ExactHeisenbergTriple::new(int(mu), int(nu), excitation, r).unwrap();
        let report = delta_number_space_exact(&t);
        let d = report.delta.exact().unwrap().clone();
        prop_assert!(d >= BigRational::zero() && d < BigRational::one());
    }

    #[test]
    fn nonpositive_couplings_are_rejected(x in -10.0f64..=0.0) {
        prop_assert!(HeisenbergTriple::new(x, 1.0, 0, 0).is_err());
        prop_assert!(HeisenbergTriple::new(1.0, x, 0, 0).is_err());
    }
}
