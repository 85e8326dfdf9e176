use definetti_core::symmetric::{
    bound_exponential, closed_form_sum, delta_psi_weights, delta_symmetric, dim_sym, epsilon,
    exact_error_d2, term_overlap, weight_profile, SymTriple,
};
use definetti_core::weights::{sym_weights, w_r_set};
use definetti_core::{BigInt, BigRational, DeltaValue, Direction};
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn triple(n: u64, k: u64, r: u64, d: u64) -> SymTriple {
    SymTriple::new(n, k, r, d).unwrap()
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn frac(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn epsilon_lies_on_trace_distance_scale() {
    for d in 2..=5 {
        for n in 0..=30 {
            for k in 0..=n {
                for r in 0..=k {
                    let e = epsilon(&triple(n, k, r, d));
                    assert!(e >= BigRational::zero() && e <= two(), "n={n} k={k} r={r} d={d}");
                }
            }
        }
    }
}

#[test]
fn epsilon_monotone_in_r_and_k() {
    for d in 2..=4 {
        for n in 1..=40 {
            for k in 0..=n {
                let mut last: Option<BigRational> = None;
                for r in 0..=k {
                    let e = epsilon(&triple(n, k, r, d));
                    if let Some(prev) = &last {
                        assert!(e <= *prev);
                    }
                    last = Some(e);
                }
            }
            // fixed r, growing k
            for r in 0..=n {
                let mut last: Option<BigRational> = None;
                for k in r..=n {
                    let e = epsilon(&triple(n, k, r, d));
                    if let Some(prev) = &last {
                        assert!(e >= *prev, "n={n} k={k} r={r} d={d}");
                    }
                    last = Some(e);
                }
            }
        }
    }
}

#[test]
fn epsilon_matches_weight_count_formula() {
    for d in 2..=4u64 {
        for n in 0..=30 {
            for k in 0..=n {
                for r in 0..=k {
                    let set = w_r_set(k, d as usize, r, Direction::Down);
                    let profile = weight_profile(&set, k).unwrap();
                    let delta = delta_psi_weights(n, k, d, &profile).unwrap();
                    let e = epsilon(&triple(n, k, r, d));
                    assert_eq!(BigRational::one() - e / two(), delta, "n={n} k={k} r={r} d={d}");
                }
            }
        }
    }
}

#[test]
fn term_overlaps_sum_to_one() {
    for d in 2..=4u64 {
        for n in 0..=20 {
            for k in 0..=n {
                let total = sym_weights(k, d as usize)
                    .iter()
                    .fold(BigRational::zero(), |acc, w| acc + term_overlap(w, n, k).unwrap());
                let scale = BigRational::new(dim_sym(n - k, d).into(), dim_sym(n, d).into());
                assert_eq!(total * scale, BigRational::one(), "n={n} k={k} d={d}");
            }
        }
    }
}

#[test]
fn r_zero_is_dimension_ratio() {
    for d in 2..=6 {
        for n in 0..=60 {
            for k in 0..=n {
                let ratio = BigRational::new(dim_sym(n - k, d).into(), dim_sym(n, d).into());
                assert_eq!(epsilon(&triple(n, k, 0, d)), two() * (BigRational::one() - ratio));
            }
        }
    }
}

#[test]
fn closed_form_sum_and_recursion() {
    for n in 1..=60u64 {
        for k in 1..=n {
            let mut prev: Option<BigRational> = None;
            for r in 0..k {
                let direct = ((r + 1)..=k).fold(BigRational::zero(), |acc, i| {
                    acc + frac(binomial(k, i).to_u64().unwrap_or(0), 1)
                        / BigRational::from_integer(BigInt::from(num_integer::binomial(
                            definetti_core::BigUint::from(n),
                            definetti_core::BigUint::from(i),
                        )))
                });
                let closed = closed_form_sum(n, k, r).unwrap();
                assert_eq!(closed, direct, "n={n} k={k} r={r}");
                if let Some(p) = prev {
                    let step = BigRational::from_integer(BigInt::from(num_integer::binomial(
                        definetti_core::BigUint::from(k),
                        definetti_core::BigUint::from(r),
                    ))) / BigRational::from_integer(BigInt::from(num_integer::binomial(
                        definetti_core::BigUint::from(n),
                        definetti_core::BigUint::from(r),
                    )));
                    assert_eq!(closed, p - step);
                }
                prev = Some(closed_form_sum(n, k, r).unwrap());
            }
        }
    }
}

#[test]
fn bound_chain_and_tight_d2_error() {
    for n in 2..=60 {
        for k in 0..=n {
            for r in 0..=k {
                if r < k {
                    assert_eq!(
                        exact_error_d2(n, k, r).unwrap(),
                        epsilon(&triple(n, k, r, 2)),
                        "n={n} k={k} r={r}"
                    );
                }
                for d in 2..=5.min(k.min(n - k)) {
                    let t = triple(n, k, r, d);
                    let e = epsilon(&t).to_f64().unwrap();
                    let b = bound_exponential(&t).unwrap();
                    assert!(e / 2.0 <= b.intermediate * (1.0 + 1e-12), "n={n} k={k} r={r} d={d}");
                    assert!(2.0 * b.intermediate <= b.headline * (1.0 + 1e-12));
                }
            }
        }
    }
}

#[test]
fn epsilon_decays_along_linear_schedule() {
    let (alpha, beta) = (0.2, 0.5);
    let values: Vec<BigRational> = [40u64, 60, 80, 100]
        .iter()
        .map(|&n| {
            let k = (alpha * n as f64).round() as u64;
            let r = (beta * k as f64).round() as u64;
            epsilon(&triple(n, k, r, 2))
        })
        .collect();
    for pair in values.windows(2) {
        assert!(pair[1] < pair[0]);
    }
}

#[test]
fn delta_report_is_consistent() {
    for d in 2..=4 {
        for n in 0..=15 {
            for k in 0..=n {
                for r in 0..=k {
                    let t = triple(n, k, r, d);
                    let report = delta_symmetric(&t);
                    assert!(report.is_within_unit_interval());
                    assert!(report.bound_linear <= report.bound_sqrt + 1e-15);
                    let DeltaValue::Exact(delta) = &report.delta else {
                        panic!("symmetric delta is exact")
                    };
                    assert_eq!(two() * (BigRational::one() - delta), epsilon(&t));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn oversized_profile_is_rejected(n in 2u64..20, d in 2u64..5, extra in 1u64..4) {
        let k = n / 2;
        let mut profile = vec![0u64; k as usize + 1];
        profile[k as usize] = 1 + extra;
        prop_assert!(delta_psi_weights(n, k, d, &profile).is_err());
    }

    #[test]
    fn full_profile_gives_one(n in 0u64..40, kfrac in 0.0f64..1.0, d in 2u64..6) {
        let k = (kfrac * n as f64).floor() as u64;
        let profile: Vec<u64> = (0..=k).map(|i| dim_sym(k - i, d - 1).to_u64().unwrap()).collect();
        prop_assert_eq!(delta_psi_weights(n, k, d, &profile).unwrap(), BigRational::one());
    }
}
