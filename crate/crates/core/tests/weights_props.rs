use definetti_core::weights::{
    exact_radius, height_down, height_up, simple_root, sym_weights, type_class_size, w_r_set,
    weight_leq, RootIndex,
};
use definetti_core::{BigUint, Direction, Weight};
use num_integer::binomial;
use num_rational::Rational64;
use num_traits::Signed;
use proptest::prelude::*;

fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec()).unwrap()
}

fn zero_sum_vectors(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d - 1 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .filter_map(|mut v| {
            let last = -v.iter().sum::<i64>();
            (last.abs() <= bound).then(|| {
                v.push(last);
                v
            })
        })
        .collect()
}

#[test]
fn simple_root_basis_reconstructs_every_zero_sum_vector() {
    for d in 2..=4 {
        for v in zero_sum_vectors(d, 6) {
            let zero = Weight::zero(d).unwrap();
            // λ - w = v with λ = v, w = 0
            let dec = height_down(&w(&v), &zero).unwrap();
            let back: Vec<Rational64> = v.iter().map(|&x| Rational64::from_integer(x)).collect();
            assert_eq!(dec.reconstruct(), back, "v = {v:?}");
            assert!(dec.is_integral());
            let expected = dec.coefficients.iter().map(|c| c.abs()).max().unwrap();
            assert_eq!(dec.height, expected);
        }
    }
}

#[test]
fn explicit_root_combination_matches_decomposition() {
    // Σ n_i α_i built from the roots themselves, not from prefix sums.
    for d in 2..=4 {
        for v in zero_sum_vectors(d, 3) {
            let dec = height_down(&w(&v), &Weight::zero(d).unwrap()).unwrap();
            let mut acc = vec![0i64; d];
            for (i, c) in dec.coefficients.iter().enumerate() {
                let root = simple_root(RootIndex::new(i + 1, d).unwrap());
                for (a, r) in acc.iter_mut().zip(root.entries()) {
                    *a += c.to_integer() * r;
                }
            }
            assert_eq!(acc, v);
        }
    }
}

#[test]
fn reversal_duality_between_heights() {
    // Measuring from the lowest weight μ_* = reverse(μ) equals measuring the
    // reversed weight down from μ.
    for d in 2..=4 {
        for n in 0..=7u64 {
            for mu in sym_weights(n, d) {
                for x in sym_weights(n, d) {
                    let up = height_up(&mu, &x).unwrap();
                    let down = height_down(&mu, &x.reversed()).unwrap();
                    assert_eq!(up.height, down.height, "mu={mu} w={x}");
                }
            }
        }
    }
}

#[test]
fn height_up_is_monotone_in_the_dominance_order() {
    for d in 2..=3 {
        for n in 0..=8u64 {
            let mu = sym_weights(n, d).into_iter().next().unwrap();
            let ws = sym_weights(n, d);
            for a in &ws {
                for b in &ws {
                    if weight_leq(a, b).unwrap() {
                        let ha = height_up(&mu, a).unwrap().height;
                        let hb = height_up(&mu, b).unwrap().height;
                        assert!(ha <= hb, "{a} <= {b} but heights {ha} > {hb}");
                    }
                }
            }
        }
    }
}

#[test]
fn height_up_of_sym_k_two_is_first_entry() {
    for k in 0..=6i64 {
        let mu = w(&[k, 0]);
        for x in sym_weights(k as u64, 2) {
            let dec = height_up(&mu, &x).unwrap();
            assert_eq!(dec.height, Rational64::from_integer(x.entries()[0]));
        }
    }
}

#[test]
fn type_classes_partition_the_product_basis() {
    for d in 2..=4usize {
        for k in 0..=8u64 {
            let total: BigUint = sym_weights(k, d)
                .iter()
                .map(|x| type_class_size(x).unwrap())
                .sum();
            assert_eq!(total, BigUint::from(d).pow(k as u32), "k={k} d={d}");
        }
    }
}

#[test]
fn w_r_set_counts_match_lower_symmetric_dimensions() {
    for d in 2..=4usize {
        for k in 0..=10u64 {
            assert_eq!(
                sym_weights(k, d).len() as u64,
                binomial(k + d as u64 - 1, k)
            );
            for r in 0..=k {
                let expected: u64 = (0..=r).map(|i| binomial(i + d as u64 - 2, i)).sum();
                assert_eq!(w_r_set(k, d, r, Direction::Down).len() as u64, expected);
                assert_eq!(w_r_set(k, d, r, Direction::Up).len() as u64, expected);
            }
        }
    }
}

#[test]
fn up_set_is_reversal_of_down_set() {
    for d in 2..=4usize {
        for k in 0..=6u64 {
            for r in 0..=k {
                let mut up: Vec<Weight> = w_r_set(k, d, r, Direction::Up);
                let mut down: Vec<Weight> = w_r_set(k, d, r, Direction::Down)
                    .iter()
                    .map(Weight::reversed)
                    .collect();
                up.sort_by(|a, b| a.entries().cmp(b.entries()));
                down.sort_by(|a, b| a.entries().cmp(b.entries()));
                assert_eq!(up, down);
            }
        }
    }
}

#[test]
fn exact_radius_for_two_row_branching() {
    for n in 1..=20i64 {
        for k in 0..=n {
            let mu = w(&[k, 0]);
            let nu = w(&[n - k, 0]);
            // R_(n-ℓ, ℓ) occurs in Sym^k ⊗ Sym^{n-k} for ℓ ≤ min(k, n-k)
            for l in 0..=k.min(n - k) {
                let lambda = w(&[n - l, l]);
                assert_eq!(exact_radius(&lambda, &mu, &nu).unwrap(), (k - l) as u64);
            }
        }
    }
    assert_eq!(exact_radius(&w(&[10, 2]), &w(&[5, 0]), &w(&[7, 0])).unwrap(), 3);
}

proptest! {
    #[test]
    fn normalization_is_idempotent(v in prop::collection::vec(-50i64..50, 2..6)) {
        let x = w(&v);
        let once = x.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(*once.entries().last().unwrap(), 0);
    }

    #[test]
    fn heights_are_nonnegative_and_integral(v in prop::collection::vec(-40i64..40, 2..7)) {
        let lambda = w(&v);
        let mut shifted = v.clone();
        // move one unit along the first root: λ - α_1
        shifted[0] -= 1;
        shifted[1] += 1;
        let dec = height_down(&lambda, &w(&shifted)).unwrap();
        prop_assert_eq!(dec.height, Rational64::from_integer(1));
        prop_assert!(dec.is_integral());
    }

    #[test]
    fn dominance_is_antisymmetric(n in 0u64..7, d in 2usize..4, i in 0usize..50, j in 0usize..50) {
        let ws = sym_weights(n, d);
        let a = &ws[i % ws.len()];
        let b = &ws[j % ws.len()];
        if weight_leq(a, b).unwrap() && weight_leq(b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn mismatched_sums_are_rejected(v in prop::collection::vec(0i64..9, 3), extra in 1i64..5) {
        let mut u = v.clone();
        u[0] += extra;
        prop_assert!(height_down(&w(&v), &w(&u)).is_err());
        prop_assert!(height_up(&w(&v), &w(&u)).is_err());
    }
}
