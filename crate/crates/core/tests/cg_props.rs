use definetti_core::su2_cg::ClebschGordan;
use definetti_core::{BigRational, DeltaValue, Direction, SurdSum, TwoJ};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn t(doubled: i64) -> TwoJ {
    TwoJ::from_doubled(doubled)
}

/// Allowed `2j` for coupling `2j1` and `2j2`.
fn couplings(a: i64, b: i64) -> impl Iterator<Item = i64> {
    ((a - b).abs()..=a + b).step_by(2)
}

fn projections(a: i64) -> impl Iterator<Item = i64> {
    (-a..=a).step_by(2)
}

#[test]
fn orthogonality_is_exact() {
    let table = ClebschGordan::new(24);
    for a in 0..=12 {
        for b in 0..=12 {
            for m in projections(a + b) {
                let js: Vec<i64> = couplings(a, b).filter(|j| m.abs() <= *j).collect();
                for &j in &js {
                    for &jp in &js {
                        let mut acc = SurdSum::zero();
                        for m1 in projections(a) {
                            let m2 = m - m1;
                            if m2.abs() > b {
                                continue;
                            }
                            let x = table.cg(t(a), t(m1), t(b), t(m2), t(j), t(m)).unwrap();
                            let y = table.cg(t(a), t(m1), t(b), t(m2), t(jp), t(m)).unwrap();
                            acc = &acc + &(&x * &y).to_surd();
                        }
                        let expected = if j == jp { BigRational::one() } else { BigRational::zero() };
                        assert_eq!(
                            acc.as_rational(),
                            Some(expected),
                            "2j1={a} 2j2={b} 2m={m} 2j={j} 2j'={jp}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn completeness_is_exact() {
    let table = ClebschGordan::new(24);
    for a in 0..=12 {
        for b in 0..=12 {
            for m1 in projections(a) {
                for m2 in projections(b) {
                    let total = couplings(a, b).fold(BigRational::zero(), |acc, j| {
                        acc + table
                            .cg_squared(t(a), t(m1), t(b), t(m2), t(j), t(m1 + m2))
                            .unwrap()
                    });
                    assert_eq!(total, BigRational::one());
                }
            }
        }
    }
}

#[test]
fn delta_is_monotone_and_reaches_one() {
    let table = ClebschGordan::new(40);
    for a in 0..=20 {
        for b in 0..=20 {
            for j in couplings(a, b) {
                for m2 in projections(b) {
                    let curve = table
                        .deficit_curve(t(a), t(b), t(j), t(m2), a as u64, Direction::Down)
                        .unwrap();
                    for pair in curve.windows(2) {
                        assert!(pair[1] <= pair[0]);
                    }
                    assert!(curve.iter().all(|x| *x >= BigRational::zero()));
                    let full = table.delta(t(a), t(b), t(j), t(m2), a as u64, Direction::Down).unwrap();
                    assert_eq!(full.delta, DeltaValue::Exact(BigRational::one()));
                }
            }
        }
    }
}

#[test]
fn up_and_down_directions_mirror_each_other() {
    let table = ClebschGordan::new(24);
    for a in 0..=12 {
        for b in 0..=12 {
            for j in couplings(a, b) {
                for r in 0..=a as u64 {
                    let up = table.delta(t(a), t(b), t(j), t(-b), r, Direction::Up).unwrap();
                    let down = table.delta(t(a), t(b), t(j), t(b), r, Direction::Down).unwrap();
                    assert_eq!(up.delta, down.delta, "2j1={a} 2j2={b} 2j={j} r={r}");
                }
            }
        }
    }
}

#[test]
fn stretched_coupling_gives_dimension_ratio() {
    let table = ClebschGordan::new(80);
    for a in 0..=40 {
        for b in 0..=40 {
            let d = table.delta(t(a), t(b), t(a + b), t(b), 0, Direction::Down).unwrap();
            assert_eq!(
                d.delta,
                DeltaValue::Exact(BigRational::new((b + 1).into(), (a + b + 1).into()))
            );
        }
    }
}

proptest! {
    #[test]
    fn coefficient_squares_lie_in_unit_interval(
        a in 0i64..30, b in 0i64..30, jsel in 0usize..64, m1sel in 0usize..64, m2sel in 0usize..64
    ) {
        let js: Vec<i64> = couplings(a, b).collect();
        let j = js[jsel % js.len()];
        let m1s: Vec<i64> = projections(a).collect();
        let m2s: Vec<i64> = projections(b).collect();
        let (m1, m2) = (m1s[m1sel % m1s.len()], m2s[m2sel % m2s.len()]);
        let table = ClebschGordan::new(a + b);
        let sq = table.cg_squared(t(a), t(m1), t(b), t(m2), t(j), t(m1 + m2)).unwrap();
        prop_assert!(sq >= BigRational::zero() && sq <= BigRational::one());
    }

    #[test]
    fn wrong_projection_sum_is_zero(a in 0i64..10, b in 0i64..10, shift in 1i64..3) {
        let table = ClebschGordan::new(a + b + 4);
        let m = a + b - 2 * shift;
        let x = table.cg(t(a), t(a), t(b), t(b), t(a + b), t(m)).unwrap();
        prop_assert!(x.is_zero());
    }

    #[test]
    fn swapping_factors_gives_phase(a in 0i64..12, b in 0i64..12, m1sel in 0usize..32, m2sel in 0usize..32, jsel in 0usize..32) {
        // ⟨j1 m1 j2 m2|j m⟩ = (-1)^{j1+j2-j} ⟨j2 m2 j1 m1|j m⟩
        let js: Vec<i64> = couplings(a, b).collect();
        let j = js[jsel % js.len()];
        let m1s: Vec<i64> = projections(a).collect();
        let m2s: Vec<i64> = projections(b).collect();
        let (m1, m2) = (m1s[m1sel % m1s.len()], m2s[m2sel % m2s.len()]);
        let table = ClebschGordan::new(a + b);
        let x = table.cg(t(a), t(m1), t(b), t(m2), t(j), t(m1 + m2)).unwrap();
        let y = table.cg(t(b), t(m2), t(a), t(m1), t(j), t(m1 + m2)).unwrap();
        let phase_odd = ((a + b - j) / 2) % 2 == 1;
        prop_assert_eq!(x, if phase_odd { -y } else { y });
    }
}
