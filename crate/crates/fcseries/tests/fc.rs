use fcseries::convergence::sufficient_simplex;
use fcseries::fc::*;
use fcseries::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn fc_number_examples() {
    assert_eq!(fc_number(FcParams::new(2.0, 1.0), 4), 14.0);
    assert_eq!(fc_number(FcParams::new(7.3, -2.1), 0), 1.0);
    assert!((fc_number(FcParams::new(3.0, 1.0), 2) - 3.0).abs() < 1e-15);
    assert_eq!(fc_number_exact(&q(3, 1), &q(1, 1), 2), q(3, 1));
    // A_6(3,1) = binom(18,6)/13
    assert_eq!(fc_number_exact(&q(3, 1), &q(1, 1), 6), q(1428, 1));
}

#[test]
fn fc_multi_examples() {
    let p = MultiFcParams::new(vec![2.0, 3.0], 1.0);
    assert!((fc_multi(&p, &[1, 1]).unwrap() - 5.0).abs() < 1e-14);
    assert_eq!(fc_multi(&p, &[0, 0]).unwrap(), 1.0);
    let p3 = MultiFcParams::new(vec![2.0, 2.0, 2.0], 1.0);
    assert!((fc_multi(&p3, &[1, 0, 1]).unwrap() - 4.0).abs() < 1e-14);
    assert!(fc_multi(&p, &[1, 1, 1]).is_err());
    let mu = [q(2, 1), q(3, 1)];
    assert_eq!(fc_multi_exact(&mu, &q(1, 1), &[1, 1]).unwrap(), q(5, 1));
}

#[test]
fn compositions_examples() {
    let two: Vec<Vec<u64>> = compositions(2, 2).collect();
    assert_eq!(two, [vec![0, 2], vec![1, 1], vec![2, 0]]);
    assert_eq!(compositions(0, 3).collect::<Vec<_>>(), [vec![0, 0, 0]]);
    assert_eq!(compositions(3, 3).count(), 10);
    for (t, k) in [(5u64, 1usize), (4, 4), (7, 3)] {
        let all: Vec<Vec<u64>> = compositions(t, k).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all
            .iter()
            .all(|v| v.len() == k && v.iter().sum::<u64>() == t));
    }
}

#[test]
fn genfun_examples() {
    let v = genfun_eval(FcParams::new(2.0, 1.0), c(0.2), 60);
    assert!(v.value.to_string().starts_with("1.3819660"));
    let closed = (1.0 - (1.0f64 - 0.8).sqrt()) / 0.4;
    assert!((v.value.re - closed).abs() <= v.tail_estimate);

    let v = genfun_eval(FcParams::new(-1.7, 0.4), c(0.0), 25);
    assert_eq!(v.value, c(1.0));

    let v = genfun_eval(FcParams::new(0.2, 0.2), c(0.1), 40).value;
    assert!((v.powi(5) - 1.0 - 0.1 * v).norm() < 1e-12);
}

#[test]
fn genfun_multi_examples() {
    let two = MultiFcParams::new(vec![2.0, 2.0], 1.0);
    let a = genfun_multi_eval(&two, &[c(0.1), c(0.1)], 60).unwrap();
    let b = genfun_eval(FcParams::new(2.0, 1.0), c(0.2), 60);
    assert!((a.value - b.value).norm() < 1e-14);

    let half = MultiFcParams::new(vec![0.5, 1.5], 1.0);
    assert_eq!(
        genfun_multi_eval(&half, &[c(0.0), c(0.0)], 10)
            .unwrap()
            .value,
        c(1.0)
    );

    let f = genfun_multi_eval(&half, &[c(0.2), c(0.1)], 80)
        .unwrap()
        .value;
    let res = f - 1.0 - 0.2 * near_one_pow(f, 0.5) - 0.1 * near_one_pow(f, 1.5);
    assert!(res.norm() < 1e-10);

    assert!(genfun_multi_eval(&half, &[c(0.1)], 10).is_err());
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

/// Every composition-wise index `u ≤ t`.
fn below(t: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &ti in t {
        out = out
            .into_iter()
            .flat_map(|pre| {
                (0..=ti).map(move |u| {
                    let mut v = pre.clone();
                    v.push(u);
                    v
                })
            })
            .collect();
    }
    out
}

fn indices(k: usize, max_level: u64) -> Vec<Vec<u64>> {
    (0..=max_level).flat_map(|t| compositions(t, k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_exact(mu in proptest::collection::vec(small_rational(), 1..=3), r in small_rational(), s in small_rational()) {
        let rs = &r + &s;
        for t in indices(mu.len(), 6) {
            let lhs = fc_multi_exact(&mu, &rs, &t).unwrap();
            let mut rhs = BigRational::zero();
            for u in below(&t) {
                let rest: Vec<u64> = t.iter().zip(&u).map(|(a, b)| a - b).collect();
                rhs += fc_multi_exact(&mu, &r, &u).unwrap() * fc_multi_exact(&mu, &s, &rest).unwrap();
            }
            prop_assert_eq!(lhs, rhs, "t = {:?}", t);
        }
    }

    #[test]
    fn recurrence_exact(mu in proptest::collection::vec(small_rational(), 1..=3), r in small_rational()) {
        let r1 = &r + BigRational::one();
        for t in indices(mu.len(), 6) {
            let mut rhs = fc_multi_exact(&mu, &r, &t).unwrap();
            for (j, mj) in mu.iter().enumerate() {
                if t[j] > 0 {
                    let mut down = t.clone();
                    down[j] -= 1;
                    rhs += fc_multi_exact(&mu, &(&r + mj), &down).unwrap();
                }
            }
            prop_assert_eq!(fc_multi_exact(&mu, &r1, &t).unwrap(), rhs, "t = {:?}", t);
        }
    }

    #[test]
    fn product_and_averaged_forms_agree(mu in proptest::collection::vec(small_rational(), 1..=3), r in small_rational()) {
        for t in indices(mu.len(), 6) {
            prop_assert_eq!(
                fc_multi_exact(&mu, &r, &t).unwrap(),
                fc_multi_exact_averaged(&mu, &r, &t).unwrap()
            );
        }
    }
}

/// A point with `Σ|z_j|` at half the sufficient radius.
fn half_radius_point(mu: &[f64], weights: &[f64], phases: &[f64]) -> Vec<Complex64> {
    let radius = sufficient_simplex(mu).unwrap().radius;
    let total: f64 = weights.iter().sum();
    weights
        .iter()
        .zip(phases)
        .map(|(w, ph)| Complex64::from_polar(0.5 * radius * w / total, *ph))
        .collect()
}

fn exponent() -> impl Strategy<Value = f64> {
    (-2.0..3.0f64).prop_filter("degenerate exponent", |m| {
        m.abs() > 1e-3 && (m - 1.0).abs() > 1e-3
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn power_law(
        mu in proptest::collection::vec(exponent(), 1..=3),
        r in -2.0..2.0f64,
        s in -2.0..2.0f64,
        weights in proptest::collection::vec(0.05..1.0f64, 3),
        phases in proptest::collection::vec(0.0..std::f64::consts::TAU, 3),
    ) {
        let k = mu.len();
        let z = half_radius_point(&mu, &weights[..k], &phases[..k]);
        let eval = |r: f64| genfun_multi_eval(&MultiFcParams::new(mu.clone(), r), &z, 60).unwrap().value;
        let err = (eval(r) * eval(s) - eval(r + s)).norm();
        prop_assert!(err < 1e-9, "err {err:e}");
    }

    #[test]
    fn functional_equation(
        mu in proptest::collection::vec(exponent(), 1..=3),
        weights in proptest::collection::vec(0.05..1.0f64, 3),
        phases in proptest::collection::vec(0.0..std::f64::consts::TAU, 3),
    ) {
        let k = mu.len();
        let z = half_radius_point(&mu, &weights[..k], &phases[..k]);
        let v = genfun_multi_eval(&MultiFcParams::new(mu.clone(), 1.0), &z, 60).unwrap();
        let f = v.value;
        let sum: Complex64 = z.iter().zip(&mu).map(|(zj, &m)| zj * near_one_pow(f, m)).sum();
        let res = (f - 1.0 - sum).norm();
        prop_assert!(res < v.tail_estimate + 1e-10, "residual {res:e}, tail {:e}", v.tail_estimate);
    }

    #[test]
    fn float_matches_exact(mu_n in -12i64..=12, mu_d in 1i64..=4, r_n in -8i64..=8, r_d in 1i64..=4, t in 0u64..25) {
        let exact = fc_number_exact(&q(mu_n, mu_d), &q(r_n, r_d), t);
        let float = fc_number(FcParams::new(mu_n as f64 / mu_d as f64, r_n as f64 / r_d as f64), t);
        let e: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        prop_assert!((float - e).abs() <= 1e-12 * e.abs().max(1.0), "{float} vs {e}");
    }
}
