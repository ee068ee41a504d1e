use fcseries::algebraic::oracle_roots;
use fcseries::casebook::*;
use fcseries::fc::fc_number_exact;
use fcseries::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn bring_jerrard_large_gamma_uses_one_pivot() {
    let r = bring_jerrard_roots(c(0.6, 0.0), None).unwrap();
    assert_eq!(r.regime, BjRegime::Large);
    assert_eq!(r.roots.len(), 5);
    assert!(r.roots.iter().all(|x| x.0 == (0, 5)));
    assert!(r.max_oracle_error < 1e-8, "{}", r.max_oracle_error);
}

#[test]
fn bring_jerrard_small_gamma_splits() {
    let r = bring_jerrard_roots(c(0.4, 0.0), None).unwrap();
    assert_eq!(r.regime, BjRegime::Split);
    let from01 = r.roots.iter().filter(|x| x.0 == (0, 1)).count();
    let from15 = r.roots.iter().filter(|x| x.0 == (1, 5)).count();
    assert_eq!((from01, from15), (1, 4));
    assert!(r.max_oracle_error < 1e-8);
}

#[test]
fn bring_jerrard_small_gamma_approaches_factored_roots() {
    let r = bring_jerrard_roots(c(1e-4, 0.0), None).unwrap();
    let limit = [
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
    ];
    assert!(max_root_error(&r.values(), &limit) < 1e-3);
    let z = bring_jerrard_roots(c(0.0, 0.0), None).unwrap();
    assert_eq!(z.regime, BjRegime::Factored);
    assert!(max_root_error(&z.values(), &limit) < 1e-15);
}

#[test]
fn bring_jerrard_threshold_value() {
    assert!((bring_jerrard_threshold() - 0.534992).abs() < 1e-6);
    assert!((engine_threshold().unwrap() - bring_jerrard_threshold()).abs() < 1e-12);
}

#[test]
fn bring_jerrard_at_threshold_tries_both() {
    let r = bring_jerrard_roots(c(bring_jerrard_threshold(), 0.0), None).unwrap();
    assert_eq!(r.regime, BjRegime::Threshold);
    assert!(!r.warnings.is_empty());
    assert_eq!(r.roots.len(), 5);
}

#[test]
fn trinomial_with_m4_n1_is_bring_jerrard() {
    for g in [0.6, 0.4] {
        let spec = TrinomialSpec {
            m: 4,
            n: 1,
            a: c(-1.0, 0.0),
            b: c(g, 0.0),
        };
        let t = trinomial_roots(spec, None).unwrap();
        let bj = bring_jerrard_roots(c(g, 0.0), None).unwrap();
        assert!(max_root_error(&t.values(), &bj.values()) < 1e-8);
    }
}

#[test]
fn trinomial_above_critical_ratio_uses_first_series() {
    let crit: f64 = 4.0 * 27.0 / 3125.0;
    let spec = TrinomialSpec {
        m: 2,
        n: 3,
        a: c(1.0, 0.0),
        b: Complex64::from_polar((2.0 * crit).sqrt(), 0.7),
    };
    let r = trinomial_roots(spec, None).unwrap();
    assert_eq!(r.regime, TrinomialRegime::First);
    assert_eq!(r.roots.len(), 5);
    assert!(r.roots.iter().all(|x| x.0 == 1));
    assert!(r.max_oracle_error < 1e-8);
}

#[test]
fn trinomial_below_critical_ratio_uses_second_and_third() {
    let spec = TrinomialSpec {
        m: 3,
        n: 2,
        a: c(0.5, 0.2),
        b: c(0.1, -0.05),
    };
    let r = trinomial_roots(spec, None).unwrap();
    assert_eq!(r.regime, TrinomialRegime::SecondThird);
    assert_eq!(r.roots.iter().filter(|x| x.0 == 2).count(), 2);
    assert_eq!(r.roots.iter().filter(|x| x.0 == 3).count(), 3);
    assert!(r.max_oracle_error < 1e-8);
    assert!(r.fourth_series_deviation < 1e-12);
}

#[test]
fn fourth_series_matches_second_exactly() {
    for m in 1..=5 {
        for n in 1..=5 {
            assert!(fourth_series_coefficients_agree(m, n), "m={m} n={n}");
        }
    }
}

#[test]
fn trinomial_rejects_zero_coefficients() {
    let spec = TrinomialSpec {
        m: 2,
        n: 1,
        a: c(0.0, 0.0),
        b: c(1.0, 0.0),
    };
    assert!(trinomial_roots(spec, None).is_err());
}

#[test]
fn lambert_m2_gives_catalan_numbers() {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
    for (t, &cn) in catalan.iter().enumerate() {
        assert_eq!(raney_number(2, 1, t as u64), q(cn, 1));
    }
    let r = lambert_check(2, 1, 0.2, 20).unwrap();
    assert_eq!(r.coefficient_mismatches, 0);
    assert!(r.series_error < 1e-12);
}

#[test]
fn lambert_needs_q_to_the_n() {
    let r = lambert_check(3, 2, 0.3, 20).unwrap();
    assert_eq!(r.coefficient_mismatches, 0);
    assert!(r.series_error < 1e-12);
    assert!(r.printed_form_error > 0.1);
}

#[test]
fn lambert_out_of_range_rejected() {
    assert!(lambert_check(2, 1, 0.3, 20).is_err());
    assert!((lambert_radius(2) - 0.25).abs() < 1e-15);
}

#[test]
fn euler_second_term() {
    let (alpha, beta, n) = (q(5, 2), q(-1, 3), q(7, 4));
    let printed = &n * (&n + &alpha + &beta) / q(2, 1);
    let d = &alpha - &beta;
    let fc = fc_number_exact(&(&alpha / &d), &(&n / &d), 2) * &d * &d;
    assert_eq!(euler_coefficient(&alpha, &beta, &n, 2), printed);
    assert_eq!(printed, fc);
}

#[test]
fn euler_three_one_exact() {
    let r = euler_check(&q(3, 1), &q(1, 1), &q(1, 1), 9).unwrap();
    assert_eq!(r.mismatches, 0);
    assert_eq!(r.max_deviation, 0.0);
    assert!(euler_check(&q(2, 1), &q(2, 1), &q(1, 1), 4).is_err());
}

#[test]
fn ramanujan_terms_agree() {
    let r = ramanujan_check(2.0, 3.0, 1.0, 0.1, 20).unwrap();
    assert!(r.max_term_deviation < 1e-12);
    assert_eq!(r.exact_mismatches, 0);
    assert!(r.radius_deviation < 1e-12);
    assert!(r.oracle_error.unwrap() < 1e-10);
}

#[test]
fn ramanujan_n0_is_one() {
    let r = ramanujan_check(2.0, 3.0, 0.0, 0.1, 20).unwrap();
    assert_eq!(r.oracle_error, Some(0.0));
    assert_eq!(gamma_term(2.0, 3.0, 0.0, 0.1, 0), 1.0);
    for k in 1..10 {
        assert_eq!(gamma_term(2.0, 3.0, 0.0, 0.1, k), 0.0);
    }
}

#[test]
fn ramanujan_radius_and_rejection() {
    let r = ramanujan_check(2.0, 3.0, 1.0, 0.1, 5).unwrap();
    let printed = 2f64.powf(-2.0 / 3.0) * 1f64;
    assert!((r.radius - printed).abs() < 1e-12);
    assert!(ramanujan_check(2.0, 3.0, 1.0, 0.7, 5).is_err());
}

#[test]
fn cubic_table_matches_corrected_form() {
    let t = cubic_domain_table().unwrap();
    assert!(t.matches_expected, "{:#?}", t.formulas);
    let d02 = t.formulas.iter().find(|f| f.pivot == (0, 2)).unwrap();
    assert_eq!(
        d02.render(),
        "D02 = {psi+02(+b1,+b3) >= 0} ∩ {psi-02(+b1,+b3) <= 0}"
    );
    let d23 = t.formulas.iter().find(|f| f.pivot == (2, 3)).unwrap();
    assert_eq!(d23.conditions.len(), 1);
    assert!(d23.conditions[0].0.starts_with("psi+"));
    assert!((t.axis_b1 - 2.0).abs() < 1e-9);
}

#[test]
fn original_d02_rejects_origin() {
    assert!(!original_d02_accepts(0.0, 0.0).unwrap());
    let t = cubic_domain_table().unwrap();
    assert!(t.original_d02_rejects_origin);
    assert_eq!(t.original_d02_slice_hits, 0);
}

#[test]
fn principal_quintic_table() {
    let t = principal_quintic_domains().unwrap();
    assert!(t.matches_expected);
    assert!(t.discriminant_matches);
    let d05 = t.formulas.iter().find(|f| f.pivot == (0, 5)).unwrap();
    assert_eq!(d05.render(), "D05 = {psi+05(-b1,-b2) >= 0}");
    let d02 = t.formulas.iter().find(|f| f.pivot == (0, 2)).unwrap();
    assert_eq!(d02.conditions.len(), 2);
}

#[test]
fn brioschi_discriminant_matches_printed() {
    assert!(quintic_discriminant_matches(&[0, 1, 3, 5], BRIOSCHI_DISCRIMINANT, 1).unwrap());
    assert!(
        !quintic_discriminant_matches(&[0, 1, 3, 5], PRINCIPAL_DISCRIMINANT, 1).unwrap_or(false)
    );
}

#[test]
fn brioschi_thresholds_are_the_printed_roots() {
    let (lo, hi) = brioschi_thresholds();
    let den = 32.0 * 27.0 * 49.0;
    let s = 2f64.sqrt();
    assert!(((13.0 * s - 17.0) / den - lo).abs() / lo < 1e-12);
    assert!(((13.0 * s + 17.0) / den - hi).abs() / hi < 1e-12);
    assert!((lo - 0.327e-4).abs() < 1e-7);
    assert!((hi - 8.358e-4).abs() < 1e-7);
}

#[test]
fn brioschi_verdicts() {
    let big = brioschi_analysis(c(1e-3, 0.0)).unwrap();
    assert!(big.covered);
    assert_eq!(big.per_pivot["(0,1)"], PivotVerdict::ConvergesWithRoots(1));
    assert_eq!(big.per_pivot["(1,5)"], PivotVerdict::ConvergesWithRoots(4));
    assert_eq!(big.roots.len(), 5);
    assert!(big.max_oracle_error < 1e-8);

    let small = brioschi_analysis(c(1e-5, 0.0)).unwrap();
    assert!(small.covered);
    assert_eq!(
        small.per_pivot["(0,5)"],
        PivotVerdict::ConvergesWithRoots(5)
    );
    assert!(small.max_oracle_error < 1e-8);

    let gap = brioschi_analysis(c(2e-4, 0.0)).unwrap();
    assert!(!gap.covered);
    assert!(gap.roots.is_empty());
    for v in [&big, &small, &gap] {
        assert_eq!(v.per_pivot["(1,3)"], PivotVerdict::NeverConverges);
        assert_eq!(v.per_pivot["(3,5)"], PivotVerdict::NeverConverges);
    }
}

#[test]
fn brioschi_oracle_roots_count() {
    let eq = brioschi_equation(c(1e-3, 0.0)).unwrap();
    assert_eq!(oracle_roots(&eq).unwrap().len(), 5);
}

#[test]
fn gould_example() {
    let g = gould_g(&q(2, 1), &[3], &[q(4, 1)], &q(2, 1));
    assert_eq!(g, q(40, 1));
    assert_eq!(g, q(8, 1) * fc_number_exact(&q(2, 1), &q(1, 1), 3));
}

#[test]
fn aval_trivial_cases() {
    // p = 1 means no k entries
    for n in 1..6 {
        assert_eq!(aval(n, &[]), q(1, 1));
    }
    assert_eq!(aval(3, &[0]), q(1, 1));
}

#[test]
fn kahkeshani_small() {
    // m = 2 gives the Catalan numbers
    for (n, cn) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14)] {
        assert_eq!(kahkeshani(2, n), q(cn, 1));
    }
}

#[test]
fn identity_suite_passes() {
    let checks = identity_suite_with(7, 5);
    assert!(checks.iter().all(|c| c.cases > 0));
    for c in &checks {
        assert!(
            c.passed(),
            "{} failed {} of {}",
            c.name,
            c.failures,
            c.cases
        );
    }
    assert!(checks.iter().any(|c| c.expect_failure && c.failures > 0));
}

#[test]
fn sturmfels_expansion() {
    let r = sturmfels_checks().unwrap();
    assert!(r.pivot01_matches);
    assert!(r.pivot05_matches);
    let coefs: Vec<&str> = r
        .pivot01_terms
        .iter()
        .map(|t| t.coefficient.as_str())
        .collect();
    assert_eq!(coefs, ["1", "1", "-1", "1", "-1", "2", "-5"]);
    assert!((r.m_constant - 1.0).abs() < 1e-15);
    assert!(r.root_error < 1e-12);
}

#[test]
fn m_constant_for_coarser_triangulation() {
    // edge (0, 5) alone: min over k of k^k (5-k)^{5-k} / 5^5, at k = 2
    let m = sturmfels_m_constant(5, &[0, 5]);
    assert!((m - 4.0 * 27.0 / 3125.0 / 4.0).abs() < 1e-15);
}

#[test]
fn casebook_names_and_unknown_case() {
    assert_eq!(CASE_NAMES.len(), 7);
    assert!(run_case("nope").is_err());
    let r = run_case("sturmfels").unwrap();
    assert!(r.passed());
    assert!(!r.citations.is_empty());
}
