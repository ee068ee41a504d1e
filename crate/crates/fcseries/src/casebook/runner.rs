//! Runs the named cases and reports pass/fail with the largest error seen.

use super::*;
use crate::{Complex64, FcError, Result};
use num_rational::BigRational;

fn worst(errors: impl IntoIterator<Item = f64>) -> f64 {
    errors.into_iter().fold(
        0.0,
        |a: f64, e| if e.is_nan() { f64::INFINITY } else { a.max(e) },
    )
}

fn bring_jerrard_case() -> Result<CaseReport> {
    let gammas = [
        Complex64::new(0.6, 0.0),
        Complex64::new(0.0, 0.8),
        Complex64::new(-0.7, 0.0),
        Complex64::new(0.4, 0.0),
        Complex64::from_polar(0.3, std::f64::consts::FRAC_PI_3),
    ];
    let mut errors = Vec::new();
    let mut regimes_ok = true;
    for (i, &g) in gammas.iter().enumerate() {
        let r = bring_jerrard_roots(g, None)?;
        regimes_ok &= r.regime
            == if i < 3 {
                BjRegime::Large
            } else {
                BjRegime::Split
            };
        errors.push(r.max_oracle_error);
    }
    let thr = (engine_threshold()? - bring_jerrard_threshold()).abs();
    let err = worst(errors);
    Ok(CaseReport::new(
        "bring-jerrard",
        regimes_ok && err < 1e-8 && thr < 1e-12,
        err.max(thr),
        &[
            "five roots from the (0,5) series for |γ| ≥ 4/5^{5/4}",
            "one (0,1) root and four (1,5) roots below the threshold",
        ],
    ))
}

fn trinomial_case() -> Result<CaseReport> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // |b|^m/|a|^{m+n} at twice the critical ratio for (m, n) = (2, 3)
    let crit: f64 = 4.0 * 27.0 / 3125.0;
    let b23 = Complex64::from_polar((2.0 * crit).sqrt(), 0.7);
    let specs = [
        TrinomialSpec {
            m: 4,
            n: 1,
            a: c(-1.0, 0.0),
            b: c(0.6, 0.0),
        },
        TrinomialSpec {
            m: 4,
            n: 1,
            a: c(-1.0, 0.0),
            b: c(0.4, 0.0),
        },
        TrinomialSpec {
            m: 2,
            n: 3,
            a: c(1.0, 0.0),
            b: b23,
        },
        TrinomialSpec {
            m: 3,
            n: 2,
            a: c(0.5, 0.2),
            b: c(0.1, -0.05),
        },
    ];
    let mut errors = Vec::new();
    for s in specs {
        let r = trinomial_roots(s, None)?;
        errors.push(r.max_oracle_error);
        errors.push(r.fourth_series_deviation);
    }
    let fourth_exact = (1..=4).all(|m| (1..=4).all(|n| fourth_series_coefficients_agree(m, n)));

    let lam = lambert_check(3, 2, 0.3, 20)?;
    let cat = lambert_check(2, 1, 0.2, 20)?;
    let q = |v: i64| BigRational::from_integer(v.into());
    let eul = euler_check(&q(3), &q(1), &q(1), 20)?;
    let ram = ramanujan_check(2.0, 3.0, 1.0, 0.1, 20)?;
    let ram0 = ramanujan_check(2.0, 3.0, 0.0, 0.1, 20)?;
    errors.extend([
        lam.series_error,
        cat.series_error,
        ram.max_term_deviation,
        ram.radius_deviation,
    ]);
    errors.push(ram.oracle_error.unwrap_or(f64::NAN));
    let exact = lam.coefficient_mismatches == 0
        && cat.coefficient_mismatches == 0
        && eul.mismatches == 0
        && ram.exact_mismatches == 0
        && ram0.oracle_error == Some(0.0)
        && lam.printed_form_error > 1e-3;
    let err = worst(errors);
    Ok(CaseReport::new(
        "trinomial",
        fourth_exact && exact && err < 1e-8,
        err,
        &[
            "three series cover all m+n roots of x^{m+n} + a x^n + b",
            "the fourth series equals the second termwise",
            "Lambert x^n = q^n B(m; n; q^{m-1})",
            "Euler's coefficients are FC numbers",
            "Ramanujan's Γ form equals A_k(p/q, n/q)(-qa)^k",
        ],
    ))
}

fn cubic_case() -> Result<CaseReport> {
    let t = cubic_domain_table()?;
    let err = (t.axis_b1 - 2.0)
        .abs()
        .max((t.axis_b3 - (4.0f64 / 27.0).sqrt()).abs());
    Ok(CaseReport::new(
        "cubic-table",
        t.matches_expected
            && t.original_d02_rejects_origin
            && t.original_d02_slice_hits == 0
            && err < 1e-9,
        err,
        &[
            "corrected cubic domains",
            "original D02 excludes the origin",
        ],
    ))
}

fn principal_case() -> Result<CaseReport> {
    let t = principal_quintic_domains()?;
    let brioschi = quintic_discriminant_matches(&[0, 1, 3, 5], BRIOSCHI_DISCRIMINANT, 1)?;
    Ok(CaseReport::new(
        "principal-quintic",
        t.matches_expected && t.discriminant_matches && brioschi,
        0.0,
        &[
            "principal quintic domains",
            "discriminants with a5 factored out",
        ],
    ))
}

/// `|C|` samples, log-spaced over `[1e-5, 1e-2]`.
pub fn brioschi_samples(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| 10f64.powf(-5.0 + 3.0 * i as f64 / (count - 1) as f64))
        .collect()
}

fn brioschi_case() -> Result<CaseReport> {
    let (lower, upper) = brioschi_thresholds();
    let conds = brioschi_conditions()?;
    let find = |pivot: (usize, usize), id: &str| {
        conds
            .iter()
            .find(|c| c.pivot == pivot && c.member == id)
            .and_then(|c| c.threshold)
            .ok_or_else(|| FcError::Inconsistent(format!("no threshold for {id}")))
    };
    let up = find((0, 1), "psi+01(-b3,-b5)")?;
    let lo = find((0, 5), "psi+05(-b1,-b3)")?;
    let rel = ((up - upper) / upper)
        .abs()
        .max(((lo - lower) / lower).abs());
    let mut ok = rel < 1e-10;
    let mut errors = vec![rel];
    let mut samples = brioschi_samples(20);
    samples.push(1.0 / 1728.0);
    for c in samples {
        let v = brioschi_analysis(Complex64::new(c, 0.0))?;
        let in_gap = (lower..=upper).contains(&c);
        ok &= v.covered != in_gap;
        for key in ["(1,3)", "(3,5)"] {
            ok &= v.per_pivot.get(key) == Some(&PivotVerdict::NeverConverges);
        }
        ok &= !matches!(
            v.per_pivot.get("(0,3)"),
            Some(PivotVerdict::ConvergesWithRoots(_))
        );
        if v.covered {
            errors.push(v.max_oracle_error);
            ok &= v.max_oracle_error < 1e-8;
        }
    }
    Ok(CaseReport::new(
        "brioschi",
        ok,
        worst(errors),
        &[
            "(0,1)+(1,5) converge iff 1 + 29376|C| - 36578304|C|^2 <= 0",
            "(0,5) converges iff 1 - 29376|C| - 36578304|C|^2 >= 0",
            "no convergent series on the gap between the roots",
        ],
    ))
}

fn identities_case() -> Result<CaseReport> {
    let checks = identity_suite();
    let failed = checks.iter().filter(|c| !c.passed()).count();
    Ok(CaseReport::new(
        "identities",
        failed == 0,
        failed as f64,
        &[
            "power law, convolution and recurrence",
            "Mohanty's weighted convolution and its specializations",
            "Gould's numbers",
            "Kahkeshani's generalized Catalan numbers",
            "Aval's multivariate Fuss-Catalan numbers",
        ],
    ))
}

fn sturmfels_case() -> Result<CaseReport> {
    let r = sturmfels_checks()?;
    let err = (r.m_constant - 1.0).abs().max(r.root_error);
    Ok(CaseReport::new(
        "sturmfels",
        r.pivot01_matches && r.pivot05_matches && err < 1e-10,
        err,
        &[
            "root X_{1,-1} expansion",
            "X_{5,ξ} leading terms",
            "constant M for the unit-length triangulation",
        ],
    ))
}

pub fn run_case(name: &str) -> Result<CaseReport> {
    match name {
        "bring-jerrard" => bring_jerrard_case(),
        "trinomial" => trinomial_case(),
        "cubic-table" => cubic_case(),
        "principal-quintic" => principal_case(),
        "brioschi" => brioschi_case(),
        "identities" => identities_case(),
        "sturmfels" => sturmfels_case(),
        other => Err(FcError::OutOfRange(format!(
            "unknown case {other}; expected one of {}",
            CASE_NAMES.join(", ")
        ))),
    }
}

/// All cases, each on its own thread, reported in `CASE_NAMES` order.
pub fn run_casebook() -> Vec<Result<CaseReport>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CASE_NAMES
            .iter()
            .map(|n| s.spawn(move || run_case(n)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(FcError::Inconsistent("case panicked".into())))
            })
            .collect()
    })
}
