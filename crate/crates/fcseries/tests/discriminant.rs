use fcseries::algebraic::PivotChoice;
use fcseries::discriminant::*;
use fcseries::multipoly::MultiPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn pv(p: usize, q: usize) -> PivotChoice {
    PivotChoice::new(p, q).unwrap()
}

fn poly(s: &str, names: &[&str]) -> MultiPoly {
    MultiPoly::parse(s, names).unwrap()
}

#[test]
fn cubic_02_members() {
    let f = build_family(pv(0, 2), 3).unwrap();
    let ids: Vec<&str> = f.members().map(|m| m.id.as_str()).collect();
    assert_eq!(
        ids,
        [
            "psi+02(+b1,+b3)",
            "psi+02(+b1,-b3)",
            "psi-02(+b1,+b3)",
            "psi-02(+b1,-b3)"
        ]
    );
    let m = f.member("psi+02(+b1,+b3)").unwrap();
    assert_eq!(
        m.poly,
        poly("27*b3^2 + 4*b1^3*b3 + 4 - 18*b1*b3 - b1^2", &["b1", "b3"])
    );
    assert_eq!(m.sigmas, vec![vec![1, 1], vec![-1, -1]]);
    assert_eq!(
        f.member("psi+02(+b1,-b3)").unwrap().sigmas,
        vec![vec![1, -1], vec![-1, 1]]
    );
    assert!(!f.reduced);
    assert_eq!(parity_check(&f).unwrap(), Parity::Disjoint);
    assert!(f.members().all(
        |m| m.origin_class == OriginClass::NonzeroConstant("4".into())
            || m.origin_class == OriginClass::NonzeroConstant("-4".into())
    ));
}

#[test]
fn cubic_01_origin_classes() {
    let f = build_family(pv(0, 1), 3).unwrap();
    assert_eq!(parity_check(&f).unwrap(), Parity::Identical);
    assert_eq!(f.plus_set.len(), 4);
    let class = |id: &str| f.member(id).unwrap().origin_class.clone();
    assert_eq!(class("psi+01(+b2,-b3)"), OriginClass::LocalMax);
    assert_eq!(class("psi+01(-b2,-b3)"), OriginClass::LocalMax);
    assert_eq!(class("psi+01(+b2,+b3)"), OriginClass::Saddle);
    assert_eq!(class("psi+01(-b2,+b3)"), OriginClass::Saddle);
    let m = f.member("psi+01(+b2,-b3)").unwrap();
    assert_eq!(m.origin_value, BigInt::from(0));
}

#[test]
fn quartic_12_reduced_member() {
    let f = build_family_with_support(pv(1, 2), 4, &[0, 1, 2, 4]).unwrap();
    assert!(f.reduced);
    let target = poly(
        "256*b0^3*b4^2 - 128*b0^2*b4 + 144*b0*b4 + 16*b0 - 27*b4 - 4",
        &["b0", "b4"],
    );
    let m = f
        .members()
        .find(|m| m.poly == target)
        .expect("printed member");
    assert_eq!(m.content, vec![0, 1]);
    assert_eq!(m.origin_value, BigInt::from(-4));
    for m in f.members() {
        assert!(m.content[1] >= 1, "every member carries the |a4| factor");
    }
}

#[test]
fn quartic_24_members() {
    let f = build_family_with_support(pv(2, 4), 4, &[0, 1, 2, 4]).unwrap();
    assert_eq!(f.members().count(), 4);
    assert!(f.members().all(|m| m.origin_value == BigInt::from(0)));
    assert_eq!(parity_check(&f).unwrap(), Parity::Disjoint);
    let m = f.member("psi-24(-b0,+b1)").unwrap();
    assert_eq!(
        m.poly,
        poly(
            "16*b0*(1-4*b0)^2 + 4*(1-36*b0)*b1^2 - 27*b1^4",
            &["b0", "b1"]
        )
    );
    assert_eq!(m.origin_class, OriginClass::LocalMin);
    // the corrected sign: every term negative, so no positive zero
    let n = f.member("psi+24(-b0,+b1)").unwrap();
    assert_eq!(
        n.poly,
        poly(
            "-16*b0*(1+4*b0)^2 - 4*(1+36*b0)*b1^2 - 27*b1^4",
            &["b0", "b1"]
        )
    );
    assert_eq!(n.origin_class, OriginClass::LocalMax);
}

#[test]
fn quadratic_and_fixed_slots() {
    let d = discriminant_symbolic(2, &BTreeMap::from([(0, 1), (2, 1)])).unwrap();
    assert_eq!(d, poly("4 - b1^2", &["b1"]));
    let d = discriminant_symbolic(4, &BTreeMap::from([(2, 1), (3, 0), (4, -1)])).unwrap();
    let f = build_family_with_support(pv(2, 4), 4, &[0, 1, 2, 4]).unwrap();
    let sub = d.transform(d.names().to_vec(), |e| {
        let k = if e[0] % 2 == 1 { -1 } else { 1 };
        Some((e.to_vec(), BigInt::from(k)))
    });
    assert_eq!(sub, f.member("psi-24(-b0,+b1)").unwrap().poly);
}

#[test]
fn parity_matches_gap_for_all_full_pivots() {
    for n in 2..=MAX_DEGREE {
        for p in 0..n {
            for q in p + 1..=n {
                let f = build_family(pv(p, q), n).unwrap();
                let expect = if (q - p) % 2 == 1 {
                    Parity::Identical
                } else {
                    Parity::Disjoint
                };
                assert_eq!(parity_check(&f).unwrap(), expect, "n={n} p={p} q={q}");
                assert!(f.plus_set.len() <= 1 << (n - 1));
            }
        }
    }
}

#[test]
fn reduced_members_are_content_free_and_not_identically_zero_on_axes() {
    for n in 2..=5 {
        for p in 0..n {
            for q in p + 1..=n {
                let f = build_family(pv(p, q), n).unwrap();
                for m in f.members() {
                    assert!(m.poly.monomial_content().iter().all(|&c| c == 0));
                    for v in 0..m.poly.nvars() {
                        let zeroed = m.poly.transform(m.poly.names().to_vec(), |e| {
                            (e[v] == 0).then(|| (e.to_vec(), BigInt::from(1)))
                        });
                        assert!(!zeroed.is_zero(), "{} vanishes with b{v}=0", m.id);
                    }
                }
            }
        }
    }
}

#[test]
fn power_substitution_identity() {
    assert!(power_substitution_discriminant(2, 2).unwrap());
    assert!(power_substitution_discriminant(3, 2).unwrap());
    assert!(power_substitution_discriminant(2, 3).unwrap());
    for n in 2..=6 {
        assert!(power_substitution_discriminant(n, 1).unwrap());
    }
    assert!(power_substitution_discriminant(4, 2).is_err());
}

#[test]
fn canonical_form_is_stable() {
    let d = discriminant_symbolic(3, &BTreeMap::from([(0, 1), (2, 1)])).unwrap();
    assert_eq!(
        d.canonical(),
        "4 * b1^3 * b3\n-1 * b1^2\n-18 * b1 * b3\n27 * b3^2\n4\n"
    );
}

proptest! {
    #[test]
    fn float_evaluation_matches_exact(
        n0 in -40i64..40, d0 in 1i64..30, n1 in -40i64..40, d1 in 1i64..30, n3 in -40i64..40, d3 in 1i64..30,
    ) {
        let d = discriminant_symbolic(4, &BTreeMap::from([(2, 1), (4, 1)])).unwrap();
        let xs = [(n0, d0), (n1, d1), (n3, d3)];
        let exact = d
            .eval_rational(&xs.map(|(a, b)| BigRational::new(a.into(), b.into())))
            .to_f64()
            .unwrap();
        let float = d.eval_f64(&xs.map(|(a, b)| a as f64 / b as f64));
        let scale: f64 = d
            .terms()
            .map(|(e, c)| {
                c.to_f64().unwrap().abs()
                    * e.iter().zip(&xs).map(|(&k, &(a, b))| (a as f64 / b as f64).abs().powi(k as i32)).product::<f64>()
            })
            .sum();
        prop_assert!((exact - float).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn generic_discriminant_detects_double_roots(r in -5i64..5, s in -5i64..5, t in -5i64..5) {
        // (x - r)^2 (x - s)(x - t) has zero discriminant
        let coeffs = [r * r * s * t, -(r * r * (s + t) + 2 * r * s * t), r * r + 2 * r * (s + t) + s * t, -(2 * r + s + t), 1];
        let d = generic_discriminant(4).unwrap();
        let x: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        prop_assert_eq!(d.eval_rational(&x), BigRational::from_integer(0.into()));
    }
}
