//! The Brioschi quintic `x^5 - 10C x^3 + 45C^2 x - C^2 = 0`.

use super::max_root_error;
use crate::algebraic::{
    converge_branch, oracle_roots, scale_equation, AlgebraicEquation, PivotChoice,
};
use crate::discriminant::build_family_with_support;
use crate::domain::{box_bound, member};
use crate::multipoly::MultiPoly;
use crate::{Complex64, FcError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

pub const SUPPORT: [usize; 4] = [0, 1, 3, 5];
/// Power of `C` carried by each coefficient.
const C_POWER: [(usize, i64); 4] = [(0, 2), (1, 2), (3, 1), (5, 0)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PivotVerdict {
    ConvergesWithRoots(usize),
    /// A coefficient independent of `C` already violates the box bound.
    NeverConverges,
    OutsideDomain,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrioschiVerdict {
    pub c: Complex64,
    pub per_pivot: BTreeMap<String, PivotVerdict>,
    pub covered: bool,
    /// Series roots along the covering chain, when there is one.
    pub roots: Vec<Complex64>,
    pub max_oracle_error: f64,
}

pub fn brioschi_equation(c: Complex64) -> Result<AlgebraicEquation> {
    let z = Complex64::new(0.0, 0.0);
    AlgebraicEquation::new(vec![
        -c * c,
        45.0 * c * c,
        z,
        -10.0 * c,
        z,
        Complex64::new(1.0, 0.0),
    ])
}

fn pivots() -> Vec<PivotChoice> {
    let mut out = Vec::new();
    for (i, &p) in SUPPORT.iter().enumerate() {
        for &q in &SUPPORT[i + 1..] {
            out.push(PivotChoice { p, q });
        }
    }
    out
}

fn c_power(j: usize) -> i64 {
    C_POWER
        .iter()
        .find(|(s, _)| *s == j)
        .map(|(_, e)| *e)
        .unwrap_or(0)
}

/// Exponent of `|C|` in the scaled amplitude `|b_j|` for `pivot`.
fn amplitude_exponent(pivot: PivotChoice, j: usize) -> BigRational {
    let (p, q) = (pivot.p as i64, pivot.q as i64);
    let ep = c_power(pivot.p);
    let eq = c_power(pivot.q);
    BigRational::from_integer((c_power(j) - ep).into())
        + BigRational::new(((j as i64 - p) * (ep - eq)).into(), (q - p).into())
}

/// `(lower, upper)` ends of the gap: `(∓17 + 13√2) / (32·27·49)`.
pub fn brioschi_thresholds() -> (f64, f64) {
    let s = 13.0 * std::f64::consts::SQRT_2;
    let d = 32.0 * 27.0 * 49.0;
    ((s - 17.0) / d, (s + 17.0) / d)
}

pub fn brioschi_analysis(c: Complex64) -> Result<BrioschiVerdict> {
    if c.norm() == 0.0 || !c.is_finite() {
        return Err(FcError::OutOfRange("C must be nonzero and finite".into()));
    }
    let eq = brioschi_equation(c)?;
    let mut per_pivot = BTreeMap::new();
    let mut converging = Vec::new();
    for pivot in pivots() {
        let s = scale_equation(&eq, pivot)?;
        let family = build_family_with_support(pivot, 5, &SUPPORT)?;
        let amps = s.amplitudes();
        let bounds = box_bound(&family)?;
        let never = family
            .free
            .iter()
            .zip(amps.iter().zip(&bounds))
            .any(|(&j, (a, b))| amplitude_exponent(pivot, j).is_zero() && a > b);
        let verdict = if never {
            PivotVerdict::NeverConverges
        } else if member(&amps, &family)?.inside {
            converging.push(pivot);
            PivotVerdict::ConvergesWithRoots(pivot.gap())
        } else {
            PivotVerdict::OutsideDomain
        };
        per_pivot.insert(format!("({},{})", pivot.p, pivot.q), verdict);
    }

    let chain = covering_chain(&converging);
    let (roots, max_oracle_error) = match &chain {
        Some(chain) => {
            let mut roots = Vec::new();
            for &pivot in chain {
                let s = scale_equation(&eq, pivot)?;
                for l in 0..s.branch_count {
                    roots.push(converge_branch(&eq, &s, l)?.value);
                }
            }
            let err = max_root_error(&roots, &oracle_roots(&eq)?);
            (roots, err)
        }
        None => (Vec::new(), f64::NAN),
    };
    Ok(BrioschiVerdict {
        c,
        per_pivot,
        covered: chain.is_some(),
        roots,
        max_oracle_error,
    })
}

/// Pivots `(0,i1), (i1,i2), ..., (ik,5)` that all converge, if any.
fn covering_chain(converging: &[PivotChoice]) -> Option<Vec<PivotChoice>> {
    fn walk(from: usize, converging: &[PivotChoice]) -> Option<Vec<PivotChoice>> {
        if from == 5 {
            return Some(Vec::new());
        }
        // widest step first, matching the solver's pivot order
        let mut steps: Vec<&PivotChoice> = converging.iter().filter(|pv| pv.p == from).collect();
        steps.sort_by(|a, b| b.q.cmp(&a.q));
        for pv in steps {
            if let Some(mut rest) = walk(pv.q, converging) {
                rest.insert(0, *pv);
                return Some(rest);
            }
        }
        None
    }
    walk(0, converging)
}

/// `poly` along a monomial curve: variable `i` is `coef_i · w^{exp_i}`.
/// Returns the lowest power of `w` and the coefficients from there up.
pub fn curve_polynomial(poly: &MultiPoly, curve: &[(BigRational, i64)]) -> (i64, Vec<BigRational>) {
    let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (e, c) in poly.terms() {
        let mut v = BigRational::from_integer(c.clone());
        let mut power = 0i64;
        for (k, &ek) in e.iter().enumerate() {
            v *= curve[k].0.pow(ek as i32);
            power += curve[k].1 * ek as i64;
        }
        *acc.entry(power).or_insert_with(BigRational::zero) += v;
    }
    acc.retain(|_, v| !v.is_zero());
    let Some((&lo, _)) = acc.iter().next() else {
        return (0, vec![]);
    };
    let hi = *acc.keys().next_back().unwrap_or(&lo);
    let coeffs = (lo..=hi)
        .map(|k| acc.get(&k).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    (lo, coeffs)
}

/// `member_id` of the pivot's family along the Brioschi curve, as a
/// polynomial in `u = |C|` normalized to constant term 1.
fn threshold_polynomial(pivot: PivotChoice, member_id: &str) -> Result<Vec<BigRational>> {
    let family = build_family_with_support(pivot, 5, &SUPPORT)?;
    let m = family
        .member(member_id)
        .ok_or_else(|| FcError::Inconsistent(format!("no member {member_id}")))?;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let int = |n: BigInt| BigRational::from_integer(n);
    // parameter w with u = kappa w^d
    let (curve, d, kappa): (Vec<(BigRational, i64)>, i64, BigRational) = match (pivot.p, pivot.q) {
        // b3 = 10/(45^3 u), b5 = 1/(45^5 u^2)
        (0, 1) => (
            vec![
                (q(10, 1) / int(BigInt::from(45).pow(3)), -1),
                (q(1, 1) / int(BigInt::from(45).pow(5)), -2),
            ],
            1,
            q(1, 1),
        ),
        // w = u^{1/5}: b1 = 45 w^2, b3 = 10 w
        (0, 5) => (vec![(q(45, 1), 2), (q(10, 1), 1)], 5, q(1, 1)),
        // w = (u/10)^{1/3}: b1 = 45 w, b5 = 1/(100 w)
        (0, 3) => (vec![(q(45, 1), 1), (q(1, 100), -1)], 3, q(10, 1)),
        _ => {
            return Err(FcError::InvalidPivot {
                p: pivot.p,
                q: pivot.q,
                reason: "no rational curve".into(),
            })
        }
    };
    let (lo, coeffs) = curve_polynomial(&m.poly, &curve);
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (i, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = lo + i as i64;
        if k.rem_euclid(d) != lo.rem_euclid(d) {
            return Err(FcError::Inconsistent(
                "curve polynomial is not a polynomial in |C|".into(),
            ));
        }
        let m = (k - lo) / d;
        out.insert(m, c / kappa.pow(m as i32));
    }
    let top = *out.keys().next_back().unwrap_or(&0);
    let mut v: Vec<BigRational> = (0..=top)
        .map(|k| out.get(&k).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    let c0 = v[0].clone();
    if c0.is_zero() {
        return Err(FcError::Inconsistent(
            "curve polynomial vanishes at C = 0".into(),
        ));
    }
    for c in &mut v {
        *c = &*c / &c0;
    }
    Ok(v)
}

/// Positive root of a quadratic `c0 + c1 u + c2 u^2`, computed stably.
fn positive_quadratic_root(c: &[BigRational]) -> Option<f64> {
    if c.len() != 3 {
        return None;
    }
    let (a, b, c0) = (c[2].to_f64()?, c[1].to_f64()?, c[0].to_f64()?);
    let disc = b * b - 4.0 * a * c0;
    if disc < 0.0 {
        return None;
    }
    let qq = -0.5 * (b + b.signum() * disc.sqrt());
    let roots = [qq / a, c0 / qq];
    roots
        .into_iter()
        .filter(|r| *r > 0.0)
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.min(r))))
}

/// `1/k` when the normalized quadratic `c` is `(1 - k u)^2`.
fn square_point(c: &[BigRational]) -> Option<BigRational> {
    if c.len() != 3 || !c[0].is_one() {
        return None;
    }
    let k = -&c[1] / BigRational::from_integer(2.into());
    (c[2] == &k * &k && !k.is_zero()).then(|| k.recip())
}

/// Conditions on `|C|` derived from the binding members of one pivot.
#[derive(Debug, Clone, Serialize)]
pub struct CurveCondition {
    pub pivot: (usize, usize),
    pub member: String,
    /// Coefficients in ascending powers of `|C|`, constant term 1.
    pub polynomial: Vec<String>,
    /// Positive root where the sign changes, if any.
    pub threshold: Option<f64>,
    /// Double root where the polynomial only touches zero.
    pub touch_point: Option<String>,
}

/// Curve polynomials of the binding members for the pivots (0,1), (0,5)
/// and (0,3), whose amplitudes are monomials in a power of `|C|`.
pub fn brioschi_conditions() -> Result<Vec<CurveCondition>> {
    let mut out = Vec::new();
    for (p, q) in [(0, 1), (0, 5), (0, 3)] {
        let pivot = PivotChoice::new(p, q)?;
        let family = build_family_with_support(pivot, 5, &SUPPORT)?;
        for id in crate::domain::binding_members(&family, 48)? {
            let poly = threshold_polynomial(pivot, &id)?;
            let touch = square_point(&poly);
            out.push(CurveCondition {
                pivot: (p, q),
                member: id,
                polynomial: poly.iter().map(|c| c.to_string()).collect(),
                threshold: if touch.is_some() {
                    None
                } else {
                    positive_quadratic_root(&poly)
                },
                touch_point: touch.map(|t| t.to_string()),
            });
        }
    }
    Ok(out)
}
