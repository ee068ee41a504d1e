//! Exact discriminants and the sign-substituted families used for domains.

use crate::algebraic::PivotChoice;
use crate::multipoly::MultiPoly;
use crate::{FcError, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OriginClass {
    NonzeroConstant(String),
    LocalMax,
    LocalMin,
    Saddle,
    Indeterminate,
}

impl OriginClass {
    pub fn is_extremum(&self) -> bool {
        matches!(self, OriginClass::LocalMax | OriginClass::LocalMin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Identical,
    Disjoint,
}

#[derive(Debug, Clone)]
pub struct PsiMember {
    pub id: String,
    /// Sign placed in the `q` slot.
    pub q_sign: i8,
    /// First sign tuple (in enumeration order) producing this member.
    pub sigma: Vec<i8>,
    /// Every sign tuple producing this member.
    pub sigmas: Vec<Vec<i8>>,
    /// Monomial factor divided out before storing `poly`.
    pub content: Vec<u32>,
    pub poly: MultiPoly,
    pub origin_value: BigInt,
    pub origin_class: OriginClass,
}

#[derive(Debug, Clone)]
pub struct PsiFamily {
    pub degree: usize,
    pub pivot: PivotChoice,
    /// Indices of the nonzero coefficients of the equation.
    pub support: Vec<usize>,
    /// Indices of the free amplitudes, in variable order.
    pub free: Vec<usize>,
    pub plus_set: Vec<PsiMember>,
    pub minus_set: Vec<PsiMember>,
    pub reduced: bool,
}

impl PsiFamily {
    pub fn members(&self) -> impl Iterator<Item = &PsiMember> {
        self.plus_set.iter().chain(self.minus_set.iter())
    }

    pub fn member(&self, id: &str) -> Option<&PsiMember> {
        self.members().find(|m| m.id == id)
    }

    pub fn var_names(&self) -> Vec<String> {
        self.free.iter().map(|j| format!("b{j}")).collect()
    }
}

fn check_degree(n: usize) -> Result<()> {
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(FcError::DegreeOutOfRange(n));
    }
    Ok(())
}

fn generic_names(n: usize) -> Vec<String> {
    (0..=n).map(|j| format!("a{j}")).collect()
}

/// Sylvester determinant by row-wise Laplace expansion over column subsets.
/// Every entry is `c · a_j`, so products are monomial shifts and no
/// division occurs.
fn sylvester_resultant(n: usize) -> MultiPoly {
    let names = generic_names(n);
    let size = 2 * n - 1;
    // entry (row, col) = (coefficient, variable index)
    let mut rows: Vec<Vec<Option<(i64, usize)>>> = Vec::with_capacity(size);
    for i in 0..n - 1 {
        let mut row = vec![None; size];
        for k in 0..=n {
            row[i + k] = Some((1, n - k));
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![None; size];
        for k in 0..n {
            let j = n - k;
            row[i + k] = Some((j as i64, j));
        }
        rows.push(row);
    }

    let mut level: HashMap<u32, MultiPoly> = HashMap::new();
    level.insert(0, MultiPoly::constant(names.clone(), 1));
    for row in &rows {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, f) in &level {
            for (c, entry) in row.iter().enumerate() {
                let Some((coef, var)) = *entry else { continue };
                if mask & (1 << c) != 0 {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let sign = if above % 2 == 0 { coef } else { -coef };
                let k = BigInt::from(sign);
                let shifted = f.transform(names.clone(), |e| {
                    let mut e = e.to_vec();
                    e[var] += 1;
                    Some((e, k.clone()))
                });
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| MultiPoly::zero(names.clone()));
                *slot = slot.add(&shifted);
            }
        }
        level = next;
    }
    level
        .remove(&((1u32 << size) - 1))
        .unwrap_or_else(|| MultiPoly::zero(names))
}

/// Generic discriminant `Res(P, P')/a_n` in the variables `a0..an`.
pub fn generic_discriminant(n: usize) -> Result<Arc<MultiPoly>> {
    check_degree(n)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MultiPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cache lock").get(&n) {
        return Ok(d.clone());
    }
    let res = sylvester_resultant(n);
    let mut unit = vec![0; n + 1];
    unit[n] = 1;
    let d = Arc::new(res.div_monomial(&unit)?);
    cache.lock().expect("cache lock").insert(n, d.clone());
    Ok(d)
}

/// The discriminant with the textbook sign, `(-1)^{n(n-1)/2} Res(P,P')/a_n`.
pub fn standard_discriminant(n: usize) -> Result<MultiPoly> {
    let d = generic_discriminant(n)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        d.neg()
    } else {
        (*d).clone()
    })
}

/// Substitutes integers for the slots in `fixed`; the remaining slots
/// become variables `b{j}` in increasing `j`.
pub fn discriminant_symbolic(n: usize, fixed: &BTreeMap<usize, i64>) -> Result<MultiPoly> {
    let generic = generic_discriminant(n)?;
    if let Some(&j) = fixed.keys().find(|&&j| j > n) {
        return Err(FcError::InvalidEquation(format!(
            "slot {j} exceeds degree {n}"
        )));
    }
    let free: Vec<usize> = (0..=n).filter(|j| !fixed.contains_key(j)).collect();
    let names: Vec<String> = free.iter().map(|j| format!("b{j}")).collect();
    Ok(generic.transform(names, |e| {
        let mut k = BigInt::one();
        for (&j, &v) in fixed {
            if e[j] > 0 {
                if v == 0 {
                    return None;
                }
                k *= BigInt::from(v).pow(e[j]);
            }
        }
        Some((free.iter().map(|&j| e[j]).collect(), k))
    }))
}

/// Pivot monomial `a_p^α a_q^β` of the discriminant, if present. It solves
/// both homogeneity constraints, and survives only when `a_p x^p + a_q x^q`
/// has no repeated root at zero or infinity.
pub fn pivot_monomial(n: usize, pivot: PivotChoice) -> Option<(u32, u32)> {
    if pivot.p > 1 || pivot.q + 1 < n {
        return None;
    }
    let (p, q) = (pivot.p as i64, pivot.q as i64);
    let n = n as i64;
    let num = (n - 1) * (n - 2 * p);
    if num % (q - p) != 0 {
        return None;
    }
    let beta = num / (q - p);
    let alpha = 2 * n - 2 - beta;
    (alpha >= 0 && beta >= 0).then_some((alpha as u32, beta as u32))
}

/// Checks that every monomial of the generic discriminant has total
/// degree `2n-2` and weight `n(n-1)`.
pub fn check_homogeneity(n: usize) -> Result<()> {
    let d = generic_discriminant(n)?;
    for (e, _) in d.terms() {
        let deg: u32 = e.iter().sum();
        let weight: usize = e.iter().enumerate().map(|(j, &k)| j * k as usize).sum();
        if deg as usize != 2 * n - 2 || weight != n * (n - 1) {
            return Err(FcError::Inconsistent(format!(
                "monomial {e:?} breaks homogeneity"
            )));
        }
    }
    Ok(())
}

pub fn build_family(pivot: PivotChoice, n: usize) -> Result<Arc<PsiFamily>> {
    build_family_with_support(pivot, n, &(0..=n).collect::<Vec<_>>())
}

/// Family for an equation whose nonzero coefficients sit at `support`.
/// Supports not spanning `0..=n` use the discriminant of the shifted,
/// lower-degree equation; slot names keep their original indices.
pub fn build_family_with_support(
    pivot: PivotChoice,
    n: usize,
    support: &[usize],
) -> Result<Arc<PsiFamily>> {
    check_degree(n)?;
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    if pivot.q > n || !support.contains(&pivot.p) || !support.contains(&pivot.q) {
        return Err(FcError::InvalidPivot {
            p: pivot.p,
            q: pivot.q,
            reason: "pivot slots must carry nonzero coefficients".into(),
        });
    }
    if support.iter().any(|&j| j > n) {
        return Err(FcError::InvalidEquation(
            "support exceeds the degree".into(),
        ));
    }

    type Key = (PivotChoice, usize, Vec<usize>);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<PsiFamily>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (pivot, n, support.clone());
    if let Some(f) = cache.lock().expect("cache lock").get(&key) {
        return Ok(f.clone());
    }
    let fam = Arc::new(construct_family(pivot, n, support)?);
    cache.lock().expect("cache lock").insert(key, fam.clone());
    Ok(fam)
}

fn construct_family(pivot: PivotChoice, n: usize, support: Vec<usize>) -> Result<PsiFamily> {
    let lo = support[0];
    let width = support[support.len() - 1] - lo;
    let generic = generic_discriminant(width)?;
    let free: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&j| j != pivot.p && j != pivot.q)
        .collect();
    let names: Vec<String> = free.iter().map(|j| format!("b{j}")).collect();
    let k = free.len();

    let mut sets: [Vec<PsiMember>; 2] = [Vec::new(), Vec::new()];
    let mut reduced = false;
    for (slot, q_sign) in [(0usize, 1i8), (1, -1)] {
        for code in 0..(1u32 << k) {
            // bit i set means a minus sign on free[i]; + comes first
            let sigma: Vec<i8> = (0..k)
                .map(|i| {
                    if code & (1 << (k - 1 - i)) != 0 {
                        -1
                    } else {
                        1
                    }
                })
                .collect();
            let full = generic.transform(names.clone(), |e| {
                let mut neg = false;
                for (i, &ei) in e.iter().enumerate() {
                    let j = i + lo;
                    if ei == 0 {
                        continue;
                    }
                    if !support.contains(&j) {
                        return None;
                    }
                    if j == pivot.q && q_sign < 0 && ei % 2 == 1 {
                        neg = !neg;
                    }
                }
                let mut out = Vec::with_capacity(k);
                for (i, &j) in free.iter().enumerate() {
                    if sigma[i] < 0 && e[j - lo] % 2 == 1 {
                        neg = !neg;
                    }
                    out.push(e[j - lo]);
                }
                Some((out, if neg { -BigInt::one() } else { BigInt::one() }))
            });
            let content = full.monomial_content();
            if content.iter().any(|&c| c > 0) {
                reduced = true;
            }
            let poly = full.without_monomial_content();
            let set = &mut sets[slot];
            if let Some(m) = set.iter_mut().find(|m| m.poly == poly) {
                m.sigmas.push(sigma);
                continue;
            }
            let origin_value = poly.constant_term();
            let origin_class = match origin_classify(&poly) {
                Ok(c) => c,
                Err(_) => OriginClass::Indeterminate,
            };
            set.push(PsiMember {
                id: member_id(pivot, q_sign, &free, &sigma),
                q_sign,
                sigmas: vec![sigma.clone()],
                sigma,
                content,
                poly,
                origin_value,
                origin_class,
            });
        }
    }
    let [plus_set, minus_set] = sets;
    Ok(PsiFamily {
        degree: n,
        pivot,
        support,
        free,
        plus_set,
        minus_set,
        reduced,
    })
}

fn member_id(pivot: PivotChoice, q_sign: i8, free: &[usize], sigma: &[i8]) -> String {
    let args: Vec<String> = free
        .iter()
        .zip(sigma)
        .map(|(j, s)| format!("{}b{j}", if *s > 0 { '+' } else { '-' }))
        .collect();
    format!(
        "psi{}{}{}({})",
        if q_sign > 0 { '+' } else { '-' },
        pivot.p,
        pivot.q,
        args.join(",")
    )
}

/// Sign of the lowest-order coefficient of `s ↦ P(d_1 s^{w_1}, ...)`.
fn probe_sign(terms: &[(Vec<u32>, i128)], weights: &[u32], scale: &[u32]) -> Option<i32> {
    let mut by_degree: BTreeMap<u32, i128> = BTreeMap::new();
    'terms: for (e, c) in terms {
        let mut deg = 0;
        let mut v = *c;
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            if weights[i] == 0 {
                continue 'terms;
            }
            deg += weights[i] * ei;
            v *= (scale[i] as i128).pow(ei);
        }
        *by_degree.entry(deg).or_insert(0) += v;
    }
    by_degree
        .into_values()
        .find(|c| *c != 0)
        .map(|c| c.signum() as i32)
}

/// Sign behaviour near the origin of the closed positive orthant.
///
/// Probes every coordinate subset along monomial curves with weights in
/// {1,2,3} and along rays with coefficients in {1,2}; all probes sharing
/// one sign give an extremum, mixed signs a saddle.
pub fn origin_classify(member: &MultiPoly) -> Result<OriginClass> {
    let c = member.constant_term();
    if !c.is_zero() {
        return Ok(OriginClass::NonzeroConstant(c.to_string()));
    }
    if member.is_zero() {
        return Err(FcError::Indeterminate("identically zero member".into()));
    }
    // probes multiply coefficients by at most 2^(degree), far inside i128
    let terms: Vec<(Vec<u32>, i128)> = member
        .terms()
        .map(|(e, c)| {
            c.to_i64()
                .map(|c| (e.clone(), c as i128))
                .ok_or_else(|| FcError::OutOfRange("coefficient exceeds 64 bits".into()))
        })
        .collect::<Result<_>>()?;
    let k = member.nvars();
    let (mut pos, mut neg) = (false, false);
    for subset in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| subset & (1 << i) != 0).collect();
        let m = idx.len() as u32;
        let mut probes: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for code in 0..3u32.pow(m) {
            let mut w = vec![0; k];
            let mut c = code;
            for &i in &idx {
                w[i] = c % 3 + 1;
                c /= 3;
            }
            probes.push((w, vec![1; k]));
        }
        for code in 1..2u32.pow(m) {
            let mut w = vec![0; k];
            let mut d = vec![1; k];
            for (bit, &i) in idx.iter().enumerate() {
                w[i] = 1;
                d[i] = 1 + ((code >> bit) & 1);
            }
            probes.push((w, d));
        }
        for (w, d) in probes {
            match probe_sign(&terms, &w, &d) {
                Some(1) => pos = true,
                Some(_) => neg = true,
                None => {}
            }
            if pos && neg {
                return Ok(OriginClass::Saddle);
            }
        }
    }
    match (pos, neg) {
        (true, false) => Ok(OriginClass::LocalMin),
        (false, true) => Ok(OriginClass::LocalMax),
        _ => Err(FcError::Indeterminate("no informative probe".into())),
    }
}

/// Compares the plus and minus sets and checks the result against the
/// parity of `q - p`.
pub fn parity_check(family: &PsiFamily) -> Result<Parity> {
    let contains = |set: &[PsiMember], m: &PsiMember| set.iter().any(|x| x.poly == m.poly);
    let same = family.plus_set.len() == family.minus_set.len()
        && family
            .plus_set
            .iter()
            .all(|m| contains(&family.minus_set, m));
    let disjoint = family
        .plus_set
        .iter()
        .all(|m| !contains(&family.minus_set, m));
    let odd = family.pivot.gap() % 2 == 1;
    match (odd, same, disjoint) {
        (true, true, _) => Ok(Parity::Identical),
        (false, _, true) => Ok(Parity::Disjoint),
        _ => Err(FcError::Inconsistent(format!(
            "parity of pivot ({}, {}) does not match the member sets",
            family.pivot.p, family.pivot.q
        ))),
    }
}

/// Checks `Δ(P(x^m)) = (-1)^{nm(m-1)/2} m^{mn} (a_0 a_n)^{m-1} Δ(P)^m`
/// for the textbook-normalized discriminant.
pub fn power_substitution_discriminant(n: usize, m: usize) -> Result<bool> {
    if m == 0 || n * m > MAX_DEGREE {
        return Err(FcError::DegreeOutOfRange(n * m));
    }
    check_degree(n)?;
    let names = generic_names(n);
    let big = standard_discriminant(n * m)?;
    let lhs = big.transform(names.clone(), |e| {
        let mut out = vec![0; n + 1];
        for (j, &ej) in e.iter().enumerate() {
            if ej == 0 {
                continue;
            }
            if j % m != 0 {
                return None;
            }
            out[j / m] = ej;
        }
        Some((out, BigInt::one()))
    });
    let small = standard_discriminant(n)?;
    let mut rhs = small.pow(m as u32);
    let mut mono = vec![0; n + 1];
    mono[0] = (m - 1) as u32;
    mono[n] = (m - 1) as u32;
    rhs = rhs.mul(&MultiPoly::from_terms(names, [(mono, BigInt::one())]));
    let mut k = BigInt::from(m).pow((m * n) as u32);
    if (n * m * (m - 1) / 2) % 2 == 1 {
        k = -k;
    }
    Ok(lhs == rhs.scale(&k))
}
