//! Domain formulas of the cubic and the principal quintic.

use crate::algebraic::PivotChoice;
use crate::discriminant::{
    build_family_with_support, discriminant_symbolic, OriginClass, PsiFamily,
};
use crate::domain::{binding_members, boundary_on_ray};
use crate::multipoly::MultiPoly;
use crate::{FcError, Result};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = ">= 0")]
    AtLeastZero,
    #[serde(rename = "<= 0")]
    AtMostZero,
}

impl Direction {
    pub fn symbol(&self) -> &'static str {
        match self {
            Direction::AtLeastZero => ">=",
            Direction::AtMostZero => "<=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainFormula {
    pub pivot: (usize, usize),
    /// Binding members and the side of zero the origin lies on.
    pub conditions: Vec<(String, Direction)>,
}

impl DomainFormula {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .conditions
            .iter()
            .map(|(id, d)| format!("{{{id} {} 0}}", d.symbol()))
            .collect();
        format!("D{}{} = {}", self.pivot.0, self.pivot.1, parts.join(" ∩ "))
    }
}

/// The origin side of a member: positive at (or just off) the origin
/// means the domain is where it stays `≥ 0`.
fn direction(class: &OriginClass) -> Result<Direction> {
    match class {
        OriginClass::NonzeroConstant(v) if v.starts_with('-') => Ok(Direction::AtMostZero),
        OriginClass::NonzeroConstant(_) | OriginClass::LocalMin => Ok(Direction::AtLeastZero),
        OriginClass::LocalMax => Ok(Direction::AtMostZero),
        other => Err(FcError::Inconsistent(format!(
            "member with origin class {other:?} cannot bind"
        ))),
    }
}

pub fn domain_formula(family: &PsiFamily) -> Result<DomainFormula> {
    let mut conditions = Vec::new();
    for id in binding_members(family, 48)? {
        let m = family
            .member(&id)
            .ok_or_else(|| FcError::Inconsistent(format!("unknown member {id}")))?;
        conditions.push((id, direction(&m.origin_class)?));
    }
    Ok(DomainFormula {
        pivot: (family.pivot.p, family.pivot.q),
        conditions,
    })
}

fn formulas(n: usize, support: &[usize]) -> Result<Vec<DomainFormula>> {
    let mut out = Vec::new();
    for (i, &p) in support.iter().enumerate() {
        for &q in &support[i + 1..] {
            let family = build_family_with_support(PivotChoice::new(p, q)?, n, support)?;
            out.push(domain_formula(&family)?);
        }
    }
    Ok(out)
}

fn expected(rows: &[((usize, usize), &[(&str, Direction)])]) -> Vec<DomainFormula> {
    rows.iter()
        .map(|(pivot, conds)| DomainFormula {
            pivot: *pivot,
            conditions: conds.iter().map(|(id, d)| (id.to_string(), *d)).collect(),
        })
        .collect()
}

use Direction::{AtLeastZero as Ge, AtMostZero as Le};

/// The corrected cubic table.
pub fn expected_cubic_table() -> Vec<DomainFormula> {
    expected(&[
        ((0, 1), &[("psi+01(+b2,-b3)", Le)]),
        ((0, 2), &[("psi+02(+b1,+b3)", Ge), ("psi-02(+b1,+b3)", Le)]),
        ((0, 3), &[("psi+03(-b1,-b2)", Ge)]),
        ((1, 2), &[("psi+12(+b0,-b3)", Le), ("psi+12(-b0,+b3)", Le)]),
        ((1, 3), &[("psi+13(+b0,+b2)", Ge), ("psi-13(+b0,+b2)", Le)]),
        ((2, 3), &[("psi+23(-b0,+b1)", Le)]),
    ])
}

/// The principal quintic `a0 + a1 x + a2 x^2 + x^5` table.
pub fn expected_principal_quintic_table() -> Vec<DomainFormula> {
    expected(&[
        ((0, 1), &[("psi+01(+b2,-b5)", Le)]),
        ((0, 2), &[("psi+02(+b1,+b5)", Ge), ("psi-02(+b1,+b5)", Le)]),
        ((0, 5), &[("psi+05(-b1,-b2)", Ge)]),
        ((1, 2), &[("psi+12(+b0,-b5)", Le), ("psi+12(-b0,+b5)", Le)]),
        ((1, 5), &[("psi+15(+b0,+b2)", Ge), ("psi-15(+b0,+b2)", Le)]),
        ((2, 5), &[("psi+25(-b0,+b1)", Le)]),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicTable {
    pub formulas: Vec<DomainFormula>,
    pub matches_expected: bool,
    /// The original `{Δ02(|a1|,|a3|) > 0} ∩ {Δ02(|a1|,-|a3|) < 0}` excludes the origin.
    pub original_d02_rejects_origin: bool,
    /// Number of `|a1|` samples in `[0, 3]` the original formula accepts at `a3 = 0`.
    pub original_d02_slice_hits: usize,
    /// `λ` on the `b1` and `b3` axes of pivot (0,2).
    pub axis_b1: f64,
    pub axis_b3: f64,
}

/// `Ψ⁺02` with signs `(s1, s3)` on the free slots, as a polynomial in `(b1, b3)`.
fn signed_d02(s1: i64, s3: i64) -> Result<MultiPoly> {
    let fixed: BTreeMap<usize, i64> = [(0, 1), (2, 1)].into_iter().collect();
    let d = discriminant_symbolic(3, &fixed)?;
    Ok(d.transform(d.names().to_vec(), |e| {
        let mut sign = 1i64;
        if e[0] % 2 == 1 {
            sign *= s1;
        }
        if e[1] % 2 == 1 {
            sign *= s3;
        }
        Some((e.to_vec(), BigInt::from(sign)))
    }))
}

/// `{Δ(|a1|, |a3|) > 0} ∩ {Δ(|a1|, -|a3|) < 0}` at `(x1, x3)`.
pub fn original_d02_accepts(x1: f64, x3: f64) -> Result<bool> {
    let plus = signed_d02(1, 1)?.eval_f64(&[x1, x3]);
    let minus = signed_d02(1, -1)?.eval_f64(&[x1, x3]);
    Ok(plus > 0.0 && minus < 0.0)
}

pub fn cubic_domain_table() -> Result<CubicTable> {
    let formulas = formulas(3, &[0, 1, 2, 3])?;
    let matches_expected = formulas == expected_cubic_table();
    let original_d02_rejects_origin = !original_d02_accepts(0.0, 0.0)?;
    let mut original_d02_slice_hits = 0;
    for i in 0..=300 {
        if original_d02_accepts(i as f64 / 100.0, 0.0)? {
            original_d02_slice_hits += 1;
        }
    }
    let fam = build_family_with_support(PivotChoice::new(0, 2)?, 3, &[0, 1, 2, 3])?;
    Ok(CubicTable {
        formulas,
        matches_expected,
        original_d02_rejects_origin,
        original_d02_slice_hits,
        axis_b1: boundary_on_ray(&[1.0, 0.0], &fam)?,
        axis_b3: boundary_on_ray(&[0.0, 1.0], &fam)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QuinticTable {
    pub formulas: Vec<DomainFormula>,
    pub matches_expected: bool,
    /// The engine's discriminant equals `a5^2` times the printed polynomial.
    pub discriminant_matches: bool,
}

pub const PRINCIPAL_DISCRIMINANT: &str =
    "3125*a0^4*a5^2 + 2250*a0^2*a1*a2^2*a5 - 1600*a0*a1^3*a2*a5 \
     + 108*a0*a2^5 + 256*a1^5*a5 - 27*a1^2*a2^4";

pub const BRIOSCHI_DISCRIMINANT: &str =
    "3125*a0^4*a5^3 + 2000*a0^2*a1^2*a3*a5^2 - 900*a0^2*a1*a3^3*a5 \
     + 108*a0^2*a3^5 + 256*a1^5*a5^2 - 128*a1^4*a3^2*a5 + 16*a1^3*a3^4";

/// Whether the quintic discriminant restricted to `support` is `a5^power`
/// times `printed` (written in `a0..a5`).
pub fn quintic_discriminant_matches(support: &[usize], printed: &str, power: u32) -> Result<bool> {
    let fixed: BTreeMap<usize, i64> = (0..=5)
        .filter(|j| !support.contains(j))
        .map(|j| (j, 0))
        .collect();
    let d = discriminant_symbolic(5, &fixed)?;
    let names: Vec<String> = support.iter().map(|j| format!("a{j}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let printed = MultiPoly::parse(printed, &name_refs)?;
    let lead = MultiPoly::var(names.clone(), support.len() - 1).pow(power);
    let ours = MultiPoly::from_terms(names, d.terms().map(|(e, c)| (e.clone(), c.clone())));
    Ok(ours.sub(&lead.mul(&printed)).is_zero())
}

pub fn principal_quintic_domains() -> Result<QuinticTable> {
    let formulas = formulas(5, &[0, 1, 2, 5])?;
    let matches_expected = formulas == expected_principal_quintic_table();
    Ok(QuinticTable {
        formulas,
        matches_expected,
        discriminant_matches: quintic_discriminant_matches(
            &[0, 1, 2, 5],
            PRINCIPAL_DISCRIMINANT,
            2,
        )?,
    })
}
