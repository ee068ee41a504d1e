//! The quintic series compared with the A-hypergeometric roots `X_{1,-1}`
//! and `X_{5,ξ}`.

use crate::algebraic::{oracle_roots, AlgebraicEquation};
use crate::fc::{compositions, fc_multi, fc_multi_exact, MultiFcParams};
use crate::{Complex64, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// One term `coef · a0^{e0} · a_q^{eq} · ∏ a_j^{t_j}` of the bracketed series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub t: Vec<u64>,
    pub coefficient: String,
    pub a0_power: String,
    pub aq_power: String,
}

/// Pivot (0,1), free slots 2..5 with `μ_j = j`: the coefficient is
/// `𝒜_t(μ, 1)(-1)^{t·μ}`, and the powers are `a0^{t·μ-|t|} a1^{-t·μ}`.
fn pivot01_term(t: &[u64]) -> (Q, Q, Q) {
    let mu: Vec<Q> = (2..=5).map(|j| Q::from_integer(BigInt::from(j))).collect();
    let a = fc_multi_exact(&mu, &Q::one(), t).expect("four slots");
    let dot: u64 = t.iter().zip(2u64..).map(|(&ti, j)| ti * j).sum();
    let level: u64 = t.iter().sum();
    let sign = if dot.is_odd() { -Q::one() } else { Q::one() };
    (
        a * sign,
        Q::from_integer(BigInt::from(dot as i64 - level as i64)),
        -Q::from_integer(BigInt::from(dot)),
    )
}

/// The seven printed terms through `-5 a0^3 a2 a3 / a1^5`.
pub fn printed_pivot01() -> Vec<(Vec<u64>, i64, i64, i64)> {
    vec![
        (vec![0, 0, 0, 0], 1, 0, 0),
        (vec![1, 0, 0, 0], 1, 1, -2),
        (vec![0, 1, 0, 0], -1, 2, -3),
        (vec![0, 0, 1, 0], 1, 3, -4),
        (vec![0, 0, 0, 1], -1, 4, -5),
        (vec![2, 0, 0, 0], 2, 2, -4),
        (vec![1, 1, 0, 0], -5, 3, -5),
    ]
}

/// Level-one terms of the pivot (0,5) series, `(ξ power, a0 power, a5 power, slot)`,
/// each with coefficient `1/5` relative to the leading `ξ a0^{1/5}/a5^{1/5}`.
fn pivot05_level_one() -> Vec<(Q, u32, Q, Q, usize)> {
    let r = q(1, 5);
    (1..=4usize)
        .map(|j| {
            let mut t = vec![0u64; 4];
            t[j - 1] = 1;
            let mu: Vec<Q> = (1..=4).map(|i| q(i, 5)).collect();
            let coef = fc_multi_exact(&mu, &r, &t).expect("four slots");
            let muj = q(j as i64, 5);
            // ξ · ξ^{5μ_j}, a0^{1/5 - (1 - μ_j)}, a5^{-1/5 - μ_j}
            let xi = (Q::one() + q(5, 1) * &muj).to_integer();
            let xi = u32::try_from(xi).expect("small power");
            (coef, xi, &r - (Q::one() - &muj), -&r - &muj, j)
        })
        .collect()
}

/// The `X_{5,ξ}` display: `ξ^5 = -1` gives the `-a4/a5` term.
pub fn printed_pivot05() -> Vec<(u32, Q, Q, usize)> {
    vec![
        (2, q(-3, 5), q(-2, 5), 1),
        (3, q(-2, 5), q(-3, 5), 2),
        (4, q(-1, 5), q(-4, 5), 3),
        (5, Q::zero(), q(-1, 1), 4),
    ]
}

/// `|k - i0|^{k-i0} |i1 - k|^{i1-k} / |i1 - i0|^{i1-i0}` minimised over the
/// edges `(i0, i1)` of `triangulation` and `k` off the edge, divided by `n - 1`.
pub fn sturmfels_m_constant(n: usize, triangulation: &[usize]) -> f64 {
    let pw = |x: i64| (x.abs() as f64).powf(x as f64);
    let mut best = f64::INFINITY;
    for w in triangulation.windows(2) {
        let (i0, i1) = (w[0] as i64, w[1] as i64);
        for k in 0..=n as i64 {
            if k == i0 || k == i1 {
                continue;
            }
            best = best.min(pw(k - i0) * pw(i1 - k) / pw(i1 - i0));
        }
    }
    best / (n as f64 - 1.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct SturmfelsReport {
    pub pivot01_terms: Vec<ExpansionTerm>,
    pub pivot01_matches: bool,
    pub pivot05_matches: bool,
    /// `M` for the unit-length triangulation `0, 1, 2, 3, 4, 5`.
    pub m_constant: f64,
    /// The pivot (0,1) series summed to level 30 against the oracle root.
    pub root_error: f64,
}

/// `-a0/a1 Σ_t 𝒜_t(μ,1)(-1)^{t·μ} a0^{t·μ-|t|} a1^{-t·μ} ∏ a_j^{t_j}` to `levels`.
pub fn pivot01_root(a: &[f64; 6], levels: u64) -> Complex64 {
    let params = MultiFcParams::new(vec![2.0, 3.0, 4.0, 5.0], 1.0);
    let mut sum = 0.0;
    for level in 0..=levels {
        for t in compositions(level, 4) {
            let dot: i32 = t.iter().zip(2..).map(|(&ti, j)| ti as i32 * j).sum();
            let sign = if dot % 2 == 0 { 1.0 } else { -1.0 };
            let mut term = fc_multi(&params, &t).expect("four slots") * sign;
            term *= a[0].powi(dot - level as i32) / a[1].powi(dot);
            for (j, &tj) in t.iter().enumerate() {
                term *= a[j + 2].powi(tj as i32);
            }
            sum += term;
        }
    }
    Complex64::new(-a[0] / a[1] * sum, 0.0)
}

pub fn sturmfels_checks() -> Result<SturmfelsReport> {
    let mut pivot01_terms = Vec::new();
    let mut pivot01_matches = true;
    for (t, coef, e0, e1) in printed_pivot01() {
        let (c, p0, p1) = pivot01_term(&t);
        pivot01_matches &= c == q(coef, 1) && p0 == q(e0, 1) && p1 == q(e1, 1);
        pivot01_terms.push(ExpansionTerm {
            t,
            coefficient: c.to_string(),
            a0_power: p0.to_string(),
            aq_power: p1.to_string(),
        });
    }

    let ours = pivot05_level_one();
    let pivot05_matches = ours.len() == printed_pivot05().len()
        && ours
            .iter()
            .zip(printed_pivot05())
            .all(|((c, xi, e0, e5, j), (pxi, p0, p5, pj))| {
                *c == q(1, 5) && *xi == pxi && *e0 == p0 && *e5 == p5 && *j == pj
            });

    let a = [1.0, 8.0, 1.0, -1.0, 1.0, 1.0];
    let eq = AlgebraicEquation::from_real(&a)?;
    let target = Complex64::new(-a[0] / a[1], 0.0);
    let root = oracle_roots(&eq)?
        .into_iter()
        .min_by(|x, y| (x - target).norm().total_cmp(&(y - target).norm()))
        .expect("five roots");
    Ok(SturmfelsReport {
        pivot01_terms,
        pivot01_matches,
        pivot05_matches,
        m_constant: sturmfels_m_constant(5, &[0, 1, 2, 3, 4, 5]),
        root_error: (pivot01_root(&a, 30) - root).norm(),
    })
}
