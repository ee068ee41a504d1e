//! The general trinomial `x^{m+n} + a x^n + b = 0`.

use super::max_root_error;
use crate::algebraic::{oracle_roots, AlgebraicEquation};
use crate::cplx::{expi_pi, pow};
use crate::fc::{fc_number, fc_number_exact, genfun_eval, FcParams};
use crate::{Complex64, FcError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrinomialSpec {
    pub m: u32,
    pub n: u32,
    pub a: Complex64,
    pub b: Complex64,
}

impl TrinomialSpec {
    pub fn equation(&self) -> Result<AlgebraicEquation> {
        let (m, n) = (self.m as usize, self.n as usize);
        let mut c = vec![Complex64::new(0.0, 0.0); m + n + 1];
        c[0] = self.b;
        c[n] += self.a;
        c[m + n] += Complex64::new(1.0, 0.0);
        AlgebraicEquation::new(c)
    }

    /// `|b|^m / |a|^{m+n}` against `m^m n^n / (m+n)^{m+n}`, both in logs.
    pub fn log_ratio(&self) -> f64 {
        let (m, n) = (self.m as f64, self.n as f64);
        let lhs = m * self.b.norm().ln() - (m + n) * self.a.norm().ln();
        let rhs = m * m.ln() + n * n.ln() - (m + n) * (m + n).ln();
        lhs - rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrinomialRegime {
    /// `|b|^m/|a|^{m+n}` above the critical ratio: first series, `m+n` roots.
    First,
    /// Below: second series (`n` roots) and third series (`m` roots).
    SecondThird,
    /// On the boundary: both attempted.
    Boundary,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrinomialRoots {
    pub regime: TrinomialRegime,
    /// `(series, branch, root)`, series numbered 1 to 3.
    pub roots: Vec<(u8, usize, Complex64)>,
    pub max_oracle_error: f64,
    /// Largest difference between the first 12 terms of the fourth series
    /// and those of the second, over all branches.
    pub fourth_series_deviation: f64,
}

impl TrinomialRoots {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.2).collect()
    }
}

/// Series number, branch count, `μ`, `r`, and for branch ℓ the prefactor and argument.
struct Series {
    id: u8,
    count: u32,
    mu: f64,
    r: f64,
}

fn series(spec: &TrinomialSpec, id: u8) -> Series {
    let (m, n) = (spec.m as f64, spec.n as f64);
    match id {
        1 => Series {
            id,
            count: spec.m + spec.n,
            mu: n / (m + n),
            r: 1.0 / (m + n),
        },
        2 => Series {
            id,
            count: spec.n,
            mu: (m + n) / n,
            r: 1.0 / n,
        },
        _ => Series {
            id,
            count: spec.m,
            mu: -n / m,
            r: 1.0 / m,
        },
    }
}

fn prefactor_and_argument(spec: &TrinomialSpec, s: &Series, l: u32) -> (Complex64, Complex64) {
    let (m, n) = (spec.m as f64, spec.n as f64);
    let (a, b) = (spec.a, spec.b);
    let odd = (2 * l + 1) as f64;
    match s.id {
        1 => (
            expi_pi(odd / (m + n)) * pow(b, 1.0 / (m + n)),
            expi_pi(odd * n / (m + n)) * a / pow(b, m / (m + n)),
        ),
        2 => (
            expi_pi(odd / n) * pow(b, 1.0 / n) / pow(a, 1.0 / n),
            expi_pi(odd * (m + n) / n) * pow(b, m / n) / pow(a, (m + n) / n),
        ),
        _ => (
            expi_pi(odd / m) * pow(a, 1.0 / m),
            expi_pi(-odd * n / m) * b / pow(a, (m + n) / m),
        ),
    }
}

fn sum_series(params: FcParams, z: Complex64, terms: Option<usize>) -> Complex64 {
    if let Some(t) = terms {
        return genfun_eval(params, z, t).value;
    }
    let mut t = 50;
    loop {
        let v = genfun_eval(params, z, t);
        if v.tail_estimate < 1e-12 || t >= 1 << 16 {
            return v.value;
        }
        t *= 2;
    }
}

fn series_roots(spec: &TrinomialSpec, id: u8, terms: Option<usize>) -> Vec<(u8, usize, Complex64)> {
    let s = series(spec, id);
    (0..s.count)
        .map(|l| {
            let (pre, z) = prefactor_and_argument(spec, &s, l);
            (
                id,
                l as usize,
                pre * sum_series(FcParams::new(s.mu, s.r), z, terms),
            )
        })
        .collect()
}

/// Terms `t < 12` of the fourth series against the second, branch by branch.
fn fourth_series_deviation(spec: &TrinomialSpec) -> f64 {
    let (m, n) = (spec.m as f64, spec.n as f64);
    let s2 = series(spec, 2);
    let mut worst: f64 = 0.0;
    for l in 0..spec.n {
        let odd = (2 * l + 1) as f64;
        let (pre2, z2) = prefactor_and_argument(spec, &s2, l);
        let pre4 = expi_pi(odd / n) * pow(spec.b, 1.0 / n) / pow(spec.a, 1.0 / n);
        let z4 = expi_pi(odd * m / n) * pow(spec.b, m / n) / pow(spec.a, (m + n) / n);
        for t in 0..12u64 {
            let w2 = pre2 * fc_number(FcParams::new(s2.mu, s2.r), t) * z2.powu(t as u32);
            let w4 = pre4 * fc_number(FcParams::new(-m / n, -1.0 / n), t) * z4.powu(t as u32);
            worst = worst.max((w2 - w4).norm());
        }
    }
    worst
}

/// `A_t((m+n)/n, 1/n)(-1)^t = A_t(-m/n, -1/n)` for `t < 12`, exactly.
pub fn fourth_series_coefficients_agree(m: u32, n: u32) -> bool {
    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let (m, n) = (m as i64, n as i64);
    (0..12u64).all(|t| {
        let two = fc_number_exact(&q(m + n, n), &q(1, n), t);
        let four = fc_number_exact(&q(-m, n), &q(-1, n), t);
        if t % 2 == 0 {
            two == four
        } else {
            two == -four
        }
    })
}

pub fn trinomial_roots(spec: TrinomialSpec, terms: Option<usize>) -> Result<TrinomialRoots> {
    if spec.m == 0 || spec.n == 0 {
        return Err(FcError::OutOfRange("m and n must be at least 1".into()));
    }
    if spec.a.norm() == 0.0 || spec.b.norm() == 0.0 {
        return Err(FcError::OutOfRange("a and b must be nonzero".into()));
    }
    let oracle = oracle_roots(&spec.equation()?)?;
    let g = spec.log_ratio();
    let (regime, candidates): (TrinomialRegime, Vec<Vec<u8>>) = if g.abs() <= 1e-12 {
        (TrinomialRegime::Boundary, vec![vec![1], vec![2, 3]])
    } else if g > 0.0 {
        (TrinomialRegime::First, vec![vec![1]])
    } else {
        (TrinomialRegime::SecondThird, vec![vec![2, 3]])
    };
    let mut best: Option<(f64, Vec<(u8, usize, Complex64)>)> = None;
    for ids in candidates {
        let roots: Vec<_> = ids
            .iter()
            .flat_map(|&id| series_roots(&spec, id, terms))
            .collect();
        let vals: Vec<Complex64> = roots.iter().map(|r| r.2).collect();
        let err = max_root_error(&vals, &oracle);
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            best = Some((err, roots));
        }
    }
    let (max_oracle_error, roots) = best.expect("at least one regime");
    Ok(TrinomialRoots {
        regime,
        roots,
        max_oracle_error,
        fourth_series_deviation: fourth_series_deviation(&spec),
    })
}
