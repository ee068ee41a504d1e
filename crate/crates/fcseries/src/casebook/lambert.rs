//! Lambert's `x = q + x^m` and Euler's `z^α - z^β = (α-β) v z^{α+β}`.

use crate::algebraic::{oracle_roots, AlgebraicEquation};
use crate::fc::{factorial, fc_number_exact, genfun_eval, FcParams};
use crate::{Complex64, FcError, Result};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct LambertReport {
    pub m: u32,
    pub n: u32,
    pub q: f64,
    /// Terms `t < terms` whose FC coefficient differs from `n/(mt+n)·C(mt+n, t)`.
    pub coefficient_mismatches: usize,
    /// `|x^n - q^n ℬ(m; n; q^{m-1})|` for the oracle root nearest 0.
    pub series_error: f64,
    /// The same with the prefactor `q` instead of `q^n`.
    pub printed_form_error: f64,
}

/// `(m-1)/m^{m/(m-1)}`.
pub fn lambert_radius(m: u32) -> f64 {
    let m = m as f64;
    (m - 1.0) / m.powf(m / (m - 1.0))
}

/// Coefficient of `q^{n+(m-1)t}` in `x^n` by Lagrange inversion.
pub fn raney_number(m: u32, n: u32, t: u64) -> BigRational {
    let top = BigInt::from(m as u64 * t + n as u64);
    BigRational::new(
        BigInt::from(n) * binomial(top.clone(), BigInt::from(t)),
        top,
    )
}

pub fn lambert_check(m: u32, n: u32, q: f64, terms: usize) -> Result<LambertReport> {
    if m < 2 || n == 0 {
        return Err(FcError::OutOfRange("need m ≥ 2 and n ≥ 1".into()));
    }
    if !q.is_finite() || q == 0.0 || q.abs() > lambert_radius(m) {
        return Err(FcError::OutOfRange(format!(
            "|q| = {} outside (0, {}]",
            q.abs(),
            lambert_radius(m)
        )));
    }
    let mu = BigRational::from_integer(m.into());
    let r = BigRational::from_integer(n.into());
    let coefficient_mismatches = (0..terms as u64)
        .filter(|&t| fc_number_exact(&mu, &r, t) != raney_number(m, n, t))
        .count();

    // x^m - x + q = 0, branch through 0
    let mut c = vec![Complex64::new(0.0, 0.0); m as usize + 1];
    c[0] = Complex64::new(q, 0.0);
    c[1] = Complex64::new(-1.0, 0.0);
    c[m as usize] = Complex64::new(1.0, 0.0);
    let roots = oracle_roots(&AlgebraicEquation::new(c)?)?;
    let x = roots
        .iter()
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
        .copied()
        .expect("nonempty");
    let z = Complex64::new(q.powi(m as i32 - 1), 0.0);
    let mut t = 64;
    let b = loop {
        let v = genfun_eval(FcParams::new(m as f64, n as f64), z, t);
        if v.tail_estimate < 1e-13 || t >= 1 << 16 {
            break v.value;
        }
        t *= 2;
    };
    let xn = x.powu(n);
    Ok(LambertReport {
        m,
        n,
        q,
        coefficient_mismatches,
        series_error: (xn - q.powi(n as i32) * b).norm(),
        printed_form_error: (xn - q * b).norm(),
    })
}

/// Euler's coefficient of `v^t` in `z^n`: `(n/t!) ∏_{j=1}^{t-1} (n + jα + (t-j)β)`.
pub fn euler_coefficient(
    alpha: &BigRational,
    beta: &BigRational,
    n: &BigRational,
    t: u64,
) -> BigRational {
    if t == 0 {
        return BigRational::one();
    }
    let mut acc = n.clone();
    for j in 1..t {
        let jj = BigRational::from_integer(j.into());
        let rest = BigRational::from_integer((t - j).into());
        acc *= n + jj * alpha + rest * beta;
    }
    acc / BigRational::from_integer(factorial(t))
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerReport {
    pub terms: usize,
    pub mismatches: usize,
    /// Largest `|euler - fc|` over the checked terms, exactly zero when they agree.
    pub max_deviation: f64,
}

/// Euler's coefficients against `A_t(α/(α-β), n/(α-β))·(α-β)^t`, exactly.
pub fn euler_check(
    alpha: &BigRational,
    beta: &BigRational,
    n: &BigRational,
    terms: usize,
) -> Result<EulerReport> {
    let d = alpha - beta;
    if d.is_zero() {
        return Err(FcError::OutOfRange("α and β must differ".into()));
    }
    let mu = alpha / &d;
    let r = n / &d;
    let mut mismatches = 0;
    let mut max_deviation: f64 = 0.0;
    for t in 0..terms as u64 {
        let e = euler_coefficient(alpha, beta, n, t);
        let f = fc_number_exact(&mu, &r, t) * d.pow(t as i32);
        if e != f {
            mismatches += 1;
            max_deviation = max_deviation.max((e - f).abs().to_f64().unwrap_or(f64::INFINITY));
        }
    }
    Ok(EulerReport {
        terms,
        mismatches,
        max_deviation,
    })
}
