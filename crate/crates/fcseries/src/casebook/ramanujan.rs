//! Ramanujan's series for `a q x^p + x^q = 1`.

use crate::algebraic::{oracle_roots, AlgebraicEquation};
use crate::convergence::{ramanujan_radius, ratio_limit};
use crate::fc::{factorial, fc_number, fc_number_exact, near_one_pow, rational_from_f64, FcParams};
use crate::{Complex64, FcError, Result};
use num_rational::BigRational;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RamanujanReport {
    /// Largest `|Γ-form term - FC term|` over the first `terms` terms.
    pub max_term_deviation: f64,
    /// Terms whose exact product form differs from `A_k(p/q, n/q)`.
    pub exact_mismatches: usize,
    pub radius: f64,
    /// `|radius - 1/(|q| ρ(p/q))|`.
    pub radius_deviation: f64,
    /// Distance of the summed series from the oracle's `x^n`, when `p` and
    /// `q` are distinct positive integers.
    pub oracle_error: Option<f64>,
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(n/q) Γ(x) (-qa)^k / (Γ(x-k+1) k!)` with `x = (n+pk)/q`.
pub fn gamma_term(p: f64, q: f64, n: f64, a: f64, k: u64) -> f64 {
    if k == 0 {
        // (n/q) Γ(n/q) / Γ(n/q + 1) before setting n = 0
        return 1.0;
    }
    let x = (n + p * k as f64) / q;
    let lo = x - k as f64 + 1.0;
    let ratio = if is_pole(x) {
        (1..k).map(|i| x - i as f64).product()
    } else if is_pole(lo) {
        0.0
    } else {
        libm::tgamma(x) / libm::tgamma(lo)
    };
    let kf: f64 = (1..=k).map(|i| i as f64).product();
    n / q * ratio * (-q * a).powi(k as i32) / kf
}

/// `(n/q)/k! ∏_{u=1}^{k-1} (kp/q + n/q - u)` in exact arithmetic.
fn product_coefficient(p: &BigRational, q: &BigRational, n: &BigRational, k: u64) -> BigRational {
    if k == 0 {
        return BigRational::from_integer(1.into());
    }
    let kk = BigRational::from_integer(k.into());
    let x = &kk * p / q + n / q;
    let mut acc = n / q;
    for u in 1..k {
        acc *= &x - BigRational::from_integer(u.into());
    }
    acc / BigRational::from_integer(factorial(k))
}

pub fn ramanujan_check(p: f64, q: f64, n: f64, a: f64, terms: usize) -> Result<RamanujanReport> {
    if q == 0.0 || p == q || p == 0.0 || ![p, q, n, a].iter().all(|v| v.is_finite()) {
        return Err(FcError::OutOfRange(
            "need finite p, q, n, a with p ≠ 0, q ≠ 0, p ≠ q".into(),
        ));
    }
    let radius = ramanujan_radius(p, q);
    if a.abs() > radius {
        return Err(FcError::OutOfRange(format!(
            "|a| = {} exceeds the radius {radius}",
            a.abs()
        )));
    }
    let params = FcParams::new(p / q, n / q);
    let mut max_term_deviation: f64 = 0.0;
    let mut sum = 0.0;
    for k in 0..terms as u64 {
        let g = gamma_term(p, q, n, a, k);
        let f = fc_number(params, k) * (-q * a).powi(k as i32);
        max_term_deviation = max_term_deviation.max((g - f).abs());
        sum += f;
    }

    let (pr, qr, nr) = (
        rational_from_f64(p),
        rational_from_f64(q),
        rational_from_f64(n),
    );
    let (mu, r) = (&pr / &qr, &nr / &qr);
    let exact_mismatches = (0..terms as u64)
        .filter(|&k| product_coefficient(&pr, &qr, &nr, k) != fc_number_exact(&mu, &r, k))
        .count();

    let radius_deviation = (radius - 1.0 / (q.abs() * ratio_limit(p / q)?)).abs();
    let oracle_error = oracle_check(p, q, n, a, sum)?;
    Ok(RamanujanReport {
        max_term_deviation,
        exact_mismatches,
        radius,
        radius_deviation,
        oracle_error,
    })
}

/// The branch tending to 1 as `a → 0` is the oracle root nearest 1.
fn oracle_check(p: f64, q: f64, n: f64, a: f64, sum: f64) -> Result<Option<f64>> {
    let int = |v: f64| v > 0.0 && v == v.round() && v <= 12.0;
    if !int(p) || !int(q) || a == 0.0 {
        return Ok(None);
    }
    let (pi, qi) = (p as usize, q as usize);
    let mut c = vec![Complex64::new(0.0, 0.0); pi.max(qi) + 1];
    c[0] = Complex64::new(-1.0, 0.0);
    c[pi] += Complex64::new(a * q, 0.0);
    c[qi] += Complex64::new(1.0, 0.0);
    let roots = oracle_roots(&AlgebraicEquation::new(c)?)?;
    let one = Complex64::new(1.0, 0.0);
    let x = roots
        .iter()
        .min_by(|u, v| (*u - one).norm().total_cmp(&(*v - one).norm()))
        .copied()
        .expect("nonempty");
    let xn = near_one_pow(x, n);
    Ok(Some((xn - sum).norm()))
}
