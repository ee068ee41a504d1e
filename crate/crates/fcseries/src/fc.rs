//! Fuss-Catalan numbers and their generating functions.
//!
//! `A_t(μ, r) = r/t! ∏_{j=1}^{t-1} (tμ + r - j)` with `A_0 = 1`, and the
//! multiparameter form `𝒜_t(μ, r) = r/(t_1!…t_k!) ∏_{j=1}^{|t|-1} (t·μ + r - j)`.

use crate::cplx::Accumulator;
use crate::{FcError, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FcParams {
    pub mu: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiFcParams {
    pub mu: Vec<f64>,
    pub r: f64,
}

/// Partial sum of a generating function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub truncation_level: usize,
    /// Estimated size of the omitted tail, `+∞` when the point lies outside
    /// the known radius or too few terms were summed to say.
    pub tail_estimate: f64,
}

impl FcParams {
    pub fn new(mu: f64, r: f64) -> Self {
        Self { mu, r }
    }
}

impl MultiFcParams {
    pub fn new(mu: Vec<f64>, r: f64) -> Self {
        Self { mu, r }
    }
}

/// Floating `A_t(μ, r)` by the running product.
pub fn fc_number(params: FcParams, t: u64) -> f64 {
    if t == 0 {
        return 1.0;
    }
    let x = t as f64 * params.mu + params.r;
    let mut acc = params.r / t as f64;
    for j in 1..t {
        acc *= (x - j as f64) / j as f64;
    }
    acc
}

/// Exact `A_t(μ, r)` for rational μ and r.
pub fn fc_number_exact(mu: &BigRational, r: &BigRational, t: u64) -> BigRational {
    if t == 0 {
        return BigRational::one();
    }
    let x = BigRational::from_integer(BigInt::from(t)) * mu + r;
    let mut num = r.clone();
    for j in 1..t {
        num *= &x - BigRational::from_integer(BigInt::from(j));
    }
    num / BigRational::from_integer(factorial(t))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(FcError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Floating `𝒜_t(μ, r)` as `multinomial · A_{|t|}(t̂·μ, r)`.
pub fn fc_multi(params: &MultiFcParams, t: &[u64]) -> Result<f64> {
    check_dims(params.mu.len(), t.len())?;
    let level: u64 = t.iter().sum();
    if level == 0 {
        return Ok(1.0);
    }
    let dot: f64 = t
        .iter()
        .zip(&params.mu)
        .map(|(&ti, &m)| ti as f64 * m)
        .sum();
    let a = fc_number(FcParams::new(dot / level as f64, params.r), level);
    Ok(multinomial_f64(t) * a)
}

/// Exact `𝒜_t(μ, r)` straight from the product over `t·μ + r - j`.
pub fn fc_multi_exact(mu: &[BigRational], r: &BigRational, t: &[u64]) -> Result<BigRational> {
    check_dims(mu.len(), t.len())?;
    let level: u64 = t.iter().sum();
    if level == 0 {
        return Ok(BigRational::one());
    }
    let x = dot_exact(mu, t) + r;
    let mut num = r.clone();
    for j in 1..level {
        num *= &x - BigRational::from_integer(BigInt::from(j));
    }
    let den = t.iter().fold(BigInt::one(), |acc, &ti| acc * factorial(ti));
    Ok(num / BigRational::from_integer(den))
}

/// Exact `𝒜_t(μ, r)` through the direction-averaged exponent `t̂·μ`.
pub fn fc_multi_exact_averaged(
    mu: &[BigRational],
    r: &BigRational,
    t: &[u64],
) -> Result<BigRational> {
    check_dims(mu.len(), t.len())?;
    let level: u64 = t.iter().sum();
    if level == 0 {
        return Ok(BigRational::one());
    }
    let hat = dot_exact(mu, t) / BigRational::from_integer(BigInt::from(level));
    let a = fc_number_exact(&hat, r, level);
    Ok(BigRational::from_integer(multinomial(t)) * a)
}

fn dot_exact(mu: &[BigRational], t: &[u64]) -> BigRational {
    mu.iter().zip(t).fold(BigRational::zero(), |acc, (m, &ti)| {
        acc + m * BigInt::from(ti)
    })
}

pub fn multinomial(t: &[u64]) -> BigInt {
    let level: u64 = t.iter().sum();
    let den = t.iter().fold(BigInt::one(), |acc, &ti| acc * factorial(ti));
    factorial(level) / den
}

fn multinomial_f64(t: &[u64]) -> f64 {
    // product of binomials keeps every intermediate an integer-valued float
    let mut run = 0u64;
    let mut acc = 1.0;
    for &ti in t {
        run += ti;
        acc *= binomial_f64(run, ti);
    }
    acc
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Compositions of `t` into `k` nonnegative parts, in lexicographic order.
pub fn compositions(t: u64, k: usize) -> Compositions {
    assert!(k >= 1, "compositions need at least one part");
    Compositions {
        current: None,
        t,
        k,
        done: false,
    }
}

#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u64>>,
    t: u64,
    k: usize,
    done: bool,
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let k = self.k;
        let next = match self.current.take() {
            None => {
                let mut v = vec![0; k];
                v[k - 1] = self.t;
                v
            }
            Some(mut v) => {
                // rightmost slot whose suffix still holds something to borrow
                let mut right = v[k - 1];
                let mut i = k - 1;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    if right > 0 {
                        break;
                    }
                    right += v[i];
                }
                v[i] += 1;
                for e in v[i + 1..].iter_mut() {
                    *e = 0;
                }
                v[k - 1] = right - 1;
                v
            }
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

// Terms at levels up to this are formed by direct products; beyond it by
// log-gamma magnitudes so a term costs O(k) instead of O(t).
const DIRECT_LEVEL: u64 = 64;

fn ln_factorial(n: u64) -> f64 {
    libm::lgamma((n + 1) as f64)
}

/// `ln|∏_{j=1}^{t-1}(x - j)|` and its sign (0 when a factor vanishes).
fn ln_falling(x: f64, t: u64) -> (f64, f64) {
    if t <= 1 {
        return (0.0, 1.0);
    }
    let n = t - 1;
    let xr = x.round();
    let near_int = (x - xr).abs() <= 1e-12 * xr.abs().max(1.0);
    if near_int && xr >= 1.0 && xr <= n as f64 {
        return (f64::NEG_INFINITY, 0.0);
    }
    if near_int {
        if xr > n as f64 {
            return (libm::lgamma(xr) - libm::lgamma(xr - n as f64), 1.0);
        }
        let a = -xr;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return (
            libm::lgamma(a + n as f64 + 1.0) - libm::lgamma(a + 1.0),
            sign,
        );
    }
    let (g1, s1) = libm::lgamma_r(x);
    let (g2, s2) = libm::lgamma_r(x - n as f64);
    (g1 - g2, (s1 * s2) as f64)
}

/// One series term `𝒜_t(μ, r) ∏ z_j^{t_j}`.
pub(crate) struct TermContext<'a> {
    mu: &'a [f64],
    r: f64,
    z: &'a [Complex64],
    ln_abs_z: Vec<f64>,
    arg_z: Vec<f64>,
}

impl<'a> TermContext<'a> {
    pub(crate) fn new(mu: &'a [f64], r: f64, z: &'a [Complex64]) -> Self {
        Self {
            mu,
            r,
            z,
            ln_abs_z: z.iter().map(|w| w.norm().ln()).collect(),
            arg_z: z.iter().map(|w| w.im.atan2(w.re)).collect(),
        }
    }

    pub(crate) fn term(&self, t: &[u64]) -> Complex64 {
        let level: u64 = t.iter().sum();
        if level == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if self.r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        for (j, &tj) in t.iter().enumerate() {
            if tj > 0 && self.z[j].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
        }
        let x: f64 = t
            .iter()
            .zip(self.mu)
            .map(|(&ti, &m)| ti as f64 * m)
            .sum::<f64>()
            + self.r;
        if level <= DIRECT_LEVEL {
            let mut a = self.r / level as f64;
            for j in 1..level {
                a *= (x - j as f64) / j as f64;
            }
            a *= multinomial_f64(t);
            let mut w = Complex64::new(a, 0.0);
            for (j, &tj) in t.iter().enumerate() {
                if tj > 0 {
                    w *= self.z[j].powi(tj as i32);
                }
            }
            return w;
        }
        let (lf, sf) = ln_falling(x, level);
        if sf == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut ln_mag = self.r.abs().ln() + lf;
        let mut phase = 0.0;
        for (j, &tj) in t.iter().enumerate() {
            if tj > 0 {
                ln_mag += tj as f64 * self.ln_abs_z[j] - ln_factorial(tj);
                phase += tj as f64 * self.arg_z[j];
            }
        }
        let sign = sf * self.r.signum();
        Complex64::from_polar(sign * ln_mag.exp(), phase)
    }
}

/// Visits levels `0..=t_max` in order, passing the compensated level sum and
/// the level's sum of absolute term values.
pub(crate) fn for_each_level(
    mu: &[f64],
    r: f64,
    z: &[Complex64],
    t_max: usize,
    mut visit: impl FnMut(usize, Complex64, f64),
) {
    let ctx = TermContext::new(mu, r, z);
    let k = mu.len();
    for level in 0..=t_max {
        let mut acc = Accumulator::new();
        let mut abs = 0.0;
        if k == 1 {
            let w = ctx.term(&[level as u64]);
            acc.add(w);
            abs += w.norm();
        } else {
            for t in compositions(level as u64, k) {
                let w = ctx.term(&t);
                acc.add(w);
                abs += w.norm();
            }
        }
        visit(level, acc.value(), abs);
    }
}

/// `Σ_{t=0}^{T} A_t(μ, r) z^t` with a ratio-test tail estimate.
pub fn genfun_eval(params: FcParams, z: Complex64, t_max: usize) -> SeriesValue {
    let mut total = Accumulator::new();
    let mut recent = Vec::with_capacity(t_max + 1);
    for_each_level(&[params.mu], params.r, &[z], t_max, |_, w, a| {
        total.add(w);
        recent.push(a);
    });
    let q = ratio_envelope(params.mu) * z.norm();
    SeriesValue {
        value: total.value(),
        truncation_level: t_max,
        tail_estimate: tail_from_ratio(&recent, q, z.norm() == 0.0 || params.r == 0.0),
    }
}

/// `|μ|^μ |1-μ|^{1-μ}` with `0^0 = 1`, so μ ∈ {0, 1} give the unit radius of
/// the binomial series.
fn ratio_envelope(mu: f64) -> f64 {
    let f = |x: f64, e: f64| if x == 0.0 { 1.0 } else { x.abs().powf(e) };
    f(mu, mu) * f(1.0 - mu, 1.0 - mu)
}

const BURN_IN: usize = 10;

fn tail_from_ratio(levels: &[f64], q: f64, trivially_zero: bool) -> f64 {
    if trivially_zero {
        return 0.0;
    }
    let t = levels.len().saturating_sub(1);
    if t < BURN_IN || q > 1.0 {
        return f64::INFINITY;
    }
    // the largest of the last few terms guards against periodic zeros
    let m = levels[t + 1 - BURN_IN..]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    let geometric = if q < 1.0 {
        q / (1.0 - q)
    } else {
        f64::INFINITY
    };
    m * geometric.min(2.0 * t as f64)
}

/// Tail estimate from observed level absolute sums (multiparameter case).
pub(crate) fn tail_from_levels(levels: &[f64]) -> f64 {
    let t = levels.len().saturating_sub(1);
    if levels[1.min(t)..].iter().all(|&a| a == 0.0) && t >= 1 {
        return 0.0;
    }
    if t < BURN_IN {
        return f64::INFINITY;
    }
    let w = (t / 4).max(5);
    let recent = levels[t + 1 - w..].iter().cloned().fold(0.0, f64::max);
    let earlier = levels[t + 1 - 2 * w.min(t / 2)..t + 1 - w]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    if recent == 0.0 {
        return 0.0;
    }
    if earlier == 0.0 {
        return f64::INFINITY;
    }
    let rho = (recent / earlier).powf(1.0 / w as f64);
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    recent * (rho / (1.0 - rho)).min(2.0 * t as f64)
}

/// `ℬ(μ; r; z)` summed by level sets `t = 0..=T`.
pub fn genfun_multi_eval(
    params: &MultiFcParams,
    z: &[Complex64],
    t_max: usize,
) -> Result<SeriesValue> {
    check_dims(params.mu.len(), z.len())?;
    if params.mu.is_empty() {
        return Err(FcError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let mut total = Accumulator::new();
    let mut levels = Vec::with_capacity(t_max + 1);
    for_each_level(&params.mu, params.r, z, t_max, |_, w, a| {
        total.add(w);
        levels.push(a);
    });
    let tail = if z.iter().all(|w| w.norm() == 0.0) || params.r == 0.0 {
        0.0
    } else if params.mu.len() == 1 {
        tail_from_ratio(&levels, ratio_envelope(params.mu[0]) * z[0].norm(), false)
    } else {
        tail_from_levels(&levels)
    };
    Ok(SeriesValue {
        value: total.value(),
        truncation_level: t_max,
        tail_estimate: tail,
    })
}

/// `f^μ` continued from `f = 1` along the branch used by the series; only for
/// residual checks of values near 1.
pub fn near_one_pow(f: Complex64, mu: f64) -> Complex64 {
    let l = Complex64::new(f.norm().ln(), f.im.atan2(f.re));
    (l * mu).exp()
}

/// Exact rational from a float that is known to be a short decimal or dyadic.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}
