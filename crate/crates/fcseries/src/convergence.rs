//! Radius and domain bounds for Fuss-Catalan series.

use crate::fc::FcParams;
use crate::{FcError, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct BoxBound {
    /// `b̂_j`, the largest admissible `|z_j|` with every other coordinate zero.
    pub per_coordinate_max: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexBound {
    pub radius: f64,
    pub mu_star: f64,
}

fn check(mu: f64) -> Result<()> {
    if mu == 0.0 || mu == 1.0 || !mu.is_finite() {
        return Err(FcError::DegenerateExponent(mu));
    }
    Ok(())
}

/// `|μ|^μ |1-μ|^{1-μ}`, the limit of `|A_{t+1}/A_t|`.
pub fn ratio_limit(mu: f64) -> Result<f64> {
    check(mu)?;
    Ok(mu.abs().powf(mu) * (1.0 - mu).abs().powf(1.0 - mu))
}

/// Stirling form of `A_t(μ, r)`.
pub fn asymptotic_fc(params: FcParams, t: u64) -> Result<f64> {
    let (mu, r) = (params.mu, params.r);
    let rho = ratio_limit(mu)?;
    let t = t as f64;
    let pre = r / (2.0 * PI * t.powi(3)).sqrt();
    let shape = mu.abs().powf(r - 0.5) / (1.0 - mu).abs().powf(r + 0.5);
    // combine in logs so large t does not overflow the geometric factor
    Ok(pre * shape * (t * rho.ln()).exp())
}

pub fn trinomial_radius(mu: f64) -> Result<f64> {
    Ok(1.0 / ratio_limit(mu)?)
}

pub fn necessary_box(mu: &[f64]) -> Result<BoxBound> {
    let per_coordinate_max = mu
        .iter()
        .map(|&m| trinomial_radius(m))
        .collect::<Result<_>>()?;
    Ok(BoxBound { per_coordinate_max })
}

pub fn sufficient_simplex(mu: &[f64]) -> Result<SimplexBound> {
    if mu.is_empty() {
        return Err(FcError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    for &m in mu {
        check(m)?;
    }
    let lo = mu.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = mu.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let radius = trinomial_radius(lo)?.min(trinomial_radius(hi)?);
    // ties (up to rounding of the inputs) go to the upper extreme
    let (dl, dh) = ((lo - 0.5).abs(), (hi - 0.5).abs());
    let mu_star = if dl > dh + 1e-12 { lo } else { hi };
    Ok(SimplexBound { radius, mu_star })
}

pub fn mellin_bound(mu: &[f64]) -> Result<f64> {
    let s = sufficient_simplex(mu)?;
    Ok(s.radius / mu.len() as f64)
}

/// `(lower, upper)` bounds on the measure of the amplitude domain.
pub fn measure_bounds(mu: &[f64]) -> Result<(f64, f64)> {
    let upper = necessary_box(mu)?.per_coordinate_max.iter().product();
    let s = sufficient_simplex(mu)?;
    let k = mu.len();
    let kfact: f64 = (1..=k).map(|i| i as f64).product();
    let lower = trinomial_radius(s.mu_star)?.powi(k as i32) / kfact;
    Ok((lower, upper))
}

/// Ramanujan's radius for `a q x^p + x^q = 1`.
pub fn ramanujan_radius(p: f64, q: f64) -> f64 {
    p.abs().powf(-p / q) * (p - q).abs().powf((p - q) / q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fc::{fc_number, fc_number_exact};
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    #[test]
    fn ratio_examples() {
        assert!((ratio_limit(2.0).unwrap() - 4.0).abs() < 1e-15);
        assert!((ratio_limit(0.5).unwrap() - 0.5).abs() < 1e-15);
        let r = ratio_limit(0.2).unwrap();
        assert!((1.0 / r - 5.0 / 4f64.powf(0.8)).abs() < 1e-14);
        assert!(ratio_limit(0.0).is_err());
        assert!(ratio_limit(1.0).is_err());
    }

    #[test]
    fn radii() {
        assert!((trinomial_radius(5.0).unwrap() - 256.0 / 3125.0).abs() < 1e-16);
        assert!((trinomial_radius(-0.25).unwrap() - 4.0 / 5f64.powf(1.25)).abs() < 1e-15);
        assert!((trinomial_radius(0.5).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn boxes_and_simplices() {
        let b = necessary_box(&[0.5, 1.5]).unwrap().per_coordinate_max;
        assert!((b[0] - 2.0).abs() < 1e-15);
        assert!((b[1] - 2.0 * 3f64.powf(-1.5)).abs() < 1e-15);
        assert!((necessary_box(&[2.0]).unwrap().per_coordinate_max[0] - 0.25).abs() < 1e-16);
        assert!((necessary_box(&[5.0]).unwrap().per_coordinate_max[0] - 0.08192).abs() < 1e-15);

        let s = sufficient_simplex(&[0.5, 1.5]).unwrap();
        assert!((s.radius - b[1]).abs() < 1e-15);
        assert_eq!(s.mu_star, 1.5);
        let s = sufficient_simplex(&[1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert_eq!(s.mu_star, 2.0 / 3.0);
        assert!((s.radius - trinomial_radius(1.0 / 3.0).unwrap()).abs() < 1e-14);

        assert!((mellin_bound(&[0.5, 1.5]).unwrap() - 0.5 * b[1]).abs() < 1e-15);
        assert!((mellin_bound(&[3.0]).unwrap() - trinomial_radius(3.0).unwrap()).abs() < 1e-15);
        let quint = [0.2, 0.4, 0.6, 0.8];
        let expect = 0.25
            * trinomial_radius(0.2)
                .unwrap()
                .min(trinomial_radius(0.8).unwrap());
        assert!((mellin_bound(&quint).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn measures() {
        let (lo, hi) = measure_bounds(&[2.0]).unwrap();
        assert!((lo - 0.25).abs() < 1e-16 && (hi - 0.25).abs() < 1e-16);
        let (lo, hi) = measure_bounds(&[2.0, 2.0]).unwrap();
        assert!((lo - 0.03125).abs() < 1e-16 && (hi - 0.0625).abs() < 1e-16);
        let r = 2.0 * 3f64.powf(-1.5);
        let (lo, hi) = measure_bounds(&[0.5, 1.5]).unwrap();
        assert!((lo - 0.5 * r * r).abs() < 1e-15 && (hi - 2.0 * r).abs() < 1e-15);
    }

    fn exact_catalan(mu: i64, r: i64, t: u64) -> f64 {
        fc_number_exact(
            &BigRational::from_integer(mu.into()),
            &BigRational::from_integer(r.into()),
            t,
        )
        .to_f64()
        .unwrap()
    }

    #[test]
    fn stirling_against_exact() {
        let ratio = |mu, r, t| {
            asymptotic_fc(FcParams::new(mu as f64, r as f64), t).unwrap() / exact_catalan(mu, r, t)
        };
        // frozen from an independent big-rational evaluation; the leading
        // correction for Catalan numbers is 9/(8t)
        assert!((ratio(2, 1, 40) - 1.028_208_051_440_200_3).abs() < 1e-12);
        assert!((ratio(2, 1, 400) - 1.002_813_330_123_699).abs() < 1e-12);
        assert!((ratio(3, 2, 100) - 1.012_661_791_666_887).abs() < 1e-12);
        let f = fc_number(FcParams::new(2.0, 1.0), 400);
        assert!((f / exact_catalan(2, 1, 400) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stirling_error_decays_like_one_over_t() {
        // magnitudes only: for negative mu the numbers alternate in sign
        for &(mu, r) in &[
            (2.0, 1.0),
            (3.0, 2.0),
            (-1.5, 0.7),
            (5.0, -2.5),
            (-4.0, 3.0),
            (-5.0, -3.0),
        ] {
            let p = FcParams::new(mu, r);
            let mut prev = f64::INFINITY;
            for t in (40..=200).step_by(20) {
                let e = (asymptotic_fc(p, t).unwrap().abs() / fc_number(p, t).abs() - 1.0).abs();
                assert!(e < 0.05, "mu={mu} r={r} t={t} err={e}");
                assert!(e * t as f64 <= 2.0);
                assert!(e <= prev);
                prev = e;
            }
        }
    }

    #[test]
    fn ramanujan_radius_is_scaled_trinomial_radius() {
        for &(p, q) in &[(2.0, 3.0), (1.0, 4.0), (5.0, 2.0), (-1.0, 3.0)] {
            let r = ramanujan_radius(p, q);
            let via = trinomial_radius(p / q).unwrap() / q.abs();
            assert!((r - via).abs() < 1e-14 * r);
        }
    }
}
