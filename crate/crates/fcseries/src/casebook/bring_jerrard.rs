//! Bring-Jerrard quintic `x^5 - x + γ = 0`.

use super::max_root_error;
use crate::algebraic::{
    converge_branch, oracle_roots, scale_equation, series_root_power, AlgebraicEquation,
    PivotChoice,
};
use crate::discriminant::build_family_with_support;
use crate::domain::boundary_on_ray;
use crate::{Complex64, FcError, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BjRegime {
    /// `γ = 0`: the roots are 0 and the fourth roots of unity.
    Factored,
    /// `|γ|` above the threshold: five roots from the (0,5) series.
    Large,
    /// `|γ|` below: one root from (0,1) and four from (1,5).
    Split,
    /// Within 1e-9 of the threshold: both regimes were evaluated.
    Threshold,
}

#[derive(Debug, Clone, Serialize)]
pub struct BjRoots {
    pub regime: BjRegime,
    /// `(pivot, branch, root)` for each series root.
    pub roots: Vec<((usize, usize), usize, Complex64)>,
    pub max_oracle_error: f64,
    pub warnings: Vec<String>,
}

impl BjRoots {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.2).collect()
    }
}

/// `4/5^{5/4}`.
pub fn bring_jerrard_threshold() -> f64 {
    4.0 / 5f64.powf(1.25)
}

fn equation(gamma: Complex64) -> Result<AlgebraicEquation> {
    let c = |x: f64| Complex64::new(x, 0.0);
    AlgebraicEquation::new(vec![gamma, c(-1.0), c(0.0), c(0.0), c(0.0), c(1.0)])
}

/// The threshold found by the domain engine: the (0,5) series has the
/// single amplitude `|γ|^{-4/5}`, so `γ* = λ*^{-5/4}`.
pub fn engine_threshold() -> Result<f64> {
    let fam = build_family_with_support(PivotChoice::new(0, 5)?, 5, &[0, 1, 5])?;
    Ok(boundary_on_ray(&[1.0], &fam)?.powf(-1.25))
}

/// All five roots. `terms = None` picks truncations adaptively.
pub fn bring_jerrard_roots(gamma: Complex64, terms: Option<usize>) -> Result<BjRoots> {
    if !gamma.is_finite() {
        return Err(FcError::OutOfRange("γ must be finite".into()));
    }
    if gamma.norm() == 0.0 {
        let roots = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
            .into_iter()
            .map(|(re, im)| ((0, 0), 0, Complex64::new(re, im)))
            .collect();
        return Ok(BjRoots {
            regime: BjRegime::Factored,
            roots,
            max_oracle_error: 0.0,
            warnings: vec![],
        });
    }
    let eq = equation(gamma)?;
    let edge = bring_jerrard_threshold();
    let (regime, sets): (BjRegime, Vec<Vec<(usize, usize)>>) =
        if (gamma.norm() - edge).abs() <= 1e-9 {
            (
                BjRegime::Threshold,
                vec![vec![(0, 5)], vec![(0, 1), (1, 5)]],
            )
        } else if gamma.norm() > edge {
            (BjRegime::Large, vec![vec![(0, 5)]])
        } else {
            (BjRegime::Split, vec![vec![(0, 1), (1, 5)]])
        };
    let oracle = oracle_roots(&eq)?;
    let mut warnings = Vec::new();
    if regime == BjRegime::Threshold {
        warnings.push(
            "|γ| is at the threshold: both regimes converge slowly (tail ~ T^-1/2)".to_string(),
        );
    }
    let mut best: Option<(f64, Vec<((usize, usize), usize, Complex64)>)> = None;
    for set in sets {
        let mut roots = Vec::new();
        for (p, q) in set {
            let pivot = PivotChoice::new(p, q)?;
            let s = scale_equation(&eq, pivot)?;
            for l in 0..s.branch_count {
                let v = match terms {
                    Some(t) => series_root_power(&eq, pivot, l, 1.0, t)?.value,
                    None => converge_branch(&eq, &s, l)?.value,
                };
                roots.push(((p, q), l, v));
            }
        }
        let vals: Vec<Complex64> = roots.iter().map(|r| r.2).collect();
        let err = max_root_error(&vals, &oracle);
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            best = Some((err, roots));
        }
    }
    let (max_oracle_error, roots) = best.expect("at least one regime");
    Ok(BjRoots {
        regime,
        roots,
        max_oracle_error,
        warnings,
    })
}
