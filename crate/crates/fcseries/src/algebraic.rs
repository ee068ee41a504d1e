//! Pivot scaling, branch enumeration and series roots of polynomials.

use crate::cplx;
use crate::fc::{fc_multi_exact, genfun_multi_eval, MultiFcParams};
use crate::{Complex64, FcError, Result};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PivotChoice {
    pub p: usize,
    pub q: usize,
}

impl PivotChoice {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p >= q {
            return Err(FcError::InvalidPivot {
                p,
                q,
                reason: "p must be smaller than q".into(),
            });
        }
        Ok(Self { p, q })
    }

    pub fn gap(&self) -> usize {
        self.q - self.p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicEquation {
    coeffs: Vec<Complex64>,
}

impl AlgebraicEquation {
    /// Coefficients `a_0..a_n` in increasing degree.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(FcError::InvalidEquation("degree must be at least 2".into()));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(FcError::InvalidEquation("non-finite coefficient".into()));
        }
        if coeffs[0].norm() == 0.0 {
            return Err(FcError::InvalidEquation("a_0 must be nonzero".into()));
        }
        if coeffs.last().map_or(true, |c| c.norm() == 0.0) {
            return Err(FcError::InvalidEquation(
                "leading coefficient must be nonzero".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Indices of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&j| self.coeffs[j].norm() != 0.0)
            .collect()
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &a| acc * x + a)
    }

    fn check_pivot(&self, pivot: PivotChoice) -> Result<()> {
        let bad = |reason: &str| FcError::InvalidPivot {
            p: pivot.p,
            q: pivot.q,
            reason: reason.into(),
        };
        if pivot.q > self.degree() {
            return Err(bad("q exceeds the degree"));
        }
        if self.coeffs[pivot.p].norm() == 0.0 || self.coeffs[pivot.q].norm() == 0.0 {
            return Err(bad("pivot coefficient is zero"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledEquation {
    pub pivot: PivotChoice,
    /// `b_j` for the nonzero coefficients outside the pivot slots.
    pub b: BTreeMap<usize, Complex64>,
    pub mu: BTreeMap<usize, f64>,
    pub branch_count: usize,
    /// `x = c·y`, with `c^{q-p} = a_p/a_q`.
    pub scale: Complex64,
    ln_scale: Complex64,
}

impl ScaledEquation {
    pub fn free(&self) -> Vec<usize> {
        self.b.keys().copied().collect()
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.b.values().map(|w| w.norm()).collect()
    }
}

pub fn scale_equation(eq: &AlgebraicEquation, pivot: PivotChoice) -> Result<ScaledEquation> {
    eq.check_pivot(pivot)?;
    let a = eq.coeffs();
    let g = pivot.gap() as f64;
    // each pivot coefficient is rooted on the fixed cut before dividing
    let ln_scale = (cplx::ln(a[pivot.p]) - cplx::ln(a[pivot.q])) / g;
    let mut b = BTreeMap::new();
    let mut mu = BTreeMap::new();
    for j in eq.support() {
        if j == pivot.p || j == pivot.q {
            continue;
        }
        let d = j as f64 - pivot.p as f64;
        b.insert(j, a[j] * (ln_scale * d).exp() / a[pivot.p]);
        mu.insert(j, d / g);
    }
    Ok(ScaledEquation {
        pivot,
        b,
        mu,
        branch_count: pivot.gap(),
        scale: ln_scale.exp(),
        ln_scale,
    })
}

/// `e^{iπ(2ℓ+1)/(q-p)}` for `ℓ = 0..q-p-1`.
pub fn branch_phases(pivot: PivotChoice) -> Vec<Complex64> {
    let g = pivot.gap();
    (0..g)
        .map(|l| cplx::expi_pi((2 * l + 1) as f64 / g as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSeriesResult {
    pub pivot: PivotChoice,
    pub branch: usize,
    pub power: f64,
    pub value: Complex64,
    pub truncation: usize,
    pub tail_estimate: f64,
    /// Scale-free residual of the `r = 1` root in the original equation.
    pub residual: f64,
}

/// Series arguments `z_j = b_j ω_ℓ^{j-p}` for branch ℓ.
pub fn branch_arguments(s: &ScaledEquation, l: usize) -> Vec<Complex64> {
    let g = s.branch_count as f64;
    let odd = (2 * l + 1) as f64;
    s.b.iter()
        .map(|(&j, &bj)| bj * cplx::expi_pi(odd * (j as f64 - s.pivot.p as f64) / g))
        .collect()
}

/// `Σ_t 𝒜_t(μ, r/(q-p)) ∏ z_j^{t_j}` for branch ℓ.
fn branch_series(s: &ScaledEquation, l: usize, r: f64, t_max: usize) -> Result<(Complex64, f64)> {
    let g = s.branch_count as f64;
    if s.b.is_empty() || r == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    let z = branch_arguments(s, l);
    let params = MultiFcParams::new(s.mu.values().copied().collect(), r / g);
    let v = genfun_multi_eval(&params, &z, t_max)?;
    Ok((v.value, v.tail_estimate))
}

/// `(cω)^r` taken as `e^{r(ln c + iπ(2ℓ+1)/(q-p))}`.
fn prefactor(s: &ScaledEquation, l: usize, r: f64) -> Complex64 {
    let g = s.branch_count as f64;
    let phase = Complex64::new(0.0, std::f64::consts::PI * (2 * l + 1) as f64 / g);
    ((s.ln_scale + phase) * r).exp()
}

pub fn series_root_power(
    eq: &AlgebraicEquation,
    pivot: PivotChoice,
    l: usize,
    r: f64,
    t_max: usize,
) -> Result<RootSeriesResult> {
    let s = scale_equation(eq, pivot)?;
    series_root_power_scaled(eq, &s, l, r, t_max)
}

fn series_root_power_scaled(
    eq: &AlgebraicEquation,
    s: &ScaledEquation,
    l: usize,
    r: f64,
    t_max: usize,
) -> Result<RootSeriesResult> {
    if l >= s.branch_count {
        return Err(FcError::BranchOutOfRange {
            branch: l,
            count: s.branch_count,
        });
    }
    let (sum, tail) = branch_series(s, l, r, t_max)?;
    let pre = prefactor(s, l, r);
    let value = pre * sum;
    let root = if r == 1.0 {
        value
    } else {
        prefactor(s, l, 1.0) * branch_series(s, l, 1.0, t_max)?.0
    };
    Ok(RootSeriesResult {
        pivot: s.pivot,
        branch: l,
        power: r,
        value,
        truncation: t_max,
        tail_estimate: tail * pre.norm(),
        residual: residual(eq, root),
    })
}

/// `|P(x)| / Σ |a_j| |x|^j`.
pub fn residual(eq: &AlgebraicEquation, x: Complex64) -> f64 {
    let num = eq.eval(x).norm();
    let den: f64 = eq
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| a.norm() * x.norm().powi(j as i32))
        .sum();
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// One term of the Laurent–Puiseux expansion of `x_ℓ^r` in the original
/// coefficients: `coefficient · phase · a_p^{exp_p} a_q^{exp_q} ∏ a_j^{t_j}`
/// times the prefactor `(e^{iπ(2ℓ+1)/(q-p)} (a_p/a_q)^{1/(q-p)})^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPuiseuxTerm {
    /// Exponents of the free coefficients, in increasing slot order.
    pub t: Vec<u64>,
    pub coefficient: BigRational,
    /// The phase is `e^{iπ(2ℓ+1)·phase_turns}`.
    pub phase_turns: BigRational,
    pub exp_p: BigRational,
    pub exp_q: BigRational,
}

pub fn laurent_puiseux_terms(
    free: &[usize],
    pivot: PivotChoice,
    r: &BigRational,
    max_level: u64,
) -> Result<Vec<LaurentPuiseuxTerm>> {
    let g = BigRational::from_integer((pivot.gap() as i64).into());
    let mu: Vec<BigRational> = free
        .iter()
        .map(|&j| BigRational::from_integer((j as i64 - pivot.p as i64).into()) / &g)
        .collect();
    let rg = r / &g;
    let mut out = Vec::new();
    for level in 0..=max_level {
        for t in crate::fc::compositions(level, free.len().max(1)) {
            let t = if free.is_empty() { vec![] } else { t };
            if free.is_empty() && level > 0 {
                break;
            }
            let coefficient = if free.is_empty() {
                BigRational::from_integer(1.into())
            } else {
                fc_multi_exact(&mu, &rg, &t)?
            };
            let tmu: BigRational = t
                .iter()
                .zip(&mu)
                .map(|(&ti, m)| m * BigRational::from_integer((ti as i64).into()))
                .fold(BigRational::zero(), |a, b| a + b);
            let lvl = BigRational::from_integer((level as i64).into());
            out.push(LaurentPuiseuxTerm {
                t,
                coefficient,
                phase_turns: tmu.clone(),
                exp_p: -(lvl - &tmu),
                exp_q: -tmu,
            });
        }
    }
    Ok(out)
}

const ORACLE_ITERATIONS: usize = 10_000;
const ORACLE_RESTARTS: usize = 6;

/// All roots by Aberth iteration from a deterministic circle, with restarts
/// and a final Newton polish; sorted by real then imaginary part.
pub fn oracle_roots(eq: &AlgebraicEquation) -> Result<Vec<Complex64>> {
    let n = eq.degree();
    let lead = eq.coeffs()[n];
    let monic: Vec<Complex64> = eq.coeffs().iter().map(|a| a / lead).collect();
    let radius = monic[0].norm().powf(1.0 / n as f64);
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for attempt in 0..ORACLE_RESTARTS {
        let rho = radius * (1.0 + 0.37 * attempt as f64);
        let shift = 0.4 + 0.71 * attempt as f64;
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                Complex64::from_polar(
                    rho,
                    2.0 * std::f64::consts::PI * k as f64 / n as f64 + shift,
                )
            })
            .collect();
        let converged = aberth(&monic, &mut z);
        for zk in z.iter_mut() {
            *zk = polish(&monic, *zk);
        }
        let worst = z.iter().map(|&x| residual(eq, x)).fold(0.0, f64::max);
        if best.as_ref().map_or(true, |(w, _)| worst < *w) {
            best = Some((worst, z));
        }
        if converged && worst < 1e-12 {
            break;
        }
    }
    let (worst, mut z) = best.expect("at least one attempt");
    if !(worst < 1e-10) {
        return Err(FcError::OracleFailure(format!("worst residual {worst:e}")));
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

fn horner_with_derivative(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

fn aberth(c: &[Complex64], z: &mut [Complex64]) -> bool {
    let n = z.len();
    for _ in 0..ORACLE_ITERATIONS {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut repulse = Complex64::zero();
            for j in 0..n {
                if j != k {
                    repulse += (z[k] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            if !step.re.is_finite() || !step.im.is_finite() {
                return false;
            }
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1e-300));
        }
        if moved < 1e-15 {
            return true;
        }
    }
    false
}

fn polish(c: &[Complex64], mut x: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (p, dp) = horner_with_derivative(c, x);
        if dp.norm() == 0.0 {
            break;
        }
        let y = x - p / dp;
        if horner_with_derivative(c, y).0.norm() < p.norm() {
            x = y;
        } else {
            break;
        }
    }
    x
}

/// Largest partial-sum level tried by `solve_all`.
pub const SOLVE_MAX_LEVEL: usize = 1 << 16;
/// Work cap in series terms per branch evaluation.
pub const SOLVE_TERM_BUDGET: f64 = 4.0e6;

fn terms_up_to(level: usize, k: usize) -> f64 {
    // C(level + k, k)
    (1..=k).fold(1.0, |acc, i| acc * (level + i) as f64 / i as f64)
}

/// Pivots in the order `solve_all` tries them: widest gap first.
pub fn pivot_order(eq: &AlgebraicEquation) -> Vec<PivotChoice> {
    let support = eq.support();
    let mut out = Vec::new();
    for &p in &support {
        for &q in &support {
            if p < q {
                out.push(PivotChoice { p, q });
            }
        }
    }
    out.sort_by(|a, b| b.gap().cmp(&a.gap()).then(a.cmp(b)));
    out
}

/// Series evaluation with `T = 50, 100, ...` until the tail is below 1e-9,
/// `T` passes 2^16 or the term budget runs out.
pub fn converge_branch(
    eq: &AlgebraicEquation,
    s: &ScaledEquation,
    l: usize,
) -> Result<RootSeriesResult> {
    let k = s.b.len();
    let mut t = 50;
    loop {
        let res = series_root_power_scaled(eq, s, l, 1.0, t)?;
        let next = 2 * t;
        if res.tail_estimate < 1e-9
            || next > SOLVE_MAX_LEVEL
            || terms_up_to(next, k) > SOLVE_TERM_BUDGET
        {
            return Ok(res);
        }
        t = next;
    }
}

/// Collects convergent series roots over all pivots until the degree is
/// covered. Roots on a domain boundary count as convergent.
pub fn solve_all(eq: &AlgebraicEquation) -> Result<Vec<RootSeriesResult>> {
    let n = eq.degree();
    let support = eq.support();
    let mut found: Vec<RootSeriesResult> = Vec::new();
    for pivot in pivot_order(eq) {
        let s = scale_equation(eq, pivot)?;
        if !pivot_converges(eq, &s, n, &support)? {
            continue;
        }
        let mut batch = Vec::new();
        for l in 0..s.branch_count {
            let res = converge_branch(eq, &s, l)?;
            if !res.tail_estimate.is_finite() {
                continue;
            }
            let tol = 1e-6 * res.value.norm().max(1.0);
            let dup = found.iter().any(|f| (f.value - res.value).norm() <= tol);
            if !dup {
                batch.push(res);
            }
        }
        found.extend(batch);
        if found.len() >= n {
            found.truncate(n);
            return Ok(found);
        }
    }
    Err(FcError::NoConvergentCover {
        found: found.len(),
        degree: n,
        roots: found.iter().map(|r| r.value).collect(),
    })
}

fn pivot_converges(
    eq: &AlgebraicEquation,
    s: &ScaledEquation,
    n: usize,
    support: &[usize],
) -> Result<bool> {
    if s.b.is_empty() {
        return Ok(true);
    }
    if n > crate::discriminant::MAX_DEGREE {
        // no exact family: fall back to the box bound
        let bound = crate::convergence::necessary_box(&s.mu.values().copied().collect::<Vec<_>>())?;
        return Ok(s
            .amplitudes()
            .iter()
            .zip(&bound.per_coordinate_max)
            .all(|(b, m)| b <= m));
    }
    let fam = crate::discriminant::build_family_with_support(s.pivot, n, support)?;
    match crate::domain::member(&s.amplitudes(), &fam) {
        Ok(v) => Ok(v.inside),
        // no usable boundary members: ask the partial sums instead
        Err(FcError::NoActiveBoundary | FcError::Indeterminate(_)) => {
            let sched = crate::domain::default_schedule(s.b.len());
            let v = crate::domain::empirical_convergence(eq, s.pivot, 0, &sched)?;
            Ok(v == crate::domain::Empirical::Converges)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn scaling_example() {
        let eq = AlgebraicEquation::from_real(&[1.0, 2.0, 4.0, 8.0]).unwrap();
        let s = scale_equation(&eq, PivotChoice::new(0, 2).unwrap()).unwrap();
        assert!((s.b[&1] - c(1.0)).norm() < 1e-15);
        assert!((s.b[&3] - c(1.0)).norm() < 1e-15);
        assert_eq!(s.mu[&1], 0.5);
        assert_eq!(s.mu[&3], 1.5);
    }

    #[test]
    fn phases() {
        let p = branch_phases(PivotChoice::new(0, 1).unwrap());
        assert!((p[0] - c(-1.0)).norm() < 1e-15);
        let p = branch_phases(PivotChoice::new(1, 3).unwrap());
        assert!((p[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((p[1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn residual_examples() {
        let eq = AlgebraicEquation::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(residual(&eq, c(1.0)), 0.0);
        assert!((residual(&eq, c(2.0)) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn invalid_inputs() {
        assert!(AlgebraicEquation::from_real(&[0.0, 1.0, 1.0]).is_err());
        assert!(AlgebraicEquation::from_real(&[1.0, 1.0, 0.0]).is_err());
        assert!(AlgebraicEquation::from_real(&[1.0, 1.0]).is_err());
        assert!(PivotChoice::new(2, 2).is_err());
        let eq = AlgebraicEquation::from_real(&[1.0, 0.0, 1.0]).unwrap();
        assert!(scale_equation(&eq, PivotChoice::new(1, 2).unwrap()).is_err());
        assert!(series_root_power(&eq, PivotChoice::new(0, 2).unwrap(), 2, 1.0, 5).is_err());
    }
}
