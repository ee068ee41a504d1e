//! Worked cases: normal forms of the quintic, trinomials, historical series
//! and identities, each checked against an independent computation.

mod bring_jerrard;
mod brioschi;
mod identities;
mod lambert;
mod ramanujan;
mod runner;
mod sturmfels;
mod tables;
mod trinomial;

pub use bring_jerrard::{
    bring_jerrard_roots, bring_jerrard_threshold, engine_threshold, BjRegime, BjRoots,
};
pub use brioschi::{
    brioschi_analysis, brioschi_conditions, brioschi_equation, brioschi_thresholds,
    curve_polynomial, BrioschiVerdict, CurveCondition, PivotVerdict,
};
pub use identities::{
    aval, gould_g, identity_suite, identity_suite_with, kahkeshani, IdentityCheck,
};
pub use lambert::{
    euler_check, euler_coefficient, lambert_check, lambert_radius, raney_number, EulerReport,
    LambertReport,
};
pub use ramanujan::{gamma_term, ramanujan_check, RamanujanReport};
pub use runner::{brioschi_samples, run_case, run_casebook};
pub use sturmfels::{
    pivot01_root, printed_pivot01, printed_pivot05, sturmfels_checks, sturmfels_m_constant,
    ExpansionTerm, SturmfelsReport,
};
pub use tables::{
    cubic_domain_table, domain_formula, expected_cubic_table, expected_principal_quintic_table,
    original_d02_accepts, principal_quintic_domains, quintic_discriminant_matches, CubicTable,
    Direction, DomainFormula, QuinticTable, BRIOSCHI_DISCRIMINANT, PRINCIPAL_DISCRIMINANT,
};
pub use trinomial::{
    fourth_series_coefficients_agree, trinomial_roots, TrinomialRegime, TrinomialRoots,
    TrinomialSpec,
};

use crate::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One entry of the casebook report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub status: Status,
    pub max_error: f64,
    pub citations: Vec<String>,
}

impl CaseReport {
    pub fn new(name: &str, ok: bool, max_error: f64, citations: &[&str]) -> Self {
        CaseReport {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            max_error,
            citations: citations.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Largest distance from each root to its partner in `oracle`, pairing
/// greedily by nearest unused oracle root. Infinite on a count mismatch.
pub fn max_root_error(roots: &[Complex64], oracle: &[Complex64]) -> f64 {
    if roots.len() != oracle.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; oracle.len()];
    let mut worst: f64 = 0.0;
    for r in roots {
        let best = oracle
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, o)| (i, (r - o).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                worst = worst.max(d);
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Names accepted by the `casebook` runner.
pub const CASE_NAMES: [&str; 7] = [
    "bring-jerrard",
    "trinomial",
    "cubic-table",
    "principal-quintic",
    "brioschi",
    "identities",
    "sturmfels",
];
