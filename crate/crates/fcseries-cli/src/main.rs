mod parse;

use clap::{Args, Parser, Subcommand};
use fcseries::algebraic::{
    converge_branch, scale_equation, series_root_power, solve_all, AlgebraicEquation, PivotChoice,
    RootSeriesResult, ScaledEquation,
};
use fcseries::casebook::{
    bring_jerrard_roots, brioschi_analysis, brioschi_thresholds, run_case, run_casebook,
    CaseReport, CASE_NAMES,
};
use fcseries::convergence::{measure_bounds, mellin_bound, sufficient_simplex};
use fcseries::discriminant::{build_family_with_support, PsiFamily};
use fcseries::domain::{
    active_members, binding_members, boundary_on_ray, box_bound, member, trace_csv, trace_level_set,
};
use fcseries::fc::{genfun_eval, FcParams};
use fcseries::{Complex64, FcError};
use parse::{fmt_complex, fmt_real};
use serde::Serialize;
use std::io::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

/// Fuss-Catalan series solutions of algebraic equations.
#[derive(Parser)]
#[command(name = "fcseries", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the generating function B(mu; r; z).
    Eval {
        #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
        r: f64,
        /// `a+bi` or `re,im`
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        z: Complex64,
        #[command(flatten)]
        opts: Common,
    },
    /// Roots of a0 + a1 x + ... + an x^n from convergent series.
    Solve {
        #[command(flatten)]
        eq: Equation,
        /// Use only this pivot pair.
        #[arg(long, value_parser = parse::index_pair)]
        pivot: Option<(usize, usize)>,
        #[command(flatten)]
        opts: Common,
    },
    /// Domain of convergence queries for one pivot.
    Domain {
        #[command(subcommand)]
        query: DomainQuery,
    },
    /// CSV trace of the boundary members' zero sets in two amplitudes.
    Trace {
        #[command(flatten)]
        eq: Equation,
        #[arg(long, value_parser = parse::index_pair)]
        pivot: (usize, usize),
        /// Equation indices of the two traced amplitudes.
        #[arg(long, value_parser = parse::index_pair)]
        vars: (usize, usize),
        /// x0,x1,y0,y1
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Run a worked case.
    Casebook {
        /// One of the case names, or `all`.
        name: String,
        /// Brioschi parameter; reports the per-pivot verdict for this value.
        #[arg(long = "C", value_parser = parse::complex, allow_hyphen_values = true)]
        c: Option<Complex64>,
        /// Bring-Jerrard parameter; reports the five roots for this value.
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        gamma: Option<Complex64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum DomainQuery {
    /// Is the amplitude point inside the domain?
    Member(DomainArgs),
    /// Distance to the boundary along the ray through the point.
    Ray(DomainArgs),
    /// Box, simplex and measure bounds.
    Bounds(DomainArgs),
}

#[derive(Args)]
struct DomainArgs {
    #[command(flatten)]
    eq: Equation,
    #[arg(long, value_parser = parse::index_pair)]
    pivot: (usize, usize),
    /// Amplitudes |b_j| for the free slots; defaults to the equation's own.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Equation {
    /// a0,a1,...,an; complex entries as `a+bi` or `(re,im)`
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
}

#[derive(Args)]
struct Common {
    /// Truncation level; overrides FC_TERMS.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Input(String),
    NoCover(String),
    Internal(String),
}

impl From<FcError> for Failure {
    fn from(e: FcError) -> Self {
        match e {
            FcError::NoConvergentCover { .. } => Failure::NoCover(e.to_string()),
            FcError::Inconsistent(_) | FcError::OracleFailure(_) | FcError::Indeterminate(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn terms(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("FC_TERMS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Input(format!("FC_TERMS={v:?} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn json<T: Serialize>(v: &T) -> Out {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))
}

#[derive(Serialize)]
struct EvalOut {
    value: Complex64,
    truncation: usize,
    tail_estimate: f64,
}

fn eval(mu: f64, r: f64, z: Complex64, opts: Common) -> Out {
    let params = FcParams::new(mu, r);
    let v = match terms(opts.terms)? {
        Some(t) => genfun_eval(params, z, t),
        None => {
            let mut t = 64;
            loop {
                let v = genfun_eval(params, z, t);
                if v.tail_estimate < 1e-15 || t >= 1 << 16 {
                    break v;
                }
                t *= 2;
            }
        }
    };
    let out = EvalOut {
        value: v.value,
        truncation: v.truncation_level,
        tail_estimate: v.tail_estimate,
    };
    if opts.json {
        return json(&out);
    }
    let value = if z.im == 0.0 && v.value.im == 0.0 {
        fmt_real(v.value.re)
    } else {
        fmt_complex(v.value)
    };
    Ok(format!(
        "{value}\nterms: {}\ntail_estimate: {}",
        out.truncation,
        fmt_real(out.tail_estimate)
    ))
}

#[derive(Serialize)]
struct RootOut {
    pivot: (usize, usize),
    branch: usize,
    value: Complex64,
    truncation: usize,
    tail_estimate: f64,
    residual: f64,
}

impl From<&RootSeriesResult> for RootOut {
    fn from(r: &RootSeriesResult) -> Self {
        RootOut {
            pivot: (r.pivot.p, r.pivot.q),
            branch: r.branch,
            value: r.value,
            truncation: r.truncation,
            tail_estimate: r.tail_estimate,
            residual: r.residual,
        }
    }
}

fn root_table(roots: &[RootSeriesResult]) -> String {
    let mut lines = vec!["pivot branch root residual tail_estimate terms".to_string()];
    for r in roots {
        lines.push(format!(
            "({},{}) {} {} {} {} {}",
            r.pivot.p,
            r.pivot.q,
            r.branch,
            fmt_complex(r.value),
            fmt_real(r.residual),
            fmt_real(r.tail_estimate),
            r.truncation
        ));
    }
    lines.join("\n")
}

fn equation(coeffs: &str) -> Result<AlgebraicEquation, Failure> {
    let c = parse::complex_list(coeffs).map_err(Failure::Input)?;
    Ok(AlgebraicEquation::new(c)?)
}

fn pivot(eq: &AlgebraicEquation, (p, q): (usize, usize)) -> Result<ScaledEquation, Failure> {
    Ok(scale_equation(eq, PivotChoice::new(p, q)?)?)
}

fn solve(eqn: Equation, pv: Option<(usize, usize)>, opts: Common) -> Out {
    let eq = equation(&eqn.coeffs)?;
    let t = terms(opts.terms)?;
    let roots = match pv {
        Some(pq) => {
            let s = pivot(&eq, pq)?;
            (0..s.branch_count)
                .map(|l| match t {
                    Some(t) => series_root_power(&eq, s.pivot, l, 1.0, t),
                    None => converge_branch(&eq, &s, l),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        None => {
            let found = solve_all(&eq)?;
            match t {
                Some(t) => found
                    .iter()
                    .map(|r| series_root_power(&eq, r.pivot, r.branch, 1.0, t))
                    .collect::<Result<Vec<_>, _>>()?,
                None => found,
            }
        }
    };
    if opts.json {
        json(&roots.iter().map(RootOut::from).collect::<Vec<_>>())
    } else {
        Ok(root_table(&roots))
    }
}

fn family(eq: &AlgebraicEquation, s: &ScaledEquation) -> Result<Arc<PsiFamily>, Failure> {
    Ok(build_family_with_support(
        s.pivot,
        eq.degree(),
        &eq.support(),
    )?)
}

#[derive(Serialize)]
struct BoundsOut {
    mu: Vec<f64>,
    box_bound: Vec<f64>,
    simplex_radius: f64,
    mellin_bound: f64,
    measure_lower: f64,
    measure_upper: f64,
    active_members: Vec<String>,
    binding_members: Vec<String>,
}

fn domain(query: DomainQuery) -> Out {
    let (kind, a) = match query {
        DomainQuery::Member(a) => ("member", a),
        DomainQuery::Ray(a) => ("ray", a),
        DomainQuery::Bounds(a) => ("bounds", a),
    };
    let eq = equation(&a.eq.coeffs)?;
    let s = pivot(&eq, a.pivot)?;
    let point = match &a.point {
        Some(p) => parse::real_list(p).map_err(Failure::Input)?,
        None => s.amplitudes(),
    };
    match kind {
        "member" => {
            let fam = family(&eq, &s)?;
            let v = member(&point, &fam)?;
            if a.json {
                return json(&v);
            }
            let mut out = format!("inside: {}\non_boundary: {}", v.inside, v.on_boundary);
            if let Some((id, lambda)) = &v.binding {
                out.push_str(&format!("\nbinding: {id} at {}", fmt_real(*lambda)));
            }
            Ok(out)
        }
        "ray" => {
            let fam = family(&eq, &s)?;
            let lambda = boundary_on_ray(&point, &fam)?;
            if a.json {
                return json(&serde_json::json!({ "direction": point, "lambda": lambda }));
            }
            Ok(fmt_real(lambda))
        }
        _ => {
            let mu: Vec<f64> = s.mu.values().copied().collect();
            if mu.is_empty() {
                return Err(Failure::Input("pivot leaves no free coefficients".into()));
            }
            let fam = family(&eq, &s)?;
            let (lo, hi) = measure_bounds(&mu)?;
            let b = BoundsOut {
                box_bound: box_bound(&fam)?,
                simplex_radius: sufficient_simplex(&mu)?.radius,
                mellin_bound: mellin_bound(&mu)?,
                measure_lower: lo,
                measure_upper: hi,
                active_members: active_members(&fam)?.iter().map(|m| m.id.clone()).collect(),
                binding_members: binding_members(&fam, 48)?,
                mu,
            };
            if a.json {
                return json(&b);
            }
            let list = |v: &[f64]| v.iter().map(|x| fmt_real(*x)).collect::<Vec<_>>().join(",");
            Ok(format!(
                "mu: {}\nbox: {}\nsimplex_radius: {}\nmellin_bound: {}\nmeasure: [{}, {}]\nactive: {}\nbinding: {}",
                list(&b.mu),
                list(&b.box_bound),
                fmt_real(b.simplex_radius),
                fmt_real(b.mellin_bound),
                fmt_real(b.measure_lower),
                fmt_real(b.measure_upper),
                b.active_members.join(" "),
                b.binding_members.join(" ")
            ))
        }
    }
}

fn trace(
    eqn: Equation,
    pv: (usize, usize),
    vars: (usize, usize),
    window: &str,
    grid: usize,
) -> Out {
    let eq = equation(&eqn.coeffs)?;
    let s = pivot(&eq, pv)?;
    let fam = family(&eq, &s)?;
    let slot = |j: usize| {
        fam.free.iter().position(|&f| f == j).ok_or_else(|| {
            Failure::Input(format!("a{j} is not a free coefficient of pivot {pv:?}"))
        })
    };
    let vars = (slot(vars.0)?, slot(vars.1)?);
    let window: [f64; 4] = parse::real_list(window)
        .map_err(Failure::Input)?
        .try_into()
        .map_err(|_| Failure::Input("window needs x0,x1,y0,y1".into()))?;
    let fixed = s.amplitudes();
    let mut traces = Vec::new();
    for m in active_members(&fam)? {
        traces.push((
            m.id.clone(),
            trace_level_set(&m.poly, vars, &fixed, grid, window)?,
        ));
    }
    Ok(trace_csv(&traces).trim_end().to_string())
}

fn case_line(r: &CaseReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    format!("{} {status} max_error={}", r.name, fmt_real(r.max_error))
}

fn casebook(name: &str, c: Option<Complex64>, gamma: Option<Complex64>, as_json: bool) -> Out {
    if let Some(c) = c {
        if name != "brioschi" {
            return Err(Failure::Input("--C applies to the brioschi case".into()));
        }
        let v = brioschi_analysis(c)?;
        let body = if as_json {
            json(&v)?
        } else {
            let mut lines: Vec<String> = v
                .per_pivot
                .iter()
                .map(|(k, p)| format!("{k}: {p:?}"))
                .collect();
            lines.push(format!("covered: {}", v.covered));
            for r in &v.roots {
                lines.push(fmt_complex(*r));
            }
            lines.join("\n")
        };
        if !v.covered {
            let (lo, hi) = brioschi_thresholds();
            emit(&body);
            return Err(Failure::NoCover(format!(
                "no convergent series solution: |C| = {} lies in the open gap ({}, {})",
                fmt_real(c.norm()),
                fmt_real(lo),
                fmt_real(hi)
            )));
        }
        return Ok(body);
    }
    if let Some(g) = gamma {
        if name != "bring-jerrard" {
            return Err(Failure::Input(
                "--gamma applies to the bring-jerrard case".into(),
            ));
        }
        let r = bring_jerrard_roots(g, None)?;
        if as_json {
            return json(&r);
        }
        let mut lines = vec![format!("regime: {:?}", r.regime)];
        for ((p, q), l, x) in &r.roots {
            lines.push(format!("({p},{q}) {l} {}", fmt_complex(*x)));
        }
        lines.push(format!(
            "max_oracle_error: {}",
            fmt_real(r.max_oracle_error)
        ));
        lines.extend(r.warnings.iter().map(|w| format!("warning: {w}")));
        return Ok(lines.join("\n"));
    }
    let reports: Vec<CaseReport> = if name == "all" {
        run_casebook().into_iter().collect::<Result<_, _>>()?
    } else {
        if !CASE_NAMES.contains(&name) {
            return Err(Failure::Input(format!(
                "unknown case {name}; expected all or one of {}",
                CASE_NAMES.join(", ")
            )));
        }
        vec![run_case(name)?]
    };
    let body = if as_json {
        if reports.len() == 1 {
            json(&reports[0])?
        } else {
            json(&reports)?
        }
    } else {
        reports.iter().map(case_line).collect::<Vec<_>>().join("\n")
    };
    if reports.iter().all(|r| r.passed()) {
        Ok(body)
    } else {
        emit(&body);
        Err(Failure::Internal("case failed".into()))
    }
}

/// A closed pipe (`| head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = match cli.command {
        Command::Eval { mu, r, z, opts } => eval(mu, r, z, opts),
        Command::Solve { eq, pivot, opts } => solve(eq, pivot, opts),
        Command::Domain { query } => domain(query),
        Command::Trace {
            eq,
            pivot,
            vars,
            window,
            grid,
        } => trace(eq, pivot, vars, &window, grid),
        Command::Casebook {
            name,
            c,
            gamma,
            json,
        } => casebook(&name, c, gamma, json),
    };
    match out {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::NoCover(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
