//! Membership in the domain of convergence by ray sign tracking.

use crate::algebraic::{
    branch_arguments, scale_equation, series_root_power, AlgebraicEquation, PivotChoice,
};
use crate::convergence::trinomial_radius;
use crate::discriminant::{build_family_with_support, OriginClass, PsiFamily, PsiMember};
use crate::fc::for_each_level;
use crate::multipoly::MultiPoly;
use crate::{FcError, Result};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

pub const RAY_SAMPLES: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainVerdict {
    pub inside: bool,
    /// First member to vanish on the ray, and where.
    pub binding: Option<(String, f64)>,
    pub on_boundary: bool,
}

/// Members whose zero sets bound the domain.
pub fn active_members(family: &PsiFamily) -> Result<Vec<&PsiMember>> {
    let pool: Vec<&PsiMember> = if family.pivot.gap() % 2 == 1 {
        family.plus_set.iter().collect()
    } else {
        family.members().collect()
    };
    if let Some(m) = pool
        .iter()
        .find(|m| m.origin_class == OriginClass::Indeterminate)
    {
        return Err(FcError::Indeterminate(format!("origin class of {}", m.id)));
    }
    let any_constant = pool
        .iter()
        .any(|m| matches!(m.origin_class, OriginClass::NonzeroConstant(_)));
    if any_constant {
        return Ok(pool);
    }
    let active: Vec<&PsiMember> = pool
        .into_iter()
        .filter(|m| m.origin_class.is_extremum())
        .collect();
    if active.is_empty() {
        return Err(FcError::NoActiveBoundary);
    }
    Ok(active)
}

/// `s ↦ Ψ(s·x)` divided by its lowest power of `s`, with the sign it has
/// just off the origin. `None` if the restriction vanishes identically.
struct RayPoly {
    coeffs: Vec<f64>,
    origin_sign: f64,
    scale: f64,
}

impl RayPoly {
    fn new(poly: &MultiPoly, x: &[f64]) -> Option<Self> {
        let deg = poly.total_degree() as usize;
        let mut coeffs = vec![0.0; deg + 1];
        let mut mags = vec![0.0; deg + 1];
        for (e, c) in poly.terms() {
            let mut v = c.to_f64().unwrap_or(f64::NAN);
            let mut d = 0;
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    v *= xi.powi(ei as i32);
                    d += ei as usize;
                }
            }
            coeffs[d] += v;
            mags[d] += v.abs();
        }
        // cancellation to rounding level counts as an exact zero
        for (c, m) in coeffs.iter_mut().zip(&mags) {
            if c.abs() <= 1e-13 * m {
                *c = 0.0;
            }
        }
        let low = coeffs.iter().position(|&c| c != 0.0)?;
        let coeffs: Vec<f64> = coeffs[low..].to_vec();
        let origin_sign = coeffs[0].signum();
        let scale = mags[low..].iter().cloned().fold(0.0, f64::max);
        Some(Self {
            coeffs,
            origin_sign,
            scale,
        })
    }

    /// Sign-adjusted value: positive on the origin side.
    fn g(&self, s: f64) -> f64 {
        self.origin_sign * self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    fn dg(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * s + i as f64 * c;
        }
        self.origin_sign * acc
    }

    fn tol(&self) -> f64 {
        1e-10 * (1.0 + self.scale)
    }

    /// Last point where `f` is still true, to 1e-15 relative.
    fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> bool) -> f64 {
        while hi - lo > 1e-15 * hi.max(1e-300) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// First sign change in `(0, s_max]` and the points before it where the
    /// restriction touches zero without changing sign.
    fn scan(&self, s_max: f64) -> (Option<f64>, Vec<f64>) {
        let h = s_max / RAY_SAMPLES as f64;
        let tol = self.tol();
        let mut cross = None;
        for i in 1..=RAY_SAMPLES {
            let s = h * i as f64;
            if self.g(s) < -tol {
                cross = Some(Self::bisect(h * (i - 1) as f64, s, |u| self.g(u) > 0.0));
                break;
            }
        }
        let limit = cross.unwrap_or(s_max);
        let mut touches = Vec::new();
        let mut prev = self.dg(0.0);
        for i in 1..=RAY_SAMPLES {
            let s = h * i as f64;
            if h * (i - 1) as f64 > limit {
                break;
            }
            let d = self.dg(s);
            if prev < 0.0 && d >= 0.0 {
                let c = Self::bisect(h * (i - 1) as f64, s, |u| self.dg(u) < 0.0);
                if c <= limit && self.g(c).abs() <= tol {
                    touches.push(c);
                }
            }
            prev = d;
        }
        (cross, touches)
    }
}

/// Whether the gradient of `poly` vanishes at `x` to rounding level.
fn singular_at(poly: &MultiPoly, x: &[f64]) -> bool {
    (0..poly.nvars()).all(|v| {
        let d = poly.derivative(v);
        let mag: f64 = d
            .terms()
            .map(|(e, c)| {
                c.to_f64().unwrap_or(f64::INFINITY).abs()
                    * x.iter()
                        .zip(e)
                        .map(|(xi, &k)| xi.abs().powi(k as i32))
                        .product::<f64>()
            })
            .sum();
        d.eval_f64(x).abs() <= 1e-7 * (1.0 + mag)
    })
}

/// Where the ray `s·x` leaves the region of `poly` containing the origin:
/// a sign change, or a touch at a singular point of the zero set. Smooth
/// tangencies only set the flag.
fn exit_on_ray(poly: &MultiPoly, x: &[f64], s_max: f64) -> (Option<f64>, bool) {
    let Some(ray) = RayPoly::new(poly, x) else {
        return (None, false);
    };
    let (cross, touches) = ray.scan(s_max);
    let mut grazed = false;
    for s in touches {
        let pt: Vec<f64> = x.iter().map(|v| v * s).collect();
        if singular_at(poly, &pt) {
            return (Some(s), grazed);
        }
        grazed = true;
    }
    if let Some(s) = cross {
        return (Some(s), grazed);
    }
    (None, grazed || ray.g(s_max).abs() <= ray.tol())
}

/// Points with zero amplitudes are tested against their face family, so
/// `binding` then names a member of that family.
pub fn member(point: &[f64], family: &PsiFamily) -> Result<DomainVerdict> {
    check_point(point, family)?;
    if point.iter().all(|&x| x == 0.0) {
        return Ok(DomainVerdict {
            inside: true,
            binding: None,
            on_boundary: false,
        });
    }
    if let Some((face, x)) = face_family(point, family)? {
        return member(&x, &face);
    }
    let active = active_members(family)?;
    let mut first: Option<(String, f64)> = None;
    let mut touches = false;
    for m in active {
        let (exit, grazed) = exit_on_ray(&m.poly, point, 1.0);
        touches |= grazed;
        if let Some(s) = exit {
            if first.as_ref().map_or(true, |(_, f)| s < *f) {
                first = Some((m.id.clone(), s));
            }
        }
    }
    let inside = first.as_ref().map_or(true, |(_, s)| 1.0 - s <= 1e-9);
    let on_boundary = inside && (touches || first.is_some());
    Ok(DomainVerdict {
        inside,
        binding: if inside { None } else { first },
        on_boundary,
    })
}

/// Family of the equation with the zero amplitudes of `point` dropped from
/// the support, and the point restricted to it. The full discriminant can
/// vanish identically on such a face. `None` if every amplitude is nonzero.
fn face_family(point: &[f64], family: &PsiFamily) -> Result<Option<(Arc<PsiFamily>, Vec<f64>)>> {
    if point.iter().all(|&x| x > 0.0) {
        return Ok(None);
    }
    let mut support = vec![family.pivot.p, family.pivot.q];
    let mut x = Vec::new();
    for (&j, &v) in family.free.iter().zip(point) {
        if v > 0.0 {
            support.push(j);
            x.push(v);
        }
    }
    let face = build_family_with_support(family.pivot, family.degree, &support)?;
    Ok(Some((face, x)))
}

fn check_point(point: &[f64], family: &PsiFamily) -> Result<()> {
    if point.len() != family.free.len() {
        return Err(FcError::DimensionMismatch {
            expected: family.free.len(),
            got: point.len(),
        });
    }
    if point.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(FcError::OutOfRange(
            "amplitudes must be finite and nonnegative".into(),
        ));
    }
    Ok(())
}

/// Per-coordinate box bound `b̂_j` for the family's free slots.
pub fn box_bound(family: &PsiFamily) -> Result<Vec<f64>> {
    let g = family.pivot.gap() as f64;
    family
        .free
        .iter()
        .map(|&j| trinomial_radius((j as f64 - family.pivot.p as f64) / g))
        .collect()
}

/// Smallest `λ > 0` at which an active member changes sign along
/// `λ·direction`; infinite if none within twice the box bound.
pub fn boundary_on_ray(direction: &[f64], family: &PsiFamily) -> Result<f64> {
    check_point(direction, family)?;
    if direction.iter().all(|&x| x == 0.0) {
        return Err(FcError::OutOfRange("direction must be nonzero".into()));
    }
    if let Some((face, d)) = face_family(direction, family)? {
        return boundary_on_ray(&d, &face);
    }
    let cap = 2.0
        * box_bound(family)?
            .iter()
            .zip(direction)
            .filter(|(_, &d)| d > 0.0)
            .map(|(b, d)| b / d)
            .fold(f64::INFINITY, f64::min);
    let mut best = f64::INFINITY;
    for m in active_members(family)? {
        if let (Some(s), _) = exit_on_ray(&m.poly, direction, cap) {
            best = best.min(s);
        }
    }
    Ok(best)
}

/// Members that are strictly first to vanish on at least one interior ray
/// of an angular grid over the positive orthant.
pub fn binding_members(family: &PsiFamily, resolution: usize) -> Result<Vec<String>> {
    let k = family.free.len();
    let active = active_members(family)?;
    if k == 0 {
        return Ok(vec![]);
    }
    let cap_bounds = box_bound(family)?;
    let mut hits: BTreeMap<String, usize> = BTreeMap::new();
    let mut dirs = simplex_grid(k, resolution);
    // members that bind only in a thin sector along an axis
    for j in 0..k {
        let mut d = vec![1e-6; k];
        d[j] = 1.0;
        dirs.push(d);
    }
    for dir in dirs {
        let cap = 2.0
            * cap_bounds
                .iter()
                .zip(&dir)
                .map(|(b, d)| b / d)
                .fold(f64::INFINITY, f64::min);
        let mut crossings: Vec<(f64, &str)> = Vec::new();
        for m in &active {
            if let (Some(s), _) = exit_on_ray(&m.poly, &dir, cap) {
                crossings.push((s, &m.id));
            }
        }
        crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
        match crossings.as_slice() {
            [(_, id)] => *hits.entry(id.to_string()).or_default() += 1,
            [(s0, id), (s1, _), ..] if s1 - s0 > 1e-9 * s0 => {
                *hits.entry(id.to_string()).or_default() += 1
            }
            _ => {}
        }
    }
    let mut out: Vec<String> = hits.into_keys().collect();
    out.sort_by_key(|id| active.iter().position(|m| &m.id == id));
    Ok(out)
}

/// Strictly positive directions `i/res` on the unit simplex.
fn simplex_grid(k: usize, res: usize) -> Vec<Vec<f64>> {
    if k == 1 {
        return vec![vec![1.0]];
    }
    let mut out = Vec::new();
    for t in crate::fc::compositions((res - k) as u64, k) {
        out.push(t.iter().map(|&ti| (ti + 1) as f64 / res as f64).collect());
    }
    out
}

pub type Polyline = Vec<(f64, f64)>;

/// Marching-squares trace of `member = 0` over `window = [x0, x1, y0, y1]`
/// in variables `vars`, the other variables held at `fixed`.
pub fn trace_level_set(
    member: &MultiPoly,
    vars: (usize, usize),
    fixed: &[f64],
    grid: usize,
    window: [f64; 4],
) -> Result<Vec<Polyline>> {
    let k = member.nvars();
    if vars.0 >= k || vars.1 >= k || vars.0 == vars.1 || fixed.len() != k {
        return Err(FcError::DimensionMismatch {
            expected: k,
            got: fixed.len(),
        });
    }
    if grid < 2 {
        return Err(FcError::OutOfRange("grid needs at least 2 cells".into()));
    }
    let [x0, x1, y0, y1] = window;
    let px = |i: usize| x0 + (x1 - x0) * i as f64 / grid as f64;
    let py = |j: usize| y0 + (y1 - y0) * j as f64 / grid as f64;
    let mut pt = fixed.to_vec();
    let mut val = vec![vec![0.0; grid + 1]; grid + 1];
    for (i, row) in val.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            pt[vars.0] = px(i);
            pt[vars.1] = py(j);
            *v = member.eval_f64(&pt);
        }
    }
    // edges: (0, i, j) joins (i,j)-(i+1,j); (1, i, j) joins (i,j)-(i,j+1)
    type Edge = (u8, usize, usize);
    let crossing = |e: Edge| -> (f64, f64) {
        let (a, b, pa, pb) = match e.0 {
            0 => (
                val[e.1][e.2],
                val[e.1 + 1][e.2],
                (px(e.1), py(e.2)),
                (px(e.1 + 1), py(e.2)),
            ),
            _ => (
                val[e.1][e.2],
                val[e.1][e.2 + 1],
                (px(e.1), py(e.2)),
                (px(e.1), py(e.2 + 1)),
            ),
        };
        let t = if a == b { 0.5 } else { a / (a - b) };
        (pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1))
    };
    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let pos = |v: f64| v > 0.0;
            let corners = [val[i][j], val[i + 1][j], val[i + 1][j + 1], val[i][j + 1]];
            let edges: [Edge; 4] = [(0, i, j), (1, i + 1, j), (0, i, j + 1), (1, i, j)];
            let cut: Vec<usize> = (0..4)
                .filter(|&e| pos(corners[e]) != pos(corners[(e + 1) % 4]))
                .collect();
            match cut.len() {
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    let centre = corners.iter().sum::<f64>() / 4.0;
                    // pair each edge with the neighbour sharing the centre's sign
                    if pos(centre) == pos(corners[0]) {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }
    let mut adj: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        adj.entry(*a).or_default().push(s);
        adj.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let starts: Vec<Edge> = adj
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(e, _)| *e)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        let Some(&s0) = adj[&start].iter().find(|&&s| !used[s]) else {
            continue;
        };
        let mut line = vec![crossing(start)];
        let (mut at, mut seg) = (start, s0);
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            at = if a == at { b } else { a };
            line.push(crossing(at));
            match adj[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        lines.push(line);
    }
    Ok(lines)
}

/// CSV with header `# psi level set trace` and columns
/// `member_id,polyline_id,x,y`.
pub fn trace_csv(traces: &[(String, Vec<Polyline>)]) -> String {
    let mut out = String::from("# psi level set trace\nmember_id,polyline_id,x,y\n");
    for (id, lines) in traces {
        for (k, line) in lines.iter().enumerate() {
            for (x, y) in line {
                let _ = writeln!(out, "\"{id}\",{k},{x},{y}");
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Empirical {
    Converges,
    Diverges,
    Borderline,
}

/// Level schedule used when the caller gives none.
pub fn default_schedule(k: usize) -> Vec<usize> {
    let top = if k <= 1 { 14 } else { 10 };
    (6..=top).map(|e| 1usize << e).collect()
}

const SLOPE_EPS: f64 = 0.005;

/// Classifies a branch series from its level absolute sums: a fit of
/// `ln L_t ≈ a + b t + c ln t` over the upper half of the levels.
pub fn empirical_convergence(
    eq: &AlgebraicEquation,
    pivot: PivotChoice,
    l: usize,
    schedule: &[usize],
) -> Result<Empirical> {
    let s = scale_equation(eq, pivot)?;
    if l >= s.branch_count {
        return Err(FcError::BranchOutOfRange {
            branch: l,
            count: s.branch_count,
        });
    }
    if s.b.is_empty() {
        return Ok(Empirical::Converges);
    }
    let k = s.b.len();
    let t_max = schedule
        .iter()
        .copied()
        .filter(|&t| terms(t, k) <= crate::algebraic::SOLVE_TERM_BUDGET)
        .max()
        .ok_or_else(|| FcError::OutOfRange("empty schedule".into()))?;
    let g = s.branch_count as f64;
    let z = branch_arguments(&s, l);
    let mu: Vec<f64> = s.mu.values().copied().collect();
    let mut levels = Vec::with_capacity(t_max + 1);
    for_each_level(&mu, 1.0 / g, &z, t_max, |_, _, a| levels.push(a));
    if levels.iter().any(|a| !a.is_finite()) {
        return Ok(Empirical::Diverges);
    }
    let block = (t_max / 64).max(4);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = t_max / 2;
    while t + block <= t_max + 1 {
        let m = levels[t..t + block].iter().cloned().fold(0.0, f64::max);
        if m > 0.0 {
            xs.push((t + block / 2) as f64);
            ys.push(m.ln());
        }
        t += block;
    }
    if xs.len() < 4 {
        // the series terminates
        return Ok(Empirical::Converges);
    }
    let slope = fit_slope(&xs, &ys);
    if slope > SLOPE_EPS {
        return Ok(Empirical::Diverges);
    }
    let res = series_root_power(eq, pivot, l, 1.0, t_max)?;
    if slope < -SLOPE_EPS && res.residual < 1e-6 {
        Ok(Empirical::Converges)
    } else {
        Ok(Empirical::Borderline)
    }
}

fn terms(level: usize, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (level + i) as f64 / i as f64)
}

/// Least squares for `y = a + b x + c ln x`, returning `b`.
fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let rows: Vec<[f64; 3]> = xs.iter().map(|&x| [1.0, x, x.ln()]).collect();
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (r, &y) in rows.iter().zip(ys) {
        for i in 0..3 {
            aty[i] += r[i] * y;
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    solve3(ata, aty)[1]
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for c in 0..3 {
        let p = (c..3)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..3 {
            let f = a[r][c] / a[c][c];
            for k in c..3 {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = [0.0; 3];
    for c in (0..3).rev() {
        x[c] = (b[c] - (c + 1..3).map(|k| a[c][k] * x[k]).sum::<f64>()) / a[c][c];
    }
    x
}

/// Checks that geometric interpolates `p1^t p2^{1-t}` stay inside.
pub fn log_convexity_probe(
    p1: &[f64],
    p2: &[f64],
    family: &PsiFamily,
    samples: usize,
) -> Result<bool> {
    if p1.iter().chain(p2).any(|&x| !(x > 0.0)) {
        return Err(FcError::OutOfRange(
            "points must be strictly positive".into(),
        ));
    }
    for i in 0..=samples {
        let t = i as f64 / samples.max(1) as f64;
        let pt: Vec<f64> = p1
            .iter()
            .zip(p2)
            .map(|(a, b)| a.powf(t) * b.powf(1.0 - t))
            .collect();
        if !member(&pt, family)?.inside {
            return Ok(false);
        }
    }
    Ok(true)
}
