//! Exact checks of the convolution, power and recurrence identities and of
//! the reductions of related number families.

use crate::fc::{compositions, factorial, fc_multi_exact, fc_number_exact, multinomial};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

pub const MAX_LEVEL: u64 = 5;
pub const MAX_K: usize = 3;
pub const DEFAULT_SEED: u64 = 0x5eed_fc;
pub const DEFAULT_DRAWS: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// The identity is known to be false as printed; the check passes when
    /// it finds a counterexample.
    pub expect_failure: bool,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        if self.expect_failure {
            self.failures > 0
        } else {
            self.failures == 0 && self.cases > 0
        }
    }
}

type Q = BigRational;
type Index = Vec<u64>;

fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

fn draw(rng: &mut ChaCha8Rng) -> Q {
    Q::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=6)),
    )
}

fn draw_nonzero(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let v = draw(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

fn indices(k: usize) -> Vec<Index> {
    (0..=MAX_LEVEL)
        .flat_map(|level| compositions(level, k))
        .collect()
}

/// Every `u ≤ t` componentwise.
fn below(t: &[u64]) -> Vec<Index> {
    let mut out: Vec<Index> = vec![vec![]];
    for &ti in t {
        out = out
            .into_iter()
            .flat_map(|u| {
                (0..=ti).map(move |x| {
                    let mut v = u.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn minus(t: &[u64], u: &[u64]) -> Index {
    t.iter().zip(u).map(|(a, b)| a - b).collect()
}

fn dot(a: &[Q], t: &[u64]) -> Q {
    a.iter()
        .zip(t)
        .fold(Q::zero(), |acc, (x, &ti)| acc + x * int(ti as i64))
}

fn level(t: &[u64]) -> u64 {
    t.iter().sum()
}

/// `𝒜_t(μ, r)` for every index up to the maximum level.
fn table(mu: &[Q], r: &Q) -> HashMap<Index, Q> {
    indices(mu.len())
        .into_iter()
        .map(|t| {
            let v = fc_multi_exact(mu, r, &t).expect("dimensions agree");
            (t, v)
        })
        .collect()
}

/// Coefficients of `f^r` for a series with `f_0 = 1`, from
/// `(D g) f = r (D f) g` with `D` the total-degree operator.
fn power_series(f: &HashMap<Index, Q>, r: &Q, k: usize) -> HashMap<Index, Q> {
    let mut g: HashMap<Index, Q> = HashMap::new();
    for t in indices(k) {
        let n = level(&t);
        if n == 0 {
            g.insert(t, Q::one());
            continue;
        }
        let mut acc = Q::zero();
        for u in below(&t) {
            if u == t {
                continue;
            }
            let m = level(&u);
            let w = r * int((n - m) as i64) - int(m as i64);
            acc += w * &f[&minus(&t, &u)] * &g[&u];
        }
        g.insert(t, acc / int(n as i64));
    }
    g
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    expect_failure: bool,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            expect_failure: false,
        }
    }

    fn expecting_failure(name: &'static str) -> Self {
        Tally {
            expect_failure: true,
            ..Tally::new(name)
        }
    }

    fn check(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn done(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            expect_failure: self.expect_failure,
        }
    }
}

fn unit(k: usize, j: usize) -> Index {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

/// Functional equation, power law, convolution and recurrence for `k` parameters.
fn theorem_checks(k: usize, rng: &mut ChaCha8Rng, draws: usize) -> Vec<IdentityCheck> {
    let tag = |s: &'static str, t: &'static str| if k == 1 { s } else { t };
    let mut fe = Tally::new(tag(
        "single/functional-equation",
        "multi/functional-equation",
    ));
    let mut pw = Tally::new(tag("single/power-law", "multi/power-law"));
    let mut cv = Tally::new(tag("single/convolution", "multi/convolution"));
    let mut rc = Tally::new(tag("single/recurrence", "multi/recurrence"));
    for _ in 0..draws {
        let mu: Vec<Q> = (0..k).map(|_| draw(rng)).collect();
        let r = draw(rng);
        let s = draw(rng);
        let f = table(&mu, &Q::one());
        let ar = table(&mu, &r);
        let as_ = table(&mu, &s);
        let ars = table(&mu, &(&r + &s));
        let ar1 = table(&mu, &(&r + Q::one()));
        let f_pow_r = power_series(&f, &r, k);
        let f_pow_mu: Vec<HashMap<Index, Q>> = mu.iter().map(|m| power_series(&f, m, k)).collect();
        let ar_shift: Vec<HashMap<Index, Q>> = mu.iter().map(|m| table(&mu, &(&r + m))).collect();
        for t in indices(k) {
            // f = 1 + Σ z_j f^{μ_j}
            let mut rhs = if level(&t) == 0 { Q::one() } else { Q::zero() };
            for j in 0..k {
                if t[j] > 0 {
                    rhs += &f_pow_mu[j][&minus(&t, &unit(k, j))];
                }
            }
            fe.check(f[&t] == rhs);

            pw.check(f_pow_r[&t] == ar[&t]);

            let conv = below(&t)
                .iter()
                .fold(Q::zero(), |acc, u| acc + &ar[u] * &as_[&minus(&t, u)]);
            cv.check(conv == ars[&t]);

            let mut rec = ar[&t].clone();
            for j in 0..k {
                if t[j] > 0 {
                    rec += &ar_shift[j][&minus(&t, &unit(k, j))];
                }
            }
            rc.check(rec == ar1[&t]);
        }
    }
    vec![fe.done(), pw.done(), cv.done(), rc.done()]
}

/// `Σ_j (p + q·j) 𝒜_j(b,a) 𝒜_{n-j}(b,c)` and the right-hand side.
fn mohanty_sides(p: &Q, q: &[Q], b: &[Q], a: &Q, c: &Q, n: &[u64]) -> (Q, Q) {
    let lhs = below(n).iter().fold(Q::zero(), |acc, j| {
        let w = p + dot(q, j);
        acc + w
            * fc_multi_exact(b, a, j).expect("dims")
            * fc_multi_exact(b, c, &minus(n, j)).expect("dims")
    });
    let ac = a + c;
    let rhs = (p * &ac + a * dot(q, n)) / &ac * fc_multi_exact(b, &ac, n).expect("dims");
    (lhs, rhs)
}

fn mohanty_checks(rng: &mut ChaCha8Rng, draws: usize) -> Vec<IdentityCheck> {
    let mut general = Tally::new("mohanty/weighted-convolution");
    let mut plain = Tally::new("mohanty/q=0");
    let mut shifted = Tally::new("mohanty/p=c+b.n,q=-b");
    for k in 1..=MAX_K {
        for _ in 0..draws {
            let b: Vec<Q> = (0..k).map(|_| draw(rng)).collect();
            let q: Vec<Q> = (0..k).map(|_| draw(rng)).collect();
            let (a, c, p) = loop {
                let (a, c) = (draw(rng), draw(rng));
                if !(&a + &c).is_zero() {
                    break (a, c, draw_nonzero(rng));
                }
            };
            let zero = vec![Q::zero(); k];
            let neg_b: Vec<Q> = b.iter().map(|x| -x).collect();
            for n in indices(k) {
                let (l, r) = mohanty_sides(&p, &q, &b, &a, &c, &n);
                general.check(l == r);

                // with q = 0 both sides are p times the plain convolution
                let (l, r) = mohanty_sides(&p, &zero, &b, &a, &c, &n);
                let conv = below(&n).iter().fold(Q::zero(), |acc, j| {
                    acc + fc_multi_exact(&b, &a, j).expect("dims")
                        * fc_multi_exact(&b, &c, &minus(&n, j)).expect("dims")
                });
                plain.check(l == r && r == &p * conv);

                let p2 = &c + dot(&b, &n);
                let (l, r) = mohanty_sides(&p2, &neg_b, &b, &a, &c, &n);
                shifted.check(l == r);
            }
        }
    }
    vec![general.done(), plain.done(), shifted.done()]
}

/// `G(α, n; β, γ) = α/(n_1!…n_k!) ∏_{m=1}^{|n|-1} (α + β·n - γm)`.
pub fn gould_g(alpha: &Q, n: &[u64], beta: &[Q], gamma: &Q) -> Q {
    let total = level(n);
    if total == 0 {
        return Q::one();
    }
    let x = alpha + dot(beta, n);
    let mut acc = alpha.clone();
    for m in 1..total {
        acc *= &x - gamma * int(m as i64);
    }
    let den = n.iter().fold(BigInt::one(), |d, &ni| d * factorial(ni));
    acc / Q::from_integer(den)
}

fn gould_checks(rng: &mut ChaCha8Rng, draws: usize) -> Vec<IdentityCheck> {
    let mut relation = Tally::new("gould/fc-relation");
    let mut limit = Tally::new("gould/gamma=0");
    let mut conv = Tally::new("gould/convolution");
    let mut multi = Tally::new("gould/multiparameter");
    for _ in 0..draws {
        let (a1, a2, beta) = (draw(rng), draw(rng), draw(rng));
        let gamma = draw_nonzero(rng);
        for n in 0..=MAX_LEVEL {
            let g = gould_g(&a1, &[n], &[beta.clone()], &gamma);
            let fc = gamma.pow(n as i32) * fc_number_exact(&(&beta / &gamma), &(&a1 / &gamma), n);
            relation.check(g == fc);

            let x = &a1 + &beta * int(n as i64);
            if !x.is_zero() {
                let closed = &a1 / &x * x.pow(n as i32) / Q::from_integer(factorial(n));
                limit.check(gould_g(&a1, &[n], &[beta.clone()], &Q::zero()) == closed);
            }

            let sum = (0..=n).fold(Q::zero(), |acc, n1| {
                acc + gould_g(&a1, &[n1], &[beta.clone()], &gamma)
                    * gould_g(&a2, &[n - n1], &[beta.clone()], &gamma)
            });
            conv.check(sum == gould_g(&(&a1 + &a2), &[n], &[beta.clone()], &gamma));
        }
        for k in 2..=MAX_K {
            let betas: Vec<Q> = (0..k).map(|_| draw(rng)).collect();
            let scaled: Vec<Q> = betas.iter().map(|b| b / &gamma).collect();
            for n in indices(k) {
                let g = gould_g(&a1, &n, &betas, &gamma);
                let fc = gamma.pow(level(&n) as i32)
                    * fc_multi_exact(&scaled, &(&a1 / &gamma), &n).expect("dims");
                multi.check(g == fc);
            }
        }
    }
    vec![relation.done(), limit.done(), conv.done(), multi.done()]
}

/// `C(m, n) = multinomial(2n(m-1); n, …, n, n(m-1)) / (n(m-1) + 1)`.
pub fn kahkeshani(m: u64, n: u64) -> Q {
    let mut parts = vec![n; (m - 1) as usize];
    parts.push(n * (m - 1));
    Q::new(multinomial(&parts), BigInt::from(n * (m - 1) + 1))
}

fn kahkeshani_checks() -> IdentityCheck {
    let mut t = Tally::new("kahkeshani/reduction");
    for m in 2..=(MAX_K as u64 + 1) {
        for n in 0..=MAX_LEVEL {
            let k = (m - 1) as usize;
            let fc = fc_multi_exact(&vec![int(2); k], &Q::one(), &vec![n; k]).expect("dims");
            t.check(kahkeshani(m, n) == fc);
        }
    }
    t.done()
}

/// Aval's `B_p(n, k) = (∏ C(n+k_i-1, k_i)) (n - |k|)/n`, with `p - 1 = k.len()`.
pub fn aval(n: u64, k: &[u64]) -> Q {
    let prod = k.iter().fold(BigInt::one(), |acc, &ki| {
        acc * binomial(BigInt::from(n + ki - 1), BigInt::from(ki))
    });
    let total: u64 = k.iter().sum();
    Q::new(
        prod * (BigInt::from(n) - BigInt::from(total)),
        BigInt::from(n),
    )
}

fn aval_checks() -> Vec<IdentityCheck> {
    let mut corrected = Tally::new("aval/product-form");
    let mut printed = Tally::expecting_failure("aval/printed-last-line");
    let mut small_p = Tally::new("aval/p<=1");
    for n in 1..=6u64 {
        small_p.check(aval(n, &[]) == Q::one());
        for k in 1..=MAX_K {
            let p = k as i32 + 1;
            for ks in indices(k) {
                let nn = Q::from_integer(BigInt::from(n));
                let prod = ks.iter().fold(Q::one(), |acc, &ki| {
                    acc * fc_number_exact(&Q::one(), &nn, ki)
                });
                let lead = (&nn - int(level(&ks) as i64)) * prod.clone();
                corrected.check(aval(n, &ks) == &lead / &nn);
                printed.check(aval(n, &ks) == nn.pow(p - 2) * lead);
            }
        }
    }
    vec![small_p.done(), corrected.done(), printed.done()]
}

/// Every identity check, `draws` random parameter sets per family.
pub fn identity_suite_with(seed: u64, draws: usize) -> Vec<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 1..=MAX_K {
        out.extend(theorem_checks(k, &mut rng, draws));
    }
    merge_multi(&mut out);
    out.extend(mohanty_checks(&mut rng, draws));
    out.extend(gould_checks(&mut rng, draws));
    out.push(kahkeshani_checks());
    out.extend(aval_checks());
    out
}

pub fn identity_suite() -> Vec<IdentityCheck> {
    identity_suite_with(DEFAULT_SEED, DEFAULT_DRAWS)
}

/// Folds the k = 2 and k = 3 tallies of each multi/* check into one entry.
fn merge_multi(checks: &mut Vec<IdentityCheck>) {
    let mut merged: Vec<IdentityCheck> = Vec::new();
    for c in checks.drain(..) {
        match merged.iter_mut().find(|m| m.name == c.name) {
            Some(m) => {
                m.cases += c.cases;
                m.failures += c.failures;
            }
            None => merged.push(c),
        }
    }
    *checks = merged;
}
