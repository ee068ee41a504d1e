//! Sparse multivariate polynomials with big-integer coefficients.

use crate::{FcError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    names: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(names: Vec<String>) -> Self {
        Self {
            names,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(names: Vec<String>, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(names);
        let n = p.nvars();
        p.add_term(vec![0; n], c.into());
        p
    }

    pub fn var(names: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; names.len()];
        e[i] = 1;
        let mut p = Self::zero(names);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms(
        names: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Self {
        let mut p = Self::zero(names);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Self {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.names.clone());
        }
        Self {
            names: self.names.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.names.clone(), 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let n = self.nvars();
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(prev) => prev.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; n])
    }

    /// Divides by a monomial; fails if some term is not divisible.
    pub fn div_monomial(&self, m: &[u32]) -> Result<Self> {
        let mut out = Self::zero(self.names.clone());
        for (e, c) in &self.terms {
            if e.iter().zip(m).any(|(a, b)| a < b) {
                return Err(FcError::Inconsistent(
                    "monomial division is not exact".into(),
                ));
            }
            out.terms
                .insert(e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone());
        }
        Ok(out)
    }

    /// The polynomial with its common monomial factor removed.
    pub fn without_monomial_content(&self) -> Self {
        self.div_monomial(&self.monomial_content())
            .expect("content always divides")
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (xi, &ei) in x.iter().zip(e) {
                    if ei > 0 {
                        v *= xi.powi(ei as i32);
                    }
                }
                v
            })
            .sum()
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    v *= xi;
                }
            }
            acc += v;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.names.clone());
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.add_term(d, c * BigInt::from(e[var]));
            }
        }
        out
    }

    /// Coefficients of `s ↦ P(s·x)` indexed by total degree.
    pub fn restrict_to_ray(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.total_degree() as usize + 1];
        for (e, c) in &self.terms {
            let mut v = c.to_f64().unwrap_or(f64::NAN);
            let mut d = 0;
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    v *= xi.powi(ei as i32);
                    d += ei as usize;
                }
            }
            out[d] += v;
        }
        out
    }

    /// Rebinds variables: term exponent `e` becomes `map(e)` with the
    /// coefficient multiplied by the returned factor; `None` drops the term.
    pub fn transform(
        &self,
        names: Vec<String>,
        mut map: impl FnMut(&[u32]) -> Option<(Vec<u32>, BigInt)>,
    ) -> Self {
        let mut out = Self::zero(names);
        for (e, c) in &self.terms {
            if let Some((ne, k)) = map(e) {
                out.add_term(ne, c * k);
            }
        }
        out
    }

    /// Canonical text: one `coef * x^e * ...` term per line, graded
    /// descending, then lexicographically descending exponents.
    pub fn canonical(&self) -> String {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| graded_desc(a, b));
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            out.push_str(&c.to_string());
            for (name, &ei) in self.names.iter().zip(e) {
                match ei {
                    0 => {}
                    1 => out.push_str(&format!(" * {name}")),
                    _ => out.push_str(&format!(" * {name}^{ei}")),
                }
            }
            out.push('\n');
        }
        if out.is_empty() {
            out.push_str("0\n");
        }
        out
    }

    /// Parses `+ - * ^ ( )`, integer literals and the given variable names.
    pub fn parse(text: &str, names: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            names: &names,
        };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(FcError::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(out)
    }
}

fn graded_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| graded_desc(a, b));
        if keys.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mono: Vec<String> = self
                .names
                .iter()
                .zip(e.iter())
                .filter(|(_, &ei)| ei > 0)
                .map(|(n, &ei)| {
                    if ei == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{ei}")
                    }
                })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FcError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            self.term()?.neg()
        } else {
            if self.peek() == Some(&Tok::Op('+')) {
                self.pos += 1;
            }
            self.term()?
        };
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Op('*')) {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k = k
                        .to_u32()
                        .ok_or_else(|| FcError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(FcError::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let names = self.names.to_vec();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(names, k))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                let i = names
                    .iter()
                    .position(|n| *n == s)
                    .ok_or_else(|| FcError::Parse(format!("unknown variable {s}")))?;
                Ok(MultiPoly::var(names, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(FcError::Parse("missing )".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            other => Err(FcError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
