//! Number and list literals accepted on the command line.
//!
//! A complex number is either `a+bi` (also `a-bi`, `bi`, `i`, with `j`
//! allowed for `i`) or the pair `re,im`. Inside a comma-separated list the
//! pair form must be parenthesised: `--coeffs 1,(0,1),-2.5+1i`.

use fcseries::Complex64;

pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v: f64 = t.parse().map_err(|_| format!("not a number: {t:?}"))?;
    if !v.is_finite() {
        return Err(format!("not finite: {t:?}"));
    }
    Ok(v)
}

/// Split at commas that are not inside parentheses.
fn split_top(s: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced ')' in {s:?}"));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced '(' in {s:?}"));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn imaginary_unit(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s),
    }
}

/// `a+bi` form, or a plain real.
fn algebraic_form(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(real(t)?, 0.0));
    };
    // last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(
            real(&body[..k])?,
            imaginary_unit(&body[k..])?,
        )),
        None => Ok(Complex64::new(0.0, imaginary_unit(body)?)),
    }
}

/// A single complex value: `a+bi`, `re,im` or `(re,im)`.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t);
    let parts = split_top(inner)?;
    match parts.as_slice() {
        [one] => algebraic_form(one),
        [re, im] => Ok(Complex64::new(real(re)?, real(im)?)),
        _ => Err(format!("bad complex literal {t:?}")),
    }
}

/// Comma-separated complex list; pairs must be written `(re,im)`.
pub fn complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    split_top(s)?.into_iter().map(complex).collect()
}

pub fn real_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(real).collect()
}

pub fn index_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("expected two indices, got {s:?}"));
    };
    let idx = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad index {x:?}"))
    };
    Ok((idx(a)?, idx(b)?))
}

/// Shortest round-trip text; exponent form outside `[1e-4, 1e16)`.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let im = fmt_real(z.im.abs());
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_real(z.re))
}
