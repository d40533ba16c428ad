//! Text formats for forms, real polynomials and maps.
//!
//! All formats are line based; `#` starts a comment and blank lines are ignored.
//!
//! ```text
//! form n=2
//! 1 0 ; 1 0 ; 1 ; 0        # |z1|^2
//! 1 0 ; 0 1 ; 0 ; 1        # i z1 z̄2 (mirror inferred)
//!
//! realpoly n=3 a=2 b=1
//! 1 0 0 ; 1
//! 0 0 1 ; -1
//!
//! map n=3 a=2 b=1 A=2 B=1 homogeneous=0 denominator=none
//! + 1 :: 1,0 1 0 0
//! + 1 :: 1,0 0 1 0
//! - 1 :: 1,0 0 0 1
//! ```

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::forms::{Component, HermitianForm, WeightedHoloMap};
use crate::linalg::Sign;
use crate::monomial::MultiIndex;
use crate::poly::{ComplexPoly, RatPoly};
use crate::quadrics::{QuadricMap, SignedRealPoly};
use crate::scalar::{fmt_pair, fmt_rational, fmt_scalar, parse_rational, Rational, Scalar};
use crate::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Nonempty lines with comments stripped, numbered from one.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    keys: &[&str],
) -> Result<(usize, BTreeMap<String, String>)> {
    let (ln, line) = lines.next().ok_or_else(|| perr(1, format!("missing `{keyword}` header")))?;
    let mut toks = line.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(perr(ln, format!("expected header starting with `{keyword}`")));
    }
    let mut out = BTreeMap::new();
    for t in toks {
        let (k, v) = t.split_once('=').ok_or_else(|| perr(ln, format!("bad header field `{t}`")))?;
        if !keys.contains(&k) {
            return Err(perr(ln, format!("unknown header field `{k}`")));
        }
        out.insert(k.to_string(), v.to_string());
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(perr(ln, format!("header is missing `{k}=`")));
        }
    }
    Ok((ln, out))
}

fn header_usize(h: &BTreeMap<String, String>, key: &str, ln: usize) -> Result<usize> {
    h[key].parse().map_err(|_| perr(ln, format!("`{key}` must be a nonnegative integer")))
}

fn parse_exponents(text: &str, n: usize, ln: usize) -> Result<MultiIndex> {
    let ex: Vec<u32> = text
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| perr(ln, format!("bad exponent `{t}`"))))
        .collect::<Result<_>>()?;
    if ex.len() != n {
        return Err(perr(ln, format!("expected {n} exponents, found {}", ex.len())));
    }
    Ok(MultiIndex::new(ex))
}

fn parse_rat(text: &str, ln: usize) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| perr(ln, format!("bad rational `{}`", text.trim())))
}

fn exps(e: &MultiIndex) -> String {
    e.to_string()
}

pub fn parse_form(text: &str) -> Result<HermitianForm> {
    let mut lines = content_lines(text);
    let (ln, h) = parse_header(&mut lines, "form", &["n"])?;
    let n = header_usize(&h, "n", ln)?;
    let mut entries = Vec::new();
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split(';').collect();
        if parts.len() != 4 {
            return Err(perr(ln, "expected `a1 .. an ; b1 .. bn ; re ; im`"));
        }
        let a = parse_exponents(parts[0], n, ln)?;
        let b = parse_exponents(parts[1], n, ln)?;
        let c = Scalar::new(parse_rat(parts[2], ln)?, parse_rat(parts[3], ln)?);
        entries.push((a, b, c));
    }
    HermitianForm::from_entries(n, entries)
}

/// Upper triangle (in basis order) of the coefficient matrix.
pub fn write_form(form: &HermitianForm) -> String {
    let mut out = format!("form n={}\n", form.nvars());
    for (a, b, c) in form.entries() {
        if a <= b {
            out.push_str(&format!("{} ; {} ; {} ; {}\n", exps(a), exps(b), fmt_rational(&c.re), fmt_rational(&c.im)));
        }
    }
    out
}

pub fn parse_realpoly(text: &str) -> Result<SignedRealPoly> {
    let mut lines = content_lines(text);
    let (ln, h) = parse_header(&mut lines, "realpoly", &["n", "a", "b"])?;
    let n = header_usize(&h, "n", ln)?;
    let a = header_usize(&h, "a", ln)?;
    let b = header_usize(&h, "b", ln)?;
    if a + b != n {
        return Err(perr(ln, format!("n={n} but a+b={}", a + b)));
    }
    let mut p = RatPoly::zero(n);
    for (ln, line) in lines {
        let (e, c) = line.split_once(';').ok_or_else(|| perr(ln, "expected `e1 .. en ; p/q`"))?;
        p.add_term(parse_exponents(e, n, ln)?, parse_rat(c, ln)?);
    }
    SignedRealPoly::new(a, b, p)
}

pub fn write_realpoly(p: &SignedRealPoly) -> String {
    let mut out = format!("realpoly n={} a={} b={}\n", p.nvars(), p.a(), p.b());
    for (e, c) in p.poly().terms().rev() {
        out.push_str(&format!("{} ; {}\n", exps(e), fmt_rational(c)));
    }
    out
}

pub fn parse_map(text: &str) -> Result<QuadricMap> {
    let mut lines = content_lines(text);
    let (ln, h) = parse_header(&mut lines, "map", &["n", "a", "b", "A", "B", "homogeneous", "denominator"])?;
    let n = header_usize(&h, "n", ln)?;
    let a = header_usize(&h, "a", ln)?;
    let b = header_usize(&h, "b", ln)?;
    if a + b != n {
        return Err(perr(ln, format!("n={n} but a+b={}", a + b)));
    }
    let big_a = header_usize(&h, "A", ln)?;
    let big_b = header_usize(&h, "B", ln)?;
    let homogeneous = match h["homogeneous"].as_str() {
        "0" => false,
        "1" => true,
        _ => return Err(perr(ln, "`homogeneous` must be 0 or 1")),
    };
    let denominator = match h["denominator"].as_str() {
        "none" => None,
        s => Some(s.parse::<usize>().map_err(|_| perr(ln, "`denominator` must be an index or `none`"))?),
    };
    let mut comps = Vec::new();
    for (ln, line) in lines {
        let (head, body) = line.split_once("::").ok_or_else(|| perr(ln, "expected `<sign> <weight> :: terms`"))?;
        let mut ht = head.split_whitespace();
        let sign = match ht.next() {
            Some("+") => Sign::Pos,
            Some("-") => Sign::Neg,
            _ => return Err(perr(ln, "component must start with + or -")),
        };
        let weight = parse_rat(ht.next().ok_or_else(|| perr(ln, "missing weight"))?, ln)?;
        if ht.next().is_some() {
            return Err(perr(ln, "unexpected text before `::`"));
        }
        let mut poly = ComplexPoly::zero(n);
        for term in body.split(';') {
            let term = term.trim();
            let (coef, rest) = term.split_once(char::is_whitespace).unwrap_or((term, ""));
            let (re, im) = coef.split_once(',').ok_or_else(|| perr(ln, format!("bad coefficient `{coef}`")))?;
            let c = Scalar::new(parse_rat(re, ln)?, parse_rat(im, ln)?);
            poly.add_term(parse_exponents(rest, n, ln)?, c);
        }
        comps.push(Component::new(sign, weight, poly));
    }
    QuadricMap::new((a, b), (big_a, big_b), homogeneous, WeightedHoloMap::new(n, comps), denominator)
}

pub fn write_map(map: &QuadricMap) -> String {
    let mut out = format!(
        "map n={} a={} b={} A={} B={} homogeneous={} denominator={}\n",
        map.nvars(),
        map.source.0,
        map.source.1,
        map.target.0,
        map.target.1,
        u8::from(map.homogeneous),
        map.denominator.map_or("none".to_string(), |d| d.to_string())
    );
    for c in &map.components.components {
        let terms: Vec<String> = c.poly.terms().rev().map(|(e, v)| format!("{} {}", fmt_pair(v), exps(e))).collect();
        let terms =
            if terms.is_empty() { vec![format!("0,0 {}", exps(&MultiIndex::zero(map.nvars())))] } else { terms };
        out.push_str(&format!("{} {} :: {}\n", c.sign.as_char(), fmt_rational(&c.weight), terms.join(" ; ")));
    }
    out
}

/// `sqrt(w)*(poly)` with the square root kept symbolic.
pub fn render_component(c: &Component) -> String {
    let poly = c.poly.render("z", fmt_scalar);
    let scale = if c.weight.is_one() {
        String::new()
    } else if let Some(r) = rational_sqrt(&c.weight) {
        format!("{}*", fmt_rational(&r))
    } else {
        format!("sqrt({})*", fmt_rational(&c.weight))
    };
    let body = if scale.is_empty() || c.poly.len() <= 1 { poly } else { format!("({poly})") };
    format!("{} {scale}{body}", c.sign.as_char())
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom() && !d.is_zero()).then(|| Rational::new(n, d))
}
