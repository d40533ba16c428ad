//! Sparse multivariate polynomials keyed by [`MultiIndex`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

use crate::monomial::MultiIndex;
use crate::scalar::{Rational, Scalar};

/// Coefficient ring requirements.
pub trait Coeff: Clone + Num + Neg<Output = Self> + fmt::Debug {}
impl<T: Clone + Num + Neg<Output = T> + fmt::Debug> Coeff for T {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C>,
}

pub type RatPoly = Polynomial<Rational>;
pub type ComplexPoly = Polynomial<Scalar>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(exp: MultiIndex, c: C) -> Self {
        let mut p = Self::zero(exp.nvars());
        p.add_term(exp, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), C::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in increasing basis order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, C> {
        self.terms
    }

    pub fn coeff(&self, e: &MultiIndex) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    /// Adds `c * x^e` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, e: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn remove_term(&mut self, e: &MultiIndex) -> Option<C> {
        self.terms.remove(e)
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|e| e.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &MultiIndex) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.mul(e), v.clone())).collect() }
    }

    /// `self += c * x^e * other`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &C, e: &MultiIndex) {
        for (k, v) in &other.terms {
            self.add_term(k.mul(e), v.clone() * c.clone());
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Option<MultiIndex> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |g, e| g.gcd(e)))
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, e: &MultiIndex) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.terms.insert(e.quotient_of(k)?, v.clone());
        }
        Some(out)
    }

    /// Replaces variable `i` by `vals[i]`; every `vals[i]` must share one variable count.
    pub fn substitute(&self, vals: &[Polynomial<C>]) -> Self {
        assert_eq!(vals.len(), self.nvars, "substitution arity");
        let target = vals.first().map_or(0, |v| v.nvars);
        let mut powers: Vec<Vec<Polynomial<C>>> = vals.iter().map(|v| vec![Self::one(v.nvars)]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &vals[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.exponents()) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Renames variables: variable `i` becomes variable `map[i]` of `new_nvars`.
    pub fn relabel(&self, new_nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ex = vec![0u32; new_nvars];
            for (i, &k) in e.exponents().iter().enumerate() {
                ex[map[i]] += k;
            }
            out.add_term(MultiIndex::new(ex), c.clone());
        }
        out
    }

    /// Sets variable `var` to one and drops it.
    pub fn set_var_one(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            out.add_term(e.remove_var(var), c.clone());
        }
        out
    }

    /// Multiplies each term by `var^(deg - |term|)` on a new trailing variable.
    pub fn homogenize(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            out.add_term(e.push_var(deg - e.degree()), c.clone());
        }
        out
    }
}

impl ComplexPoly {
    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Polynomial<C> {
    /// Renders with variables `{var}1, {var}2, ...`, highest terms first.
    pub fn render(&self, var: &str, coeff: impl Fn(&C) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut text = if e.is_constant() {
                coeff(c)
            } else if c.is_one() {
                e.render(var)
            } else if (-c.clone()).is_one() {
                format!("-{}", e.render(var))
            } else {
                format!("{}*{}", coeff(c), e.render(var))
            };
            if i > 0 {
                if let Some(rest) = text.strip_prefix('-') {
                    text = format!(" - {rest}");
                } else {
                    text = format!(" + {text}");
                }
            }
            out.push_str(&text);
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", crate::scalar::fmt_rational))
    }
}

impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z", crate::scalar::fmt_scalar))
    }
}
