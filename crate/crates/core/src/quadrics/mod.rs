//! Admissible polynomials, lattice moves and monomial maps between hyperquadrics.
//!
//! A homogeneous real polynomial `p(x)` in `a + b` variables is admissible when it is
//! divisible by `s = x_1 + ... + x_a - x_{a+1} - ... - x_{a+b}`. Substituting
//! `x_k = |z_k|^2` turns an admissible `p` with `A` positive and `B` negative terms
//! into a monomial map `HQ(a,b) -> HQ(A,B)`.

mod maps;
mod search;

pub use maps::{
    dehomogenize, map_from_form, monomial_map_is_admissible, rehomogenize, tensor_extend, vanishes_on_quadric,
    verify_map, QuadricMap,
};
pub use search::{construct_map, explore, region_grid, Lattice, RegionGrid};

use std::fmt;

use num_traits::{Signed, Zero};

use crate::forms::SignaturePair;
use crate::linalg::Sign;
use crate::monomial::MultiIndex;
use crate::poly::{Coeff, Polynomial, RatPoly};
use crate::scalar::{rat, rint, Rational};
use crate::{Error, Result};

/// Homogeneous real polynomial in `a + b` variables, tagged with the source signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedRealPoly {
    a: usize,
    b: usize,
    poly: RatPoly,
}

impl SignedRealPoly {
    pub fn new(a: usize, b: usize, poly: RatPoly) -> Result<Self> {
        if a + b == 0 || poly.nvars() != a + b {
            return Err(Error::DimensionMismatch(format!(
                "polynomial has {} variables, expected a+b={}",
                poly.nvars(),
                a + b
            )));
        }
        if !poly.is_homogeneous() {
            return Err(Error::OutOfDomain("polynomial is not homogeneous".into()));
        }
        Ok(SignedRealPoly { a, b, poly })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn nvars(&self) -> usize {
        self.a + self.b
    }

    pub fn to_poly(&self) -> RatPoly {
        self.poly.clone()
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.poly.len()
    }

    pub fn signature(&self) -> SignaturePair {
        let pos = self.poly.terms().filter(|(_, c)| c.is_positive()).count();
        SignaturePair::new(pos, self.poly.len() - pos)
    }

    fn with_poly(&self, poly: RatPoly) -> Self {
        SignedRealPoly { a: self.a, b: self.b, poly }
    }
}

impl fmt::Display for SignedRealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `s` (or `-s` when `negate`) in `a + b` variables.
pub fn s_linear(a: usize, b: usize, negate: bool) -> RatPoly {
    let n = a + b;
    let sign = if negate { -1 } else { 1 };
    RatPoly::from_terms(n, (0..n).map(|j| (MultiIndex::unit(n, j), rint(if j < a { sign } else { -sign }))))
}

pub fn s_poly(a: usize, b: usize) -> SignedRealPoly {
    SignedRealPoly::new(a, b, s_linear(a, b, false)).expect("s is homogeneous")
}

/// Whether `div` divides `p`, by reduction against the squarefree monomial `pivot`.
///
/// Every other term of `div` must avoid at least one variable of `pivot` and every
/// pivot variable; then reducing the highest pivot power first leaves a pivot-free
/// remainder, which is zero exactly when `div | p`.
pub fn divides_by_pivot<C: Coeff>(p: &Polynomial<C>, div: &Polynomial<C>, pivot: &MultiIndex) -> bool {
    let vars: Vec<usize> = (0..pivot.nvars()).filter(|&v| pivot.get(v) > 0).collect();
    debug_assert!(vars.iter().all(|&v| pivot.get(v) == 1));
    let key = |e: &MultiIndex| vars.iter().map(|&v| e.get(v)).min().unwrap_or(0) as usize;
    let pc = div.coeff(pivot);
    assert!(!pc.is_zero(), "pivot monomial must occur in the divisor");
    let rest: Vec<(MultiIndex, C)> = div
        .terms()
        .filter(|(e, _)| *e != pivot)
        .map(|(e, c)| {
            debug_assert!(vars.iter().all(|&v| e.get(v) == 0));
            (e.clone(), c.clone())
        })
        .collect();
    let top = p.support().map(key).max().unwrap_or(0);
    let mut buckets: Vec<Polynomial<C>> = vec![Polynomial::zero(p.nvars()); top + 1];
    for (e, c) in p.terms() {
        buckets[key(e)].add_term(e.clone(), c.clone());
    }
    for k in (1..=top).rev() {
        let layer = std::mem::replace(&mut buckets[k], Polynomial::zero(p.nvars()));
        for (e, c) in layer.terms() {
            let q = pivot.quotient_of(e).expect("bucket key >= 1");
            let coef = c.clone() / pc.clone();
            for (f, fc) in &rest {
                buckets[k - 1].add_term(q.mul(f), -(coef.clone() * fc.clone()));
            }
        }
    }
    buckets[0].is_zero()
}

/// Whether `s` divides `p`, eliminating the variable of smallest top exponent.
pub fn divisible_by_s(p: &RatPoly, a: usize, b: usize) -> bool {
    if p.is_zero() {
        return true;
    }
    let n = a + b;
    let j = (0..n).min_by_key(|&j| p.support().map(|e| e.get(j)).max().unwrap_or(0)).expect("at least one variable");
    divides_by_pivot(p, &s_linear(a, b, false), &MultiIndex::unit(n, j))
}

/// `(s | p, signature(p))`.
pub fn is_admissible(p: &SignedRealPoly) -> (bool, SignaturePair) {
    (divisible_by_s(&p.poly, p.a, p.b), p.signature())
}

fn require_admissible(p: &SignedRealPoly) -> Result<()> {
    if divisible_by_s(&p.poly, p.a, p.b) {
        Ok(())
    } else {
        Err(Error::NotAdmissible(format!("{p}")))
    }
}

/// One of the ten signature-lattice moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// `x_1^{k-m} p + x_2^{k-1} s`, shift `(a, b)`.
    Grow,
    /// `x_1^{k-m} p - x_2^{k-1} s`, shift `(b, a)`.
    GrowMirror,
    /// `m (±s + x_j) + x_j q`, or its `hat` variant with the extra term `x_j m / 2`.
    ///
    /// With `s` the eliminated variable is `x_{a+b}`; with `-s` it is `x_1`.
    Corner { pivot: Sign, negate_s: bool, hat: bool },
}

impl Move {
    pub fn all() -> Vec<Move> {
        let mut out = vec![Move::Grow, Move::GrowMirror];
        for pivot in [Sign::Pos, Sign::Neg] {
            for negate_s in [false, true] {
                for hat in [false, true] {
                    out.push(Move::Corner { pivot, negate_s, hat });
                }
            }
        }
        out
    }

    /// Predicted change of the signature for source `(a, b)`.
    pub fn shift(&self, a: usize, b: usize) -> (i64, i64) {
        let (a, b) = (a as i64, b as i64);
        match *self {
            Move::Grow => (a, b),
            Move::GrowMirror => (b, a),
            Move::Corner { pivot, negate_s, hat } => {
                // tilde adds (p-1, q-1) where (p, q) counts the signs of ±m·s;
                // hat adds one more term with the sign of m.
                let same = (pivot == Sign::Pos) != negate_s;
                let (p, q) = if same { (a, b) } else { (b, a) };
                match (hat, pivot) {
                    (false, _) => (p - 1, q - 1),
                    (true, Sign::Pos) => (p, q - 1),
                    (true, Sign::Neg) => (p - 1, q),
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Move::Grow => "grow".into(),
            Move::GrowMirror => "grow-mirror".into(),
            Move::Corner { pivot, negate_s, hat } => format!(
                "{}{}{}",
                if hat { "hat" } else { "tilde" },
                if pivot == Sign::Pos { "+m" } else { "-m" },
                if negate_s { ",-s" } else { ",s" }
            ),
        }
    }
}

/// `x_1^{k-m} p ± x_2^{k-1} s` with the least `k > m` making the supports disjoint.
pub fn grow(p: &SignedRealPoly, mirror: bool) -> Result<SignedRealPoly> {
    require_admissible(p)?;
    if p.nvars() < 2 {
        return Err(Error::OutOfDomain("grow needs at least two variables".into()));
    }
    Ok(grow_unchecked(p, mirror))
}

pub(crate) fn grow_unchecked(p: &SignedRealPoly, mirror: bool) -> SignedRealPoly {
    let n = p.nvars();
    let m = p.degree();
    let s = s_linear(p.a, p.b, mirror);
    let mut k = m + 1;
    loop {
        let left = p.poly.mul_monomial(&MultiIndex::zero(n).with(0, k - m));
        let right = s.mul_monomial(&MultiIndex::zero(n).with(1, k - 1));
        if right.support().all(|e| left.coeff(e).is_zero()) {
            return p.with_poly(&left + &right);
        }
        k += 1;
    }
}

/// Applies a corner move; the common power of the eliminated variable is divided out first.
///
/// The pivot `m` is the first term in basis order of the required sign that is free of
/// the eliminated variable.
pub fn corner_move(p: &SignedRealPoly, pivot: Sign, negate_s: bool, hat: bool) -> Result<SignedRealPoly> {
    require_admissible(p)?;
    let result = corner_unchecked(p, pivot, negate_s, hat).ok_or_else(|| {
        Error::NoPivotMonomial(format!(
            "no {} term free of x{} in {}",
            if pivot == Sign::Pos { "positive" } else { "negative" },
            if negate_s { 1 } else { p.nvars() },
            p
        ))
    })?;
    if !divisible_by_s(&result.poly, p.a, p.b) {
        return Err(Error::VerificationFailed(format!("corner move output {result} is not divisible by s")));
    }
    Ok(result)
}

pub(crate) fn corner_unchecked(p: &SignedRealPoly, pivot: Sign, negate_s: bool, hat: bool) -> Option<SignedRealPoly> {
    let n = p.nvars();
    let j = if negate_s { 0 } else { n - 1 };
    let content = p.poly.support().map(|e| e.get(j)).min().unwrap_or(0);
    let poly = p.poly.div_monomial(&MultiIndex::zero(n).with(j, content)).expect("common power divides every term");
    let (mono, mc) =
        poly.terms().find(|(e, c)| e.get(j) == 0 && Sign::of(c) == Some(pivot)).map(|(e, c)| (e.clone(), c.clone()))?;
    let xj = MultiIndex::unit(n, j);
    let mut q = poly;
    q.remove_term(&mono);
    let mut s_plus = s_linear(p.a, p.b, negate_s);
    s_plus.add_term(xj.clone(), rint(1));
    let mut out = q.mul_monomial(&xj);
    if hat {
        let half = rat(1, 2);
        out.add_scaled_shifted(&s_plus, &(mc.clone() * &half), &mono);
        out.add_term(mono.mul(&xj), mc * half);
    } else {
        out.add_scaled_shifted(&s_plus, &mc, &mono);
    }
    Some(p.with_poly(out))
}

/// Dispatches a [`Move`].
pub fn apply_move(p: &SignedRealPoly, mv: Move) -> Result<SignedRealPoly> {
    match mv {
        Move::Grow => grow(p, false),
        Move::GrowMirror => grow(p, true),
        Move::Corner { pivot, negate_s, hat } => corner_move(p, pivot, negate_s, hat),
    }
}

/// Coefficient of a monomial, for tests and display.
pub fn coefficient(p: &SignedRealPoly, e: &[u32]) -> Rational {
    p.poly.coeff(&MultiIndex::new(e.to_vec()))
}
