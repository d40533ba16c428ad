use num_traits::{One, Signed};

use super::{divides_by_pivot, divisible_by_s, SignedRealPoly};
use crate::forms::{Component, HermitianForm, SignaturePair, WeightedHoloMap};
use crate::linalg::Sign;
use crate::monomial::MultiIndex;
use crate::poly::{ComplexPoly, RatPoly};
use crate::scalar::{int, rint, Scalar};
use crate::{Error, Result};

/// A map into `HQ(A,B)` (homogeneous) or `Q(A,B)`, given by weighted components.
///
/// The map sends `z` to `(√w_j f_j(z))`, positive components first in the target's
/// form. A rational map `f / g` stores its denominator `g` as one extra negative
/// component, so it has `A + B + 1` components.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricMap {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub homogeneous: bool,
    pub components: WeightedHoloMap,
    pub denominator: Option<usize>,
}

impl QuadricMap {
    pub fn new(
        source: (usize, usize),
        target: (usize, usize),
        homogeneous: bool,
        components: WeightedHoloMap,
        denominator: Option<usize>,
    ) -> Result<Self> {
        let (a, b) = source;
        if components.n != a + b {
            return Err(Error::DimensionMismatch(format!(
                "components use {} variables, source Q({a},{b}) has {}",
                components.n,
                a + b
            )));
        }
        if components.components.iter().any(|c| !c.weight.is_positive()) {
            return Err(Error::OutOfDomain("component weights must be positive".into()));
        }
        let sig = components.signature();
        let extra = match denominator {
            Some(i) => {
                if homogeneous {
                    return Err(Error::Unsupported("homogeneous maps have no denominator".into()));
                }
                let c = components.components.get(i).ok_or_else(|| {
                    Error::IndexOutOfRange(format!("denominator {i} of {}", components.components.len()))
                })?;
                if c.sign != Sign::Neg {
                    return Err(Error::OutOfDomain("the denominator must be a negative component".into()));
                }
                1
            }
            None => 0,
        };
        if sig != SignaturePair::new(target.0, target.1 + extra) {
            return Err(Error::DimensionMismatch(format!(
                "component signs ({}, {}) do not match target ({}, {}){}",
                sig.pos,
                sig.neg,
                target.0,
                target.1,
                if extra == 1 { " plus denominator" } else { "" }
            )));
        }
        Ok(QuadricMap { source, target, homogeneous, components, denominator })
    }

    /// The identity `Q(a,b) -> Q(a,b)`.
    pub fn identity(a: usize, b: usize) -> Self {
        let n = a + b;
        let comps = (0..n)
            .map(|j| {
                let sign = if j < a { Sign::Pos } else { Sign::Neg };
                Component::new(sign, One::one(), ComplexPoly::var(n, j))
            })
            .collect();
        QuadricMap::new((a, b), (a, b), false, WeightedHoloMap::new(n, comps), None).expect("valid identity")
    }

    /// Monomial map `HQ(a,b) -> HQ(A,B)` obtained from `p` by `x_k = |z_k|^2`.
    pub fn from_admissible(p: &SignedRealPoly) -> Self {
        let n = p.nvars();
        let comps = p
            .poly()
            .terms()
            .map(|(e, c)| {
                let sign = Sign::of(c).expect("stored coefficients are nonzero");
                Component::new(sign, c.abs(), ComplexPoly::monomial(e.clone(), Scalar::one()))
            })
            .collect();
        let sig = p.signature();
        QuadricMap::new((p.a(), p.b()), (sig.pos, sig.neg), true, WeightedHoloMap::new(n, comps), None)
            .expect("signature matches signs")
    }

    pub fn nvars(&self) -> usize {
        self.components.n
    }

    /// `Σ ε w |f|^2`, minus one for a polynomial map into `Q(A,B)`.
    pub fn norm_difference(&self) -> HermitianForm {
        self.components.norm_difference(!self.homogeneous && self.denominator.is_none())
    }
}

/// Complexified defining polynomial `Σ ±z_j w_j` of the source, minus one if inhomogeneous.
fn complexified_rho(a: usize, b: usize, homogeneous: bool) -> ComplexPoly {
    let n = a + b;
    let mut rho = ComplexPoly::zero(2 * n);
    for j in 0..n {
        let e = MultiIndex::zero(2 * n).with(j, 1).with(n + j, 1);
        rho.add_term(e, int(if j < a { 1 } else { -1 }));
    }
    if !homogeneous {
        rho.add_term(MultiIndex::zero(2 * n), -Scalar::one());
    }
    rho
}

/// Exact divisibility of a form's complexification by the source defining polynomial.
pub fn vanishes_on_quadric(form: &HermitianForm, a: usize, b: usize, homogeneous: bool) -> bool {
    let n = a + b;
    if form.nvars() != n {
        return false;
    }
    let p = form.complexify();
    if p.is_zero() {
        return true;
    }
    let pair_key = |j: usize| p.support().map(|e| e.get(j).min(e.get(n + j))).max().unwrap_or(0);
    let j = (0..n).min_by_key(|&j| pair_key(j)).expect("n >= 1");
    let pivot = MultiIndex::zero(2 * n).with(j, 1).with(n + j, 1);
    divides_by_pivot(&p, &complexified_rho(a, b, homogeneous), &pivot)
}

/// Whether the map sends the source hyperquadric into the target one.
pub fn verify_map(map: &QuadricMap) -> bool {
    let (a, b) = map.source;
    vanishes_on_quadric(&map.norm_difference(), a, b, map.homogeneous)
}

/// Replaces component `k` by its products with every source coordinate.
///
/// On `Q(a,b)`, `|φ|^2 = |φ|^2 (Σ_{j<=a} |z_j|^2 - Σ_{j>a} |z_j|^2)`, so a positive
/// component moves the target by `(a-1, b)` and a negative one by `(b, a-1)`.
pub fn tensor_extend(map: &QuadricMap, k: usize) -> Result<QuadricMap> {
    let len = map.components.components.len();
    if k >= len {
        return Err(Error::IndexOutOfRange(format!("component {k} of {len}")));
    }
    if map.homogeneous {
        return Err(Error::Unsupported("tensoring needs a map into Q(A,B), not HQ(A,B)".into()));
    }
    if map.denominator == Some(k) {
        return Err(Error::Unsupported("cannot tensor the denominator component".into()));
    }
    if !verify_map(map) {
        return Err(Error::VerificationFailed("input map does not verify".into()));
    }
    let (a, b) = map.source;
    let n = a + b;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, c) in map.components.components.iter().enumerate() {
        if Some(i) == map.denominator {
            continue;
        }
        if i != k {
            match c.sign {
                Sign::Pos => pos.push(c.clone()),
                Sign::Neg => neg.push(c.clone()),
            }
            continue;
        }
        for j in 0..n {
            let sign = if j < a { c.sign } else { c.sign.flip() };
            let poly = &c.poly * &ComplexPoly::var(n, j);
            let comp = Component::new(sign, c.weight.clone(), poly);
            match sign {
                Sign::Pos => pos.push(comp),
                Sign::Neg => neg.push(comp),
            }
        }
    }
    let target = (pos.len(), neg.len());
    let mut comps = pos;
    comps.extend(neg);
    let denominator = map.denominator.map(|i| {
        comps.push(map.components.components[i].clone());
        comps.len() - 1
    });
    let out = QuadricMap::new(map.source, target, false, WeightedHoloMap::new(n, comps), denominator)?;
    if !verify_map(&out) {
        return Err(Error::VerificationFailed("tensor extension does not verify".into()));
    }
    Ok(out)
}

/// Rational map `Q(a, b-1) -> Q(A, B-1)` from an admissible `p` by `z_{a+b} = 1`.
///
/// The last negative monomial becomes the denominator and common monomial factors are
/// cancelled.
pub fn dehomogenize(p: &SignedRealPoly) -> Result<QuadricMap> {
    let hom = QuadricMap::from_admissible(p);
    let (big_a, big_b) = hom.target;
    if big_b == 0 {
        return Err(Error::NoNegativeComponent(format!("{p} has no negative term")));
    }
    if p.b() == 0 {
        return Err(Error::OutOfDomain("source has no negative variable to set to one".into()));
    }
    if !verify_map(&hom) {
        return Err(Error::NotAdmissible(format!("{p}")));
    }
    let n = p.nvars();
    let comps: Vec<Component> = hom
        .components
        .components
        .iter()
        .map(|c| Component::new(c.sign, c.weight.clone(), c.poly.set_var_one(n - 1)))
        .collect();
    let g = comps
        .iter()
        .filter_map(|c| c.poly.monomial_content())
        .reduce(|x, y| x.gcd(&y))
        .unwrap_or_else(|| MultiIndex::zero(n - 1));
    let mut comps: Vec<Component> = comps
        .into_iter()
        .map(|c| Component::new(c.sign, c.weight, c.poly.div_monomial(&g).expect("common factor")))
        .collect();
    let den = comps.iter().rposition(|c| c.sign == Sign::Neg).expect("B >= 1");
    let d = comps.remove(den);
    comps.push(d);
    let idx = comps.len() - 1;
    let map =
        QuadricMap::new((p.a(), p.b() - 1), (big_a, big_b - 1), false, WeightedHoloMap::new(n - 1, comps), Some(idx))?;
    if !verify_map(&map) {
        return Err(Error::VerificationFailed("dehomogenized map does not verify".into()));
    }
    Ok(map)
}

/// Clears the denominator of a monomial rational map and homogenizes with a new last
/// variable, giving a real polynomial in `a + b + 1` variables that should be admissible.
pub fn rehomogenize(map: &QuadricMap) -> Result<SignedRealPoly> {
    let n = map.nvars();
    let mut diag = RatPoly::zero(n);
    for c in &map.components.components {
        if c.poly.len() != 1 {
            return Err(Error::Unsupported("rehomogenize expects monomial components".into()));
        }
        let (e, v) = c.poly.terms().next().expect("one term");
        let w = c.signed_weight() * v.norm_sqr();
        diag.add_term(e.clone(), w);
    }
    if !map.homogeneous && map.denominator.is_none() {
        diag.add_term(MultiIndex::zero(n), rint(-1));
    }
    let deg = diag.degree().unwrap_or(0);
    let (a, b) = map.source;
    let h = if map.homogeneous { diag } else { diag.homogenize(deg) };
    let b2 = if map.homogeneous { b } else { b + 1 };
    SignedRealPoly::new(a, b2, h)
}

/// Rational map `Q(a,b) -> Q(A, B-1)` read off from a form vanishing on `Q(a,b)`.
///
/// The denominator is the negative component of least degree (the last one on ties).
pub fn map_from_form(form: &HermitianForm, a: usize, b: usize) -> Result<QuadricMap> {
    if form.nvars() != a + b {
        return Err(Error::DimensionMismatch(format!(
            "form has {} variables, Q({a},{b}) needs {}",
            form.nvars(),
            a + b
        )));
    }
    if form.is_zero() {
        return Err(Error::OutOfDomain("the zero form defines no map".into()));
    }
    if !vanishes_on_quadric(form, a, b, false) {
        return Err(Error::NotVanishing(format!("not divisible by the defining polynomial of Q({a},{b})")));
    }
    let dec = form.decompose();
    let den = dec
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.sign == Sign::Neg)
        .min_by(|(i, x), (j, y)| x.poly.degree().cmp(&y.poly.degree()).then(j.cmp(i)))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::NoNegativeComponent("the form is positive semidefinite".into()))?;
    let sig = dec.signature();
    let map = QuadricMap::new((a, b), (sig.pos, sig.neg - 1), false, dec, Some(den))?;
    debug_assert!(verify_map(&map));
    Ok(map)
}

/// Whether `s` divides the diagonal real polynomial of a monomial map.
pub fn monomial_map_is_admissible(map: &QuadricMap) -> bool {
    rehomogenize(map).is_ok_and(|p| divisible_by_s(p.poly(), p.a(), p.b()))
}
