//! Hermitian forms `r(z, z̄) = Σ c_{αβ} z^α z̄^β` with Hermitian-symmetric coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::linalg::{self, Matrix, Sign};
use crate::monomial::MultiIndex;
use crate::poly::{ComplexPoly, RatPoly};
use crate::scalar::{real, Rational, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    n: usize,
    entries: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

/// `(positive, negative)` eigenvalue counts of the coefficient matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignaturePair {
    pub pos: usize,
    pub neg: usize,
}

impl SignaturePair {
    pub fn new(pos: usize, neg: usize) -> Self {
        SignaturePair { pos, neg }
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }
}

/// One term `sign * weight * |poly(z)|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub sign: Sign,
    pub weight: Rational,
    pub poly: ComplexPoly,
}

impl Component {
    pub fn new(sign: Sign, weight: Rational, poly: ComplexPoly) -> Self {
        Component { sign, weight, poly }
    }

    pub fn signed_weight(&self) -> Rational {
        match self.sign {
            Sign::Pos => self.weight.clone(),
            Sign::Neg => -self.weight.clone(),
        }
    }
}

/// `Σ ε_j w_j |f_j(z)|^2` as a list of weighted holomorphic components.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedHoloMap {
    pub n: usize,
    pub components: Vec<Component>,
}

impl WeightedHoloMap {
    pub fn new(n: usize, components: Vec<Component>) -> Self {
        WeightedHoloMap { n, components }
    }

    pub fn signature(&self) -> SignaturePair {
        let pos = self.components.iter().filter(|c| c.sign == Sign::Pos).count();
        SignaturePair::new(pos, self.components.len() - pos)
    }

    /// `Σ ε w |f|^2`, minus one if `subtract_one`.
    pub fn norm_difference(&self, subtract_one: bool) -> HermitianForm {
        let mut out = HermitianForm::zero(self.n);
        for c in &self.components {
            let w = real(c.signed_weight());
            for (a, x) in c.poly.terms() {
                for (b, y) in c.poly.terms() {
                    out.add_entry(a.clone(), b.clone(), &w * x * y.conj());
                }
            }
        }
        if subtract_one {
            let z = MultiIndex::zero(self.n);
            out.add_entry(z.clone(), z, -Scalar::one());
        }
        out
    }

    /// Whether the component polynomials are linearly independent.
    pub fn is_independent(&self) -> bool {
        let basis: BTreeSet<&MultiIndex> = self.components.iter().flat_map(|c| c.poly.support()).collect();
        let rows: Matrix = self.components.iter().map(|c| basis.iter().map(|e| c.poly.coeff(e)).collect()).collect();
        linalg::rank(&rows) == self.components.len()
    }
}

impl HermitianForm {
    pub fn zero(n: usize) -> Self {
        HermitianForm { n, entries: BTreeMap::new() }
    }

    /// Builds a form from `(α, β, c)` triples, inferring missing mirror entries.
    pub fn from_entries(n: usize, list: Vec<(MultiIndex, MultiIndex, Scalar)>) -> Result<Self> {
        let mut seen: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
        for (a, b, c) in list {
            if a.nvars() != n || b.nvars() != n {
                return Err(Error::DimensionMismatch(format!("index ({a}; {b}) does not have {n} exponents")));
            }
            if a == b && !c.im.is_zero() {
                return Err(Error::NonRealDiagonal(a.to_string()));
            }
            let mirror = (b.clone(), a.clone());
            if let Some(m) = seen.get(&mirror) {
                if a != b && *m != c.conj() {
                    return Err(Error::ConjugateMismatch { alpha: a.to_string(), beta: b.to_string() });
                }
            }
            match seen.get(&(a.clone(), b.clone())) {
                Some(old) if *old != c => {
                    return Err(Error::ConjugateMismatch { alpha: a.to_string(), beta: b.to_string() })
                }
                _ => {
                    seen.insert((a, b), c);
                }
            }
        }
        let mut out = HermitianForm::zero(n);
        for ((a, b), c) in seen {
            if c.is_zero() {
                continue;
            }
            out.entries.insert((b.clone(), a.clone()), c.conj());
            out.entries.insert((a, b), c);
        }
        Ok(out)
    }

    /// Adds `c` at `(α, β)` without touching the mirror; callers keep symmetry.
    fn add_entry(&mut self, a: MultiIndex, b: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let v = self.entries.remove(&key).map_or(c.clone(), |old| old + c);
        if !v.is_zero() {
            self.entries.insert(key, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, a: &MultiIndex, b: &MultiIndex) -> Scalar {
        self.entries.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &Scalar)> {
        self.entries.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Monomials appearing in the support, in basis order.
    pub fn basis(&self) -> Vec<MultiIndex> {
        let set: BTreeSet<&MultiIndex> = self.entries.keys().map(|(a, _)| a).collect();
        set.into_iter().cloned().collect()
    }

    /// Coefficient matrix restricted to the support basis.
    pub fn matrix(&self) -> (Vec<MultiIndex>, Matrix) {
        let basis = self.basis();
        let pos: BTreeMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let k = basis.len();
        let mut m = vec![vec![Scalar::zero(); k]; k];
        for ((a, b), c) in &self.entries {
            m[pos[a]][pos[b]] = c.clone();
        }
        (basis, m)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix().1)
    }

    pub fn inertia(&self) -> SignaturePair {
        let (p, q) = linalg::inertia(&self.matrix().1);
        SignaturePair::new(p, q)
    }

    /// `r = Σ ε_j w_j |ℓ_j|^2` with exact Gaussian-rational `ℓ_j` and rational `w_j > 0`.
    pub fn decompose(&self) -> WeightedHoloMap {
        let (basis, m) = self.matrix();
        let components = linalg::hermitian_pivots(&m)
            .into_iter()
            .map(|p| {
                let poly = ComplexPoly::from_terms(self.n, basis.iter().cloned().zip(p.vector));
                Component::new(p.sign, p.weight, poly)
            })
            .collect();
        WeightedHoloMap::new(self.n, components)
    }

    /// Diagonal form obtained from `p(x)` by `x_k = |z_k|^2`.
    pub fn from_real_poly(p: &RatPoly) -> Self {
        let mut out = HermitianForm::zero(p.nvars());
        for (e, c) in p.terms() {
            out.entries.insert((e.clone(), e.clone()), real(c.clone()));
        }
        out
    }

    /// `r(E w + t, conj(E w + t))` for `E` with `nvars()` rows.
    pub fn compose_linear(&self, e: &Matrix, t: Option<&[Scalar]>) -> Result<Self> {
        if e.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "form has {} variables but the map has {} rows",
                self.n,
                e.len()
            )));
        }
        let m = e.first().map_or(0, |r| r.len());
        if e.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged coefficient matrix".into()));
        }
        if let Some(t) = t {
            if t.len() != self.n {
                return Err(Error::DimensionMismatch(format!(
                    "translation has {} entries, expected {}",
                    t.len(),
                    self.n
                )));
            }
        }
        let lin: Vec<ComplexPoly> = (0..self.n)
            .map(|i| {
                let mut p = ComplexPoly::zero(m);
                for (j, c) in e[i].iter().enumerate() {
                    p.add_term(MultiIndex::unit(m, j), c.clone());
                }
                if let Some(t) = t {
                    p.add_term(MultiIndex::zero(m), t[i].clone());
                }
                p
            })
            .collect();
        let images: BTreeMap<MultiIndex, ComplexPoly> = self
            .basis()
            .into_iter()
            .map(|a| {
                let mut p = ComplexPoly::one(m);
                for (i, &k) in a.exponents().iter().enumerate() {
                    if k > 0 {
                        p = &p * &lin[i].pow(k);
                    }
                }
                (a, p)
            })
            .collect();
        // stage one: contract the antiholomorphic side, (α, δ) -> Σ_β c_{αβ} conj(q_{β,δ})
        let mut half: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
        for ((a, b), c) in &self.entries {
            for (d, q) in images[b].terms() {
                let v = c * q.conj();
                let slot = half.entry((a.clone(), d.clone())).or_insert_with(Scalar::zero);
                *slot = &*slot + v;
            }
        }
        let mut out = HermitianForm::zero(m);
        for ((a, d), v) in half {
            if v.is_zero() {
                continue;
            }
            for (g, p) in images[&a].terms() {
                out.add_entry(g.clone(), d.clone(), p * &v);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.entries {
            out.add_entry(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = HermitianForm::zero(self.n);
        let s = real(r.clone());
        for ((a, b), c) in &self.entries {
            out.add_entry(a.clone(), b.clone(), c * &s);
        }
        out
    }

    /// Pointwise product of real-valued functions.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HermitianForm::zero(self.n);
        for ((a, b), c) in &self.entries {
            for ((g, d), e) in &other.entries {
                out.add_entry(a.mul(g), b.mul(d), c * e);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let z = MultiIndex::zero(self.n);
        let mut out = HermitianForm::zero(self.n);
        out.add_entry(z.clone(), z, Scalar::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Bidegree `(d, d)` for a single `d` (the zero form counts).
    pub fn is_bihomogeneous(&self) -> bool {
        let mut degs = self.entries.keys().map(|(a, b)| (a.degree(), b.degree()));
        match degs.next() {
            None => true,
            Some((d, e)) => d == e && degs.all(|x| x == (d, d)),
        }
    }

    /// Highest degree in `z` appearing in the support.
    pub fn degree(&self) -> u32 {
        self.entries.keys().map(|(a, _)| a.degree()).max().unwrap_or(0)
    }

    /// The polynomial `Σ c_{αβ} z^α w^β` in `2n` variables `(z, w)`.
    pub fn complexify(&self) -> ComplexPoly {
        let mut p = ComplexPoly::zero(2 * self.n);
        for ((a, b), c) in &self.entries {
            let mut e = a.exponents().to_vec();
            e.extend_from_slice(b.exponents());
            p.add_term(MultiIndex::new(e), c.clone());
        }
        p
    }

    pub fn evaluate(&self, z: &[Scalar]) -> Scalar {
        let pw = |e: &MultiIndex, conj: bool| {
            let mut acc = Scalar::one();
            for (x, &k) in z.iter().zip(e.exponents()) {
                let x = if conj { x.conj() } else { x.clone() };
                for _ in 0..k {
                    acc = &acc * &x;
                }
            }
            acc
        };
        self.entries.iter().fold(Scalar::zero(), |acc, ((a, b), c)| acc + c * pw(a, false) * pw(b, true))
    }
}

/// `Σ_{j<=a} |z_j|^2 - Σ_{j>a} |z_j|^2` on `a + b` variables.
pub fn signature_form(a: usize, b: usize) -> HermitianForm {
    HermitianForm::from_real_poly(&crate::quadrics::s_poly(a, b).to_poly())
}
