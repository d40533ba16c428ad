//! Veronese restriction matrices and sampled restriction ranks.
//!
//! Generic ranks are estimated by exact rank computations at random rational
//! specializations. A rank can only drop at a specialization, so the maximum over
//! trials is reported together with a Schwartz-Zippel bound on the chance that every
//! trial undershot.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::binom_u;
use crate::forms::HermitianForm;
use crate::linalg::{self, Matrix};
use crate::monomial::{monomials_of_degree, monomials_up_to, MultiIndex};
use crate::parallel::map_indexed;
use crate::poly::ComplexPoly;
use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// `z = linear * w + translation`, from `C^m` into `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineEmbedding {
    linear: Matrix,
    translation: Vec<Scalar>,
}

impl AffineEmbedding {
    /// Checks shapes and full column rank.
    pub fn new(linear: Matrix, translation: Vec<Scalar>) -> Result<Self> {
        let n = linear.len();
        let m = linear.first().map_or(0, |r| r.len());
        if linear.iter().any(|r| r.len() != m) || translation.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "embedding needs an {n}x{m} matrix and {n} translation entries"
            )));
        }
        if m == 0 || linalg::rank(&linear) != m {
            return Err(Error::OutOfDomain("embedding matrix must have full column rank".into()));
        }
        Ok(AffineEmbedding { linear, translation })
    }

    pub fn linear(linear: Matrix) -> Result<Self> {
        let n = linear.len();
        Self::new(linear, vec![Scalar::zero(); n])
    }

    pub fn ambient_dim(&self) -> usize {
        self.linear.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.linear[0].len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Scalar] {
        &self.translation
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(|t| t.is_zero())
    }

    pub fn apply(&self, w: &[Scalar]) -> Vec<Scalar> {
        self.linear
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| row.iter().zip(w).fold(t.clone(), |acc, (e, x)| acc + e * x))
            .collect()
    }

    /// Coefficients of `(E w + t)^α` in `w`, by the multinomial theorem.
    pub fn expand_monomial(&self, alpha: &MultiIndex) -> BTreeMap<MultiIndex, Scalar> {
        let m = self.sub_dim();
        let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        acc.insert(MultiIndex::zero(m), Scalar::one());
        for (i, &k) in alpha.exponents().iter().enumerate() {
            if k == 0 {
                continue;
            }
            let power = self.expand_linear_power(i, k);
            let mut next: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
            for (e1, c1) in &acc {
                for (e2, c2) in &power {
                    let slot = next.entry(e1.mul(e2)).or_insert_with(Scalar::zero);
                    *slot = &*slot + c1 * c2;
                }
            }
            next.retain(|_, v| !v.is_zero());
            acc = next;
        }
        acc
    }

    /// `(Σ_j E_ij w_j + t_i)^k` via compositions of `k` into `m + 1` parts.
    fn expand_linear_power(&self, i: usize, k: u32) -> BTreeMap<MultiIndex, Scalar> {
        let m = self.sub_dim();
        let row = &self.linear[i];
        let t = &self.translation[i];
        let mut out = BTreeMap::new();
        let mut factorial = vec![BigInt::one()];
        for j in 1..=k {
            let next = &factorial[j as usize - 1] * BigInt::from(j);
            factorial.push(next);
        }
        for exps in monomials_of_degree(m + 1, k) {
            let ex = exps.exponents();
            let mut denom = BigInt::one();
            let mut c = Scalar::one();
            for (j, &e) in ex.iter().enumerate() {
                denom *= &factorial[e as usize];
                let base = if j < m { &row[j] } else { t };
                for _ in 0..e {
                    c = &c * base;
                }
            }
            if c.is_zero() {
                continue;
            }
            let coef = Rational::new(factorial[k as usize].clone(), denom);
            out.insert(MultiIndex::new(ex[..m].to_vec()), c * Scalar::new(coef, Rational::zero()));
        }
        out
    }
}

/// Number of degree-`d` monomials in `n_vars` variables.
pub fn veronese_dim(n_vars: usize, d: u32) -> usize {
    if n_vars == 0 {
        return usize::from(d == 0);
    }
    let v = binom_u(n_vars as u64 - 1 + u64::from(d), d);
    usize::try_from(v).expect("veronese dimension fits in usize")
}

/// Matrix `T` with `Z_ambient(E w + t) = T Z_sub(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionMatrix {
    pub d: u32,
    pub rows: Vec<MultiIndex>,
    pub cols: Vec<MultiIndex>,
    pub entries: Matrix,
}

impl RestrictionMatrix {
    pub fn column_index(&self) -> BTreeMap<&MultiIndex, usize> {
        self.cols.iter().enumerate().map(|(i, e)| (e, i)).collect()
    }
}

/// Pure degree `d` for a linear embedding; all degrees `<= d` otherwise.
pub fn restriction_matrix(e: &AffineEmbedding, d: u32) -> RestrictionMatrix {
    let (rows, cols) = if e.is_linear() {
        (monomials_of_degree(e.ambient_dim(), d), monomials_of_degree(e.sub_dim(), d))
    } else {
        (monomials_up_to(e.ambient_dim(), d), monomials_up_to(e.sub_dim(), d))
    };
    let idx: BTreeMap<&MultiIndex, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let entries = rows
        .iter()
        .map(|a| {
            let mut row = vec![Scalar::zero(); cols.len()];
            for (g, c) in e.expand_monomial(a) {
                row[idx[&g]] = c;
            }
            row
        })
        .collect();
    RestrictionMatrix { d, rows, cols, entries }
}

/// The form `Tᵀ C conj(T)`, i.e. `r ∘ E`.
pub fn restrict_form(form: &HermitianForm, e: &AffineEmbedding) -> Result<HermitianForm> {
    if form.nvars() != e.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "form has {} variables, embedding targets C^{}",
            form.nvars(),
            e.ambient_dim()
        )));
    }
    let rows: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Scalar>> = form
        .basis()
        .into_iter()
        .map(|a| {
            let r = e.expand_monomial(&a);
            (a, r)
        })
        .collect();
    let mut half: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
    for (a, b, c) in form.entries() {
        for (d, q) in &rows[b] {
            let slot = half.entry((a.clone(), d.clone())).or_insert_with(Scalar::zero);
            *slot = &*slot + c * q.conj();
        }
    }
    let mut acc: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
    for ((a, d), v) in half {
        if v.is_zero() {
            continue;
        }
        for (g, p) in &rows[&a] {
            let slot = acc.entry((g.clone(), d.clone())).or_insert_with(Scalar::zero);
            *slot = &*slot + p * &v;
        }
    }
    HermitianForm::from_entries(
        e.sub_dim(),
        acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((g, d), v)| (g, d, v)).collect(),
    )
}

/// Randomization settings shared by all sampled ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub trials: usize,
    pub coeff_bound: u64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { trials: 3, coeff_bound: 1_000_000, seed: 0, parallel: true }
    }
}

impl SamplingConfig {
    /// Independent generator for trial `t`.
    pub fn rng(&self, t: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t as u64);
        rng
    }
}

/// Sampled generic rank and the probability that all trials undershot.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericRank {
    pub rank: usize,
    pub trials: usize,
    pub per_trial_bound: f64,
    pub failure_bound: f64,
}

impl GenericRank {
    fn from_ranks(ranks: &[usize], degree: u64, coeff_bound: u64) -> Self {
        let per = (degree as f64 / coeff_bound as f64).min(1.0);
        GenericRank {
            rank: ranks.iter().copied().max().unwrap_or(0),
            trials: ranks.len(),
            per_trial_bound: per,
            failure_bound: per.powi(ranks.len() as i32),
        }
    }
}

/// `p/q` with `p, q` uniform in `[1, bound]`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: u64) -> Rational {
    let bound = bound.max(1);
    Rational::new(BigInt::from(rng.random_range(1..=bound)), BigInt::from(rng.random_range(1..=bound)))
}

pub fn random_scalar<R: Rng>(rng: &mut R, bound: u64) -> Scalar {
    Scalar::new(random_rational(rng, bound), random_rational(rng, bound))
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: u64, complex: bool) -> Matrix {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if complex { random_scalar(rng, bound) } else { random_rational(rng, bound).into() })
                .collect()
        })
        .collect()
}

/// Random linear embedding `C^m -> C^n`, retried until it has full rank.
pub fn random_linear_embedding<R: Rng>(rng: &mut R, n: usize, m: usize, bound: u64, complex: bool) -> AffineEmbedding {
    loop {
        if let Ok(e) = AffineEmbedding::linear(random_matrix(rng, n, m, bound, complex)) {
            return e;
        }
    }
}

/// Graph subspace `z' = V (w, 1)`, `z'' = w` with `z'` the first `n - m` coordinates.
pub fn random_graph_embedding<R: Rng>(rng: &mut R, n: usize, m: usize, bound: u64, affine: bool) -> AffineEmbedding {
    let k = n - m;
    let v = random_matrix(rng, k, m + 1, bound, true);
    graph_embedding(&v, affine)
}

fn graph_embedding(v: &Matrix, affine: bool) -> AffineEmbedding {
    let k = v.len();
    let m = v[0].len() - 1;
    let mut linear: Matrix = v.iter().map(|r| r[..m].to_vec()).collect();
    let mut translation: Vec<Scalar> = v.iter().map(|r| if affine { r[m].clone() } else { Scalar::zero() }).collect();
    for i in 0..m {
        linear.push((0..m).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect());
        translation.push(Scalar::zero());
    }
    debug_assert_eq!(linear.len(), k + m);
    AffineEmbedding::new(linear, translation).expect("graph embeddings have full rank")
}

/// Generic rank of `r` restricted to an `sub_dim`-dimensional linear subspace.
pub fn generic_restriction_rank(form: &HermitianForm, sub_dim: usize, cfg: &SamplingConfig) -> Result<GenericRank> {
    let n = form.nvars();
    if sub_dim < 1 || sub_dim >= n || cfg.trials < 1 {
        return Err(Error::OutOfDomain(format!(
            "need 1 <= dim < {n} and at least one trial, got dim={sub_dim}, trials={}",
            cfg.trials
        )));
    }
    let ranks = map_indexed(cfg.trials, cfg.parallel, |t| {
        let mut rng = cfg.rng(t);
        let e = random_linear_embedding(&mut rng, n, sub_dim, cfg.coeff_bound, true);
        restrict_form(form, &e).map(|f| f.rank())
    });
    let ranks: Vec<usize> = ranks.into_iter().collect::<Result<_>>()?;
    let d = u64::from(form.degree());
    let cols = (0..=d as u32).map(|k| veronese_dim(sub_dim, k) as u64).sum::<u64>();
    Ok(GenericRank::from_ranks(&ranks, 2 * d.max(1) * cols, cfg.coeff_bound))
}

/// Generic rank of the restriction of a linear system of degree-`d` forms.
///
/// Each polynomial is a row; the restricted system is `A T`. Specializations are
/// real, which suffices for holomorphic data.
pub fn generic_system_rank(system: &[ComplexPoly], sub_dim: usize, cfg: &SamplingConfig) -> Result<GenericRank> {
    let n = system.first().map_or(0, |p| p.nvars());
    if sub_dim < 1 || sub_dim >= n || cfg.trials < 1 {
        return Err(Error::OutOfDomain(format!("need 1 <= dim < {n}, got {sub_dim}")));
    }
    if system.iter().any(|p| p.nvars() != n) {
        return Err(Error::DimensionMismatch("system polynomials disagree on variable count".into()));
    }
    let d = system.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let ranks = map_indexed(cfg.trials, cfg.parallel, |t| {
        let mut rng = cfg.rng(t);
        let e = random_linear_embedding(&mut rng, n, sub_dim, cfg.coeff_bound, false);
        let mut cache: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Scalar>> = BTreeMap::new();
        let rows: Vec<BTreeMap<MultiIndex, Scalar>> = system
            .iter()
            .map(|p| {
                let mut row: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
                for (a, c) in p.terms() {
                    let img = cache.entry(a.clone()).or_insert_with(|| e.expand_monomial(a));
                    for (g, v) in img.iter() {
                        let slot = row.entry(g.clone()).or_insert_with(Scalar::zero);
                        *slot = &*slot + c * v;
                    }
                }
                row
            })
            .collect();
        let cols: Vec<MultiIndex> = {
            let mut s: Vec<MultiIndex> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
            s.sort();
            s.dedup();
            s
        };
        let m: Matrix = rows
            .iter()
            .map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect();
        linalg::rank(&m)
    });
    let cols = monomials_up_to(sub_dim, d).len() as u64;
    Ok(GenericRank::from_ranks(&ranks, u64::from(d.max(1)) * cols, cfg.coeff_bound))
}

/// Subspace family used by [`max_restriction_rank`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `z' = V (z'', 1)`; linear (no constant column) for bihomogeneous forms.
    Graph,
    /// Random full-rank `E` with a random translation (none for bihomogeneous forms).
    General,
}

/// Largest restriction rank seen over `samples` random subspaces of one family.
pub fn max_restriction_rank(
    form: &HermitianForm,
    sub_dim: usize,
    samples: usize,
    family: Family,
    cfg: &SamplingConfig,
) -> Result<usize> {
    let n = form.nvars();
    if sub_dim < 1 || sub_dim >= n || samples < 1 {
        return Err(Error::OutOfDomain(format!(
            "need 1 <= dim < {n} and samples >= 1, got dim={sub_dim}, samples={samples}"
        )));
    }
    let affine = !form.is_bihomogeneous();
    let ranks = map_indexed(samples, cfg.parallel, |t| {
        let mut rng = cfg.rng(t);
        let e = match family {
            Family::Graph => random_graph_embedding(&mut rng, n, sub_dim, cfg.coeff_bound, affine),
            Family::General => {
                let lin = random_linear_embedding(&mut rng, n, sub_dim, cfg.coeff_bound, true);
                let t = if affine {
                    (0..n).map(|_| random_scalar(&mut rng, cfg.coeff_bound)).collect()
                } else {
                    vec![Scalar::zero(); n]
                };
                AffineEmbedding::new(lin.matrix().clone(), t).expect("full rank")
            }
        };
        restrict_form(form, &e).map(|f| f.rank())
    });
    let ranks: Vec<usize> = ranks.into_iter().collect::<Result<_>>()?;
    Ok(ranks.into_iter().max().unwrap_or(0))
}

/// [`max_restriction_rank`] over graph subspaces.
pub fn max_affine_rank(form: &HermitianForm, sub_dim: usize, samples: usize, cfg: &SamplingConfig) -> Result<usize> {
    max_restriction_rank(form, sub_dim, samples, Family::Graph, cfg)
}

/// Random unitary `(I - S)(I + S)^{-1}` for a skew-Hermitian Gaussian-rational `S`.
pub fn cayley_unitary<R: Rng>(rng: &mut R, n: usize, bound: u64) -> Matrix {
    let mut s = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        let im = random_rational(rng, bound);
        s[i][i] = Scalar::new(Rational::zero(), signed(rng, im));
        for j in i + 1..n {
            let (re, im) = (random_rational(rng, bound), random_rational(rng, bound));
            let x = Scalar::new(signed(rng, re), signed(rng, im));
            s[j][i] = -x.conj();
            s[i][j] = x;
        }
    }
    let id = linalg::identity(n);
    let minus: Matrix = (0..n).map(|i| (0..n).map(|j| &id[i][j] - &s[i][j]).collect()).collect();
    let plus: Matrix = (0..n).map(|i| (0..n).map(|j| &id[i][j] + &s[i][j]).collect()).collect();
    let inv = linalg::inverse(&plus).expect("I + S is invertible for skew-Hermitian S");
    linalg::mat_mul(&minus, &inv)
}

fn signed<R: Rng>(rng: &mut R, r: Rational) -> Rational {
    if rng.random_bool(0.5) {
        -r
    } else {
        r
    }
}

/// A `b`-dimensional affine subspace contained in `Q(a,b)`.
///
/// `z' = V (w, 1)`, `z'' = w` with `V` an `a x (b+1)` matrix of orthonormal columns,
/// so `|z'|^2 - |z''|^2 = 1` identically.
pub fn quadric_subspace<R: Rng>(rng: &mut R, a: usize, b: usize, bound: u64) -> Result<AffineEmbedding> {
    if b < 1 || a < b + 1 {
        return Err(Error::OutOfDomain(format!("Q({a},{b}) contains no such subspaces; need a > b >= 1")));
    }
    let u = cayley_unitary(rng, a, bound);
    let v: Matrix = u.iter().map(|r| r[..=b].to_vec()).collect();
    let gram = linalg::mat_mul(&linalg::conj_transpose(&v), &v);
    if gram != linalg::identity(b + 1) {
        return Err(Error::VerificationFailed("Cayley columns are not orthonormal".into()));
    }
    Ok(graph_embedding(&v, true))
}
