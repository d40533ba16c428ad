//! Exact dense linear algebra over the Gaussian rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{denom_lcm, Rational, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Integral domain with exact division, as needed by Bareiss elimination.
pub trait ExactRing: Clone + PartialEq + Zero + One {
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self;
    /// `self / d`, where the quotient is known to be exact.
    fn exact_div(&self, d: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }

    fn exact_div(&self, d: &Self) -> Self {
        debug_assert!((self % d).is_zero());
        self / d
    }
}

impl ExactRing for Complex<BigInt> {
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }

    fn exact_div(&self, d: &Self) -> Self {
        let n = d.norm_sqr();
        let p = self * d.conj();
        debug_assert!((&p.re % &n).is_zero() && (&p.im % &n).is_zero());
        Complex::new(p.re / &n, p.im / n)
    }
}

/// Fraction-free (Bareiss) row echelon rank. Consumes the rows.
pub fn bareiss_rank<T: ExactRing>(mut a: Vec<Vec<T>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                row[j] = T::mul_sub(&pivot_row[c], &row[j], &f, &pivot_row[j]).exact_div(&prev);
            }
            row[c] = T::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn integer_row_real(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.re.denom()));
    row.iter().map(|s| (&s.re * Rational::from_integer(l.clone())).to_integer()).collect()
}

fn integer_row_complex(row: &[Scalar]) -> Vec<Complex<BigInt>> {
    let l = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(&denom_lcm(s)));
    let lr = Rational::from_integer(l);
    row.iter().map(|s| Complex::new((&s.re * &lr).to_integer(), (&s.im * &lr).to_integer())).collect()
}

/// Exact rank of a Gaussian-rational matrix.
pub fn rank(m: &[Vec<Scalar>]) -> usize {
    if m.iter().all(|row| row.iter().all(|s| s.im.is_zero())) {
        bareiss_rank(m.iter().map(|r| integer_row_real(r)).collect())
    } else {
        bareiss_rank(m.iter().map(|r| integer_row_complex(r)).collect())
    }
}

/// Exact rank of a rational matrix.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    bareiss_rank(
        m.iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
                let lr = Rational::from_integer(l);
                row.iter().map(|s| (s * &lr).to_integer()).collect()
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn of(r: &Rational) -> Option<Sign> {
        if r.is_positive() {
            Some(Sign::Pos)
        } else if r.is_negative() {
            Some(Sign::Neg)
        } else {
            None
        }
    }
}

/// One term `sign * weight * v v*` of a Hermitian decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Pivot {
    pub sign: Sign,
    pub weight: Rational,
    pub vector: Vec<Scalar>,
}

/// Symmetric-pivoted block LDL* of a Hermitian matrix, returned as rank-one terms.
///
/// `m = Σ sign·weight·v v*` exactly. A 1x1 pivot is taken on the diagonal entry of
/// largest modulus; when the remaining diagonal is zero a 2x2 block `[[0,c],[c̄,0]]`
/// is split into one positive and one negative term.
pub fn hermitian_pivots(m: &[Vec<Scalar>]) -> Vec<Pivot> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    loop {
        let diag = active
            .iter()
            .copied()
            .filter(|&i| !a[i][i].re.is_zero())
            .max_by(|&i, &j| a[i][i].re.abs().cmp(&a[j][j].re.abs()).then(j.cmp(&i)));
        if let Some(p) = diag {
            let d = a[p][p].re.clone();
            let u: Vec<Scalar> = (0..n).map(|i| a[i][p].clone()).collect();
            let dinv = Scalar::new(d.recip(), Rational::zero());
            rank_one_update(&mut a, &active, &u, &u, &dinv);
            active.retain(|&i| i != p);
            out.push(Pivot {
                sign: Sign::of(&d).unwrap(),
                weight: d.abs(),
                vector: u.iter().map(|x| x * &dinv).collect(),
            });
            continue;
        }
        let off = active
            .iter()
            .copied()
            .find_map(|i| active.iter().copied().find(|&j| j > i && !a[i][j].is_zero()).map(|j| (i, j)));
        let Some((i, j)) = off else { break };
        let c = a[i][j].clone();
        let ui: Vec<Scalar> = (0..n).map(|k| a[k][i].clone()).collect();
        let uj: Vec<Scalar> = (0..n).map(|k| a[k][j].clone()).collect();
        // removed part: ui uj*/c̄ + uj ui*/c
        let inv_cbar = c.conj().inv();
        let inv_c = c.inv();
        rank_one_update(&mut a, &active, &ui, &uj, &inv_cbar);
        rank_one_update(&mut a, &active, &uj, &ui, &inv_c);
        active.retain(|&k| k != i && k != j);
        let x: Vec<Scalar> = ui.iter().map(|v| v * &inv_cbar).collect();
        let cy: Vec<Scalar> = uj.iter().map(|v| v * &inv_c * &c).collect();
        let plus = x.iter().zip(&cy).map(|(x, y)| y + x).collect();
        let minus = x.iter().zip(&cy).map(|(x, y)| y - x).collect();
        out.push(Pivot { sign: Sign::Pos, weight: half.clone(), vector: plus });
        out.push(Pivot { sign: Sign::Neg, weight: half.clone(), vector: minus });
    }
    out
}

/// `a -= f * u v*` on the active block.
fn rank_one_update(a: &mut Matrix, active: &[usize], u: &[Scalar], v: &[Scalar], f: &Scalar) {
    for &i in active {
        if u[i].is_zero() {
            continue;
        }
        let ui = &u[i] * f;
        for &j in active {
            if v[j].is_zero() {
                continue;
            }
            a[i][j] = &a[i][j] - &ui * v[j].conj();
        }
    }
}

/// `(positive, negative)` eigenvalue counts.
pub fn inertia(m: &[Vec<Scalar>]) -> (usize, usize) {
    let piv = hermitian_pivots(m);
    let pos = piv.iter().filter(|p| p.sign == Sign::Pos).count();
    (pos, piv.len() - pos)
}

pub fn is_hermitian(m: &[Vec<Scalar>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (i..n).all(|j| m[i][j] == m[j][i].conj()))
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "inner dimension");
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn conj_transpose(a: &[Vec<Scalar>]) -> Matrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|row| row[j].conj()).collect()).collect()
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn inverse(a: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut inv = identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let f = m[c][c].inv();
        for j in 0..n {
            m[c][j] = &m[c][j] * &f;
            inv[c][j] = &inv[c][j] * &f;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let g = m[i][c].clone();
            for j in 0..n {
                let t = &g * &m[c][j];
                m[i][j] = &m[i][j] - t;
                let t = &g * &inv[c][j];
                inv[i][j] = &inv[i][j] - t;
            }
        }
    }
    Some(inv)
}
