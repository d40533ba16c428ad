//! Macaulay representations and the Green-type rank bounds.
//!
//! All counts are arbitrary precision. `K_n(k)` bounds the rank of a linear system
//! of degree-`d` forms in `n + 1` variables whose generic hyperplane restriction has
//! rank `k`; it does not depend on `d`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn nat(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `binom(a, b)`, zero when `a < b`.
pub fn binom(a: &BigUint, b: u32) -> BigUint {
    let bb = BigUint::from(b);
    if *a < bb {
        return BigUint::zero();
    }
    let b = if (a - &bb) < bb { (a - &bb).to_u32().unwrap() } else { b };
    let mut acc = BigUint::one();
    for j in 0..b {
        acc = acc * (a - BigUint::from(j)) / BigUint::from(j + 1);
    }
    acc
}

pub fn binom_u(a: u64, b: u32) -> BigUint {
    binom(&nat(a), b)
}

/// `c = Σ_{i=1..d} binom(k_i, i)` with `k_d > ... > k_1 >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    pub c: BigUint,
    pub d: u32,
    /// `[k_d, k_{d-1}, ..., k_1]`.
    pub ks: Vec<BigUint>,
}

impl MacaulayRep {
    /// `k_i` for `1 <= i <= d`.
    pub fn k(&self, i: u32) -> &BigUint {
        &self.ks[(self.d - i) as usize]
    }

    pub fn value(&self) -> BigUint {
        (1..=self.d).map(|i| binom(self.k(i), i)).sum()
    }

    /// `c_<d>`: every `k_i` lowered by one.
    pub fn lower(&self) -> BigUint {
        (1..=self.d)
            .map(|i| {
                let k = self.k(i);
                if k.is_zero() {
                    BigUint::zero()
                } else {
                    binom(&(k - 1u32), i)
                }
            })
            .sum()
    }
}

/// Largest `k` with `binom(k, i) <= c` (at least `i - 1`).
fn largest_k(c: &BigUint, i: u32) -> BigUint {
    let lo0 = BigUint::from(i - 1);
    let mut lo = lo0.clone();
    let mut step = BigUint::one();
    let mut hi = &lo + &step;
    while binom(&hi, i) <= *c {
        lo = hi.clone();
        step <<= 1;
        hi = &lo + &step;
    }
    // binom(lo) <= c < binom(hi)
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if binom(&mid, i) <= *c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy `d`-th Macaulay representation of `c`.
pub fn macaulay_rep(c: &BigUint, d: u32) -> Result<MacaulayRep> {
    if d == 0 {
        return Err(Error::OutOfDomain("Macaulay representation needs d >= 1".into()));
    }
    let mut rest = c.clone();
    let mut ks = Vec::with_capacity(d as usize);
    for i in (1..=d).rev() {
        let k = largest_k(&rest, i);
        rest -= binom(&k, i);
        ks.push(k);
    }
    debug_assert!(rest.is_zero());
    Ok(MacaulayRep { c: c.clone(), d, ks })
}

pub fn macaulay_lower(c: &BigUint, d: u32) -> Result<BigUint> {
    Ok(macaulay_rep(c, d)?.lower())
}

/// Number of monomials of degree `d` in `n + 1` variables.
fn top(n: u32, d: u32) -> BigUint {
    binom(&nat(u64::from(n) + u64::from(d)), d)
}

/// `G(n,d,N) = binom(n+d-1,d) - (binom(n+d,d) - N)_<d>`.
pub fn green_g(n: u32, d: u32, big_n: &BigUint) -> Result<BigUint> {
    if n < 2 || d == 0 {
        return Err(Error::OutOfDomain(format!("G needs n >= 2 and d >= 1, got n={n}, d={d}")));
    }
    let t = top(n, d);
    if *big_n > t {
        return Err(Error::OutOfDomain(format!("N={big_n} exceeds binom(n+d,d)={t} for n={n}, d={d}")));
    }
    let lower = macaulay_lower(&(t - big_n), d)?;
    Ok(binom(&nat(u64::from(n) + u64::from(d) - 1), d) - lower)
}

/// Smallest `d >= 1` with `binom(n+d,d) >= N`.
pub fn degree_for(n: u32, big_n: &BigUint) -> u32 {
    let mut d = 1;
    while top(n, d) < *big_n {
        d += 1;
    }
    d
}

fn g_any_degree(n: u32, big_n: &BigUint) -> BigUint {
    green_g(n, degree_for(n, big_n), big_n).expect("degree chosen in range")
}

/// `K_n(k)`: the largest `N` with `G(n, d, N) <= k`.
///
/// `G` is independent of `d` and nondecreasing in `N`, so the threshold is found by
/// galloping followed by bisection.
pub fn green_k(n: u32, k: &BigUint) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::OutOfDomain(format!("K_n needs n >= 2, got {n}")));
    }
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one();
    while g_any_degree(n, &hi) <= *k {
        lo = hi.clone();
        hi <<= 1;
    }
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if g_any_degree(n, &mid) <= *k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn check_chain(m: u32, n: u32) -> Result<()> {
    if m < 1 || m >= n {
        return Err(Error::OutOfDomain(format!("need 1 <= m <= n-1 so every K index is >= 2, got m={m}, n={n}")));
    }
    Ok(())
}

/// `K_{m,n}(k) = K_{m+1}(K_{m+2}(... K_n(k)))`.
pub fn compose_k(m: u32, n: u32, k: &BigUint) -> Result<BigUint> {
    check_chain(m, n)?;
    let mut v = k.clone();
    for j in (m + 1..=n).rev() {
        v = green_k(j, &v)?;
    }
    Ok(v)
}

/// Two-sided bound: `R_j = K_j ∘ K_j` applied for `j = n` down to `m + 1`.
pub fn hermitian_r(m: u32, n: u32, k: &BigUint) -> Result<BigUint> {
    check_chain(m, n)?;
    let mut v = k.clone();
    for j in (m + 1..=n).rev() {
        v = green_k(j, &green_k(j, &v)?)?;
    }
    Ok(v)
}

/// Bound on `A` for maps `Q(a,b) -> Q(A,B)` with `a > b`: `K_{b,a+b}(B+1)`.
pub fn rigidity_bound(a: u32, b: u32, big_b: &BigUint) -> Result<BigUint> {
    if b < 1 || a <= b || a < 2 {
        return Err(Error::OutOfDomain(format!(
            "rigidity needs a > b >= 1, got a={a}, b={b} (for a <= b there is no rigidity)"
        )));
    }
    compose_k(b, a + b, &(big_b + 1u32))
}

/// `M = a^2 + ab - 2a + 1`.
pub fn stability_threshold(a: u64, b: u64) -> u64 {
    a * a + a * b + 1 - 2 * a
}

/// Whether `(A,B)` lies in the constructive sector for source `(a,b)`.
pub fn stability_region(a: u64, b: u64, big_a: u64, big_b: u64) -> Result<bool> {
    if b < 2 || a < b {
        return Err(Error::OutOfDomain(format!("stability needs a >= b >= 2, got a={a}, b={b}")));
    }
    if big_a < 2 || big_b < 2 {
        return Ok(false);
    }
    let m = stability_threshold(a, b);
    Ok(big_a + big_b >= m && a * (big_b + 1 - b) >= big_a * (b - 1) && a * (big_a + 1 - b) >= big_b * (b - 1))
}
