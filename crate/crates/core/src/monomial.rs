//! Exponent vectors and the graded monomial basis.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial `z^α` in a fixed number of variables.
///
/// Ordered graded-lexicographically: lower total degree first, and within one
/// degree `z1^2 < z1*z2 < z2^2`, i.e. the listing `(z1^d, z1^(d-1) z2, ..., zn^d)`.
/// Every matrix in the crate is indexed in this order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.nvars(), other.nvars());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.divides(other).then(|| MultiIndex(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn with(&self, var: usize, exp: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[var] = exp;
        MultiIndex(e)
    }

    /// Drops variable `var`, returning an index in one fewer variable.
    pub fn remove_var(&self, var: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e.remove(var);
        MultiIndex(e)
    }

    /// Appends one variable with exponent `exp`.
    pub fn push_var(&self, exp: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e.push(exp);
        MultiIndex(e)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Renders as `z1^2*z3`, or `1` for the constant monomial.
    pub fn render(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("{var}{}", i + 1) } else { format!("{var}{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All monomials of degree exactly `d` in `nvars` variables, in basis order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, d, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// All monomials of degree at most `d`, in basis order.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_in_two_vars_is_listed_leading_variable_first() {
        let m = monomials_of_degree(2, 2);
        let e: Vec<&[u32]> = m.iter().map(|x| x.exponents()).collect();
        assert_eq!(e, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        let mut sorted = m.clone();
        sorted.sort();
        assert_eq!(sorted, m);
    }

    #[test]
    fn graded_order_puts_lower_degree_first() {
        let a = MultiIndex::new(vec![0, 0, 3]);
        let b = MultiIndex::new(vec![4, 0, 0]);
        assert!(a < b);
        assert!(MultiIndex::zero(3) < a);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(5, 0).len(), 1);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }

    #[test]
    fn divisibility_and_render() {
        let a = MultiIndex::new(vec![1, 0, 2]);
        let b = MultiIndex::new(vec![2, 1, 2]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(MultiIndex::new(vec![1, 1, 0])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.render("z"), "z1*z3^2");
        assert_eq!(MultiIndex::zero(2).render("x"), "1");
    }
}
