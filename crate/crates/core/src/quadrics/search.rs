use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::maps::{verify_map, QuadricMap};
use super::{corner_unchecked, divisible_by_s, grow_unchecked, s_linear, s_poly, Move, SignedRealPoly};
use crate::combinat::{stability_region, stability_threshold};
use crate::{Error, Result};

/// One admissible polynomial per reached signature.
#[derive(Clone, Debug)]
pub struct Witness {
    pub poly: SignedRealPoly,
    pub parent: Option<(usize, usize)>,
    pub via: Option<Move>,
    pub layer: usize,
}

/// Result of a breadth-first exploration of the signature lattice.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub a: usize,
    pub b: usize,
    pub max_a: usize,
    pub max_b: usize,
    pub witnesses: BTreeMap<(usize, usize), Witness>,
    /// False when the node budget stopped the search early.
    pub complete: bool,
}

impl Lattice {
    pub fn witness(&self, big_a: usize, big_b: usize) -> Option<&SignedRealPoly> {
        self.witnesses.get(&(big_a, big_b)).map(|w| &w.poly)
    }

    pub fn contains(&self, big_a: usize, big_b: usize) -> bool {
        self.witnesses.contains_key(&(big_a, big_b))
    }

    /// Moves leading from a seed to `(A, B)`.
    pub fn path(&self, big_a: usize, big_b: usize) -> Option<Vec<Move>> {
        let mut node = (big_a, big_b);
        let mut moves = Vec::new();
        loop {
            let w = self.witnesses.get(&node)?;
            match (w.parent, w.via) {
                (Some(p), Some(mv)) => {
                    moves.push(mv);
                    node = p;
                }
                _ => break,
            }
        }
        moves.reverse();
        Some(moves)
    }
}

/// `((degree, terms), polynomial, parent, move)`.
type Candidate = ((u32, usize), SignedRealPoly, (usize, usize), Move);

fn check_source(a: usize, b: usize) -> Result<()> {
    if b < 2 || a < b {
        return Err(Error::OutOfDomain(format!("the lattice search needs a >= b >= 2, got a={a}, b={b}")));
    }
    Ok(())
}

/// Breadth-first search from `s` at `(a,b)` and `-s` at `(b,a)` inside `A <= max_a`, `B <= max_b`.
///
/// Every move raises both coordinates, so the box bounds the search. A node keeps the
/// candidate of least `(degree, terms)` among those found in its first layer.
pub fn explore(a: usize, b: usize, max_a: usize, max_b: usize, budget: usize) -> Result<Lattice> {
    check_source(a, b)?;
    let mut lat = Lattice { a, b, max_a, max_b, witnesses: BTreeMap::new(), complete: true };
    let seeds =
        [((a, b), s_poly(a, b)), ((b, a), SignedRealPoly::new(a, b, s_linear(a, b, true)).expect("homogeneous"))];
    let mut layer = Vec::new();
    for (node, p) in seeds {
        if node.0 <= max_a && node.1 <= max_b && !lat.witnesses.contains_key(&node) {
            if lat.witnesses.len() >= budget {
                lat.complete = false;
                return Ok(lat);
            }
            lat.witnesses.insert(node, Witness { poly: p, parent: None, via: None, layer: 0 });
            layer.push(node);
        }
    }
    let moves = Move::all();
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let mut cand: BTreeMap<(usize, usize), Candidate> = BTreeMap::new();
        for node in &layer {
            let p = &lat.witnesses[node].poly;
            for &mv in &moves {
                let (da, db) = mv.shift(a, b);
                let target = ((node.0 as i64 + da) as usize, (node.1 as i64 + db) as usize);
                if target.0 > max_a || target.1 > max_b || lat.witnesses.contains_key(&target) {
                    continue;
                }
                let out = match mv {
                    Move::Grow => Some(grow_unchecked(p, false)),
                    Move::GrowMirror => Some(grow_unchecked(p, true)),
                    Move::Corner { pivot, negate_s, hat } => corner_unchecked(p, pivot, negate_s, hat),
                };
                let Some(q) = out else { continue };
                let sig = q.signature();
                if (sig.pos, sig.neg) != target {
                    return Err(Error::VerificationFailed(format!(
                        "move {} from {node:?} gave signature ({}, {})",
                        mv.name(),
                        sig.pos,
                        sig.neg
                    )));
                }
                let key = (q.degree(), q.num_terms());
                if cand.get(&target).is_none_or(|c| key < c.0) {
                    cand.insert(target, (key, q, *node, mv));
                }
            }
        }
        let mut next = Vec::with_capacity(cand.len());
        for (node, (_, q, parent, mv)) in cand {
            if lat.witnesses.len() >= budget {
                lat.complete = false;
                return Ok(lat);
            }
            if !divisible_by_s(q.poly(), a, b) {
                return Err(Error::VerificationFailed(format!("witness for {node:?} is not divisible by s")));
            }
            lat.witnesses.insert(node, Witness { poly: q, parent: Some(parent), via: Some(mv), layer: depth });
            next.push(node);
        }
        layer = next;
    }
    Ok(lat)
}

/// Monomial map `HQ(a,b) -> HQ(A,B)` built from a lattice witness.
pub fn construct_map(a: usize, b: usize, big_a: usize, big_b: usize, budget: usize) -> Result<QuadricMap> {
    check_source(a, b)?;
    if big_a < 2 || big_b < 2 {
        return Err(Error::OutOfDomain(format!("target needs A, B >= 2, got ({big_a}, {big_b})")));
    }
    let lat = explore(a, b, big_a, big_b, budget)?;
    let Some(p) = lat.witness(big_a, big_b) else {
        let inside = stability_region(a as u64, b as u64, big_a as u64, big_b as u64)?;
        let msg = if !lat.complete {
            format!("({big_a}, {big_b}): budget of {budget} nodes exhausted; raise --budget")
        } else if inside {
            format!("({big_a}, {big_b}) is inside the stability sector but no move sequence reaches it")
        } else {
            format!("({big_a}, {big_b}) is outside the stability sector and no move sequence reaches it")
        };
        return Err(Error::NotReached(msg));
    };
    let map = QuadricMap::from_admissible(p);
    if !verify_map(&map) {
        return Err(Error::VerificationFailed(format!("map for ({big_a}, {big_b}) does not verify")));
    }
    Ok(map)
}

/// Text picture of the explored lattice, `B` decreasing down the rows and `A` across.
#[derive(Clone, Debug)]
pub struct RegionGrid {
    pub a: usize,
    pub b: usize,
    pub max: usize,
    pub complete: bool,
    /// `cells[B][A]`.
    pub cells: Vec<Vec<char>>,
}

fn on_boundary(a: i64, b: i64, big_a: i64, big_b: i64) -> bool {
    let m = stability_threshold(a as u64, b as u64) as i64;
    big_a + big_b == m || a * (big_b - b + 1) == big_a * (b - 1) || a * (big_a - b + 1) == big_b * (b - 1)
}

/// `@` constructed, `#` inside the sector without a witness, `+` boundary, `.` unknown.
pub fn region_grid(a: usize, b: usize, max: usize, budget: usize) -> Result<RegionGrid> {
    let lat = explore(a, b, max, max, budget)?;
    let mut cells = vec![vec!['.'; max + 1]; max + 1];
    for (big_b, row) in cells.iter_mut().enumerate() {
        for (big_a, cell) in row.iter_mut().enumerate() {
            *cell = if lat.contains(big_a, big_b) {
                '@'
            } else if stability_region(a as u64, b as u64, big_a as u64, big_b as u64)? {
                '#'
            } else if on_boundary(a as i64, b as i64, big_a as i64, big_b as i64) {
                '+'
            } else {
                '.'
            };
        }
    }
    Ok(RegionGrid { a, b, max, complete: lat.complete, cells })
}

impl RegionGrid {
    pub fn render(&self) -> String {
        let (a, b) = (self.a, self.b);
        let mut out = String::new();
        let _ = writeln!(out, "region a={a} b={b} max={} M={}", self.max, stability_threshold(a as u64, b as u64));
        for big_b in (0..=self.max).rev() {
            let row: String = self.cells[big_b].iter().collect();
            let _ = writeln!(out, "B={big_b:<3} {row}");
        }
        let ticks: String = (0..=self.max).map(|x| char::from(b'0' + (x % 10) as u8)).collect();
        let _ = writeln!(out, "A%10  {ticks}");
        let _ = writeln!(
            out,
            "boundaries: A+B={}, {a}*(B-{})={}*A, {a}*(A-{})={}*B",
            stability_threshold(a as u64, b as u64),
            b - 1,
            b - 1,
            b - 1,
            b - 1
        );
        let _ = writeln!(out, "legend: @ constructed, # sector without witness, + boundary, . unknown");
        if !self.complete {
            let _ = writeln!(out, "note: search budget exhausted; '.' and '#' cells may be reachable");
        }
        out
    }

    pub fn constructed(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (big_b, row) in self.cells.iter().enumerate() {
            for (big_a, &c) in row.iter().enumerate() {
                if c == '@' {
                    v.push((big_a, big_b));
                }
            }
        }
        v.sort();
        v
    }
}
