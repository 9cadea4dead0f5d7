//! Exact emptiness and containment for set expressions.
//!
//! Membership of a point in an expression depends only on which atoms its
//! support hits and on which singleton (if any) it equals. Every hit pattern
//! over a finite set of distinct atoms is realized by some point: for a hit
//! set `H`, put each `α ∈ H` at the least element of `E_α` outside the other
//! atoms. Trying all patterns plus the singletons themselves therefore
//! decides the expression over the whole (infinite) ambient space.

use crate::branch::{find_separator, Branch};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::point::{Ambient, Point};

/// Largest atom count decided by exhaustive pattern search.
pub const MAX_EXACT_ATOMS: usize = 20;

/// Subsets of `0..n` ordered by size, then lexicographically.
pub fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            first: true,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        let i = (0..k).rev().find(|&i| self.idx[i] < self.n - k + i)?;
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(self.idx.clone())
    }
}

fn check_atom_count(atoms: usize) -> Result<()> {
    if atoms > MAX_EXACT_ATOMS {
        return Err(Error::ResourceCap {
            what: "atoms in exact decision",
            requested: atoms as u128,
            cap: MAX_EXACT_ATOMS as u128,
        });
    }
    Ok(())
}

/// Least position lying in no `E_α` of `atoms`.
pub fn free_position(atoms: &[Branch]) -> u64 {
    (1u64..)
        .find(|&n| atoms.iter().all(|a| !a.contains(n)))
        .expect("finitely many branches never cover every position")
}

/// A point whose support hits exactly the atoms indexed by `hit` and which
/// differs from every point in `avoid`.
pub fn realize(atoms: &[Branch], hit: &[usize], avoid: &[Point], ambient: Ambient) -> Result<Point> {
    let missed: Vec<Branch> = (0..atoms.len())
        .filter(|i| !hit.contains(i))
        .map(|i| atoms[i].clone())
        .collect();
    let mut positions = hit
        .iter()
        .map(|&i| find_separator(&atoms[i], &missed))
        .collect::<Result<Vec<u64>>>()?;
    positions.sort_unstable();
    positions.dedup();
    if positions.is_empty() {
        if !avoid.contains(&Point::infinity()) {
            return Ok(Point::infinity());
        }
        positions.push(free_position(atoms));
    }
    let base = match ambient {
        Ambient::Prototype => *positions.last().expect("nonempty"),
        Ambient::Product => 1,
    };
    (0..=avoid.len() as u64)
        .map(|j| Point::from_sorted(positions.iter().map(|&p| (p, base + j)).collect()))
        .find(|q| !avoid.contains(q))
        .ok_or_else(|| Error::Unknown("no realizing point avoids the singletons".into()))
}

/// Some point of `e`, or `None` when `e` is empty.
pub fn find_point(e: &SetExpr, ambient: Ambient) -> Result<Option<Point>> {
    let atoms = e.atoms();
    check_atom_count(atoms.len())?;
    let singletons: Vec<Point> = e
        .singletons()
        .into_iter()
        .filter(|s| s.is_valid(ambient))
        .collect();
    for hit in subsets_by_size(atoms.len()) {
        let q = realize(&atoms, &hit, &singletons, ambient)?;
        if e.contains(&q) {
            return Ok(Some(q));
        }
    }
    Ok(singletons.into_iter().find(|s| e.contains(s)))
}

pub fn is_empty(e: &SetExpr, ambient: Ambient) -> Result<bool> {
    Ok(find_point(e, ambient)?.is_none())
}

/// `None` when `a ⊆ b`; otherwise a point of `a ∖ b`.
pub fn containment_counterexample(a: &SetExpr, b: &SetExpr, ambient: Ambient) -> Result<Option<Point>> {
    find_point(&a.clone().minus(b.clone()), ambient)
}

pub fn is_contained(a: &SetExpr, b: &SetExpr, ambient: Ambient) -> Result<bool> {
    Ok(containment_counterexample(a, b, ambient)?.is_none())
}

/// `⋂_{β∈u} N_β ⊆ ⋂_{β∈v} N_β`, which holds iff every generator of `v`
/// already occurs in `u`.
pub fn a_form_contained(u: &[Branch], v: &[Branch]) -> bool {
    v.iter().all(|b| u.contains(b))
}
