//! The graphs `G(alpha, t)`: vertices are the `n`-subsets of `[0, alpha)`,
//! and two disjoint subsets are adjacent when they realize `t` in either
//! order.
//!
//! Vertices are numbered by colexicographic rank, so the numbering for
//! `alpha` is a prefix of the numbering for `alpha + 1`.

use thiserror::Error;

use crate::graphcore::Graph;
use crate::typealg::{DisjointType, OrdinalSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpeckerError {
    #[error("rank {rank} out of range (there are {count} subsets)")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("expected a {expected}-element set, got {got} elements")]
    WrongSize { expected: usize, got: usize },
    #[error("element {elem} is outside the universe [0, {alpha})")]
    ElementOutOfUniverse { elem: u64, alpha: u64 },
    #[error("graph would have {vertices} vertices, budget is {budget}")]
    TooLarge { vertices: u64, budget: u64 },
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Colexicographic rank of an `n`-set: `sum_i C(a_i, i + 1)`.
pub fn subset_rank(a: &OrdinalSet, n: usize) -> Result<u64, SpeckerError> {
    if a.len() != n {
        return Err(SpeckerError::WrongSize {
            expected: n,
            got: a.len(),
        });
    }
    Ok(a.iter()
        .enumerate()
        .map(|(i, x)| binomial(x, i as u64 + 1).expect("rank overflow"))
        .sum())
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(mut rank: u64, n: usize) -> OrdinalSet {
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        let k = i as u64 + 1;
        // largest x with C(x, k) <= rank
        let mut x = i as u64;
        while binomial(x + 1, k).is_some_and(|c| c <= rank) {
            x += 1;
        }
        rank -= binomial(x, k).unwrap_or(0);
        out[i] = x;
    }
    OrdinalSet::new(out).expect("unranked elements are increasing")
}

/// Checked unrank against a universe size.
pub fn subset_unrank_in(rank: u64, n: usize, alpha: u64) -> Result<OrdinalSet, SpeckerError> {
    let count = binomial(alpha, n as u64).unwrap_or(u64::MAX);
    if rank >= count {
        return Err(SpeckerError::RankOutOfRange { rank, count });
    }
    Ok(subset_unrank(rank, n))
}

/// Parameters of `G(alpha, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeckerSpec {
    pub alpha: u64,
    pub t: DisjointType,
}

impl SpeckerSpec {
    pub fn new(alpha: u64, t: DisjointType) -> Self {
        SpeckerSpec { alpha, t }
    }

    /// Length of the subsets serving as vertices.
    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn vertex_count(&self) -> Option<u64> {
        binomial(self.alpha, self.n() as u64)
    }

    fn check_vertex(&self, a: &OrdinalSet) -> Result<(), SpeckerError> {
        if a.len() != self.n() {
            return Err(SpeckerError::WrongSize {
                expected: self.n(),
                got: a.len(),
            });
        }
        if let Some(elem) = a.iter().find(|&x| x >= self.alpha) {
            return Err(SpeckerError::ElementOutOfUniverse {
                elem,
                alpha: self.alpha,
            });
        }
        Ok(())
    }

    pub fn adjacent(&self, a: &OrdinalSet, b: &OrdinalSet) -> Result<bool, SpeckerError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(self.adjacent_unchecked(a, b))
    }

    /// Adjacency without the universe check (used for the homomorphism audit,
    /// where the target is the graph on an unbounded universe).
    pub fn adjacent_unchecked(&self, a: &OrdinalSet, b: &OrdinalSet) -> bool {
        if a == b || a.len() != self.n() || b.len() != self.n() {
            return false;
        }
        match DisjointType::of_pair(a, b) {
            Ok(t) => t == self.t || t.complement() == self.t,
            Err(_) => false,
        }
    }

    /// All neighbours of `a`, sorted by rank.
    ///
    /// For each of the two orientations the word fixes how many elements of
    /// the neighbour fall in every gap of `a`; the neighbours are the
    /// increasing fillings of those gaps.
    pub fn neighbors(&self, a: &OrdinalSet) -> Result<Vec<OrdinalSet>, SpeckerError> {
        self.check_vertex(a)?;
        let n = self.n();
        if n == 0 {
            return Ok(Vec::new());
        }
        let elems = a.as_slice();
        let mut out = Vec::new();
        for pattern in [self.t.clone(), self.t.complement()] {
            // a sits on the 0s of `pattern`
            let mut slots = Vec::with_capacity(n);
            let mut gap = 0usize;
            for &bit in pattern.bits() {
                if bit {
                    let lo = if gap == 0 { 0 } else { elems[gap - 1] + 1 };
                    let hi = if gap == n { self.alpha } else { elems[gap] };
                    slots.push((lo, hi));
                } else {
                    gap += 1;
                }
            }
            fill_slots(&slots, &mut Vec::with_capacity(n), &mut out);
        }
        out.sort_by_key(|b| subset_rank(b, n).expect("size checked"));
        out.dedup();
        Ok(out)
    }
}

fn fill_slots(slots: &[(u64, u64)], cur: &mut Vec<u64>, out: &mut Vec<OrdinalSet>) {
    let i = cur.len();
    if i == slots.len() {
        out.push(OrdinalSet::new(cur.clone()).expect("filled increasingly"));
        return;
    }
    let (lo, hi) = slots[i];
    let start = cur.last().map_or(lo, |&p| lo.max(p + 1));
    for x in start..hi {
        cur.push(x);
        fill_slots(slots, cur, out);
        cur.pop();
    }
}

/// Explicit `G(alpha, t)` on `C(alpha, n)` vertices, indexed by rank.
pub fn build_specker(spec: &SpeckerSpec, max_vertices: u64) -> Result<Graph, SpeckerError> {
    let count = spec.vertex_count().ok_or(SpeckerError::TooLarge {
        vertices: u64::MAX,
        budget: max_vertices,
    })?;
    if count > max_vertices {
        return Err(SpeckerError::TooLarge {
            vertices: count,
            budget: max_vertices,
        });
    }
    let n = spec.n();
    let mut g = Graph::new(count as usize);
    for r in 0..count {
        let a = subset_unrank(r, n);
        for b in spec.neighbors(&a)? {
            let s = subset_rank(&b, n)?;
            if s > r {
                g.add_edge(r as usize, s as usize).expect("ranks are in range");
            }
        }
    }
    Ok(g)
}
