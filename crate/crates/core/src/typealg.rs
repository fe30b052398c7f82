//! Disjoint types and finite ordinal sets.
//!
//! Ordinals are stood in for by `u64`. A finite set of ordinals is kept as a
//! strictly increasing vector, so `A(i)` is plain indexing.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type has odd length {0}")]
    OddLength(usize),
    #[error("type is unbalanced: {zeros} zeros and {ones} ones")]
    UnbalancedType { zeros: usize, ones: usize },
    #[error("invalid type symbol {0:?}; expected '0' or '1'")]
    BadSymbol(char),
    #[error("sets are not disjoint (both contain {0})")]
    NotDisjoint(u64),
    #[error("sets have unequal sizes {0} and {1}")]
    UnequalSizes(usize, usize),
    #[error("canonical type needs 1 <= s <= n - 1, got n = {n}, s = {s}")]
    BadParameters { n: usize, s: usize },
    #[error("index {index} out of range for a set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("ordinal set is not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("cannot parse ordinal {0:?}")]
    BadOrdinal(String),
}

/// A finite set of ordinals, stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrdinalSet(Vec<u64>);

impl OrdinalSet {
    pub fn new(elems: Vec<u64>) -> Result<Self, TypeError> {
        if let Some(i) = elems.windows(2).position(|w| w[0] >= w[1]) {
            return Err(TypeError::NotIncreasing(i + 1));
        }
        Ok(OrdinalSet(elems))
    }

    /// Builds a set from arbitrary values, sorting and dropping duplicates.
    pub fn from_unsorted(mut elems: Vec<u64>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        OrdinalSet(elems)
    }

    pub fn empty() -> Self {
        OrdinalSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `A(i)`: the element of order-position `i`.
    pub fn get(&self, i: usize) -> Option<u64> {
        self.0.get(i).copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `A[I]` for a set of positions `I`.
    pub fn select<I>(&self, indices: I) -> Result<OrdinalSet, TypeError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut out = Vec::with_capacity(idx.len());
        for i in idx {
            match self.0.get(i) {
                Some(&x) => out.push(x),
                None => {
                    return Err(TypeError::IndexOutOfRange {
                        index: i,
                        len: self.0.len(),
                    })
                }
            }
        }
        Ok(OrdinalSet(out))
    }

    /// The first `n` elements, `A[n]`.
    pub fn prefix(&self, n: usize) -> Result<OrdinalSet, TypeError> {
        if n > self.0.len() {
            return Err(TypeError::IndexOutOfRange {
                index: n.saturating_sub(1),
                len: self.0.len(),
            });
        }
        Ok(OrdinalSet(self.0[..n].to_vec()))
    }

    /// Strong supremum: least ordinal strictly above every element.
    pub fn ssup(&self) -> u64 {
        self.0.last().map_or(0, |&m| m + 1)
    }

    /// `self ⊑ other`: `other ∩ ssup(self) = self`.
    pub fn end_extended_by(&self, other: &OrdinalSet) -> bool {
        let bound = self.ssup();
        let below = other.0.partition_point(|&x| x < bound);
        other.0[..below] == self.0[..]
    }

    pub fn is_disjoint(&self, other: &OrdinalSet) -> bool {
        first_common(&self.0, &other.0).is_none()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

/// `end_extends(A, B)`: true iff `B` end-extends `A`.
pub fn end_extends(a: &OrdinalSet, b: &OrdinalSet) -> bool {
    a.end_extended_by(b)
}

fn first_common(a: &[u64], b: &[u64]) -> Option<u64> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

impl fmt::Display for OrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for OrdinalSet {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(OrdinalSet::empty());
        }
        let elems = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| TypeError::BadOrdinal(p.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        OrdinalSet::new(elems)
    }
}

/// A balanced 0/1 word of length `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DisjointType {
    bits: Vec<bool>,
}

impl DisjointType {
    pub fn new(bits: Vec<bool>) -> Result<Self, TypeError> {
        if !bits.len().is_multiple_of(2) {
            return Err(TypeError::OddLength(bits.len()));
        }
        let ones = bits.iter().filter(|&&b| b).count();
        let zeros = bits.len() - ones;
        if ones != zeros {
            return Err(TypeError::UnbalancedType { zeros, ones });
        }
        Ok(DisjointType { bits })
    }

    /// The length-0 type.
    pub fn empty() -> Self {
        DisjointType { bits: Vec::new() }
    }

    /// The canonical type `t^n_s`: `s` zeros, `n - s` copies of `01`, `s` ones.
    pub fn canonical(n: usize, s: usize) -> Result<Self, TypeError> {
        if s < 1 || s + 1 > n {
            return Err(TypeError::BadParameters { n, s });
        }
        let bits = (0..2 * n)
            .map(|i| {
                if i < s {
                    false
                } else if i < 2 * n - s {
                    (i - s) % 2 == 1
                } else {
                    true
                }
            })
            .collect();
        Ok(DisjointType { bits })
    }

    /// `tp(a, b)`: bit `i` is 0 iff the `i`-th element of `a ∪ b` is in `a`.
    pub fn of_pair(a: &OrdinalSet, b: &OrdinalSet) -> Result<Self, TypeError> {
        if a.len() != b.len() {
            return Err(TypeError::UnequalSizes(a.len(), b.len()));
        }
        let (a, b) = (a.as_slice(), b.as_slice());
        let mut bits = Vec::with_capacity(2 * a.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                bits.push(false);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                bits.push(true);
                j += 1;
            } else {
                return Err(TypeError::NotDisjoint(a[i]));
            }
        }
        Ok(DisjointType { bits })
    }

    /// Every disjoint type of length `n`, in lexicographic order of the words.
    pub fn all_of_length(n: usize) -> Vec<DisjointType> {
        fn rec(zeros: usize, ones: usize, cur: &mut Vec<bool>, out: &mut Vec<DisjointType>) {
            if zeros == 0 && ones == 0 {
                out.push(DisjointType { bits: cur.clone() });
                return;
            }
            if zeros > 0 {
                cur.push(false);
                rec(zeros - 1, ones, cur, out);
                cur.pop();
            }
            if ones > 0 {
                cur.push(true);
                rec(zeros, ones - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::with_capacity(2 * n), &mut out);
        out
    }

    /// The length `n` (half the word length).
    pub fn len(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn concat(&self, other: &DisjointType) -> DisjointType {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        DisjointType { bits }
    }

    /// Swapping the roles of the two sets: `tp(b, a)` when `self = tp(a, b)`.
    pub fn complement(&self) -> DisjointType {
        DisjointType {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// Entry `i` counts the 1s strictly before the `i`-th 0.
    pub fn ones_before_zeros(&self) -> Vec<usize> {
        let mut ones = 0;
        let mut out = Vec::with_capacity(self.len());
        for &b in &self.bits {
            if b {
                ones += 1;
            } else {
                out.push(ones);
            }
        }
        out
    }

    /// Splits `2n` distinct values according to the word: 0-positions go to
    /// the first set, 1-positions to the second.
    pub fn split(&self, values: &OrdinalSet) -> Option<(OrdinalSet, OrdinalSet)> {
        if values.len() != self.bits.len() {
            return None;
        }
        let mut a = Vec::with_capacity(self.len());
        let mut b = Vec::with_capacity(self.len());
        for (&bit, x) in self.bits.iter().zip(values.iter()) {
            if bit {
                b.push(x);
            } else {
                a.push(x);
            }
        }
        Some((OrdinalSet(a), OrdinalSet(b)))
    }
}

/// `tp(a, b)`.
pub fn tp(a: &OrdinalSet, b: &OrdinalSet) -> Result<DisjointType, TypeError> {
    DisjointType::of_pair(a, b)
}

impl fmt::Display for DisjointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for DisjointType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(TypeError::BadSymbol(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DisjointType::new(bits)
    }
}
