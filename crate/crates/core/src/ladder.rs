//! Seeded ladder systems: each anchor `alpha` gets an increasing sequence of
//! fixed length below it, ending at `alpha - 1`. Also the search for pairs of
//! anchors whose ladder prefixes realize a given disjoint type.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::typealg::{DisjointType, OrdinalSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("no anchors given")]
    EmptyAnchors,
    #[error("anchor {anchor} is too small for ladders of length {length}")]
    AnchorTooSmall { anchor: u64, length: usize },
    #[error("ladder length must be at least 1")]
    ZeroLength,
    #[error("type of length {type_len} exceeds ladder length {length}")]
    TypeTooLong { type_len: usize, length: usize },
    #[error("{0} is not an anchor of the ladder system")]
    UnknownAnchor(u64),
    #[error("anchor {0} has no partition class")]
    Unpartitioned(u64),
    #[error("invalid ladder at anchor {anchor}: {reason}")]
    InvalidLadder { anchor: u64, reason: String },
}

/// Ladders indexed by anchor. `ladders[i]` belongs to the `i`-th anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LadderFile", into = "LadderFile")]
pub struct LadderSystem {
    anchors: OrdinalSet,
    length: usize,
    ladders: Vec<OrdinalSet>,
}

#[derive(Serialize, Deserialize)]
struct LadderFile {
    anchors: Vec<u64>,
    #[serde(rename = "M")]
    m: usize,
    ladders: BTreeMap<u64, Vec<u64>>,
}

impl From<LadderSystem> for LadderFile {
    fn from(l: LadderSystem) -> Self {
        LadderFile {
            anchors: l.anchors.as_slice().to_vec(),
            m: l.length,
            ladders: l
                .anchors
                .iter()
                .zip(l.ladders)
                .map(|(a, c)| (a, c.into_vec()))
                .collect(),
        }
    }
}

impl TryFrom<LadderFile> for LadderSystem {
    type Error = LadderError;

    fn try_from(f: LadderFile) -> Result<Self, Self::Error> {
        let anchors = OrdinalSet::from_unsorted(f.anchors);
        let mut ladders = Vec::with_capacity(anchors.len());
        for a in anchors.iter() {
            let raw = f.ladders.get(&a).ok_or(LadderError::InvalidLadder {
                anchor: a,
                reason: "missing".into(),
            })?;
            let c = OrdinalSet::new(raw.clone()).map_err(|e| LadderError::InvalidLadder {
                anchor: a,
                reason: e.to_string(),
            })?;
            ladders.push(c);
        }
        if let Some(&extra) = f.ladders.keys().find(|k| !anchors.contains(**k)) {
            return Err(LadderError::UnknownAnchor(extra));
        }
        LadderSystem::new(anchors, f.m, ladders)
    }
}

impl LadderSystem {
    pub fn new(anchors: OrdinalSet, length: usize, ladders: Vec<OrdinalSet>) -> Result<Self, LadderError> {
        if anchors.is_empty() {
            return Err(LadderError::EmptyAnchors);
        }
        if length == 0 {
            return Err(LadderError::ZeroLength);
        }
        if ladders.len() != anchors.len() {
            return Err(LadderError::InvalidLadder {
                anchor: anchors.get(ladders.len().min(anchors.len() - 1)).unwrap_or(0),
                reason: format!("{} ladders for {} anchors", ladders.len(), anchors.len()),
            });
        }
        for (a, c) in anchors.iter().zip(&ladders) {
            if c.len() != length {
                return Err(LadderError::InvalidLadder {
                    anchor: a,
                    reason: format!("length {} instead of {length}", c.len()),
                });
            }
            if a == 0 || c.get(length - 1) != Some(a - 1) {
                return Err(LadderError::InvalidLadder {
                    anchor: a,
                    reason: "last element must be anchor - 1".into(),
                });
            }
        }
        Ok(LadderSystem {
            anchors,
            length,
            ladders,
        })
    }

    pub fn anchors(&self) -> &OrdinalSet {
        &self.anchors
    }

    /// Common ladder length `M`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn position(&self, anchor: u64) -> Option<usize> {
        self.anchors.as_slice().binary_search(&anchor).ok()
    }

    pub fn ladder(&self, anchor: u64) -> Option<&OrdinalSet> {
        self.position(anchor).map(|p| &self.ladders[p])
    }

    pub fn ladder_at(&self, position: usize) -> &OrdinalSet {
        &self.ladders[position]
    }

    /// `C_alpha[start..end]` for the anchor at `position`.
    pub fn segment(&self, position: usize, range: std::ops::Range<usize>) -> OrdinalSet {
        OrdinalSet::new(self.ladders[position].as_slice()[range].to_vec()).expect("sub-slice of a ladder")
    }
}

/// Draws, for each anchor in increasing order, a uniform `(M - 1)`-subset of
/// `[0, alpha - 1)` and appends `alpha - 1`.
pub fn generate_ladders(seed: u64, anchors: &OrdinalSet, length: usize) -> Result<LadderSystem, LadderError> {
    if anchors.is_empty() {
        return Err(LadderError::EmptyAnchors);
    }
    if length == 0 {
        return Err(LadderError::ZeroLength);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ladders = Vec::with_capacity(anchors.len());
    for a in anchors.iter() {
        if a < length as u64 {
            return Err(LadderError::AnchorTooSmall { anchor: a, length });
        }
        let mut elems: Vec<u64> = index::sample(&mut rng, (a - 1) as usize, length - 1)
            .into_iter()
            .map(|x| x as u64)
            .collect();
        elems.sort_unstable();
        elems.push(a - 1);
        ladders.push(OrdinalSet::new(elems).expect("sampled without replacement"));
    }
    LadderSystem::new(anchors.clone(), length, ladders)
}

fn check_filter(l: &LadderSystem, filter: &OrdinalSet) -> Result<Vec<usize>, LadderError> {
    filter
        .iter()
        .map(|a| l.position(a).ok_or(LadderError::UnknownAnchor(a)))
        .collect()
}

fn realizes(l: &LadderSystem, t: &DisjointType, gamma: usize, delta: usize) -> bool {
    let n = t.len();
    let cg = l.segment(gamma, 0..n);
    let cd = l.segment(delta, 0..n);
    DisjointType::of_pair(&cg, &cd).is_ok_and(|found| &found == t)
}

/// The least pair `(gamma, delta)` of anchors in `filter`, ordered by `delta`
/// and then `gamma`, with `gamma < delta` and `tp(C_gamma[n], C_delta[n]) = t`.
pub fn realize_type(
    l: &LadderSystem,
    t: &DisjointType,
    filter: &OrdinalSet,
) -> Result<Option<(u64, u64)>, LadderError> {
    if t.len() > l.length() {
        return Err(LadderError::TypeTooLong {
            type_len: t.len(),
            length: l.length(),
        });
    }
    let positions = check_filter(l, filter)?;
    for (di, &d) in positions.iter().enumerate() {
        for &g in &positions[..di] {
            if realizes(l, t, g, d) {
                return Ok(Some((l.anchors.get(g).unwrap(), l.anchors.get(d).unwrap())));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    #[serde(rename = "type")]
    pub ty: String,
    pub class: usize,
    pub realized: bool,
    pub gamma: Option<u64>,
    pub delta: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    /// Classes in which every type of length `n` is realized.
    pub complete_classes: Vec<usize>,
}

impl Census {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv")
    }
}

/// For each class of `partition` and each type of length `n`: the least
/// realizing pair inside that class, if any.
pub fn realization_census(l: &LadderSystem, n: usize, partition: &BTreeMap<u64, usize>) -> Result<Census, LadderError> {
    if n > l.length() {
        return Err(LadderError::TypeTooLong {
            type_len: n,
            length: l.length(),
        });
    }
    if let Some(&a) = partition.keys().find(|&&a| l.position(a).is_none()) {
        return Err(LadderError::UnknownAnchor(a));
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, a) in l.anchors.iter().enumerate() {
        let class = *partition.get(&a).ok_or(LadderError::Unpartitioned(a))?;
        classes.entry(class).or_default().push(p);
    }
    let types = DisjointType::all_of_length(n);
    let mut rows = Vec::new();
    let mut complete_classes = Vec::new();
    for (&class, members) in &classes {
        // first pair (in (delta, gamma) order) for each realized type
        let mut first: BTreeMap<DisjointType, (usize, usize)> = BTreeMap::new();
        for (di, &d) in members.iter().enumerate() {
            for &g in &members[..di] {
                if first.len() == types.len() {
                    break;
                }
                if let Ok(t) = DisjointType::of_pair(&l.segment(g, 0..n), &l.segment(d, 0..n)) {
                    first.entry(t).or_insert((g, d));
                }
            }
        }
        let mut all = true;
        for t in &types {
            let hit = first
                .get(t)
                .map(|&(g, d)| (l.anchors.get(g).unwrap(), l.anchors.get(d).unwrap()));
            all &= hit.is_some();
            rows.push(CensusRow {
                ty: t.to_string(),
                class,
                realized: hit.is_some(),
                gamma: hit.map(|h| h.0),
                delta: hit.map(|h| h.1),
            });
        }
        if all {
            complete_classes.push(class);
        }
    }
    Ok(Census {
        n,
        rows,
        complete_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> OrdinalSet {
        OrdinalSet::new(xs.to_vec()).unwrap()
    }

    fn two_ladders() -> LadderSystem {
        LadderSystem::new(set(&[10, 20]), 2, vec![set(&[0, 9]), set(&[5, 19])]).unwrap()
    }

    #[test]
    fn generation_examples() {
        let anchors = set(&[10, 20, 30]);
        let l = generate_ladders(1, &anchors, 1).unwrap();
        for a in anchors.iter() {
            assert_eq!(l.ladder(a).unwrap(), &set(&[a - 1]));
        }
        let l3 = generate_ladders(1, &anchors, 3).unwrap();
        assert_eq!(l3, generate_ladders(1, &anchors, 3).unwrap());
        for a in anchors.iter() {
            let c = l3.ladder(a).unwrap();
            assert_eq!(c.len(), 3);
            assert_eq!(c.get(2), Some(a - 1));
        }
        assert_eq!(
            generate_ladders(1, &set(&[2, 10]), 3),
            Err(LadderError::AnchorTooSmall { anchor: 2, length: 3 })
        );
        assert_eq!(
            generate_ladders(1, &OrdinalSet::empty(), 3),
            Err(LadderError::EmptyAnchors)
        );
    }

    #[test]
    fn realize_examples() {
        let l = two_ladders();
        let all = l.anchors().clone();
        assert_eq!(realize_type(&l, &DisjointType::empty(), &all).unwrap(), Some((10, 20)));
        assert_eq!(
            realize_type(&l, &"0101".parse().unwrap(), &all).unwrap(),
            Some((10, 20))
        );
        assert_eq!(realize_type(&l, &"0011".parse().unwrap(), &all).unwrap(), None);
        assert!(matches!(
            realize_type(&l, &"000111".parse().unwrap(), &all),
            Err(LadderError::TypeTooLong { .. })
        ));
        assert_eq!(
            realize_type(&l, &"01".parse().unwrap(), &set(&[10, 11])),
            Err(LadderError::UnknownAnchor(11))
        );
    }

    #[test]
    fn census_single_class_n0() {
        let l = two_ladders();
        let part: BTreeMap<u64, usize> = l.anchors().iter().map(|a| (a, 0)).collect();
        let c = realization_census(&l, 0, &part).unwrap();
        assert_eq!(c.rows.len(), 1);
        assert!(c.rows[0].realized);
        assert_eq!(c.complete_classes, vec![0]);
    }

    #[test]
    fn census_n1_matches_brute_force() {
        let anchors: Vec<u64> = (0..30).map(|i| 20 + 7 * i).collect();
        let l = generate_ladders(9, &set(&anchors), 4).unwrap();
        let part: BTreeMap<u64, usize> = anchors.iter().map(|&a| (a, 0)).collect();
        let c = realization_census(&l, 1, &part).unwrap();
        for row in &c.rows {
            // 01: some earlier anchor has a smaller minimum; 10: a larger one
            let want_less = row.ty == "01";
            let brute = anchors.iter().enumerate().any(|(di, &d)| {
                anchors[..di].iter().any(|&g| {
                    let (mg, md) = (
                        l.ladder(g).unwrap().get(0).unwrap(),
                        l.ladder(d).unwrap().get(0).unwrap(),
                    );
                    if want_less {
                        mg < md
                    } else {
                        mg > md
                    }
                })
            });
            assert_eq!(row.realized, brute);
        }
    }

    #[test]
    fn census_agrees_with_realize_and_refines() {
        let anchors: Vec<u64> = (0..40).map(|i| 50 + 13 * i).collect();
        let l = generate_ladders(4, &set(&anchors), 5).unwrap();
        let one: BTreeMap<u64, usize> = anchors.iter().map(|&a| (a, 0)).collect();
        let two: BTreeMap<u64, usize> = anchors.iter().enumerate().map(|(i, &a)| (a, i % 2)).collect();
        for n in 0..=3 {
            let c1 = realization_census(&l, n, &one).unwrap();
            let c2 = realization_census(&l, n, &two).unwrap();
            for row in &c2.rows {
                let filter =
                    OrdinalSet::from_unsorted(anchors.iter().copied().filter(|a| two[a] == row.class).collect());
                let direct = realize_type(&l, &row.ty.parse().unwrap(), &filter).unwrap();
                assert_eq!(direct, row.gamma.zip(row.delta));
                // shrinking the filter never adds realizations
                let whole = c1.rows.iter().find(|r| r.ty == row.ty).unwrap();
                assert!(!row.realized || whole.realized);
            }
        }
    }

    #[test]
    fn csv_and_json_shapes() {
        let l = two_ladders();
        let part: BTreeMap<u64, usize> = l.anchors().iter().map(|a| (a, 0)).collect();
        let c = realization_census(&l, 1, &part).unwrap();
        assert_eq!(
            c.to_csv(),
            "type,class,realized,gamma,delta\n01,0,true,10,20\n10,0,false,,\n"
        );
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"anchors":[10,20],"M":2,"ladders":{"10":[0,9],"20":[5,19]}}"#);
        let back: LadderSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        let bad = r#"{"anchors":[10],"M":2,"ladders":{"10":[0,8]}}"#;
        assert!(serde_json::from_str::<LadderSystem>(bad).is_err());
    }
}
