//! Desk-scale simulation of the two edge constructions driven by a ladder
//! system, together with audits of every property that can be checked on a
//! finite instance.
//!
//! Mode A: vertices are restrictions `g ↾ (S ∩ alpha)` of seeded generator
//! functions `g: S -> colors`, tagged with `alpha`. Mode B: vertices are the
//! anchors themselves, each carrying a guess table `f_beta: S ∩ beta -> colors`.
//! In both modes every vertex asks, for each label `k <= k_max`, whether some
//! lower anchor carries value `k` in its table and has ladder blocks
//! `I_0, ..., I_k` realizing the canonical types against its own ladder; the
//! least such anchor receives a back-edge labelled `k`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{ControlFlow, Range};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chroma::{chromatic_number, product_coloring, two_coloring, verify_coloring, Budget, Coloring};
use crate::graphcore::{
    check_homomorphism_with, find_cycle, for_each_connected_subset, induced_subgraph, shortest_odd_cycle_within, Graph,
    HomomorphismCheck,
};
use crate::ladder::{realize_type, LadderError, LadderSystem};
use crate::specker::SpeckerSpec;
use crate::typealg::{end_extends, DisjointType, OrdinalSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("the target function needs at least one value")]
    EmptyPlan,
    #[error("ladders have length {have}, the plan needs {need}")]
    LadderTooShort { have: usize, need: usize },
    #[error("no anchors")]
    EmptyAnchors,
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("audit only applies to mode {0:?}")]
    ModeMismatch(Mode),
    #[error("label {k} exceeds k_max = {k_max}")]
    LabelOutOfRange { k: usize, k_max: usize },
    #[error(transparent)]
    Ladder(#[from] LadderError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Mode::A),
            "B" | "b" => Ok(Mode::B),
            other => Err(format!("unknown mode {other:?}; expected A or B")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
}

impl Interval {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    pub fn max(&self) -> usize {
        self.start + self.len - 1
    }
}

/// `s_k`, `n_k` and the adjacent intervals `I_k` derived from the target
/// function `f` on `0..=k_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPlan {
    pub f: Vec<u64>,
    pub s: Vec<usize>,
    pub n: Vec<usize>,
    pub intervals: Vec<Interval>,
}

impl IntervalPlan {
    pub fn k_max(&self) -> usize {
        self.f.len() - 1
    }

    /// `ssup(I_{k_max})`: the ladder length the plan needs.
    pub fn ladder_length(&self) -> usize {
        self.intervals.last().map_or(0, |i| i.start + i.len)
    }

    /// `t^{n_k}_{s_k}`.
    pub fn block_type(&self, k: usize) -> DisjointType {
        DisjointType::canonical(self.n[k], self.s[k]).expect("n_k = 2 s_k^2 + 1 > s_k")
    }

    /// `t^{n_0}_{s_0} ⌢ ... ⌢ t^{n_k}_{s_k}`.
    pub fn concatenated_type(&self, k: usize) -> DisjointType {
        (0..=k).fold(DisjointType::empty(), |acc, j| acc.concat(&self.block_type(j)))
    }
}

/// Least `s >= 1` with `2s + 1 >= f(k)`, `n_k = 2 s_k^2 + 1`, and intervals
/// `I_0 = [0, n_0)`, `I_{k+1}` starting right after `I_k`.
pub fn make_plan(f: &[u64]) -> Result<IntervalPlan, SimError> {
    if f.is_empty() {
        return Err(SimError::EmptyPlan);
    }
    let s: Vec<usize> = f
        .iter()
        .map(|&v| v.saturating_sub(1).div_ceil(2).max(1) as usize)
        .collect();
    let n: Vec<usize> = s.iter().map(|&s| 2 * s * s + 1).collect();
    let mut intervals = Vec::with_capacity(n.len());
    let mut start = 0;
    for &len in &n {
        intervals.push(Interval { start, len });
        start += len;
    }
    Ok(IntervalPlan {
        f: f.to_vec(),
        s,
        n,
        intervals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub mode: Mode,
    pub seed: u64,
    pub f: Vec<u64>,
    pub color_count: u32,
    /// Number of seeded generator functions (mode A).
    pub generator_count: usize,
    /// Probability that a guess table is overwritten by the planted coloring
    /// (mode B).
    pub planted_p: f64,
}

impl SimConfig {
    pub fn new(mode: Mode, seed: u64, f: Vec<u64>) -> Self {
        SimConfig {
            mode,
            seed,
            f,
            color_count: 4,
            generator_count: 8,
            planted_p: 0.25,
        }
    }
}

/// A vertex: its anchor tag and its table over the anchors below the tag
/// (the restriction `sigma` in mode A, the guess `f_beta` in mode B).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimVertex {
    pub id: usize,
    pub anchor: u64,
    pub table: Vec<u32>,
}

/// An edge from the lower vertex `u` to the upper vertex `v`, labelled `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimEdge {
    pub u: usize,
    pub v: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimGraph {
    pub mode: Mode,
    pub seed: u64,
    pub config: SimConfig,
    pub plan: IntervalPlan,
    pub anchors: Vec<u64>,
    pub ladders: LadderSystem,
    pub vertices: Vec<SimVertex>,
    pub edges: Vec<SimEdge>,
}

impl SimGraph {
    pub fn k_max(&self) -> usize {
        self.plan.k_max()
    }

    /// Position of a vertex's anchor among all anchors.
    pub fn anchor_position(&self, vertex: usize) -> usize {
        self.ladders
            .position(self.vertices[vertex].anchor)
            .expect("vertex anchors are anchors")
    }

    /// The underlying graph with the edges whose label passes `keep`.
    pub fn graph_with<F: Fn(usize) -> bool>(&self, keep: F) -> Graph {
        let mut g = Graph::new(self.vertices.len());
        for e in &self.edges {
            if keep(e.h) {
                let _ = g.add_edge(e.u, e.v);
            }
        }
        g
    }

    pub fn graph(&self) -> Graph {
        self.graph_with(|_| true)
    }

    pub fn labels(&self) -> HashMap<(usize, usize), usize> {
        self.edges.iter().map(|e| ((e.u.min(e.v), e.u.max(e.v)), e.h)).collect()
    }

    pub fn edges_per_label(&self) -> Vec<usize> {
        let mut out = vec![0; self.k_max() + 1];
        for e in &self.edges {
            if e.h < out.len() {
                out[e.h] += 1;
            }
        }
        out
    }
}

/// Ladder blocks `C[I_j]` per anchor, and for each ordered pair of anchor
/// positions the number of leading blocks that realize the canonical types.
struct BlockTable {
    depth: Vec<Vec<u8>>,
}

impl BlockTable {
    fn new(plan: &IntervalPlan, ladders: &LadderSystem) -> Self {
        let count = ladders.anchors().len();
        let types: Vec<DisjointType> = (0..=plan.k_max()).map(|k| plan.block_type(k)).collect();
        let blocks: Vec<Vec<OrdinalSet>> = (0..count)
            .map(|p| plan.intervals.iter().map(|i| ladders.segment(p, i.range())).collect())
            .collect();
        let mut depth = vec![vec![0u8; count]; count];
        for hi in 0..count {
            for lo in 0..hi {
                let d = (0..types.len())
                    .take_while(|&j| block_realizes(&blocks[lo][j], &blocks[hi][j], &types[j]))
                    .count();
                depth[hi][lo] = d as u8;
            }
        }
        BlockTable { depth }
    }

    /// Blocks `0..=k` of the lower anchor realize the types against the upper one.
    fn qualifies(&self, lower: usize, upper: usize, k: usize) -> bool {
        usize::from(self.depth[upper][lower]) > k
    }
}

fn block_realizes(lower: &OrdinalSet, upper: &OrdinalSet, t: &DisjointType) -> bool {
    DisjointType::of_pair(lower, upper).is_ok_and(|found| &found == t)
}

/// Runs the construction. `planted` is a coloring of all anchors (indexed by
/// position): in mode A it becomes an extra generator, in mode B it overwrites
/// each guess table with probability `planted_p`.
pub fn build_sim(config: &SimConfig, ladders: &LadderSystem, planted: Option<&[u32]>) -> Result<SimGraph, SimError> {
    let plan = make_plan(&config.f)?;
    let anchors = ladders.anchors().as_slice().to_vec();
    if anchors.is_empty() {
        return Err(SimError::EmptyAnchors);
    }
    if ladders.length() < plan.ladder_length() {
        return Err(SimError::LadderTooShort {
            have: ladders.length(),
            need: plan.ladder_length(),
        });
    }
    if config.color_count == 0 {
        return Err(SimError::BadConfig("color_count must be at least 1".into()));
    }
    if config.mode == Mode::A && config.generator_count == 0 {
        return Err(SimError::BadConfig("mode A needs at least one generator".into()));
    }
    if !(0.0..=1.0).contains(&config.planted_p) {
        return Err(SimError::BadConfig("planted_p must lie in [0, 1]".into()));
    }
    if let Some(p) = planted {
        if p.len() != anchors.len() {
            return Err(SimError::BadConfig(format!(
                "planted coloring has {} values for {} anchors",
                p.len(),
                anchors.len()
            )));
        }
        if p.iter().any(|&c| c >= config.color_count) {
            return Err(SimError::BadConfig("planted colors must be below color_count".into()));
        }
    }
    let blocks = BlockTable::new(&plan, ladders);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(1);
    let k_max = plan.k_max();
    let count = anchors.len();

    let (vertices, edges) = match config.mode {
        Mode::A => {
            let mut generators: Vec<Vec<u32>> = (0..config.generator_count)
                .map(|_| (0..count).map(|_| rng.gen_range(0..config.color_count)).collect())
                .collect();
            if let Some(p) = planted {
                generators.push(p.to_vec());
            }
            let mut vertices = Vec::new();
            let mut lookup: HashMap<(usize, &[u32]), usize> = HashMap::new();
            for (pos, &anchor) in anchors.iter().enumerate() {
                for g in &generators {
                    let table = &g[..pos];
                    if let std::collections::hash_map::Entry::Vacant(slot) = lookup.entry((pos, table)) {
                        slot.insert(vertices.len());
                        vertices.push(SimVertex {
                            id: vertices.len(),
                            anchor,
                            table: table.to_vec(),
                        });
                    }
                }
            }
            let mut edges = Vec::new();
            for tau in &vertices {
                let upper = tau.table.len();
                for k in 0..=k_max {
                    let hit =
                        (0..upper).find(|&lower| tau.table[lower] as usize == k && blocks.qualifies(lower, upper, k));
                    if let Some(lower) = hit {
                        let sigma = lookup[&(lower, &tau.table[..lower])];
                        edges.push(SimEdge {
                            u: sigma,
                            v: tau.id,
                            h: k,
                        });
                    }
                }
            }
            (vertices, edges)
        }
        Mode::B => {
            let mut vertices = Vec::with_capacity(count);
            for (pos, &anchor) in anchors.iter().enumerate() {
                let use_planted = planted.is_some() && rng.gen_bool(config.planted_p);
                let table = match planted {
                    Some(p) if use_planted => p[..pos].to_vec(),
                    _ => (0..pos).map(|_| rng.gen_range(0..config.color_count)).collect(),
                };
                vertices.push(SimVertex { id: pos, anchor, table });
            }
            let mut edges = Vec::new();
            for beta in &vertices {
                let upper = beta.id;
                for k in 0..=k_max {
                    let hit =
                        (0..upper).find(|&lower| beta.table[lower] as usize == k && blocks.qualifies(lower, upper, k));
                    if let Some(lower) = hit {
                        edges.push(SimEdge {
                            u: lower,
                            v: upper,
                            h: k,
                        });
                    }
                }
            }
            (vertices, edges)
        }
    };

    Ok(SimGraph {
        mode: config.mode,
        seed: config.seed,
        config: config.clone(),
        plan,
        anchors,
        ladders: ladders.clone(),
        vertices,
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RequirementViolation {
    /// The lower endpoint's anchor is not below the upper endpoint's.
    AnchorOrder {
        edge: usize,
    },
    /// Mode A: the lower table is not end-extended by the upper one.
    EndExtension {
        edge: usize,
    },
    /// The label differs from the upper table's value at the lower anchor.
    Label {
        edge: usize,
        expected: Option<u32>,
        found: usize,
    },
    LabelOutOfRange {
        edge: usize,
        found: usize,
    },
    /// Block `block` of the two ladders does not realize `t^{n_j}_{s_j}`.
    TypeCondition {
        edge: usize,
        block: usize,
    },
    /// More than one back-edge with the same label at one vertex.
    Uniqueness {
        vertex: usize,
        k: usize,
        edges: Vec<usize>,
    },
    /// A vertex table whose length does not match its anchor.
    VertexTable {
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequirementsReport {
    pub pass: bool,
    pub edges_checked: usize,
    pub violations: Vec<RequirementViolation>,
}

/// Checks each edge: anchor order, end-extension (mode A), label equals the
/// upper table's value, the block types for every `j <= h`, and at most one
/// back-edge per `(vertex, label)`.
pub fn audit_requirements(sim: &SimGraph) -> RequirementsReport {
    let mut violations = Vec::new();
    let k_max = sim.k_max();
    for v in &sim.vertices {
        if sim.ladders.position(v.anchor) != Some(v.table.len()) {
            violations.push(RequirementViolation::VertexTable { vertex: v.id });
        }
    }
    let domain = |v: &SimVertex| {
        OrdinalSet::new(sim.anchors[..v.table.len().min(sim.anchors.len())].to_vec()).expect("anchor prefix")
    };
    let mut per_label: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in sim.edges.iter().enumerate() {
        let (lo, hi) = (&sim.vertices[e.u], &sim.vertices[e.v]);
        if lo.anchor >= hi.anchor {
            violations.push(RequirementViolation::AnchorOrder { edge: i });
            continue;
        }
        let lower_pos = sim.anchor_position(e.u);
        let upper_pos = sim.anchor_position(e.v);
        if sim.mode == Mode::A {
            let extends =
                end_extends(&domain(lo), &domain(hi)) && hi.table.get(..lo.table.len()) == Some(&lo.table[..]);
            if !extends {
                violations.push(RequirementViolation::EndExtension { edge: i });
            }
        }
        let expected = hi.table.get(lower_pos).copied();
        if expected != Some(e.h as u32) {
            violations.push(RequirementViolation::Label {
                edge: i,
                expected,
                found: e.h,
            });
        }
        if e.h > k_max {
            violations.push(RequirementViolation::LabelOutOfRange { edge: i, found: e.h });
        }
        for j in 0..=e.h.min(k_max + 1) {
            let ok = j <= k_max && {
                let r = sim.plan.intervals[j].range();
                block_realizes(
                    &sim.ladders.segment(lower_pos, r.clone()),
                    &sim.ladders.segment(upper_pos, r),
                    &sim.plan.block_type(j),
                )
            };
            if !ok {
                violations.push(RequirementViolation::TypeCondition { edge: i, block: j });
                break;
            }
        }
        per_label.entry((e.v, e.h)).or_default().push(i);
    }
    for ((vertex, k), edges) in per_label {
        if edges.len() > 1 {
            violations.push(RequirementViolation::Uniqueness { vertex, k, edges });
        }
    }
    RequirementsReport {
        pass: violations.is_empty(),
        edges_checked: sim.edges.len(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestAudit {
    pub pass: bool,
    pub cycle: Option<Vec<usize>>,
    /// The cycle vertex with the highest anchor and its two lower cycle
    /// neighbours: two back-edges with the same label at one vertex.
    pub top_vertex: Option<usize>,
    pub back_neighbors: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismAudit {
    pub pass: bool,
    pub target_type: String,
    pub violation: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleAudit {
    pub pass: bool,
    pub bound: u64,
    pub cycle: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub k: usize,
    pub pass: bool,
    pub edges_k: usize,
    pub edges_at_least_k: usize,
    pub forest: ForestAudit,
    pub homomorphism: HomomorphismAudit,
    pub odd_cycle: OddCycleAudit,
}

/// `(V, E_k)` is a forest; `v -> C_{anchor(v)}[I_k]` maps `(V, E_{>=k})`
/// homomorphically into `G(universe, t^{n_k}_{s_k})`; `(V, E_{>=k})` has no
/// odd cycle of length at most `f(k)`.
pub fn audit_decomposition(sim: &SimGraph, k: usize) -> Result<DecompositionReport, SimError> {
    let k_max = sim.k_max();
    if k > k_max {
        return Err(SimError::LabelOutOfRange { k, k_max });
    }
    let exact = sim.graph_with(|h| h == k);
    let upper = sim.graph_with(|h| h >= k);

    let forest = match find_cycle(&exact) {
        None => ForestAudit {
            pass: true,
            cycle: None,
            top_vertex: None,
            back_neighbors: None,
        },
        Some(walk) => {
            let body = &walk.vertices()[..walk.len()];
            let (i, &top) = body
                .iter()
                .enumerate()
                .max_by_key(|(_, &v)| sim.vertices[v].anchor)
                .expect("cycles are non-empty");
            let before = body[(i + body.len() - 1) % body.len()];
            let after = body[(i + 1) % body.len()];
            ForestAudit {
                pass: false,
                cycle: Some(walk.vertices().to_vec()),
                top_vertex: Some(top),
                back_neighbors: Some((before, after)),
            }
        }
    };

    let t = sim.plan.block_type(k);
    let range = sim.plan.intervals[k].range();
    let universe = sim.anchors.last().copied().unwrap_or(0) + 1;
    let target = SpeckerSpec::new(universe, t.clone());
    let hom = check_homomorphism_with(
        &upper,
        |v| sim.ladders.segment(sim.anchor_position(v), range.clone()),
        |a, b| target.adjacent_unchecked(a, b),
    );
    let homomorphism = HomomorphismAudit {
        pass: hom.holds(),
        target_type: t.to_string(),
        violation: match hom {
            HomomorphismCheck::Holds => None,
            HomomorphismCheck::Violated { edge } => Some(edge),
        },
    };

    let bound = sim.plan.f[k];
    let cycle = shortest_odd_cycle_within(&upper, bound.min(usize::MAX as u64) as usize);
    let odd_cycle = OddCycleAudit {
        pass: cycle.is_none(),
        bound,
        cycle: cycle.map(|w| w.vertices().to_vec()),
    };

    Ok(DecompositionReport {
        k,
        pass: forest.pass && homomorphism.pass && odd_cycle.pass,
        edges_k: exact.edge_count(),
        edges_at_least_k: upper.edge_count(),
        forest,
        homomorphism,
        odd_cycle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphBudget {
    /// Most subgraphs to check; above this a seeded sample is checked.
    pub max_subgraphs: usize,
    /// Budget for each exact chromatic-number computation.
    pub solver: Budget,
}

impl Default for SubgraphBudget {
    fn default() -> Self {
        SubgraphBudget {
            max_subgraphs: 2_000_000,
            solver: Budget::nodes(1_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphViolation {
    pub vertices: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticAuditReport {
    pub k: usize,
    pub max_vertices: u64,
    pub palette_bound: u64,
    pub subgraphs_total: usize,
    pub subgraphs_checked: usize,
    pub largest_palette: usize,
    pub largest_chi: usize,
    pub sampled: bool,
    pub exact: bool,
    pub pass: bool,
    pub violations: Vec<SubgraphViolation>,
}

/// For connected induced subgraphs `H` with at most `f(k)` vertices: 2-color
/// `H ∩ E_j` for each `j < k` and `H ∩ E_{>=k}`, multiply the colorings, and
/// check the product is proper with at most `2^{k+1}` colors. The exact
/// chromatic number of `H` is checked against the same bound.
pub fn audit_subgraph_chromatic(
    sim: &SimGraph,
    k: usize,
    budget: SubgraphBudget,
) -> Result<ChromaticAuditReport, SimError> {
    let k_max = sim.k_max();
    if k > k_max {
        return Err(SimError::LabelOutOfRange { k, k_max });
    }
    let g = sim.graph();
    let labels = sim.labels();
    let max_vertices = sim.plan.f[k];
    let size = max_vertices.min(g.vertex_count() as u64) as usize;
    let palette_bound = 1u64 << (k + 1).min(63);

    let mut total = 0usize;
    let _ = for_each_connected_subset(&g, size, |_| {
        total += 1;
        ControlFlow::Continue(())
    });
    let sampled = total > budget.max_subgraphs;
    let chosen: Option<Vec<usize>> = sampled.then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(sim.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut pick = index::sample(&mut rng, total, budget.max_subgraphs).into_vec();
        pick.sort_unstable();
        pick
    });

    let mut report = ChromaticAuditReport {
        k,
        max_vertices,
        palette_bound,
        subgraphs_total: total,
        subgraphs_checked: 0,
        largest_palette: 0,
        largest_chi: 0,
        sampled,
        exact: !sampled,
        pass: true,
        violations: Vec::new(),
    };
    let mut ordinal = 0usize;
    let mut next_pick = 0usize;
    let _ = for_each_connected_subset(&g, size, |sub| {
        let this = ordinal;
        ordinal += 1;
        if let Some(pick) = &chosen {
            if next_pick >= pick.len() || pick[next_pick] != this {
                return ControlFlow::Continue(());
            }
            next_pick += 1;
        }
        report.subgraphs_checked += 1;
        let h = induced_subgraph(&g, sub).expect("subset of the graph");
        let label_of = |u: usize, v: usize| {
            let (a, b) = (h.original[u], h.original[v]);
            labels[&(a.min(b), a.max(b))]
        };
        let mut parts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k + 1];
        for (u, v) in h.graph.edges() {
            parts[label_of(u, v).min(k)].push((u, v));
        }
        let mut colorings: Vec<Coloring> = Vec::with_capacity(k + 1);
        for (j, part) in parts.iter().enumerate() {
            let piece = Graph::from_edges(h.graph.vertex_count(), part.iter().copied()).expect("edges of H");
            match two_coloring(&piece) {
                Ok(c) => colorings.push(c),
                Err(cycle) => {
                    report.violations.push(SubgraphViolation {
                        vertices: h.original.clone(),
                        reason: format!(
                            "part {j} has an odd cycle through {:?}",
                            cycle.vertices().iter().map(|&v| h.original[v]).collect::<Vec<_>>()
                        ),
                    });
                    return ControlFlow::Continue(());
                }
            }
        }
        let product = match product_coloring(&h.graph, &parts, &colorings) {
            Ok(c) => c,
            Err(e) => {
                report.violations.push(SubgraphViolation {
                    vertices: h.original.clone(),
                    reason: e.to_string(),
                });
                return ControlFlow::Continue(());
            }
        };
        let proper = verify_coloring(&h.graph, &product).is_ok_and(|c| c.is_proper());
        if !proper || product.palette_size as u64 > palette_bound {
            report.violations.push(SubgraphViolation {
                vertices: h.original.clone(),
                reason: format!("product coloring proper={proper} palette={}", product.palette_size),
            });
        }
        report.largest_palette = report.largest_palette.max(product.palette_size);
        let chi = chromatic_number(&h.graph, budget.solver);
        if !chi.exact {
            report.exact = false;
        }
        if chi.lower as u64 > palette_bound {
            report.violations.push(SubgraphViolation {
                vertices: h.original.clone(),
                reason: format!("chromatic number {} exceeds {palette_bound}", chi.lower),
            });
        }
        report.largest_chi = report.largest_chi.max(chi.chi);
        ControlFlow::Continue(())
    });
    report.pass = report.violations.is_empty();
    Ok(report)
}

/// A coloring of vertex descriptions: an anchor plus its table (the table is
/// empty for the bare anchors of mode B).
pub trait Adversary {
    fn color(&self, anchor: u64, table: &[u32]) -> u32;
}

impl<F: Fn(u64, &[u32]) -> u32> Adversary for F {
    fn color(&self, anchor: u64, table: &[u32]) -> u32 {
        self(anchor, table)
    }
}

/// Deterministic pseudo-random coloring keyed by a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HashAdversary {
    pub seed: u64,
    pub colors: u32,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Adversary for HashAdversary {
    fn color(&self, anchor: u64, table: &[u32]) -> u32 {
        let mut h = mix(self.seed ^ mix(anchor));
        for &x in table {
            h = mix(h ^ u64::from(x));
        }
        (h % u64::from(self.colors.max(1))) as u32
    }
}

/// The adversary's colors of the bare anchors, by position.
pub fn anchor_coloring(adversary: &dyn Adversary, anchors: &[u64]) -> Vec<u32> {
    anchors.iter().map(|&a| adversary.color(a, &[])).collect()
}

/// `rho(alpha) = c(rho ↾ (S ∩ alpha))`, by position.
pub fn diagonal_function(adversary: &dyn Adversary, anchors: &[u64]) -> Vec<u32> {
    let mut rho = Vec::with_capacity(anchors.len());
    for &a in anchors {
        let c = adversary.color(a, &rho);
        rho.push(c);
    }
    rho
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// Derived from a realizing pair inside one color class.
    Realization,
    /// Mode A only: found by scanning the edges between restrictions of the
    /// diagonal function when no color class realized the concatenated type.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DiagonalOutcome {
    Witness {
        u: usize,
        v: usize,
        h: usize,
        anchors: (u64, u64),
        color: u32,
        source: WitnessSource,
    },
    GuessFailed,
    /// The hypothesis held but no monochromatic edge was found; never
    /// expected, reported rather than hidden.
    Contradiction {
        k: usize,
        pair: (u64, u64),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub mode: Mode,
    /// Mode A: the diagonal function; mode B: the adversary's anchor colors.
    pub anchor_colors: Vec<u32>,
    /// Mode B: anchors whose guess table equals the adversary below them.
    pub guessed: Option<Vec<u64>>,
    pub hypothesis_met: bool,
    /// First color class `k` (with its pair) realizing the concatenated type.
    pub realizing: Option<(usize, u64, u64)>,
    pub outcome: DiagonalOutcome,
    /// Mode A: number of edges in the rebuilt simulation.
    pub rebuilt_edges: Option<usize>,
}

fn class_realization(
    ladders: &LadderSystem,
    plan: &IntervalPlan,
    anchors: &[u64],
    members: &[usize],
    colors: &[u32],
    color_count: u32,
) -> Result<Option<(usize, u64, u64)>, SimError> {
    for k in 0..=plan.k_max().min(color_count as usize - 1) {
        let class = OrdinalSet::new(
            members
                .iter()
                .filter(|&&p| colors[p] as usize == k)
                .map(|&p| anchors[p])
                .collect(),
        )
        .expect("positions are increasing");
        if let Some((a, b)) = realize_type(ladders, &plan.concatenated_type(k), &class)? {
            return Ok(Some((k, a, b)));
        }
    }
    Ok(None)
}

/// Plays the diagonal argument against `adversary`.
///
/// Mode A builds `rho`, rebuilds the simulation with `rho` as an extra
/// generator and looks for a monochromatic edge between restrictions of
/// `rho`. Mode B collects the anchors whose guess matches the adversary and
/// looks for a pair in one color class realizing the concatenated type; the
/// back-edge it forces at the upper anchor is monochromatic.
pub fn diagonalize(sim: &SimGraph, adversary: &dyn Adversary) -> Result<DiagonalReport, SimError> {
    let anchors = &sim.anchors;
    let color_count = sim.config.color_count;
    match sim.mode {
        Mode::A => {
            let rho = diagonal_function(adversary, anchors);
            let rebuilt = build_sim(&sim.config, &sim.ladders, Some(&rho))?;
            let mut rho_vertex = vec![usize::MAX; anchors.len()];
            for v in &rebuilt.vertices {
                let p = v.table.len();
                if v.table[..] == rho[..p] {
                    rho_vertex[p] = v.id;
                }
            }
            let color_of = |v: usize| {
                let vert = &rebuilt.vertices[v];
                adversary.color(vert.anchor, &vert.table)
            };
            let all: Vec<usize> = (0..anchors.len()).collect();
            let realizing = class_realization(&sim.ladders, &sim.plan, anchors, &all, &rho, color_count)?;
            let is_rho: std::collections::HashSet<usize> = rho_vertex.iter().copied().collect();
            let outcome = match realizing {
                Some((k, a, b)) => {
                    let top = rho_vertex[sim.ladders.position(b).expect("anchor")];
                    match rebuilt.edges.iter().find(|e| e.v == top && e.h == k) {
                        Some(e) if color_of(e.u) == color_of(e.v) => DiagonalOutcome::Witness {
                            u: e.u,
                            v: e.v,
                            h: e.h,
                            anchors: (rebuilt.vertices[e.u].anchor, rebuilt.vertices[e.v].anchor),
                            color: color_of(e.v),
                            source: WitnessSource::Realization,
                        },
                        _ => DiagonalOutcome::Contradiction { k, pair: (a, b) },
                    }
                }
                None => search_monochromatic(&rebuilt, |v| is_rho.contains(&v), color_of),
            };
            Ok(DiagonalReport {
                mode: Mode::A,
                anchor_colors: rho,
                guessed: None,
                hypothesis_met: realizing.is_some(),
                realizing,
                outcome,
                rebuilt_edges: Some(rebuilt.edges.len()),
            })
        }
        Mode::B => {
            let colors = anchor_coloring(adversary, anchors);
            let guessed: Vec<usize> = sim
                .vertices
                .iter()
                .filter(|v| v.table[..] == colors[..v.table.len()])
                .map(|v| v.id)
                .collect();
            let realizing = class_realization(&sim.ladders, &sim.plan, anchors, &guessed, &colors, color_count)?;
            let outcome = match realizing {
                Some((k, a, b)) => {
                    let top = sim.ladders.position(b).expect("anchor");
                    match sim.edges.iter().find(|e| e.v == top && e.h == k) {
                        Some(e) if colors[e.u] == colors[e.v] => DiagonalOutcome::Witness {
                            u: e.u,
                            v: e.v,
                            h: e.h,
                            anchors: (anchors[e.u], anchors[e.v]),
                            color: colors[e.v],
                            source: WitnessSource::Realization,
                        },
                        _ => DiagonalOutcome::Contradiction { k, pair: (a, b) },
                    }
                }
                None => DiagonalOutcome::GuessFailed,
            };
            Ok(DiagonalReport {
                mode: Mode::B,
                anchor_colors: colors,
                guessed: Some(guessed.iter().map(|&p| anchors[p]).collect()),
                hypothesis_met: realizing.is_some(),
                realizing,
                outcome,
                rebuilt_edges: None,
            })
        }
    }
}

fn search_monochromatic<P, C>(sim: &SimGraph, eligible: P, color_of: C) -> DiagonalOutcome
where
    P: Fn(usize) -> bool,
    C: Fn(usize) -> u32,
{
    sim.edges
        .iter()
        .find(|e| eligible(e.u) && eligible(e.v) && color_of(e.u) == color_of(e.v))
        .map_or(DiagonalOutcome::GuessFailed, |e| DiagonalOutcome::Witness {
            u: e.u,
            v: e.v,
            h: e.h,
            anchors: (sim.vertices[e.u].anchor, sim.vertices[e.v].anchor),
            color: color_of(e.v),
            source: WitnessSource::Search,
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HmViolation {
    TooManyBackEdges {
        vertex: usize,
        count: usize,
    },
    /// Back-edge labelled `k` whose lower anchor is not above
    /// `C_beta(max I_{k-1})`.
    BelowLadder {
        edge: usize,
        k: usize,
        lower_anchor: u64,
        ladder_point: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmReport {
    pub pass: bool,
    pub max_back_degree: usize,
    pub violations: Vec<HmViolation>,
}

/// Mode B only: each vertex has at most `k_max + 1` lower neighbours, and a
/// back-edge labelled `k >= 1` lands above `C_beta(max I_{k-1})`.
pub fn audit_hm(sim: &SimGraph) -> Result<HmReport, SimError> {
    if sim.mode != Mode::B {
        return Err(SimError::ModeMismatch(Mode::B));
    }
    let mut back = vec![0usize; sim.vertices.len()];
    let mut violations = Vec::new();
    for (i, e) in sim.edges.iter().enumerate() {
        let (lo, hi) = if sim.vertices[e.u].anchor < sim.vertices[e.v].anchor {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        back[hi] += 1;
        if e.h >= 1 && e.h <= sim.k_max() {
            let ladder = sim.ladders.ladder_at(sim.anchor_position(hi));
            let point = ladder
                .get(sim.plan.intervals[e.h - 1].max())
                .expect("ladder long enough");
            let lower_anchor = sim.vertices[lo].anchor;
            if lower_anchor <= point {
                violations.push(HmViolation::BelowLadder {
                    edge: i,
                    k: e.h,
                    lower_anchor,
                    ladder_point: point,
                });
            }
        }
    }
    for (vertex, &count) in back.iter().enumerate() {
        if count > sim.k_max() + 1 {
            violations.push(HmViolation::TooManyBackEdges { vertex, count });
        }
    }
    Ok(HmReport {
        pass: violations.is_empty(),
        max_back_degree: back.iter().copied().max().unwrap_or(0),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::generate_ladders;

    fn set(xs: &[u64]) -> OrdinalSet {
        OrdinalSet::new(xs.to_vec()).unwrap()
    }

    fn spaced(count: usize, lo: u64, hi: u64) -> OrdinalSet {
        OrdinalSet::new(
            (0..count as u64)
                .map(|i| lo + i * (hi - lo) / (count as u64 - 1))
                .collect(),
        )
        .unwrap()
    }

    fn sim(mode: Mode, seed: u64) -> SimGraph {
        let mut cfg = SimConfig::new(mode, seed, vec![3, 3, 3, 3]);
        cfg.generator_count = 6;
        let anchors = spaced(60, 1000, 20000);
        let l = generate_ladders(seed, &anchors, 12).unwrap();
        build_sim(&cfg, &l, None).unwrap()
    }

    #[test]
    fn plan_examples() {
        let p = make_plan(&[3, 3, 3]).unwrap();
        assert_eq!(p.s, vec![1, 1, 1]);
        assert_eq!(p.n, vec![3, 3, 3]);
        assert_eq!(
            p.intervals
                .iter()
                .map(|i| i.range().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]
        );
        let p = make_plan(&[3, 3, 3, 8]).unwrap();
        assert_eq!((p.s[3], p.n[3]), (4, 33));
        let p = make_plan(&[0, 1, 2, 4, 5, 6]).unwrap();
        assert_eq!(p.s, vec![1, 1, 1, 2, 2, 3]);
        assert_eq!(p.n[0], 3);
        assert_eq!(make_plan(&[]), Err(SimError::EmptyPlan));
        for (k, &f) in p.f.iter().enumerate() {
            let s = p.s[k] as u64;
            assert!(2 * s + 1 >= f && (s == 1 || 2 * (s - 1) + 1 < f));
        }
    }

    #[test]
    fn no_realization_means_no_edges() {
        // every lower ladder sits entirely above... below: blocks 000111 never 001011
        let anchors = set(&[10, 20, 30]);
        let ladders = LadderSystem::new(
            anchors,
            3,
            vec![set(&[0, 1, 9]), set(&[10, 11, 19]), set(&[20, 21, 29])],
        )
        .unwrap();
        let mut cfg = SimConfig::new(Mode::A, 1, vec![3]);
        cfg.color_count = 1;
        let s = build_sim(&cfg, &ladders, None).unwrap();
        assert!(s.edges.is_empty());
    }

    #[test]
    fn single_pair_trace_mode_b() {
        // tp({0,1,3},{2,4,5}) = 001011 = t^3_1
        let ladders = LadderSystem::new(set(&[4, 6]), 3, vec![set(&[0, 1, 3]), set(&[2, 4, 5])]).unwrap();
        let mut cfg = SimConfig::new(Mode::B, 0, vec![3]);
        cfg.color_count = 1;
        let s = build_sim(&cfg, &ladders, None).unwrap();
        assert_eq!(s.vertices[1].table, vec![0]);
        assert_eq!(s.edges, vec![SimEdge { u: 0, v: 1, h: 0 }]);
    }

    #[test]
    fn errors() {
        let ladders = LadderSystem::new(set(&[4, 6]), 3, vec![set(&[0, 1, 3]), set(&[2, 4, 5])]).unwrap();
        let cfg = SimConfig::new(Mode::B, 0, vec![3, 3]);
        assert_eq!(
            build_sim(&cfg, &ladders, None).unwrap_err(),
            SimError::LadderTooShort { have: 3, need: 6 }
        );
        let mut cfg = SimConfig::new(Mode::A, 0, vec![3]);
        cfg.generator_count = 0;
        assert!(matches!(build_sim(&cfg, &ladders, None), Err(SimError::BadConfig(_))));
    }

    #[test]
    fn deterministic() {
        for mode in [Mode::A, Mode::B] {
            let a = sim(mode, 3);
            let b = sim(mode, 3);
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }

    #[test]
    fn fresh_sims_pass_all_audits() {
        for seed in 0..6 {
            for mode in [Mode::A, Mode::B] {
                let s = sim(mode, seed);
                let r = audit_requirements(&s);
                assert!(r.pass, "{mode:?} seed {seed}: {:?}", r.violations);
                for k in 0..=s.k_max() {
                    let d = audit_decomposition(&s, k).unwrap();
                    assert!(d.pass, "{mode:?} seed {seed} k {k}: {d:?}");
                    let c = audit_subgraph_chromatic(&s, k, SubgraphBudget::default()).unwrap();
                    assert!(c.pass && !c.sampled);
                }
                if mode == Mode::B {
                    assert!(audit_hm(&s).unwrap().pass);
                } else {
                    assert_eq!(audit_hm(&s), Err(SimError::ModeMismatch(Mode::B)));
                }
            }
        }
    }

    #[test]
    fn edgeless_sim_passes_vacuously() {
        let ladders = LadderSystem::new(set(&[10]), 3, vec![set(&[0, 1, 9])]).unwrap();
        let s = build_sim(&SimConfig::new(Mode::B, 0, vec![3]), &ladders, None).unwrap();
        assert!(s.edges.is_empty());
        assert!(audit_requirements(&s).pass);
        assert!(audit_decomposition(&s, 0).unwrap().pass);
        assert!(audit_hm(&s).unwrap().pass);
        let c = audit_subgraph_chromatic(&s, 0, SubgraphBudget::default()).unwrap();
        assert_eq!((c.subgraphs_checked, c.largest_chi), (1, 1));
    }

    #[test]
    fn incremented_label_is_caught() {
        let mut s = sim(Mode::B, 2);
        let (i, _) = s
            .edges
            .iter()
            .enumerate()
            .find(|(_, e)| {
                e.h < s.k_max() && {
                    let r = s.plan.intervals[e.h + 1].range();
                    !block_realizes(
                        &s.ladders.segment(e.u, r.clone()),
                        &s.ladders.segment(e.v, r),
                        &s.plan.block_type(e.h + 1),
                    )
                }
            })
            .expect("some edge fails the next block");
        s.edges[i].h += 1;
        let r = audit_requirements(&s);
        assert!(!r.pass);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, RequirementViolation::TypeCondition { edge, .. } if *edge == i)));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, RequirementViolation::Label { edge, .. } if *edge == i)));
    }

    #[test]
    fn duplicate_back_edge_is_caught() {
        let mut s = sim(Mode::A, 4);
        let e = s.edges[0];
        s.edges.push(e);
        let r = audit_requirements(&s);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, RequirementViolation::Uniqueness { vertex, k, .. } if *vertex == e.v && *k == e.h)));
    }

    #[test]
    fn type_violating_edge_breaks_homomorphism() {
        let mut s = sim(Mode::B, 1);
        // join two anchors whose first blocks do not realize t^3_1
        let t = s.plan.block_type(0);
        let (lo, hi) = (0..s.vertices.len())
            .flat_map(|b| (0..b).map(move |a| (a, b)))
            .find(|&(a, b)| {
                !s.edges.iter().any(|e| e.u == a && e.v == b)
                    && !block_realizes(&s.ladders.segment(a, 0..3), &s.ladders.segment(b, 0..3), &t)
            })
            .unwrap();
        s.edges.push(SimEdge { u: lo, v: hi, h: 0 });
        let d = audit_decomposition(&s, 0).unwrap();
        assert!(!d.homomorphism.pass);
        assert_eq!(d.homomorphism.violation, Some((lo, hi)));
    }

    #[test]
    fn hm_fault_injection() {
        let mut s = sim(Mode::B, 5);
        // a label-1 back-edge from the lowest anchor is below C_beta(max I_0)
        let top = s.vertices.len() - 1;
        s.edges.push(SimEdge { u: 0, v: top, h: 1 });
        let r = audit_hm(&s).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, HmViolation::BelowLadder { k: 1, .. })));
    }

    #[test]
    fn forest_failure_names_two_back_edges() {
        let mut s = sim(Mode::B, 0);
        s.edges.clear();
        s.edges.push(SimEdge { u: 0, v: 1, h: 0 });
        s.edges.push(SimEdge { u: 1, v: 2, h: 0 });
        s.edges.push(SimEdge { u: 0, v: 2, h: 0 });
        let d = audit_decomposition(&s, 0).unwrap();
        assert!(!d.forest.pass);
        assert_eq!(d.forest.top_vertex, Some(2));
        let (a, b) = d.forest.back_neighbors.unwrap();
        assert_eq!((a.min(b), a.max(b)), (0, 1));
    }

    #[test]
    fn hand_built_diagonal_witness() {
        // two anchors, ladders realizing 001011 on I_0; adversary colors both 0
        let ladders = LadderSystem::new(set(&[4, 6]), 3, vec![set(&[0, 1, 3]), set(&[2, 4, 5])]).unwrap();
        let mut cfg = SimConfig::new(Mode::B, 0, vec![3]);
        cfg.color_count = 2;
        cfg.planted_p = 1.0;
        let adversary = |_: u64, _: &[u32]| 0u32;
        let planted = anchor_coloring(&adversary, ladders.anchors().as_slice());
        let s = build_sim(&cfg, &ladders, Some(&planted)).unwrap();
        let r = diagonalize(&s, &adversary).unwrap();
        assert!(r.hypothesis_met);
        assert_eq!(r.realizing, Some((0, 4, 6)));
        assert!(matches!(
            r.outcome,
            DiagonalOutcome::Witness {
                u: 0,
                v: 1,
                h: 0,
                color: 0,
                source: WitnessSource::Realization,
                ..
            }
        ));
    }

    #[test]
    fn no_pairs_means_guess_failed() {
        let ladders = LadderSystem::new(set(&[10]), 3, vec![set(&[0, 1, 9])]).unwrap();
        for mode in [Mode::A, Mode::B] {
            let s = build_sim(&SimConfig::new(mode, 0, vec![3]), &ladders, None).unwrap();
            let r = diagonalize(&s, &HashAdversary { seed: 1, colors: 4 }).unwrap();
            assert!(!r.hypothesis_met);
            assert_eq!(r.outcome, DiagonalOutcome::GuessFailed);
        }
    }

    #[test]
    fn diagonal_witnesses_are_genuine() {
        for seed in 0..8 {
            for mode in [Mode::A, Mode::B] {
                let mut cfg = SimConfig::new(mode, seed, vec![3, 3]);
                cfg.planted_p = 1.0;
                let anchors = spaced(80, 500, 20000);
                let l = generate_ladders(seed, &anchors, 6).unwrap();
                let adv = HashAdversary {
                    seed: seed + 100,
                    colors: cfg.color_count,
                };
                let planted = anchor_coloring(&adv, anchors.as_slice());
                let s = build_sim(&cfg, &l, (mode == Mode::B).then_some(&planted[..])).unwrap();
                let r = diagonalize(&s, &adv).unwrap();
                assert!(!matches!(r.outcome, DiagonalOutcome::Contradiction { .. }));
                if r.hypothesis_met {
                    assert!(matches!(
                        r.outcome,
                        DiagonalOutcome::Witness {
                            source: WitnessSource::Realization,
                            ..
                        }
                    ));
                }
                if mode == Mode::B {
                    assert_eq!(r.hypothesis_met, matches!(r.outcome, DiagonalOutcome::Witness { .. }));
                }
                if let (Mode::B, DiagonalOutcome::Witness { u, v, h, .. }) = (mode, &r.outcome) {
                    assert!(s.edges.contains(&SimEdge { u: *u, v: *v, h: *h }));
                    assert_eq!(r.anchor_colors[*u], r.anchor_colors[*v]);
                }
            }
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(60))]

        #[test]
        fn audits_pass_on_every_build(
            seed in 0u64..1_000_000,
            count in 2usize..=200,
            f in proptest::collection::vec(0u64..8, 1..=4),
            mode_b in proptest::bool::ANY,
        ) {
            let mode = if mode_b { Mode::B } else { Mode::A };
            let mut cfg = SimConfig::new(mode, seed, f);
            cfg.generator_count = 4;
            let anchors = spaced(count, 500, 500 + 40 * count as u64);
            let plan = make_plan(&cfg.f).unwrap();
            let l = generate_ladders(seed, &anchors, plan.ladder_length()).unwrap();
            let s = build_sim(&cfg, &l, None).unwrap();
            let r = audit_requirements(&s);
            proptest::prop_assert!(r.pass, "{:?}", r.violations);
            let mut total = 0;
            for k in 0..=s.k_max() {
                let d = audit_decomposition(&s, k).unwrap();
                proptest::prop_assert!(d.pass, "k {}: {:?}", k, d);
                let above: usize = s.edges.iter().filter(|e| e.h >= k).count();
                proptest::prop_assert_eq!(d.edges_at_least_k, above);
                total += d.edges_k;
            }
            proptest::prop_assert_eq!(total, s.edges.len());
            if mode == Mode::B {
                proptest::prop_assert!(audit_hm(&s).unwrap().pass);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = sim(Mode::A, 9);
        let json = serde_json::to_string(&s).unwrap();
        let back: SimGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
