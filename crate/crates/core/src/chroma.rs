//! Proper colorings, an exact chromatic-number solver, product colorings and
//! the `f_G` profile (least order of a subgraph with chromatic number >= k).

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphcore::{for_each_connected_subset, induced_subgraph, shortest_odd_cycle, Graph, Walk};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaError {
    #[error("coloring has {got} entries, graph has {expected} vertices")]
    PartialColoring { expected: usize, got: usize },
    #[error("color {color} at vertex {vertex} is outside a palette of size {palette}")]
    ColorOutOfPalette {
        vertex: usize,
        color: usize,
        palette: usize,
    },
    #[error("edge {{{0}, {1}}} is not covered by any part")]
    NotACover(usize, usize),
    #[error("part {part} contains {{{u}, {v}}}, which is not an edge of the graph")]
    ForeignEdge { part: usize, u: usize, v: usize },
    #[error("coloring {part} is not proper on its part (edge {{{u}, {v}}})")]
    ImproperInput { part: usize, u: usize, v: usize },
    #[error("{parts} edge parts but {colorings} colorings")]
    PartCountMismatch { parts: usize, colorings: usize },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
}

/// Search limits. A node budget keeps results reproducible; a wall-clock
/// limit does not, and is only checked when set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_millis: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_millis: None,
        }
    }
}

struct Meter {
    budget: Budget,
    started: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            nodes: 0,
        }
    }

    /// Counts one node; `false` once the budget is spent.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            return false;
        }
        if let Some(ms) = self.budget.max_millis {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() > Duration::from_millis(ms) {
                return false;
            }
        }
        true
    }
}

/// A vertex coloring with colors in `0..palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, palette_size: usize) -> Result<Self, ChromaError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= palette_size) {
            return Err(ChromaError::ColorOutOfPalette {
                vertex,
                color,
                palette: palette_size,
            });
        }
        Ok(Coloring { colors, palette_size })
    }

    /// Palette size is one more than the largest color used.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
        Coloring { colors, palette_size }
    }

    pub fn colors_used(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringCheck {
    Proper,
    Monochromatic { edge: (usize, usize) },
}

impl ColoringCheck {
    pub fn is_proper(&self) -> bool {
        matches!(self, ColoringCheck::Proper)
    }
}

pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<ColoringCheck, ChromaError> {
    if c.colors.len() != g.vertex_count() {
        return Err(ChromaError::PartialColoring {
            expected: g.vertex_count(),
            got: c.colors.len(),
        });
    }
    Ok(g.edges()
        .find(|&(u, v)| c.colors[u] == c.colors[v])
        .map_or(ColoringCheck::Proper, |edge| ColoringCheck::Monochromatic { edge }))
}

/// Why no coloring with fewer colors exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerBound {
    /// No vertices, or no edges: trivially tight.
    Trivial,
    /// A clique with as many vertices as colors used.
    Clique { vertices: Vec<usize> },
    /// The exhaustive search refuted every coloring with `colors` colors.
    Exhausted { colors: usize, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticResult {
    /// Colors used by `coloring`; equals the chromatic number when `exact`.
    pub chi: usize,
    /// Best proven lower bound.
    pub lower: usize,
    pub coloring: Coloring,
    pub certificate: Option<LowerBound>,
    pub exact: bool,
    pub nodes: u64,
}

impl ChromaticResult {
    pub fn into_exact(self) -> Result<Self, ChromaError> {
        if self.exact {
            Ok(self)
        } else {
            Err(ChromaError::BudgetExceeded { nodes: self.nodes })
        }
    }
}

/// A greedy clique: seeds in order of decreasing degree, always extending by
/// the candidate of highest degree (lowest id on ties). Keeps the largest.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best: Vec<usize> = Vec::new();
    for &seed in &order {
        if g.degree(seed) < best.len() {
            break;
        }
        let mut clique = vec![seed];
        let mut cand: Vec<usize> = g.neighbors(seed).to_vec();
        while !cand.is_empty() {
            let &pick = cand
                .iter()
                .min_by_key(|&&v| (std::cmp::Reverse(g.degree(v)), v))
                .expect("non-empty");
            clique.push(pick);
            cand.retain(|&v| v != pick && g.has_edge(pick, v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

const UNCOLORED: usize = usize::MAX;

/// Saturation-ordered backtracking over colorings with fewer than `limit`
/// colors. Branching vertex: highest saturation, then highest degree, then
/// lowest id.
struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    // neighbour_colors[v][c]: colored neighbours of v with color c
    neighbour_colors: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    limit: usize,
    stop_at: usize,
    best: Option<Vec<usize>>,
    meter: Meter,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, limit: usize, stop_at: usize, budget: Budget) -> Self {
        let n = g.vertex_count();
        let width = limit.min(n).max(1);
        Dsatur {
            g,
            colors: vec![UNCOLORED; n],
            neighbour_colors: vec![vec![0; width]; n],
            saturation: vec![0; n],
            limit,
            stop_at,
            best: None,
            meter: Meter::new(budget),
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbour_colors[w][c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = UNCOLORED;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbour_colors[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// `Break(true)` means done (target reached), `Break(false)` budget out.
    fn search(&mut self, used: usize) -> ControlFlow<bool> {
        if !self.meter.tick() {
            return ControlFlow::Break(false);
        }
        let Some(v) = self.pick() else {
            self.best = Some(self.colors.clone());
            self.limit = used;
            return if used <= self.stop_at {
                ControlFlow::Break(true)
            } else {
                ControlFlow::Continue(())
            };
        };
        let top = (used + 1).min(self.limit.saturating_sub(1));
        for c in 0..top {
            if c >= self.limit.saturating_sub(1) {
                break;
            }
            if self.neighbour_colors[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let flow = self.search(used.max(c + 1));
            self.unassign(v, c);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Greedy DSATUR coloring, used as the initial upper bound.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let mut s = Dsatur::new(g, g.vertex_count() + 1, 0, Budget::UNLIMITED);
    let mut used = 0;
    while let Some(v) = s.pick() {
        let c = (0..)
            .find(|&c| c >= s.neighbour_colors[v].len() || s.neighbour_colors[v][c] == 0)
            .unwrap();
        s.assign(v, c);
        used = used.max(c + 1);
    }
    Coloring {
        colors: s.colors,
        palette_size: used,
    }
}

/// Exact chromatic number with a proper coloring and a lower-bound
/// certificate. Deterministic for a given graph. When the budget runs out the
/// result carries the best bounds found with `exact == false`.
pub fn chromatic_number(g: &Graph, budget: Budget) -> ChromaticResult {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() == 0 {
        let palette = usize::from(n > 0);
        return ChromaticResult {
            chi: palette,
            lower: palette,
            coloring: Coloring {
                colors: vec![0; n],
                palette_size: palette,
            },
            certificate: Some(LowerBound::Trivial),
            exact: true,
            nodes: 0,
        };
    }
    let clique = greedy_clique(g);
    let greedy = dsatur_greedy(g);
    let ub = greedy.palette_size;
    if clique.len() == ub {
        return ChromaticResult {
            chi: ub,
            lower: ub,
            coloring: greedy,
            certificate: Some(LowerBound::Clique { vertices: clique }),
            exact: true,
            nodes: 0,
        };
    }
    let mut search = Dsatur::new(g, ub, clique.len(), budget);
    let flow = search.search(0);
    let nodes = search.meter.nodes;
    let coloring = match search.best.take() {
        Some(colors) => Coloring::from_colors(colors),
        None => greedy,
    };
    let chi = coloring.palette_size;
    match flow {
        ControlFlow::Break(false) => ChromaticResult {
            chi,
            lower: clique.len(),
            coloring,
            certificate: None,
            exact: false,
            nodes,
        },
        _ => {
            let certificate = if chi == clique.len() {
                LowerBound::Clique { vertices: clique }
            } else {
                LowerBound::Exhausted { colors: chi - 1, nodes }
            };
            ChromaticResult {
                chi,
                lower: chi,
                coloring,
                certificate: Some(certificate),
                exact: true,
                nodes,
            }
        }
    }
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(g: &Graph, k: usize, budget: Budget) -> Result<Option<Coloring>, ChromaError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Coloring {
            colors: Vec::new(),
            palette_size: k,
        }));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut search = Dsatur::new(g, k + 1, k, budget);
    match search.search(0) {
        ControlFlow::Break(false) => Err(ChromaError::BudgetExceeded {
            nodes: search.meter.nodes,
        }),
        _ => Ok(search.best.map(|colors| Coloring {
            colors,
            palette_size: k,
        })),
    }
}

/// Combines colorings of the parts of an edge cover into one coloring of
/// the whole graph. A vertex gets the tuple of its part colors, encoded in
/// mixed radix (part 0 is the least significant digit).
pub fn product_coloring(
    g: &Graph,
    parts: &[Vec<(usize, usize)>],
    colorings: &[Coloring],
) -> Result<Coloring, ChromaError> {
    if parts.len() != colorings.len() {
        return Err(ChromaError::PartCountMismatch {
            parts: parts.len(),
            colorings: colorings.len(),
        });
    }
    let n = g.vertex_count();
    let mut covered = Graph::new(n);
    for (j, (part, c)) in parts.iter().zip(colorings).enumerate() {
        if c.colors.len() != n {
            return Err(ChromaError::PartialColoring {
                expected: n,
                got: c.colors.len(),
            });
        }
        for &(u, v) in part {
            if !g.has_edge(u, v) {
                return Err(ChromaError::ForeignEdge { part: j, u, v });
            }
            if c.colors[u] == c.colors[v] {
                return Err(ChromaError::ImproperInput { part: j, u, v });
            }
            let _ = covered.add_edge(u, v);
        }
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !covered.has_edge(u, v)) {
        return Err(ChromaError::NotACover(u, v));
    }
    let mut colors = vec![0usize; n];
    let mut radix = 1usize;
    for c in colorings {
        for (slot, &x) in colors.iter_mut().zip(&c.colors) {
            *slot += x * radix;
        }
        radix *= c.palette_size;
    }
    Coloring::new(colors, radix)
}

/// A proper 2-coloring (palette 1 when there are no edges), or a shortest
/// odd cycle when the graph is not bipartite.
pub fn two_coloring(g: &Graph) -> Result<Coloring, Walk> {
    let n = g.vertex_count();
    let mut colors = vec![UNCOLORED; n];
    for root in 0..n {
        if colors[root] != UNCOLORED {
            continue;
        }
        colors[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if colors[w] == UNCOLORED {
                    colors[w] = 1 - colors[u];
                    stack.push(w);
                } else if colors[w] == colors[u] {
                    return Err(shortest_odd_cycle(g).expect("a conflict implies an odd cycle"));
                }
            }
        }
    }
    let palette_size = if g.edge_count() == 0 { 1 } else { 2 };
    Ok(Coloring { colors, palette_size })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgEntry {
    pub k: usize,
    pub m: usize,
    pub witness: Vec<usize>,
    /// `false` when the search budget ran out and `m` is only an upper bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgProfile {
    pub entries: Vec<FgEntry>,
    /// Chromatic number of the whole graph (an upper bound when inexact).
    pub chi: usize,
    pub chi_exact: bool,
}

impl FgProfile {
    pub fn get(&self, k: usize) -> Option<&FgEntry> {
        self.entries.iter().find(|e| e.k == k)
    }
}

/// For each `2 <= k <= k_max` with `chi(G) >= k`: the least `m` such that
/// some `m`-vertex subgraph has chromatic number at least `k`, with a witness.
///
/// Only connected induced subgraphs whose minimum degree is at least `k - 1`
/// are tested; a minimal witness is vertex-critical, so nothing is lost.
pub fn fg_profile(g: &Graph, k_max: usize, budget: Budget) -> FgProfile {
    let whole = chromatic_number(g, budget);
    let reach = if whole.exact { whole.chi } else { whole.lower };
    let mut entries = Vec::new();
    let mut meter = Meter::new(budget);
    let mut start_m = 1;
    for k in 2..=k_max.min(reach) {
        let mut found: Option<(usize, Vec<usize>)> = None;
        let mut out_of_budget = false;
        for m in start_m.max(k)..=g.vertex_count() {
            let flow = for_each_connected_subset(g, m, |sub| {
                if sub.len() != m {
                    return ControlFlow::Continue(());
                }
                if !meter.tick() {
                    out_of_budget = true;
                    return ControlFlow::Break(());
                }
                let h = induced_subgraph(g, sub).expect("subset of the graph");
                if (0..m).any(|v| h.graph.degree(v) + 1 < k) {
                    return ControlFlow::Continue(());
                }
                match k_coloring(&h.graph, k - 1, budget) {
                    Ok(None) => {
                        found = Some((m, h.original));
                        ControlFlow::Break(())
                    }
                    Ok(Some(_)) => ControlFlow::Continue(()),
                    Err(_) => {
                        out_of_budget = true;
                        ControlFlow::Break(())
                    }
                }
            });
            if flow.is_break() {
                break;
            }
        }
        match found {
            Some((m, witness)) => {
                start_m = m;
                entries.push(FgEntry {
                    k,
                    m,
                    witness,
                    exact: true,
                });
            }
            None => {
                debug_assert!(out_of_budget);
                entries.push(FgEntry {
                    k,
                    m: g.vertex_count(),
                    witness: (0..g.vertex_count()).collect(),
                    exact: false,
                });
                start_m = g.vertex_count();
            }
        }
    }
    FgProfile {
        entries,
        chi: whole.chi,
        chi_exact: whole.exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specker::{build_specker, SpeckerSpec};
    use crate::typealg::DisjointType;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // plain vertex-order backtracking, independent of the solver
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        fn rec(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
            if v == g.vertex_count() {
                return true;
            }
            for c in 0..k {
                if g.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                    colors[v] = c;
                    if rec(g, k, v + 1, colors) {
                        return true;
                    }
                }
            }
            false
        }
        rec(g, k, 0, &mut vec![0; g.vertex_count()])
    }

    fn brute_chi(g: &Graph) -> usize {
        (0..).find(|&k| brute_colorable(g, k)).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        assert!(verify_coloring(&k3, &Coloring::from_colors(vec![0, 1, 2]))
            .unwrap()
            .is_proper());
        assert_eq!(
            verify_coloring(&k3, &Coloring::from_colors(vec![0, 0, 1])).unwrap(),
            ColoringCheck::Monochromatic { edge: (0, 1) }
        );
        assert!(verify_coloring(&Graph::new(4), &Coloring::from_colors(vec![0; 4]))
            .unwrap()
            .is_proper());
        assert!(matches!(
            verify_coloring(&k3, &Coloring::from_colors(vec![0, 1])),
            Err(ChromaError::PartialColoring { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn chromatic_examples() {
        let r = chromatic_number(&Graph::complete(4), Budget::UNLIMITED);
        assert_eq!((r.chi, r.exact), (4, true));
        assert!(matches!(r.certificate, Some(LowerBound::Clique { .. })));
        let r = chromatic_number(&Graph::cycle(5), Budget::UNLIMITED);
        assert_eq!(r.chi, 3);
        assert!(matches!(r.certificate, Some(LowerBound::Exhausted { colors: 2, .. })));
        assert!(verify_coloring(&Graph::cycle(5), &r.coloring).unwrap().is_proper());
        assert_eq!(chromatic_number(&Graph::petersen(), Budget::UNLIMITED).chi, 3);
        assert_eq!(chromatic_number(&Graph::new(3), Budget::UNLIMITED).chi, 1);
        assert_eq!(chromatic_number(&Graph::new(0), Budget::UNLIMITED).chi, 0);
    }

    #[test]
    fn chromatic_of_small_specker_graph() {
        let g = build_specker(&SpeckerSpec::new(6, DisjointType::canonical(2, 1).unwrap()), 100).unwrap();
        assert_eq!(g.vertex_count(), 15);
        let expect = brute_chi(&g);
        let r = chromatic_number(&g, Budget::UNLIMITED);
        assert_eq!(r.chi, expect);
        // frozen from the brute-force oracle
        assert_eq!(expect, 3);
    }

    #[test]
    fn solver_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let r = chromatic_number(&g, Budget::UNLIMITED);
            assert_eq!(r.chi, brute_chi(&g));
            assert!(verify_coloring(&g, &r.coloring).unwrap().is_proper());
            assert_eq!(r.coloring.palette_size, r.chi);
        }
    }

    #[test]
    fn budget_is_flagged() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 40, 0.5);
        let r = chromatic_number(&g, Budget::nodes(5));
        assert!(!r.exact);
        assert!(r.lower <= r.chi);
        assert!(verify_coloring(&g, &r.coloring).unwrap().is_proper());
        assert!(matches!(r.into_exact(), Err(ChromaError::BudgetExceeded { .. })));
    }

    #[test]
    fn k_coloring_decides() {
        assert!(k_coloring(&Graph::cycle(5), 2, Budget::UNLIMITED).unwrap().is_none());
        let c = k_coloring(&Graph::cycle(5), 3, Budget::UNLIMITED).unwrap().unwrap();
        assert!(verify_coloring(&Graph::cycle(5), &c).unwrap().is_proper());
        assert!(k_coloring(&Graph::complete(4), 3, Budget::UNLIMITED).unwrap().is_none());
    }

    #[test]
    fn product_examples() {
        let c5 = Graph::cycle(5);
        let c = Coloring::from_colors(vec![0, 1, 0, 1, 2]);
        let parts = vec![c5.edges().collect::<Vec<_>>()];
        assert_eq!(product_coloring(&c5, &parts, std::slice::from_ref(&c)).unwrap(), c);

        let c4 = Graph::cycle(4);
        let m1 = vec![(0, 1), (2, 3)];
        let m2 = vec![(1, 2), (0, 3)];
        let c1 = Coloring::from_colors(vec![0, 1, 0, 1]);
        let c2 = Coloring::from_colors(vec![0, 0, 1, 1]);
        let out = product_coloring(&c4, &[m1.clone(), m2.clone()], &[c1.clone(), c2]).unwrap();
        assert_eq!(out.palette_size, 4);
        for (u, v) in c4.edges() {
            assert_ne!(out.colors[u], out.colors[v]);
        }

        let p3 = Graph::path(3);
        let out = product_coloring(
            &p3,
            &[vec![(0, 1)], vec![(1, 2)]],
            &[
                Coloring::new(vec![0, 1, 0], 2).unwrap(),
                Coloring::new(vec![0, 1, 2], 3).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(out.palette_size, 6);

        assert_eq!(
            product_coloring(&c4, std::slice::from_ref(&m1), std::slice::from_ref(&c1)),
            Err(ChromaError::NotACover(0, 3))
        );
        assert!(matches!(
            product_coloring(&c4, &[m1, m2], &[c1, Coloring::from_colors(vec![0; 4])]),
            Err(ChromaError::ImproperInput { part: 1, .. })
        ));
    }

    #[test]
    fn product_of_random_decompositions_is_proper() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(2..=12);
            let g = random_graph(&mut rng, n, 0.4);
            let k = rng.gen_range(1..=3);
            let mut parts = vec![Vec::new(); k];
            for e in g.edges() {
                parts[rng.gen_range(0..k)].push(e);
            }
            let colorings: Vec<Coloring> = parts
                .iter()
                .map(|p| {
                    let h = Graph::from_edges(n, p.iter().copied()).unwrap();
                    chromatic_number(&h, Budget::UNLIMITED).coloring
                })
                .collect();
            let out = product_coloring(&g, &parts, &colorings).unwrap();
            assert!(verify_coloring(&g, &out).unwrap().is_proper());
            assert_eq!(
                out.palette_size,
                colorings.iter().map(|c| c.palette_size).product::<usize>()
            );
        }
    }

    #[test]
    fn two_coloring_examples() {
        let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let c = two_coloring(&tree).unwrap();
        assert_eq!(c.palette_size, 2);
        assert!(verify_coloring(&tree, &c).unwrap().is_proper());
        assert_eq!(two_coloring(&Graph::cycle(5)).unwrap_err().len(), 5);
        let e = two_coloring(&Graph::new(4)).unwrap();
        assert_eq!(
            e,
            Coloring {
                colors: vec![0; 4],
                palette_size: 1
            }
        );
    }

    #[test]
    fn fg_examples() {
        let p = fg_profile(&Graph::cycle(5), 4, Budget::UNLIMITED);
        assert_eq!(p.get(2).map(|e| e.m), Some(2));
        assert_eq!(p.get(3).map(|e| e.m), Some(5));
        assert!(p.get(4).is_none());
        let p = fg_profile(&Graph::complete(4), 4, Budget::UNLIMITED);
        assert_eq!(
            p.entries.iter().map(|e| (e.k, e.m)).collect::<Vec<_>>(),
            vec![(2, 2), (3, 3), (4, 4)]
        );
    }

    #[test]
    fn fg_is_minimal_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.5);
            let prof = fg_profile(&g, 5, Budget::UNLIMITED);
            let mut prev = 0;
            for e in &prof.entries {
                assert!(e.exact && e.m >= prev);
                prev = e.m;
                let h = induced_subgraph(&g, &e.witness).unwrap();
                assert!(!brute_colorable(&h.graph, e.k - 1));
                // no subset of size m - 1 reaches k
                for mask in 0u32..1 << n {
                    if mask.count_ones() as usize == e.m - 1 {
                        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                        let h = induced_subgraph(&g, &vs).unwrap();
                        assert!(brute_colorable(&h.graph, e.k - 1));
                    }
                }
            }
            if g.edge_count() > 0 {
                assert_eq!(prof.get(2).unwrap().m, 2);
            }
            if let Some(c) = shortest_odd_cycle(&g) {
                assert_eq!(prof.get(3).unwrap().m, c.len());
            }
        }
    }
}
