//! Finite simple graphs, walks, odd girth and homomorphism checks.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("walk is not closed or uses a non-edge")]
    NotClosedWalk,
    #[error("walk has even length {0}")]
    EvenLength(usize),
    #[error("vertex map has {got} entries, graph has {expected} vertices")]
    MapSize { expected: usize, got: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let edges = (0..p).flat_map(|u| (0..q).map(move |v| (u, p + v)));
        Graph::from_edges(p + q, edges).expect("bipartite edges are valid")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("petersen edges are valid")
    }

    /// Adds `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.adj.len();
        if u >= n {
            return Err(GraphError::UnknownVertex(u));
        }
        if v >= n {
            return Err(GraphError::UnknownVertex(v));
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Same vertex set, keeping only the edges accepted by `keep`.
    pub fn spanning_subgraph<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut g = Graph::new(self.vertex_count());
        for (u, v) in self.edges() {
            if keep(u, v) {
                g.add_edge(u, v).expect("edge of a valid graph");
            }
        }
        g
    }

    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return true;
        }
        let mut inside = vec![false; self.vertex_count()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![vertices[0]];
        seen[vertices[0]] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == vertices.len()
    }
}

/// An induced subgraph together with the original id of each new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<usize>,
}

/// Vertices are renumbered in increasing order of their original ids.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
    let mut original = vertices.to_vec();
    original.sort_unstable();
    original.dedup();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in original.iter().enumerate() {
        if v >= g.vertex_count() {
            return Err(GraphError::UnknownVertex(v));
        }
        index[v] = i;
    }
    let mut sub = Graph::new(original.len());
    for (i, &v) in original.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = index[w];
            if j != usize::MAX && j > i {
                sub.add_edge(i, j)?;
            }
        }
    }
    Ok(InducedSubgraph { graph: sub, original })
}

/// A sequence of vertices; closed walks repeat the first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk(pub Vec<usize>);

impl Walk {
    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_walk_in(&self, g: &Graph) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| v < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    pub fn is_closed(&self) -> bool {
        self.0.len() >= 2 && self.0.first() == self.0.last()
    }

    /// Closed, length at least 3, no repeated vertex before the last one.
    pub fn is_cycle(&self) -> bool {
        if !self.is_closed() || self.len() < 3 {
            return false;
        }
        let mut body = self.0[..self.0.len() - 1].to_vec();
        body.sort_unstable();
        body.windows(2).all(|w| w[0] != w[1])
    }
}

/// Some cycle of `g`, or `None` when `g` is a forest.
pub fn find_cycle(g: &Graph) -> Option<Walk> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] && u != parent[w] {
                    return Some(tree_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    None
}

// Closes the non-tree edge {u, w} through the BFS tree.
fn tree_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Walk {
    let (mut x, mut y) = (u, w);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left.push(u);
    Walk(left)
}

pub fn is_forest(g: &Graph) -> bool {
    find_cycle(g).is_none()
}

/// Shortest odd cycle, or `None` if `g` is bipartite.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Walk> {
    shortest_odd_cycle_within(g, usize::MAX)
}

/// Shortest odd cycle of length at most `max_len`.
///
/// Runs a breadth-first search on the bipartite double cover from every
/// vertex `s`: the distance from `(s, even)` to `(s, odd)` is the shortest odd
/// closed walk through `s`, and the global minimum of those is a cycle.
pub fn shortest_odd_cycle_within(g: &Graph, max_len: usize) -> Option<Walk> {
    let n = g.vertex_count();
    let mut best: Option<Walk> = None;
    let mut limit = max_len;
    let mut dist = vec![usize::MAX; 2 * n];
    let mut pred = vec![usize::MAX; 2 * n];
    let mut touched = Vec::new();
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        for &x in &touched {
            dist[x] = usize::MAX;
        }
        touched.clear();
        let start = 2 * s;
        let target = 2 * s + 1;
        dist[start] = 0;
        touched.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            let d = dist[state];
            if d + 1 > limit || dist[target] != usize::MAX {
                break;
            }
            let (v, parity) = (state / 2, state % 2);
            for &w in g.neighbors(v) {
                let next = 2 * w + (1 - parity);
                if dist[next] == usize::MAX {
                    dist[next] = d + 1;
                    pred[next] = state;
                    touched.push(next);
                    queue.push_back(next);
                }
            }
        }
        if dist[target] != usize::MAX && dist[target] <= limit {
            let mut states = vec![target];
            let mut cur = target;
            while cur != start {
                cur = pred[cur];
                states.push(cur);
            }
            states.reverse();
            let walk = Walk(states.into_iter().map(|x| x / 2).collect());
            let cycle = extract_odd_cycle(g, &walk).expect("double-cover walk is a closed odd walk");
            let len = cycle.len();
            if best.as_ref().is_none_or(|b| len < b.len()) {
                best = Some(cycle);
                // only strictly shorter cycles can improve
                limit = len.saturating_sub(2);
            }
            if len == 3 {
                break;
            }
        }
    }
    best
}

/// Reduces an odd closed walk to an odd cycle no longer than the walk.
///
/// While the walk repeats a vertex, it is split at the repeat into two closed
/// walks and the odd one is kept.
pub fn extract_odd_cycle(g: &Graph, walk: &Walk) -> Result<Walk, GraphError> {
    if !walk.is_walk_in(g) || !walk.is_closed() {
        return Err(GraphError::NotClosedWalk);
    }
    if walk.len().is_multiple_of(2) {
        return Err(GraphError::EvenLength(walk.len()));
    }
    let mut w = walk.0.clone();
    loop {
        let len = w.len() - 1;
        let mut first_seen = std::collections::HashMap::new();
        let mut repeat = None;
        for (j, &v) in w[..len].iter().enumerate() {
            if let Some(&i) = first_seen.get(&v) {
                repeat = Some((i, j));
                break;
            }
            first_seen.insert(v, j);
        }
        let Some((i, j)) = repeat else {
            return Ok(Walk(w));
        };
        if (j - i) % 2 == 1 {
            w = w[i..=j].to_vec();
        } else {
            let mut rest = w[j..].to_vec();
            rest.extend_from_slice(&w[1..=i]);
            w = rest;
        }
    }
}

/// Visits every connected vertex subset of size `1..=max_size` exactly once
/// (ESU enumeration). Subsets are passed in insertion order, not sorted.
/// Returning `ControlFlow::Break` from `visit` stops the enumeration.
pub fn for_each_connected_subset<F>(g: &Graph, max_size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn extend<F>(
        g: &Graph,
        root: usize,
        sub: &mut Vec<usize>,
        ext: Vec<usize>,
        max: usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        visit(sub)?;
        if sub.len() == max {
            return ControlFlow::Continue(());
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in g.neighbors(w) {
                if u > root && !sub.contains(&u) && !next.contains(&u) && !sub.iter().any(|&x| g.has_edge(x, u)) {
                    next.push(u);
                }
            }
            sub.push(w);
            let flow = extend(g, root, sub, next, max, visit);
            sub.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    if max_size == 0 {
        return ControlFlow::Continue(());
    }
    for v in 0..g.vertex_count() {
        let ext: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        extend(g, v, &mut vec![v], ext, max_size, &mut visit)?;
    }
    ControlFlow::Continue(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomomorphismCheck {
    Holds,
    /// An edge of the source whose image is not an edge.
    Violated {
        edge: (usize, usize),
    },
}

impl HomomorphismCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HomomorphismCheck::Holds)
    }
}

pub fn check_homomorphism(g: &Graph, h: &Graph, phi: &[usize]) -> Result<HomomorphismCheck, GraphError> {
    if phi.len() != g.vertex_count() {
        return Err(GraphError::MapSize {
            expected: g.vertex_count(),
            got: phi.len(),
        });
    }
    if let Some(&bad) = phi.iter().find(|&&x| x >= h.vertex_count()) {
        return Err(GraphError::UnknownVertex(bad));
    }
    Ok(check_homomorphism_with(g, |v| phi[v], |a, b| h.has_edge(*a, *b)))
}

/// Homomorphism check against a target given only by an adjacency predicate.
pub fn check_homomorphism_with<T, M, A>(g: &Graph, map: M, adjacent: A) -> HomomorphismCheck
where
    M: Fn(usize) -> T,
    A: Fn(&T, &T) -> bool,
{
    let images: Vec<T> = (0..g.vertex_count()).map(map).collect();
    for (u, v) in g.edges() {
        if !adjacent(&images[u], &images[v]) {
            return HomomorphismCheck::Violated { edge: (u, v) };
        }
    }
    HomomorphismCheck::Holds
}
