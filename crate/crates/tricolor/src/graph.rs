//! Core graph representation: simple undirected graphs on dense integer
//! vertices, class validation, induced odd cycles, and BFS level
//! decompositions rooted at a cycle.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("cycle is not contained in the graph")]
    CycleNotInGraph,
    #[error("bad cycle: length {0} is not odd or is below 3")]
    BadCycleLength(usize),
}

/// Simple undirected graph. Vertices are `0..n`, neighbor lists are kept
/// sorted ascending so that iteration order is canonical everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges)
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            canonical.push(e);
            adj[u].push(v);
            adj[v].push(u);
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: canonical,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple for n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in canonical order: sorted pairs `(u, v)` with `u < v`. An edge's
    /// position in this list is its edge id, used by edge colorings.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for &(u, v) in &self.edges {
            for &w in &self.adj[u] {
                if w != v && self.has_edge(v, w) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices` (which must be sorted and distinct).
    /// Returns the subgraph together with the map new index -> old index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        let g = Graph::from_edges(vertices.len(), &edges).expect("induced subgraph is simple");
        (g, vertices.to_vec())
    }

    /// Proper 2-coloring by BFS, or `None` when some component has an odd
    /// cycle.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Relabels vertices by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n(), &edges).expect("relabeling preserves simplicity")
    }
}

/// Report from validating membership in the root class (subcubic,
/// triangle-free, connected); failed checks carry a witness.
#[derive(Debug, Clone)]
pub struct ClassReport {
    /// `None` when subcubic, otherwise a vertex of degree > 3.
    pub degree_violation: Option<usize>,
    /// `None` when triangle-free, otherwise a triangle.
    pub triangle: Option<[usize; 3]>,
    /// `None` when connected, otherwise vertices from two components.
    pub disconnection: Option<(usize, usize)>,
}

impl ClassReport {
    pub fn is_subcubic(&self) -> bool {
        self.degree_violation.is_none()
    }
    pub fn is_triangle_free(&self) -> bool {
        self.triangle.is_none()
    }
    pub fn is_connected(&self) -> bool {
        self.disconnection.is_none()
    }
    pub fn all_ok(&self) -> bool {
        self.is_subcubic() && self.is_triangle_free() && self.is_connected()
    }
}

/// Checks the three root-class properties and reports witnesses for failures.
pub fn validate_root_class(h: &Graph) -> ClassReport {
    let degree_violation = (0..h.n()).find(|&v| h.degree(v) > 3);
    let triangle = h.find_triangle();
    let disconnection = {
        let comps = h.components();
        if comps.len() > 1 {
            Some((comps[0][0], comps[1][0]))
        } else {
            None
        }
    };
    ClassReport {
        degree_violation,
        triangle,
        disconnection,
    }
}

/// An odd cycle in a host graph, stored as the ordered vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    vertices: Vec<usize>,
    induced: bool,
}

impl OddCycle {
    /// Validates that `vertices` trace a cycle in `h` (consecutive vertices
    /// adjacent, cyclically) of odd length >= 3, and records whether it is
    /// chordless.
    pub fn in_graph(h: &Graph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        let p = vertices.len();
        if p < 3 || p % 2 == 0 {
            return Err(GraphError::BadCycleLength(p));
        }
        let mut seen = std::collections::HashSet::new();
        for (k, &v) in vertices.iter().enumerate() {
            if v >= h.n() || !seen.insert(v) {
                return Err(GraphError::CycleNotInGraph);
            }
            let next = vertices[(k + 1) % p];
            if !h.has_edge(v, next) {
                return Err(GraphError::CycleNotInGraph);
            }
        }
        let mut induced = true;
        'outer: for i in 0..p {
            for j in i + 2..p {
                if i == 0 && j == p - 1 {
                    continue;
                }
                if h.has_edge(vertices[i], vertices[j]) {
                    induced = false;
                    break 'outer;
                }
            }
        }
        Ok(OddCycle { vertices, induced })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_induced(&self) -> bool {
        self.induced
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Finds a shortest induced odd cycle, or `None` when the graph is bipartite.
///
/// With `include_triangles` unset the search starts at length 5, so a graph
/// whose only odd cycles are triangles yields the shortest induced odd cycle
/// of length >= 5 if one exists. Ties are broken toward the lexicographically
/// smallest vertex sequence starting from its minimum vertex.
pub fn shortest_induced_odd_cycle(h: &Graph, include_triangles: bool) -> Option<OddCycle> {
    if h.is_bipartite() {
        return None;
    }
    let start_len = if include_triangles { 3 } else { 5 };
    let mut p = start_len;
    while p <= h.n() {
        if let Some(vertices) = find_induced_cycle_of_len(h, p) {
            let cycle = OddCycle::in_graph(h, vertices).expect("search yields a valid cycle");
            debug_assert!(cycle.is_induced());
            return Some(cycle);
        }
        p += 2;
    }
    None
}

/// Lexicographically least induced cycle of exactly `len` vertices, as a
/// sequence starting from its minimum vertex, or `None`.
fn find_induced_cycle_of_len(h: &Graph, len: usize) -> Option<Vec<usize>> {
    let mut path = Vec::with_capacity(len);
    for s in 0..h.n() {
        path.clear();
        path.push(s);
        if extend_induced_cycle(h, len, &mut path) {
            return Some(path);
        }
    }
    None
}

fn extend_induced_cycle(h: &Graph, len: usize, path: &mut Vec<usize>) -> bool {
    let k = path.len();
    if k == len {
        return h.has_edge(path[len - 1], path[0]);
    }
    let s = path[0];
    let last = path[k - 1];
    for &w in h.neighbors(last) {
        if w <= s || path.contains(&w) {
            continue;
        }
        // Induced: w may touch the path only at `last` (plus `s` when w is
        // the closing vertex).
        if k == len - 1 {
            // Reflection dedupe: fix orientation with second < last vertex.
            if path[1] >= w || !h.has_edge(w, s) {
                continue;
            }
            if path[1..k - 1].iter().any(|&x| h.has_edge(w, x)) {
                continue;
            }
        } else if path[..k - 1].iter().any(|&x| h.has_edge(w, x)) {
            continue;
        }
        path.push(w);
        if extend_induced_cycle(h, len, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// BFS level partition of the vertices reachable from a cycle: level 0 is the
/// cycle itself, level i holds the vertices at distance i from it.
#[derive(Debug, Clone)]
pub struct NeighborhoodLevels {
    pub levels: Vec<Vec<usize>>,
}

impl NeighborhoodLevels {
    /// Vertices at distance exactly `i`; empty when past the last level.
    pub fn level(&self, i: usize) -> &[usize] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn neighborhood_levels(h: &Graph, q: &OddCycle) -> Result<NeighborhoodLevels, GraphError> {
    for window in q
        .vertices()
        .iter()
        .zip(q.vertices().iter().cycle().skip(1))
        .take(q.len())
    {
        if !h.has_edge(*window.0, *window.1) {
            return Err(GraphError::CycleNotInGraph);
        }
    }
    let mut dist = vec![usize::MAX; h.n()];
    let mut queue = std::collections::VecDeque::new();
    for &v in q.vertices() {
        if v >= h.n() {
            return Err(GraphError::CycleNotInGraph);
        }
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &w in h.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let max_level = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
    let mut levels = vec![Vec::new(); max_level + 1];
    for v in 0..h.n() {
        if dist[v] != usize::MAX {
            levels[dist[v]].push(v);
        }
    }
    Ok(NeighborhoodLevels { levels })
}
