//! Pattern graphs (claw, diamond, K4, C5, generalized nets, spiders) and
//! containment detection: induced embeddings for the vertex-coloring side,
//! not-necessarily-induced spider embeddings for the edge-coloring side.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("bad parameters ({0}, {1}, {2}): need 1 <= i <= j <= k")]
    BadParameters(usize, usize, usize),
    #[error("pattern has {0} vertices, limit is {1}")]
    PatternTooLarge(usize, usize),
}

/// An injective embedding of a pattern into a host graph;
/// `mapping[pattern vertex] = host vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatch {
    pub mapping: Vec<usize>,
    pub induced: bool,
}

pub fn claw() -> Graph {
    build_spider(1, 1, 1).expect("claw parameters are valid")
}

pub fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

pub fn k4() -> Graph {
    Graph::complete(4)
}

pub fn c5() -> Graph {
    Graph::cycle(5)
}

/// Generalized net N_{i,j,k}: a triangle whose vertices start vertex-disjoint
/// pendant paths of lengths i, j, k. Vertices 0,1,2 form the triangle; legs
/// follow in order.
pub fn build_net(i: usize, j: usize, k: usize) -> Result<Graph, PatternError> {
    if i < 1 || i > j || j > k {
        return Err(PatternError::BadParameters(i, j, k));
    }
    let n = 3 + i + j + k;
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut next = 3;
    for (root, len) in [(0, i), (1, j), (2, k)] {
        let mut prev = root;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("net is simple"))
}

/// Spider S_{i,j,k}: three paths of lengths i, j, k sharing one end vertex.
/// Vertex 0 is the center; legs follow in order.
pub fn build_spider(i: usize, j: usize, k: usize) -> Result<Graph, PatternError> {
    if i < 1 || i > j || j > k {
        return Err(PatternError::BadParameters(i, j, k));
    }
    let n = 1 + i + j + k;
    let mut edges = Vec::new();
    let mut next = 1;
    for len in [i, j, k] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("spider is simple"))
}

pub const DEFAULT_PATTERN_LIMIT: usize = 12;

/// First induced embedding of `pattern` into `host` in canonical search
/// order, or `None`. Patterns are capped at [`DEFAULT_PATTERN_LIMIT`]
/// vertices.
pub fn find_induced(pattern: &Graph, host: &Graph) -> Result<Option<PatternMatch>, PatternError> {
    find_induced_with_limit(pattern, host, DEFAULT_PATTERN_LIMIT)
}

pub fn find_induced_with_limit(
    pattern: &Graph,
    host: &Graph,
    limit: usize,
) -> Result<Option<PatternMatch>, PatternError> {
    if pattern.n() > limit {
        return Err(PatternError::PatternTooLarge(pattern.n(), limit));
    }
    if pattern.n() > host.n() {
        return Ok(None);
    }
    // Search in BFS order from pattern vertex 0 so every vertex after the
    // first is constrained by an already-assigned neighbor.
    let order = bfs_order(pattern);
    let mut image = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    let found = assign(pattern, host, &order, 0, &mut image, &mut used);
    Ok(found.then_some(PatternMatch {
        mapping: image,
        induced: true,
    }))
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn assign(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    pos: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let pv = order[pos];
    let anchored = pattern
        .neighbors(pv)
        .iter()
        .find(|&&q| image[q] != usize::MAX)
        .map(|&q| image[q]);
    let try_candidate = |cand: usize, image: &mut Vec<usize>, used: &mut Vec<bool>| -> bool {
        if used[cand] || host.degree(cand) < pattern.degree(pv) {
            return false;
        }
        for q in 0..pattern.n() {
            if image[q] == usize::MAX {
                continue;
            }
            if pattern.has_edge(pv, q) != host.has_edge(cand, image[q]) {
                return false;
            }
        }
        image[pv] = cand;
        used[cand] = true;
        if assign(pattern, host, order, pos + 1, image, used) {
            return true;
        }
        image[pv] = usize::MAX;
        used[cand] = false;
        false
    };
    match anchored {
        Some(anchor) => {
            for &cand in host.neighbors(anchor) {
                if try_candidate(cand, image, used) {
                    return true;
                }
            }
        }
        None => {
            for cand in 0..host.n() {
                if try_candidate(cand, image, used) {
                    return true;
                }
            }
        }
    }
    false
}

/// Not-necessarily-induced embedding of the spider S_{i,j,k} into `host`:
/// three internally disjoint paths of lengths i, j, k leaving a common
/// center. The mapping indexes vertices as in [`build_spider`].
pub fn find_spider_subgraph(
    host: &Graph,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<PatternMatch>, PatternError> {
    if i < 1 || i > j || j > k {
        return Err(PatternError::BadParameters(i, j, k));
    }
    let total = 1 + i + j + k;
    if total > host.n() {
        return Ok(None);
    }
    let lens = [i, j, k];
    for center in 0..host.n() {
        if host.degree(center) < 3 {
            continue;
        }
        let mut walk = vec![center];
        let mut used = vec![false; host.n()];
        used[center] = true;
        if grow_legs(host, &lens, 0, center, &mut walk, &mut used) {
            return Ok(Some(PatternMatch {
                mapping: walk,
                induced: false,
            }));
        }
    }
    Ok(None)
}

fn grow_legs(
    host: &Graph,
    lens: &[usize; 3],
    leg: usize,
    center: usize,
    walk: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if leg == 3 {
        return true;
    }
    grow_one_leg(host, lens, leg, 0, center, center, walk, used)
}

#[allow(clippy::too_many_arguments)]
fn grow_one_leg(
    host: &Graph,
    lens: &[usize; 3],
    leg: usize,
    step: usize,
    center: usize,
    at: usize,
    walk: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if step == lens[leg] {
        return grow_legs(host, lens, leg + 1, center, walk, used);
    }
    for &w in host.neighbors(at) {
        if used[w] {
            continue;
        }
        used[w] = true;
        walk.push(w);
        if grow_one_leg(host, lens, leg, step + 1, center, w, walk, used) {
            return true;
        }
        walk.pop();
        used[w] = false;
    }
    false
}

/// Checks that a match is a valid embedding of `pattern` into `host`:
/// injective, edges map to edges, and (when flagged induced) non-edges map
/// to non-edges.
pub fn verify_match(pattern: &Graph, host: &Graph, m: &PatternMatch) -> bool {
    if m.mapping.len() != pattern.n() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for &x in &m.mapping {
        if x >= host.n() || !seen.insert(x) {
            return false;
        }
    }
    for u in 0..pattern.n() {
        for v in u + 1..pattern.n() {
            let pe = pattern.has_edge(u, v);
            let he = host.has_edge(m.mapping[u], m.mapping[v]);
            if pe && !he {
                return false;
            }
            if m.induced && pe != he {
                return false;
            }
        }
    }
    true
}
