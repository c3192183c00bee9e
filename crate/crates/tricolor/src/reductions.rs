//! Colorability-preserving reductions on subcubic triangle-free graphs:
//! delete degree-1 vertices, delete adjacent degree-2 pairs, delete induced
//! 4-cycles with two opposite degree-2 vertices, and split at cut-edges.
//! Every application is logged in a trace that can replay the removals
//! forward and lift a 3-edge-coloring of the reduced graph back.

use crate::edge_color::EdgeColoring;
use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("trace does not match the coloring: {0}")]
    LiftImpossible(String),
}

/// One reduction application; `edges` lists every edge removed by the step,
/// with enough structure to undo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Degree-1 vertex deleted together with its single edge.
    R1 { v: usize, edge: (usize, usize) },
    /// Adjacent degree-2 pair deleted; `edges` holds the removed edges.
    R2 {
        u: usize,
        v: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Induced 4-cycle deleted; `cycle` is in cycle order with the two
    /// degree-2 vertices at positions 0 and 2. `edges` holds the removed
    /// edges (the four cycle edges plus up to two external ones).
    R3 {
        cycle: [usize; 4],
        edges: Vec<(usize, usize)>,
    },
    /// Cut-edge removed, splitting a block.
    R4 { bridge: (usize, usize) },
}

impl Step {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::R1 { .. } => "R1",
            Step::R2 { .. } => "R2",
            Step::R3 { .. } => "R3",
            Step::R4 { .. } => "R4",
        }
    }

    pub fn removed_edges(&self) -> Vec<(usize, usize)> {
        match self {
            Step::R1 { edge, .. } => vec![*edge],
            Step::R2 { edges, .. } | Step::R3 { edges, .. } => edges.clone(),
            Step::R4 { bridge } => vec![*bridge],
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Line format: step kind followed by the vertex list it removed (R4
    /// lists the bridge endpoints).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            match step {
                Step::R1 { v, .. } => out.push_str(&format!("R1 {v}\n")),
                Step::R2 { u, v, .. } => out.push_str(&format!("R2 {u} {v}\n")),
                Step::R3 { cycle, .. } => out.push_str(&format!(
                    "R3 {} {} {} {}\n",
                    cycle[0], cycle[1], cycle[2], cycle[3]
                )),
                Step::R4 { bridge: (u, v) } => out.push_str(&format!("R4 {u} {v}\n")),
            }
        }
        out
    }

    /// Replays the removals forward on `h`, producing the reduced graph.
    pub fn replay(&self, h: &Graph) -> Graph {
        let mut removed = std::collections::HashSet::new();
        for step in &self.steps {
            for (u, v) in step.removed_edges() {
                removed.insert((u.min(v), u.max(v)));
            }
        }
        let edges: Vec<_> = h
            .edges()
            .iter()
            .copied()
            .filter(|e| !removed.contains(e))
            .collect();
        Graph::from_edges(h.n(), &edges).expect("replay preserves simplicity")
    }
}

/// Applies the reductions exhaustively (R1 before R2 before R3, lowest
/// witness first; cut-edges removed when nothing else applies) and returns
/// the reduced graph on the same vertex set, removed vertices isolated.
pub fn reduce(h: &Graph) -> (Graph, ReductionTrace) {
    let mut cur = h.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(step) = find_r1(&cur)
            .or_else(|| find_r2(&cur))
            .or_else(|| find_r3(&cur))
            .or_else(|| find_bridge_step(&cur))
        {
            cur = remove_step(&cur, &step);
            steps.push(step);
        } else {
            break;
        }
    }
    (cur, ReductionTrace { steps })
}

fn find_r1(g: &Graph) -> Option<Step> {
    (0..g.n()).find(|&v| g.degree(v) == 1).map(|v| {
        let a = g.neighbors(v)[0];
        Step::R1 {
            v,
            edge: (v.min(a), v.max(a)),
        }
    })
}

fn find_r2(g: &Graph) -> Option<Step> {
    for u in 0..g.n() {
        if g.degree(u) != 2 {
            continue;
        }
        for &v in g.neighbors(u) {
            if g.degree(v) == 2 && u < v {
                let mut edges = Vec::new();
                for &x in g.neighbors(u) {
                    edges.push((u.min(x), u.max(x)));
                }
                for &x in g.neighbors(v) {
                    if x != u {
                        edges.push((v.min(x), v.max(x)));
                    }
                }
                edges.sort_unstable();
                edges.dedup();
                return Some(Step::R2 { u, v, edges });
            }
        }
    }
    None
}

fn find_r3(g: &Graph) -> Option<Step> {
    for a in 0..g.n() {
        let nb = g.neighbors(a);
        for (bi, &b) in nb.iter().enumerate() {
            if b < a {
                continue;
            }
            for &d in nb.iter().skip(bi + 1) {
                if d < a || g.has_edge(b, d) {
                    continue;
                }
                // Common neighbor c completing an induced 4-cycle a-b-c-d.
                for &c in g.neighbors(b) {
                    if c <= a || c == d || !g.has_edge(c, d) || g.has_edge(a, c) {
                        continue;
                    }
                    let cycle = if g.degree(a) == 2 && g.degree(c) == 2 {
                        Some([a, b, c, d])
                    } else if g.degree(b) == 2 && g.degree(d) == 2 {
                        Some([b, c, d, a])
                    } else {
                        None
                    };
                    if let Some(cycle) = cycle {
                        let mut edges = Vec::new();
                        for &w in &cycle {
                            for &x in g.neighbors(w) {
                                edges.push((w.min(x), w.max(x)));
                            }
                        }
                        edges.sort_unstable();
                        edges.dedup();
                        return Some(Step::R3 { cycle, edges });
                    }
                }
            }
        }
    }
    None
}

fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut out = Vec::new();
    // Iterative DFS with explicit parent edges.
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx == 0 {
                disc[v] = timer;
                low[v] = timer;
                timer += 1;
            }
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push((p.min(v), p.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn find_bridge_step(g: &Graph) -> Option<Step> {
    bridges(g).first().map(|&bridge| Step::R4 { bridge })
}

fn remove_step(g: &Graph, step: &Step) -> Graph {
    let removed: std::collections::HashSet<_> = step.removed_edges().into_iter().collect();
    let edges: Vec<_> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !removed.contains(e))
        .collect();
    Graph::from_edges(g.n(), &edges).expect("removal preserves simplicity")
}

/// True when no reduction applies: minimum degree >= 2 (ignoring isolated
/// vertices), no two adjacent degree-2 vertices, no induced 4-cycle with two
/// opposite degree-2 vertices, and no cut-edges.
pub fn is_reduced(g: &Graph) -> bool {
    is_r123_minimal(g) && !has_cut_edge(g)
}

/// Minimal with respect to the three vertex-deleting reductions only.
pub fn is_r123_minimal(g: &Graph) -> bool {
    find_r1(g).is_none() && find_r2(g).is_none() && find_r3(g).is_none()
}

pub fn has_cut_edge(g: &Graph) -> bool {
    !bridges(g).is_empty()
}

/// Undoes a trace in reverse, extending a proper (<= 3)-edge-coloring of the
/// reduced graph to one of the original graph `h`.
pub fn lift_coloring(
    h: &Graph,
    trace: &ReductionTrace,
    ec: &EdgeColoring,
) -> Result<EdgeColoring, LiftError> {
    let reduced = trace.replay(h);
    if !ec.is_proper(&reduced) {
        return Err(LiftError::LiftImpossible(
            "input coloring is not proper on the reduced graph".into(),
        ));
    }
    if ec.color_count() > 3 {
        return Err(LiftError::LiftImpossible("more than 3 colors".into()));
    }
    let mut state = LiftState::new(h, &reduced, ec);
    for step in trace.steps.iter().rev() {
        state.undo(step)?;
    }
    let colors: Vec<u32> = h
        .edges()
        .iter()
        .map(|&(u, v)| state.color_of(u, v))
        .collect();
    if colors.iter().any(|&c| c == 0) {
        return Err(LiftError::LiftImpossible("an edge stayed uncolored".into()));
    }
    let lifted = EdgeColoring::new(colors, 3);
    debug_assert!(lifted.is_proper(h));
    Ok(lifted)
}

struct LiftState {
    adj: Vec<Vec<usize>>,
    color: std::collections::HashMap<(usize, usize), u32>,
}

impl LiftState {
    fn new(h: &Graph, reduced: &Graph, ec: &EdgeColoring) -> Self {
        let mut color = std::collections::HashMap::new();
        let mut adj = vec![Vec::new(); h.n()];
        for (eid, &(u, v)) in reduced.edges().iter().enumerate() {
            color.insert((u, v), ec.color(eid));
            adj[u].push(v);
            adj[v].push(u);
        }
        LiftState { adj, color }
    }

    fn color_of(&self, u: usize, v: usize) -> u32 {
        *self.color.get(&(u.min(v), u.max(v))).unwrap_or(&0)
    }

    fn used_at(&self, v: usize) -> u64 {
        self.adj[v]
            .iter()
            .map(|&w| 1u64 << self.color_of(v, w))
            .fold(0, |acc, bit| acc | bit)
    }

    fn free_at(&self, v: usize) -> Option<u32> {
        let used = self.used_at(v);
        (1..=3).find(|&c| used & (1 << c) == 0)
    }

    fn insert(&mut self, u: usize, v: usize, c: u32) {
        self.color.insert((u.min(v), u.max(v)), c);
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = std::collections::HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn undo(&mut self, step: &Step) -> Result<(), LiftError> {
        match step {
            Step::R1 { v, edge: (a, b) } => {
                let other = if a == v { *b } else { *a };
                let c = self
                    .free_at(other)
                    .ok_or_else(|| LiftError::LiftImpossible(format!("no free color at {other}")))?;
                self.insert(*a, *b, c);
                Ok(())
            }
            Step::R2 { u, v, edges } => {
                // External edges first (each far endpoint sees at most two
                // colors), then the middle edge.
                for &(a, b) in edges {
                    if (a, b) == (*u.min(v), *u.max(v)) {
                        continue;
                    }
                    let far = if a == *u || a == *v { b } else { a };
                    let c = self.free_at(far).ok_or_else(|| {
                        LiftError::LiftImpossible(format!("no free color at {far}"))
                    })?;
                    self.insert(a, b, c);
                }
                let used = self.used_at(*u) | self.used_at(*v);
                let c = (1..=3).find(|&c| used & (1 << c) == 0).ok_or_else(|| {
                    LiftError::LiftImpossible("no free color for the middle edge".into())
                })?;
                self.insert(*u, *v, c);
                Ok(())
            }
            Step::R3 { cycle, edges } => {
                let in_cycle = |x: usize| cycle.contains(&x);
                for &(a, b) in edges {
                    if in_cycle(a) && in_cycle(b) {
                        continue;
                    }
                    let far = if in_cycle(a) { b } else { a };
                    let c = self.free_at(far).ok_or_else(|| {
                        LiftError::LiftImpossible(format!("no free color at {far}"))
                    })?;
                    self.insert(a, b, c);
                }
                // The four cycle edges: a tiny exhaustive search against the
                // two external constraints always succeeds.
                let ring = [
                    (cycle[0], cycle[1]),
                    (cycle[1], cycle[2]),
                    (cycle[2], cycle[3]),
                    (cycle[3], cycle[0]),
                ];
                let forbidden: Vec<u64> = cycle.iter().map(|&w| self.used_at(w)).collect();
                let mut assigned = None;
                'search: for c0 in 1..=3u32 {
                    for c1 in 1..=3u32 {
                        for c2 in 1..=3u32 {
                            for c3 in 1..=3u32 {
                                let cs = [c0, c1, c2, c3];
                                let ok = (0..4).all(|t| {
                                    cs[t] != cs[(t + 1) % 4]
                                        && forbidden[t] & (1 << cs[t]) == 0
                                        && forbidden[(t + 1) % 4] & (1 << cs[t]) == 0
                                });
                                if ok {
                                    assigned = Some(cs);
                                    break 'search;
                                }
                            }
                        }
                    }
                }
                let cs = assigned.ok_or_else(|| {
                    LiftError::LiftImpossible("4-cycle cannot be recolored".into())
                })?;
                for (t, &(a, b)) in ring.iter().enumerate() {
                    self.insert(a, b, cs[t]);
                }
                Ok(())
            }
            Step::R4 { bridge: (u, v) } => {
                let fu = self
                    .free_at(*u)
                    .ok_or_else(|| LiftError::LiftImpossible(format!("no free color at {u}")))?;
                let fv = self
                    .free_at(*v)
                    .ok_or_else(|| LiftError::LiftImpossible(format!("no free color at {v}")))?;
                if fu != fv {
                    let used_v = self.used_at(*v);
                    if used_v & (1 << fu) != 0 {
                        // Swap colors fu <-> fv throughout v's component,
                        // which the bridge separates from u's.
                        let comp = self.component_of(*v);
                        let comp_set: std::collections::HashSet<_> =
                            comp.iter().copied().collect();
                        debug_assert!(!comp_set.contains(u));
                        for &x in &comp {
                            for w in self.adj[x].clone() {
                                if x < w && comp_set.contains(&w) {
                                    let key = (x, w);
                                    let c = self.color[&key];
                                    let swapped = if c == fu {
                                        fv
                                    } else if c == fv {
                                        fu
                                    } else {
                                        c
                                    };
                                    self.color.insert(key, swapped);
                                }
                            }
                        }
                    }
                }
                self.insert(*u, *v, fu);
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_color::chromatic_index_backtracking;

    fn d7() -> Graph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                if (a, b) != (0, 3) {
                    edges.push((a, b));
                }
            }
        }
        edges.push((0, 6));
        edges.push((6, 3));
        Graph::from_edges(7, &edges).unwrap()
    }

    #[test]
    fn trees_vanish() {
        let (reduced, trace) = reduce(&Graph::path(4));
        assert_eq!(reduced.m(), 0);
        assert!(!trace.is_empty());
    }

    #[test]
    fn c4_vanishes_and_lifts_back() {
        let c4 = Graph::cycle(4);
        let (reduced, trace) = reduce(&c4);
        assert_eq!(reduced.m(), 0);
        assert!(trace.steps.iter().any(|s| s.kind() == "R2"));
        let lifted = lift_coloring(&c4, &trace, &EdgeColoring::new(Vec::new(), 0)).unwrap();
        assert!(lifted.is_proper(&c4));
    }

    #[test]
    fn d7_is_already_reduced() {
        let (reduced, trace) = reduce(&d7());
        assert!(trace.is_empty());
        assert_eq!(reduced.edges(), d7().edges());
        assert!(is_reduced(&d7()));
    }

    #[test]
    fn r3_fires_on_k23() {
        // K2,3 has no degree-1 vertices and no adjacent degree-2 pair, but
        // the square 0-2-1-3 has the two degree-2 vertices 2, 3 opposite.
        let g = Graph::complete_bipartite(2, 3);
        let (reduced, trace) = reduce(&g);
        assert!(trace.steps.iter().any(|s| s.kind() == "R3"), "{trace:?}");
        assert_eq!(reduced.m(), 0);
    }

    #[test]
    fn lift_undoes_r3_with_shared_external_endpoint() {
        // Reducing K2,3 removes a square whose two external edges both end
        // at the leftover vertex; the lift must recolor all six edges.
        let g = Graph::complete_bipartite(2, 3);
        let (reduced, trace) = reduce(&g);
        let ec = chromatic_index_backtracking(&reduced, 3).unwrap().unwrap();
        let lifted = lift_coloring(&g, &trace, &ec).unwrap();
        assert!(lifted.is_proper(&g));
    }

    #[test]
    fn replay_matches_reduce() {
        for g in [
            Graph::path(7),
            Graph::cycle(9),
            d7(),
            Graph::complete_bipartite(3, 3),
        ] {
            let (reduced, trace) = reduce(&g);
            assert_eq!(trace.replay(&g).edges(), reduced.edges());
        }
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut edges: Vec<_> = (0..9).map(|t| (t, (t + 1) % 9)).collect();
        edges.extend([(0, 9), (9, 10)]);
        let g = Graph::from_edges(11, &edges).unwrap();
        let (reduced, _) = reduce(&g);
        let (again, trace2) = reduce(&reduced);
        assert!(trace2.is_empty());
        assert_eq!(again.edges(), reduced.edges());
    }

    #[test]
    fn lift_roundtrip_on_pendant_cycle() {
        // C9 with a pendant path of length 2; reduction strips the path,
        // lifting must recolor it.
        let mut edges: Vec<_> = (0..9).map(|t| (t, (t + 1) % 9)).collect();
        edges.extend([(0, 9), (9, 10)]);
        let g = Graph::from_edges(11, &edges).unwrap();
        let (reduced, trace) = reduce(&g);
        let ec = chromatic_index_backtracking(&reduced, 3).unwrap().unwrap();
        let lifted = lift_coloring(&g, &trace, &ec).unwrap();
        assert!(lifted.is_proper(&g));
    }

    #[test]
    fn lift_empty_trace_is_identity() {
        // K3,3 is reduced; lifting an empty trace returns the coloring as is.
        let g = Graph::complete_bipartite(3, 3);
        let (reduced, trace) = reduce(&g);
        assert!(trace.is_empty());
        assert_eq!(reduced.edges(), g.edges());
        let ec = chromatic_index_backtracking(&reduced, 3).unwrap().unwrap();
        let lifted = lift_coloring(&g, &trace, &ec).unwrap();
        assert_eq!(lifted.colors(), ec.colors());
    }

    /// Reduced, bridgeless, 3-edge-colorable block with one degree-2 vertex:
    /// C9 plus the disjoint chords (1,4), (2,6), (3,8).
    fn colorable_block_edges(base: usize) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = (0..9).map(|t| (base + t, base + (t + 1) % 9)).collect();
        edges.extend([(base + 1, base + 4), (base + 2, base + 6), (base + 3, base + 8)]);
        edges
    }

    #[test]
    fn lift_across_bridge_with_color_swap() {
        // Two colorable blocks joined by a bridge between their degree-2
        // vertices; reduce cuts the bridge and the lift recolors it, Kempe
        // swapping one side when the free colors disagree.
        let block = Graph::from_edges(9, &colorable_block_edges(0)).unwrap();
        assert!(is_reduced(&block));
        assert!(chromatic_index_backtracking(&block, 3).unwrap().is_some());

        let mut edges = colorable_block_edges(0);
        edges.extend(colorable_block_edges(9));
        edges.push((0, 9));
        let g = Graph::from_edges(18, &edges).unwrap();
        let (reduced, trace) = reduce(&g);
        assert!(trace.steps.iter().any(|s| s.kind() == "R4"), "{trace:?}");
        let ec = chromatic_index_backtracking(&reduced, 3).unwrap().unwrap();
        let lifted = lift_coloring(&g, &trace, &ec).unwrap();
        assert!(lifted.is_proper(&g));
    }

    #[test]
    fn reduced_blocks_satisfy_all_minimality_conditions() {
        let mut edges: Vec<_> = (0..9).map(|t| (t, (t + 1) % 9)).collect();
        edges.extend([(0, 9), (9, 10)]);
        let g = Graph::from_edges(11, &edges).unwrap();
        let (reduced, _) = reduce(&g);
        assert!(is_reduced(&reduced));
        assert!(is_reduced(&reduce(&d7()).0));
    }
}
