//! Decision pipelines. The top-level decider validates class membership,
//! reconstructs the root graph, reduces it, and settles each reduced block
//! by the cheapest applicable structural argument: bipartite coloring, the
//! odd-cycle lemma, family recognition, the gadget-necklace decomposition,
//! the Hamiltonian lemmas, or exhaustive search. Every verdict carries a
//! certificate that [`Verdict::verify`] can re-check independently.

use crate::edge_color::{
    self, chromatic_index_backtracking, color_bipartite, color_hamiltonian_odd,
    color_near_hamiltonian, find_ham_odd_witness, find_near_ham_witness, EdgeColoring, HamOddCase,
};
use crate::families::{self, FamilyId};
use crate::graph::{neighborhood_levels, shortest_induced_odd_cycle, Graph, OddCycle};
use crate::linegraph::{self, line_graph, root_graph_with_policy, K3Root};
use crate::patterns::{self, PatternMatch};
use crate::reductions;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecideError {
    #[error("no theorem applies and the exact oracle budget is exceeded ({0} edges)")]
    OracleBudgetExceeded(usize),
    #[error("bad odd-hole length {0}")]
    BadLength(usize),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// Total assignment vertex -> color in `1..=c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<u32>,
    c: u32,
}

impl VertexColoring {
    pub fn new(colors: Vec<u32>, c: u32) -> Self {
        VertexColoring { colors, c }
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_count(&self) -> u32 {
        self.c
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        if self.colors.len() != g.n() {
            return false;
        }
        if self.colors.iter().any(|&c| c == 0 || c > self.c) {
            return false;
        }
        g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Which side of the line-graph correspondence a verdict talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Vertex coloring of a (claw, diamond)-free graph.
    Vertex,
    /// Edge coloring of a subcubic triangle-free graph.
    Edge,
}

#[derive(Debug, Clone)]
pub enum ColorCert {
    Vertex(VertexColoring),
    Edge(EdgeColoring),
}

/// Witness that an input lies outside the class a decider was asked about.
#[derive(Debug, Clone)]
pub enum OutOfClassWitness {
    Claw(PatternMatch),
    Diamond(PatternMatch),
    InducedNet {
        i: usize,
        j: usize,
        k: usize,
        found: PatternMatch,
    },
    InducedC5(PatternMatch),
    SpiderSubgraph {
        i: usize,
        j: usize,
        k: usize,
        found: PatternMatch,
    },
    MissingC5,
    NotInRootClass(String),
    NotConnected,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    /// A proper 3-coloring (vertex or edge side).
    Colorable(ColorCert),
    ContainsK4(PatternMatch),
    /// An induced embedding of a non-3-colorable family member; `member` is
    /// the concrete graph the mapping indexes into, so the certificate can
    /// be checked without trusting the recognizer.
    Exceptional {
        family: FamilyId,
        member: Graph,
        embedding: PatternMatch,
    },
    OutOfClass(OutOfClassWitness),
    /// Certified non-3-colorable by exhaustive search; no named family
    /// applies.
    NotColorableExhaustive,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub side: Side,
    pub provenance: String,
}

impl Verdict {
    pub fn is_colorable(&self) -> bool {
        matches!(self.outcome, Outcome::Colorable(_))
    }

    pub fn certifies_non_colorable(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::ContainsK4(_) | Outcome::Exceptional { .. } | Outcome::NotColorableExhaustive
        )
    }

    /// Re-checks the verdict against the graph it was produced for, without
    /// trusting the decision pipeline.
    pub fn verify(&self, host: &Graph) -> bool {
        match &self.outcome {
            Outcome::Colorable(ColorCert::Vertex(vc)) => {
                self.side == Side::Vertex && vc.color_count() <= 3 && vc.is_proper(host)
            }
            Outcome::Colorable(ColorCert::Edge(ec)) => {
                self.side == Side::Edge && ec.color_count() <= 3 && ec.is_proper(host)
            }
            Outcome::ContainsK4(m) => patterns::verify_match(&patterns::k4(), host, m),
            Outcome::Exceptional {
                member, embedding, ..
            } => {
                patterns::verify_match(member, host, embedding)
                    && member_is_non_colorable(member, self.side)
            }
            Outcome::OutOfClass(witness) => verify_out_of_class(witness, host),
            Outcome::NotColorableExhaustive => match self.side {
                Side::Edge => matches!(chromatic_index_backtracking(host, 3), Ok(None)),
                Side::Vertex => host
                    .components()
                    .iter()
                    .any(|comp| {
                        let (sub, _) = host.induced_subgraph(comp);
                        vertex_side_non_colorable_oracle(&sub).unwrap_or(false)
                    }),
            },
        }
    }
}

fn verify_out_of_class(witness: &OutOfClassWitness, host: &Graph) -> bool {
    match witness {
        OutOfClassWitness::Claw(m) => patterns::verify_match(&patterns::claw(), host, m),
        OutOfClassWitness::Diamond(m) => patterns::verify_match(&patterns::diamond(), host, m),
        OutOfClassWitness::InducedNet { i, j, k, found } => patterns::build_net(*i, *j, *k)
            .map(|net| patterns::verify_match(&net, host, found))
            .unwrap_or(false),
        OutOfClassWitness::InducedC5(m) => patterns::verify_match(&patterns::c5(), host, m),
        OutOfClassWitness::SpiderSubgraph { i, j, k, found } => {
            patterns::build_spider(*i, *j, *k)
                .map(|s| patterns::verify_match(&s, host, found))
                .unwrap_or(false)
        }
        OutOfClassWitness::MissingC5 => patterns::find_induced(&patterns::c5(), host)
            .map(|m| m.is_none())
            .unwrap_or(false),
        OutOfClassWitness::NotInRootClass(_) => {
            !crate::graph::validate_root_class(host).all_ok()
        }
        OutOfClassWitness::NotConnected => !host.is_connected(),
    }
}

/// Rechecks that an exceptional member really is non-3-colorable, by the
/// exact oracle on the edge side (going through the root graph when the
/// member lives on the vertex side).
fn member_is_non_colorable(member: &Graph, side: Side) -> bool {
    match side {
        Side::Edge => matches!(chromatic_index_backtracking(member, 3), Ok(None)),
        Side::Vertex => vertex_side_non_colorable_oracle(member).unwrap_or(false),
    }
}

fn vertex_side_non_colorable_oracle(g: &Graph) -> Result<bool, DecideError> {
    match root_graph_with_policy(g, K3Root::Claw) {
        Ok((h, _)) => match chromatic_index_backtracking(&h, 3) {
            Ok(found) => Ok(found.is_none()),
            Err(edge_color::EdgeColorError::TooLarge { m, .. }) => {
                Err(DecideError::OracleBudgetExceeded(m))
            }
            Err(e) => Err(DecideError::Internal(e.to_string())),
        },
        Err(_) => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// Gadget necklace machinery
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    /// Crossing pair with a bar: end edges must match.
    A,
    /// Crossing pair without a bar: both behaviors.
    B,
    /// Anchor plus a bar to a one-footed partner past the span: both.
    C,
    /// Anchor plus a bar to a one-footed partner tucked inside: end edges
    /// must differ.
    D,
}

/// How a gadget constrains the colors of the two cycle edges entering its
/// span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityBehavior {
    SameColorEnds,
    DifferentColorEnds,
    Both,
}

/// One gadget of the necklace: a span of consecutive cycle positions plus
/// the outside vertices attached over it.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub span_start: usize,
    pub span_len: usize,
    pub outside: Vec<usize>,
}

impl Gadget {
    pub fn parity_behavior(&self) -> ParityBehavior {
        match self.kind {
            GadgetKind::A => ParityBehavior::SameColorEnds,
            GadgetKind::D => ParityBehavior::DifferentColorEnds,
            GadgetKind::B | GadgetKind::C => ParityBehavior::Both,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NecklaceDecomposition {
    pub gadgets: Vec<Gadget>,
    /// Cycle positions covered by no gadget.
    pub uncovered: Vec<usize>,
}

/// Diagnostic for a graph whose neighborhood structure around the cycle is
/// not a gadget necklace; carries the spider or C5 witness that must exist
/// when the theorem's hypotheses fail.
#[derive(Debug, Clone)]
pub struct StructureViolation {
    pub reason: String,
    pub spider: Option<PatternMatch>,
    pub induced_c5: Option<PatternMatch>,
}

impl std::fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "necklace structure violated: {}", self.reason)
    }
}

/// Splits the attachment structure around a shortest induced odd cycle into
/// gadgets. Expects the host to be reduced, subcubic, triangle-free, with
/// every vertex on the cycle or adjacent to it.
pub fn gadget_decompose(
    h: &Graph,
    q: &OddCycle,
) -> Result<NecklaceDecomposition, StructureViolation> {
    let p = q.len();
    let fail = |reason: &str| {
        Err(StructureViolation {
            reason: reason.to_string(),
            spider: patterns::find_spider_subgraph(h, 3, 3, 3)
                .ok()
                .flatten(),
            induced_c5: patterns::find_induced(&patterns::c5(), h).ok().flatten(),
        })
    };
    let mut pos = vec![usize::MAX; h.n()];
    for (t, &v) in q.vertices().iter().enumerate() {
        pos[v] = t;
    }
    let levels = match neighborhood_levels(h, q) {
        Ok(l) => l,
        Err(_) => return fail("cycle does not lie in the host"),
    };
    if !levels.level(2).is_empty() {
        return fail("a vertex has distance 2 from the cycle");
    }
    let outside: Vec<usize> = levels.level(1).to_vec();

    // Feet and bars of every outside vertex.
    #[derive(Clone)]
    struct Attachment {
        feet: Vec<usize>,
        anchor: Option<usize>,
        bar: Option<usize>,
    }
    let mut info: std::collections::HashMap<usize, Attachment> = std::collections::HashMap::new();
    for &w in &outside {
        let mut feet: Vec<usize> = h
            .neighbors(w)
            .iter()
            .filter(|&&x| pos[x] != usize::MAX)
            .map(|&x| pos[x])
            .collect();
        feet.sort_unstable();
        let bars: Vec<usize> = h
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&x| pos[x] == usize::MAX)
            .collect();
        if bars.len() > 1 {
            return fail("an outside vertex has two outside neighbors (P3 in N(Q))");
        }
        let anchor = match feet.len() {
            1 => None,
            2 => {
                let (a, b) = (feet[0], feet[1]);
                if (a + 2) % p == b {
                    Some(a)
                } else if (b + 2) % p == a {
                    Some(b)
                } else {
                    return fail("two feet are not at cycle distance 2");
                }
            }
            0 => return fail("an outside vertex with no foot"),
            _ => return fail("an outside vertex has three feet (shorter odd cycle)"),
        };
        if feet.len() == 1 && bars.is_empty() {
            return fail("a one-footed outside vertex has degree 1 (not reduced)");
        }
        info.insert(
            w,
            Attachment {
                feet,
                anchor,
                bar: bars.first().copied(),
            },
        );
    }

    let mut assigned: std::collections::HashSet<usize> = std::collections::HashSet::new();
    let mut gadgets: Vec<Gadget> = Vec::new();

    // Barred pairs first.
    let mut outside_sorted = outside.clone();
    outside_sorted.sort_unstable();
    for &w in &outside_sorted {
        if assigned.contains(&w) {
            continue;
        }
        let aw = info[&w].clone();
        let Some(partner) = aw.bar else { continue };
        if assigned.contains(&partner) {
            return fail("an outside vertex is claimed by two gadgets");
        }
        let ap = info[&partner].clone();
        let gadget = match (aw.anchor, ap.anchor) {
            (Some(i), Some(j)) => {
                let lo = if (i + 1) % p == j {
                    i
                } else if (j + 1) % p == i {
                    j
                } else {
                    return fail("barred anchors do not interleave");
                };
                Gadget {
                    kind: GadgetKind::A,
                    span_start: lo,
                    span_len: 4,
                    outside: vec![w, partner],
                }
            }
            (Some(i), None) | (None, Some(i)) => {
                let single = if aw.anchor.is_some() { partner } else { w };
                let f = info[&single].feet[0];
                if f == (i + 1) % p {
                    Gadget {
                        kind: GadgetKind::D,
                        span_start: i,
                        span_len: 3,
                        outside: vec![w, partner],
                    }
                } else if f == (i + 3) % p {
                    Gadget {
                        kind: GadgetKind::C,
                        span_start: i,
                        span_len: 4,
                        outside: vec![w, partner],
                    }
                } else if f == (i + p - 1) % p {
                    Gadget {
                        kind: GadgetKind::C,
                        span_start: f,
                        span_len: 4,
                        outside: vec![w, partner],
                    }
                } else {
                    return fail("barred partner's foot is outside the window");
                }
            }
            (None, None) => return fail("two adjacent one-footed vertices (not reduced)"),
        };
        assigned.insert(w);
        assigned.insert(partner);
        gadgets.push(gadget);
    }

    // Remaining vertices are bar-free anchors; pair interleaved ones.
    let mut anchors: Vec<(usize, usize)> = outside_sorted
        .iter()
        .filter(|w| !assigned.contains(w))
        .map(|&w| match info[&w].anchor {
            Some(i) => Ok((i, w)),
            None => Err(()),
        })
        .collect::<Result<_, _>>()
        .map_err(|_| StructureViolation {
            reason: "a one-footed vertex has no bar partner".into(),
            spider: patterns::find_spider_subgraph(h, 3, 3, 3).ok().flatten(),
            induced_c5: patterns::find_induced(&patterns::c5(), h).ok().flatten(),
        })?;
    anchors.sort_unstable();
    let anchor_at = |anchors: &[(usize, usize)], t: usize| {
        anchors.iter().find(|&&(i, _)| i == t).map(|&(_, w)| w)
    };
    let mut paired: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for &(i, w) in &anchors {
        if paired.contains(&w) {
            continue;
        }
        let next = anchor_at(&anchors, (i + 1) % p).filter(|x| !paired.contains(x));
        match next {
            Some(w2) => {
                paired.insert(w);
                paired.insert(w2);
                gadgets.push(Gadget {
                    kind: GadgetKind::B,
                    span_start: i,
                    span_len: 4,
                    outside: vec![w, w2],
                });
            }
            None => {
                return fail("a lone crossing anchor has no interleaved partner");
            }
        }
    }

    // Spans must tile without overlap.
    let mut covered = vec![false; p];
    for g in &gadgets {
        for t in 0..g.span_len {
            let at = (g.span_start + t) % p;
            if covered[at] {
                return fail("gadget spans overlap");
            }
            covered[at] = true;
        }
    }
    let uncovered: Vec<usize> = (0..p).filter(|&t| !covered[t]).collect();
    gadgets.sort_by_key(|g| g.span_start);
    Ok(NecklaceDecomposition { gadgets, uncovered })
}

/// Colors the necklace, or returns `None` exactly when the end-edge
/// constraint ring is unsatisfiable: no both-ways gadget and exactly one
/// difference constraint (one parity gadget or one uncovered vertex) among
/// otherwise equality-forcing gadgets.
pub fn color_necklace(
    h: &Graph,
    q: &OddCycle,
    decomp: &NecklaceDecomposition,
) -> Option<EdgeColoring> {
    let p = q.len();
    let seq = q.vertices();

    #[derive(Clone, Copy)]
    enum Constraint {
        Equal,
        Differ,
        Free,
    }
    // Segments around the ring in positional order.
    enum Segment<'a> {
        Gadget(&'a Gadget),
        Uncovered(usize),
    }
    let mut segments: Vec<(usize, Segment)> = decomp
        .gadgets
        .iter()
        .map(|g| (g.span_start, Segment::Gadget(g)))
        .chain(decomp.uncovered.iter().map(|&u| (u, Segment::Uncovered(u))))
        .collect();
    segments.sort_by_key(|&(start, _)| start);
    if segments.is_empty() {
        return None;
    }
    let seg_end = |s: &Segment| match s {
        Segment::Gadget(g) => (g.span_start + g.span_len - 1) % p,
        Segment::Uncovered(u) => *u,
    };
    let constraint = |s: &Segment| match s {
        Segment::Gadget(g) => match g.parity_behavior() {
            ParityBehavior::SameColorEnds => Constraint::Equal,
            ParityBehavior::DifferentColorEnds => Constraint::Differ,
            ParityBehavior::Both => Constraint::Free,
        },
        Segment::Uncovered(_) => Constraint::Differ,
    };

    let k = segments.len();
    // Boundary edge t sits between segment t and segment t+1: the cycle
    // edge leaving segment t's end.
    let boundary_edge: Vec<usize> = (0..k)
        .map(|t| {
            let end = seg_end(&segments[t].1);
            h.edge_id(seq[end], seq[(end + 1) % p]).expect("cycle edge")
        })
        .collect();
    // Segment t constrains boundary edges t-1 (left) and t (right).
    let mut colors = vec![0u32; k];
    fn solve(
        t: usize,
        k: usize,
        colors: &mut Vec<u32>,
        cons: &[(usize, usize, bool)],
    ) -> bool {
        if t == k {
            return true;
        }
        'outer: for c in 1..=3u32 {
            colors[t] = c;
            for &(x, y, must_eq) in cons {
                if colors[x] == 0 || colors[y] == 0 {
                    continue;
                }
                if x == y {
                    if must_eq {
                        continue;
                    }
                    colors[t] = 0;
                    return false;
                }
                if must_eq != (colors[x] == colors[y]) {
                    continue 'outer;
                }
            }
            if solve(t + 1, k, colors, cons) {
                return true;
            }
        }
        colors[t] = 0;
        false
    }
    let mut cons: Vec<(usize, usize, bool)> = Vec::new();
    for (t, (_, seg)) in segments.iter().enumerate() {
        let left = (t + k - 1) % k;
        match constraint(seg) {
            Constraint::Equal => cons.push((left, t, true)),
            Constraint::Differ => cons.push((left, t, false)),
            Constraint::Free => {}
        }
    }
    // Self-constraints (single segment) make Differ unsatisfiable outright.
    if k == 1 {
        if let Some(&(x, y, must_eq)) = cons.first() {
            if x == y && !must_eq {
                return None;
            }
        }
    }
    if !solve(0, k, &mut colors, &cons) {
        return None;
    }

    let mut edge_colors = vec![0u32; h.m()];
    for (t, &e) in boundary_edge.iter().enumerate() {
        edge_colors[e] = colors[t];
    }

    // Fill gadget interiors against the fixed boundary colors.
    for g in &decomp.gadgets {
        let mut verts: Vec<usize> = (0..g.span_len)
            .map(|t| seq[(g.span_start + t) % p])
            .collect();
        verts.extend(&g.outside);
        let vset: std::collections::HashSet<usize> = verts.iter().copied().collect();
        let interior: Vec<usize> = h
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| vset.contains(&u) && vset.contains(&v))
            .map(|(eid, _)| eid)
            .collect();
        if !fill_region(h, &interior, &mut edge_colors) {
            debug_assert!(false, "gadget interior must be colorable: {g:?}");
            return None;
        }
    }
    debug_assert!(edge_colors.iter().all(|&c| c != 0));
    let ec = EdgeColoring::new(edge_colors, 3);
    debug_assert!(ec.is_proper(h));
    Some(ec)
}

/// Backtracking over the uncolored edges of a small region, respecting the
/// already-fixed colors elsewhere.
fn fill_region(h: &Graph, region: &[usize], colors: &mut [u32]) -> bool {
    let next = region.iter().position(|&e| colors[e] == 0);
    let Some(idx) = next else { return true };
    let e = region[idx];
    let (u, v) = h.edges()[e];
    for c in 1..=3u32 {
        let clash = h
            .neighbors(u)
            .iter()
            .map(|&w| h.edge_id(u, w).unwrap())
            .chain(h.neighbors(v).iter().map(|&w| h.edge_id(v, w).unwrap()))
            .any(|other| other != e && colors[other] == c);
        if clash {
            continue;
        }
        colors[e] = c;
        if fill_region(h, region, colors) {
            return true;
        }
        colors[e] = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// Odd-hole coloring and the first-neighborhood extension
// ---------------------------------------------------------------------------

/// 3-colors an odd hole following the residue recipes; for every length at
/// least 7 consecutive color pairs differ from the pair two steps later,
/// cyclically. (For length 5 no proper 3-coloring satisfies the cyclic pair
/// property: every one has three pairs {1,2} among five cyclic positions.)
pub fn color_odd_hole(p: usize) -> Result<Vec<u32>, DecideError> {
    if p < 5 || p % 2 == 0 {
        return Err(DecideError::BadLength(p));
    }
    let mut colors: Vec<u32> = match p % 3 {
        0 => Vec::new(),
        1 => vec![1, 2, 1, 3],
        _ if p == 5 => vec![1, 2, 3, 1, 2],
        _ => vec![1, 2, 1, 3, 1, 2, 1, 3],
    };
    let mut t = 0;
    while colors.len() < p {
        colors.push([1, 2, 3][t % 3]);
        t += 1;
    }
    Ok(colors)
}

/// The key property of the recipe colorings: the unordered color pair of
/// consecutive hole vertices differs from the pair two steps ahead.
pub fn consecutive_pair_property(colors: &[u32], cyclic: bool) -> bool {
    let p = colors.len();
    let pair = |i: usize| {
        let a = colors[i % p];
        let b = colors[(i + 1) % p];
        (a.min(b), a.max(b))
    };
    let range = if cyclic { p } else { p.saturating_sub(3) };
    (0..range).all(|i| pair(i) != pair(i + 2))
}

/// Extends a 3-coloring of an odd hole to the hole's first neighborhood:
/// every outside vertex sits over a consecutive pair of hole vertices and
/// takes the one color both miss; matched pairs get distinct colors exactly
/// because the consecutive-pair property holds.
pub fn extend_to_first_neighborhood(
    g: &Graph,
    q: &OddCycle,
    hole_colors: &[u32],
) -> Result<VertexColoring, StructureViolation> {
    let p = q.len();
    let seq = q.vertices();
    let fail = |reason: &str| {
        Err(StructureViolation {
            reason: reason.to_string(),
            spider: None,
            induced_c5: None,
        })
    };
    if hole_colors.len() != p {
        return fail("hole coloring length mismatch");
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (t, &v) in seq.iter().enumerate() {
        pos[v] = t;
    }
    let mut colors = vec![0u32; g.n()];
    for (t, &v) in seq.iter().enumerate() {
        colors[v] = hole_colors[t];
    }
    let mut outside_feet: Vec<(usize, usize)> = Vec::new();
    for v in 0..g.n() {
        if pos[v] != usize::MAX || g.degree(v) == 0 {
            continue;
        }
        let feet: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&&x| pos[x] != usize::MAX)
            .map(|&x| pos[x])
            .collect();
        if feet.len() != 2 {
            return fail("an outside vertex does not sit over exactly two hole vertices");
        }
        let (a, b) = (feet[0].min(feet[1]), feet[0].max(feet[1]));
        let i = if (a + 1) % p == b {
            a
        } else if (b + 1) % p == a {
            b
        } else {
            return fail("an outside vertex does not sit over consecutive hole vertices");
        };
        let pair = (hole_colors[i], hole_colors[(i + 1) % p]);
        colors[v] = 6 - pair.0 - pair.1;
        outside_feet.push((v, i));
    }
    // Matched outside vertices must be over pairs two apart and disagree.
    for &(v, i) in &outside_feet {
        for &w in g.neighbors(v) {
            if pos[w] != usize::MAX || w == v {
                continue;
            }
            let j = outside_feet
                .iter()
                .find(|&&(x, _)| x == w)
                .map(|&(_, j)| j)
                .ok_or_else(|| StructureViolation {
                    reason: "matched partner is not over the hole".into(),
                    spider: None,
                    induced_c5: None,
                })?;
            let d = (j + p - i) % p;
            if d != 2 && d != p - 2 {
                return fail("matched pair is not two steps apart");
            }
            if colors[v] == colors[w] {
                return fail("matched pair was forced onto one color");
            }
        }
    }
    if colors.iter().any(|&c| c == 0) {
        return fail("a vertex is neither on the hole nor over it");
    }
    let vc = VertexColoring::new(colors, 3);
    if !vc.is_proper(g) {
        return fail("extension is improper");
    }
    Ok(vc)
}

// ---------------------------------------------------------------------------
// Block pipeline (edge side)
// ---------------------------------------------------------------------------

enum BlockOutcome {
    Colored(EdgeColoring, &'static str),
    Family {
        id: FamilyId,
        member: Graph,
        iso: Vec<usize>,
    },
    NotColorable,
}

/// Decides 3-edge-colorability of one connected reduced block, preferring
/// the structural arguments and falling back to exhaustive search.
fn color_block(block: &Graph) -> Result<BlockOutcome, DecideError> {
    if block.m() == 0 {
        return Ok(BlockOutcome::Colored(
            EdgeColoring::new(Vec::new(), 0),
            "empty",
        ));
    }
    if block.is_bipartite() {
        let ec = color_bipartite(block)
            .map_err(|e| DecideError::Internal(format!("bipartite path: {e}")))?;
        return Ok(BlockOutcome::Colored(ec, "bipartite"));
    }
    if let Some(id) = families::recognize(block) {
        let member = match families::gen_family(&id) {
            Ok(m) => m,
            Err(_) => block.clone(),
        };
        let iso = crate::canon::isomorphism(&member, block)
            .ok_or_else(|| DecideError::Internal("recognizer and generator disagree".into()))?;
        return Ok(BlockOutcome::Family { id, member, iso });
    }
    if block.max_degree() <= 2 {
        // Connected, non-bipartite, max degree 2: an odd cycle.
        let q = shortest_induced_odd_cycle(block, false)
            .ok_or_else(|| DecideError::Internal("odd component without odd cycle".into()))?;
        if q.len() == block.n() {
            let ec = color_hamiltonian_odd(block, &q, HamOddCase::FlankedVertex { i: 0 })
                .map_err(|e| DecideError::Internal(format!("odd cycle path: {e}")))?;
            return Ok(BlockOutcome::Colored(ec, "odd-cycle-lemma"));
        }
    }
    let mut exhaustive_label = "exhaustive";
    let spider_free = patterns::find_spider_subgraph(block, 3, 3, 3)
        .map_err(|e| DecideError::Internal(e.to_string()))?
        .is_none();
    if spider_free {
        if let Some(q) = shortest_induced_odd_cycle(block, false) {
            if q.len() == 5 && block.n() >= 10 {
                // The structure theorems say such blocks cannot exist when
                // reduced; settle soundly but flag the anomaly.
                exhaustive_label = "exhaustive (anomalous spider-free 5-hole block)";
            }
            if q.len() >= 7 {
                if let Ok(decomp) = gadget_decompose(block, &q) {
                    if let Some(ec) = color_necklace(block, &q, &decomp) {
                        return Ok(BlockOutcome::Colored(ec, "necklace"));
                    }
                    // Unsatisfiable necklaces are family members; the
                    // recognizer above should have caught them. Fall through
                    // to the exact search to stay sound.
                }
            } else if block.n() == 9 {
                // Hamiltonian or near-Hamiltonian lemma route.
                if let Some(ham) = families::find_hamiltonian_cycle(block) {
                    let cycle = OddCycle::in_graph(block, ham)
                        .map_err(|e| DecideError::Internal(e.to_string()))?;
                    if let Some(case) = find_ham_odd_witness(block, &cycle) {
                        if let Ok(ec) = color_hamiltonian_odd(block, &cycle, case) {
                            return Ok(BlockOutcome::Colored(ec, "hamiltonian-lemma"));
                        }
                    }
                }
                for v in 0..block.n() {
                    if block.degree(v) != 2 {
                        continue;
                    }
                    let rest: Vec<usize> = (0..block.n()).filter(|&x| x != v).collect();
                    let (sub, map_back) = block.induced_subgraph(&rest);
                    if let Some(ham) = families::find_hamiltonian_cycle(&sub) {
                        let cycle: Vec<usize> = ham.iter().map(|&x| map_back[x]).collect();
                        if let Some(case) = find_near_ham_witness(block, v, &cycle) {
                            if let Ok(ec) = color_near_hamiltonian(block, v, &cycle, case) {
                                return Ok(BlockOutcome::Colored(ec, "near-hamiltonian-lemma"));
                            }
                        }
                    }
                }
            }
        }
    }
    match chromatic_index_backtracking(block, 3) {
        Ok(Some(ec)) => Ok(BlockOutcome::Colored(ec, exhaustive_label)),
        Ok(None) => Ok(BlockOutcome::NotColorable),
        Err(edge_color::EdgeColorError::TooLarge { m, .. }) => {
            Err(DecideError::OracleBudgetExceeded(m))
        }
        Err(e) => Err(DecideError::Internal(e.to_string())),
    }
}

/// Decides 3-edge-colorability of a subcubic triangle-free graph: reduce,
/// settle each block, lift. Returns an edge-side verdict against `h`.
fn decide_edge_side(h: &Graph, entry: &str) -> Result<Verdict, DecideError> {
    let (reduced, trace) = reductions::reduce(h);
    let mut merged = vec![0u32; reduced.m()];
    let mut provenance: Vec<String> = vec![entry.to_string()];
    for comp in reduced.components() {
        let (block, map_back) = reduced.induced_subgraph(&comp);
        if block.m() == 0 {
            continue;
        }
        match color_block(&block)? {
            BlockOutcome::Colored(ec, how) => {
                provenance.push(how.to_string());
                for (eid, &(u, v)) in block.edges().iter().enumerate() {
                    let target = reduced
                        .edge_id(map_back[u], map_back[v])
                        .expect("block edge exists in reduced graph");
                    merged[target] = ec.color(eid);
                }
            }
            BlockOutcome::Family { id, member, iso } => {
                let mapping: Vec<usize> = iso.iter().map(|&bv| map_back[bv]).collect();
                return Ok(Verdict {
                    outcome: Outcome::Exceptional {
                        family: id,
                        member,
                        embedding: PatternMatch {
                            mapping,
                            induced: true,
                        },
                    },
                    side: Side::Edge,
                    provenance: format!("{entry}: family-recognition"),
                });
            }
            BlockOutcome::NotColorable => {
                return Ok(Verdict {
                    outcome: Outcome::NotColorableExhaustive,
                    side: Side::Edge,
                    provenance: format!("{entry}: exhaustive"),
                });
            }
        }
    }
    let ec_reduced = EdgeColoring::new(merged, 3);
    let lifted = reductions::lift_coloring(h, &trace, &ec_reduced)
        .map_err(|e| DecideError::Internal(e.to_string()))?;
    Ok(Verdict {
        outcome: Outcome::Colorable(ColorCert::Edge(lifted)),
        side: Side::Edge,
        provenance: provenance.join("+"),
    })
}

// ---------------------------------------------------------------------------
// Vertex-side pipeline
// ---------------------------------------------------------------------------

fn scan_claw_diamond(g: &Graph) -> Option<OutOfClassWitness> {
    if let Some(m) = patterns::find_induced(&patterns::claw(), g).expect("claw fits") {
        return Some(OutOfClassWitness::Claw(m));
    }
    if let Some(m) = patterns::find_induced(&patterns::diamond(), g).expect("diamond fits") {
        return Some(OutOfClassWitness::Diamond(m));
    }
    None
}

/// Decides one connected (claw, diamond)-free component on the vertex side.
fn decide_component(g: &Graph) -> Result<Verdict, DecideError> {
    if let Some(m) = patterns::find_induced(&patterns::k4(), g).expect("K4 fits") {
        return Ok(Verdict {
            outcome: Outcome::ContainsK4(m),
            side: Side::Vertex,
            provenance: "k4-scan".into(),
        });
    }
    if g.n() <= 3 {
        let colors: Vec<u32> = (0..g.n() as u32).map(|v| v + 1).collect();
        return Ok(Verdict {
            outcome: Outcome::Colorable(ColorCert::Vertex(VertexColoring::new(colors, 3))),
            side: Side::Vertex,
            provenance: "tiny".into(),
        });
    }
    let (h, map) = root_graph_with_policy(g, K3Root::Claw)
        .map_err(|e| DecideError::Internal(format!("root graph after validation: {e}")))?;
    let edge_verdict = decide_edge_side(&h, "root")?;
    match edge_verdict.outcome {
        Outcome::Colorable(ColorCert::Edge(ec)) => {
            let vc = linegraph::transfer_edge_to_vertex_coloring(&h, &map, &ec)
                .map_err(|e| DecideError::Internal(e.to_string()))?;
            Ok(Verdict {
                outcome: Outcome::Colorable(ColorCert::Vertex(vc)),
                side: Side::Vertex,
                provenance: edge_verdict.provenance,
            })
        }
        Outcome::Exceptional {
            family,
            member,
            embedding,
        } => {
            // Carry the root-side member to the vertex side: the line graph
            // of the member embeds induced in g via the edge map.
            let (line_member, member_map) = line_graph(&member);
            let mapping: Vec<usize> = (0..line_member.n())
                .map(|lv| {
                    let (a, b) = member_map.h_edge_of(lv);
                    let (hu, hv) = (embedding.mapping[a], embedding.mapping[b]);
                    map.g_vertex_of(hu, hv)
                        .expect("member edge is an edge of the root graph")
                })
                .collect();
            Ok(Verdict {
                outcome: Outcome::Exceptional {
                    family: FamilyId {
                        kind: family.kind.line_kind(),
                        param: family.param,
                    },
                    member: line_member,
                    embedding: PatternMatch {
                        mapping,
                        induced: true,
                    },
                },
                side: Side::Vertex,
                provenance: edge_verdict.provenance,
            })
        }
        Outcome::NotColorableExhaustive => Ok(Verdict {
            outcome: Outcome::NotColorableExhaustive,
            side: Side::Vertex,
            provenance: edge_verdict.provenance,
        }),
        other => Err(DecideError::Internal(format!(
            "unexpected edge-side outcome: {other:?}"
        ))),
    }
}

fn merge_component_verdicts(
    g: &Graph,
    verdicts: Vec<(Vec<usize>, Verdict)>,
) -> Result<Verdict, DecideError> {
    // Any non-colorable component decides the whole graph.
    for (comp, verdict) in &verdicts {
        if !verdict.is_colorable() {
            let mut lifted = verdict.clone();
            // Re-index witnesses into the whole graph.
            lifted.outcome = match &verdict.outcome {
                Outcome::ContainsK4(m) => Outcome::ContainsK4(PatternMatch {
                    mapping: m.mapping.iter().map(|&x| comp[x]).collect(),
                    induced: m.induced,
                }),
                Outcome::Exceptional {
                    family,
                    member,
                    embedding,
                } => Outcome::Exceptional {
                    family: *family,
                    member: member.clone(),
                    embedding: PatternMatch {
                        mapping: embedding.mapping.iter().map(|&x| comp[x]).collect(),
                        induced: embedding.induced,
                    },
                },
                other => other.clone(),
            };
            return Ok(lifted);
        }
    }
    let mut colors = vec![0u32; g.n()];
    let mut provenance = Vec::new();
    for (comp, verdict) in verdicts {
        provenance.push(verdict.provenance.clone());
        match verdict.outcome {
            Outcome::Colorable(ColorCert::Vertex(vc)) => {
                for (local, &global) in comp.iter().enumerate() {
                    colors[global] = vc.color(local);
                }
            }
            _ => return Err(DecideError::Internal("expected a vertex coloring".into())),
        }
    }
    for c in colors.iter_mut() {
        if *c == 0 {
            *c = 1;
        }
    }
    Ok(Verdict {
        outcome: Outcome::Colorable(ColorCert::Vertex(VertexColoring::new(colors, 3))),
        side: Side::Vertex,
        provenance: provenance.join(" | "),
    })
}

/// Full pipeline for (claw, diamond)-free graphs: validate the class, scan
/// for K4, reconstruct the root graph, reduce, and settle each block,
/// dispatching between the structural arguments and the exact oracle.
pub fn decide_auto(g: &Graph) -> Result<Verdict, DecideError> {
    if let Some(witness) = scan_claw_diamond(g) {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(witness),
            side: Side::Vertex,
            provenance: "class-validation".into(),
        });
    }
    let mut verdicts = Vec::new();
    for comp in g.components() {
        let (sub, _) = g.induced_subgraph(&comp);
        verdicts.push((comp, decide_component(&sub)?));
    }
    merge_component_verdicts(g, verdicts)
}

/// Pipeline for connected (claw, diamond, N_{1,1,3})-free graphs.
pub fn decide_n113(g: &Graph) -> Result<Verdict, DecideError> {
    if !g.is_connected() {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::NotConnected),
            side: Side::Vertex,
            provenance: "n113: validation".into(),
        });
    }
    if let Some(witness) = scan_claw_diamond(g) {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(witness),
            side: Side::Vertex,
            provenance: "n113: validation".into(),
        });
    }
    let net = patterns::build_net(1, 1, 3).expect("valid parameters");
    if let Some(found) = patterns::find_induced(&net, g).expect("N113 fits the limit") {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::InducedNet {
                i: 1,
                j: 1,
                k: 3,
                found,
            }),
            side: Side::Vertex,
            provenance: "n113: validation".into(),
        });
    }
    let mut verdict = decide_component(g)?;
    verdict.provenance = format!("n113: {}", verdict.provenance);
    Ok(verdict)
}

fn validate_edge_side_entry(h: &Graph, entry: &str) -> Option<Verdict> {
    let report = crate::graph::validate_root_class(h);
    if !report.is_subcubic() || !report.is_triangle_free() {
        return Some(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::NotInRootClass(format!(
                "{report:?}"
            ))),
            side: Side::Edge,
            provenance: format!("{entry}: validation"),
        });
    }
    if !report.is_connected() {
        return Some(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::NotConnected),
            side: Side::Edge,
            provenance: format!("{entry}: validation"),
        });
    }
    if let Some(found) = patterns::find_spider_subgraph(h, 3, 3, 3).expect("valid parameters") {
        return Some(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::SpiderSubgraph {
                i: 3,
                j: 3,
                k: 3,
                found,
            }),
            side: Side::Edge,
            provenance: format!("{entry}: validation"),
        });
    }
    None
}

/// Edge-side pipeline for connected subcubic triangle-free graphs with no
/// spider S_{3,3,3} subgraph and no induced C5: the gadget-necklace theorem.
pub fn decide_n222_no_c5(h: &Graph) -> Result<Verdict, DecideError> {
    if let Some(v) = validate_edge_side_entry(h, "n222-no-c5") {
        return Ok(v);
    }
    if let Some(m) = patterns::find_induced(&patterns::c5(), h).expect("C5 fits") {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::InducedC5(m)),
            side: Side::Edge,
            provenance: "n222-no-c5: validation".into(),
        });
    }
    decide_edge_side(h, "n222-no-c5")
}

/// Edge-side pipeline for connected subcubic triangle-free spider-free
/// graphs that do contain an induced C5.
pub fn decide_n222_with_c5(h: &Graph) -> Result<Verdict, DecideError> {
    if let Some(v) = validate_edge_side_entry(h, "n222-with-c5") {
        return Ok(v);
    }
    if patterns::find_induced(&patterns::c5(), h)
        .expect("C5 fits")
        .is_none()
    {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::MissingC5),
            side: Side::Edge,
            provenance: "n222-with-c5: validation".into(),
        });
    }
    decide_edge_side(h, "n222-with-c5")
}

/// Size bound below which the N_{1,2,k} theorem is silent.
pub fn n12k_bound(k: usize) -> usize {
    (k + 4) * ((1usize << k) + 1) + 1
}

/// Pipeline for connected (claw, diamond, N_{1,2,k})-free graphs, k >= 2:
/// beyond the size bound, color the shortest odd hole by the residue recipe
/// and extend over its first neighborhood; below it, defer to the general
/// pipeline.
pub fn decide_n12k(g: &Graph, k: usize) -> Result<Verdict, DecideError> {
    if k < 2 {
        return Err(DecideError::BadLength(k));
    }
    if !g.is_connected() {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::NotConnected),
            side: Side::Vertex,
            provenance: "n12k: validation".into(),
        });
    }
    if let Some(witness) = scan_claw_diamond(g) {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(witness),
            side: Side::Vertex,
            provenance: "n12k: validation".into(),
        });
    }
    let net = patterns::build_net(1, 2, k).expect("valid parameters");
    if let Some(found) =
        patterns::find_induced_with_limit(&net, g, net.n()).expect("limit raised to fit")
    {
        return Ok(Verdict {
            outcome: Outcome::OutOfClass(OutOfClassWitness::InducedNet {
                i: 1,
                j: 2,
                k,
                found,
            }),
            side: Side::Vertex,
            provenance: "n12k: validation".into(),
        });
    }
    if let Some(m) = patterns::find_induced(&patterns::k4(), g).expect("K4 fits") {
        return Ok(Verdict {
            outcome: Outcome::ContainsK4(m),
            side: Side::Vertex,
            provenance: "n12k: k4-scan".into(),
        });
    }
    if g.n() <= n12k_bound(k) {
        let mut verdict = decide_component(g)?;
        verdict.provenance = format!("n12k: below-bound: {}", verdict.provenance);
        return Ok(verdict);
    }
    // Past the bound: no odd hole means the root graph is bipartite, and the
    // general pipeline colors it directly.
    let Some(q) = shortest_induced_odd_cycle(g, false) else {
        let mut verdict = decide_component(g)?;
        verdict.provenance = format!("n12k: perfect: {}", verdict.provenance);
        return Ok(verdict);
    };
    let structure = (|| -> Result<VertexColoring, StructureViolation> {
        let levels = neighborhood_levels(g, &q).map_err(|e| StructureViolation {
            reason: e.to_string(),
            spider: None,
            induced_c5: None,
        })?;
        if !levels.level(2).is_empty() {
            return Err(StructureViolation {
                reason: "second neighborhood of the hole is nonempty".into(),
                spider: None,
                induced_c5: None,
            });
        }
        let hole_colors = color_odd_hole(q.len()).map_err(|e| StructureViolation {
            reason: e.to_string(),
            spider: None,
            induced_c5: None,
        })?;
        extend_to_first_neighborhood(g, &q, &hole_colors)
    })();
    match structure {
        Ok(vc) => Ok(Verdict {
            outcome: Outcome::Colorable(ColorCert::Vertex(vc)),
            side: Side::Vertex,
            provenance: "n12k: odd-hole-extension".into(),
        }),
        Err(violation) => {
            // The theorem proof says this structure is forced for in-class
            // graphs past the bound; fall back to the guarded general
            // pipeline rather than asserting.
            let mut verdict = decide_component(g)?;
            verdict.provenance = format!(
                "n12k: structure-fallback ({}): {}",
                violation.reason, verdict.provenance
            );
            Ok(verdict)
        }
    }
}
