//! Line-graph construction, root-graph reconstruction for (claw, diamond,
//! K4)-free graphs via the Krausz clique partition, and transfer of proper
//! colorings across the correspondence.

use crate::decide::VertexColoring;
use crate::edge_color::EdgeColoring;
use crate::graph::Graph;
use crate::patterns::{self, PatternMatch};
use thiserror::Error;

/// The witness that disqualifies a graph from being the line graph of a
/// subcubic triangle-free graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassWitness {
    Claw(PatternMatch),
    Diamond(PatternMatch),
    K4(PatternMatch),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("graph is not in class: {0:?}")]
    NotInClass(ClassWitness),
    #[error("K3 has two root graphs; pick one by policy")]
    AmbiguousRoot,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransferError {
    #[error("input coloring is not proper")]
    ImproperInput,
}

/// Mutually inverse maps between edges of a root graph H and vertices of its
/// line graph G: G-vertex i corresponds to `edges[i]` of H.
#[derive(Debug, Clone)]
pub struct EdgeVertexMap {
    edges: Vec<(usize, usize)>,
}

impl EdgeVertexMap {
    pub fn h_edge_of(&self, g_vertex: usize) -> (usize, usize) {
        self.edges[g_vertex]
    }

    pub fn g_vertex_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = (u.min(v), u.max(v));
        self.edges.iter().position(|&x| x == e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Line graph: one G-vertex per edge of `h`, adjacent iff the edges share an
/// endpoint. G-vertex order follows the canonical edge order of `h`.
pub fn line_graph(h: &Graph) -> (Graph, EdgeVertexMap) {
    let m = h.m();
    let mut g_edges = Vec::new();
    for i in 0..m {
        let (a, b) = h.edges()[i];
        for j in i + 1..m {
            let (c, d) = h.edges()[j];
            if a == c || a == d || b == c || b == d {
                g_edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(m, &g_edges).expect("line graph is simple");
    (
        g,
        EdgeVertexMap {
            edges: h.edges().to_vec(),
        },
    )
}

/// Policy for the ambiguous root of K3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3Root {
    /// Refuse (the default): K3 = L(K3) = L(K1,3).
    Error,
    /// Take the claw K1,3 as the root.
    Claw,
    /// Take the triangle K3 as the root.
    Triangle,
}

pub fn root_graph(g: &Graph) -> Result<(Graph, EdgeVertexMap), RootError> {
    root_graph_with_policy(g, K3Root::Error)
}

/// Reconstructs the subcubic triangle-free root H with L(H) isomorphic to a
/// connected (claw, diamond, K4)-free graph `g`, together with the map
/// sending each g-vertex to its H-edge.
///
/// Maximal cliques of such a graph are single edges or triangles, pairwise
/// sharing at most one vertex, and every vertex lies in at most two of them;
/// vertices covered once get a singleton pseudo-clique. H has one vertex per
/// clique and one edge per g-vertex.
pub fn root_graph_with_policy(
    g: &Graph,
    policy: K3Root,
) -> Result<(Graph, EdgeVertexMap), RootError> {
    if let Some(m) = patterns::find_induced(&patterns::k4(), g).expect("K4 fits the limit") {
        return Err(RootError::NotInClass(ClassWitness::K4(m)));
    }
    if let Some(m) = patterns::find_induced(&patterns::diamond(), g).expect("diamond fits") {
        return Err(RootError::NotInClass(ClassWitness::Diamond(m)));
    }
    if let Some(m) = patterns::find_induced(&patterns::claw(), g).expect("claw fits") {
        return Err(RootError::NotInClass(ClassWitness::Claw(m)));
    }
    if g.n() == 3 && g.m() == 3 {
        match policy {
            K3Root::Error => return Err(RootError::AmbiguousRoot),
            K3Root::Claw => {
                let h = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
                let map = EdgeVertexMap {
                    edges: h.edges().to_vec(),
                };
                return Ok((h, map));
            }
            K3Root::Triangle => {
                let h = Graph::cycle(3);
                let map = EdgeVertexMap {
                    edges: h.edges().to_vec(),
                };
                return Ok((h, map));
            }
        }
    }

    // Krausz partition. Each edge of g lies in exactly one maximal clique:
    // a triangle when the endpoints have a common neighbor (unique, since g
    // is diamond- and K4-free), else the edge itself.
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut seen_triangles = std::collections::HashSet::new();
    for &(u, v) in g.edges() {
        let common = g.neighbors(u).iter().find(|&&w| g.has_edge(v, w));
        match common {
            Some(&w) => {
                let mut t = [u, v, w];
                t.sort_unstable();
                if seen_triangles.insert(t) {
                    cliques.push(t.to_vec());
                }
            }
            None => cliques.push(vec![u, v]),
        }
    }
    // Cliques covering each vertex; claw-freeness caps the count at two.
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (ci, clique) in cliques.iter().enumerate() {
        for &v in clique {
            covering[v].push(ci);
        }
    }
    for v in 0..g.n() {
        debug_assert!(covering[v].len() <= 2, "claw-free graphs cover vertices at most twice");
        while covering[v].len() < 2 {
            cliques.push(vec![v]);
            covering[v].push(cliques.len() - 1);
        }
    }
    // H: one vertex per clique, one edge per g-vertex.
    let h_edges: Vec<(usize, usize)> = (0..g.n())
        .map(|v| (covering[v][0], covering[v][1]))
        .collect();
    let h = Graph::from_edges(cliques.len(), &h_edges)
        .expect("clique intersections are single vertices, so H is simple");
    let map = EdgeVertexMap {
        edges: (0..g.n())
            .map(|v| {
                let (a, b) = (covering[v][0], covering[v][1]);
                (a.min(b), a.max(b))
            })
            .collect(),
    };
    debug_assert!(h.is_subcubic() && h.is_triangle_free());
    Ok((h, map))
}

/// Carries a proper edge coloring of H over to a proper vertex coloring of
/// L(H), preserving the color count.
pub fn transfer_edge_to_vertex_coloring(
    h: &Graph,
    map: &EdgeVertexMap,
    ec: &EdgeColoring,
) -> Result<VertexColoring, TransferError> {
    if !ec.is_proper(h) {
        return Err(TransferError::ImproperInput);
    }
    let colors = (0..map.len())
        .map(|gv| {
            let (u, v) = map.h_edge_of(gv);
            ec.color(h.edge_id(u, v).expect("map edge exists in h"))
        })
        .collect();
    Ok(VertexColoring::new(colors, ec.color_count()))
}

/// Carries a proper vertex coloring of G = L(H) back to a proper edge
/// coloring of H, preserving the color count.
pub fn transfer_vertex_to_edge_coloring(
    g: &Graph,
    h: &Graph,
    map: &EdgeVertexMap,
    vc: &VertexColoring,
) -> Result<EdgeColoring, TransferError> {
    if !vc.is_proper(g) {
        return Err(TransferError::ImproperInput);
    }
    let mut colors = vec![0u32; h.m()];
    for gv in 0..map.len() {
        let (u, v) = map.h_edge_of(gv);
        colors[h.edge_id(u, v).expect("map edge exists in h")] = vc.color(gv);
    }
    Ok(EdgeColoring::new(colors, vc.color_count()))
}
