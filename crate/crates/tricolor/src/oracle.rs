//! Ground truth at desk scale: exhaustive enumeration of connected subcubic
//! triangle-free graphs up to isomorphism, the exact chromatic index, and a
//! cross-validation report that replays the structural theorems as
//! predicates over every enumerated reduced graph.

use crate::canon;
use crate::decide;
use crate::edge_color::{self, is_overfull};
use crate::families::{self, FamilyKind};
use crate::graph::Graph;
use crate::linegraph::line_graph;
use crate::patterns;
use crate::reductions;
use thiserror::Error;

pub const ENUMERATION_HARD_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("requested {0} vertices, enumeration is capped at {1}")]
    CapExceeded(usize, usize),
    #[error("graph too large for the exact oracle: {0} edges")]
    TooLarge(usize),
}

/// What to enumerate: connected subcubic triangle-free graphs up to `max_n`
/// vertices, optionally restricted to reduction-minimal or bridgeless ones.
#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    max_n: usize,
    pub reduced_only: bool,
    pub bridgeless_only: bool,
}

impl EnumerationSpec {
    pub fn new(max_n: usize) -> Result<Self, OracleError> {
        if max_n > ENUMERATION_HARD_CAP {
            return Err(OracleError::CapExceeded(max_n, ENUMERATION_HARD_CAP));
        }
        Ok(EnumerationSpec {
            max_n,
            reduced_only: false,
            bridgeless_only: false,
        })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn reduced_only(mut self) -> Self {
        self.reduced_only = true;
        self
    }

    pub fn bridgeless_only(mut self) -> Self {
        self.bridgeless_only = true;
        self
    }
}

/// Every connected subcubic triangle-free graph with 1..=max_n vertices,
/// exactly one representative per isomorphism class, grown one vertex at a
/// time with canonical-form deduplication per level.
pub fn enumerate_graphs(spec: &EnumerationSpec) -> Result<Vec<Graph>, OracleError> {
    let mut out = Vec::new();
    let mut level = vec![Graph::empty(1)];
    push_filtered(&mut out, &level, spec);
    for k in 1..spec.max_n {
        let mut next = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in &level {
            // Attach a new vertex to 1..=3 existing vertices of degree < 3;
            // the set must be independent to keep the graph triangle-free.
            let candidates: Vec<usize> = (0..k).filter(|&v| g.degree(v) < 3).collect();
            for sel in subsets_up_to_three(&candidates) {
                if sel
                    .iter()
                    .enumerate()
                    .any(|(idx, &u)| sel[idx + 1..].iter().any(|&v| g.has_edge(u, v)))
                {
                    continue;
                }
                let mut edges = g.edges().to_vec();
                for &u in &sel {
                    edges.push((u, k));
                }
                let child = Graph::from_edges(k + 1, &edges).expect("augmentation is simple");
                if seen.insert(canon::canonical_form(&child)) {
                    next.push(child);
                }
            }
        }
        next.sort_by_key(canon::canonical_form);
        push_filtered(&mut out, &next, spec);
        level = next;
    }
    Ok(out)
}

fn push_filtered(out: &mut Vec<Graph>, level: &[Graph], spec: &EnumerationSpec) {
    for g in level {
        if spec.reduced_only && !is_r123_minimal(g) {
            continue;
        }
        if spec.bridgeless_only && has_bridge(g) {
            continue;
        }
        out.push(g.clone());
    }
}

fn subsets_up_to_three(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    for a in 0..n {
        out.push(vec![items[a]]);
        for b in a + 1..n {
            out.push(vec![items[a], items[b]]);
            for c in b + 1..n {
                out.push(vec![items[a], items[b], items[c]]);
            }
        }
    }
    out
}

fn is_r123_minimal(g: &Graph) -> bool {
    reductions::is_r123_minimal(g)
}

fn has_bridge(g: &Graph) -> bool {
    reductions::has_cut_edge(g)
}

/// Exact chromatic index by backtracking at Delta and falling back to
/// Delta + 1, which always suffices.
pub fn chromatic_index_exact(h: &Graph) -> Result<u32, OracleError> {
    if h.m() == 0 {
        return Ok(0);
    }
    let delta = h.max_degree() as u32;
    match edge_color::chromatic_index_backtracking(h, delta) {
        Ok(Some(_)) => Ok(delta),
        Ok(None) => {
            debug_assert!(matches!(
                edge_color::chromatic_index_backtracking(h, delta + 1),
                Ok(Some(_))
            ));
            Ok(delta + 1)
        }
        Err(edge_color::EdgeColorError::TooLarge { m, .. }) => Err(OracleError::TooLarge(m)),
        Err(_) => unreachable!("backtracking only fails by size"),
    }
}

/// One record per enumerated reduced graph in the cross-validation sweep.
#[derive(Debug, Clone)]
pub struct CrossLine {
    pub canon_hex: String,
    pub n: usize,
    pub m: usize,
    pub chi_prime: u32,
    pub s333_free: bool,
    pub has_induced_c5: bool,
    pub family: Option<families::FamilyId>,
    pub overfull: bool,
    pub decide_agrees: bool,
}

#[derive(Debug, Default)]
pub struct CrossValidationReport {
    pub lines: Vec<CrossLine>,
    pub violations: Vec<String>,
}

impl CrossValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replays the structural theorems over every enumerated connected subcubic
/// triangle-free graph up to `max_n` vertices that is minimal with respect
/// to all four reductions:
/// spider-and-C5-free graphs must be 3-edge-colorable unless they are
/// D-family members; spider-free graphs with an induced C5 must be
/// 3-edge-colorable unless D7, Petersen-minus-vertex, or an overfull
/// 9-cycle-with-4-chords; overfull graphs must be class 2; and the
/// top-level decider must agree with the oracle on every line graph.
pub fn cross_validate(max_n: usize) -> Result<CrossValidationReport, OracleError> {
    if max_n > 11 {
        return Err(OracleError::CapExceeded(max_n, 11));
    }
    let spec = EnumerationSpec::new(max_n)?.reduced_only().bridgeless_only();
    let graphs = enumerate_graphs(&spec)?;
    let mut report = CrossValidationReport::default();
    let c5 = patterns::c5();
    for h in &graphs {
        if h.m() == 0 {
            continue;
        }
        let chi = chromatic_index_exact(h)?;
        let s333_free = patterns::find_spider_subgraph(h, 3, 3, 3)
            .expect("parameters valid")
            .is_none();
        let has_c5 = patterns::find_induced(&c5, h)
            .expect("C5 fits the limit")
            .is_some();
        let family = families::recognize(h);
        let overfull = is_overfull(h);
        let key = canon::canonical_form(h).to_hex();

        if s333_free && !has_c5 {
            let exempt = matches!(
                family.map(|f| f.kind),
                Some(FamilyKind::D6i1) | Some(FamilyKind::D6i5)
            );
            if !exempt && chi != 3 {
                report.violations.push(format!(
                    "{key}: spider-free, C5-free, not a D-family member, but chi'={chi}"
                ));
            }
            if exempt && chi != 4 {
                report
                    .violations
                    .push(format!("{key}: D-family member with chi'={chi}"));
            }
        }
        if s333_free && has_c5 {
            let exempt = matches!(
                family.map(|f| f.kind),
                Some(FamilyKind::D6i1)
                    | Some(FamilyKind::PetersenMinusVertex)
                    | Some(FamilyKind::OverfullC9Chords4)
            );
            if !exempt && chi != 3 {
                report.violations.push(format!(
                    "{key}: spider-free with C5, not exceptional, but chi'={chi}"
                ));
            }
        }
        if overfull && chi != h.max_degree() as u32 + 1 {
            report
                .violations
                .push(format!("{key}: overfull but chi'={chi}"));
        }

        // Decider agreement on the line graph.
        let (g, _) = line_graph(h);
        let decide_agrees = match decide::decide_auto(&g) {
            Ok(verdict) => {
                let says_colorable = matches!(verdict.outcome, decide::Outcome::Colorable(_));
                let sound = verdict.verify(&g);
                if !sound {
                    report
                        .violations
                        .push(format!("{key}: verdict failed verification"));
                }
                says_colorable == (chi <= 3) && sound
            }
            Err(e) => {
                report
                    .violations
                    .push(format!("{key}: decide_auto errored: {e}"));
                false
            }
        };
        if !decide_agrees {
            report
                .violations
                .push(format!("{key}: decide_auto disagrees with chi'={chi}"));
        }

        report.lines.push(CrossLine {
            canon_hex: key,
            n: h.n(),
            m: h.m(),
            chi_prime: chi,
            s333_free,
            has_induced_c5: has_c5,
            family,
            overfull,
            decide_agrees,
        });
    }
    Ok(report)
}
