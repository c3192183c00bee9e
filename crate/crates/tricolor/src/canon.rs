//! Canonical forms and explicit isomorphisms via color refinement plus
//! backtracking over individualized vertices. Graphs here are small (desk
//! scale), so the minimum-adjacency-string canonical form is affordable.

use crate::graph::Graph;

/// Canonical form: vertex count plus the adjacency rows of the canonically
/// relabeled graph, packed as bit words. Two graphs are isomorphic iff their
/// canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonForm {
    pub n: usize,
    rows: Vec<Vec<u64>>,
}

impl CanonForm {
    /// Compact stable text rendering (hex rows), usable as a report key.
    pub fn to_hex(&self) -> String {
        let words = self.n.div_ceil(64).max(1);
        let mut s = format!("{}:", self.n);
        for row in &self.rows {
            for w in 0..words {
                s.push_str(&format!("{:016x}", row.get(w).copied().unwrap_or(0)));
            }
        }
        s
    }
}

/// Canonical labeling (old index -> new index) realizing the canonical form.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    Searcher::new(g).run().1
}

pub fn canonical_form(g: &Graph) -> CanonForm {
    let (rows, _) = Searcher::new(g).run();
    CanonForm { n: g.n(), rows }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

/// Explicit isomorphism mapping vertices of `a` to vertices of `b`, when one
/// exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let (rows_a, lab_a) = Searcher::new(a).run();
    let (rows_b, lab_b) = Searcher::new(b).run();
    if rows_a != rows_b {
        return None;
    }
    let mut inv_b = vec![0; b.n()];
    for (v, &c) in lab_b.iter().enumerate() {
        inv_b[c] = v;
    }
    Some(lab_a.iter().map(|&c| inv_b[c]).collect())
}

struct Searcher<'a> {
    g: &'a Graph,
    best_rows: Option<Vec<Vec<u64>>>,
    best_labeling: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher {
            g,
            best_rows: None,
            best_labeling: Vec::new(),
        }
    }

    fn run(mut self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let n = self.g.n();
        if n == 0 {
            return (Vec::new(), Vec::new());
        }
        let colors = vec![0u32; n];
        let colors = self.refine(colors);
        self.descend(colors);
        (self.best_rows.unwrap(), self.best_labeling)
    }

    /// 1-WL refinement: split color classes by multisets of neighbor colors
    /// until stable. Color ids are re-indexed by sorted signature so the
    /// partition is order-canonical.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.g.n();
        loop {
            let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
                .map(|v| {
                    let mut nc: Vec<u32> = self.g.neighbors(v).iter().map(|&w| colors[w]).collect();
                    nc.sort_unstable();
                    (colors[v], nc, v)
                })
                .collect();
            sigs.sort();
            let mut new_colors = vec![0u32; n];
            let mut next = 0u32;
            for i in 0..n {
                if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                    next += 1;
                }
                new_colors[sigs[i].2] = next;
            }
            if new_colors == colors {
                return colors;
            }
            colors = new_colors;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let n = self.g.n();
        // Pick the smallest color class with at least two members.
        let mut counts = std::collections::BTreeMap::new();
        for &c in &colors {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        let target = counts.iter().find(|&(_, &cnt)| cnt > 1).map(|(&c, _)| c);
        match target {
            None => self.record_leaf(&colors),
            Some(cell) => {
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
                for v in members {
                    let mut next = colors.clone();
                    // Individualize v: give it a fresh color just below its
                    // class so refinement re-sorts deterministically.
                    for c in next.iter_mut() {
                        if *c >= cell {
                            *c += 1;
                        }
                    }
                    next[v] = cell;
                    let refined = self.refine(next);
                    self.descend(refined);
                }
            }
        }
    }

    fn record_leaf(&mut self, colors: &[u32]) {
        let n = self.g.n();
        let words = n.div_ceil(64).max(1);
        let mut labeling = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| colors[v]);
        for (new, &old) in order.iter().enumerate() {
            labeling[old] = new;
        }
        let mut rows = vec![vec![0u64; words]; n];
        for &(u, v) in self.g.edges() {
            let (a, b) = (labeling[u], labeling[v]);
            rows[a][b / 64] |= 1 << (b % 64);
            rows[b][a / 64] |= 1 << (a % 64);
        }
        let better = match &self.best_rows {
            None => true,
            Some(best) => rows < *best,
        };
        if better {
            self.best_rows = Some(rows);
            self.best_labeling = labeling;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_and_paths() {
        assert!(is_isomorphic(&Graph::cycle(5), &Graph::cycle(5)));
        assert!(!is_isomorphic(&Graph::cycle(6), &Graph::path(6)));
        let relabeled = Graph::from_edges(5, &[(3, 1), (1, 4), (4, 2), (2, 0), (0, 3)]).unwrap();
        assert!(is_isomorphic(&Graph::cycle(5), &relabeled));
    }

    #[test]
    fn claw_vs_path() {
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&claw, &Graph::path(4)));
    }

    #[test]
    fn explicit_mapping_is_an_isomorphism() {
        let a = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let b = a.relabel(&[2, 4, 0, 5, 1, 3]);
        let map = isomorphism(&a, &b).unwrap();
        for &(u, v) in a.edges() {
            assert!(b.has_edge(map[u], map[v]));
        }
        let mut seen = vec![false; b.n()];
        for &x in &map {
            assert!(!seen[x]);
            seen[x] = true;
        }
    }

    proptest! {
        #[test]
        fn relabeled_graphs_are_isomorphic(
            edges in prop::collection::btree_set((0usize..8, 0usize..8), 0..16),
            seed in 0u64..1000,
        ) {
            let n = 8;
            let clean: Vec<(usize, usize)> = edges
                .into_iter()
                .filter(|&(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let g = Graph::from_edges(n, &clean).unwrap();
            // Deterministic pseudo-random permutation from the seed.
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed.wrapping_add(1);
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            let h = g.relabel(&perm);
            prop_assert!(is_isomorphic(&g, &h));
            let map = isomorphism(&g, &h).unwrap();
            for &(u, v) in g.edges() {
                prop_assert!(h.has_edge(map[u], map[v]));
            }
        }
    }
}
