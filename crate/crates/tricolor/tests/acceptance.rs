//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Expected values marked as computed goldens were produced by
//! the independent oracles in this repository and frozen.

use std::time::{Duration, Instant};
use tricolor::decide::{self, consecutive_pair_property, Outcome};
use tricolor::edge_color::{
    self, color_hamiltonian_odd, color_near_hamiltonian, find_ham_odd_witness,
    find_near_ham_witness, is_overfull, matching_number, EdgeColoring,
};
use tricolor::families::{self, FamilyId, FamilyKind};
use tricolor::graph::{Graph, OddCycle};
use tricolor::linegraph::{line_graph, root_graph_with_policy, K3Root};
use tricolor::oracle::{self, EnumerationSpec};
use tricolor::patterns;
use tricolor::reductions;

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("acceptance {name}: PASS in {elapsed:?} (budget {budget:?})");
    assert!(
        elapsed < budget,
        "{name} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
}

fn d7() -> Graph {
    families::gen_family(&FamilyId::parameterized(FamilyKind::D6i1, 1)).unwrap()
}

#[test]
fn criterion_1_d7_is_overfull_class_two() {
    let start = Instant::now();
    let h = d7();
    assert_eq!((h.n(), h.m()), (7, 10));
    let alpha = matching_number(&h).size;
    assert_eq!(alpha, 3);
    assert!(h.m() > alpha * h.max_degree(), "10 > 3*3");
    assert!(is_overfull(&h));
    assert_eq!(oracle::chromatic_index_exact(&h).unwrap(), 4);
    finish("1 (D7 overfull, chi'=4)", start, Duration::from_secs(1));
}

#[test]
fn criterion_2_family_law() {
    let start = Instant::now();
    for i in 1..=3usize {
        let d1 = families::gen_family(&FamilyId::parameterized(FamilyKind::D6i1, i)).unwrap();
        assert_eq!((d1.n(), d1.m()), (6 * i + 1, 9 * i + 1), "D6i1({i})");
        assert_eq!(matching_number(&d1).size, 3 * i);
        assert!(is_overfull(&d1));
        let d5 = families::gen_family(&FamilyId::parameterized(FamilyKind::D6i5, i)).unwrap();
        assert_eq!((d5.n(), d5.m()), (6 * i + 5, 9 * i + 7), "D6i5({i})");
        assert_eq!(matching_number(&d5).size, 3 * i + 2);
        assert!(is_overfull(&d5));
        // Line graphs carry the B-family names.
        assert_eq!(line_graph(&d1).0.n(), 9 * i + 1);
        assert_eq!(line_graph(&d5).0.n(), 9 * i + 7);
        if i <= 2 {
            assert_eq!(oracle::chromatic_index_exact(&d1).unwrap(), 4);
            assert_eq!(oracle::chromatic_index_exact(&d5).unwrap(), 4);
        }
        let report =
            families::validate_family_contract(&FamilyId::parameterized(FamilyKind::D6i1, i))
                .unwrap();
        assert!(report.all_ok(), "{report:?}");
        let report =
            families::validate_family_contract(&FamilyId::parameterized(FamilyKind::D6i5, i))
                .unwrap();
        assert!(report.all_ok(), "{report:?}");
    }
    finish("2 (family law)", start, Duration::from_secs(30));
}

#[test]
fn criterion_3_pstar_class_two_but_not_overfull() {
    let start = Instant::now();
    let p = families::petersen_minus_vertex();
    assert_eq!((p.n(), p.m()), (9, 12));
    let alpha = matching_number(&p).size;
    assert_eq!(alpha, 4);
    assert_eq!(p.m(), alpha * p.max_degree(), "12 = 4*3");
    assert!(!is_overfull(&p));
    assert_eq!(oracle::chromatic_index_exact(&p).unwrap(), 4);
    finish("3 (P* chi'=4, not overfull)", start, Duration::from_secs(5));
}

#[test]
fn criterion_4_overfull_c9_with_4_chords() {
    let start = Instant::now();
    let members = families::enumerate_overfull_c9_chords4();
    // Computed golden: members up to isomorphism.
    assert_eq!(members.len(), 4);
    for g in &members {
        assert_eq!(g.m(), 13);
        assert!(is_overfull(g));
        assert_eq!(oracle::chromatic_index_exact(g).unwrap(), 4);
    }
    finish("4 (overfull C9+4 chords)", start, Duration::from_secs(60));
}

#[test]
fn criterion_5_cross_validation_at_nine() {
    let start = Instant::now();
    let report = oracle::cross_validate(9).unwrap();
    assert!(
        report.is_clean(),
        "violations: {:?}",
        report.violations
    );
    // Computed goldens: 28 reduced bridgeless graphs with edges at n <= 9;
    // the exceptional members are exactly D7, P*, and the four overfull
    // 9-cycles with chords.
    assert_eq!(report.lines.len(), 28);
    let mut flagged: Vec<String> = report
        .lines
        .iter()
        .filter_map(|l| l.family.map(|f| f.to_string()))
        .collect();
    flagged.sort();
    assert_eq!(
        flagged,
        vec![
            "D6i1 i=1",
            "OverfullC9Chords4",
            "OverfullC9Chords4",
            "OverfullC9Chords4",
            "OverfullC9Chords4",
            "Pstar"
        ]
    );
    assert!(report.lines.iter().all(|l| l.decide_agrees));
    finish("5 (cross-validation n<=9)", start, Duration::from_secs(600));
}

#[test]
fn criterion_6_reductions_preserve_colorability() {
    let start = Instant::now();
    let spec = EnumerationSpec::new(10).unwrap();
    let graphs = oracle::enumerate_graphs(&spec).unwrap();
    // Computed golden: connected subcubic triangle-free graphs, one per
    // isomorphism class, n = 1..10.
    assert_eq!(graphs.len(), 1065);
    let mut checked = 0usize;
    for h in &graphs {
        let (reduced, trace) = reductions::reduce(h);
        let before = oracle::chromatic_index_exact(h).unwrap() <= 3;
        let after = oracle::chromatic_index_exact(&reduced).unwrap() <= 3;
        assert_eq!(before, after, "reduction changed colorability: {h:?}");
        if after {
            let ec = edge_color::chromatic_index_backtracking(&reduced, 3)
                .unwrap()
                .unwrap();
            let lifted = reductions::lift_coloring(h, &trace, &ec).unwrap();
            assert!(lifted.is_proper(h), "lift broke properness: {h:?}");
        }
        // Reduced graphs are fixed points.
        assert!(reductions::is_reduced(&reduced), "{h:?}");
        checked += 1;
    }
    assert_eq!(checked, 1065);
    finish("6 (reduction equivalence n<=10)", start, Duration::from_secs(600));
}

#[test]
fn criterion_7_lemma_engines_randomized() {
    let start = Instant::now();
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(20260808);
    let mut ham_runs = 0usize;
    let mut near_runs = 0usize;

    while ham_runs + near_runs < 10_000 {
        if rng.random_bool(0.5) {
            // Hamiltonian odd cycle with a planted witness.
            let p = 2 * rng.random_range(3..=20) + 1;
            let mut edges: Vec<(usize, usize)> = (0..p).map(|t| (t, (t + 1) % p)).collect();
            let mut chord_at = vec![false; p];
            let case = rng.random_range(0..3u32);
            let protect: Vec<usize> = match case {
                0 => {
                    // Flanked vertex at 0: keep p-1 and 1 chord-free.
                    vec![p - 1, 1]
                }
                _ => {
                    // Chord (0, j) with predecessors (or successors) free.
                    let j = rng.random_range(2..=p - 2);
                    edges.push((0, j));
                    chord_at[0] = true;
                    chord_at[j] = true;
                    if case == 1 {
                        vec![(p - 1) % p, (j + p - 1) % p]
                    } else {
                        vec![1, (j + 1) % p]
                    }
                }
            };
            // Random extra chords away from the protected vertices.
            for _ in 0..rng.random_range(0..p / 3) {
                let a = rng.random_range(0..p);
                let b = rng.random_range(0..p);
                let d = (b + p - a) % p;
                if d < 2 || d > p - 2 || chord_at[a] || chord_at[b] {
                    continue;
                }
                if protect.contains(&a) || protect.contains(&b) {
                    continue;
                }
                edges.push((a.min(b), a.max(b)));
                chord_at[a] = true;
                chord_at[b] = true;
            }
            let g = Graph::from_edges(p, &edges).unwrap();
            let q = OddCycle::in_graph(&g, (0..p).collect()).unwrap();
            let witness = find_ham_odd_witness(&g, &q)
                .expect("planting guarantees a witness");
            let ec = color_hamiltonian_odd(&g, &q, witness)
                .unwrap_or_else(|e| panic!("kempe/lemma failure: {e} on {g:?}"));
            assert!(ec.is_proper(&g));
            ham_runs += 1;
        } else {
            // Near-Hamiltonian: even cycle plus a degree-2 center.
            let p2 = 2 * rng.random_range(4..=20);
            let v = p2;
            let fi = 0usize;
            let fj = rng.random_range(2..=p2 - 2);
            let mut edges: Vec<(usize, usize)> = (0..p2).map(|t| (t, (t + 1) % p2)).collect();
            edges.push((v, fi));
            edges.push((v, fj));
            let mut chord_at = vec![false; p2];
            // Keep the case-1 witness: successor of foot 0 stays degree 2.
            let protect = vec![1usize, fi, fj];
            for _ in 0..rng.random_range(0..p2 / 3) {
                let a = rng.random_range(0..p2);
                let b = rng.random_range(0..p2);
                let d = (b + p2 - a) % p2;
                // Triangle-free needs chord distance >= 3.
                if d < 3 || d > p2 - 3 || chord_at[a] || chord_at[b] {
                    continue;
                }
                if protect.contains(&a) || protect.contains(&b) {
                    continue;
                }
                edges.push((a.min(b), a.max(b)));
                chord_at[a] = true;
                chord_at[b] = true;
            }
            let g = Graph::from_edges(p2 + 1, &edges).unwrap();
            let cycle: Vec<usize> = (0..p2).collect();
            let witness = find_near_ham_witness(&g, v, &cycle)
                .expect("planting guarantees a witness");
            let ec = color_near_hamiltonian(&g, v, &cycle, witness)
                .unwrap_or_else(|e| panic!("near-ham failure: {e} on {g:?}"));
            assert!(ec.is_proper(&g));
            near_runs += 1;
        }
    }
    assert!(ham_runs > 3000 && near_runs > 3000);
    finish("7 (lemma engines, 10^4 instances)", start, Duration::from_secs(120));
}

#[test]
fn criterion_8_odd_hole_recipe() {
    let start = Instant::now();
    for p in (5..=101usize).step_by(2) {
        let colors = decide::color_odd_hole(p).unwrap();
        assert_eq!(colors.len(), p);
        for i in 0..p {
            assert_ne!(colors[i], colors[(i + 1) % p], "p={p}");
        }
        if p >= 7 {
            assert!(consecutive_pair_property(&colors, true), "p={p}");
        } else {
            // p = 5: the cyclic property is unsatisfiable — prove it here by
            // exhausting every proper 3-coloring of C5 — and require the
            // recipe to satisfy the property on the non-cyclic range.
            assert!(consecutive_pair_property(&colors, false));
            let mut any_cyclic = false;
            let c5 = Graph::cycle(5);
            for code in 0..3u32.pow(5) {
                let assignment: Vec<u32> =
                    (0..5).map(|t| (code / 3u32.pow(t)) % 3 + 1).collect();
                let proper = c5
                    .edges()
                    .iter()
                    .all(|&(u, v)| assignment[u] != assignment[v]);
                if proper && consecutive_pair_property(&assignment, true) {
                    any_cyclic = true;
                }
            }
            assert!(
                !any_cyclic,
                "no proper 3-coloring of C5 can satisfy the cyclic pair property"
            );
        }
    }
    // Matched-pair extension over every realizable pair pattern: all pairs
    // of distinct color 2-sets lead to distinct forced colors.
    let mut patterns_checked = 0;
    for a in 1..=3u32 {
        for b in 1..=3u32 {
            if a == b {
                continue;
            }
            for c in 1..=3u32 {
                for d in 1..=3u32 {
                    if c == d {
                        continue;
                    }
                    let set1 = (a.min(b), a.max(b));
                    let set2 = (c.min(d), c.max(d));
                    if set1 == set2 {
                        continue;
                    }
                    let w1 = 6 - a - b;
                    let w2 = 6 - c - d;
                    assert_ne!(w1, w2, "pair patterns {set1:?} vs {set2:?}");
                    patterns_checked += 1;
                }
            }
        }
    }
    assert!(patterns_checked >= 9);
    finish("8 (odd-hole recipe)", start, Duration::from_secs(1));
}

#[test]
fn criterion_9_line_graph_round_trip() {
    let start = Instant::now();
    let spec = EnumerationSpec::new(10).unwrap();
    let graphs = oracle::enumerate_graphs(&spec).unwrap();
    let claw = patterns::claw();
    let diamond = patterns::diamond();
    let k4 = patterns::k4();
    let mut round_trips = 0usize;
    for h in &graphs {
        if h.m() < 2 {
            continue;
        }
        let (g, _) = line_graph(h);
        assert!(
            patterns::find_induced(&claw, &g).unwrap().is_none(),
            "claw in L({h:?})"
        );
        assert!(
            patterns::find_induced(&diamond, &g).unwrap().is_none(),
            "diamond in L({h:?})"
        );
        assert!(
            patterns::find_induced(&k4, &g).unwrap().is_none(),
            "K4 in L({h:?})"
        );
        // Within the triangle-free class the claw is the unique root of K3,
        // so the ambiguity policy picks it; all other roots are unique.
        let (back, _) = root_graph_with_policy(&g, K3Root::Claw)
            .unwrap_or_else(|e| panic!("root failed on L({h:?}): {e}"));
        assert!(
            tricolor::canon::is_isomorphic(&back, h),
            "round trip broke on {h:?}"
        );
        round_trips += 1;
    }
    assert!(round_trips > 1000);
    finish("9 (line-graph round trip n<=10)", start, Duration::from_secs(300));
}

#[test]
fn criterion_10_n12k_synthetic_instances() {
    let start = Instant::now();
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(424242);
    let k = 2usize;
    let bound = decide::n12k_bound(k);
    for run in 0..100 {
        let p = 2 * rng.random_range(17..=29) + 1; // 35..=59
        let mut edges: Vec<(usize, usize)> = (0..p).map(|t| (t, (t + 1) % p)).collect();
        let mut next = p;
        // Attachment clusters spaced at least 5 positions apart: a single
        // pendant over {v_t, v_t+1} or a matched pair over {v_t, v_t+1} and
        // {v_t+2, v_t+3}.
        let mut t = 0usize;
        while t + 6 < p {
            match rng.random_range(0..3u32) {
                0 => {}
                1 => {
                    edges.push((next, t));
                    edges.push((next, t + 1));
                    next += 1;
                }
                _ => {
                    edges.push((next, t));
                    edges.push((next, t + 1));
                    edges.push((next + 1, t + 2));
                    edges.push((next + 1, t + 3));
                    edges.push((next, next + 1));
                    next += 2;
                }
            }
            t += rng.random_range(5..=8) as usize;
        }
        let g = Graph::from_edges(next, &edges).unwrap();
        assert!(g.n() > bound, "instance {run} too small: {}", g.n());
        let verdict = decide::decide_n12k(&g, k).unwrap();
        match &verdict.outcome {
            Outcome::Colorable(_) | Outcome::ContainsK4(_) => {}
            other => panic!("instance {run}: unexpected outcome {other:?}"),
        }
        assert!(verdict.verify(&g), "instance {run} failed verification");
        assert!(
            verdict.provenance.contains("odd-hole-extension")
                || verdict.provenance.contains("perfect"),
            "instance {run} took an unexpected path: {}",
            verdict.provenance
        );
    }
    finish("10 (N_1,2,k synthetic instances)", start, Duration::from_secs(60));
}

/// The tolerance-free side checks that tie the suite together: verdict
/// certificates survive serialization and re-verification.
#[test]
fn certificates_round_trip_through_text() {
    let d7 = d7();
    let (b10, _) = line_graph(&d7);
    for g in [Graph::cycle(5), b10] {
        let verdict = decide::decide_auto(&g).unwrap();
        let cert = tricolor::format::verdict_to_certificate(&g, &verdict);
        let back = tricolor::format::certificate_to_verdict(&g, &cert).unwrap();
        assert!(back.verify(&g));
    }
    let _ = EdgeColoring::new(Vec::new(), 0);
}
