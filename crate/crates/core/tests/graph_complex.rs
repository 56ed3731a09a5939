mod common;

use necklace_core::graph::*;
use necklace_core::{Error, SparseExactMatrix};
use proptest::prelude::*;
use serde_json::Value;

fn fixtures() -> Value {
    serde_json::from_str(include_str!("fixtures/graph_complex.json")).unwrap()
}

fn graph(cycles: &[&[usize]], edges: &[[usize; 2]]) -> FatGraph {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    FatGraph::from_cycles(&cycles, edges.to_vec(), None).unwrap()
}

fn colored(cycles: &[&[usize]], edges: &[[usize; 2]], colors: &[Color]) -> FatGraph {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    FatGraph::from_cycles(&cycles, edges.to_vec(), Some(colors.to_vec())).unwrap()
}

fn relabel(g: &FatGraph, pi: &[usize]) -> FatGraph {
    let cycles: Vec<Vec<usize>> = g.vertex_cycles().iter().map(|c| c.iter().map(|&f| pi[f]).collect()).collect();
    let edges = g.edges().iter().map(|[a, b]| [pi[*a], pi[*b]]).collect();
    let colors = g.is_colored().then(|| (0..g.edge_count()).map(|e| g.edge_color(e)).collect());
    let mut h = FatGraph::from_cycles(&cycles, edges, colors).unwrap();
    if g.isolated() > 0 {
        let mut x = h.to_exchange();
        x.vertex_cycles.extend(std::iter::repeat_n(Vec::new(), g.isolated()));
        h = FatGraph::from_exchange(&x).unwrap();
    }
    h
}

#[test]
fn counts_match_brute_force() {
    for colored in [false, true] {
        for j in 0..=3 {
            let classes = classes_by_edges(j, colored);
            let brute = common::graph_oracle::brute_counts(j, colored);
            for k in 0..=2 * j {
                let e = select(&classes, k, j, GraphOptions { colored, ..Default::default() });
                let expected = brute.get(&k).copied().unwrap_or((0, 0));
                if j == 0 && k == 0 {
                    assert_eq!((e.graphs.len(), e.vanishing.len()), (1, 0));
                    continue;
                }
                assert_eq!((e.graphs.len() + e.vanishing.len(), e.graphs.len()), expected, "k={k} j={j} colored={colored}");
            }
        }
    }
}

#[test]
fn small_enumerations() {
    let plain = GraphOptions::default();
    assert_eq!(enumerate(0, 0, plain).graphs, vec![FatGraph::empty(false)]);
    let single = enumerate(2, 1, plain).graphs;
    assert_eq!(single.len(), 1);
    assert_eq!(single[0].vertex_cycles().len(), 2);
    let loops = enumerate(1, 1, plain).graphs;
    assert_eq!(loops.len(), 1);
    assert!(loops[0].is_loop(0));
    let with_isolated = enumerate(2, 1, GraphOptions { isolated: true, ..plain });
    assert_eq!(with_isolated.graphs.len(), 2);
    let connected = enumerate(2, 1, GraphOptions { isolated: true, connected: true, ..plain });
    assert_eq!(connected.graphs.len(), 1);
    assert!(enumerate(2, 1, GraphOptions { parity_class: Some(0), ..plain }).graphs.is_empty());
}

#[test]
fn orientation_killers() {
    // two loops at one vertex can be exchanged by rotating the cyclic order
    let g = graph(&[&[0, 1, 2, 3]], &[[0, 1], [2, 3]]);
    assert!(!canonical(&g).orientable);
    let g = graph(&[&[0], &[1]], &[[0, 1]]);
    let c = canonical(&g);
    assert!(c.orientable);
    assert_eq!(c.automorphism_order, 2);
    // two disjoint single edges swap an odd number of edges
    let g = graph(&[&[0], &[1], &[2], &[3]], &[[0, 1], [2, 3]]);
    assert!(!canonical(&g).orientable);
}

#[test]
fn contraction() {
    let (h, s) = graph(&[&[0], &[1]], &[[0, 1]]).contract_edge(0).unwrap();
    assert_eq!((h.flag_count(), h.isolated(), h.vertex_count(), s), (0, 1, 1, 1));
    // theta graph: three edges between two trivalent vertices
    let theta = graph(&[&[0, 1, 2], &[3, 4, 5]], &[[0, 3], [1, 5], [2, 4]]);
    let (h, s) = theta.contract_edge(1).unwrap();
    assert_eq!(s, -1);
    assert_eq!(h.vertex_cycles(), vec![vec![0, 2, 3, 1]]);
    assert_eq!(h.edges(), &[[0, 2], [1, 3]]);
    assert!(matches!(graph(&[&[0, 1]], &[[0, 1]]).contract_edge(0), Err(Error::LoopContraction(0))));
}

#[test]
fn splitting() {
    let star = graph(&[&[0, 1, 2, 3], &[4], &[5], &[6], &[7]], &[[0, 4], [1, 5], [2, 6], [3, 7]]);
    let (h, s) = star.split_vertex(1, 3).unwrap();
    assert_eq!(s, -1);
    assert_eq!(h.vertex_count(), 6);
    assert_eq!(h.edge_count(), 3);
    assert!(h.vertex_cycles().iter().all(|c| c.len() == 1));
    assert!(matches!(star.split_vertex(0, 1), Err(Error::AdjacentFlags(0, 1))));
    let mixed = colored(
        &[&[0, 1, 2, 3], &[4], &[5], &[6], &[7]],
        &[[0, 4], [1, 5], [2, 6], [3, 7]],
        &[Color::Black, Color::Black, Color::White, Color::Black],
    );
    assert!(matches!(mixed.split_vertex(0, 2), Err(Error::ColorMismatch(0, 2))));
    // splitting along the two ends of a loop discards it
    let g = graph(&[&[0, 1, 2, 3]], &[[0, 2], [1, 3]]);
    let (h, s) = g.split_vertex(0, 2).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count(), s), (2, 1, 1));
    assert_eq!(g.loop_splits(), vec![(0, 2), (1, 3)]);
    assert!(graph(&[&[0, 1, 2, 3]], &[[0, 1], [2, 3]]).loop_splits().is_empty());
}

#[test]
fn differentials_square_to_zero_and_anticommute() {
    for colored in [false, true] {
        let gc = GraphComplex::new(colored, 4);
        let r = gc.identities(4, 4).unwrap();
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }
}

#[test]
fn zero_columns() {
    let gc = GraphComplex::new(false, 3);
    assert_eq!(gc.boundary_matrix(1, 0).unwrap().nnz(), 0);
    // every vertex of the single edge and of the loop has valence at most 2
    assert_eq!(gc.coboundary_matrix(2, 1).unwrap().nnz(), 0);
    assert_eq!(gc.coboundary_matrix(1, 1).unwrap().nnz(), 0);
}

#[test]
fn frozen_small_matrices() {
    let f = fixtures();
    for (name, colored) in [("plain", false), ("colored", true)] {
        let gc = GraphComplex::new(colored, 2);
        let entry = &f[format!("{name}_coboundary_1_2")];
        let expected = SparseExactMatrix::from_triplet_text(entry["matrix"].as_str().unwrap()).unwrap();
        assert_eq!(gc.coboundary_matrix(1, 2).unwrap(), expected);
        let source: Vec<GraphExchange> = serde_json::from_value(entry["source"].clone()).unwrap();
        let basis: Vec<GraphExchange> = gc.basis(1, 2).iter().map(|g| g.to_exchange()).collect();
        assert_eq!(basis, source);
    }
}

#[test]
fn frozen_rank_tables_and_alpha_independence() {
    let f = fixtures();
    for (name, colored) in [("plain", false), ("colored", true)] {
        let gc = GraphComplex::new(colored, 4);
        let entry = &f[format!("{name}_homology_j3")];
        for (p, key) in [(0, "class0"), (1, "class1")] {
            let one = gc.diagonal_homology(p, 4, 1).unwrap();
            let two = gc.diagonal_homology(p, 4, 2).unwrap();
            assert_eq!(one.homology, two.homology);
            assert_eq!(one.ranks, two.ranks);
            assert_eq!(serde_json::to_value(&one).unwrap(), entry[key]);
        }
        assert_eq!(serde_json::to_value(gc.total_homology(4, 1).unwrap()).unwrap(), entry["total"]);
    }
}

#[test]
fn homology_windows() {
    let gc = GraphComplex::new(false, 2);
    assert!(gc.diagonal_homology(0, 0, 1).unwrap().homology.is_empty());
    assert!(matches!(gc.diagonal_homology(0, 3, 1), Err(Error::SizeBound(_))));
    assert!(gc.diagonal_homology(0, 2, 0).is_err());
}

#[test]
fn local_systems() {
    let black = colored(&[&[0], &[1]], &[[0, 1]], &[Color::Black]);
    let ls = local_system(&black).unwrap();
    assert_eq!((ls.parity, ls.white_flags, ls.black_edges), (0, 0, 1));
    // the swap reverses the black edge and exchanges the two odd vertex lines
    assert_eq!(ls.characters, vec![1]);
    let white_loop = colored(&[&[0, 1]], &[[0, 1]], &[Color::White]);
    let ls = local_system(&white_loop).unwrap();
    assert_eq!((ls.white_flags, ls.parity), (2, 1));
    assert_eq!(ls.characters, vec![-1]);
    assert!(!ls.trivial);
    let asymmetric = colored(&[&[0, 1, 2], &[3]], &[[0, 2], [1, 3]], &[Color::Black, Color::Black]);
    let ls = local_system(&asymmetric).unwrap();
    assert!(ls.trivial && ls.characters.is_empty());
    assert!(local_system(&graph(&[&[0], &[1]], &[[0, 1]])).is_err());
    for g in classes_by_edges(3, true).iter().flatten() {
        assert_eq!(local_system(g).unwrap().white_flag_parity, 0);
    }
}

#[test]
fn exchange_round_trip() {
    let g = colored(&[&[0, 2, 1], &[3], &[]], &[[0, 3], [1, 2]], &[Color::White, Color::Black]);
    let x = g.to_exchange();
    let text = serde_json::to_string(&x).unwrap();
    let back = FatGraph::from_exchange(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.isolated(), 1);
    let bad = GraphExchange { flags: 3, ..x };
    assert!(matches!(FatGraph::from_exchange(&bad), Err(Error::MalformedGraph(_))));
}

#[test]
fn disjoint_union_adds_parity() {
    let classes = classes_by_edges(2, false);
    for a in classes.iter().flatten() {
        for b in classes.iter().flatten() {
            assert_eq!(a.disjoint_union(b).parity_class(), (a.parity_class() + b.parity_class()) % 2);
        }
    }
}

fn arb_graph() -> impl Strategy<Value = (FatGraph, Vec<usize>, usize)> {
    let pool: Vec<FatGraph> = classes_by_edges(4, true).into_iter().flatten().collect();
    (0..pool.len(), any::<u64>(), any::<usize>()).prop_map(move |(i, seed, t)| {
        let g = pool[i].clone();
        let n = g.flag_count();
        let mut pi: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pi.swap(k, (s >> 33) as usize % (k + 1));
        }
        (g, pi, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_a_relabeling_invariant((g, pi, _) in arb_graph()) {
        let c = canonical(&g);
        let h = relabel(&g, &pi);
        let ch = canonical(&h);
        prop_assert_eq!(&ch.graph, &c.graph);
        prop_assert_eq!(ch.orientable, c.orientable);
        prop_assert_eq!(ch.automorphism_order, c.automorphism_order);
        if c.orientable {
            prop_assert_eq!(ch.sign, c.sign);
        }
        prop_assert_eq!(canonical(&c.graph).graph, c.graph.clone());
        prop_assert_eq!(canonical(&c.graph).sign, 1);
    }

    #[test]
    fn swapping_edges_flips_the_sign((g, _, t) in arb_graph()) {
        prop_assume!(g.edge_count() >= 2);
        let c = canonical(&g);
        prop_assume!(c.orientable);
        let e = t % (g.edge_count() - 1);
        let mut x = g.to_exchange();
        x.orientation.swap(e, e + 1);
        let h = FatGraph::from_exchange(&x).unwrap();
        prop_assert_eq!(canonical(&h).sign, -c.sign);
    }

    #[test]
    fn morphisms_preserve_euler_parity((g, _, t) in arb_graph()) {
        for e in 0..g.edge_count() {
            if let Ok((h, _)) = g.contract_edge(e) {
                prop_assert_eq!(h.parity_class(), g.parity_class());
            }
        }
        let pairs = g.split_pairs();
        if !pairs.is_empty() {
            let (a, b) = pairs[t % pairs.len()];
            let (h, _) = g.split_vertex(a, b).unwrap();
            prop_assert_eq!(h.parity_class(), g.parity_class());
            prop_assert_eq!(h.edge_count() + 1, g.edge_count());
        }
    }
}
