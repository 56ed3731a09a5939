use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canonical::canonical;
use super::fatgraph::{Color, FatGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphOptions {
    pub colored: bool,
    pub connected: bool,
    /// Allow vertices without flags.
    pub isolated: bool,
    pub parity_class: Option<u8>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Canonical graphs whose orientation survives automorphisms.
    pub graphs: Vec<FatGraph>,
    /// Isomorphism classes killed by an orientation-reversing automorphism.
    pub vanishing: Vec<FatGraph>,
}

/// Every graph without isolated vertices arises from one with an edge fewer
/// by inserting the two new flags into cyclic orders or as new vertices.
fn grow(g: &FatGraph, colors: &[Color]) -> Vec<FatGraph> {
    let n = g.flag_count();
    let mut out = Vec::new();
    for a_slot in 0..=n {
        let mut next_a = g.next.clone();
        next_a.push(n);
        if a_slot < n {
            next_a[n] = next_a[a_slot];
            next_a[a_slot] = n;
        }
        for b_slot in 0..=n + 1 {
            let mut next = next_a.clone();
            next.push(n + 1);
            if b_slot <= n {
                next[n + 1] = next[b_slot];
                next[b_slot] = n + 1;
            }
            for &c in colors {
                let mut edges = g.edges.clone();
                edges.push([n, n + 1]);
                let mut edge_colors = g.edge_colors.clone();
                edge_colors.push(c);
                let h = FatGraph { next: next.clone(), edges, edge_colors, isolated: 0, colored: g.colored };
                out.push(canonical(&h).graph);
            }
        }
    }
    out
}

/// All isomorphism classes without isolated vertices, indexed by edge count
/// `0..=jmax`. Unorientable classes are included.
pub fn classes_by_edges(jmax: usize, colored: bool) -> Vec<Vec<FatGraph>> {
    let colors: &[Color] = if colored { &[Color::Black, Color::White] } else { &[Color::Black] };
    let mut out = vec![vec![FatGraph::empty(colored)]];
    for _ in 0..jmax {
        let prev = out.last().expect("seeded with the empty graph");
        let set: BTreeSet<FatGraph> = prev.par_iter().flat_map_iter(|g| grow(g, colors)).collect();
        out.push(set.into_iter().collect());
    }
    out
}

/// Canonical graphs with `k` vertices and `j` edges drawn from `classes`
/// (as returned by [`classes_by_edges`]).
pub fn select(classes: &[Vec<FatGraph>], k: usize, j: usize, opts: GraphOptions) -> Enumeration {
    let mut graphs = Vec::new();
    let mut vanishing = Vec::new();
    if opts.parity_class.is_some_and(|p| (k + j) % 2 != p as usize) || j >= classes.len() {
        return Enumeration { graphs, vanishing };
    }
    for g in &classes[j] {
        let v = g.vertex_count();
        if v > k || (v < k && !opts.isolated) {
            continue;
        }
        let mut h = g.clone();
        h.isolated = k - v;
        if opts.connected && !h.is_connected() {
            continue;
        }
        if canonical(&h).orientable {
            graphs.push(h);
        } else {
            vanishing.push(h);
        }
    }
    Enumeration { graphs, vanishing }
}

pub fn enumerate(k: usize, j: usize, opts: GraphOptions) -> Enumeration {
    select(&classes_by_edges(j, opts.colored), k, j, opts)
}
