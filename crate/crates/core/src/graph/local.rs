use serde::Serialize;

use super::canonical::automorphism_generators;
use super::canonical::permutation_sign;
use super::fatgraph::{Color, FatGraph};
use crate::error::{Error, Result};

/// Fibre of the orientation local system at a colored graph: one odd line
/// per vertex and per white flag, one even line per black edge.
#[derive(Clone, Debug, Serialize)]
pub struct LocalSystem {
    /// Parity of the whole fibre, vertex lines included.
    pub parity: u8,
    /// Parity of the white flags alone; always even.
    pub white_flag_parity: u8,
    pub vertices: usize,
    pub white_flags: usize,
    pub black_edges: usize,
    /// Character value on each automorphism generator.
    pub characters: Vec<i64>,
    pub trivial: bool,
}

fn odd_lines(g: &FatGraph) -> Vec<(usize, Option<usize>)> {
    let mut out = Vec::new();
    for (v, cycle) in g.vertex_cycles().iter().enumerate() {
        out.push((v, None));
        out.extend(cycle.iter().filter(|&&f| g.flag_color(f) == Color::White).map(|&f| (v, Some(f))));
    }
    out
}

/// Sign by which the flag map `alpha` acts on the fibre.
pub fn character(g: &FatGraph, alpha: &[usize]) -> i64 {
    let cycles = g.vertex_cycles();
    let vertex_of = |f: usize| cycles.iter().position(|c| c.contains(&f)).expect("flag lies at a vertex");
    let lines = odd_lines(g);
    let image: Vec<usize> = lines
        .iter()
        .map(|&(v, f)| {
            let target = match f {
                Some(f) => (vertex_of(alpha[f]), Some(alpha[f])),
                None => (vertex_of(alpha[cycles[v][0]]), None),
            };
            lines.iter().position(|l| *l == target).expect("automorphisms preserve colors")
        })
        .collect();
    let mut sign = permutation_sign(&image);
    for (e, [a, b]) in g.edges().iter().enumerate() {
        if g.edge_color(e) == Color::Black {
            let (x, y) = (alpha[*a], alpha[*b]);
            let target = g.edges()[g.edge_of(x)];
            if (x, y) != (target[0], target[1]) {
                sign = -sign;
            }
        }
    }
    sign
}

pub fn local_system(g: &FatGraph) -> Result<LocalSystem> {
    if !g.is_colored() {
        return Err(Error::Precondition("the local system needs a colored graph".into()));
    }
    let white_flags = (0..g.flag_count()).filter(|&f| g.flag_color(f) == Color::White).count();
    let black_edges = (0..g.edge_count()).filter(|&e| g.edge_color(e) == Color::Black).count();
    let vertices = g.vertex_count();
    let characters: Vec<i64> = automorphism_generators(g).iter().map(|a| character(g, a)).collect();
    Ok(LocalSystem {
        parity: ((vertices + white_flags) % 2) as u8,
        white_flag_parity: (white_flags % 2) as u8,
        vertices,
        white_flags,
        black_edges,
        trivial: characters.iter().all(|&c| c == 1),
        characters,
    })
}
