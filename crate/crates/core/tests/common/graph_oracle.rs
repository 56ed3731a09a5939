//! Brute-force fat-graph classification: every (cyclic orders, pairing,
//! edge colors) on `2j` flags, grouped into orbits under all relabelings.

use std::collections::{BTreeMap, HashSet};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Labeled {
    next: Vec<usize>,
    pair: Vec<usize>,
    color: Vec<u8>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairings(flags: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if flags.is_empty() {
        return vec![vec![]];
    }
    let a = flags[0];
    let mut out = Vec::new();
    for i in 1..flags.len() {
        let rest: Vec<usize> = flags[1..].iter().enumerate().filter(|(k, _)| *k + 1 != i).map(|(_, f)| *f).collect();
        for mut p in pairings(&rest) {
            p.insert(0, (a, flags[i]));
            out.push(p);
        }
    }
    out
}

fn cycles(next: &[usize]) -> usize {
    let mut seen = vec![false; next.len()];
    let mut c = 0;
    for s in 0..next.len() {
        if !seen[s] {
            c += 1;
            let mut f = s;
            while !seen[f] {
                seen[f] = true;
                f = next[f];
            }
        }
    }
    c
}

fn relabel(g: &Labeled, pi: &[usize]) -> Labeled {
    let n = pi.len();
    let mut next = vec![0; n];
    let mut pair = vec![0; n];
    let mut color = vec![0; n];
    for f in 0..n {
        next[pi[f]] = pi[g.next[f]];
        pair[pi[f]] = pi[g.pair[f]];
        color[pi[f]] = g.color[f];
    }
    Labeled { next, pair, color }
}

fn edge_permutation_is_odd(g: &Labeled, pi: &[usize]) -> bool {
    let edges: Vec<usize> = (0..g.pair.len()).filter(|&f| f < g.pair[f]).collect();
    let pos = |f: usize| edges.iter().position(|&e| e == f.min(g.pair[f])).unwrap();
    let perm: Vec<usize> = edges.iter().map(|&e| pos(pi[e])).collect();
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// `(k → (classes, orientable classes))` for graphs with `j` edges and no
/// isolated vertices.
pub fn brute_counts(j: usize, colored: bool) -> BTreeMap<usize, (usize, usize)> {
    let n = 2 * j;
    let perms = permutations(n);
    let flags: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Labeled> = HashSet::new();
    let mut out: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let colorings: Vec<Vec<u8>> = if colored {
        (0..1u32 << j).map(|m| (0..j).map(|e| ((m >> e) & 1) as u8).collect()).collect()
    } else {
        vec![vec![0; j]]
    };
    for p in pairings(&flags) {
        let mut pair = vec![0; n];
        for &(a, b) in &p {
            pair[a] = b;
            pair[b] = a;
        }
        for cs in &colorings {
            let mut color = vec![0; n];
            for (e, &(a, b)) in p.iter().enumerate() {
                color[a] = cs[e];
                color[b] = cs[e];
            }
            for next in &perms {
                let g = Labeled { next: next.clone(), pair: pair.clone(), color: color.clone() };
                if seen.contains(&g) {
                    continue;
                }
                let mut odd = false;
                for pi in &perms {
                    let h = relabel(&g, pi);
                    if h == g && edge_permutation_is_odd(&g, pi) {
                        odd = true;
                    }
                    seen.insert(h);
                }
                let entry = out.entry(cycles(next)).or_default();
                entry.0 += 1;
                if !odd {
                    entry.1 += 1;
                }
            }
        }
    }
    out
}
