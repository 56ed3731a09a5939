use std::collections::VecDeque;

use super::fatgraph::{Color, FatGraph};

/// Canonical representative of an oriented fat graph.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub graph: FatGraph,
    /// Sign relating the input orientation to the canonical edge order.
    pub sign: i64,
    /// False when some automorphism reverses the orientation, so the class is zero.
    pub orientable: bool,
    pub automorphism_order: u128,
    /// Old flag to canonical flag.
    pub relabel: Vec<usize>,
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

struct Component {
    flags: Vec<usize>,
    code: Vec<u32>,
    /// Labelings (old flag to local label) of every start realizing `code`.
    labelings: Vec<Vec<usize>>,
}

fn color_code(c: Color) -> u32 {
    match c {
        Color::Black => 0,
        Color::White => 1,
    }
}

fn bfs_code(g: &FatGraph, pair: &[usize], colors: &[Color], start: usize, size: usize) -> (Vec<u32>, Vec<usize>) {
    let mut label = vec![usize::MAX; g.flag_count()];
    let mut order = Vec::with_capacity(size);
    let mut queue = VecDeque::from([start]);
    label[start] = 0;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for h in [g.next(f), pair[f]] {
            if label[h] == usize::MAX {
                label[h] = order.len() + queue.len();
                queue.push_back(h);
            }
        }
    }
    let mut code = Vec::with_capacity(3 * size);
    for &f in &order {
        code.push(label[g.next(f)] as u32);
        code.push(label[pair[f]] as u32);
        code.push(color_code(colors[f]));
    }
    (code, label)
}

fn analyse(g: &FatGraph) -> Vec<Component> {
    let pair = g.pairing();
    let colors: Vec<Color> = (0..g.flag_count()).map(|f| g.flag_color(f)).collect();
    let mut comps: Vec<Component> = g
        .components()
        .into_iter()
        .map(|flags| {
            let mut best: Option<(Vec<u32>, Vec<Vec<usize>>)> = None;
            for &s in &flags {
                let (code, label) = bfs_code(g, &pair, &colors, s, flags.len());
                match &mut best {
                    Some((c, ls)) if *c == code => ls.push(label),
                    Some((c, _)) if *c < code => {}
                    _ => best = Some((code, vec![label])),
                }
            }
            let (code, labelings) = best.expect("components are nonempty");
            Component { flags, code, labelings }
        })
        .collect();
    comps.sort_by(|a, b| (a.flags.len(), &a.code).cmp(&(b.flags.len(), &b.code)));
    comps
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Sign of the permutation an automorphism (flag map) induces on edges.
pub(crate) fn edge_sign(g: &FatGraph, alpha: &[usize]) -> i64 {
    let perm: Vec<usize> = g.edges().iter().map(|[a, _]| g.edge_of(alpha[*a])).collect();
    permutation_sign(&perm)
}

/// Flag maps generating the automorphism group: internal symmetries of each
/// component and swaps of neighbouring identical components.
pub fn automorphism_generators(g: &FatGraph) -> Vec<Vec<usize>> {
    let comps = analyse(g);
    let n = g.flag_count();
    let inverse = |label: &Vec<usize>, flags: &[usize]| {
        let mut inv = vec![0; flags.len()];
        for &f in flags {
            inv[label[f]] = f;
        }
        inv
    };
    let mut out = Vec::new();
    for c in &comps {
        let base = inverse(&c.labelings[0], &c.flags);
        for l in &c.labelings[1..] {
            let mut alpha: Vec<usize> = (0..n).collect();
            for &f in &c.flags {
                alpha[f] = base[l[f]];
            }
            out.push(alpha);
        }
    }
    for w in comps.windows(2) {
        if w[0].code == w[1].code {
            let to1 = inverse(&w[1].labelings[0], &w[1].flags);
            let to0 = inverse(&w[0].labelings[0], &w[0].flags);
            let mut alpha: Vec<usize> = (0..n).collect();
            for &f in &w[0].flags {
                alpha[f] = to1[w[0].labelings[0][f]];
            }
            for &f in &w[1].flags {
                alpha[f] = to0[w[1].labelings[0][f]];
            }
            out.push(alpha);
        }
    }
    out
}

pub fn canonical(g: &FatGraph) -> Canonical {
    let comps = analyse(g);
    let n = g.flag_count();
    let mut relabel = vec![0; n];
    let mut next = vec![0; n];
    let mut off = 0;
    let mut automorphism_order = factorial(g.isolated());
    let mut run = 0;
    for (i, c) in comps.iter().enumerate() {
        let label = &c.labelings[0];
        for &f in &c.flags {
            relabel[f] = off + label[f];
        }
        for (l, chunk) in c.code.chunks(3).enumerate() {
            next[off + l] = off + chunk[0] as usize;
        }
        off += c.flags.len();
        automorphism_order *= c.labelings.len() as u128;
        run = if i > 0 && comps[i - 1].code == c.code { run + 1 } else { 1 };
        if i + 1 == comps.len() || comps[i + 1].code != c.code {
            automorphism_order *= factorial(run);
        }
    }
    let mut keyed: Vec<([usize; 2], Color, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(pos, [a, b])| {
            let (x, y) = (relabel[*a], relabel[*b]);
            ([x.min(y), x.max(y)], g.edge_color(pos), pos)
        })
        .collect();
    keyed.sort_unstable();
    let mut position = vec![0; keyed.len()];
    for (new, (_, _, old)) in keyed.iter().enumerate() {
        position[*old] = new;
    }
    let sign = permutation_sign(&position);
    let graph = FatGraph {
        next,
        edges: keyed.iter().map(|(e, _, _)| *e).collect(),
        edge_colors: keyed.iter().map(|(_, c, _)| *c).collect(),
        isolated: g.isolated(),
        colored: g.is_colored(),
    };
    let orientable = automorphism_generators(g).iter().all(|a| edge_sign(g, a) == 1);
    Canonical { graph, sign, orientable, automorphism_order, relabel }
}
