use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Black,
    White,
}

/// A fat graph on flags `0..n`: `next` is the cyclic successor of a flag at
/// its vertex, `edges` lists flag pairs in orientation order, and vertices
/// without flags are counted in `isolated`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatGraph {
    pub(crate) next: Vec<usize>,
    pub(crate) edges: Vec<[usize; 2]>,
    pub(crate) edge_colors: Vec<Color>,
    pub(crate) isolated: usize,
    pub(crate) colored: bool,
}

impl FatGraph {
    pub fn new(next: Vec<usize>, edges: Vec<[usize; 2]>, edge_colors: Option<Vec<Color>>, isolated: usize) -> Result<Self> {
        let n = next.len();
        let mut seen = vec![false; n];
        for &f in &next {
            if f >= n || seen[f] {
                return Err(Error::MalformedGraph("cyclic orders do not form a permutation".into()));
            }
            seen[f] = true;
        }
        let mut covered = vec![false; n];
        for &[a, b] in &edges {
            if a >= n || b >= n || a == b || covered[a] || covered[b] {
                return Err(Error::MalformedGraph("edges do not pair the flags".into()));
            }
            covered[a] = true;
            covered[b] = true;
        }
        if covered.iter().any(|c| !c) {
            return Err(Error::MalformedGraph("unpaired flag".into()));
        }
        let colored = edge_colors.is_some();
        let edge_colors = edge_colors.unwrap_or_else(|| vec![Color::Black; edges.len()]);
        if edge_colors.len() != edges.len() {
            return Err(Error::MalformedGraph("one color per edge expected".into()));
        }
        Ok(Self { next, edges, edge_colors, isolated, colored })
    }

    /// Graph from vertex cycles; empty cycles are isolated vertices.
    pub fn from_cycles(cycles: &[Vec<usize>], edges: Vec<[usize; 2]>, edge_colors: Option<Vec<Color>>) -> Result<Self> {
        let n: usize = cycles.iter().map(Vec::len).sum();
        let mut next = vec![usize::MAX; n];
        for c in cycles {
            for (i, &f) in c.iter().enumerate() {
                if f >= n || next[f] != usize::MAX {
                    return Err(Error::MalformedGraph(format!("flag {f} listed twice or out of range")));
                }
                next[f] = c[(i + 1) % c.len()];
            }
        }
        let isolated = cycles.iter().filter(|c| c.is_empty()).count();
        Self::new(next, edges, edge_colors, isolated)
    }

    pub fn empty(colored: bool) -> Self {
        Self { next: Vec::new(), edges: Vec::new(), edge_colors: Vec::new(), isolated: 0, colored }
    }

    pub fn flag_count(&self) -> usize {
        self.next.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn isolated(&self) -> usize {
        self.isolated
    }

    pub fn is_colored(&self) -> bool {
        self.colored
    }

    pub fn next(&self, f: usize) -> usize {
        self.next[f]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_color(&self, e: usize) -> Color {
        self.edge_colors[e]
    }

    /// Orientation position of the edge carrying `f`.
    pub fn edge_of(&self, f: usize) -> usize {
        self.edges.iter().position(|e| e.contains(&f)).expect("every flag lies on an edge")
    }

    pub fn partner(&self, f: usize) -> usize {
        let [a, b] = self.edges[self.edge_of(f)];
        if a == f {
            b
        } else {
            a
        }
    }

    pub fn flag_color(&self, f: usize) -> Color {
        self.edge_colors[self.edge_of(f)]
    }

    /// Partner of every flag, as a permutation.
    pub fn pairing(&self) -> Vec<usize> {
        let mut p = vec![0; self.flag_count()];
        for &[a, b] in &self.edges {
            p[a] = b;
            p[b] = a;
        }
        p
    }

    /// Cycles of `next`, each starting at its least flag, ordered by that flag.
    pub fn vertex_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.flag_count()];
        let mut out = Vec::new();
        for s in 0..self.flag_count() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut f = self.next[s];
            while f != s {
                seen[f] = true;
                c.push(f);
                f = self.next[f];
            }
            out.push(c);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_cycles().len() + self.isolated
    }

    fn vertex_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.flag_count()];
        for (v, c) in self.vertex_cycles().iter().enumerate() {
            for &f in c {
                label[f] = v;
            }
        }
        label
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let label = self.vertex_labels();
        let [a, b] = self.edges[e];
        label[a] == label[b]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64
    }

    /// `0` for even Euler characteristic, `1` for odd.
    pub fn parity_class(&self) -> u8 {
        self.euler_characteristic().rem_euclid(2) as u8
    }

    /// Components with flags, as sorted flag sets; isolated vertices excluded.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.flag_count();
        let pair = self.pairing();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(f) = stack.pop() {
                members.push(f);
                for g in [self.next[f], pair[f]] {
                    if comp[g] == usize::MAX {
                        comp[g] = id;
                        stack.push(g);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() + self.isolated <= 1
    }

    /// Disjoint union, edges of `self` first.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.flag_count();
        let mut next = self.next.clone();
        next.extend(other.next.iter().map(|f| f + off));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|[a, b]| [a + off, b + off]));
        let mut edge_colors = self.edge_colors.clone();
        edge_colors.extend(&other.edge_colors);
        Self { next, edges, edge_colors, isolated: self.isolated + other.isolated, colored: self.colored || other.colored }
    }

    /// Removes the given flags, renumbering the rest in order.
    fn compact(
        next: &[usize],
        edges: Vec<[usize; 2]>,
        edge_colors: Vec<Color>,
        removed: &[usize],
        isolated: usize,
        colored: bool,
    ) -> Self {
        let n = next.len();
        let mut new_index = vec![usize::MAX; n];
        let mut k = 0;
        for (f, slot) in new_index.iter_mut().enumerate() {
            if !removed.contains(&f) {
                *slot = k;
                k += 1;
            }
        }
        let mut new_next = vec![0; k];
        for f in 0..n {
            if new_index[f] != usize::MAX {
                new_next[new_index[f]] = new_index[next[f]];
            }
        }
        let edges = edges.iter().map(|[a, b]| [new_index[*a], new_index[*b]]).collect();
        Self { next: new_next, edges, edge_colors, isolated, colored }
    }

    /// Contracts the non-loop edge at orientation position `e`. The merged
    /// vertex reads the flags after one endpoint, then those after the other.
    /// Sign `(−1)^e`.
    pub fn contract_edge(&self, e: usize) -> Result<(Self, i64)> {
        if e >= self.edge_count() {
            return Err(Error::MalformedGraph(format!("no edge {e}")));
        }
        if self.is_loop(e) {
            return Err(Error::LoopContraction(e));
        }
        let [f1, f2] = self.edges[e];
        let mut next = self.next.clone();
        let after1 = self.next[f1];
        let after2 = self.next[f2];
        let before1 = self.predecessor(f1);
        let before2 = self.predecessor(f2);
        let mut isolated = self.isolated;
        match (after1 == f1, after2 == f2) {
            (true, true) => isolated += 1,
            (true, false) => next[before2] = after2,
            (false, true) => next[before1] = after1,
            (false, false) => {
                next[before1] = after2;
                next[before2] = after1;
            }
        }
        let mut edges = self.edges.clone();
        edges.remove(e);
        let mut colors = self.edge_colors.clone();
        colors.remove(e);
        let g = Self::compact(&next, edges, colors, &[f1, f2], isolated, self.colored);
        Ok((g, if e % 2 == 0 { 1 } else { -1 }))
    }

    pub fn predecessor(&self, f: usize) -> usize {
        let mut g = f;
        while self.next[g] != f {
            g = self.next[g];
        }
        g
    }

    /// Whether `(f1, f2)` is an admissible split: same vertex, distinct, not
    /// cyclically adjacent, same color.
    pub fn check_split(&self, f1: usize, f2: usize) -> Result<()> {
        let n = self.flag_count();
        if f1 >= n || f2 >= n || f1 == f2 {
            return Err(Error::MalformedGraph(format!("flags {f1},{f2} do not name two flags")));
        }
        let mut g = self.next[f1];
        while g != f1 && g != f2 {
            g = self.next[g];
        }
        if g != f2 {
            return Err(Error::Precondition(format!("flags {f1} and {f2} lie at different vertices")));
        }
        if self.next[f1] == f2 || self.next[f2] == f1 {
            return Err(Error::AdjacentFlags(f1, f2));
        }
        if self.flag_color(f1) != self.flag_color(f2) {
            return Err(Error::ColorMismatch(f1, f2));
        }
        Ok(())
    }

    /// Splits the vertex of `f1`, `f2` along the two flags: the arcs strictly
    /// between them become two vertices and the two edges through `f1`, `f2`
    /// merge into one edge at the lower parent position, with sign `(−1)^h`
    /// for `h` the higher parent position. When `f1`, `f2` are the ends of one
    /// loop the bypass closes up and is discarded, with sign `(−1)^e` for the
    /// loop position `e`.
    pub fn split_vertex(&self, f1: usize, f2: usize) -> Result<(Self, i64)> {
        self.check_split(f1, f2)?;
        let mut next = self.next.clone();
        let arc1_last = self.predecessor(f2);
        let arc2_last = self.predecessor(f1);
        next[arc1_last] = self.next[f1];
        next[arc2_last] = self.next[f2];
        let (e1, e2) = (self.edge_of(f1), self.edge_of(f2));
        let (g1, g2) = (self.partner(f1), self.partner(f2));
        if e1 == e2 {
            let mut edges = self.edges.clone();
            edges.remove(e1);
            let mut colors = self.edge_colors.clone();
            colors.remove(e1);
            let g = Self::compact(&next, edges, colors, &[f1, f2], self.isolated, self.colored);
            return Ok((g, if e1 % 2 == 0 { 1 } else { -1 }));
        }
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let mut edges = self.edges.clone();
        edges[lo] = [g1.min(g2), g1.max(g2)];
        edges.remove(hi);
        let mut colors = self.edge_colors.clone();
        colors.remove(hi);
        let g = Self::compact(&next, edges, colors, &[f1, f2], self.isolated, self.colored);
        Ok((g, if hi % 2 == 0 { 1 } else { -1 }))
    }

    /// Admissible split pairs `(f1, f2)` with `f1 < f2`.
    pub fn split_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in self.vertex_cycles() {
            for (i, &a) in c.iter().enumerate() {
                for &b in &c[i + 1..] {
                    let (f1, f2) = (a.min(b), a.max(b));
                    if self.check_split(f1, f2).is_ok() {
                        out.push((f1, f2));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Admissible splits along the two ends of a loop, as `(f1, f2)` with `f1 < f2`.
    pub fn loop_splits(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.edges.iter().map(|&[a, b]| (a.min(b), a.max(b))).filter(|&(a, b)| self.check_split(a, b).is_ok()).collect();
        out.sort_unstable();
        out
    }

    pub fn to_exchange(&self) -> GraphExchange {
        let mut cycles = self.vertex_cycles();
        cycles.extend(std::iter::repeat_n(Vec::new(), self.isolated));
        GraphExchange {
            flags: self.flag_count(),
            vertex_cycles: cycles,
            edges: self.edges.iter().map(|e| e.to_vec()).collect(),
            colors: self.colored.then(|| {
                self.edge_colors.iter().map(|c| if *c == Color::Black { "b" } else { "w" }.to_string()).collect()
            }),
            orientation: (0..self.edge_count()).collect(),
        }
    }

    pub fn from_exchange(x: &GraphExchange) -> Result<Self> {
        let flags: usize = x.vertex_cycles.iter().map(Vec::len).sum();
        if flags != x.flags {
            return Err(Error::MalformedGraph(format!("{} flags declared, {flags} listed", x.flags)));
        }
        let mut order = x.orientation.clone();
        order.sort_unstable();
        if order != (0..x.edges.len()).collect::<Vec<_>>() {
            return Err(Error::MalformedGraph("orientation must order every edge once".into()));
        }
        let mut edges = Vec::new();
        for &i in &x.orientation {
            match x.edges[i].as_slice() {
                [a, b] => edges.push([*a, *b]),
                _ => return Err(Error::MalformedGraph("an edge has two flags".into())),
            }
        }
        let colors = match &x.colors {
            None => None,
            Some(cs) => {
                if cs.len() != x.edges.len() {
                    return Err(Error::MalformedGraph("one color per edge expected".into()));
                }
                let mut out = Vec::new();
                for &i in &x.orientation {
                    out.push(match cs[i].as_str() {
                        "b" => Color::Black,
                        "w" => Color::White,
                        other => return Err(Error::MalformedGraph(format!("unknown color {other:?}"))),
                    });
                }
                Some(out)
            }
        };
        Self::from_cycles(&x.vertex_cycles, edges, colors)
    }
}

/// Graph exchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphExchange {
    pub flags: usize,
    pub vertex_cycles: Vec<Vec<usize>>,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
    pub orientation: Vec<usize>,
}
