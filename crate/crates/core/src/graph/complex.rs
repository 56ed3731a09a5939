use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::canonical::canonical;
use super::enumerate::{classes_by_edges, select, GraphOptions};
use super::fatgraph::FatGraph;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseExactMatrix};
use crate::report::Report;
use crate::scalar::{int, Q};

struct Basis {
    graphs: Vec<FatGraph>,
    index: HashMap<FatGraph, usize>,
}

/// The bigraded complex `C^{k,j}` with edge contraction `∂: C^{k,j} → C^{k−1,j−1}`
/// and vertex splitting `d: C^{k,j} → C^{k+1,j−1}`. Graphs with a vertex
/// without flags are zero, so `k ≤ 2j`.
pub struct GraphComplex {
    colored: bool,
    classes: Vec<Vec<FatGraph>>,
    bases: BTreeMap<(usize, usize), Basis>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalHomology {
    pub parity_class: u8,
    pub alpha: i64,
    /// Chain dimension per edge count.
    pub dimensions: Vec<usize>,
    /// Rank of `δ` leaving each degree (index 0 is zero).
    pub ranks: Vec<usize>,
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalHomology {
    pub degrees: usize,
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
    pub total_even: usize,
    pub total_odd: usize,
}

impl GraphComplex {
    /// Chain groups for `j ≤ jmax`.
    pub fn new(colored: bool, jmax: usize) -> Self {
        let classes = classes_by_edges(jmax, colored);
        let opts = GraphOptions { colored, ..Default::default() };
        let keys: Vec<(usize, usize)> = (0..=jmax).flat_map(|j| (0..=2 * j).map(move |k| (k, j))).collect();
        let bases = keys
            .par_iter()
            .map(|&(k, j)| {
                let graphs = select(&classes, k, j, opts).graphs;
                let index = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
                ((k, j), Basis { graphs, index })
            })
            .collect();
        Self { colored, classes, bases }
    }

    pub fn jmax(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn is_colored(&self) -> bool {
        self.colored
    }

    pub fn basis(&self, k: usize, j: usize) -> &[FatGraph] {
        self.bases.get(&(k, j)).map(|b| b.graphs.as_slice()).unwrap_or(&[])
    }

    pub fn dimension(&self, k: usize, j: usize) -> usize {
        self.basis(k, j).len()
    }

    fn assemble(&self, k: usize, j: usize, target: (usize, usize), image: impl Fn(&FatGraph) -> Vec<(FatGraph, i64)> + Sync) -> Result<SparseExactMatrix> {
        if j > self.jmax() {
            return Err(Error::SizeBound(format!("C^({k},{j}) → C^({},{}) lies outside the window", target.0, target.1)));
        }
        let cols = self.basis(k, j);
        let rows = self.bases.get(&target);
        let entries: Vec<Vec<(usize, usize, i64)>> = cols
            .par_iter()
            .enumerate()
            .map(|(c, g)| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for (h, s) in image(g) {
                    if h.isolated() > 0 {
                        continue;
                    }
                    let can = canonical(&h);
                    if !can.orientable {
                        continue;
                    }
                    let r = rows.and_then(|b| b.index.get(&can.graph)).copied().expect("image lies in the target basis");
                    *acc.entry(r).or_default() += s * can.sign;
                }
                acc.into_iter().filter(|(_, v)| *v != 0).map(|(r, v)| (r, c, v)).collect()
            })
            .collect();
        let nrows = rows.map_or(0, |b| b.graphs.len());
        SparseExactMatrix::from_triplets(nrows, cols.len(), entries.into_iter().flatten().map(|(r, c, v)| (r, c, int(v))))
    }

    /// `∂: C^{k,j} → C^{k−1,j−1}`, summing contractions of non-loop edges.
    pub fn boundary_matrix(&self, k: usize, j: usize) -> Result<SparseExactMatrix> {
        if k == 0 || j == 0 {
            return Ok(SparseExactMatrix::zeros(0, self.dimension(k, j)));
        }
        self.assemble(k, j, (k - 1, j - 1), |g| {
            (0..g.edge_count()).filter(|&e| !g.is_loop(e)).map(|e| g.contract_edge(e).expect("non-loop edge")).collect()
        })
    }

    /// `d: C^{k,j} → C^{k+1,j−1}`, summing splits along the two ends of a loop.
    pub fn coboundary_matrix(&self, k: usize, j: usize) -> Result<SparseExactMatrix> {
        if j == 0 {
            return Ok(SparseExactMatrix::zeros(0, self.dimension(k, j)));
        }
        self.assemble(k, j, (k + 1, j - 1), |g| {
            g.loop_splits().into_iter().map(|(a, b)| g.split_vertex(a, b).expect("admissible split")).collect()
        })
    }

    /// Checks `∂² = 0`, `d² = 0` and `d∂ + ∂d = 0` on every source in the window.
    pub fn identities(&self, kmax: usize, jmax: usize) -> Result<Report> {
        let mut by_identity: BTreeMap<&str, usize> = BTreeMap::new();
        let mut failures = Vec::new();
        let mut checked = 0;
        for j in 2..=jmax {
            for k in 0..=kmax {
                if self.dimension(k, j) == 0 {
                    continue;
                }
                checked += 1;
                let mut record = |name: &'static str, m: SparseExactMatrix| {
                    let nnz = m.nnz();
                    *by_identity.entry(name).or_default() += nnz;
                    if nnz > 0 {
                        failures.push(format!("{name} at ({k},{j})"));
                    }
                };
                let d1 = self.coboundary_matrix(k, j)?;
                let b1 = self.boundary_matrix(k, j)?;
                record("d_squared", self.coboundary_matrix(k + 1, j - 1)?.mul(&d1));
                if k >= 1 {
                    record("boundary_squared", self.boundary_matrix(k - 1, j - 1)?.mul(&b1));
                    let cross = self.coboundary_matrix(k - 1, j - 1)?.mul(&b1).plus(&self.boundary_matrix(k + 1, j - 1)?.mul(&d1));
                    record("anticommutator", cross);
                } else {
                    record("anticommutator", self.boundary_matrix(k + 1, j - 1)?.mul(&d1));
                }
            }
        }
        let mut r = Report::new(if self.colored { "graph_identities_colored" } else { "graph_identities" })
            .detail("window", serde_json::json!({"kmax": kmax, "jmax": jmax}))
            .detail("sources_checked", checked);
        for (name, nnz) in &by_identity {
            r = r.detail(format!("{name}_nonzero_entries"), *nnz);
        }
        r = r.residual(by_identity.values().sum());
        if !failures.is_empty() {
            r = r.fail(failures.join(", "));
        }
        Ok(r)
    }

    /// Degree-`j` block of the diagonal complex of the given parity class.
    fn diagonal_degree(&self, parity: u8, j: usize) -> Vec<usize> {
        (0..=2 * j).filter(|k| (k + j) % 2 == parity as usize).collect()
    }

    /// `δ_α = d + α∂` from degree `j` to `j − 1` of the diagonal complex.
    pub fn diagonal_differential(&self, parity: u8, j: usize, alpha: i64) -> Result<SparseExactMatrix> {
        let src = self.diagonal_degree(parity, j);
        let dst = self.diagonal_degree(parity, j - 1);
        let offsets = |ks: &[usize], jj: usize| {
            let mut o = BTreeMap::new();
            let mut acc = 0;
            for &k in ks {
                o.insert(k, acc);
                acc += self.dimension(k, jj);
            }
            (o, acc)
        };
        let (col_off, ncols) = offsets(&src, j);
        let (row_off, nrows) = offsets(&dst, j - 1);
        let a = int(alpha);
        let mut triplets: Vec<(usize, usize, Q)> = Vec::new();
        for &k in &src {
            if let Some(&r0) = row_off.get(&(k + 1)) {
                for (r, c, v) in self.coboundary_matrix(k, j)?.entries() {
                    triplets.push((r0 + r, col_off[&k] + c, v.clone()));
                }
            }
            if k >= 1 {
                if let Some(&r0) = row_off.get(&(k - 1)) {
                    for (r, c, v) in self.boundary_matrix(k, j)?.entries() {
                        triplets.push((r0 + r, col_off[&k] + c, v * &a));
                    }
                }
            }
        }
        SparseExactMatrix::from_triplets(nrows, ncols, triplets)
    }

    /// Homology of the diagonal complex in degrees `0..degrees`; needs chain
    /// groups through degree `degrees`, so every reported degree is exact.
    pub fn diagonal_homology(&self, parity: u8, degrees: usize, alpha: i64) -> Result<DiagonalHomology> {
        if alpha == 0 {
            return Err(Error::Precondition("δ_α needs α ≠ 0".into()));
        }
        if degrees > self.jmax() {
            return Err(Error::SizeBound(format!("degree {degrees} is needed for homology below it, window stops at {}", self.jmax())));
        }
        let dimensions: Vec<usize> =
            (0..=degrees).map(|j| self.diagonal_degree(parity, j).iter().map(|&k| self.dimension(k, j)).sum()).collect();
        let mut ranks = vec![0];
        for j in 1..=degrees {
            ranks.push(rank(&self.diagonal_differential(parity, j, alpha)?));
        }
        let homology = (0..degrees).map(|j| dimensions[j] - ranks[j] - ranks[j + 1]).collect();
        Ok(DiagonalHomology {
            parity_class: parity,
            alpha,
            dimensions: dimensions[..degrees].to_vec(),
            ranks: ranks[..degrees].to_vec(),
            homology,
        })
    }

    /// `H^even` and `H^odd` assembled from both diagonal complexes, per degree.
    pub fn total_homology(&self, degrees: usize, alpha: i64) -> Result<TotalHomology> {
        let h0 = self.diagonal_homology(0, degrees, alpha)?.homology;
        let h1 = self.diagonal_homology(1, degrees, alpha)?.homology;
        let even: Vec<usize> = (0..degrees).map(|i| if i % 2 == 0 { h0[i] } else { h1[i] }).collect();
        let odd: Vec<usize> = (0..degrees).map(|i| if i % 2 == 0 { h1[i] } else { h0[i] }).collect();
        Ok(TotalHomology { degrees, total_even: even.iter().sum(), total_odd: odd.iter().sum(), even, odd })
    }
}
