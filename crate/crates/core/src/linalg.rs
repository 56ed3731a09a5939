//! Exact sparse linear algebra over the rationals.
//!
//! Matrices follow the column convention: a map `A -> B` is stored with
//! `rows = dim B` and `cols = dim A`, column `c` holding the image of the
//! `c`-th basis vector of `A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add(i, i, Q::one());
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Parse(format!("entry ({r},{c}) out of range {rows}x{cols}")));
            }
            m.add(r, c, v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nr, nc);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.add(i, j, v.clone());
            }
        }
        m
    }

    /// Adds `v` to entry `(r, c)`, dropping the entry if it cancels.
    pub fn add(&mut self, r: usize, c: usize, v: Q) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.add(r, c, v * s);
        }
        m
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut m = self.clone();
        for (&(r, c), v) in &other.entries {
            m.add(r, c, v.clone());
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    m.add(r, c, a * b);
                }
            }
        }
        m
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = Self::zeros(self.rows, cols.len());
        for (&(r, c), v) in &self.entries {
            if let Some(&nc) = pos.get(&c) {
                m.add(r, nc, v.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Coordinate triplet text: header `rows cols nnz`, then `row col p/q`.
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {}", scalar::format(v));
        }
        s
    }

    pub fn from_triplet_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = h[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut trips = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(Error::Parse(format!("bad triplet {line:?}")));
            };
            let r = r.parse().map_err(|_| Error::Parse(format!("bad row in {line:?}")))?;
            let c = c.parse().map_err(|_| Error::Parse(format!("bad col in {line:?}")))?;
            trips.push((r, c, scalar::parse(v)?));
        }
        if trips.len() != nnz {
            return Err(Error::Parse(format!("expected {nnz} entries, found {}", trips.len())));
        }
        Self::from_triplets(rows, cols, trips)
    }

    /// Rows as primitive integer vectors (denominators cleared, content removed).
    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let l = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let mut ints: Vec<(usize, BigInt)> =
                    r.into_iter().map(|(c, v)| (c, (v * Q::from_integer(l.clone())).to_integer())).collect();
                make_primitive(&mut ints);
                ints
            })
            .collect()
    }
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a*target - b*pivot`, both sparse and sorted by column.
fn combine(target: &[(usize, BigInt)], a: &BigInt, pivot: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ct = target.get(i).map(|x| x.0);
        let cp = pivot.get(j).map(|x| x.0);
        let (c, v) = match (ct, cp) {
            (Some(x), Some(y)) if x == y => {
                let v = a * &target[i].1 - b * &pivot[j].1;
                i += 1;
                j += 1;
                (x, v)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, a * &target[i - 1].1)
            }
            (Some(x), None) => {
                i += 1;
                (x, a * &target[i - 1].1)
            }
            (_, Some(y)) => {
                j += 1;
                (y, -(b * &pivot[j - 1].1))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Exact rank by fraction-free elimination over primitive integer rows,
/// with Markowitz-style pivot choice (sparsest column, then shortest row).
pub fn rank(m: &SparseExactMatrix) -> usize {
    // Eliminate along the shorter dimension's rows.
    let work = if m.rows > m.cols { m.transpose() } else { m.clone() };
    let mut rows: Vec<Option<Vec<(usize, BigInt)>>> = work.integer_rows().into_iter().map(Some).collect();
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows.entry(*c).or_default().insert(i);
        }
    }
    let mut rk = 0;
    loop {
        let Some((&pc, _)) = col_rows
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .min_by_key(|(c, s)| (s.len(), **c))
        else {
            break;
        };
        let cands = col_rows[&pc].clone();
        let pr = *cands
            .iter()
            .min_by_key(|&&r| (rows[r].as_ref().unwrap().len(), r))
            .unwrap();
        let pivot = rows[pr].take().unwrap();
        for (c, _) in &pivot {
            if let Some(s) = col_rows.get_mut(c) {
                s.remove(&pr);
            }
        }
        let pv = pivot.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
        for &r in cands.iter().filter(|&&r| r != pr) {
            let target = rows[r].take().unwrap();
            let tv = target.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
            let g = pv.gcd(&tv);
            let (a, b) = (&pv / &g, &tv / &g);
            for (c, _) in &target {
                col_rows.get_mut(c).unwrap().remove(&r);
            }
            let mut nr = combine(&target, &a, &pivot, &b);
            make_primitive(&mut nr);
            for (c, _) in &nr {
                col_rows.entry(*c).or_default().insert(r);
            }
            rows[r] = if nr.is_empty() { None } else { Some(nr) };
        }
        col_rows.remove(&pc);
        rk += 1;
    }
    rk
}

/// Basis of the null space `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseExactMatrix) -> Vec<Vec<Q>> {
    let (rref, pivots) = rref(m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Q::zero(); m.cols];
        v[free] = Q::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon form of a dense copy; returns rows and pivot columns.
fn rref(m: &SparseExactMatrix) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// `dim B - rank(d_in) - rank(d_out)` for `A -> B -> C`, after checking
/// that the composite vanishes.
pub fn homology_rank(d_in: &SparseExactMatrix, d_out: &SparseExactMatrix) -> Result<usize> {
    if d_in.rows != d_out.cols {
        return Err(Error::Precondition(format!(
            "middle dimensions differ: {} vs {}",
            d_in.rows, d_out.cols
        )));
    }
    let comp = d_out.mul(d_in);
    if let Some((_, c, _)) = comp.entries().next() {
        return Err(Error::NonzeroComposition(c));
    }
    let h = d_in.rows - rank(d_in) - rank(d_out);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&SparseExactMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&SparseExactMatrix::identity(5)), 5);
        let m = SparseExactMatrix::from_dense(&[
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![frac(1, 2), int(0), int(1)],
        ]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.transpose()), 2);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = SparseExactMatrix::from_dense(&[vec![int(1), int(1), int(1)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Q = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn homology_checks_composition() {
        let d_in = SparseExactMatrix::from_dense(&[vec![int(1)], vec![int(1)]]);
        let d_out = SparseExactMatrix::from_dense(&[vec![int(1), int(-1)]]);
        assert_eq!(homology_rank(&d_in, &d_out).unwrap(), 0);
        let bad = SparseExactMatrix::from_dense(&[vec![int(1), int(1)]]);
        assert!(matches!(homology_rank(&d_in, &bad), Err(Error::NonzeroComposition(0))));
        let z_in = SparseExactMatrix::zeros(3, 0);
        let z_out = SparseExactMatrix::zeros(0, 3);
        assert_eq!(homology_rank(&z_in, &z_out).unwrap(), 3);
    }

    #[test]
    fn triplet_round_trip() {
        let m = SparseExactMatrix::from_triplets(2, 3, [(0, 1, frac(-3, 4)), (1, 2, int(5))]).unwrap();
        let t = m.to_triplet_text();
        assert!(t.starts_with("2 3 2\n"));
        assert_eq!(SparseExactMatrix::from_triplet_text(&t).unwrap(), m);
        assert!(SparseExactMatrix::from_triplet_text("1 1 1\n0 0 0.5").is_err());
    }
}
