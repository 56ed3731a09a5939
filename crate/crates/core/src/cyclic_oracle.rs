//! Connes' cyclic cochain complex of a finite-dimensional graded algebra,
//! computed by brute force on dense cochain spaces. Kept independent of the
//! necklace machinery so it can cross-check it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::graded::FrobeniusAlgebra;
use crate::scalar::{sign, Q};

fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let Some(ncol) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rk = 0;
    for c in 0..ncol {
        let Some(p) = (rk..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rk, p);
        for r in 0..m.len() {
            if r != rk && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rk][c];
                let pivot = m[rk].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rk += 1;
    }
    rk
}

/// Cyclic cohomology `HC^k` for `0 ≤ k ≤ k_max`.
pub fn cyclic_cohomology(alg: &FrobeniusAlgebra, k_max: usize) -> BTreeMap<usize, usize> {
    let sp = alg.space();
    let dim = sp.dim();
    let deg: Vec<i64> = (0..dim).map(|i| sp.degree(i)).collect();
    let degsum = |t: &[usize]| t.iter().map(|&a| deg[a]).sum::<i64>();

    // Basis of cyclic cochains on A^{⊗(k+1)}: the image of the norm operator.
    let cyclic_basis = |k: usize| -> (Vec<Vec<usize>>, Vec<Vec<Q>>) {
        let ts = tuples(dim, k + 1);
        let index: BTreeMap<Vec<usize>, usize> = ts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut basis: Vec<Vec<Q>> = Vec::new();
        for t0 in &ts {
            let mut v = vec![Q::zero(); ts.len()];
            let mut cur: BTreeMap<Vec<usize>, Q> = BTreeMap::from([(t0.clone(), Q::one())]);
            for _ in 0..=k {
                for (t, c) in &cur {
                    v[index[t]] += c;
                }
                let mut next = BTreeMap::new();
                for (t, c) in &cur {
                    let mut a = t[1..].to_vec();
                    a.push(t[0]);
                    let s = k as i64 + deg[a[k]] * degsum(&a[..k]);
                    *next.entry(a).or_insert_with(Q::zero) += c * sign(s);
                }
                cur = next;
            }
            let mut trial = basis.clone();
            trial.push(v.clone());
            if dense_rank(&trial) > basis.len() {
                basis.push(v);
            }
        }
        (ts, basis)
    };

    let hochschild = |k: usize, phi: &[Q], tk: &[Vec<usize>], tk1: &[Vec<usize>]| -> Vec<Q> {
        let index: BTreeMap<&Vec<usize>, usize> = tk.iter().enumerate().map(|(i, t)| (t, i)).collect();
        tk1.iter()
            .map(|t| {
                let mut tot = Q::zero();
                for i in 0..=k {
                    for (z, c) in alg.product(t[i], t[i + 1]).iter() {
                        let mut u = t[..i].to_vec();
                        u.push(*z);
                        u.extend_from_slice(&t[i + 2..]);
                        tot += c * sign(i as i64) * &phi[index[&u]];
                    }
                }
                for (z, c) in alg.product(t[k + 1], t[0]).iter() {
                    let mut u = vec![*z];
                    u.extend_from_slice(&t[1..=k]);
                    let s = (k + 1) as i64 + deg[t[k + 1]] * degsum(&t[..=k]);
                    tot += c * sign(s) * &phi[index[&u]];
                }
                tot
            })
            .collect()
    };

    let bases: Vec<(Vec<Vec<usize>>, Vec<Vec<Q>>)> = (0..=k_max + 1).map(cyclic_basis).collect();
    let mut ranks = Vec::new();
    for k in 0..=k_max {
        let (tk, bk) = &bases[k];
        let (tk1, _) = &bases[k + 1];
        let images: Vec<Vec<Q>> = bk.iter().map(|v| hochschild(k, v, tk, tk1)).collect();
        ranks.push(dense_rank(&images));
    }
    (0..=k_max)
        .map(|k| {
            let prev = if k > 0 { ranks[k - 1] } else { 0 };
            (k, bases[k].1.len() - ranks[k] - prev)
        })
        .collect()
}
