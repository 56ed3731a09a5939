//! Reference bracket and cobracket written from scratch: every sign is the
//! Koszul sign of an explicit permutation, and results are compared after
//! the norm map `w ↦ Σ_r ±(rotation r of w)`, which is injective on cyclic
//! words over Q.

use std::collections::BTreeMap;

use necklace_core::necklace::{Letter, NecklaceSpace};
use necklace_core::{NecklaceElement, Q};
use num_traits::{One, Zero};

pub type Tensor = BTreeMap<Vec<Letter>, Q>;
pub type Tensor2 = BTreeMap<(Vec<Letter>, Vec<Letter>), Q>;

fn odd(space: &NecklaceSpace, a: Letter) -> bool {
    space.letter_degree(a).rem_euclid(2) == 1
}

/// Sign of reordering `word` so that position `perm[k]` comes `k`-th.
pub fn koszul(space: &NecklaceSpace, word: &[Letter], perm: &[usize]) -> Q {
    let mut s = Q::one();
    for x in 0..perm.len() {
        for y in x + 1..perm.len() {
            if perm[x] > perm[y] && odd(space, word[perm[x]]) && odd(space, word[perm[y]]) {
                s = -s;
            }
        }
    }
    s
}

fn rotation(m: usize, r: usize) -> Vec<usize> {
    (0..m).map(|k| (k + r) % m).collect()
}

fn add(t: &mut Tensor, w: Vec<Letter>, c: Q) {
    let e = t.entry(w.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&w);
    }
}

pub fn norm(space: &NecklaceSpace, word: &[Letter], c: &Q) -> Tensor {
    let mut out = Tensor::new();
    if word.is_empty() {
        add(&mut out, Vec::new(), c.clone());
        return out;
    }
    for r in 0..word.len() {
        let p = rotation(word.len(), r);
        let w: Vec<Letter> = p.iter().map(|&k| word[k]).collect();
        add(&mut out, w, c * koszul(space, word, &p));
    }
    out
}

pub fn norm_element(space: &NecklaceSpace, e: &NecklaceElement) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in e.terms().iter() {
        for (x, v) in norm(space, w.letters(), c) {
            add(&mut out, x, v);
        }
    }
    out
}

/// Contract letter `i` of `u` against letter `j` of `v`: rotate `u` so that
/// `u_i` is last, `v` so that `v_j` is first, pair them, and close up.
pub fn bracket(space: &NecklaceSpace, h: &NecklaceElement, g: &NecklaceElement) -> Tensor {
    let mut out = Tensor::new();
    for (u, cu) in h.terms().iter() {
        for (v, cv) in g.terms().iter() {
            let (u, v) = (u.letters(), v.letters());
            for i in 0..u.len() {
                for j in 0..v.len() {
                    let w = space.omega(u[i], v[j]);
                    if w.is_zero() {
                        continue;
                    }
                    let joined: Vec<Letter> = u.iter().chain(v.iter()).copied().collect();
                    let mut perm: Vec<usize> = rotation(u.len(), i + 1);
                    perm.extend(rotation(v.len(), j).into_iter().map(|k| k + u.len()));
                    let sign = koszul(space, &joined, &perm);
                    let rest: Vec<Letter> = perm[..u.len() - 1]
                        .iter()
                        .chain(perm[u.len() + 1..].iter())
                        .map(|&k| joined[k])
                        .collect();
                    for (x, c) in norm(space, &rest, &(cu * cv * &w * sign)) {
                        add(&mut out, x, c);
                    }
                }
            }
        }
    }
    out
}

/// Literal double loop over ordered pairs of positions: rotate `a_l` to the
/// front, move `a_m` next to it, pair them and split into inner and outer
/// words, with the extra `(n−2)(|inner| + |a_l|)` sign.
pub fn cobracket(space: &NecklaceSpace, h: &NecklaceElement) -> Tensor2 {
    let mut out = Tensor2::new();
    let shift_odd = space.shift().rem_euclid(2) == 1;
    for (u, cu) in h.terms().iter() {
        let u = u.letters();
        let m = u.len();
        for l in 0..m {
            for d in 1..m {
                let mm = (l + d) % m;
                let w = space.omega(u[l], u[mm]);
                if w.is_zero() {
                    continue;
                }
                let rot = rotation(m, l);
                let inner: Vec<usize> = rot[1..d].to_vec();
                let outer: Vec<usize> = rot[d + 1..].to_vec();
                let mut perm = vec![l, mm];
                perm.extend(&inner);
                perm.extend(&outer);
                let mut sign = koszul(space, u, &perm);
                let parity = |ks: &[usize]| ks.iter().filter(|&&k| odd(space, u[k])).count() % 2;
                if shift_odd && (parity(&inner) + usize::from(odd(space, u[l]))) % 2 == 1 {
                    sign = -sign;
                }
                let iw: Vec<Letter> = inner.iter().map(|&k| u[k]).collect();
                let ow: Vec<Letter> = outer.iter().map(|&k| u[k]).collect();
                let c = cu * &w * sign;
                for (x, a) in norm(space, &iw, &Q::one()) {
                    for (y, b) in norm(space, &ow, &Q::one()) {
                        let e = out.entry((x.clone(), y)).or_insert_with(Q::zero);
                        *e += &c * &a * &b;
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn norm_tensor2(space: &NecklaceSpace, t: &necklace_core::LinComb<(necklace_core::CyclicWord, necklace_core::CyclicWord)>) -> Tensor2 {
    let mut out = Tensor2::new();
    for ((a, b), c) in t.iter() {
        for (x, u) in norm(space, a.letters(), &Q::one()) {
            for (y, v) in norm(space, b.letters(), &Q::one()) {
                let e = out.entry((x.clone(), y)).or_insert_with(Q::zero);
                *e += c * &u * &v;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}
