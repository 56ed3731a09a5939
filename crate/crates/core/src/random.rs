//! Seeded random inputs for property checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lincomb::LinComb;
use crate::necklace::{Letter, NecklaceElement, NecklaceSpace};
use crate::scalar::{int, sign, Q};
use crate::wedge::{LieBialgebra, NecklaceBialgebra, WedgeAlgebra, WedgeElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random letter space with a nonzero graded antisymmetric form.
pub fn letter_space(rng: &mut ChaCha8Rng, shift: i64, dim: usize) -> Arc<NecklaceSpace> {
    loop {
        let degrees: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        let mut form = BTreeMap::new();
        for i in 0..dim {
            for j in i..dim {
                if degrees[i] + degrees[j] != shift {
                    continue;
                }
                if i == j && degrees[i] % 2 == 0 {
                    continue;
                }
                let c = int(rng.gen_range(-2..=2));
                if c == int(0) {
                    continue;
                }
                let back = -(&c * sign(degrees[i] * degrees[j]));
                form.insert((i as Letter, j as Letter), c);
                if i != j {
                    form.insert((j as Letter, i as Letter), back);
                }
            }
        }
        if !form.is_empty() {
            return NecklaceSpace::from_letters(degrees, shift, form).expect("constructed antisymmetric");
        }
    }
}

fn random_letters(rng: &mut ChaCha8Rng, dim: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| rng.gen_range(0..dim) as Letter).collect()
}

/// A nonzero multiple of one cyclic word of length `1..=max_len`.
pub fn word_element(rng: &mut ChaCha8Rng, space: &Arc<NecklaceSpace>, max_len: usize) -> NecklaceElement {
    loop {
        let len = rng.gen_range(1..=max_len);
        let e = NecklaceElement::word(space, &random_letters(rng, space.dim(), len), int(rng.gen_range(1..=3)));
        if !e.is_zero() {
            return e;
        }
    }
}

/// Sum of up to `terms` words sharing one Lie parity.
pub fn homogeneous_element(rng: &mut ChaCha8Rng, space: &Arc<NecklaceSpace>, max_len: usize, terms: usize) -> NecklaceElement {
    let first = word_element(rng, space, max_len);
    let p = first.lie_parity().expect("single word");
    let mut out = first;
    for _ in 1..terms {
        let e = word_element(rng, space, max_len);
        if e.lie_parity() == Some(p) {
            out = out.plus(&e.scaled(&int(rng.gen_range(-2..=2))));
        }
    }
    if out.is_zero() {
        homogeneous_element(rng, space, max_len, 1)
    } else {
        out
    }
}

/// Random element of `Λ·` of the reduced necklace bialgebra, homogeneous in
/// `Deg` parity: up to `terms` monomials with `1..=max_factors` factors of
/// length `1..=max_len`.
pub fn necklace_wedge(
    rng: &mut ChaCha8Rng,
    alg: &WedgeAlgebra<NecklaceBialgebra>,
    max_factors: usize,
    max_len: usize,
    terms: usize,
) -> WedgeElement<<NecklaceBialgebra as LieBialgebra>::Gen> {
    let space = alg.bialgebra().space().clone();
    loop {
        let mut out = LinComb::zero();
        for _ in 0..terms {
            let nf = rng.gen_range(1..=max_factors);
            let factors: Vec<_> = (0..nf)
                .filter_map(|_| {
                    let len = rng.gen_range(1..=max_len);
                    space.canonical(&random_letters(rng, space.dim(), len)).map(|(w, _)| w)
                })
                .collect();
            if factors.len() == nf {
                out.add_assign(&alg.monomial(factors, int(rng.gen_range(1..=3))));
            }
        }
        let first = out.keys().next().map(|m| alg.deg_parity(m));
        if let Some(p) = first {
            return out.filter(|m| alg.deg_parity(m) == p);
        }
    }
}

/// Random element of `Λ·` over a tabular bialgebra with `dim` generators.
pub fn tabular_wedge<B: LieBialgebra<Gen = usize>>(
    rng: &mut ChaCha8Rng,
    alg: &WedgeAlgebra<B>,
    dim: usize,
    max_factors: usize,
    terms: usize,
) -> WedgeElement<usize> {
    loop {
        let mut out = LinComb::zero();
        for _ in 0..terms {
            let nf = rng.gen_range(1..=max_factors);
            let f: Vec<usize> = (0..nf).map(|_| rng.gen_range(0..dim)).collect();
            out.add_assign(&alg.monomial(f, int(rng.gen_range(1..=3))));
        }
        let first = out.keys().next().map(|m| alg.deg_parity(m));
        if let Some(p) = first {
            return out.filter(|m| alg.deg_parity(m) == p);
        }
    }
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Q {
    crate::scalar::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// First of up to `attempts` draws of [`necklace_wedge`] satisfying `pred`.
pub fn necklace_wedge_where(
    rng: &mut ChaCha8Rng,
    alg: &WedgeAlgebra<NecklaceBialgebra>,
    max_factors: usize,
    max_len: usize,
    terms: usize,
    attempts: usize,
    pred: impl Fn(&WedgeElement<<NecklaceBialgebra as LieBialgebra>::Gen>) -> bool,
) -> Option<WedgeElement<<NecklaceBialgebra as LieBialgebra>::Gen>> {
    (0..attempts).map(|_| necklace_wedge(rng, alg, max_factors, max_len, terms)).find(|x| pred(x))
}
