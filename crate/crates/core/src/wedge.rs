//! The exterior algebra `S·(𝔤[1])` of a graded Lie bialgebra with its odd
//! Poisson bracket, the homological differential `∂`, the cohomological
//! differential `d`, `ψ = d∂ + ∂d` and `δ_α = d + α∂`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::necklace::{signed, CyclicWord, NecklaceSpace};
use crate::scalar::{frac, Q};

/// A graded Lie bialgebra given by its action on basis generators.
pub trait LieBialgebra: Send + Sync {
    type Gen: Ord + Clone + Debug + Hash + Send + Sync;

    /// Parity governing bracket signs.
    fn parity(&self, x: &Self::Gen) -> i64;
    /// Integer degree in `𝔤`.
    fn degree(&self, x: &Self::Gen) -> i64;
    fn bracket(&self, x: &Self::Gen, y: &Self::Gen) -> LinComb<Self::Gen>;
    fn cobracket(&self, x: &Self::Gen) -> LinComb<(Self::Gen, Self::Gen)>;
}

/// Finite bialgebra with explicit structure tables.
#[derive(Clone, Debug, Default)]
pub struct TabularBialgebra {
    parities: Vec<i64>,
    degrees: Vec<i64>,
    bracket: BTreeMap<(usize, usize), LinComb<usize>>,
    cobracket: BTreeMap<usize, LinComb<(usize, usize)>>,
}

impl TabularBialgebra {
    pub fn new(
        degrees: Vec<i64>,
        bracket: BTreeMap<(usize, usize), LinComb<usize>>,
        cobracket: BTreeMap<usize, LinComb<(usize, usize)>>,
    ) -> Result<Self> {
        let d = degrees.len();
        let check = |i: usize| if i < d { Ok(()) } else { Err(Error::UnknownGenerator(i)) };
        for ((x, y), v) in &bracket {
            check(*x)?;
            check(*y)?;
            for z in v.keys() {
                check(*z)?;
                if degrees[*z] != degrees[*x] + degrees[*y] {
                    return Err(Error::GradingViolation(*x, *y));
                }
            }
        }
        for (x, v) in &cobracket {
            check(*x)?;
            for (y, z) in v.keys() {
                check(*y)?;
                check(*z)?;
            }
        }
        let parities = degrees.iter().map(|g| g.rem_euclid(2)).collect();
        Ok(Self { parities, degrees, bracket, cobracket })
    }

    /// Zero bracket and cobracket.
    pub fn abelian(degrees: Vec<i64>) -> Self {
        Self::new(degrees, BTreeMap::new(), BTreeMap::new()).expect("empty tables are valid")
    }

    /// `sl₂` with basis `h, e, f` and the standard cobracket
    /// `δ(x) = [x ⊗ 1 + 1 ⊗ x, e ⊗ f − f ⊗ e]`.
    pub fn sl2() -> Self {
        use crate::scalar::int;
        let (h, e, f) = (0usize, 1usize, 2usize);
        let mut br = BTreeMap::new();
        let mut put = |x: usize, y: usize, z: usize, c: i64| {
            br.insert((x, y), LinComb::single(z, int(c)));
            br.insert((y, x), LinComb::single(z, int(-c)));
        };
        put(h, e, e, 2);
        put(h, f, f, -2);
        put(e, f, h, 1);
        let r: LinComb<(usize, usize)> = [((e, f), int(1)), ((f, e), int(-1))].into_iter().collect();
        let mut cob = BTreeMap::new();
        for x in 0..3 {
            let mut out = LinComb::zero();
            for ((a, b), c) in r.iter() {
                if let Some(v) = br.get(&(x, *a)) {
                    for (z, k) in v.iter() {
                        out.add_term((*z, *b), c * k);
                    }
                }
                if let Some(v) = br.get(&(x, *b)) {
                    for (z, k) in v.iter() {
                        out.add_term((*a, *z), c * k);
                    }
                }
            }
            cob.insert(x, out);
        }
        Self::new(vec![0, 0, 0], br, cob).expect("sl2 tables are valid")
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
}

impl LieBialgebra for TabularBialgebra {
    type Gen = usize;

    fn parity(&self, x: &usize) -> i64 {
        self.parities[*x]
    }

    fn degree(&self, x: &usize) -> i64 {
        self.degrees[*x]
    }

    fn bracket(&self, x: &usize, y: &usize) -> LinComb<usize> {
        self.bracket.get(&(*x, *y)).cloned().unwrap_or_default()
    }

    fn cobracket(&self, x: &usize) -> LinComb<(usize, usize)> {
        self.cobracket.get(x).cloned().unwrap_or_default()
    }
}

/// The necklace bialgebra over a letter space. In reduced mode constants
/// are quotiented out: the empty word is dropped from brackets and
/// cobracket terms with an empty factor are discarded.
#[derive(Clone, Debug)]
pub struct NecklaceBialgebra {
    space: Arc<NecklaceSpace>,
    reduced: bool,
}

impl NecklaceBialgebra {
    pub fn reduced(space: Arc<NecklaceSpace>) -> Self {
        Self { space, reduced: true }
    }

    pub fn full(space: Arc<NecklaceSpace>) -> Self {
        Self { space, reduced: false }
    }

    pub fn space(&self) -> &Arc<NecklaceSpace> {
        &self.space
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }
}

impl LieBialgebra for NecklaceBialgebra {
    type Gen = CyclicWord;

    fn parity(&self, x: &CyclicWord) -> i64 {
        self.space.lie_parity(x.letters())
    }

    fn degree(&self, x: &CyclicWord) -> i64 {
        self.space.shifted_degree(x.letters())
    }

    fn bracket(&self, x: &CyclicWord, y: &CyclicWord) -> LinComb<CyclicWord> {
        let b = self.space.bracket_words(x, y);
        if self.reduced {
            b.filter(|w| !w.is_empty())
        } else {
            b
        }
    }

    fn cobracket(&self, x: &CyclicWord) -> LinComb<(CyclicWord, CyclicWord)> {
        let c = self.space.cobracket_word(x);
        if self.reduced {
            c.filter(|(a, b)| !a.is_empty() && !b.is_empty())
        } else {
            c
        }
    }
}

pub type Monomial<G> = Vec<G>;
pub type WedgeElement<G> = LinComb<Monomial<G>>;

const PAR_THRESHOLD: usize = 32;

/// Operations on `S·(𝔤[1])` for a fixed bialgebra.
#[derive(Clone, Debug)]
pub struct WedgeAlgebra<B: LieBialgebra> {
    bialg: B,
}

impl<B: LieBialgebra> WedgeAlgebra<B> {
    pub fn new(bialg: B) -> Self {
        Self { bialg }
    }

    pub fn bialgebra(&self) -> &B {
        &self.bialg
    }

    /// Parity of a factor in `𝔤[1]`.
    pub fn factor_parity(&self, x: &B::Gen) -> i64 {
        (self.bialg.parity(x) + 1) % 2
    }

    fn parity_sum(&self, xs: &[B::Gen]) -> i64 {
        xs.iter().map(|x| self.factor_parity(x)).sum::<i64>() % 2
    }

    /// `Deg` of a monomial: the sum of `deg + 1` over its factors.
    pub fn big_degree(&self, m: &[B::Gen]) -> i64 {
        m.iter().map(|x| self.bialg.degree(x) + 1).sum()
    }

    /// Parity of `Deg`, read off the factor parities.
    pub fn deg_parity(&self, m: &[B::Gen]) -> i64 {
        self.parity_sum(m)
    }

    /// Common `Deg` parity of all terms, `None` for zero or mixed.
    pub fn element_parity(&self, a: &WedgeElement<B::Gen>) -> Option<i64> {
        let mut it = a.keys().map(|m| self.deg_parity(m));
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    /// Splits an element into its even and odd `Deg` parts.
    pub fn parity_parts(&self, a: &WedgeElement<B::Gen>) -> [WedgeElement<B::Gen>; 2] {
        [a.filter(|m| self.deg_parity(m) == 0), a.filter(|m| self.deg_parity(m) == 1)]
    }

    /// Sorts factors with Koszul signs; `None` if an odd factor repeats.
    pub fn normalize(&self, mut f: Vec<B::Gen>) -> Option<(Monomial<B::Gen>, bool)> {
        let mut neg = false;
        let n = f.len();
        for i in 1..n {
            let mut j = i;
            while j > 0 && f[j - 1] > f[j] {
                if self.factor_parity(&f[j - 1]) * self.factor_parity(&f[j]) == 1 {
                    neg = !neg;
                }
                f.swap(j - 1, j);
                j -= 1;
            }
        }
        for j in 1..n {
            if f[j - 1] == f[j] && self.factor_parity(&f[j]) == 1 {
                return None;
            }
        }
        Some((f, neg))
    }

    fn push(&self, out: &mut WedgeElement<B::Gen>, f: Vec<B::Gen>, c: Q) {
        if let Some((m, neg)) = self.normalize(f) {
            out.add_term(m, signed(c, neg));
        }
    }

    pub fn one(&self) -> WedgeElement<B::Gen> {
        LinComb::single(Vec::new(), Q::from_integer(1.into()))
    }

    pub fn generator(&self, x: B::Gen) -> WedgeElement<B::Gen> {
        LinComb::single(vec![x], Q::from_integer(1.into()))
    }

    /// Normalized monomial from an arbitrary factor list.
    pub fn monomial(&self, factors: Vec<B::Gen>, c: Q) -> WedgeElement<B::Gen> {
        let mut out = LinComb::zero();
        self.push(&mut out, factors, c);
        out
    }

    /// Lifts an element of `𝔤` to `Λ¹`.
    pub fn lift(&self, x: &LinComb<B::Gen>) -> WedgeElement<B::Gen> {
        x.iter().map(|(g, c)| (vec![g.clone()], c.clone())).collect()
    }

    /// Linear map on terms, parallel above a size threshold.
    fn apply_termwise<F>(&self, a: &WedgeElement<B::Gen>, f: F) -> WedgeElement<B::Gen>
    where
        F: Fn(&Monomial<B::Gen>, &Q, &mut WedgeElement<B::Gen>) + Sync,
    {
        if a.len() < PAR_THRESHOLD {
            let mut out = LinComb::zero();
            for (m, c) in a.iter() {
                f(m, c, &mut out);
            }
            return out;
        }
        let terms: Vec<_> = a.iter().collect();
        let parts: Vec<WedgeElement<B::Gen>> = terms
            .par_iter()
            .map(|(m, c)| {
                let mut out = LinComb::zero();
                f(m, c, &mut out);
                out
            })
            .collect();
        let mut out = LinComb::zero();
        for p in &parts {
            out.add_assign(p);
        }
        out
    }

    pub fn mul(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.apply_termwise(a, |ma, ca, out| {
            for (mb, cb) in b.iter() {
                let mut f = ma.clone();
                f.extend(mb.iter().cloned());
                self.push(out, f, ca * cb);
            }
        })
    }

    /// `Aⁿ`, with `A⁰ = 1`.
    pub fn pow(&self, a: &WedgeElement<B::Gen>, n: usize) -> WedgeElement<B::Gen> {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The odd Poisson bracket `{A, B}`.
    pub fn poisson(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.apply_termwise(a, |ma, ca, out| {
            for (mb, cb) in b.iter() {
                let cab = ca * cb;
                for i in 0..ma.len() {
                    let s1 = self.factor_parity(&ma[i]) * self.parity_sum(&ma[i + 1..]) == 1;
                    for j in 0..mb.len() {
                        let br = self.bialg.bracket(&ma[i], &mb[j]);
                        if br.is_zero() {
                            continue;
                        }
                        let s2 = self.factor_parity(&mb[j]) * self.parity_sum(&mb[..j]) == 1;
                        for (z, cz) in br.iter() {
                            let mut f: Vec<B::Gen> = Vec::with_capacity(ma.len() + mb.len() - 1);
                            f.extend(ma[..i].iter().cloned());
                            f.extend(ma[i + 1..].iter().cloned());
                            f.push(z.clone());
                            f.extend(mb[..j].iter().cloned());
                            f.extend(mb[j + 1..].iter().cloned());
                            self.push(out, f, signed(&cab * cz, s1 ^ s2));
                        }
                    }
                }
            }
        })
    }

    /// `∂`: sum over factor pairs of their bracket.
    pub fn boundary(&self, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.apply_termwise(a, |m, c, out| {
            let k = m.len();
            for i in 0..k {
                let qi = self.factor_parity(&m[i]);
                for j in i + 1..k {
                    let br = self.bialg.bracket(&m[i], &m[j]);
                    if br.is_zero() {
                        continue;
                    }
                    let qj = self.factor_parity(&m[j]);
                    let s = qi * self.parity_sum(&m[..i]) + qj * self.parity_sum(&m[..j]) + qj * qi;
                    // Extra factor -(-1)^{q_i}.
                    let neg = (s + qi + 1) % 2 == 1;
                    let rest: Vec<B::Gen> =
                        (0..k).filter(|&t| t != i && t != j).map(|t| m[t].clone()).collect();
                    for (z, cz) in br.iter() {
                        let mut f = Vec::with_capacity(k - 1);
                        f.push(z.clone());
                        f.extend(rest.iter().cloned());
                        self.push(out, f, signed(c * cz, neg));
                    }
                }
            }
        })
    }

    /// `d` on a single generator: `½ Σ (-1)^{p(y)} y·z` over `λ(x) = Σ y ⊗ z`.
    pub fn coboundary_gen(&self, x: &B::Gen) -> WedgeElement<B::Gen> {
        let half = frac(1, 2);
        let mut out = LinComb::zero();
        for ((y, z), c) in self.bialg.cobracket(x).iter() {
            let neg = self.bialg.parity(y) == 1;
            self.push(&mut out, vec![y.clone(), z.clone()], signed(c * &half, neg));
        }
        out
    }

    /// `d`, the odd derivation extending `coboundary_gen`.
    pub fn coboundary(&self, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.apply_termwise(a, |m, c, out| {
            for i in 0..m.len() {
                let neg = self.parity_sum(&m[..i]) == 1;
                let dx = self.coboundary_gen(&m[i]);
                for (dm, dc) in dx.iter() {
                    let mut f = Vec::with_capacity(m.len() + 1);
                    f.extend(m[..i].iter().cloned());
                    f.extend(dm.iter().cloned());
                    f.extend(m[i + 1..].iter().cloned());
                    self.push(out, f, signed(c * dc, neg));
                }
            }
        })
    }

    /// `ψ = d∂ + ∂d`.
    pub fn psi(&self, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.coboundary(&self.boundary(a)).plus(&self.boundary(&self.coboundary(a)))
    }

    /// `δ_α(A)` as a polynomial in `α`: `d(A)` at `α⁰`, `∂(A)` at `α¹`.
    pub fn delta_alpha(&self, a: &WedgeElement<B::Gen>) -> Series<B::Gen> {
        let mut s = Series::zero();
        s.add_at(0, &self.coboundary(a));
        s.add_at(1, &self.boundary(a));
        s
    }

    /// `δ_α` applied to a series in `α`.
    pub fn delta_alpha_series(&self, r: &Series<B::Gen>) -> Series<B::Gen> {
        let mut out = Series::zero();
        for (k, v) in r.iter() {
            out.add_at(k, &self.coboundary(v));
            out.add_at(k + 1, &self.boundary(v));
        }
        out
    }

    /// Product of series keeping orders in `[lo, hi]` and terms accepted by `keep`.
    pub fn series_mul(
        &self,
        a: &Series<B::Gen>,
        b: &Series<B::Gen>,
        hi: i64,
        keep: &dyn Fn(&Monomial<B::Gen>) -> bool,
    ) -> Series<B::Gen> {
        let mut out = Series::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                if i + j <= hi {
                    out.add_at(i + j, &self.mul(x, y).filter(keep));
                }
            }
        }
        out
    }

    pub fn series_poisson(
        &self,
        a: &Series<B::Gen>,
        b: &Series<B::Gen>,
        hi: i64,
        keep: &dyn Fn(&Monomial<B::Gen>) -> bool,
    ) -> Series<B::Gen> {
        let mut out = Series::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                if i + j <= hi {
                    out.add_at(i + j, &self.poisson(x, y).filter(keep));
                }
            }
        }
        out
    }
}

/// Finite Laurent polynomial in a formal parameter with wedge coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<G: Ord> {
    coeffs: BTreeMap<i64, WedgeElement<G>>,
}

impl<G: Ord + Clone> Default for Series<G> {
    fn default() -> Self {
        Self { coeffs: BTreeMap::new() }
    }
}

impl<G: Ord + Clone> Series<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(a: WedgeElement<G>) -> Self {
        Self::term(0, a)
    }

    pub fn term(k: i64, a: WedgeElement<G>) -> Self {
        let mut s = Self::zero();
        s.add_at(k, &a);
        s
    }

    pub fn add_at(&mut self, k: i64, a: &WedgeElement<G>) {
        if a.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        e.add_assign(a);
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> WedgeElement<G> {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &WedgeElement<G>)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k, v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k, &v.neg());
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_at(k, &v.scaled(c));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&WedgeElement<G>) -> WedgeElement<G>) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter() {
            out.add_at(k, &f(v));
        }
        out
    }

    /// Orders in `[lo, hi]`, terms accepted by `keep`.
    pub fn window(&self, lo: i64, hi: i64, keep: &dyn Fn(&Monomial<G>) -> bool) -> Self {
        let mut out = Self::zero();
        for (k, v) in self.iter().filter(|(k, _)| (lo..=hi).contains(k)) {
            out.add_at(k, &v.filter(keep));
        }
        out
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, v)| (k + by, v.clone())).collect() }
    }

    pub fn min_order(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_order(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Total number of stored terms over all orders.
    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(LinComb::len).sum()
    }
}
