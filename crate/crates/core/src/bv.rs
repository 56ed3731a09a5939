//! BV-algebra layer on `Λ·(𝔤)`: twisted differentials, the Lie action and
//! its group cocycle, the twisted group action and deformation complexes.
//!
//! Exponentials are formal in a bookkeeping parameter `t` and truncated at
//! `t^{N+1}`; series are [`Series`] indexed by the power of `t`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseExactMatrix};
use crate::lincomb::LinComb;
use crate::necklace::CyclicWord;
use crate::report::Report;
use crate::scalar::{factorial, frac, int, sign, Q};
use crate::wedge::{LieBialgebra, Monomial, NecklaceBialgebra, Series, WedgeAlgebra, WedgeElement};

/// Product, odd bracket and odd `∂` of a BV carrier.
pub trait BvOps<G: Ord + Clone> {
    fn unit(&self) -> WedgeElement<G>;
    fn product(&self, a: &WedgeElement<G>, b: &WedgeElement<G>) -> WedgeElement<G>;
    fn bracket(&self, a: &WedgeElement<G>, b: &WedgeElement<G>) -> WedgeElement<G>;
    fn bv_boundary(&self, a: &WedgeElement<G>) -> WedgeElement<G>;
    fn parity(&self, m: &Monomial<G>) -> i64;
}

impl<B: LieBialgebra> BvOps<B::Gen> for WedgeAlgebra<B> {
    fn unit(&self) -> WedgeElement<B::Gen> {
        self.one()
    }

    fn product(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.mul(a, b)
    }

    fn bracket(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.poisson(a, b)
    }

    fn bv_boundary(&self, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.boundary(a)
    }

    fn parity(&self, m: &Monomial<B::Gen>) -> i64 {
        self.deg_parity(m)
    }
}

/// A carrier whose `∂` is perturbed by `ε` times the factor-count operator.
/// Used as a negative control.
pub struct PerturbedBoundary<'a, B: LieBialgebra> {
    pub inner: &'a WedgeAlgebra<B>,
    pub epsilon: Q,
}

impl<B: LieBialgebra> BvOps<B::Gen> for PerturbedBoundary<'_, B> {
    fn unit(&self) -> WedgeElement<B::Gen> {
        self.inner.one()
    }

    fn product(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.inner.mul(a, b)
    }

    fn bracket(&self, a: &WedgeElement<B::Gen>, b: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        self.inner.poisson(a, b)
    }

    fn bv_boundary(&self, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
        let euler: WedgeElement<B::Gen> =
            a.iter().map(|(m, c)| (m.clone(), c * int(m.len() as i64) * &self.epsilon)).collect();
        self.inner.boundary(a).plus(&euler)
    }

    fn parity(&self, m: &Monomial<B::Gen>) -> i64 {
        self.inner.deg_parity(m)
    }
}

fn homogeneous_parts<G: Ord + Clone>(ops: &dyn BvOps<G>, a: &WedgeElement<G>) -> Vec<(i64, WedgeElement<G>)> {
    [0, 1]
        .into_iter()
        .map(|p| (p, a.filter(|m| ops.parity(m) == p)))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// BV identity `(−1)^ã{a,b} = −∂(ab) + (∂a)b + (−1)^ã a(∂b)`, `∂² = 0` and
/// `∂1 = 0` on the samples. The first failing pair is reported.
pub fn bv_axioms_check<G: Ord + Clone + std::fmt::Debug>(ops: &dyn BvOps<G>, samples: &[WedgeElement<G>]) -> Report {
    let mut rep = Report::new("bv_axioms").detail("samples", samples.len());
    let one = ops.unit();
    rep = rep.residual(ops.bv_boundary(&one).len());
    let mut witness = None;
    for (i, s) in samples.iter().enumerate() {
        let sq = ops.bv_boundary(&ops.bv_boundary(s)).len();
        if sq > 0 && witness.is_none() {
            witness = Some(json!({"nilpotency": i}));
        }
        rep = rep.residual(sq);
        for (j, t) in samples.iter().enumerate() {
            for (pa, a) in homogeneous_parts(ops, s) {
                let res = ops
                    .bracket(&a, t)
                    .scaled(&sign(pa))
                    .plus(&ops.bv_boundary(&ops.product(&a, t)))
                    .minus(&ops.product(&ops.bv_boundary(&a), t))
                    .minus(&ops.product(&a, &ops.bv_boundary(t)).scaled(&sign(pa)));
                if !res.is_zero() && witness.is_none() {
                    witness = Some(json!({"pair": [i, j]}));
                }
                rep = rep.residual(res.len());
            }
        }
    }
    if let Some(w) = witness {
        rep = rep.detail("witness", w);
    }
    rep
}

/// Invertible element `u + n(t)` with `u ≠ 0` a scalar and `n` of positive
/// `t`-order.
#[derive(Clone, Debug)]
pub struct AugmentedElement<G: Ord + Clone> {
    pub unit: Q,
    pub nilpotent: Series<G>,
}

impl<G: Ord + Clone> AugmentedElement<G> {
    pub fn new(unit: Q, nilpotent: Series<G>) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::NotInvertible);
        }
        if nilpotent.min_order().is_some_and(|k| k < 1) {
            return Err(Error::Precondition("nilpotent part must have positive t-order".into()));
        }
        Ok(Self { unit, nilpotent })
    }

    pub fn as_series(&self) -> Series<G> {
        let mut s = self.nilpotent.clone();
        s.add_at(0, &LinComb::single(Vec::new(), self.unit.clone()));
        s
    }
}

/// Truncation bookkeeping shared by the `t`-series routines.
pub struct TSeriesOps<'a, B: LieBialgebra> {
    pub alg: &'a WedgeAlgebra<B>,
    pub order: i64,
}

impl<'a, B: LieBialgebra> TSeriesOps<'a, B> {
    pub fn new(alg: &'a WedgeAlgebra<B>, order: usize) -> Self {
        Self { alg, order: order as i64 }
    }

    fn all(_: &Monomial<B::Gen>) -> bool {
        true
    }

    pub fn mul(&self, a: &Series<B::Gen>, b: &Series<B::Gen>) -> Series<B::Gen> {
        self.alg.series_mul(a, b, self.order, &Self::all)
    }

    pub fn bracket(&self, a: &Series<B::Gen>, b: &Series<B::Gen>) -> Series<B::Gen> {
        self.alg.series_poisson(a, b, self.order, &Self::all)
    }

    pub fn boundary(&self, a: &Series<B::Gen>) -> Series<B::Gen> {
        a.map(|x| self.alg.boundary(x))
    }

    pub fn truncate(&self, a: &Series<B::Gen>) -> Series<B::Gen> {
        a.window(0, self.order, &Self::all)
    }

    /// Inverse of an augmented element by the finite geometric series.
    pub fn inverse(&self, a: &AugmentedElement<B::Gen>) -> Series<B::Gen> {
        let u_inv = a.unit.recip();
        let x = a.nilpotent.scaled(&(-&u_inv));
        let mut term = Series::constant(LinComb::single(Vec::new(), u_inv.clone()));
        let mut out = term.clone();
        for _ in 0..self.order {
            term = self.mul(&term, &x);
            out = out.plus(&term);
        }
        out
    }

    /// `Σ_k tᵏ ad_rᵏ(a) / k!`.
    pub fn exp_ad(&self, r: &WedgeElement<B::Gen>, a: &Series<B::Gen>) -> Series<B::Gen> {
        let mut out = Series::zero();
        let mut cur = a.clone();
        for k in 0..=self.order {
            let scale = Q::from_integer(factorial(k as u32)).recip();
            out = out.plus(&cur.shift(k).scaled(&scale));
            cur = cur.map(|x| self.alg.poisson(r, x));
        }
        self.truncate(&out)
    }

    /// `exp(c)` for `c` of positive `t`-order.
    pub fn exp(&self, c: &Series<B::Gen>) -> Series<B::Gen> {
        let mut term = Series::constant(self.alg.one());
        let mut out = term.clone();
        for k in 1..=self.order {
            term = self.mul(&term, c).scaled(&frac(1, k));
            out = out.plus(&term);
        }
        out
    }
}

/// `A(r)a = {r,a} + (−1)^{r+1}(∂r)a` for `r` of `Deg` parity `p`.
pub fn lie_action<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &WedgeElement<B::Gen>, a: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
    let p = alg.element_parity(r).unwrap_or(0);
    alg.poisson(r, a).plus(&alg.mul(&alg.boundary(r), a).scaled(&sign(p + 1)))
}

/// Residual sizes of the action axiom `[A(r₁),A(r₂)] = A({r₁,r₂})` (graded
/// commutator, `A(r)` of parity `r+1`) and the chain rule
/// `∂A(r) = (−1)^{r+1} A(r)∂`, evaluated on `a`.
pub fn lie_action_residuals<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    r1: &WedgeElement<B::Gen>,
    r2: &WedgeElement<B::Gen>,
    a: &WedgeElement<B::Gen>,
) -> (usize, usize) {
    let p1 = alg.element_parity(r1).unwrap_or(0);
    let p2 = alg.element_parity(r2).unwrap_or(0);
    let act = |r: &WedgeElement<B::Gen>, x: &WedgeElement<B::Gen>| lie_action(alg, r, x);
    let commutator = act(r1, &act(r2, a)).minus(&act(r2, &act(r1, a)).scaled(&sign((p1 + 1) * (p2 + 1))));
    let axiom = commutator.minus(&act(&alg.poisson(r1, r2), a)).len();
    let chain = alg.boundary(&act(r1, a)).minus(&act(r1, &alg.boundary(a)).scaled(&sign(p1 + 1))).len();
    (axiom, chain)
}

/// `c(exp(tr)) = Σ_{n<N} t^{n+1} ad_rⁿ(∂r)/(n+1)!` modulo `t^{N+1}`.
pub fn group_cocycle<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &WedgeElement<B::Gen>, order: usize) -> Series<B::Gen> {
    let mut out = Series::zero();
    let mut cur = alg.boundary(r);
    for n in 0..order {
        let scale = Q::from_integer(factorial(n as u32 + 1)).recip();
        out.add_at(n as i64 + 1, &cur.scaled(&scale));
        cur = alg.poisson(r, &cur);
    }
    out
}

/// `T(exp r)a = exp(c)·exp(ad r)a` modulo `t^{N+1}`.
pub fn twisted_action<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    r: &WedgeElement<B::Gen>,
    a: &Series<B::Gen>,
    order: usize,
) -> Series<B::Gen> {
    let ts = TSeriesOps::new(alg, order);
    let c = group_cocycle(alg, r, order);
    ts.mul(&ts.exp(&c), &ts.exp_ad(r, a))
}

/// `a⁻¹∂(ax)` modulo `t^{N+1}`.
pub fn twisted_boundary<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    a: &AugmentedElement<B::Gen>,
    x: &Series<B::Gen>,
    order: usize,
) -> Series<B::Gen> {
    let ts = TSeriesOps::new(alg, order);
    ts.mul(&ts.inverse(a), &ts.boundary(&ts.mul(&a.as_series(), x)))
}

/// `∂x − a⁻¹{a,x} + a⁻¹(∂a)x`, the expanded form of the twisted boundary
/// for even `a`.
pub fn twisted_boundary_expanded<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    a: &AugmentedElement<B::Gen>,
    x: &Series<B::Gen>,
    order: usize,
) -> Series<B::Gen> {
    let ts = TSeriesOps::new(alg, order);
    let inv = ts.inverse(a);
    let aser = a.as_series();
    ts.boundary(x)
        .minus(&ts.mul(&inv, &ts.bracket(&aser, x)))
        .plus(&ts.mul(&ts.mul(&inv, &ts.boundary(&aser)), x))
}

/// `Σ_{s=0}^{l} (s+t)!/s!` and `(l+t+1)!/(l!(t+1))`.
pub fn factorial_identity(l: u32, t: u32) -> (Q, Q) {
    let lhs: Q = (0..=l).map(|s| Q::new(factorial(s + t), factorial(s))).sum();
    let rhs = Q::new(factorial(l + t + 1), factorial(l) * num_bigint::BigInt::from(t + 1));
    (lhs, rhs)
}

/// Lemma checks for a group element `exp(tr)` and a test element `a`:
/// Maurer–Cartan `∂c = ½{c,c}`, the cocycle ODE `ċ = ∂r + {r,c}`, the
/// multiplicative form `e^{−c}∂(e^c a) = ∂a − {c,a}`, the conjugation
/// identity and `∂T = T∂`, all modulo `t^{N+1}`.
pub fn group_checks<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    r: &WedgeElement<B::Gen>,
    a: &WedgeElement<B::Gen>,
    order: usize,
) -> BTreeMap<&'static str, usize> {
    let ts = TSeriesOps::new(alg, order);
    let n = order as i64;
    let c = group_cocycle(alg, r, order);
    let aser = Series::constant(a.clone());
    let mut out = BTreeMap::new();

    let mc = ts.boundary(&c).minus(&ts.bracket(&c, &c).scaled(&frac(1, 2)));
    out.insert("maurer_cartan", mc.term_count());

    let mut derivative = Series::zero();
    for (k, v) in c.iter() {
        derivative.add_at(k - 1, &v.scaled(&int(k)));
    }
    let rhs = Series::constant(alg.boundary(r)).plus(&c.map(|x| alg.poisson(r, x)));
    let ode = derivative.minus(&rhs).window(0, n - 1, &|_| true);
    out.insert("cocycle_ode", ode.term_count());

    let ec = ts.exp(&c);
    let emc = ts.exp(&c.scaled(&int(-1)));
    let lhs = ts.mul(&emc, &ts.boundary(&ts.mul(&ec, &aser)));
    let rhs = Series::constant(alg.boundary(a)).minus(&ts.bracket(&c, &aser));
    out.insert("multiplicative_form", ts.truncate(&lhs.minus(&rhs)).term_count());

    let e = ts.exp_ad(r, &aser);
    let lhs = ts.boundary(&e);
    let rhs = ts.exp_ad(r, &Series::constant(alg.boundary(a))).plus(&ts.bracket(&c, &e));
    out.insert("conjugation_identity", lhs.minus(&rhs).term_count());

    let t_a = twisted_action(alg, r, &aser, order);
    let t_da = twisted_action(alg, r, &Series::constant(alg.boundary(a)), order);
    out.insert("twisted_action_commutes", ts.boundary(&t_a).minus(&t_da).term_count());
    out
}

/// Conjugation identity `∂(e^{ad r}a) = e^{ad r}∂a + {c, e^{ad r}a}` as a report.
pub fn conjugation_identity_check<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    r: &WedgeElement<B::Gen>,
    a: &WedgeElement<B::Gen>,
    order: usize,
) -> Report {
    let res = group_checks(alg, r, a, order)["conjugation_identity"];
    Report::new("conjugation_identity").with_truncation(json!({"t_order": order})).residual(res)
}

/// Whether `T(exp r)a₁ = a₂` modulo `t^{N+1}`; both must be `∂`-closed.
pub fn equivalence_check<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    a1: &Series<B::Gen>,
    a2: &Series<B::Gen>,
    r: &WedgeElement<B::Gen>,
    order: usize,
) -> Result<bool> {
    let ts = TSeriesOps::new(alg, order);
    if !ts.truncate(&ts.boundary(a1)).is_zero() || !ts.truncate(&ts.boundary(a2)).is_zero() {
        return Err(Error::Precondition("solutions must be ∂-closed".into()));
    }
    let ta = twisted_action(alg, r, a1, order);
    Ok(ta.minus(&ts.truncate(a2)).is_zero())
}

/// `d_a(1) = a⁻¹∂a` and the BV identity for `d_a` with the original
/// bracket on sample pairs. Both hold iff `∂a = 0`.
pub fn twisted_bv_residual<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    a: &AugmentedElement<B::Gen>,
    samples: &[WedgeElement<B::Gen>],
    order: usize,
) -> usize {
    let ts = TSeriesOps::new(alg, order);
    let da = |x: &Series<B::Gen>| twisted_boundary(alg, a, x, order);
    let mut res = da(&Series::constant(alg.one())).term_count();
    for x in samples {
        for y in samples {
            for (px, xh) in [0, 1].map(|p| (p, x.filter(|m| alg.deg_parity(m) == p))) {
                if xh.is_zero() {
                    continue;
                }
                let (xs, ys) = (Series::constant(xh), Series::constant(y.clone()));
                let r = ts
                    .bracket(&xs, &ys)
                    .scaled(&sign(px))
                    .minus(&ts.mul(&da(&xs), &ys))
                    .plus(&da(&ts.mul(&xs, &ys)))
                    .minus(&ts.mul(&xs, &da(&ys)).scaled(&sign(px)));
                res += r.term_count();
            }
        }
    }
    res
}

/// Weight `letters − 2·factors`: additive under the product and bracket and
/// preserved by `∂`.
pub fn weight(m: &Monomial<CyclicWord>) -> i64 {
    m.iter().map(|w| w.len() as i64 - 2).sum()
}

/// Ranks of a deformation complex on a weight window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowRanks {
    pub max_weight: i64,
    pub dimension: usize,
    /// Cohomology by `Deg`, present when the differential is `Deg`-homogeneous.
    pub by_degree: Option<BTreeMap<i64, usize>>,
    /// Cohomology by `Deg` parity.
    pub by_parity: BTreeMap<i64, usize>,
    /// Whether `{x, y}` of cocycles was exact for every tested pair.
    pub bracket_exact: bool,
}

/// Window of the subalgebra generated by cyclic words of length ≥ 3, modulo
/// weight above `max_weight`. Every element of positive weight is
/// nilpotent there, so exponentials are finite sums.
pub struct WeightWindow<'a> {
    pub alg: &'a WedgeAlgebra<NecklaceBialgebra>,
    pub max_weight: i64,
}

impl<'a> WeightWindow<'a> {
    pub fn new(alg: &'a WedgeAlgebra<NecklaceBialgebra>, max_weight: i64) -> Self {
        Self { alg, max_weight }
    }

    pub fn keep(&self, m: &Monomial<CyclicWord>) -> bool {
        weight(m) <= self.max_weight && m.iter().all(|w| w.len() >= 3)
    }

    pub fn project(&self, a: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        a.filter(|m| self.keep(m))
    }

    pub fn mul(&self, a: &WedgeElement<CyclicWord>, b: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        self.project(&self.alg.mul(a, b))
    }

    pub fn bracket(&self, a: &WedgeElement<CyclicWord>, b: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        self.project(&self.alg.poisson(a, b))
    }

    /// `exp(x)` for `x` of positive weight.
    pub fn exp(&self, x: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        let mut term = self.alg.one();
        let mut out = term.clone();
        for k in 1..=self.max_weight.max(0) + 1 {
            term = self.mul(&term, x).scaled(&frac(1, k));
            out.add_assign(&term);
        }
        out
    }

    /// `e^{ad r} a` for `r` of positive weight.
    pub fn exp_ad(&self, r: &WedgeElement<CyclicWord>, a: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        let mut term = self.project(a);
        let mut out = term.clone();
        for k in 1..=self.max_weight.max(0) + 1 {
            term = self.bracket(r, &term).scaled(&frac(1, k));
            out.add_assign(&term);
        }
        out
    }

    /// `T(exp r)a` in the window.
    pub fn twisted_action(&self, r: &WedgeElement<CyclicWord>, a: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        let mut c = LinComb::zero();
        let mut cur = self.project(&self.alg.boundary(r));
        for n in 0..=self.max_weight.max(0) {
            c.add_assign(&cur.scaled(&Q::from_integer(factorial(n as u32 + 1)).recip()));
            cur = self.bracket(r, &cur);
        }
        self.mul(&self.exp(&c), &self.exp_ad(r, a))
    }

    /// Inverse of `a = u + x` with `u` a nonzero scalar and `x` of positive weight.
    pub fn inverse(&self, a: &WedgeElement<CyclicWord>) -> Result<WedgeElement<CyclicWord>> {
        let u = a.coeff(&Vec::new());
        if u.is_zero() {
            return Err(Error::NotInvertible);
        }
        let rest = a.filter(|m| !m.is_empty());
        if rest.keys().any(|m| weight(m) <= 0) {
            return Err(Error::Precondition("non-scalar part must have positive weight".into()));
        }
        let x = rest.scaled(&(-u.recip()));
        let mut term = LinComb::single(Vec::new(), u.recip());
        let mut out = term.clone();
        for _ in 0..=self.max_weight.max(0) {
            term = self.mul(&term, &x);
            out.add_assign(&term);
        }
        Ok(out)
    }

    /// Basis monomials of the window, ordered by weight then monomial.
    pub fn basis(&self) -> Vec<Monomial<CyclicWord>> {
        let space = self.alg.bialgebra().space();
        let words: Vec<CyclicWord> = (3..=(self.max_weight + 2).max(2) as usize)
            .flat_map(|l| space.words_of_length(l))
            .collect();
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<(Monomial<CyclicWord>, usize)> = vec![(Vec::new(), 0)];
        while let Some((m, start)) = frontier.pop() {
            for (i, w) in words.iter().enumerate().skip(start) {
                let mut next = m.clone();
                next.push(w.clone());
                if weight(&next) > self.max_weight {
                    continue;
                }
                if let Some((norm, _)) = self.alg.normalize(next.clone()) {
                    if norm == next {
                        out.push(next.clone());
                        frontier.push((next, i));
                    }
                }
            }
        }
        out.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Cohomology of `D = ∂ − a⁻¹{a,·} + a⁻¹(∂a)·` on the window.
    pub fn deformation_complex(&self, a: &WedgeElement<CyclicWord>) -> Result<WindowRanks> {
        let alg = self.alg;
        let a = self.project(a);
        if !self.project(&alg.boundary(&a)).is_zero() {
            return Err(Error::Precondition("∂a is nonzero".into()));
        }
        let inv = self.inverse(&a)?;
        let d = |x: &WedgeElement<CyclicWord>| {
            self.project(&alg.boundary(x)).minus(&self.mul(&inv, &self.bracket(&a, x)))
        };
        let basis = self.basis();
        let index: BTreeMap<&Monomial<CyclicWord>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = basis.len();
        let mut mat = SparseExactMatrix::zeros(n, n);
        let mut homogeneous = true;
        for (col, m) in basis.iter().enumerate() {
            let img = d(&LinComb::single(m.clone(), int(1)));
            for (t, c) in img.iter() {
                if alg.big_degree(t) != alg.big_degree(m) - 1 {
                    homogeneous = false;
                }
                mat.add(index[t], col, c.clone());
            }
        }
        if !mat.mul(&mat).is_zero() {
            return Err(Error::Precondition("differential does not square to zero on the window".into()));
        }
        let degrees: Vec<i64> = basis.iter().map(|m| alg.big_degree(m)).collect();
        let parities: Vec<i64> = basis.iter().map(|m| alg.deg_parity(m)).collect();
        let by_parity = graded_cohomology(&mat, &parities, |k| 1 - k);
        let by_degree = homogeneous.then(|| graded_cohomology(&mat, &degrees, |k| k + 1));
        let bracket_exact = self.cocycle_brackets_exact(&mat, &basis, &index)?;
        Ok(WindowRanks { max_weight: self.max_weight, dimension: n, by_degree, by_parity, bracket_exact })
    }

    fn cocycle_brackets_exact(
        &self,
        mat: &SparseExactMatrix,
        basis: &[Monomial<CyclicWord>],
        index: &BTreeMap<&Monomial<CyclicWord>, usize>,
    ) -> Result<bool> {
        let kernel = linalg::kernel_basis(mat);
        let image_rank = linalg::rank(mat);
        let to_elem = |v: &[Q]| -> WedgeElement<CyclicWord> {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (basis[i].clone(), c.clone())).collect()
        };
        let cocycles: Vec<WedgeElement<CyclicWord>> = kernel
            .iter()
            .map(|v| to_elem(v))
            .filter(|x| x.keys().all(|m| !m.is_empty() && 2 * weight(m) <= self.max_weight))
            .take(6)
            .collect();
        for x in &cocycles {
            for y in &cocycles {
                let b = self.bracket(x, y);
                if b.is_zero() {
                    continue;
                }
                let mut aug = mat.clone();
                let mut col = SparseExactMatrix::zeros(mat.rows(), 1);
                for (m, c) in b.iter() {
                    col.add(index[m], 0, c.clone());
                }
                aug = hstack(&aug, &col);
                if linalg::rank(&aug) != image_rank {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `dim ker − dim im` per grading key, where `source(k)` is the key mapping
/// into key `k`.
fn graded_cohomology(mat: &SparseExactMatrix, keys: &[i64], source: impl Fn(i64) -> i64) -> BTreeMap<i64, usize> {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        groups.entry(*k).or_default().push(i);
    }
    let rank_from: BTreeMap<i64, usize> = groups.iter().map(|(k, cols)| (*k, linalg::rank(&mat.select_cols(cols)))).collect();
    groups
        .iter()
        .map(|(k, cols)| (*k, cols.len() - rank_from[k] - rank_from.get(&source(*k)).copied().unwrap_or(0)))
        .collect()
}

fn hstack(a: &SparseExactMatrix, b: &SparseExactMatrix) -> SparseExactMatrix {
    let mut m = SparseExactMatrix::zeros(a.rows(), a.cols() + b.cols());
    for (r, c, v) in a.entries() {
        m.add(r, c, v.clone());
    }
    for (r, c, v) in b.entries() {
        m.add(r, a.cols() + c, v.clone());
    }
    m
}
