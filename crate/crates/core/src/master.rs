//! Master equations in `Λ·(𝔤)`, closedness of `exp(R/α)` and deformation
//! cohomology of A∞ structures.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graded::AInfinityStructure;
use crate::linalg::{self, SparseExactMatrix};
use crate::lincomb::LinComb;
use crate::necklace::CyclicWord;
use crate::report::Report;
use crate::scalar::{frac, int};
use crate::wedge::{LieBialgebra, Series, WedgeAlgebra, WedgeElement};

const SAMPLE_TERMS: usize = 5;

fn sample<G: Ord + std::fmt::Debug>(x: &WedgeElement<G>) -> serde_json::Value {
    json!(x.iter().take(SAMPLE_TERMS).map(|(m, c)| format!("{c} {m:?}")).collect::<Vec<_>>())
}

fn parity_label<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &WedgeElement<B::Gen>) -> &'static str {
    match alg.element_parity(r) {
        None if r.is_zero() => "zero",
        None => "mixed",
        Some(0) => "even",
        Some(_) => "odd",
    }
}

/// `dR − ½{R,R}`.
pub fn tree_residual<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &WedgeElement<B::Gen>) -> WedgeElement<B::Gen> {
    alg.coboundary(r).minus(&alg.poisson(r, r).scaled(&frac(1, 2)))
}

/// Tree-level master equation `dR = ½{R,R}`. The `Deg` parity of `R` is
/// reported, not enforced.
pub fn check_master_tree<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &WedgeElement<B::Gen>) -> Report {
    let res = tree_residual(alg, r);
    let mut rep = Report::new("master_tree")
        .residual(res.len())
        .detail("deg_parity", parity_label(alg, r));
    if !res.is_zero() {
        rep = rep.detail("residual_sample", sample(&res));
    }
    rep
}

/// Residual `δ_α R − ½{R,R}` at order `k` of a polynomial `R(α)`.
pub fn full_residual_at<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &Series<B::Gen>, k: i64) -> WedgeElement<B::Gen> {
    let mut res = alg.coboundary(&r.coeff(k)).plus(&alg.boundary(&r.coeff(k - 1)));
    let half = frac(1, 2);
    for (i, ri) in r.iter() {
        let rj = r.coeff(k - i);
        if !rj.is_zero() {
            res.sub_assign(&alg.poisson(ri, &rj).scaled(&half));
        }
    }
    res
}

/// `δ_α R(α) = ½{R(α), R(α)}` order by order up to `g_max`, with the
/// zero-mode condition `ψ(R_g) = 0` reported separately.
pub fn check_master_full<B: LieBialgebra>(alg: &WedgeAlgebra<B>, r: &Series<B::Gen>, g_max: i64) -> Report {
    let mut rep = Report::new("master_full").with_truncation(json!({"g_max": g_max}));
    if r.min_order().is_some_and(|k| k < 0) {
        return rep.fail("R has negative powers of α");
    }
    let mut per_order = BTreeMap::new();
    for k in 0..=g_max {
        let res = full_residual_at(alg, r, k);
        per_order.insert(k.to_string(), res.len());
        if !res.is_zero() {
            rep.details.entry(format!("residual_sample_order_{k}")).or_insert_with(|| sample(&res));
        }
        rep = rep.residual(res.len());
    }
    let mut psi_bad = Vec::new();
    let mut parities = BTreeMap::new();
    for (g, rg) in r.iter() {
        if g > g_max {
            continue;
        }
        parities.insert(g.to_string(), parity_label(alg, rg));
        if !alg.psi(rg).is_zero() {
            psi_bad.push(g);
        }
    }
    rep = rep.detail("residual_by_order", json!(per_order)).detail("deg_parity_by_order", json!(parities));
    if !psi_bad.is_empty() {
        rep = rep.detail("outside_psi_kernel", json!(psi_bad)).fail("some R_g is not a zero mode of ψ");
    }
    rep
}

/// Verifies `δ_α exp(R/α) = 0` on the window of monomials with fewer than
/// `factor_cap` factors and α-orders in `[-factor_cap, g_max]`.
///
/// `R` must have no scalar term, so `Rⁿ` has at least `n` factors and the
/// exponential is exact on the window. The master equation is required up
/// to order `g_max + factor_cap`, the range that feeds the window.
pub fn exp_closedness_check<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    r: &Series<B::Gen>,
    g_max: i64,
    factor_cap: usize,
) -> Result<Report> {
    if factor_cap == 0 {
        return Err(Error::Truncation("factor cap must be at least 1".into()));
    }
    if r.iter().any(|(_, v)| v.keys().any(|m| m.is_empty())) {
        return Err(Error::Truncation("R has a scalar term; the factor window does not bound exp(R/α)".into()));
    }
    if r.min_order().is_some_and(|k| k < 0) {
        return Err(Error::Precondition("R has negative powers of α".into()));
    }
    let cap = factor_cap as i64;
    let trunc = json!({"g_max": g_max, "factor_cap": factor_cap, "alpha_window": [-cap, g_max]});
    let mut rep = Report::new("exp_closedness").with_truncation(trunc);
    for k in 0..=g_max {
        let res = full_residual_at(alg, r, k);
        if !res.is_zero() {
            return Ok(rep.residual(res.len()).fail(format!("master equation fails at order {k}")));
        }
    }
    for k in g_max + 1..=g_max + cap {
        if !full_residual_at(alg, r, k).is_zero() {
            return Err(Error::Truncation(format!(
                "master equation fails at order {k}, inside the range feeding the window; lower g_max or factor_cap"
            )));
        }
    }
    let keep = |m: &Vec<B::Gen>| m.len() <= factor_cap;
    let over_alpha = r.shift(-1);
    let hi = r.max_order().unwrap_or(0) * cap + cap;
    let mut term = Series::constant(alg.one());
    let mut exp = term.clone();
    for n in 1..=factor_cap {
        term = alg.series_mul(&term, &over_alpha, hi, &keep).scaled(&frac(1, n as i64));
        exp = exp.plus(&term);
    }
    let closed = alg.delta_alpha_series(&exp).window(-cap, g_max, &|m| m.len() < factor_cap);
    rep = rep.residual(closed.term_count()).detail("exp_terms", exp.term_count());
    Ok(rep)
}

/// Lemma: for even `A`, `δ_α(Aⁿ) = nAⁿ⁻¹δ_α(A) − n(n−1)/2 · α Aⁿ⁻²{A,A}`,
/// checked for `1 ≤ n ≤ n_max`.
pub fn power_lemma_check<B: LieBialgebra>(alg: &WedgeAlgebra<B>, a: &WedgeElement<B::Gen>, n_max: usize) -> Result<Report> {
    if alg.element_parity(a).is_some_and(|p| p != 0) || !alg.parity_parts(a)[1].is_empty() {
        return Err(Error::Precondition("element must have even Deg".into()));
    }
    let mut rep = Report::new("power_lemma").with_truncation(json!({"n_max": n_max}));
    let da = alg.coboundary(a);
    let ba = alg.boundary(a);
    let aa = alg.poisson(a, a);
    let mut powers = vec![alg.one()];
    for n in 1..=n_max {
        powers.push(alg.mul(&powers[n - 1], a));
    }
    for n in 1..=n_max {
        let nq = int(n as i64);
        let lhs = alg.delta_alpha(&powers[n]);
        let mut rhs = Series::zero();
        rhs.add_at(0, &alg.mul(&powers[n - 1], &da).scaled(&nq));
        rhs.add_at(1, &alg.mul(&powers[n - 1], &ba).scaled(&nq));
        if n >= 2 {
            let c = frac((n * (n - 1)) as i64, 2);
            rhs.add_at(1, &alg.mul(&powers[n - 2], &aa).scaled(&(-c)));
        }
        rep = rep.residual(lhs.minus(&rhs).term_count());
    }
    Ok(rep)
}

/// Ranks of the deformation complex, indexed by degree `k = length − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationRanks {
    pub max_length: usize,
    pub dims: BTreeMap<usize, usize>,
    pub ranks: BTreeMap<usize, usize>,
}

/// Cohomology of `(𝒜, [M, ·])` on non-constant cyclic words of length at
/// most `max_length`, graded by length. `M` must have a single arity so the
/// differential is length-homogeneous.
pub fn deformation_cohomology(m: &AInfinityStructure, max_length: usize) -> Result<DeformationRanks> {
    let space = m.space().clone();
    let mm = m.combined();
    if !mm.bracket(&mm)?.is_zero() {
        return Err(Error::Precondition("[M, M] is nonzero".into()));
    }
    let lengths: Vec<usize> = mm.terms().keys().map(CyclicWord::len).collect();
    let step = match (lengths.iter().min(), lengths.iter().max()) {
        (None, _) => None,
        (Some(a), Some(b)) if a == b && *a >= 2 => Some(a - 2),
        _ => {
            return Err(Error::Precondition(
                "deformation complex needs M of a single arity for the length grading".into(),
            ))
        }
    };
    let words: BTreeMap<usize, Vec<CyclicWord>> =
        (1..=max_length + step.unwrap_or(0)).map(|l| (l, space.words_of_length(l))).collect();
    let diff = |l: usize| -> SparseExactMatrix {
        let src = &words[&l];
        let Some(s) = step else {
            return SparseExactMatrix::zeros(0, src.len());
        };
        let tgt = &words[&(l + s)];
        let index: BTreeMap<&CyclicWord, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut mat = SparseExactMatrix::zeros(tgt.len(), src.len());
        for (col, w) in src.iter().enumerate() {
            let mut img: LinComb<CyclicWord> = LinComb::zero();
            for (u, cu) in mm.terms().iter() {
                img.add_scaled(&space.bracket_words(u, w), cu);
            }
            for (z, c) in img.iter() {
                mat.add(index[z], col, c.clone());
            }
        }
        mat
    };
    let mats: BTreeMap<usize, SparseExactMatrix> = (1..=max_length).map(|l| (l, diff(l))).collect();
    if let Some(s) = step {
        for l in 1..=max_length {
            if let Some(next) = mats.get(&(l + s)) {
                if !next.mul(&mats[&l]).is_zero() {
                    return Err(Error::Precondition(format!(
                        "[M, ·] does not square to zero on words of length {l}"
                    )));
                }
            }
        }
    }
    let rank_of: BTreeMap<usize, usize> = mats.iter().map(|(l, m)| (*l, linalg::rank(m))).collect();
    let mut dims = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for l in 1..=max_length {
        let dim = words[&l].len();
        let incoming = step.and_then(|s| l.checked_sub(s)).filter(|&p| p >= 1).map_or(0, |p| rank_of[&p]);
        dims.insert(l - 1, dim);
        ranks.insert(l - 1, dim - rank_of[&l] - incoming);
    }
    Ok(DeformationRanks { max_length, dims, ranks })
}
