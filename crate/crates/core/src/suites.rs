//! Seeded randomized identity suites shared by the self-test, the CLI and
//! the acceptance tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::algebras;
use crate::bv;
use crate::cyclic_oracle::cyclic_cohomology;
use crate::error::Result;
use crate::graded::FrobeniusAlgebra;
use crate::graph::GraphComplex;
use crate::master;
use crate::lincomb::LinComb;
use crate::necklace::{is_antisymmetric, swap_tensor, CyclicWord, NecklaceElement, NecklaceSpace};
use crate::random;
use crate::report::Report;
use crate::scalar::sign;
use crate::wedge::{LieBialgebra, NecklaceBialgebra, Series, TabularBialgebra, WedgeAlgebra, WedgeElement};

type Tensor2 = LinComb<(CyclicWord, CyclicWord)>;
type Tensor3 = LinComb<(CyclicWord, CyclicWord, CyclicWord)>;

/// Shifts `n - 2` cycled through by random instances.
const SHIFTS: [i64; 4] = [0, 1, -1, 2];

/// Per-instance seed, independent of evaluation order.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64 + 1)
}

fn tally(check: &str, seed: u64, residuals: &[usize], truncation: serde_json::Value) -> Report {
    let failing = residuals.iter().filter(|&&r| r > 0).count();
    Report::new(check)
        .with_seed(seed)
        .with_truncation(truncation)
        .residual(residuals.iter().sum())
        .detail("instances", residuals.len())
        .detail("failing_instances", failing)
}

/// `H · (x ⊗ y) = [H,x] ⊗ y + (-1)^{p(H)p(x)} x ⊗ [H,y]`.
fn act(space: &NecklaceSpace, h: &NecklaceElement, t: &Tensor2) -> Tensor2 {
    let ph = h.lie_parity().unwrap_or(0);
    let mut out = LinComb::zero();
    for ((a, b), c) in t.iter() {
        for (hw, hc) in h.terms().iter() {
            for (z, v) in space.bracket_words(hw, a).iter() {
                out.add_term((z.clone(), b.clone()), c * hc * v);
            }
            let s = sign(ph * space.lie_parity(a.letters()));
            for (z, v) in space.bracket_words(hw, b).iter() {
                out.add_term((a.clone(), z.clone()), c * hc * v * &s);
            }
        }
    }
    out
}

/// Cyclic sum of `(λ ⊗ 1) λ(H)` over `𝒜^{⊗3}` with Koszul signs.
fn co_jacobiator(space: &NecklaceSpace, h: &NecklaceElement) -> Tensor3 {
    let p = |w: &CyclicWord| space.lie_parity(w.letters());
    let mut t3: Tensor3 = LinComb::zero();
    for ((a, b), c) in h.cobracket().iter() {
        for ((x, y), v) in space.cobracket_word(a).iter() {
            t3.add_term((x.clone(), y.clone(), b.clone()), c * v);
        }
    }
    let mut tot = LinComb::zero();
    for ((x, y, z), c) in t3.iter() {
        tot.add_term((x.clone(), y.clone(), z.clone()), c.clone());
        tot.add_term((z.clone(), x.clone(), y.clone()), c * sign(p(z) * (p(x) + p(y))));
        tot.add_term((y.clone(), z.clone(), x.clone()), c * sign(p(x) * (p(y) + p(z))));
    }
    tot
}

fn bracket_of_tensor(space: &NecklaceSpace, t: &Tensor2) -> LinComb<CyclicWord> {
    let mut out = LinComb::zero();
    for ((a, b), c) in t.iter() {
        out.add_scaled(&space.bracket_words(a, b), c);
    }
    out
}

struct NecklaceResiduals {
    antisymmetry: usize,
    jacobi: usize,
    wedge_two: usize,
    co_jacobi: usize,
    cocycle: usize,
    involutive: usize,
    nonzero_bracket: bool,
    nonzero_cobracket: bool,
}

fn necklace_instance(seed: u64) -> NecklaceResiduals {
    let mut rng = random::rng(seed);
    let shift = SHIFTS[(seed % 4) as usize];
    let dim = 2 + (seed as usize / 4) % 3;
    let space: Arc<NecklaceSpace> = random::letter_space(&mut rng, shift, dim);
    let h = random::homogeneous_element(&mut rng, &space, 5, 2);
    let g = random::homogeneous_element(&mut rng, &space, 5, 2);
    let k = random::homogeneous_element(&mut rng, &space, 4, 2);
    let (ph, pg) = (h.lie_parity().unwrap(), g.lie_parity().unwrap());
    let br = |x: &NecklaceElement, y: &NecklaceElement| x.bracket(y).expect("same space");

    let antisymmetry = br(&h, &g).plus(&br(&g, &h).scaled(&sign(ph * pg))).terms().len();
    let jacobi = br(&h, &br(&g, &k))
        .minus(&br(&br(&h, &g), &k))
        .minus(&br(&g, &br(&h, &k)).scaled(&sign(ph * pg)))
        .terms()
        .len();
    let lh = h.cobracket();
    let wedge_two = if is_antisymmetric(&space, &lh) { 0 } else { lh.plus(&swap_tensor(&space, &lh)).len() };
    let co_jacobi = co_jacobiator(&space, &h).len();
    let lhs = br(&h, &g).cobracket();
    let rhs = act(&space, &h, &g.cobracket()).minus(&act(&space, &g, &lh).scaled(&sign(ph * pg)));
    let cocycle = lhs.minus(&rhs).len();
    let involutive = bracket_of_tensor(&space, &lh).len();
    NecklaceResiduals {
        antisymmetry,
        jacobi,
        wedge_two,
        co_jacobi,
        cocycle,
        involutive,
        nonzero_bracket: !br(&h, &g).is_zero(),
        nonzero_cobracket: !lh.is_zero(),
    }
}

/// Graded antisymmetry, Jacobi, `λ ∈ Λ²`, co-Jacobi, the 1-cocycle identity
/// and `[.,.] ∘ λ = 0` on seeded random necklace instances.
pub fn lie_bialgebra_suite(seed: u64, trials: usize) -> Vec<Report> {
    let res: Vec<NecklaceResiduals> =
        (0..trials).into_par_iter().map(|i| necklace_instance(instance_seed(seed, i))).collect();
    let trunc = json!({"max_dim": 4, "max_word_length": 5});
    let col = |f: fn(&NecklaceResiduals) -> usize| res.iter().map(f).collect::<Vec<_>>();
    let nb = res.iter().filter(|r| r.nonzero_bracket).count();
    let nc = res.iter().filter(|r| r.nonzero_cobracket).count();
    let reports = vec![
        tally("bracket_antisymmetry", seed, &col(|r| r.antisymmetry), trunc.clone()),
        tally("bracket_jacobi", seed, &col(|r| r.jacobi), trunc.clone()),
        tally("cobracket_in_wedge_square", seed, &col(|r| r.wedge_two), trunc.clone()),
        tally("cobracket_co_jacobi", seed, &col(|r| r.co_jacobi), trunc.clone()),
        tally("cobracket_cocycle", seed, &col(|r| r.cocycle), trunc.clone()),
        tally("bracket_after_cobracket_zero", seed, &col(|r| r.involutive), trunc),
    ];
    reports
        .into_iter()
        .map(|r| r.detail("nonzero_bracket_instances", nb).detail("nonzero_cobracket_instances", nc))
        .collect()
}

#[derive(Default)]
struct WedgeResiduals {
    boundary_square: usize,
    coboundary_square: usize,
    bv_identity: usize,
    antisymmetry: usize,
    jacobi: usize,
    leibniz: usize,
    d_leibniz: usize,
    d_derivation: usize,
    psi_derivation: usize,
    psi_zero: usize,
    lambda_one: usize,
    nonzero_bracket: usize,
    nonzero_coboundary: usize,
}

fn wedge_identities<B: LieBialgebra>(
    alg: &WedgeAlgebra<B>,
    a: &WedgeElement<B::Gen>,
    b: &WedgeElement<B::Gen>,
    c: &WedgeElement<B::Gen>,
    out: &mut WedgeResiduals,
) {
    let pa = alg.element_parity(a).unwrap_or(0);
    let pb = alg.element_parity(b).unwrap_or(0);
    let ab = alg.mul(a, b);
    let br = |x: &WedgeElement<B::Gen>, y: &WedgeElement<B::Gen>| alg.poisson(x, y);
    let bd = |x: &WedgeElement<B::Gen>| alg.boundary(x);
    let cd = |x: &WedgeElement<B::Gen>| alg.coboundary(x);

    out.nonzero_bracket += usize::from(!br(a, b).is_zero());
    out.nonzero_coboundary += usize::from(!cd(a).is_zero());
    out.boundary_square += bd(&bd(a)).len();
    out.coboundary_square += cd(&cd(a)).len();
    let bv = br(a, b)
        .scaled(&sign(pa))
        .minus(&alg.mul(&bd(a), b))
        .plus(&bd(&ab))
        .minus(&alg.mul(a, &bd(b)).scaled(&sign(pa)));
    out.bv_identity += bv.len();
    out.antisymmetry += br(a, b).plus(&br(b, a).scaled(&sign((pa - 1) * (pb - 1)))).len();
    out.jacobi += br(a, &br(b, c))
        .minus(&br(&br(a, b), c))
        .minus(&br(b, &br(a, c)).scaled(&sign((pa - 1) * (pb - 1))))
        .len();
    out.leibniz += br(a, &alg.mul(b, c))
        .minus(&alg.mul(&br(a, b), c))
        .minus(&alg.mul(b, &br(a, c)).scaled(&sign((pa - 1) * pb)))
        .len();
    out.d_leibniz += cd(&ab).minus(&alg.mul(&cd(a), b)).minus(&alg.mul(a, &cd(b)).scaled(&sign(pa))).len();
    out.d_derivation += cd(&br(a, b))
        .minus(&br(&cd(a), b))
        .minus(&br(a, &cd(b)).scaled(&sign(pa + 1)))
        .len();
    out.psi_derivation += alg.psi(&ab).minus(&alg.mul(&alg.psi(a), b)).minus(&alg.mul(a, &alg.psi(b))).len();
}

fn necklace_wedge_instance(seed: u64) -> WedgeResiduals {
    let mut rng = random::rng(seed);
    let shift = SHIFTS[(seed % 4) as usize];
    let dim = 2 + (seed as usize / 4) % 2;
    let space = random::letter_space(&mut rng, shift, dim);
    let bialg = if seed % 3 == 0 {
        NecklaceBialgebra::full(space.clone())
    } else {
        NecklaceBialgebra::reduced(space.clone())
    };
    let alg = WedgeAlgebra::new(bialg);
    let a = random::necklace_wedge(&mut rng, &alg, 3, 4, 3);
    let b = random::necklace_wedge(&mut rng, &alg, 2, 4, 2);
    let c = random::necklace_wedge(&mut rng, &alg, 2, 3, 2);
    let mut out = WedgeResiduals::default();
    wedge_identities(&alg, &a, &b, &c, &mut out);
    out.psi_zero += alg.psi(&a).len() + alg.psi(&b).len();

    let h = random::word_element(&mut rng, &space, 4);
    let g = random::word_element(&mut rng, &space, 4);
    let expect = alg.lift(&h.bracket(&g).unwrap().terms().filter(|w| !alg.bialgebra().is_reduced() || !w.is_empty()));
    let got = alg.poisson(&alg.lift(h.terms()), &alg.lift(g.terms()));
    out.lambda_one += got.minus(&expect).len();
    out
}

fn sl2_wedge_instance(seed: u64) -> (WedgeResiduals, bool) {
    let mut rng = random::rng(seed);
    let alg = WedgeAlgebra::new(TabularBialgebra::sl2());
    let a = random::tabular_wedge(&mut rng, &alg, 3, 3, 2);
    let b = random::tabular_wedge(&mut rng, &alg, 3, 2, 2);
    let c = random::tabular_wedge(&mut rng, &alg, 3, 2, 2);
    let mut out = WedgeResiduals::default();
    wedge_identities(&alg, &a, &b, &c, &mut out);
    let psi_nonzero = !alg.psi(&a).is_zero();
    (out, psi_nonzero)
}

/// The exterior-algebra identities over the necklace bialgebra (full and
/// reduced) and over tabular `sl₂`, where `ψ` is a nonzero derivation.
pub fn wedge_suite(seed: u64, trials: usize) -> Vec<Report> {
    let neck: Vec<WedgeResiduals> =
        (0..trials).into_par_iter().map(|i| necklace_wedge_instance(instance_seed(seed, i))).collect();
    let sl2: Vec<(WedgeResiduals, bool)> = (0..trials.div_ceil(2))
        .into_par_iter()
        .map(|i| sl2_wedge_instance(instance_seed(seed ^ 0x5a5a, i)))
        .collect();
    let trunc = json!({"max_dim": 3, "max_word_length": 4, "max_factors": 3});
    let both = |f: fn(&WedgeResiduals) -> usize| -> Vec<usize> {
        neck.iter().map(f).chain(sl2.iter().map(|(r, _)| f(r))).collect()
    };
    let mut reports = vec![
        tally("wedge_boundary_square_zero", seed, &both(|r| r.boundary_square), trunc.clone()),
        tally("wedge_coboundary_square_zero", seed, &both(|r| r.coboundary_square), trunc.clone()),
        tally("wedge_bv_identity", seed, &both(|r| r.bv_identity), trunc.clone()),
        tally("wedge_bracket_antisymmetry", seed, &both(|r| r.antisymmetry), trunc.clone()),
        tally("wedge_bracket_jacobi", seed, &both(|r| r.jacobi), trunc.clone()),
        tally("wedge_poisson_leibniz", seed, &both(|r| r.leibniz), trunc.clone()),
        tally("wedge_coboundary_leibniz", seed, &both(|r| r.d_leibniz), trunc.clone()),
        tally("wedge_coboundary_derivation_of_bracket", seed, &both(|r| r.d_derivation), trunc.clone()),
        tally("wedge_psi_derivation", seed, &both(|r| r.psi_derivation), trunc.clone()),
        tally(
            "wedge_psi_zero_for_necklace",
            seed,
            &neck.iter().map(|r| r.psi_zero).collect::<Vec<_>>(),
            trunc.clone(),
        ),
        tally(
            "wedge_bracket_restricts_to_necklace_bracket",
            seed,
            &neck.iter().map(|r| r.lambda_one).collect::<Vec<_>>(),
            trunc,
        ),
    ];
    let nb: usize = neck.iter().map(|r| r.nonzero_bracket).sum();
    let nd: usize = neck.iter().map(|r| r.nonzero_coboundary).sum();
    for r in reports.iter_mut() {
        r.details.insert("necklace_nonzero_bracket_instances".into(), nb.into());
        r.details.insert("necklace_nonzero_coboundary_instances".into(), nd.into());
    }
    let nonzero = sl2.iter().filter(|(_, nz)| *nz).count();
    reports.push(
        Report::new("wedge_psi_nonzero_for_sl2")
            .with_seed(seed)
            .detail("samples", sl2.len())
            .detail("nonzero_instances", nonzero),
    );
    if nonzero == 0 {
        let r = reports.pop().unwrap().fail("ψ vanished on every sl2 sample");
        reports.push(r);
    }
    reports
}

#[derive(Default)]
struct BvResiduals {
    axioms: usize,
    control_failed: bool,
    twisted_closed: usize,
    twisted_square: usize,
    twisted_open_detected: bool,
    twisted_expansion: usize,
    action_axiom: usize,
    action_chain: usize,
    group: BTreeMap<&'static str, usize>,
    nonzero_cocycle: bool,
}

fn bv_instance(seed: u64, order: usize) -> BvResiduals {
    let mut rng = random::rng(seed);
    let shift = SHIFTS[(seed % 4) as usize];
    let dim = 2 + (seed / 4 % 2) as usize;
    let space = random::letter_space(&mut rng, shift, dim);
    let alg = WedgeAlgebra::new(NecklaceBialgebra::reduced(space));
    let odd = |x: &WedgeElement<CyclicWord>| alg.element_parity(x) == Some(1);
    let r = random::necklace_wedge_where(&mut rng, &alg, 2, 3, 2, 200, odd).unwrap_or_default();
    let r2 = random::necklace_wedge(&mut rng, &alg, 2, 3, 2);
    let a = random::necklace_wedge(&mut rng, &alg, 2, 3, 2);
    let samples = vec![a.clone(), r.clone(), r2.clone()];

    let mut out = BvResiduals { axioms: bv::bv_axioms_check(&alg, &samples).residual_terms, ..Default::default() };
    let perturbed = bv::PerturbedBoundary { inner: &alg, epsilon: crate::scalar::int(1) };
    out.control_failed = !bv::bv_axioms_check(&perturbed, &samples).passed();

    let y = random::necklace_wedge_where(&mut rng, &alg, 3, 3, 2, 200, |x| odd(x) && !alg.boundary(x).is_zero())
        .unwrap_or_default();
    let closed = bv::AugmentedElement::new(crate::scalar::int(1), Series::term(1, alg.boundary(&y))).expect("unit part");
    out.twisted_closed = bv::twisted_bv_residual(&alg, &closed, &samples[..2], order);
    for x in &samples {
        let xs = Series::constant(x.clone());
        out.twisted_square +=
            bv::twisted_boundary(&alg, &closed, &bv::twisted_boundary(&alg, &closed, &xs, order), order).term_count();
    }
    let even_open = |x: &WedgeElement<CyclicWord>| alg.element_parity(x) == Some(0) && !alg.boundary(x).is_zero();
    if let Some(n) = random::necklace_wedge_where(&mut rng, &alg, 3, 3, 2, 200, even_open) {
        let open = bv::AugmentedElement::new(crate::scalar::int(1), Series::term(1, n)).expect("unit part");
        out.twisted_open_detected = bv::twisted_bv_residual(&alg, &open, &samples[..2], order) > 0;
        let xs = Series::constant(a.clone());
        out.twisted_expansion = bv::twisted_boundary(&alg, &open, &xs, order)
            .minus(&bv::twisted_boundary_expanded(&alg, &open, &xs, order))
            .term_count();
    }
    let (ax, ch) = bv::lie_action_residuals(&alg, &r, &r2, &a);
    out.action_axiom = ax;
    out.action_chain = ch;
    out.group = bv::group_checks(&alg, &r, &a, order);
    out.nonzero_cocycle = !alg.boundary(&r).is_zero();
    out
}

/// BV identities over random necklace instances, exact modulo `t^{order+1}`.
pub fn bv_suite(seed: u64, trials: usize, order: usize) -> Vec<Report> {
    let inst: Vec<BvResiduals> =
        (0..trials).into_par_iter().map(|i| bv_instance(instance_seed(seed ^ 0xb5, i), order)).collect();
    let trunc = json!({"t_order": order, "max_word_length": 3, "max_factors": 3});
    let col = |f: &dyn Fn(&BvResiduals) -> usize| -> Vec<usize> { inst.iter().map(f).collect() };
    let mut reports = vec![
        tally("bv_axioms", seed, &col(&|r| r.axioms), trunc.clone()),
        tally("bv_axioms_negative_control", seed, &col(&|r| usize::from(!r.control_failed)), trunc.clone()),
        tally("twisted_bv_when_closed", seed, &col(&|r| r.twisted_closed), trunc.clone()),
        tally("twisted_square_zero_when_closed", seed, &col(&|r| r.twisted_square), trunc.clone()),
        tally("twisted_expansion", seed, &col(&|r| r.twisted_expansion), trunc.clone()),
        tally("lie_action_axiom", seed, &col(&|r| r.action_axiom), trunc.clone()),
        tally("lie_action_chain_rule", seed, &col(&|r| r.action_chain), trunc.clone()),
    ];
    for key in ["maurer_cartan", "cocycle_ode", "multiplicative_form", "conjugation_identity", "twisted_action_commutes"] {
        reports.push(tally(key, seed, &col(&|r| r.group[key]), trunc.clone()));
    }
    let detected = inst.iter().filter(|r| r.twisted_open_detected).count();
    let mut open = Report::new("twisted_bv_fails_when_not_closed")
        .with_seed(seed)
        .with_truncation(trunc)
        .detail("instances", inst.len())
        .detail("detected", detected);
    if detected == 0 {
        open = open.fail("no instance with ∂a ≠ 0 was found or detected");
    }
    reports.push(open);
    let nz = inst.iter().filter(|r| r.nonzero_cocycle).count();
    for r in reports.iter_mut() {
        r.details.insert("nonzero_cocycle_instances".into(), nz.into());
    }
    reports
}

/// Raised tensor `c` of a Frobenius algebra as `R`: `∂c`, `dc` and `{c,c}`
/// vanish, the master equation holds through `g_max` and `exp(c/α)` is
/// `δ_α`-closed on the factor window.
pub fn master_suite(name: &str, alg: &FrobeniusAlgebra, g_max: i64, factor_cap: usize) -> Result<Vec<Report>> {
    let c = alg.mu_tensor()?;
    let wedge = WedgeAlgebra::new(NecklaceBialgebra::reduced(c.space().clone()));
    let r = wedge.lift(c.terms());
    let label = |check: &str| format!("{check}[{name}]");
    let zero = |check: &str, x: WedgeElement<CyclicWord>| Report::new(label(check)).residual(x.len());
    let series = Series::constant(r.clone());
    let mut full = master::check_master_full(&wedge, &series, g_max);
    full.check = label("master_check");
    let mut exp = master::exp_closedness_check(&wedge, &series, g_max, factor_cap)?;
    exp.check = label("exp_check");
    Ok(vec![
        zero("c_boundary_zero", wedge.boundary(&r)),
        zero("c_coboundary_zero", wedge.coboundary(&r)),
        zero("c_bracket_zero", wedge.poisson(&r, &r)),
        full,
        exp,
    ])
}

/// The power lemma on random even elements for `n ≤ n_max`, and the
/// factorial identity for `0 ≤ l, t ≤ lt_max`.
pub fn lemma_suite(seed: u64, trials: usize, n_max: usize, lt_max: u32) -> Vec<Report> {
    let power: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = instance_seed(seed ^ 0x70, i);
            let mut rng = random::rng(s);
            let space = random::letter_space(&mut rng, SHIFTS[(s % 4) as usize], 2);
            let alg = WedgeAlgebra::new(NecklaceBialgebra::reduced(space));
            let even = |x: &WedgeElement<CyclicWord>| alg.element_parity(x) == Some(0) && !x.is_zero();
            match random::necklace_wedge_where(&mut rng, &alg, 2, 3, 2, 200, even) {
                Some(a) => master::power_lemma_check(&alg, &a, n_max).map_or(1, |r| r.residual_terms),
                None => 0,
            }
        })
        .collect();
    let mut mismatches = Vec::new();
    for l in 0..=lt_max {
        for t in 0..=lt_max {
            let (lhs, rhs) = bv::factorial_identity(l, t);
            mismatches.push(usize::from(lhs != rhs));
        }
    }
    vec![
        tally("power_lemma", seed, &power, json!({"n_max": n_max, "max_word_length": 3, "max_factors": 2})),
        tally("factorial_identity", seed, &mismatches, json!({"l_max": lt_max, "t_max": lt_max})),
    ]
}

/// Deformation ranks of `(𝒜, [c, ·])` against Connes' complex in degrees `≤ k_max`.
pub fn oracle_suite(k_max: usize) -> Result<Vec<Report>> {
    let cases = [
        ("k", algebras::ground_field()),
        ("k[x]/x^2", algebras::dual_numbers(0)),
        ("k[Z/2]", algebras::cyclic_group_algebra(2)),
        ("k[x]/x^3", algebras::truncated_polynomial(3)),
    ];
    let mut out = Vec::new();
    for (name, alg) in cases {
        let def = master::deformation_cohomology(&alg.to_a_infinity()?, k_max + 1)?;
        let connes = cyclic_cohomology(&alg, k_max);
        let mismatched = (0..=k_max).filter(|k| def.ranks.get(k) != connes.get(k)).count();
        out.push(
            Report::new(format!("cyclic_oracle[{name}]"))
                .with_truncation(json!({"k_max": k_max}))
                .residual(mismatched)
                .detail("deformation_ranks", json!(def.ranks))
                .detail("connes_ranks", json!(connes)),
        );
    }
    Ok(out)
}

/// Bicomplex identities on `k ≤ kmax, j ≤ jmax` for plain and colored
/// graphs, and agreement of diagonal ranks at `α = 1, 2` in degrees `< jmax`.
pub fn graph_suite(kmax: usize, jmax: usize) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for colored in [false, true] {
        let gc = GraphComplex::new(colored, jmax);
        out.push(gc.identities(kmax, jmax)?);
        let tag = if colored { "colored" } else { "plain" };
        let mut r = Report::new(format!("diagonal_alpha_independence[{tag}]")).with_truncation(json!({"degrees": jmax}));
        for parity in [0u8, 1] {
            let one = gc.diagonal_homology(parity, jmax, 1)?;
            let two = gc.diagonal_homology(parity, jmax, 2)?;
            let differing = one.homology.iter().zip(&two.homology).filter(|(a, b)| a != b).count();
            r = r.residual(differing).detail(format!("class{parity}"), json!(one.homology));
        }
        out.push(r);
    }
    Ok(out)
}

/// Every suite at fixed sizes; the output depends only on `seed`.
pub fn selftest(seed: u64) -> Result<Vec<Report>> {
    let mut out = lie_bialgebra_suite(seed, 100);
    out.extend(wedge_suite(seed, 100));
    out.extend(master_suite("k[x]/x^2,n=3", &algebras::dual_numbers(3), 3, 3)?);
    out.extend(master_suite("k[Z/2]", &algebras::cyclic_group_algebra(2), 3, 3)?);
    // 1·g ↦ g + 1 breaks associativity
    let broken = algebras::corrupted(&algebras::cyclic_group_algebra(2), 0, 1, 0, crate::scalar::int(1));
    let mut control = Report::new("master_negative_control[k[Z/2] corrupted]");
    let broken_reports = master_suite("corrupted", &broken, 3, 3)?;
    let failing = broken_reports.iter().filter(|r| !r.passed()).count();
    let residual: usize = broken_reports.iter().map(|r| r.residual_terms).sum();
    control = control.detail("failing_checks", failing).detail("residual_terms", residual);
    if failing == 0 || residual == 0 {
        control = control.fail("the corrupted table passed every master check");
    }
    out.push(control);
    out.extend(lemma_suite(seed, 40, 6, 10));
    out.extend(bv_suite(seed, 50, 4));
    out.extend(oracle_suite(3)?);
    out.extend(graph_suite(4, 4)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lie_bialgebra_suite_passes() {
        for r in lie_bialgebra_suite(11, 40) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn wedge_suite_passes() {
        for r in wedge_suite(11, 30) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn bv_suite_passes() {
        for r in bv_suite(5, 12, 4) {
            assert!(r.passed(), "{r}");
        }
    }
}
