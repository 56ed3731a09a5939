mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use necklace_core::algebras;
use necklace_core::necklace::{check_isometric, Letter, NecklaceSpace};
use necklace_core::random;
use necklace_core::scalar::{int, parse};
use necklace_core::{NecklaceElement, Q};
use proptest::prelude::*;
use serde_json::Value;

use common::necklace_oracle as oracle;

fn fixture() -> Value {
    serde_json::from_str(include_str!("fixtures/necklace.json")).unwrap()
}

/// `⟨x, y⟩` in degree 0, `n = 0`, `(x,y) = (y,x) = 1`.
fn xy() -> Arc<NecklaceSpace> {
    let form = BTreeMap::from([((0, 1), int(1)), ((1, 0), int(1))]);
    NecklaceSpace::from_letters(vec![-1, -1], -2, form).unwrap()
}

fn tensor2_from_fixture(v: &Value) -> oracle::Tensor2 {
    let mut out = oracle::Tensor2::new();
    for t in v.as_array().unwrap() {
        let w = |k: &str| -> Vec<Letter> { serde_json::from_value(t[k].clone()).unwrap() };
        out.insert((w("left"), w("right")), parse(t["coeff"].as_str().unwrap()).unwrap());
    }
    out
}

#[test]
fn bracket_golden() {
    let sp = xy();
    let h = NecklaceElement::word(&sp, &[0, 0, 1], int(1));
    let g = NecklaceElement::word(&sp, &[0, 1, 1], int(1));
    let got = h.bracket(&g).unwrap();
    let want = NecklaceElement::from_json(&sp, &fixture()["bracket_xxy_xyy"]).unwrap();
    assert_eq!(got, want);
    assert_eq!(oracle::norm_element(&sp, &got), oracle::bracket(&sp, &h, &g));
}

#[test]
fn cobracket_golden() {
    let form = BTreeMap::from([((0, 2), int(1)), ((2, 0), int(1))]);
    let sp = NecklaceSpace::from_letters(vec![-1; 4], -2, form).unwrap();
    let h = NecklaceElement::word(&sp, &[0, 1, 2, 3], int(1));
    let want = tensor2_from_fixture(&fixture()["cobracket_xayb"]);
    let got: oracle::Tensor2 =
        h.cobracket().iter().map(|((a, b), c)| ((a.letters().to_vec(), b.letters().to_vec()), c.clone())).collect();
    assert_eq!(got, want);
    assert_eq!(oracle::norm_tensor2(&sp, &h.cobracket()), oracle::cobracket(&sp, &h));
}

#[test]
fn mu_tensor_golden() {
    let c = algebras::dual_numbers(3).mu_tensor().unwrap();
    let want = NecklaceElement::from_json(c.space(), &fixture()["mu_tensor_dual_numbers_n3"]).unwrap();
    assert_eq!(c, want);
}

#[test]
fn pair_with_constants() {
    // (x y) with (x,y) = 1 splits into two constants.
    let sp = xy();
    let h = NecklaceElement::word(&sp, &[0, 1], int(1));
    let terms = h.cobracket();
    assert!(terms.iter().all(|((a, b), _)| a.is_empty() && b.is_empty()));
    assert_eq!(oracle::norm_tensor2(&sp, &terms), oracle::cobracket(&sp, &h));
}

#[test]
fn inclusion_commutes_with_bracket() {
    let small = xy();
    let form = BTreeMap::from([((0, 1), int(1)), ((1, 0), int(1))]);
    let big = NecklaceSpace::from_letters(vec![-1, -1, -1], -2, form).unwrap();
    let embed: Vec<Letter> = vec![0, 1];
    check_isometric(&small, &embed, &big).unwrap();
    let h = NecklaceElement::word(&small, &[0, 0, 1], int(2));
    let g = NecklaceElement::word(&small, &[0, 1, 1, 1], int(-1));
    let before = h.bracket(&g).unwrap().include(&embed, &big).unwrap();
    let after = h.include(&embed, &big).unwrap().bracket(&g.include(&embed, &big).unwrap()).unwrap();
    assert_eq!(before, after);
}

fn sample(seed: u64, shift: i64, dim: usize, len: usize) -> (Arc<NecklaceSpace>, NecklaceElement, NecklaceElement) {
    let mut rng = random::rng(seed);
    let sp = random::letter_space(&mut rng, shift, dim);
    let h = random::homogeneous_element(&mut rng, &sp, len, 3);
    let g = random::homogeneous_element(&mut rng, &sp, len, 3);
    (sp, h, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bracket_matches_oracle(seed in any::<u64>(), shift in -2i64..=2, dim in 2usize..=4, len in 1usize..=5) {
        let (sp, h, g) = sample(seed, shift, dim, len);
        prop_assert_eq!(oracle::norm_element(&sp, &h.bracket(&g).unwrap()), oracle::bracket(&sp, &h, &g));
    }

    #[test]
    fn cobracket_matches_oracle(seed in any::<u64>(), shift in -2i64..=2, dim in 2usize..=4, len in 1usize..=5) {
        let (sp, h, _) = sample(seed, shift, dim, len);
        prop_assert_eq!(oracle::norm_tensor2(&sp, &h.cobracket()), oracle::cobracket(&sp, &h));
    }

    #[test]
    fn rotation_only_changes_the_sign(seed in any::<u64>(), shift in -2i64..=2, r in 0usize..5) {
        let mut rng = random::rng(seed);
        let sp = random::letter_space(&mut rng, shift, 3);
        let h = random::word_element(&mut rng, &sp, 5);
        let (w, c) = h.terms().iter().next().map(|(w, c)| (w.letters().to_vec(), c.clone())).unwrap();
        let r = r % w.len();
        let rotated: Vec<Letter> = w[r..].iter().chain(w[..r].iter()).copied().collect();
        let sign = oracle::koszul(&sp, &w, &(0..w.len()).map(|k| (k + r) % w.len()).collect::<Vec<_>>());
        let back = NecklaceElement::word(&sp, &rotated, c * sign);
        prop_assert_eq!(back, h);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), shift in -2i64..=2) {
        let (sp, h, _) = sample(seed, shift, 3, 4);
        prop_assert_eq!(NecklaceElement::from_json(&sp, &h.to_json()).unwrap(), h);
    }
}

#[test]
fn oracle_norm_kills_self_antiperiodic_words() {
    // (a a) with a odd equals minus itself.
    let sp = xy();
    assert!(oracle::norm(&sp, &[0, 0], &Q::from_integer(1.into())).is_empty());
    assert!(NecklaceElement::word(&sp, &[0, 0], int(1)).is_zero());
}

