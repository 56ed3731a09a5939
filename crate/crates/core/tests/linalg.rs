mod common;

use necklace_core::linalg::{homology_rank, kernel_basis, rank};
use necklace_core::scalar::int;
use necklace_core::{SparseExactMatrix, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..=3], c), r)
    })
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_matches_dense_elimination(m in matrix(), scale in 1i64..5) {
        let q: Vec<Vec<Q>> = to_q(&m).into_iter().map(|r| r.into_iter().map(|x| x / int(scale)).collect()).collect();
        let sparse = SparseExactMatrix::from_dense(&q);
        prop_assert_eq!(rank(&sparse), common::dense::rank(q.clone()));
        prop_assert_eq!(rank(&sparse.transpose()), rank(&sparse));
    }

    #[test]
    fn kernel_is_a_complement(m in matrix()) {
        let sparse = SparseExactMatrix::from_dense(&to_q(&m));
        let kernel = kernel_basis(&sparse);
        prop_assert_eq!(kernel.len() + rank(&sparse), sparse.cols());
        for v in &kernel {
            for row in &m {
                let dot: Q = row.iter().zip(v).map(|(&a, x)| int(a) * x).sum();
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(common::dense::rank(kernel.clone()), kernel.len());
    }

    #[test]
    fn triplet_text_round_trip(m in matrix()) {
        let sparse = SparseExactMatrix::from_dense(&to_q(&m));
        prop_assert_eq!(SparseExactMatrix::from_triplet_text(&sparse.to_triplet_text()).unwrap(), sparse);
    }
}

#[test]
fn homology_of_a_short_exact_sequence() {
    // 0 → Q → Q² → Q → 0 with maps (1,1)ᵀ and (1,−1).
    let f = SparseExactMatrix::from_dense(&to_q(&[vec![1], vec![1]]));
    let g = SparseExactMatrix::from_dense(&to_q(&[vec![1, -1]]));
    assert_eq!(homology_rank(&f, &g).unwrap(), 0);
    let bad = SparseExactMatrix::from_dense(&to_q(&[vec![1, 0]]));
    assert!(homology_rank(&f, &bad).is_err());
}
