//! Standard small Frobenius algebras.

use std::collections::BTreeMap;

use crate::graded::{FrobeniusAlgebra, GradedSpace, InnerProduct};
use crate::lincomb::LinComb;
use crate::scalar::{int, sign, Q};

type Mult = BTreeMap<(usize, usize), LinComb<usize>>;

fn build(gens: Vec<(String, i64)>, n: i64, form: Vec<(usize, usize, Q)>, mult: Mult) -> FrobeniusAlgebra {
    let sp = GradedSpace::new(gens).expect("distinct names");
    let form = InnerProduct::new(sp, n, form).expect("valid form");
    FrobeniusAlgebra::new(form, mult).expect("valid algebra")
}

/// The ground field with `(1,1) = 1`.
pub fn ground_field() -> FrobeniusAlgebra {
    build(
        vec![("1".into(), 0)],
        0,
        vec![(0, 0, int(1))],
        BTreeMap::from([((0, 0), LinComb::single(0, int(1)))]),
    )
}

/// `k[x]/(x²)` with `deg x = n` and `(1, x) = 1`.
pub fn dual_numbers(n: i64) -> FrobeniusAlgebra {
    build(
        vec![("1".into(), 0), ("x".into(), n)],
        n,
        vec![(0, 1, int(1))],
        BTreeMap::from([
            ((0, 0), LinComb::single(0, int(1))),
            ((0, 1), LinComb::single(1, int(1))),
            ((1, 0), LinComb::single(1, int(1))),
        ]),
    )
}

/// `k[x]/(x^m)` in degree 0 with `(xⁱ, xʲ) = 1` iff `i + j = m − 1`.
pub fn truncated_polynomial(m: usize) -> FrobeniusAlgebra {
    let gens = (0..m).map(|i| (format!("x{i}"), 0)).collect();
    let form = (0..m).map(|i| (i, m - 1 - i, int(1))).collect();
    let mut mult = BTreeMap::new();
    for i in 0..m {
        for j in 0..m - i {
            mult.insert((i, j), LinComb::single(i + j, int(1)));
        }
    }
    build(gens, 0, form, mult)
}

/// Group algebra of `ℤ/m` in degree 0 with the trace form `(g, h) = m δ_{gh,1}`.
pub fn cyclic_group_algebra(m: usize) -> FrobeniusAlgebra {
    let gens = (0..m).map(|i| (format!("g{i}"), 0)).collect();
    let form = (0..m).map(|i| (i, (m - i) % m, int(m as i64))).collect();
    let mut mult = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            mult.insert((i, j), LinComb::single((i + j) % m, int(1)));
        }
    }
    build(gens, 0, form, mult)
}

/// `2 × 2` matrices with the trace form.
pub fn matrix_algebra() -> FrobeniusAlgebra {
    matrix_units(2)
}

/// `m × m` matrices with the trace form; `e{i}{j}` is generator `(i−1)m + (j−1)`.
pub fn matrix_units(m: usize) -> FrobeniusAlgebra {
    let e: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let gens = e.iter().map(|(i, j)| (format!("e{}{}", i + 1, j + 1), 0)).collect();
    let mut form = Vec::new();
    let mut mult = BTreeMap::new();
    for (a, &(i, j)) in e.iter().enumerate() {
        for (b, &(k, l)) in e.iter().enumerate() {
            if j == k {
                mult.insert((a, b), LinComb::single(i * m + l, int(1)));
                if i == l && a <= b {
                    form.push((a, b, int(1)));
                }
            }
        }
    }
    build(gens, 0, form, mult)
}

/// Cohomology of the 2-torus: `1, a, b, ab` in degrees `0, 1, 1, 2`.
pub fn torus_cohomology() -> FrobeniusAlgebra {
    let gens = vec![("1".into(), 0), ("a".into(), 1), ("b".into(), 1), ("ab".into(), 2)];
    let form = vec![(0, 3, int(1)), (1, 2, int(1))];
    let mut mult = BTreeMap::new();
    for i in 0..4 {
        mult.insert((0, i), LinComb::single(i, int(1)));
        mult.insert((i, 0), LinComb::single(i, int(1)));
    }
    mult.insert((1, 2), LinComb::single(3, int(1)));
    mult.insert((2, 1), LinComb::single(3, int(-1)));
    build(gens, 2, form, mult)
}

/// Graded tensor product with Koszul signs.
pub fn tensor_product(a: &FrobeniusAlgebra, b: &FrobeniusAlgebra) -> FrobeniusAlgebra {
    let (sa, sb) = (a.space(), b.space());
    let (da, db) = (sa.dim(), sb.dim());
    let idx = |i: usize, j: usize| i * db + j;
    let mut gens = Vec::new();
    for i in 0..da {
        for j in 0..db {
            gens.push((format!("{}⊗{}", sa.name(i), sb.name(j)), sa.degree(i) + sb.degree(j)));
        }
    }
    let mut form = Vec::new();
    let mut mult: Mult = BTreeMap::new();
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let s = sign(sb.degree(j) * sa.degree(k));
                    let fv = a.form().pair(i, k) * b.form().pair(j, l);
                    if fv != int(0) {
                        form.push((idx(i, j), idx(k, l), fv * &s));
                    }
                    for (p, c1) in a.product(i, k).iter() {
                        for (q, c2) in b.product(j, l).iter() {
                            mult.entry((idx(i, j), idx(k, l))).or_default().add_term(idx(*p, *q), c1 * c2 * &s);
                        }
                    }
                }
            }
        }
    }
    build(gens, a.form().degree() + b.form().degree(), form, mult)
}

/// Adds `delta · target` to the product `i · j`, skipping validation.
pub fn corrupted(alg: &FrobeniusAlgebra, i: usize, j: usize, target: usize, delta: Q) -> FrobeniusAlgebra {
    let mut mult = alg.mult_table().clone();
    mult.entry((i, j)).or_default().add_term(target, delta);
    FrobeniusAlgebra::unchecked(alg.form().clone(), mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_valid() {
        for a in [
            ground_field(),
            dual_numbers(3),
            dual_numbers(0),
            truncated_polynomial(3),
            cyclic_group_algebra(2),
            cyclic_group_algebra(3),
            matrix_algebra(),
            torus_cohomology(),
            tensor_product(&dual_numbers(3), &cyclic_group_algebra(2)),
        ] {
            a.validate().unwrap();
            assert!(a.form().is_nondegenerate());
        }
    }

    #[test]
    fn corruption_breaks_associativity() {
        let bad = corrupted(&matrix_algebra(), 1, 2, 3, int(1));
        assert!(bad.validate().is_err());
    }
}
