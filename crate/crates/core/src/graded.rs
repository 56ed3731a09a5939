//! Graded spaces, bilinear forms, Frobenius algebras and A∞ structures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseExactMatrix};
use crate::lincomb::LinComb;
use crate::necklace::{Letter, NecklaceElement, NecklaceSpace};
use crate::scalar::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    names: Vec<String>,
    degrees: Vec<i64>,
    shift: i64,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut seen = BTreeSet::new();
        for (n, d) in generators {
            let n = n.into();
            if !seen.insert(n.clone()) {
                return Err(Error::DuplicateGenerator(n));
            }
            names.push(n);
            degrees.push(d);
        }
        Ok(Self { names, degrees, shift: 0 })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Degree of generator `i` in the (possibly shifted) space.
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i] - self.shift
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// `A[k]`, with `A[k]^i = A^{i+k}`.
    pub fn shifted(&self, k: i64) -> Self {
        Self { shift: self.shift + k, ..self.clone() }
    }
}

/// A degree-`n` graded symmetric bilinear form; degeneracy allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    space: GradedSpace,
    degree: i64,
    entries: BTreeMap<(usize, usize), Q>,
}

impl InnerProduct {
    /// Entries are completed by graded symmetry; an entry contradicting
    /// its mirror is rejected.
    pub fn new(space: GradedSpace, degree: i64, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= space.dim() || j >= space.dim() {
                return Err(Error::UnknownGenerator(i.max(j)));
            }
            if v.is_zero() {
                continue;
            }
            if space.degree(i) + space.degree(j) != degree {
                return Err(Error::DegreeViolation(i, j, degree));
            }
            let mirror = &v * scalar::sign(space.degree(i) * space.degree(j));
            for (key, val) in [((i, j), v.clone()), ((j, i), mirror)] {
                match table.get(&key) {
                    Some(old) if *old != val => return Err(Error::SymmetryConflict(i, j)),
                    _ => {
                        table.insert(key, val);
                    }
                }
            }
        }
        Ok(Self { space, degree, entries: table })
    }

    pub fn zero(space: GradedSpace, degree: i64) -> Self {
        Self { space, degree, entries: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn pair(&self, i: usize, j: usize) -> Q {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Q)> {
        self.entries.iter()
    }

    pub fn gram(&self) -> SparseExactMatrix {
        let n = self.space.dim();
        SparseExactMatrix::from_triplets(n, n, self.entries.iter().map(|(&(i, j), v)| (i, j, v.clone())))
            .expect("indices in range")
    }

    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&self.gram()) == self.space.dim()
    }
}

/// Graded associative algebra with an invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    form: InnerProduct,
    mult: BTreeMap<(usize, usize), LinComb<usize>>,
}

impl FrobeniusAlgebra {
    /// Validates grading, associativity and invariance on all basis triples.
    pub fn new(form: InnerProduct, mult: BTreeMap<(usize, usize), LinComb<usize>>) -> Result<Self> {
        let alg = Self::unchecked(form, mult);
        alg.validate()?;
        Ok(alg)
    }

    /// Skips validation; for building negative controls.
    pub fn unchecked(form: InnerProduct, mult: BTreeMap<(usize, usize), LinComb<usize>>) -> Self {
        let mult = mult.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self { form, mult }
    }

    pub fn validate(&self) -> Result<()> {
        let sp = self.form.space();
        let d = sp.dim();
        for ((i, j), v) in &self.mult {
            if *i >= d || *j >= d {
                return Err(Error::UnknownGenerator((*i).max(*j)));
            }
            for k in v.keys() {
                if *k >= d {
                    return Err(Error::UnknownGenerator(*k));
                }
                if sp.degree(*k) != sp.degree(*i) + sp.degree(*j) {
                    return Err(Error::GradingViolation(*i, *j));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let ab = self.product(a, b);
                for c in 0..d {
                    let lhs = ab.map_linear(|&x| self.product(x, c));
                    let rhs = self.product(b, c).map_linear(|&y| self.product(a, y));
                    if lhs != rhs {
                        return Err(Error::Associativity(a, b, c));
                    }
                    if self.pair_vec(&ab, c) != self.pair_basis_vec(a, &self.product(b, c)) {
                        return Err(Error::Invariance(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn pair_vec(&self, v: &LinComb<usize>, c: usize) -> Q {
        v.iter().map(|(x, k)| k * self.form.pair(*x, c)).sum()
    }

    fn pair_basis_vec(&self, a: usize, v: &LinComb<usize>) -> Q {
        v.iter().map(|(y, k)| k * self.form.pair(a, *y)).sum()
    }

    pub fn form(&self) -> &InnerProduct {
        &self.form
    }

    pub fn space(&self) -> &GradedSpace {
        self.form.space()
    }

    pub fn product(&self, i: usize, j: usize) -> LinComb<usize> {
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mult_table(&self) -> &BTreeMap<(usize, usize), LinComb<usize>> {
        &self.mult
    }

    /// Cubic cyclic element of the necklace algebra with raised structure
    /// constants. Requires a nondegenerate form.
    pub fn mu_tensor(&self) -> Result<NecklaceElement> {
        let letters = NecklaceSpace::from_form(&self.form);
        let d = self.space().dim();
        let w = SparseExactMatrix::from_triplets(
            d,
            d,
            letters.form_entries().map(|(&(i, j), v)| (i as usize, j as usize, v.clone())),
        )?;
        let winv = invert(&w).ok_or(Error::DegenerateForm)?;
        let raise: Vec<Vec<(usize, Q)>> = (0..d)
            .map(|i| (0..d).filter(|&k| !winv[i][k].is_zero()).map(|k| (k, winv[i][k].clone())).collect())
            .collect();
        let deg = |i: usize| self.space().degree(i);
        let mut out = NecklaceElement::zero(&letters);
        for i in 0..d {
            for j in 0..d {
                let ab = self.product(i, j);
                if ab.is_zero() {
                    continue;
                }
                for k in 0..d {
                    let c = self.pair_vec(&ab, k) * scalar::sign(deg(i) * deg(k));
                    if c.is_zero() {
                        continue;
                    }
                    for (i2, wi) in &raise[i] {
                        for (j2, wj) in &raise[j] {
                            for (k2, wk) in &raise[k] {
                                let word = [*i2 as Letter, *j2 as Letter, *k2 as Letter];
                                out.add_word(&word, &c * wi * wj * wk);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The algebra as a one-component A∞ structure.
    pub fn to_a_infinity(&self) -> Result<AInfinityStructure> {
        let mu = self.mu_tensor()?;
        Ok(AInfinityStructure { space: mu.space().clone(), components: BTreeMap::from([(2, mu)]) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let alg = Self::from_json_unchecked(v)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Parses without the associativity and invariance checks, so a broken
    /// table can still be fed to the master equation.
    pub fn from_json_unchecked(v: &serde_json::Value) -> Result<Self> {
        let doc: AlgebraJson = serde_json::from_value(v.clone())?;
        let space = GradedSpace::new(doc.generators.iter().map(|g| (g.name.clone(), g.degree)))?;
        let form_json = doc.form.ok_or_else(|| Error::Parse("missing form".into()))?;
        let mut entries = Vec::new();
        for (i, j, v) in form_json.entries {
            entries.push((i, j, scalar::parse(&v)?));
        }
        let form = InnerProduct::new(space, form_json.degree, entries)?;
        Ok(Self::unchecked(form, parse_mult(&doc.mult)?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sp = self.space();
        let doc = AlgebraJson {
            generators: (0..sp.dim())
                .map(|i| GeneratorJson { name: sp.name(i).to_string(), degree: sp.degree(i) })
                .collect(),
            form: Some(FormJson {
                degree: self.form.degree,
                entries: self.form.entries.iter().map(|(&(i, j), v)| (i, j, scalar::format(v))).collect(),
            }),
            mult: self
                .mult
                .iter()
                .map(|(&(i, j), v)| (i, j, v.iter().map(|(k, c)| (*k, scalar::format(c))).collect()))
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }
}

pub(crate) fn parse_mult(rows: &[(usize, usize, Vec<(usize, String)>)]) -> Result<BTreeMap<(usize, usize), LinComb<usize>>> {
    let mut mult: BTreeMap<(usize, usize), LinComb<usize>> = BTreeMap::new();
    for (i, j, vals) in rows {
        let e = mult.entry((*i, *j)).or_default();
        for (k, c) in vals {
            e.add_term(*k, scalar::parse(c)?);
        }
    }
    Ok(mult)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct GeneratorJson {
    pub name: String,
    pub degree: i64,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FormJson {
    pub degree: i64,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct AlgebraJson {
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub form: Option<FormJson>,
    #[serde(default)]
    pub mult: Vec<(usize, usize, Vec<(usize, String)>)>,
}

/// Dense exact inverse, `None` if singular.
pub fn invert(m: &SparseExactMatrix) -> Option<Vec<Vec<Q>>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut a = m.to_dense();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let pv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &pv;
        }
        for x in inv[c].iter_mut() {
            *x *= &pv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let (ac, ic) = (a[c].clone(), inv[c].clone());
                for (x, y) in a[r].iter_mut().zip(&ac) {
                    *x -= &f * y;
                }
                for (x, y) in inv[r].iter_mut().zip(&ic) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(inv)
}

/// Components `μ_i` (arity `i`, cyclic words of length `i + 1`) over a
/// common letter space.
#[derive(Clone, Debug)]
pub struct AInfinityStructure {
    space: Arc<NecklaceSpace>,
    components: BTreeMap<usize, NecklaceElement>,
}

impl AInfinityStructure {
    pub fn new(space: Arc<NecklaceSpace>, components: BTreeMap<usize, NecklaceElement>) -> Result<Self> {
        for (arity, mu) in &components {
            if !crate::necklace::same_space(mu.space(), &space) {
                return Err(Error::MismatchedSpace);
            }
            if *arity == 0 || mu.terms().keys().any(|w| w.len() != arity + 1) {
                return Err(Error::Precondition(format!("component {arity} has words of the wrong length")));
            }
            if mu.lie_parity().is_some_and(|p| p != 1) {
                return Err(Error::Precondition(format!("component {arity} is not odd")));
            }
        }
        Ok(Self { space, components })
    }

    pub fn space(&self) -> &Arc<NecklaceSpace> {
        &self.space
    }

    pub fn component(&self, arity: usize) -> Option<&NecklaceElement> {
        self.components.get(&arity)
    }

    /// `M = Σ μ_i`.
    pub fn combined(&self) -> NecklaceElement {
        self.components.values().fold(NecklaceElement::zero(&self.space), |acc, m| acc.plus(m))
    }

    /// `[M, M] = 0`, checked directly.
    pub fn is_valid(&self) -> bool {
        let m = self.combined();
        m.bracket(&m).expect("same space").is_zero()
    }
}
