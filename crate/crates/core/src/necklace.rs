//! Cyclic words over the shifted letters of a graded space with a form:
//! the necklace Lie bialgebra, its derivatives, bracket and cobracket.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::InnerProduct;
use crate::lincomb::LinComb;
use crate::scalar::{self, Q};

pub type Letter = u32;

/// An ordered (non-cyclic) word; the value type of derivatives.
pub type TensorWord = Vec<Letter>;

/// Letters of `A[1]` with their degrees, the shift `n - 2`, and the
/// graded antisymmetric form `⟨sa, sb⟩ = (-1)^ã (a, b)` on letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceSpace {
    names: Vec<String>,
    degrees: Vec<i64>,
    shift: i64,
    form: BTreeMap<(Letter, Letter), Q>,
    partners: Vec<Vec<(Letter, Q)>>,
}

impl NecklaceSpace {
    /// Letters of `A[1]` for the form's base space `A`.
    pub fn from_form(form: &InnerProduct) -> Arc<Self> {
        let space = form.space();
        let names = (0..space.dim()).map(|i| space.name(i).to_string()).collect();
        let degrees: Vec<i64> = (0..space.dim()).map(|i| space.degree(i) - 1).collect();
        let mut letters = BTreeMap::new();
        for ((i, j), v) in form.entries() {
            letters.insert((*i as Letter, *j as Letter), v * scalar::sign(space.degree(*i)));
        }
        Arc::new(Self::assemble(names, degrees, form.degree() - 2, letters))
    }

    /// Direct construction from letter degrees, shift and letter form.
    /// The form is checked for degree and graded antisymmetry.
    pub fn from_letters(degrees: Vec<i64>, shift: i64, form: BTreeMap<(Letter, Letter), Q>) -> Result<Arc<Self>> {
        let dim = degrees.len();
        for ((i, j), v) in &form {
            let (i, j) = (*i as usize, *j as usize);
            if i >= dim || j >= dim {
                return Err(Error::UnknownGenerator(i.max(j)));
            }
            if v.is_zero() {
                continue;
            }
            if degrees[i] + degrees[j] != shift {
                return Err(Error::DegreeViolation(i, j, shift));
            }
            let back = form.get(&(j as Letter, i as Letter)).cloned().unwrap_or_else(Q::zero);
            if back != -(v * scalar::sign(degrees[i] * degrees[j])) {
                return Err(Error::SymmetryConflict(i, j));
            }
        }
        let names = (0..dim).map(|i| format!("a{i}")).collect();
        Ok(Arc::new(Self::assemble(names, degrees, shift, form)))
    }

    fn assemble(names: Vec<String>, degrees: Vec<i64>, shift: i64, form: BTreeMap<(Letter, Letter), Q>) -> Self {
        let form: BTreeMap<_, _> = form.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut partners = vec![Vec::new(); degrees.len()];
        for ((i, j), v) in &form {
            partners[*i as usize].push((*j, v.clone()));
        }
        Self { names, degrees, shift, form, partners }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// `n - 2`.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn letter_degree(&self, a: Letter) -> i64 {
        self.degrees[a as usize]
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a as usize]
    }

    pub fn omega(&self, a: Letter, b: Letter) -> Q {
        self.form.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn form_entries(&self) -> impl Iterator<Item = (&(Letter, Letter), &Q)> {
        self.form.iter()
    }

    pub fn parity(&self, word: &[Letter]) -> i64 {
        word.iter().map(|&a| self.degrees[a as usize]).sum::<i64>().rem_euclid(2)
    }

    /// Sum of letter degrees.
    pub fn raw_degree(&self, word: &[Letter]) -> i64 {
        word.iter().map(|&a| self.degrees[a as usize]).sum()
    }

    /// Degree after the `[n-2]` shift.
    pub fn shifted_degree(&self, word: &[Letter]) -> i64 {
        self.raw_degree(word) - self.shift
    }

    /// Parity governing the Lie bracket signs.
    pub fn lie_parity(&self, word: &[Letter]) -> i64 {
        (self.raw_degree(word) + self.shift).rem_euclid(2)
    }

    /// Sign of moving the prefix `word[..r]` to the end.
    pub fn rotation_sign(&self, word: &[Letter], r: usize) -> bool {
        self.parity(&word[..r]) * self.parity(&word[r..]) % 2 == 1
    }

    /// Canonical rotation and sign, or `None` if the word vanishes in the
    /// cyclic quotient. `true` means a minus sign.
    pub fn canonical(&self, word: &[Letter]) -> Option<(CyclicWord, bool)> {
        let m = word.len();
        if m == 0 {
            return Some((CyclicWord(Vec::new()), false));
        }
        let mut best = 0;
        for r in 1..m {
            if rotation_cmp(word, r, best) == Ordering::Less {
                best = r;
            }
        }
        let mut w = Vec::with_capacity(m);
        w.extend_from_slice(&word[best..]);
        w.extend_from_slice(&word[..best]);
        let neg = self.rotation_sign(word, best);
        for r in 1..m {
            if m % r == 0 && w[r..] == w[..m - r] && w[..r] == w[m - r..] {
                if self.rotation_sign(&w, r) {
                    return None;
                }
                break;
            }
        }
        Some((CyclicWord(w), neg))
    }

    /// Canonicalizes a linear combination of plain words.
    pub fn cyclic_closure(&self, words: &LinComb<TensorWord>) -> LinComb<CyclicWord> {
        let mut out = LinComb::zero();
        for (w, c) in words.iter() {
            if let Some((cw, neg)) = self.canonical(w) {
                out.add_term(cw, signed(c.clone(), neg));
            }
        }
        out
    }

    /// Bracket of two basis cyclic words.
    pub fn bracket_words(&self, u: &CyclicWord, v: &CyclicWord) -> LinComb<CyclicWord> {
        let (u, v) = (&u.0, &v.0);
        let mut raw: LinComb<TensorWord> = LinComb::zero();
        for i in 0..u.len() {
            let partners = &self.partners[u[i] as usize];
            if partners.is_empty() {
                continue;
            }
            let s1 = self.rotation_sign(u, i + 1);
            for j in 0..v.len() {
                let Some((_, w)) = partners.iter().find(|(b, _)| *b == v[j]) else {
                    continue;
                };
                let s2 = self.rotation_sign(v, j);
                let mut word = Vec::with_capacity(u.len() + v.len() - 2);
                word.extend_from_slice(&u[i + 1..]);
                word.extend_from_slice(&u[..i]);
                word.extend_from_slice(&v[j + 1..]);
                word.extend_from_slice(&v[..j]);
                raw.add_term(word, signed(w.clone(), s1 ^ s2));
            }
        }
        self.cyclic_closure(&raw)
    }

    /// Cobracket of a basis cyclic word, as an element of `𝒜 ⊗ 𝒜`.
    pub fn cobracket_word(&self, u: &CyclicWord) -> LinComb<(CyclicWord, CyclicWord)> {
        let u = &u.0;
        let m = u.len();
        let mut out = LinComb::zero();
        let n_odd = self.shift.rem_euclid(2) == 1;
        for l in 0..m {
            let partners = &self.partners[u[l] as usize];
            if partners.is_empty() {
                continue;
            }
            let s0 = self.rotation_sign(u, l);
            let r: Vec<Letter> = u[l..].iter().chain(u[..l].iter()).copied().collect();
            for mm in 1..m {
                let Some((_, w)) = partners.iter().find(|(b, _)| *b == r[mm]) else {
                    continue;
                };
                let inner = &r[1..mm];
                let outer = &r[mm + 1..];
                let pin = self.parity(inner);
                let mut neg = s0 ^ (self.parity(&r[mm..=mm]) * pin == 1);
                if n_odd && (pin + self.parity(&r[..1])) % 2 == 1 {
                    neg = !neg;
                }
                let (Some((c1, n1)), Some((c2, n2))) = (self.canonical(inner), self.canonical(outer)) else {
                    continue;
                };
                out.add_term((c1, c2), signed(w.clone(), neg ^ n1 ^ n2));
            }
        }
        out
    }

    /// `∂H/∂←a` on a basis word: rotations bringing an `a` to the last slot,
    /// which is then contracted.
    pub fn left_derivative_word(&self, u: &CyclicWord, a: Letter) -> LinComb<TensorWord> {
        let u = &u.0;
        let mut out = LinComb::zero();
        for i in 0..u.len() {
            if u[i] == a {
                let rest: TensorWord = u[i + 1..].iter().chain(u[..i].iter()).copied().collect();
                out.add_term(rest, signed(Q::one(), self.rotation_sign(u, i + 1)));
            }
        }
        out
    }

    /// `∂H/∂→a` on a basis word: rotations bringing an `a` to the first
    /// slot, which is then contracted.
    pub fn right_derivative_word(&self, u: &CyclicWord, a: Letter) -> LinComb<TensorWord> {
        let u = &u.0;
        let mut out = LinComb::zero();
        for j in 0..u.len() {
            if u[j] == a {
                let rest: TensorWord = u[j + 1..].iter().chain(u[..j].iter()).copied().collect();
                out.add_term(rest, signed(Q::one(), self.rotation_sign(u, j)));
            }
        }
        out
    }

    /// All canonical nonvanishing cyclic words of length `m`.
    pub fn words_of_length(&self, m: usize) -> Vec<CyclicWord> {
        let d = self.dim();
        let mut out = Vec::new();
        if m == 0 {
            return vec![CyclicWord(Vec::new())];
        }
        if d == 0 {
            return out;
        }
        let mut w = vec![0 as Letter; m];
        loop {
            if let Some((c, _)) = self.canonical(&w) {
                if c.0 == w {
                    out.push(c);
                }
            }
            let mut k = m;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                w[k] += 1;
                if (w[k] as usize) < d {
                    break;
                }
                w[k] = 0;
            }
        }
    }
}

fn rotation_cmp(w: &[Letter], a: usize, b: usize) -> Ordering {
    let m = w.len();
    for k in 0..m {
        let o = w[(a + k) % m].cmp(&w[(b + k) % m]);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

pub(crate) fn signed(c: Q, neg: bool) -> Q {
    if neg {
        -c
    } else {
        c
    }
}

/// A cyclic word in canonical rotation. Ordered by length first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Linear combination of cyclic words over a fixed letter space.
#[derive(Clone)]
pub struct NecklaceElement {
    space: Arc<NecklaceSpace>,
    terms: LinComb<CyclicWord>,
}

impl PartialEq for NecklaceElement {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl fmt::Debug for NecklaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

pub fn same_space(a: &Arc<NecklaceSpace>, b: &Arc<NecklaceSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<Letter>,
    coeff: String,
}

impl NecklaceElement {
    pub fn zero(space: &Arc<NecklaceSpace>) -> Self {
        Self { space: space.clone(), terms: LinComb::zero() }
    }

    /// The constant: the empty cyclic word.
    pub fn constant(space: &Arc<NecklaceSpace>, c: Q) -> Self {
        Self { space: space.clone(), terms: LinComb::single(CyclicWord::empty(), c) }
    }

    /// `c` times the cyclic class of `letters`, normalized.
    pub fn word(space: &Arc<NecklaceSpace>, letters: &[Letter], c: Q) -> Self {
        let mut e = Self::zero(space);
        e.add_word(letters, c);
        e
    }

    pub fn from_terms(space: &Arc<NecklaceSpace>, terms: LinComb<CyclicWord>) -> Self {
        Self { space: space.clone(), terms }
    }

    pub fn add_word(&mut self, letters: &[Letter], c: Q) {
        if let Some((w, neg)) = self.space.canonical(letters) {
            self.terms.add_term(w, signed(c, neg));
        }
    }

    pub fn space(&self) -> &Arc<NecklaceSpace> {
        &self.space
    }

    pub fn terms(&self) -> &LinComb<CyclicWord> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, letters: &[Letter]) -> Q {
        match self.space.canonical(letters) {
            Some((w, neg)) => signed(self.terms.coeff(&w), neg),
            None => Q::zero(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self { space: self.space.clone(), terms: self.terms.plus(&other.terms) }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self { space: self.space.clone(), terms: self.terms.minus(&other.terms) }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self { space: self.space.clone(), terms: self.terms.scaled(c) }
    }

    /// Lie parity if every term shares one, `None` for zero or mixed.
    pub fn lie_parity(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| self.space.lie_parity(&w.0));
        let p = it.next()?;
        it.all(|q| q == p).then_some(p)
    }

    /// Shifted degree if homogeneous.
    pub fn shifted_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| self.space.shifted_degree(&w.0));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::MismatchedSpace);
        }
        let mut out = LinComb::zero();
        for (u, cu) in self.terms.iter() {
            for (v, cv) in other.terms.iter() {
                out.add_scaled(&self.space.bracket_words(u, v), &(cu * cv));
            }
        }
        Ok(Self { space: self.space.clone(), terms: out })
    }

    pub fn cobracket(&self) -> LinComb<(CyclicWord, CyclicWord)> {
        self.terms.map_linear(|u| self.space.cobracket_word(u))
    }

    pub fn left_derivative(&self, a: Letter) -> LinComb<TensorWord> {
        self.terms.map_linear(|u| self.space.left_derivative_word(u, a))
    }

    pub fn right_derivative(&self, a: Letter) -> LinComb<TensorWord> {
        self.terms.map_linear(|u| self.space.right_derivative_word(u, a))
    }

    /// `b ↦ Σ_a ⟨b, a⟩ ∂H/∂→a`, one image per letter `b`.
    pub fn universal_map(&self) -> Vec<LinComb<TensorWord>> {
        (0..self.space.dim() as Letter)
            .map(|b| {
                let mut img = LinComb::zero();
                for (a, w) in &self.space.partners[b as usize] {
                    img.add_scaled(&self.right_derivative(*a), w);
                }
                img
            })
            .collect()
    }

    /// Relabels letters along an isometric embedding into `target`.
    pub fn include(&self, embedding: &[Letter], target: &Arc<NecklaceSpace>) -> Result<Self> {
        check_isometric(&self.space, embedding, target)?;
        let mut out = Self::zero(target);
        for (w, c) in self.terms.iter() {
            let mapped: Vec<Letter> = w.0.iter().map(|&a| embedding[a as usize]).collect();
            out.add_word(&mapped, c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(w, c)| TermJson { word: w.0.clone(), coeff: scalar::format(c) })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(space: &Arc<NecklaceSpace>, v: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(space);
        for t in terms {
            if let Some(&a) = t.word.iter().find(|&&a| a as usize >= space.dim()) {
                return Err(Error::UnknownGenerator(a as usize));
            }
            out.add_word(&t.word, scalar::parse(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Checks that `embedding` preserves letter degrees and form values.
pub fn check_isometric(source: &NecklaceSpace, embedding: &[Letter], target: &NecklaceSpace) -> Result<()> {
    if embedding.len() != source.dim() {
        return Err(Error::NonIsometric(format!(
            "embedding has {} images for {} letters",
            embedding.len(),
            source.dim()
        )));
    }
    for (i, &e) in embedding.iter().enumerate() {
        if e as usize >= target.dim() {
            return Err(Error::NonIsometric(format!("image {e} out of range")));
        }
        if embedding[..i].contains(&e) {
            return Err(Error::NonIsometric(format!("letter {e} hit twice")));
        }
        if source.letter_degree(i as Letter) != target.letter_degree(e) {
            return Err(Error::NonIsometric(format!("degree of letter {i} changes")));
        }
    }
    if source.shift() != target.shift() {
        return Err(Error::NonIsometric("form degrees differ".into()));
    }
    for (i, &ei) in embedding.iter().enumerate() {
        for (j, &ej) in embedding.iter().enumerate() {
            if source.omega(i as Letter, j as Letter) != target.omega(ei, ej) {
                return Err(Error::NonIsometric(format!("form value on ({i},{j}) changes")));
            }
        }
    }
    Ok(())
}

/// Graded swap `x ⊗ y ↦ (-1)^{p(x)p(y)} y ⊗ x` in Lie parity.
pub fn swap_tensor(space: &NecklaceSpace, t: &LinComb<(CyclicWord, CyclicWord)>) -> LinComb<(CyclicWord, CyclicWord)> {
    t.iter()
        .map(|((a, b), c)| {
            let neg = space.lie_parity(&a.0) * space.lie_parity(&b.0) == 1;
            ((b.clone(), a.clone()), signed(c.clone(), neg))
        })
        .collect()
}

/// Whether an element of `𝒜 ⊗ 𝒜` lies in the graded antisymmetric part.
pub fn is_antisymmetric(space: &NecklaceSpace, t: &LinComb<(CyclicWord, CyclicWord)>) -> bool {
    t.plus(&swap_tensor(space, t)).is_zero()
}
