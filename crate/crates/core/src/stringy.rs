//! Stringy categories: finitely many objects, graded hom spaces, a pairing
//! between opposite hom spaces and an α-polynomial `R(α)` in `Λ·` of the
//! necklace Lie bialgebra on the total hom space.
//!
//! A letter `f ∈ Hom(L₁, L₂)` is followed in a word by a letter whose source
//! is `L₂`; words close up cyclically.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graded::{FrobeniusAlgebra, GradedSpace, InnerProduct};
use crate::lincomb::LinComb;
use crate::master;
use crate::necklace::{signed, CyclicWord, Letter, NecklaceSpace};
use crate::report::Report;
use crate::scalar::{self, Q};
use crate::wedge::{Monomial, NecklaceBialgebra, Series, WedgeAlgebra, WedgeElement};

/// `K = parts[0] ⊕ parts[1]`. Letters of hom spaces touching `K` are images
/// of summand letters: `embed[(x, s, t)]` is the copy of `x` whose source
/// (target) is replaced by `K` when `s` (`t`) names the summand side.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: usize,
    pub parts: [usize; 2],
    pub embed: BTreeMap<(Letter, Option<usize>, Option<usize>), Letter>,
}

#[derive(Clone, Debug)]
pub struct StringyCategory {
    objects: Vec<String>,
    form: InnerProduct,
    space: Arc<NecklaceSpace>,
    ends: Vec<(usize, usize)>,
    r: Series<CyclicWord>,
    sums: Vec<DirectSum>,
}

/// One hom space: source, target and its generators `(name, degree)`.
pub type HomSpec = (usize, usize, Vec<(String, i64)>);

impl StringyCategory {
    /// Skeleton with `R = 0`. Pairing entries index generators in the order
    /// they are listed across `homs`.
    pub fn build(objects: Vec<String>, degree: i64, homs: Vec<HomSpec>, pairing: Vec<(usize, usize, Q)>) -> Result<Self> {
        let mut gens = Vec::new();
        for (src, dst, g) in homs {
            if src >= objects.len() || dst >= objects.len() {
                return Err(Error::Precondition(format!("hom ({src},{dst}) names an unknown object")));
            }
            gens.extend(g.into_iter().map(|(name, deg)| (name, deg, (src, dst))));
        }
        Self::from_generators(objects, degree, gens, pairing)
    }

    fn from_generators(
        objects: Vec<String>,
        degree: i64,
        gens: Vec<(String, i64, (usize, usize))>,
        pairing: Vec<(usize, usize, Q)>,
    ) -> Result<Self> {
        let ends: Vec<(usize, usize)> = gens.iter().map(|g| g.2).collect();
        for (i, j, v) in &pairing {
            if *i >= ends.len() || *j >= ends.len() {
                return Err(Error::UnknownGenerator((*i).max(*j)));
            }
            let (a, b) = ends[*i];
            if !v.is_zero() && ends[*j] != (b, a) {
                return Err(Error::PairingBlock(format!(
                    "{} ∈ Hom({},{}) paired with {} ∈ Hom({},{})",
                    gens[*i].0, objects[a], objects[b], gens[*j].0, objects[ends[*j].0], objects[ends[*j].1]
                )));
            }
        }
        let space = GradedSpace::new(gens.iter().map(|g| (g.0.clone(), g.1)))?;
        let form = InnerProduct::new(space, degree, pairing)?;
        let letters = NecklaceSpace::from_form(&form);
        Ok(Self { objects, form, space: letters, ends, r: Series::zero(), sums: Vec::new() })
    }

    /// One object whose endomorphisms are `alg`, with `R = c` at order 0.
    pub fn one_object(alg: &FrobeniusAlgebra) -> Result<Self> {
        let sp = alg.space();
        let gens = (0..sp.dim()).map(|i| (sp.name(i).to_string(), sp.degree(i))).collect();
        let pairing = alg.form().entries().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        let mut cat = Self::build(vec!["L".into()], alg.form().degree(), vec![(0, 0, gens)], pairing)?;
        let c = alg.mu_tensor()?;
        let r = cat.wedge().lift(c.terms());
        cat.set_r(Series::constant(r))?;
        Ok(cat)
    }

    /// Objects `L1..Lm` with `Hom(Li, Lj) = alg`, composed as matrix units,
    /// and `R = c` of `alg ⊗ Mat_m`. Passing `corrupt = (x, y, z, δ)` adds
    /// `δ·z` to the product `x·y` of the total algebra before `c` is formed.
    pub fn matrix(alg: &FrobeniusAlgebra, m: usize, corrupt: Option<(usize, usize, usize, Q)>) -> Result<Self> {
        let mut total = crate::algebras::tensor_product(alg, &crate::algebras::matrix_units(m));
        if let Some((x, y, z, d)) = corrupt {
            total = crate::algebras::corrupted(&total, x, y, z, d);
        }
        let sp = total.space();
        let mm = m * m;
        let gens = (0..sp.dim())
            .map(|g| {
                let unit = g % mm;
                (sp.name(g).to_string(), sp.degree(g), (unit % m, unit / m))
            })
            .collect();
        let pairing = total.form().entries().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        let objects = (1..=m).map(|i| format!("L{i}")).collect();
        let mut cat = Self::from_generators(objects, total.form().degree(), gens, pairing)?;
        let c = total.mu_tensor()?;
        let r = cat.wedge().lift(c.terms());
        cat.set_r(Series::constant(r))?;
        Ok(cat)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn form(&self) -> &InnerProduct {
        &self.form
    }

    pub fn space(&self) -> &Arc<NecklaceSpace> {
        &self.space
    }

    /// `(source, target)` of a letter.
    pub fn letter_ends(&self, a: Letter) -> (usize, usize) {
        self.ends[a as usize]
    }

    pub fn r(&self) -> &Series<CyclicWord> {
        &self.r
    }

    pub fn sums(&self) -> &[DirectSum] {
        &self.sums
    }

    pub fn wedge(&self) -> WedgeAlgebra<NecklaceBialgebra> {
        WedgeAlgebra::new(NecklaceBialgebra::reduced(self.space.clone()))
    }

    /// Replaces `R`, rejecting non-composable support.
    pub fn set_r(&mut self, r: Series<CyclicWord>) -> Result<()> {
        if let Some(w) = self.first_non_composable(&r) {
            return Err(Error::NonComposable(self.word_label(&w)));
        }
        self.r = r;
        Ok(())
    }

    /// Whether consecutive letters chain, cyclically.
    pub fn composable(&self, word: &[Letter]) -> bool {
        (0..word.len()).all(|p| self.ends[word[p] as usize].1 == self.ends[word[(p + 1) % word.len()] as usize].0)
    }

    fn first_non_composable(&self, r: &Series<CyclicWord>) -> Option<CyclicWord> {
        r.iter().flat_map(|(_, x)| x.keys()).flatten().find(|w| !self.composable(w.letters())).cloned()
    }

    fn word_label(&self, w: &CyclicWord) -> String {
        let names: Vec<&str> = w.letters().iter().map(|&a| self.space.name(a)).collect();
        format!("({})", names.join(" "))
    }

    /// Object tuple of a monomial: the cyclic sequence of sources of each
    /// factor, rotated to its least form, factors sorted.
    pub fn block_key(&self, m: &Monomial<CyclicWord>) -> String {
        let mut parts: Vec<Vec<usize>> = m
            .iter()
            .map(|w| {
                let seq: Vec<usize> = w.letters().iter().map(|&a| self.ends[a as usize].0).collect();
                (0..seq.len()).map(|s| [&seq[s..], &seq[..s]].concat()).min().unwrap_or_default()
            })
            .collect();
        parts.sort();
        parts
            .iter()
            .map(|p| format!("({})", p.iter().map(|&o| self.objects[o].as_str()).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    /// Master equation `δ_α R = ½{R,R}` up to `g_max`, with residual terms
    /// counted per object tuple.
    pub fn validate(&self, g_max: i64) -> Result<Report> {
        if let Some(w) = self.first_non_composable(&self.r) {
            return Err(Error::NonComposable(self.word_label(&w)));
        }
        let alg = self.wedge();
        let mut rep = master::check_master_full(&alg, &self.r, g_max);
        rep.check = "stringy_master".into();
        let mut blocks: BTreeMap<String, usize> = BTreeMap::new();
        let mut closed = true;
        for k in 0..=g_max {
            for m in master::full_residual_at(&alg, &self.r, k).keys() {
                *blocks.entry(self.block_key(m)).or_default() += 1;
                closed &= m.iter().all(|w| self.composable(w.letters()));
            }
        }
        rep = rep
            .detail("objects", self.objects.len())
            .detail("letters", self.space.dim())
            .detail("residual_by_block", json!(blocks))
            .detail("residual_support_composable", closed);
        if !closed {
            rep = rep.fail("operators produced non-composable words");
        }
        Ok(rep)
    }

    /// Adds `K = a ⊕ b` named `name`, with hom spaces split as direct sums
    /// and `R` extended by distributing over the summands.
    pub fn with_direct_sum(&self, name: &str, parts: [usize; 2]) -> Result<Self> {
        if parts.iter().any(|&p| p >= self.objects.len()) {
            return Err(Error::Precondition("direct sum of unknown objects".into()));
        }
        let k = self.objects.len();
        let mut objects = self.objects.clone();
        objects.push(name.to_string());
        let dim = self.space.dim();
        let base = self.form.space();
        let mut gens: Vec<(String, i64, (usize, usize))> =
            (0..dim).map(|i| (base.name(i).to_string(), base.degree(i), self.ends[i])).collect();
        let mut embed = BTreeMap::new();
        for x in 0..dim {
            let (f, g) = self.ends[x];
            for u in side_choices(parts, f) {
                for v in side_choices(parts, g) {
                    if u.is_none() && v.is_none() {
                        continue;
                    }
                    embed.insert((x as Letter, u, v), gens.len() as Letter);
                    let label = format!("{}[{}{}]", base.name(x), side_char(u), side_char(v));
                    gens.push((label, base.degree(x), (if u.is_some() { k } else { f }, if v.is_some() { k } else { g })));
                }
            }
        }
        let mut pairing: Vec<(usize, usize, Q)> = self.form.entries().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        for (&(x, u, v), &big) in &embed {
            for (&(i, j), w) in self.form.entries() {
                if i == x as usize {
                    if let Some(&partner) = embed.get(&(j as Letter, v, u)) {
                        pairing.push((big as usize, partner as usize, w.clone()));
                    }
                }
            }
        }
        let mut out = Self::from_generators(objects, self.form.degree(), gens, pairing)?;
        let sum = DirectSum { sum: k, parts, embed };
        let alg = out.wedge();
        let lifted = self.r.map(|x| x.plus(&out.lifts(&alg, &sum, x)));
        out.sums = self.sums.clone();
        out.sums.push(sum);
        out.set_r(lifted)?;
        Ok(out)
    }

    /// Sum over every nontrivial way of routing vertices through the sum object.
    fn lifts(&self, alg: &WedgeAlgebra<NecklaceBialgebra>, sum: &DirectSum, x: &WedgeElement<CyclicWord>) -> WedgeElement<CyclicWord> {
        let mut out = LinComb::zero();
        for (m, c) in x.iter() {
            let per_factor: Vec<Vec<(Vec<Letter>, bool)>> = m.iter().map(|w| self.word_lifts(sum, w.letters())).collect();
            let mut partial: Vec<(Vec<CyclicWord>, Q, bool)> = vec![(Vec::new(), c.clone(), false)];
            for options in &per_factor {
                let mut next = Vec::new();
                for (factors, coeff, touched) in &partial {
                    for (word, lifted) in options {
                        if let Some((cw, neg)) = self.space.canonical(word) {
                            let mut f = factors.clone();
                            f.push(cw);
                            next.push((f, signed(coeff.clone(), neg), *touched || *lifted));
                        }
                    }
                }
                partial = next;
            }
            for (factors, coeff, touched) in partial {
                if touched {
                    out.add_assign(&alg.monomial(factors, coeff));
                }
            }
        }
        out
    }

    /// All routings of one tensor word; the flag marks routings that use the
    /// sum object somewhere.
    fn word_lifts(&self, sum: &DirectSum, word: &[Letter]) -> Vec<(Vec<Letter>, bool)> {
        let n = word.len();
        let vertex_options: Vec<Vec<Option<usize>>> =
            (0..n).map(|p| side_choices(sum.parts, self.ends[word[p] as usize].0)).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        loop {
            let sides: Vec<Option<usize>> = (0..n).map(|p| vertex_options[p][choice[p]]).collect();
            let lifted = sides.iter().any(Option::is_some);
            let letters: Option<Vec<Letter>> = (0..n)
                .map(|p| {
                    let (u, v) = (sides[p], sides[(p + 1) % n]);
                    if u.is_none() && v.is_none() {
                        Some(word[p])
                    } else {
                        sum.embed.get(&(word[p], u, v)).copied()
                    }
                })
                .collect();
            if let Some(l) = letters {
                out.push((l, lifted));
            }
            let mut p = 0;
            loop {
                if p == n {
                    return out;
                }
                choice[p] += 1;
                if choice[p] < vertex_options[p].len() {
                    break;
                }
                choice[p] = 0;
                p += 1;
            }
        }
    }

    /// Hom decompositions, induced pairing and distribution of `R` over
    /// every declared direct sum.
    pub fn additivity_check(&self) -> Report {
        let mut rep = Report::new("stringy_additivity").detail("direct_sums", self.sums.len());
        let alg = self.wedge();
        let mut blocks: BTreeMap<String, usize> = BTreeMap::new();
        for sum in &self.sums {
            let k = sum.sum;
            let mut hom_bad = 0;
            let images: BTreeSet<Letter> = sum.embed.values().copied().collect();
            if images.len() != sum.embed.len() {
                hom_bad += 1;
            }
            for a in 0..self.space.dim() as Letter {
                let (s, t) = self.ends[a as usize];
                if (s == k || t == k) && !images.contains(&a) {
                    hom_bad += 1;
                }
            }
            for (&(x, u, v), &big) in &sum.embed {
                let (f, g) = self.ends[x as usize];
                let expect = (if u.is_some() { k } else { f }, if v.is_some() { k } else { g });
                let sides_ok = u.is_none_or(|s| sum.parts[s] == f) && v.is_none_or(|s| sum.parts[s] == g);
                let deg_ok = self.form.space().degree(x as usize) == self.form.space().degree(big as usize);
                if self.ends[big as usize] != expect || !sides_ok || !deg_ok {
                    hom_bad += 1;
                }
            }
            let mut pair_bad = 0;
            for (&(x, u, v), &big) in &sum.embed {
                for (&(y, u2, v2), &big2) in &sum.embed {
                    let expect = if u == v2 && v == u2 { self.form.pair(x as usize, y as usize) } else { Q::zero() };
                    if self.form.pair(big as usize, big2 as usize) != expect {
                        pair_bad += 1;
                    }
                }
            }
            let touches = |m: &Monomial<CyclicWord>| {
                m.iter().any(|w| w.letters().iter().any(|&a| self.ends[a as usize].0 == k || self.ends[a as usize].1 == k))
            };
            let mut dist = 0;
            for (g, x) in self.r.iter() {
                let free = x.filter(|m| !touches(m));
                let diff = x.filter(|m| touches(m)).minus(&self.lifts(&alg, sum, &free));
                for m in diff.keys() {
                    *blocks.entry(format!("{g}:{}", self.block_key(m))).or_default() += 1;
                }
                dist += diff.len();
            }
            rep = rep
                .residual(hom_bad + pair_bad + dist)
                .detail(format!("{}_hom_decomposition", self.objects[k]), hom_bad)
                .detail(format!("{}_pairing", self.objects[k]), pair_bad)
                .detail(format!("{}_distribution", self.objects[k]), dist);
        }
        if !blocks.is_empty() {
            rep = rep.detail("residual_by_block", json!(blocks));
        }
        rep
    }

    pub fn to_json(&self) -> serde_json::Value {
        let base = self.form.space();
        let mut homs: Vec<HomJson> = Vec::new();
        for i in 0..base.dim() {
            let (s, t) = self.ends[i];
            let gen = GenJson { name: base.name(i).into(), degree: base.degree(i) };
            match homs.last_mut() {
                Some(h) if h.src == self.objects[s] && h.dst == self.objects[t] => h.generators.push(gen),
                _ => homs.push(HomJson { src: self.objects[s].clone(), dst: self.objects[t].clone(), generators: vec![gen] }),
            }
        }
        let name = |a: Letter| base.name(a as usize).to_string();
        let doc = CategoryJson {
            degree: self.form.degree(),
            objects: self.objects.clone(),
            homs,
            pairing: self.form.entries().map(|(&(i, j), v)| (name(i as Letter), name(j as Letter), scalar::format(v))).collect(),
            r: self
                .r
                .iter()
                .map(|(g, x)| RJson {
                    alpha_power: g,
                    terms: x
                        .iter()
                        .map(|(m, c)| TermJson {
                            factors: m.iter().map(|w| w.letters().iter().map(|&a| name(a)).collect()).collect(),
                            coeff: scalar::format(c),
                        })
                        .collect(),
                })
                .collect(),
            sums: self
                .sums
                .iter()
                .map(|s| SumJson {
                    sum: self.objects[s.sum].clone(),
                    parts: s.parts.map(|p| self.objects[p].clone()),
                    embed: s
                        .embed
                        .iter()
                        .map(|(&(x, u, v), &big)| EmbedJson { letter: name(big), from: name(x), src: u, dst: v })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: CategoryJson = serde_json::from_value(v.clone())?;
        let object = |name: &str| {
            doc.objects.iter().position(|o| o == name).ok_or_else(|| Error::Parse(format!("unknown object {name:?}")))
        };
        let mut gens = Vec::new();
        for h in &doc.homs {
            let ends = (object(&h.src)?, object(&h.dst)?);
            gens.extend(h.generators.iter().map(|g| (g.name.clone(), g.degree, ends)));
        }
        let letter = |name: &str| {
            gens.iter().position(|g| g.0 == name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))
        };
        let mut pairing = Vec::new();
        for (a, b, c) in &doc.pairing {
            pairing.push((letter(a)?, letter(b)?, scalar::parse(c)?));
        }
        let mut sums = Vec::new();
        for s in &doc.sums {
            let mut embed = BTreeMap::new();
            for e in &s.embed {
                embed.insert((letter(&e.from)? as Letter, e.src, e.dst), letter(&e.letter)? as Letter);
            }
            sums.push(DirectSum { sum: object(&s.sum)?, parts: [object(&s.parts[0])?, object(&s.parts[1])?], embed });
        }
        let mut cat = Self::from_generators(doc.objects.clone(), doc.degree, gens.clone(), pairing)?;
        let alg = cat.wedge();
        let mut r = Series::zero();
        for block in &doc.r {
            let mut x = LinComb::zero();
            for t in &block.terms {
                let mut factors = Vec::new();
                let mut coeff = scalar::parse(&t.coeff)?;
                let mut vanishes = false;
                for f in &t.factors {
                    let word: Vec<Letter> = f.iter().map(|n| letter(n).map(|i| i as Letter)).collect::<Result<_>>()?;
                    match cat.space.canonical(&word) {
                        Some((w, neg)) => {
                            coeff = signed(coeff, neg);
                            factors.push(w);
                        }
                        None => vanishes = true,
                    }
                }
                if !vanishes {
                    x.add_assign(&alg.monomial(factors, coeff));
                }
            }
            r.add_at(block.alpha_power, &x);
        }
        cat.sums = sums;
        cat.set_r(r)?;
        Ok(cat)
    }
}

fn side_choices(parts: [usize; 2], object: usize) -> Vec<Option<usize>> {
    std::iter::once(None).chain((0..2).filter(|&s| parts[s] == object).map(Some)).collect()
}

fn side_char(s: Option<usize>) -> char {
    match s {
        None => '-',
        Some(0) => '0',
        Some(_) => '1',
    }
}

#[derive(Serialize, Deserialize)]
struct GenJson {
    name: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct HomJson {
    src: String,
    dst: String,
    generators: Vec<GenJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    factors: Vec<Vec<String>>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RJson {
    #[serde(rename = "alphaPower")]
    alpha_power: i64,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct EmbedJson {
    letter: String,
    from: String,
    src: Option<usize>,
    dst: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct SumJson {
    sum: String,
    parts: [String; 2],
    embed: Vec<EmbedJson>,
}

#[derive(Serialize, Deserialize)]
struct CategoryJson {
    degree: i64,
    objects: Vec<String>,
    homs: Vec<HomJson>,
    pairing: Vec<(String, String, String)>,
    #[serde(rename = "R", default)]
    r: Vec<RJson>,
    #[serde(default)]
    sums: Vec<SumJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::random;
    use crate::scalar::int;

    fn gens(names: &[&str]) -> Vec<(String, i64)> {
        names.iter().map(|n| (n.to_string(), 0)).collect()
    }

    fn word(cat: &StringyCategory, letters: &[Letter]) -> CyclicWord {
        cat.space().canonical(letters).unwrap().0
    }

    fn three_objects() -> StringyCategory {
        let objects = vec!["L1".into(), "L2".into(), "L3".into()];
        let homs = vec![(0, 1, gens(&["f"])), (1, 0, gens(&["g"])), (2, 0, gens(&["h"])), (0, 0, gens(&["e"]))];
        StringyCategory::build(objects, 0, homs, vec![(0, 1, int(1)), (3, 3, int(1))]).unwrap()
    }

    #[test]
    fn composability() {
        let cat = three_objects();
        assert!(cat.composable(&[0, 1]));
        assert!(!cat.composable(&[0, 2]));
        assert!(cat.composable(&[3]));
        assert!(!cat.composable(&[2]));
    }

    #[test]
    fn pairing_blocks() {
        let objects = vec!["L1".into(), "L2".into()];
        let homs = vec![(0, 1, gens(&["f", "f2"]))];
        let err = StringyCategory::build(objects, 0, homs, vec![(0, 1, int(1))]).unwrap_err();
        assert!(matches!(err, Error::PairingBlock(_)));
    }

    #[test]
    fn zero_and_block_diagonal() {
        let cat = three_objects();
        assert!(cat.validate(3).unwrap().passed());
        let objects = vec!["L1".into(), "L2".into()];
        let homs = vec![(0, 0, gens(&["a"])), (1, 1, gens(&["b"]))];
        let mut diag = StringyCategory::build(objects, 0, homs, vec![(0, 0, int(1)), (1, 1, int(1))]).unwrap();
        let alg = diag.wedge();
        let r = alg.monomial(vec![word(&diag, &[0, 0, 0])], int(1))
            .plus(&alg.monomial(vec![word(&diag, &[1, 1, 1])], int(1)));
        diag.set_r(Series::constant(r)).unwrap();
        assert!(diag.validate(3).unwrap().passed());
        assert_eq!(diag.form().pair(0, 1), Q::zero());
    }

    #[test]
    fn non_composable_rejected() {
        let mut cat = three_objects();
        let alg = cat.wedge();
        let r = alg.monomial(vec![word(&cat, &[0, 2])], int(1));
        assert!(matches!(cat.set_r(Series::constant(r)), Err(Error::NonComposable(_))));
    }

    #[test]
    fn frobenius_categories_pass() {
        let mut algs = vec![algebras::dual_numbers(3), algebras::dual_numbers(0), algebras::torus_cohomology()];
        algs.extend((1..=3).map(algebras::cyclic_group_algebra));
        algs.extend((1..=3).map(algebras::truncated_polynomial));
        for a in &algs {
            assert!(StringyCategory::one_object(a).unwrap().validate(3).unwrap().passed());
        }
        for a in &algs[..4] {
            assert!(StringyCategory::matrix(a, 2, None).unwrap().validate(2).unwrap().passed());
        }
    }

    #[test]
    fn corrupted_matrix_category_fails_by_block() {
        let bad = StringyCategory::matrix(&algebras::ground_field(), 2, Some((0, 1, 1, int(1)))).unwrap();
        let rep = bad.validate(3).unwrap();
        assert!(!rep.passed());
        let blocks = rep.details["residual_by_block"].as_object().unwrap();
        assert!(!blocks.is_empty());
        assert!(blocks.keys().all(|k| k.contains("L2")));
    }

    #[test]
    fn operators_preserve_composability() {
        let cat = StringyCategory::matrix(&algebras::cyclic_group_algebra(2), 2, None).unwrap();
        let alg = cat.wedge();
        let r = cat.r().coeff(0);
        let mut rng = random::rng(4);
        let words: Vec<CyclicWord> = cat.r().coeff(0).keys().flatten().cloned().collect();
        for _ in 0..10 {
            let a = &words[rand::Rng::gen_range(&mut rng, 0..words.len())];
            let b = &words[rand::Rng::gen_range(&mut rng, 0..words.len())];
            let x = alg.monomial(vec![a.clone(), b.clone()], int(1));
            for y in [alg.poisson(&x, &r), alg.boundary(&x), alg.coboundary(&x)] {
                assert!(y.keys().flatten().all(|w| cat.composable(w.letters())));
            }
        }
    }

    #[test]
    fn direct_sums() {
        let one = StringyCategory::one_object(&algebras::cyclic_group_algebra(2)).unwrap();
        let doubled = one.with_direct_sum("K", [0, 0]).unwrap();
        assert!(doubled.additivity_check().passed());
        assert!(doubled.validate(2).unwrap().passed());

        let objects = vec!["L".into(), "Z".into()];
        let a = algebras::dual_numbers(3);
        let sp = a.space();
        let g: Vec<(String, i64)> = (0..sp.dim()).map(|i| (sp.name(i).to_string(), sp.degree(i))).collect();
        let pairing = a.form().entries().map(|(&(i, j), v)| (i, j, v.clone())).collect();
        let mut with_zero = StringyCategory::build(objects, 3, vec![(0, 0, g)], pairing).unwrap();
        with_zero.set_r(Series::constant(with_zero.wedge().lift(a.mu_tensor().unwrap().terms()))).unwrap();
        let ext = with_zero.with_direct_sum("K", [0, 1]).unwrap();
        assert!(ext.additivity_check().passed());
        let only = |o: usize| ext.r().coeff(0).keys().filter(|m| m.iter().flat_map(|w| w.letters()).all(|&x| ext.letter_ends(x) == (o, o))).count();
        assert_eq!(only(0), only(2));
        assert!(only(0) > 0);

        let sum = &doubled.sums()[0];
        let (x, y, z) = (0, 0, 1);
        let cross = [sum.embed[&(x, Some(0), None)], y, sum.embed[&(z, None, Some(1))]];
        let mut broken = doubled.clone();
        let alg = broken.wedge();
        let (w, neg) = broken.space().canonical(&cross).unwrap();
        let extra = Series::constant(alg.monomial(vec![w], signed(int(1), neg)));
        broken.set_r(doubled.r().plus(&extra)).unwrap();
        assert!(!broken.additivity_check().passed());
    }

    #[test]
    fn json_round_trip() {
        let cat = StringyCategory::matrix(&algebras::dual_numbers(3), 2, None).unwrap().with_direct_sum("K", [0, 1]).unwrap();
        let js = cat.to_json();
        let back = StringyCategory::from_json(&js).unwrap();
        assert_eq!(back.to_json(), js);
        assert!(back.additivity_check().passed());
    }
}
