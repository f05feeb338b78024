//! Finite categories, functors, discrete fibrations and the bounded family
//! construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::finset::FinSet;
use crate::ordinal;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowDecl {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `g ∘ f = result`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub f: String,
    pub g: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CategoryData {
    objects: FinSet,
    arrows: Vec<ArrowDecl>,
    identities: BTreeMap<String, String>,
    compose: Vec<ComposeEntry>,
}

/// A finite category with explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CategoryData", into = "CategoryData")]
pub struct FinCategory {
    objects: FinSet,
    arrows: BTreeMap<String, (String, String)>,
    identities: BTreeMap<String, String>,
    table: BTreeMap<(String, String), String>,
    homs: BTreeMap<(String, String), Vec<String>>,
}

impl TryFrom<CategoryData> for FinCategory {
    type Error = Error;
    fn try_from(d: CategoryData) -> Result<FinCategory> {
        FinCategory::new(d.objects, d.arrows, d.identities, d.compose)
    }
}

impl From<FinCategory> for CategoryData {
    fn from(c: FinCategory) -> CategoryData {
        CategoryData {
            arrows: c
                .arrows
                .iter()
                .map(|(id, (s, t))| ArrowDecl {
                    id: id.clone(),
                    src: s.clone(),
                    tgt: t.clone(),
                })
                .collect(),
            compose: c
                .table
                .iter()
                .map(|((g, f), r)| ComposeEntry {
                    f: f.clone(),
                    g: g.clone(),
                    result: r.clone(),
                })
                .collect(),
            objects: c.objects,
            identities: c.identities,
        }
    }
}

impl FinCategory {
    /// Build and check totality and signatures. Laws are checked by [`FinCategory::check_laws`].
    pub fn new(
        objects: FinSet,
        arrows: Vec<ArrowDecl>,
        identities: BTreeMap<String, String>,
        compose: Vec<ComposeEntry>,
    ) -> Result<FinCategory> {
        let mut arr = BTreeMap::new();
        for a in arrows {
            if !objects.contains(&a.src) || !objects.contains(&a.tgt) {
                return Err(structural(format!("arrow {} has an unknown endpoint", a.id)));
            }
            if arr.insert(a.id.clone(), (a.src, a.tgt)).is_some() {
                return Err(structural(format!("arrow {} declared twice", a.id)));
            }
        }
        for o in objects.iter() {
            let id = identities
                .get(o)
                .ok_or_else(|| structural(format!("object {o} has no identity")))?;
            match arr.get(id) {
                Some((s, t)) if s == o && t == o => {}
                _ => return Err(structural(format!("identity {id} of {o} has the wrong signature"))),
            }
        }
        if identities.len() != objects.len() {
            return Err(structural("identities name unknown objects"));
        }
        let mut table = BTreeMap::new();
        for e in compose {
            let (fs, ft) = arr
                .get(&e.f)
                .ok_or_else(|| structural(format!("unknown arrow {}", e.f)))?;
            let (gs, gt) = arr
                .get(&e.g)
                .ok_or_else(|| structural(format!("unknown arrow {}", e.g)))?;
            let (rs, rt) = arr
                .get(&e.result)
                .ok_or_else(|| structural(format!("unknown arrow {}", e.result)))?;
            if ft != gs || rs != fs || rt != gt {
                return Err(structural(format!("composite {}∘{} has the wrong signature", e.g, e.f)));
            }
            if table.insert((e.g.clone(), e.f.clone()), e.result).is_some() {
                return Err(structural(format!("composite {}∘{} given twice", e.g, e.f)));
            }
        }
        let mut homs: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for (id, (s, t)) in &arr {
            homs.entry((s.clone(), t.clone())).or_default().push(id.clone());
        }
        for (f, (_, ft)) in &arr {
            for (g, (gs, _)) in &arr {
                if ft == gs && !table.contains_key(&(g.clone(), f.clone())) {
                    return Err(structural(format!("composition table is not total: {g}∘{f} missing")));
                }
            }
        }
        Ok(FinCategory {
            objects,
            arrows: arr,
            identities,
            table,
            homs,
        })
    }

    /// Build from arrows and a composition function `(g, f) ↦ g ∘ f`.
    pub fn from_fn(
        objects: FinSet,
        arrows: Vec<ArrowDecl>,
        identities: BTreeMap<String, String>,
        mut comp: impl FnMut(&str, &str) -> String,
    ) -> Result<FinCategory> {
        let mut compose = Vec::new();
        for f in &arrows {
            for g in &arrows {
                if f.tgt == g.src {
                    compose.push(ComposeEntry {
                        f: f.id.clone(),
                        g: g.id.clone(),
                        result: comp(&g.id, &f.id),
                    });
                }
            }
        }
        FinCategory::new(objects, arrows, identities, compose)
    }

    pub fn terminal() -> FinCategory {
        FinCategory::discrete(&FinSet::singleton("*"))
    }

    pub fn discrete(objects: &FinSet) -> FinCategory {
        let arrows = objects
            .iter()
            .map(|o| ArrowDecl {
                id: format!("id_{o}"),
                src: o.clone(),
                tgt: o.clone(),
            })
            .collect();
        let ids = objects.iter().map(|o| (o.clone(), format!("id_{o}"))).collect();
        FinCategory::from_fn(objects.clone(), arrows, ids, |g, _| g.to_string()).expect("discrete")
    }

    /// The preorder generated by `le` (reflexive-transitive closure); arrows are named `a<=b`.
    pub fn preorder(objects: &FinSet, le: &[(&str, &str)]) -> Result<FinCategory> {
        let n = objects.len();
        let mut rel = vec![vec![false; n]; n];
        for (k, row) in rel.iter_mut().enumerate() {
            row[k] = true;
        }
        for (a, b) in le {
            let i = objects.rank(a).ok_or_else(|| structural(format!("unknown object {a}")))?;
            let j = objects.rank(b).ok_or_else(|| structural(format!("unknown object {b}")))?;
            rel[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let name = |i: usize, j: usize| format!("{}<={}", objects.token(i), objects.token(j));
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    arrows.push(ArrowDecl {
                        id: name(i, j),
                        src: objects.token(i).to_string(),
                        tgt: objects.token(j).to_string(),
                    });
                }
            }
        }
        let ids = (0..n).map(|i| (objects.token(i).to_string(), name(i, i))).collect();
        let decl: BTreeMap<String, (String, String)> = arrows
            .iter()
            .map(|a| (a.id.clone(), (a.src.clone(), a.tgt.clone())))
            .collect();
        FinCategory::from_fn(objects.clone(), arrows, ids, |g, f| {
            format!("{}<={}", decl[f].0, decl[g].1)
        })
    }

    /// The walking arrow `A → B`.
    pub fn walking_arrow() -> FinCategory {
        FinCategory::preorder(&FinSet::new(["A", "B"]).unwrap(), &[("A", "B")]).expect("preorder")
    }

    /// One-object category of a finite monoid given by elements and a product table.
    pub fn from_monoid(
        elements: &[String],
        unit: &str,
        mul: impl Fn(&str, &str) -> String,
    ) -> Result<FinCategory> {
        let arrows = elements
            .iter()
            .map(|e| ArrowDecl {
                id: e.clone(),
                src: "*".into(),
                tgt: "*".into(),
            })
            .collect();
        let ids = [("*".to_string(), unit.to_string())].into_iter().collect();
        FinCategory::from_fn(FinSet::singleton("*"), arrows, ids, |g, f| mul(g, f))
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = &String> {
        self.arrows.keys()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, a: &str) -> &str {
        &self.arrows[a].0
    }

    pub fn tgt(&self, a: &str) -> &str {
        &self.arrows[a].1
    }

    pub fn has_arrow(&self, a: &str) -> bool {
        self.arrows.contains_key(a)
    }

    pub fn identity(&self, o: &str) -> &str {
        &self.identities[o]
    }

    pub fn hom(&self, a: &str, b: &str) -> &[String] {
        self.homs
            .get(&(a.to_string(), b.to_string()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &str, f: &str) -> Result<&str> {
        self.table
            .get(&(g.to_string(), f.to_string()))
            .map(String::as_str)
            .ok_or_else(|| structural(format!("{g}∘{f} is not defined")))
    }

    pub fn is_thin(&self) -> bool {
        self.homs.values().all(|h| h.len() <= 1)
    }

    /// Unit and associativity laws, exhaustively.
    pub fn check_laws(&self) -> Result<()> {
        for (f, (s, t)) in &self.arrows {
            if self.compose(f, &self.identities[s])? != f || self.compose(&self.identities[t], f)? != f {
                return Err(Error::Validation(format!("unit law fails at {f}")));
            }
        }
        for (f, (_, ft)) in &self.arrows {
            for g in self.arrows.iter().filter(|(_, (s, _))| s == ft) {
                for h in self.arrows.iter().filter(|(_, (s, _))| *s == g.1 .1) {
                    let l = self.compose(h.0, self.compose(g.0, f)?)?;
                    let r = self.compose(self.compose(h.0, g.0)?, f)?;
                    if l != r {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({}, {}, {f})",
                            h.0, g.0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Is `a` invertible; returns the inverse.
    pub fn inverse_of(&self, a: &str) -> Option<String> {
        let (s, t) = &self.arrows[a];
        self.hom(t, s)
            .iter()
            .find(|b| {
                self.compose(b, a).ok() == Some(self.identity(s))
                    && self.compose(a, b).ok() == Some(self.identity(t))
            })
            .cloned()
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub src: FinCategory,
    pub tgt: FinCategory,
    pub on_objects: BTreeMap<String, String>,
    pub on_arrows: BTreeMap<String, String>,
}

impl FinFunctor {
    pub fn new(
        src: FinCategory,
        tgt: FinCategory,
        on_objects: BTreeMap<String, String>,
        on_arrows: BTreeMap<String, String>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor {
            src,
            tgt,
            on_objects,
            on_arrows,
        };
        f.check()?;
        Ok(f)
    }

    pub fn identity(c: &FinCategory) -> FinFunctor {
        FinFunctor {
            src: c.clone(),
            tgt: c.clone(),
            on_objects: c.objects.iter().map(|o| (o.clone(), o.clone())).collect(),
            on_arrows: c.arrows.keys().map(|a| (a.clone(), a.clone())).collect(),
        }
    }

    /// The unique functor into the terminal category.
    pub fn to_terminal(c: &FinCategory) -> FinFunctor {
        let t = FinCategory::terminal();
        let id = t.identity("*").to_string();
        FinFunctor {
            src: c.clone(),
            on_objects: c.objects.iter().map(|o| (o.clone(), "*".into())).collect(),
            on_arrows: c.arrows.keys().map(|a| (a.clone(), id.clone())).collect(),
            tgt: t,
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        for o in self.src.objects.iter() {
            match self.on_objects.get(o) {
                Some(x) if self.tgt.objects.contains(x) => {}
                _ => return bad(format!("object {o} is not mapped into the target")),
            }
        }
        for (a, (s, t)) in &self.src.arrows {
            let Some(fa) = self.on_arrows.get(a) else {
                return bad(format!("arrow {a} is not mapped"));
            };
            if !self.tgt.has_arrow(fa)
                || self.tgt.src(fa) != self.on_objects[s]
                || self.tgt.tgt(fa) != self.on_objects[t]
            {
                return bad(format!("arrow {a} maps to {fa} with the wrong endpoints"));
            }
        }
        for (o, id) in &self.src.identities {
            if self.on_arrows[id] != self.tgt.identity(&self.on_objects[o]) {
                return bad(format!("identity of {o} is not preserved"));
            }
        }
        for ((g, f), r) in &self.src.table {
            let lhs = &self.on_arrows[r];
            let rhs = self.tgt.compose(&self.on_arrows[g], &self.on_arrows[f])?;
            if lhs != rhs {
                return bad(format!("composite {g}∘{f} is not preserved"));
            }
        }
        Ok(())
    }

    /// Bijective on objects and arrows.
    pub fn is_isomorphism(&self) -> bool {
        let objs: BTreeSet<&String> = self.on_objects.values().collect();
        let arrs: BTreeSet<&String> = self.on_arrows.values().collect();
        objs.len() == self.src.objects.len()
            && objs.len() == self.tgt.objects.len()
            && arrs.len() == self.src.arrows.len()
            && arrs.len() == self.tgt.arrows.len()
    }

    /// Full, faithful and essentially surjective.
    pub fn is_equivalence(&self) -> bool {
        for a in self.src.objects.iter() {
            for b in self.src.objects.iter() {
                let images: BTreeSet<&String> =
                    self.src.hom(a, b).iter().map(|x| &self.on_arrows[x]).collect();
                let target = self.tgt.hom(&self.on_objects[a], &self.on_objects[b]);
                if images.len() != self.src.hom(a, b).len() || images.len() != target.len() {
                    return false;
                }
            }
        }
        self.tgt.objects.iter().all(|y| {
            self.src.objects.iter().any(|x| {
                let fx = &self.on_objects[x];
                self.tgt
                    .hom(fx, y)
                    .iter()
                    .any(|a| self.tgt.inverse_of(a).is_some())
            })
        })
    }
}

/// Exactly one lift of every target arrow into the image of each source object.
pub fn is_discrete_fibration(f: &FinFunctor) -> Result<bool> {
    f.check()?;
    for e in f.src.objects.iter() {
        let fe = &f.on_objects[e];
        for b in f.tgt.arrows.iter().filter(|(_, (_, t))| t == fe).map(|(id, _)| id) {
            let lifts = f
                .src
                .arrows
                .iter()
                .filter(|(id, (_, t))| t == e && &f.on_arrows[*id] == b)
                .count();
            if lifts != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A chosen sum `sum = ⊔ summands` with its injections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumWitness {
    pub summands: Vec<String>,
    pub sum: String,
    pub injections: Vec<String>,
}

impl SumWitness {
    /// Check the universal property: `hom(sum, Z) → ∏ hom(summand_k, Z)` is bijective for all `Z`.
    pub fn check(&self, d: &FinCategory) -> Result<()> {
        if self.summands.len() != self.injections.len() {
            return Err(Error::Validation("one injection per summand is required".into()));
        }
        for (s, i) in self.summands.iter().zip(&self.injections) {
            if !d.has_arrow(i) || d.src(i) != s || d.tgt(i) != self.sum {
                return Err(Error::Validation(format!("injection {i} has the wrong signature")));
            }
        }
        for z in d.objects.iter() {
            let mut seen = BTreeSet::new();
            for t in d.hom(&self.sum, z) {
                let restr: Vec<String> = self
                    .injections
                    .iter()
                    .map(|i| d.compose(t, i).map(str::to_string))
                    .collect::<Result<_>>()?;
                seen.insert(restr);
            }
            let expected: usize = self.summands.iter().map(|s| d.hom(s, z).len()).product();
            if seen.len() != d.hom(&self.sum, z).len() || seen.len() != expected {
                return Err(Error::Validation(format!(
                    "{} is not a sum of {:?} (tested against {z})",
                    self.sum, self.summands
                )));
            }
        }
        Ok(())
    }
}

/// Objects `A` for which `hom(A, -)` turns each witnessed sum into a disjoint union.
pub fn connected_objects(d: &FinCategory, witnesses: &[SumWitness]) -> Result<FinSet> {
    for w in witnesses {
        w.check(d)?;
    }
    let mut out = Vec::new();
    'obj: for a in d.objects.iter() {
        for w in witnesses {
            let mut images = BTreeSet::new();
            let mut count = 0;
            for (s, i) in w.summands.iter().zip(&w.injections) {
                for x in d.hom(a, s) {
                    images.insert(d.compose(i, x)?.to_string());
                    count += 1;
                }
            }
            if images.len() != count || count != d.hom(a, &w.sum).len() {
                continue 'obj;
            }
        }
        out.push(a.clone());
    }
    FinSet::new(out)
}

fn family_token(fam: &[String]) -> String {
    format!("({})", fam.join(","))
}

/// An arrow of the family category: a reindexing map and a family of arrows.
fn fam_arrow_token(src: &[String], tgt: &[String], f: &[usize], arrows: &[String]) -> String {
    let parts: Vec<String> = f
        .iter()
        .zip(arrows)
        .enumerate()
        .map(|(i, (j, a))| format!("{}>{}:{a}", i + 1, j + 1))
        .collect();
    format!("{}-[{}]->{}", family_token(src), parts.join(","), family_token(tgt))
}

/// Families over `{1..n}`, `n ≤ k`, as object lists.
fn families(c: &FinCategory, k: usize) -> Vec<Vec<String>> {
    let objs = c.objects.tokens().to_vec();
    let mut out = Vec::new();
    for n in 0..=k {
        for f in ordinal::all_maps(n, objs.len()) {
            out.push(f.iter().map(|&x| objs[x].clone()).collect());
        }
    }
    out
}

struct FamArrow {
    src: Vec<String>,
    tgt: Vec<String>,
    f: Vec<usize>,
    arrows: Vec<String>,
}

fn fam_arrows(c: &FinCategory, fams: &[Vec<String>]) -> Vec<FamArrow> {
    let mut out = Vec::new();
    for a in fams {
        for b in fams {
            for f in ordinal::all_maps(a.len(), b.len()) {
                let choices: Vec<Vec<String>> =
                    (0..a.len()).map(|i| c.hom(&a[i], &b[f[i]]).to_vec()).collect();
                for arrows in ordinal::product(&choices) {
                    out.push(FamArrow {
                        src: a.clone(),
                        tgt: b.clone(),
                        f: f.clone(),
                        arrows,
                    });
                }
            }
        }
    }
    out
}

/// The family category on families of size at most `k`.
pub fn fam(c: &FinCategory, k: usize) -> Result<FinCategory> {
    let fams = families(c, k);
    let objects = FinSet::new(fams.iter().map(|f| family_token(f)))?;
    let arrows = fam_arrows(c, &fams);
    let mut decls = Vec::with_capacity(arrows.len());
    let mut by_id = BTreeMap::new();
    for a in &arrows {
        let id = fam_arrow_token(&a.src, &a.tgt, &a.f, &a.arrows);
        decls.push(ArrowDecl {
            id: id.clone(),
            src: family_token(&a.src),
            tgt: family_token(&a.tgt),
        });
        by_id.insert(id, a);
    }
    let identities = fams
        .iter()
        .map(|x| {
            let ids: Vec<String> = x.iter().map(|o| c.identity(o).to_string()).collect();
            (
                family_token(x),
                fam_arrow_token(x, x, &ordinal::identity(x.len()), &ids),
            )
        })
        .collect();
    let mut compose = Vec::new();
    for f in &arrows {
        for g in arrows.iter().filter(|g| g.src == f.tgt) {
            let h = ordinal::compose(&g.f, &f.f);
            let arr: Vec<String> = (0..f.src.len())
                .map(|i| c.compose(&g.arrows[f.f[i]], &f.arrows[i]).map(str::to_string))
                .collect::<Result<_>>()?;
            compose.push(ComposeEntry {
                f: fam_arrow_token(&f.src, &f.tgt, &f.f, &f.arrows),
                g: fam_arrow_token(&g.src, &g.tgt, &g.f, &g.arrows),
                result: fam_arrow_token(&f.src, &g.tgt, &h, &arr),
            });
        }
    }
    FinCategory::new(objects, decls, identities, compose)
}

/// Sum witnesses of the family category: binary concatenations within the bound and the empty family.
pub fn fam_sum_witnesses(c: &FinCategory, k: usize) -> Vec<SumWitness> {
    let fams = families(c, k);
    let mut out = vec![SumWitness {
        summands: vec![],
        sum: family_token(&[]),
        injections: vec![],
    }];
    for a in &fams {
        for b in &fams {
            if a.len() + b.len() > k {
                continue;
            }
            let s: Vec<String> = a.iter().chain(b).cloned().collect();
            let ida: Vec<String> = a.iter().map(|o| c.identity(o).to_string()).collect();
            let idb: Vec<String> = b.iter().map(|o| c.identity(o).to_string()).collect();
            let ia: Vec<usize> = (0..a.len()).collect();
            let ib: Vec<usize> = (a.len()..s.len()).collect();
            out.push(SumWitness {
                summands: vec![family_token(a), family_token(b)],
                sum: family_token(&s),
                injections: vec![
                    fam_arrow_token(a, &s, &ia, &ida),
                    fam_arrow_token(b, &s, &ib, &idb),
                ],
            });
        }
    }
    out
}

/// The family functor of `F`, between bounded family categories.
pub fn fam_functor(f: &FinFunctor, k: usize) -> Result<FinFunctor> {
    let src = fam(&f.src, k)?;
    let tgt = fam(&f.tgt, k)?;
    let mut on_objects = BTreeMap::new();
    for x in families(&f.src, k) {
        let y: Vec<String> = x.iter().map(|o| f.on_objects[o].clone()).collect();
        on_objects.insert(family_token(&x), family_token(&y));
    }
    let mut on_arrows = BTreeMap::new();
    for a in fam_arrows(&f.src, &families(&f.src, k)) {
        let s: Vec<String> = a.src.iter().map(|o| f.on_objects[o].clone()).collect();
        let t: Vec<String> = a.tgt.iter().map(|o| f.on_objects[o].clone()).collect();
        let arr: Vec<String> = a.arrows.iter().map(|x| f.on_arrows[x].clone()).collect();
        on_arrows.insert(
            fam_arrow_token(&a.src, &a.tgt, &a.f, &a.arrows),
            fam_arrow_token(&s, &t, &a.f, &arr),
        );
    }
    FinFunctor::new(src, tgt, on_objects, on_arrows)
}

/// A presheaf on a finite category: a set per object and a restriction map per arrow.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub base: FinCategory,
    pub sets: BTreeMap<String, Vec<String>>,
    /// For `u: c → d`, the map `P(d) → P(c)`.
    pub restrict: BTreeMap<String, BTreeMap<String, String>>,
}

/// The category of elements with its projection, a discrete fibration.
pub fn category_of_elements(p: &Presheaf) -> Result<FinFunctor> {
    let el = |c: &str, x: &str| format!("{c}:{x}");
    let mut objects = Vec::new();
    for c in p.base.objects.iter() {
        for x in &p.sets[c] {
            objects.push(el(c, x));
        }
    }
    let mut arrows = Vec::new();
    let mut on_arrows = BTreeMap::new();
    let mut data = BTreeMap::new();
    for u in p.base.arrow_ids() {
        let (c, d) = (p.base.src(u), p.base.tgt(u));
        for y in &p.sets[d] {
            let x = &p.restrict[u][y];
            let id = format!("{u}@{y}");
            arrows.push(ArrowDecl {
                id: id.clone(),
                src: el(c, x),
                tgt: el(d, y),
            });
            on_arrows.insert(id.clone(), u.clone());
            data.insert(id, (u.clone(), y.clone()));
        }
    }
    let mut identities = BTreeMap::new();
    for c in p.base.objects.iter() {
        for x in &p.sets[c] {
            identities.insert(el(c, x), format!("{}@{x}", p.base.identity(c)));
        }
    }
    let base = &p.base;
    let cat = FinCategory::from_fn(FinSet::new(objects)?, arrows, identities, |g, f| {
        let (v, z) = &data[g];
        let (u, _) = &data[f];
        format!("{}@{z}", base.compose(v, u).expect("composable"))
    })?;
    let on_objects = cat
        .objects
        .iter()
        .map(|o| (o.clone(), o.split_once(':').unwrap().0.to_string()))
        .collect();
    FinFunctor::new(cat, p.base.clone(), on_objects, on_arrows)
}

/// Finite sets of size at most `k` with all maps, objects named `"0".."k"`.
pub fn sets_bounded(k: usize) -> Result<FinCategory> {
    let objects = FinSet::new((0..=k).map(|n| n.to_string()))?;
    let name = |n: usize, m: usize, f: &[usize]| format!("{n}>{m}{f:?}");
    let mut arrows = Vec::new();
    for n in 0..=k {
        for m in 0..=k {
            for f in ordinal::all_maps(n, m) {
                arrows.push(ArrowDecl {
                    id: name(n, m, &f),
                    src: n.to_string(),
                    tgt: m.to_string(),
                });
            }
        }
    }
    let ids = (0..=k)
        .map(|n| (n.to_string(), name(n, n, &ordinal::identity(n))))
        .collect();
    let parse = |id: &str| -> (usize, usize, Vec<usize>) {
        let (nm, rest) = id.split_once('[').unwrap();
        let (n, m) = nm.split_once('>').unwrap();
        let body = rest.trim_end_matches(']');
        let f = if body.is_empty() {
            vec![]
        } else {
            body.split(", ").map(|x| x.parse().unwrap()).collect()
        };
        (n.parse().unwrap(), m.parse().unwrap(), f)
    };
    FinCategory::from_fn(objects, arrows, ids, |g, f| {
        let (n, _, ff) = parse(f);
        let (_, q, gg) = parse(g);
        name(n, q, &ordinal::compose(&gg, &ff))
    })
}

/// The slice of finite sets over `s`, bounded by `k`: objects are colorings `n → s`.
pub fn slice_bounded(s: &FinSet, k: usize) -> Result<FinCategory> {
    let obj = |c: &[usize]| -> String {
        let names: Vec<&str> = c.iter().map(|&x| s.token(x)).collect();
        format!("<{}>", names.join(" "))
    };
    let mut objects = Vec::new();
    let mut colorings = Vec::new();
    for n in 0..=k {
        for c in ordinal::all_maps(n, s.len()) {
            objects.push(obj(&c));
            colorings.push(c);
        }
    }
    let mut arrows = Vec::new();
    let mut data = BTreeMap::new();
    for a in &colorings {
        for b in &colorings {
            for f in ordinal::all_maps(a.len(), b.len()) {
                if ordinal::compose(b, &f) == *a {
                    let id = format!("{}{f:?}{}", obj(a), obj(b));
                    arrows.push(ArrowDecl {
                        id: id.clone(),
                        src: obj(a),
                        tgt: obj(b),
                    });
                    data.insert(id, (a.clone(), b.clone(), f));
                }
            }
        }
    }
    let ids = colorings
        .iter()
        .map(|c| (obj(c), format!("{}{:?}{}", obj(c), ordinal::identity(c.len()), obj(c))))
        .collect();
    FinCategory::from_fn(FinSet::new(objects)?, arrows, ids, |g, f| {
        let (a, _, ff) = &data[f];
        let (_, c, gg) = &data[g];
        format!("{}{:?}{}", obj(a), ordinal::compose(gg, ff), obj(c))
    })
}

/// The comparison `fam(1, k) → sets_bounded(k)`.
pub fn fam_terminal_to_sets(k: usize) -> Result<FinFunctor> {
    let src = fam(&FinCategory::terminal(), k)?;
    let tgt = sets_bounded(k)?;
    let mut on_objects = BTreeMap::new();
    for n in 0..=k {
        on_objects.insert(family_token(&vec!["*".to_string(); n]), n.to_string());
    }
    let star = FinCategory::terminal().identity("*").to_string();
    let mut on_arrows = BTreeMap::new();
    for n in 0..=k {
        for m in 0..=k {
            for f in ordinal::all_maps(n, m) {
                let a = fam_arrow_token(
                    &vec!["*".to_string(); n],
                    &vec!["*".to_string(); m],
                    &f,
                    &vec![star.clone(); n],
                );
                on_arrows.insert(a, format!("{n}>{m}{f:?}"));
            }
        }
    }
    FinFunctor::new(src, tgt, on_objects, on_arrows)
}

/// The comparison `fam(S discrete, k) → slice_bounded(S, k)`.
pub fn fam_discrete_to_slice(s: &FinSet, k: usize) -> Result<FinFunctor> {
    let d = FinCategory::discrete(s);
    let src = fam(&d, k)?;
    let tgt = slice_bounded(s, k)?;
    let fams = families(&d, k);
    let obj = |x: &[String]| format!("<{}>", x.join(" "));
    let on_objects = fams.iter().map(|x| (family_token(x), obj(x))).collect();
    let mut on_arrows = BTreeMap::new();
    for a in fam_arrows(&d, &fams) {
        on_arrows.insert(
            fam_arrow_token(&a.src, &a.tgt, &a.f, &a.arrows),
            format!("{}{:?}{}", obj(&a.src), a.f, obj(&a.tgt)),
        );
    }
    FinFunctor::new(src, tgt, on_objects, on_arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinCategory {
        FinCategory::preorder(&FinSet::new(["0", "1", "2"]).unwrap(), &[("0", "1"), ("1", "2")]).unwrap()
    }

    #[test]
    fn constructions_satisfy_laws() {
        for c in [FinCategory::terminal(), FinCategory::walking_arrow(), chain3()] {
            c.check_laws().unwrap();
        }
        assert_eq!(chain3().arrow_count(), 6);
    }

    #[test]
    fn missing_composite_is_structural() {
        let c = FinCategory::walking_arrow();
        let mut data: CategoryData = c.into();
        data.compose.pop();
        let r = FinCategory::try_from(data);
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = chain3();
        let s = serde_json::to_string(&c).unwrap();
        let back: FinCategory = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn identity_functor_is_discrete_fibration() {
        let c = chain3();
        assert!(is_discrete_fibration(&FinFunctor::identity(&c)).unwrap());
    }

    #[test]
    fn discrete_over_terminal_is_a_discrete_fibration() {
        // each object has exactly one arrow into it over the identity: its own identity
        let d = FinCategory::discrete(&FinSet::new(["A", "B"]).unwrap());
        assert!(is_discrete_fibration(&FinFunctor::to_terminal(&d)).unwrap());
    }

    #[test]
    fn walking_arrow_over_terminal_is_not() {
        // B has two arrows into it over the identity
        let c = FinCategory::walking_arrow();
        assert!(!is_discrete_fibration(&FinFunctor::to_terminal(&c)).unwrap());
    }

    /// Element projection of a presheaf on the chain 0 → 1 → 2.
    #[test]
    fn elements_projection_is_discrete_fibration() {
        let base = chain3();
        let sets: BTreeMap<String, Vec<String>> = [
            ("0", vec!["p", "q", "r"]),
            ("1", vec!["s", "t"]),
            ("2", vec!["u"]),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into_iter().map(String::from).collect()))
        .collect();
        let mut restrict = BTreeMap::new();
        let table = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
        };
        restrict.insert("0<=0".into(), table(&[("p", "p"), ("q", "q"), ("r", "r")]));
        restrict.insert("1<=1".into(), table(&[("s", "s"), ("t", "t")]));
        restrict.insert("2<=2".into(), table(&[("u", "u")]));
        restrict.insert("0<=1".into(), table(&[("s", "p"), ("t", "r")]));
        restrict.insert("1<=2".into(), table(&[("u", "t")]));
        restrict.insert("0<=2".into(), table(&[("u", "r")]));
        let p = Presheaf { base, sets, restrict };
        let proj = category_of_elements(&p).unwrap();
        proj.src.check_laws().unwrap();
        assert!(is_discrete_fibration(&proj).unwrap());
        // brute-force lift count against the definition
        for e in proj.src.objects.iter() {
            for b in proj.tgt.arrow_ids() {
                if proj.tgt.tgt(b) == proj.on_objects[e] {
                    let n = proj
                        .src
                        .arrow_ids()
                        .filter(|a| proj.src.tgt(a) == e && &proj.on_arrows[*a] == b)
                        .count();
                    assert_eq!(n, 1);
                }
            }
        }
    }

    #[test]
    fn fam_of_terminal_is_bounded_sets() {
        for k in 0..=3 {
            let f = fam_terminal_to_sets(k).unwrap();
            assert!(f.is_isomorphism(), "k = {k}");
            assert!(f.is_equivalence());
        }
    }

    #[test]
    fn fam_of_discrete_is_slice() {
        let s = FinSet::new(["A", "B"]).unwrap();
        let f = fam_discrete_to_slice(&s, 3).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn fam_laws_hold() {
        fam(&FinCategory::walking_arrow(), 2).unwrap().check_laws().unwrap();
    }

    #[test]
    fn connected_objects_of_fam_are_singletons() {
        for (c, k) in [(FinCategory::terminal(), 3), (FinCategory::walking_arrow(), 2)] {
            let d = fam(&c, k).unwrap();
            let conn = connected_objects(&d, &fam_sum_witnesses(&c, k)).unwrap();
            let singles: Vec<String> = c.objects().iter().map(|o| format!("({o})")).collect();
            assert_eq!(conn, FinSet::new(singles).unwrap());
        }
    }

    #[test]
    fn no_sums_means_all_connected() {
        let c = chain3();
        assert_eq!(&connected_objects(&c, &[]).unwrap(), c.objects());
    }

    #[test]
    fn two_point_family_is_a_sum_but_not_connected() {
        let one = FinCategory::terminal();
        let d = fam(&one, 2).unwrap();
        let w = fam_sum_witnesses(&one, 2);
        let pair = w.iter().find(|w| w.sum == "(*,*)").unwrap();
        pair.check(&d).unwrap();
        assert!(!connected_objects(&d, &w).unwrap().contains("(*,*)"));
        // 4 maps into the sum, 1 + 1 through the injections
        assert_eq!(d.hom("(*,*)", "(*,*)").len(), 4);
    }

    #[test]
    fn bad_sum_witness_rejected() {
        let c = chain3();
        let w = SumWitness {
            summands: vec!["0".into(), "1".into()],
            sum: "2".into(),
            injections: vec!["0<=2".into(), "1<=2".into()],
        };
        assert!(matches!(w.check(&c), Err(Error::Validation(_))));
    }

    #[test]
    fn fam_preserves_discrete_fibrations() {
        let c = chain3();
        let f = FinFunctor::identity(&c);
        assert!(is_discrete_fibration(&fam_functor(&f, 2).unwrap()).unwrap());
        let d = FinCategory::discrete(&FinSet::new(["A", "B"]).unwrap());
        let g = FinFunctor::to_terminal(&d);
        assert!(is_discrete_fibration(&fam_functor(&g, 3).unwrap()).unwrap());
        let h = FinFunctor::to_terminal(&FinCategory::walking_arrow());
        assert!(!is_discrete_fibration(&fam_functor(&h, 2).unwrap()).unwrap());
    }
}
