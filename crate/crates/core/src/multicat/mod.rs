//! Symmetric multicategories in connected-arrow normal form.
//!
//! A multicategory is served by an oracle working on canonical arities: the
//! domain of an arrow is a list indexed by `{0, …, n-1}`. The unbiased views
//! ([`ObjFamily`], [`MultiArrow`], [`LooseArrow`]) index by arbitrary token sets
//! and convert through sorted ranks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::doubleprop::BaseKind;
use crate::error::{structural, Result};
use crate::finset::{fiber, sum_sets, FinMap, FinSet};
use crate::ordinal;
use crate::term::Term;

pub mod algebra;
pub mod builtin;
pub mod represent;
pub mod table;
pub mod validate;

pub use algebra::{extract_comm_monoid, is_algebra, CommMonoid, Rig};
pub use builtin::*;
pub use represent::{burnside, find_opcartesian, is_representable, plain_structure, Burnside, PlainStructure};
pub use table::{materialize, TableMulticat, TablePayload};
pub use validate::validate;

pub type Obj = String;

/// A connected arrow on a canonical arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arrow {
    pub term: Term,
    pub dom: Vec<Obj>,
    pub cod: Obj,
}

impl Arrow {
    pub fn new(term: Term, dom: Vec<Obj>, cod: impl Into<Obj>) -> Arrow {
        Arrow {
            term,
            dom,
            cod: cod.into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.dom.len()
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:({})→{}", self.term, self.dom.join(","), self.cod)
    }
}

/// Render a list of arrows.
pub fn show_all(xs: &[Arrow]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("⟨{}⟩", parts.join("; "))
}

/// The operations a multicategory must answer.
///
/// `permute(a, σ)` has domain `k ↦ a.dom[σ[k]]` and satisfies
/// `permute(permute(a, τ), σ) = permute(a, τ ∘ σ)`. `compose(β, αs)` has the
/// domain `αs[0].dom ++ αs[1].dom ++ …`.
pub trait MulticatOracle: Send + Sync {
    fn name(&self) -> String;
    fn objects(&self) -> &[Obj];
    fn base(&self) -> BaseKind {
        BaseKind::Pb
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>>;
    fn identity(&self, obj: &str) -> Result<Arrow>;
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow>;
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow>;
    /// A total order on the domain carried by the arrow itself, for ordered bases.
    fn native_order(&self, _a: &Arrow) -> Option<Vec<usize>> {
        None
    }
}

/// A multicategory together with the arity bound used by enumerative checks.
#[derive(Clone)]
pub struct Multicat {
    oracle: Arc<dyn MulticatOracle>,
    bound: usize,
}

impl fmt::Debug for Multicat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multicat({}, bound {})", self.name(), self.bound)
    }
}

impl Multicat {
    pub fn new(oracle: impl MulticatOracle + 'static, bound: usize) -> Multicat {
        Multicat {
            oracle: Arc::new(oracle),
            bound,
        }
    }

    pub fn from_arc(oracle: Arc<dyn MulticatOracle>, bound: usize) -> Multicat {
        Multicat { oracle, bound }
    }

    pub fn with_bound(&self, bound: usize) -> Multicat {
        Multicat {
            oracle: self.oracle.clone(),
            bound,
        }
    }

    pub fn oracle(&self) -> &Arc<dyn MulticatOracle> {
        &self.oracle
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn name(&self) -> String {
        self.oracle.name()
    }

    pub fn objects(&self) -> &[Obj] {
        self.oracle.objects()
    }

    pub fn base(&self) -> BaseKind {
        self.oracle.base()
    }

    pub fn has_object(&self, o: &str) -> bool {
        self.objects().binary_search_by(|x| x.as_str().cmp(o)).is_ok()
    }

    fn check_objects(&self, dom: &[Obj], cod: &str) -> Result<()> {
        if let Some(o) = dom.iter().map(String::as_str).chain([cod]).find(|o| !self.has_object(o)) {
            return Err(structural(format!("unknown object {o:?}")));
        }
        Ok(())
    }

    pub fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        self.check_objects(dom, cod)?;
        self.oracle.hom(dom, cod)
    }

    pub fn identity(&self, obj: &str) -> Result<Arrow> {
        self.check_objects(&[], obj)?;
        self.oracle.identity(obj)
    }

    pub fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        if !ordinal::is_bijection(perm, a.arity()) {
            return Err(structural(format!("{perm:?} is not a permutation of the domain of {a}")));
        }
        self.oracle.permute(a, perm)
    }

    pub fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        if inner.len() != outer.arity() {
            return Err(structural(format!(
                "{outer} needs {} inner arrows, got {}",
                outer.arity(),
                inner.len()
            )));
        }
        for (j, a) in inner.iter().enumerate() {
            if a.cod != outer.dom[j] {
                return Err(structural(format!("{a} does not land in input {j} of {outer}")));
            }
        }
        self.oracle.compose(outer, inner)
    }

    pub fn native_order(&self, a: &Arrow) -> Option<Vec<usize>> {
        self.oracle.native_order(a)
    }

    /// All families of objects over `{0..n}`, lexicographic.
    pub fn families(&self, n: usize) -> Vec<Vec<Obj>> {
        let objs = self.objects();
        ordinal::all_maps(n, objs.len())
            .into_iter()
            .map(|f| f.iter().map(|&k| objs[k].clone()).collect())
            .collect()
    }

    /// Every arrow out of `dom`, over all codomains.
    pub fn out_arrows(&self, dom: &[Obj]) -> Result<Vec<Arrow>> {
        let mut out = Vec::new();
        for b in self.objects() {
            out.extend(self.hom(dom, b)?);
        }
        Ok(out)
    }

    pub fn arrows_of_arity(&self, n: usize) -> Result<Vec<Arrow>> {
        let mut out = Vec::new();
        for x in self.families(n) {
            out.extend(self.out_arrows(&x)?);
        }
        Ok(out)
    }

    /// All arrows of arity at most `k`.
    pub fn arrows_upto(&self, k: usize) -> Result<Vec<Arrow>> {
        let mut out = Vec::new();
        for n in 0..=k {
            out.extend(self.arrows_of_arity(n)?);
        }
        Ok(out)
    }

    /// Restrict a composite whose domain is in block order to the order given by `blocks`.
    pub(crate) fn unblock(&self, composite: Arrow, blocks: &[Vec<usize>]) -> Result<Arrow> {
        let p = ordinal::unblock(blocks);
        if p.iter().enumerate().all(|(k, &x)| k == x) {
            return Ok(composite);
        }
        self.permute(&composite, &p)
    }
}

/// A family of objects indexed by a finite set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjFamily {
    pub index: FinSet,
    pub assign: BTreeMap<String, Obj>,
}

impl ObjFamily {
    pub fn new(index: FinSet, assign: BTreeMap<String, Obj>) -> Result<ObjFamily> {
        if assign.len() != index.len() || !assign.keys().all(|k| index.contains(k)) {
            return Err(structural("object family is not total on its index"));
        }
        Ok(ObjFamily { index, assign })
    }

    /// The family `k ↦ objs[k]` over `index` enumerated in sorted order.
    pub fn from_ordinal(index: &FinSet, objs: &[Obj]) -> Result<ObjFamily> {
        if index.len() != objs.len() {
            return Err(structural("family length does not match its index"));
        }
        Ok(ObjFamily {
            index: index.clone(),
            assign: index.iter().cloned().zip(objs.iter().cloned()).collect(),
        })
    }

    pub fn to_ordinal(&self) -> Vec<Obj> {
        self.index.iter().map(|i| self.assign[i].clone()).collect()
    }

    /// `X ∘ f` for `f` landing in the index.
    pub fn reindex(&self, f: &FinMap) -> Result<ObjFamily> {
        if f.cod != self.index {
            return Err(structural("reindexing map does not land in the family's index"));
        }
        Ok(ObjFamily {
            index: f.dom.clone(),
            assign: f
                .table
                .iter()
                .map(|(a, b)| (a.clone(), self.assign[b].clone()))
                .collect(),
        })
    }

    pub fn restrict(&self, sub: &FinSet) -> Result<ObjFamily> {
        let assign = sub
            .iter()
            .map(|i| {
                self.assign
                    .get(i)
                    .map(|o| (i.clone(), o.clone()))
                    .ok_or_else(|| structural(format!("{i:?} is not in the family's index")))
            })
            .collect::<Result<_>>()?;
        Ok(ObjFamily {
            index: sub.clone(),
            assign,
        })
    }
}

/// A connected arrow with an unbiased domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiArrow {
    pub id: Term,
    pub dom: ObjFamily,
    pub cod: Obj,
}

impl MultiArrow {
    pub fn from_ordinal(a: &Arrow, index: &FinSet) -> Result<MultiArrow> {
        Ok(MultiArrow {
            id: a.term.clone(),
            dom: ObjFamily::from_ordinal(index, &a.dom)?,
            cod: a.cod.clone(),
        })
    }

    pub fn to_ordinal(&self) -> Arrow {
        Arrow {
            term: self.id.clone(),
            dom: self.dom.to_ordinal(),
            cod: self.cod.clone(),
        }
    }
}

/// Reindex a connected arrow along a bijection `σ: I' → I` onto its domain index.
pub fn reindex_contra(m: &Multicat, a: &MultiArrow, sigma: &FinMap) -> Result<MultiArrow> {
    if sigma.cod != a.dom.index {
        return Err(structural("relabeling does not land in the arrow's domain index"));
    }
    if !sigma.is_bijection() {
        return Err(structural("symmetric action needs a bijection"));
    }
    let perm = sigma.to_ordinal();
    let moved = m.permute(&a.to_ordinal(), &perm)?;
    MultiArrow::from_ordinal(&moved, &sigma.dom)
}

/// A general loose arrow over `f: I → J`: one connected arrow per fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LooseArrow {
    pub base: FinMap,
    pub components: BTreeMap<String, MultiArrow>,
}

impl LooseArrow {
    pub fn new(base: FinMap, components: BTreeMap<String, MultiArrow>) -> Result<LooseArrow> {
        let l = LooseArrow { base, components };
        l.check()?;
        Ok(l)
    }

    pub fn check(&self) -> Result<()> {
        self.base.check()?;
        if self.components.len() != self.base.cod.len() {
            return Err(structural("one component per target index is required"));
        }
        for j in self.base.cod.iter() {
            let c = self
                .components
                .get(j)
                .ok_or_else(|| structural(format!("no component over {j:?}")))?;
            if c.dom.index != fiber(&self.base, j)? {
                return Err(structural(format!("component over {j:?} is not indexed by its fiber")));
            }
        }
        Ok(())
    }

    /// The identity loose arrow on a family.
    pub fn identity(m: &Multicat, x: &ObjFamily) -> Result<LooseArrow> {
        let base = FinMap::identity(&x.index);
        let mut components = BTreeMap::new();
        for (i, o) in &x.assign {
            let id = m.identity(o)?;
            components.insert(i.clone(), MultiArrow::from_ordinal(&id, &FinSet::singleton(i.clone()))?);
        }
        LooseArrow::new(base, components)
    }

    /// The domain family, assembled from the fibers.
    pub fn source(&self) -> ObjFamily {
        let mut assign = BTreeMap::new();
        for c in self.components.values() {
            assign.extend(c.dom.assign.clone());
        }
        ObjFamily {
            index: self.base.dom.clone(),
            assign,
        }
    }

    pub fn target(&self) -> ObjFamily {
        ObjFamily {
            index: self.base.cod.clone(),
            assign: self
                .components
                .iter()
                .map(|(j, c)| (j.clone(), c.cod.clone()))
                .collect(),
        }
    }

    /// Sum of loose arrows, with `"k:t"` tokens on both sides.
    pub fn sum(parts: &[LooseArrow]) -> LooseArrow {
        let base = crate::finset::sum(&parts.iter().map(|p| p.base.clone()).collect::<Vec<_>>());
        let mut components = BTreeMap::new();
        for (k, p) in parts.iter().enumerate() {
            for (j, c) in &p.components {
                let idx = FinSet::new(c.dom.index.iter().map(|t| format!("{k}:{t}"))).expect("distinct");
                let assign = c
                    .dom
                    .assign
                    .iter()
                    .map(|(t, o)| (format!("{k}:{t}"), o.clone()))
                    .collect();
                components.insert(
                    format!("{k}:{j}"),
                    MultiArrow {
                        id: c.id.clone(),
                        dom: ObjFamily { index: idx, assign },
                        cod: c.cod.clone(),
                    },
                );
            }
        }
        LooseArrow { base, components }
    }

    /// Split a sum back into its summands, given the summand target sets.
    pub fn split(&self, targets: &[FinSet]) -> Result<Vec<LooseArrow>> {
        if sum_sets(targets) != self.base.cod {
            return Err(structural("target sets do not sum to the base codomain"));
        }
        let untag = |t: &str, k: usize| -> Option<String> {
            let (a, b) = t.split_once(':')?;
            (a == k.to_string()).then(|| b.to_string())
        };
        let mut out = Vec::new();
        for (k, tk) in targets.iter().enumerate() {
            let mut table = BTreeMap::new();
            let mut comps = BTreeMap::new();
            for j in tk.iter() {
                let c = &self.components[&format!("{k}:{j}")];
                let mut assign = BTreeMap::new();
                for (t, o) in &c.dom.assign {
                    let i = untag(t, k).ok_or_else(|| structural("summand tokens are not tagged"))?;
                    table.insert(i.clone(), j.clone());
                    assign.insert(i, o.clone());
                }
                let index = FinSet::new(assign.keys().cloned())?;
                comps.insert(
                    j.clone(),
                    MultiArrow {
                        id: c.id.clone(),
                        dom: ObjFamily { index, assign },
                        cod: c.cod.clone(),
                    },
                );
            }
            let dom = FinSet::new(table.keys().cloned())?;
            out.push(LooseArrow::new(FinMap::new(dom, tk.clone(), table)?, comps)?);
        }
        Ok(out)
    }
}

/// `g ∘ f` for loose arrows `f` over `I → J` and `g` over `J → K`.
pub fn compose_loose(m: &Multicat, g: &LooseArrow, f: &LooseArrow) -> Result<LooseArrow> {
    if f.base.cod != g.base.dom {
        return Err(structural("loose arrows are not composable"));
    }
    if f.target() != g.source() {
        return Err(structural("object families do not match"));
    }
    let base = g.base.after(&f.base)?;
    let mut components = BTreeMap::new();
    for k in g.base.cod.iter() {
        let gk = &g.components[k];
        let inner: Vec<Arrow> = gk
            .dom
            .index
            .iter()
            .map(|j| f.components[j].to_ordinal())
            .collect();
        let composite = m.compose(&gk.to_ordinal(), &inner)?;
        let target = fiber(&base, k)?;
        let blocks: Vec<Vec<usize>> = gk
            .dom
            .index
            .iter()
            .map(|j| {
                f.components[j]
                    .dom
                    .index
                    .iter()
                    .map(|i| target.rank(i).expect("fiber"))
                    .collect()
            })
            .collect();
        let arranged = m.unblock(composite, &blocks)?;
        components.insert(k.clone(), MultiArrow::from_ordinal(&arranged, &target)?);
    }
    LooseArrow::new(base, components)
}
