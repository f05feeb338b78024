//! Base double props as oracles: maps (`Pb`), bijections (`Bij`), maps with
//! ordered fibers (`Tot`) and maps with a section (`Sec`); their morphisms;
//! and change of base for multicategories.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::fincat::{ArrowDecl, FinCategory};
use crate::finset::{self, fiber, pair_token, pullback, FinMap, FinSet, OrderedMap, SectionedMap};
use crate::multicat::builtin::{glue_orders, permute_order};
use crate::multicat::{Arrow, Multicat, MulticatOracle, Obj};
use crate::ordinal;
use crate::report::Report;
use crate::term::Term;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseKind {
    #[default]
    Pb,
    Bij,
    Tot,
    Sec,
}

impl std::fmt::Display for BaseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A loose arrow of one of the base double props.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseLoose {
    Plain(FinMap),
    Ordered(OrderedMap),
    Sectioned(SectionedMap),
}

impl BaseLoose {
    pub fn map(&self) -> &FinMap {
        match self {
            BaseLoose::Plain(f) => f,
            BaseLoose::Ordered(o) => &o.base,
            BaseLoose::Sectioned(s) => &s.base,
        }
    }

    /// Transport along a bijection `dom → new_dom` of the domain.
    pub fn relabel(&self, along: &FinMap) -> Result<BaseLoose> {
        if along.dom != self.map().dom || !along.is_bijection() {
            return Err(structural("relabeling must be a bijection of the domain"));
        }
        let inv = along.inverse()?;
        let base = self.map().after(&inv)?;
        Ok(match self {
            BaseLoose::Plain(_) => BaseLoose::Plain(base),
            BaseLoose::Ordered(o) => BaseLoose::Ordered(OrderedMap {
                base,
                fiber_orders: o
                    .fiber_orders
                    .iter()
                    .map(|(j, ord)| (j.clone(), ord.iter().map(|i| along.apply(i).to_string()).collect()))
                    .collect(),
            }),
            BaseLoose::Sectioned(s) => BaseLoose::Sectioned(SectionedMap {
                base,
                section: along.after(&s.section)?,
            }),
        })
    }
}

/// A cell: `top` over `I' → L` is the reindexing of `bottom` over `I → J` along `tight: L → J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCell {
    pub top: BaseLoose,
    pub bottom: BaseLoose,
    /// `I' → I`.
    pub comparison: FinMap,
    /// `L → J`.
    pub tight: FinMap,
}

/// Composition and reindexing rules of one base double prop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseOracle {
    pub kind: BaseKind,
}

pub fn oracle_pb() -> BaseOracle {
    BaseOracle { kind: BaseKind::Pb }
}

pub fn oracle_bij() -> BaseOracle {
    BaseOracle { kind: BaseKind::Bij }
}

pub fn oracle_tot() -> BaseOracle {
    BaseOracle { kind: BaseKind::Tot }
}

pub fn oracle_sec() -> BaseOracle {
    BaseOracle { kind: BaseKind::Sec }
}

impl BaseOracle {
    pub fn admits(&self, p: &BaseLoose) -> bool {
        match (self.kind, p) {
            (BaseKind::Pb, BaseLoose::Plain(f)) => f.check().is_ok(),
            (BaseKind::Bij, BaseLoose::Plain(f)) => f.check().is_ok() && f.is_bijection(),
            (BaseKind::Tot, BaseLoose::Ordered(o)) => o.check().is_ok(),
            (BaseKind::Sec, BaseLoose::Sectioned(s)) => s.check().is_ok(),
            _ => false,
        }
    }

    fn expect(&self, p: &BaseLoose) -> Result<()> {
        if self.admits(p) {
            Ok(())
        } else {
            Err(structural(format!("not a loose arrow of {}", self.kind)))
        }
    }

    pub fn identity(&self, s: &FinSet) -> BaseLoose {
        let id = FinMap::identity(s);
        match self.kind {
            BaseKind::Pb | BaseKind::Bij => BaseLoose::Plain(id),
            BaseKind::Tot => BaseLoose::Ordered(OrderedMap::sorted(id)),
            BaseKind::Sec => BaseLoose::Sectioned(SectionedMap {
                section: id.clone(),
                base: id,
            }),
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &BaseLoose, f: &BaseLoose) -> Result<BaseLoose> {
        self.expect(g)?;
        self.expect(f)?;
        let base = g.map().after(f.map())?;
        Ok(match (g, f) {
            (BaseLoose::Plain(_), BaseLoose::Plain(_)) => BaseLoose::Plain(base),
            (BaseLoose::Ordered(go), BaseLoose::Ordered(fo)) => {
                let fiber_orders = go
                    .fiber_orders
                    .iter()
                    .map(|(k, outer)| {
                        let glued = outer
                            .iter()
                            .flat_map(|j| fo.fiber_orders[j].iter().cloned())
                            .collect();
                        (k.clone(), glued)
                    })
                    .collect();
                BaseLoose::Ordered(OrderedMap { base, fiber_orders })
            }
            (BaseLoose::Sectioned(gs), BaseLoose::Sectioned(fs)) => BaseLoose::Sectioned(SectionedMap {
                base,
                section: fs.section.after(&gs.section)?,
            }),
            _ => return Err(structural("composing arrows of different decorations")),
        })
    }

    /// Reindex `p` along `l: L → J` through the canonical pullback.
    pub fn reindex(&self, p: &BaseLoose, l: &FinMap) -> Result<BaseCell> {
        self.expect(p)?;
        let sq = pullback(p.map(), l)?;
        let base = sq.top.clone();
        let top = match p {
            BaseLoose::Plain(_) => BaseLoose::Plain(base),
            BaseLoose::Ordered(o) => BaseLoose::Ordered(OrderedMap {
                fiber_orders: l
                    .dom
                    .iter()
                    .map(|x| {
                        let ord = o.fiber_orders[l.apply(x)].iter().map(|i| pair_token(i, x)).collect();
                        (x.clone(), ord)
                    })
                    .collect(),
                base,
            }),
            BaseLoose::Sectioned(s) => BaseLoose::Sectioned(SectionedMap {
                section: FinMap {
                    dom: l.dom.clone(),
                    cod: sq.apex.clone(),
                    table: l
                        .dom
                        .iter()
                        .map(|x| (x.clone(), pair_token(s.section.apply(l.apply(x)), x)))
                        .collect(),
                },
                base,
            }),
        };
        Ok(BaseCell {
            top,
            bottom: p.clone(),
            comparison: sq.left,
            tight: l.clone(),
        })
    }

    pub fn sum(&self, parts: &[BaseLoose]) -> Result<BaseLoose> {
        for p in parts {
            self.expect(p)?;
        }
        let base = finset::sum(&parts.iter().map(|p| p.map().clone()).collect::<Vec<_>>());
        Ok(match self.kind {
            BaseKind::Pb | BaseKind::Bij => BaseLoose::Plain(base),
            BaseKind::Tot => {
                let mut fiber_orders = BTreeMap::new();
                for (k, p) in parts.iter().enumerate() {
                    let BaseLoose::Ordered(o) = p else { unreachable!() };
                    for (j, ord) in &o.fiber_orders {
                        fiber_orders.insert(format!("{k}:{j}"), ord.iter().map(|i| format!("{k}:{i}")).collect());
                    }
                }
                BaseLoose::Ordered(OrderedMap { base, fiber_orders })
            }
            BaseKind::Sec => {
                let sections: Vec<FinMap> = parts
                    .iter()
                    .map(|p| match p {
                        BaseLoose::Sectioned(s) => s.section.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                BaseLoose::Sectioned(SectionedMap {
                    base,
                    section: finset::sum(&sections),
                })
            }
        })
    }

    /// Every loose arrow of this kind between the given sets.
    pub fn loose_arrows(&self, dom: &FinSet, cod: &FinSet) -> Vec<BaseLoose> {
        let mut out = Vec::new();
        for f in ordinal::all_maps(dom.len(), cod.len()) {
            let m = FinMap::from_ordinal(dom, cod, &f);
            match self.kind {
                BaseKind::Pb => out.push(BaseLoose::Plain(m)),
                BaseKind::Bij => {
                    if m.is_bijection() {
                        out.push(BaseLoose::Plain(m))
                    }
                }
                BaseKind::Tot => {
                    let fibers: Vec<Vec<String>> =
                        cod.iter().map(|j| fiber(&m, j).unwrap().tokens().to_vec()).collect();
                    let choices: Vec<Vec<Vec<String>>> = fibers
                        .iter()
                        .map(|fib| {
                            ordinal::permutations(fib.len())
                                .iter()
                                .map(|p| p.iter().map(|&k| fib[k].clone()).collect())
                                .collect()
                        })
                        .collect();
                    for orders in ordinal::product(&choices) {
                        out.push(BaseLoose::Ordered(OrderedMap {
                            base: m.clone(),
                            fiber_orders: cod.iter().cloned().zip(orders).collect(),
                        }));
                    }
                }
                BaseKind::Sec => {
                    let fibers: Vec<Vec<String>> =
                        cod.iter().map(|j| fiber(&m, j).unwrap().tokens().to_vec()).collect();
                    for pick in ordinal::product(&fibers) {
                        out.push(BaseLoose::Sectioned(SectionedMap {
                            base: m.clone(),
                            section: FinMap {
                                dom: cod.clone(),
                                cod: dom.clone(),
                                table: cod.iter().cloned().zip(pick).collect(),
                            },
                        }));
                    }
                }
            }
        }
        out
    }
}

fn small_sets(k: usize) -> Vec<FinSet> {
    (0..=k)
        .map(|n| FinSet::new((0..n).map(|i| format!("{}", (b'a' + i as u8) as char))).unwrap())
        .collect()
}

/// `((i,x),y) ↦ (i,y)` from iterated pullback apexes to the pullback of a composite.
fn flatten_pairs(apex: &FinSet, cod: &FinSet) -> Result<FinMap> {
    let mut table = BTreeMap::new();
    for t in apex.iter() {
        let (inner, outer) = split_pair(t)?;
        let (i, _) = split_pair(&inner)?;
        table.insert(t.clone(), pair_token(&i, &outer));
    }
    FinMap::new(apex.clone(), cod.clone(), table)
}

/// `(i,(j,x)) ↦ (i,x)`.
fn flatten_right(apex: &FinSet, cod: &FinSet) -> Result<FinMap> {
    let mut table = BTreeMap::new();
    for t in apex.iter() {
        let (i, rest) = split_pair(t)?;
        let (_, x) = split_pair(&rest)?;
        table.insert(t.clone(), pair_token(&i, &x));
    }
    FinMap::new(apex.clone(), cod.clone(), table)
}

/// Split `"(a,b)"` at the comma of depth one.
fn split_pair(t: &str) -> Result<(String, String)> {
    let body = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| structural(format!("{t} is not a pair token")))?;
    let mut depth = 0;
    for (k, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((body[..k].to_string(), body[k + 1..].to_string())),
            _ => {}
        }
    }
    Err(structural(format!("{t} is not a pair token")))
}

/// Check unit, associativity, pasting, interchange and sums on every
/// instance built from sets of size at most `k`.
pub fn check_base_laws(o: &BaseOracle, k: usize) -> Result<Report> {
    let mut r = Report::new(format!("base {}", o.kind), k);
    let sets = small_sets(k);
    let eq = |a: &BaseLoose, b: &BaseLoose| if a == b { None } else { Some(format!("{a:?} ≠ {b:?}")) };
    for i in &sets {
        for j in &sets {
            for f in o.loose_arrows(i, j) {
                r.record("unit", || format!("{f:?}"), Ok(eq(&o.compose(&o.identity(j), &f)?, &f)))?;
                r.record("unit", || format!("{f:?}"), Ok(eq(&o.compose(&f, &o.identity(i))?, &f)))?;
                for kk in &sets {
                    for g in o.loose_arrows(j, kk) {
                        let gf = o.compose(&g, &f)?;
                        if !o.admits(&gf) {
                            r.violation("closure", format!("{g:?} ∘ {f:?}"), "composite is not admissible");
                        }
                        for l in &sets {
                            for h in o.loose_arrows(kk, l).into_iter().take(6) {
                                let a = o.compose(&h, &gf)?;
                                let b = o.compose(&o.compose(&h, &g)?, &f)?;
                                r.record("associativity", || format!("{h:?} {g:?} {f:?}"), Ok(eq(&a, &b)))?;
                            }
                            // interchange: reindex(g∘f, t) against the pasted pair
                            for t in ordinal::all_maps(l.len(), kk.len()) {
                                let t = FinMap::from_ordinal(l, kk, &t);
                                let whole = o.reindex(&gf, &t)?;
                                let cg = o.reindex(&g, &t)?;
                                let cf = o.reindex(&f, &cg.comparison)?;
                                let pasted = o.compose(&cg.top, &cf.top)?;
                                let rel = flatten_right(&pasted.map().dom, &whole.top.map().dom)?;
                                let moved = pasted.relabel(&rel)?;
                                r.record("interchange", || format!("{g:?} {f:?} along {t}"), Ok(eq(&moved, &whole.top)))?;
                                if !o.admits(&whole.top) {
                                    r.violation("cell", format!("{gf:?} along {t}"), "reindexed arrow is not admissible");
                                }
                            }
                        }
                    }
                }
                // vertical pasting: reindex twice against reindex along the composite
                for l in &sets {
                    for t in ordinal::all_maps(l.len(), j.len()) {
                        let t = FinMap::from_ordinal(l, j, &t);
                        let c1 = o.reindex(&f, &t)?;
                        for m in &sets {
                            for u in ordinal::all_maps(m.len(), l.len()) {
                                let u = FinMap::from_ordinal(m, l, &u);
                                let c2 = o.reindex(&c1.top, &u)?;
                                let direct = o.reindex(&f, &t.after(&u)?)?;
                                let rel = flatten_pairs(&c2.top.map().dom, &direct.top.map().dom)?;
                                let moved = c2.top.relabel(&rel)?;
                                r.record("pasting", || format!("{f:?} along {t} then {u}"), Ok(eq(&moved, &direct.top)))?;
                            }
                        }
                    }
                }
            }
        }
    }
    // sums: source and target of a sum are sums, and reindexing distributes
    for i in sets.iter().take(3) {
        for j in sets.iter().take(3) {
            let fs = o.loose_arrows(i, j);
            for f in fs.iter().take(4) {
                for g in fs.iter().take(4) {
                    let s = o.sum(&[f.clone(), g.clone()])?;
                    let src = finset::sum_sets(&[f.map().dom.clone(), g.map().dom.clone()]);
                    let tgt = finset::sum_sets(&[f.map().cod.clone(), g.map().cod.clone()]);
                    let ok = s.map().dom == src && s.map().cod == tgt && o.admits(&s);
                    r.record("sums", || format!("{f:?} + {g:?}"), Ok((!ok).then(|| "sum is not preserved".to_string())))?;
                }
            }
        }
    }
    Ok(r.finish())
}

/// A morphism of base double props; all built-in ones forget decoration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseMorphism {
    pub src: BaseOracle,
    pub tgt: BaseOracle,
}

impl BaseMorphism {
    pub fn new(src: BaseKind, tgt: BaseKind) -> Result<BaseMorphism> {
        let ok = src == tgt || tgt == BaseKind::Pb;
        if !ok {
            return Err(structural(format!("no built-in morphism {src} → {tgt}")));
        }
        Ok(BaseMorphism {
            src: BaseOracle { kind: src },
            tgt: BaseOracle { kind: tgt },
        })
    }

    pub fn translate(&self, p: &BaseLoose) -> BaseLoose {
        if self.src.kind == self.tgt.kind {
            p.clone()
        } else {
            BaseLoose::Plain(p.map().clone())
        }
    }

    /// Functoriality, sum preservation and unique lifting of cells, on instances
    /// from sets of size at most `k`.
    pub fn check(&self, k: usize) -> Result<Report> {
        let mut r = Report::new(format!("morphism {} → {}", self.src.kind, self.tgt.kind), k);
        let sets = small_sets(k);
        for i in &sets {
            for j in &sets {
                for f in self.src.loose_arrows(i, j) {
                    let ff = self.translate(&f);
                    if !self.tgt.admits(&ff) {
                        r.violation("translation", format!("{f:?}"), "image is not a loose arrow");
                    }
                    for l in &sets {
                        for t in ordinal::all_maps(l.len(), j.len()) {
                            let t = FinMap::from_ordinal(l, j, &t);
                            let up = self.translate(&self.src.reindex(&f, &t)?.top);
                            let down = self.tgt.reindex(&ff, &t)?.top;
                            r.record(
                                "cell-lifting",
                                || format!("{f:?} along {t}"),
                                Ok((up != down).then(|| format!("{up:?} ≠ {down:?}"))),
                            )?;
                        }
                        for g in self.src.loose_arrows(j, l).into_iter().take(4) {
                            let a = self.translate(&self.src.compose(&g, &f)?);
                            let b = self.tgt.compose(&self.translate(&g), &ff)?;
                            r.record("functoriality", || format!("{g:?} ∘ {f:?}"), Ok((a != b).then(|| "composite not preserved".into())))?;
                        }
                    }
                    let s = self.translate(&self.src.sum(&[f.clone(), f.clone()])?);
                    let t = self.tgt.sum(&[ff.clone(), ff.clone()])?;
                    r.record("sums", || format!("{f:?}"), Ok((s != t).then(|| "sum not preserved".into())))?;
                }
            }
        }
        Ok(r.finish())
    }
}

/// Built-in changes of base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Along {
    Tot,
    Bij,
    Identity,
}

/// Pull a multicategory over `Pb` back along `Tot → Pb` or `Bij → Pb`.
pub fn base_change(m: &Multicat, along: Along) -> Result<Multicat> {
    if m.base() != BaseKind::Pb && along != Along::Identity {
        return Err(Error::Validation(format!("{} is not over Pb", m.name())));
    }
    Ok(match along {
        Along::Identity => m.clone(),
        Along::Tot => Multicat::new(
            OrderedPullback {
                inner: m.clone(),
                objects: m.objects().to_vec(),
            },
            m.bound(),
        ),
        Along::Bij => Multicat::new(
            UnaryPart {
                inner: m.clone(),
                objects: m.objects().to_vec(),
            },
            m.bound(),
        ),
    })
}

/// Arrows of `M` paired with a total order of their domain.
pub struct OrderedPullback {
    inner: Multicat,
    objects: Vec<Obj>,
}

fn split_ordered(a: &Arrow) -> Result<(Arrow, Vec<usize>)> {
    let parts = a.term.as_list().filter(|p| p.len() == 2).ok_or_else(|| structural("malformed ordered arrow"))?;
    let order = parts[1].to_nats().ok_or_else(|| structural("malformed order"))?;
    Ok((Arrow::new(parts[0].clone(), a.dom.clone(), a.cod.clone()), order))
}

fn ordered(a: Arrow, order: &[usize]) -> Arrow {
    Arrow::new(Term::List(vec![a.term, Term::nats(order)]), a.dom, a.cod)
}

impl MulticatOracle for OrderedPullback {
    fn name(&self) -> String {
        format!("ordered({})", self.inner.name())
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn base(&self) -> BaseKind {
        BaseKind::Tot
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        let perms = ordinal::permutations(dom.len());
        let mut out = Vec::new();
        for a in self.inner.hom(dom, cod)? {
            for p in &perms {
                out.push(ordered(a.clone(), p));
            }
        }
        Ok(out)
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(ordered(self.inner.identity(obj)?, &[0]))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        let (x, ord) = split_ordered(a)?;
        Ok(ordered(self.inner.permute(&x, perm)?, &permute_order(&ord, perm)))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let (b, bo) = split_ordered(outer)?;
        let (xs, os): (Vec<Arrow>, Vec<Vec<usize>>) =
            inner.iter().map(split_ordered).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        Ok(ordered(self.inner.compose(&b, &xs)?, &glue_orders(&bo, &os)))
    }
    fn native_order(&self, a: &Arrow) -> Option<Vec<usize>> {
        split_ordered(a).ok().map(|p| p.1)
    }
}

/// The unary arrows of `M`.
pub struct UnaryPart {
    inner: Multicat,
    objects: Vec<Obj>,
}

impl MulticatOracle for UnaryPart {
    fn name(&self) -> String {
        format!("unary({})", self.inner.name())
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn base(&self) -> BaseKind {
        BaseKind::Bij
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if dom.len() != 1 {
            return Ok(vec![]);
        }
        self.inner.hom(dom, cod)
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        self.inner.identity(obj)
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        self.inner.permute(a, perm)
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        self.inner.compose(outer, inner)
    }
}

/// The category of unary arrows; arrow ids are the rendered terms.
pub fn unary_category(m: &Multicat) -> Result<FinCategory> {
    let objects = FinSet::new(m.objects().iter().cloned())?;
    let mut arrows = Vec::new();
    let mut by_id = BTreeMap::new();
    for a in m.arrows_of_arity(1)? {
        let id = format!("{}:{}→{}", a.term, a.dom[0], a.cod);
        arrows.push(ArrowDecl {
            id: id.clone(),
            src: a.dom[0].clone(),
            tgt: a.cod.clone(),
        });
        by_id.insert(id, a);
    }
    let name = |a: &Arrow| format!("{}:{}→{}", a.term, a.dom[0], a.cod);
    let identities = m
        .objects()
        .iter()
        .map(|o| Ok((o.clone(), name(&m.identity(o)?))))
        .collect::<Result<_>>()?;
    let mut failure = None;
    let cat = FinCategory::from_fn(objects, arrows, identities, |g, f| {
        match m.compose(&by_id[g], &[by_id[f].clone()]) {
            Ok(c) => name(&c),
            Err(e) => {
                failure = Some(e);
                String::new()
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    cat
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> FinSet {
        FinSet::new(xs.iter().copied()).unwrap()
    }

    #[test]
    fn oracles_satisfy_their_laws() {
        for o in [oracle_pb(), oracle_bij(), oracle_tot(), oracle_sec()] {
            let r = check_base_laws(&o, 2).unwrap();
            assert!(r.passed(), "{:?}: {:?}", o.kind, r.violations);
            assert!(r.stats.instances > 0);
        }
    }

    #[test]
    fn tot_glues_along_the_outer_order() {
        let o = oracle_tot();
        // f: a,b ↦ x and c ↦ y; g: x,y ↦ *
        let f = FinMap::from_pairs(set(&["a", "b", "c"]), set(&["x", "y"]), [("a", "x"), ("b", "x"), ("c", "y")]).unwrap();
        let mut fo = BTreeMap::new();
        fo.insert("x".to_string(), vec!["a".to_string(), "b".to_string()]);
        fo.insert("y".to_string(), vec!["c".to_string()]);
        let g = FinMap::to_point(&set(&["x", "y"]), "*");
        let mut go = BTreeMap::new();
        go.insert("*".to_string(), vec!["x".to_string(), "y".to_string()]);
        let gf = o
            .compose(
                &BaseLoose::Ordered(OrderedMap::new(g, go).unwrap()),
                &BaseLoose::Ordered(OrderedMap::new(f, fo).unwrap()),
            )
            .unwrap();
        let BaseLoose::Ordered(gf) = gf else { panic!() };
        assert_eq!(gf.fiber_orders["*"], vec!["a", "b", "c"]);
    }

    #[test]
    fn tot_singleton_fibers_preserve_order() {
        let o = oracle_tot();
        let f = FinMap::to_point(&set(&["1", "2"]), "*");
        let mut fo = BTreeMap::new();
        fo.insert("*".to_string(), vec!["2".to_string(), "1".to_string()]);
        let f = BaseLoose::Ordered(OrderedMap::new(f, fo).unwrap());
        let g = o.identity(&set(&["1", "2"]));
        let BaseLoose::Ordered(c) = o.compose(&f, &g).unwrap() else { panic!() };
        assert_eq!(c.fiber_orders["*"], vec!["2", "1"]);
    }

    #[test]
    fn sec_transport_is_a_section() {
        let o = oracle_sec();
        let f = FinMap::from_pairs(set(&["1", "2", "3"]), set(&["x", "y"]), [("1", "x"), ("2", "x"), ("3", "y")]).unwrap();
        let s = FinMap::from_pairs(set(&["x", "y"]), set(&["1", "2", "3"]), [("x", "2"), ("y", "3")]).unwrap();
        let p = BaseLoose::Sectioned(SectionedMap::new(f, s).unwrap());
        let l = FinMap::from_pairs(set(&["u", "v", "w"]), set(&["x", "y"]), [("u", "x"), ("v", "y"), ("w", "x")]).unwrap();
        let cell = o.reindex(&p, &l).unwrap();
        let BaseLoose::Sectioned(top) = &cell.top else { panic!() };
        top.check().unwrap();
        assert_eq!(top.section.apply("u"), "(2,u)");
    }

    #[test]
    fn pasting_matches_composite_pullback() {
        let o = oracle_pb();
        let f = BaseLoose::Plain(FinMap::from_pairs(set(&["1", "2"]), set(&["x"]), [("1", "x"), ("2", "x")]).unwrap());
        let t = FinMap::to_point(&set(&["a", "b"]), "x");
        let u = FinMap::from_pairs(set(&["p"]), set(&["a", "b"]), [("p", "b")]).unwrap();
        let c2 = o.reindex(&o.reindex(&f, &t).unwrap().top, &u).unwrap();
        let direct = o.reindex(&f, &t.after(&u).unwrap()).unwrap();
        assert_eq!(c2.top.map().dom.len(), direct.top.map().dom.len());
        let rel = flatten_pairs(&c2.top.map().dom, &direct.top.map().dom).unwrap();
        assert_eq!(c2.top.relabel(&rel).unwrap(), direct.top);
    }

    #[test]
    fn builtin_morphisms_are_discrete_fibrations() {
        for src in [BaseKind::Tot, BaseKind::Bij, BaseKind::Sec, BaseKind::Pb] {
            let r = BaseMorphism::new(src, BaseKind::Pb).unwrap().check(2).unwrap();
            assert!(r.passed(), "{src}: {:?}", r.violations);
        }
        assert!(BaseMorphism::new(BaseKind::Pb, BaseKind::Tot).is_err());
    }

    #[test]
    fn pair_splitting_respects_nesting() {
        assert_eq!(split_pair("((a,b),c)").unwrap(), ("(a,b)".to_string(), "c".to_string()));
        assert!(split_pair("abc").is_err());
    }
}
