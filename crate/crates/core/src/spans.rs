//! Spans `X ← V → Y` with a loose left leg and a tight right leg, and
//! universal products.
//!
//! In ordinal form a span from `X` to `Y` has an apex `V`, a loose arrow
//! `V → X` over `base: |V| → |X|` given by one component per position of
//! `X`, and a tight map `tight: |V| → |Y|` with `V = Y∘tight`. Spans are
//! kept in a canonical form, so equality is structural equality.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::cartesian::thin;
use crate::error::{bound, structural, within, Result};
use crate::finset::{FinMap, FinSet};
use crate::multicat::{Arrow, LooseArrow, MultiArrow, Multicat, Obj, ObjFamily};
use crate::ordinal;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpanArrow {
    pub source: Vec<Obj>,
    pub target: Vec<Obj>,
    pub apex: Vec<Obj>,
    pub base: Vec<usize>,
    /// `legs[x]` has domain the apex restricted to the fiber of `base` over `x`.
    pub legs: Vec<Arrow>,
    pub tight: Vec<usize>,
}

impl SpanArrow {
    /// Validate the data and return the canonical representative.
    pub fn new(
        m: &Multicat,
        source: Vec<Obj>,
        target: Vec<Obj>,
        base: Vec<usize>,
        legs: Vec<Arrow>,
        tight: Vec<usize>,
    ) -> Result<SpanArrow> {
        if base.len() != tight.len() {
            return Err(structural("the two legs of a span need the same apex"));
        }
        if !ordinal::is_map(&base, source.len()) || !ordinal::is_map(&tight, target.len()) {
            return Err(structural("span legs are not maps into the end families"));
        }
        if legs.len() != source.len() {
            return Err(structural("one loose component per source position is required"));
        }
        let apex: Vec<Obj> = tight.iter().map(|&y| target[y].clone()).collect();
        for (x, fib) in ordinal::fibers(&base, source.len()).iter().enumerate() {
            let want = ordinal::restrict(&apex, fib);
            if legs[x].dom != want || legs[x].cod != source[x] {
                return Err(structural(format!(
                    "component {} over {x} should run ({})→{}",
                    legs[x],
                    want.join(","),
                    source[x]
                )));
            }
        }
        SpanArrow {
            source,
            target,
            apex,
            base,
            legs,
            tight,
        }
        .canonical(m)
    }

    pub fn identity(m: &Multicat, x: &[Obj]) -> Result<SpanArrow> {
        let legs = x.iter().map(|o| m.identity(o)).collect::<Result<Vec<_>>>()?;
        let id = ordinal::identity(x.len());
        SpanArrow::new(m, x.to_vec(), x.to_vec(), id.clone(), legs, id)
    }

    /// The loose arrow `legs` over `base` from `apex` to `x`, as a span `x → apex`.
    pub fn loose(m: &Multicat, x: &[Obj], apex: &[Obj], base: &[usize], legs: Vec<Arrow>) -> Result<SpanArrow> {
        SpanArrow::new(m, x.to_vec(), apex.to_vec(), base.to_vec(), legs, ordinal::identity(apex.len()))
    }

    /// The tight map `t` into `y`, as a span `y∘t → y`.
    pub fn tight(m: &Multicat, y: &[Obj], t: &[usize]) -> Result<SpanArrow> {
        let x: Vec<Obj> = t.iter().map(|&j| y[j].clone()).collect();
        let legs = x.iter().map(|o| m.identity(o)).collect::<Result<Vec<_>>>()?;
        SpanArrow::new(m, x.clone(), y.to_vec(), ordinal::identity(x.len()), legs, t.to_vec())
    }

    /// Move apex position `sigma[k]` to position `k`.
    fn reorder(&self, m: &Multicat, sigma: &[usize]) -> Result<SpanArrow> {
        let base = ordinal::compose(&self.base, sigma);
        let tight = ordinal::compose(&self.tight, sigma);
        let apex = ordinal::restrict(&self.apex, sigma);
        let old = ordinal::fibers(&self.base, self.source.len());
        let new = ordinal::fibers(&base, self.source.len());
        let mut legs = Vec::with_capacity(self.legs.len());
        for x in 0..self.source.len() {
            let ranks: Vec<usize> = new[x]
                .iter()
                .map(|&k| old[x].iter().position(|&v| v == sigma[k]).expect("fiber positions agree"))
                .collect();
            legs.push(if ranks.iter().enumerate().all(|(r, &p)| r == p) {
                self.legs[x].clone()
            } else {
                m.permute(&self.legs[x], &ranks)?
            });
        }
        Ok(SpanArrow {
            source: self.source.clone(),
            target: self.target.clone(),
            apex,
            base,
            legs,
            tight,
        })
    }

    /// Sort the apex by `(base, tight)` and pick the least components among
    /// the reorderings of positions with equal keys.
    pub fn canonical(&self, m: &Multicat) -> Result<SpanArrow> {
        let mut order: Vec<usize> = (0..self.apex.len()).collect();
        order.sort_by_key(|&v| (self.base[v], self.tight[v]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (k, &v) in order.iter().enumerate() {
            let key = (self.base[v], self.tight[v]);
            if k > 0 && (self.base[order[k - 1]], self.tight[order[k - 1]]) == key {
                groups.last_mut().expect("nonempty").push(v);
            } else {
                groups.push(vec![v]);
            }
        }
        let mut best: Option<SpanArrow> = None;
        for sigma in ordinal::grouped_permutations(&groups) {
            let s = self.reorder(m, &sigma)?;
            if best.as_ref().is_none_or(|b| s.legs < b.legs) {
                best = Some(s);
            }
        }
        Ok(best.expect("at least one ordering"))
    }
}

impl std::fmt::Display for SpanArrow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) ←[{}] ({}) →{:?} ({})",
            self.source.join(","),
            crate::multicat::show_all(&self.legs),
            self.apex.join(","),
            self.tight,
            self.target.join(",")
        )
    }
}

/// `s2 ∘ s1` for `s1: X → Y` and `s2: Y → Z`.
///
/// The apex is the pullback of `s1.tight` against `s2.base`; the loose leg of
/// `s2` is reindexed along it and composed under the loose leg of `s1`.
pub fn compose_spans(m: &Multicat, s2: &SpanArrow, s1: &SpanArrow) -> Result<SpanArrow> {
    if s1.target != s2.source {
        return Err(structural(format!(
            "spans do not compose: ({}) is not ({})",
            s1.target.join(","),
            s2.source.join(",")
        )));
    }
    let pb = ordinal::Pullback::new(&s1.tight, &s2.base);
    if pb.len() > m.bound() {
        return Err(bound(format!("composite apex has {} positions", pb.len())));
    }
    let left = pb.left();
    let right = pb.right();
    let v_fibers = ordinal::fibers(&s1.base, s1.source.len());
    let mut legs = Vec::with_capacity(s1.source.len());
    for (x, fib) in v_fibers.iter().enumerate() {
        let lifted: Vec<Arrow> = fib.iter().map(|&v| s2.legs[s1.tight[v]].clone()).collect();
        legs.push(m.compose(&s1.legs[x], &lifted)?);
    }
    let base = ordinal::compose(&s1.base, &left);
    let tight = ordinal::compose(&s2.tight, &right);
    SpanArrow::new(m, s1.source.clone(), s2.target.clone(), base, legs, tight)
}

/// Spans `x → y` with apex size at most `apex_max`, at most `cap` of them.
pub fn spans_between(m: &Multicat, x: &[Obj], y: &[Obj], apex_max: usize, cap: usize) -> Result<Vec<SpanArrow>> {
    let mut out = BTreeSet::new();
    for v in 0..=apex_max {
        for tight in ordinal::all_maps(v, y.len()) {
            let apex: Vec<Obj> = tight.iter().map(|&j| y[j].clone()).collect();
            for base in ordinal::all_maps(v, x.len()) {
                let mut choices = Vec::new();
                for (i, fib) in ordinal::fibers(&base, x.len()).iter().enumerate() {
                    choices.push(thin(m.hom(&ordinal::restrict(&apex, fib), &x[i])?, cap));
                }
                for legs in thin(ordinal::product(&choices), cap) {
                    out.insert(SpanArrow::new(m, x.to_vec(), y.to_vec(), base.clone(), legs, tight.clone())?);
                }
            }
        }
    }
    Ok(thin(out.into_iter().collect(), cap))
}

/// Which characterizations a product witness has been checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub algebraic: Option<bool>,
    pub universal: Option<bool>,
    pub representable: Option<bool>,
}

/// A candidate product of `x` along `f: |x| → |p|`.
///
/// `pi[i]: (p[f i]) → x[i]` are the components of the vertical arrow
/// `f*P → X`; `u[j]` runs from `x` restricted to the fiber over `j` to `p[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub x: Vec<Obj>,
    pub f: Vec<usize>,
    pub p: Vec<Obj>,
    pub pi: Vec<Arrow>,
    pub u: Option<Vec<Arrow>>,
    pub flags: Flags,
}

impl ProductWitness {
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        ordinal::fibers(&self.f, self.p.len())
    }

    pub fn check_shape(&self) -> Result<()> {
        if !ordinal::is_map(&self.f, self.p.len()) || self.f.len() != self.x.len() || self.pi.len() != self.x.len() {
            return Err(structural("product witness does not match its map"));
        }
        for (i, a) in self.pi.iter().enumerate() {
            if a.dom != [self.p[self.f[i]].clone()] || a.cod != self.x[i] {
                return Err(structural(format!("projection {a} should run {}→{}", self.p[self.f[i]], self.x[i])));
            }
        }
        if let Some(us) = &self.u {
            let fibers = self.fibers();
            if us.len() != self.p.len() {
                return Err(structural("one unit component per target position is required"));
            }
            for (j, a) in us.iter().enumerate() {
                if a.dom != ordinal::restrict(&self.x, &fibers[j]) || a.cod != self.p[j] {
                    return Err(structural(format!("unit component {a} has the wrong type")));
                }
            }
        }
        Ok(())
    }

    /// The span `X ← f*P → P`.
    pub fn pi_span(&self, m: &Multicat) -> Result<SpanArrow> {
        SpanArrow::new(
            m,
            self.x.clone(),
            self.p.clone(),
            ordinal::identity(self.x.len()),
            self.pi.clone(),
            self.f.clone(),
        )
    }

    /// `π` as a vertical loose arrow over the index of `x`.
    pub fn pi_loose(&self) -> Result<LooseArrow> {
        let index = FinSet::range(self.x.len());
        let mut components = BTreeMap::new();
        for (i, a) in self.pi.iter().enumerate() {
            let t = index.token(i).to_string();
            components.insert(t.clone(), MultiArrow::from_ordinal(a, &FinSet::singleton(t))?);
        }
        LooseArrow::new(FinMap::identity(&index), components)
    }

    /// `u` as a loose arrow over `f`.
    pub fn u_loose(&self) -> Result<Option<LooseArrow>> {
        let Some(us) = &self.u else { return Ok(None) };
        let (dom, cod) = (FinSet::range(self.x.len()), FinSet::range(self.p.len()));
        let f = FinMap::from_ordinal(&dom, &cod, &self.f);
        let mut components = BTreeMap::new();
        for (j, a) in us.iter().enumerate() {
            let fib = crate::finset::fiber(&f, cod.token(j))?;
            components.insert(cod.token(j).to_string(), MultiArrow::from_ordinal(a, &fib)?);
        }
        LooseArrow::new(f, components).map(Some)
    }
}

/// A product of `xs` on one fiber: an object and one projection per entry.
pub type FiberProduct = (Obj, Vec<Arrow>);

/// Why `(p, pis)` fails to be a universal product of `xs`, tested against
/// every family of length at most the bound. Composites beyond the bound
/// count as a failure.
pub fn universal_defect(m: &Multicat, xs: &[Obj], p: &Obj, pis: &[Arrow]) -> Result<Option<String>> {
    for n in 0..=m.bound() {
        for g in m.families(n) {
            let ts = m.hom(&g, p)?;
            let mut count = 1usize;
            for x in xs {
                count = count.saturating_mul(m.hom(&g, x)?.len());
            }
            let rows = ts
                .iter()
                .map(|t| pis.iter().map(|pi| m.compose(pi, std::slice::from_ref(t))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>();
            let Some(rows) = within(rows)? else {
                return Ok(Some(format!("projections of arrows ({})→{p} leave the bound", g.join(","))));
            };
            let image: BTreeSet<Vec<Arrow>> = rows.into_iter().collect();
            if image.len() < ts.len() {
                return Ok(Some(format!("two arrows ({})→{p} have the same projections", g.join(","))));
            }
            if image.len() != count {
                return Ok(Some(format!(
                    "{} of {count} families ({})→({}) factor through {p}",
                    image.len(),
                    g.join(","),
                    xs.join(",")
                )));
            }
        }
    }
    Ok(None)
}

/// First universal product of `xs` in canonical search order.
pub fn universal_fiber(m: &Multicat, xs: &[Obj]) -> Result<Option<FiberProduct>> {
    for p in m.objects() {
        let choices = xs
            .iter()
            .map(|x| m.hom(std::slice::from_ref(p), x))
            .collect::<Result<Vec<_>>>()?;
        for pis in ordinal::product(&choices) {
            if universal_defect(m, xs, p, &pis)?.is_none() {
                return Ok(Some((p.clone(), pis)));
            }
        }
    }
    Ok(None)
}

/// Per-fiber search results, shared across the maps of one report.
pub type FiberCache = HashMap<Vec<Obj>, Option<FiberProduct>>;

/// Universal product of `x` along `f: |x| → nj`, searched fiber by fiber.
pub fn universal_product(
    m: &Multicat,
    x: &[Obj],
    f: &[usize],
    nj: usize,
    cache: &mut FiberCache,
) -> Result<Option<ProductWitness>> {
    if !ordinal::is_map(f, nj) || f.len() != x.len() {
        return Err(structural(format!("{f:?} is not a map from {} positions to {nj}", x.len())));
    }
    let fibers = ordinal::fibers(f, nj);
    let mut p = Vec::with_capacity(nj);
    let mut pi: Vec<Option<Arrow>> = vec![None; x.len()];
    for fib in &fibers {
        let xs = ordinal::restrict(x, fib);
        let found = match cache.get(&xs) {
            Some(r) => r.clone(),
            None => {
                let r = universal_fiber(m, &xs)?;
                cache.insert(xs, r.clone());
                r
            }
        };
        let Some((pj, pis)) = found else { return Ok(None) };
        p.push(pj);
        for (&i, a) in fib.iter().zip(pis) {
            pi[i] = Some(a);
        }
    }
    Ok(Some(ProductWitness {
        x: x.to_vec(),
        f: f.to_vec(),
        p,
        pi: pi.into_iter().map(|a| a.expect("every position lies in a fiber")).collect(),
        u: None,
        flags: Flags {
            universal: Some(true),
            ..Flags::default()
        },
    }))
}

/// Unbiased front end of [`universal_product`].
pub fn find_universal_product(m: &Multicat, x: &ObjFamily, f: &FinMap) -> Result<Option<ProductWitness>> {
    if f.dom != x.index {
        return Err(structural("map does not start at the family's index"));
    }
    universal_product(m, &x.to_ordinal(), &f.to_ordinal(), f.cod.len(), &mut FiberCache::new())
}

/// Why the span `X ← f*P → P` of `w` fails to be opcartesian, tested directly
/// in spans: against every `h: K → J` with identity right leg and every `Q`
/// over `K`, composing with `w` must be a bijection from spans `P → Q` over
/// `h` to spans `X → Q` over the composite base span.
pub fn span_opcartesian_defect(m: &Multicat, w: &ProductWitness, cap: usize) -> Result<Option<String>> {
    let k = m.bound();
    let s = w.pi_span(m)?;
    let nj = w.p.len();
    for kk in 0..=k {
        for h in thin(ordinal::all_maps(kk, nj), cap) {
            let pb = ordinal::Pullback::new(&w.f, &h);
            if pb.len() > k {
                continue;
            }
            for q in thin(m.families(kk), cap) {
                // candidates P → Q over h
                let mut choices = Vec::new();
                for (j, fib) in ordinal::fibers(&h, nj).iter().enumerate() {
                    choices.push(m.hom(&ordinal::restrict(&q, fib), &w.p[j])?);
                }
                let ks = ordinal::product(&choices);
                let composites = ks
                    .iter()
                    .map(|legs| {
                        let kspan = SpanArrow::new(m, w.p.clone(), q.clone(), h.clone(), legs.clone(), ordinal::identity(kk))?;
                        compose_spans(m, &kspan, &s)
                    })
                    .collect::<Result<Vec<_>>>();
                let Some(composites) = within(composites)? else {
                    return Ok(Some(format!("composites into ({}) over {h:?} leave the bound", q.join(","))));
                };
                let image: BTreeSet<SpanArrow> = composites.into_iter().collect();
                if image.len() < ks.len() {
                    return Ok(Some(format!("two spans over {h:?} into ({}) give the same composite", q.join(","))));
                }
                // every span X → Q over the composite base span
                let (left, right) = (pb.left(), pb.right());
                let apex: Vec<Obj> = right.iter().map(|&l| q[l].clone()).collect();
                let mut choices = Vec::new();
                for (i, fib) in ordinal::fibers(&left, w.x.len()).iter().enumerate() {
                    choices.push(m.hom(&ordinal::restrict(&apex, fib), &w.x[i])?);
                }
                let mut all = BTreeSet::new();
                for legs in ordinal::product(&choices) {
                    all.insert(SpanArrow::new(m, w.x.clone(), q.clone(), left.clone(), legs, right.clone())?);
                }
                if image != all {
                    return Ok(Some(format!(
                        "{} of {} spans into ({}) over {h:?} factor through the product",
                        image.len(),
                        all.len(),
                        q.join(",")
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Whether every family has a universal product along every nondecreasing
/// map within the bound. The direct span criterion is checked on at most
/// `sample` instances, both for found products and for failed searches.
pub fn spanmap_is_opfibration(m: &Multicat, sample: usize) -> Result<Report> {
    let k = m.bound();
    let mut r = Report::new(format!("universal products in {}", m.name()), k);
    let mut cache = FiberCache::new();
    let mut rows = Vec::new();
    let mut instances = Vec::new();
    for n in 0..=k {
        for x in m.families(n) {
            for nj in 0..=k {
                for f in ordinal::sorted_maps(n, nj) {
                    instances.push((x.clone(), f, nj));
                }
            }
        }
    }
    let checked: BTreeSet<usize> = thin((0..instances.len()).collect(), sample).into_iter().collect();
    for (idx, (x, f, nj)) in instances.iter().enumerate() {
        let inst = || format!("X=({}) f={f:?} J={nj}", x.join(","));
        let w = universal_product(m, x, f, *nj, &mut cache)?;
        r.record("universal-product", inst, Ok(w.is_none().then(|| "no universal product".to_string())))?;
        if checked.contains(&idx) {
            let direct = match &w {
                Some(w) => span_opcartesian_defect(m, w, usize::MAX).map(|d| d.map(|why| format!("found product is not opcartesian: {why}"))),
                None => no_opcartesian_candidate(m, x, f, *nj),
            };
            r.record("opcartesian-agreement", inst, direct)?;
        }
        rows.push(serde_json::json!({
            "X": x,
            "f": f,
            "J": nj,
            "universal": w.is_some(),
            "witness": w,
        }));
    }
    r.details.insert("products".into(), serde_json::Value::Array(rows));
    Ok(r.finish())
}

fn no_opcartesian_candidate(m: &Multicat, x: &[Obj], f: &[usize], nj: usize) -> Result<Option<String>> {
    for p in ordinal::product(&vec![m.objects().to_vec(); nj]) {
        let choices = (0..x.len())
            .map(|i| m.hom(std::slice::from_ref(&p[f[i]]), &x[i]))
            .collect::<Result<Vec<_>>>()?;
        for pi in ordinal::product(&choices) {
            let w = ProductWitness {
                x: x.to_vec(),
                f: f.to_vec(),
                p: p.clone(),
                pi,
                u: None,
                flags: Flags::default(),
            };
            if span_opcartesian_defect(m, &w, usize::MAX)?.is_none() {
                return Ok(Some(format!("({}) with {} is opcartesian but was not found", p.join(","), crate::multicat::show_all(&w.pi))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::finset::FinSet;
    use crate::multicat::builtin::{from_category, terminal};

    fn objs(xs: &[&str]) -> Vec<Obj> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn arrow_cat() -> Multicat {
        from_category(&FinCategory::walking_arrow(), 3).unwrap()
    }

    #[test]
    fn identities_are_neutral() {
        let m = arrow_cat();
        let x = objs(&["A", "B"]);
        let y = objs(&["B"]);
        let id_x = SpanArrow::identity(&m, &x).unwrap();
        let id_y = SpanArrow::identity(&m, &y).unwrap();
        for s in spans_between(&m, &x, &y, 2, 40).unwrap() {
            assert_eq!(compose_spans(&m, &s, &id_x).unwrap(), s);
            assert_eq!(compose_spans(&m, &id_y, &s).unwrap(), s);
        }
    }

    #[test]
    fn composition_is_associative() {
        let m = arrow_cat();
        let (x, y, z, w) = (objs(&["A"]), objs(&["A", "B"]), objs(&["B"]), objs(&["B", "B"]));
        let s1 = spans_between(&m, &x, &y, 1, 6).unwrap();
        let s2 = spans_between(&m, &y, &z, 1, 6).unwrap();
        let s3 = spans_between(&m, &z, &w, 1, 6).unwrap();
        let mut checked = 0;
        for a in &s1 {
            for b in &s2 {
                for c in &s3 {
                    let left = compose_spans(&m, c, &compose_spans(&m, b, a).unwrap());
                    let right = compose_spans(&m, &compose_spans(&m, c, b).unwrap(), a);
                    match (left, right) {
                        (Ok(l), Ok(r)) => {
                            assert_eq!(l, r);
                            checked += 1;
                        }
                        (l, r) => assert!(l.unwrap_err().is_bound() && r.unwrap_err().is_bound()),
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn loose_and_tight_parts_compose_as_themselves() {
        let m = arrow_cat();
        let a = objs(&["A"]);
        let f = m.hom(&a, "B").unwrap().remove(0);
        let g = m.identity("B").unwrap();
        let s1 = SpanArrow::loose(&m, &objs(&["B"]), &a, &[0], vec![f.clone()]).unwrap();
        let s2 = SpanArrow::loose(&m, &a, &a, &[0], vec![m.identity("A").unwrap()]).unwrap();
        let c = compose_spans(&m, &s2, &s1).unwrap();
        assert_eq!(c.legs, vec![m.compose(&g, &[f]).unwrap()]);
        let y = objs(&["A", "B"]);
        let t1 = SpanArrow::tight(&m, &y, &[1, 0, 0]).unwrap();
        let t2 = SpanArrow::tight(&m, &objs(&["B", "A", "A"]), &[0, 1]).unwrap();
        assert_eq!(compose_spans(&m, &t1, &t2).unwrap(), SpanArrow::tight(&m, &y, &[1, 0]).unwrap());
    }

    #[test]
    fn canonical_form_ignores_apex_order() {
        let m = terminal(3);
        let x = objs(&["*", "*"]);
        let y = objs(&["*"]);
        let leg2 = m.hom(&objs(&["*", "*"]), "*").unwrap().remove(0);
        let leg1 = m.hom(&objs(&["*"]), "*").unwrap().remove(0);
        let a = SpanArrow::new(&m, x.clone(), y.clone(), vec![0, 1, 0], vec![leg2.clone(), leg1.clone()], vec![0, 0, 0]);
        let b = SpanArrow::new(&m, x, y, vec![1, 0, 0], vec![leg2, leg1], vec![0, 0, 0]);
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn identity_map_gives_the_family_itself() {
        let m = arrow_cat();
        let x = ObjFamily::from_ordinal(&FinSet::range(2), &objs(&["A", "B"])).unwrap();
        let w = find_universal_product(&m, &x, &FinMap::identity(&x.index)).unwrap().unwrap();
        assert_eq!(w.p, objs(&["A", "B"]));
        assert_eq!(w.pi, vec![m.identity("A").unwrap(), m.identity("B").unwrap()]);
    }

    #[test]
    fn discrete_cocartesian_products_need_equal_objects() {
        let c = FinCategory::discrete(&FinSet::new(["A", "B"]).unwrap());
        let m = from_category(&c, 2).unwrap();
        let mut cache = FiberCache::new();
        assert!(universal_product(&m, &objs(&["A", "B"]), &[0, 0], 1, &mut cache).unwrap().is_none());
        assert!(universal_product(&m, &[], &[], 1, &mut cache).unwrap().is_none());
        let w = universal_product(&m, &objs(&["A", "A"]), &[0, 0], 1, &mut cache).unwrap().unwrap();
        assert_eq!(w.p, objs(&["A"]));
        let r = spanmap_is_opfibration(&m, 12).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().all(|v| v.law == "universal-product"), "{:?}", r.violations);
    }

    #[test]
    fn terminal_is_an_opfibration() {
        let r = spanmap_is_opfibration(&terminal(2), 12).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}
