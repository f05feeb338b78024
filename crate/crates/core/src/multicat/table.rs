//! Multicategories given by explicit finite tables.
//!
//! Domains are unbiased families; a domain's positions are its index tokens
//! in sorted order. A composite's domain lists the inner domains one after
//! another, following the sorted index of the outer arrow. A symmetry entry
//! `perm` gives the result's position `k` the argument's position `perm[k]`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::doubleprop::BaseKind;
use crate::error::{bound, structural, Error, Result};
use crate::finset::FinSet;
use crate::multicat::{Arrow, Multicat, MulticatOracle, ObjFamily, Obj};
use crate::ordinal;
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub id: String,
    pub dom: ObjFamily,
    pub cod: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeRow {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryRow {
    pub arrow: String,
    pub perm: Vec<usize>,
    pub result: String,
}

/// Serialized form of a table multicategory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePayload {
    pub objects: FinSet,
    #[serde(default)]
    pub base: BaseKind,
    pub arrows: Vec<ArrowEntry>,
    pub identities: BTreeMap<Obj, String>,
    #[serde(default)]
    pub compose: Vec<ComposeRow>,
    #[serde(default)]
    pub symmetry: Vec<SymmetryRow>,
}

#[derive(Clone, Debug)]
pub struct TableMulticat {
    objects: Vec<Obj>,
    base: BaseKind,
    arrows: BTreeMap<String, Arrow>,
    homs: HashMap<(Vec<Obj>, Obj), Vec<Arrow>>,
    identities: BTreeMap<Obj, String>,
    compose: HashMap<(String, Vec<String>), String>,
    symmetry: HashMap<(String, Vec<usize>), String>,
    limit: usize,
}

fn id_of(a: &Arrow) -> Result<&str> {
    a.term
        .as_sym()
        .ok_or_else(|| structural(format!("{a} is not a table arrow")))
}

impl TableMulticat {
    /// Load a payload whose tables cover arities up to `limit`.
    pub fn new(p: &TablePayload, limit: usize) -> Result<TableMulticat> {
        let objects: Vec<Obj> = p.objects.tokens().to_vec();
        let mut arrows = BTreeMap::new();
        let mut homs: HashMap<(Vec<Obj>, Obj), Vec<Arrow>> = HashMap::new();
        // arrows above a lowered bound are dropped together with every row that mentions them
        let mut dropped = std::collections::HashSet::new();
        for e in &p.arrows {
            let dom = ObjFamily::new(e.dom.index.clone(), e.dom.assign.clone())?.to_ordinal();
            if let Some(o) = dom.iter().chain([&e.cod]).find(|o| !p.objects.contains(o)) {
                return Err(structural(format!("arrow {} uses unknown object {o}", e.id)));
            }
            if dom.len() > limit {
                dropped.insert(e.id.as_str());
                continue;
            }
            let a = Arrow::new(Term::sym(e.id.clone()), dom.clone(), e.cod.clone());
            if arrows.insert(e.id.clone(), a.clone()).is_some() {
                return Err(structural(format!("arrow {} declared twice", e.id)));
            }
            homs.entry((dom, e.cod.clone())).or_default().push(a);
        }
        for o in &objects {
            let id = p
                .identities
                .get(o)
                .ok_or_else(|| structural(format!("object {o} has no identity")))?;
            match arrows.get(id) {
                Some(a) if a.dom == [o.clone()] && &a.cod == o => {}
                _ => return Err(structural(format!("identity {id} of {o} has the wrong signature"))),
            }
        }
        let get = |id: &str| -> Result<&Arrow> {
            arrows
                .get(id)
                .ok_or_else(|| structural(format!("unknown arrow {id}")))
        };
        let mut compose = HashMap::new();
        for r in &p.compose {
            if [&r.outer, &r.result].into_iter().chain(&r.inner).any(|i| dropped.contains(i.as_str())) {
                continue;
            }
            let outer = get(&r.outer)?;
            let inner: Vec<&Arrow> = r.inner.iter().map(|i| get(i)).collect::<Result<_>>()?;
            let res = get(&r.result)?;
            if inner.len() != outer.arity()
                || inner.iter().zip(&outer.dom).any(|(a, o)| &a.cod != o)
            {
                return Err(structural(format!("compose row for {} is not composable", r.outer)));
            }
            let dom: Vec<Obj> = inner.iter().flat_map(|a| a.dom.iter().cloned()).collect();
            if res.dom != dom || res.cod != outer.cod {
                return Err(structural(format!(
                    "composite {} of {}∘{:?} has the wrong signature",
                    r.result, r.outer, r.inner
                )));
            }
            if compose
                .insert((r.outer.clone(), r.inner.clone()), r.result.clone())
                .is_some()
            {
                return Err(structural(format!("compose row for {}∘{:?} given twice", r.outer, r.inner)));
            }
        }
        let mut symmetry = HashMap::new();
        for r in &p.symmetry {
            if dropped.contains(r.arrow.as_str()) || dropped.contains(r.result.as_str()) {
                continue;
            }
            let a = get(&r.arrow)?;
            let res = get(&r.result)?;
            if !ordinal::is_bijection(&r.perm, a.arity()) {
                return Err(structural(format!("symmetry row for {} has a non-permutation", r.arrow)));
            }
            let dom: Vec<Obj> = r.perm.iter().map(|&k| a.dom[k].clone()).collect();
            if res.dom != dom || res.cod != a.cod {
                return Err(structural(format!("symmetry row for {} has the wrong signature", r.arrow)));
            }
            if symmetry
                .insert((r.arrow.clone(), r.perm.clone()), r.result.clone())
                .is_some()
            {
                return Err(structural(format!("symmetry row for {} {:?} given twice", r.arrow, r.perm)));
            }
        }
        Ok(TableMulticat {
            objects,
            base: p.base,
            arrows,
            homs,
            identities: p.identities.clone(),
            compose,
            symmetry,
            limit,
        })
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.get(id)
    }
}

impl MulticatOracle for TableMulticat {
    fn name(&self) -> String {
        "table".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn base(&self) -> BaseKind {
        self.base
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if dom.len() > self.limit {
            return Err(bound(format!("table covers arities up to {}", self.limit)));
        }
        Ok(self
            .homs
            .get(&(dom.to_vec(), cod.to_string()))
            .cloned()
            .unwrap_or_default())
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(self.arrows[&self.identities[obj]].clone())
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            return Ok(a.clone());
        }
        let id = id_of(a)?;
        let r = self
            .symmetry
            .get(&(id.to_string(), perm.to_vec()))
            .ok_or_else(|| structural(format!("symmetry table is not total: {id} {perm:?} missing")))?;
        Ok(self.arrows[r].clone())
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let n: usize = inner.iter().map(Arrow::arity).sum();
        if n > self.limit {
            return Err(bound(format!("composite of arity {n} beyond the table")));
        }
        let key = (
            id_of(outer)?.to_string(),
            inner.iter().map(|a| id_of(a).map(str::to_string)).collect::<Result<Vec<_>>>()?,
        );
        let r = self.compose.get(&key).ok_or_else(|| {
            structural(format!(
                "composition table is not total: {}∘({}) missing",
                key.0,
                key.1.join(",")
            ))
        })?;
        Ok(self.arrows[r].clone())
    }
}

/// Load a table payload as a multicategory.
pub fn from_table(p: &TablePayload, bound: usize) -> Result<Multicat> {
    Ok(Multicat::new(TableMulticat::new(p, bound)?, bound))
}

/// Tabulate every arrow, composite and symmetry of `m` up to its bound.
pub fn materialize(m: &Multicat) -> Result<TablePayload> {
    let k = m.bound();
    let arrows = m.arrows_upto(k)?;
    let mut ids: BTreeMap<Arrow, String> = BTreeMap::new();
    let mut taken: BTreeMap<String, usize> = BTreeMap::new();
    for a in &arrows {
        let base = a.term.to_string();
        let n = taken.entry(base.clone()).or_insert(0);
        let id = if *n == 0 { base.clone() } else { format!("{base}#{n}") };
        *n += 1;
        ids.insert(a.clone(), id);
    }
    let name = |a: &Arrow| -> Result<String> {
        ids.get(a)
            .cloned()
            .ok_or_else(|| Error::TheoremViolation(format!("{a} escaped the enumeration")))
    };
    let entries = arrows
        .iter()
        .map(|a| {
            Ok(ArrowEntry {
                id: name(a)?,
                dom: ObjFamily::from_ordinal(&FinSet::range(a.arity()), &a.dom)?,
                cod: a.cod.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let identities = m
        .objects()
        .iter()
        .map(|o| Ok((o.clone(), name(&m.identity(o)?)?)))
        .collect::<Result<_>>()?;
    let mut by_cod: BTreeMap<&Obj, Vec<&Arrow>> = BTreeMap::new();
    for a in &arrows {
        by_cod.entry(&a.cod).or_default().push(a);
    }
    let mut compose = Vec::new();
    for outer in &arrows {
        for inner in tuples_within(&outer.dom, &by_cod, k) {
            let inner: Vec<Arrow> = inner.into_iter().cloned().collect();
            let r = m.compose(outer, &inner)?;
            compose.push(ComposeRow {
                outer: name(outer)?,
                inner: inner.iter().map(name).collect::<Result<_>>()?,
                result: name(&r)?,
            });
        }
    }
    let mut symmetry = Vec::new();
    for a in &arrows {
        for p in ordinal::permutations(a.arity()).into_iter().skip(1) {
            let r = m.permute(a, &p)?;
            symmetry.push(SymmetryRow {
                arrow: name(a)?,
                perm: p,
                result: name(&r)?,
            });
        }
    }
    Ok(TablePayload {
        objects: FinSet::new(m.objects().iter().cloned())?,
        base: m.base(),
        arrows: entries,
        identities,
        compose,
        symmetry,
    })
}

/// Tuples of arrows landing in `targets` with total arity at most `budget`.
pub(crate) fn tuples_within<'a>(
    targets: &[Obj],
    by_cod: &BTreeMap<&Obj, Vec<&'a Arrow>>,
    budget: usize,
) -> Vec<Vec<&'a Arrow>> {
    fn go<'a>(
        targets: &[Obj],
        by_cod: &BTreeMap<&Obj, Vec<&'a Arrow>>,
        budget: usize,
        prefix: &mut Vec<&'a Arrow>,
        out: &mut Vec<Vec<&'a Arrow>>,
    ) {
        let Some((first, rest)) = targets.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for a in by_cod.get(first).into_iter().flatten() {
            if a.arity() <= budget {
                prefix.push(a);
                go(rest, by_cod, budget - a.arity(), prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(targets, by_cod, budget, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::builtin::terminal;

    #[test]
    fn terminal_round_trips_through_a_table() {
        let m = terminal(3);
        let p = materialize(&m).unwrap();
        assert_eq!(p.arrows.len(), 4);
        let t = from_table(&p, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(t.arrows_of_arity(n).unwrap().len(), 1);
        }
        let again = materialize(&t).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn missing_rows_are_structural() {
        let mut p = materialize(&terminal(2)).unwrap();
        p.compose.retain(|r| !(r.outer == "!2" && r.inner == ["!1", "!1"]));
        let t = from_table(&p, 2).unwrap();
        let two = t.arrows_of_arity(2).unwrap().remove(0);
        let one = t.identity("*").unwrap();
        let r = t.compose(&two, &[one.clone(), one]);
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn beyond_the_table_is_out_of_range() {
        let t = from_table(&materialize(&terminal(2)).unwrap(), 2).unwrap();
        let two = t.arrows_of_arity(2).unwrap().remove(0);
        let r = t.compose(&two, &[two.clone(), two.clone()]);
        assert!(matches!(r, Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn bad_signatures_are_rejected() {
        let mut p = materialize(&terminal(2)).unwrap();
        let row = p.compose.iter_mut().find(|r| r.inner.len() == 2).unwrap();
        row.result = "!1".into();
        assert!(matches!(TableMulticat::new(&p, 2), Err(Error::Structural(_))));
    }
}
