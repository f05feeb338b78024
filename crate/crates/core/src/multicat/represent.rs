//! Opcartesian arrows, representability, rigidity and the Burnside quotient.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::multicat::algebra::CommMonoid;
use crate::multicat::builtin::{from_comm_monoid, glue_orders, permute_order};
use crate::multicat::{Arrow, LooseArrow, Multicat, MultiArrow, ObjFamily, Obj};
use crate::ordinal;
use crate::report::Report;

/// Why a loose arrow `u` over `f` fails to be stably opcartesian, if it does.
///
/// `us[j]` is the component over `j` with domain `x` restricted to the fiber.
/// Stability is tested against every reindexing, which amounts to every
/// multiset of components; multisets whose domain exceeds the bound are skipped.
/// A factorization that cannot be computed within the bound counts as a defect.
pub fn opcartesian_defect(m: &Multicat, x: &[Obj], f: &[usize], us: &[Arrow]) -> Result<Option<String>> {
    let k = m.bound();
    let fibers = ordinal::fibers(f, us.len());
    for r in 0..=k {
        for js in ordinal::sorted_maps(r, us.len()) {
            if let Some(why) = factor_defect(m, x, &fibers, us, &js)? {
                return Ok(Some(why));
            }
        }
    }
    Ok(None)
}

fn factor_defect(
    m: &Multicat,
    x: &[Obj],
    fibers: &[Vec<usize>],
    us: &[Arrow],
    js: &[usize],
) -> Result<Option<String>> {
    let target: Vec<Obj> = js
        .iter()
        .flat_map(|&j| fibers[j].iter().map(|&i| x[i].clone()))
        .collect();
    if target.len() > m.bound() {
        return Ok(None);
    }
    let ps: Vec<Obj> = js.iter().map(|&j| us[j].cod.clone()).collect();
    let inner: Vec<Arrow> = js.iter().map(|&j| us[j].clone()).collect();
    for z in m.objects() {
        let expected: BTreeSet<Arrow> = m.hom(&target, z)?.into_iter().collect();
        let mut image = BTreeSet::new();
        let ts = m.hom(&ps, z)?;
        for t in &ts {
            match crate::error::within(m.compose(t, &inner))? {
                Some(c) => image.insert(c),
                None => return Ok(Some(format!("factoring through ({}) leaves the bound", ps.join(",")))),
            };
        }
        if image.len() != ts.len() {
            return Ok(Some(format!("two factorizations through ({}) into {z}", ps.join(","))));
        }
        if image != expected {
            return Ok(Some(format!(
                "an arrow ({})→{z} does not factor through ({})",
                target.join(","),
                ps.join(",")
            )));
        }
    }
    Ok(None)
}

/// First stably opcartesian loose arrow out of `x` over `f: n → nj`, one component per fiber.
pub fn search_opcartesian(m: &Multicat, x: &[Obj], f: &[usize], nj: usize) -> Result<Option<Vec<Arrow>>> {
    let fibers = ordinal::fibers(f, nj);
    let mut choices = Vec::with_capacity(nj);
    for fib in &fibers {
        let dom = ordinal::restrict(x, fib);
        let mut ok = Vec::new();
        for p in m.objects() {
            for u in m.hom(&dom, p)? {
                // a single component must already be opcartesian on its own fiber
                let single = vec![u.clone()];
                let one: Vec<usize> = vec![0; dom.len()];
                if opcartesian_defect(m, &dom, &one, &single)?.is_none() {
                    ok.push(u);
                }
            }
        }
        if ok.is_empty() {
            return Ok(None);
        }
        choices.push(ok);
    }
    for us in ordinal::product(&choices) {
        if opcartesian_defect(m, x, f, &us)?.is_none() {
            return Ok(Some(us));
        }
    }
    Ok(None)
}

/// Unbiased front end of [`search_opcartesian`].
pub fn find_opcartesian(m: &Multicat, x: &ObjFamily, f: &FinMap) -> Result<Option<LooseArrow>> {
    if f.dom != x.index {
        return Err(crate::error::structural("map does not start at the family's index"));
    }
    let xs = x.to_ordinal();
    let Some(us) = search_opcartesian(m, &xs, &f.to_ordinal(), f.cod.len())? else {
        return Ok(None);
    };
    let mut components = BTreeMap::new();
    for (j, u) in f.cod.iter().zip(us) {
        let fib = crate::finset::fiber(f, j)?;
        components.insert(j.clone(), MultiArrow::from_ordinal(&u, &fib)?);
    }
    Ok(Some(LooseArrow::new(f.clone(), components)?))
}

/// Existence of stably opcartesian arrows for every family and every
/// nondecreasing map within the bound.
pub fn is_representable(m: &Multicat) -> Result<Report> {
    let k = m.bound();
    let mut r = Report::new(format!("representable {}", m.name()), k);
    for n in 0..=k {
        for x in m.families(n) {
            for nj in 0..=k {
                for f in ordinal::sorted_maps(n, nj) {
                    let found = search_opcartesian(m, &x, &f, nj);
                    r.record(
                        "opcartesian",
                        || format!("X=({}) f={f:?} J={nj}", x.join(",")),
                        found.map(|o| o.is_none().then(|| "no stably opcartesian arrow".to_string())),
                    )?;
                }
            }
        }
    }
    Ok(r.finish())
}

/// Outcome of the rigidity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PlainStructure {
    /// A total order on the domain of every arrow, equivariant by construction.
    Lift {
        orders: Vec<(String, Vec<usize>)>,
        /// Whether the orders also glue along composition.
        composition_compatible: bool,
    },
    /// An arrow fixed by a nontrivial permutation.
    Witness { arrow: String, stabilizer: Vec<usize> },
}

/// Decide whether every symmetry stabilizer is trivial and, if so, choose orders.
pub fn plain_structure(m: &Multicat) -> Result<PlainStructure> {
    let arrows = m.arrows_upto(m.bound())?;
    for a in &arrows {
        for sigma in ordinal::permutations(a.arity()).into_iter().skip(1) {
            if m.permute(a, &sigma)? == *a {
                return Ok(PlainStructure::Witness {
                    arrow: a.to_string(),
                    stabilizer: sigma,
                });
            }
        }
    }
    let mut order: BTreeMap<Arrow, Vec<usize>> = BTreeMap::new();
    for a in &arrows {
        if order.contains_key(a) {
            continue;
        }
        if let Some(o) = m.native_order(a) {
            order.insert(a.clone(), o);
            continue;
        }
        // orbit representative is the least arrow of its orbit
        let perms = ordinal::permutations(a.arity());
        let orbit: Vec<Arrow> = perms.iter().map(|s| m.permute(a, s)).collect::<Result<_>>()?;
        let rep = orbit.into_iter().min().expect("orbit contains the arrow");
        let id = ordinal::identity(a.arity());
        for s in &perms {
            let moved = m.permute(&rep, s)?;
            order.entry(moved).or_insert_with(|| permute_order(&id, s));
        }
    }
    let mut compatible = true;
    let by_cod = {
        let mut by: BTreeMap<&Obj, Vec<&Arrow>> = BTreeMap::new();
        for a in &arrows {
            by.entry(&a.cod).or_default().push(a);
        }
        by
    };
    'outer: for b in &arrows {
        for alphas in crate::multicat::table::tuples_within(&b.dom, &by_cod, m.bound()) {
            let alphas: Vec<Arrow> = alphas.into_iter().cloned().collect();
            let c = m.compose(b, &alphas)?;
            let glued = glue_orders(&order[b], &alphas.iter().map(|a| order[a].clone()).collect::<Vec<_>>());
            if order.get(&c) != Some(&glued) {
                compatible = false;
                break 'outer;
            }
        }
    }
    Ok(PlainStructure::Lift {
        orders: order.into_iter().map(|(a, o)| (a.to_string(), o)).collect(),
        composition_compatible: compatible,
    })
}

/// Isomorphism classes of objects, and for a representable multicategory the
/// commutative monoid they form under the tensor.
#[derive(Clone, Debug)]
pub struct Burnside {
    /// Object ↦ least object of its class.
    pub classes: BTreeMap<Obj, Obj>,
    pub monoid: Option<CommMonoid>,
    pub algebra: Option<Multicat>,
}

fn is_iso(m: &Multicat, a: &Arrow, b: &Arrow) -> Result<bool> {
    Ok(m.compose(b, std::slice::from_ref(a))? == m.identity(&a.dom[0])? && m.compose(a, std::slice::from_ref(b))? == m.identity(&a.cod)?)
}

pub fn burnside(m: &Multicat) -> Result<Burnside> {
    let objs = m.objects().to_vec();
    let mut classes: BTreeMap<Obj, Obj> = objs.iter().map(|o| (o.clone(), o.clone())).collect();
    for a in &objs {
        for b in &objs {
            if b <= a {
                continue;
            }
            'found: for u in m.hom(std::slice::from_ref(a), b)? {
                for v in m.hom(std::slice::from_ref(b), a)? {
                    if is_iso(m, &u, &v)? {
                        let (ra, rb) = (classes[a].clone(), classes[b].clone());
                        let low = ra.clone().min(rb.clone());
                        for c in classes.values_mut() {
                            if *c == ra || *c == rb {
                                *c = low.clone();
                            }
                        }
                        break 'found;
                    }
                }
            }
        }
    }
    if m.bound() < 2 || !is_representable(m)?.passed() {
        return Ok(Burnside {
            classes,
            monoid: None,
            algebra: None,
        });
    }
    let tensor = |x: &[Obj]| -> Result<Obj> {
        let f = vec![0; x.len()];
        let us = search_opcartesian(m, x, &f, 1)?
            .ok_or_else(|| Error::TheoremViolation("representable but no tensor found".into()))?;
        Ok(classes[&us[0].cod].clone())
    };
    let reps: BTreeSet<Obj> = classes.values().cloned().collect();
    let carrier = FinSet::new(reps.iter().cloned())?;
    let zero = tensor(&[])?;
    let mut add = BTreeMap::new();
    for a in &reps {
        let mut row = BTreeMap::new();
        for b in &reps {
            row.insert(b.clone(), tensor(&[a.clone(), b.clone()])?);
        }
        add.insert(a.clone(), row);
    }
    let mon = CommMonoid::new(carrier, zero, add)?;
    let algebra = from_comm_monoid(&mon, m.bound())?;
    Ok(Burnside {
        classes,
        monoid: Some(mon),
        algebra: Some(algebra),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::multicat::algebra::is_algebra;
    use crate::multicat::builtin::{from_category, orders, terminal};

    fn set(xs: &[&str]) -> FinSet {
        FinSet::new(xs.iter().copied()).unwrap()
    }

    #[test]
    fn identity_map_finds_identity_arrows() {
        let m = from_category(&FinCategory::walking_arrow(), 3).unwrap();
        let x = ObjFamily::from_ordinal(&set(&["1", "2"]), &["A".into(), "B".into()]).unwrap();
        let u = find_opcartesian(&m, &x, &FinMap::identity(&x.index)).unwrap().unwrap();
        assert_eq!(u.components["1"].to_ordinal(), m.identity("A").unwrap());
        assert_eq!(u.components["2"].to_ordinal(), m.identity("B").unwrap());
    }

    #[test]
    fn discrete_two_objects_is_not_representable() {
        let m = from_category(&FinCategory::discrete(&set(&["A", "B"])), 2).unwrap();
        let r = is_representable(&m).unwrap();
        assert!(!r.passed());
        let x = ObjFamily::from_ordinal(&set(&["1", "2"]), &["A".into(), "B".into()]).unwrap();
        let f = FinMap::to_point(&x.index, "*");
        assert!(find_opcartesian(&m, &x, &f).unwrap().is_none());
    }

    #[test]
    fn category_with_sums_is_representable() {
        let c = FinCategory::preorder(&set(&["0", "A", "B", "T"]), &[("0", "A"), ("0", "B"), ("A", "T"), ("B", "T"), ("0", "T")]).unwrap();
        let m = from_category(&c, 2).unwrap();
        assert!(is_representable(&m).unwrap().passed());
        let x = ObjFamily::from_ordinal(&set(&["1", "2"]), &["A".into(), "B".into()]).unwrap();
        let u = find_opcartesian(&m, &x, &FinMap::to_point(&x.index, "*")).unwrap().unwrap();
        assert_eq!(u.components["*"].cod, "T");
    }

    #[test]
    fn terminal_has_a_symmetric_arrow() {
        match plain_structure(&terminal(2)).unwrap() {
            PlainStructure::Witness { stabilizer, .. } => assert_eq!(stabilizer, vec![1, 0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orders_are_rigid() {
        match plain_structure(&orders(3)).unwrap() {
            PlainStructure::Lift {
                orders,
                composition_compatible,
            } => {
                assert!(composition_compatible);
                assert_eq!(orders.len(), 1 + 1 + 2 + 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn burnside_of_a_thin_sum_category() {
        let c = FinCategory::preorder(&set(&["0", "A", "A'"]), &[("0", "A"), ("0", "A'"), ("A", "A'"), ("A'", "A")]).unwrap();
        let m = from_category(&c, 2).unwrap();
        let b = burnside(&m).unwrap();
        assert_eq!(b.classes["A'"], "A");
        let mon = b.monoid.unwrap();
        assert_eq!(mon.zero, "0");
        assert_eq!(mon.plus("A", "A"), "A");
        assert!(is_algebra(&b.algebra.unwrap()).unwrap());
    }

    #[test]
    fn burnside_of_terminal_is_terminal_monoid() {
        let b = burnside(&terminal(2)).unwrap();
        let mon = b.monoid.unwrap();
        assert_eq!(mon.carrier.len(), 1);
    }
}
