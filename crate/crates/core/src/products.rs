//! Algebraic products and conversions between the three product notions:
//! algebraic (two reindexing equations), universal (unique factorization)
//! and representable (stably opcartesian `u`).
//!
//! For a witness over `f` and a fiber `F` over `j` with `X|F → P_j`:
//!
//! * `Γ(u_j ∘ (π_i)_{i∈F}, F → 1) = id_{P_j}`
//! * `π_b ∘ u_j = Γ(id_{X_b}, 1 → F)` for every `b ∈ F`, the map picking `b`.

use std::collections::{BTreeMap, HashMap};

use crate::cartesian::{thin, CartStructure};
use crate::error::{structural, within, Error, Result};
use crate::multicat::represent::{opcartesian_defect, search_opcartesian};
use crate::multicat::{show_all, Arrow, Multicat, Obj};
use crate::ordinal;
use crate::report::Report;
use crate::spans::{universal_defect, universal_product, FiberCache, Flags, ProductWitness};

fn theorem(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

/// Why `(p, pis, u)` fails the two equations on one fiber `xs`.
///
/// Equations that need arities beyond the bound count as failed.
pub fn fiber_defect(cs: &CartStructure, xs: &[Obj], p: &Obj, pis: &[Arrow], u: &Arrow) -> Result<Option<String>> {
    Ok(within(fiber_equations(cs, xs, p, pis, u))?.unwrap_or_else(|| Some("equations leave the bound".into())))
}

fn fiber_equations(cs: &CartStructure, xs: &[Obj], p: &Obj, pis: &[Arrow], u: &Arrow) -> Result<Option<String>> {
    let m = cs.host();
    let c = if xs.is_empty() { u.clone() } else { m.compose(u, pis)? };
    let collapsed = cs.push(&c, &vec![0; xs.len()], std::slice::from_ref(p))?;
    let id = m.identity(p)?;
    if collapsed != id {
        return Ok(Some(format!("unit triangle: reindexing {c} to one input gives {collapsed}, not {id}")));
    }
    for (b, pi) in pis.iter().enumerate() {
        let lhs = m.compose(pi, std::slice::from_ref(u))?;
        let rhs = cs.push(&m.identity(&xs[b])?, &[b], xs)?;
        if lhs != rhs {
            return Ok(Some(format!("projection triangle at {b}: {pi} after {u} is {lhs}, not {rhs}")));
        }
    }
    Ok(None)
}

/// Why `w` fails to be an algebraic product, if it does.
pub fn algebraic_defect(cs: &CartStructure, w: &ProductWitness) -> Result<Option<String>> {
    w.check_shape()?;
    let us = w.u.as_ref().ok_or_else(|| structural("an algebraic product needs its unit u"))?;
    for (j, fib) in w.fibers().iter().enumerate() {
        let xs = ordinal::restrict(&w.x, fib);
        let pis = ordinal::restrict(&w.pi, fib);
        if let Some(why) = fiber_defect(cs, &xs, &w.p[j], &pis, &us[j])? {
            return Ok(Some(format!("over {j}: {why}")));
        }
    }
    Ok(None)
}

pub fn check_algebraic_product(cs: &CartStructure, w: &ProductWitness) -> Result<bool> {
    Ok(algebraic_defect(cs, w)?.is_none())
}

/// An algebraic product of `xs` on one fiber: object, projections and unit.
pub type AlgebraicFiber = (Obj, Vec<Arrow>, Arrow);

/// First algebraic product of `xs` in canonical search order.
pub fn algebraic_fiber(cs: &CartStructure, xs: &[Obj]) -> Result<Option<AlgebraicFiber>> {
    let m = cs.host();
    for p in m.objects() {
        let choices = xs
            .iter()
            .map(|x| m.hom(std::slice::from_ref(p), x))
            .collect::<Result<Vec<_>>>()?;
        let units = m.hom(xs, p)?;
        for pis in ordinal::product(&choices) {
            for u in &units {
                if fiber_defect(cs, xs, p, &pis, u)?.is_none() {
                    return Ok(Some((p.clone(), pis, u.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Algebraic product of `x` along `f: |x| → nj`, searched fiber by fiber.
pub fn algebraic_product(
    cs: &CartStructure,
    x: &[Obj],
    f: &[usize],
    nj: usize,
    cache: &mut HashMap<Vec<Obj>, Option<AlgebraicFiber>>,
) -> Result<Option<ProductWitness>> {
    if !ordinal::is_map(f, nj) || f.len() != x.len() {
        return Err(structural(format!("{f:?} is not a map from {} positions to {nj}", x.len())));
    }
    let mut p = Vec::new();
    let mut us = Vec::new();
    let mut pi: Vec<Option<Arrow>> = vec![None; x.len()];
    for fib in ordinal::fibers(f, nj) {
        let xs = ordinal::restrict(x, &fib);
        let found = match cache.get(&xs) {
            Some(r) => r.clone(),
            None => {
                let r = algebraic_fiber(cs, &xs)?;
                cache.insert(xs, r.clone());
                r
            }
        };
        let Some((pj, pis, u)) = found else { return Ok(None) };
        p.push(pj);
        us.push(u);
        for (&i, a) in fib.iter().zip(pis) {
            pi[i] = Some(a);
        }
    }
    Ok(Some(ProductWitness {
        x: x.to_vec(),
        f: f.to_vec(),
        p,
        pi: pi.into_iter().map(|a| a.expect("every position lies in a fiber")).collect(),
        u: Some(us),
        flags: Flags {
            algebraic: Some(true),
            ..Flags::default()
        },
    }))
}

fn require_algebraic(cs: &CartStructure, w: &ProductWitness) -> Result<()> {
    match algebraic_defect(cs, w)? {
        None => Ok(()),
        Some(why) => Err(structural(format!("not an algebraic product: {why}"))),
    }
}

/// Build the factorization `t = Γ(u∘ρ)` of every test family `ρ` through
/// the projections and check it is the only one. Returns `w` marked universal.
pub fn ap_to_up(cs: &CartStructure, w: &ProductWitness) -> Result<ProductWitness> {
    require_algebraic(cs, w)?;
    let m = cs.host();
    let us = w.u.as_ref().expect("checked");
    for (j, fib) in w.fibers().iter().enumerate() {
        let xs = ordinal::restrict(&w.x, fib);
        let pis = ordinal::restrict(&w.pi, fib);
        let p = &w.p[j];
        for n in 0..=m.bound() {
            for g in m.families(n) {
                let Some(projections) = within(projection_table(m, &pis, &g, p))? else { continue };
                let choices = xs.iter().map(|x| m.hom(&g, x)).collect::<Result<Vec<_>>>()?;
                for rho in ordinal::product(&choices) {
                    let built = if xs.is_empty() {
                        cs.push(&us[j], &[], &g)
                    } else {
                        let collapse: Vec<usize> = (0..xs.len()).flat_map(|_| 0..g.len()).collect();
                        m.compose(&us[j], &rho).and_then(|c| cs.push(&c, &collapse, &g))
                    };
                    let inst = || format!("over {j} with test ({}) and ρ = {}", g.join(","), show_all(&rho));
                    let matches = projections.get(&rho).map_or(&[][..], |v| v.as_slice());
                    match built {
                        Ok(t) => {
                            if !matches.contains(&t) {
                                return Err(theorem(format!("t = Γ(uρ) = {t} does not project to ρ {}", inst())));
                            }
                        }
                        Err(e) if e.is_bound() => {}
                        Err(e) => return Err(e),
                    }
                    if matches.len() != 1 {
                        return Err(theorem(format!("{} factorizations {}", matches.len(), inst())));
                    }
                }
            }
        }
    }
    let mut out = w.clone();
    out.flags.universal = Some(true);
    out.flags.algebraic = Some(true);
    Ok(out)
}

fn projection_table(m: &Multicat, pis: &[Arrow], g: &[Obj], p: &Obj) -> Result<HashMap<Vec<Arrow>, Vec<Arrow>>> {
    let mut table: HashMap<Vec<Arrow>, Vec<Arrow>> = HashMap::new();
    for t in m.hom(g, p)? {
        let row = pis
            .iter()
            .map(|pi| m.compose(pi, std::slice::from_ref(&t)))
            .collect::<Result<Vec<_>>>()?;
        table.entry(row).or_default().push(t);
    }
    Ok(table)
}

/// Build the factorization `t = Γ(v∘π)` of every arrow `v` out of a multiset
/// of fibers through the matching components of `u`, and check it is the
/// only one. Returns the components of `u`.
pub fn ap_to_r(cs: &CartStructure, w: &ProductWitness) -> Result<Vec<Arrow>> {
    require_algebraic(cs, w)?;
    let m = cs.host();
    let us = w.u.clone().expect("checked");
    let fibers = w.fibers();
    for r in 0..=m.bound() {
        for js in ordinal::sorted_maps(r, us.len()) {
            let positions: Vec<usize> = js.iter().flat_map(|&j| fibers[j].iter().copied()).collect();
            if positions.len() > m.bound() {
                continue;
            }
            let target = ordinal::restrict(&w.x, &positions);
            let ps: Vec<Obj> = js.iter().map(|&j| w.p[j].clone()).collect();
            let inner: Vec<Arrow> = js.iter().map(|&j| us[j].clone()).collect();
            let pis = ordinal::restrict(&w.pi, &positions);
            let blocks: Vec<usize> = js.iter().enumerate().flat_map(|(b, &j)| vec![b; fibers[j].len()]).collect();
            for z in m.objects() {
                let mut table: HashMap<Arrow, Vec<Arrow>> = HashMap::new();
                let mut in_range = true;
                for t in m.hom(&ps, z)? {
                    match within(m.compose(&t, &inner))? {
                        Some(c) => table.entry(c).or_default().push(t),
                        None => in_range = false,
                    }
                }
                if !in_range {
                    continue;
                }
                for v in m.hom(&target, z)? {
                    let inst = || format!("v = {v} over fibers {js:?}");
                    let built = if positions.is_empty() {
                        Ok(v.clone())
                    } else {
                        m.compose(&v, &pis)
                    }
                    .and_then(|c| cs.push(&c, &blocks, &ps));
                    let matches = table.get(&v).map_or(&[][..], |x| x.as_slice());
                    match built {
                        Ok(t) => {
                            if !matches.contains(&t) {
                                return Err(theorem(format!("t = Γ(vπ) = {t} does not factor {}", inst())));
                            }
                        }
                        Err(e) if e.is_bound() => {}
                        Err(e) => return Err(e),
                    }
                    if matches.len() != 1 {
                        return Err(theorem(format!("{} factorizations of {}", matches.len(), inst())));
                    }
                }
            }
        }
    }
    Ok(us)
}

/// The reindexing of `id_{X_b}` that projects the fiber family `xs` onto `b`.
fn projection(cs: &CartStructure, xs: &[Obj], b: usize) -> Result<Arrow> {
    cs.push(&cs.host().identity(&xs[b])?, &[b], xs)
}

fn unique<T>(mut found: Vec<T>, what: impl FnOnce() -> String) -> Result<T> {
    if found.len() == 1 {
        Ok(found.remove(0))
    } else {
        Err(theorem(format!("{} solutions for {}", found.len(), what())))
    }
}

/// Recover `u` from a universal product as the unique arrow whose
/// projections are the reindexed identities, then check both equations.
pub fn up_to_ap(cs: &CartStructure, w: &ProductWitness) -> Result<ProductWitness> {
    w.check_shape()?;
    let m = cs.host();
    let mut us = Vec::new();
    for (j, fib) in w.fibers().iter().enumerate() {
        let xs = ordinal::restrict(&w.x, fib);
        let pis = ordinal::restrict(&w.pi, fib);
        if let Some(why) = universal_defect(m, &xs, &w.p[j], &pis)? {
            return Err(structural(format!("not a universal product over {j}: {why}")));
        }
        let wanted = (0..xs.len()).map(|b| projection(cs, &xs, b)).collect::<Result<Vec<_>>>()?;
        let mut found = Vec::new();
        for t in m.hom(&xs, &w.p[j])? {
            let row = pis
                .iter()
                .map(|pi| m.compose(pi, std::slice::from_ref(&t)))
                .collect::<Result<Vec<_>>>();
            if within(row)?.as_ref() == Some(&wanted) {
                found.push(t);
            }
        }
        us.push(unique(found, || format!("u over {j}"))?);
    }
    let mut out = w.clone();
    out.u = Some(us);
    if let Some(why) = algebraic_defect(cs, &out)? {
        return Err(theorem(format!("recovered u fails: {why}")));
    }
    out.flags.algebraic = Some(true);
    out.flags.universal = Some(true);
    Ok(out)
}

/// Recover `π` from a stably opcartesian `u` over `f` as the unique arrows
/// with `π_b ∘ u = Γ(id_{X_b})`, then check both equations.
pub fn r_to_ap(cs: &CartStructure, x: &[Obj], f: &[usize], us: &[Arrow]) -> Result<ProductWitness> {
    let m = cs.host();
    if let Some(why) = opcartesian_defect(m, x, f, us)? {
        return Err(structural(format!("not stably opcartesian: {why}")));
    }
    let fibers = ordinal::fibers(f, us.len());
    let p: Vec<Obj> = us.iter().map(|u| u.cod.clone()).collect();
    let mut pi: Vec<Option<Arrow>> = vec![None; x.len()];
    for (j, fib) in fibers.iter().enumerate() {
        let xs = ordinal::restrict(x, fib);
        for (b, &i) in fib.iter().enumerate() {
            let wanted = projection(cs, &xs, b)?;
            let mut found = Vec::new();
            for t in m.hom(std::slice::from_ref(&p[j]), &x[i])? {
                if within(m.compose(&t, std::slice::from_ref(&us[j])))?.as_ref() == Some(&wanted) {
                    found.push(t);
                }
            }
            pi[i] = Some(unique(found, || format!("π at {i}"))?);
        }
    }
    let out = ProductWitness {
        x: x.to_vec(),
        f: f.to_vec(),
        p,
        pi: pi.into_iter().map(|a| a.expect("every position lies in a fiber")).collect(),
        u: Some(us.to_vec()),
        flags: Flags {
            algebraic: Some(true),
            representable: Some(true),
            ..Flags::default()
        },
    };
    if let Some(why) = algebraic_defect(cs, &out)? {
        return Err(theorem(format!("recovered π fails: {why}")));
    }
    Ok(out)
}

/// Pull a witness back along `l: L → J`: the fibers are repeated as `l` says.
pub fn reindex_witness(w: &ProductWitness, l: &[usize]) -> Result<ProductWitness> {
    if !ordinal::is_map(l, w.p.len()) {
        return Err(structural(format!("{l:?} is not a map into {} positions", w.p.len())));
    }
    let fibers = w.fibers();
    let (mut x, mut f, mut pi) = (Vec::new(), Vec::new(), Vec::new());
    for (k, &j) in l.iter().enumerate() {
        for &i in &fibers[j] {
            x.push(w.x[i].clone());
            f.push(k);
            pi.push(w.pi[i].clone());
        }
    }
    Ok(ProductWitness {
        x,
        f,
        p: l.iter().map(|&j| w.p[j].clone()).collect(),
        pi,
        u: w.u.as_ref().map(|us| l.iter().map(|&j| us[j].clone()).collect()),
        flags: Flags::default(),
    })
}

/// Whether two witnesses for the same `(X, f)` agree up to the unique
/// isomorphisms between their product objects.
pub fn witnesses_isomorphic(m: &Multicat, a: &ProductWitness, b: &ProductWitness) -> Result<bool> {
    if a.x != b.x || a.f != b.f || a.p.len() != b.p.len() {
        return Ok(false);
    }
    for (j, fib) in a.fibers().iter().enumerate() {
        let (pa, pb) = (&a.p[j], &b.p[j]);
        let mut ok = false;
        for phi in m.hom(std::slice::from_ref(pa), pb)? {
            let mut good = true;
            for &i in fib {
                good &= m.compose(&b.pi[i], std::slice::from_ref(&phi))? == a.pi[i];
            }
            if let (Some(ua), Some(ub)) = (&a.u, &b.u) {
                good &= m.compose(&phi, std::slice::from_ref(&ua[j]))? == ub[j];
            }
            let inverse = m
                .hom(std::slice::from_ref(pb), pa)?
                .into_iter()
                .map(|psi| {
                    Ok(m.compose(&phi, std::slice::from_ref(&psi))? == m.identity(pb)?
                        && m.compose(&psi, std::slice::from_ref(&phi))? == m.identity(pa)?)
                })
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .any(|x| x);
            if good && inverse {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn as_violation(r: Result<()>) -> Result<Option<String>> {
    match r {
        Ok(()) => Ok(None),
        Err(Error::TheoremViolation(msg)) => Ok(Some(msg)),
        Err(e) => Err(e),
    }
}

/// The three product flags on every family and nondecreasing map within the
/// bound, with a violation wherever they disagree. Conversions between the
/// notions and stability of algebraic products are exercised on at most
/// `sample` of the instances where products exist.
pub fn equivalence_report(cs: &CartStructure, sample: usize) -> Result<Report> {
    let m = cs.host();
    let k = m.bound();
    let mut r = Report::new(format!("product notions in {}", cs.name()), k);
    let mut ap_cache = HashMap::new();
    let mut up_cache = FiberCache::new();
    let mut rows = Vec::new();
    let mut found = Vec::new();
    for n in 0..=k {
        for x in m.families(n) {
            for nj in 0..=k {
                for f in ordinal::sorted_maps(n, nj) {
                    let inst = || format!("X=({}) f={f:?} J={nj}", x.join(","));
                    let ap = algebraic_product(cs, &x, &f, nj, &mut ap_cache)?;
                    let up = universal_product(m, &x, &f, nj, &mut up_cache)?;
                    let rep = search_opcartesian(m, &x, &f, nj)?;
                    let flags = (ap.is_some(), up.is_some(), rep.is_some());
                    let agree = flags.0 == flags.1 && flags.1 == flags.2;
                    r.record(
                        "flag-agreement",
                        inst,
                        Ok((!agree).then(|| {
                            format!("algebraic {} universal {} representable {}", flags.0, flags.1, flags.2)
                        })),
                    )?;
                    let mut row = BTreeMap::new();
                    row.insert("X", serde_json::json!(x));
                    row.insert("f", serde_json::json!(f));
                    row.insert("J", serde_json::json!(nj));
                    row.insert("algebraic", serde_json::json!(flags.0));
                    row.insert("universal", serde_json::json!(flags.1));
                    row.insert("representable", serde_json::json!(flags.2));
                    rows.push(serde_json::json!(row));
                    if let (Some(ap), Some(up), Some(rep)) = (ap, up, rep) {
                        found.push((ap, up, rep));
                    }
                }
            }
        }
    }
    let mut all_true = true;
    for row in &rows {
        for key in ["algebraic", "universal", "representable"] {
            all_true &= row[key] == serde_json::Value::Bool(true);
        }
    }
    for (ap, up, rep) in thin(found, sample) {
        let inst = || format!("X=({}) f={:?} J={}", ap.x.join(","), ap.f, ap.p.len());
        let to_up = ap_to_up(cs, &ap);
        r.record("ap-to-up", inst, as_violation(to_up.as_ref().map(|_| ()).map_err(Clone::clone)))?;
        r.record("ap-to-r", inst, as_violation(ap_to_r(cs, &ap).map(|_| ())))?;
        let back = up_to_ap(cs, &up);
        r.record("up-to-ap", inst, as_violation(back.as_ref().map(|_| ()).map_err(Clone::clone)))?;
        r.record("r-to-ap", inst, as_violation(r_to_ap(cs, &ap.x, &ap.f, &rep).map(|_| ())))?;
        if let Ok(w) = to_up {
            let round = up_to_ap(cs, &w).map(|b| (b.pi == ap.pi && b.u == ap.u).then_some(()).ok_or(()));
            let out = match round {
                Ok(Ok(())) => Ok(None),
                Ok(Err(())) => Ok(Some("round trip through universal changed (π, u)".to_string())),
                Err(e) => as_violation(Err(e)),
            };
            r.record("round-trip", inst, out)?;
        }
        for nl in 0..=k {
            for l in ordinal::all_maps(nl, ap.p.len()) {
                let pulled = reindex_witness(&ap, &l)?;
                if pulled.x.len() > k {
                    continue;
                }
                r.record(
                    "stability",
                    || format!("{} along {l:?}", inst()),
                    algebraic_defect(cs, &pulled),
                )?;
            }
        }
    }
    r.details.insert("flags".into(), serde_json::Value::Array(rows));
    r.details.insert("all_true".into(), serde_json::Value::Bool(all_true));
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::gammas::{free_cartesian, from_rig, functions_cartesian, UniqueGamma};
    use crate::fincat::FinCategory;
    use crate::finset::FinSet;
    use crate::multicat::builtin::{from_category, terminal};
    use crate::multicat::Rig;

    fn objs(xs: &[&str]) -> Vec<Obj> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn prodcat(bound: usize) -> CartStructure {
        functions_cartesian(&[("0", 0), ("1", 1)], bound).unwrap()
    }

    fn flags_of(r: &Report) -> Vec<(bool, bool, bool)> {
        r.details["flags"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| {
                (
                    row["algebraic"].as_bool().unwrap(),
                    row["universal"].as_bool().unwrap(),
                    row["representable"].as_bool().unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn identity_map_has_trivial_witness() {
        let cs = prodcat(2);
        let m = cs.host();
        let x = objs(&["0", "1"]);
        let w = ProductWitness {
            x: x.clone(),
            f: vec![0, 1],
            p: x.clone(),
            pi: x.iter().map(|o| m.identity(o).unwrap()).collect(),
            u: Some(x.iter().map(|o| m.identity(o).unwrap()).collect()),
            flags: Flags::default(),
        };
        assert!(check_algebraic_product(&cs, &w).unwrap());
    }

    #[test]
    fn missing_unit_is_structural() {
        let cs = prodcat(2);
        let mut w = algebraic_product(&cs, &objs(&["1", "1"]), &[0, 0], 1, &mut HashMap::new()).unwrap().unwrap();
        w.u = None;
        assert!(check_algebraic_product(&cs, &w).is_err());
    }

    #[test]
    fn wrong_unit_names_the_triangle() {
        let cs = free_cartesian(&terminal(2));
        let mut w = algebraic_product(&cs, &objs(&["*"]), &[0], 1, &mut HashMap::new()).unwrap().unwrap();
        let other = cs.host().hom(&objs(&["*"]), "*").unwrap().into_iter().find(|a| Some(a) != w.u.as_ref().map(|u| &u[0])).unwrap();
        w.u = Some(vec![other]);
        let why = algebraic_defect(&cs, &w).unwrap().unwrap();
        assert!(why.contains("triangle"), "{why}");
    }

    #[test]
    fn sets_have_all_products() {
        let r = equivalence_report(&prodcat(3), 12).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(flags_of(&r).iter().all(|&f| f == (true, true, true)));
    }

    #[test]
    fn conversions_round_trip_in_sets() {
        let cs = prodcat(3);
        let x = objs(&["1", "0", "1"]);
        let w = algebraic_product(&cs, &x, &[0, 0, 1], 2, &mut HashMap::new()).unwrap().unwrap();
        assert_eq!(w.p, objs(&["0", "1"]));
        let up = ap_to_up(&cs, &w).unwrap();
        let back = up_to_ap(&cs, &up).unwrap();
        assert_eq!((back.pi, back.u), (w.pi.clone(), w.u.clone()));
        let us = ap_to_r(&cs, &w).unwrap();
        let again = r_to_ap(&cs, &x, &[0, 0, 1], &us).unwrap();
        assert_eq!(again.pi, w.pi);
    }

    #[test]
    fn terminal_has_all_products() {
        let cs = CartStructure::new(terminal(3), UniqueGamma);
        let r = equivalence_report(&cs, 8).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.details["all_true"], serde_json::Value::Bool(true));
    }

    #[test]
    fn z2_products_exist_only_along_bijections() {
        let cs = from_rig(&Rig::zmod(2), 3).unwrap();
        let r = equivalence_report(&cs, 8).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let rows = r.details["flags"].as_array().unwrap();
        for row in rows {
            let f: Vec<usize> = serde_json::from_value(row["f"].clone()).unwrap();
            let nj = row["J"].as_u64().unwrap() as usize;
            assert_eq!(row["algebraic"].as_bool().unwrap(), ordinal::is_bijection(&f, nj), "{row}");
        }
    }

    #[test]
    fn free_structure_on_discrete_lacks_products() {
        let c = FinCategory::discrete(&FinSet::new(["A", "B"]).unwrap());
        let cs = free_cartesian(&from_category(&c, 2).unwrap());
        let r = equivalence_report(&cs, 6).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        for row in r.details["flags"].as_array().unwrap() {
            let f: Vec<usize> = serde_json::from_value(row["f"].clone()).unwrap();
            let nj = row["J"].as_u64().unwrap() as usize;
            assert_eq!(row["universal"].as_bool().unwrap(), ordinal::is_bijection(&f, nj), "{row}");
        }
    }

    #[test]
    fn reindexed_witnesses_stay_algebraic() {
        let cs = prodcat(3);
        let w = algebraic_product(&cs, &objs(&["1", "0"]), &[0, 1], 2, &mut HashMap::new()).unwrap().unwrap();
        for l in ordinal::all_maps(3, 2) {
            let pulled = reindex_witness(&w, &l).unwrap();
            if pulled.x.len() <= 3 {
                assert!(check_algebraic_product(&cs, &pulled).unwrap(), "{l:?}");
            }
        }
    }
}
