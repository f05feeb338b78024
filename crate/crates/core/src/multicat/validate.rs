//! Exhaustive law checks for a multicategory within its arity bound.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::multicat::table::tuples_within;
use crate::multicat::{show_all, Arrow, Multicat, Obj};
use crate::ordinal;
use crate::report::{expect_eq, Report};

/// Check identities, associativity, the symmetric action and equivariance.
///
/// Tables that are not total give a structural error rather than a violation.
pub fn validate(m: &Multicat) -> Result<Report> {
    let k = m.bound();
    let mut r = Report::new(format!("validate {}", m.name()), k);
    let arrows = m.arrows_upto(k)?;
    let mut by_cod: BTreeMap<&Obj, Vec<&Arrow>> = BTreeMap::new();
    for a in &arrows {
        by_cod.entry(&a.cod).or_default().push(a);
    }

    for o in m.objects() {
        let id = m.identity(o)?;
        let ok = id.dom == [o.clone()] && &id.cod == o;
        r.record("identity-signature", || o.clone(), Ok((!ok).then(|| format!("{id} is not unary on {o}"))))?;
    }

    for a in &arrows {
        let left = m.identity(&a.cod).and_then(|id| m.compose(&id, std::slice::from_ref(a)));
        r.record("identity-left", || a.to_string(), left.map(|x| expect_eq(&x, a)))?;
        let ids: Result<Vec<Arrow>> = a.dom.iter().map(|o| m.identity(o)).collect();
        let right = ids.and_then(|ids| m.compose(a, &ids));
        r.record("identity-right", || a.to_string(), right.map(|x| expect_eq(&x, a)))?;

        let perms = ordinal::permutations(a.arity());
        r.record("symmetry-unit", || a.to_string(), m.permute(a, &perms[0]).map(|x| expect_eq(&x, a)))?;
        for tau in &perms {
            for sigma in &perms {
                let lhs = m.permute(a, tau).and_then(|x| m.permute(&x, sigma));
                let rhs = m.permute(a, &ordinal::compose(tau, sigma));
                let out = lhs.and_then(|l| rhs.map(|r| expect_eq(&l, &r)));
                r.record("symmetry-functoriality", || format!("{a} τ={tau:?} σ={sigma:?}"), out)?;
            }
        }
    }

    for beta in &arrows {
        for alphas in tuples_within(&beta.dom, &by_cod, k) {
            let alphas: Vec<Arrow> = alphas.into_iter().cloned().collect();
            let inner = match m.compose(beta, &alphas) {
                Ok(x) => x,
                Err(e) => {
                    r.record("associativity", String::new, Err(e))?;
                    continue;
                }
            };
            let flat_dom: Vec<Obj> = alphas.iter().flat_map(|a| a.dom.clone()).collect();
            for gammas in tuples_within(&flat_dom, &by_cod, k) {
                let gammas: Vec<Arrow> = gammas.into_iter().cloned().collect();
                let lhs = m.compose(&inner, &gammas);
                let offs = ordinal::offsets(&alphas.iter().map(Arrow::arity).collect::<Vec<_>>());
                let rhs = alphas
                    .iter()
                    .enumerate()
                    .map(|(j, a)| m.compose(a, &gammas[offs[j]..offs[j] + a.arity()]))
                    .collect::<Result<Vec<_>>>()
                    .and_then(|mid| m.compose(beta, &mid));
                let out = lhs.and_then(|l| rhs.map(|r| expect_eq(&l, &r)));
                r.record(
                    "associativity",
                    || format!("{beta} ∘ {} ∘ {}", show_all(&alphas), show_all(&gammas)),
                    out,
                )?;
            }
            equivariance(m, &mut r, beta, &alphas, &inner)?;
        }
    }
    Ok(r.finish())
}

fn equivariance(m: &Multicat, r: &mut Report, beta: &Arrow, alphas: &[Arrow], composite: &Arrow) -> Result<()> {
    let sizes: Vec<usize> = alphas.iter().map(Arrow::arity).collect();
    let offs = &ordinal::offsets(&sizes);
    let sizes = &sizes;
    for sigma in ordinal::permutations(beta.arity()).into_iter().skip(1) {
        let moved: Vec<Arrow> = sigma.iter().map(|&j| alphas[j].clone()).collect();
        let lhs = m.permute(beta, &sigma).and_then(|b| m.compose(&b, &moved));
        let p: Vec<usize> = sigma.iter().flat_map(|&j| (0..sizes[j]).map(move |i| offs[j] + i)).collect();
        let rhs = m.permute(composite, &p);
        let out = lhs.and_then(|l| rhs.map(|r| expect_eq(&l, &r)));
        r.record("equivariance-outer", || format!("{beta} σ={sigma:?} {}", show_all(alphas)), out)?;
    }
    let choices: Vec<Vec<Vec<usize>>> = sizes.iter().map(|&n| ordinal::permutations(n)).collect();
    for taus in ordinal::product(&choices).into_iter().skip(1) {
        let moved = alphas
            .iter()
            .zip(&taus)
            .map(|(a, t)| m.permute(a, t))
            .collect::<Result<Vec<_>>>();
        let lhs = moved.and_then(|xs| m.compose(beta, &xs));
        let p: Vec<usize> = taus
            .iter()
            .enumerate()
            .flat_map(|(j, t)| t.iter().map(move |&i| offs[j] + i))
            .collect();
        let rhs = m.permute(composite, &p);
        let out = lhs.and_then(|l| rhs.map(|r| expect_eq(&l, &r)));
        r.record("equivariance-inner", || format!("{beta} {} τ={taus:?}", show_all(alphas)), out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::multicat::builtin::{from_category, orders, sections, terminal, unary};
    use crate::multicat::table::{from_table, materialize};
    use crate::Error;

    #[test]
    fn builtins_validate() {
        for m in [terminal(3), orders(3), sections(3), unary(3)] {
            let r = validate(&m).unwrap();
            assert!(r.passed(), "{}: {:?}", m.name(), r.violations);
            assert!(r.stats.instances > 0);
        }
    }

    #[test]
    fn cocartesian_on_walking_arrow_validates() {
        let m = from_category(&FinCategory::walking_arrow(), 3).unwrap();
        let r = validate(&m).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn corrupted_composite_is_named() {
        let mut p = materialize(&orders(2)).unwrap();
        let row = p
            .compose
            .iter_mut()
            .find(|c| c.inner.len() == 2 && c.outer == "[0,1]" && c.inner.iter().all(|i| i == "[0]"))
            .unwrap();
        row.result = "[1,0]".into();
        let r = validate(&from_table(&p, 2).unwrap()).unwrap();
        assert!(!r.passed());
        assert!(r.laws_violated().contains(&"identity-right".to_string()));
        assert!(r.violations.iter().any(|v| v.instance.contains("[0,1]")));
    }

    #[test]
    fn missing_rows_are_structural() {
        let mut p = materialize(&terminal(2)).unwrap();
        p.compose.pop();
        let e = validate(&from_table(&p, 2).unwrap()).unwrap_err();
        assert!(matches!(e, Error::Structural(_)));
    }
}
