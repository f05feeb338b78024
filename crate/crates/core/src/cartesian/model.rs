//! Finite models of a cartesian multicategory in sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartesian::gammas::UniqueGamma;
use crate::cartesian::{by_cod, extensions, record_eq, show, thin, tuples, CartStructure};
use crate::error::{structural, Result};
use crate::multicat::builtin::{functions_oracle, list_of_syms, terminal, Functions};
use crate::multicat::{Arrow, CommMonoid, MulticatOracle, Obj};
use crate::ordinal;
use crate::report::Report;
use crate::term::Term;

/// A carrier size per object and a value table per arrow, keyed by the arrow's printed form.
///
/// Tables list values on input tuples in row-major order, first input slowest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub carriers: BTreeMap<Obj, usize>,
    pub arrows: BTreeMap<String, Vec<usize>>,
}

impl Model {
    fn functions(&self) -> Result<Functions> {
        let sizes: Vec<(&str, usize)> = self.carriers.iter().map(|(o, s)| (o.as_str(), *s)).collect();
        functions_oracle(&sizes)
    }

    /// Interpret every arrow within the bound through `eval(arrow, inputs)`.
    pub fn tabulate(
        cs: &CartStructure,
        carriers: BTreeMap<Obj, usize>,
        eval: impl Fn(&Arrow, &[usize]) -> Result<usize>,
    ) -> Result<Model> {
        let mut m = Model {
            carriers,
            arrows: BTreeMap::new(),
        };
        let fs = m.functions()?;
        for a in cs.host().arrows_upto(cs.host().bound())? {
            let table = fs.tuples(&a.dom).iter().map(|x| eval(&a, x)).collect::<Result<_>>()?;
            m.arrows.insert(a.to_string(), table);
        }
        Ok(m)
    }

    /// The linear-combination model of `R_▶` on an `R`-module with the given action.
    pub fn rig_module(cs: &CartStructure, module: &CommMonoid, act: impl Fn(&str, &str) -> String) -> Result<Model> {
        let toks = module.carrier.tokens().to_vec();
        let rank = |t: &str| module.carrier.rank(t).ok_or_else(|| structural(format!("{t} is not in the module")));
        let carriers = [("*".to_string(), toks.len())].into_iter().collect();
        Model::tabulate(cs, carriers, |a, x| {
            let rs = list_of_syms(&a.term)?;
            let terms: Vec<String> = rs.iter().zip(x).map(|(r, &v)| act(r, &toks[v])).collect();
            rank(module.sum(terms.iter().map(String::as_str)))
        })
    }
}

/// Check that `model` is a morphism of cartesian multicategories into finite sets.
pub fn check_model(cs: &CartStructure, model: &Model) -> Result<Report> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    let mut r = Report::new(format!("model of {}", cs.name()), k);
    if let Some(o) = m.objects().iter().find(|o| !model.carriers.contains_key(*o)) {
        return Err(structural(format!("no carrier for object {o}")));
    }
    let fs = model.functions()?;
    let arrows = thin(m.arrows_upto(k)?, s);
    let interp = |a: &Arrow| -> Result<Arrow> {
        let t = model
            .arrows
            .get(&a.to_string())
            .ok_or_else(|| structural(format!("the model does not interpret {a}")))?;
        let n: usize = a.dom.iter().map(|o| model.carriers[o]).product();
        if t.len() != n || t.iter().any(|&v| v >= model.carriers[&a.cod]) {
            return Err(structural(format!("the table for {a} has the wrong shape")));
        }
        Ok(Arrow::new(Term::nats(t), a.dom.clone(), a.cod.clone()))
    };

    for o in m.objects() {
        let lhs = m.identity(o).and_then(|id| interp(&id));
        record_eq(&mut r, "identity", || o.clone(), lhs, fs.identity(o))?;
    }
    let by = by_cod(&arrows);
    for a in &arrows {
        let ia = interp(a)?;
        for sigma in ordinal::permutations(a.arity()).into_iter().skip(1) {
            let lhs = m.permute(a, &sigma).and_then(|b| interp(&b));
            record_eq(&mut r, "symmetry", || format!("{a} σ={sigma:?}"), lhs, fs.permute(&ia, &sigma))?;
        }
        for alphas in thin(tuples(&by, &a.dom, k), s) {
            let lhs = m.compose(a, &alphas).and_then(|c| interp(&c));
            let rhs = alphas
                .iter()
                .map(&interp)
                .collect::<Result<Vec<_>>>()
                .and_then(|is| fs.compose(&ia, &is));
            record_eq(&mut r, "composition", || format!("{a} ∘ {}", show(&alphas)), lhs, rhs)?;
        }
        let ta = fs.table(&ia)?;
        for nm in 0..=k {
            for f in thin(ordinal::all_maps(a.arity(), nm), s) {
                for y in thin(extensions(m, &a.dom, &f, nm), s) {
                    let pushed = cs.push(a, &f, &y)?;
                    let tp = fs.table(&interp(&pushed)?)?;
                    let witness = fs.tuples(&y).into_iter().find_map(|v| {
                        let x: Vec<usize> = f.iter().map(|&j| v[j]).collect();
                        let (lhs, rhs) = (tp[fs.index_of(&y, &v)], ta[fs.index_of(&a.dom, &x)]);
                        (lhs != rhs).then(|| {
                            format!("{pushed} at {v:?} gives {lhs} but {a} at {x:?} gives {rhs}")
                        })
                    });
                    r.record("reindexing", || format!("α={a} f={f:?}"), Ok(witness))?;
                }
            }
        }
    }
    Ok(r.finish())
}

/// For each carrier size up to `max`, whether some model of the terminal
/// cartesian multicategory has that size (checked at arity at most 1).
pub fn terminal_models(max: usize) -> Result<Vec<(usize, bool)>> {
    let cs = CartStructure::new(terminal(1), UniqueGamma);
    let nullary = cs.host().hom(&[], "*")?.remove(0);
    let unary = cs.host().hom(&["*".to_string()], "*")?.remove(0);
    let mut out = Vec::new();
    for size in 0..=max {
        let mut found = false;
        for c in 0..size {
            for u in ordinal::all_maps(size, size) {
                let model = Model {
                    carriers: [("*".to_string(), size)].into_iter().collect(),
                    arrows: [(nullary.to_string(), vec![c]), (unary.to_string(), u)].into_iter().collect(),
                };
                if check_model(&cs, &model)?.passed() {
                    found = true;
                }
            }
        }
        out.push((size, found));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::gammas::from_rig;
    use crate::multicat::Rig;

    #[test]
    fn z2_is_a_module_over_itself() {
        let r = Rig::zmod(2);
        let cs = from_rig(&r, 3).unwrap();
        let model = Model::rig_module(&cs, &r.additive(), |s, a| r.times(s, a).to_string()).unwrap();
        let rep = check_model(&cs, &model).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
    }

    #[test]
    fn wrong_scalar_action_is_caught() {
        let r = Rig::zmod(2);
        let cs = from_rig(&r, 2).unwrap();
        let model = Model::rig_module(&cs, &r.additive(), |_, a| a.to_string()).unwrap();
        let rep = check_model(&cs, &model).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.law == "reindexing" && v.instance == "α=[1,1]:(*,*)→* f=[0, 0]" && v.explanation.contains("at [1]")));
    }

    #[test]
    fn only_singletons_model_the_terminal_theory() {
        assert_eq!(terminal_models(3).unwrap(), vec![(0, false), (1, true), (2, false), (3, false)]);
    }

    #[test]
    fn missing_interpretation_is_structural() {
        let cs = from_rig(&Rig::zmod(2), 1).unwrap();
        let model = Model {
            carriers: [("*".to_string(), 2)].into_iter().collect(),
            arrows: BTreeMap::new(),
        };
        assert!(check_model(&cs, &model).is_err());
    }
}
