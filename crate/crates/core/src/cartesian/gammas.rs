//! Concrete reindexing rules.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartesian::espan::{self, espan};
use crate::cartesian::{CartStructure, Gamma};
use crate::error::{bound, structural, Result};
use crate::multicat::builtin::{functions_oracle, list_of_syms, rig_multicat, syms, Functions};
use crate::multicat::{Arrow, Multicat, Obj, Rig};
use crate::ordinal;

/// Sum the entries of a rig family over the fibers.
#[derive(Clone, Debug)]
pub struct RigGamma {
    pub rig: Rig,
}

impl Gamma for RigGamma {
    fn name(&self) -> String {
        format!("rig-sum{}", self.rig.carrier)
    }
    fn push(&self, _m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        let xs = list_of_syms(&alpha.term)?;
        let out: Vec<String> = ordinal::fibers(f, y.len())
            .iter()
            .map(|fib| self.rig.sum(fib.iter().map(|&i| xs[i].as_str())).to_string())
            .collect();
        Ok(Arrow::new(syms(&out), y.to_vec(), alpha.cod.clone()))
    }
}

/// `R_▶` with fiberwise sums.
pub fn from_rig(r: &Rig, bound: usize) -> Result<CartStructure> {
    Ok(CartStructure::new(rig_multicat(r, bound)?, RigGamma { rig: r.clone() }))
}

/// The only possible rule when every hom-set has at most one arrow.
#[derive(Clone, Debug, Default)]
pub struct UniqueGamma;

impl Gamma for UniqueGamma {
    fn name(&self) -> String {
        "unique".into()
    }
    fn push(&self, m: &Multicat, alpha: &Arrow, _f: &[usize], y: &[Obj]) -> Result<Arrow> {
        let mut hs = m.hom(y, &alpha.cod)?;
        if hs.len() != 1 {
            return Err(structural(format!("({})→{} has {} arrows", y.join(","), alpha.cod, hs.len())));
        }
        Ok(hs.remove(0))
    }
}

/// `(f_!α)(y) = α(y∘f)` for functions of several variables.
#[derive(Clone, Debug)]
pub struct FunctionsGamma {
    oracle: Functions,
}

impl Gamma for FunctionsGamma {
    fn name(&self) -> String {
        "diagonal".into()
    }
    fn push(&self, _m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        let t = self.oracle.table(alpha)?;
        let o = &self.oracle;
        Ok(o.tabulate(y.to_vec(), &alpha.cod, |v| {
            let x: Vec<usize> = f.iter().map(|&j| v[j]).collect();
            t[o.index_of(&alpha.dom, &x)]
        }))
    }
}

/// Finite sets with the given carriers, reindexing by duplicating and deleting variables.
pub fn functions_cartesian(sizes: &[(&str, usize)], bound: usize) -> Result<CartStructure> {
    let oracle = functions_oracle(sizes)?;
    Ok(CartStructure::new(
        Multicat::new(oracle.clone(), bound),
        FunctionsGamma { oracle },
    ))
}

/// Compose the new tight leg into the recorded one.
#[derive(Clone, Debug)]
pub struct FreeGamma {
    base: Multicat,
}

impl Gamma for FreeGamma {
    fn name(&self) -> String {
        "free".into()
    }
    fn push(&self, _m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        let (a, g) = espan::decode(alpha)?;
        espan::canonical(&self.base, &a, &ordinal::compose(f, &g), y)
    }
}

/// The free cartesian multicategory on `m`.
pub fn free_cartesian(m: &Multicat) -> CartStructure {
    CartStructure::new(espan(m), FreeGamma { base: m.clone() })
}

/// One explicit value of a reindexing table. `f` is given on sorted positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaEntry {
    pub arrow: String,
    pub f: Vec<usize>,
    pub result: String,
}

/// A reindexing rule for a table multicategory, read from explicit entries.
#[derive(Clone, Debug, Default)]
pub struct TableGamma {
    entries: BTreeMap<(String, Vec<usize>), Vec<String>>,
}

impl TableGamma {
    pub fn new(entries: &[GammaEntry]) -> TableGamma {
        let mut t = TableGamma::default();
        for e in entries {
            t.entries
                .entry((e.arrow.clone(), e.f.clone()))
                .or_default()
                .push(e.result.clone());
        }
        t
    }
}

fn sym_id(a: &Arrow) -> Result<&str> {
    a.term
        .as_sym()
        .ok_or_else(|| structural(format!("{a} is not a table arrow")))
}

impl Gamma for TableGamma {
    fn name(&self) -> String {
        "table".into()
    }
    fn push(&self, m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        if y.len() > m.bound() {
            return Err(bound(format!("reindexing into arity {} beyond the table", y.len())));
        }
        let id = sym_id(alpha)?;
        let missing = || structural(format!("no reindexing entry for {alpha} along {f:?} into ({})", y.join(",")));
        let candidates = self.entries.get(&(id.to_string(), f.to_vec())).ok_or_else(missing)?;
        let hom = m.hom(y, &alpha.cod)?;
        let mut found = hom
            .into_iter()
            .filter(|b| b.term.as_sym().is_some_and(|s| candidates.iter().any(|c| c == s)));
        let b = found.next().ok_or_else(missing)?;
        if found.next().is_some() {
            return Err(structural(format!("two reindexing entries for {alpha} along {f:?}")));
        }
        Ok(b)
    }
}

/// Tabulate a rule on a table multicategory for every instance within the bound.
pub fn materialize_gamma(cs: &CartStructure) -> Result<Vec<GammaEntry>> {
    let m = cs.host();
    let k = m.bound();
    let mut out = Vec::new();
    for a in m.arrows_upto(k)? {
        let id = sym_id(&a)?.to_string();
        for nj in 0..=k {
            for f in ordinal::all_maps(a.arity(), nj) {
                for y in super::extensions(m, &a.dom, &f, nj) {
                    let b = cs.push(&a, &f, &y)?;
                    out.push(GammaEntry {
                        arrow: id.clone(),
                        f: f.clone(),
                        result: sym_id(&b)?.to_string(),
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A rule with one value replaced, for testing the checkers.
#[derive(Clone)]
pub struct FaultGamma {
    pub inner: Arc<dyn Gamma>,
    pub arrow: Arrow,
    pub f: Vec<usize>,
    pub y: Vec<Obj>,
    pub result: Arrow,
}

impl Gamma for FaultGamma {
    fn name(&self) -> String {
        format!("{} with a corrupted entry", self.inner.name())
    }
    fn push(&self, m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        if *alpha == self.arrow && f == self.f && y == self.y {
            return Ok(self.result.clone());
        }
        self.inner.push(m, alpha, f, y)
    }
}

impl FaultGamma {
    /// Replace `f_!α` in `cs` by `result`.
    pub fn corrupt(cs: &CartStructure, arrow: Arrow, f: Vec<usize>, y: Vec<Obj>, result: Arrow) -> CartStructure {
        CartStructure::from_arc(
            cs.host().clone(),
            Arc::new(FaultGamma {
                inner: cs.gamma().clone(),
                arrow,
                f,
                y,
                result,
            }),
        )
    }
}

/// A rig family as an arrow of `R_▶`.
pub fn rig_arrow(entries: &[&str]) -> Arrow {
    let xs: Vec<String> = entries.iter().map(|s| s.to_string()).collect();
    Arrow::new(syms(&xs), vec!["*".to_string(); xs.len()], "*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::builtin::terminal;
    use crate::term::Term;

    fn star(n: usize) -> Vec<Obj> {
        vec!["*".to_string(); n]
    }

    #[test]
    fn rig_sums_over_fibers() {
        let cs = from_rig(&Rig::zmod(4), 3).unwrap();
        let a = rig_arrow(&["1", "2", "3"]);
        assert_eq!(cs.push(&a, &[0, 0, 0], &star(1)).unwrap(), rig_arrow(&["2"]));
        assert_eq!(cs.push(&a, &[1, 1, 1], &star(3)).unwrap(), rig_arrow(&["0", "2", "0"]));
        assert_eq!(cs.push(&a, &[2, 0, 1], &star(3)).unwrap(), rig_arrow(&["2", "3", "1"]));
    }

    #[test]
    fn push_rejects_mismatched_shapes() {
        let cs = from_rig(&Rig::zmod(2), 3).unwrap();
        let a = rig_arrow(&["1", "0"]);
        assert!(cs.push(&a, &[0], &star(1)).is_err());
        assert!(cs.push(&a, &[0, 2], &star(2)).is_err());
        assert!(cs.push(&a, &[0, 0], &["A".to_string()]).is_err());
    }

    #[test]
    fn functions_duplicate_and_delete() {
        let cs = functions_cartesian(&[("A", 2)], 3).unwrap();
        let a = Arrow::new(Term::nats(&[0, 1, 1, 1]), vec!["A".into(), "A".into()], "A");
        let dup = cs.push(&a, &[0, 0], &["A".to_string()]).unwrap();
        assert_eq!(dup.term, Term::nats(&[0, 1]));
        let del = cs.push(&a, &[1, 1], &["A".to_string(), "A".to_string()]).unwrap();
        assert_eq!(del.term, Term::nats(&[0, 1, 0, 1]));
    }

    #[test]
    fn free_rule_composes_tight_legs() {
        let m = terminal(3);
        let cs = free_cartesian(&m);
        let t = cs.host();
        let e = t.hom(&star(2), "*").unwrap().into_iter().find(|e| espan::decode(e).unwrap().1 == vec![0, 1]).unwrap();
        let pushed = cs.push(&e, &[0, 0], &star(1)).unwrap();
        assert_eq!(espan::decode(&pushed).unwrap().1, vec![0, 0]);
    }

    #[test]
    fn table_rule_round_trips() {
        let cs = CartStructure::new(terminal(2), UniqueGamma);
        let p = crate::multicat::materialize(cs.host()).unwrap();
        let host = crate::multicat::table::from_table(&p, 2).unwrap();
        let probe = CartStructure::new(host.clone(), UniqueGamma);
        let entries = materialize_gamma(&probe).unwrap();
        let tab = CartStructure::new(host.clone(), TableGamma::new(&entries));
        for a in host.arrows_upto(2).unwrap() {
            for f in ordinal::all_maps(a.arity(), 2) {
                assert_eq!(tab.push(&a, &f, &star(2)).unwrap(), probe.push(&a, &f, &star(2)).unwrap());
            }
        }
        let empty = CartStructure::new(host.clone(), TableGamma::default());
        let id = host.identity("*").unwrap();
        assert!(empty.push(&id, &[0], &star(1)).is_err());
    }
}
