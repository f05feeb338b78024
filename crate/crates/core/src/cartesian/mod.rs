//! Cartesian structures: covariant reindexing `f_!α` and its laws.
//!
//! In ordinal form `push(α, f, Y)` takes `α: X → Z` with `X = Y∘f` for
//! `f: n → m` and returns an arrow `Y → Z`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{structural, Result};
use crate::finset::{fiber, FinMap, FinSet};
use crate::multicat::table::tuples_within;
use crate::multicat::{show_all, Arrow, LooseArrow, MultiArrow, Multicat, Obj, ObjFamily};
use crate::ordinal;
use crate::report::{expect_eq, Report};

pub mod cmon;
pub mod espan;
pub mod gammas;
pub mod laws;
pub mod model;

pub use cmon::{extract_enrichment, from_cmon_enriched, CMonCategory, CMonGamma};
pub use espan::{espan, Espan};
pub use gammas::{
    free_cartesian, from_rig, functions_cartesian, materialize_gamma, rig_arrow, FaultGamma, FreeGamma, FunctionsGamma,
    GammaEntry, RigGamma, TableGamma, UniqueGamma,
};
pub use laws::{check_algebra, check_cartesian, check_coherence, check_laws, monad_report};
pub use model::{check_model, terminal_models, Model};

/// A covariant reindexing rule for a fixed host.
pub trait Gamma: Send + Sync {
    fn name(&self) -> String;
    fn push(&self, m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow>;
}

/// A multicategory with a chosen covariant reindexing.
#[derive(Clone)]
pub struct CartStructure {
    host: Multicat,
    gamma: Arc<dyn Gamma>,
    /// Largest number of alternatives taken from any one enumerated list in law checks.
    sample: usize,
}

impl std::fmt::Debug for CartStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CartStructure({}, {})", self.host.name(), self.gamma.name())
    }
}

impl CartStructure {
    pub fn new(host: Multicat, gamma: impl Gamma + 'static) -> CartStructure {
        CartStructure {
            host,
            gamma: Arc::new(gamma),
            sample: usize::MAX,
        }
    }

    pub fn from_arc(host: Multicat, gamma: Arc<dyn Gamma>) -> CartStructure {
        CartStructure {
            host,
            gamma,
            sample: usize::MAX,
        }
    }

    pub fn host(&self) -> &Multicat {
        &self.host
    }

    pub fn gamma(&self) -> &Arc<dyn Gamma> {
        &self.gamma
    }

    pub fn name(&self) -> String {
        format!("{} with {}", self.host.name(), self.gamma.name())
    }

    pub fn with_bound(&self, bound: usize) -> CartStructure {
        CartStructure {
            host: self.host.with_bound(bound),
            gamma: self.gamma.clone(),
            sample: self.sample,
        }
    }

    /// Thin every enumerated list in law checks to at most `n` evenly spaced entries.
    pub fn with_sample(&self, n: usize) -> CartStructure {
        CartStructure {
            sample: n.max(1),
            ..self.clone()
        }
    }

    pub fn sample(&self) -> usize {
        self.sample
    }

    /// `f_!α` for `α: Y∘f → Z`.
    pub fn push(&self, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        if f.len() != alpha.arity() || !ordinal::is_map(f, y.len()) {
            return Err(structural(format!("{f:?} is not a map from the domain of {alpha} to {} inputs", y.len())));
        }
        if let Some(i) = (0..f.len()).find(|&i| alpha.dom[i] != y[f[i]]) {
            return Err(structural(format!(
                "input {i} of {alpha} is {} but the target family has {}",
                alpha.dom[i], y[f[i]]
            )));
        }
        if let Some(o) = y.iter().find(|o| !self.host.has_object(o)) {
            return Err(structural(format!("unknown object {o:?}")));
        }
        let b = self.gamma.push(&self.host, alpha, f, y)?;
        if b.dom != y || b.cod != alpha.cod {
            return Err(structural(format!("reindexing {alpha} along {f:?} returned {b}")));
        }
        Ok(b)
    }
}

/// Unbiased covariant reindexing: `α` over its index, `f` from that index to `y`'s.
pub fn covariant_reindex(cs: &CartStructure, alpha: &MultiArrow, f: &FinMap, y: &ObjFamily) -> Result<MultiArrow> {
    if f.dom != alpha.dom.index || f.cod != y.index {
        return Err(structural("reindexing map does not match the families"));
    }
    if alpha.dom != y.reindex(f)? {
        return Err(structural("domain is not the target family along the map"));
    }
    let b = cs.push(&alpha.to_ordinal(), &f.to_ordinal(), &y.to_ordinal())?;
    MultiArrow::from_ordinal(&b, &y.index)
}

/// Covariant reindexing of a loose arrow `a` over `I → K` along `f: I → J`,
/// computed fiberwise over `b: J → K` with `a.base = b∘f`.
pub fn push_loose(cs: &CartStructure, a: &LooseArrow, f: &FinMap, b: &FinMap, y: &ObjFamily) -> Result<LooseArrow> {
    if b.after(f)? != a.base || y.index != f.cod {
        return Err(structural("triangle does not commute"));
    }
    let mut components = BTreeMap::new();
    for k in b.cod.iter() {
        let src = fiber(&a.base, k)?;
        let tgt = fiber(b, k)?;
        let fk = FinMap::new(src.clone(), tgt.clone(), src.iter().map(|i| (i.clone(), f.apply(i).to_string())).collect())?;
        let comp = covariant_reindex(cs, &a.components[k], &fk, &y.restrict(&tgt)?)?;
        components.insert(k.clone(), comp);
    }
    LooseArrow::new(b.clone(), components)
}

/// Reindex a loose arrow along `l: L → K` through the canonical pullback.
pub fn reindex_loose(m: &Multicat, a: &LooseArrow, l: &FinMap) -> Result<LooseArrow> {
    let sq = crate::finset::pullback(&a.base, l)?;
    let mut components = BTreeMap::new();
    for x in l.dom.iter() {
        let fib = fiber(&sq.top, x)?;
        let sigma = FinMap::new(
            fib.clone(),
            a.components[l.apply(x)].dom.index.clone(),
            fib.iter().map(|p| (p.clone(), sq.left.apply(p).to_string())).collect(),
        )?;
        components.insert(x.clone(), crate::multicat::reindex_contra(m, &a.components[l.apply(x)], &sigma)?);
    }
    LooseArrow::new(sq.top.clone(), components)
}

/// Keep at most `cap` evenly spaced entries.
pub(crate) fn thin<T>(xs: Vec<T>, cap: usize) -> Vec<T> {
    if xs.len() <= cap {
        return xs;
    }
    let n = xs.len();
    xs.into_iter()
        .enumerate()
        .filter(|(k, _)| (k * cap) / n != ((k + 1) * cap) / n || k + 1 == n && cap == 1)
        .map(|(_, x)| x)
        .take(cap)
        .collect()
}

/// Families `Y` over `m` with `Y∘f = x`.
pub(crate) fn extensions(m: &Multicat, x: &[Obj], f: &[usize], mcount: usize) -> Vec<Vec<Obj>> {
    let mut fixed: Vec<Option<&Obj>> = vec![None; mcount];
    for (i, &j) in f.iter().enumerate() {
        match fixed[j] {
            Some(o) if o != &x[i] => return vec![],
            _ => fixed[j] = Some(&x[i]),
        }
    }
    let choices: Vec<Vec<Obj>> = fixed
        .iter()
        .map(|o| match o {
            Some(o) => vec![(*o).clone()],
            None => m.objects().to_vec(),
        })
        .collect();
    ordinal::product(&choices)
}

/// Loose arrows out of `x` over `a: n → mcount`, as one component per fiber.
pub(crate) fn loose_out(m: &Multicat, x: &[Obj], a: &[usize], mcount: usize, cap: usize) -> Result<Vec<Vec<Arrow>>> {
    let mut choices = Vec::new();
    for fib in ordinal::fibers(a, mcount) {
        choices.push(thin(m.out_arrows(&ordinal::restrict(x, &fib))?, cap));
    }
    Ok(thin(ordinal::product(&choices), cap))
}

/// Compose a loose arrow `αs` (components over the fibers of `a`) under `β`,
/// returning the composite with its domain in the order of `x`.
pub(crate) fn compose_under(m: &Multicat, beta: &Arrow, alphas: &[Arrow], a: &[usize]) -> Result<Arrow> {
    let c = m.compose(beta, alphas)?;
    let blocks = ordinal::fibers(a, alphas.len());
    m.unblock(c, &blocks)
}

pub(crate) fn record_eq(r: &mut Report, law: &str, instance: impl FnOnce() -> String, lhs: Result<Arrow>, rhs: Result<Arrow>) -> Result<()> {
    let out = lhs.and_then(|l| rhs.map(|r| expect_eq(&l, &r)));
    r.record(law, instance, out)
}

pub(crate) fn show(xs: &[Arrow]) -> String {
    show_all(xs)
}

pub(crate) fn by_cod(arrows: &[Arrow]) -> BTreeMap<&Obj, Vec<&Arrow>> {
    let mut by: BTreeMap<&Obj, Vec<&Arrow>> = BTreeMap::new();
    for a in arrows {
        by.entry(&a.cod).or_default().push(a);
    }
    by
}

pub(crate) fn tuples(arrows_by_cod: &BTreeMap<&Obj, Vec<&Arrow>>, targets: &[Obj], budget: usize) -> Vec<Vec<Arrow>> {
    tuples_within(targets, arrows_by_cod, budget)
        .into_iter()
        .map(|t| t.into_iter().cloned().collect())
        .collect()
}

pub(crate) fn finset(n: usize) -> FinSet {
    FinSet::range(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_keeps_ends_and_count() {
        let xs: Vec<usize> = (0..100).collect();
        let t = thin(xs.clone(), 10);
        assert_eq!(t.len(), 10);
        assert_eq!(thin(xs.clone(), 200), xs);
        assert_eq!(thin(vec![1, 2, 3], 1).len(), 1);
    }

    #[test]
    fn extensions_respect_the_map() {
        let m = crate::multicat::builtin::from_category(&crate::fincat::FinCategory::walking_arrow(), 2).unwrap();
        let x = vec!["A".to_string(), "B".to_string()];
        assert_eq!(extensions(&m, &x, &[0, 0], 1).len(), 0);
        assert_eq!(extensions(&m, &x, &[0, 2], 3), vec![vec!["A".to_string(), "A".to_string(), "B".to_string()], vec!["A".to_string(), "B".to_string(), "B".to_string()]]);
    }
}
