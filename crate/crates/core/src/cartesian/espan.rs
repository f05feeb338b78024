//! Enhanced spans: the multicategory `M^cart` and the monad structure on it.
//!
//! A connected arrow of `M^cart` from `X` (over `n`) to `Z` is a pair
//! `(α, f)` with `f: p → n` and `α: X∘f → Z` in `M`, taken up to relabeling
//! the apex `p`. The stored representative has `f` nondecreasing and the
//! least `α` among the relabelings that keep `f` nondecreasing.

use crate::doubleprop::BaseKind;
use crate::error::{bound, structural, Result};
use crate::multicat::{Arrow, Multicat, MulticatOracle, Obj};
use crate::ordinal;
use crate::term::Term;

/// Split an enhanced-span arrow into its loose leg and tight map.
pub fn decode(a: &Arrow) -> Result<(Arrow, Vec<usize>)> {
    let parts = a
        .term
        .as_list()
        .filter(|p| p.len() == 2)
        .ok_or_else(|| structural(format!("{a} is not an enhanced span")))?;
    let f = parts[0].to_nats().ok_or_else(|| structural(format!("{a} has a malformed tight leg")))?;
    if f.iter().any(|&v| v >= a.arity()) {
        return Err(structural(format!("{a} has a tight leg leaving its domain")));
    }
    let dom: Vec<Obj> = f.iter().map(|&v| a.dom[v].clone()).collect();
    Ok((Arrow::new(parts[1].clone(), dom, a.cod.clone()), f))
}

fn encode(alpha: Arrow, f: &[usize], x: Vec<Obj>) -> Arrow {
    Arrow::new(Term::List(vec![Term::nats(f), alpha.term]), x, alpha.cod)
}

/// The stored representative of `(α, f)` with domain `x`.
pub fn canonical(m: &Multicat, alpha: &Arrow, f: &[usize], x: &[Obj]) -> Result<Arrow> {
    let mut best: Option<(Arrow, Vec<usize>)> = None;
    for s in ordinal::sorting_permutations(f) {
        let a = m.permute(alpha, &s)?;
        if best.as_ref().is_none_or(|(b, _)| a < *b) {
            best = Some((a, ordinal::compose(f, &s)));
        }
    }
    let (a, g) = best.expect("at least one sorting permutation");
    Ok(encode(a, &g, x.to_vec()))
}

/// `M^cart` truncated to apexes of size at most the bound.
pub struct Espan {
    host: Multicat,
    objects: Vec<Obj>,
}

impl Espan {
    pub fn host(&self) -> &Multicat {
        &self.host
    }
}

pub fn espan(m: &Multicat) -> Multicat {
    Multicat::new(
        Espan {
            host: m.clone(),
            objects: m.objects().to_vec(),
        },
        m.bound(),
    )
}

impl MulticatOracle for Espan {
    fn name(&self) -> String {
        format!("espan({})", self.host.name())
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn base(&self) -> BaseKind {
        self.host.base()
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        let mut out = std::collections::BTreeSet::new();
        for p in 0..=self.host.bound() {
            for f in ordinal::sorted_maps(p, dom.len()) {
                let v: Vec<Obj> = f.iter().map(|&i| dom[i].clone()).collect();
                for a in self.host.hom(&v, cod)? {
                    out.insert(canonical(&self.host, &a, &f, dom)?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(encode(self.host.identity(obj)?, &[0], vec![obj.to_string()]))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        let (alpha, f) = decode(a)?;
        let inv = ordinal::inverse(perm);
        let g: Vec<usize> = f.iter().map(|&v| inv[v]).collect();
        let x: Vec<Obj> = perm.iter().map(|&k| a.dom[k].clone()).collect();
        canonical(&self.host, &alpha, &g, &x)
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let (beta, g) = decode(outer)?;
        let parts: Vec<(Arrow, Vec<usize>)> = inner.iter().map(decode).collect::<Result<_>>()?;
        let apex: usize = g.iter().map(|&j| parts[j].0.arity()).sum();
        if apex > self.host.bound() {
            return Err(bound(format!("apex of size {apex} in a composite of enhanced spans")));
        }
        let offs = ordinal::offsets(&inner.iter().map(Arrow::arity).collect::<Vec<_>>());
        let lifted: Vec<Arrow> = g.iter().map(|&j| parts[j].0.clone()).collect();
        let tight: Vec<usize> = g
            .iter()
            .flat_map(|&j| parts[j].1.iter().map(move |&v| (j, v)))
            .map(|(j, v)| offs[j] + v)
            .collect();
        let composite = self.host.compose(&beta, &lifted)?;
        let x: Vec<Obj> = inner.iter().flat_map(|a| a.dom.iter().cloned()).collect();
        canonical(&self.host, &composite, &tight, &x)
    }
}

/// `η: α ↦ (α, id)`.
pub fn unit(a: &Arrow) -> Arrow {
    encode(a.clone(), &ordinal::identity(a.arity()), a.dom.clone())
}

/// `μ: ((α, f), g) ↦ (α, g∘f)` for an arrow of `M^cart^cart`; `m` is the host `M`.
pub fn mult(m: &Multicat, a: &Arrow) -> Result<Arrow> {
    let (inner, g) = decode(a)?;
    let (alpha, f) = decode(&inner)?;
    canonical(m, &alpha, &ordinal::compose(&g, &f), &a.dom)
}

/// `φ^cart: (α, f) ↦ (φ α, f)`; `n` is the codomain host.
pub fn lift(n: &Multicat, phi: impl Fn(&Arrow) -> Result<Arrow>, a: &Arrow) -> Result<Arrow> {
    let (alpha, f) = decode(a)?;
    canonical(n, &phi(&alpha)?, &f, &a.dom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::multicat::builtin::{from_category, terminal, unary};
    use crate::multicat::validate;

    fn star(n: usize) -> Vec<Obj> {
        vec!["*".to_string(); n]
    }

    #[test]
    fn espan_of_terminal_counts_bounded_vectors() {
        let t = espan(&terminal(3));
        // (α, f: p → n) up to relabeling is a vector in N^n with sum p ≤ 3
        for n in 0..=3 {
            let expected = ordinal::all_maps(n, 4).iter().filter(|v| v.iter().sum::<usize>() <= 3).count();
            assert_eq!(t.hom(&star(n), "*").unwrap().len(), expected, "n = {n}");
        }
    }

    #[test]
    fn espan_of_u_picks_one_input() {
        let t = espan(&unary(3));
        for n in 0..=3 {
            assert_eq!(t.hom(&star(n), "*").unwrap().len(), n);
        }
    }

    #[test]
    fn espan_is_a_multicategory() {
        for m in [terminal(2), unary(2), from_category(&FinCategory::walking_arrow(), 2).unwrap()] {
            let r = validate(&espan(&m)).unwrap();
            assert!(r.passed(), "{}: {:?}", m.name(), r.violations);
        }
    }

    #[test]
    fn canonical_forms_ignore_apex_order() {
        let m = from_category(&FinCategory::walking_arrow(), 3).unwrap();
        let x = vec!["A".to_string(), "A".to_string()];
        let alpha = m.hom(&["A".to_string(), "A".to_string()], "B").unwrap().remove(0);
        let a = canonical(&m, &alpha, &[1, 0], &x).unwrap();
        let b = canonical(&m, &m.permute(&alpha, &[1, 0]).unwrap(), &[0, 1], &x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identity_spans_are_units() {
        let m = terminal(3);
        let t = espan(&m);
        let e = t.hom(&star(2), "*").unwrap()[3].clone();
        let id = t.identity("*").unwrap();
        assert_eq!(t.compose(&id, std::slice::from_ref(&e)).unwrap(), e);
        assert_eq!(mult(&m, &unit(&e)).unwrap(), e);
    }
}
