//! The two law suites for a reindexing rule, and the monad laws of `(-)^cart`.
//!
//! The direct suite checks unit, functoriality, Frobenius, Beck–Chevalley and
//! tailing. The algebra suite checks that `Γ: M^cart → M` is a morphism of
//! multicategories satisfying the algebra equations for `η` and `μ`.

use std::collections::BTreeMap;

use serde_json::json;

use crate::cartesian::espan::{self, espan};
use crate::cartesian::{
    by_cod, compose_under, extensions, finset, loose_out, push_loose, record_eq, reindex_loose, show, thin, tuples,
    CartStructure,
};
use crate::error::{bound, Result};
use crate::finset::FinMap;
use crate::multicat::{Arrow, LooseArrow, MultiArrow, Multicat, Obj, ObjFamily};
use crate::ordinal;
use crate::report::{expect_eq, Report};

fn fam(x: &[Obj]) -> String {
    format!("({})", x.join(","))
}

/// Unit, functoriality, Frobenius, Beck–Chevalley and tailing.
pub fn check_laws(cs: &CartStructure) -> Result<Report> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    let mut r = Report::new(format!("cartesian laws {}", cs.name()), k);
    let arrows = thin(m.arrows_upto(k)?, s);

    for a in &arrows {
        let id = ordinal::identity(a.arity());
        r.record("unit", || a.to_string(), cs.push(a, &id, &a.dom).map(|b| expect_eq(&b, a)))?;
    }

    for a in &arrows {
        for nm in 0..=k {
            for f in thin(ordinal::all_maps(a.arity(), nm), s) {
                for y in thin(extensions(m, &a.dom, &f, nm), s) {
                    let pushed = cs.push(a, &f, &y)?;
                    for np in 0..=k {
                        for g in thin(ordinal::all_maps(nm, np), s) {
                            for z in thin(extensions(m, &y, &g, np), s) {
                                let lhs = cs.push(&pushed, &g, &z);
                                let rhs = cs.push(a, &ordinal::compose(&g, &f), &z);
                                record_eq(&mut r, "functoriality", || format!("α={a} f={f:?} g={g:?} Z={}", fam(&z)), lhs, rhs)?;
                            }
                        }
                    }
                }
            }
        }
    }

    frobenius(cs, &mut r)?;
    beck_chevalley(cs, &arrows, &mut r)?;
    beck_chevalley_tokens(cs, &mut r)?;
    tailing(cs, &mut r)?;
    Ok(r.finish())
}

/// `h_!(β ∘ g*α) = (g_!β) ∘ α` for a loose `α` over `a: n → m` and `g: p → m`.
fn frobenius(cs: &CartStructure, r: &mut Report) -> Result<()> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    for n in 0..=k {
        for x in thin(m.families(n), s) {
            for nm in 0..=k {
                for a in thin(ordinal::sorted_maps(n, nm), s) {
                    let afib = ordinal::fibers(&a, nm);
                    for np in 0..=k {
                        for g in thin(ordinal::all_maps(np, nm), s) {
                            let w: usize = g.iter().map(|&j| afib[j].len()).sum();
                            if w > k {
                                r.stats.out_of_range += 1;
                                continue;
                            }
                            // pairs (i, v) with a(i) = g(v), lexicographic
                            let pairs: Vec<(usize, usize)> = (0..n)
                                .flat_map(|i| (0..np).filter(|&v| g[v] == a[i]).map(move |v| (i, v)).collect::<Vec<_>>())
                                .collect();
                            let h: Vec<usize> = pairs.iter().map(|p| p.0).collect();
                            // block order of β ∘ g*α is (v, i)
                            let blocks: Vec<Vec<usize>> = (0..np)
                                .map(|v| afib[g[v]].iter().map(|&i| pairs.iter().position(|&p| p == (i, v)).unwrap()).collect())
                                .collect();
                            for alphas in thin(loose_out(m, &x, &a, nm, s)?, s) {
                                let ys: Vec<Obj> = alphas.iter().map(|c| c.cod.clone()).collect();
                                let yg: Vec<Obj> = g.iter().map(|&j| ys[j].clone()).collect();
                                for beta in thin(m.out_arrows(&yg)?, s) {
                                    let lhs = m
                                        .compose(&beta, &g.iter().map(|&j| alphas[j].clone()).collect::<Vec<_>>())
                                        .and_then(|c| m.unblock(c, &blocks))
                                        .and_then(|c| cs.push(&c, &h, &x));
                                    let rhs = cs.push(&beta, &g, &ys).and_then(|gb| compose_under(m, &gb, &alphas, &a));
                                    record_eq(r, "frobenius", || format!("α={} over {a:?} β={beta} g={g:?}", show(&alphas)), lhs, rhs)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Reindexing commutes with relabeling both ends: the bijective squares.
fn beck_chevalley(cs: &CartStructure, arrows: &[Arrow], r: &mut Report) -> Result<()> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    for a in arrows {
        let n = a.arity();
        for nm in 0..=k {
            for f in thin(ordinal::all_maps(n, nm), s) {
                for y in thin(extensions(m, &a.dom, &f, nm), s) {
                    let pushed = cs.push(a, &f, &y)?;
                    for sigma in thin(ordinal::permutations(n), s) {
                        let moved = m.permute(a, &sigma)?;
                        for tau in thin(ordinal::permutations(nm), s) {
                            let tinv = ordinal::inverse(&tau);
                            let f2 = ordinal::compose(&tinv, &ordinal::compose(&f, &sigma));
                            let y2: Vec<Obj> = tau.iter().map(|&j| y[j].clone()).collect();
                            let lhs = cs.push(&moved, &f2, &y2);
                            let rhs = m.permute(&pushed, &tau);
                            record_eq(r, "beck-chevalley", || format!("α={a} f={f:?} σ={sigma:?} τ={tau:?}"), lhs, rhs)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn tokens(n: usize) -> crate::finset::FinSet {
    finset(n)
}

fn loose(x: &[Obj], a: &[usize], nk: usize, comps: &[Arrow]) -> Result<LooseArrow> {
    let i = tokens(x.len());
    let kk = tokens(nk);
    let base = FinMap::from_ordinal(&i, &kk, a);
    let mut components = BTreeMap::new();
    for (j, c) in comps.iter().enumerate() {
        let fib = crate::finset::fiber(&base, kk.token(j))?;
        components.insert(kk.token(j).to_string(), MultiArrow::from_ordinal(c, &fib)?);
    }
    LooseArrow::new(base, components)
}

/// `l*(f_!α) = f'_!(l*α)` on unbiased loose arrows, through canonical pullbacks.
fn beck_chevalley_tokens(cs: &CartStructure, r: &mut Report) -> Result<()> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    for n in 0..=k.min(3) {
        for nj in 0..=2 {
            for nk in 1..=2 {
                for b in ordinal::all_maps(nj, nk) {
                    for f in thin(ordinal::all_maps(n, nj), s) {
                        let a = ordinal::compose(&b, &f);
                        for y in thin(m.families(nj), s) {
                            let x: Vec<Obj> = f.iter().map(|&j| y[j].clone()).collect();
                            for comps in thin(loose_out(m, &x, &a, nk, s)?, s) {
                                for nl in 1..=2 {
                                    for l in ordinal::all_maps(nl, nk) {
                                        let out = bc_instance(cs, &x, &y, &f, &b, &a, nk, &comps, &l);
                                        let out = out.and_then(|o| o.ok_or_else(|| bound("pullback beyond the bound")));
                                        r.record(
                                            "beck-chevalley",
                                            || format!("α={} f={f:?} b={b:?} l={l:?}", show(&comps)),
                                            out,
                                        )?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn bc_instance(
    cs: &CartStructure,
    x: &[Obj],
    y: &[Obj],
    f: &[usize],
    b: &[usize],
    a: &[usize],
    nk: usize,
    comps: &[Arrow],
    l: &[usize],
) -> Result<Option<Option<String>>> {
    let m = cs.host();
    let alpha = loose(x, a, nk, comps)?;
    let (ti, tj, tk, tl) = (tokens(x.len()), tokens(y.len()), tokens(nk), tokens(l.len()));
    let fm = FinMap::from_ordinal(&ti, &tj, f);
    let bm = FinMap::from_ordinal(&tj, &tk, b);
    let lm = FinMap::from_ordinal(&tl, &tk, l);
    let yf = ObjFamily::from_ordinal(&tj, y)?;
    let sq_i = crate::finset::pullback(&alpha.base, &lm)?;
    if sq_i.apex.len() > m.bound() {
        return Ok(None);
    }
    let lhs = reindex_loose(m, &push_loose(cs, &alpha, &fm, &bm, &yf)?, &lm)?;
    let sq_j = crate::finset::pullback(&bm, &lm)?;
    let pulled = reindex_loose(m, &alpha, &lm)?;
    let table = sq_i
        .apex
        .iter()
        .map(|p| {
            let i = sq_i.left.apply(p);
            let xl = sq_i.top.apply(p);
            (p.clone(), crate::finset::pair_token(fm.apply(i), xl))
        })
        .collect();
    let f2 = FinMap::new(sq_i.apex.clone(), sq_j.apex.clone(), table)?;
    let y2 = yf.reindex(&sq_j.left)?;
    let rhs = push_loose(cs, &pulled, &f2, &sq_j.top, &y2)?;
    Ok(Some((lhs != rhs).then(|| format!("{:?} ≠ {:?}", lhs.components, rhs.components))))
}

/// `f_!(β ∘ α) = β ∘ (f_!α)` where `f_!α` is taken fiberwise over `b` with `a = b∘f`.
fn tailing(cs: &CartStructure, r: &mut Report) -> Result<()> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    for n in 0..=k {
        for nj in 0..=k {
            for nk in 0..=k {
                for b in thin(ordinal::sorted_maps(nj, nk), s) {
                    let bfib = ordinal::fibers(&b, nk);
                    let rank = ordinal::fiber_positions(&b, nk);
                    for f in thin(ordinal::all_maps(n, nj), s) {
                        let a = ordinal::compose(&b, &f);
                        let afib = ordinal::fibers(&a, nk);
                        for y in thin(m.families(nj), s) {
                            let x: Vec<Obj> = f.iter().map(|&j| y[j].clone()).collect();
                            for alphas in loose_out(m, &x, &a, nk, s)? {
                                let ys: Vec<Obj> = alphas.iter().map(|c| c.cod.clone()).collect();
                                let deltas: Result<Vec<Arrow>> = (0..nk)
                                    .map(|q| {
                                        let fq: Vec<usize> = afib[q].iter().map(|&i| rank[f[i]]).collect();
                                        cs.push(&alphas[q], &fq, &ordinal::restrict(&y, &bfib[q]))
                                    })
                                    .collect();
                                for beta in thin(m.out_arrows(&ys)?, s) {
                                    let lhs = compose_under(m, &beta, &alphas, &a).and_then(|c| cs.push(&c, &f, &y));
                                    let rhs = deltas.clone().and_then(|d| compose_under(m, &beta, &d, &b));
                                    record_eq(r, "tailing", || format!("β={beta} α={} f={f:?} b={b:?}", show(&alphas)), lhs, rhs)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `Γ` evaluated on an arrow of `M^cart` through its stored representative.
fn gamma_hat(cs: &CartStructure, e: &Arrow) -> Result<Arrow> {
    let (alpha, f) = espan::decode(e)?;
    cs.push(&alpha, &f, &e.dom)
}

/// The algebra equations for `Γ: M^cart → M`.
pub fn check_algebra(cs: &CartStructure) -> Result<Report> {
    let m = cs.host();
    let k = m.bound();
    let s = cs.sample();
    let mut r = Report::new(format!("cartesian algebra {}", cs.name()), k);
    let t = espan(m);
    let tt = espan(&t);

    // Γ is well defined on spans: it ignores the choice of representative
    for a in thin(m.arrows_upto(k)?, s) {
        let n = a.arity();
        for nm in 0..=k {
            for f in thin(ordinal::all_maps(n, nm), s) {
                for y in thin(extensions(m, &a.dom, &f, nm), s) {
                    let base = cs.push(&a, &f, &y)?;
                    for sigma in thin(ordinal::permutations(n), s).into_iter().skip(1) {
                        let moved = m.permute(&a, &sigma);
                        let lhs = moved.and_then(|b| cs.push(&b, &ordinal::compose(&f, &sigma), &y));
                        record_eq(&mut r, "algebra-representative", || format!("α={a} f={f:?} σ={sigma:?}"), lhs, Ok(base.clone()))?;
                    }
                }
            }
        }
        let lhs = gamma_hat(cs, &espan::unit(&a));
        record_eq(&mut r, "algebra-unit", || a.to_string(), lhs, Ok(a.clone()))?;
    }

    for z in thin(tt.arrows_upto(k)?, s) {
        let lhs = espan::mult(m, &z).and_then(|e| gamma_hat(cs, &e));
        let rhs = espan::lift(m, |e| gamma_hat(cs, e), &z).and_then(|e| gamma_hat(cs, &e));
        record_eq(&mut r, "algebra-multiplication", || z.to_string(), lhs, rhs)?;
    }

    let tarrows = thin(t.arrows_upto(k)?, s);
    let tby = by_cod(&tarrows);
    for e in &tarrows {
        let ge = gamma_hat(cs, e)?;
        for sigma in thin(ordinal::permutations(e.arity()), s) {
            let lhs = t.permute(e, &sigma).and_then(|p| gamma_hat(cs, &p));
            let rhs = m.permute(&ge, &sigma);
            record_eq(&mut r, "algebra-symmetry", || format!("{e} σ={sigma:?}"), lhs, rhs)?;
        }
        for es in thin(tuples(&tby, &e.dom, k), s) {
            let lhs = t.compose(e, &es).and_then(|c| gamma_hat(cs, &c));
            let rhs = es
                .iter()
                .map(|x| gamma_hat(cs, x))
                .collect::<Result<Vec<_>>>()
                .and_then(|gs| m.compose(&ge, &gs));
            record_eq(&mut r, "algebra-composition", || format!("{e} ∘ {}", show(&es)), lhs, rhs)?;
        }
    }
    Ok(r.finish())
}

/// `f_!α = (f⁻¹)*α` for every bijection `f`.
pub fn check_coherence(cs: &CartStructure) -> Result<Report> {
    let m = cs.host();
    let k = m.bound();
    let mut r = Report::new(format!("coherence {}", cs.name()), k);
    for a in thin(m.arrows_upto(k)?, cs.sample()) {
        for f in ordinal::permutations(a.arity()) {
            let y: Vec<Obj> = ordinal::inverse(&f).iter().map(|&i| a.dom[i].clone()).collect();
            let lhs = cs.push(&a, &f, &y);
            let rhs = m.permute(&a, &ordinal::inverse(&f));
            record_eq(&mut r, "coherence", || format!("α={a} f={f:?}"), lhs, rhs)?;
        }
    }
    Ok(r.finish())
}

/// Both suites, with a cross-check that they reach the same verdict.
pub fn check_cartesian(cs: &CartStructure) -> Result<Report> {
    let laws = check_laws(cs)?;
    let algebra = check_algebra(cs)?;
    let (lp, ap) = (laws.passed(), algebra.passed());
    let mut r = Report::new(format!("cartesian {}", cs.name()), cs.host().bound());
    r.merge(laws);
    r.merge(algebra);
    if lp != ap {
        r.violation(
            "formulations-agree",
            cs.name(),
            format!("direct laws {}, algebra equations {}", verdict(lp), verdict(ap)),
        );
    }
    r.details.insert("laws".into(), json!(verdict(lp)));
    r.details.insert("algebra".into(), json!(verdict(ap)));
    r.details.insert("agree".into(), json!(lp == ap));
    Ok(r.finish())
}

fn verdict(p: bool) -> &'static str {
    if p {
        "pass"
    } else {
        "fail"
    }
}

/// The monad laws of `(-)^cart` on `m`: both unit laws on `M^cart` and
/// associativity on `M^cart^cart^cart`, exhaustively within the bound.
/// Preservation of composition by `η` and `μ` is checked on lists thinned to `sample`.
pub fn monad_report(m: &Multicat, sample: usize) -> Result<Report> {
    let k = m.bound();
    let mut r = Report::new(format!("cart monad {}", m.name()), k);
    let t = espan(m);
    let tt = espan(&t);
    let ttt = espan(&tt);

    let tarrows = t.arrows_upto(k)?;
    for e in &tarrows {
        r.record("unit-left", || e.to_string(), espan::mult(m, &espan::unit(e)).map(|x| expect_eq(&x, e)))?;
        let lifted = espan::lift(&t, |a| Ok(espan::unit(a)), e).and_then(|z| espan::mult(m, &z));
        r.record("unit-right", || e.to_string(), lifted.map(|x| expect_eq(&x, e)))?;
    }
    for w in ttt.arrows_upto(k)? {
        let lhs = espan::mult(&t, &w).and_then(|z| espan::mult(m, &z));
        let rhs = espan::lift(&t, |z| espan::mult(m, z), &w).and_then(|z| espan::mult(m, &z));
        record_eq(&mut r, "associativity", || w.to_string(), lhs, rhs)?;
    }

    let marrows = m.arrows_upto(k)?;
    let mby = by_cod(&marrows);
    for b in thin(marrows.clone(), sample) {
        let b = &b;
        for alphas in thin(tuples(&mby, &b.dom, k), sample) {
            let lhs = m.compose(b, &alphas).map(|c| espan::unit(&c));
            let us: Vec<Arrow> = alphas.iter().map(espan::unit).collect();
            let rhs = t.compose(&espan::unit(b), &us);
            record_eq(&mut r, "unit-morphism", || format!("{b} ∘ {}", show(&alphas)), lhs, rhs)?;
        }
    }
    let ttarrows = tt.arrows_upto(k)?;
    let ttby = by_cod(&ttarrows);
    for z in thin(ttarrows.clone(), sample) {
        let z = &z;
        for zs in thin(tuples(&ttby, &z.dom, k), sample) {
            let lhs = tt.compose(z, &zs).and_then(|c| espan::mult(m, &c));
            let rhs = espan::mult(m, z).and_then(|mz| {
                let mzs = zs.iter().map(|x| espan::mult(m, x)).collect::<Result<Vec<_>>>()?;
                t.compose(&mz, &mzs)
            });
            record_eq(&mut r, "multiplication-morphism", || format!("{z} ∘ {}", show(&zs)), lhs, rhs)?;
        }
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::gammas::{free_cartesian, from_rig, functions_cartesian, rig_arrow, FaultGamma, RigGamma, UniqueGamma};
    use crate::fincat::FinCategory;
    use crate::multicat::builtin::{from_category, rig_multicat, terminal, unary};
    use crate::multicat::Rig;

    fn star(n: usize) -> Vec<Obj> {
        vec!["*".to_string(); n]
    }

    #[test]
    fn rig_z2_passes_everything() {
        let cs = from_rig(&Rig::zmod(2), 3).unwrap();
        let r = check_cartesian(&cs).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.stats.instances > 1000);
        assert!(check_coherence(&cs).unwrap().passed());
    }

    #[test]
    fn terminal_and_free_pass() {
        let cs = CartStructure::new(terminal(3), UniqueGamma);
        assert!(check_cartesian(&cs).unwrap().passed());
        let free = free_cartesian(&terminal(2));
        let r = check_cartesian(&free).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn free_on_walking_arrow_passes() {
        let m = from_category(&FinCategory::walking_arrow(), 2).unwrap();
        let r = check_cartesian(&free_cartesian(&m)).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn functions_pass_sampled() {
        let cs = functions_cartesian(&[("A", 2)], 2).unwrap();
        let r = check_cartesian(&cs).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn corrupted_nullary_entry_breaks_frobenius() {
        let cs = from_rig(&Rig::zmod(2), 3).unwrap();
        let bad = FaultGamma::corrupt(&cs, rig_arrow(&[]), vec![], star(1), rig_arrow(&["1"]));
        let r = check_cartesian(&bad).unwrap();
        assert!(!r.passed());
        let laws = r.laws_violated();
        assert!(laws.contains(&"frobenius".to_string()), "{laws:?}");
        assert!(laws.iter().any(|l| l.starts_with("algebra-")), "{laws:?}");
        assert_eq!(r.details["agree"], json!(true));
    }

    #[test]
    fn idempotent_addition_fails_over_z3() {
        let z3 = Rig::zmod(3);
        let mut wrong = z3.clone();
        wrong.add = z3
            .carrier
            .iter()
            .map(|a| (a.clone(), z3.carrier.iter().map(|b| (b.clone(), a.max(b).clone())).collect()))
            .collect();
        let cs = CartStructure::new(rig_multicat(&z3, 2).unwrap(), RigGamma { rig: wrong });
        let r = check_cartesian(&cs).unwrap();
        assert!(r.laws_violated().contains(&"frobenius".to_string()));
        assert_eq!(r.details["agree"], json!(true));
    }

    #[test]
    fn two_additions_on_one_multiplication() {
        let host = rig_multicat(&Rig::zmod(2), 3).unwrap();
        let plus = CartStructure::new(host.clone(), RigGamma { rig: Rig::zmod(2) });
        let or = CartStructure::new(host, RigGamma { rig: Rig::boolean() });
        assert!(check_cartesian(&or).unwrap().passed());
        let a = rig_arrow(&["1", "1"]);
        assert_ne!(plus.push(&a, &[0, 0], &star(1)).unwrap(), or.push(&a, &[0, 0], &star(1)).unwrap());
    }

    #[test]
    fn monad_laws_hold() {
        for m in [terminal(3), unary(3), from_category(&FinCategory::walking_arrow(), 3).unwrap()] {
            let r = monad_report(&m, 16).unwrap();
            assert!(r.passed(), "{}: {:?}", m.name(), r.violations);
            assert!(r.stats.instances > 0);
        }
    }
}
