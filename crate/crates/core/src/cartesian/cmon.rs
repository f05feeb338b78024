//! Categories enriched in commutative monoids and the reindexing rule they give on `C_▶`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartesian::{CartStructure, Gamma};
use crate::error::{structural, Error, Result};
use crate::fincat::{ArrowDecl, FinCategory};
use crate::finset::FinSet;
use crate::multicat::builtin::{from_category, list_of_syms, syms};
use crate::multicat::{Arrow, Multicat, Obj, Rig};
use crate::ordinal;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub src: String,
    pub tgt: String,
    pub arrow: String,
}

/// `f + g = result`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AddEntry {
    pub f: String,
    pub g: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CMonData {
    category: FinCategory,
    zeros: Vec<ZeroEntry>,
    add: Vec<AddEntry>,
}

/// A finite category whose hom-sets are commutative monoids, bilinear under composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CMonData", into = "CMonData")]
pub struct CMonCategory {
    category: FinCategory,
    zeros: BTreeMap<(String, String), String>,
    add: BTreeMap<(String, String), String>,
}

impl TryFrom<CMonData> for CMonCategory {
    type Error = Error;
    fn try_from(d: CMonData) -> Result<CMonCategory> {
        CMonCategory::new(d.category, d.zeros, d.add)
    }
}

impl From<CMonCategory> for CMonData {
    fn from(c: CMonCategory) -> CMonData {
        CMonData {
            zeros: c
                .zeros
                .iter()
                .map(|((s, t), a)| ZeroEntry {
                    src: s.clone(),
                    tgt: t.clone(),
                    arrow: a.clone(),
                })
                .collect(),
            add: c
                .add
                .iter()
                .map(|((f, g), r)| AddEntry {
                    f: f.clone(),
                    g: g.clone(),
                    result: r.clone(),
                })
                .collect(),
            category: c.category,
        }
    }
}

impl CMonCategory {
    /// Build and validate: totality, monoid laws per hom-set, and bilinearity.
    pub fn new(category: FinCategory, zeros: Vec<ZeroEntry>, add: Vec<AddEntry>) -> Result<CMonCategory> {
        category.check_laws()?;
        let mut z = BTreeMap::new();
        for e in zeros {
            if !category.hom(&e.src, &e.tgt).contains(&e.arrow) {
                return Err(structural(format!("zero {} is not in hom({}, {})", e.arrow, e.src, e.tgt)));
            }
            z.insert((e.src, e.tgt), e.arrow);
        }
        let mut t = BTreeMap::new();
        for e in add {
            if !category.has_arrow(&e.f) || !category.has_arrow(&e.g) || !category.has_arrow(&e.result) {
                return Err(structural(format!("sum {}+{} names an unknown arrow", e.f, e.g)));
            }
            let sig = |a: &str| (category.src(a).to_string(), category.tgt(a).to_string());
            if sig(&e.f) != sig(&e.g) || sig(&e.f) != sig(&e.result) {
                return Err(structural(format!("sum {}+{} is not between parallel arrows", e.f, e.g)));
            }
            t.insert((e.f, e.g), e.result);
        }
        let c = CMonCategory {
            category,
            zeros: z,
            add: t,
        };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        let c = &self.category;
        let objs: Vec<&String> = c.objects().iter().collect();
        for a in &objs {
            for b in &objs {
                let hom = c.hom(a, b);
                let zero = self
                    .zeros
                    .get(&((*a).clone(), (*b).clone()))
                    .ok_or_else(|| Error::Validation(format!("hom({a}, {b}) has no zero")))?;
                for f in hom {
                    for g in hom {
                        if !self.add.contains_key(&(f.clone(), g.clone())) {
                            return Err(structural(format!("sum {f}+{g} missing")));
                        }
                    }
                }
                let bad = |m: String| Err(Error::Validation(m));
                for f in hom {
                    if self.plus(f, zero) != f {
                        return bad(format!("{zero} is not neutral for {f}"));
                    }
                    for g in hom {
                        if self.plus(f, g) != self.plus(g, f) {
                            return bad(format!("{f}+{g} ≠ {g}+{f}"));
                        }
                        for h in hom {
                            if self.plus(self.plus(f, g), h) != self.plus(f, self.plus(g, h)) {
                                return bad(format!("addition is not associative at ({f},{g},{h})"));
                            }
                        }
                    }
                }
            }
        }
        // bilinearity
        for f in c.arrow_ids() {
            for h in c.arrow_ids() {
                if c.tgt(f) != c.src(h) {
                    continue;
                }
                let (a, b, d) = (c.src(f), c.tgt(f), c.tgt(h));
                let bad = |m: String| Err(Error::Validation(format!("composition is not bilinear: {m}")));
                if c.compose(h, self.zero(a, b))? != self.zero(a, d) {
                    return bad(format!("{h}∘0 ≠ 0"));
                }
                if c.compose(self.zero(b, d), f)? != self.zero(a, d) {
                    return bad(format!("0∘{f} ≠ 0"));
                }
                for g in c.hom(a, b) {
                    let lhs = c.compose(h, self.plus(f, g))?;
                    let rhs = self.plus(c.compose(h, f)?, c.compose(h, g)?);
                    if lhs != rhs {
                        return bad(format!("{h}∘({f}+{g}) = {lhs} but {h}∘{f} + {h}∘{g} = {rhs}"));
                    }
                }
                for k in c.hom(b, d) {
                    let lhs = c.compose(self.plus(h, k), f)?;
                    let rhs = self.plus(c.compose(h, f)?, c.compose(k, f)?);
                    if lhs != rhs {
                        return bad(format!("({h}+{k})∘{f} = {lhs} but {h}∘{f} + {k}∘{f} = {rhs}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn zero(&self, a: &str, b: &str) -> &str {
        &self.zeros[&(a.to_string(), b.to_string())]
    }

    pub fn plus(&self, f: &str, g: &str) -> &str {
        &self.add[&(f.to_string(), g.to_string())]
    }

    /// A rig as a one-object category with `g∘f = g·f`.
    pub fn from_rig(r: &Rig) -> Result<CMonCategory> {
        let elems = r.carrier.tokens().to_vec();
        let cat = FinCategory::from_monoid(&elems, &r.one, |g, f| r.times(g, f).to_string())?;
        let zeros = vec![ZeroEntry {
            src: "*".into(),
            tgt: "*".into(),
            arrow: r.zero.clone(),
        }];
        let add = elems
            .iter()
            .flat_map(|f| {
                elems.iter().map(move |g| AddEntry {
                    f: f.clone(),
                    g: g.clone(),
                    result: r.plus(f, g).to_string(),
                })
            })
            .collect();
        CMonCategory::new(cat, zeros, add)
    }

    /// Matrices over `r` between the given dimensions; object `n` is `r^n`.
    pub fn matrices(r: &Rig, dims: &[usize]) -> Result<CMonCategory> {
        let elems = r.carrier.tokens().to_vec();
        let objs = FinSet::new(dims.iter().map(|d| d.to_string()))?;
        let name = |m: usize, n: usize, e: &[String]| format!("{m}x{n}:{}", e.join(","));
        let mut arrows = Vec::new();
        let mut entries: BTreeMap<String, (usize, usize, Vec<String>)> = BTreeMap::new();
        for &n in dims {
            for &m in dims {
                for e in ordinal::product(&vec![elems.clone(); m * n]) {
                    let id = name(m, n, &e);
                    arrows.push(ArrowDecl {
                        id: id.clone(),
                        src: n.to_string(),
                        tgt: m.to_string(),
                    });
                    entries.insert(id, (m, n, e));
                }
            }
        }
        let ids = dims
            .iter()
            .map(|&n| {
                let e: Vec<String> = (0..n * n)
                    .map(|k| if k / n == k % n { r.one.clone() } else { r.zero.clone() })
                    .collect();
                (n.to_string(), name(n, n, &e))
            })
            .collect();
        let product = |g: &(usize, usize, Vec<String>), f: &(usize, usize, Vec<String>)| {
            let (m, n, p) = (g.0, g.1, f.1);
            let e: Vec<String> = (0..m * p)
                .map(|k| {
                    let (i, j) = (k / p, k % p);
                    let terms: Vec<String> = (0..n).map(|l| r.times(&g.2[i * n + l], &f.2[l * p + j]).to_string()).collect();
                    r.sum(terms.iter().map(String::as_str)).to_string()
                })
                .collect();
            name(m, p, &e)
        };
        let cat = FinCategory::from_fn(objs, arrows.clone(), ids, |g, f| product(&entries[g], &entries[f]))?;
        let zeros = dims
            .iter()
            .flat_map(|&n| dims.iter().map(move |&m| (n, m)))
            .map(|(n, m)| ZeroEntry {
                src: n.to_string(),
                tgt: m.to_string(),
                arrow: name(m, n, &vec![r.zero.clone(); m * n]),
            })
            .collect();
        let mut add = Vec::new();
        for f in &arrows {
            for g in &arrows {
                if f.src == g.src && f.tgt == g.tgt {
                    let (m, n, a) = &entries[&f.id];
                    let b = &entries[&g.id].2;
                    let e: Vec<String> = a.iter().zip(b).map(|(x, y)| r.plus(x, y).to_string()).collect();
                    add.push(AddEntry {
                        f: f.id.clone(),
                        g: g.id.clone(),
                        result: name(*m, *n, &e),
                    });
                }
            }
        }
        CMonCategory::new(cat, zeros, add)
    }

    /// Every hom-set a singleton: all objects are zero objects.
    pub fn trivial(objects: &[&str]) -> Result<CMonCategory> {
        let objs = FinSet::new(objects.iter().copied())?;
        let name = |a: &str, b: &str| if a == b { format!("1{a}") } else { format!("0{a}{b}") };
        let mut arrows = Vec::new();
        for a in objs.iter() {
            for b in objs.iter() {
                arrows.push(ArrowDecl {
                    id: name(a, b),
                    src: a.clone(),
                    tgt: b.clone(),
                });
            }
        }
        let ids = objs.iter().map(|a| (a.clone(), name(a, a))).collect();
        let decl: BTreeMap<String, (String, String)> =
            arrows.iter().map(|d| (d.id.clone(), (d.src.clone(), d.tgt.clone()))).collect();
        let cat = FinCategory::from_fn(objs.clone(), arrows.clone(), ids, |g, f| name(&decl[f].0, &decl[g].1))?;
        let zeros = arrows
            .iter()
            .map(|d| ZeroEntry {
                src: d.src.clone(),
                tgt: d.tgt.clone(),
                arrow: d.id.clone(),
            })
            .collect();
        let add = arrows
            .iter()
            .map(|d| AddEntry {
                f: d.id.clone(),
                g: d.id.clone(),
                result: d.id.clone(),
            })
            .collect();
        CMonCategory::new(cat, zeros, add)
    }
}

/// Fiberwise sums in the hom-monoids, zeros on empty fibers.
#[derive(Clone, Debug)]
pub struct CMonGamma {
    pub cmon: CMonCategory,
}

impl Gamma for CMonGamma {
    fn name(&self) -> String {
        "hom-sum".into()
    }
    fn push(&self, _m: &Multicat, alpha: &Arrow, f: &[usize], y: &[Obj]) -> Result<Arrow> {
        let xs = list_of_syms(&alpha.term)?;
        let b = &alpha.cod;
        let out: Vec<String> = ordinal::fibers(f, y.len())
            .iter()
            .zip(y)
            .map(|(fib, yj)| {
                fib.iter()
                    .fold(self.cmon.zero(yj, b), |acc, &i| self.cmon.plus(acc, &xs[i]))
                    .to_string()
            })
            .collect();
        Ok(Arrow::new(syms(&out), y.to_vec(), b.clone()))
    }
}

/// `C_▶` with the reindexing rule given by the enrichment.
pub fn from_cmon_enriched(c: &CMonCategory, bound: usize) -> Result<CartStructure> {
    Ok(CartStructure::new(
        from_category(&c.category, bound)?,
        CMonGamma { cmon: c.clone() },
    ))
}

/// Read the enrichment back off a reindexing rule on `C_▶`:
/// zeros from pushing the empty family, sums from pushing pairs to one point.
pub fn extract_enrichment(c: &FinCategory, cs: &CartStructure) -> Result<CMonCategory> {
    let one = |a: &Arrow| -> Result<String> {
        let xs = list_of_syms(&a.term)?;
        xs.into_iter()
            .next()
            .ok_or_else(|| structural(format!("{a} is not a unary family")))
    };
    let mut zeros = Vec::new();
    let mut add = Vec::new();
    for a in c.objects().iter() {
        for b in c.objects().iter() {
            let empty = Arrow::new(syms(&[]), vec![], b.clone());
            let z = cs.push(&empty, &[], std::slice::from_ref(a))?;
            zeros.push(ZeroEntry {
                src: a.clone(),
                tgt: b.clone(),
                arrow: one(&z)?,
            });
            for f in c.hom(a, b) {
                for g in c.hom(a, b) {
                    let pair = Arrow::new(syms(&[f.clone(), g.clone()]), vec![a.clone(), a.clone()], b.clone());
                    let s = cs.push(&pair, &[0, 0], std::slice::from_ref(a))?;
                    add.push(AddEntry {
                        f: f.clone(),
                        g: g.clone(),
                        result: one(&s)?,
                    });
                }
            }
        }
    }
    CMonCategory::new(c.clone(), zeros, add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::gammas::{from_rig, rig_arrow};
    use crate::cartesian::laws::check_cartesian;

    #[test]
    fn one_object_case_is_the_rig() {
        let r = Rig::zmod(3);
        let a = from_cmon_enriched(&CMonCategory::from_rig(&r).unwrap(), 2).unwrap();
        let b = from_rig(&r, 2).unwrap();
        let star = |n| vec!["*".to_string(); n];
        assert_eq!(a.host().hom(&star(2), "*").unwrap(), b.host().hom(&star(2), "*").unwrap());
        let x = rig_arrow(&["1", "2"]);
        for f in ordinal::all_maps(2, 2) {
            assert_eq!(a.push(&x, &f, &star(2)).unwrap(), b.push(&x, &f, &star(2)).unwrap());
        }
        assert_eq!(a.host().compose(&x, &[rig_arrow(&["2"]), rig_arrow(&["2"])]).unwrap(), rig_arrow(&["2", "1"]));
    }

    #[test]
    fn trivial_enrichment_passes() {
        let c = CMonCategory::trivial(&["Z", "Z'"]).unwrap();
        let r = check_cartesian(&from_cmon_enriched(&c, 2).unwrap()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn extraction_inverts_the_constructor() {
        for c in [CMonCategory::trivial(&["Z", "Z'"]).unwrap(), CMonCategory::from_rig(&Rig::zmod(2)).unwrap()] {
            let cs = from_cmon_enriched(&c, 2).unwrap();
            assert_eq!(extract_enrichment(c.category(), &cs).unwrap(), c);
        }
    }

    #[test]
    fn non_bilinear_sum_is_rejected() {
        // idempotent addition on Z/3's multiplication breaks distributivity
        let r = Rig::zmod(3);
        let elems = r.carrier.tokens().to_vec();
        let cat = FinCategory::from_monoid(&elems, "1", |g, f| r.times(g, f).to_string()).unwrap();
        let zeros = vec![ZeroEntry { src: "*".into(), tgt: "*".into(), arrow: "0".into() }];
        let add = elems
            .iter()
            .flat_map(|f| elems.iter().map(move |g| AddEntry { f: f.clone(), g: g.clone(), result: f.max(g).clone() }))
            .collect();
        let e = CMonCategory::new(cat, zeros, add).unwrap_err();
        assert!(matches!(e, Error::Validation(ref m) if m.contains("bilinear")), "{e}");
    }

    #[test]
    fn json_round_trip() {
        let c = CMonCategory::from_rig(&Rig::zmod(2)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CMonCategory>(&s).unwrap(), c);
    }
}
