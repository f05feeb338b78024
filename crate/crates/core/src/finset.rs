//! Finite sets of string tokens, maps between them, canonical pullbacks,
//! sums, and the order and section decorations on maps.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Result};
use crate::ordinal;

/// A finite set of tokens, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FinSet(Vec<String>);

impl<'de> Deserialize<'de> for FinSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        FinSet::new(v).map_err(serde::de::Error::custom)
    }
}

impl FinSet {
    /// Sorts the tokens; duplicates are rejected.
    pub fn new<I, S>(tokens: I) -> Result<FinSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = tokens.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(structural(format!("duplicate token {:?}", w[0])));
        }
        Ok(FinSet(v))
    }

    pub fn empty() -> FinSet {
        FinSet(Vec::new())
    }

    /// The canonical index set `{"1", …, "n"}`.
    pub fn range(n: usize) -> FinSet {
        FinSet::new((1..=n).map(|k| k.to_string())).expect("distinct")
    }

    pub fn singleton(t: impl Into<String>) -> FinSet {
        FinSet(vec![t.into()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }

    pub fn contains(&self, t: &str) -> bool {
        self.rank(t).is_some()
    }

    /// Position of `t` in the sorted enumeration.
    pub fn rank(&self, t: &str) -> Option<usize> {
        self.0.binary_search_by(|x| x.as_str().cmp(t)).ok()
    }

    pub fn token(&self, k: usize) -> &str {
        &self.0[k]
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

pub fn pair_token(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// A total map between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FinMap {
    pub dom: FinSet,
    pub cod: FinSet,
    pub table: BTreeMap<String, String>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: BTreeMap<String, String>) -> Result<FinMap> {
        let m = FinMap { dom, cod, table };
        m.check()?;
        Ok(m)
    }

    pub fn from_pairs<'a>(
        dom: FinSet,
        cod: FinSet,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<FinMap> {
        let table = pairs
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        FinMap::new(dom, cod, table)
    }

    /// Reject tables that are not total on `dom` or leave `cod`.
    pub fn check(&self) -> Result<()> {
        if self.table.len() != self.dom.len() {
            return Err(structural("map table is not total on its domain"));
        }
        for (a, b) in &self.table {
            if !self.dom.contains(a) {
                return Err(structural(format!("map table has stray key {a:?}")));
            }
            if !self.cod.contains(b) {
                return Err(structural(format!("map value {b:?} is not in the codomain")));
            }
        }
        Ok(())
    }

    pub fn identity(s: &FinSet) -> FinMap {
        FinMap {
            dom: s.clone(),
            cod: s.clone(),
            table: s.iter().map(|t| (t.clone(), t.clone())).collect(),
        }
    }

    /// The unique map into a one-point set.
    pub fn to_point(dom: &FinSet, point: &str) -> FinMap {
        FinMap {
            dom: dom.clone(),
            cod: FinSet::singleton(point),
            table: dom.iter().map(|t| (t.clone(), point.to_string())).collect(),
        }
    }

    pub fn apply(&self, t: &str) -> &str {
        &self.table[t]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinMap) -> Result<FinMap> {
        if f.cod != self.dom {
            return Err(structural("composing maps with mismatched middle set"));
        }
        Ok(FinMap {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            table: f
                .table
                .iter()
                .map(|(a, b)| (a.clone(), self.table[b].clone()))
                .collect(),
        })
    }

    pub fn is_bijection(&self) -> bool {
        ordinal::is_bijection(&self.to_ordinal(), self.cod.len())
    }

    pub fn inverse(&self) -> Result<FinMap> {
        if !self.is_bijection() {
            return Err(structural("inverse of a non-bijective map"));
        }
        Ok(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: self.table.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        })
    }

    /// The map on ranks.
    pub fn to_ordinal(&self) -> Vec<usize> {
        self.dom
            .iter()
            .map(|a| self.cod.rank(&self.table[a]).expect("checked map"))
            .collect()
    }

    pub fn from_ordinal(dom: &FinSet, cod: &FinSet, f: &[usize]) -> FinMap {
        FinMap {
            dom: dom.clone(),
            cod: cod.clone(),
            table: dom
                .iter()
                .zip(f)
                .map(|(a, &j)| (a.clone(), cod.token(j).to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.table.iter().map(|(a, b)| format!("{a}↦{b}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The fiber `{ i | f(i) = j }`.
pub fn fiber(f: &FinMap, j: &str) -> Result<FinSet> {
    if !f.cod.contains(j) {
        return Err(structural(format!("{j:?} is not in the codomain")));
    }
    Ok(FinSet(
        f.dom.iter().filter(|i| f.table[*i] == j).cloned().collect(),
    ))
}

/// A pullback square `g ∘ top = f ∘ left` with apex `{(i,l) | f(i) = g(l)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbSquare {
    /// Bottom, `I → J`.
    pub f: FinMap,
    /// Right, `L → J`.
    pub g: FinMap,
    /// Top, `apex → L`.
    pub top: FinMap,
    /// Left, `apex → I`.
    pub left: FinMap,
    pub apex: FinSet,
}

impl PbSquare {
    pub fn commutes(&self) -> bool {
        match (self.g.after(&self.top), self.f.after(&self.left)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// The comparison map from `other`'s apex, if `other` is a cone over the same cospan.
    ///
    /// Returns `None` when the cone does not factor uniquely.
    pub fn factor(&self, cone_left: &FinMap, cone_top: &FinMap) -> Option<FinMap> {
        if cone_left.dom != cone_top.dom {
            return None;
        }
        let mut table = BTreeMap::new();
        for x in cone_left.dom.iter() {
            let i = cone_left.apply(x);
            let l = cone_top.apply(x);
            if self.f.apply(i) != self.g.apply(l) {
                return None;
            }
            let hits: Vec<&String> = self
                .apex
                .iter()
                .filter(|p| self.left.apply(p) == i && self.top.apply(p) == l)
                .collect();
            if hits.len() != 1 {
                return None;
            }
            table.insert(x.clone(), hits[0].clone());
        }
        Some(FinMap {
            dom: cone_left.dom.clone(),
            cod: self.apex.clone(),
            table,
        })
    }
}

/// Canonical pullback of `f: I → J` and `g: L → J`.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<PbSquare> {
    if f.cod != g.cod {
        return Err(structural("pullback of maps with different codomains"));
    }
    let mut left = BTreeMap::new();
    let mut top = BTreeMap::new();
    for (i, fi) in &f.table {
        for (l, gl) in &g.table {
            if fi == gl {
                let p = pair_token(i, l);
                left.insert(p.clone(), i.clone());
                top.insert(p, l.clone());
            }
        }
    }
    let apex = FinSet::new(left.keys().cloned())?;
    Ok(PbSquare {
        f: f.clone(),
        g: g.clone(),
        top: FinMap {
            dom: apex.clone(),
            cod: g.dom.clone(),
            table: top,
        },
        left: FinMap {
            dom: apex.clone(),
            cod: f.dom.clone(),
            table: left,
        },
        apex,
    })
}

fn tagged(k: usize, t: &str) -> String {
    format!("{k}:{t}")
}

/// Disjoint union of sets with `"k:t"` tokens.
pub fn sum_sets(sets: &[FinSet]) -> FinSet {
    FinSet::new(
        sets.iter()
            .enumerate()
            .flat_map(|(k, s)| s.iter().map(move |t| tagged(k, t))),
    )
    .expect("tags keep tokens distinct")
}

/// Disjoint union of maps.
pub fn sum(maps: &[FinMap]) -> FinMap {
    let dom = sum_sets(&maps.iter().map(|m| m.dom.clone()).collect::<Vec<_>>());
    let cod = sum_sets(&maps.iter().map(|m| m.cod.clone()).collect::<Vec<_>>());
    let table = maps
        .iter()
        .enumerate()
        .flat_map(|(k, m)| m.table.iter().map(move |(a, b)| (tagged(k, a), tagged(k, b))))
        .collect();
    FinMap { dom, cod, table }
}

/// The `k`-th injection into a sum of sets.
pub fn injection(sets: &[FinSet], k: usize) -> FinMap {
    let total = sum_sets(sets);
    FinMap {
        dom: sets[k].clone(),
        cod: total,
        table: sets[k].iter().map(|t| (t.clone(), tagged(k, t))).collect(),
    }
}

/// `i ↦ (i,i)` into the apex of `pullback(f, f)`.
pub fn diagonal(f: &FinMap) -> FinMap {
    let sq = pullback(f, f).expect("same codomain");
    FinMap {
        dom: f.dom.clone(),
        cod: sq.apex,
        table: f.dom.iter().map(|i| (i.clone(), pair_token(i, i))).collect(),
    }
}

/// Loose arrow of the ordered base: a map whose fibers carry total orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedMap {
    pub base: FinMap,
    pub fiber_orders: BTreeMap<String, Vec<String>>,
}

impl OrderedMap {
    pub fn new(base: FinMap, fiber_orders: BTreeMap<String, Vec<String>>) -> Result<OrderedMap> {
        let m = OrderedMap { base, fiber_orders };
        m.check()?;
        Ok(m)
    }

    /// Every fiber ordered by token order.
    pub fn sorted(base: FinMap) -> OrderedMap {
        let fiber_orders = base
            .cod
            .iter()
            .map(|j| (j.clone(), fiber(&base, j).expect("in cod").0))
            .collect();
        OrderedMap { base, fiber_orders }
    }

    pub fn check(&self) -> Result<()> {
        self.base.check()?;
        if self.fiber_orders.len() != self.base.cod.len() {
            return Err(structural("fiber orders must cover the codomain"));
        }
        for j in self.base.cod.iter() {
            let order = self
                .fiber_orders
                .get(j)
                .ok_or_else(|| structural(format!("no order on the fiber over {j:?}")))?;
            let as_set = FinSet::new(order.iter().cloned())
                .map_err(|_| structural(format!("order over {j:?} repeats a token")))?;
            if as_set != fiber(&self.base, j)? {
                return Err(structural(format!("order over {j:?} is not a permutation of the fiber")));
            }
        }
        Ok(())
    }
}

/// Loose arrow of the sectioned base: a map with a chosen section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionedMap {
    pub base: FinMap,
    pub section: FinMap,
}

impl SectionedMap {
    pub fn new(base: FinMap, section: FinMap) -> Result<SectionedMap> {
        let m = SectionedMap { base, section };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        self.base.check()?;
        self.section.check()?;
        if self.section.dom != self.base.cod || self.section.cod != self.base.dom {
            return Err(structural("section has the wrong shape"));
        }
        if self.base.after(&self.section)? != FinMap::identity(&self.base.cod) {
            return Err(structural("section is not a right inverse of the base"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> FinSet {
        FinSet::new(xs.iter().copied()).unwrap()
    }

    fn map(dom: &[&str], cod: &[&str], pairs: &[(&str, &str)]) -> FinMap {
        FinMap::from_pairs(set(dom), set(cod), pairs.iter().copied()).unwrap()
    }

    /// Independent pullback: brute-force all pairs of the product.
    fn brute_apex(f: &FinMap, g: &FinMap) -> Vec<(String, String)> {
        let mut v = Vec::new();
        for i in f.dom.iter() {
            for l in g.dom.iter() {
                if f.apply(i) == g.apply(l) {
                    v.push((i.clone(), l.clone()));
                }
            }
        }
        v
    }

    #[test]
    fn pullback_against_point() {
        let f = map(&["1", "2"], &["*"], &[("1", "*"), ("2", "*")]);
        let g = map(&["a"], &["*"], &[("a", "*")]);
        let sq = pullback(&f, &g).unwrap();
        assert_eq!(sq.apex, set(&["(1,a)", "(2,a)"]));
        assert!(sq.top.table.values().all(|v| v == "a"));
        assert!(sq.commutes());
    }

    #[test]
    fn pullback_matches_brute_force() {
        let f = map(&["1", "2", "3"], &["x", "y"], &[("1", "x"), ("2", "y"), ("3", "x")]);
        let g = map(&["a", "b"], &["x", "y"], &[("a", "x"), ("b", "y")]);
        let sq = pullback(&f, &g).unwrap();
        let expect: Vec<String> = brute_apex(&f, &g)
            .iter()
            .map(|(i, l)| pair_token(i, l))
            .collect();
        assert_eq!(sq.apex, FinSet::new(expect).unwrap());
        assert_eq!(sq.apex, set(&["(1,a)", "(2,b)", "(3,a)"]));
    }

    #[test]
    fn pullback_along_identity() {
        let f = map(&["1", "2", "3"], &["x", "y"], &[("1", "x"), ("2", "y"), ("3", "x")]);
        let sq = pullback(&f, &FinMap::identity(&f.cod)).unwrap();
        assert_eq!(sq.apex.len(), 3);
        assert!(sq.left.is_bijection());
        let relabel = sq.left.inverse().unwrap();
        assert_eq!(sq.top.after(&relabel).unwrap(), f);
    }

    #[test]
    fn pullback_mismatch_is_structural() {
        let f = map(&["1"], &["x"], &[("1", "x")]);
        let g = map(&["a"], &["y"], &[("a", "y")]);
        assert!(matches!(pullback(&f, &g), Err(crate::Error::Structural(_))));
    }

    #[test]
    fn fibers() {
        let f = map(&["1", "2", "3"], &["a", "b"], &[("1", "a"), ("2", "b"), ("3", "a")]);
        assert_eq!(fiber(&f, "a").unwrap(), set(&["1", "3"]));
        assert!(fiber(&f, "z").is_err());
        let c = FinMap::to_point(&set(&["p", "q"]), "*");
        assert_eq!(fiber(&c, "*").unwrap(), c.dom);
    }

    #[test]
    fn sums() {
        let e = sum(&[]);
        assert!(e.dom.is_empty() && e.cod.is_empty());
        let f = map(&["1", "2"], &["a"], &[("1", "a"), ("2", "a")]);
        let s = sum(&[f.clone(), f.clone()]);
        assert_eq!(s.dom, set(&["0:1", "0:2", "1:1", "1:2"]));
        assert_eq!(s.apply("1:2"), "1:a");
    }

    #[test]
    fn sum_of_fibers_reassembles() {
        let f = map(&["1", "2", "3"], &["a", "b"], &[("1", "a"), ("2", "b"), ("3", "a")]);
        let pieces: Vec<FinMap> = f
            .cod
            .iter()
            .map(|j| FinMap::to_point(&fiber(&f, j).unwrap(), j))
            .collect();
        let s = sum(&pieces);
        // relabel "k:t" back to t on both sides and compare with f
        let dom_back = FinMap {
            dom: s.dom.clone(),
            cod: f.dom.clone(),
            table: s
                .dom
                .iter()
                .map(|t| (t.clone(), t.split_once(':').unwrap().1.to_string()))
                .collect(),
        };
        assert!(dom_back.is_bijection());
        for x in s.dom.iter() {
            let (_, y) = s.apply(x).split_once(':').unwrap();
            assert_eq!(f.apply(dom_back.apply(x)), y);
        }
    }

    #[test]
    fn diagonal_sections_both_projections() {
        let f = map(&["1", "2"], &["*"], &[("1", "*"), ("2", "*")]);
        let d = diagonal(&f);
        let sq = pullback(&f, &f).unwrap();
        assert_eq!(sq.apex.len(), 4);
        assert_eq!(d.apply("1"), "(1,1)");
        assert_eq!(sq.left.after(&d).unwrap(), FinMap::identity(&f.dom));
        assert_eq!(sq.top.after(&d).unwrap(), FinMap::identity(&f.dom));
    }

    #[test]
    fn decorations_validate() {
        let f = map(&["1", "2"], &["*"], &[("1", "*"), ("2", "*")]);
        let mut orders = BTreeMap::new();
        orders.insert("*".to_string(), vec!["2".to_string(), "1".to_string()]);
        assert!(OrderedMap::new(f.clone(), orders.clone()).is_ok());
        orders.insert("*".to_string(), vec!["2".to_string()]);
        assert!(OrderedMap::new(f.clone(), orders).is_err());
        let s = map(&["*"], &["1", "2"], &[("*", "2")]);
        assert!(SectionedMap::new(f.clone(), s).is_ok());
        let g = map(&["1", "2"], &["x", "y"], &[("1", "x"), ("2", "x")]);
        let bad = map(&["x", "y"], &["1", "2"], &[("x", "1"), ("y", "2")]);
        assert!(SectionedMap::new(g, bad).is_err());
    }

    #[test]
    fn duplicate_tokens_rejected() {
        assert!(FinSet::new(["a", "a"]).is_err());
        let parsed: std::result::Result<FinSet, _> = serde_json::from_str(r#"["b","a","b"]"#);
        assert!(parsed.is_err());
    }

    #[test]
    fn json_shape() {
        let f = map(&["1"], &["a"], &[("1", "a")]);
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v, serde_json::json!({"dom":["1"],"cod":["a"],"table":{"1":"a"}}));
    }
}
