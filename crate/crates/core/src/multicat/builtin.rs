//! Generative multicategories: 1_▶, C_▶, R_▶, discrete monoids, the
//! associative operad, the section multicategory, U, and finite functions.

use std::collections::BTreeMap;

use crate::error::{bound, structural, Error, Result};
use crate::fincat::FinCategory;
use crate::multicat::algebra::{CommMonoid, Rig};
use crate::multicat::{Arrow, Multicat, MulticatOracle, Obj};
use crate::ordinal;
use crate::term::Term;

pub(crate) fn list_of_syms(t: &Term) -> Result<Vec<String>> {
    t.as_list()
        .and_then(|xs| xs.iter().map(|x| x.as_sym().map(str::to_string)).collect())
        .ok_or_else(|| structural(format!("malformed term {t}")))
}

pub(crate) fn syms(xs: &[String]) -> Term {
    Term::List(xs.iter().cloned().map(Term::Sym).collect())
}

fn permuted<T: Clone>(xs: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&k| xs[k].clone()).collect()
}

fn permuted_dom(a: &Arrow, perm: &[usize]) -> Vec<Obj> {
    permuted(&a.dom, perm)
}

fn concat_doms(inner: &[Arrow]) -> Vec<Obj> {
    inner.iter().flat_map(|a| a.dom.iter().cloned()).collect()
}

fn star() -> Vec<Obj> {
    vec!["*".to_string()]
}

fn all_star(dom: &[Obj], cod: &str) -> bool {
    cod == "*" && dom.iter().all(|o| o == "*")
}

/// The terminal multicategory: one object and one arrow of each arity.
#[derive(Clone, Debug)]
pub struct Terminal {
    objects: Vec<Obj>,
}

impl Default for Terminal {
    fn default() -> Self {
        Terminal { objects: star() }
    }
}

impl MulticatOracle for Terminal {
    fn name(&self) -> String {
        "terminal".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if !all_star(dom, cod) {
            return Ok(vec![]);
        }
        Ok(vec![Arrow::new(Term::sym(format!("!{}", dom.len())), dom.to_vec(), "*")])
    }
    fn identity(&self, _obj: &str) -> Result<Arrow> {
        Ok(Arrow::new(Term::sym("!1"), star(), "*"))
    }
    fn permute(&self, a: &Arrow, _perm: &[usize]) -> Result<Arrow> {
        Ok(a.clone())
    }
    fn compose(&self, _outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let dom = concat_doms(inner);
        Ok(Arrow::new(Term::sym(format!("!{}", dom.len())), dom, "*"))
    }
}

pub fn terminal(bound: usize) -> Multicat {
    Multicat::new(Terminal::default(), bound)
}

/// The cocartesian multicategory of a category: arrows are families of
/// concurrent arrows.
#[derive(Clone, Debug)]
pub struct Cocartesian {
    cat: FinCategory,
    objects: Vec<Obj>,
}

impl MulticatOracle for Cocartesian {
    fn name(&self) -> String {
        "cocartesian".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        let choices: Vec<Vec<String>> = dom.iter().map(|a| self.cat.hom(a, cod).to_vec()).collect();
        Ok(ordinal::product(&choices)
            .into_iter()
            .map(|fam| Arrow::new(syms(&fam), dom.to_vec(), cod))
            .collect())
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(Arrow::new(syms(&[self.cat.identity(obj).to_string()]), vec![obj.to_string()], obj))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        let fam = list_of_syms(&a.term)?;
        Ok(Arrow::new(syms(&permuted(&fam, perm)), permuted_dom(a, perm), a.cod.clone()))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let b = list_of_syms(&outer.term)?;
        let mut fam = Vec::new();
        for (j, a) in inner.iter().enumerate() {
            for x in list_of_syms(&a.term)? {
                fam.push(self.cat.compose(&b[j], &x)?.to_string());
            }
        }
        Ok(Arrow::new(syms(&fam), concat_doms(inner), outer.cod.clone()))
    }
}

/// The cocartesian multicategory `C_▶`.
pub fn from_category(c: &FinCategory, bound: usize) -> Result<Multicat> {
    c.check_laws()?;
    Ok(Multicat::new(
        Cocartesian {
            cat: c.clone(),
            objects: c.objects().tokens().to_vec(),
        },
        bound,
    ))
}

/// Families of rig elements with `β ∘ (α_j) = (β_j α_{j,i})`.
#[derive(Clone, Debug)]
pub struct RigMulticat {
    rig: Rig,
    objects: Vec<Obj>,
}

impl RigMulticat {
    pub fn rig(&self) -> &Rig {
        &self.rig
    }
}

impl MulticatOracle for RigMulticat {
    fn name(&self) -> String {
        format!("rig{}", self.rig.carrier)
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if !all_star(dom, cod) {
            return Ok(vec![]);
        }
        let n = self.rig.carrier.len();
        Ok(ordinal::all_maps(dom.len(), n)
            .into_iter()
            .map(|xs| {
                let fam: Vec<String> = xs.iter().map(|&k| self.rig.carrier.token(k).to_string()).collect();
                Arrow::new(syms(&fam), dom.to_vec(), "*")
            })
            .collect())
    }
    fn identity(&self, _obj: &str) -> Result<Arrow> {
        Ok(Arrow::new(syms(std::slice::from_ref(&self.rig.one)), star(), "*"))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        let fam = list_of_syms(&a.term)?;
        Ok(Arrow::new(syms(&permuted(&fam, perm)), permuted_dom(a, perm), "*"))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let b = list_of_syms(&outer.term)?;
        let mut fam = Vec::new();
        for (j, a) in inner.iter().enumerate() {
            for x in list_of_syms(&a.term)? {
                fam.push(self.rig.times(&b[j], &x).to_string());
            }
        }
        Ok(Arrow::new(syms(&fam), concat_doms(inner), "*"))
    }
}

/// `R_▶` without its cartesian structure; see [`crate::cartesian::from_rig`].
pub fn rig_multicat(r: &Rig, bound: usize) -> Result<Multicat> {
    r.check()?;
    Ok(Multicat::new(
        RigMulticat {
            rig: r.clone(),
            objects: star(),
        },
        bound,
    ))
}

/// The discrete multicategory of a commutative monoid: objects are elements
/// and there is one arrow `x → Σx`.
#[derive(Clone, Debug)]
pub struct MonoidMulticat {
    mon: CommMonoid,
    objects: Vec<Obj>,
}

impl MulticatOracle for MonoidMulticat {
    fn name(&self) -> String {
        format!("monoid{}", self.mon.carrier)
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if self.mon.sum(dom.iter().map(String::as_str)) != cod {
            return Ok(vec![]);
        }
        Ok(vec![Arrow::new(Term::sym("Σ"), dom.to_vec(), cod)])
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(Arrow::new(Term::sym("Σ"), vec![obj.to_string()], obj))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        Ok(Arrow::new(Term::sym("Σ"), permuted_dom(a, perm), a.cod.clone()))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        Ok(Arrow::new(Term::sym("Σ"), concat_doms(inner), outer.cod.clone()))
    }
}

pub fn from_comm_monoid(mon: &CommMonoid, bound: usize) -> Result<Multicat> {
    mon.check()?;
    Ok(Multicat::new(
        MonoidMulticat {
            mon: mon.clone(),
            objects: mon.carrier.tokens().to_vec(),
        },
        bound,
    ))
}

/// Total orders on finite sets: the associative operad.
#[derive(Clone, Debug)]
pub struct Orders {
    objects: Vec<Obj>,
}

impl Default for Orders {
    fn default() -> Self {
        Orders { objects: star() }
    }
}

/// Arrow listing domain positions in order.
fn order_arrow(order: &[usize]) -> Arrow {
    Arrow::new(Term::nats(order), vec!["*".to_string(); order.len()], "*")
}

fn order_of(a: &Arrow) -> Result<Vec<usize>> {
    a.term.to_nats().ok_or_else(|| structural(format!("malformed order {}", a.term)))
}

/// Glue inner orders along the outer order.
pub(crate) fn glue_orders(outer: &[usize], inner: &[Vec<usize>]) -> Vec<usize> {
    let offs = &ordinal::offsets(&inner.iter().map(Vec::len).collect::<Vec<_>>());
    outer
        .iter()
        .flat_map(|&j| inner[j].iter().map(move |&i| offs[j] + i))
        .collect()
}

/// Transport an order along `permute(-, σ)`.
pub(crate) fn permute_order(order: &[usize], perm: &[usize]) -> Vec<usize> {
    let inv = ordinal::inverse(perm);
    order.iter().map(|&p| inv[p]).collect()
}

impl MulticatOracle for Orders {
    fn name(&self) -> String {
        "orders".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if !all_star(dom, cod) {
            return Ok(vec![]);
        }
        Ok(ordinal::permutations(dom.len()).iter().map(|p| order_arrow(p)).collect())
    }
    fn identity(&self, _obj: &str) -> Result<Arrow> {
        Ok(order_arrow(&[0]))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        Ok(order_arrow(&permute_order(&order_of(a)?, perm)))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let inner: Vec<Vec<usize>> = inner.iter().map(order_of).collect::<Result<_>>()?;
        Ok(order_arrow(&glue_orders(&order_of(outer)?, &inner)))
    }
    fn native_order(&self, a: &Arrow) -> Option<Vec<usize>> {
        order_of(a).ok()
    }
}

pub fn orders(bound: usize) -> Multicat {
    Multicat::new(Orders::default(), bound)
}

/// Chosen elements: an arrow over a nonempty set picks one point.
#[derive(Clone, Debug)]
pub struct Sections {
    objects: Vec<Obj>,
}

impl Default for Sections {
    fn default() -> Self {
        Sections { objects: star() }
    }
}

fn pick(p: usize, n: usize) -> Arrow {
    Arrow::new(Term::Nat(p as u64), vec!["*".to_string(); n], "*")
}

impl MulticatOracle for Sections {
    fn name(&self) -> String {
        "sections".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if !all_star(dom, cod) {
            return Ok(vec![]);
        }
        Ok((0..dom.len()).map(|p| pick(p, dom.len())).collect())
    }
    fn identity(&self, _obj: &str) -> Result<Arrow> {
        Ok(pick(0, 1))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        let p = a.term.as_nat().ok_or_else(|| structural("malformed pick"))?;
        Ok(pick(ordinal::inverse(perm)[p], a.arity()))
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let j = outer.term.as_nat().ok_or_else(|| structural("malformed pick"))?;
        let offs = ordinal::offsets(&inner.iter().map(Arrow::arity).collect::<Vec<_>>());
        let i = inner[j].term.as_nat().ok_or_else(|| structural("malformed pick"))?;
        Ok(pick(offs[j] + i, concat_doms(inner).len()))
    }
}

pub fn sections(bound: usize) -> Multicat {
    Multicat::new(Sections::default(), bound)
}

/// One object, only the identity arrow.
#[derive(Clone, Debug)]
pub struct Unary {
    objects: Vec<Obj>,
}

impl Default for Unary {
    fn default() -> Self {
        Unary { objects: star() }
    }
}

impl MulticatOracle for Unary {
    fn name(&self) -> String {
        "unary".into()
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        if dom.len() != 1 || !all_star(dom, cod) {
            return Ok(vec![]);
        }
        Ok(vec![Arrow::new(Term::sym("id"), star(), "*")])
    }
    fn identity(&self, _obj: &str) -> Result<Arrow> {
        Ok(Arrow::new(Term::sym("id"), star(), "*"))
    }
    fn permute(&self, a: &Arrow, _perm: &[usize]) -> Result<Arrow> {
        Ok(a.clone())
    }
    fn compose(&self, _outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        Ok(inner[0].clone())
    }
}

/// The multicategory `U` with only identities.
pub fn unary(bound: usize) -> Multicat {
    Multicat::new(Unary::default(), bound)
}

/// Finite sets and functions of several variables.
///
/// Objects name carriers `{0..size}`; an arrow is a value table indexed by
/// input tuples in row-major order (first coordinate slowest).
#[derive(Clone, Debug)]
pub struct Functions {
    sizes: BTreeMap<Obj, usize>,
    objects: Vec<Obj>,
    /// Largest table the oracle will build.
    max_table: usize,
}

impl Functions {
    pub fn size(&self, o: &str) -> usize {
        self.sizes[o]
    }

    pub fn tuples(&self, dom: &[Obj]) -> Vec<Vec<usize>> {
        let sizes: Vec<Vec<usize>> = dom.iter().map(|o| (0..self.sizes[o]).collect()).collect();
        ordinal::product(&sizes)
    }

    pub fn index_of(&self, dom: &[Obj], x: &[usize]) -> usize {
        dom.iter().zip(x).fold(0, |acc, (o, &v)| acc * self.sizes[o] + v)
    }

    pub fn table(&self, a: &Arrow) -> Result<Vec<usize>> {
        a.term
            .to_nats()
            .ok_or_else(|| structural(format!("malformed function table {}", a.term)))
    }

    pub fn eval(&self, a: &Arrow, x: &[usize]) -> Result<usize> {
        Ok(self.table(a)?[self.index_of(&a.dom, x)])
    }

    pub fn arrow(&self, dom: Vec<Obj>, cod: &str, table: Vec<usize>) -> Arrow {
        Arrow::new(Term::nats(&table), dom, cod)
    }

    /// Build a table from a function of the input tuple.
    pub fn tabulate(&self, dom: Vec<Obj>, cod: &str, f: impl Fn(&[usize]) -> usize) -> Arrow {
        let table = self.tuples(&dom).iter().map(|x| f(x)).collect();
        self.arrow(dom, cod, table)
    }

    fn inputs(&self, dom: &[Obj]) -> Result<usize> {
        let n: usize = dom.iter().map(|o| self.sizes[o]).product();
        if n > self.max_table {
            return Err(bound(format!("function table with {n} inputs")));
        }
        Ok(n)
    }
}

impl MulticatOracle for Functions {
    fn name(&self) -> String {
        let parts: Vec<String> = self.sizes.iter().map(|(o, s)| format!("{o}:{s}")).collect();
        format!("functions{{{}}}", parts.join(","))
    }
    fn objects(&self) -> &[Obj] {
        &self.objects
    }
    fn hom(&self, dom: &[Obj], cod: &str) -> Result<Vec<Arrow>> {
        let n = self.inputs(dom)?;
        let m = self.sizes[cod];
        let count = (m as f64).powi(n as i32);
        if count > 1e6 {
            return Err(bound(format!("hom-set of size {count} into {cod}")));
        }
        Ok(ordinal::all_maps(n, m)
            .into_iter()
            .map(|t| self.arrow(dom.to_vec(), cod, t))
            .collect())
    }
    fn identity(&self, obj: &str) -> Result<Arrow> {
        Ok(self.arrow(vec![obj.to_string()], obj, (0..self.sizes[obj]).collect()))
    }
    fn permute(&self, a: &Arrow, perm: &[usize]) -> Result<Arrow> {
        self.inputs(&a.dom)?;
        let dom = permuted_dom(a, perm);
        let t = self.table(a)?;
        let arr = self.tabulate(dom, &a.cod, |y| {
            let mut x = vec![0; y.len()];
            for (k, &p) in perm.iter().enumerate() {
                x[p] = y[k];
            }
            t[self.index_of(&a.dom, &x)]
        });
        Ok(arr)
    }
    fn compose(&self, outer: &Arrow, inner: &[Arrow]) -> Result<Arrow> {
        let dom = concat_doms(inner);
        self.inputs(&dom)?;
        let offs = ordinal::offsets(&inner.iter().map(Arrow::arity).collect::<Vec<_>>());
        let bt = self.table(outer)?;
        let ts: Vec<Vec<usize>> = inner.iter().map(|a| self.table(a)).collect::<Result<_>>()?;
        Ok(self.tabulate(dom, &outer.cod, |z| {
            let v: Vec<usize> = inner
                .iter()
                .enumerate()
                .map(|(j, a)| ts[j][self.index_of(&a.dom, &z[offs[j]..offs[j] + a.arity()])])
                .collect();
            bt[self.index_of(&outer.dom, &v)]
        }))
    }
}

/// Finite sets with the given carrier sizes and all functions of several variables.
pub fn functions(sizes: &[(&str, usize)], bound: usize) -> Result<Multicat> {
    Ok(Multicat::new(functions_oracle(sizes)?, bound))
}

pub fn functions_oracle(sizes: &[(&str, usize)]) -> Result<Functions> {
    let map: BTreeMap<Obj, usize> = sizes.iter().map(|(o, s)| (o.to_string(), *s)).collect();
    if map.len() != sizes.len() {
        return Err(Error::Structural("carrier named twice".into()));
    }
    Ok(Functions {
        objects: map.keys().cloned().collect(),
        sizes: map,
        max_table: 64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_has_one_arrow_per_arity() {
        let m = terminal(3);
        for n in 0..=3 {
            assert_eq!(m.arrows_of_arity(n).unwrap().len(), 1);
        }
    }

    #[test]
    fn cocartesian_hom_counts() {
        let c = FinCategory::walking_arrow();
        let m = from_category(&c, 3).unwrap();
        let a = "A".to_string();
        let b = "B".to_string();
        // families of concurrent arrows into B: one per input here
        assert_eq!(m.hom(&[a.clone(), b.clone()], "B").unwrap().len(), 1);
        assert_eq!(m.hom(std::slice::from_ref(&b), "A").unwrap().len(), 0);
        // exactly one empty family per codomain
        assert_eq!(m.hom(&[], "A").unwrap().len(), 1);
        assert_eq!(m.hom(&[], "B").unwrap().len(), 1);
    }

    #[test]
    fn terminal_category_gives_terminal_counts() {
        let m = from_category(&FinCategory::terminal(), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(m.arrows_of_arity(n).unwrap().len(), 1);
        }
    }

    #[test]
    fn orders_glue() {
        // [a,b] over x and [c] over y, outer order [x,y]
        assert_eq!(glue_orders(&[0, 1], &[vec![0, 1], vec![0]]), vec![0, 1, 2]);
        assert_eq!(glue_orders(&[1, 0], &[vec![1, 0], vec![0]]), vec![2, 1, 0]);
    }

    #[test]
    fn functions_compose_pointwise() {
        let f = functions_oracle(&[("2", 2)]).unwrap();
        let two = || "2".to_string();
        let and = f.tabulate(vec![two(), two()], "2", |x| x[0] & x[1]);
        let not = f.tabulate(vec![two()], "2", |x| 1 - x[0]);
        let nand_not = f.compose(&not, std::slice::from_ref(&and)).unwrap();
        for x in f.tuples(&nand_not.dom) {
            assert_eq!(f.eval(&nand_not, &x).unwrap(), 1 - (x[0] & x[1]));
        }
        let proj0 = f.tabulate(vec![two(), two()], "2", |x| x[0]);
        let swapped = f.permute(&proj0, &[1, 0]).unwrap();
        for x in f.tuples(&swapped.dom) {
            assert_eq!(f.eval(&swapped, &x).unwrap(), x[1]);
        }
    }

    #[test]
    fn sections_compose_by_offset() {
        let s = Sections::default();
        let outer = pick(1, 2);
        let c = s.compose(&outer, &[pick(0, 2), pick(2, 3)]).unwrap();
        assert_eq!(c.term, Term::Nat(4));
        assert_eq!(c.arity(), 5);
    }
}
