//! Commutative monoids, rigs, and the discrete multicategories they give.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::finset::{pullback, FinMap, FinSet};
use crate::multicat::{Multicat, Obj};
use crate::ordinal;

type Table = BTreeMap<String, BTreeMap<String, String>>;

fn table_from(carrier: &FinSet, op: impl Fn(usize, usize) -> usize) -> Table {
    carrier
        .iter()
        .enumerate()
        .map(|(a, ta)| {
            let row = carrier
                .iter()
                .enumerate()
                .map(|(b, tb)| (tb.clone(), carrier.token(op(a, b)).to_string()))
                .collect();
            (ta.clone(), row)
        })
        .collect()
}

fn check_table(carrier: &FinSet, t: &Table, what: &str) -> Result<()> {
    if t.len() != carrier.len() {
        return Err(structural(format!("{what} table is not total")));
    }
    for a in carrier.iter() {
        let row = t
            .get(a)
            .ok_or_else(|| structural(format!("{what} table has no row {a}")))?;
        if row.len() != carrier.len() {
            return Err(structural(format!("{what} table row {a} is not total")));
        }
        for b in carrier.iter() {
            match row.get(b) {
                Some(c) if carrier.contains(c) => {}
                _ => return Err(structural(format!("{what} table has a bad entry at ({a},{b})"))),
            }
        }
    }
    Ok(())
}

/// A finite commutative monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommMonoid {
    pub carrier: FinSet,
    pub zero: String,
    pub add: Table,
}

impl CommMonoid {
    pub fn new(carrier: FinSet, zero: impl Into<String>, add: Table) -> Result<CommMonoid> {
        let m = CommMonoid {
            carrier,
            zero: zero.into(),
            add,
        };
        m.check()?;
        Ok(m)
    }

    pub fn check(&self) -> Result<()> {
        check_table(&self.carrier, &self.add, "addition")?;
        if !self.carrier.contains(&self.zero) {
            return Err(structural("zero is not in the carrier"));
        }
        let fail = |m: String| Err(Error::Validation(m));
        for a in self.carrier.iter() {
            if self.plus(a, &self.zero) != a {
                return fail(format!("{} is not neutral for {a}", self.zero));
            }
            for b in self.carrier.iter() {
                if self.plus(a, b) != self.plus(b, a) {
                    return fail(format!("{a}+{b} ≠ {b}+{a}"));
                }
                for c in self.carrier.iter() {
                    if self.plus(self.plus(a, b), c) != self.plus(a, self.plus(b, c)) {
                        return fail(format!("addition is not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z/n` with elements `"0".."n-1"`.
    pub fn cyclic(n: usize) -> CommMonoid {
        let carrier = FinSet::new((0..n).map(|k| k.to_string())).unwrap();
        let rank: Vec<usize> = (0..n)
            .map(|k| carrier.rank(&k.to_string()).unwrap())
            .collect();
        let value = |r: usize| -> usize { carrier.token(r).parse().unwrap() };
        let add = table_from(&carrier, |a, b| rank[(value(a) + value(b)) % n]);
        CommMonoid::new(carrier.clone(), "0", add).unwrap()
    }

    /// `{0, 1}` with `max`.
    pub fn idempotent2() -> CommMonoid {
        let carrier = FinSet::new(["0", "1"]).unwrap();
        CommMonoid::new(carrier.clone(), "0", table_from(&carrier, |a, b| a.max(b))).unwrap()
    }

    pub fn trivial() -> CommMonoid {
        let carrier = FinSet::singleton("0");
        CommMonoid::new(carrier.clone(), "0", table_from(&carrier, |_, _| 0)).unwrap()
    }

    /// Build from a binary operation on tokens.
    pub fn from_fn(carrier: FinSet, zero: &str, op: impl Fn(&str, &str) -> String) -> Result<CommMonoid> {
        let add = carrier
            .iter()
            .map(|a| (a.clone(), carrier.iter().map(|b| (b.clone(), op(a, b))).collect()))
            .collect();
        CommMonoid::new(carrier, zero, add)
    }

    pub fn plus<'a>(&'a self, a: &str, b: &str) -> &'a str {
        &self.add[a][b]
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a str>>(&'a self, xs: I) -> &'a str {
        let mut acc: &str = &self.zero;
        for x in xs {
            acc = self.plus(acc, x);
        }
        acc
    }

    /// `(f_!x)_j = Σ_{f i = j} x_i` on canonical indices.
    pub fn push(&self, x: &[Obj], f: &[usize], m: usize) -> Vec<Obj> {
        ordinal::fibers(f, m)
            .iter()
            .map(|fib| self.sum(fib.iter().map(|&i| x[i].as_str())).to_string())
            .collect()
    }
}

/// A finite rig: commutative addition, associative multiplication with unit,
/// distributive, with zero absorbing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rig {
    pub carrier: FinSet,
    pub zero: String,
    pub one: String,
    pub add: Table,
    pub mul: Table,
}

impl Rig {
    pub fn new(
        carrier: FinSet,
        zero: impl Into<String>,
        one: impl Into<String>,
        add: Table,
        mul: Table,
    ) -> Result<Rig> {
        let r = Rig {
            carrier,
            zero: zero.into(),
            one: one.into(),
            add,
            mul,
        };
        r.check()?;
        Ok(r)
    }

    pub fn additive(&self) -> CommMonoid {
        CommMonoid {
            carrier: self.carrier.clone(),
            zero: self.zero.clone(),
            add: self.add.clone(),
        }
    }

    pub fn check(&self) -> Result<()> {
        self.additive().check()?;
        check_table(&self.carrier, &self.mul, "multiplication")?;
        if !self.carrier.contains(&self.one) {
            return Err(structural("one is not in the carrier"));
        }
        let fail = |m: String| Err(Error::Validation(m));
        for a in self.carrier.iter() {
            if self.times(a, &self.one) != a || self.times(&self.one, a) != a {
                return fail(format!("{} is not a unit for {a}", self.one));
            }
            if self.times(a, &self.zero) != self.zero || self.times(&self.zero, a) != self.zero {
                return fail(format!("{} does not absorb {a}", self.zero));
            }
            for b in self.carrier.iter() {
                for c in self.carrier.iter() {
                    if self.times(self.times(a, b), c) != self.times(a, self.times(b, c)) {
                        return fail(format!("multiplication is not associative at ({a},{b},{c})"));
                    }
                    if self.times(a, self.plus(b, c)) != self.plus(self.times(a, b), self.times(a, c)) {
                        return fail(format!("left distributivity fails at ({a},{b},{c})"));
                    }
                    if self.times(self.plus(a, b), c) != self.plus(self.times(a, c), self.times(b, c)) {
                        return fail(format!("right distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z/n`.
    pub fn zmod(n: usize) -> Rig {
        let carrier = FinSet::new((0..n).map(|k| k.to_string())).unwrap();
        let value = |r: usize| -> usize { carrier.token(r).parse().unwrap() };
        let rank = |v: usize| carrier.rank(&v.to_string()).unwrap();
        let add = table_from(&carrier, |a, b| rank((value(a) + value(b)) % n));
        let mul = table_from(&carrier, |a, b| rank((value(a) * value(b)) % n));
        Rig::new(carrier.clone(), "0", if n == 1 { "0" } else { "1" }, add, mul).unwrap()
    }

    /// Booleans with `or` and `and`.
    pub fn boolean() -> Rig {
        let carrier = FinSet::new(["0", "1"]).unwrap();
        let add = table_from(&carrier, |a, b| a.max(b));
        let mul = table_from(&carrier, |a, b| a.min(b));
        Rig::new(carrier, "0", "1", add, mul).unwrap()
    }

    pub fn plus<'a>(&'a self, a: &str, b: &str) -> &'a str {
        &self.add[a][b]
    }

    pub fn times<'a>(&'a self, a: &str, b: &str) -> &'a str {
        &self.mul[a][b]
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a str>>(&'a self, xs: I) -> &'a str {
        let mut acc: &str = &self.zero;
        for x in xs {
            acc = self.plus(acc, x);
        }
        acc
    }
}

/// Exactly one arrow out of every family within the bound.
pub fn is_algebra(m: &Multicat) -> Result<bool> {
    for n in 0..=m.bound() {
        for x in m.families(n) {
            if m.out_arrows(&x)?.len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Read the commutative monoid off a discrete multicategory: objects, the
/// target of the unique nullary arrow, and targets of binary arrows.
pub fn extract_comm_monoid(m: &Multicat) -> Result<CommMonoid> {
    if m.bound() < 2 {
        return Err(Error::Validation("monoid extraction needs arities up to 2".into()));
    }
    if !is_algebra(m)? {
        return Err(Error::Validation(format!("{} is not discrete", m.name())));
    }
    let carrier = FinSet::new(m.objects().iter().cloned())?;
    let unique = |x: &[Obj]| -> Result<String> { Ok(m.out_arrows(x)?.remove(0).cod) };
    let zero = unique(&[])?;
    let mut add = BTreeMap::new();
    for a in carrier.iter() {
        let mut row = BTreeMap::new();
        for b in carrier.iter() {
            row.insert(b.clone(), unique(&[a.clone(), b.clone()])?);
        }
        add.insert(a.clone(), row);
    }
    CommMonoid::new(carrier, zero, add)
}

/// One failure of the square `f_!(k^*x) = l^*(g_!x)` for the pullback of `g` and `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Go2Failure {
    pub x: Vec<String>,
    pub g: FinMap,
    pub l: FinMap,
}

/// Check the reindexing square on every pullback of maps between sets of size
/// at most `k`, for every `x` in `Mon^L`.
pub fn check_go2(mon: &CommMonoid, k: usize) -> Result<(u64, Vec<Go2Failure>)> {
    let mut count = 0;
    let mut failures = Vec::new();
    for nl in 0..=k {
        let lset = FinSet::range(nl);
        for nk in 0..=k {
            let kset = FinSet::new((0..nk).map(|i| format!("k{i}")))?;
            for g in ordinal::all_maps(nl, nk) {
                let g = FinMap::from_ordinal(&lset, &kset, &g);
                for nj in 0..=k {
                    let jset = FinSet::new((0..nj).map(|i| format!("j{i}")))?;
                    for l in ordinal::all_maps(nj, nk) {
                        let l = FinMap::from_ordinal(&jset, &kset, &l);
                        let sq = pullback(&l, &g)?;
                        for xs in ordinal::all_maps(nl, mon.carrier.len()) {
                            count += 1;
                            let x: BTreeMap<&str, &str> = lset
                                .iter()
                                .zip(&xs)
                                .map(|(t, &v)| (t.as_str(), mon.carrier.token(v)))
                                .collect();
                            // g_!x over K, then restrict along l
                            let pushed = |kk: &str| {
                                mon.sum(lset.iter().filter(|t| g.apply(t) == kk).map(|t| x[t.as_str()]))
                            };
                            let right: Vec<&str> = jset.iter().map(|j| pushed(l.apply(j))).collect();
                            // restrict x along the top leg, then sum along the left leg
                            let left: Vec<&str> = jset
                                .iter()
                                .map(|j| {
                                    mon.sum(
                                        sq.apex
                                            .iter()
                                            .filter(|p| sq.left.apply(p) == j)
                                            .map(|p| x[sq.top.apply(p)]),
                                    )
                                })
                                .collect();
                            if left != right {
                                failures.push(Go2Failure {
                                    x: xs.iter().map(|&v| mon.carrier.token(v).to_string()).collect(),
                                    g: g.clone(),
                                    l: l.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((count, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_lawful() {
        for n in 1..=4 {
            CommMonoid::cyclic(n).check().unwrap();
            Rig::zmod(n).check().unwrap();
        }
        CommMonoid::idempotent2().check().unwrap();
        Rig::boolean().check().unwrap();
    }

    #[test]
    fn bad_tables_are_rejected() {
        let carrier = FinSet::new(["0", "1"]).unwrap();
        let sub = table_from(&carrier, |a, b| if a >= b { 0 } else { 1 });
        assert!(matches!(CommMonoid::new(carrier.clone(), "0", sub), Err(Error::Validation(_))));
        let partial: Table = BTreeMap::new();
        assert!(matches!(CommMonoid::new(carrier, "0", partial), Err(Error::Structural(_))));
    }

    #[test]
    fn push_sums_fibers() {
        let z2 = CommMonoid::cyclic(2);
        let x: Vec<String> = ["1", "1", "0"].iter().map(|s| s.to_string()).collect();
        // 1,3 ↦ a and 2 ↦ b
        assert_eq!(z2.push(&x, &[0, 1, 0], 2), vec!["1", "1"]);
        assert_eq!(z2.push(&x, &[0, 1, 2], 3), x);
    }

    #[test]
    fn go2_holds() {
        let (n, fails) = check_go2(&CommMonoid::cyclic(2), 2).unwrap();
        assert!(n > 0);
        assert!(fails.is_empty());
    }
}
