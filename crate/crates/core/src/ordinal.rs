//! Maps between canonical index sets `{0, …, n-1}`.
//!
//! Every finite set is handled through its sorted enumeration, so a map
//! `I → J` is a vector of length `|I|` with entries below `|J|`.

/// `(g ∘ f)[i] = g[f[i]]`.
pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_map(f: &[usize], m: usize) -> bool {
    f.iter().all(|&x| x < m)
}

pub fn is_bijection(f: &[usize], m: usize) -> bool {
    if f.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &x in f {
        if x >= m || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Fibers of `f: n → m`, each listed in increasing order.
pub fn fibers(f: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); m];
    for (i, &j) in f.iter().enumerate() {
        out[j].push(i);
    }
    out
}

/// Position of each element inside its own fiber.
pub fn fiber_positions(f: &[usize], m: usize) -> Vec<usize> {
    let mut count = vec![0; m];
    f.iter()
        .map(|&j| {
            let p = count[j];
            count[j] += 1;
            p
        })
        .collect()
}

pub fn restrict<T: Clone>(xs: &[T], positions: &[usize]) -> Vec<T> {
    positions.iter().map(|&i| xs[i].clone()).collect()
}

/// Canonical pullback of `f: n → m` and `g: q → m`.
///
/// The apex lists pairs `(i, l)` with `f(i) = g(l)` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn new(f: &[usize], g: &[usize]) -> Pullback {
        let mut pairs = Vec::new();
        for (i, &fi) in f.iter().enumerate() {
            for (l, &gl) in g.iter().enumerate() {
                if fi == gl {
                    pairs.push((i, l));
                }
            }
        }
        Pullback { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Projection to the domain of `f`.
    pub fn left(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    /// Projection to the domain of `g`.
    pub fn right(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn position(&self, i: usize, l: usize) -> Option<usize> {
        self.pairs.binary_search(&(i, l)).ok()
    }
}

/// All `m^n` maps `n → m` in lexicographic order.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > 0 && m == 0 {
        return out;
    }
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < m {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Nondecreasing maps `n → m`.
pub fn sorted_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    all_maps(n, m)
        .into_iter()
        .filter(|f| f.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// All permutations of `n`, lexicographic, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// Permutations `σ` with `f ∘ σ` nondecreasing.
pub fn sorting_permutations(f: &[usize]) -> Vec<Vec<usize>> {
    let mut keyed: Vec<(usize, usize)> = f.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    keyed.sort();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &(x, i)) in keyed.iter().enumerate() {
        if k > 0 && keyed[k - 1].0 == x {
            groups.last_mut().unwrap().push(i);
        } else {
            groups.push(vec![i]);
        }
    }
    grouped_permutations(&groups)
}

/// Concatenations of one permutation of each group, groups kept in order.
pub fn grouped_permutations(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for g in groups {
        let perms = permutations(g.len());
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut v = prefix.clone();
                v.extend(p.iter().map(|&k| g[k]));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Cartesian product of choice lists.
pub fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Offsets of consecutive blocks with the given sizes.
pub fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// Permutation that reorders a block-concatenated list into the order of `targets`.
///
/// `blocks[b]` lists the global positions occupying block `b`; the result `p`
/// satisfies `concat(blocks)[p[t]] = t` for every `t`.
pub fn unblock(blocks: &[Vec<usize>]) -> Vec<usize> {
    let flat: Vec<usize> = blocks.iter().flatten().copied().collect();
    inverse(&flat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_maps(3, 2).len(), 8);
        assert_eq!(all_maps(0, 0).len(), 1);
        assert_eq!(all_maps(2, 0).len(), 0);
        assert_eq!(sorted_maps(3, 2).len(), 4);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn pullback_pairs() {
        let pb = Pullback::new(&[0, 1, 0], &[0, 1]);
        assert_eq!(pb.pairs, vec![(0, 0), (1, 1), (2, 0)]);
    }

    #[test]
    fn sorting_perms_sort() {
        let f = [1, 0, 1, 0];
        let ps = sorting_permutations(&f);
        assert_eq!(ps.len(), 4);
        for p in ps {
            let g = compose(&f, &p);
            assert!(g.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn unblock_inverts() {
        let blocks = vec![vec![2, 0], vec![1]];
        let p = unblock(&blocks);
        let flat: Vec<usize> = blocks.concat();
        for t in 0..3 {
            assert_eq!(flat[p[t]], t);
        }
    }
}
