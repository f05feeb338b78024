use multicat_core::cartesian::{from_rig, rig_arrow};
use multicat_core::multicat::{CommMonoid, Rig};
use multicat_core::ordinal;
use multicat_core::spans::{compose_spans, SpanArrow};
use multicat_core::{Error, Multicat, Obj};
use proptest::prelude::*;

/// A map from `n` to `m` positions; `m` is forced positive when `n` is.
fn map(n: usize, m: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..m.max(1), n)
}

fn maps3() -> impl Strategy<Value = (usize, Vec<usize>, usize, Vec<usize>, usize, Vec<usize>, usize)> {
    (0usize..4, 1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(n, m, p, q)| {
        (Just(n), map(n, m), Just(m), map(m, p), Just(p), map(p, q), Just(q))
    })
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn stars(n: usize) -> Vec<Obj> {
    vec!["*".to_string(); n]
}

fn z2() -> Multicat {
    from_rig(&Rig::zmod(2), 3).unwrap().host().clone()
}

/// Raw span data `n → m` over Z/2: base, tight and one coefficient per apex position.
fn span_data(n: usize, m: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<u8>)> {
    (0usize..3).prop_flat_map(move |v| {
        let v = if n == 0 || m == 0 { 0 } else { v };
        (map(v, n), map(v, m), proptest::collection::vec(0u8..2, v))
    })
}

fn build(m: &Multicat, n: usize, k: usize, (base, tight, coeffs): &(Vec<usize>, Vec<usize>, Vec<u8>)) -> SpanArrow {
    let legs = ordinal::fibers(base, n)
        .iter()
        .map(|fib| {
            let cs: Vec<String> = fib.iter().map(|&v| coeffs[v].to_string()).collect();
            rig_arrow(&cs.iter().map(String::as_str).collect::<Vec<_>>())
        })
        .collect();
    SpanArrow::new(m, stars(n), stars(k), base.clone(), legs, tight.clone()).unwrap()
}

proptest! {
    #[test]
    fn ordinal_composition_is_associative((_, f, _, g, _, h, _) in maps3()) {
        prop_assert_eq!(
            ordinal::compose(&h, &ordinal::compose(&g, &f)),
            ordinal::compose(&ordinal::compose(&h, &g), &f)
        );
    }

    #[test]
    fn permutations_invert(p in (0usize..6).prop_flat_map(perm)) {
        let n = p.len();
        prop_assert_eq!(ordinal::compose(&p, &ordinal::inverse(&p)), ordinal::identity(n));
        prop_assert_eq!(ordinal::compose(&ordinal::inverse(&p), &p), ordinal::identity(n));
    }

    #[test]
    fn fibers_partition_the_domain((n, f, m, ..) in maps3()) {
        let fibs = ordinal::fibers(&f, m);
        prop_assert_eq!(fibs.len(), m);
        let mut all: Vec<usize> = fibs.iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for (j, fib) in fibs.iter().enumerate() {
            prop_assert!(fib.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(fib.iter().all(|&i| f[i] == j));
        }
    }

    #[test]
    fn pullbacks_commute_and_count((_, f, _, _, _, _, _) in maps3(), g in map(3, 4)) {
        let m = f.iter().chain(&g).max().map_or(0, |x| x + 1);
        let pb = ordinal::Pullback::new(&f, &g);
        for (&i, &l) in pb.left().iter().zip(&pb.right()) {
            prop_assert_eq!(f[i], g[l]);
        }
        let want: usize = (0..m)
            .map(|j| f.iter().filter(|&&x| x == j).count() * g.iter().filter(|&&x| x == j).count())
            .sum();
        prop_assert_eq!(pb.len(), want);
    }

    #[test]
    fn monoid_push_is_functorial((n, f, m, g, p, ..) in maps3(), seed in proptest::collection::vec(0usize..3, 4)) {
        let mon = CommMonoid::cyclic(3);
        let x: Vec<Obj> = (0..n).map(|i| seed[i].to_string()).collect();
        let once = mon.push(&x, &ordinal::compose(&g, &f), p);
        let twice = mon.push(&mon.push(&x, &f, m), &g, p);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn rig_reindexing_is_functorial(
        (n, f, m, g, p, ..) in maps3(),
        coeffs in proptest::collection::vec(0usize..4, 3),
    ) {
        let cs = from_rig(&Rig::zmod(4), 3).unwrap();
        let cs_: Vec<String> = coeffs[..n].iter().map(|c| c.to_string()).collect();
        let a = rig_arrow(&cs_.iter().map(String::as_str).collect::<Vec<_>>());
        let once = cs.push(&a, &ordinal::compose(&g, &f), &stars(p)).unwrap();
        let twice = cs.push(&cs.push(&a, &f, &stars(m)).unwrap(), &g, &stars(p)).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn span_canonical_form_ignores_apex_order(
        (n, k, data, sigma) in (1usize..3, 1usize..3).prop_flat_map(|(n, k)| {
            (Just(n), Just(k), span_data(n, k)).prop_flat_map(|(n, k, d)| {
                let v = d.0.len();
                (Just(n), Just(k), Just(d), perm(v))
            })
        })
    ) {
        let m = z2();
        let s = build(&m, n, k, &data);
        let (base, tight, coeffs) = &data;
        let relabeled = (
            sigma.iter().map(|&i| base[i]).collect(),
            sigma.iter().map(|&i| tight[i]).collect(),
            sigma.iter().map(|&i| coeffs[i]).collect(),
        );
        prop_assert_eq!(&build(&m, n, k, &relabeled), &s);
        prop_assert_eq!(&s.canonical(&m).unwrap(), &s);
    }

    #[test]
    fn span_composition_is_associative(
        (sizes, d1, d2, d3) in (1usize..3, 1usize..3, 1usize..3, 1usize..3).prop_flat_map(|(a, b, c, d)| {
            (Just([a, b, c, d]), span_data(a, b), span_data(b, c), span_data(c, d))
        })
    ) {
        let m = z2();
        let s1 = build(&m, sizes[0], sizes[1], &d1);
        let s2 = build(&m, sizes[1], sizes[2], &d2);
        let s3 = build(&m, sizes[2], sizes[3], &d3);
        let left = compose_spans(&m, &s3, &s2).and_then(|t| compose_spans(&m, &t, &s1));
        let right = compose_spans(&m, &s2, &s1).and_then(|t| compose_spans(&m, &s3, &t));
        match (left, right) {
            (Ok(l), Ok(r)) => prop_assert_eq!(l, r),
            // apexes grow multiplicatively; out-of-range triples say nothing
            (Err(Error::BoundExceeded(_)), _) | (_, Err(Error::BoundExceeded(_))) => {}
            (l, r) => prop_assert!(false, "{:?} vs {:?}", l, r),
        }
    }

    #[test]
    fn identity_spans_are_neutral((n, k, data) in (1usize..3, 1usize..3).prop_flat_map(|(n, k)| (Just(n), Just(k), span_data(n, k)))) {
        let m = z2();
        let s = build(&m, n, k, &data);
        let before = SpanArrow::identity(&m, &stars(n)).unwrap();
        let after = SpanArrow::identity(&m, &stars(k)).unwrap();
        prop_assert_eq!(&compose_spans(&m, &s, &before).unwrap(), &s);
        prop_assert_eq!(&compose_spans(&m, &after, &s).unwrap(), &s);
    }
}
