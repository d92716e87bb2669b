//! Randomized permutation and word algebra against brute-force oracles.

use std::collections::{BTreeSet, VecDeque};

use polyext_core::fp::{todd_coxeter, Presentation, Word, DEFAULT_COSET_LIMIT};
use polyext_core::perm::{compose, orbit_with_transversal, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(max_degree: usize, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Permutation>> {
    (1..=max_degree).prop_flat_map(move |d| prop::collection::vec(perm(d), count.clone()))
}

fn pointwise(p: &Permutation, q: &Permutation) -> Vec<u32> {
    (0..p.degree() as u32).map(|x| q.apply(p.apply(x))).collect()
}

/// Every element of `⟨gens⟩` by breadth-first closure.
fn closure(gens: &[Permutation]) -> BTreeSet<Vec<u32>> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = BTreeSet::from([id.images().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.images().to_vec()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn naive_orbit(gens: &[Permutation], point: u32) -> BTreeSet<u32> {
    let mut orbit = BTreeSet::from([point]);
    loop {
        let next: BTreeSet<u32> = orbit
            .iter()
            .flat_map(|&x| gens.iter().map(move |g| g.apply(x)))
            .chain(orbit.iter().copied())
            .collect();
        if next == orbit {
            return orbit;
        }
        orbit = next;
    }
}

/// Cancels adjacent equal letters, including across the wrap, until stable,
/// then takes the least rotation.
fn naive_canonical(w: &[usize]) -> Vec<usize> {
    let mut v = w.to_vec();
    loop {
        let n = v.len();
        if n >= 2 && v[0] == v[n - 1] {
            v = v[1..n - 1].to_vec();
            continue;
        }
        match (0..n.saturating_sub(1)).find(|&k| v[k] == v[k + 1]) {
            Some(k) => {
                v.drain(k..k + 2);
            }
            None => break,
        }
    }
    (0..v.len().max(1))
        .map(|r| v.iter().cycle().skip(r).take(v.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn compose_matches_pointwise(ps in perms(8, 3..=3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        let expected = pointwise(a, b);
        prop_assert_eq!(compose(a, b).unwrap().images().to_vec(), expected);
        prop_assert_eq!(a.then(b).then(c), a.then(&b.then(c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.pow(a.order()), Permutation::identity(a.degree()));
    }

    #[test]
    fn orbit_matches_fixed_point_iteration(gens in perms(8, 1..=3), seed in 0u32..8) {
        let point = seed % gens[0].degree() as u32;
        let orbit = orbit_with_transversal(&gens, point).unwrap();
        let got: BTreeSet<u32> = orbit.points.iter().copied().collect();
        prop_assert_eq!(&got, &naive_orbit(&gens, point));
        for &v in &orbit.points {
            prop_assert_eq!(orbit.transversal(v).unwrap().apply(point), v);
        }
    }

    #[test]
    fn membership_and_order_match_closure(
        (gens, probe) in (1usize..=6).prop_flat_map(|d| (prop::collection::vec(perm(d), 1..=3), perm(d))),
    ) {
        let group = PermGroup::new(&gens).unwrap();
        let all = closure(&gens);
        prop_assert_eq!(group.order_u64(), Some(all.len() as u64));
        prop_assert_eq!(group.contains(&probe), all.contains(probe.images()));
        for g in &gens {
            prop_assert!(group.contains(g));
        }
    }

    #[test]
    fn canonical_form_matches_naive_reducer(w in prop::collection::vec(0usize..3, 0..24)) {
        let c = Word::new(w.clone()).canonicalize();
        let expected = naive_canonical(&w);
        prop_assert_eq!(c.letters(), &expected[..]);
        prop_assert_eq!(c.canonicalize(), c.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_count_matches_chain_order(
        m in prop::sample::select(vec![
            vec![3usize, 3], vec![3, 4], vec![3, 5], vec![2, 7], vec![4, 2], vec![6], vec![3, 3, 3], vec![3, 4, 3],
        ]),
    ) {
        let pres = Presentation::string_coxeter(&m);
        let table = todd_coxeter(&pres, &[], DEFAULT_COSET_LIMIT);
        let n = table.index().unwrap();
        let group = PermGroup::new(&table.actions()).unwrap();
        prop_assert_eq!(group.order_u64(), Some(n as u64));
    }
}
