use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use proptest::sample::Index;

use rccloop::brute::{search_tables, SearchConfig};
use rccloop::constructions::{enumerate_2p, VerifyMode};
use rccloop::counting::{ind_count, zeta_orbit_count, zeta_orbit_count_direct};
use rccloop::folder::{envelope_of_loop, loop_from_folder};
use rccloop::gl2_series::gl2_loop_report;
use rccloop::loops::{are_isomorphic, fingerprint, isomorphism, LoopTable};
use rccloop::perm::{closure, ElementSet, Permutation};

fn corpus() -> &'static [LoopTable] {
    static CORPUS: OnceLock<Vec<LoopTable>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut v: Vec<LoopTable> = Vec::new();
        for p in [3, 5] {
            v.extend(enumerate_2p(p, VerifyMode::CountsOnly).unwrap().tables().cloned());
        }
        let order5 = search_tables(&SearchConfig::new(5, false)).unwrap();
        v.extend(order5.into_iter().step_by(7));
        v.push(gl2_loop_report(3).unwrap().table);
        v
    })
}

fn relabeling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

fn corpus_loop() -> impl Strategy<Value = LoopTable> {
    any::<Index>().prop_map(|i| corpus()[i.index(corpus().len())].clone())
}

/// A loop together with two relabelings of it.
fn triple() -> impl Strategy<Value = (LoopTable, Vec<usize>, Vec<usize>)> {
    corpus_loop().prop_flat_map(|l| {
        let n = l.order();
        (Just(l), relabeling(n), relabeling(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn isomorphism_is_an_equivalence((l, f, g) in triple()) {
        let a = l.relabel(&f).unwrap();
        let b = a.relabel(&g).unwrap();
        prop_assert!(are_isomorphic(&l, &l));
        prop_assert!(are_isomorphic(&l, &a) && are_isomorphic(&a, &l));
        prop_assert!(are_isomorphic(&a, &b));
        prop_assert!(are_isomorphic(&l, &b));
        let phi = isomorphism(&l, &b).unwrap();
        for x in 0..l.order() {
            for y in 0..l.order() {
                prop_assert_eq!(phi[l.mul(x, y)], b.mul(phi[x], phi[y]));
            }
        }
        prop_assert_eq!(fingerprint(&l).unwrap(), fingerprint(&b).unwrap());
    }

    #[test]
    fn non_isomorphic_pairs_are_rejected(i in any::<Index>(), j in any::<Index>(), f in relabeling(10)) {
        let c = corpus();
        let (a, b) = (&c[i.index(c.len())], &c[j.index(c.len())]);
        let same = fingerprint(a).unwrap() == fingerprint(b).unwrap();
        if are_isomorphic(a, b) {
            prop_assert!(same);
        }
        if a.order() == 10 {
            prop_assert_eq!(are_isomorphic(a, b), are_isomorphic(&a.relabel(&f).unwrap(), b));
        }
    }

    #[test]
    fn opposite_swaps_rcc_and_lcc(l in corpus_loop()) {
        prop_assert_eq!(l.opposite().is_lcc(), l.is_rcc());
        prop_assert_eq!(l.opposite().is_rcc(), l.is_lcc());
    }

    #[test]
    fn rcc_iff_transversal_is_normal(l in corpus_loop()) {
        let env = envelope_of_loop(&l).unwrap();
        prop_assert_eq!(env.t_is_invariant(), l.is_rcc());
        let r = env.validate();
        prop_assert_eq!(r.literal_transversal, r.sharply_transitive);
        prop_assert!(are_isomorphic(&loop_from_folder(&env).unwrap(), &l));
    }

    #[test]
    fn isomorphic_loops_have_matching_envelopes((l, f, _g) in triple()) {
        let a = l.relabel(&f).unwrap();
        let (e1, e2) = (envelope_of_loop(&l).unwrap(), envelope_of_loop(&a).unwrap());
        prop_assert_eq!(e1.group.order(), e2.group.order());
        let sizes = |g: &rccloop::perm::GroupView| {
            let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        prop_assert_eq!(sizes(&e1.group), sizes(&e2.group));
    }
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn generators(degree: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(permutation(degree), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_equation(gens in (3usize..6).prop_flat_map(generators)) {
        let g = closure(&gens, 1000).unwrap();
        let classes = g.conjugacy_classes();
        prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        for c in &classes {
            prop_assert_eq!(g.order() % c.len(), 0);
            prop_assert_eq!(c.len() * g.centralizer_of(c[0]).len(), g.order());
        }
    }

    #[test]
    fn kernel_of_coset_action_is_core(
        gens in (3usize..6).prop_flat_map(generators),
        h_gen in any::<Index>(),
    ) {
        let g = closure(&gens, 1000).unwrap();
        let h = g.subgroup_generated(&[h_gen.index(g.order())]);
        let action = g.coset_action(&h).unwrap();
        let direct: ElementSet = (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| h.contains(g.conj(x, g.inv(y)))))
            .collect();
        prop_assert_eq!(&action.kernel, &g.core(&h));
        prop_assert_eq!(&action.kernel, &direct);
    }

    #[test]
    fn centralizers_in_prime_degree(
        (p, gens) in prop::sample::select(vec![3usize, 5, 7])
            .prop_flat_map(|p| (Just(p), generators(p)))
    ) {
        let g = closure(&gens, 6000).unwrap();
        if g.order() % p == 0 {
            for x in 1..g.order() {
                if g.element_order(x) % p == 0 {
                    prop_assert_eq!(g.centralizer_of(x).len(), p);
                }
            }
        }
    }
}

#[test]
fn ind_reduction_by_coprime_factors() {
    for n in 1..=12u64 {
        for d in (1..=n).filter(|d| n % d == 0) {
            for e in 1..=n {
                if e.gcd(&(n / d)) == 1 {
                    assert_eq!(ind_count(n, d * e).unwrap(), ind_count(n, d).unwrap(), "n={n} d={d} e={e}");
                }
            }
        }
    }
}

#[test]
fn burnside_orbit_count() {
    for n in 1..=10usize {
        assert_eq!(zeta_orbit_count(n as u64).unwrap(), zeta_orbit_count_direct(n).into());
    }
}
