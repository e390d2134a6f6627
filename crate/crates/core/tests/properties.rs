//! Property tests over seeded random posets, maps and operators.

mod common;

use common::*;
use finlat::birkhoff::RepresentationVerdict;
use finlat::corpus::{random_monotone_map, random_monotone_operator, random_poset, rng};
use finlat::iso::{is_isomorphism, poset_isomorphism};
use finlat::quotient::{canonical_operator, operator_family};
use finlat::text::{canonical, parse_poset, write_poset};
use finlat::*;
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

fn poset(n: usize, density: f64, seed: u64) -> Poset {
    random_poset(n, density, &mut rng(seed))
}

fn codomains() -> Vec<Lattice> {
    vec![
        Lattice::chain(2),
        Lattice::chain(4),
        Lattice::powerset(2),
        Lattice::powerset(3),
        stem_square(),
        Lattice::diamond_m3(),
        Lattice::pentagon_n5(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upsets_match_definition_and_antichains(n in 0usize..8, d in 0.0f64..1.0, seed: u64) {
        let p = poset(n, d, seed);
        let ups: Vec<ElemSet> = p.all_upsets(&caps()).unwrap().into_iter().map(|u| u.members()).collect();
        prop_assert_eq!(&ups, &brute_upsets(&p));
        prop_assert_eq!(ups.len(), brute_antichains(&p).len());
        prop_assert_eq!(p.count_upsets(&caps()).unwrap(), ups.len());
    }

    #[test]
    fn principal_upsets_reverse_the_order(n in 1usize..9, d in 0.0f64..1.0, seed: u64) {
        let p = poset(n, d, seed);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(p.up_mask(a).is_subset(p.up_mask(b)), p.leq(b, a));
            }
        }
    }

    #[test]
    fn cover_pairs_regenerate_the_order(n in 0usize..10, d in 0.0f64..1.0, seed: u64) {
        let p = poset(n, d, seed);
        let q = Poset::from_relation("Q", p.names().to_vec(), &p.cover_pairs()).unwrap();
        prop_assert!(p.same_order(&q.with_name(p.name())));
    }

    #[test]
    fn isomorphism_survives_relabeling(n in 1usize..8, d in 0.0f64..1.0, seed: u64, shuffle: u64) {
        let p = poset(n, d, seed);
        // permute the indices
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = shuffle;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let q = Poset::from_fn("Q", names, |a, b| p.leq(perm[a], perm[b])).unwrap();
        let f = poset_isomorphism(&p, &q).expect("relabeled copy");
        prop_assert!(is_isomorphism(&p, &q, &f));
        let g = poset_isomorphism(&q, &p).expect("symmetric");
        prop_assert!(is_isomorphism(&q, &p, &g));
        prop_assert!(poset_isomorphism(&p, &p).is_some());
    }

    #[test]
    fn text_round_trip(n in 0usize..10, d in 0.0f64..1.0, seed: u64) {
        let p = poset(n, d, seed);
        let back = parse_poset(&write_poset(&p)).unwrap();
        prop_assert!(back.same_order(&canonical(&p)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn upset_lattices_are_distributive_and_represent_their_carrier(n in 0usize..6, d in 0.0f64..1.0, seed: u64) {
        let x = poset(n, d, seed);
        let fx = upset_lattice(&x, &caps()).unwrap();
        let l = &fx.lattice;
        for a in 0..l.len() {
            for b in 0..l.len() {
                let pair = ElemSet::singleton(a).with(b);
                prop_assert_eq!(l.meet(a, b), glb(l, pair));
                prop_assert_eq!(l.join(a, b), lub(l, pair));
                // meet is union, join is intersection
                prop_assert_eq!(fx.family.sets()[l.meet(a, b)], fx.family.sets()[a].union(fx.family.sets()[b]));
                prop_assert_eq!(fx.family.sets()[l.join(a, b)], fx.family.sets()[a].intersection(fx.family.sets()[b]));
            }
        }
        prop_assert!(l.is_distributive().holds());
        let rep = represents(l, &caps()).unwrap();
        match rep.verdict {
            RepresentationVerdict::RepresentableBy { carrier, .. } => {
                prop_assert!(poset_isomorphism(&carrier, &x).is_some());
            }
            other => prop_assert!(false, "not representable: {:?}", other),
        }
        for chain in l.maximal_chains(&caps()).unwrap() {
            prop_assert_eq!(chain.len(), n + 1);
        }
    }

    #[test]
    fn cuts_are_antitone_upsets(n in 0usize..7, d in 0.0f64..1.0, seed: u64, pick in 0usize..7) {
        let x = poset(n, d, seed);
        let l = &codomains()[pick];
        let mu = random_monotone_map(&x, l, &mut rng(seed ^ 0x5eed));
        prop_assert_eq!(mu.cut(l.bottom()).members(), x.full_set());
        for p in 0..l.len() {
            let cp = mu.cut(p).members();
            prop_assert!(x.is_upset(cp));
            for q in 0..l.len() {
                if l.leq(p, q) {
                    prop_assert!(mu.cut(q).members().is_subset(cp));
                }
            }
        }
    }

    #[test]
    fn cut_criterion_matches_definition(n in 0usize..6, d in 0.0f64..1.0, seed: u64, pick in 0usize..7) {
        let x = poset(n, d, seed);
        let l = &codomains()[pick];
        let mu = random_monotone_map(&x, l, &mut rng(seed ^ 0xc075));
        let cuts = mu.cut_family().distinct;
        let every = brute_upsets(&x).iter().all(|&u| cuts.contains(u));
        prop_assert_eq!(cuts_are_all_upsets(&mu, &caps()).unwrap().holds(), every);

        // meet-closure of the image with the top, and its meet-irreducibles
        let mut closed = ElemSet::singleton(l.top());
        for &v in mu.values() {
            closed.insert(v);
        }
        loop {
            let next = closed.iter().fold(closed, |acc, a| {
                closed.iter().fold(acc, |acc, b| acc.with(l.meet(a, b)))
            });
            if next == closed {
                break;
            }
            closed = next;
        }
        let irreducible = |v: usize| {
            let above: ElemSet = closed.iter().filter(|&w| w != v && l.leq(v, w)).collect();
            !above.is_empty() && glb(l, above) != v
        };
        let inside = mu.values().iter().all(|&v| irreducible(v));
        let verdict = image_in_m(&mu, &caps());
        if every {
            prop_assert_eq!(verdict.unwrap().holds(), inside);
        }
    }

    #[test]
    fn operator_families_match_definition(n in 1usize..7, d in 0.0f64..1.0, seed: u64) {
        let x = poset(n, d, seed);
        let g = random_monotone_operator(&x, &mut rng(seed));
        let w = embedded_family(&g, &caps()).unwrap();
        let expected = brute_operator_family(&g);
        prop_assert_eq!(w.image.sets(), expected.as_slice());
        prop_assert!(w.image.is_complete_sublattice());

        let q = quotient(&g);
        let mut covered = ElemSet::EMPTY;
        for &c in &q.classes {
            prop_assert!(!c.is_empty());
            prop_assert!(covered.intersection(c).is_empty());
            covered = covered.union(c);
        }
        prop_assert_eq!(covered, x.full_set());
    }

    #[test]
    fn canonical_operator_round_trips(n in 1usize..7, d in 0.0f64..1.0, seed: u64) {
        let x = poset(n, d, seed);
        let g = random_monotone_operator(&x, &mut rng(seed));
        let fam = UpSetFamily::new(x.clone(), operator_family(&g, &caps()).unwrap()).unwrap();
        let h = canonical_operator("H", &fam, &caps()).unwrap();
        prop_assert_eq!(operator_family(&h, &caps()).unwrap(), fam.sets().to_vec());
        prop_assert!(are_equivalent(&g, &h, &caps()).unwrap());
    }

    #[test]
    fn equivalence_is_an_equivalence(n in 1usize..6, d in 0.0f64..1.0, seed: u64) {
        let x = poset(n, d, seed);
        let mut r = rng(seed);
        let ops: Vec<MonotonicOperator> = (0..4).map(|_| random_monotone_operator(&x, &mut r)).collect();
        for a in &ops {
            prop_assert!(are_equivalent(a, a, &caps()).unwrap());
            for b in &ops {
                let ab = are_equivalent(a, b, &caps()).unwrap();
                prop_assert_eq!(ab, are_equivalent(b, a, &caps()).unwrap());
                prop_assert_eq!(ab, brute_operator_family(a) == brute_operator_family(b));
                for c in &ops {
                    if ab && are_equivalent(b, c, &caps()).unwrap() {
                        prop_assert!(are_equivalent(a, c, &caps()).unwrap());
                    }
                }
            }
        }
    }
}
