use proptest::prelude::*;

use twistlab::io::{parse_structure, write_structure, StructureFile};
use twistlab::kleene::{build_pa, pa_embedding, pa_pseudo_kleene};
use twistlab::order::is_antitone_involution;
use twistlab::residuation::{check, synthesize_residuum};
use twistlab::twist::{check_twist_groupoid, full_twist, PairMap};
use twistlab::{ElementSet, Involution, OpTable, Poset, ResStructure};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// A random order: an acyclic relation on a shuffled labelling, then closed.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), perm, proptest::collection::vec(any::<bool>(), n * n))
        })
        .prop_map(|(n, perm, bits)| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .map(|(i, j)| (perm[i], perm[j]))
                .collect();
            Poset::from_pairs(names(n), &pairs).unwrap()
        })
}

fn table(n: usize) -> impl Strategy<Value = OpTable> {
    proptest::collection::vec(0..n, n * n).prop_map(move |cells| OpTable::new(n, cells).unwrap())
}

fn structure(max: usize) -> impl Strategy<Value = ResStructure> {
    poset(max).prop_flat_map(|p| {
        let n = p.size();
        (Just(p), table(n), table(n), 0..n)
            .prop_map(|(p, mul, imp, one)| ResStructure::new(p, mul, Some(imp), one).unwrap())
    })
}

fn set(n: usize) -> impl Strategy<Value = ElementSet> {
    (0u128..1 << n).prop_map(ElementSet::from_bits)
}

fn poset_and_sets(max: usize) -> impl Strategy<Value = (Poset, ElementSet, ElementSet)> {
    poset(max).prop_flat_map(|p| {
        let n = p.size();
        (Just(p), set(n), set(n))
    })
}

proptest! {
    #[test]
    fn covers_regenerate_the_order(p in poset(7)) {
        let q = Poset::from_pairs(p.names().to_vec(), &p.covers()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn cones_form_a_galois_connection((p, a, b) in poset_and_sets(6)) {
        prop_assert_eq!(p.lower_cone(ElementSet::EMPTY), p.carrier());
        prop_assert_eq!(p.upper_cone(ElementSet::EMPTY), p.carrier());
        let u = p.upper_cone(a);
        prop_assert!(a.is_subset(p.lower_cone(u)));
        prop_assert_eq!(p.upper_cone(p.lower_cone(u)), u);
        if a.is_subset(b) {
            prop_assert!(p.upper_cone(b).is_subset(u));
            prop_assert!(p.lower_cone(b).is_subset(p.lower_cone(a)));
        }
        let expected = a.iter().all(|x| b.iter().all(|y| p.leq(x, y)));
        prop_assert_eq!(p.set_leq(a, b), expected);
    }

    #[test]
    fn lattice_verdict_matches_bound_counts(p in poset(6)) {
        let n = p.size();
        let unique = (0..n).all(|x| (0..n).all(|y| {
            let xy = ElementSet::singleton(x).with(y);
            p.minimal_elements(p.upper_cone(xy)).len() == 1 && p.maximal_elements(p.lower_cone(xy)).len() == 1
        }));
        prop_assert_eq!(p.is_lattice().is_pass(), unique);
        if let Some(f) = p.is_lattice().witness() {
            prop_assert!(f.extremal.len() != 1);
        }
    }

    #[test]
    fn lu_identities_agree(p in poset(6)) {
        prop_assert!(p.distributivity().agree());
    }

    #[test]
    fn full_twist_order_and_swap(p in poset(5)) {
        let tp = full_twist(&p).unwrap();
        let n = p.size();
        for i in 0..n * n {
            for j in 0..n * n {
                let ((x, y), (z, v)) = (tp.pair(i), tp.pair(j));
                prop_assert_eq!(tp.poset.leq(i, j), p.leq(x, z) && p.leq(v, y));
            }
        }
        let swap = Involution::new((0..n * n).map(|i| { let (x, y) = tp.pair(i); tp.index((y, x)) }).collect()).unwrap();
        prop_assert!(is_antitone_involution(&tp.poset, &swap).is_pass());
        prop_assert!(tp.cone_law().is_pass());
    }

    #[test]
    fn restricted_twist_is_pseudo_kleene(p in poset(5), a in 0usize..5) {
        let a = a % p.size();
        let pa = build_pa(&p, a).unwrap();
        for &(x, y) in &pa.pairs {
            prop_assert!(pa.contains((y, x)));
        }
        prop_assert!(is_antitone_involution(&pa.poset, &pa.involution).is_pass());
        prop_assert!(pa_pseudo_kleene(&pa).is_pass());
        prop_assert!(pa_embedding(&pa).is_pass());
    }

    #[test]
    fn synthesized_residuum_is_the_adjoint(s in structure(4)) {
        match synthesize_residuum(&s.poset, &s.mul) {
            Ok(imp) => {
                let t = ResStructure::new(s.poset.clone(), s.mul.clone(), Some(imp.clone()), s.one).unwrap();
                prop_assert!(check(&t, 3).unwrap().is_pass());
                if check(&s, 3).unwrap().is_pass() {
                    prop_assert_eq!(s.imp.as_ref().unwrap(), &imp);
                }
            }
            Err(_) => prop_assert!(check(&s, 3).unwrap().is_fail()),
        }
    }

    #[test]
    fn condition_witnesses_are_genuine(s in structure(4)) {
        if let Some(w) = check(&s, 1).unwrap().witness() {
            let (x, y, z) = (w.get_elem("x").unwrap(), w.get_elem("y").unwrap(), w.get_elem("z").unwrap());
            prop_assert!(s.leq(x, y) && !s.leq(s.mul(z, x), s.mul(z, y)));
        }
        if let Some(w) = check(&s, 3).unwrap().witness() {
            let (x, y, z) = (w.get_elem("x").unwrap(), w.get_elem("y").unwrap(), w.get_elem("z").unwrap());
            prop_assert_ne!(s.leq(s.mul(x, y), z), s.leq(x, s.imp(y, z)));
        }
        if let Some(w) = check(&s, 6).unwrap().witness() {
            let x = w.get_elem("x").unwrap();
            prop_assert_ne!(s.mul(x, s.one), x);
        }
    }

    #[test]
    fn twist_groupoid_transfer(s in structure(3), first in any::<bool>()) {
        let n = s.size();
        let (f, g) = if first { (PairMap::proj1(n), PairMap::proj2(n)) } else { (PairMap::proj2(n), PairMap::proj1(n)) };
        let (_, _, r) = check_twist_groupoid(&s, &f, &g, (s.one, s.one)).unwrap();
        prop_assert!(r.biconditional());
        prop_assert!(r.adjoint_transfer());
        prop_assert!(r.unit_refinement());
    }

    #[test]
    fn structure_files_round_trip(s in structure(5), designated in proptest::option::of(0usize..5), proj in any::<bool>()) {
        let mut file = StructureFile::from_structure(&s);
        file.designated = designated.map(|d| d % s.size());
        let n = s.size();
        file.f = Some(if proj { PairMap::proj1(n) } else { PairMap::new(n, (0..n * n).map(|i| (i * 7 + 3) % n).collect()).unwrap() });
        let text = write_structure(&file);
        let back = parse_structure(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(write_structure(&back), text);
    }

    #[test]
    fn parser_rejects_garbage_without_panicking(text in "(elements|covers|table|const|optable|pairmap|[a-c<={},()# \n-]){0,40}") {
        let _ = parse_structure(&text);
    }
}
