//! Kernel oracles: stabilizer-chain arithmetic against brute-force closure,
//! and lattice-level set products against group-level ones.

use std::collections::HashSet;

use fsq_core::group::set_product;
use fsq_core::{builtin_group, Group, Lattice, Permutation};
use proptest::prelude::*;

fn closure(g: &Group) -> HashSet<Permutation> {
    let id = g.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

const GROUPS: &[&str] = &[
    "trivial",
    "cyclic(12)",
    "dihedral(7)",
    "dicyclic(6)",
    "quaternion",
    "symmetric(5)",
    "alternating(5)",
    "sl(2,3)",
    "sl(2,5)",
    "gl(2,3)",
    "elementary_abelian(2,4)",
    "elementary_abelian(3,3)",
    "cyclic_ext(7,6,3)",
    "affine(3,2,[0,2,1,0],[1,1,1,2])",
    "direct(alternating(4), cyclic(5))",
    "pauli",
];

#[test]
fn chain_order_matches_enumeration() {
    for expr in GROUPS {
        let g = builtin_group(expr).unwrap();
        assert!(g.order() <= 200, "{expr}");
        let elems = closure(&g);
        assert_eq!(elems.len() as u64, g.order(), "{expr}");
        assert!(elems.iter().all(|x| g.contains(x)), "{expr}");
        let listed: HashSet<Permutation> = g.elements().unwrap().into_iter().collect();
        assert_eq!(listed, elems, "{expr}");
    }
}

#[test]
fn s4_lattice_shape() {
    let lat = Lattice::from_group(&builtin_group("symmetric(4)").unwrap()).unwrap();
    assert_eq!(lat.len(), 30);
    assert_eq!(lat.classes().len(), 11);
    let sizes: Vec<usize> = lat.classes().iter().map(|c| c.members.len()).collect();
    assert_eq!(sizes.iter().sum::<usize>(), 30);
}

#[test]
fn lattice_set_products_match_group_level() {
    for expr in [
        "symmetric(4)",
        "dihedral(6)",
        "quaternion",
        "alternating(4)",
    ] {
        let g = builtin_group(expr).unwrap();
        let lat = Lattice::from_group(&g).unwrap();
        let groups: Vec<Group> = (0..lat.len()).map(|i| lat.group(i).unwrap()).collect();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let fast = lat.set_product(a, b);
                let slow = set_product(&groups[a], &groups[b], &g).unwrap();
                assert_eq!(fast, slow, "{expr} {a} {b}");
                assert_eq!(fast.is_subgroup, fast.commutes, "{expr} {a} {b}");
            }
        }
    }
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_subgroups_of_s6(gens in prop::collection::vec(perm_strategy(6), 1..4)) {
        let g = Group::generate(6, gens).unwrap();
        let elems = closure(&g);
        prop_assert_eq!(elems.len() as u64, g.order());
        prop_assert_eq!(720 % g.order(), 0);
        for x in elems.iter().take(50) {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn membership_is_exact(gens in prop::collection::vec(perm_strategy(5), 1..3), probe in perm_strategy(5)) {
        let g = Group::generate(5, gens).unwrap();
        prop_assert_eq!(g.contains(&probe), closure(&g).contains(&probe));
    }
}
