use super::*;
use crate::builtin::builtin_group;
use crate::lattice::Lattice;
use crate::table::Table;
use proptest::prelude::*;

fn lattice(expr: &str) -> Lattice {
    Lattice::from_group(&builtin_group(expr).unwrap()).unwrap()
}

fn orders(lat: &Lattice, ids: &[SubId]) -> Vec<usize> {
    ids.iter().map(|&i| lat.order(i)).collect()
}

#[test]
fn series_of_s4() {
    let lat = lattice("symmetric(4)");
    let g = lat.full();
    assert_eq!(orders(&lat, &g.derived_series()), vec![24, 12, 4, 1]);
    assert_eq!(orders(&lat, &g.lower_central_series()), vec![24, 12]);
    assert_eq!(orders(&lat, &g.upper_central_series()), vec![1]);
    assert_eq!(
        orders(&lat, &g.series(SeriesKind::Chief).chain),
        vec![1, 4, 12, 24]
    );
}

#[test]
fn series_of_nilpotent_groups() {
    let lat = lattice("dihedral(8)");
    let g = lat.full();
    assert_eq!(orders(&lat, &g.lower_central_series()), vec![16, 4, 2, 1]);
    assert_eq!(orders(&lat, &g.upper_central_series()), vec![1, 2, 4, 16]);
}

#[test]
fn predicates() {
    let check = |expr: &str, prop: &str, expected: bool| {
        let lat = lattice(expr);
        let p: Property = prop.parse().unwrap();
        assert_eq!(lat.full().predicate(p).unwrap(), expected, "{expr} {prop}");
    };
    check("symmetric(4)", "soluble", true);
    check("symmetric(4)", "supersoluble", false);
    check("alternating(4)", "supersoluble", false);
    check("cyclic_ext(5,4,2)", "supersoluble", true);
    check("quaternion", "nilpotent", true);
    check("quaternion", "p_group(2)", true);
    check("quaternion", "abelian", false);
    check("cyclic(12)", "cyclic", true);
    check("symmetric(3)", "p_nilpotent(3)", false);
    check("symmetric(3)", "p_nilpotent(2)", true);
    check("alternating(5)", "simple", true);
    check("alternating(5)", "perfect", true);
    check("sl(2,5)", "quasisimple", true);
    check("sl(2,5)", "simple", false);
    check("alternating(4)", "p_nilpotent(3)", true);
    check("alternating(4)", "p_nilpotent(2)", false);
    check("quaternion", "quasinilpotent", true);
    check("symmetric(5)", "soluble", false);
    let lat = lattice("symmetric(3)");
    assert!(lat.full().predicate(Property::PGroup(4)).is_err());
    assert!("p_group(x)".parse::<Property>().is_err());
    assert!("smooth".parse::<Property>().is_err());
}

#[test]
fn components_and_generalized_fitting() {
    let lat = lattice("symmetric(4)");
    let g = lat.full();
    assert!(g.components().is_empty());
    assert_eq!(g.generalized_fitting(), g.fitting());

    let lat = lattice("alternating(5)");
    let g = lat.full();
    assert_eq!(g.components(), &[lat.whole()]);
    assert_eq!(g.generalized_fitting(), lat.whole());

    let lat = lattice("direct(alternating(5), cyclic(2))");
    let g = lat.full();
    assert_eq!(orders(&lat, g.components()), vec![60]);
    assert_eq!(lat.order(g.generalized_fitting()), 120);

    let lat = lattice("symmetric(5)");
    let g = lat.full();
    assert_eq!(orders(&lat, &[g.generalized_fitting()]), vec![60]);
}

#[test]
fn chief_factor_centralizers() {
    let lat = lattice("symmetric(4)");
    let g = lat.full();
    let factors = g.all_chief_factors();
    let shape: Vec<(usize, usize)> = factors
        .iter()
        .map(|f| (f.order, lat.order(f.centralizer)))
        .collect();
    assert!(shape.contains(&(4, 4)));
    assert!(shape.contains(&(3, 12)));
    assert!(shape.contains(&(2, 24)));
    assert!(g.chief_factor(lat.whole(), 0).is_err());
}

#[test]
fn table_level_supersolubility() {
    for (expr, expected) in [
        ("symmetric(3)", true),
        ("symmetric(4)", false),
        ("alternating(4)", false),
        ("cyclic_ext(7,3,2)", true),
        ("dihedral(6)", true),
        ("affine(3,2,[2,0,0,2])", true),
        ("affine(3,2,[0,2,1,0])", false),
    ] {
        let t = Table::from_group(&builtin_group(expr).unwrap()).unwrap();
        assert_eq!(table_is_supersoluble(&t), expected, "{expr}");
    }
}

const GROUPS: &[&str] = &[
    "symmetric(4)",
    "alternating(5)",
    "direct(alternating(5), cyclic(2))",
    "sl(2,3)",
    "sl(2,5)",
    "dihedral(10)",
    "dicyclic(5)",
    "cyclic_ext(3,8,2)",
    "affine(3,2,[0,2,1,0])",
    "cyclic_ext(7,6,3)",
    "gl(2,3)",
    "pauli",
    "direct(symmetric(3), symmetric(3))",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn supersolubility_routes_agree(k in 0..GROUPS.len()) {
        let lat = lattice(GROUPS[k]);
        let g = lat.full();
        prop_assert_eq!(g.is_supersoluble(), g.has_cyclic_normal_series());
        prop_assert_eq!(g.is_supersoluble(), table_is_supersoluble(lat.table()));
    }

    #[test]
    fn p_nilpotency_matches_complement_scan(k in 0..GROUPS.len(), i in 0usize..8) {
        let lat = lattice(GROUPS[k]);
        let g = lat.full();
        let primes = g.primes();
        if !primes.is_empty() {
            let p = primes[i % primes.len()];
            prop_assert_eq!(g.is_p_nilpotent(p), g.has_normal_p_complement(p));
        }
    }

    #[test]
    fn generalized_fitting_routes_agree(k in 0..GROUPS.len()) {
        let lat = lattice(GROUPS[k]);
        let g = lat.full();
        prop_assert_eq!(g.generalized_fitting(), g.generalized_fitting_by_normals());
        // F*(X) contains its own centralizer.
        prop_assert!(lat.le(g.centralizer(g.generalized_fitting()), g.generalized_fitting()));
    }

    #[test]
    fn nilpotency_matches_group_level(k in 0..GROUPS.len()) {
        let grp = builtin_group(GROUPS[k]).unwrap();
        let lat = Lattice::from_group(&grp).unwrap();
        let g = lat.full();
        prop_assert_eq!(g.is_nilpotent(), grp.is_nilpotent().unwrap());
        prop_assert_eq!(g.is_soluble(), grp.is_soluble().unwrap());
        prop_assert_eq!(g.is_abelian(), grp.is_abelian());
    }
}
