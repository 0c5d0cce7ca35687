//! Acceptance suite over the shipped core catalog.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one `PASS`/`FAIL` line; the process exits non-zero if any criterion fails.
//! All thresholds are pinned below.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fsq_core::formations::FormationId;
use fsq_core::{Group, Lattice, Permutation};
use fsq_harness::catalog::{self, Catalog, Entry};
use fsq_harness::report::{CaseReport, CaseVerdict, Report};
use fsq_harness::runner::{run, RunConfig};
use fsq_harness::theorems::{parse_selection, Statement};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const MIN_GROUPS: usize = 80;
const MAX_CATALOG_ORDER: u64 = 360;
const HEADLINE_BUDGET: Duration = Duration::from_secs(600);
const MIN_SEMIDIRECT: usize = 5;
/// Isomorphism types of each order 1..=24.
const TYPES_UP_TO_24: [usize; 24] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15,
];
const REQUIRED_NAMES: [&str; 6] = ["A4", "S4", "A5", "S5", "SL(2,3)", "SL(2,5)"];
const MIN_NONSOLUBLE_L31: usize = 3;
const MIN_SOLUBLE_L31: usize = 40;
const MIN_NON_VACUOUS_P2: usize = 10;
const VARIANT_ORDER_LIMIT: u64 = 60;
const ENUMERATION_ORDER_LIMIT: u64 = 200;
const SET_PRODUCT_ORDER_LIMIT: u64 = 48;
const DETERMINISM_JOBS: usize = 3;
const SHUFFLE_SEED: u64 = 0x5eed;

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line {
        ok,
        detail: detail.into(),
    }
}

fn lattices(cat: &Catalog) -> Vec<(&Entry, Lattice)> {
    cat.entries
        .iter()
        .map(|e| (e, Lattice::from_group(&e.group).expect("catalog lattice")))
        .collect()
}

fn cases<'a>(rep: &'a Report, id: &str) -> Vec<&'a CaseReport> {
    rep.body.cases.iter().filter(|c| c.theorem == id).collect()
}

fn fails(cs: &[&CaseReport]) -> usize {
    cs.iter().filter(|c| c.verdict == CaseVerdict::Fail).count()
}

/// Isomorphism invariants fine enough to separate all groups of order at
/// most 24.
fn signature(lat: &Lattice) -> Vec<usize> {
    let g = lat.full();
    let t = lat.table();
    let mut element_orders: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..t.size() {
        *element_orders.entry(t.element_order(x)).or_default() += 1;
    }
    let mut sig = vec![
        t.size(),
        lat.len(),
        lat.classes().len(),
        g.normals().len(),
        lat.order(g.center()),
        lat.order(g.derived()),
        lat.order(g.frattini()),
    ];
    sig.extend(element_orders.into_iter().flat_map(|(k, v)| [k, v]));
    let mut class_shapes: Vec<(usize, usize)> = lat
        .classes()
        .iter()
        .map(|c| (c.order, c.members.len()))
        .collect();
    class_shapes.sort();
    sig.extend(class_shapes.into_iter().flat_map(|(a, b)| [a, b]));
    sig
}

/// Semidirect constructions, recognised by the builtin expression recorded
/// above each block of the shipped catalog.
fn semidirect_count() -> usize {
    catalog::CORE
        .lines()
        .filter(|l| {
            let l = l.trim_start_matches('#').trim();
            l.starts_with("affine(") || l.starts_with("affine_ext(") || l.starts_with("cyclic_ext(")
        })
        .count()
}

fn headline(cat: &Catalog, rep: &Report, elapsed: Duration, lats: &[(&Entry, Lattice)]) -> Line {
    let orders: BTreeSet<u64> = cat.entries.iter().map(|e| e.group.order()).collect();
    let mut types: BTreeMap<usize, HashSet<Vec<usize>>> = BTreeMap::new();
    for (e, lat) in lats {
        if e.group.order() <= 24 {
            types
                .entry(e.group.order() as usize)
                .or_default()
                .insert(signature(lat));
        }
    }
    let missing_types: Vec<usize> = (1..=24)
        .filter(|&n| types.get(&n).map_or(0, |s| s.len()) != TYPES_UP_TO_24[n - 1])
        .collect();
    let missing_names: Vec<&str> = REQUIRED_NAMES
        .iter()
        .copied()
        .filter(|n| cat.get(n).is_none())
        .collect();
    let dihedral = cat
        .entries
        .iter()
        .filter(|e| e.spec.name.starts_with('D') && !e.spec.name.starts_with("Dic"))
        .count();
    let dicyclic = cat
        .entries
        .iter()
        .filter(|e| e.spec.name.starts_with("Dic") || e.spec.name.starts_with('Q'))
        .count();
    let elementary = ["C2^2", "C2^3", "C2^4", "C3^2", "C3^3"]
        .iter()
        .filter(|n| cat.get(n).is_some())
        .count();
    let semidirect = semidirect_count();
    let fail = rep.body.count(CaseVerdict::Fail);
    let skipped = rep.body.count(CaseVerdict::Skipped);
    let ok = cat.len() >= MIN_GROUPS
        && orders.first() == Some(&1)
        && orders.last() == Some(&MAX_CATALOG_ORDER)
        && missing_types.is_empty()
        && missing_names.is_empty()
        && dihedral >= 3
        && dicyclic >= 3
        && elementary >= 3
        && semidirect >= MIN_SEMIDIRECT
        && fail == 0
        && skipped == 0
        && elapsed <= HEADLINE_BUDGET;
    line(
        ok,
        format!(
            "{} groups, orders {}..{}, order<=24 types missing at {:?}, required missing {:?}, dihedral {dihedral}, dicyclic {dicyclic}, elementary abelian {elementary}, semidirect {semidirect}, {} cases, {fail} fail, {skipped} skipped, {:.1}s",
            cat.len(),
            orders.first().unwrap_or(&0),
            orders.last().unwrap_or(&0),
            missing_types,
            missing_names,
            rep.body.cases.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn solubility_equivalence(rep: &Report) -> Line {
    let cs = cases(rep, "L3.1");
    let nonsoluble_with_witness = cs
        .iter()
        .filter(|c| {
            !c.conclusion
                && !c.hypothesis
                && c.verdict == CaseVerdict::Pass
                && c.witnesses
                    .iter()
                    .any(|w| w.kind == "not_quasinormal" && w.rechecked)
        })
        .count();
    let soluble = cs
        .iter()
        .filter(|c| c.conclusion && c.hypothesis && c.verdict == CaseVerdict::Pass)
        .count();
    let f = fails(&cs);
    line(
        nonsoluble_with_witness >= MIN_NONSOLUBLE_L31 && soluble >= MIN_SOLUBLE_L31 && f == 0,
        format!("{nonsoluble_with_witness} nonsoluble with witness (>= {MIN_NONSOLUBLE_L31}), {soluble} soluble (>= {MIN_SOLUBLE_L31}), {f} counterexamples"),
    )
}

fn p_nilpotency_suites(rep: &Report) -> Line {
    let at = |id: &str| -> Vec<&CaseReport> {
        cases(rep, id)
            .into_iter()
            .filter(|c| c.params_key.prime == Some(2) && c.params_key.depth.unwrap_or(1) == 1)
            .collect()
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for id in ["L4.1", "L4.2", "T4.3", "T4.4"] {
        let cs = at(id);
        let groups: BTreeSet<&str> = cs
            .iter()
            .filter(|c| {
                c.hypothesis
                    && c.verdict == CaseVerdict::Pass
                    && (id.starts_with('L') || c.has_flag("nontrivial_witness"))
            })
            .map(|c| c.group.as_str())
            .collect();
        let f = fails(&cs);
        ok &= groups.len() >= MIN_NON_VACUOUS_P2 && f == 0;
        parts.push(format!(
            "{id}: {} non-vacuous, {f} counterexamples",
            groups.len()
        ));
    }
    line(
        ok,
        format!("{} (each >= {MIN_NON_VACUOUS_P2})", parts.join("; ")),
    )
}

fn hypercenters(lats: &[(&Entry, Lattice)]) -> Line {
    let mut bad = Vec::new();
    for (e, lat) in lats {
        let g = lat.full();
        let upper = *g.upper_central_series().last().unwrap();
        let mut ok = g.f_hypercenter(FormationId::N) == upper;
        for f in FormationId::ALL {
            ok &= (g.f_hypercenter(f) == lat.whole()) == g.in_formation(f);
            ok &= g.f_hypercenter(f) == g.f_hypercenter_by_definition(f);
        }
        if !ok {
            bad.push(e.spec.name.clone());
        }
    }
    line(
        bad.is_empty(),
        format!("{} groups, disagreements {:?}", lats.len(), bad),
    )
}

fn f_centrality(lats: &[(&Entry, Lattice)]) -> Line {
    let mut factors = 0;
    let mut bad = Vec::new();
    for (e, lat) in lats {
        let g = lat.full();
        for &(upper, lower) in g.chief_factors() {
            factors += 1;
            for f in FormationId::ALL {
                let fast = g.is_f_central(upper, lower, f).unwrap();
                let slow = g.is_f_central_generic(upper, lower, f).unwrap();
                if fast != slow {
                    bad.push(format!("{} {upper}/{lower} {f}", e.spec.name));
                }
            }
        }
    }
    line(
        bad.is_empty(),
        format!("{factors} chief factors x 3 formations, disagreements {bad:?}"),
    )
}

fn fsq_variant(lats: &[(&Entry, Lattice)]) -> Line {
    let mut triples = 0;
    let mut bad = Vec::new();
    for (e, lat) in lats
        .iter()
        .filter(|(e, _)| e.group.order() <= VARIANT_ORDER_LIMIT)
    {
        let g = lat.full();
        for h in 0..lat.len() {
            for f in FormationId::ALL {
                triples += 1;
                if g.is_fs_quasinormal(h, f) != lat.fs_quasinormal_variant(h, f).unwrap().holds {
                    bad.push(format!("{} {h} {f}", e.spec.name));
                }
            }
        }
    }
    line(
        bad.is_empty(),
        format!("{triples} triples with |G| <= {VARIANT_ORDER_LIMIT}, disagreements {bad:?}"),
    )
}

fn structure_suites(cat: &Catalog, rep: &Report) -> Line {
    let ids = [
        "L2.12.1", "L2.12.3", "L2.12.4", "L2.12.5", "L2.13.1", "L2.13.2", "L2.11",
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for id in ids {
        let cs = cases(rep, id);
        let covered: BTreeSet<&str> = cs
            .iter()
            .filter(|c| c.verdict != CaseVerdict::Skipped)
            .map(|c| c.group.as_str())
            .collect();
        let f = fails(&cs);
        ok &= f == 0 && covered.len() == cat.len();
        parts.push(format!(
            "{id} {}/{} groups {f} fail",
            covered.len(),
            cat.len()
        ));
    }
    line(ok, parts.join("; "))
}

/// Closure of the generators by breadth-first multiplication.
fn enumerate(g: &Group) -> usize {
    let id = g.identity();
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

fn kernel(cat: &Catalog, lats: &[(&Entry, Lattice)]) -> Line {
    let mut enumerated = 0;
    let mut order_bad = Vec::new();
    for e in cat
        .entries
        .iter()
        .filter(|e| e.group.order() <= ENUMERATION_ORDER_LIMIT)
    {
        enumerated += 1;
        if enumerate(&e.group) as u64 != e.group.order() {
            order_bad.push(e.spec.name.clone());
        }
    }
    let s4 = Lattice::from_group(&fsq_core::builtin_group("symmetric(4)").unwrap()).unwrap();
    let s4_ok = s4.len() == 30 && s4.classes().len() == 11;
    let mut pairs = 0usize;
    let mut product_bad = Vec::new();
    for (e, lat) in lats
        .iter()
        .filter(|(e, _)| e.group.order() <= SET_PRODUCT_ORDER_LIMIT)
    {
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                pairs += 1;
                let sp = lat.set_product(a, b);
                if sp.is_subgroup != sp.commutes {
                    product_bad.push(format!("{} {a} {b}", e.spec.name));
                }
            }
        }
    }
    line(
        order_bad.is_empty() && s4_ok && product_bad.is_empty(),
        format!(
            "{enumerated} orders enumerated (mismatch {order_bad:?}); S4 {} subgroups in {} classes; {pairs} set products (mismatch {})",
            s4.len(),
            s4.classes().len(),
            product_bad.len()
        ),
    )
}

fn determinism(cat: &Catalog, statements: &[Statement], rep: &Report) -> Line {
    let mut shuffled = cat.clone();
    shuffled
        .entries
        .shuffle(&mut StdRng::seed_from_u64(SHUFFLE_SEED));
    let moved = shuffled
        .entries
        .iter()
        .zip(&cat.entries)
        .any(|(a, b)| a.spec.name != b.spec.name);
    let config = RunConfig {
        jobs: DETERMINISM_JOBS,
        ..RunConfig::new(statements.to_vec())
    };
    let other = run(&shuffled, &config);
    let same = other.body_json() == rep.body_json();
    line(
        moved && same,
        format!(
            "jobs {} vs {DETERMINISM_JOBS} on shuffled order (reordered: {moved}): bodies {}",
            rep.timing.jobs,
            if same { "identical" } else { "differ" }
        ),
    )
}

fn main() -> ExitCode {
    let cat = catalog::load_catalog("core").expect("core catalog loads");
    let statements = parse_selection("all").unwrap();
    let start = Instant::now();
    let rep = run(&cat, &RunConfig::new(statements.clone()));
    let elapsed = start.elapsed();
    let lats = lattices(&cat);

    let results = [
        ("1 headline run", headline(&cat, &rep, elapsed, &lats)),
        ("2 solubility equivalence", solubility_equivalence(&rep)),
        ("3 p-nilpotency suites p=2 n=1", p_nilpotency_suites(&rep)),
        ("4 hypercenter oracle", hypercenters(&lats)),
        ("5 F-centrality dual path", f_centrality(&lats)),
        ("6 quasinormality variant", fsq_variant(&lats)),
        ("7 structure suites", structure_suites(&cat, &rep)),
        ("8 kernel oracles", kernel(&cat, &lats)),
        ("9 determinism", determinism(&cat, &statements, &rep)),
    ];
    let mut all = true;
    for (name, l) in &results {
        println!(
            "acceptance {name}: {} ({})",
            if l.ok { "PASS" } else { "FAIL" },
            l.detail
        );
        all &= l.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
