//! One encoding per statement: a hypothesis and a conclusion evaluated on a
//! single group, with the witnesses that decided them.
//!
//! Statements about all subgroups (or all pairs) of a group are evaluated as
//! suites: the hypothesis says some instance exists, the conclusion says every
//! instance satisfied the property, and the first failing instance becomes
//! the witness.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use fsq_core::arith::{gcd, prime_factors};
use fsq_core::formations::FormationId;
use fsq_core::quasinormal::SupplementClass;
use fsq_core::{Lattice, Result, SubId, View};
use serde::Serialize;

use crate::witness::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    SPermIntermediate,
    SPermQuotient,
    SPermSubnormal,
    SPermIntersection,
    SPermRestriction,
    FsqVariant,
    FsqQuotient,
    FsqCoprimeImage,
    FsqIntermediate,
    FsqNormalIntermediate,
    FsqInFormation,
    SPermPSubgroup,
    SubnormalPiSubgroup,
    FrattiniFreeNilpotent,
    CyclicExtension,
    SupplementQuotient,
    SupplementIntermediate,
    FormationBySylows,
    FormationByFitting,
    HallConjugacy,
    ArithmeticPNilpotency,
    GfitNormal,
    GfitQuotient,
    GfitIdempotent,
    GfitSelfCentralizing,
    GfitLayer,
    GfitFrattiniQuotient,
    GfitCentralQuotient,
    SolubilityBySylow,
    FactorizedSupersoluble,
    FormationByGfit,
    PNilpotentBySupplements,
    PNilpotentBySupplementOrFsq,
    PNilpotentByNormal,
    PNilpotentByFitting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Fails when the hypothesis holds and the conclusion does not.
    Implies,
    /// Fails when the two sides differ.
    Iff,
}

pub struct Info {
    pub id: &'static str,
    pub statement: Statement,
    pub direction: Direction,
    /// Results quoted from elsewhere and checked extensionally.
    pub imported: bool,
    pub summary: &'static str,
}

use Direction::{Iff, Implies};
use Statement::*;

macro_rules! info {
    ($id:literal, $s:ident, $d:ident, $imp:literal, $sum:literal) => {
        Info {
            id: $id,
            statement: $s,
            direction: $d,
            imported: $imp,
            summary: $sum,
        }
    };
}

/// Registry in report order.
pub const STATEMENTS: &[Info] = &[
    info!("L2.1a", SPermIntermediate, Implies, false, "s-permutable in G implies s-permutable in every intermediate subgroup"),
    info!("L2.1b", SPermQuotient, Implies, false, "for normal H <= K: K/H s-permutable in G/H iff K s-permutable in G"),
    info!("L2.1c", SPermSubnormal, Implies, false, "s-permutable subgroups are subnormal"),
    info!("L2.1d", SPermIntersection, Implies, false, "intersections of s-permutable subgroups are s-permutable"),
    info!("L2.1e", SPermRestriction, Implies, false, "H s-permutable in G implies H meet M s-permutable in M"),
    info!("L2.2.1", FsqVariant, Implies, false, "quasinormality agrees with the core-quotient variant"),
    info!("L2.2.2", FsqQuotient, Implies, false, "for normal H <= K: K/H quasinormal in G/H iff K quasinormal in G"),
    info!("L2.2.3", FsqCoprimeImage, Implies, false, "quasinormal E coprime to normal H maps to a quasinormal HE/H"),
    info!("L2.2.4", FsqIntermediate, Implies, false, "quasinormal in G implies quasinormal in intermediate subgroups"),
    info!("L2.2.5", FsqNormalIntermediate, Implies, false, "quasinormal in G implies quasinormal in intermediate normal subgroups"),
    info!("L2.2.6", FsqInFormation, Implies, false, "if G lies in F every subgroup is quasinormal"),
    info!("L2.3", SPermPSubgroup, Implies, false, "s-permutable p-subgroups lie in O_p(G) and are normalized by O^p(G)"),
    info!("L2.4", SubnormalPiSubgroup, Implies, false, "subnormal pi-subgroups lie in O_pi(G)"),
    info!("L2.5", FrattiniFreeNilpotent, Implies, false, "nilpotent normal subgroups avoiding the Frattini subgroup are products of minimal normal subgroups"),
    info!("L2.6", CyclicExtension, Implies, false, "cyclic normal E with G/E in F implies G in F"),
    info!("L2.7.1", SupplementQuotient, Implies, false, "supplements pass to quotients"),
    info!("L2.7.2", SupplementIntermediate, Implies, false, "supplements restrict to intermediate subgroups"),
    info!("L2.8", FormationBySylows, Iff, true, "G in F iff some normal E with G/E in F has its non-cyclic Sylow maximal subgroups supplemented or quasinormal"),
    info!("L2.9", FormationByFitting, Iff, true, "G in F iff some soluble normal E with G/E in F has the non-cyclic Sylow maximal subgroups of F(E) supplemented or quasinormal"),
    info!("L2.10", HallConjugacy, Implies, false, "Hall pi-subgroups with 2 not in pi are conjugate"),
    info!("L2.11", ArithmeticPNilpotency, Implies, false, "arithmetic criterion for p-nilpotency"),
    info!("L2.12.1", GfitNormal, Implies, false, "F*(N) <= F*(G) for normal N"),
    info!("L2.12.2", GfitQuotient, Implies, false, "F*(G)/N <= F*(G/N) for normal N <= F*(G)"),
    info!("L2.12.3", GfitIdempotent, Implies, false, "F(G) <= F*(G) = F*(F*(G)), and soluble F*(G) equals F(G)"),
    info!("L2.12.4", GfitSelfCentralizing, Implies, false, "C_G(F*(G)) <= F(G)"),
    info!("L2.12.5", GfitLayer, Implies, false, "F*(G) = F(G)E(G) with F(G) meet E(G) = Z(E(G))"),
    info!("L2.13.1", GfitFrattiniQuotient, Implies, false, "F*(G/Phi(H)) = F*(G)/Phi(H) for soluble normal H"),
    info!("L2.13.2", GfitCentralQuotient, Implies, false, "F*(G/K) = F*(G)/K for central normal p-subgroups K"),
    info!("L3.1", SolubilityBySylow, Iff, false, "G soluble iff every maximal subgroup of a Sylow subgroup for the smallest prime is S-quasinormal"),
    info!("T3.2", FactorizedSupersoluble, Implies, false, "G = AB with A subnormal and B a cyclic-Sylow supersoluble Hall subgroup is supersoluble under the quasinormality hypothesis on A"),
    info!("T3.3", FormationByGfit, Implies, false, "normal H with G/H in F and supplemented-or-quasinormal Sylow maximal subgroups of F*(H) gives G in F"),
    info!("L4.1", PNilpotentBySupplements, Implies, false, "n-maximal subgroups of a Sylow p-subgroup with p-nilpotent supplements give p-nilpotency"),
    info!("L4.2", PNilpotentBySupplementOrFsq, Implies, false, "n-maximal subgroups of a Sylow p-subgroup supplemented or quasinormal give p-nilpotency"),
    info!("T4.3", PNilpotentByNormal, Iff, false, "G p-nilpotent iff some normal E with G/E p-nilpotent has supplemented-or-quasinormal n-maximal Sylow subgroups"),
    info!("T4.4", PNilpotentByFitting, Iff, false, "G p-nilpotent iff some soluble normal H with G/H p-nilpotent has quasinormal Sylow maximal subgroups of F(H)"),
];

pub fn info(s: Statement) -> &'static Info {
    STATEMENTS.iter().find(|i| i.statement == s).unwrap()
}

/// Parses `all` or a comma-separated list of ids; ids may be prefixes that
/// select a family (`L2.1` selects `L2.1a` to `L2.1e`).
pub fn parse_selection(spec: &str) -> std::result::Result<Vec<Statement>, String> {
    if spec.trim() == "all" {
        return Ok(STATEMENTS.iter().map(|i| i.statement).collect());
    }
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let exact: Vec<Statement> = STATEMENTS
            .iter()
            .filter(|i| i.id == part)
            .map(|i| i.statement)
            .collect();
        let chosen = if exact.is_empty() {
            STATEMENTS
                .iter()
                .filter(|i| {
                    i.id.strip_prefix(part).is_some_and(|rest| {
                        rest.starts_with(|c: char| c == '.' || c.is_ascii_lowercase())
                    })
                })
                .map(|i| i.statement)
                .collect()
        } else {
            exact
        };
        if chosen.is_empty() {
            return Err(format!("unknown statement id '{part}'"));
        }
        out.extend(chosen);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub formation: Option<FormationId>,
    pub prime: Option<usize>,
    pub depth: Option<usize>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(x) = self.formation {
            parts.push(format!("F={x}"));
        }
        if let Some(p) = self.prime {
            parts.push(format!("p={p}"));
        }
        if let Some(n) = self.depth {
            parts.push(format!("n={n}"));
        }
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub hypothesis: bool,
    pub conclusion: bool,
    /// Instances of the hypothesis that were evaluated; zero means vacuous.
    pub instances: usize,
    pub witnesses: Vec<Witness>,
    pub flags: Vec<String>,
}

/// Per-group evaluation state shared by all statements.
pub struct Subject<'a> {
    pub lat: &'a Lattice,
    supplements: Mutex<HashMap<(SubId, SupplementClass), bool>>,
}

impl<'a> Subject<'a> {
    pub fn new(lat: &'a Lattice) -> Self {
        Subject {
            lat,
            supplements: Mutex::new(HashMap::new()),
        }
    }

    fn g(&self) -> View<'a> {
        self.lat.full()
    }

    fn has_supplement(&self, h: SubId, class: SupplementClass) -> bool {
        if let Some(&v) = self.supplements.lock().unwrap().get(&(h, class)) {
            return v;
        }
        let v = self.g().has_f_supplement(h, class);
        self.supplements.lock().unwrap().insert((h, class), v);
        v
    }

    fn supplement_or_fsq(&self, h: SubId, class: SupplementClass) -> bool {
        self.has_supplement(h, class) || self.g().is_fs_quasinormal(h, FormationId::U)
    }

    /// Every Sylow subgroup of `x`, for every prime dividing `|x|`.
    fn sylows(&self, x: SubId) -> Vec<SubId> {
        let v = self.lat.view(x);
        v.primes()
            .into_iter()
            .flat_map(|p| v.sylow_all(p))
            .collect()
    }

    /// Maximal subgroups of the non-cyclic Sylow subgroups of `x`, without
    /// repetition.
    fn noncyclic_sylow_maximals(&self, x: SubId) -> Vec<SubId> {
        let mut out: Vec<SubId> = self
            .sylows(x)
            .into_iter()
            .filter(|&p| !self.lat.view(p).is_cyclic())
            .flat_map(|p| self.lat.maximal_subgroups(p).to_vec())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn sylow_maximals(&self, x: SubId) -> Vec<SubId> {
        let mut out: Vec<SubId> = self
            .sylows(x)
            .into_iter()
            .flat_map(|p| self.lat.maximal_subgroups(p).to_vec())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Normal subgroups of `G`, largest id first.
    fn normals_descending(&self) -> Vec<SubId> {
        let mut v = self.g().normals().to_vec();
        v.reverse();
        v
    }
}

/// Parameter instantiations of a statement on a group of order `n`.
pub fn instantiate(s: Statement, n: usize) -> Vec<Params> {
    let primes = prime_factors(n);
    let f_us = || {
        [FormationId::U, FormationId::S]
            .into_iter()
            .map(|f| Params {
                formation: Some(f),
                ..Params::default()
            })
            .collect::<Vec<_>>()
    };
    let with_depth = || {
        let mut out = Vec::new();
        for &p in &primes {
            for depth in 1..=3 {
                if gcd(n, depth_product(p, depth)) == 1 {
                    out.push(Params {
                        prime: Some(p),
                        depth: Some(depth),
                        ..Params::default()
                    });
                }
            }
        }
        out
    };
    match s {
        CyclicExtension | FormationBySylows | FormationByFitting | FormationByGfit => f_us(),
        PNilpotentBySupplements | PNilpotentBySupplementOrFsq | PNilpotentByNormal => {
            let v = with_depth();
            if v.is_empty() {
                vec![Params::default()]
            } else {
                v
            }
        }
        PNilpotentByFitting => {
            let v: Vec<Params> = primes
                .iter()
                .filter(|&&p| gcd(n, p - 1) == 1)
                .map(|&p| Params {
                    prime: Some(p),
                    ..Params::default()
                })
                .collect();
            if v.is_empty() {
                vec![Params::default()]
            } else {
                v
            }
        }
        _ => vec![Params::default()],
    }
}

/// `(p - 1)(p^2 - 1)...(p^n - 1)`, saturating.
pub fn depth_product(p: usize, n: usize) -> usize {
    (1..=n).fold(1usize, |acc, i| {
        acc.saturating_mul(p.saturating_pow(i as u32).saturating_sub(1))
    })
}

struct Tally {
    instances: usize,
    failure: Option<Witness>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn finish(self) -> Outcome {
        Outcome {
            hypothesis: self.instances > 0,
            conclusion: self.failure.is_none(),
            instances: self.instances,
            witnesses: self.failure.into_iter().collect(),
            flags: Vec::new(),
        }
    }
}

fn cx(what: &str, subgroups: Vec<SubId>) -> Witness {
    Witness::Counterexample {
        what: what.to_string(),
        subgroups,
    }
}

fn supplement_classes(n: usize) -> Vec<SupplementClass> {
    let mut v = vec![SupplementClass::Supersoluble];
    v.extend(
        prime_factors(n)
            .into_iter()
            .map(SupplementClass::PNilpotent),
    );
    v
}

pub fn evaluate(s: Statement, params: Params, subj: &Subject<'_>) -> Result<Outcome> {
    let lat = subj.lat;
    let g = subj.g();
    let n = g.order();
    let all: Vec<SubId> = (0..lat.len()).collect();
    let nontrivial_normals: Vec<SubId> = g.normals().iter().copied().filter(|&x| x != 0).collect();
    Ok(match s {
        SPermIntermediate => {
            let mut t = Tally::new();
            for &h in all.iter().filter(|&&h| g.is_s_permutable(h)) {
                for k in lat.above(h).iter() {
                    t.check(lat.view(k).is_s_permutable(h), || {
                        cx("not s-permutable in K", vec![h, k])
                    });
                }
            }
            t.finish()
        }
        SPermQuotient => {
            let mut t = Tally::new();
            for &h in &nontrivial_normals {
                let q = lat.quotient(h)?;
                let qv = q.lattice.full();
                for k in lat.above(h).iter() {
                    let lhs = qv.is_s_permutable(q.image(lat, k));
                    t.check(lhs == g.is_s_permutable(k), || {
                        cx("quotient disagrees", vec![h, k])
                    });
                }
            }
            t.finish()
        }
        SPermSubnormal => {
            let mut t = Tally::new();
            for &h in all.iter().filter(|&&h| g.is_s_permutable(h)) {
                t.check(g.is_subnormal(h), || {
                    cx("s-permutable but not subnormal", vec![h])
                });
            }
            t.finish()
        }
        SPermIntersection => {
            let mut t = Tally::new();
            let sp: Vec<SubId> = all
                .iter()
                .copied()
                .filter(|&h| g.is_s_permutable(h))
                .collect();
            for (i, &a) in sp.iter().enumerate() {
                for &b in &sp[i + 1..] {
                    let m = lat.intersect(a, b);
                    t.check(g.is_s_permutable(m), || {
                        cx("intersection not s-permutable", vec![a, b])
                    });
                }
            }
            t.finish()
        }
        SPermRestriction => {
            let mut t = Tally::new();
            for &h in all.iter().filter(|&&h| g.is_s_permutable(h)) {
                for &m in &all {
                    let meet = lat.intersect(h, m);
                    t.check(lat.view(m).is_s_permutable(meet), || {
                        cx("restriction not s-permutable", vec![h, m])
                    });
                }
            }
            t.finish()
        }
        FsqVariant => {
            let mut t = Tally::new();
            for &h in &all {
                for f in FormationId::ALL {
                    let v = lat.fs_quasinormal_variant(h, f)?.holds;
                    t.check(v == g.is_fs_quasinormal(h, f), || {
                        cx(&format!("variant disagrees for {f}"), vec![h])
                    });
                }
            }
            t.finish()
        }
        FsqQuotient => {
            let mut t = Tally::new();
            for &h in &nontrivial_normals {
                let q = lat.quotient(h)?;
                let qv = q.lattice.full();
                for k in lat.above(h).iter() {
                    for f in FormationId::ALL {
                        let lhs = qv.is_fs_quasinormal(q.image(lat, k), f);
                        t.check(lhs == g.is_fs_quasinormal(k, f), || {
                            cx(&format!("quotient disagrees for {f}"), vec![h, k])
                        });
                    }
                }
            }
            t.finish()
        }
        FsqCoprimeImage => {
            let mut t = Tally::new();
            for &h in &nontrivial_normals {
                let q = lat.quotient(h)?;
                let qv = q.lattice.full();
                for &e in all
                    .iter()
                    .filter(|&&e| gcd(lat.order(e), lat.order(h)) == 1)
                {
                    for f in FormationId::ALL {
                        if g.is_fs_quasinormal(e, f) {
                            t.check(qv.is_fs_quasinormal(q.image(lat, e), f), || {
                                cx(&format!("image not quasinormal for {f}"), vec![h, e])
                            });
                        }
                    }
                }
            }
            t.finish()
        }
        FsqIntermediate | FsqNormalIntermediate => {
            let mut t = Tally::new();
            for &h in &all {
                for f in FormationId::ALL {
                    if !g.is_fs_quasinormal(h, f) {
                        continue;
                    }
                    for k in lat.above(h).iter() {
                        if s == FsqNormalIntermediate && !g.is_normal(k) {
                            continue;
                        }
                        t.check(lat.view(k).is_fs_quasinormal(h, f), || {
                            cx(&format!("not quasinormal in K for {f}"), vec![h, k])
                        });
                    }
                }
            }
            t.finish()
        }
        FsqInFormation => {
            let mut t = Tally::new();
            for f in FormationId::ALL.into_iter().filter(|&f| g.in_formation(f)) {
                for &h in &all {
                    t.check(g.is_fs_quasinormal(h, f), || {
                        cx(&format!("not quasinormal for {f}"), vec![h])
                    });
                }
            }
            t.finish()
        }
        SPermPSubgroup => {
            let mut t = Tally::new();
            for &h in all.iter().filter(|&&h| h != 0 && g.is_s_permutable(h)) {
                let primes = prime_factors(lat.order(h));
                if primes.len() != 1 {
                    continue;
                }
                let p = primes[0];
                let ok = lat.le(h, g.o_p(p)) && lat.le(g.o_upper_p(p), g.normalizer(h));
                t.check(ok, || cx(&format!("p = {p}"), vec![h]));
            }
            t.finish()
        }
        SubnormalPiSubgroup => {
            let mut t = Tally::new();
            for &h in all.iter().filter(|&&h| h != 0 && g.is_subnormal(h)) {
                let pi = prime_factors(lat.order(h));
                t.check(lat.le(h, g.o_pi(&pi)), || cx("not inside O_pi", vec![h]));
            }
            t.finish()
        }
        FrattiniFreeNilpotent => {
            let mut t = Tally::new();
            let phi = g.frattini();
            let minimal = g.minimal_normals();
            for &nn in &nontrivial_normals {
                if !lat.view(nn).is_nilpotent() || lat.intersect(nn, phi) != 0 {
                    continue;
                }
                let mut cur = 0;
                let mut product = 1;
                for &m in minimal.iter().filter(|&&m| lat.le(m, nn)) {
                    if lat.intersect(cur, m) == 0 {
                        cur = lat.join(cur, m);
                        product *= lat.order(m);
                    }
                }
                t.check(cur == nn && product == lat.order(nn), || {
                    cx("not a product of minimal normal subgroups", vec![nn])
                });
            }
            t.finish()
        }
        CyclicExtension => {
            let f = params.formation.unwrap();
            let mut t = Tally::new();
            for &e in g.normals() {
                if lat.view(e).is_cyclic() && g.quotient_in_formation(e, f) {
                    t.check(g.in_formation(f), || {
                        cx(&format!("cyclic kernel, G not in {f}"), vec![e])
                    });
                }
            }
            t.finish()
        }
        SupplementQuotient => {
            let mut t = Tally::new();
            for &nn in &nontrivial_normals {
                let q = lat.quotient(nn)?;
                let qv = q.lattice.full();
                for class in supplement_classes(n) {
                    for &h in all.iter().filter(|&&h| subj.has_supplement(h, class)) {
                        t.check(qv.has_f_supplement(q.image(lat, h), class), || {
                            cx("image has no supplement", vec![h, nn])
                        });
                    }
                }
            }
            t.finish()
        }
        SupplementIntermediate => {
            let mut t = Tally::new();
            for class in supplement_classes(n) {
                for &h in all.iter().filter(|&&h| subj.has_supplement(h, class)) {
                    for k in lat.above(h).iter() {
                        t.check(lat.view(k).has_f_supplement(h, class), || {
                            cx("no supplement in K", vec![h, k])
                        });
                    }
                }
            }
            t.finish()
        }
        FormationBySylows | FormationByFitting => {
            let f = params.formation.unwrap();
            let mut out = Outcome {
                instances: 1,
                conclusion: g.in_formation(f),
                ..Outcome::default()
            };
            for e in subj.normals_descending() {
                if !g.quotient_in_formation(e, f) {
                    continue;
                }
                let base = if s == FormationByFitting {
                    if !lat.view(e).is_soluble() {
                        continue;
                    }
                    lat.view(e).fitting()
                } else {
                    e
                };
                let ok = subj
                    .noncyclic_sylow_maximals(base)
                    .into_iter()
                    .all(|m| subj.supplement_or_fsq(m, SupplementClass::Supersoluble));
                if ok {
                    out.hypothesis = true;
                    out.witnesses.push(Witness::Normal { role: "E", n: e });
                    break;
                }
            }
            out
        }
        HallConjugacy => {
            let mut t = Tally::new();
            let primes: Vec<usize> = prime_factors(n).into_iter().filter(|&p| p != 2).collect();
            for mask in 1u32..(1 << primes.len()) {
                let pi: Vec<usize> = (0..primes.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| primes[i])
                    .collect();
                let hall = g.hall(&pi);
                if let Some(h) = hall.subgroup {
                    t.check(hall.all_conjugate, || cx(&format!("pi = {pi:?}"), vec![h]));
                }
            }
            t.finish()
        }
        ArithmeticPNilpotency => {
            let mut t = Tally::new();
            for p in prime_factors(n) {
                for depth in 1..=4u32 {
                    let bound = p.checked_pow(depth + 1);
                    let divides = bound.is_some_and(|b| n.is_multiple_of(b));
                    if !divides && gcd(n, depth_product(p, depth as usize)) == 1 {
                        t.check(g.is_p_nilpotent(p), || {
                            cx(&format!("p = {p}, n = {depth}"), vec![])
                        });
                    }
                }
            }
            t.finish()
        }
        GfitNormal => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            for &nn in g.normals() {
                t.check(lat.le(lat.view(nn).generalized_fitting(), fs), || {
                    cx("F*(N) not in F*(G)", vec![nn])
                });
            }
            t.finish()
        }
        GfitQuotient => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            for &nn in nontrivial_normals.iter().filter(|&&x| lat.le(x, fs)) {
                let q = lat.quotient(nn)?;
                let ok = q
                    .lattice
                    .le(q.image(lat, fs), q.lattice.full().generalized_fitting());
                t.check(ok, || cx("F*(G)/N not in F*(G/N)", vec![nn]));
            }
            t.finish()
        }
        GfitIdempotent => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            let fit = g.fitting();
            t.check(lat.le(fit, fs), || cx("F(G) not in F*(G)", vec![fit, fs]));
            t.check(lat.view(fs).generalized_fitting() == fs, || {
                cx("F*(F*(G)) differs", vec![fs])
            });
            if lat.view(fs).is_soluble() {
                t.check(fs == fit, || {
                    cx("soluble F*(G) differs from F(G)", vec![fs, fit])
                });
            }
            t.finish()
        }
        GfitSelfCentralizing => {
            let mut t = Tally::new();
            let c = g.centralizer(g.generalized_fitting());
            t.check(lat.le(c, g.fitting()), || {
                cx("centralizer not in F(G)", vec![c])
            });
            t.finish()
        }
        GfitLayer => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            let fit = g.fitting();
            let e = g.layer();
            let z = lat.view(e).center();
            t.check(lat.join(fit, e) == fs, || {
                cx("F*(G) differs from F(G)E(G)", vec![fs, fit, e])
            });
            t.check(lat.intersect(fit, e) == z, || {
                cx("F(G) meet E(G) differs from Z(E(G))", vec![fit, e])
            });
            let simple_product: usize = g
                .components()
                .iter()
                .map(|&c| lat.order(c) / lat.order(lat.view(c).center()))
                .product();
            t.check(lat.order(e) / lat.order(z) == simple_product, || {
                cx(
                    "E(G)/Z(E(G)) is not the product of the component quotients",
                    vec![e],
                )
            });
            t.finish()
        }
        GfitFrattiniQuotient => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            for &h in g.normals().iter().filter(|&&h| lat.view(h).is_soluble()) {
                let phi = lat.view(h).frattini();
                if phi == 0 {
                    continue;
                }
                let q = lat.quotient(phi)?;
                t.check(
                    q.lattice.full().generalized_fitting() == q.image(lat, fs),
                    || cx("F*(G/Phi(H)) differs", vec![h, phi]),
                );
            }
            t.finish()
        }
        GfitCentralQuotient => {
            let mut t = Tally::new();
            let fs = g.generalized_fitting();
            let z = g.center();
            for &k in nontrivial_normals.iter().filter(|&&k| lat.le(k, z)) {
                if prime_factors(lat.order(k)).len() != 1 {
                    continue;
                }
                let q = lat.quotient(k)?;
                t.check(
                    q.lattice.full().generalized_fitting() == q.image(lat, fs),
                    || cx("F*(G/K) differs", vec![k]),
                );
            }
            t.finish()
        }
        SolubilityBySylow => {
            let Some(&p) = prime_factors(n).first() else {
                return Ok(Outcome::default());
            };
            let sylow = g.sylow(p);
            let failing = lat
                .maximal_subgroups(sylow)
                .iter()
                .copied()
                .find(|&m| !g.is_fs_quasinormal(m, FormationId::S));
            let mut out = Outcome {
                hypothesis: failing.is_none(),
                conclusion: g.is_soluble(),
                instances: 1,
                ..Outcome::default()
            };
            match failing {
                Some(m) => out.witnesses.push(Witness::NotQuasinormal {
                    h: m,
                    f: FormationId::S,
                }),
                None => {
                    for &m in lat.maximal_subgroups(sylow) {
                        let t = g.fs_quasinormal(m, FormationId::S)?.witness.unwrap();
                        out.witnesses.push(Witness::Quasinormal {
                            h: m,
                            t,
                            f: FormationId::S,
                        });
                    }
                }
            }
            out
        }
        FactorizedSupersoluble => factorized_supersoluble(subj),
        FormationByGfit => {
            let f = params.formation.unwrap();
            let mut out = Outcome {
                instances: 0,
                conclusion: g.in_formation(f),
                ..Outcome::default()
            };
            for h in subj.normals_descending() {
                if !g.quotient_in_formation(h, f) {
                    continue;
                }
                out.instances += 1;
                let fs = lat.view(h).generalized_fitting();
                let ok = subj
                    .noncyclic_sylow_maximals(fs)
                    .into_iter()
                    .all(|m| subj.supplement_or_fsq(m, SupplementClass::Supersoluble));
                if ok {
                    out.hypothesis = true;
                    out.witnesses.push(Witness::Normal { role: "H", n: h });
                    break;
                }
            }
            out
        }
        PNilpotentBySupplements | PNilpotentBySupplementOrFsq => {
            let (Some(p), Some(depth)) = (params.prime, params.depth) else {
                return Ok(Outcome::default());
            };
            let class = SupplementClass::PNilpotent(p);
            let sylow = g.sylow(p);
            let mut out = Outcome {
                hypothesis: true,
                conclusion: g.is_p_nilpotent(p),
                instances: 1,
                ..Outcome::default()
            };
            for m in lat.n_maximal(sylow, depth)? {
                let ok = if s == PNilpotentBySupplements {
                    subj.has_supplement(m, class)
                } else {
                    subj.supplement_or_fsq(m, class)
                };
                if !ok {
                    out.hypothesis = false;
                    out.witnesses.push(if s == PNilpotentBySupplements {
                        Witness::NoSupplement { h: m, class }
                    } else {
                        Witness::Neither {
                            h: m,
                            class,
                            f: FormationId::U,
                        }
                    });
                    break;
                }
            }
            out
        }
        PNilpotentByNormal => {
            let (Some(p), Some(depth)) = (params.prime, params.depth) else {
                return Ok(Outcome::default());
            };
            let class = SupplementClass::PNilpotent(p);
            let mut out = Outcome {
                conclusion: g.is_p_nilpotent(p),
                instances: 1,
                ..Outcome::default()
            };
            for e in subj.normals_descending() {
                if !g.quotient_p_nilpotent(e, p) {
                    continue;
                }
                let sylow = lat.view(e).sylow(p);
                let ok = lat
                    .n_maximal(sylow, depth)?
                    .into_iter()
                    .all(|m| subj.supplement_or_fsq(m, class));
                if ok {
                    out.hypothesis = true;
                    out.witnesses.push(Witness::Normal { role: "E", n: e });
                    if e != 0 {
                        out.flags.push("nontrivial_witness".into());
                    }
                    break;
                }
            }
            out
        }
        PNilpotentByFitting => {
            let Some(p) = params.prime else {
                return Ok(Outcome::default());
            };
            let mut out = Outcome {
                conclusion: g.is_p_nilpotent(p),
                instances: 1,
                ..Outcome::default()
            };
            for h in subj.normals_descending() {
                if !lat.view(h).is_soluble() || !g.quotient_p_nilpotent(h, p) {
                    continue;
                }
                let fit = lat.view(h).fitting();
                let ok = subj
                    .sylow_maximals(fit)
                    .into_iter()
                    .all(|m| g.is_fs_quasinormal(m, FormationId::U));
                if ok {
                    out.hypothesis = true;
                    out.witnesses.push(Witness::Normal { role: "H", n: h });
                    if h != 0 {
                        out.flags.push("nontrivial_witness".into());
                    }
                    break;
                }
            }
            out
        }
    })
}

/// Factorizations `G = AB` are scanned over all pairs for `|G| <= 120`; the
/// pair `(G, 1)` is always included.
pub const FACTORIZATION_SCAN_LIMIT: usize = 120;

fn factorized_supersoluble(subj: &Subject<'_>) -> Outcome {
    let lat = subj.lat;
    let g = subj.g();
    let n = g.order();
    let whole = lat.whole();
    let mut pairs = vec![(whole, 0)];
    if n <= FACTORIZATION_SCAN_LIMIT {
        let bs: Vec<SubId> = (0..lat.len())
            .filter(|&b| {
                let bo = lat.order(b);
                let v = lat.view(b);
                gcd(bo, n / bo) == 1
                    && v.is_supersoluble()
                    && v.primes()
                        .into_iter()
                        .all(|p| lat.view(v.sylow(p)).is_cyclic())
            })
            .collect();
        for a in (0..lat.len()).filter(|&a| g.is_subnormal(a)) {
            for &b in &bs {
                let sp = lat.set_product(a, b);
                if sp.size == n && (a, b) != (whole, 0) {
                    pairs.push((a, b));
                }
            }
        }
    }
    let mut out = Outcome {
        conclusion: g.is_supersoluble(),
        instances: pairs.len(),
        ..Outcome::default()
    };
    let mut memo: HashMap<SubId, bool> = HashMap::new();
    for (a, b) in pairs {
        let ok = *memo.entry(a).or_insert_with(|| {
            subj.noncyclic_sylow_maximals(a)
                .into_iter()
                .all(|m| g.is_fs_quasinormal(m, FormationId::U))
        });
        if ok {
            out.hypothesis = true;
            out.witnesses.push(Witness::Factorization { a, b });
            if b == 0 {
                out.flags.push("trivial_hall_factor".into());
            }
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fsq_core::builtin_group;

    fn eval(expr: &str, s: Statement, params: Params) -> Outcome {
        let lat = Lattice::from_group(&builtin_group(expr).unwrap()).unwrap();
        let subj = Subject::new(&lat);
        evaluate(s, params, &subj).unwrap()
    }

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let mut ids: Vec<&str> = STATEMENTS.iter().map(|i| i.id).collect();
        assert_eq!(ids.len(), 35);
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 35);
        for i in STATEMENTS {
            assert_eq!(info(i.statement).id, i.id);
        }
    }

    #[test]
    fn selection_accepts_families() {
        assert_eq!(parse_selection("L2.1").unwrap().len(), 5);
        assert_eq!(parse_selection("L2.12").unwrap().len(), 5);
        assert_eq!(
            parse_selection("L3.1, T4.4").unwrap(),
            vec![SolubilityBySylow, PNilpotentByFitting]
        );
        assert_eq!(parse_selection("L2.2.1").unwrap(), vec![FsqVariant]);
        assert_eq!(parse_selection("all").unwrap().len(), STATEMENTS.len());
        assert!(parse_selection("L9.9").is_err());
        // A bare prefix must stop at a separator: L2.1 is not L2.10 or L2.11.
        assert!(!parse_selection("L2.1").unwrap().contains(&HallConjugacy));
    }

    #[test]
    fn depth_parameters_follow_the_gcd_condition() {
        assert_eq!(depth_product(2, 3), 21);
        assert_eq!(depth_product(3, 2), 16);
        // |S4| = 24: p = 2 allows n = 1 only (gcd(24, 3) = 3); p = 3 never.
        let ps = instantiate(PNilpotentBySupplements, 24);
        assert_eq!(
            ps,
            vec![Params {
                prime: Some(2),
                depth: Some(1),
                formation: None
            }]
        );
        // Order 15: p = 3 passes for n <= 3; p = 5 fails at n = 2 since 24 is divisible by 3.
        let depths: Vec<(usize, usize)> = instantiate(PNilpotentByNormal, 15)
            .into_iter()
            .map(|p| (p.prime.unwrap(), p.depth.unwrap()))
            .collect();
        assert_eq!(depths, vec![(3, 1), (3, 2), (3, 3), (5, 1)]);
        assert_eq!(instantiate(PNilpotentByNormal, 1), vec![Params::default()]);
        assert_eq!(instantiate(CyclicExtension, 6).len(), 2);
    }

    #[test]
    fn solubility_by_sylow_examples() {
        let a5 = eval("alternating(5)", SolubilityBySylow, Params::default());
        assert!(!a5.hypothesis && !a5.conclusion);
        assert!(matches!(a5.witnesses[..], [Witness::NotQuasinormal { .. }]));
        let s4 = eval("symmetric(4)", SolubilityBySylow, Params::default());
        assert!(s4.hypothesis && s4.conclusion);
        let trivial = eval("trivial", SolubilityBySylow, Params::default());
        assert_eq!(trivial.instances, 0);
    }

    #[test]
    fn p_nilpotency_statements_on_s3() {
        let params = Params {
            prime: Some(2),
            depth: Some(1),
            formation: None,
        };
        for s in [
            PNilpotentBySupplements,
            PNilpotentBySupplementOrFsq,
            PNilpotentByNormal,
        ] {
            let o = eval("symmetric(3)", s, params);
            assert!(o.hypothesis && o.conclusion, "{s:?}");
        }
        let o = eval("alternating(4)", PNilpotentBySupplements, params);
        assert!(!o.hypothesis && !o.conclusion);
        assert!(matches!(o.witnesses[..], [Witness::NoSupplement { .. }]));
    }

    #[test]
    fn factorizations_include_the_trivial_hall_factor() {
        let o = eval("cyclic(6)", FactorizedSupersoluble, Params::default());
        assert!(o.hypothesis && o.conclusion);
        assert!(o.instances >= 2);
        let a4 = eval("alternating(4)", FactorizedSupersoluble, Params::default());
        assert!(!a4.hypothesis && !a4.conclusion);
    }

    #[test]
    fn suites_witness_their_first_failure() {
        let mut t = Tally::new();
        t.check(true, || cx("unused", vec![]));
        t.check(false, || cx("first", vec![1]));
        t.check(false, || cx("second", vec![2]));
        let o = t.finish();
        assert!(o.hypothesis && !o.conclusion);
        assert_eq!(o.instances, 3);
        assert_eq!(o.witnesses, vec![cx("first", vec![1])]);
        assert_eq!(Tally::new().finish().instances, 0);
    }
}
