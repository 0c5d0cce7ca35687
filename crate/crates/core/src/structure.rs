//! Series, structural predicates, components and the generalized Fitting
//! subgroup, all relative to a lattice view.

use std::collections::HashMap;
use std::str::FromStr;

use crate::arith::{is_power_of, is_prime, p_part, prime_factors};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{SubId, View};
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
    Chief,
}

/// Derived and lower central series descend from the ambient; upper central
/// and chief series ascend from the trivial subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub kind: SeriesKind,
    pub chain: Vec<SubId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub upper: SubId,
    pub lower: SubId,
    pub centralizer: SubId,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Abelian,
    Cyclic,
    Nilpotent,
    Soluble,
    Supersoluble,
    PGroup(usize),
    PNilpotent(usize),
    Perfect,
    Simple,
    Quasisimple,
    Quasinilpotent,
}

impl FromStr for Property {
    type Err = Error;

    /// Accepts names such as `soluble`, `p_group(3)` or `p_nilpotent(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let prime_arg = |name: &str| -> Option<Result<usize>> {
            let rest = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(
                rest.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in {s:?}"))),
            )
        };
        if let Some(p) = prime_arg("p_group") {
            return Ok(Property::PGroup(p?));
        }
        if let Some(p) = prime_arg("p_nilpotent") {
            return Ok(Property::PNilpotent(p?));
        }
        Ok(match s {
            "abelian" => Property::Abelian,
            "cyclic" => Property::Cyclic,
            "nilpotent" => Property::Nilpotent,
            "soluble" => Property::Soluble,
            "supersoluble" => Property::Supersoluble,
            "perfect" => Property::Perfect,
            "simple" => Property::Simple,
            "quasisimple" => Property::Quasisimple,
            "quasinilpotent" => Property::Quasinilpotent,
            _ => return Err(Error::Parse(format!("unknown property {s:?}"))),
        })
    }
}

fn check_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not a prime")))
    }
}

impl<'a> View<'a> {
    fn closure_of(&self, elems: &[usize]) -> SubId {
        let set = self.table().normal_closure(elems, self.gens());
        self.lattice().id_of(&set).unwrap()
    }

    /// Commutator subgroup of the ambient.
    pub fn derived(&self) -> SubId {
        *self.data.derived.get_or_init(|| {
            let t = self.table();
            let g = self.gens();
            let mut comms = Vec::new();
            for (i, &a) in g.iter().enumerate() {
                for &b in &g[i + 1..] {
                    comms.push(t.commutator(a, b));
                }
            }
            self.closure_of(&comms)
        })
    }

    /// `[n, ambient]` for a normal subgroup `n`.
    pub fn commutator_with(&self, n: SubId) -> SubId {
        let t = self.table();
        let mut comms = Vec::new();
        for &a in &self.lattice().sub(n).gens {
            for &g in self.gens() {
                comms.push(t.commutator(a, g));
            }
        }
        self.closure_of(&comms)
    }

    pub fn derived_series(&self) -> Vec<SubId> {
        let mut chain = vec![self.id()];
        loop {
            let next = self.view(*chain.last().unwrap()).derived();
            if next == *chain.last().unwrap() {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<SubId> {
        let mut chain = vec![self.id()];
        loop {
            let next = self.commutator_with(*chain.last().unwrap());
            if next == *chain.last().unwrap() {
                return chain;
            }
            chain.push(next);
        }
    }

    /// Ascending centers until stable.
    pub fn upper_central_series(&self) -> Vec<SubId> {
        let t = self.table();
        let mut chain = vec![0];
        loop {
            let cur = self.lattice().set(*chain.last().unwrap());
            let set = BitSet::from_indices(
                t.size(),
                self.set().iter().filter(|&x| {
                    self.gens()
                        .iter()
                        .all(|&g| cur.contains(t.commutator(x, g)))
                }),
            );
            let next = self.lattice().id_of(&set).unwrap();
            if next == *chain.last().unwrap() {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn series(&self, kind: SeriesKind) -> Series {
        let chain = match kind {
            SeriesKind::Derived => self.derived_series(),
            SeriesKind::LowerCentral => self.lower_central_series(),
            SeriesKind::UpperCentral => self.upper_central_series(),
            SeriesKind::Chief => self.chief_series(),
        };
        Series { kind, chain }
    }

    pub fn chief_factor(&self, upper: SubId, lower: SubId) -> Result<ChiefFactor> {
        if !self.covers(upper, lower) {
            return Err(Error::InvalidArgument(format!(
                "{upper}/{lower} is not a chief factor"
            )));
        }
        Ok(ChiefFactor {
            upper,
            lower,
            centralizer: self.factor_centralizer(upper, lower),
            order: self.lattice().order(upper) / self.lattice().order(lower),
        })
    }

    /// Every chief factor pair of the ambient with its centralizer.
    pub fn all_chief_factors(&self) -> Vec<ChiefFactor> {
        self.chief_factors()
            .iter()
            .map(|&(u, l)| self.chief_factor(u, l).unwrap())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let t = self.table();
        let g = self.gens();
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| t.mul(a, b) == t.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.set()
            .iter()
            .any(|x| self.table().element_order(x) == n)
    }

    /// Every Sylow subgroup is normal.
    pub fn is_nilpotent(&self) -> bool {
        self.primes().iter().all(|&p| self.sylow_all(p).len() == 1)
    }

    pub fn is_soluble(&self) -> bool {
        *self
            .data
            .soluble
            .get_or_init(|| *self.derived_series().last().unwrap() == 0)
    }

    /// Every factor of the chief series has prime order.
    pub fn is_supersoluble(&self) -> bool {
        *self.data.supersoluble.get_or_init(|| {
            let series = self.chief_series();
            series
                .windows(2)
                .all(|w| is_prime(self.lattice().order(w[1]) / self.lattice().order(w[0])))
        })
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        is_power_of(self.order(), p)
    }

    /// The largest normal `p'`-subgroup is a complement to a Sylow `p`-subgroup.
    pub fn is_p_nilpotent(&self, p: usize) -> bool {
        let n = self.order();
        self.lattice().order(self.o_pi_prime(&[p])) == n / p_part(n, p)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived() == self.id()
    }

    pub fn is_simple(&self) -> bool {
        self.order() > 1 && self.normals().len() == 2
    }

    /// Perfect with simple central quotient.
    pub fn is_quasisimple(&self) -> bool {
        let z = self.center();
        self.is_perfect() && z != self.id() && self.normals_above(z).len() == 2
    }

    pub fn is_quasinilpotent(&self) -> bool {
        self.generalized_fitting() == self.id()
    }

    pub fn predicate(&self, prop: Property) -> Result<bool> {
        Ok(match prop {
            Property::Abelian => self.is_abelian(),
            Property::Cyclic => self.is_cyclic(),
            Property::Nilpotent => self.is_nilpotent(),
            Property::Soluble => self.is_soluble(),
            Property::Supersoluble => self.is_supersoluble(),
            Property::PGroup(p) => {
                check_prime(p)?;
                self.is_p_group(p)
            }
            Property::PNilpotent(p) => {
                check_prime(p)?;
                self.is_p_nilpotent(p)
            }
            Property::Perfect => self.is_perfect(),
            Property::Simple => self.is_simple(),
            Property::Quasisimple => self.is_quasisimple(),
            Property::Quasinilpotent => self.is_quasinilpotent(),
        })
    }

    /// Subnormal quasisimple subgroups, ascending.
    pub fn components(&self) -> &'a [SubId] {
        self.data.components.get_or_init(|| {
            let lat = self.lattice();
            self.members()
                .iter()
                .copied()
                .filter(|&h| {
                    // Perfect nontrivial groups have at least three prime divisors.
                    let n = lat.order(h);
                    n >= 60
                        && prime_factors(n).len() >= 3
                        && self.view(h).is_quasisimple()
                        && self.is_subnormal(h)
                })
                .collect()
        })
    }

    /// Subgroup generated by the components.
    pub fn layer(&self) -> SubId {
        *self
            .data
            .layer
            .get_or_init(|| self.lattice().join_all(self.components().iter().copied()))
    }

    /// `F(X)E(X)`.
    pub fn generalized_fitting(&self) -> SubId {
        self.lattice().join(self.fitting(), self.layer())
    }

    /// Whether every chief factor `A/B` satisfies `X = A·C_X(A/B)`, i.e. the
    /// ambient induces only inner automorphisms on its chief factors.
    pub fn induces_inner_on_chief_factors(&self) -> bool {
        let lat = self.lattice();
        self.chief_factors()
            .iter()
            .all(|&(u, l)| lat.join(u, self.factor_centralizer(u, l)) == self.id())
    }

    /// Product of the normal subgroups that induce only inner automorphisms
    /// on their own chief factors; an independent route to `F*`.
    pub fn generalized_fitting_by_normals(&self) -> SubId {
        let lat = self.lattice();
        lat.join_all(
            self.normals()
                .iter()
                .copied()
                .filter(|&n| self.view(n).induces_inner_on_chief_factors()),
        )
    }

    /// Whether some chain of normal subgroups from 1 to the ambient has cyclic
    /// factors (exhaustive search).
    pub fn has_cyclic_normal_series(&self) -> bool {
        let lat = self.lattice();
        let t = self.table();
        let mut memo: HashMap<SubId, bool> = HashMap::new();
        fn reach(
            v: &View<'_>,
            lat: &crate::lattice::Lattice,
            t: &Table,
            cur: SubId,
            memo: &mut HashMap<SubId, bool>,
        ) -> bool {
            if cur == v.id() {
                return true;
            }
            if let Some(&r) = memo.get(&cur) {
                return r;
            }
            let mut ok = false;
            for m in v.normals_above(cur) {
                if m == cur {
                    continue;
                }
                let base = lat.set(cur);
                let cyclic = lat.set(m).difference(base).iter().any(|x| {
                    let mut gens = lat.sub(cur).gens.clone();
                    gens.push(x);
                    t.closure(base, &gens).len() == lat.order(m)
                });
                if cyclic && reach(v, lat, t, m, memo) {
                    ok = true;
                    break;
                }
            }
            memo.insert(cur, ok);
            ok
        }
        reach(self, lat, t, 0, &mut memo)
    }

    /// Whether a normal subgroup of order `|X|_{p'}` exists (exhaustive scan).
    pub fn has_normal_p_complement(&self, p: usize) -> bool {
        let n = self.order();
        let target = n / p_part(n, p);
        self.normals()
            .iter()
            .any(|&k| self.lattice().order(k) == target)
    }
}

/// Normal closure of `cur` and `x` inside the group of `t`.
fn closure_with(t: &Table, gens: &[usize], cur_gens: &[usize], x: usize) -> BitSet {
    let mut seeds = cur_gens.to_vec();
    seeds.push(x);
    t.normal_closure(&seeds, gens)
}

/// Chief series of a whole table built greedily from normal closures: at
/// each step the smallest normal closure over the current term is a minimal
/// normal subgroup of the quotient. Needs no subgroup lattice.
pub fn table_chief_series(t: &Table) -> Vec<BitSet> {
    let gens: Vec<usize> = t.generators().iter().map(|&g| g as usize).collect();
    let n = t.size();
    let mut cur = BitSet::from_indices(n, [0]);
    let mut cur_gens: Vec<usize> = Vec::new();
    let mut series = vec![cur.clone()];
    while cur.len() < n {
        let mut best: Option<(BitSet, usize)> = None;
        for x in 0..n {
            if cur.contains(x) {
                continue;
            }
            let m = closure_with(t, &gens, &cur_gens, x);
            if best.as_ref().is_none_or(|(b, _)| m.len() < b.len()) {
                best = Some((m, x));
            }
        }
        let (m, x) = best.unwrap();
        cur_gens.push(x);
        cur = m;
        series.push(cur.clone());
    }
    series
}

/// Supersolubility without a lattice: the greedy chief series has prime factors.
pub fn table_is_supersoluble(t: &Table) -> bool {
    table_chief_series(t)
        .windows(2)
        .all(|w| is_prime(w[1].len() / w[0].len()))
}

#[cfg(test)]
mod tests;
