//! Lattice operations relative to an ambient subgroup.
//!
//! A [`View`] treats one member of a lattice as the ambient group. Every
//! subgroup of that member is already in the lattice, so sub-ambients need no
//! lattice of their own. Results are cached per ambient.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{is_pi_number, is_power_of, p_part, prime_factors};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::formations::FormationId;
use crate::lattice::{Lattice, SubId};
use crate::table::Table;

#[derive(Debug, Default)]
pub(crate) struct ViewData {
    pub(crate) members: Vec<SubId>,
    pub(crate) normals: Vec<SubId>,
    pub(crate) normal_set: BitSet,
    pub(crate) center: OnceLock<SubId>,
    pub(crate) derived: OnceLock<SubId>,
    pub(crate) frattini: OnceLock<SubId>,
    pub(crate) fitting: OnceLock<SubId>,
    pub(crate) layer: OnceLock<SubId>,
    pub(crate) components: OnceLock<Vec<SubId>>,
    pub(crate) chief_factors: OnceLock<Vec<(SubId, SubId)>>,
    pub(crate) soluble: OnceLock<bool>,
    pub(crate) supersoluble: OnceLock<bool>,
    pub(crate) sperm: Mutex<HashMap<SubId, Option<SubId>>>,
    pub(crate) hypercenter: Mutex<HashMap<(SubId, FormationId), SubId>>,
    pub(crate) fsq: Mutex<HashMap<(SubId, FormationId), Option<SubId>>>,
}

/// Result of the normal-closure descent towards a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subnormality {
    pub subnormal: bool,
    /// Number of normal-closure steps taken.
    pub defect: usize,
}

/// Hall subgroups found by exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallSearch {
    pub subgroup: Option<SubId>,
    pub all: Vec<SubId>,
    pub all_conjugate: bool,
}

#[derive(Clone, Copy)]
pub struct View<'a> {
    lat: &'a Lattice,
    id: SubId,
    pub(crate) data: &'a ViewData,
}

impl std::fmt::Debug for View<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "View({})", self.id)
    }
}

impl<'a> View<'a> {
    pub(crate) fn new(lat: &'a Lattice, id: SubId) -> View<'a> {
        let data = lat.views[id].get_or_init(|| {
            let members: Vec<SubId> = lat.below(id).iter().collect();
            let gens = &lat.sub(id).gens;
            let t = lat.table();
            let normals: Vec<SubId> = members
                .iter()
                .copied()
                .filter(|&n| {
                    let s = lat.sub(n);
                    gens.iter()
                        .all(|&g| s.gens.iter().all(|&x| s.set.contains(t.conj(x, g))))
                })
                .collect();
            let normal_set = BitSet::from_indices(lat.len(), normals.iter().copied());
            ViewData {
                members,
                normals,
                normal_set,
                ..Default::default()
            }
        });
        View { lat, id, data }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lat
    }

    pub fn table(&self) -> &'a Table {
        self.lat.table()
    }

    /// Lattice id of the ambient subgroup.
    pub fn id(&self) -> SubId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.lat.order(self.id)
    }

    pub fn gens(&self) -> &'a [usize] {
        &self.lat.sub(self.id).gens
    }

    pub fn set(&self) -> &'a BitSet {
        self.lat.set(self.id)
    }

    /// Every subgroup of the ambient, ascending.
    pub fn members(&self) -> &'a [SubId] {
        &self.data.members
    }

    pub fn contains(&self, h: SubId) -> bool {
        self.lat.le(h, self.id)
    }

    pub(crate) fn require(&self, h: SubId) -> Result<()> {
        if self.contains(h) {
            Ok(())
        } else {
            Err(Error::NotSubgroup(format!(
                "subgroup {h} is not contained in ambient {}",
                self.id
            )))
        }
    }

    pub fn view(&self, h: SubId) -> View<'a> {
        View::new(self.lat, h)
    }

    /// Normal subgroups of the ambient, ascending.
    pub fn normals(&self) -> &'a [SubId] {
        &self.data.normals
    }

    pub fn is_normal(&self, h: SubId) -> bool {
        self.data.normal_set.contains(h)
    }

    pub fn minimal_normals(&self) -> Vec<SubId> {
        self.normals()
            .iter()
            .copied()
            .filter(|&n| n != 0 && self.covers(n, 0))
            .collect()
    }

    /// Normal subgroups of the ambient lying between `lower` and `upper`.
    pub fn normals_between(&self, lower: SubId, upper: SubId) -> Vec<SubId> {
        let mut between = self.lat.above(lower).intersection(self.lat.below(upper));
        between.intersect_with(&self.data.normal_set);
        between.iter().collect()
    }

    /// Normal subgroups of the ambient containing `lower`.
    pub fn normals_above(&self, lower: SubId) -> Vec<SubId> {
        self.normals_between(lower, self.id)
    }

    /// Whether `upper/lower` is a chief factor of the ambient.
    pub fn covers(&self, upper: SubId, lower: SubId) -> bool {
        upper != lower
            && self.is_normal(upper)
            && self.is_normal(lower)
            && self.lat.le(lower, upper)
            && self.normals_between(lower, upper).len() == 2
    }

    /// Every pair `(upper, lower)` of normal subgroups with `upper/lower`
    /// a chief factor, ordered by `(lower, upper)`.
    pub fn chief_factors(&self) -> &'a [(SubId, SubId)] {
        self.data.chief_factors.get_or_init(|| {
            let mut out = Vec::new();
            for &lower in self.normals() {
                for upper in self.normals_above(lower) {
                    if upper != lower && self.normals_between(lower, upper).len() == 2 {
                        out.push((upper, lower));
                    }
                }
            }
            out
        })
    }

    /// Chief series from the trivial subgroup up, taking the smallest cover
    /// at each step.
    pub fn chief_series(&self) -> Vec<SubId> {
        let mut series = vec![0];
        let mut cur = 0;
        while cur != self.id {
            cur = self
                .chief_factors()
                .iter()
                .filter(|&&(_, lower)| lower == cur)
                .map(|&(upper, _)| upper)
                .min()
                .unwrap();
            series.push(cur);
        }
        series
    }

    pub fn primes(&self) -> Vec<usize> {
        prime_factors(self.order())
    }

    /// All Sylow `p`-subgroups; the trivial subgroup when `p` does not divide
    /// the order.
    pub fn sylow_all(&self, p: usize) -> Vec<SubId> {
        let target = p_part(self.order(), p);
        self.members()
            .iter()
            .copied()
            .filter(|&h| self.lat.order(h) == target)
            .collect()
    }

    pub fn sylow(&self, p: usize) -> SubId {
        self.sylow_all(p)[0]
    }

    /// Hall `pi`-subgroups by exhaustive scan, with whether they form one
    /// conjugacy class of the ambient.
    pub fn hall(&self, pi: &[usize]) -> HallSearch {
        let target: usize = pi.iter().map(|&p| p_part(self.order(), p)).product();
        let all: Vec<SubId> = self
            .members()
            .iter()
            .copied()
            .filter(|&h| self.lat.order(h) == target)
            .collect();
        let all_conjugate = match all.first() {
            None => true,
            Some(&first) => {
                let orbit = self.conjugates(first);
                all.iter().all(|h| orbit.contains(h))
            }
        };
        HallSearch {
            subgroup: all.first().copied(),
            all,
            all_conjugate,
        }
    }

    /// Conjugates of `h` under the ambient, ascending.
    pub fn conjugates(&self, h: SubId) -> Vec<SubId> {
        let mut seen = BitSet::new(self.lat.len());
        seen.insert(h);
        let mut list = vec![h];
        let mut k = 0;
        while k < list.len() {
            for &g in self.gens() {
                let c = self.lat.conjugate(list[k], g);
                if seen.insert(c) {
                    list.push(c);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    /// Elements of the ambient satisfying `pred`, as a subgroup.
    fn element_subgroup(&self, pred: impl Fn(usize) -> bool) -> SubId {
        let set = BitSet::from_indices(self.table().size(), self.set().iter().filter(|&x| pred(x)));
        self.lat
            .id_of(&set)
            .expect("element filter defines a subgroup")
    }

    pub fn center(&self) -> SubId {
        *self.data.center.get_or_init(|| self.centralizer(self.id))
    }

    pub fn centralizer(&self, h: SubId) -> SubId {
        let t = self.table();
        let hg = &self.lat.sub(h).gens;
        self.element_subgroup(|x| hg.iter().all(|&y| t.mul(x, y) == t.mul(y, x)))
    }

    pub fn normalizer(&self, h: SubId) -> SubId {
        let t = self.table();
        let s = self.lat.sub(h);
        self.element_subgroup(|x| s.gens.iter().all(|&y| s.set.contains(t.conj(y, x))))
    }

    /// Centralizer of the factor `upper/lower`: elements acting trivially on it.
    pub fn factor_centralizer(&self, upper: SubId, lower: SubId) -> SubId {
        let t = self.table();
        let ug = &self.lat.sub(upper).gens;
        let low = self.lat.set(lower);
        self.element_subgroup(|x| ug.iter().all(|&a| low.contains(t.commutator(a, x))))
    }

    /// Largest normal subgroup of the ambient inside `h`, computed as the
    /// intersection of the conjugates of `h`.
    pub fn core(&self, h: SubId) -> Result<SubId> {
        self.require(h)?;
        let mut set = self.lat.set(h).clone();
        for c in self.conjugates(h) {
            set.intersect_with(self.lat.set(c));
        }
        Ok(self.lat.id_of(&set).unwrap())
    }

    pub fn normal_closure(&self, h: SubId) -> SubId {
        let t = self.table();
        let set = t.normal_closure(&self.lat.sub(h).gens, self.gens());
        self.lat.id_of(&set).unwrap()
    }

    /// Descends `G ⊵ ncl_G(H) ⊵ ncl_{ncl_G(H)}(H) ⊵ …` until it stabilizes.
    pub fn subnormality(&self, h: SubId) -> Result<Subnormality> {
        self.require(h)?;
        let mut cur = self.id;
        let mut defect = 0;
        loop {
            if cur == h {
                return Ok(Subnormality {
                    subnormal: true,
                    defect,
                });
            }
            let next = self.view(cur).normal_closure(h);
            if next == cur {
                return Ok(Subnormality {
                    subnormal: false,
                    defect,
                });
            }
            cur = next;
            defect += 1;
        }
    }

    pub fn is_subnormal(&self, h: SubId) -> bool {
        self.subnormality(h).map(|s| s.subnormal).unwrap_or(false)
    }

    fn largest_normal_with(&self, pred: impl Fn(usize) -> bool) -> SubId {
        *self
            .normals()
            .iter()
            .rev()
            .find(|&&n| pred(self.lat.order(n)))
            .unwrap()
    }

    /// Largest normal `p`-subgroup.
    pub fn o_p(&self, p: usize) -> SubId {
        self.largest_normal_with(|n| is_power_of(n, p))
    }

    /// Largest normal `pi`-subgroup.
    pub fn o_pi(&self, pi: &[usize]) -> SubId {
        self.largest_normal_with(|n| is_pi_number(n, pi))
    }

    /// Largest normal subgroup of order coprime to every prime in `pi`.
    pub fn o_pi_prime(&self, pi: &[usize]) -> SubId {
        self.largest_normal_with(|n| pi.iter().all(|&p| n % p != 0))
    }

    /// Subgroup generated by the elements of order prime to `p`.
    pub fn o_upper_p(&self, p: usize) -> SubId {
        let t = self.table();
        let elems: Vec<usize> = self
            .set()
            .iter()
            .filter(|&x| !t.element_order(x).is_multiple_of(p))
            .collect();
        self.lat.generated_by(&elems)
    }

    pub fn maximal_subgroups(&self) -> &'a [SubId] {
        self.lat.maximal_subgroups(self.id)
    }

    pub fn n_maximal(&self, n: usize) -> Result<Vec<SubId>> {
        self.lat.n_maximal(self.id, n)
    }

    /// Intersection of the maximal subgroups; the ambient itself when trivial.
    pub fn frattini(&self) -> SubId {
        *self.data.frattini.get_or_init(|| {
            let mut set = self.set().clone();
            for &m in self.maximal_subgroups() {
                set.intersect_with(self.lat.set(m));
            }
            self.lat.id_of(&set).unwrap()
        })
    }

    /// Product of the `O_p` over the primes of the order.
    pub fn fitting(&self) -> SubId {
        *self.data.fitting.get_or_init(|| {
            self.lat
                .join_all(self.primes().into_iter().map(|p| self.o_p(p)))
        })
    }

    /// Product of the minimal normal subgroups.
    pub fn socle(&self) -> SubId {
        self.lat.join_all(self.minimal_normals())
    }
}
