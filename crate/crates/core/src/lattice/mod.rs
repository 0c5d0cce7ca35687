//! Complete subgroup lattices over an element table.
//!
//! Subgroups are element bitsets, globally ordered by (order, ascending
//! element list), so id 0 is the trivial subgroup and the last id is the
//! ambient group. Conjugacy classes are listed in order of their smallest
//! member, which is also their representative.

pub mod cache;
mod view;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result, MAX_ORDER};
use crate::group::Group;
use crate::perm::Permutation;
use crate::table::Table;

pub(crate) use view::ViewData;
pub use view::{HallSearch, Subnormality, View};

pub type SubId = usize;

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub set: BitSet,
    /// Element indices generating the subgroup.
    pub gens: Vec<usize>,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct Class {
    /// Members in ascending id order; the first is the representative.
    pub members: Vec<SubId>,
    /// `conjugators[k]` conjugates the representative onto `members[k]`.
    pub conjugators: Vec<usize>,
    pub order: usize,
}

impl Class {
    pub fn representative(&self) -> SubId {
        self.members[0]
    }

    pub fn is_normal(&self) -> bool {
        self.members.len() == 1
    }
}

/// `G/N` as its own lattice together with the projection from `G`.
#[derive(Debug)]
pub struct QuotientLattice {
    pub lattice: Lattice,
    pub kernel: SubId,
    phi: Vec<u16>,
}

impl QuotientLattice {
    pub fn project_element(&self, x: usize) -> usize {
        self.phi[x] as usize
    }

    /// Image in the quotient of a subgroup of the parent.
    pub fn image(&self, parent: &Lattice, id: SubId) -> SubId {
        let mut set = BitSet::new(self.lattice.table.size());
        for x in parent.subs[id].set.iter() {
            set.insert(self.phi[x] as usize);
        }
        self.lattice
            .id_of(&set)
            .expect("image of a subgroup is a subgroup")
    }

    /// Full preimage in the parent of a subgroup of the quotient.
    pub fn preimage(&self, parent: &Lattice, qid: SubId) -> SubId {
        let q = &self.lattice.subs[qid].set;
        let set = BitSet::from_indices(
            self.phi.len(),
            (0..self.phi.len()).filter(|&x| q.contains(self.phi[x] as usize)),
        );
        parent
            .id_of(&set)
            .expect("preimage of a subgroup is a subgroup")
    }
}

#[derive(Debug)]
pub struct Lattice {
    table: Arc<Table>,
    subs: Vec<Subgroup>,
    lookup: HashMap<BitSet, SubId>,
    classes: Vec<Class>,
    class_of: Vec<usize>,
    contained: Vec<BitSet>,
    containing: Vec<BitSet>,
    maximal: Vec<Vec<SubId>>,
    views: Vec<OnceLock<ViewData>>,
    quotients: Vec<OnceLock<Arc<QuotientLattice>>>,
}

impl Lattice {
    pub fn from_group(g: &Group) -> Result<Lattice> {
        if g.order() as usize > MAX_ORDER {
            return Err(Error::BoundExceeded(format!(
                "order {} exceeds {MAX_ORDER}",
                g.order()
            )));
        }
        Lattice::new(Arc::new(Table::from_group(g)?))
    }

    pub fn new(table: Arc<Table>) -> Result<Lattice> {
        if table.size() > MAX_ORDER {
            return Err(Error::BoundExceeded(format!("order {}", table.size())));
        }
        let subs = enumerate(&table);
        Ok(Lattice::from_subgroups(table, subs))
    }

    /// Assembles a lattice from a complete, deduplicated subgroup list.
    pub(crate) fn from_subgroups(table: Arc<Table>, mut subs: Vec<Subgroup>) -> Lattice {
        subs.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.set.cmp_lex(&b.set)));
        let lookup: HashMap<BitSet, SubId> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.set.clone(), i))
            .collect();
        let m = subs.len();

        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        for i in 0..m {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[i] = c;
            let mut found = vec![(i, 0usize)];
            let mut k = 0;
            while k < found.len() {
                let (s, x) = found[k];
                for &g in table.generators() {
                    let g = g as usize;
                    let image = table.conjugate_set(&subs[s].set, g);
                    let t = lookup[&image];
                    if class_of[t] == usize::MAX {
                        class_of[t] = c;
                        found.push((t, table.mul(x, g)));
                    }
                }
                k += 1;
            }
            found.sort_unstable();
            classes.push(Class {
                members: found.iter().map(|&(s, _)| s).collect(),
                conjugators: found.iter().map(|&(_, x)| x).collect(),
                order: subs[i].order,
            });
        }

        let mut contained = vec![BitSet::new(m); m];
        let mut containing = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in 0..=i {
                if subs[i].order.is_multiple_of(subs[j].order)
                    && subs[j].set.is_subset(&subs[i].set)
                {
                    contained[i].insert(j);
                    containing[j].insert(i);
                }
            }
        }
        let maximal = (0..m)
            .map(|i| {
                contained[i]
                    .iter()
                    .filter(|&j| j != i && containing[j].intersection_len(&contained[i]) == 2)
                    .collect()
            })
            .collect();

        Lattice {
            table,
            subs,
            lookup,
            classes,
            class_of,
            contained,
            containing,
            maximal,
            views: (0..m).map(|_| OnceLock::new()).collect(),
            quotients: (0..m).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn table(&self) -> &Arc<Table> {
        &self.table
    }

    /// Number of subgroups.
    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    pub fn sub(&self, id: SubId) -> &Subgroup {
        &self.subs[id]
    }

    pub fn order(&self, id: SubId) -> usize {
        self.subs[id].order
    }

    pub fn set(&self, id: SubId) -> &BitSet {
        &self.subs[id].set
    }

    pub fn trivial(&self) -> SubId {
        0
    }

    pub fn whole(&self) -> SubId {
        self.subs.len() - 1
    }

    pub fn id_of(&self, set: &BitSet) -> Option<SubId> {
        self.lookup.get(set).copied()
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class_of(&self, id: SubId) -> usize {
        self.class_of[id]
    }

    /// Normal in the ambient group.
    pub fn is_normal(&self, id: SubId) -> bool {
        self.classes[self.class_of[id]].is_normal()
    }

    /// Whether `inner` is a subgroup of `outer`.
    pub fn le(&self, inner: SubId, outer: SubId) -> bool {
        self.contained[outer].contains(inner)
    }

    /// Ids of all subgroups of `id`, ascending.
    pub fn below(&self, id: SubId) -> &BitSet {
        &self.contained[id]
    }

    /// Ids of all subgroups containing `id`, ascending.
    pub fn above(&self, id: SubId) -> &BitSet {
        &self.containing[id]
    }

    pub fn maximal_subgroups(&self, id: SubId) -> &[SubId] {
        &self.maximal[id]
    }

    /// Endpoints of chains of `n` successive maximal-subgroup steps from `id`.
    pub fn n_maximal(&self, id: SubId, n: usize) -> Result<Vec<SubId>> {
        if n < 1 {
            return Err(Error::InvalidArgument("n-maximal requires n >= 1".into()));
        }
        let mut layer = BitSet::new(self.len());
        layer.insert(id);
        for _ in 0..n {
            let mut next = BitSet::new(self.len());
            for y in layer.iter() {
                for &z in &self.maximal[y] {
                    next.insert(z);
                }
            }
            layer = next;
        }
        Ok(layer.iter().collect())
    }

    pub fn intersect(&self, a: SubId, b: SubId) -> SubId {
        self.lookup[&self.subs[a].set.intersection(&self.subs[b].set)]
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        if self.le(b, a) {
            return a;
        }
        if self.le(a, b) {
            return b;
        }
        let mut gens = self.subs[a].gens.clone();
        gens.extend(&self.subs[b].gens);
        self.lookup[&self.table.closure(&self.subs[a].set, &gens)]
    }

    pub fn join_all(&self, ids: impl IntoIterator<Item = SubId>) -> SubId {
        ids.into_iter().fold(0, |acc, x| self.join(acc, x))
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_by(&self, elems: &[usize]) -> SubId {
        self.lookup[&self.table.generate(elems)]
    }

    /// Subgroup with exactly this element set, if the set is a subgroup.
    pub fn subgroup_of_set(&self, set: &BitSet) -> Option<SubId> {
        self.id_of(set)
    }

    /// Conjugate of a subgroup by an element.
    pub fn conjugate(&self, id: SubId, g: usize) -> SubId {
        self.lookup[&self.table.conjugate_set(&self.subs[id].set, g)]
    }

    /// Permutation group of a subgroup; requires a permutation table.
    pub fn group(&self, id: SubId) -> Option<Group> {
        let first = self.table.perm(0)?;
        let gens: Vec<Permutation> = self.subs[id]
            .gens
            .iter()
            .map(|&g| self.table.perm(g).unwrap().clone())
            .collect();
        Group::generate(first.degree(), gens).ok()
    }

    /// Lattice id of a permutation group inside the ambient group.
    pub fn find(&self, h: &Group) -> Result<SubId> {
        let mut elems = Vec::new();
        for x in h.generators() {
            let i = self
                .table
                .index_of(x)
                .ok_or_else(|| Error::NotSubgroup(format!("{x} is not in the ambient group")))?;
            elems.push(i);
        }
        Ok(self.generated_by(&elems))
    }

    /// Elements of a subgroup as permutations; requires a permutation table.
    pub fn elements(&self, id: SubId) -> Vec<Permutation> {
        self.subs[id]
            .set
            .iter()
            .filter_map(|x| self.table.perm(x).cloned())
            .collect()
    }

    /// Size of `AB`, whether it is a subgroup, and whether `AB = BA`.
    pub fn set_product(&self, a: SubId, b: SubId) -> crate::group::SetProduct {
        let prod = self.table.product_set(&self.subs[a].set, &self.subs[b].set);
        let size = prod.len();
        crate::group::SetProduct {
            size,
            is_subgroup: self.order(self.join(a, b)) == size,
            commutes: self.table.is_inverse_closed(&prod),
        }
    }

    /// Subgroup `AB` when the set product is a subgroup.
    pub fn product_subgroup(&self, a: SubId, b: SubId) -> Option<SubId> {
        if self.le(a, b) {
            return Some(b);
        }
        if self.le(b, a) || self.is_normal_pair(b, a) {
            return Some(self.join(a, b));
        }
        let prod = self.table.product_set(&self.subs[a].set, &self.subs[b].set);
        if self.table.is_inverse_closed(&prod) {
            Some(self.lookup[&prod])
        } else {
            None
        }
    }

    /// Whether `n` is normalized by the generators of `by`.
    fn is_normal_pair(&self, n: SubId, by: SubId) -> bool {
        let t = &self.table;
        let set = &self.subs[n].set;
        self.subs[by].gens.iter().all(|&g| {
            self.subs[n]
                .gens
                .iter()
                .all(|&x| set.contains(t.conj(x, g)))
        })
    }

    pub fn view(&self, id: SubId) -> View<'_> {
        View::new(self, id)
    }

    pub fn full(&self) -> View<'_> {
        self.view(self.whole())
    }

    /// Lattice of `G/N` for a normal subgroup `N`, built once and shared.
    pub fn quotient(&self, n: SubId) -> Result<Arc<QuotientLattice>> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal(format!(
                "subgroup {n} is not normal in the ambient group"
            )));
        }
        Ok(self.quotients[n]
            .get_or_init(|| {
                let (qt, phi) = self.table.quotient(&self.subs[n].set);
                let lattice = Lattice::new(Arc::new(qt)).expect("quotients are within bounds");
                Arc::new(QuotientLattice {
                    lattice,
                    kernel: n,
                    phi,
                })
            })
            .clone())
    }
}

fn cyclic_set(table: &Table, x: usize) -> BitSet {
    let mut set = BitSet::new(table.size());
    let mut y = 0;
    loop {
        set.insert(y);
        y = table.mul(y, x);
        if y == 0 {
            return set;
        }
    }
}

/// Join closure seeded by the cyclic subgroups.
fn enumerate(table: &Table) -> Vec<Subgroup> {
    let n = table.size();
    let mut trivial = BitSet::new(n);
    trivial.insert(0);
    let mut subs = vec![Subgroup {
        set: trivial.clone(),
        gens: Vec::new(),
        order: 1,
    }];
    let mut seen: HashMap<BitSet, SubId> = HashMap::from([(trivial, 0)]);
    let mut cyclic: Vec<SubId> = Vec::new();
    for x in 1..n {
        let set = cyclic_set(table, x);
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), subs.len());
            cyclic.push(subs.len());
            subs.push(Subgroup {
                order: set.len(),
                set,
                gens: vec![x],
            });
        }
    }
    let mut i = 1;
    while i < subs.len() {
        for &c in &cyclic {
            if subs[c].set.is_subset(&subs[i].set) {
                continue;
            }
            let mut gens = subs[i].gens.clone();
            gens.push(subs[c].gens[0]);
            let set = table.closure(&subs[i].set, &gens);
            if !seen.contains_key(&set) {
                seen.insert(set.clone(), subs.len());
                subs.push(Subgroup {
                    order: set.len(),
                    set,
                    gens,
                });
            }
        }
        i += 1;
    }
    subs
}
