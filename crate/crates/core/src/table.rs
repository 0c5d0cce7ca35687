//! Multiplication tables over element indices.
//!
//! Elements of a permutation group are indexed in ascending image order, so
//! index 0 is always the identity. Quotient tables index cosets by their
//! smallest representative and carry no permutations.

use std::collections::{HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result, MAX_ORDER};
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug)]
pub struct Table {
    n: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
    gens: Vec<u16>,
}

impl Table {
    pub fn from_group(g: &Group) -> Result<Table> {
        let perms = g.elements()?;
        let index: HashMap<Permutation, u16> = perms
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u16))
            .collect();
        let mut gens: Vec<u16> = g.generators().iter().map(|x| index[x]).collect();
        gens.dedup();
        let right: Vec<Vec<u16>> = gens
            .iter()
            .map(|&s| {
                let s = &perms[s as usize];
                perms.iter().map(|x| index[&x.then(s)]).collect()
            })
            .collect();
        let mut table = Table::from_right_actions(perms.len(), gens, &right);
        table.perms = perms;
        table.index = index;
        Ok(table)
    }

    /// Builds the full table from the right-multiplication maps of the
    /// generators, expanding every element as a word along a BFS tree.
    fn from_right_actions(n: usize, gens: Vec<u16>, right: &[Vec<u16>]) -> Table {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order_seen = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0usize]);
        order_seen[0] = true;
        while let Some(x) = queue.pop_front() {
            bfs.push(x);
            for (k, r) in right.iter().enumerate() {
                let y = r[x] as usize;
                if !order_seen[y] {
                    order_seen[y] = true;
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(bfs.len(), n);
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            mul[a * n] = a as u16;
        }
        for &b in &bfs[1..] {
            let (p, k) = parent[b].unwrap();
            let r = &right[k];
            for a in 0..n {
                mul[a * n + b] = r[mul[a * n + p] as usize];
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&c| c == 0).unwrap() as u16;
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            orders[a] = k;
        }
        Table {
            n,
            perms: Vec::new(),
            index: HashMap::new(),
            mul,
            inv,
            orders,
            gens,
        }
    }

    /// Table of `self / N` for a normal subgroup `N`, with the map sending
    /// each element to its coset.
    pub fn quotient(&self, normal: &BitSet) -> (Table, Vec<u16>) {
        let mut phi = vec![u16::MAX; self.n];
        let mut reps = Vec::new();
        for i in 0..self.n {
            if phi[i] != u16::MAX {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(i);
            for m in normal.iter() {
                phi[self.mul(m, i)] = c;
            }
        }
        let k = reps.len();
        let mut gens: Vec<u16> = Vec::new();
        for &g in &self.gens {
            let c = phi[g as usize];
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
            }
        }
        let right: Vec<Vec<u16>> = gens
            .iter()
            .map(|&c| {
                let g = reps[c as usize];
                reps.iter().map(|&r| phi[self.mul(r, g)]).collect()
            })
            .collect();
        (Table::from_right_actions(k, gens, &right), phi)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    /// Permutation of element `i`; absent for quotient tables.
    pub fn perm(&self, i: usize) -> Option<&Permutation> {
        self.perms.get(i)
    }

    pub fn has_perms(&self) -> bool {
        !self.perms.is_empty()
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    /// Subgroup generated by `gens`, grown from `base` which must already be
    /// a subgroup of the result.
    pub fn closure(&self, base: &BitSet, gens: &[usize]) -> BitSet {
        let mut set = base.clone();
        set.insert(0);
        let mut list: Vec<usize> = set.iter().collect();
        if gens.iter().all(|&g| set.contains(g)) {
            return set;
        }
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> BitSet {
        let mut set = BitSet::new(self.n);
        set.insert(0);
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    /// Normal closure of `elems` inside the subgroup generated by `ambient_gens`.
    pub fn normal_closure(&self, elems: &[usize], ambient_gens: &[usize]) -> BitSet {
        let mut gens: Vec<usize> = Vec::new();
        let mut set = BitSet::new(self.n);
        set.insert(0);
        let mut queue: VecDeque<usize> = elems.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            if set.contains(x) {
                continue;
            }
            gens.push(x);
            set = self.closure(&set, &gens);
            for &g in ambient_gens {
                queue.push_back(self.conj(x, g));
            }
        }
        set
    }

    /// Image of a subset under conjugation by `g`.
    pub fn conjugate_set(&self, set: &BitSet, g: usize) -> BitSet {
        let mut out = BitSet::new(self.n);
        for a in set.iter() {
            out.insert(self.conj(a, g));
        }
        out
    }

    /// The set product `A·B`, built one left coset of `B` at a time.
    pub fn product_set(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.n);
        let b_elems: Vec<usize> = b.iter().collect();
        for x in a.iter() {
            if out.contains(x) {
                continue;
            }
            for &y in &b_elems {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn is_inverse_closed(&self, set: &BitSet) -> bool {
        set.iter().all(|x| set.contains(self.inv(x)))
    }

    /// Permutation group of the right regular action; degree is the order.
    pub fn regular_group(&self) -> Result<Group> {
        if self.n > MAX_ORDER {
            return Err(Error::BoundExceeded(format!("order {}", self.n)));
        }
        let gens: Vec<Permutation> = self
            .gens
            .iter()
            .map(|&g| self.right_translation(g as usize))
            .collect();
        Group::build(self.n, gens)
    }

    pub fn right_translation(&self, g: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.n).map(|x| self.mul(x, g) as u16).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        Group::generate(
            4,
            vec![
                Permutation::parse("(1 2 3 4)", 4).unwrap(),
                Permutation::parse("(1 2)", 4).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn table_matches_composition() {
        let g = s4();
        let t = Table::from_group(&g).unwrap();
        assert_eq!(t.size(), 24);
        assert!(t.perm(0).unwrap().is_identity());
        for a in 0..24 {
            for b in 0..24 {
                let ab = t.perm(a).unwrap().then(t.perm(b).unwrap());
                assert_eq!(t.index_of(&ab), Some(t.mul(a, b)));
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
            assert_eq!(t.element_order(a) as u64, t.perm(a).unwrap().order());
        }
    }

    #[test]
    fn closure_extends_a_subgroup() {
        let g = s4();
        let t = Table::from_group(&g).unwrap();
        let x = t
            .index_of(&Permutation::parse("(1 2)(3 4)", 4).unwrap())
            .unwrap();
        let y = t
            .index_of(&Permutation::parse("(1 3)(2 4)", 4).unwrap())
            .unwrap();
        let z = t
            .index_of(&Permutation::parse("(1 2 3)", 4).unwrap())
            .unwrap();
        let v4 = t.generate(&[x, y]);
        assert_eq!(v4.len(), 4);
        assert_eq!(t.closure(&v4, &[x, y, z]).len(), 12);
        assert_eq!(
            t.normal_closure(
                &[x],
                t.generators()
                    .iter()
                    .map(|&g| g as usize)
                    .collect::<Vec<_>>()
                    .as_slice()
            ),
            v4
        );
    }

    #[test]
    fn quotient_by_klein_four() {
        let t = Table::from_group(&s4()).unwrap();
        let x = t
            .index_of(&Permutation::parse("(1 2)(3 4)", 4).unwrap())
            .unwrap();
        let y = t
            .index_of(&Permutation::parse("(1 3)(2 4)", 4).unwrap())
            .unwrap();
        let v4 = t.generate(&[x, y]);
        let (q, phi) = t.quotient(&v4);
        assert_eq!(q.size(), 6);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(
                    phi[t.mul(a, b)] as usize,
                    q.mul(phi[a] as usize, phi[b] as usize)
                );
            }
        }
        let orders: Vec<usize> = (0..6).map(|c| q.element_order(c)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
    }
}
