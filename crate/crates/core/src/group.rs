//! Permutation groups backed by a deterministic stabilizer chain, together
//! with the constructions built on them: quotients, direct and semidirect
//! products, centralizers and normalizers, set products.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result, MAX_DEGREE, MAX_ORDER};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverse = vec![None; degree];
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.inverse[self.base] = Some(id);
        self.orbit.push(self.base);
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.inverse[y] = Some(u.inverse());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set, built with base points chosen as the
/// smallest point moved by the element that forces a new level.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            level.rebuild_orbit(degree);
            levels.push(level);
        }
        let mut chain = StabChain { degree, levels };
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'main: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for x in &gens {
                    let level = &self.levels[lvl];
                    let u = level.transversal[beta].as_ref().unwrap();
                    let target = x.image(beta);
                    let h = u.then(x).then(level.inverse[target].as_ref().unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() {
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild_orbit(self.degree);
                        }
                        i = j as isize;
                        continue 'main;
                    } else if !y.is_identity() {
                        let b = y.first_moved().unwrap();
                        self.levels.push(Level::new(b, self.degree));
                        let last = self.levels.len() - 1;
                        for l in lvl + 1..=last {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild_orbit(self.degree);
                        }
                        i = last as isize;
                        continue 'main;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` from level `from`; returns the residue and the level at which
    /// sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base);
            match &level.inverse[beta] {
                None => return (h, l),
                Some(inv) => h = h.then(inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// All elements as products of transversal elements, unsorted.
    fn enumerate(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &out {
                for &b in &level.orbit {
                    next.push(x.then(level.transversal[b].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }
}

/// A permutation group given by generators. Immutable once built.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: u64,
}

impl PartialEq for Group {
    /// Equal as element sets of the same degree.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && (self.degree == other.degree || self.order == 1)
            && self.gens.iter().all(|g| other.contains(g))
    }
}

impl Eq for Group {}

impl Group {
    /// The trivial group, represented on one point with no generators.
    pub fn trivial() -> Group {
        Group::build(1, Vec::new()).unwrap()
    }

    /// Generates a group on `degree` points. Enforces the desk-scale degree bound.
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<Group> {
        if degree > MAX_DEGREE {
            return Err(Error::BoundExceeded(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        Group::build(degree, gens)
    }

    /// Like [`Group::generate`] but allows the larger degrees produced by
    /// coset actions (up to the order bound).
    pub(crate) fn build(degree: usize, gens: Vec<Permutation>) -> Result<Group> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if degree > MAX_ORDER.max(MAX_DEGREE) {
            return Err(Error::BoundExceeded(format!("degree {degree}")));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::new(degree, &gens);
        let order = chain
            .order()
            .ok_or_else(|| Error::BoundExceeded("group order overflows u64".into()))?;
        Ok(Group {
            degree,
            gens,
            chain,
            order,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return self.order == 1 && g.is_identity();
        }
        self.chain.contains(g)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.order as usize > MAX_ORDER {
            return Err(Error::BoundExceeded(format!(
                "order {} exceeds {MAX_ORDER}",
                self.order
            )));
        }
        Ok(())
    }

    /// All elements in ascending image order (identity first).
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.check_enumerable()?;
        let mut elems = self.chain.enumerate();
        elems.sort_unstable();
        Ok(elems)
    }

    /// Trivial groups are subgroups of everything regardless of degree.
    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        if self.is_trivial() {
            return true;
        }
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, other: &Group) -> bool {
        if !self.is_subgroup_of(other) {
            return false;
        }
        other
            .gens
            .iter()
            .all(|g| self.gens.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    /// Adds generators, skipping those already contained.
    pub fn join_with(&self, extra: &[Permutation]) -> Result<Group> {
        let mut gens = self.gens.clone();
        let mut current = self.clone();
        for x in extra {
            if !current.contains(x) {
                gens.push(x.clone());
                current = Group::build(x.degree().max(self.degree), gens.clone())?;
            }
        }
        Ok(current)
    }

    pub fn join(&self, other: &Group) -> Result<Group> {
        if self.is_trivial() {
            return Ok(other.clone());
        }
        if other.is_trivial() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        self.join_with(&other.gens)
    }

    /// Normal closure of `subset` in `self`.
    pub fn normal_closure(&self, subset: &[Permutation]) -> Result<Group> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut closure = Group::build(self.degree, Vec::new())?;
        let mut queue: VecDeque<Permutation> = subset.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if closure.contains(&x) {
                continue;
            }
            gens.push(x.clone());
            closure = Group::build(self.degree, gens.clone())?;
            for g in &self.gens {
                queue.push_back(x.conjugate_by(g));
            }
        }
        Ok(closure)
    }

    pub fn derived_subgroup(&self) -> Result<Group> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                comms.push(a.commutator(b));
            }
        }
        self.normal_closure(&comms)
    }

    /// `[sub, self]` for a normal subgroup `sub`.
    pub fn commutator_with(&self, sub: &Group) -> Result<Group> {
        let mut comms = Vec::new();
        for a in &sub.gens {
            for b in &self.gens {
                comms.push(a.commutator(b));
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series down to its stable term.
    pub fn derived_series(&self) -> Result<Vec<Group>> {
        let mut series = vec![self.clone()];
        loop {
            let next = series.last().unwrap().derived_subgroup()?;
            if next.order == series.last().unwrap().order {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Result<Vec<Group>> {
        let mut series = vec![self.clone()];
        loop {
            let next = self.commutator_with(series.last().unwrap())?;
            if next.order == series.last().unwrap().order {
                return Ok(series);
            }
            series.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Derived series reaches the identity.
    pub fn is_soluble(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_trivial())
    }

    /// Lower central series reaches the identity.
    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.lower_central_series()?.last().unwrap().is_trivial())
    }

    pub fn conjugate(&self, g: &Permutation) -> Result<Group> {
        Group::build(
            self.degree,
            self.gens.iter().map(|h| h.conjugate_by(g)).collect(),
        )
    }

    /// Subgroup generated by the given elements, added one at a time.
    pub(crate) fn from_element_list(degree: usize, elems: &[Permutation]) -> Result<Group> {
        let mut group = Group::build(degree, Vec::new())?;
        for x in elems {
            if !group.contains(x) {
                let mut gens = group.gens.clone();
                gens.push(x.clone());
                group = Group::build(degree, gens)?;
            }
        }
        Ok(group)
    }

    fn element_index(&self) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>)> {
        let elems = self.elements()?;
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Ok((elems, index))
    }
}

/// A homomorphism given by generator images, stored as an element map.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    images: Vec<Permutation>,
    map: HashMap<Permutation, Permutation>,
}

impl Homomorphism {
    /// Extends `images` (one per source generator) multiplicatively; fails if
    /// the extension is inconsistent or leaves the target.
    pub fn new(source: Group, target: Group, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.gens.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} generators",
                images.len(),
                source.gens.len()
            )));
        }
        if let Some(bad) = images.iter().find(|x| !target.contains(x)) {
            return Err(Error::InvalidArgument(format!("image {bad} not in target")));
        }
        source.check_enumerable()?;
        let mut map = HashMap::new();
        map.insert(source.identity(), target.identity());
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x].clone();
            for (g, fg) in source.gens.iter().zip(&images) {
                let y = x.then(g);
                let fy = fx.then(fg);
                match map.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::InvalidArgument(
                            "generator images do not preserve relations".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
            map,
        })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn apply(&self, x: &Permutation) -> Option<&Permutation> {
        self.map.get(x)
    }

    pub fn kernel(&self) -> Result<Group> {
        let mut ker: Vec<Permutation> = self
            .map
            .iter()
            .filter(|(_, y)| y.is_identity())
            .map(|(x, _)| x.clone())
            .collect();
        ker.sort_unstable();
        Group::from_element_list(self.source.degree, &ker)
    }

    pub fn image_of(&self, sub: &Group) -> Result<Group> {
        let imgs: Vec<Permutation> = sub
            .generators()
            .iter()
            .map(|g| {
                self.apply(g)
                    .cloned()
                    .ok_or_else(|| Error::NotSubgroup("not inside the source".into()))
            })
            .collect::<Result<_>>()?;
        Group::build(self.target.degree, imgs)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage_of(&self, sub: &Group) -> Result<Group> {
        let mut pre: Vec<Permutation> = self
            .map
            .iter()
            .filter(|(_, y)| sub.contains(y))
            .map(|(x, _)| x.clone())
            .collect();
        pre.sort_unstable();
        Group::from_element_list(self.source.degree, &pre)
    }
}

/// `G/N` acting on the right cosets of `N`, and the quotient epimorphism.
///
/// Cosets are numbered in order of their smallest element, so the result is
/// deterministic. The degree of the quotient is the index `|G:N|`.
pub fn quotient(g: &Group, n: &Group) -> Result<(Group, Homomorphism)> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("quotient by a non-normal subgroup".into()));
    }
    let (elems, index) = g.element_index()?;
    let n_elems = n.elements()?;
    let mut coset_of = vec![usize::MAX; elems.len()];
    let mut reps: Vec<usize> = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for h in &n_elems {
            let y = if h.degree() == x.degree() {
                h.then(x)
            } else {
                x.clone()
            };
            coset_of[index[&y]] = c;
        }
    }
    let k = reps.len();
    let action = |x: &Permutation| -> Permutation {
        let images: Vec<u16> = reps
            .iter()
            .map(|&r| coset_of[index[&elems[r].then(x)]] as u16)
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let gen_images: Vec<Permutation> = g.gens.iter().map(action).collect();
    let target = Group::build(k, gen_images.clone())?;
    let hom = Homomorphism::new(g.clone(), target.clone(), gen_images)?;
    Ok((target, hom))
}

/// Direct product on disjoint point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    if b.is_trivial() {
        return Ok(a.clone());
    }
    if a.is_trivial() {
        return Ok(b.clone());
    }
    let degree = a.degree + b.degree;
    let mut gens: Vec<Permutation> = a.gens.iter().map(|x| x.shifted(0, degree)).collect();
    gens.extend(b.gens.iter().map(|x| x.shifted(a.degree, degree)));
    Group::generate(degree, gens)
}

struct ElementTable {
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl ElementTable {
    fn new(g: &Group) -> Result<Self> {
        let (elems, index) = g.element_index()?;
        Ok(ElementTable { elems, index })
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elems[a].then(&self.elems[b])]
    }

    fn right_translation(&self, n: &Permutation) -> Permutation {
        let images: Vec<u16> = self
            .elems
            .iter()
            .map(|x| self.index[&x.then(n)] as u16)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

fn check_action(n: &Group, table: &ElementTable, q: &Group, action: &[Permutation]) -> Result<()> {
    let size = table.elems.len();
    if action.len() != q.gens.len() {
        return Err(Error::InvalidArgument(format!(
            "{} action maps for {} generators",
            action.len(),
            q.gens.len()
        )));
    }
    for (k, alpha) in action.iter().enumerate() {
        if alpha.degree() != size {
            return Err(Error::NotAutomorphism(format!(
                "action map {k} has degree {} but |N| = {size}",
                alpha.degree()
            )));
        }
        for a in 0..size {
            for b in 0..size {
                let ab = table.mul(a, b);
                if alpha.image(ab) != table.mul(alpha.image(a), alpha.image(b)) {
                    return Err(Error::NotAutomorphism(format!(
                        "action map {k} does not preserve products"
                    )));
                }
            }
        }
    }
    // The assignment extends to a homomorphism Q -> Aut(N) iff the diagonal
    // group it generates together with Q has order |Q|.
    let qdeg = q.degree;
    let diag: Vec<Permutation> = action
        .iter()
        .zip(&q.gens)
        .map(|(alpha, x)| {
            let mut images: Vec<u16> = alpha.images().to_vec();
            images.extend(x.images().iter().map(|&y| y + size as u16));
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let diag_group = Group::build(size + qdeg, diag)?;
    if diag_group.order() != q.order() {
        return Err(Error::NotAutomorphism(
            "action does not define a homomorphism from Q".into(),
        ));
    }
    let _ = n;
    Ok(())
}

/// `N ⋊ Q` acting on the elements of `N`: right translations by `N` together
/// with the automorphisms given in `action` (one permutation of `N`'s sorted
/// element list per generator of `Q`). The action must be faithful.
pub fn semidirect_product(n: &Group, q: &Group, action: &[Permutation]) -> Result<Group> {
    if n.order() as usize > MAX_DEGREE {
        return Err(Error::BoundExceeded(format!(
            "|N| = {} exceeds the degree bound {MAX_DEGREE}",
            n.order()
        )));
    }
    let table = ElementTable::new(n)?;
    check_action(n, &table, q, action)?;
    let size = table.elems.len();
    let image = Group::build(size, action.to_vec())?;
    if image.order() != q.order() {
        return Err(Error::NotFaithful);
    }
    let mut gens: Vec<Permutation> = n.gens.iter().map(|x| table.right_translation(x)).collect();
    gens.extend(action.iter().cloned());
    let result = Group::generate(size, gens)?;
    debug_assert_eq!(result.order(), n.order() * q.order());
    Ok(result)
}

/// `N ⋊ Q` for an arbitrary (possibly non-faithful) action, acting on the
/// elements of `N` together with the points of `Q`.
pub fn semidirect_product_extended(n: &Group, q: &Group, action: &[Permutation]) -> Result<Group> {
    let table = ElementTable::new(n)?;
    check_action(n, &table, q, action)?;
    let size = table.elems.len();
    let degree = size + q.degree;
    let mut gens: Vec<Permutation> = n
        .gens
        .iter()
        .map(|x| table.right_translation(x).extend(degree))
        .collect();
    for (alpha, x) in action.iter().zip(&q.gens) {
        let mut images: Vec<u16> = alpha.images().to_vec();
        images.extend(x.images().iter().map(|&y| y + size as u16));
        gens.push(Permutation::from_images_unchecked(images));
    }
    let result = Group::generate(degree, gens)?;
    debug_assert_eq!(result.order(), n.order() * q.order());
    Ok(result)
}

/// Sorted element list of `n`, the index space of semidirect-product actions.
pub fn action_domain(n: &Group) -> Result<Vec<Permutation>> {
    n.elements()
}

#[derive(Clone, Debug)]
pub enum Target {
    Element(Permutation),
    Subgroup(Group),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizerKind {
    Centralizer,
    Normalizer,
}

/// Centralizer or normalizer in `g` of an element or subgroup of `g`.
pub fn localizer(g: &Group, target: &Target, kind: LocalizerKind) -> Result<Group> {
    let sub = match target {
        Target::Element(x) => {
            if !g.contains(x) {
                return Err(Error::NotSubgroup(format!("{x} is not in the group")));
            }
            Group::build(g.degree, vec![x.clone()])?
        }
        Target::Subgroup(h) => {
            if !h.is_subgroup_of(g) {
                return Err(Error::NotSubgroup("target is not inside the group".into()));
            }
            h.clone()
        }
    };
    let elems = g.elements()?;
    let keep: Vec<Permutation> = elems
        .into_iter()
        .filter(|x| match kind {
            LocalizerKind::Centralizer => sub.gens.iter().all(|h| h.then(x) == x.then(h)),
            LocalizerKind::Normalizer => sub.gens.iter().all(|h| sub.contains(&h.conjugate_by(x))),
        })
        .collect();
    Group::from_element_list(g.degree, &keep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetProduct {
    pub size: usize,
    pub is_subgroup: bool,
    pub commutes: bool,
}

/// Size of `HK` as a set, whether it is closed, and whether `HK = KH`.
pub fn set_product(h: &Group, k: &Group, ambient: &Group) -> Result<SetProduct> {
    if !h.is_subgroup_of(ambient) || !k.is_subgroup_of(ambient) {
        return Err(Error::NotSubgroup("set product of non-subgroups".into()));
    }
    let lift = |x: Permutation| {
        if x.degree() == ambient.degree {
            x
        } else {
            ambient.identity()
        }
    };
    let he: Vec<Permutation> = h.elements()?.into_iter().map(lift).collect();
    let ke: Vec<Permutation> = k.elements()?.into_iter().map(lift).collect();
    let mut hk = HashSet::new();
    let mut kh = HashSet::new();
    for x in &he {
        for y in &ke {
            hk.insert(x.then(y));
            kh.insert(y.then(x));
        }
    }
    let join = Group::from_element_list(ambient.degree, &he)?.join_with(&ke)?;
    Ok(SetProduct {
        size: hk.len(),
        is_subgroup: join.order() as usize == hk.len(),
        commutes: hk == kh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn gen(n: usize, gens: &[&str]) -> Group {
        Group::generate(n, gens.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    fn closure_size(g: &Group) -> usize {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([g.identity()]);
        seen.insert(g.identity());
        while let Some(x) = queue.pop_front() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders_of_standard_groups() {
        assert_eq!(gen(4, &["(1 2 3 4)", "(1 2)"]).order(), 24);
        assert_eq!(gen(5, &["(1 2 3 4 5)", "(1 2 3)"]).order(), 60);
        let g = gen(6, &["(1 2 3 4 5 6)", "(1 2)"]);
        assert_eq!(g.order(), 720);
        assert!(g.contains(&p("(1 5)(2 3)", 6)));
    }

    #[test]
    fn quaternion_regular_representation() {
        // Q8 = {±1, ±i, ±j, ±k}; right multiplication by i and j.
        // Points: 1 -> 1, -1 -> 2, i -> 3, -i -> 4, j -> 5, -j -> 6, k -> 7, -k -> 8.
        let i = p("(1 3 2 4)(5 8 6 7)", 8);
        let j = p("(1 5 2 6)(3 7 4 8)", 8);
        let q8 = Group::generate(8, vec![i, j]).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(closure_size(&q8), 8);
    }

    #[test]
    fn membership_matches_enumeration() {
        let g = gen(5, &["(1 2 3)", "(3 4 5)"]);
        let elems: HashSet<_> = g.elements().unwrap().into_iter().collect();
        let s5 = gen(5, &["(1 2 3 4 5)", "(1 2)"]);
        for x in s5.elements().unwrap() {
            assert_eq!(g.contains(&x), elems.contains(&x));
        }
    }

    #[test]
    fn trivial_group_conventions() {
        let t = Group::trivial();
        assert_eq!(t.degree(), 1);
        assert_eq!(t.order(), 1);
        assert!(t.generators().is_empty());
        let s3 = gen(3, &["(1 2 3)", "(1 2)"]);
        assert!(t.is_subgroup_of(&s3));
        assert!(t.is_normal_in(&s3));
    }

    #[test]
    fn degree_bound_is_enforced() {
        let big = Permutation::identity(MAX_DEGREE + 1);
        assert!(matches!(
            Group::generate(MAX_DEGREE + 1, vec![big]),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn generator_degree_mismatch() {
        assert!(matches!(
            Group::generate(4, vec![p("(1 2)", 3)]),
            Err(Error::DegreeMismatch(4, 3))
        ));
    }

    #[test]
    fn set_product_examples() {
        let s3 = gen(3, &["(1 2 3)", "(1 2)"]);
        let a = gen(3, &["(1 2)"]);
        let b = gen(3, &["(1 2 3)"]);
        let c = gen(3, &["(1 3)"]);
        let ab = set_product(&a, &b, &s3).unwrap();
        assert_eq!(ab.size, 6);
        assert!(ab.is_subgroup && ab.commutes);
        let ac = set_product(&a, &c, &s3).unwrap();
        assert_eq!(ac.size, 4);
        assert!(!ac.commutes && !ac.is_subgroup);
    }

    #[test]
    fn quotient_of_s4_by_v4() {
        let s4 = gen(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = gen(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let (q, hom) = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        assert!(!q.is_abelian());
        assert!(q.is_soluble().unwrap());
        assert_eq!(hom.kernel().unwrap(), v4);
        // coset equality agrees with equal images
        let elems = s4.elements().unwrap();
        for x in &elems {
            for y in &elems {
                let same_coset = v4.contains(&x.then(&y.inverse()));
                assert_eq!(same_coset, hom.apply(x) == hom.apply(y));
            }
        }
    }

    #[test]
    fn quotient_edge_cases() {
        let s3 = gen(3, &["(1 2 3)", "(1 2)"]);
        let triv = Group::generate(3, vec![]).unwrap();
        let (q, _) = quotient(&s3, &triv).unwrap();
        assert_eq!(q.order(), 6);
        let (q, _) = quotient(&s3, &s3).unwrap();
        assert_eq!(q.order(), 1);
        let h = gen(3, &["(1 2)"]);
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal(_))));
    }

    #[test]
    fn direct_products() {
        let c2 = gen(2, &["(1 2)"]);
        let c3 = gen(3, &["(1 2 3)"]);
        let c6 = direct_product(&c2, &c3).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.elements().unwrap().iter().any(|x| x.order() == 6));
        let v4 = direct_product(&c2, &c2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().unwrap().iter().all(|x| x.order() <= 2));
        assert_eq!(direct_product(&c3, &Group::trivial()).unwrap(), c3);
    }

    fn cyclic_action(n: &Group, f: impl Fn(&Permutation) -> Permutation) -> Permutation {
        let elems = n.elements().unwrap();
        let idx: HashMap<_, _> = elems
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Permutation::from_images(elems.iter().map(|x| idx[&f(x)]).collect()).unwrap()
    }

    #[test]
    fn semidirect_frobenius_20() {
        let c5 = gen(5, &["(1 2 3 4 5)"]);
        let c4 = gen(4, &["(1 2 3 4)"]);
        let alpha = cyclic_action(&c5, |x| x.pow(2));
        let f20 = semidirect_product(&c5, &c4, &[alpha]).unwrap();
        assert_eq!(f20.order(), 20);
        assert!(c5_normal_copy(&f20, 5));
    }

    fn c5_normal_copy(g: &Group, p: u64) -> bool {
        let elems = g.elements().unwrap();
        let x = elems.iter().find(|x| x.order() == p).unwrap();
        let sub = Group::generate(g.degree(), vec![x.clone()]).unwrap();
        sub.is_normal_in(g)
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let c5 = gen(5, &["(1 2 3 4 5)"]);
        let c4 = gen(4, &["(1 2 3 4)"]);
        // inversion has order 2, so C4 acts non-faithfully
        let inv = cyclic_action(&c5, |x| x.inverse());
        assert_eq!(
            semidirect_product(&c5, &c4, std::slice::from_ref(&inv)),
            Err(Error::NotFaithful)
        );
        let d = semidirect_product_extended(&c5, &c4, &[inv]).unwrap();
        assert_eq!(d.order(), 20);
        // a transposition of two non-identity elements is not an automorphism
        let bad = Permutation::parse("(2 3)", 5).unwrap();
        assert!(matches!(
            semidirect_product(&c5, &c4, &[bad]),
            Err(Error::NotAutomorphism(_))
        ));
        // an automorphism of order 4 assigned to a generator of order 2
        let c2 = gen(2, &["(1 2)"]);
        let sq = cyclic_action(&c5, |x| x.pow(2));
        assert!(matches!(
            semidirect_product(&c5, &c2, &[sq]),
            Err(Error::NotAutomorphism(_))
        ));
    }

    #[test]
    fn semidirect_with_trivial_complement() {
        let c7 = gen(7, &["(1 2 3 4 5 6 7)"]);
        let g = semidirect_product(&c7, &Group::trivial(), &[]).unwrap();
        assert_eq!(g.order(), 7);
    }

    #[test]
    fn localizers() {
        let s3 = gen(3, &["(1 2 3)", "(1 2)"]);
        let c = localizer(
            &s3,
            &Target::Element(p("(1 2 3)", 3)),
            LocalizerKind::Centralizer,
        )
        .unwrap();
        assert_eq!(c, gen(3, &["(1 2 3)"]));
        let s4 = gen(4, &["(1 2 3 4)", "(1 2)"]);
        let c3 = gen(4, &["(1 2 3)"]);
        let n = localizer(&s4, &Target::Subgroup(c3), LocalizerKind::Normalizer).unwrap();
        assert_eq!(n.order(), 6);
        let whole = localizer(
            &s4,
            &Target::Element(s4.identity()),
            LocalizerKind::Centralizer,
        )
        .unwrap();
        assert_eq!(whole, s4);
        assert!(localizer(
            &s3,
            &Target::Element(p("(1 2)", 4)),
            LocalizerKind::Normalizer
        )
        .is_err());
    }

    #[test]
    fn series_and_predicates() {
        let s4 = gen(4, &["(1 2 3 4)", "(1 2)"]);
        let orders: Vec<u64> = s4
            .derived_series()
            .unwrap()
            .iter()
            .map(Group::order)
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.is_soluble().unwrap());
        assert!(!s4.is_nilpotent().unwrap());
        let a5 = gen(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(!a5.is_soluble().unwrap());
        let d8 = gen(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(d8.is_nilpotent().unwrap());
    }

    #[test]
    fn homomorphism_rejects_inconsistent_images() {
        let c3 = gen(3, &["(1 2 3)"]);
        let c2 = gen(2, &["(1 2)"]);
        assert!(Homomorphism::new(c3, c2.clone(), vec![p("(1 2)", 2)]).is_err());
    }
}
