//! s-permutability, formation quasinormality and supplements.
//!
//! A subgroup `H` of `X` is s-permutable when it permutes with every Sylow
//! subgroup of `X`. It is quasinormal relative to a formation `F` when some
//! normal `T` makes `HT` an s-permutable subgroup and puts `H ∩ T` inside
//! the preimage of the `F`-hypercenter of `X/H_X`.

use crate::arith::p_part;
use crate::error::{Error, Result};
use crate::formations::FormationId;
use crate::lattice::{Lattice, SubId, View};

/// The product `HT` is required to be a subgroup before its s-permutability
/// is tested. Every verdict carries this flag.
pub const PRODUCT_MUST_BE_SUBGROUP: bool = true;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Normal subgroup `T` for quasinormality, the supplement for
    /// supplements, or the non-permuting Sylow subgroup when
    /// s-permutability fails.
    pub witness: Option<SubId>,
    pub product_must_be_subgroup: bool,
}

impl Verdict {
    fn new(holds: bool, witness: Option<SubId>) -> Verdict {
        Verdict {
            holds,
            witness,
            product_must_be_subgroup: PRODUCT_MUST_BE_SUBGROUP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupplementClass {
    Supersoluble,
    PNilpotent(usize),
}

impl<'a> View<'a> {
    /// Whether `a` and `b` permute, i.e. `AB` is a subgroup.
    pub fn permutes(&self, a: SubId, b: SubId) -> bool {
        self.lattice().product_subgroup(a, b).is_some()
    }

    /// First Sylow subgroup (primes ascending, then id) that does not
    /// permute with `h`.
    fn non_permuting_sylow(&self, h: SubId) -> Option<SubId> {
        if let Some(&w) = self.data.sperm.lock().unwrap().get(&h) {
            return w;
        }
        let witness = if self.is_normal(h) {
            None
        } else {
            self.primes()
                .into_iter()
                .flat_map(|p| self.sylow_all(p))
                .find(|&p| !self.permutes(h, p))
        };
        self.data.sperm.lock().unwrap().insert(h, witness);
        witness
    }

    /// s-permutability; a failing verdict names the first non-permuting Sylow.
    pub fn s_permutable(&self, h: SubId) -> Result<Verdict> {
        self.require(h)?;
        let w = self.non_permuting_sylow(h);
        Ok(Verdict::new(w.is_none(), w))
    }

    pub fn is_s_permutable(&self, h: SubId) -> bool {
        self.contains(h) && self.non_permuting_sylow(h).is_none()
    }

    /// s-permutability checked against every maximal `p`-subgroup of the
    /// lattice instead of the Sylow classes.
    pub fn is_s_permutable_by_p_subgroups(&self, h: SubId) -> bool {
        let lat = self.lattice();
        self.primes().into_iter().all(|p| {
            self.members()
                .iter()
                .filter(|&&q| {
                    let n = lat.order(q);
                    p_part(n, p) == n && n > 1
                })
                .filter(|&&q| {
                    !lat.above(q).iter().any(|r| {
                        r != q && self.contains(r) && p_part(lat.order(r), p) == lat.order(r)
                    })
                })
                .all(|&q| self.permutes(h, q))
        })
    }

    /// First normal `T` (ascending id) with `HT` s-permutable and `H ∩ T`
    /// inside the relative hypercenter over the core of `H`.
    fn quasinormal_witness(&self, h: SubId, f: FormationId) -> Option<SubId> {
        if let Some(&w) = self.data.fsq.lock().unwrap().get(&(h, f)) {
            return w;
        }
        let lat = self.lattice();
        let core = self.core(h).unwrap();
        let z = self.relative_hypercenter(core, f);
        let witness = self
            .normals()
            .iter()
            .copied()
            .find(|&t| lat.le(lat.intersect(h, t), z) && self.is_s_permutable(lat.join(h, t)));
        self.data.fsq.lock().unwrap().insert((h, f), witness);
        witness
    }

    pub fn fs_quasinormal(&self, h: SubId, f: FormationId) -> Result<Verdict> {
        self.require(h)?;
        let w = self.quasinormal_witness(h, f);
        Ok(Verdict::new(w.is_some(), w))
    }

    pub fn is_fs_quasinormal(&self, h: SubId, f: FormationId) -> bool {
        self.contains(h) && self.quasinormal_witness(h, f).is_some()
    }

    /// Whether a specific normal `t` witnesses quasinormality of `h`.
    pub fn is_quasinormal_witness(&self, h: SubId, t: SubId, f: FormationId) -> bool {
        let lat = self.lattice();
        if !self.is_normal(t) || !self.contains(h) {
            return false;
        }
        let Some(ht) = lat.product_subgroup(h, t) else {
            return false;
        };
        let core = self.core(h).unwrap();
        self.is_s_permutable(ht) && lat.le(lat.intersect(h, t), self.relative_hypercenter(core, f))
    }

    /// First subgroup `T` (ascending id) with `|HT| = |X|` in the class.
    pub fn f_supplement(&self, h: SubId, class: SupplementClass) -> Result<Verdict> {
        self.require(h)?;
        let lat = self.lattice();
        let n = self.order();
        let hn = lat.order(h);
        let w = self.members().iter().copied().find(|&t| {
            let tn = lat.order(t);
            hn * tn >= n
                && hn * tn / lat.set(h).intersection_len(lat.set(t)) == n
                && self.in_class(t, class)
        });
        Ok(Verdict::new(w.is_some(), w))
    }

    pub fn has_f_supplement(&self, h: SubId, class: SupplementClass) -> bool {
        self.f_supplement(h, class)
            .map(|v| v.holds)
            .unwrap_or(false)
    }

    pub fn in_class(&self, t: SubId, class: SupplementClass) -> bool {
        let v = self.view(t);
        match class {
            SupplementClass::Supersoluble => v.is_supersoluble(),
            SupplementClass::PNilpotent(p) => v.is_p_nilpotent(p),
        }
    }

    /// Whether `t` supplements `h`, measured on the actual product set.
    pub fn is_supplement(&self, h: SubId, t: SubId, class: SupplementClass) -> bool {
        let lat = self.lattice();
        self.contains(t)
            && lat
                .table()
                .product_set(lat.set(h), lat.set(t))
                .intersection_len(self.set())
                == self.order()
            && self.in_class(t, class)
    }
}

impl Lattice {
    /// Quasinormality with `T` restricted to normal subgroups containing the
    /// core of `H`, and the containment tested inside the lattice of the
    /// quotient by that core.
    pub fn fs_quasinormal_variant(&self, h: SubId, f: FormationId) -> Result<Verdict> {
        let g = self.full();
        g.require(h)?;
        let core = g.core(h)?;
        let q = self.quotient(core)?;
        let qv = q.lattice.full();
        let z = qv.f_hypercenter(f);
        let hq = q.image(self, h);
        let w = g.normals_above(core).into_iter().find(|&t| {
            let tq = q.image(self, t);
            q.lattice.le(q.lattice.intersect(hq, tq), z) && g.is_s_permutable(self.join(h, t))
        });
        Ok(Verdict::new(w.is_some(), w))
    }
}

/// Rejects supplement classes with a non-prime parameter.
pub fn check_class(class: SupplementClass) -> Result<()> {
    match class {
        SupplementClass::PNilpotent(p) if !crate::arith::is_prime(p) => {
            Err(Error::InvalidArgument(format!("{p} is not a prime")))
        }
        _ => Ok(()),
    }
}
