//! Formations of nilpotent, supersoluble and soluble groups: membership,
//! central chief factors, hypercenters and residuals.

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, p_part, prime_factors};
use crate::bitset::BitSet;
use crate::error::{Error, Result, MAX_DEGREE, MAX_ORDER};
use crate::group::{semidirect_product, Group};
use crate::lattice::{SubId, View};
use crate::perm::Permutation;
use crate::structure::table_is_supersoluble;
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormationId {
    /// Nilpotent groups.
    N,
    /// Supersoluble groups.
    U,
    /// Soluble groups.
    S,
}

impl FormationId {
    pub const ALL: [FormationId; 3] = [FormationId::N, FormationId::U, FormationId::S];

    pub fn name(self) -> &'static str {
        match self {
            FormationId::N => "N",
            FormationId::U => "U",
            FormationId::S => "S",
        }
    }
}

impl fmt::Display for FormationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "N" | "n" | "nilpotent" => Ok(FormationId::N),
            "U" | "u" | "supersoluble" => Ok(FormationId::U),
            "S" | "s" | "soluble" => Ok(FormationId::S),
            other => Err(Error::Parse(format!("unknown formation {other:?}"))),
        }
    }
}

/// Membership of a permutation group, using only stabilizer-chain
/// computations except for supersolubility, which needs a table.
pub fn in_formation(g: &Group, f: FormationId) -> Result<bool> {
    match f {
        FormationId::N => g.is_nilpotent(),
        FormationId::S => g.is_soluble(),
        FormationId::U => {
            if !g.is_soluble()? {
                return Ok(false);
            }
            if g.order() as usize > MAX_ORDER {
                return Err(Error::BoundExceeded(format!(
                    "supersolubility test on a group of order {}",
                    g.order()
                )));
            }
            Ok(table_is_supersoluble(&Table::from_group(g)?))
        }
    }
}

/// Cosets of `lower` inside `upper`, numbered by smallest element.
struct Cosets {
    of: Vec<u16>,
    reps: Vec<usize>,
}

impl Cosets {
    fn new(t: &Table, upper: &BitSet, lower: &BitSet) -> Cosets {
        let mut of = vec![u16::MAX; t.size()];
        let mut reps = Vec::new();
        for x in upper.iter() {
            if of[x] != u16::MAX {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(x);
            for k in lower.iter() {
                of[t.mul(k, x)] = c;
            }
        }
        Cosets { of, reps }
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// Right action of element `g` on the cosets.
    fn action(&self, t: &Table, g: usize) -> Permutation {
        let images: Vec<usize> = self
            .reps
            .iter()
            .map(|&r| self.of[t.mul(r, g)] as usize)
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    }
}

impl<'a> View<'a> {
    pub fn in_formation(&self, f: FormationId) -> bool {
        match f {
            FormationId::N => self.is_nilpotent(),
            FormationId::U => self.is_supersoluble(),
            FormationId::S => self.is_soluble(),
        }
    }

    /// Whether `X/n` lies in the formation, for a normal subgroup `n`.
    pub fn quotient_in_formation(&self, n: SubId, f: FormationId) -> bool {
        let lat = self.lattice();
        match f {
            FormationId::S => lat.le(*self.derived_series().last().unwrap(), n),
            FormationId::N => lat.le(*self.lower_central_series().last().unwrap(), n),
            FormationId::U => {
                let mut cur = n;
                while cur != self.id() {
                    let next = self
                        .chief_factors()
                        .iter()
                        .filter(|&&(_, lower)| lower == cur)
                        .map(|&(upper, _)| upper)
                        .min()
                        .unwrap();
                    if !is_prime(lat.order(next) / lat.order(cur)) {
                        return false;
                    }
                    cur = next;
                }
                true
            }
        }
    }

    /// Whether `X/n` has a normal `p`-complement, for a normal subgroup `n`.
    pub fn quotient_p_nilpotent(&self, n: SubId, p: usize) -> bool {
        let lat = self.lattice();
        let index = self.order() / lat.order(n);
        let target = index / p_part(index, p);
        self.normals_above(n)
            .into_iter()
            .any(|m| lat.order(m) / lat.order(n) == target)
    }

    fn require_chief_factor(&self, upper: SubId, lower: SubId) -> Result<()> {
        if self.covers(upper, lower) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{upper}/{lower} is not a chief factor of the ambient"
            )))
        }
    }

    /// Central chief factors by their characterization: nilpotent-central
    /// means centralized by the ambient, supersoluble-central means prime
    /// order, soluble-central means abelian with soluble action.
    pub fn is_f_central(&self, upper: SubId, lower: SubId, f: FormationId) -> Result<bool> {
        self.require_chief_factor(upper, lower)?;
        let lat = self.lattice();
        let order = lat.order(upper) / lat.order(lower);
        Ok(match f {
            FormationId::N => {
                self.factor_centralizer(upper, lower) == self.id()
                    && prime_factors(order).len() == 1
            }
            FormationId::U => is_prime(order),
            FormationId::S => {
                let abelian = lat.le(self.view(upper).derived(), lower);
                abelian
                    && self.quotient_in_formation(
                        self.factor_centralizer(upper, lower),
                        FormationId::S,
                    )
            }
        })
    }

    /// Central chief factors by construction: the semidirect product of the
    /// factor with the automorphism group induced on it, tested for membership.
    pub fn is_f_central_generic(&self, upper: SubId, lower: SubId, f: FormationId) -> Result<bool> {
        self.require_chief_factor(upper, lower)?;
        let w = self.factor_action_group(upper, lower)?;
        in_formation(&w, f)
    }

    /// `[upper/lower](X/C_X(upper/lower))` as a permutation group on the
    /// elements of the factor.
    pub fn factor_action_group(&self, upper: SubId, lower: SubId) -> Result<Group> {
        let lat = self.lattice();
        let t = self.table();
        let factor = Cosets::new(t, lat.set(upper), lat.set(lower));
        let k = factor.len();
        if k > MAX_DEGREE {
            return Err(Error::BoundExceeded(format!(
                "chief factor of order {k} exceeds the degree bound {MAX_DEGREE}"
            )));
        }
        let v_gens: Vec<Permutation> = lat
            .sub(upper)
            .gens
            .iter()
            .map(|&a| factor.action(t, a))
            .collect();
        let v = Group::generate(k, v_gens)?;
        let v_elems = v.elements()?;
        // Coset c corresponds to right translation by its representative.
        let position: Vec<usize> = (0..k)
            .map(|c| {
                let rho = factor.action(t, factor.reps[c]);
                v_elems
                    .binary_search(&rho)
                    .expect("translation lies in the factor")
            })
            .collect();
        let mut coset_at = vec![0usize; k];
        for (c, &i) in position.iter().enumerate() {
            coset_at[i] = c;
        }

        let c = self.factor_centralizer(upper, lower);
        let quotient = Cosets::new(t, self.set(), lat.set(c));
        let mut q_gens = Vec::new();
        let mut action = Vec::new();
        for &g in self.gens() {
            let image = quotient.action(t, g);
            if image.is_identity() {
                continue;
            }
            q_gens.push(image);
            let images: Vec<usize> = (0..k)
                .map(|i| {
                    let r = factor.reps[coset_at[i]];
                    position[factor.of[t.conj(r, g)] as usize]
                })
                .collect();
            action.push(Permutation::from_images(images)?);
        }
        let q = Group::build(quotient.len(), q_gens)?;
        semidirect_product(&v, &q, &action)
    }

    /// Preimage of the formation hypercenter of `X/base`, for a normal `base`,
    /// by ascent: repeatedly adjoin every central minimal normal subgroup.
    pub fn relative_hypercenter(&self, base: SubId, f: FormationId) -> SubId {
        if let Some(&z) = self.data.hypercenter.lock().unwrap().get(&(base, f)) {
            return z;
        }
        let lat = self.lattice();
        let mut cur = base;
        loop {
            let central: Vec<SubId> = self
                .chief_factors()
                .iter()
                .filter(|&&(_, lower)| lower == cur)
                .map(|&(upper, _)| upper)
                .filter(|&upper| self.is_f_central(upper, cur, f).unwrap())
                .collect();
            if central.is_empty() {
                break;
            }
            cur = central.into_iter().fold(cur, |acc, u| lat.join(acc, u));
        }
        self.data.hypercenter.lock().unwrap().insert((base, f), cur);
        cur
    }

    pub fn f_hypercenter(&self, f: FormationId) -> SubId {
        self.relative_hypercenter(0, f)
    }

    /// Whether every chief factor of the ambient below `h` is central.
    pub fn is_f_hypercentral(&self, h: SubId, f: FormationId) -> bool {
        let lat = self.lattice();
        self.chief_factors()
            .iter()
            .filter(|&&(upper, _)| lat.le(upper, h))
            .all(|&(upper, lower)| self.is_f_central(upper, lower, f).unwrap())
    }

    /// Product of all normal subgroups whose chief factors below them are
    /// all central; the defining form of the hypercenter.
    pub fn f_hypercenter_by_definition(&self, f: FormationId) -> SubId {
        self.lattice().join_all(
            self.normals()
                .iter()
                .copied()
                .filter(|&h| self.is_f_hypercentral(h, f)),
        )
    }

    /// Normal subgroups with quotient in the formation.
    pub fn residual_candidates(&self, f: FormationId) -> Vec<SubId> {
        self.normals()
            .iter()
            .copied()
            .filter(|&n| self.quotient_in_formation(n, f))
            .collect()
    }

    /// Smallest normal subgroup with quotient in the formation.
    pub fn f_residual(&self, f: FormationId) -> SubId {
        let lat = self.lattice();
        let candidates = self.residual_candidates(f);
        let smallest = candidates[0];
        debug_assert!(candidates.iter().all(|&n| lat.le(smallest, n)));
        smallest
    }
}
