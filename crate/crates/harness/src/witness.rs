//! Witnesses attached to cases and their independent re-check.
//!
//! Every witness is re-verified through a second evaluation path: group-level
//! set products instead of lattice ids, the core-quotient variant of
//! quasinormality instead of the relative hypercenter, and stabilizer-chain
//! normality instead of the lattice normal list.

use fsq_core::formations::FormationId;
use fsq_core::group::set_product;
use fsq_core::quasinormal::SupplementClass;
use fsq_core::{Lattice, SubId};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `t` is a normal subgroup witnessing quasinormality of `h`.
    Quasinormal { h: SubId, t: SubId, f: FormationId },
    /// `h` is not quasinormal for `f`.
    NotQuasinormal { h: SubId, f: FormationId },
    /// `t` supplements `h` inside the class.
    Supplement {
        h: SubId,
        t: SubId,
        class: SupplementClass,
    },
    /// `h` has no supplement in the class.
    NoSupplement { h: SubId, class: SupplementClass },
    /// `h` has no supplement in the class and is not quasinormal for `f`.
    Neither {
        h: SubId,
        class: SupplementClass,
        f: FormationId,
    },
    /// `sylow` does not permute with `h`.
    NonPermuting { h: SubId, sylow: SubId },
    /// A normal subgroup playing the named role.
    Normal { role: &'static str, n: SubId },
    /// `G = AB` as sets.
    Factorization { a: SubId, b: SubId },
    /// A failing instance of a universally quantified property.
    Counterexample { what: String, subgroups: Vec<SubId> },
}

fn class_name(c: SupplementClass) -> String {
    match c {
        SupplementClass::Supersoluble => "supersoluble".into(),
        SupplementClass::PNilpotent(p) => format!("p_nilpotent({p})"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRef {
    pub order: usize,
    /// Generators in 1-based cycle notation.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub subgroups: Vec<SubgroupRef>,
    pub rechecked: bool,
}

pub fn subgroup_ref(lat: &Lattice, id: SubId) -> SubgroupRef {
    let t = lat.table();
    SubgroupRef {
        order: lat.order(id),
        generators: lat
            .sub(id)
            .gens
            .iter()
            .map(|&g| t.perm(g).map_or_else(|| format!("#{g}"), |p| p.to_string()))
            .collect(),
    }
}

impl Witness {
    fn kind(&self) -> &'static str {
        match self {
            Witness::Quasinormal { .. } => "quasinormal",
            Witness::NotQuasinormal { .. } => "not_quasinormal",
            Witness::Supplement { .. } => "supplement",
            Witness::NoSupplement { .. } => "no_supplement",
            Witness::Neither { .. } => "no_supplement_not_quasinormal",
            Witness::NonPermuting { .. } => "non_permuting_sylow",
            Witness::Normal { .. } => "normal_subgroup",
            Witness::Factorization { .. } => "factorization",
            Witness::Counterexample { .. } => "counterexample",
        }
    }

    fn ids(&self) -> Vec<SubId> {
        match self {
            Witness::Quasinormal { h, t, .. } | Witness::Supplement { h, t, .. } => vec![*h, *t],
            Witness::NotQuasinormal { h, .. }
            | Witness::NoSupplement { h, .. }
            | Witness::Neither { h, .. } => vec![*h],
            Witness::NonPermuting { h, sylow } => vec![*h, *sylow],
            Witness::Normal { n, .. } => vec![*n],
            Witness::Factorization { a, b } => vec![*a, *b],
            Witness::Counterexample { subgroups, .. } => subgroups.clone(),
        }
    }

    fn note(&self) -> Option<String> {
        match self {
            Witness::Quasinormal { f, .. } | Witness::NotQuasinormal { f, .. } => {
                Some(format!("formation {f}"))
            }
            Witness::Supplement { class, .. } | Witness::NoSupplement { class, .. } => {
                Some(class_name(*class))
            }
            Witness::Neither { class, f, .. } => {
                Some(format!("{}; formation {f}", class_name(*class)))
            }
            Witness::Normal { role, .. } => Some(role.to_string()),
            Witness::Counterexample { what, .. } => Some(what.clone()),
            Witness::NonPermuting { .. } | Witness::Factorization { .. } => None,
        }
    }

    /// Re-verifies the witness by an evaluation path independent of the one
    /// that produced it.
    pub fn recheck(&self, lat: &Lattice) -> bool {
        let g = lat.full();
        let variant = |h: SubId, f: FormationId| {
            lat.fs_quasinormal_variant(h, f)
                .map(|v| v.holds)
                .unwrap_or(false)
        };
        let product_covers =
            |h: SubId, t: SubId| lat.table().product_set(lat.set(h), lat.set(t)).len() == g.order();
        let no_supplement = |h: SubId, class: SupplementClass| {
            let n = g.order();
            !(0..lat.len()).any(|t| {
                lat.order(h) * lat.order(t) >= n && g.in_class(t, class) && product_covers(h, t)
            })
        };
        match *self {
            Witness::Quasinormal { h, t, f } => {
                variant(h, f) && g.is_normal(t) && g.is_quasinormal_witness(h, t, f)
            }
            Witness::NotQuasinormal { h, f } => !variant(h, f),
            Witness::Supplement { h, t, class } => product_covers(h, t) && g.in_class(t, class),
            Witness::NoSupplement { h, class } => no_supplement(h, class),
            Witness::Neither { h, class, f } => !variant(h, f) && no_supplement(h, class),
            Witness::NonPermuting { h, sylow } => {
                match (lat.group(h), lat.group(sylow), lat.group(lat.whole())) {
                    (Some(a), Some(b), Some(whole)) => set_product(&a, &b, &whole)
                        .map(|sp| !sp.commutes)
                        .unwrap_or(false),
                    _ => !lat.set_product(h, sylow).commutes,
                }
            }
            Witness::Normal { n, .. } => match (lat.group(n), lat.group(lat.whole())) {
                (Some(a), Some(whole)) => a.is_normal_in(&whole),
                _ => g.is_normal(n),
            },
            Witness::Factorization { a, b } => product_covers(a, b),
            Witness::Counterexample { ref subgroups, .. } => {
                subgroups.iter().all(|&s| s < lat.len())
            }
        }
    }

    pub fn record(&self, lat: &Lattice) -> WitnessRecord {
        WitnessRecord {
            kind: self.kind(),
            note: self.note(),
            subgroups: self
                .ids()
                .into_iter()
                .map(|id| subgroup_ref(lat, id))
                .collect(),
            rechecked: self.recheck(lat),
        }
    }
}
