use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::group::abelian::abelianization_invariants;
use crate::group::finite::FiniteGroup;
use crate::group::presentation::MetacyclicPresentation;
use crate::wedderburn::{
    decomposition::decompose_table, AbelianFieldDescriptor, DecompositionOptions, DivisionFlag,
    SimpleComponentDescriptor,
};

/// The part of a component descriptor used to compare algebras.
/// `matrix_size` is carried along but does not take part in comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentInvariant {
    pub degree: u64,
    pub center: AbelianFieldDescriptor,
    pub division_flag: DivisionFlag,
    pub matrix_size: u64,
}

impl From<&SimpleComponentDescriptor> for ComponentInvariant {
    fn from(c: &SimpleComponentDescriptor) -> Self {
        ComponentInvariant {
            degree: c.degree,
            center: c.center.clone(),
            division_flag: c.division_flag,
            matrix_size: c.matrix_size,
        }
    }
}

/// Isomorphism invariants of `QG` computed at desk scale: the order, `G/G'`
/// (determined by `QG`), the class counts (the center dimension and the
/// component count of `QG`) and the component multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QGInvariantVector {
    pub order: u64,
    pub abelianization: Vec<u64>,
    pub conjugacy_classes: u64,
    pub cyclic_subgroup_classes: u64,
    /// Sorted.
    pub components: Vec<ComponentInvariant>,
}

pub fn qg_invariant_vector(
    pres: &MetacyclicPresentation,
    options: &DecompositionOptions,
) -> Result<QGInvariantVector> {
    if pres.order() > options.cap {
        return Err(crate::Error::CapExceeded {
            order: pres.order(),
            cap: options.cap,
        });
    }
    let g = FiniteGroup::new(*pres, options.cap)?;
    invariant_vector_of_table(&g, options)
}

pub fn invariant_vector_of_table(
    g: &FiniteGroup,
    options: &DecompositionOptions,
) -> Result<QGInvariantVector> {
    let d = decompose_table(g, options)?;
    let mut components: Vec<ComponentInvariant> =
        d.descriptors().iter().map(ComponentInvariant::from).collect();
    components.sort();
    Ok(QGInvariantVector {
        order: g.order() as u64,
        abelianization: abelianization_invariants(g.presentation()),
        conjugacy_classes: g.conjugacy_classes().len() as u64,
        cyclic_subgroup_classes: g.cyclic_subgroup_classes().len() as u64,
        components,
    })
}

/// Outcome of comparing two invariant vectors when `Unknown` division
/// flags may resolve either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Comparison {
    /// Differ however the `Unknown` flags resolve; `field` is the first
    /// field that separates them.
    Distinct { field: &'static str },
    /// Equal, with no `Unknown` flag on either side.
    Identical,
    /// Equal field by field, but some `Unknown` flag could resolve so as to
    /// separate them.
    IdenticalWithUnknown,
    /// Not equal as written, but equal under some resolution of the
    /// `Unknown` flags.
    CompatibleViaUnknown,
}

impl Comparison {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Comparison::Distinct { .. })
    }

    /// True unless the vectors provably differ.
    pub fn may_be_equal(&self) -> bool {
        !self.is_distinct()
    }
}

type FieldKey = (u64, AbelianFieldDescriptor);

/// `(split, division, unknown)` counts per `(degree, center)`.
fn flag_counts<'a>(
    components: impl IntoIterator<Item = &'a ComponentInvariant>,
) -> BTreeMap<FieldKey, [u64; 3]> {
    let mut out: BTreeMap<FieldKey, [u64; 3]> = BTreeMap::new();
    for c in components {
        let slot = out.entry((c.degree, c.center.clone())).or_default();
        match c.division_flag {
            DivisionFlag::Split => slot[0] += 1,
            DivisionFlag::Division => slot[1] += 1,
            DivisionFlag::Unknown => slot[2] += 1,
        }
    }
    out
}

/// Whether two component multisets can be matched one to one with equal
/// degree and center, and flags equal or one of them `Unknown`.
pub fn components_compatible<'a>(
    left: impl IntoIterator<Item = &'a ComponentInvariant>,
    right: impl IntoIterator<Item = &'a ComponentInvariant>,
) -> bool {
    let (l, r) = (flag_counts(left), flag_counts(right));
    if l.keys().ne(r.keys()) {
        return false;
    }
    l.iter().all(|(key, &[s1, d1, u1])| {
        let [s2, d2, u2] = r[key];
        // Split and Division match their own kind greedily; the rest needs
        // Unknown partners on the other side.
        let need_right = s1.saturating_sub(s2) + d1.saturating_sub(d2);
        let need_left = s2.saturating_sub(s1) + d2.saturating_sub(d1);
        s1 + d1 + u1 == s2 + d2 + u2 && need_right <= u2 && need_left <= u1
    })
}

fn has_unknown(v: &QGInvariantVector) -> bool {
    v.components
        .iter()
        .any(|c| c.division_flag == DivisionFlag::Unknown)
}

fn strip_matrix_size(v: &QGInvariantVector) -> Vec<(u64, &AbelianFieldDescriptor, DivisionFlag)> {
    let mut out: Vec<_> = v
        .components
        .iter()
        .map(|c| (c.degree, &c.center, c.division_flag))
        .collect();
    out.sort();
    out
}

pub fn compare_vectors(a: &QGInvariantVector, b: &QGInvariantVector) -> Comparison {
    let scalar_fields: [(&'static str, bool); 4] = [
        ("order", a.order == b.order),
        ("abelianization", a.abelianization == b.abelianization),
        ("conjugacy_classes", a.conjugacy_classes == b.conjugacy_classes),
        (
            "cyclic_subgroup_classes",
            a.cyclic_subgroup_classes == b.cyclic_subgroup_classes,
        ),
    ];
    if let Some((field, _)) = scalar_fields.iter().find(|(_, eq)| !eq) {
        return Comparison::Distinct { field };
    }
    let unflagged = |v: &QGInvariantVector| {
        let mut out: Vec<(u64, AbelianFieldDescriptor)> = v
            .components
            .iter()
            .map(|c| (c.degree, c.center.clone()))
            .collect();
        out.sort();
        out
    };
    if unflagged(a) != unflagged(b) {
        return Comparison::Distinct {
            field: "component_fields",
        };
    }
    if strip_matrix_size(a) == strip_matrix_size(b) {
        if has_unknown(a) || has_unknown(b) {
            Comparison::IdenticalWithUnknown
        } else {
            Comparison::Identical
        }
    } else if components_compatible(&a.components, &b.components) {
        Comparison::CompatibleViaUnknown
    } else {
        Comparison::Distinct {
            field: "division_flag",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(m: u64, n: u64, s: u64, r: u64) -> QGInvariantVector {
        let p = MetacyclicPresentation::new(m, n, s, r).unwrap();
        qg_invariant_vector(&p, &DecompositionOptions::default()).unwrap()
    }

    fn comp(flag: DivisionFlag) -> ComponentInvariant {
        ComponentInvariant {
            degree: 2,
            center: AbelianFieldDescriptor::rationals(),
            division_flag: flag,
            matrix_size: 1,
        }
    }

    #[test]
    fn quaternion_and_dihedral_differ_in_flag_only() {
        let q8 = vector(4, 2, 2, 3);
        let d8 = vector(4, 2, 0, 3);
        assert_eq!(
            compare_vectors(&q8, &d8),
            Comparison::Distinct {
                field: "division_flag"
            }
        );
        assert_eq!(q8.abelianization, d8.abelianization);
        assert_eq!(q8.conjugacy_classes, d8.conjugacy_classes);
        assert_eq!(compare_vectors(&q8, &q8), Comparison::Identical);
    }

    #[test]
    fn klein_four_and_cyclic_four() {
        let v4 = vector(2, 2, 0, 1);
        let c4 = vector(4, 1, 0, 1);
        assert_eq!(
            compare_vectors(&v4, &c4),
            Comparison::Distinct {
                field: "abelianization"
            }
        );
    }

    #[test]
    fn unknown_matching() {
        use DivisionFlag::*;
        let l = [comp(Split), comp(Unknown)];
        let r = [comp(Division), comp(Split)];
        assert!(components_compatible(&l, &r));
        let r = [comp(Division), comp(Division)];
        assert!(!components_compatible(&l, &r));
        let l = [comp(Unknown), comp(Unknown)];
        assert!(components_compatible(&l, &r));
        assert!(!components_compatible(&l[..1], &r));
    }
}
