use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::canonical::{CanonicalPParams, ConditionParse};
use crate::group::finite::FiniteGroup;
use crate::group::iso::{isomorphic_tables, isomorphism_classes};
use crate::group::presentation::MetacyclicPresentation;
use crate::numtheory::factorize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub order: u64,
    pub p: u64,
    pub tuples: Vec<CanonicalPParams>,
    /// One representative per isomorphism class of consistent
    /// presentations of this order.
    pub classes: Vec<MetacyclicPresentation>,
    /// `assignment[i]` is the class of `tuples[i]`.
    pub assignment: Vec<usize>,
    pub bijection: bool,
}

/// Valid canonical tuples of order `p^k` under `parse` against brute-force
/// isomorphism classes of all consistent presentations of that order.
pub fn classify_order(p: u64, k: u32, parse: ConditionParse, cap: u64) -> Result<ClassificationRow> {
    let order = p.pow(k);
    let tuples = CanonicalPParams::enumerate(p, k, parse);
    let classes: Vec<MetacyclicPresentation> =
        isomorphism_classes(&MetacyclicPresentation::enumerate_of_order(order), cap)?
            .into_iter()
            .map(|c| c[0])
            .collect();
    let tables: Vec<FiniteGroup> = classes
        .iter()
        .map(|c| FiniteGroup::new(*c, cap))
        .collect::<Result<_>>()?;
    let mut assignment = Vec::new();
    for t in &tuples {
        let g = FiniteGroup::new(t.to_presentation()?, cap)?;
        let idx = tables
            .iter()
            .position(|c| isomorphic_tables(c, &g))
            .ok_or_else(|| Error::Internal(format!("{t} matches no class of order {order}")))?;
        assignment.push(idx);
    }
    let mut hit = assignment.clone();
    hit.sort_unstable();
    hit.dedup();
    let bijection = hit.len() == assignment.len() && hit.len() == classes.len();
    Ok(ClassificationRow {
        order,
        p,
        tuples,
        classes,
        assignment,
        bijection,
    })
}

/// [`classify_order`] with the selected parse for every prime power
/// `2 <= p^k <= order_bound`.
pub fn classify_small_metacyclic(order_bound: u64, cap: u64) -> Result<Vec<ClassificationRow>> {
    if order_bound > cap {
        return Err(Error::CapExceeded {
            order: order_bound,
            cap,
        });
    }
    let mut rows = Vec::new();
    for q in 2..=order_bound {
        if let [(p, k)] = factorize(q)[..] {
            rows.push(classify_order(p, k, ConditionParse::SELECTED, cap)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let rows = classify_small_metacyclic(9, 64).unwrap();
        let counts: Vec<(u64, usize)> = rows.iter().map(|r| (r.order, r.classes.len())).collect();
        assert_eq!(
            counts,
            vec![(2, 1), (3, 1), (4, 2), (5, 1), (7, 1), (8, 4), (9, 2)]
        );
        assert!(rows.iter().all(|r| r.bijection));
    }
}
