use crate::error::Result;
use crate::group::finite::{ElementSet, FiniteGroup};
use crate::group::presentation::MetacyclicPresentation;

/// Whether `a ↦ g`, `b ↦ h` extends to an isomorphism `G → H`.
///
/// The relations must hold for `(g, h)` in `H` and the images `h^j g^i` of
/// all normal forms must be distinct.
pub fn extends_to_isomorphism(gg: &FiniteGroup, hh: &FiniteGroup, g: u32, h: u32) -> bool {
    let pres = gg.presentation();
    let (m, n) = (pres.m(), pres.n());
    if hh.element_order(g) != gg.element_order(gg.a()) || hh.element_order(h) != gg.element_order(gg.b()) {
        return false;
    }
    if hh.pow(h, n as i64) != hh.pow(g, pres.s() as i64) {
        return false;
    }
    if hh.conj(g, h) != hh.pow(g, pres.r() as i64) {
        return false;
    }
    let g_powers: Vec<u32> = (0..m).map(|i| hh.pow(g, i as i64)).collect();
    let mut image = ElementSet::empty(hh.order());
    let mut hj = hh.identity();
    for _ in 0..n {
        for &gi in &g_powers {
            if !image.insert(hh.mul(hj, gi)) {
                return false;
            }
        }
        hj = hh.mul(hj, h);
    }
    true
}

/// Isomorphism test on prebuilt tables.
pub fn isomorphic_tables(gg: &FiniteGroup, hh: &FiniteGroup) -> bool {
    if gg.order() != hh.order() || gg.order_histogram() != hh.order_histogram() {
        return false;
    }
    let oa = gg.element_order(gg.a());
    let ob = gg.element_order(gg.b());
    let ga: Vec<u32> = hh.elements().filter(|&x| hh.element_order(x) == oa).collect();
    let gb: Vec<u32> = hh.elements().filter(|&x| hh.element_order(x) == ob).collect();
    ga.iter()
        .any(|&g| gb.iter().any(|&h| extends_to_isomorphism(gg, hh, g, h)))
}

/// Brute-force isomorphism test of two presented groups of order at most
/// `cap`. Groups of different orders are reported non-isomorphic.
pub fn brute_force_isomorphic(
    g: &MetacyclicPresentation,
    h: &MetacyclicPresentation,
    cap: u64,
) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let gg = FiniteGroup::new(*g, cap)?;
    let hh = FiniteGroup::new(*h, cap)?;
    Ok(isomorphic_tables(&gg, &hh))
}

/// Partitions presentations into isomorphism classes, in order of first
/// appearance.
pub fn isomorphism_classes(
    presentations: &[MetacyclicPresentation],
    cap: u64,
) -> Result<Vec<Vec<MetacyclicPresentation>>> {
    let tables: Vec<FiniteGroup> = presentations
        .iter()
        .map(|p| FiniteGroup::new(*p, cap))
        .collect::<Result<_>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (idx, t) in tables.iter().enumerate() {
        match classes.iter_mut().find(|c| isomorphic_tables(&tables[c[0]], t)) {
            Some(c) => c.push(idx),
            None => classes.push(vec![idx]),
        }
    }
    Ok(classes
        .into_iter()
        .map(|c| c.into_iter().map(|i| presentations[i]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let q8 = MetacyclicPresentation::new(4, 2, 2, 3).unwrap();
        let d8 = MetacyclicPresentation::new(4, 2, 0, 3).unwrap();
        let s3 = MetacyclicPresentation::new(3, 2, 0, 2).unwrap();
        let c6 = MetacyclicPresentation::cyclic(6);
        assert!(brute_force_isomorphic(&q8, &q8, 64).unwrap());
        assert!(!brute_force_isomorphic(&q8, &d8, 64).unwrap());
        assert!(!brute_force_isomorphic(&s3, &c6, 64).unwrap());
        let c6_other = MetacyclicPresentation::new(2, 3, 0, 1).unwrap();
        assert!(brute_force_isomorphic(&c6, &c6_other, 64).unwrap());
    }

    #[test]
    fn isomorphism_is_symmetric_on_order_twelve() {
        let all = MetacyclicPresentation::enumerate_of_order(12);
        for g in &all {
            for h in &all {
                assert_eq!(
                    brute_force_isomorphic(g, h, 64).unwrap(),
                    brute_force_isomorphic(h, g, 64).unwrap(),
                    "{g} {h}"
                );
            }
        }
        // C12, C6×C2, D12 and Dic3; A4 is not metacyclic
        let classes = isomorphism_classes(&all, 64).unwrap();
        assert_eq!(classes.len(), 4);
    }
}
