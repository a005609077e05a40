use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::group::presentation::{GroupElement, MetacyclicPresentation};

/// Default cap on `|G|` for table-based computations.
pub const DEFAULT_CAP: u64 = 512;

/// Bitset over element indices `0..|G|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for x in 0..universe {
            s.insert(x as u32);
        }
        s
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: u32) -> bool {
        let (w, b) = ((x / 64) as usize, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, x: u32) -> bool {
        let (w, b) = ((x / 64) as usize, x % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
}

impl Ord for ElementSet {
    /// Lexicographic on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup as an element set with a generating list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub generators: Vec<u32>,
    order: usize,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements.iter()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    /// By order, then element-set order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A metacyclic group with a full Cayley table. Elements are indices
/// `j·m + i` of the normal forms `b^j a^i`.
#[derive(Clone)]
pub struct FiniteGroup {
    presentation: MetacyclicPresentation,
    size: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.presentation)
    }
}

impl FiniteGroup {
    pub fn new(presentation: MetacyclicPresentation, cap: u64) -> Result<Self> {
        let order = presentation.order();
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        let size = order as usize;
        let elems: Vec<GroupElement> = presentation.elements().collect();
        let mut table = vec![0u32; size * size];
        for (x, &gx) in elems.iter().enumerate() {
            for (y, &gy) in elems.iter().enumerate() {
                table[x * size + y] = presentation.index(presentation.multiply(gx, gy)) as u32;
            }
        }
        let inverses = elems
            .iter()
            .map(|&g| presentation.index(presentation.inverse(g)) as u32)
            .collect();
        let mut group = FiniteGroup {
            presentation,
            size,
            table,
            inverses,
            orders: Vec::new(),
        };
        group.orders = (0..size as u32).map(|x| group.order_by_iteration(x)).collect();
        Ok(group)
    }

    fn order_by_iteration(&self, x: u32) -> u32 {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn presentation(&self) -> &MetacyclicPresentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn a(&self) -> u32 {
        self.presentation.index(self.presentation.gen_a()) as u32
    }

    pub fn b(&self) -> u32 {
        self.presentation.index(self.presentation.gen_b()) as u32
    }

    pub fn element(&self, x: u32) -> GroupElement {
        self.presentation.element_at(x as usize)
    }

    pub fn index_of(&self, g: GroupElement) -> u32 {
        self.presentation.index(g) as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.size + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs() % self.orders[x as usize] as u64;
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders[x as usize] as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn is_abelian(&self) -> bool {
        let (a, b) = (self.a(), self.b());
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        crate::numtheory::histogram(self.orders.iter().map(|&o| o as u64))
    }

    // ---- subgroups ----

    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let mut set = ElementSet::empty(self.size);
        set.insert(0);
        let mut elems = vec![0u32];
        let mut frontier = 0;
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        while frontier < elems.len() {
            let x = elems[frontier];
            frontier += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    elems.push(y);
                }
            }
        }
        Subgroup {
            order: elems.len(),
            elements: set,
            generators: gens,
        }
    }

    /// Subgroup from an element set already known to be closed.
    pub fn subgroup_from_set(&self, elements: ElementSet) -> Result<Subgroup> {
        let elems: Vec<u32> = elements.iter().collect();
        let mut gens = Vec::new();
        let mut span = self.subgroup(&[]);
        for &x in &elems {
            if !span.contains(x) {
                gens.push(x);
                span = self.subgroup(&gens);
            }
        }
        if span.elements != elements {
            return Err(Error::Internal("element set is not a subgroup".into()));
        }
        Ok(span)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[])
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup(&[self.a(), self.b()])
    }

    pub fn cyclic(&self, x: u32) -> Subgroup {
        self.subgroup(&[x])
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let gens: Vec<u32> = h.generators.iter().map(|&x| self.conj(x, g)).collect();
        let elements = ElementSet::from_elements(self.size, h.iter().map(|x| self.conj(x, g)));
        Subgroup {
            order: h.order,
            elements,
            generators: gens,
        }
    }

    /// Whether `h2 = h1^g` for some `g`.
    pub fn subgroups_conjugate(&self, h1: &Subgroup, h2: &Subgroup) -> bool {
        h1.order == h2.order
            && self
                .elements()
                .any(|g| h1.generators.iter().all(|&x| h2.contains(self.conj(x, g))))
    }

    /// Whether `sub` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, sub: &Subgroup, ambient: &Subgroup) -> bool {
        ambient
            .generators
            .iter()
            .all(|&t| sub.generators.iter().all(|&x| sub.contains(self.conj(x, t))))
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.is_normal_in(sub, &self.whole())
    }

    pub fn normalizer(&self, sub: &Subgroup) -> Subgroup {
        let elems = self
            .elements()
            .filter(|&g| sub.generators.iter().all(|&x| sub.contains(self.conj(x, g))));
        let set = ElementSet::from_elements(self.size, elems);
        self.subgroup_from_set(set).expect("normalizer is a subgroup")
    }

    /// Centralizer in `ambient` of the given elements.
    pub fn centralizer_in(&self, ambient: &Subgroup, elems: &[u32]) -> Subgroup {
        let set = ElementSet::from_elements(
            self.size,
            ambient
                .iter()
                .filter(|&g| elems.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        );
        self.subgroup_from_set(set).expect("centralizer is a subgroup")
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_in(&self.whole(), &[self.a(), self.b()])
    }

    pub fn core(&self, sub: &Subgroup) -> Subgroup {
        let mut set = sub.elements.clone();
        for g in self.elements() {
            let conj = ElementSet::from_elements(self.size, sub.iter().map(|x| self.conj(x, g)));
            set = set.intersection(&conj);
        }
        self.subgroup_from_set(set).expect("core is a subgroup")
    }

    /// Smallest subgroup containing `elems` normalized by `ambient`.
    pub fn normal_closure_in(&self, elems: &[u32], ambient: &Subgroup) -> Subgroup {
        let mut gens: Vec<u32> = elems.to_vec();
        loop {
            let span = self.subgroup(&gens);
            let missing = ambient.generators.iter().find_map(|&t| {
                span.generators
                    .iter()
                    .map(|&x| self.conj(x, t))
                    .find(|&c| !span.contains(c))
            });
            match missing {
                Some(c) => gens.push(c),
                None => return span,
            }
        }
    }

    /// Derived subgroup of `sub`.
    pub fn derived_subgroup(&self, sub: &Subgroup) -> Subgroup {
        let gens = &sub.generators;
        let mut comms = Vec::new();
        for (idx, &x) in gens.iter().enumerate() {
            for &y in &gens[idx + 1..] {
                comms.push(self.commutator(x, y));
            }
        }
        self.normal_closure_in(&comms, sub)
    }

    pub fn is_abelian_subgroup(&self, sub: &Subgroup) -> bool {
        let g = &sub.generators;
        g.iter()
            .all(|&x| g.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Smallest `t >= 1` with `x^t ∈ k`.
    pub fn order_modulo(&self, x: u32, k: &Subgroup) -> u64 {
        let mut acc = x;
        let mut t = 1;
        while !k.contains(acc) {
            acc = self.mul(acc, x);
            t += 1;
        }
        t
    }

    /// Distinct cyclic subgroups, sorted.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = ElementSet::empty(self.size);
        let mut out = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let c = self.cyclic(x);
            let ord = c.order() as u64;
            // every generator of ⟨x⟩ gives the same subgroup
            for k in 1..=ord {
                if crate::numtheory::gcd(k, ord) == 1 {
                    seen.insert(self.pow(x, k as i64));
                }
            }
            out.push(c);
        }
        out.sort();
        out
    }

    /// All subgroups: closures of pairs of cyclic generators, deduplicated
    /// and sorted by order then element set.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let reps: Vec<u32> = cyclic
            .iter()
            .map(|c| c.generators.first().copied().unwrap_or(0))
            .collect();
        let mut seen: HashSet<ElementSet> = HashSet::new();
        let mut out = Vec::new();
        for (idx, &x) in reps.iter().enumerate() {
            for (jdx, &y) in reps.iter().enumerate().skip(idx) {
                if cyclic[jdx].contains(x) || cyclic[idx].contains(y) {
                    let bigger = if cyclic[jdx].contains(x) { jdx } else { idx };
                    if seen.insert(cyclic[bigger].elements.clone()) {
                        out.push(cyclic[bigger].clone());
                    }
                    continue;
                }
                let h = self.subgroup(&[x, y]);
                if seen.insert(h.elements.clone()) {
                    out.push(h);
                }
            }
        }
        out.sort();
        out
    }

    /// Conjugacy-class representatives (least element of each class) of
    /// `subs`, each with its class size.
    pub fn subgroup_classes(&self, subs: &[Subgroup]) -> Vec<Vec<Subgroup>> {
        let mut assigned: HashSet<ElementSet> = HashSet::new();
        let mut classes = Vec::new();
        let transversal = self.elements().collect::<Vec<_>>();
        for h in subs {
            if assigned.contains(&h.elements) {
                continue;
            }
            let mut class = Vec::new();
            for &g in &transversal {
                let c = self.conjugate_subgroup(h, g);
                if assigned.insert(c.elements.clone()) {
                    class.push(c);
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    pub fn cyclic_subgroup_classes(&self) -> Vec<Vec<Subgroup>> {
        self.subgroup_classes(&self.cyclic_subgroups())
    }

    /// Conjugacy classes of elements, each sorted, in order of least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut assigned = ElementSet::empty(self.size);
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned.contains(x) {
                continue;
            }
            let mut class: Vec<u32> = Vec::new();
            for g in self.elements() {
                let c = self.conj(x, g);
                if assigned.insert(c) {
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Subgroups `D ⊇ n` normal in `ambient` with `D/n` minimal normal in
    /// `ambient/n`.
    pub fn minimal_normal_over_in(&self, n: &Subgroup, ambient: &Subgroup) -> Result<Vec<Subgroup>> {
        if !n.is_subgroup_of(ambient) || !self.is_normal_in(n, ambient) {
            return Err(Error::NotNormal);
        }
        let mut candidates: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<ElementSet> = HashSet::new();
        for x in ambient.iter() {
            if n.contains(x) {
                continue;
            }
            let mut gens = n.generators.clone();
            gens.push(x);
            let d = self.normal_closure_in(&gens, ambient);
            if seen.insert(d.elements.clone()) {
                candidates.push(d);
            }
        }
        // A minimal normal D/n is the normal closure of any of its elements
        // outside n, so it appears among the candidates and contains no other.
        let minimal: Vec<Subgroup> = candidates
            .iter()
            .filter(|d| {
                !candidates
                    .iter()
                    .any(|e| e.order() < d.order() && e.is_subgroup_of(d))
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort();
        Ok(minimal)
    }

    pub fn minimal_normal_over(&self, n: &Subgroup) -> Result<Vec<Subgroup>> {
        self.minimal_normal_over_in(n, &self.whole())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::canonical::{CanonicalPParams, Epsilon};

    fn group(p: u64, mu: u32, nu: u32, sigma: u32, rho: u32, e: Epsilon) -> FiniteGroup {
        let t = CanonicalPParams::new(p, mu, nu, sigma, rho, e);
        FiniteGroup::new(t.to_presentation().unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn order_eight_examples() {
        let q8 = group(2, 2, 1, 1, 2, Epsilon::Minus);
        let d8 = group(2, 2, 1, 2, 2, Epsilon::Minus);
        assert_eq!(q8.conjugacy_classes().len(), 5);
        assert_eq!(d8.conjugacy_classes().len(), 5);
        assert_eq!(q8.cyclic_subgroup_classes().len(), 5);
        assert_eq!(d8.subgroups().len(), 10);
        assert_eq!(q8.subgroups().len(), 6);
        let minimal = q8.minimal_normal_over(&q8.trivial_subgroup()).unwrap();
        assert_eq!(minimal.len(), 1);
        let a2 = q8.pow(q8.a(), 2);
        assert_eq!(minimal[0], q8.cyclic(a2));
    }

    #[test]
    fn small_examples() {
        let c3c3 = group(3, 1, 1, 1, 1, Epsilon::Plus);
        assert_eq!(c3c3.cyclic_subgroup_classes().len(), 5);
        assert_eq!(c3c3.conjugacy_classes().len(), 9);
        let trivial = group(2, 0, 0, 0, 0, Epsilon::Plus);
        assert_eq!(trivial.cyclic_subgroup_classes().len(), 1);
        let cp = FiniteGroup::new(MetacyclicPresentation::cyclic(5), DEFAULT_CAP).unwrap();
        let minimal = cp.minimal_normal_over(&cp.trivial_subgroup()).unwrap();
        assert_eq!(minimal, vec![cp.whole()]);
    }

    #[test]
    fn not_normal_rejected() {
        let s3 = FiniteGroup::new(MetacyclicPresentation::new(3, 2, 0, 2).unwrap(), 64).unwrap();
        let b = s3.cyclic(s3.b());
        assert_eq!(s3.minimal_normal_over(&b), Err(Error::NotNormal));
        assert_eq!(s3.core(&b), s3.trivial_subgroup());
        assert_eq!(s3.derived_subgroup(&s3.whole()), s3.cyclic(s3.a()));
    }

    #[test]
    fn cap_enforced() {
        let g = MetacyclicPresentation::cyclic(100);
        assert_eq!(
            FiniteGroup::new(g, 64).unwrap_err(),
            Error::CapExceeded { order: 100, cap: 64 }
        );
    }
}
