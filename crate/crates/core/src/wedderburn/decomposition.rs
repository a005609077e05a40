use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::finite::{FiniteGroup, Subgroup};
use crate::group::presentation::MetacyclicPresentation;
use crate::numtheory::{ese_mod, gcd, multiplicative_order, pi_part_u64};
use crate::wedderburn::algebra::GroupAlgebraElement;
use crate::wedderburn::field::{canonicalize_field, AbelianFieldDescriptor};
use crate::wedderburn::idempotent::{e_from_epsilon, epsilon_cyclic_quotient, sum_of};

/// Default cap on `|G|` for exact idempotent arithmetic.
pub const DEFAULT_ALGEBRA_CAP: u64 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DivisionFlag {
    Split,
    Division,
    Unknown,
}

/// `(H, K)` with `N = N_G(K)`.
#[derive(Clone, Debug)]
pub struct ShodaPair {
    pub h: Subgroup,
    pub k: Subgroup,
    pub normalizer: Subgroup,
}

/// `M_n((Q(ζ_m)/F, σ_x, ζ_m^y))` with `n = matrix_size`, `k = [N:H]` and
/// `F = center`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleComponentDescriptor {
    pub matrix_size: u64,
    pub m: u64,
    pub k: u64,
    pub x: u64,
    /// Reduced modulo `gcd(m, S(x, k))`, the ambiguity left by the choice of
    /// coset representative `u`.
    pub y: u64,
    pub degree: u64,
    pub center: AbelianFieldDescriptor,
    pub division_flag: DivisionFlag,
}

impl SimpleComponentDescriptor {
    /// `k`, the degree of the cyclic algebra over its center.
    pub fn cyclic_degree(&self) -> u64 {
        self.k
    }

    /// `dim_Q = (n k)² [F : Q]`.
    pub fn rational_dimension(&self) -> u64 {
        let d = self.matrix_size * self.k;
        d * d * self.center.degree()
    }

    pub fn is_commutative(&self) -> bool {
        self.degree == 1
    }
}

impl fmt::Display for SimpleComponentDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            return write!(f, "{}", self.center);
        }
        write!(
            f,
            "M_{}(({}/{}, x={}, y={}), deg {}, {:?})",
            self.matrix_size,
            AbelianFieldDescriptor::cyclotomic(self.m),
            self.center,
            self.x,
            self.y,
            self.degree,
            self.division_flag
        )
    }
}

#[derive(Clone, Debug)]
pub struct WedderburnComponent {
    pub pair: ShodaPair,
    pub idempotent: GroupAlgebraElement,
    pub descriptor: SimpleComponentDescriptor,
}

#[derive(Clone, Debug)]
pub struct WedderburnDecomposition {
    pub presentation: MetacyclicPresentation,
    /// Sorted by descriptor, then idempotent.
    pub components: Vec<WedderburnComponent>,
}

impl WedderburnDecomposition {
    pub fn descriptors(&self) -> Vec<SimpleComponentDescriptor> {
        self.components.iter().map(|c| c.descriptor.clone()).collect()
    }

    pub fn has_component_with(&self, center: &AbelianFieldDescriptor, degree: u64) -> bool {
        self.components
            .iter()
            .any(|c| c.descriptor.degree == degree && c.descriptor.center == *center)
    }

    pub fn has_component_with_center(&self, center: &AbelianFieldDescriptor) -> bool {
        self.components.iter().any(|c| c.descriptor.center == *center)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionOptions {
    pub cap: u64,
    /// Check pairwise products of distinct idempotents. Implied by the
    /// other checks, and the most expensive one.
    pub check_orthogonality: bool,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        DecompositionOptions {
            cap: DEFAULT_ALGEBRA_CAP,
            check_orthogonality: true,
        }
    }
}

/// Three-valued verdict on whether a cyclic algebra of degree `k = 2` is a
/// division algebra.
///
/// Split when `ζ_m^y = 1` up to the choice of `u` (for any `k`); Division
/// in the Hamilton-quaternion situation (`k = 2`, real center, imaginary
/// `Q(ζ_m)`, `u² = -1`); Unknown otherwise.
pub fn classify_degree2_division(c: &SimpleComponentDescriptor) -> DivisionFlag {
    let g = y_modulus(c.m, c.x, c.k);
    if c.y % g == 0 {
        return DivisionFlag::Split;
    }
    let real_center = c.center.is_real();
    let imaginary_top = c.m > 2;
    let minus_one = c.m % 2 == 0 && (c.y % c.m) == c.m / 2;
    if c.k == 2 && real_center && imaginary_top && minus_one {
        DivisionFlag::Division
    } else {
        DivisionFlag::Unknown
    }
}

/// `gcd(m, S(x, k) mod m)`.
fn y_modulus(m: u64, x: u64, k: u64) -> u64 {
    if m <= 1 {
        return 1;
    }
    gcd(m, ese_mod(x, k, m))
}

fn is_power_of(p: u64, n: u64) -> bool {
    pi_part_u64(&[p], n) == n
}

/// Degree a power of `p` and center inside some `Q(ζ_(p^n))`, that is,
/// conductor a power of `p`.
pub fn p_component_predicate(c: &SimpleComponentDescriptor, p: u64) -> bool {
    is_power_of(p, c.degree) && is_power_of(p, c.center.conductor())
}

/// The source-pair form of the same test: `[G:H]` a power of `p` and
/// `[H:K]_(p')` in `{1, 2}`.
pub fn p_component_by_pair(group_order: u64, pair: &ShodaPair, p: u64) -> bool {
    let index = group_order / pair.h.order() as u64;
    let m = (pair.h.order() / pair.k.order()) as u64;
    let m_co = m / pi_part_u64(&[p], m);
    is_power_of(p, index) && (m_co == 1 || m_co == 2)
}

/// First element (by index) of `ambient` whose coset generates
/// `ambient/sub`, cyclic of order `order`.
fn coset_generator(g: &FiniteGroup, ambient: &Subgroup, sub: &Subgroup, order: u64) -> Result<u32> {
    ambient
        .iter()
        .find(|&x| g.order_modulo(x, sub) == order)
        .ok_or_else(|| Error::Internal("quotient is not cyclic".into()))
}

/// Least `e` in `0..m` with `target ≡ base^e` modulo `k`.
fn log_mod(g: &FiniteGroup, target: u32, base: u32, m: u64, k: &Subgroup) -> Result<u64> {
    let t_inv = g.inv(target);
    let mut acc = g.identity();
    for e in 0..m {
        if k.contains(g.mul(acc, t_inv)) {
            return Ok(e);
        }
        acc = g.mul(acc, base);
    }
    Err(Error::Internal("element outside the cyclic quotient".into()))
}

/// Descriptor of the component `Q G e(G, H, K)` with `hK` generating
/// `H/K`.
fn describe(g: &FiniteGroup, pair: &ShodaPair, h_gen: u32) -> Result<SimpleComponentDescriptor> {
    let (h, k, n) = (&pair.h, &pair.k, &pair.normalizer);
    let m = (h.order() / k.order()) as u64;
    let kk = (n.order() / h.order()) as u64;
    let u = coset_generator(g, n, h, kk)?;
    let x = log_mod(g, g.conj(h_gen, u), h_gen, m, k)?;
    let y_raw = log_mod(g, g.pow(u, kk as i64), h_gen, m, k)?;
    let action_order = if m <= 2 { 1 } else { multiplicative_order(x, m)? };
    if action_order != kk {
        return Err(Error::Internal(format!(
            "action of N/H on H/K has order {action_order}, expected {kk}"
        )));
    }
    let center = canonicalize_field(m.max(1), &[x % m.max(1)])?;
    if center.degree() * kk != crate::numtheory::euler_phi(m) {
        return Err(Error::Internal("center degree mismatch".into()));
    }
    let order = g.order() as u64;
    let mut desc = SimpleComponentDescriptor {
        matrix_size: order / n.order() as u64,
        m,
        k: kk,
        x: x % m.max(1),
        y: y_raw % y_modulus(m, x, kk),
        degree: order / h.order() as u64,
        center,
        division_flag: DivisionFlag::Unknown,
    };
    if desc.degree != desc.matrix_size * desc.k {
        return Err(Error::Internal("degree is not n·k".into()));
    }
    desc.division_flag = if kk == 1 {
        DivisionFlag::Split
    } else {
        classify_degree2_division(&desc)
    };
    Ok(desc)
}

/// `A = C_G(a)`. It contains `⟨a⟩Z(G)`, is abelian because `C_G(a)/⟨a⟩Z(G)`
/// embeds in the cyclic `G/⟨a⟩` with `⟨a⟩Z(G)` central in it, and contains
/// every abelian subgroup through `⟨a⟩Z(G)`; so it is the unique largest
/// one and is maximal abelian. It contains `G' ≤ ⟨a⟩`.
pub fn maximal_abelian_subgroup(g: &FiniteGroup) -> Subgroup {
    g.centralizer_in(&g.whole(), &[g.a()])
}

/// Pairs `(H, K)` with `K` running over subgroup-class representatives and
/// `H` maximal among the `B ⊇ A` with `B' ≤ K ≤ B`, kept when `H/K` is
/// cyclic. Each comes with a generator of `H/K`.
fn candidate_pairs(g: &FiniteGroup) -> Vec<(ShodaPair, u32)> {
    let a = maximal_abelian_subgroup(g);
    let index = (g.order() / a.order()) as u64;
    let over_a: Vec<(Subgroup, Subgroup)> = crate::numtheory::divisors(index)
        .into_iter()
        .map(|d| {
            let mut gens = a.generators.clone();
            gens.push(g.pow(g.b(), d as i64));
            let b = g.subgroup(&gens);
            let derived = g.derived_subgroup(&b);
            (b, derived)
        })
        .collect();
    let mut out = Vec::new();
    for class in g.subgroup_classes(&g.subgroups()) {
        let k = &class[0];
        let admissible: Vec<&Subgroup> = over_a
            .iter()
            .filter(|(b, d)| k.is_subgroup_of(b) && d.is_subgroup_of(k))
            .map(|(b, _)| b)
            .collect();
        for h in &admissible {
            let maximal = !admissible
                .iter()
                .any(|b| b.order() > h.order() && h.is_subgroup_of(b));
            if !maximal {
                continue;
            }
            let m = (h.order() / k.order()) as u64;
            let Some(gen) = h.iter().find(|&x| g.order_modulo(x, k) == m) else {
                continue;
            };
            let pair = ShodaPair {
                h: (*h).clone(),
                k: k.clone(),
                normalizer: g.normalizer(k),
            };
            out.push((pair, gen));
        }
    }
    out
}

/// Strong Shoda pairs giving the distinct primitive central idempotents of
/// `QG`, each with its idempotent.
pub fn strong_shoda_pairs(
    g: &FiniteGroup,
    options: &DecompositionOptions,
) -> Result<Vec<(ShodaPair, GroupAlgebraElement, u32)>> {
    let order = g.order() as u64;
    if order > options.cap {
        return Err(Error::CapExceeded {
            order,
            cap: options.cap,
        });
    }
    let mut seen: BTreeSet<GroupAlgebraElement> = BTreeSet::new();
    let mut out = Vec::new();
    for (pair, gen) in candidate_pairs(g) {
        if !pair.h.is_subgroup_of(&pair.normalizer) || !g.is_normal_in(&pair.h, &pair.normalizer) {
            return Err(Error::Internal("H is not normal in N_G(K)".into()));
        }
        let eps = epsilon_cyclic_quotient(g, &pair.h, &pair.k, gen)?;
        let e = e_from_epsilon(g, &pair.k, &eps)?;
        if seen.insert(e.clone()) {
            out.push((pair, e, gen));
        }
    }
    let size = g.order();
    let idempotents: Vec<GroupAlgebraElement> = out.iter().map(|(_, e, _)| e.clone()).collect();
    if sum_of(size, &idempotents)? != GroupAlgebraElement::identity(size) {
        return Err(Error::Internal(format!(
            "idempotents of {} do not sum to 1",
            g.presentation()
        )));
    }
    if options.check_orthogonality {
        for (idx, e) in idempotents.iter().enumerate() {
            for f in &idempotents[idx + 1..] {
                if !e.mul(f, g)?.is_zero() {
                    return Err(Error::Internal("idempotents are not orthogonal".into()));
                }
            }
        }
    }
    Ok(out)
}

/// The Wedderburn decomposition of `QG`, one descriptor per primitive
/// central idempotent, with the component count, the dimension identity and
/// the `p`-component criterion checked.
pub fn wedderburn_decomposition(
    pres: &MetacyclicPresentation,
    options: &DecompositionOptions,
) -> Result<WedderburnDecomposition> {
    if pres.order() > options.cap {
        return Err(Error::CapExceeded {
            order: pres.order(),
            cap: options.cap,
        });
    }
    let g = FiniteGroup::new(*pres, options.cap)?;
    decompose_table(&g, options)
}

pub fn decompose_table(g: &FiniteGroup, options: &DecompositionOptions) -> Result<WedderburnDecomposition> {
    let order = g.order() as u64;
    let mut components = Vec::new();
    for (pair, idempotent, gen) in strong_shoda_pairs(g, options)? {
        let descriptor = describe(g, &pair, gen)?;
        for p in crate::numtheory::prime_divisors(order) {
            let by_pair = p_component_by_pair(order, &pair, p);
            let literal = p_component_predicate(&descriptor, p);
            // for p = 2 the converse fails when [H:K] has a Fermat-prime part,
            // as for the M_2(Q) component of S3
            if (by_pair && !literal) || (p != 2 && by_pair != literal) {
                return Err(Error::Internal(format!(
                    "p-component criteria disagree for p = {p} on {descriptor}"
                )));
            }
        }
        components.push(WedderburnComponent {
            pair,
            idempotent,
            descriptor,
        });
    }
    components.sort_by(|x, y| {
        x.descriptor
            .cmp(&y.descriptor)
            .then_with(|| x.idempotent.cmp(&y.idempotent))
    });
    let dimension: u64 = components.iter().map(|c| c.descriptor.rational_dimension()).sum();
    if dimension != order {
        return Err(Error::Internal(format!(
            "component dimensions sum to {dimension}, not {order}"
        )));
    }
    Ok(WedderburnDecomposition {
        presentation: *g.presentation(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::canonical::{CanonicalPParams, Epsilon};

    fn decompose(m: u64, n: u64, s: u64, r: u64) -> WedderburnDecomposition {
        let p = MetacyclicPresentation::new(m, n, s, r).unwrap();
        wedderburn_decomposition(&p, &DecompositionOptions::default()).unwrap()
    }

    fn nonabelian(d: &WedderburnDecomposition) -> Vec<SimpleComponentDescriptor> {
        d.descriptors().into_iter().filter(|c| c.degree > 1).collect()
    }

    #[test]
    fn cyclic_four() {
        let d = decompose(4, 1, 0, 1);
        let conductors: Vec<u64> = d.descriptors().iter().map(|c| c.center.conductor()).collect();
        assert_eq!(conductors, vec![1, 1, 4]);
    }

    #[test]
    fn order_eight() {
        let q8 = decompose(4, 2, 2, 3);
        assert_eq!(q8.components.len(), 5);
        let big = nonabelian(&q8);
        assert_eq!(big.len(), 1);
        let c = &big[0];
        assert_eq!((c.degree, c.m, c.k, c.x, c.y), (2, 4, 2, 3, 2));
        assert_eq!(c.center, AbelianFieldDescriptor::rationals());
        assert_eq!(c.division_flag, DivisionFlag::Division);
        assert_eq!(
            q8.descriptors()
                .iter()
                .filter(|c| c.degree == 1 && c.center.degree() == 1)
                .count(),
            4
        );
        assert!(p_component_predicate(c, 2));

        let d8 = decompose(4, 2, 0, 3);
        let big = nonabelian(&d8);
        assert_eq!(big.len(), 1);
        assert_eq!(
            (big[0].degree, big[0].y, big[0].division_flag),
            (2, 0, DivisionFlag::Split)
        );
    }

    #[test]
    fn symmetric_three() {
        let d = decompose(3, 2, 0, 2);
        let degrees: Vec<u64> = d.descriptors().iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        let m2 = &d.components[2];
        assert!(p_component_predicate(&m2.descriptor, 2));
        assert!(!p_component_by_pair(6, &m2.pair, 2));
        assert!(!p_component_predicate(&m2.descriptor, 3));
    }

    #[test]
    fn semidihedral_sixteen_splits() {
        let t = CanonicalPParams::new(2, 3, 1, 3, 2, Epsilon::Minus);
        let d = wedderburn_decomposition(&t.to_presentation().unwrap(), &DecompositionOptions::default())
            .unwrap();
        for c in nonabelian(&d) {
            assert_eq!(c.division_flag, DivisionFlag::Split, "{c}");
        }
    }

    #[test]
    fn p_components_of_c6() {
        let d = decompose(6, 1, 0, 1);
        let c3 = d
            .descriptors()
            .into_iter()
            .find(|c| c.center.conductor() == 3)
            .unwrap();
        assert!(!p_component_predicate(&c3, 2));
        assert!(p_component_predicate(&c3, 3));
        let q = &d.descriptors()[0];
        assert!(p_component_predicate(q, 2) && p_component_predicate(q, 3) && p_component_predicate(q, 7));
    }

    #[test]
    fn cap_is_enforced() {
        let p = MetacyclicPresentation::cyclic(256);
        assert!(matches!(
            wedderburn_decomposition(&p, &DecompositionOptions::default()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
