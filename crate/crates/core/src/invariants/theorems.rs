use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::canonical::{CanonicalPParams, Epsilon};
use crate::group::finite::FiniteGroup;
use crate::group::iso::brute_force_isomorphic;
use crate::group::pi::{pi_signature, sylow_subgroup, PiSignature};
use crate::group::presentation::MetacyclicPresentation;
use crate::invariants::vector::{
    compare_vectors, components_compatible, qg_invariant_vector, Comparison, ComponentInvariant,
    QGInvariantVector,
};
use crate::wedderburn::decomposition::decompose_table;
use crate::wedderburn::{
    canonicalize_field, p_component_by_pair, p_component_predicate, wedderburn_decomposition,
    DecompositionOptions,
};

/// Note attached to every report that equates algebras through their
/// invariant vectors.
pub const PROXY_NOTE: &str =
    "algebra isomorphism is proxied by invariant-vector equality: sound for separation, possibly incomplete for equality";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsopDecision {
    pub isomorphic: bool,
    /// For distinct tuples of equal order within the cap, how their vectors
    /// compare. Always `Distinct` unless the separation check failed.
    pub separation: Option<Comparison>,
}

/// Decides isomorphism of metacyclic `p`-groups by comparing canonical
/// tuples, and for distinct tuples of equal order at most `cap` checks that
/// the rational group algebras are separated by their invariant vectors
/// regardless of `Unknown` division flags.
pub fn isop_decide(
    t1: &CanonicalPParams,
    t2: &CanonicalPParams,
    options: &DecompositionOptions,
) -> Result<IsopDecision> {
    for t in [t1, t2] {
        if !t.is_valid() {
            return Err(Error::InvalidCanonical(t.to_string()));
        }
    }
    if t1.p != t2.p {
        return Err(Error::Precondition(format!(
            "{t1} and {t2} have different primes"
        )));
    }
    if t1 == t2 {
        return Ok(IsopDecision {
            isomorphic: true,
            separation: None,
        });
    }
    let (g1, g2) = (t1.presentation()?, t2.presentation()?);
    if g1.order() != g2.order() || g1.order() > options.cap {
        return Ok(IsopDecision {
            isomorphic: false,
            separation: None,
        });
    }
    let cmp = compare_vectors(
        &qg_invariant_vector(&g1, options)?,
        &qg_invariant_vector(&g2, options)?,
    );
    if !cmp.is_distinct() {
        return Err(Error::Internal(format!(
            "{t1} and {t2} are not separated by their invariant vectors: {cmp:?}"
        )));
    }
    Ok(IsopDecision {
        isomorphic: false,
        separation: Some(cmp),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowCheck {
    pub p: u64,
    pub g: MetacyclicPresentation,
    pub h: MetacyclicPresentation,
    pub vectors: Comparison,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowIsomorphismReport {
    pub g: MetacyclicPresentation,
    pub h: MetacyclicPresentation,
    pub vectors: Comparison,
    pub pi_g: PiSignature,
    pub pi_h: PiSignature,
    pub pi_equal: bool,
    pub sylow: Vec<SylowCheck>,
    /// Set when `G` is nilpotent: whether `G ≅ H`.
    pub nilpotent_isomorphic: Option<bool>,
    pub passed: bool,
    pub note: &'static str,
}

/// For `G`, `H` whose invariant vectors may be equal: `π_G = π_H`, and for
/// every `p ∈ π_G` the Sylow `p`-subgroups have compatible vectors and are
/// isomorphic. For nilpotent `G` also checks `G ≅ H`.
pub fn sylow_isomorphism_check(
    g: &MetacyclicPresentation,
    h: &MetacyclicPresentation,
    options: &DecompositionOptions,
) -> Result<SylowIsomorphismReport> {
    let (vg, vh) = (qg_invariant_vector(g, options)?, qg_invariant_vector(h, options)?);
    sylow_isomorphism_check_with(g, h, &vg, &vh, options)
}

/// [`sylow_isomorphism_check`] with precomputed vectors.
pub fn sylow_isomorphism_check_with(
    g: &MetacyclicPresentation,
    h: &MetacyclicPresentation,
    vg: &QGInvariantVector,
    vh: &QGInvariantVector,
    options: &DecompositionOptions,
) -> Result<SylowIsomorphismReport> {
    let vectors = compare_vectors(vg, vh);
    if vectors.is_distinct() {
        return Err(Error::Precondition(format!(
            "invariant vectors of {g} and {h} differ: {vectors:?}"
        )));
    }
    let pi_g = pi_signature(g, options.cap)?;
    let pi_h = pi_signature(h, options.cap)?;
    let pi_equal = pi_g == pi_h;
    let mut sylow = Vec::new();
    for &p in &pi_g.pi {
        let (sg, sh) = (sylow_subgroup(g, p)?, sylow_subgroup(h, p)?);
        let cmp = compare_vectors(
            &qg_invariant_vector(&sg, options)?,
            &qg_invariant_vector(&sh, options)?,
        );
        sylow.push(SylowCheck {
            p,
            g: sg,
            h: sh,
            vectors: cmp,
            isomorphic: brute_force_isomorphic(&sg, &sh, options.cap)?,
        });
    }
    let nilpotent_isomorphic = if pi_g.pi_prime.is_empty() {
        Some(brute_force_isomorphic(g, h, options.cap)?)
    } else {
        None
    };
    let passed = pi_equal
        && sylow.iter().all(|s| s.vectors.may_be_equal() && s.isomorphic)
        && nilpotent_isomorphic != Some(false);
    Ok(SylowIsomorphismReport {
        g: *g,
        h: *h,
        vectors,
        pi_g,
        pi_h,
        pi_equal,
        sylow,
        nilpotent_isomorphic,
        passed,
        note: PROXY_NOTE,
    })
}

/// `[G_2 : G_2' G_2²]` for a Sylow 2-subgroup `G_2`, computed in its table.
pub fn frattini_quotient_order_of_sylow2(g: &MetacyclicPresentation, cap: u64) -> Result<u64> {
    if g.order() % 2 == 1 {
        return Ok(1);
    }
    let s = FiniteGroup::new(sylow_subgroup(g, 2)?, cap)?;
    let mut gens: Vec<u32> = s.derived_subgroup(&s.whole()).generators;
    gens.extend(s.elements().map(|x| s.mul(x, x)));
    gens.sort_unstable();
    gens.dedup();
    let frattini = s.normal_closure_in(&gens, &s.whole());
    Ok((s.order() / frattini.order()) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PComponentReport {
    pub g: MetacyclicPresentation,
    pub p: u64,
    pub k: u64,
    pub sylow: MetacyclicPresentation,
    /// `p`-components of `QG`, selected by the source-pair criterion.
    pub p_components: Vec<ComponentInvariant>,
    /// `k` copies of the components of `Q G_p`.
    pub expected: Vec<ComponentInvariant>,
    pub holds: bool,
    /// The same identity with `p`-components selected by degree and
    /// conductor alone.
    pub holds_for_degree_conductor_selection: bool,
}

/// The sum of the `p`-components of `QG` against `k` copies of `Q G_p`,
/// compared as component multisets with `Unknown` flags as wildcards.
pub fn p_component_sum_check(
    g: &MetacyclicPresentation,
    p: u64,
    options: &DecompositionOptions,
) -> Result<PComponentReport> {
    let sig = pi_signature(g, options.cap)?;
    if !sig.pi.contains(&p) {
        return Err(Error::Precondition(format!("{p} is not in π_G of {g}")));
    }
    let k = if p == 2 {
        1
    } else {
        frattini_quotient_order_of_sylow2(g, options.cap)?
    };
    let table = FiniteGroup::new(*g, options.cap)?;
    let d = decompose_table(&table, options)?;
    let order = g.order();
    let mut by_pair = Vec::new();
    let mut literal = Vec::new();
    for c in &d.components {
        let inv = ComponentInvariant::from(&c.descriptor);
        if p_component_by_pair(order, &c.pair, p) {
            by_pair.push(inv.clone());
        }
        if p_component_predicate(&c.descriptor, p) {
            literal.push(inv);
        }
    }
    by_pair.sort();
    literal.sort();
    let sylow = sylow_subgroup(g, p)?;
    let sv = qg_invariant_vector(&sylow, options)?;
    let mut expected = Vec::new();
    for _ in 0..k {
        expected.extend(sv.components.iter().cloned());
    }
    expected.sort();
    Ok(PComponentReport {
        g: *g,
        p,
        k,
        sylow,
        holds: components_compatible(&by_pair, &expected),
        holds_for_degree_conductor_selection: components_compatible(&literal, &expected),
        p_components: by_pair,
        expected,
    })
}

/// Every presentation `mc(m', n', s', r')` read off a generating pair
/// `(a', b')` of `G` with `⟨a'⟩` normal and `G = ⟨a'⟩⟨b'⟩`: `m'` is the
/// order of `a'`, `n'` that of `b'` modulo `⟨a'⟩`, `b'^(n') = a'^(s')` and
/// `a'^(b') = a'^(r')`. Sorted and deduplicated; all are isomorphic to `G`.
pub fn re_presentations(g: &FiniteGroup) -> Result<Vec<MetacyclicPresentation>> {
    let order = g.order() as u64;
    let mut out = std::collections::BTreeSet::new();
    for a in g.elements() {
        let ca = g.cyclic(a);
        if !g.is_normal(&ca) {
            continue;
        }
        let m = g.element_order(a);
        let a_pows: Vec<u32> = (0..m).map(|e| g.pow(a, e as i64)).collect();
        let log = |x: u32| a_pows.iter().position(|&y| y == x).map(|e| e as u64);
        for b in g.elements() {
            let n = g.order_modulo(b, &ca);
            if m * n != order {
                continue;
            }
            let s = log(g.pow(b, n as i64)).expect("b^n lies in ⟨a⟩");
            let r = log(g.conj(a, b)).expect("⟨a⟩ is normal");
            out.insert(MetacyclicPresentation::new(m, n, s, r)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// One direction-free check of a statement "`QG` has a component of the
/// given kind iff the condition on the tuple holds".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterCriterionReport {
    pub tuple: CanonicalPParams,
    pub statement: &'static str,
    pub condition: bool,
    pub component_found: bool,
    pub holds: bool,
}

fn require_two_group_minus(t: &CanonicalPParams) -> Result<()> {
    if !t.is_valid() {
        return Err(Error::InvalidCanonical(t.to_string()));
    }
    if t.p != 2 || t.epsilon != Epsilon::Minus {
        return Err(Error::Precondition(format!("{t} needs p = 2 and epsilon = -1")));
    }
    Ok(())
}

fn criterion(
    t: &CanonicalPParams,
    statement: &'static str,
    condition: bool,
    found: bool,
) -> CenterCriterionReport {
    CenterCriterionReport {
        tuple: *t,
        statement,
        condition,
        component_found: found,
        holds: condition == found,
    }
}

/// For `ε = -1`, `ρ >= μ - 1`, `μ >= 3`: a component with center
/// `Q(ζ + ζ⁻¹)` exists iff `ρ = σ = μ`, and one with center `Q(ζ - ζ⁻¹)`
/// iff `ρ = μ - 1` and `σ = μ`, where `ζ` has order `2^μ`.
pub fn real_imaginary_center_check(
    t: &CanonicalPParams,
    options: &DecompositionOptions,
) -> Result<[CenterCriterionReport; 2]> {
    require_two_group_minus(t)?;
    if t.rho + 1 < t.mu || t.mu < 3 {
        return Err(Error::Precondition(format!(
            "{t} needs rho >= mu - 1 and mu >= 3"
        )));
    }
    let q = 1u64 << t.mu;
    let real = canonicalize_field(q, &[q - 1])?;
    let imaginary = canonicalize_field(q, &[q / 2 - 1])?;
    let d = wedderburn_decomposition(&t.presentation()?, options)?;
    Ok([
        criterion(
            t,
            "center Q(zeta + zeta^-1) iff rho = sigma = mu",
            t.rho == t.mu && t.sigma == t.mu,
            d.has_component_with_center(&real),
        ),
        criterion(
            t,
            "center Q(zeta - zeta^-1) iff rho = mu - 1 and sigma = mu",
            t.rho + 1 == t.mu && t.sigma == t.mu,
            d.has_component_with_center(&imaginary),
        ),
    ])
}

/// For `ε = -1`, `ρ < μ < ν + ρ`: a component of degree `2^(μ-ρ)` whose
/// center is the fixed field of `ζ ↦ ζ^(-1 + 2^ρ)` exists iff `σ = μ`.
pub fn degree_center_check(
    t: &CanonicalPParams,
    options: &DecompositionOptions,
) -> Result<CenterCriterionReport> {
    require_two_group_minus(t)?;
    if !(t.rho < t.mu && t.mu < t.nu + t.rho) {
        return Err(Error::Precondition(format!("{t} needs rho < mu < nu + rho")));
    }
    let q = 1u64 << t.mu;
    let field = canonicalize_field(q, &[(1u64 << t.rho) - 1])?;
    let d = wedderburn_decomposition(&t.presentation()?, options)?;
    Ok(criterion(
        t,
        "degree 2^(mu-rho) over the fixed field of -1 + 2^rho iff sigma = mu",
        t.sigma == t.mu,
        d.has_component_with(&field, 1u64 << (t.mu - t.rho)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mc(m: u64, n: u64, s: u64, r: u64) -> MetacyclicPresentation {
        MetacyclicPresentation::new(m, n, s, r).unwrap()
    }

    fn opts() -> DecompositionOptions {
        DecompositionOptions::default()
    }

    #[test]
    fn isop_examples() {
        let q8 = CanonicalPParams::new(2, 2, 1, 1, 2, Epsilon::Minus);
        let d8 = CanonicalPParams::new(2, 2, 1, 2, 2, Epsilon::Minus);
        assert!(isop_decide(&q8, &q8, &opts()).unwrap().isomorphic);
        let d = isop_decide(&q8, &d8, &opts()).unwrap();
        assert!(!d.isomorphic);
        assert_eq!(
            d.separation,
            Some(Comparison::Distinct {
                field: "division_flag"
            })
        );
        // ε = 1 tuples differing only in σ
        let t1 = CanonicalPParams::new(3, 2, 2, 1, 1, Epsilon::Plus);
        let t2 = CanonicalPParams::new(3, 2, 2, 2, 1, Epsilon::Plus);
        assert!(t1.is_valid() && t2.is_valid());
        let d = isop_decide(&t1, &t2, &opts()).unwrap();
        assert_eq!(
            d.separation,
            Some(Comparison::Distinct {
                field: "cyclic_subgroup_classes"
            })
        );
        let bad = CanonicalPParams::new(2, 2, 1, 1, 1, Epsilon::Minus);
        assert!(isop_decide(&bad, &q8, &opts()).is_err());
    }

    #[test]
    fn sylow_isomorphism_examples() {
        let s3 = mc(3, 2, 0, 2);
        let r = sylow_isomorphism_check(&s3, &s3, &opts()).unwrap();
        assert!(r.passed);
        let s3_other = mc(3, 2, 0, 2);
        let alt = re_presentations(&FiniteGroup::new(s3, 64).unwrap()).unwrap();
        assert!(alt.contains(&s3_other));
        for h in alt {
            let r = sylow_isomorphism_check(&s3, &h, &opts()).unwrap();
            assert!(r.passed);
            assert_eq!(r.pi_g.pi.iter().copied().collect::<Vec<_>>(), vec![2]);
            assert!(r.sylow[0].isomorphic);
        }
        assert!(sylow_isomorphism_check(&mc(4, 2, 2, 3), &mc(4, 2, 0, 3), &opts()).is_err());
    }

    #[test]
    fn center_criteria() {
        let t = |mu, nu, sigma, rho| CanonicalPParams::new(2, mu, nu, sigma, rho, Epsilon::Minus);
        let d16 = t(3, 1, 3, 3);
        let [real, imaginary] = real_imaginary_center_check(&d16, &opts()).unwrap();
        assert!(real.condition && real.component_found && imaginary.holds);
        let [real, imaginary] = real_imaginary_center_check(&t(3, 2, 3, 2), &opts()).unwrap();
        assert!(imaginary.condition && imaginary.component_found && real.holds);
        // generalized quaternion of order 16: real center without σ = μ
        let [real, _] = real_imaginary_center_check(&t(3, 1, 2, 3), &opts()).unwrap();
        assert!(!real.condition && real.component_found && !real.holds);
        let r = degree_center_check(&t(3, 2, 2, 2), &opts()).unwrap();
        assert!(!r.condition && !r.component_found);
        assert!(degree_center_check(&d16, &opts()).is_err());
    }

    #[test]
    fn p_component_examples() {
        let c6 = MetacyclicPresentation::cyclic(6);
        let r = p_component_sum_check(&c6, 3, &opts()).unwrap();
        assert_eq!(r.k, 2);
        assert!(r.holds);
        assert_eq!(r.p_components.len(), 4);

        let s3 = mc(3, 2, 0, 2);
        let r = p_component_sum_check(&s3, 2, &opts()).unwrap();
        assert_eq!(r.k, 1);
        assert!(r.holds);
        assert_eq!(r.p_components.len(), 2);
        // M_2(Q) has degree 2 and center Q but comes from [H:K] = 3
        assert!(!r.holds_for_degree_conductor_selection);

        let q8 = mc(4, 2, 2, 3);
        let r = p_component_sum_check(&q8, 2, &opts()).unwrap();
        assert!(r.holds && r.k == 1 && r.p_components.len() == 5);
        assert!(p_component_sum_check(&s3, 3, &opts()).is_err());
    }
}
