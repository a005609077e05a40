use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::abelian::abelianization_invariants;
use crate::group::finite::{ElementSet, FiniteGroup};
use crate::group::presentation::{GroupElement, MetacyclicPresentation};
use crate::numtheory::{gcd, pi_part_u64, prime_divisors};

/// `π_G`: primes `p | |G|` such that `G` has a normal Hall `p'`-subgroup;
/// `π'_G`: the remaining prime divisors of `|G|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PiSignature {
    pub pi: BTreeSet<u64>,
    pub pi_prime: BTreeSet<u64>,
}

/// `π_G` by brute force: for each `p`, the `p'`-elements generate a normal
/// subgroup, which is a Hall `p'`-subgroup exactly when its order is
/// `|G|_{p'}`.
pub fn pi_signature_brute(g: &FiniteGroup) -> PiSignature {
    let order = g.order() as u64;
    let mut sig = PiSignature {
        pi: BTreeSet::new(),
        pi_prime: BTreeSet::new(),
    };
    for p in prime_divisors(order) {
        let p_prime_elements: Vec<u32> = g.elements().filter(|&x| g.element_order(x) % p != 0).collect();
        let closure = g.subgroup(&p_prime_elements);
        let target = order / crate::numtheory::pi_part_u64(&[p], order);
        if closure.order() as u64 == target && g.is_normal(&closure) {
            sig.pi.insert(p);
        } else {
            sig.pi_prime.insert(p);
        }
    }
    sig
}

/// `π'_G` as the primes `p` dividing `|G'|` for which `(G/G')_p` is cyclic,
/// with `G' = ⟨a^(r-1)⟩`.
pub fn pi_signature_structural(g: &MetacyclicPresentation) -> PiSignature {
    let (m, r) = (g.m(), g.r());
    let derived_order = m / gcd(m, (r + m - 1) % m);
    let factors = abelianization_invariants(g);
    let mut pi_prime = BTreeSet::new();
    for p in prime_divisors(derived_order) {
        let p_rank = factors.iter().filter(|&&d| d % p == 0).count();
        if p_rank <= 1 {
            pi_prime.insert(p);
        }
    }
    let pi = prime_divisors(g.order())
        .into_iter()
        .filter(|p| !pi_prime.contains(p))
        .collect();
    PiSignature { pi, pi_prime }
}

/// Both computations, required to agree.
pub fn pi_signature(g: &MetacyclicPresentation, cap: u64) -> Result<PiSignature> {
    let table = FiniteGroup::new(*g, cap)?;
    let brute = pi_signature_brute(&table);
    let structural = pi_signature_structural(g);
    if brute != structural {
        return Err(Error::Internal(format!(
            "pi signature of {g}: brute force {brute:?}, structural {structural:?}"
        )));
    }
    Ok(brute)
}

/// `⟨a_π, b_π⟩` re-presented through its cyclic normal subgroup `⟨a_π⟩`.
/// Exists for every set of primes; it is a Hall `π`-subgroup of order
/// `|G|_π`.
fn pi_part_subgroup(g: &MetacyclicPresentation, primes: &[u64]) -> Result<MetacyclicPresentation> {
    let m = g.m();
    let order_b = g.element_order(g.gen_b());
    let m_co = m / pi_part_u64(primes, m);
    let m_pi = m / m_co;
    let b_co = order_b / pi_part_u64(primes, order_b);
    let a_pi = g.power(g.gen_a(), m_co as i64);
    let b_pi = g.power(g.gen_b(), b_co as i64);
    // discrete log in ⟨a_π⟩ = {(0, e·m_co)}
    let log = |x: GroupElement| -> Option<u64> {
        (x.j == 0 && x.i % m_co == 0).then(|| (x.i / m_co) % m_pi.max(1))
    };
    let mut n_pi = 1u64;
    let mut acc = b_pi;
    while log(acc).is_none() {
        acc = g.multiply(acc, b_pi);
        n_pi += 1;
    }
    let s = log(acc).expect("loop exit");
    let r = log(g.conjugate(a_pi, b_pi))
        .ok_or_else(|| Error::Internal(format!("⟨a_π⟩ not normalized by b_π in {g}")))?;
    let sub = MetacyclicPresentation::new(m_pi, n_pi, s, r)?;
    let expected = pi_part_u64(primes, g.order());
    if sub.order() != expected {
        return Err(Error::Internal(format!(
            "π-part subgroup of {g} has order {}, expected {expected}",
            sub.order()
        )));
    }
    Ok(sub)
}

/// Sylow `p`-subgroup `⟨a_p, b_p⟩`.
pub fn sylow_subgroup(g: &MetacyclicPresentation, p: u64) -> Result<MetacyclicPresentation> {
    crate::numtheory::require_prime(p)?;
    pi_part_subgroup(g, &[p])
}

/// Hall `π`-subgroup `⟨a_π, b_π⟩` for `π ⊆ π_G`.
pub fn hall_subgroup(g: &MetacyclicPresentation, primes: &[u64]) -> Result<MetacyclicPresentation> {
    for &p in primes {
        crate::numtheory::require_prime(p)?;
    }
    let sig = pi_signature_structural(g);
    if let Some(p) = primes.iter().find(|p| !sig.pi.contains(p)) {
        return Err(Error::Precondition(format!(
            "{p} is not in π_G = {:?} of {g}",
            sig.pi
        )));
    }
    pi_part_subgroup(g, primes)
}

/// The subgroup `⟨a_π, b_π⟩` inside the table of `G`.
pub fn pi_part_subgroup_elements(g: &FiniteGroup, primes: &[u64]) -> ElementSet {
    let order_a = g.element_order(g.a());
    let order_b = g.element_order(g.b());
    let a = g.pow(g.a(), (order_a / pi_part_u64(primes, order_a)) as i64);
    let b = g.pow(g.b(), (order_b / pi_part_u64(primes, order_b)) as i64);
    g.subgroup(&[a, b]).elements
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::iso::brute_force_isomorphic;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn s3_signature_and_sylow() {
        let s3 = MetacyclicPresentation::new(3, 2, 0, 2).unwrap();
        let sig = pi_signature(&s3, 64).unwrap();
        assert_eq!(sig.pi, set(&[2]));
        assert_eq!(sig.pi_prime, set(&[3]));
        let p3 = sylow_subgroup(&s3, 3).unwrap();
        assert!(brute_force_isomorphic(&p3, &MetacyclicPresentation::cyclic(3), 64).unwrap());
        assert!(hall_subgroup(&s3, &[3]).is_err());
        assert_eq!(hall_subgroup(&s3, &[2]).unwrap().order(), 2);
    }

    #[test]
    fn p_groups_and_cyclic() {
        let q8 = MetacyclicPresentation::new(4, 2, 2, 3).unwrap();
        let sig = pi_signature(&q8, 64).unwrap();
        assert!(sig.pi_prime.is_empty());
        assert_eq!(sylow_subgroup(&q8, 2).unwrap(), q8);
        let c6 = MetacyclicPresentation::cyclic(6);
        let hall = hall_subgroup(&c6, &[2, 3]).unwrap();
        assert!(brute_force_isomorphic(&hall, &c6, 64).unwrap());
    }

    #[test]
    fn branches_agree_and_sylows_have_full_order() {
        for order in 1..=60 {
            for g in MetacyclicPresentation::enumerate_of_order(order) {
                let sig = pi_signature(&g, 64).unwrap();
                if let Some(&p) = prime_divisors(order).first() {
                    assert!(sig.pi.contains(&p), "{g}");
                }
                let table = FiniteGroup::new(g, 64).unwrap();
                for p in prime_divisors(order) {
                    let syl = sylow_subgroup(&g, p).unwrap();
                    let inside = pi_part_subgroup_elements(&table, &[p]);
                    assert_eq!(inside.len() as u64, syl.order());
                }
            }
        }
    }
}
