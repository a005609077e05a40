use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::finite::{FiniteGroup, Subgroup};
use crate::wedderburn::algebra::GroupAlgebraElement;

/// `Ĥ`.
pub fn hat(g: &FiniteGroup, h: &Subgroup) -> GroupAlgebraElement {
    GroupAlgebraElement::hat(g.order(), h)
}

/// `ε(ambient, n)`: `Ĥ` when `n` is all of `ambient`, otherwise
/// `Π (n̂ - D̂)` over the `D` with `D/n` minimal normal in `ambient/n`.
pub fn epsilon_idempotent(g: &FiniteGroup, ambient: &Subgroup, n: &Subgroup) -> Result<GroupAlgebraElement> {
    if n.order() == ambient.order() && n.is_subgroup_of(ambient) {
        return Ok(hat(g, ambient));
    }
    let minimal = g.minimal_normal_over_in(n, ambient)?;
    let n_hat = hat(g, n);
    let mut acc = n_hat.clone();
    for d in &minimal {
        acc = acc.mul(&n_hat.sub(&hat(g, d))?, g)?;
    }
    if !acc.is_idempotent(g)? {
        return Err(Error::Internal(format!(
            "epsilon over {:?} is not idempotent",
            n.generators
        )));
    }
    Ok(acc)
}

/// `ε(H, K)` for `H/K` cyclic: the minimal normal subgroups of `H/K` are
/// `K⟨h^(m/p)⟩` for the primes `p | m`, with `hK` a generator.
pub(crate) fn epsilon_cyclic_quotient(
    g: &FiniteGroup,
    h: &Subgroup,
    k: &Subgroup,
    generator: u32,
) -> Result<GroupAlgebraElement> {
    let m = (h.order() / k.order()) as u64;
    let k_hat = hat(g, k);
    if m == 1 {
        return Ok(k_hat);
    }
    let mut acc = k_hat.clone();
    for p in crate::numtheory::prime_divisors(m) {
        let mut gens = k.generators.clone();
        gens.push(g.pow(generator, (m / p) as i64));
        let d = g.subgroup(&gens);
        acc = acc.mul(&k_hat.sub(&hat(g, &d))?, g)?;
    }
    Ok(acc)
}

/// The distinct conjugates of `eps`, sorted, after checking that each one
/// other than `eps` multiplies it to zero.
pub(crate) fn orthogonal_conjugates(
    g: &FiniteGroup,
    eps: &GroupAlgebraElement,
) -> Result<Vec<GroupAlgebraElement>> {
    let mut seen = BTreeSet::new();
    seen.insert(eps.clone());
    for x in g.elements() {
        let c = eps.conjugate(x, g);
        if seen.contains(&c) {
            continue;
        }
        if !c.mul(eps, g)?.is_zero() {
            return Err(Error::ShodaCondition {
                conjugator: g.element(x).to_string(),
            });
        }
        seen.insert(c);
    }
    Ok(seen.into_iter().collect())
}

pub(crate) fn sum_of(size: usize, parts: &[GroupAlgebraElement]) -> Result<GroupAlgebraElement> {
    parts
        .iter()
        .try_fold(GroupAlgebraElement::zero(size), |acc, x| acc.add(x))
}

/// `e(G, H, K)`: the sum of the distinct conjugates of `ε(H, K)`, checked
/// to be a central idempotent whose stabilizer `{g : ge = e}` is
/// `Core_G(K)`.
pub fn e_idempotent(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<GroupAlgebraElement> {
    if !k.is_subgroup_of(h) || !g.is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    let eps = epsilon_idempotent(g, h, k)?;
    e_from_epsilon(g, k, &eps)
}

pub(crate) fn e_from_epsilon(
    g: &FiniteGroup,
    k: &Subgroup,
    eps: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement> {
    let conjugates = orthogonal_conjugates(g, eps)?;
    let e = sum_of(g.order(), &conjugates)?;
    if !e.is_idempotent(g)? {
        return Err(Error::Internal("e(G,H,K) is not idempotent".into()));
    }
    if !e.is_central(g) {
        return Err(Error::Internal("e(G,H,K) is not central".into()));
    }
    let core = g.core(k);
    for x in g.elements() {
        if (e.left_mul_group(x, g) == e) != core.contains(x) {
            return Err(Error::Internal(format!(
                "stabilizer of e(G,H,K) differs from the core at {}",
                g.element(x)
            )));
        }
    }
    Ok(e)
}
