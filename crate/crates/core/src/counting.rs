//! Closed-form class counts for metacyclic `p`-groups given by canonical
//! parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::canonical::{CanonicalPParams, Epsilon};
use crate::numtheory::{closed_cyclotomic_count, mul_mod, vp_u64};

/// The quantities `l_i`, `k_i`, `h_i` attached to the generator
/// `b^(p^d) a^i` of a cyclic subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyQuantities {
    pub d: u32,
    pub i: u64,
    pub l: u64,
    pub k: u32,
    pub h: u32,
}

/// `A_σ`, `A` and `B_σ` for an `ε = 1` tuple; the cyclic-subgroup class
/// count is `A_σ + A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingTerms {
    #[serde(serialize_with = "ser_rational")]
    pub a_sigma: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub a: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub b_sigma: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `p^e` for a possibly negative exponent.
fn rpow(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

fn require_valid(t: &CanonicalPParams) -> Result<()> {
    if t.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidCanonical(t.to_string()))
    }
}

/// `ε = -1`, `p = 2`, `2 <= ρ <= μ`, `ν >= 1` and a consistent lowering:
/// the hypotheses the class count uses. Weaker than validity.
fn require_class_count_hypotheses(t: &CanonicalPParams) -> Result<()> {
    require_eps(t, Epsilon::Minus)?;
    if t.p != 2 || t.rho < 2 || t.rho > t.mu || t.nu == 0 {
        return Err(Error::Precondition(format!(
            "{t} needs p = 2, 2 <= rho <= mu and nu >= 1"
        )));
    }
    t.to_presentation().map(|_| ())
}

fn require_eps(t: &CanonicalPParams, e: Epsilon) -> Result<()> {
    if t.epsilon == e {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{t} must have epsilon = {}",
            e.value()
        )))
    }
}

/// `l_i`, `k_i = min(μ, v_p(l_i))` and `h_i = min(k_i, ρ + d, ρ + v_p(i))`.
pub fn conjugacy_quantities(t: &CanonicalPParams, d: u32, i: u64) -> Result<ConjugacyQuantities> {
    require_valid(t)?;
    require_eps(t, Epsilon::Plus)?;
    let p = t.p;
    let pm = p.pow(t.mu);
    if t.mu == 0 || d >= t.nu || i == 0 || i > pm {
        return Err(Error::Precondition(format!(
            "need mu >= 1, 0 <= d < nu, 1 <= i <= p^mu; got {t}, d = {d}, i = {i}"
        )));
    }
    let step = p.pow(t.nu - d);
    let l = if p == 2 && i % 2 == 1 && t.mu == t.nu + t.rho {
        (1u64 << t.sigma) + i * (step + (1u64 << (t.mu - 1)))
    } else {
        p.pow(t.sigma) + i * step
    };
    let k = t.mu.min(vp_u64(p, l).expect("l > 0") as u32);
    let vi = vp_u64(p, i).expect("i > 0") as u32;
    let h = k.min(t.rho + d).min(t.rho + vi);
    Ok(ConjugacyQuantities { d, i, l, k, h })
}

/// Whether `⟨b^(p^d) a^i⟩` and `⟨b^(p^d) a^j⟩` are conjugate, by
/// `i ≡ j (mod p^(h_i))`. Positive exponents are first reduced into
/// `1..=p^μ`, which leaves the generators unchanged.
pub fn cyclic_conjugate_predicate(t: &CanonicalPParams, d: u32, i: u64, j: u64) -> Result<bool> {
    let pm = t.p.pow(t.mu);
    let reduce = |x: u64| if x == 0 { 0 } else { (x - 1) % pm + 1 };
    let (i, j) = (reduce(i), reduce(j));
    let qi = conjugacy_quantities(t, d, i)?;
    conjugacy_quantities(t, d, j)?;
    let modulus = t.p.pow(qi.h);
    Ok(i % modulus == j % modulus)
}

/// `A_σ`, `A` and `B_σ` in exact rationals.
pub fn counting_terms(t: &CanonicalPParams) -> Result<CountingTerms> {
    require_valid(t)?;
    require_eps(t, Epsilon::Plus)?;
    let p = t.p as i64;
    let (mu, nu, sigma, rho) = (t.mu as i64, t.nu as i64, t.sigma as i64, t.rho as i64);
    let pm1 = rat(p - 1);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let a_sigma =
        rpow(t.p, rho - 1) * rat(sigma) * (BigRational::one() + &pm1 * rat(1 + 2 * nu - sigma) * &half)
            - rpow(t.p, rho + sigma - mu) / &pm1;
    let inner = rat(6 - rho + 2 * nu * rho - rho * rho)
        + rat(p) * rat(rho * rho + 2 * nu - 3 * rho - 2 * nu * rho + 2);
    let a = (rat(3) * rpow(t.p, rho - 1) - rat(2)) / &pm1 + rpow(t.p, rho - 1) * inner * &half;
    Ok(CountingTerms {
        a_sigma,
        a,
        b_sigma: b_sigma(t)?,
    })
}

/// Number of conjugacy classes of cyclic subgroups for `ε = 1`, `A_σ + A`.
pub fn count_cyclic_classes_eps1(t: &CanonicalPParams) -> Result<u64> {
    let terms = counting_terms(t)?;
    let n = &terms.a_sigma + &terms.a;
    if !n.is_integer() || !n.is_positive() {
        return Err(Error::Internal(format!("A_sigma + A = {n} for {t}")));
    }
    n.to_integer()
        .to_u64()
        .ok_or(Error::Overflow("cyclic class count"))
}

/// `B_σ = -2p^σ + σ p^(μ-1) (p-1) (2 + (p-1)(1 + 2ν - σ))`.
pub fn b_sigma(t: &CanonicalPParams) -> Result<BigRational> {
    require_eps(t, Epsilon::Plus)?;
    let p = t.p as i64;
    let (mu, nu, sigma) = (t.mu as i64, t.nu as i64, t.sigma as i64);
    Ok(rat(-2) * rpow(t.p, sigma)
        + rat(sigma) * rpow(t.p, mu - 1) * rat(p - 1) * rat(2 + (p - 1) * (1 + 2 * nu - sigma)))
}

/// Number of conjugacy classes of elements for `ε = -1`,
/// `3·2^(ν-1) + 2^(ρ-1) (3·2^(ν-1) - 2^(ν+ρ-μ))`.
pub fn count_conjugacy_classes_epsm1(t: &CanonicalPParams) -> Result<BigInt> {
    require_class_count_hypotheses(t)?;
    let (mu, nu, rho) = (t.mu as i64, t.nu as i64, t.rho as i64);
    let value =
        rat(3) * rpow(2, nu - 1) + rpow(2, rho - 1) * (rat(3) * rpow(2, nu - 1) - rpow(2, nu + rho - mu));
    if !value.is_integer() {
        return Err(Error::Internal(format!("class count {value} for {t}")));
    }
    Ok(value.to_integer())
}

/// The same count as `Σ_j C_(R, d_j)` over `0 <= j < 2^ν`, with
/// `R = -1 + 2^ρ` and `d_j = gcd(2^μ, R^j - 1)`, each term from the closed
/// cyclotomic-class count.
pub fn conjugacy_classes_by_cyclotomic_sum(t: &CanonicalPParams) -> Result<BigInt> {
    require_class_count_hypotheses(t)?;
    let pm = 1u64 << t.mu;
    let r = (1u64 << t.rho) - 1;
    let mut total = BigInt::zero();
    let mut power = 1 % pm;
    for _ in 0..(1u64 << t.nu) {
        let e = if power == 1 % pm {
            t.mu as u64
        } else {
            vp_u64(2, (power + pm - 1) % pm)
                .expect("nonzero")
                .min(t.mu as u64)
        };
        total += closed_cyclotomic_count(BigInt::from(r), 2, e)?;
        power = mul_mod(power, r % pm, pm);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, mu: u32, nu: u32, sigma: u32, rho: u32, e: i8) -> CanonicalPParams {
        CanonicalPParams::new(p, mu, nu, sigma, rho, Epsilon::try_from(e).unwrap())
    }

    #[test]
    fn quantities_example() {
        let q = conjugacy_quantities(&t(3, 2, 1, 1, 1, 1), 0, 3).unwrap();
        assert_eq!((q.l, q.k, q.h), (12, 1, 1));
        assert!(cyclic_conjugate_predicate(&t(3, 2, 1, 1, 1, 1), 0, 3, 12).unwrap());
        assert!(cyclic_conjugate_predicate(&t(3, 2, 1, 1, 1, 1), 0, 3, 3).unwrap());
        assert!(!cyclic_conjugate_predicate(&t(3, 2, 1, 1, 1, 1), 0, 3, 4).unwrap());
        assert!(cyclic_conjugate_predicate(&t(3, 2, 1, 1, 1, 1), 0, 0, 4).is_err());
        assert!(conjugacy_quantities(&t(3, 2, 1, 1, 1, 1), 1, 3).is_err());
        assert!(conjugacy_quantities(&t(2, 2, 1, 1, 2, -1), 0, 1).is_err());
    }

    #[test]
    fn counting_examples() {
        let c3c3 = t(3, 1, 1, 1, 1, 1);
        let terms = counting_terms(&c3c3).unwrap();
        assert_eq!(terms.a_sigma, BigRational::new(3.into(), 2.into()));
        assert_eq!(terms.a, BigRational::new(7.into(), 2.into()));
        assert_eq!(count_cyclic_classes_eps1(&c3c3).unwrap(), 5);
        assert_eq!(terms.b_sigma, rat(6));
        let c3 = t(3, 0, 1, 0, 0, 1);
        let terms = counting_terms(&c3).unwrap();
        assert_eq!(terms.a_sigma, BigRational::new((-1).into(), 2.into()));
        assert_eq!(terms.a, BigRational::new(5.into(), 2.into()));
        assert_eq!(count_cyclic_classes_eps1(&t(5, 0, 0, 0, 0, 1)).unwrap(), 1);
    }

    #[test]
    fn conjugacy_class_examples() {
        for (tuple, expected) in [
            (t(2, 2, 1, 1, 2, -1), 5),
            (t(2, 2, 1, 2, 2, -1), 5),
            (t(2, 3, 1, 3, 2, -1), 7),
        ] {
            assert_eq!(
                count_conjugacy_classes_epsm1(&tuple).unwrap(),
                BigInt::from(expected)
            );
            assert_eq!(
                conjugacy_classes_by_cyclotomic_sum(&tuple).unwrap(),
                BigInt::from(expected)
            );
        }
        assert!(count_conjugacy_classes_epsm1(&t(3, 1, 1, 1, 1, 1)).is_err());
        assert!(count_conjugacy_classes_epsm1(&t(2, 3, 0, 3, 2, -1)).is_err());
    }
}
