//! Integer primitives: p-adic valuations, multiplicative orders, the
//! geometric sum `S(x, n) = 1 + x + ... + x^(n-1)`, cyclotomic classes and
//! closed forms for valuations, orders and class counts modulo prime powers.
//!
//! Values that can grow (geometric sums, powers) are computed on [`BigInt`].
//! The `*_mod` helpers work on residues below `2^63` and route every product
//! through `u128`, so they cannot overflow either.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A p-adic valuation. `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn plus(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
            _ => Valuation::Infinite,
        }
    }

    /// `max(floor, e - self)` for a finite `e`; an infinite valuation gives `floor`.
    fn deficit(self, e: u64, floor: u64) -> u64 {
        match self {
            Valuation::Finite(v) => e.saturating_sub(v).max(floor),
            Valuation::Infinite => floor,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl PartialEq<u64> for Valuation {
    fn eq(&self, other: &u64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set `π(n)` of prime divisors, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `n_p`-style valuation on machine integers; `None` for zero.
pub fn vp_u64(p: u64, mut n: u64) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Some(e)
}

/// Largest `e` with `p^e | n`, or `Infinite` for `n = 0`.
pub fn vp(p: u64, n: impl Into<BigInt>) -> Result<Valuation> {
    require_prime(p)?;
    let n: BigInt = n.into();
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0u64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        e += 1;
    }
    Ok(Valuation::Finite(e))
}

/// `n_p`, the largest power of `p` dividing `n` (requires `n != 0`).
pub fn p_part(p: u64, n: impl Into<BigInt>) -> Result<BigInt> {
    match vp(p, n)? {
        Valuation::Finite(e) => Ok(BigInt::from(p).pow(e as u32)),
        Valuation::Infinite => Err(Error::Precondition("p-part of 0 is undefined".into())),
    }
}

/// `n_π`, the product of `n_p` over `p ∈ primes`.
pub fn pi_part(primes: &[u64], n: impl Into<BigInt>) -> Result<BigInt> {
    let n: BigInt = n.into();
    primes
        .iter()
        .try_fold(BigInt::one(), |acc, &p| Ok(acc * p_part(p, n.clone())?))
}

/// `n_π` on machine integers.
pub fn pi_part_u64(primes: &[u64], n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|(p, _)| primes.contains(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// Reduces an arbitrary integer to `0..modulus`.
pub fn residue(x: &BigInt, modulus: u64) -> u64 {
    x.mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("residue below modulus")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `S(x, n) mod m`, evaluated by doubling so no division by `x - 1` is needed.
pub fn ese_mod(x: u64, n: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    // (sum, x^len) for a prefix of length len
    let x = x % m;
    let mut sum = 0u64;
    let mut power = 1u64;
    let mut block_sum = 1u64;
    let mut block_pow = x;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            sum = (sum + mul_mod(power, block_sum, m)) % m;
            power = mul_mod(power, block_pow, m);
        }
        block_sum = mul_mod(block_sum, 1 + block_pow, m);
        block_pow = mul_mod(block_pow, block_pow, m);
        k >>= 1;
    }
    sum
}

/// Smallest `k >= 1` with `m^k ≡ 1 (mod n)`.
pub fn multiplicative_order(m: impl Into<BigInt>, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let m: BigInt = m.into();
    let x = residue(&m, n);
    if gcd(x, n) != 1 {
        return Err(Error::NotCoprime {
            value: m.to_string(),
            modulus: n.to_string(),
        });
    }
    Ok(order_mod(x, n))
}

/// Multiplicative order of a unit `x` modulo `n`, via the factorisation of φ(n).
pub(crate) fn order_mod(x: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let phi = euler_phi(n);
    let mut ord = phi;
    for (q, _) in factorize(phi) {
        while ord % q == 0 && pow_mod(x, ord / q, n) == 1 {
            ord /= q;
        }
    }
    ord
}

/// `S(x, n) = Σ_{i<n} x^i`: `n` when `x = 1`, else `(x^n - 1)/(x - 1)`.
pub fn ese(x: impl Into<BigInt>, n: u64) -> BigInt {
    let x: BigInt = x.into();
    if x.is_one() {
        return BigInt::from(n);
    }
    let exp = u32::try_from(n).expect("geometric sum length fits in u32");
    (x.pow(exp) - BigInt::one()) / (x - BigInt::one())
}

fn base_valuation(r: &BigInt, p: u64) -> Result<Valuation> {
    let a = vp(p, r - BigInt::one())?;
    if a == Valuation::Finite(0) {
        return Err(Error::Precondition(format!("v_{p}({r} - 1) must be at least 1")));
    }
    Ok(a)
}

/// Closed form for `v_p(R^m - 1)` given `v_p(R - 1) >= 1`.
pub fn vp_power_closed_form(r: impl Into<BigInt>, m: u64, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::Precondition("exponent m must be positive".into()));
    }
    let r: BigInt = r.into();
    let a = base_valuation(&r, p)?;
    let vm = vp(p, m)?;
    if p != 2 || a >= Valuation::Finite(2) {
        Ok(a.plus(vm))
    } else if m % 2 == 0 {
        Ok(vp(2, &r + BigInt::one())?.plus(vm))
    } else {
        Ok(Valuation::Finite(1))
    }
}

/// Closed form for the order of `R` modulo `p^m` given `v_p(R - 1) >= 1`.
pub fn order_closed_form(r: impl Into<BigInt>, p: u64, m: u64) -> Result<BigInt> {
    require_prime(p)?;
    let r: BigInt = r.into();
    let a = base_valuation(&r, p)?;
    let pow = |e: u64| BigInt::from(p).pow(e as u32);
    if p != 2 || a >= Valuation::Finite(2) {
        Ok(pow(a.deficit(m, 0)))
    } else if m <= 1 {
        Ok(BigInt::one())
    } else {
        let b = vp(2, &r + BigInt::one())?;
        Ok(pow(b.deficit(m, 1)))
    }
}

fn check_power_hypotheses(r: &BigInt, p: u64, a: u64, m: u64) -> Result<()> {
    require_prime(p)?;
    let actual = vp(p, r - BigInt::one())?;
    if actual != Valuation::Finite(a) {
        return Err(Error::Precondition(format!(
            "a = {a} but v_{p}({r} - 1) = {actual}"
        )));
    }
    if a == 0 || a > m {
        return Err(Error::Precondition(format!("need 1 <= a <= m, got a={a}, m={m}")));
    }
    if p == 2 && a < 2 {
        return Err(Error::Precondition("p = 2 requires a >= 2".into()));
    }
    Ok(())
}

/// The residues `{1 + y p^a mod p^m : 0 <= y < p^(m-a)}`, which are the
/// powers of `R` modulo `p^m` when `a = v_p(R - 1)`.
pub fn power_images_closed_form(r: impl Into<BigInt>, p: u64, a: u64, m: u64) -> Result<Vec<u64>> {
    let r: BigInt = r.into();
    check_power_hypotheses(&r, p, a, m)?;
    let pa = p.checked_pow(a as u32).ok_or(Error::Overflow("p^a"))?;
    let count = p.checked_pow((m - a) as u32).ok_or(Error::Overflow("p^(m-a)"))?;
    let modulus = pa.checked_mul(count).ok_or(Error::Overflow("p^m"))?;
    let mut out: Vec<u64> = (0..count).map(|y| (1 + y * pa) % modulus).collect();
    out.sort_unstable();
    Ok(out)
}

/// Closed form for `S(R, n) mod p^m` when `n ≡ k p^(m-a) (mod p^m)`.
pub fn ese_congruence_closed_form(
    r: impl Into<BigInt>,
    p: u64,
    a: u64,
    m: u64,
    n: u64,
    k: i64,
) -> Result<u64> {
    let r: BigInt = r.into();
    check_power_hypotheses(&r, p, a, m)?;
    let modulus = p.checked_pow(m as u32).ok_or(Error::Overflow("p^m"))?;
    let step = p.pow((m - a) as u32);
    let target = (BigInt::from(k) * step).mod_floor(&BigInt::from(modulus));
    if BigInt::from(n % modulus) != target {
        return Err(Error::Precondition(format!(
            "n = {n} is not congruent to {k}·{p}^{} modulo {modulus}",
            m - a
        )));
    }
    if p == 2 && m > a {
        let half = modulus / 2;
        let extra = residue(&(BigInt::from(k) * half), modulus);
        Ok((n % modulus + extra) % modulus)
    } else {
        Ok(n % modulus)
    }
}

/// Partition of `0..modulus` into orbits under multiplication by a unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicClassPartition {
    pub modulus: u64,
    pub multiplier: u64,
    /// Each class sorted; classes ordered by least representative.
    pub classes: Vec<Vec<u64>>,
}

impl CyclotomicClassPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// The `R`-cyclotomic classes modulo `n`.
pub fn cyclotomic_classes(r: impl Into<BigInt>, n: u64) -> Result<CyclotomicClassPartition> {
    if n == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let r: BigInt = r.into();
    let x = residue(&r, n);
    if gcd(x, n) != 1 {
        return Err(Error::NotCoprime {
            value: r.to_string(),
            modulus: n.to_string(),
        });
    }
    let mut seen = vec![false; n as usize];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut class = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            class.push(i);
            i = mul_mod(i, x, n);
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok(CyclotomicClassPartition {
        modulus: n,
        multiplier: x,
        classes,
    })
}

/// `C_{R,n} = Σ_{d | n} φ(d) / o_d(R)`.
pub fn cyclotomic_count_by_divisors(r: impl Into<BigInt>, n: u64) -> Result<u64> {
    let r: BigInt = r.into();
    divisors(n).into_iter().try_fold(0u64, |acc, d| {
        Ok(acc + euler_phi(d) / multiplicative_order(r.clone(), d)?)
    })
}

/// Closed form for the number of `R`-cyclotomic classes modulo `p^m`, `R ≡ 1 (mod p)`.
pub fn closed_cyclotomic_count(r: impl Into<BigInt>, p: u64, m: u64) -> Result<BigInt> {
    require_prime(p)?;
    let r: BigInt = r.into();
    let a = base_valuation(&r, p)?;
    let big = |x: u64| BigInt::from(x);
    let pow = |base: u64, e: u64| BigInt::from(base).pow(e as u32);
    if Valuation::Finite(m) <= a {
        return Ok(pow(p, m));
    }
    // from here a is finite and a < m
    let a = a.finite().expect("finite below m");
    if p == 2 {
        let b = vp(2, &r + BigInt::one())?;
        if m >= 2 && Valuation::Finite(m) < b {
            return Ok(big(1) + pow(2, m - 1));
        }
        if let Valuation::Finite(b) = b {
            if b >= 2 && b <= m {
                return Ok(big(1) + pow(2, b - 1) * big(1 + m - b));
            }
        }
    }
    Ok(pow(p, a - 1) * (big(p) + big(p - 1) * big(m - a)))
}

/// `Σ_{d=0}^{n} d·2^d = (n - 1)·2^(n+1) + 2`.
pub fn sum_d_2d(n: u64) -> BigInt {
    let exp = u32::try_from(n + 1).expect("exponent fits in u32");
    (BigInt::from(n) - 1) * BigInt::from(2).pow(exp) + 2
}

/// Histogram helper shared by the group oracles.
pub(crate) fn histogram<I: IntoIterator<Item = u64>>(items: I) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for x in items {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}
