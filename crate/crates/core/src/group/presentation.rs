use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{ese_mod, gcd, mul_mod, pow_mod};

/// `⟨a, b | a^m = 1, b^n = a^s, a^b = a^r⟩` with `a^b = b⁻¹ab`.
///
/// Construction checks the three congruences that make the group have order
/// exactly `m·n`: `gcd(r, m) = 1`, `r^n ≡ 1` and `s(r - 1) ≡ 0 (mod m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetacyclicPresentation {
    m: u64,
    n: u64,
    s: u64,
    r: u64,
}

/// Normal form `b^j a^i` with `0 <= j < n`, `0 <= i < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub j: u64,
    pub i: u64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { j: 0, i: 0 };

    pub fn new(j: u64, i: u64) -> Self {
        GroupElement { j, i }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^{}a^{}", self.j, self.i)
    }
}

/// Which of the consistency congruences hold for a raw tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub in_range: bool,
    pub r_coprime_to_m: bool,
    pub r_power_n_is_one: bool,
    pub s_fixed_by_r: bool,
}

impl ConsistencyReport {
    pub fn holds(&self) -> bool {
        self.in_range && self.r_coprime_to_m && self.r_power_n_is_one && self.s_fixed_by_r
    }
}

impl MetacyclicPresentation {
    /// Checked constructor; `s` and `r` are reduced modulo `m`.
    pub fn new(m: u64, n: u64, s: u64, r: u64) -> Result<Self> {
        let report = Self::consistency(m, n, s, r);
        let reason = if !report.in_range {
            "m and n must be positive"
        } else if !report.r_coprime_to_m {
            "gcd(r, m) != 1"
        } else if !report.r_power_n_is_one {
            "r^n is not 1 modulo m"
        } else if !report.s_fixed_by_r {
            "s(r - 1) is not 0 modulo m"
        } else {
            return Ok(MetacyclicPresentation {
                m,
                n,
                s: s % m,
                r: r % m,
            });
        };
        Err(Error::InconsistentPresentation {
            presentation: format!("mc({m},{n},{s},{r})"),
            reason,
        })
    }

    pub fn consistency(m: u64, n: u64, s: u64, r: u64) -> ConsistencyReport {
        if m == 0 || n == 0 {
            return ConsistencyReport {
                in_range: false,
                r_coprime_to_m: false,
                r_power_n_is_one: false,
                s_fixed_by_r: false,
            };
        }
        let (s, r) = (s % m, r % m);
        ConsistencyReport {
            in_range: true,
            r_coprime_to_m: gcd(r, m) == 1,
            r_power_n_is_one: pow_mod(r, n, m) == 1 % m,
            s_fixed_by_r: mul_mod(s, (r + m - 1) % m, m) == 0,
        }
    }

    /// All consistent presentations of a group of order `order`.
    pub fn enumerate_of_order(order: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for m in crate::numtheory::divisors(order) {
            let n = order / m;
            for r in 0..m {
                if gcd(r, m) != 1 || pow_mod(r, n, m) != 1 % m {
                    continue;
                }
                for s in 0..m {
                    if mul_mod(s, (r + m - 1) % m, m) == 0 {
                        out.push(MetacyclicPresentation { m, n, s, r });
                    }
                }
            }
        }
        out
    }

    /// The cyclic group of order `n` as `mc(1, n, 0, 0)`.
    pub fn cyclic(n: u64) -> Self {
        MetacyclicPresentation { m: 1, n, s: 0, r: 0 }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    pub fn is_abelian(&self) -> bool {
        self.r == 1 % self.m
    }

    /// Reduces `b^j a^i` for arbitrary exponents to normal form.
    pub fn normalize(&self, j: u64, i: u64) -> GroupElement {
        let q = j / self.n;
        let t = j % self.n;
        let i = ((i % self.m) as u128 + (q as u128 % self.m as u128) * self.s as u128) % self.m as u128;
        GroupElement { j: t, i: i as u64 }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn gen_a(&self) -> GroupElement {
        self.normalize(0, 1)
    }

    pub fn gen_b(&self) -> GroupElement {
        self.normalize(1, 0)
    }

    /// Index of an element in `0..m·n`, `j·m + i`.
    pub fn index(&self, g: GroupElement) -> usize {
        (g.j * self.m + g.i) as usize
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        let index = index as u64;
        GroupElement {
            j: index / self.m,
            i: index % self.m,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.n).flat_map(move |j| (0..self.m).map(move |i| GroupElement { j, i }))
    }

    /// `(b^j a^i)(b^j' a^i') = b^(j+j') a^(i r^j' + i')`, then `b^n → a^s`.
    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let m = self.m;
        let twist = mul_mod(g.i, pow_mod(self.r, h.j, m), m);
        let mut i = (twist + h.i) % m;
        let mut j = g.j + h.j;
        if j >= self.n {
            j -= self.n;
            i = (i + self.s) % m;
        }
        GroupElement { j, i }
    }

    /// Word-rewriting product: moves `b` letters left past `a` letters one at a
    /// time and replaces `b^n` by `a^s` letter by letter. Independent of
    /// [`multiply`](Self::multiply); used for cross-checks.
    pub fn multiply_slow(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let m = self.m;
        // b^{g.j} a^{g.i} b^{h.j} a^{h.i}; push the a-block right past each b.
        let mut a_block = g.i % m;
        for _ in 0..h.j {
            // a^x b = b a^{x r}
            let mut acc = 0;
            for _ in 0..self.r {
                acc = (acc + a_block) % m;
            }
            a_block = if m == 1 { 0 } else { acc };
        }
        let mut j = g.j + h.j;
        let mut i = (a_block + h.i) % m;
        while j >= self.n {
            j -= self.n;
            i = (i + self.s) % m;
        }
        GroupElement { j, i }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        let m = self.m;
        if g.j == 0 {
            return GroupElement {
                j: 0,
                i: (m - g.i % m) % m,
            };
        }
        let t = self.n - g.j;
        let twisted = mul_mod(g.i, pow_mod(self.r, t, m), m);
        GroupElement {
            j: t,
            i: (2 * m - twisted - self.s % m) % m,
        }
    }

    /// `g^k` by the geometric-sum law `(b^j a^i)^k = b^(jk) a^(i S(r^j, k))`.
    pub fn power(&self, g: GroupElement, k: i64) -> GroupElement {
        if k < 0 {
            return self.power(self.inverse(g), k.unsigned_abs() as i64);
        }
        let k = k as u64;
        let m = self.m;
        let x = pow_mod(self.r, g.j, m);
        let exponent_sum = mul_mod(g.i, ese_mod(x, k, m), m);
        let jk = g.j as u128 * k as u128;
        let q = (jk / self.n as u128) % m.max(1) as u128;
        let t = (jk % self.n as u128) as u64;
        let i = (exponent_sum + mul_mod(q as u64, self.s, m)) % m;
        GroupElement { j: t, i }
    }

    /// `g^k` by repeated multiplication.
    pub fn power_slow(&self, g: GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse(g) } else { g };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.multiply(acc, base))
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        crate::numtheory::divisors(self.order())
            .into_iter()
            .find(|&d| self.power(g, d as i64) == GroupElement::IDENTITY)
            .expect("order divides |G|")
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.multiply(self.multiply(self.inverse(h), g), h)
    }
}

impl fmt::Display for MetacyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mc({},{},{},{})", self.m, self.n, self.s, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> MetacyclicPresentation {
        MetacyclicPresentation::new(4, 2, 2, 3).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let g = q8();
        let a = g.gen_a();
        let b = g.gen_b();
        assert_eq!(g.multiply(g.identity(), a), a);
        assert_eq!(g.multiply(a, b), GroupElement::new(1, 3));
        assert_eq!(g.multiply(b, b), GroupElement::new(0, 2));
        assert_eq!(g.element_order(a), 4);
        assert_eq!(g.element_order(b), 4);
        assert_eq!(g.conjugate(a, b), GroupElement::new(0, 3));
    }

    #[test]
    fn rejects_inconsistent() {
        assert!(MetacyclicPresentation::new(4, 2, 1, 2).is_err());
        assert!(MetacyclicPresentation::new(7, 2, 0, 2).is_err());
        assert!(MetacyclicPresentation::new(4, 2, 1, 3).is_err());
        assert!(MetacyclicPresentation::new(0, 2, 0, 0).is_err());
        assert!(MetacyclicPresentation::new(3, 2, 0, 2).is_ok());
    }

    #[test]
    fn cyclic_generator_b_is_a_power_of_a_when_n_is_one() {
        let g = MetacyclicPresentation::new(5, 1, 3, 1).unwrap();
        assert_eq!(g.gen_b(), GroupElement::new(0, 3));
    }

    #[test]
    fn fast_and_slow_paths_agree() {
        for order in 1..=24 {
            for g in MetacyclicPresentation::enumerate_of_order(order) {
                let elems: Vec<_> = g.elements().collect();
                assert_eq!(elems.len() as u64, g.order());
                for &x in &elems {
                    assert_eq!(g.multiply(x, g.inverse(x)), g.identity(), "{g} {x}");
                    for &y in &elems {
                        assert_eq!(g.multiply(x, y), g.multiply_slow(x, y), "{g} {x} {y}");
                    }
                    for k in -3..=(g.order() as i64 + 1) {
                        assert_eq!(g.power(x, k), g.power_slow(x, k), "{g} {x}^{k}");
                    }
                }
            }
        }
    }
}
