use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, gcd};

/// The fixed field `Q(ζ_f)^K` of a subgroup `K ≤ (Z/f)^*`, with `f` the
/// conductor of the field. Two descriptors are equal exactly when the
/// fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianFieldDescriptor {
    conductor: u64,
    /// All elements of the kernel, sorted.
    kernel: Vec<u64>,
}

impl Serialize for AbelianFieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianFieldDescriptor", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("kernel_generators", &self.kernel_generators())?;
        st.end()
    }
}

/// Closure of `gens` in `(Z/n)^*`, sorted.
fn unit_subgroup(n: u64, gens: &[u64]) -> Vec<u64> {
    let mut elems = vec![1 % n];
    let mut frontier = 0;
    while frontier < elems.len() {
        let x = elems[frontier];
        frontier += 1;
        for &g in gens {
            let y = (x as u128 * g as u128 % n as u128) as u64;
            if !elems.contains(&y) {
                elems.push(y);
            }
        }
    }
    elems.sort_unstable();
    elems
}

/// `Q(ζ_n)^Γ` for `Γ = ⟨gens⟩ ≤ (Z/n)^*`, reduced to its conductor.
///
/// The conductor is the least `f | n` such that the kernel of
/// `(Z/n)^* → (Z/f)^*` lies in `Γ`; the descriptor's kernel is the image of
/// `Γ` modulo `f`.
pub fn canonicalize_field(n: u64, gens: &[u64]) -> Result<AbelianFieldDescriptor> {
    if n == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let gens: Vec<u64> = gens.iter().map(|&g| g % n).collect();
    if let Some(&g) = gens.iter().find(|&&g| gcd(g, n) != 1 && n > 1) {
        return Err(Error::NotCoprime {
            value: g.to_string(),
            modulus: n.to_string(),
        });
    }
    let gamma = unit_subgroup(n, &gens);
    let units: Vec<u64> = (0..n).filter(|&x| gcd(x, n) == 1).collect();
    for f in divisors(n) {
        let kernel_in_gamma = units
            .iter()
            .filter(|&&x| x % f == 1 % f)
            .all(|x| gamma.binary_search(x).is_ok());
        if kernel_in_gamma {
            let mut kernel: Vec<u64> = gamma.iter().map(|&x| x % f).collect();
            kernel.sort_unstable();
            kernel.dedup();
            return Ok(AbelianFieldDescriptor { conductor: f, kernel });
        }
    }
    unreachable!("f = n always qualifies")
}

impl AbelianFieldDescriptor {
    pub fn rationals() -> Self {
        AbelianFieldDescriptor {
            conductor: 1,
            kernel: vec![0],
        }
    }

    /// `Q(ζ_n)`.
    pub fn cyclotomic(n: u64) -> Self {
        canonicalize_field(n, &[]).expect("n > 0")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn kernel(&self) -> &[u64] {
        &self.kernel
    }

    /// Greedy generating set: each kernel element, in increasing order, that
    /// is not in the span of the previous choices.
    pub fn kernel_generators(&self) -> Vec<u64> {
        let f = self.conductor;
        let mut gens: Vec<u64> = Vec::new();
        let mut span = unit_subgroup(f, &gens);
        for &x in &self.kernel {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = unit_subgroup(f, &gens);
            }
        }
        gens
    }

    /// `[F : Q] = φ(f) / |K|`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.kernel.len() as u64
    }

    /// Whether complex conjugation fixes the field.
    pub fn is_real(&self) -> bool {
        self.conductor <= 2 || self.kernel.binary_search(&(self.conductor - 1)).is_ok()
    }

    pub fn contains_field(&self, other: &AbelianFieldDescriptor) -> bool {
        // other ⊆ self iff, over the compositum modulus, Γ_self ⊆ Γ_other
        let l = self.conductor / gcd(self.conductor, other.conductor) * other.conductor;
        (0..l).filter(|&x| gcd(x, l) == 1).all(|x| {
            let in_self = self.kernel.binary_search(&(x % self.conductor)).is_ok();
            !in_self || other.kernel.binary_search(&(x % other.conductor)).is_ok()
        })
    }
}

impl fmt::Display for AbelianFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor <= 2 && self.kernel.len() <= 1 {
            return write!(f, "Q");
        }
        let gens = self.kernel_generators();
        if gens.is_empty() {
            write!(f, "Q(z{})", self.conductor)
        } else {
            let g: Vec<String> = gens.iter().map(u64::to_string).collect();
            write!(f, "Q(z{})^<{}>", self.conductor, g.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let q = canonicalize_field(4, &[1, 3]).unwrap();
        assert_eq!(q.conductor(), 1);
        assert_eq!(q.degree(), 1);
        assert_eq!(q, AbelianFieldDescriptor::rationals());
        let full = canonicalize_field(8, &[1]).unwrap();
        assert_eq!((full.conductor(), full.degree()), (8, 4));
        let real = canonicalize_field(8, &[1, 7]).unwrap();
        assert_eq!((real.conductor(), real.degree()), (8, 2));
        assert!(real.is_real());
        assert_eq!(real.kernel_generators(), vec![7]);
        assert!(canonicalize_field(8, &[2]).is_err());
    }

    #[test]
    fn conductor_drops_for_odd_twice() {
        // Q(ζ_6) = Q(ζ_3)
        assert_eq!(
            canonicalize_field(6, &[]).unwrap(),
            AbelianFieldDescriptor::cyclotomic(3)
        );
        // Q(ζ_12)^<5> = Q(ζ_3)? 5 ≡ 2 mod 3, 5 ≡ 1 mod 4: fixes Q(i)
        let f = canonicalize_field(12, &[5]).unwrap();
        assert_eq!(f, AbelianFieldDescriptor::cyclotomic(4));
        // Q(ζ_8)^<3> = Q(√-2)
        let f = canonicalize_field(8, &[3]).unwrap();
        assert_eq!((f.conductor(), f.degree(), f.is_real()), (8, 2, false));
    }

    #[test]
    fn containment() {
        let q = AbelianFieldDescriptor::rationals();
        let q8 = AbelianFieldDescriptor::cyclotomic(8);
        let real = canonicalize_field(8, &[7]).unwrap();
        assert!(q8.contains_field(&real));
        assert!(real.contains_field(&q));
        assert!(!real.contains_field(&AbelianFieldDescriptor::cyclotomic(4)));
    }
}
