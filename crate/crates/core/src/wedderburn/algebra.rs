use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::finite::{FiniteGroup, Subgroup};

/// An element of `QG` as integer numerators over a common positive
/// denominator, indexed by element index. Always stored in lowest terms, so
/// structural equality is equality in `QG`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAlgebraElement {
    num: Vec<i128>,
    den: i128,
}

const OVERFLOW: Error = Error::Overflow("group algebra arithmetic");

fn checked_lcm(a: i128, b: i128) -> Result<i128> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(OVERFLOW)
}

impl GroupAlgebraElement {
    pub fn zero(size: usize) -> Self {
        GroupAlgebraElement {
            num: vec![0; size],
            den: 1,
        }
    }

    pub fn basis(size: usize, g: u32) -> Self {
        let mut e = Self::zero(size);
        e.num[g as usize] = 1;
        e
    }

    pub fn identity(size: usize) -> Self {
        Self::basis(size, 0)
    }

    /// `Ĥ = |H|⁻¹ Σ_{h ∈ H} h`.
    pub fn hat(size: usize, h: &Subgroup) -> Self {
        let mut e = Self::zero(size);
        for x in h.iter() {
            e.num[x as usize] = 1;
        }
        e.den = h.order() as i128;
        e.normalized()
    }

    fn normalized(mut self) -> Self {
        let g = self.num.iter().fold(self.den, |acc, &x| acc.gcd(&x));
        if g > 1 {
            for x in &mut self.num {
                *x /= g;
            }
            self.den /= g;
        }
        if self.num.iter().all(|&x| x == 0) {
            self.den = 1;
        }
        self
    }

    pub fn size(&self) -> usize {
        self.num.len()
    }

    pub fn coefficient(&self, g: u32) -> Ratio<i128> {
        Ratio::new(self.num[g as usize], self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(g, _)| g as u32)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i128) -> Result<Self> {
        let den = checked_lcm(self.den, other.den)?;
        let (fa, fb) = (den / self.den, den / other.den);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(&a, &b)| {
                let x = a.checked_mul(fa).ok_or(OVERFLOW)?;
                let y = b
                    .checked_mul(fb)
                    .ok_or(OVERFLOW)?
                    .checked_mul(sign)
                    .ok_or(OVERFLOW)?;
                x.checked_add(y).ok_or(OVERFLOW)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAlgebraElement { num, den }.normalized())
    }

    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Result<Self> {
        let mut num = vec![0i128; self.size()];
        let right: Vec<(u32, i128)> = other.support().map(|y| (y, other.num[y as usize])).collect();
        for x in self.support() {
            let cx = self.num[x as usize];
            for &(y, cy) in &right {
                let slot = &mut num[g.mul(x, y) as usize];
                let term = cx.checked_mul(cy).ok_or(OVERFLOW)?;
                *slot = slot.checked_add(term).ok_or(OVERFLOW)?;
            }
        }
        let den = self.den.checked_mul(other.den).ok_or(OVERFLOW)?;
        Ok(GroupAlgebraElement { num, den }.normalized())
    }

    /// `g · self` for a group element `g`.
    pub fn left_mul_group(&self, x: u32, g: &FiniteGroup) -> Self {
        let mut num = vec![0i128; self.size()];
        for y in self.support() {
            num[g.mul(x, y) as usize] = self.num[y as usize];
        }
        GroupAlgebraElement { num, den: self.den }
    }

    /// `self^x = x⁻¹ · self · x`.
    pub fn conjugate(&self, x: u32, g: &FiniteGroup) -> Self {
        let mut num = vec![0i128; self.size()];
        for y in self.support() {
            num[g.conj(y, x) as usize] = self.num[y as usize];
        }
        GroupAlgebraElement { num, den: self.den }
    }

    /// Commutes with `a` and `b`, hence with all of `QG`.
    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        [g.a(), g.b()].iter().all(|&x| self.conjugate(x, g) == *self)
    }

    pub fn is_idempotent(&self, g: &FiniteGroup) -> Result<bool> {
        Ok(self.mul(self, g)? == *self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::MetacyclicPresentation;

    #[test]
    fn hats() {
        let q8 = FiniteGroup::new(MetacyclicPresentation::new(4, 2, 2, 3).unwrap(), 64).unwrap();
        let n = q8.order();
        assert_eq!(
            GroupAlgebraElement::hat(n, &q8.trivial_subgroup()),
            GroupAlgebraElement::identity(n)
        );
        let whole = GroupAlgebraElement::hat(n, &q8.whole());
        for x in q8.elements() {
            assert_eq!(whole.left_mul_group(x, &q8), whole);
            assert_eq!(whole.coefficient(x), Ratio::new(1, 8));
        }
        let a2 = q8.cyclic(q8.pow(q8.a(), 2));
        let h = GroupAlgebraElement::hat(n, &a2);
        assert_eq!(h.coefficient(0), Ratio::new(1, 2));
        assert_eq!(h.coefficient(q8.pow(q8.a(), 2)), Ratio::new(1, 2));
        assert!(h.is_idempotent(&q8).unwrap());
        assert!(h.is_central(&q8));
        let b = GroupAlgebraElement::hat(n, &q8.cyclic(q8.b()));
        assert!(b.is_idempotent(&q8).unwrap());
        assert!(b.is_central(&q8));
        let s3 = FiniteGroup::new(MetacyclicPresentation::new(3, 2, 0, 2).unwrap(), 64).unwrap();
        let c2 = GroupAlgebraElement::hat(6, &s3.cyclic(s3.b()));
        assert!(!c2.is_central(&s3));
    }

    #[test]
    fn ring_axioms_spot_check() {
        let g = FiniteGroup::new(MetacyclicPresentation::new(7, 3, 0, 2).unwrap(), 64).unwrap();
        let n = g.order();
        let x = GroupAlgebraElement::basis(n, 3)
            .add(&GroupAlgebraElement::hat(n, &g.cyclic(g.b())))
            .unwrap();
        let y = GroupAlgebraElement::basis(n, 8)
            .sub(&GroupAlgebraElement::hat(n, &g.cyclic(g.a())))
            .unwrap();
        let z = GroupAlgebraElement::basis(n, 12);
        let lhs = x.mul(&y, &g).unwrap().mul(&z, &g).unwrap();
        let rhs = x.mul(&y.mul(&z, &g).unwrap(), &g).unwrap();
        assert_eq!(lhs, rhs);
        let dist = x.mul(&y.add(&z).unwrap(), &g).unwrap();
        assert_eq!(dist, x.mul(&y, &g).unwrap().add(&x.mul(&z, &g).unwrap()).unwrap());
        assert!(x.sub(&x).unwrap().is_zero());
    }
}
