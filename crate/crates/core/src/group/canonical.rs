use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::presentation::MetacyclicPresentation;
use crate::numtheory::{is_prime, require_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Epsilon {
    Minus,
    Plus,
}

impl Epsilon {
    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl From<Epsilon> for i8 {
    fn from(e: Epsilon) -> i8 {
        e.value() as i8
    }
}

impl TryFrom<i8> for Epsilon {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            _ => Err(format!("epsilon must be 1 or -1, got {v}")),
        }
    }
}

/// Parameters `(p, μ, ν, σ, ρ, ε)` of a metacyclic `p`-group
/// `⟨a, b | a^(p^μ) = 1, b^(p^ν) = a^(p^σ), a^b = a^(ε + p^ρ)⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalPParams {
    pub p: u64,
    pub mu: u32,
    pub nu: u32,
    pub sigma: u32,
    pub rho: u32,
    pub epsilon: Epsilon,
}

/// Reading of the `p = 2` lower bound on `ρ` in condition (A).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RhoFloor {
    /// `p = 2` and `μ <= 2` force `ρ >= 2`.
    MuAtMostTwo,
    /// `p = 2` and `μ >= 2` force `ρ >= 2`.
    MuAtLeastTwo,
}

/// Reading of the `ρ <= σ` clause in condition (C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuaternionClause {
    /// `ν <= 2` and `μ <= 3` force `ρ <= σ`.
    SmallNuSmallMu,
    /// `ν >= 2` and `μ >= 3` force `ρ <= σ`.
    LargeNuLargeMu,
    /// No such constraint.
    Omitted,
}

/// A choice of reading for the two ambiguous clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionParse {
    pub rho_floor: RhoFloor,
    pub quaternion: QuaternionClause,
}

impl ConditionParse {
    /// The reading under which valid tuples of each order are in bijection
    /// with isomorphism classes of metacyclic groups of that order. Selected
    /// by exhaustive comparison against brute-force isomorphism testing; see
    /// the `classification` integration test.
    pub const SELECTED: ConditionParse = ConditionParse {
        rho_floor: RhoFloor::MuAtLeastTwo,
        quaternion: QuaternionClause::LargeNuLargeMu,
    };

    pub fn all() -> Vec<ConditionParse> {
        let mut out = Vec::new();
        for rho_floor in [RhoFloor::MuAtMostTwo, RhoFloor::MuAtLeastTwo] {
            for quaternion in [
                QuaternionClause::SmallNuSmallMu,
                QuaternionClause::LargeNuLargeMu,
                QuaternionClause::Omitted,
            ] {
                out.push(ConditionParse {
                    rho_floor,
                    quaternion,
                });
            }
        }
        out
    }
}

impl Default for ConditionParse {
    fn default() -> Self {
        ConditionParse::SELECTED
    }
}

/// Per-clause outcome of the validity predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseReport {
    pub prime: bool,
    pub a: bool,
    pub b: bool,
    pub c_a: bool,
    pub c_b: bool,
}

impl ClauseReport {
    pub fn holds(&self) -> bool {
        self.prime && self.a && self.b && self.c_a && self.c_b
    }
}

impl CanonicalPParams {
    pub fn new(p: u64, mu: u32, nu: u32, sigma: u32, rho: u32, epsilon: Epsilon) -> Self {
        CanonicalPParams {
            p,
            mu,
            nu,
            sigma,
            rho,
            epsilon,
        }
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.mu + self.nu)
    }

    pub fn clause_report(&self, parse: ConditionParse) -> ClauseReport {
        let CanonicalPParams {
            p,
            mu,
            nu,
            sigma,
            rho,
            epsilon,
        } = *self;
        let rho_floor = match parse.rho_floor {
            RhoFloor::MuAtMostTwo => !(p == 2 && mu <= 2) || rho >= 2,
            RhoFloor::MuAtLeastTwo => !(p == 2 && mu >= 2) || rho >= 2,
        };
        let a = rho <= mu && (mu == 0 || rho >= 1) && rho_floor;
        let b =
            epsilon == Epsilon::Minus || (rho <= sigma && sigma <= mu && mu <= rho + sigma && sigma <= nu);
        let c_a = epsilon == Epsilon::Plus
            || (p == 2
                && 2 <= rho
                && rho <= mu
                && nu >= 1
                && mu <= sigma + 1
                && sigma <= mu
                && mu <= rho + nu
                && rho + nu != sigma);
        let c_b = epsilon == Epsilon::Plus
            || match parse.quaternion {
                QuaternionClause::SmallNuSmallMu => !(nu <= 2 && mu <= 3) || rho <= sigma,
                QuaternionClause::LargeNuLargeMu => !(nu >= 2 && mu >= 3) || rho <= sigma,
                QuaternionClause::Omitted => true,
            };
        ClauseReport {
            prime: is_prime(p),
            a,
            b,
            c_a,
            c_b,
        }
    }

    pub fn is_valid_with(&self, parse: ConditionParse) -> bool {
        self.clause_report(parse).holds()
    }

    pub fn is_valid(&self) -> bool {
        self.is_valid_with(ConditionParse::SELECTED)
    }

    /// `m = p^μ`, `n = p^ν`, `s = p^σ mod p^μ`, `r = (ε + p^ρ) mod p^μ`.
    /// Requires only that the result be a consistent presentation, so invalid
    /// tuples may still lower.
    pub fn to_presentation(&self) -> Result<MetacyclicPresentation> {
        require_prime(self.p)?;
        let m = self.p.checked_pow(self.mu).ok_or(Error::Overflow("p^mu"))?;
        let n = self.p.checked_pow(self.nu).ok_or(Error::Overflow("p^nu"))?;
        let s = self.p.checked_pow(self.sigma).map_or(0, |v| v % m);
        let rho_pow = self.p.checked_pow(self.rho).ok_or(Error::Overflow("p^rho"))? % m;
        let r = match self.epsilon {
            Epsilon::Plus => (1 + rho_pow) % m,
            Epsilon::Minus => (m + rho_pow - 1 % m) % m,
        };
        MetacyclicPresentation::new(m, n, s, r)
    }

    /// `to_presentation` restricted to valid tuples.
    pub fn presentation(&self) -> Result<MetacyclicPresentation> {
        if !self.is_valid() {
            return Err(Error::InvalidCanonical(self.to_string()));
        }
        self.to_presentation()
    }

    /// All tuples of order `p^k` valid under `parse`, sorted.
    pub fn enumerate(p: u64, k: u32, parse: ConditionParse) -> Vec<CanonicalPParams> {
        let mut out = Vec::new();
        for mu in 0..=k {
            let nu = k - mu;
            for sigma in 0..=mu {
                for rho in 0..=mu {
                    for epsilon in [Epsilon::Minus, Epsilon::Plus] {
                        let t = CanonicalPParams::new(p, mu, nu, sigma, rho, epsilon);
                        if t.is_valid_with(parse) {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Valid tuples (selected parse) of order `p^k` for `1 <= p^k <= bound`,
    /// by order then lexicographically.
    pub fn enumerate_up_to(p: u64, bound: u64) -> Vec<CanonicalPParams> {
        let mut out = Vec::new();
        let mut k = 0;
        while p.checked_pow(k).is_some_and(|q| q <= bound) {
            out.extend(Self::enumerate(p, k, ConditionParse::SELECTED));
            k += 1;
        }
        out
    }
}

impl fmt::Display for CanonicalPParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mcp({},{},{},{},{},{})",
            self.p,
            self.mu,
            self.nu,
            self.sigma,
            self.rho,
            self.epsilon.value()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_examples() {
        let dihedral = CanonicalPParams::new(2, 2, 1, 2, 2, Epsilon::Minus);
        assert!(dihedral.is_valid());
        assert!(CanonicalPParams::new(3, 1, 1, 1, 1, Epsilon::Plus).is_valid());
        let t = CanonicalPParams::new(3, 2, 1, 0, 1, Epsilon::Plus);
        assert!(!t.is_valid());
        assert!(!t.clause_report(ConditionParse::SELECTED).b);
    }

    #[test]
    fn quaternion_tuple_needs_the_resolved_reading() {
        let q8 = CanonicalPParams::new(2, 2, 1, 1, 2, Epsilon::Minus);
        assert!(q8.is_valid());
        let literal = ConditionParse {
            rho_floor: RhoFloor::MuAtMostTwo,
            quaternion: QuaternionClause::SmallNuSmallMu,
        };
        assert!(!q8.is_valid_with(literal));
    }

    #[test]
    fn lowering() {
        let q8 = CanonicalPParams::new(2, 2, 1, 1, 2, Epsilon::Minus);
        let g = q8.presentation().unwrap();
        assert_eq!((g.m(), g.n(), g.s(), g.r()), (4, 2, 2, 3));
        let trivial = CanonicalPParams::new(5, 0, 0, 0, 0, Epsilon::Plus);
        assert_eq!(trivial.presentation().unwrap().order(), 1);
    }

    #[test]
    fn epsilon_serializes_as_sign() {
        let t = CanonicalPParams::new(2, 2, 1, 2, 2, Epsilon::Minus);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"epsilon\":-1"), "{json}");
        let back: CanonicalPParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
