//! Singularities with local model `{x^a = y^b}`.
//!
//! The family covers the cusps `T(a,b)` with `gcd(a,b) = 1` and the ordinary
//! `m`-fold points `(m,m)`, which is every singularity the obstructions below
//! need. Text forms are `T(a,b)` and `O(m)` (shorthand for `(m,m)`).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A singularity of type `{x^a = y^b}` with `2 <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SingularityType {
    a: u32,
    b: u32,
}

impl SingularityType {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 2 || b < a {
            return Err(Error::InvalidSingularity { a, b });
        }
        Ok(Self { a, b })
    }

    /// Torus-type singularity; the exponents may be given in either order.
    pub fn torus(a: u32, b: u32) -> Result<Self> {
        Self::new(a.min(b), a.max(b))
    }

    /// Ordinary `m`-fold point: `m` smooth pairwise transverse branches.
    pub fn ordinary(m: u32) -> Result<Self> {
        Self::new(m, m)
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn is_cusp(&self) -> bool {
        self.branch_count() == 1
    }

    /// `mu = (a-1)(b-1)`, used for every pair `(a,b)`, coprime or not.
    pub fn milnor_number(&self) -> i64 {
        (self.a as i64 - 1) * (self.b as i64 - 1)
    }

    pub fn branch_count(&self) -> i64 {
        self.a.gcd(&self.b) as i64
    }

    /// `mu + beta - 1`: the local correction in the singular adjunction
    /// formula. Always even and at least 2.
    pub fn adjunction_contribution(&self) -> i64 {
        self.milnor_number() + self.branch_count() - 1
    }

    pub fn delta_invariant(&self) -> i64 {
        self.adjunction_contribution() / 2
    }

    /// Seifert genus of the torus knot `T(a,b)`.
    pub fn link_genus(&self) -> Result<i64> {
        let branches = self.branch_count();
        if branches != 1 {
            return Err(Error::NotAKnot {
                a: self.a,
                b: self.b,
                branches: branches as u32,
            });
        }
        Ok(self.milnor_number() / 2)
    }

    /// Intersection multiplicity of a generic line through the point.
    pub fn multiplicity(&self) -> i64 {
        self.a as i64
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "O({})", self.a)
        } else {
            write!(f, "T({},{})", self.a, self.b)
        }
    }
}

impl FromStr for SingularityType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("expected T(a,b) or O(m), found {s:?}");
        let (tag, rest) = s.split_at(s.find('(').ok_or_else(bad)?);
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let parsed = match (tag.trim(), nums.as_slice()) {
            ("T", [a, b]) => SingularityType::torus(*a, *b),
            ("O", [m]) => SingularityType::ordinary(*m),
            _ => return Err(bad()),
        };
        parsed.map_err(|e| e.to_string())
    }
}

impl TryFrom<String> for SingularityType {
    type Error = String;

    fn try_from(value: String) -> std::result::Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<SingularityType> for String {
    fn from(value: SingularityType) -> Self {
        value.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u32, b: u32) -> SingularityType {
        SingularityType::torus(a, b).unwrap()
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(t(2, 3).milnor_number(), 2);
        assert_eq!(t(2, 2).milnor_number(), 1);
        // ordinary triple point: delta = 3, beta = 3, mu = 2*3 - 3 + 1
        assert_eq!(t(3, 3).milnor_number(), 2 * 3 - 3 + 1);
    }

    #[test]
    fn branches() {
        assert_eq!(t(2, 3).branch_count(), 1);
        assert_eq!(t(2, 2).branch_count(), 2);
        assert_eq!(t(4, 6).branch_count(), 2);
    }

    #[test]
    fn contributions_and_delta() {
        assert_eq!(t(2, 3).adjunction_contribution(), 2);
        assert_eq!(t(2, 2).adjunction_contribution(), 2);
        assert_eq!(t(3, 3).adjunction_contribution(), 6);
        assert_eq!(t(2, 3).delta_invariant(), 1);
        assert_eq!(t(2, 2).delta_invariant(), 1);
        assert_eq!(t(3, 3).delta_invariant(), 3);
    }

    #[test]
    fn link_genus_of_knots_only() {
        assert_eq!(t(2, 3).link_genus(), Ok(1));
        assert_eq!(t(2, 5).link_genus(), Ok(2));
        assert_eq!(t(3, 22).link_genus(), Ok(21));
        assert!(matches!(
            t(2, 4).link_genus(),
            Err(Error::NotAKnot { branches: 2, .. })
        ));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(t(2, 5).multiplicity(), 2);
        assert_eq!(t(3, 3).multiplicity(), 3);
        assert_eq!(t(2, 3).multiplicity(), 2);
    }

    #[test]
    fn rejects_invalid() {
        assert!(SingularityType::new(1, 3).is_err());
        assert!(SingularityType::new(3, 2).is_err());
        assert!(SingularityType::ordinary(1).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!("T(2,3)".parse::<SingularityType>().unwrap(), t(2, 3));
        assert_eq!(" T( 5 , 2 ) ".parse::<SingularityType>().unwrap(), t(2, 5));
        assert_eq!("O(3)".parse::<SingularityType>().unwrap(), t(3, 3));
        assert_eq!(t(3, 3).to_string(), "O(3)");
        assert_eq!(t(3, 22).to_string(), "T(3,22)");
        for bad in ["T(2)", "O(1)", "X(2,3)", "T(2,3", "T(a,b)", ""] {
            assert!(bad.parse::<SingularityType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sweep_invariants() {
        for a in 2..=30u32 {
            for b in a..=30u32 {
                let s = t(a, b);
                let c = s.adjunction_contribution();
                assert!(c >= 2 && c % 2 == 0, "{s}");
                assert_eq!(s.milnor_number(), 2 * s.delta_invariant() - s.branch_count() + 1);
                assert_eq!(s.branch_count() == 1, a.gcd(&b) == 1);
                assert_eq!(s.link_genus().is_ok(), a.gcd(&b) == 1);
                let m = s.multiplicity() as f64;
                assert!(m <= (s.milnor_number() as f64).sqrt() + 1.0 + 1e-12);
            }
        }
    }
}
