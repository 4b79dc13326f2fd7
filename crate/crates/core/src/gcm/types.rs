use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Root-system family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub const ALL: [Family; 8] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G, Family::BC];

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.letter().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidLabel(format!("unknown family {s:?}")))
    }
}

/// A finite (possibly non-reduced) root-system type `X_k`.
///
/// Constructed through [`FiniteType::new`], which applies the low-rank
/// identifications `A_1 = B_1 = C_1`, `B_2 = C_2`, `A_3 = D_3` toward the
/// alphabetically earliest family. `A_0` is the anisotropic marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FiniteType {
    pub family: Family,
    pub rank: u32,
}

impl FiniteType {
    pub fn new(family: Family, rank: u32) -> Self {
        let family = match (family, rank) {
            (Family::B | Family::C, 1) => Family::A,
            (Family::C, 2) => Family::B,
            (Family::D, 3) => Family::A,
            _ => family,
        };
        FiniteType { family, rank }
    }

    pub fn anisotropic() -> Self {
        FiniteType { family: Family::A, rank: 0 }
    }

    pub fn is_anisotropic(&self) -> bool {
        self.family == Family::A && self.rank == 0
    }

    /// Whether `(family, rank)` names an actual irreducible root system (or `A_0`).
    pub fn is_valid(family: Family, rank: u32) -> bool {
        match family {
            Family::A => true,
            Family::B | Family::C | Family::BC => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

impl From<FiniteType> for String {
    fn from(t: FiniteType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for FiniteType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for FiniteType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (fam, rank) = s
            .trim()
            .split_once('_')
            .ok_or_else(|| Error::Parse(format!("expected X_k, got {s:?}")))?;
        let family: Family = fam.parse()?;
        let rank: u32 = rank.parse().map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        if !FiniteType::is_valid(family, rank) {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        Ok(FiniteType::new(family, rank))
    }
}

/// Affine type label `X_ℓ^(m)`, with `ℓ` the rank of the finite type `X_ℓ`
/// (so `A_ℓ^(2)` and `D_ℓ^(2)` have fewer than `ℓ + 1` nodes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct AffineType {
    pub family: Family,
    pub rank: u32,
    pub twist: u32,
}

impl AffineType {
    /// Validates the triple against the list of affine types.
    pub fn new(family: Family, rank: u32, twist: u32) -> Result<Self> {
        let ok = match (family, twist) {
            (Family::A, 1) => rank >= 1,
            (Family::B, 1) => rank >= 3,
            (Family::C, 1) => rank >= 2,
            (Family::D, 1) => rank >= 4,
            (Family::E, 1) => (6..=8).contains(&rank),
            (Family::F, 1) => rank == 4,
            (Family::G, 1) => rank == 2,
            (Family::A, 2) => rank >= 2 && rank != 3,
            (Family::D, 2) => rank >= 3,
            (Family::D, 3) => rank == 4,
            (Family::E, 2) => rank == 6,
            _ => false,
        };
        if ok {
            Ok(AffineType { family, rank, twist })
        } else {
            Err(Error::InvalidLabel(format!("{}_{}^({})", family, rank, twist)))
        }
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist == 1
    }

    /// Number of nodes of the affine diagram.
    pub fn node_count(&self) -> usize {
        let r = self.rank as usize;
        match (self.family, self.twist) {
            (_, 1) => r + 1,
            (Family::A, 2) if r % 2 == 0 => r / 2 + 1,
            (Family::A, 2) => (r + 1) / 2 + 1,
            (Family::D, 2) => r,
            (Family::D, 3) => 3,
            (Family::E, 2) => 5,
            _ => unreachable!("validated label"),
        }
    }

    /// The absolute type `X_ℓ` carried by the label.
    pub fn absolute_type(&self) -> FiniteType {
        FiniteType::new(self.family, self.rank)
    }

    /// Every valid label whose finite rank is at most `max_rank`.
    pub fn all_up_to(max_rank: u32) -> Vec<AffineType> {
        let mut out = Vec::new();
        for twist in 1..=3 {
            for family in Family::ALL {
                for rank in 1..=max_rank {
                    if let Ok(t) = AffineType::new(family, rank, twist) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}^({})", self.family, self.rank, self.twist)
    }
}

impl From<AffineType> for String {
    fn from(t: AffineType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for AffineType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for AffineType {
    type Err = Error;
    /// Parses `X_l^(m)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected X_l^(m), got {s:?}"));
        let s = s.trim();
        let (fam, rest) = s.split_once('_').ok_or_else(bad)?;
        let (rank, twist) = rest.split_once("^(").ok_or_else(bad)?;
        let twist = twist.strip_suffix(')').ok_or_else(bad)?;
        let family: Family = fam.parse()?;
        let rank: u32 = rank.parse().map_err(|_| bad())?;
        let twist: u32 = twist.parse().map_err(|_| bad())?;
        AffineType::new(family, rank, twist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_rank_identifications() {
        assert_eq!(FiniteType::new(Family::C, 1), FiniteType::new(Family::A, 1));
        assert_eq!(FiniteType::new(Family::B, 1), FiniteType::new(Family::A, 1));
        assert_eq!(FiniteType::new(Family::C, 2), FiniteType::new(Family::B, 2));
        assert_eq!(FiniteType::new(Family::D, 3), FiniteType::new(Family::A, 3));
        assert_eq!(FiniteType::new(Family::BC, 1).family, Family::BC);
    }

    #[test]
    fn label_parsing() {
        let t: AffineType = "D_5^(1)".parse().unwrap();
        assert_eq!(t, AffineType { family: Family::D, rank: 5, twist: 1 });
        assert_eq!(t.to_string(), "D_5^(1)");
        assert!("A_3^(2)".parse::<AffineType>().is_err());
        assert!("B_2^(1)".parse::<AffineType>().is_err());
        assert!("E_9^(1)".parse::<AffineType>().is_err());
        assert!("D_4^(3)".parse::<AffineType>().is_ok());
        assert!("garbage".parse::<AffineType>().is_err());
    }

    #[test]
    fn node_counts() {
        let n = |s: &str| s.parse::<AffineType>().unwrap().node_count();
        assert_eq!(n("A_2^(2)"), 2);
        assert_eq!(n("A_4^(2)"), 3);
        assert_eq!(n("A_5^(2)"), 4);
        assert_eq!(n("D_4^(2)"), 4);
        assert_eq!(n("D_4^(3)"), 3);
        assert_eq!(n("E_6^(2)"), 5);
        assert_eq!(n("E_8^(1)"), 9);
    }
}
