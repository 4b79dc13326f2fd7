//! Embedded lookup data: relative types of the table rows, Tits indices and
//! SEARS labels, and the reduced SEARS list of null dimension 2.

use crate::autgroup::RowTag;
use crate::gcm::{AffineType, Family, FiniteType};

use super::Label;

fn ft(family: Family, rank: u32) -> FiniteType {
    FiniteType::new(family, rank)
}

/// `gcd(q, n)` with `gcd(0, n) = n`.
pub(crate) fn rot_gcd(q: u32, n: u32) -> u32 {
    num_integer::gcd(q, n)
}

/// Column 4 of the relative-type tables for `(type, row)`; `None` if the row
/// does not exist for that type.
pub fn table_relative_type(t: AffineType, tag: RowTag) -> Option<FiniteType> {
    use Family::*;
    use RowTag::*;
    let k = t.rank;
    let even = k % 2 == 0;
    let out = match (t.family, t.twist, tag) {
        (A, 1, Rot(q)) if q <= (k + 1) / 2 => ft(A, rot_gcd(q, k + 1) - 1),
        (A, 1, TwoA) if k >= 2 => {
            if even {
                ft(BC, k / 2)
            } else {
                ft(C, (k + 1) / 2)
            }
        }
        (A, 1, TwoB) if k >= 3 && !even => ft(BC, (k - 1) / 2),
        (B, 1, One) => ft(B, k),
        (B, 1, Two) => ft(B, k - 1),
        (C, 1, One) => ft(C, k),
        (C, 1, Two) => {
            if even {
                ft(C, k / 2)
            } else {
                ft(BC, (k - 1) / 2)
            }
        }
        (D, 1, One) => ft(D, k),
        (D, 1, TwoA) => ft(B, k - 1),
        (D, 1, TwoB) => ft(B, k - 2),
        (D, 1, TwoC) if k >= 5 => {
            if even {
                ft(C, k / 2)
            } else {
                ft(BC, (k - 1) / 2)
            }
        }
        (D, 1, Three) if k == 4 => ft(G, 2),
        (D, 1, Four) => ft(BC, (k - 2) / 2),
        (E, 1, One) => ft(E, k),
        (E, 1, Two) if k == 6 || k == 7 => ft(F, 4),
        (E, 1, Three) if k == 6 => ft(G, 2),
        (F, 1, One) => ft(F, 4),
        (G, 1, One) => ft(G, 2),
        (A, 2, One) => {
            if even {
                ft(BC, k / 2)
            } else {
                ft(C, (k + 1) / 2)
            }
        }
        (A, 2, Two) if !even => ft(BC, (k - 1) / 2),
        (D, 2, One) => ft(B, k - 1),
        (D, 2, Two) => ft(BC, (k - 1) / 2),
        (D, 3, One) => ft(G, 2),
        (E, 2, One) => ft(F, 4),
        _ => return None,
    };
    Some(out)
}

fn prefix(p: u8) -> &'static str {
    match p {
        1 => "¹",
        2 => "²",
        3 => "³",
        _ => "",
    }
}

fn index(p: u8, family: &str, k: u32, r: u32, sup: &str) -> String {
    let sup = match sup.chars().count() {
        0 => String::new(),
        1 => format!("^{sup}"),
        _ => format!("^{{{sup}}}"),
    };
    format!("{}{family}_{{{k},{r}}}{sup}", prefix(p))
}

/// Tits index of an untwisted label.
pub(crate) fn index_for(label: &Label) -> Option<String> {
    use Family::*;
    use RowTag::*;
    let k = label.rank;
    let even = k % 2 == 0;
    let s = match (label.family, label.tag) {
        (A, Rot(q)) => {
            let r = rot_gcd(q, k + 1) - 1;
            index(1, "A", k, r, &format!("({})", (k + 1) / (r + 1)))
        }
        (A, TwoA) if even => index(2, "A", k, k / 2, "(1)"),
        (A, TwoA) => index(2, "A", k, (k + 1) / 2, "(1)"),
        (A, TwoB) => index(2, "A", k, (k - 1) / 2, "(1)"),
        (B, One) => index(0, "B", k, k, ""),
        (B, Two) => index(0, "B", k, k - 1, ""),
        (C, One) => index(0, "C", k, k, "(1)"),
        (C, Two) if even => index(0, "C", k, k / 2, "(2)"),
        (C, Two) => index(0, "C", k, (k - 1) / 2, "(2)"),
        (D, One) => index(1, "D", k, k, "(1)"),
        (D, TwoA) => index(2, "D", k, k - 1, "(1)"),
        (D, TwoB) => index(1, "D", k, k - 2, "(1)"),
        (D, TwoC) if even => index(1, "D", k, k / 2, "(2)"),
        (D, TwoC) => index(2, "D", k, (k - 1) / 2, "(2)"),
        (D, Three) => index(3, "D", 4, 2, "2"),
        (D, Four) if even => index(2, "D", k, (k - 2) / 2, "(2)"),
        (D, Four) => index(1, "D", k, (k - 3) / 2, "(2)"),
        (E, One) if k == 6 => index(1, "E", 6, 6, "0"),
        (E, Two) if k == 6 => index(2, "E", 6, 4, "2"),
        (E, Three) => index(1, "E", 6, 2, "16"),
        (E, One) if k == 7 => index(0, "E", 7, 7, "0"),
        (E, Two) => index(0, "E", 7, 4, "9"),
        (E, One) => index(0, "E", 8, 8, "0"),
        (F, One) => index(0, "F", 4, 4, "0"),
        (G, One) => index(0, "G", 2, 2, "0"),
        _ => return None,
    };
    Some(s)
}

fn sears(family: &str, rank: u32, rest: &str) -> String {
    format!("{family}_{rank}^{rest}")
}

/// SEARS label of an untwisted label: `None` for a row that does not exist,
/// `Some(None)` for anisotropic rows.
pub(crate) fn sears_for(label: &Label) -> Option<Option<String>> {
    use Family::*;
    use RowTag::*;
    let k = label.rank;
    let even = k % 2 == 0;
    let s = match (label.family, label.tag) {
        (A, Rot(q)) => {
            let r = rot_gcd(q, k + 1) - 1;
            return Some((r >= 1).then(|| sears("A", r, "(1,1)")));
        }
        (A, TwoA) if even => sears("BC", k / 2, "(2,1)"),
        (A, TwoA) => sears("C", (k + 1) / 2, "(1,2)"),
        (A, TwoB) => sears("BC", (k - 1) / 2, "(2,2)(2)"),
        (B, One) => sears("B", k, "(1,1)"),
        (B, Two) => sears("B", k - 1, "(2,2)*"),
        (C, One) => sears("C", k, "(1,1)"),
        // C_1^{(1,1)*} is read as A_1^{(1,1)*}
        (C, Two) if k == 2 => sears("A", 1, "(1,1)*"),
        (C, Two) if even => sears("C", k / 2, "(1,1)*"),
        (C, Two) => sears("BC", (k - 1) / 2, "(1,1)"),
        (D, One) => sears("D", k, "(1,1)"),
        (D, TwoA) => sears("B", k - 1, "(1,2)"),
        (D, TwoB) => sears("B", k - 2, "(2,2)"),
        (D, TwoC) if even => sears("C", k / 2, "(2,2)"),
        (D, TwoC) => sears("BC", (k - 1) / 2, "(2,2)(1)"),
        (D, Three) => sears("G", 2, "(1,3)"),
        (D, Four) if even => sears("BC", (k - 2) / 2, "(2,4)"),
        (D, Four) => sears("BC", (k - 3) / 2, "(4,4)"),
        (E, One) => sears("E", k, "(1,1)"),
        (E, Two) if k == 6 => sears("F", 4, "(1,2)"),
        (E, Two) => sears("F", 4, "(2,2)"),
        (E, Three) => sears("G", 2, "(3,3)"),
        (F, One) => sears("F", 4, "(1,1)"),
        (G, One) => sears("G", 2, "(1,1)"),
        _ => return None,
    };
    Some(Some(s))
}

/// One entry of the reduced SEARS list: base family, superscript, and the
/// admissible ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearsListEntry {
    pub family: &'static str,
    pub marking: &'static str,
    pub min_rank: u32,
    pub max_rank: Option<u32>,
}

const fn entry(family: &'static str, marking: &'static str, min_rank: u32, max_rank: Option<u32>) -> SearsListEntry {
    SearsListEntry { family, marking, min_rank, max_rank }
}

/// The complete nonredundant list of reduced SEARS of null dimension 2.
pub const SEARS_LIST: &[SearsListEntry] = &[
    entry("A", "(1,1)", 1, None),
    entry("A", "(1,1)*", 1, Some(1)),
    entry("B", "(1,1)", 3, None),
    entry("B", "(1,2)", 3, None),
    entry("B", "(2,2)", 2, None),
    entry("B", "(2,2)*", 2, None),
    entry("C", "(1,1)", 2, None),
    entry("C", "(1,2)", 2, None),
    entry("C", "(2,2)", 3, None),
    entry("C", "(1,1)*", 2, None),
    entry("BC", "(2,1)", 1, None),
    entry("BC", "(2,4)", 1, None),
    entry("BC", "(2,2)(1)", 2, None),
    entry("BC", "(2,2)(2)", 1, None),
    entry("BC", "(1,1)", 1, None),
    entry("BC", "(4,4)", 1, None),
    entry("D", "(1,1)", 4, None),
    entry("E", "(1,1)", 6, Some(8)),
    entry("F", "(1,1)", 4, Some(4)),
    entry("F", "(1,2)", 4, Some(4)),
    entry("F", "(2,2)", 4, Some(4)),
    entry("G", "(1,1)", 2, Some(2)),
    entry("G", "(1,3)", 2, Some(2)),
];

/// Splits `"BC_2^(2,2)(1)"` into `("BC", 2, "(2,2)(1)")`.
pub fn parse_sears(s: &str) -> Option<(&str, u32, &str)> {
    let (fam, rest) = s.split_once('_')?;
    let (rank, marking) = rest.split_once('^')?;
    Some((fam, rank.parse().ok()?, marking))
}

/// The list entry matching a SEARS label, if any.
pub fn sears_list_entry(s: &str) -> Option<SearsListEntry> {
    let (fam, rank, marking) = parse_sears(s)?;
    SEARS_LIST.iter().copied().find(|e| {
        e.family == fam && e.marking == marking && rank >= e.min_rank && e.max_rank.map_or(true, |m| rank <= m)
    })
}
