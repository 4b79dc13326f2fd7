//! Diagram automorphisms of affine GCMs and their conjugacy classes.
//!
//! `Aut(A)` is small for every affine matrix (cyclic of order ≤ 2, dihedral,
//! `S_3` or `S_4`), so enumeration and conjugacy tests are exhaustive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcm::{matrix_isomorphisms, AffineGCM, Family};

/// A permutation of the node set, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramAut {
    perm: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(n: usize) -> Self {
        DiagramAut { perm: (0..n).collect() }
    }

    pub fn from_images(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(DiagramAut { perm })
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                if i >= n {
                    return Err(Error::Parse(format!("node {i} out of range 0..{n}")));
                }
                if std::mem::replace(&mut touched[i], true) {
                    return Err(Error::Parse(format!("node {i} appears twice")));
                }
                perm[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(DiagramAut { perm })
    }

    /// Parses cycle notation such as `"(0 1)(4 5)"` or `"(0,5)(1,4)(2,3)"`.
    /// Fixed points may be omitted; the empty string and `"()"` are the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let cycle = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad node {s:?} in {text:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> DiagramAut {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAut { perm: inv }
    }

    pub fn pow(&self, e: i64) -> DiagramAut {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(DiagramAut::identity(self.len()), |acc, _| acc.compose(&base))
    }

    /// Disjoint cycles of length ≥ 2, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order as a permutation (lcm of cycle lengths).
    pub fn order(&self) -> u32 {
        self.cycles().iter().fold(1u32, |acc, c| num_integer::lcm(acc, c.len() as u32))
    }

    /// Checks `a_{σ(i),σ(j)} = a_{ij}` and reports the first violated entry.
    pub fn check_preserves(&self, a: &AffineGCM) -> Result<()> {
        let n = a.size();
        if self.len() != n {
            return Err(Error::NotAnAutomorphism(format!("permutation acts on {} nodes but {} has {n}", self.len(), a.label)));
        }
        for i in 0..n {
            for j in 0..n {
                let (si, sj) = (self.perm[i], self.perm[j]);
                if a.entries[si][sj] != a.entries[i][j] {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{self} on {}: a[{i}][{j}] = {} but a[{si}][{sj}] = {}",
                        a.label, a.entries[i][j], a.entries[si][sj]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiagramAut {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// The full group `Aut(A)`, identity first, lexicographic by image array.
pub fn automorphism_group(a: &AffineGCM) -> Vec<DiagramAut> {
    let mut group: Vec<DiagramAut> = matrix_isomorphisms(&a.entries, &a.entries, usize::MAX)
        .into_iter()
        .map(|perm| DiagramAut { perm })
        .collect();
    group.sort();
    group
}

/// Whether `⟨σ⟩` acts transitively on the nodes.
pub fn is_transitive(sigma: &DiagramAut, a: &AffineGCM) -> Result<bool> {
    sigma.check_preserves(a)?;
    let n = a.size();
    let mut i = sigma.apply(0);
    let mut len = 1;
    while i != 0 {
        i = sigma.apply(i);
        len += 1;
    }
    Ok(len == n)
}

pub fn are_conjugate(x: &DiagramAut, y: &DiagramAut, group: &[DiagramAut]) -> bool {
    x.order() == y.order() && group.iter().any(|g| &g.compose(x).compose(&g.inverse()) == y)
}

/// Conjugacy classes by exhaustive conjugation, in order of first element.
pub fn conjugacy_classes(group: &[DiagramAut]) -> Vec<Vec<DiagramAut>> {
    let mut classes: Vec<Vec<DiagramAut>> = Vec::new();
    for x in group {
        if classes.iter().any(|c| c.contains(x)) {
            continue;
        }
        let mut class: Vec<DiagramAut> = group.iter().map(|g| g.compose(x).compose(&g.inverse())).collect();
        class.sort();
        class.dedup();
        classes.push(class);
    }
    classes
}

/// Row tag from column 3 of the relative-type tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RowTag {
    Rot(u32),
    One,
    Two,
    TwoA,
    TwoB,
    TwoC,
    Three,
    Four,
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Rot(q) => write!(f, "rot({q})"),
            RowTag::One => f.write_str("1"),
            RowTag::Two => f.write_str("2"),
            RowTag::TwoA => f.write_str("2a"),
            RowTag::TwoB => f.write_str("2b"),
            RowTag::TwoC => f.write_str("2c"),
            RowTag::Three => f.write_str("3"),
            RowTag::Four => f.write_str("4"),
        }
    }
}

impl std::str::FromStr for RowTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "1" => RowTag::One,
            "2" => RowTag::Two,
            "2a" => RowTag::TwoA,
            "2b" => RowTag::TwoB,
            "2c" => RowTag::TwoC,
            "3" => RowTag::Three,
            "4" => RowTag::Four,
            _ => {
                let q = s
                    .strip_prefix("rot(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|q| q.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown row tag {s:?}")))?;
                RowTag::Rot(q)
            }
        })
    }
}

impl From<RowTag> for String {
    fn from(t: RowTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for RowTag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A row of the relative-type tables: tag plus canonical representative `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub tag: RowTag,
    pub representative: DiagramAut,
}

/// The rotation `ρ = (0, 1, …, ℓ)` of `A_ℓ^(1)`.
pub fn rotation(n: usize) -> DiagramAut {
    DiagramAut { perm: (0..n).map(|i| (i + 1) % n).collect() }
}

fn transpositions(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> DiagramAut {
    let cycles: Vec<Vec<usize>> = pairs.into_iter().filter(|(i, j)| i != j).map(|(i, j)| vec![i, j]).collect();
    DiagramAut::from_cycles(n, &cycles).expect("disjoint transpositions")
}

fn first_of_order(group: &[DiagramAut], order: u32) -> DiagramAut {
    group.iter().find(|g| g.order() == order).cloned().expect("element of the requested order")
}

/// Column 2 of the relative-type tables for `A`, one representative per row.
pub fn table_rows(a: &AffineGCM) -> Vec<TableRow> {
    let t = a.label;
    let n = a.size();
    let l = t.rank as usize;
    let id = DiagramAut::identity(n);
    let row = |tag, representative| TableRow { tag, representative };
    let group = automorphism_group(a);
    match (t.family, t.twist) {
        (Family::A, 1) => {
            let rho = rotation(n);
            let mut rows: Vec<TableRow> = (0..=(l + 1) / 2).map(|q| row(RowTag::Rot(q as u32), rho.pow(q as i64))).collect();
            if l >= 2 {
                rows.push(row(RowTag::TwoA, transpositions(n, (1..=l / 2).map(|i| (i, l + 1 - i)))));
            }
            if l >= 3 && l % 2 == 1 {
                rows.push(row(RowTag::TwoB, transpositions(n, (0..=(l - 1) / 2).map(|i| (i, l - i)))));
            }
            rows
        }
        (Family::B, 1) => vec![row(RowTag::One, id), row(RowTag::Two, transpositions(n, [(0, 1)]))],
        (Family::C, 1) => vec![row(RowTag::One, id), row(RowTag::Two, transpositions(n, (0..=(l - 1) / 2).map(|i| (i, l - i))))],
        (Family::D, 1) => {
            let mut rows = vec![
                row(RowTag::One, id),
                row(RowTag::TwoA, transpositions(n, [(l - 1, l)])),
                row(RowTag::TwoB, transpositions(n, [(0, 1), (l - 1, l)])),
            ];
            if l >= 5 {
                rows.push(row(RowTag::TwoC, transpositions(n, (0..=(l - 1) / 2).map(|i| (i, l - i)))));
            }
            if l == 4 {
                rows.push(row(RowTag::Three, first_of_order(&group, 3)));
            }
            rows.push(row(RowTag::Four, first_of_order(&group, 4)));
            rows
        }
        (Family::E, 1) if l == 6 => {
            vec![row(RowTag::One, id), row(RowTag::Two, first_of_order(&group, 2)), row(RowTag::Three, first_of_order(&group, 3))]
        }
        (Family::E, 1) if l == 7 => vec![row(RowTag::One, id), row(RowTag::Two, first_of_order(&group, 2))],
        (Family::A, 2) if l % 2 == 1 => vec![row(RowTag::One, id), row(RowTag::Two, first_of_order(&group, 2))],
        (Family::D, 2) => vec![row(RowTag::One, id), row(RowTag::Two, transpositions(n, (0..=(l - 2) / 2).map(|i| (i, l - 1 - i))))],
        _ => vec![row(RowTag::One, id)],
    }
}

/// Result of canonicalizing `σ` against the table rows of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    /// Index of the matching row within [`table_rows`].
    pub class_id: usize,
    pub row: TableRow,
}

/// The unique table row whose representative is conjugate to `σ` in `Aut(A)`.
pub fn conjugacy_class(sigma: &DiagramAut, a: &AffineGCM) -> Result<ConjugacyClass> {
    sigma.check_preserves(a)?;
    let group = automorphism_group(a);
    let rows = table_rows(a);
    let mut hits = rows.iter().enumerate().filter(|(_, r)| are_conjugate(sigma, &r.representative, &group));
    let (class_id, row) = hits.next().ok_or_else(|| Error::Invariant(format!("{sigma} on {} matches no table row", a.label)))?;
    if let Some((_, other)) = hits.next() {
        return Err(Error::Invariant(format!("{sigma} on {} matches rows {} and {}", a.label, row.tag, other.tag)));
    }
    Ok(ConjugacyClass { class_id, row: row.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::{gcm_for, AffineType};

    fn gcm(s: &str) -> AffineGCM {
        gcm_for(s.parse().unwrap())
    }

    #[test]
    fn cycle_notation() {
        let s = DiagramAut::parse(6, "(0 1)(4 5)").unwrap();
        assert_eq!(s.images(), &[1, 0, 2, 3, 5, 4]);
        assert_eq!(s.to_string(), "(0 1)(4 5)");
        assert_eq!(DiagramAut::parse(6, "(0,5)(1,4)(2,3)").unwrap().to_string(), "(0 5)(1 4)(2 3)");
        assert!(DiagramAut::parse(3, "").unwrap().is_identity());
        assert!(DiagramAut::parse(3, "()").unwrap().is_identity());
        assert!(DiagramAut::parse(3, "(0 1)(1 2)").is_err());
        assert!(DiagramAut::parse(3, "(0 7)").is_err());
        assert!(DiagramAut::parse(3, "0 1").is_err());
    }

    #[test]
    fn a1_group() {
        let g = automorphism_group(&gcm("A_1^(1)"));
        assert_eq!(g.len(), 2);
        assert!(g[0].is_identity());
        assert_eq!(g[1].to_string(), "(0 1)");
    }

    #[test]
    fn d4_group_is_s4_on_outer_nodes() {
        let g = automorphism_group(&gcm("D_4^(1)"));
        assert_eq!(g.len(), 24);
        assert!(g.iter().all(|s| s.apply(2) == 2));
        assert_eq!(conjugacy_classes(&g).len(), 5);
    }

    #[test]
    fn dihedral_sizes() {
        for l in 2..=12u32 {
            let a = gcm(&format!("A_{l}^(1)"));
            assert_eq!(automorphism_group(&a).len(), 2 * (l as usize + 1));
        }
    }

    #[test]
    fn transitivity() {
        let a2 = gcm("A_2^(1)");
        assert!(is_transitive(&DiagramAut::parse(3, "(0 1 2)").unwrap(), &a2).unwrap());
        let a3 = gcm("A_3^(1)");
        assert!(!is_transitive(&DiagramAut::parse(4, "(0 2)(1 3)").unwrap(), &a3).unwrap());
        let d5 = gcm("D_5^(1)");
        assert!(!is_transitive(&DiagramAut::parse(6, "(0 1)(4 5)").unwrap(), &d5).unwrap());
        assert!(matches!(is_transitive(&DiagramAut::parse(6, "(0 3)").unwrap(), &d5), Err(Error::NotAnAutomorphism(_))));
    }

    #[test]
    fn d5_flip_is_row_2c() {
        let d5 = gcm("D_5^(1)");
        let c = conjugacy_class(&DiagramAut::parse(6, "(0 5)(1 4)(2 3)").unwrap(), &d5).unwrap();
        assert_eq!(c.row.tag, RowTag::TwoC);
    }

    #[test]
    fn rotation_normalization() {
        let a5 = gcm("A_5^(1)");
        let rho = rotation(6);
        let c = conjugacy_class(&rho.pow(4), &a5).unwrap();
        assert_eq!(c.row.tag, RowTag::Rot(2));
        assert_eq!(c.row.representative, rho.pow(2));
    }

    #[test]
    fn identity_is_first_row() {
        for t in AffineType::all_up_to(8) {
            let a = gcm_for(t);
            let c = conjugacy_class(&DiagramAut::identity(a.size()), &a).unwrap();
            assert_eq!(c.class_id, 0);
            assert!(matches!(c.row.tag, RowTag::One | RowTag::Rot(0)));
        }
    }

    #[test]
    fn non_member_rejected() {
        let d5 = gcm("D_5^(1)");
        let err = conjugacy_class(&DiagramAut::parse(6, "(0 2)").unwrap(), &d5).unwrap_err();
        assert!(err.to_string().contains("a[0][1]"), "{err}");
    }
}
