//! Classification of `(A, σ)` into the canonical labels of the untwisted
//! table, with Tits index and SEARS lookups.

mod tables;

pub use tables::{parse_sears, sears_list_entry, table_relative_type, SearsListEntry, SEARS_LIST};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autgroup::{conjugacy_class, table_rows, DiagramAut, RowTag};
use crate::error::{Error, Result};
use crate::exactnum::{cyc_order, CycNumber};
use crate::folding::relative_type;
use crate::gcm::{gcm_for, AffineGCM, AffineType, Family, FiniteType};
use crate::quantumtorus::rotation_realization;

/// Canonical label `X_k^(m,tag)`, e.g. `A_5^(1,rot(2))` or `D_5^(1,2b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Label {
    pub family: Family,
    pub rank: u32,
    pub twist: u32,
    pub tag: RowTag,
}

impl Label {
    pub fn new(t: AffineType, tag: RowTag) -> Result<Self> {
        let label = Label { family: t.family, rank: t.rank, twist: t.twist, tag };
        if table_relative_type(t, tag).is_none() {
            return Err(Error::InvalidLabel(format!("{label} is not a row of the tables")));
        }
        Ok(label)
    }

    pub fn affine_type(&self) -> AffineType {
        AffineType { family: self.family, rank: self.rank, twist: self.twist }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}^({},{})", self.family, self.rank, self.twist, self.tag)
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel(format!("expected X_k^(m,tag), got {s:?}"));
        let (head, rest) = s.trim().split_once("^(").ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (twist, tag) = inner.split_once(',').ok_or_else(bad)?;
        let t: AffineType = format!("{head}^({twist})").parse().map_err(|_| bad())?;
        Label::new(t, tag.parse().map_err(|_| bad())?)
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for Label {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `sl_g(Q_θ)` parameters of a rotation row, with `θ = ζ_{order}^{exponent}`
/// written over the conductor `ℓ + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSummary {
    pub g: u32,
    pub theta_exponent: u32,
    pub theta_conductor: u32,
    pub theta_order: u32,
}

/// The input row for twisted matrices, before resolution to an untwisted label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRow {
    pub affine_type: AffineType,
    pub tag: RowTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub label: Label,
    pub absolute_type: FiniteType,
    pub relative_type: FiniteType,
    #[serde(rename = "condition_AA")]
    pub condition_aa: bool,
    pub rotation_params: Option<RotationSummary>,
    pub index_label: String,
    pub sears_label: Option<String>,
    /// Canonical representative of the input's row, in cycle notation on the
    /// input diagram.
    pub representative: String,
    pub source: Option<SourceRow>,
}

fn is_aa(absolute: FiniteType, relative: FiniteType) -> bool {
    absolute.family == Family::A && relative.family == Family::A
}

fn record(label: Label, relative: FiniteType, representative: String, source: Option<SourceRow>) -> Result<ClassificationRecord> {
    let absolute = FiniteType::new(label.family, label.rank);
    let rotation_params = match label.tag {
        RowTag::Rot(q) => {
            let r = rotation_realization(label.rank, q as i64);
            Some(RotationSummary { g: r.g, theta_exponent: r.theta_exponent, theta_conductor: label.rank + 1, theta_order: r.theta_order })
        }
        _ => None,
    };
    Ok(ClassificationRecord {
        label,
        absolute_type: absolute,
        relative_type: relative,
        condition_aa: is_aa(absolute, relative),
        rotation_params,
        index_label: lookup_index(&label)?,
        sears_label: lookup_sears(&label)?,
        representative,
        source,
    })
}

/// Classifies the multiloop algebra of `(A, σ)`.
///
/// `σ` is first matched to its table row by conjugacy. For twisted `A` the
/// result carries the unique untwisted label with the same absolute and
/// relative types outside condition (AA).
pub fn classify(a: &AffineGCM, sigma: &DiagramAut) -> Result<ClassificationRecord> {
    let class = conjugacy_class(sigma, a)?;
    let relative = relative_type(a, sigma)?;
    let rep = class.row.representative.to_string();
    if a.label.is_untwisted() {
        return record(Label::new(a.label, class.row.tag)?, relative, rep, None);
    }
    let absolute = a.label.absolute_type();
    let untwisted = AffineType::new(absolute.family, absolute.rank, 1)?;
    let matches: Vec<Label> = table_rows(&gcm_for(untwisted))
        .into_iter()
        .filter_map(|row| {
            let rel = table_relative_type(untwisted, row.tag)?;
            (rel == relative && !is_aa(absolute, rel)).then_some(Label { family: untwisted.family, rank: untwisted.rank, twist: 1, tag: row.tag })
        })
        .collect();
    match matches.as_slice() {
        [label] => record(*label, relative, rep, Some(SourceRow { affine_type: a.label, tag: class.row.tag })),
        _ => Err(Error::Invariant(format!("{} row {} matches {} untwisted labels", a.label, class.row.tag, matches.len()))),
    }
}

/// Two records describe isomorphic algebras iff their canonical labels agree.
pub fn are_isomorphic(r1: &ClassificationRecord, r2: &ClassificationRecord) -> bool {
    r1.label == r2.label
}

/// `sl_{g₁}(Q_{θ₁}) ≅ sl_{g₂}(Q_{θ₂})` iff `g₁ = g₂` and `θ₁ = θ₂^{±1}`.
pub fn matrix_iso_criterion(g1: u32, theta1: &CycNumber, g2: u32, theta2: &CycNumber) -> Result<bool> {
    for t in [theta1, theta2] {
        if cyc_order(t)?.is_none() {
            return Err(Error::NotRootOfUnity(t.to_string()));
        }
    }
    Ok(g1 == g2 && (theta1 == theta2 || Some(theta1.clone()) == theta2.inv()))
}

/// Every record of the untwisted table for ranks up to `max_rank`, grouped by
/// family and ordered by rank, then row.
pub fn enumerate(max_rank: u32) -> Result<Vec<ClassificationRecord>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in 1..=max_rank {
            let Ok(t) = AffineType::new(family, rank, 1) else { continue };
            let a = gcm_for(t);
            for row in table_rows(&a) {
                out.push(classify(&a, &row.representative)?);
            }
        }
    }
    Ok(out)
}

fn untwisted(label: &Label) -> Result<()> {
    if label.twist != 1 {
        return Err(Error::InvalidLabel(format!("{label}: index and SEARS are tabulated for untwisted labels")));
    }
    Ok(())
}

/// Tits index of the algebra with this label.
pub fn lookup_index(label: &Label) -> Result<String> {
    untwisted(label)?;
    tables::index_for(label).ok_or_else(|| Error::InvalidLabel(label.to_string()))
}

/// SEARS label; `None` for anisotropic algebras.
pub fn lookup_sears(label: &Label) -> Result<Option<String>> {
    untwisted(label)?;
    tables::sears_for(label).ok_or_else(|| Error::InvalidLabel(label.to_string()))
}

/// Exceptional records: rows that exist only for one rank.
pub fn is_exceptional(label: &Label) -> bool {
    matches!(label.family, Family::E | Family::F | Family::G) || (label.family == Family::D && label.tag == RowTag::Three)
}

/// Infinite family of a non-exceptional label.
///
/// Rows are split by the parity of `k` exactly where the inner/outer
/// character of the Tits index changes with parity (`D` rows 2c and 4).
pub fn family_id(label: &Label) -> Option<String> {
    if is_exceptional(label) || label.twist != 1 {
        return None;
    }
    let tag = match label.tag {
        RowTag::Rot(_) => "rot".to_string(),
        t => t.to_string(),
    };
    let parity = match (label.family, label.tag) {
        (Family::D, RowTag::TwoC | RowTag::Four) => if label.rank % 2 == 0 { " even" } else { " odd" },
        _ => "",
    };
    Some(format!("{} {tag}{parity}", label.family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::rotation;
    use crate::exactnum::cyc_root_of_unity;

    fn gcm(s: &str) -> AffineGCM {
        gcm_for(s.parse().unwrap())
    }

    #[test]
    fn label_grammar() {
        let l: Label = "A_5^(1,rot(2))".parse().unwrap();
        assert_eq!(l.tag, RowTag::Rot(2));
        assert_eq!(l.to_string(), "A_5^(1,rot(2))");
        assert_eq!("D_5^(1,2b)".parse::<Label>().unwrap().to_string(), "D_5^(1,2b)");
        assert!("D_4^(1,2c)".parse::<Label>().is_err());
        assert!("A_5^(1,rot(4))".parse::<Label>().is_err());
        assert!("nonsense".parse::<Label>().is_err());
    }

    #[test]
    fn d5_fork_swap_record() {
        let r = classify(&gcm("D_5^(1)"), &DiagramAut::parse(6, "(0 1)(4 5)").unwrap()).unwrap();
        assert_eq!(r.label.to_string(), "D_5^(1,2b)");
        assert_eq!(r.absolute_type.to_string(), "D_5");
        assert_eq!(r.relative_type.to_string(), "B_3");
        assert!(!r.condition_aa);
    }

    #[test]
    fn twisted_resolution() {
        let r = classify(&gcm("D_4^(3)"), &DiagramAut::identity(3)).unwrap();
        assert_eq!(r.label.to_string(), "D_4^(1,3)");
        let r = classify(&gcm("A_6^(2)"), &DiagramAut::identity(4)).unwrap();
        assert_eq!(r.label.to_string(), "A_6^(1,2a)");
        assert_eq!(r.source.unwrap().affine_type.to_string(), "A_6^(2)");
    }

    #[test]
    fn rotation_record() {
        let a5 = gcm("A_5^(1)");
        let r = classify(&a5, &rotation(6).pow(2)).unwrap();
        assert_eq!(r.label.to_string(), "A_5^(1,rot(2))");
        assert!(r.condition_aa);
        let p = r.rotation_params.unwrap();
        assert_eq!((p.g, p.theta_exponent), (2, 2));
        let r4 = classify(&a5, &rotation(6).pow(4)).unwrap();
        assert!(are_isomorphic(&r, &r4));
        let a = classify(&a5, &table_rows(&a5).iter().find(|r| r.tag == RowTag::TwoA).unwrap().representative).unwrap();
        let b = classify(&a5, &table_rows(&a5).iter().find(|r| r.tag == RowTag::TwoB).unwrap().representative).unwrap();
        assert!(!are_isomorphic(&a, &b));
    }

    #[test]
    fn anisotropic_record() {
        let r = classify(&gcm("A_4^(1)"), &rotation(5)).unwrap();
        assert!(r.relative_type.is_anisotropic());
        assert_eq!(r.sears_label, None);
    }

    #[test]
    fn iso_criterion() {
        let z3 = cyc_root_of_unity(3, 1);
        assert!(matrix_iso_criterion(2, &z3, 2, &z3.pow(2)).unwrap());
        assert!(!matrix_iso_criterion(2, &cyc_root_of_unity(5, 1), 2, &cyc_root_of_unity(5, 2)).unwrap());
        assert!(!matrix_iso_criterion(1, &CycNumber::one(), 2, &CycNumber::one()).unwrap());
        assert!(matrix_iso_criterion(1, &CycNumber::from_int(2), 1, &CycNumber::one()).is_err());
    }

    #[test]
    fn lookups() {
        let l = |s: &str| s.parse::<Label>().unwrap();
        assert_eq!(lookup_index(&l("E_7^(1,2)")).unwrap(), "E_{7,4}^9");
        assert_eq!(lookup_index(&l("D_6^(1,4)")).unwrap(), "²D_{6,2}^{(2)}");
        assert_eq!(lookup_index(&l("A_5^(1,rot(2))")).unwrap(), "¹A_{5,1}^{(3)}");
        assert_eq!(lookup_sears(&l("D_4^(1,3)")).unwrap().as_deref(), Some("G_2^(1,3)"));
        assert_eq!(lookup_sears(&l("C_2^(1,2)")).unwrap().as_deref(), Some("A_1^(1,1)*"));
        assert_eq!(lookup_sears(&l("A_4^(1,rot(2))")).unwrap(), None);
        assert!(lookup_index(&l("D_4^(3,1)")).is_err());
    }

    #[test]
    fn record_json() {
        let r = classify(&gcm("E_6^(2)"), &DiagramAut::identity(5)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["label"], "E_6^(1,2)");
        assert_eq!(v["relative_type"], "F_4");
        assert_eq!(v["condition_AA"], false);
        let back: ClassificationRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sears_column_against_the_list() {
        let mut hit = vec![false; SEARS_LIST.len()];
        let mut outside = Vec::new();
        for r in enumerate(12).unwrap() {
            let Some(s) = r.sears_label else { continue };
            match SEARS_LIST.iter().position(|e| Some(*e) == sears_list_entry(&s)) {
                Some(i) => hit[i] = true,
                None => outside.push(s),
            }
        }
        // the one table entry with no counterpart in the list
        assert_eq!(outside, ["G_2^(3,3)"]);
        let missed: Vec<_> = SEARS_LIST.iter().zip(&hit).filter(|(_, h)| !**h).map(|(e, _)| e).collect();
        assert!(missed.is_empty(), "{missed:?}");
    }

    #[test]
    fn census_families() {
        let records = enumerate(8).unwrap();
        assert_eq!(records.iter().filter(|r| is_exceptional(&r.label)).count(), 9);
        let families: std::collections::BTreeSet<_> = records.iter().filter_map(|r| family_id(&r.label)).collect();
        assert_eq!(families.len(), 14);
    }
}
