//! Orbit folding of an affine GCM under a nontransitive diagram automorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::autgroup::{is_transitive, DiagramAut};
use crate::error::{Error, Result};
use crate::gcm::{quotient_type, recognize_affine, AffineGCM, AffineType, Family, FiniteType, IntMatrix};

/// Folded diagram data. Nodes of `folded` are listed in the order of `reps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingResult {
    pub source: AffineType,
    pub sigma: String,
    pub reps: Vec<usize>,
    pub orbits: BTreeMap<usize, Vec<usize>>,
    pub defects: BTreeMap<usize, u8>,
    pub folded: IntMatrix,
    pub folded_type: AffineType,
    /// `folded[i][j] == catalog(folded_type)[π(i)][π(j)]`.
    pub recognition: Vec<usize>,
}

/// Orbit representatives (orbit minima, ascending) and the orbits themselves.
pub fn orbits(sigma: &DiagramAut, a: &AffineGCM) -> Result<(Vec<usize>, BTreeMap<usize, Vec<usize>>)> {
    sigma.check_preserves(a)?;
    let mut seen = vec![false; a.size()];
    let mut reps = Vec::new();
    let mut map = BTreeMap::new();
    for i in a.nodes() {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut j = sigma.apply(i);
        while j != i {
            seen[j] = true;
            orbit.push(j);
            j = sigma.apply(j);
        }
        orbit.sort_unstable();
        reps.push(i);
        map.insert(i, orbit);
    }
    Ok((reps, map))
}

/// `s_i = 3 − Σ_{p∈O(i)} a_{p,i}`, cross-checked against the orbit shape:
/// pairwise orthogonal gives 1, an adjacent simply-laced pair gives 2.
pub fn defect(a: &AffineGCM, orbit: &[usize]) -> Result<u8> {
    let i = orbit[0];
    let s = 3 - orbit.iter().map(|&p| a.entries[p][i]).sum::<i64>();
    let orthogonal = orbit.iter().all(|&p| orbit.iter().all(|&q| p == q || a.entries[p][q] == 0));
    let adjacent_pair = orbit.len() == 2 && a.entries[orbit[0]][orbit[1]] == -1 && a.entries[orbit[1]][orbit[0]] == -1;
    let by_case = match (orthogonal, adjacent_pair) {
        (true, false) => 1,
        (false, true) => 2,
        _ => return Err(Error::Invariant(format!("orbit {orbit:?} of {} is neither orthogonal nor an adjacent pair", a.label))),
    };
    if s != by_case {
        return Err(Error::Invariant(format!("defect of orbit {orbit:?} in {}: sum rule gives {s}, shape gives {by_case}", a.label)));
    }
    Ok(by_case as u8)
}

/// Folds `A` along `σ`: `brva_ij = s_i Σ_{p∈O(i)} a_{pj}` over representatives.
pub fn fold(a: &AffineGCM, sigma: &DiagramAut) -> Result<FoldingResult> {
    if is_transitive(sigma, a)? {
        return Err(Error::Transitive);
    }
    let (reps, orbit_map) = orbits(sigma, a)?;
    let mut defects = BTreeMap::new();
    for (&r, orbit) in &orbit_map {
        defects.insert(r, defect(a, orbit)?);
    }
    let folded: IntMatrix = reps
        .iter()
        .map(|i| {
            let s = defects[i] as i64;
            reps.iter().map(|&j| s * orbit_map[i].iter().map(|&p| a.entries[p][j]).sum::<i64>()).collect()
        })
        .collect();
    let rec = recognize_affine(&folded)
        .ok_or_else(|| Error::Invariant(format!("fold of {} by {sigma} is not affine: {folded:?}", a.label)))?;
    Ok(FoldingResult {
        source: a.label,
        sigma: sigma.to_string(),
        reps,
        orbits: orbit_map,
        defects,
        folded,
        folded_type: rec.gcm.label,
        recognition: rec.permutation,
    })
}

impl FoldingResult {
    /// Relative type from the folded data: `BC_{|brvI|−1}` if some `s_i = 2`,
    /// else the quotient type of the folded matrix.
    pub fn relative_type(&self) -> FiniteType {
        if self.defects.values().any(|&s| s == 2) {
            FiniteType::new(Family::BC, self.reps.len() as u32 - 1)
        } else {
            quotient_type(self.folded_type)
        }
    }
}

/// Relative type of the multiloop algebra determined by `(A, σ)`.
///
/// Transitive `σ` only occurs for rotations of `A_ℓ^(1)` of full order, where
/// `gcd(q, ℓ+1) = 1` and the algebra is anisotropic.
pub fn relative_type(a: &AffineGCM, sigma: &DiagramAut) -> Result<FiniteType> {
    if is_transitive(sigma, a)? {
        return Ok(FiniteType::anisotropic());
    }
    Ok(fold(a, sigma)?.relative_type())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::rotation;
    use crate::gcm::gcm_for;

    fn gcm(s: &str) -> AffineGCM {
        gcm_for(s.parse().unwrap())
    }

    #[test]
    fn d5_fork_swap() {
        let d5 = gcm("D_5^(1)");
        let s = DiagramAut::parse(6, "(0 1)(4 5)").unwrap();
        let (reps, orb) = orbits(&s, &d5).unwrap();
        assert_eq!(reps, vec![0, 2, 3, 4]);
        assert_eq!(orb[&0], vec![0, 1]);
        assert_eq!(orb[&4], vec![4, 5]);
        let f = fold(&d5, &s).unwrap();
        assert_eq!(f.defects[&0], 1);
        assert_eq!(f.folded_type.to_string(), "D_4^(2)");
        assert_eq!(f.relative_type().to_string(), "B_3");
    }

    #[test]
    fn d5_flip() {
        let d5 = gcm("D_5^(1)");
        let s = DiagramAut::parse(6, "(0 5)(1 4)(2 3)").unwrap();
        let f = fold(&d5, &s).unwrap();
        assert_eq!(f.reps, vec![0, 1, 2]);
        assert_eq!(f.defects[&2], 2);
        assert_eq!(relative_type(&d5, &s).unwrap().to_string(), "BC_2");
    }

    #[test]
    fn identity_fold_is_noop() {
        for t in AffineType::all_up_to(6) {
            let a = gcm_for(t);
            let f = fold(&a, &DiagramAut::identity(a.size())).unwrap();
            assert_eq!(f.folded, a.entries);
            assert_eq!(f.folded_type, t);
            assert!(f.defects.values().all(|&s| s == 1));
        }
    }

    #[test]
    fn a3_reflection_by_hand() {
        let a3 = gcm("A_3^(1)");
        let s = DiagramAut::parse(4, "(1 3)").unwrap();
        let f = fold(&a3, &s).unwrap();
        // O(0)={0}, O(1)={1,3}, O(2)={2}; s_1 = 1 since a_13 = 0
        let a = &a3.entries;
        let expect = vec![
            vec![a[0][0], a[0][1], a[0][2]],
            vec![a[1][0] + a[3][0], a[1][1] + a[3][1], a[1][2] + a[3][2]],
            vec![a[2][0], a[2][1], a[2][2]],
        ];
        assert_eq!(f.folded, expect);
        assert_eq!(f.folded, vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]]);
    }

    #[test]
    fn rotations() {
        let a5 = gcm("A_5^(1)");
        assert_eq!(relative_type(&a5, &rotation(6).pow(2)).unwrap().to_string(), "A_1");
        let a4 = gcm("A_4^(1)");
        assert!(relative_type(&a4, &rotation(5).pow(2)).unwrap().is_anisotropic());
        assert_eq!(fold(&a4, &rotation(5)), Err(Error::Transitive));
    }

    #[test]
    fn json_shape() {
        let d5 = gcm("D_5^(1)");
        let f = fold(&d5, &DiagramAut::parse(6, "(0 1)(4 5)").unwrap()).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["folded_type"], "D_4^(2)");
        assert_eq!(v["orbits"]["0"], serde_json::json!([0, 1]));
        let back: FoldingResult = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
    }
}
