//! Exhaustive verification suites. Each returns a report with the number of
//! cases checked and the first counterexample, if any.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autgroup::{automorphism_group, conjugacy_class, conjugacy_classes, is_transitive, table_rows};
use crate::classify::{classify, lookup_index, lookup_sears, table_relative_type, Label};
use crate::error::Result;
use crate::exactnum::{cyc_root_of_unity, rational, CycNumber};
use crate::folding::{fold, relative_type};
use crate::gcm::{gcm_for, AffineType};
use crate::quantumtorus::{
    anisotropy_witness, centre_component_dim, commutator_space_nonzero, gl_decomposition_holds, iota, pauli, qt_mul,
    verify_quantum_iso, GradedElement, ResidueClass,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 6] = ["iota", "pauli", "quantum-iso", "anisotropy", "folding", "tables"];

/// Parameters shared by the suites; each suite reads only what it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub max_m: u32,
    pub degree_box: i64,
    pub max_rank: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { max_m: 6, degree_box: 4, max_rank: 12, samples: 50, seed: 2024 }
    }
}

pub fn run_suite(name: &str, p: SuiteParams) -> Option<Result<SuiteReport>> {
    Some(match name {
        "iota" => Ok(iota_suite(p.max_m)),
        "pauli" => pauli_suite(p.max_m, p.degree_box),
        "quantum-iso" => quantum_iso_suite(p.max_m, p.degree_box),
        "anisotropy" => anisotropy_suite(p.samples, p.max_m.max(2), p.seed),
        "folding" => folding_suite(p.max_rank),
        "tables" => tables_suite(p.max_rank),
        _ => return None,
    })
}

/// `ι_m` is an involution, preserves each stratum `U(m, g)`, and fixes `1̄`.
pub fn iota_suite(max_m: u32) -> SuiteReport {
    let mut r = SuiteReport::new("iota");
    for m in 1..=max_m {
        let one = ResidueClass::new(m, 1);
        r.check(iota(one) == one, || format!("ι_{m}(1) = {}", iota(one).value()));
        for k in 0..m {
            let x = ResidueClass::new(m, k as i64);
            let y = iota(x);
            r.check(iota(y) == x, || format!("ι_{m}² ({k}) = {}", iota(y).value()));
            r.check(y.stratum() == x.stratum(), || format!("ι_{m}({k}) = {} leaves U({m},{})", y.value(), x.stratum()));
        }
    }
    r
}

fn unit_monomials(theta: &CycNumber) -> Result<Vec<GradedElement>> {
    [((0, 0), CycNumber::one()), ((1, 0), CycNumber::one()), ((0, 1), CycNumber::from_int(-1)), ((2, -1), CycNumber::from_rational(rational(1, 2)))]
        .into_iter()
        .map(|(d, c)| GradedElement::scalar(theta, d, c))
        .collect()
}

/// Quantum torus arithmetic and Pauli identities for `θ = ζ_m`, `m ≤ max_m`:
/// the defining relation, associativity on monomial triples in the box,
/// `p_m(u)^m = uI`, `d_m(u)^m = I` when `u^m = 1`, `pd = θdp`, the centre
/// per degree, and `gl_g = R₂·1 ⊕ sl_g` per degree for `g ≤ 3`.
pub fn pauli_suite(max_m: u32, b: i64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("pauli");
    for m in 1..=max_m {
        let theta = cyc_root_of_unity(m, 1);
        let x1 = GradedElement::generator(1, &theta, 1)?;
        let x2 = GradedElement::generator(1, &theta, 2)?;
        r.check(qt_mul(&x1, &x2)? == qt_mul(&x2, &x1)?.scale(&theta), || format!("x1x2 ≠ θx2x1 for m = {m}"));

        let small = b.min(2);
        let degs: Vec<(i64, i64)> = (-small..=small).flat_map(|i| (-small..=small).map(move |j| (i, j))).collect();
        for &a in &degs {
            for &c in degs.iter().step_by(3) {
                for &e in degs.iter().step_by(5) {
                    let (u, v, w) = (GradedElement::scalar(&theta, a, CycNumber::one())?, GradedElement::scalar(&theta, c, CycNumber::one())?, GradedElement::scalar(&theta, e, CycNumber::one())?);
                    let ok = qt_mul(&qt_mul(&u, &v)?, &w)? == qt_mul(&u, &qt_mul(&v, &w)?)?;
                    r.check(ok, || format!("associativity fails at {a:?}·{c:?}·{e:?}, m = {m}"));
                }
            }
        }

        let n = m as usize;
        for u in unit_monomials(&theta)? {
            let (d, p) = pauli(n, &u)?;
            let scalar_u = GradedElement::from_blocks(
                &(0..n).map(|i| (0..n).map(|j| if i == j { Ok(u.clone()) } else { GradedElement::zero(1, &theta) }).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?,
            )?;
            r.check(p.pow(m as i64)? == scalar_u, || format!("p_{m}({u})^m ≠ uI"));
            if u.pow(m as i64)? == GradedElement::one(1, &theta)? {
                r.check(d.pow(m as i64)? == GradedElement::one(n, &theta)?, || format!("d_{m}({u})^m ≠ I"));
            }
        }
        let one = GradedElement::one(1, &theta)?;
        let (_, p) = pauli(n, &one)?;
        let (dt, _) = pauli(n, &GradedElement::scalar(&theta, (0, 0), theta.clone())?)?;
        let d = dt.inverse()?;
        r.check(qt_mul(&p, &d)? == qt_mul(&d, &p)?.scale(&theta), || format!("pd ≠ θdp for m = {m}"));

        for i in -b..=b {
            for j in -b..=b {
                let central = i % m as i64 == 0 && j % m as i64 == 0;
                let dim = centre_component_dim(&theta, (i, j))?;
                r.check((dim == 1) == central, || format!("centre of Q_θ, m = {m}, has dimension {dim} at ({i},{j})"));
                if m <= 4 {
                    for g in 1..=3 {
                        let ok = gl_decomposition_holds(g, &theta, (i, j))?;
                        r.check(ok, || format!("gl_{g} ≠ R₂1 ⊕ sl_{g} at ({i},{j}), m = {m}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

pub fn quantum_iso_suite(max_m: u32, b: i64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("quantum-iso");
    for m in 1..=max_m {
        let rep = verify_quantum_iso(m, b)?;
        r.check(rep.passed(), || format!("m = {m}: {}", rep.first_failure.clone().unwrap_or_default()));
    }
    Ok(r)
}

/// Random nonzero homogeneous `x ∈ sl_1(Q_θ)` with `θ` a primitive root of
/// order `m ∈ [2, max_m]`; a witness must exist and satisfy the power identity
/// for `r ≤ 5`.
pub fn anisotropy_suite(samples: usize, max_m: u32, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("anisotropy");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < samples {
        let m: u32 = rng.gen_range(2..=max_m);
        let e = loop {
            let e: u32 = rng.gen_range(1..m);
            if num_integer::gcd(e, m) == 1 {
                break e;
            }
        };
        let theta = cyc_root_of_unity(m, e as i64);
        let d = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if !commutator_space_nonzero(&theta, d)? {
            continue;
        }
        let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den: i64 = rng.gen_range(1..=5);
        let c = &CycNumber::from_rational(rational(num, den)) * &cyc_root_of_unity(m, rng.gen_range(0..m as i64));
        let x = GradedElement::scalar(&theta, d, c)?;
        drawn += 1;
        match anisotropy_witness(&x, 5, 3) {
            Ok(w) => r.check(w.holds(), || format!("power identity fails for x = {x}, θ = {theta}")),
            Err(err) => r.check(false, || format!("x = {x}: {err}")),
        }
    }
    Ok(r)
}

/// Every nontransitive `(A, σ)` at rank ≤ `max_rank` folds to an affine GCM;
/// defects satisfy `s(3 − s) = 2` (the sum rule and the shape analysis are
/// cross-checked inside [`fold`]).
pub fn folding_suite(max_rank: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("folding");
    for t in AffineType::all_up_to(max_rank) {
        let a = gcm_for(t);
        for sigma in automorphism_group(&a) {
            if is_transitive(&sigma, &a)? {
                continue;
            }
            match fold(&a, &sigma) {
                Ok(f) => r.check(f.defects.values().all(|&s| s * (3 - s) == 2), || format!("{t} {sigma}: defects {:?}", f.defects)),
                Err(e) => r.check(false, || format!("{t} {sigma}: {e}")),
            }
        }
    }
    Ok(r)
}

/// Table rows against computation: conjugacy classes biject with rows, the
/// folded relative type equals the tabulated one, and every untwisted row has
/// an index and a SEARS entry.
pub fn tables_suite(max_rank: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("tables");
    for t in AffineType::all_up_to(max_rank) {
        let a = gcm_for(t);
        let group = automorphism_group(&a);
        let rows = table_rows(&a);
        let classes = conjugacy_classes(&group);
        r.check(classes.len() == rows.len(), || format!("{t}: {} classes but {} rows", classes.len(), rows.len()));
        for class in &classes {
            let hit = conjugacy_class(&class[0], &a);
            r.check(hit.is_ok(), || format!("{t}: class of {} matches no unique row", class[0]));
        }
        for row in &rows {
            let computed = relative_type(&a, &row.representative)?;
            let expected = table_relative_type(t, row.tag);
            r.check(expected == Some(computed), || format!("{t} row {}: computed {computed}, table {expected:?}", row.tag));
            let rec = classify(&a, &row.representative)?;
            if t.is_untwisted() {
                let label = Label::new(t, row.tag)?;
                r.check(rec.label == label, || format!("{t} row {} classified as {}", row.tag, rec.label));
                r.check(lookup_index(&label).is_ok() && lookup_sears(&label).is_ok(), || format!("{label}: missing index or SEARS entry"));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(iota_suite(30).passed());
        assert!(pauli_suite(3, 2).unwrap().passed());
        assert!(quantum_iso_suite(2, 2).unwrap().passed());
        assert!(anisotropy_suite(5, 4, 1).unwrap().passed());
        assert!(folding_suite(5).unwrap().passed());
        let t = tables_suite(6).unwrap();
        assert!(t.passed(), "{t:?}");
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", SuiteParams::default()).is_none());
    }
}
