//! Degree-local computations: `[Q,Q]`, `sl_g(Q_θ)`, the centre, multiloop
//! eigenspaces, and the matrix realization of `Q_θ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::{qt_mul, GradedElement, Monomial};
use crate::error::{Error, Result};
use crate::exactnum::{cyc_root_of_unity, span_rank, CycMatrix, CycNumber};

fn box_degrees(b: i64) -> impl Iterator<Item = Monomial> {
    (-b..=b).flat_map(move |i| (-b..=b).map(move |j| (i, j)))
}

fn stack(mats: &[&CycMatrix]) -> CycMatrix {
    let cols = mats[0].cols();
    let rows = mats.iter().map(|m| m.rows()).sum();
    CycMatrix::from_vec(rows, cols, mats.iter().flat_map(|m| m.to_vec()).collect())
}

fn theta_pow(theta: &CycNumber, m: u32, e: i64) -> CycNumber {
    theta.pow(e.rem_euclid(m as i64))
}

fn order_of(theta: &CycNumber) -> Result<u32> {
    crate::exactnum::cyc_order(theta)?.ok_or_else(|| Error::NotRootOfUnity(theta.to_string()))
}

/// Whether `[Q_θ, Q_θ]` has a nonzero component at degree `d`.
///
/// Each component of `Q_θ` is one-dimensional, so this holds iff some
/// commutator `[x^a, x^{d−a}]` is nonzero. The scalar depends on exponents
/// only modulo `m`, so the splits `a ∈ [0, m)²` are exhaustive.
pub fn commutator_space_nonzero(theta: &CycNumber, d: Monomial) -> Result<bool> {
    let m = order_of(theta)? as i64;
    for a1 in 0..m {
        for a2 in 0..m {
            let x = GradedElement::scalar(theta, (a1, a2), CycNumber::one())?;
            let y = GradedElement::scalar(theta, (d.0 - a1, d.1 - a2), CycNumber::one())?;
            if !x.commutator(&y)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Coefficient matrices spanning `sl_g(Q_θ)` at degree `d`, found by solving
/// `tr(M) x^d ∈ [Q,Q]^d`.
fn sl_component(g: usize, theta: &CycNumber, d: Monomial) -> Result<Vec<CycMatrix>> {
    let full = commutator_space_nonzero(theta, d)?;
    let basis: Vec<Vec<CycNumber>> = if full {
        (0..g * g).map(|k| (0..g * g).map(|l| if k == l { CycNumber::one() } else { CycNumber::zero() }).collect()).collect()
    } else {
        // kernel of the trace functional on Mat_g
        let tr = CycMatrix::from_fn(1, g * g, |_, k| if k / g == k % g { CycNumber::one() } else { CycNumber::zero() });
        tr.nullspace()
    };
    Ok(basis.into_iter().map(|v| CycMatrix::from_vec(g, g, v)).collect())
}

pub fn sl_component_dim(g: usize, theta: &CycNumber, d: Monomial) -> Result<usize> {
    Ok(sl_component(g, theta, d)?.len())
}

/// Homogeneous basis of `sl_g(Q_θ)` over all degrees in `[−B, B]²`.
pub fn sl_basis(g: usize, theta: &CycNumber, b: i64) -> Result<Vec<GradedElement>> {
    let mut out = Vec::new();
    for d in box_degrees(b) {
        for mat in sl_component(g, theta, d)? {
            out.push(GradedElement::monomial(theta, d, mat)?);
        }
    }
    Ok(out)
}

/// Dimension of the centre of `Q_θ` at degree `d`: the solutions `c` of
/// `[c x^d, x₁] = [c x^d, x₂] = 0`.
pub fn centre_component_dim(theta: &CycNumber, d: Monomial) -> Result<usize> {
    let x = GradedElement::scalar(theta, d, CycNumber::one())?;
    let mut rows = Vec::new();
    for which in [1, 2] {
        let gen = GradedElement::generator(1, theta, which)?;
        let c = x.commutator(&gen)?;
        let deg = (d.0 + (which == 1) as i64, d.1 + (which == 2) as i64);
        rows.push(vec![c.component(deg)[(0, 0)].clone()]);
    }
    Ok(CycMatrix::from_rows(&rows, 1).nullspace().len())
}

/// `gl_g(Q_θ) = R₂·1 ⊕ sl_g(Q_θ)` at degree `d`, where `R₂` is spanned by
/// the monomials with degree in `mZ²`.
pub fn gl_decomposition_holds(g: usize, theta: &CycNumber, d: Monomial) -> Result<bool> {
    let m = order_of(theta)? as i64;
    let mut vecs: Vec<Vec<CycNumber>> = sl_component(g, theta, d)?.iter().map(CycMatrix::to_vec).collect();
    let sl_dim = vecs.len();
    let r2_dim = usize::from(d.0 % m == 0 && d.1 % m == 0);
    if r2_dim == 1 {
        vecs.push(CycMatrix::identity(g).to_vec());
    }
    Ok(sl_dim + r2_dim == g * g && span_rank(&vecs, g * g) == g * g)
}

/// Matrix of `u ↦ x u x^{-1}` on row-major `vec(Mat_n)`.
pub fn inner_automorphism(x: &CycMatrix) -> Result<CycMatrix> {
    let n = x.rows();
    let y = x.inverse().ok_or_else(|| Error::NonUnit("singular conjugating matrix".into()))?;
    Ok(CycMatrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (r / n, r % n);
        let (k, l) = (c / n, c % n);
        &x[(i, k)] * &y[(l, j)]
    }))
}

/// Basis of `{u : σ₁u = θ^{k₁}u, σ₂u = θ^{k₂}u}` for commuting linear maps.
pub fn multiloop_eigenspace(s1: &CycMatrix, s2: &CycMatrix, theta: &CycNumber, k: Monomial) -> Result<Vec<Vec<CycNumber>>> {
    if !s1.is_square() || s1.rows() != s2.rows() || !s2.is_square() {
        return Err(Error::ShapeMismatch("automorphisms must act on the same space".into()));
    }
    if &(s1 * s2) != &(s2 * s1) {
        return Err(Error::NonCommuting);
    }
    let m = order_of(theta)?;
    let n = s1.rows();
    let id = CycMatrix::identity(n);
    let a = s1 - &id.scale(&theta_pow(theta, m, k.0));
    let b = s2 - &id.scale(&theta_pow(theta, m, k.1));
    Ok(stack(&[&a, &b]).nullspace())
}

/// Eigenspaces for every class in `Z_m²`.
pub fn eigenspace_classes(s1: &CycMatrix, s2: &CycMatrix, theta: &CycNumber) -> Result<BTreeMap<(u32, u32), Vec<Vec<CycNumber>>>> {
    let m = order_of(theta)?;
    let mut out = BTreeMap::new();
    for a in 0..m {
        for b in 0..m {
            out.insert((a, b), multiloop_eigenspace(s1, s2, theta, (a as i64, b as i64))?);
        }
    }
    Ok(out)
}

/// Outcome of checking the realization `Q_θ ≅ L_{(m,m)}(Mat_m, (D_m(θ), P_m(1)), θ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub m: u32,
    pub degree_box: i64,
    pub degrees_checked: usize,
    pub pairs_checked: usize,
    pub commutation: bool,
    pub degree_respecting: bool,
    pub bijective_per_degree: bool,
    pub multiplicative: bool,
    pub centre_aligned: bool,
    pub first_failure: Option<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.commutation && self.degree_respecting && self.bijective_per_degree && self.multiplicative && self.centre_aligned
    }
}

/// Checks the map `x₁ ↦ p ⊗ z₁`, `x₂ ↦ d ⊗ z₂` with `p = p_m(1)`,
/// `d = d_m(θ)^{-1}` and `θ = ζ_m`, exhaustively on `[−B, B]²`.
pub fn verify_quantum_iso(m: u32, b: i64) -> Result<IsoReport> {
    let theta = cyc_root_of_unity(m, 1);
    let n = m as usize;
    let p = CycMatrix::from_fn(n, n, |i, j| if (i + n - 1) % n == j % n { CycNumber::one() } else { CycNumber::zero() });
    let dm = CycMatrix::diagonal((0..n).map(|k| theta_pow(&theta, m, k as i64)).collect());
    let d = dm.inverse().expect("diagonal of units");
    let s1 = inner_automorphism(&dm)?;
    let s2 = inner_automorphism(&p)?;
    let mut report = IsoReport {
        m,
        degree_box: b,
        degrees_checked: 0,
        pairs_checked: 0,
        commutation: false,
        degree_respecting: true,
        bijective_per_degree: true,
        multiplicative: true,
        centre_aligned: false,
        first_failure: None,
    };
    let fail = |report: &mut IsoReport, msg: String| {
        if report.first_failure.is_none() {
            report.first_failure = Some(msg);
        }
    };

    report.commutation = &p * &d == (&d * &p).scale(&theta);
    if !report.commutation {
        fail(&mut report, "p·d ≠ θ·d·p".into());
    }
    report.centre_aligned = p.pow(m) == CycMatrix::identity(n) && d.pow(m) == CycMatrix::identity(n);
    if !report.centre_aligned {
        fail(&mut report, "x_i^m does not map to 1 ⊗ t_i".into());
    }

    let classes = eigenspace_classes(&s1, &s2, &theta)?;
    let total: usize = classes.values().map(Vec::len).sum();
    if total != n * n {
        report.bijective_per_degree = false;
        fail(&mut report, format!("eigenspaces sum to {total}, expected {}", n * n));
    }

    let (pinv, dinv) = (p.inverse().expect("permutation matrix"), d.inverse().expect("diagonal"));
    let power = |base: &CycMatrix, inv: &CycMatrix, e: i64| if e >= 0 { base.pow(e as u32) } else { inv.pow((-e) as u32) };
    let mut image: BTreeMap<Monomial, CycMatrix> = BTreeMap::new();
    for k in box_degrees(2 * b) {
        image.insert(k, &power(&p, &pinv, k.0) * &power(&d, &dinv, k.1));
    }
    for k in box_degrees(b) {
        report.degrees_checked += 1;
        let u = &image[&k];
        let col = CycMatrix::from_vec(n * n, 1, u.to_vec());
        let ok1 = &s1 * &col == col.scale(&theta_pow(&theta, m, k.0));
        let ok2 = &s2 * &col == col.scale(&theta_pow(&theta, m, k.1));
        if !(ok1 && ok2) {
            report.degree_respecting = false;
            fail(&mut report, format!("φ(x^{k:?}) is not in eigenspace class {k:?} mod {m}"));
        }
        let class = (k.0.rem_euclid(m as i64) as u32, k.1.rem_euclid(m as i64) as u32);
        if classes[&class].len() != 1 || u.is_zero() {
            report.bijective_per_degree = false;
            fail(&mut report, format!("degree {k:?}: class dimension {} and image zero = {}", classes[&class].len(), u.is_zero()));
        }
    }
    for a in box_degrees(b) {
        for c in box_degrees(b) {
            report.pairs_checked += 1;
            let lhs = &image[&a] * &image[&c];
            let rhs = image[&(a.0 + c.0, a.1 + c.1)].scale(&theta_pow(&theta, m, -a.1 * c.0));
            if lhs != rhs {
                report.multiplicative = false;
                fail(&mut report, format!("φ(x^{a:?})φ(x^{c:?}) ≠ φ(x^{a:?}x^{c:?})"));
            }
        }
    }
    Ok(report)
}

/// A homogeneous `y` with `[x, y] = a·x·y`, `a ≠ 0`, and the checked
/// identities `ad(x)^r y = a^r x^r y ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnisotropyWitness {
    pub y: GradedElement,
    pub a: CycNumber,
    pub checks: Vec<bool>,
}

impl AnisotropyWitness {
    pub fn holds(&self) -> bool {
        !self.a.is_zero() && self.checks.iter().all(|&c| c)
    }
}

/// Searches `y = x^e`, `e ∈ [−B, B]²` (small `|e|` first), inside `sl_1(Q_θ)`
/// with `[x, y] ≠ 0`, then checks the power identity for `r = 1..=r_max`.
pub fn anisotropy_witness(x: &GradedElement, r_max: u32, search_box: i64) -> Result<AnisotropyWitness> {
    let theta = x.theta().clone();
    let d = x.homogeneous_degree().ok_or_else(|| Error::Invariant("x must be nonzero and homogeneous".into()))?;
    if x.size() != 1 || x.theta_order() < 2 || !commutator_space_nonzero(&theta, d)? {
        return Err(Error::Invariant(format!("{x} is not a nonzero homogeneous element of sl_1(Q_θ) with m > 1")));
    }
    let mut candidates: Vec<Monomial> = box_degrees(search_box).collect();
    candidates.sort_by_key(|e| (e.0.abs() + e.1.abs(), *e));
    for e in candidates {
        if !commutator_space_nonzero(&theta, e)? {
            continue;
        }
        let y = GradedElement::scalar(&theta, e, CycNumber::one())?;
        let bracket = x.commutator(&y)?;
        if bracket.is_zero() {
            continue;
        }
        let xy = qt_mul(x, &y)?;
        let deg = (d.0 + e.0, d.1 + e.1);
        let a = &bracket.component(deg)[(0, 0)] * &xy.component(deg)[(0, 0)].inv().expect("Q_θ is a domain");
        let mut checks = Vec::new();
        let mut ad = y.clone();
        for r in 1..=r_max {
            ad = x.commutator(&ad)?;
            let rhs = qt_mul(&x.pow(r as i64)?, &y)?.scale(&a.pow(r as i64));
            checks.push(ad == rhs && !ad.is_zero());
        }
        return Ok(AnisotropyWitness { y, a, checks });
    }
    Err(Error::Invariant(format!("no anisotropy witness for {x} in box {search_box}")))
}

/// Derived algebra of the multiloop algebra of `gl_{gm}` under the block-wise
/// action of `(D_m(θ), P_m(1))` equals the multiloop algebra of `sl_{gm}`,
/// degree by degree on `[−B, B]²`.
pub fn derived_multiloop_matches(g: usize, m: u32, b: i64) -> Result<bool> {
    let theta = cyc_root_of_unity(m, 1);
    let k = m as usize;
    let n = g * k;
    let block = |x: &CycMatrix| CycMatrix::from_fn(n, n, |i, j| if i / k == j / k { x[(i % k, j % k)].clone() } else { CycNumber::zero() });
    let p = CycMatrix::from_fn(k, k, |i, j| if (i + k - 1) % k == j % k { CycNumber::one() } else { CycNumber::zero() });
    let dm = CycMatrix::diagonal((0..k).map(|e| theta_pow(&theta, m, e as i64)).collect());
    let s1 = inner_automorphism(&block(&dm))?;
    let s2 = inner_automorphism(&block(&p))?;
    let gl = eigenspace_classes(&s1, &s2, &theta)?;
    let trace_row = CycMatrix::from_fn(1, n * n, |_, c| if c / n == c % n { CycNumber::one() } else { CycNumber::zero() });
    let id = CycMatrix::identity(n * n);

    let mut per_class: BTreeMap<(u32, u32), bool> = BTreeMap::new();
    for (&(c1, c2), _) in &gl {
        let a = &s1 - &id.scale(&theta_pow(&theta, m, c1 as i64));
        let bb = &s2 - &id.scale(&theta_pow(&theta, m, c2 as i64));
        let sl = stack(&[&a, &bb, &trace_row]).nullspace();
        let mut derived = Vec::new();
        for (&(a1, a2), us) in &gl {
            let other = ((c1 + m - a1) % m, (c2 + m - a2) % m);
            for u in us {
                for v in &gl[&other] {
                    let (u, v) = (CycMatrix::from_vec(n, n, u.clone()), CycMatrix::from_vec(n, n, v.clone()));
                    derived.push(CycMatrix::commutator(&u, &v).to_vec());
                }
            }
        }
        let rd = span_rank(&derived, n * n);
        let mut both = derived;
        both.extend(sl.iter().cloned());
        per_class.insert((c1, c2), rd == sl.len() && span_rank(&both, n * n) == sl.len());
    }
    Ok(box_degrees(b).all(|d| per_class[&(d.0.rem_euclid(m as i64) as u32, d.1.rem_euclid(m as i64) as u32)]))
}
