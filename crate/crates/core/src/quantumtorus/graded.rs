use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{cyc_order, CycMatrix, CycNumber};

/// A degree `(k₁, k₂)`, standing for the monomial `x₁^{k₁} x₂^{k₂}`.
pub type Monomial = (i64, i64);

/// An element of `Mat_g(Q_θ)`: a finitely supported map from degrees to
/// `g × g` matrices. Zero components are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GradedRepr", try_from = "GradedRepr")]
pub struct GradedElement {
    g: usize,
    m: u32,
    theta: CycNumber,
    support: BTreeMap<Monomial, CycMatrix>,
}

impl GradedElement {
    /// The zero element of `Mat_g(Q_θ)`; `θ` must have multiplicative order `m`.
    pub fn zero(g: usize, theta: &CycNumber) -> Result<Self> {
        let m = match cyc_order(theta)? {
            Some(m) => m,
            None => return Err(Error::NotRootOfUnity(theta.to_string())),
        };
        if g == 0 {
            return Err(Error::ShapeMismatch("matrix size must be positive".into()));
        }
        Ok(GradedElement { g, m, theta: theta.clone(), support: BTreeMap::new() })
    }

    /// `M · x^deg`.
    pub fn monomial(theta: &CycNumber, deg: Monomial, matrix: CycMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} coefficient", matrix.rows(), matrix.cols())));
        }
        let mut out = Self::zero(matrix.rows(), theta)?;
        out.insert(deg, matrix);
        Ok(out)
    }

    /// `c · x^deg` in `Q_θ` itself (`g = 1`).
    pub fn scalar(theta: &CycNumber, deg: Monomial, c: CycNumber) -> Result<Self> {
        Self::monomial(theta, deg, CycMatrix::from_vec(1, 1, vec![c]))
    }

    /// The generator `x₁` or `x₂` of `Q_θ` times the identity of `Mat_g`.
    pub fn generator(g: usize, theta: &CycNumber, which: usize) -> Result<Self> {
        let deg = if which == 1 { (1, 0) } else { (0, 1) };
        Self::monomial(theta, deg, CycMatrix::identity(g))
    }

    pub fn one(g: usize, theta: &CycNumber) -> Result<Self> {
        Self::monomial(theta, (0, 0), CycMatrix::identity(g))
    }

    pub fn size(&self) -> usize {
        self.g
    }

    /// Order `m` of `θ`.
    pub fn theta_order(&self) -> u32 {
        self.m
    }

    pub fn theta(&self) -> &CycNumber {
        &self.theta
    }

    /// `θ^e`, reducing `e` modulo the order of `θ`.
    pub fn theta_pow(&self, e: i64) -> CycNumber {
        self.theta.pow(e.rem_euclid(self.m as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Monomial> {
        self.support.keys()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Monomial, &CycMatrix)> {
        self.support.iter()
    }

    pub fn component(&self, deg: Monomial) -> CycMatrix {
        self.support.get(&deg).cloned().unwrap_or_else(|| CycMatrix::zeros(self.g, self.g))
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<Monomial> {
        match self.support.len() {
            1 => self.support.keys().next().copied(),
            _ => None,
        }
    }

    fn insert(&mut self, deg: Monomial, matrix: CycMatrix) {
        if matrix.is_zero() {
            self.support.remove(&deg);
        } else {
            self.support.insert(deg, matrix);
        }
    }

    fn accumulate(&mut self, deg: Monomial, matrix: &CycMatrix) {
        let sum = match self.support.get(&deg) {
            Some(cur) => cur + matrix,
            None => matrix.clone(),
        };
        self.insert(deg, sum);
    }

    fn check_compatible(&self, other: &GradedElement) -> Result<()> {
        if self.g != other.g || self.m != other.m || self.theta != other.theta {
            return Err(Error::ShapeMismatch(format!(
                "Mat_{}(Q_θ) with θ = {} vs Mat_{}(Q_θ) with θ = {}",
                self.g, self.theta, other.g, other.theta
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, a) in &other.support {
            out.accumulate(*d, a);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNumber) -> GradedElement {
        let mut out = GradedElement { support: BTreeMap::new(), ..self.clone() };
        for (d, a) in &self.support {
            out.insert(*d, a.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.add(&other.scale(&CycNumber::from_int(-1)))
    }

    /// `[u, v] = uv − vu`.
    pub fn commutator(&self, other: &GradedElement) -> Result<GradedElement> {
        qt_mul(self, other)?.sub(&qt_mul(other, self)?)
    }

    /// `u^e` for `e ≥ 0`, or the inverse power of a unit monomial.
    pub fn pow(&self, e: i64) -> Result<GradedElement> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = GradedElement::one(self.g, &self.theta)?;
        for _ in 0..e.unsigned_abs() {
            acc = qt_mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Inverse of `M x^a` with `M` invertible: `θ^{-a₁a₂} M^{-1} x^{-a}`.
    pub fn inverse(&self) -> Result<GradedElement> {
        let deg = self.homogeneous_degree().ok_or_else(|| Error::NonUnit("not homogeneous".into()))?;
        let inv = self.support[&deg].inverse().ok_or_else(|| Error::NonUnit("singular coefficient".into()))?;
        let s = self.theta_pow(-deg.0 * deg.1);
        GradedElement::monomial(&self.theta, (-deg.0, -deg.1), inv.scale(&s))
    }

    /// Trace into `Q_θ` (`g = 1`).
    pub fn trace(&self) -> GradedElement {
        let mut out = GradedElement { g: 1, support: BTreeMap::new(), ..self.clone() };
        for (d, a) in &self.support {
            out.insert(*d, CycMatrix::from_vec(1, 1, vec![a.trace()]));
        }
        out
    }

    /// Assembles a `k × k` matrix whose entries are elements of `Q_θ`.
    pub fn from_blocks(entries: &[Vec<GradedElement>]) -> Result<GradedElement> {
        let k = entries.len();
        let first = entries.first().and_then(|r| r.first()).ok_or_else(|| Error::ShapeMismatch("empty block matrix".into()))?;
        let mut out = GradedElement::zero(k, &first.theta)?;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != k {
                return Err(Error::ShapeMismatch("ragged block matrix".into()));
            }
            for (j, e) in row.iter().enumerate() {
                if e.g != 1 {
                    return Err(Error::ShapeMismatch("block entries must lie in Q_θ".into()));
                }
                first.check_compatible(e)?;
                for (d, a) in &e.support {
                    let mut unit = CycMatrix::zeros(k, k);
                    unit[(i, j)] = a[(0, 0)].clone();
                    out.accumulate(*d, &unit);
                }
            }
        }
        Ok(out)
    }
}

/// Product in `Mat_g(Q_θ)`: `x^a · x^b = θ^{−a₂b₁} x^{a+b}`, with matrix
/// coefficients multiplied in order.
pub fn qt_mul(u: &GradedElement, v: &GradedElement) -> Result<GradedElement> {
    u.check_compatible(v)?;
    let mut out = GradedElement { support: BTreeMap::new(), ..u.clone() };
    for (a, ma) in &u.support {
        for (b, mb) in &v.support {
            let s = u.theta_pow(-a.1 * b.0);
            out.accumulate((a.0 + b.0, a.1 + b.1), &(ma * mb).scale(&s));
        }
    }
    Ok(out)
}

/// `(d_m(u), p_m(u))` for a unit monomial `u ∈ Q_θ`:
/// `d_m(u) = diag(1, u, …, u^{m−1})` and `p_m(u)` the companion matrix with
/// `u` in the top-right corner and ones on the subdiagonal.
pub fn pauli(m: usize, u: &GradedElement) -> Result<(GradedElement, GradedElement)> {
    if u.g != 1 || u.homogeneous_degree().is_none() {
        return Err(Error::NonUnit(format!("{u}")));
    }
    if m == 0 {
        return Err(Error::ShapeMismatch("Pauli matrices need m ≥ 1".into()));
    }
    let zero = GradedElement::zero(1, &u.theta)?;
    let one = GradedElement::one(1, &u.theta)?;
    let mut d = vec![vec![zero.clone(); m]; m];
    let mut p = vec![vec![zero; m]; m];
    for (k, row) in d.iter_mut().enumerate() {
        row[k] = u.pow(k as i64)?;
    }
    p[0][m - 1] = u.clone();
    for i in 1..m {
        p[i][i - 1] = one.clone();
    }
    Ok((GradedElement::from_blocks(&d)?, GradedElement::from_blocks(&p)?))
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.support.iter().map(|((a, b), m)| format!("[{m}]·x1^{a}x2^{b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GradedRepr {
    g: usize,
    m: u32,
    theta: CycNumber,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    deg: [i64; 2],
    row: usize,
    col: usize,
    coeff: CycNumber,
}

impl From<GradedElement> for GradedRepr {
    fn from(e: GradedElement) -> Self {
        let mut entries = Vec::new();
        for (d, a) in &e.support {
            for row in 0..e.g {
                for col in 0..e.g {
                    if !a[(row, col)].is_zero() {
                        entries.push(EntryRepr { deg: [d.0, d.1], row, col, coeff: a[(row, col)].clone() });
                    }
                }
            }
        }
        GradedRepr { g: e.g, m: e.m, theta: e.theta, entries }
    }
}

impl TryFrom<GradedRepr> for GradedElement {
    type Error = Error;
    fn try_from(r: GradedRepr) -> Result<Self> {
        let mut out = GradedElement::zero(r.g, &r.theta)?;
        if out.m != r.m {
            return Err(Error::Parse(format!("θ has order {} but m = {}", out.m, r.m)));
        }
        for e in r.entries {
            if e.row >= r.g || e.col >= r.g {
                return Err(Error::Parse(format!("entry ({}, {}) outside {}x{}", e.row, e.col, r.g, r.g)));
            }
            let mut unit = CycMatrix::zeros(r.g, r.g);
            unit[(e.row, e.col)] = e.coeff;
            out.accumulate((e.deg[0], e.deg[1]), &unit);
        }
        Ok(out)
    }
}
