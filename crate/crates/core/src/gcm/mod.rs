//! Affine generalized Cartan matrices.
//!
//! The catalog follows Kac's node numbering (Tables Aff 1–3), with labels
//! written `X_ℓ^(m)` where `ℓ` is the rank of the finite type `X_ℓ`. Entries
//! follow `a_ij = ⟨α_i^∨, α_j⟩`, so `|a_ij| > |a_ji|` means `α_i` is the
//! shorter root and the diagram arrow points at node `i`.

mod diagram;
mod iso;
mod types;

pub use diagram::{parse_diagram, render_diagram, render_matrix_diagram};
pub use types::{AffineType, Family, FiniteType};

pub(crate) use iso::matrix_isomorphisms;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactnum::Rational;

pub type IntMatrix = Vec<Vec<i64>>;

/// An affine GCM from the catalog together with its kernel vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineGCM {
    pub label: AffineType,
    pub entries: IntMatrix,
    /// `A · marks = 0`; encodes the null root `δ = Σ a_i α_i`.
    pub marks: Vec<i64>,
    /// `comarksᵀ · A = 0`.
    pub comarks: Vec<i64>,
}

impl AffineGCM {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }
}

/// One catalog edge: `(i, j, a_ij, a_ji)`.
type Edge = (usize, usize, i64, i64);

fn simple(i: usize, j: usize) -> Edge {
    (i, j, -1, -1)
}

fn chain(from: usize, to: usize) -> impl Iterator<Item = Edge> {
    (from..to).map(|i| simple(i, i + 1))
}

fn catalog_edges(t: AffineType) -> Vec<Edge> {
    let l = t.rank as usize;
    match (t.family, t.twist) {
        (Family::A, 1) if l == 1 => vec![(0, 1, -2, -2)],
        (Family::A, 1) => chain(0, l).chain([simple(l, 0)]).collect(),
        (Family::B, 1) => [simple(0, 2), simple(1, 2)].into_iter().chain(chain(2, l - 1)).chain([(l - 1, l, -1, -2)]).collect(),
        (Family::C, 1) => [(0, 1, -1, -2)].into_iter().chain(chain(1, l - 1)).chain([(l - 1, l, -2, -1)]).collect(),
        (Family::D, 1) => [simple(0, 2), simple(1, 2)]
            .into_iter()
            .chain(chain(2, l - 2))
            .chain([simple(l - 2, l - 1), simple(l - 2, l)])
            .collect(),
        (Family::E, 1) if l == 6 => vec![simple(1, 2), simple(2, 3), simple(3, 4), simple(4, 5), simple(3, 6), simple(6, 0)],
        (Family::E, 1) if l == 7 => chain(0, 6).chain([simple(3, 7)]).collect(),
        (Family::E, 1) => chain(1, 7).chain([simple(7, 0), simple(3, 8)]).collect(),
        (Family::F, 1) => vec![simple(0, 1), simple(1, 2), (2, 3, -1, -2), simple(3, 4)],
        (Family::G, 1) => vec![simple(0, 1), (1, 2, -1, -3)],
        // A_{2n}^(2)
        (Family::A, 2) if l % 2 == 0 => {
            let n = l / 2;
            if n == 1 {
                vec![(0, 1, -4, -1)]
            } else {
                [(0, 1, -2, -1)].into_iter().chain(chain(1, n - 1)).chain([(n - 1, n, -2, -1)]).collect()
            }
        }
        // A_{2n-1}^(2)
        (Family::A, 2) => {
            let n = (l + 1) / 2;
            [simple(0, 2), simple(1, 2)].into_iter().chain(chain(2, n - 1)).chain([(n - 1, n, -2, -1)]).collect()
        }
        // D_{n+1}^(2), n = ℓ − 1
        (Family::D, 2) => {
            let n = l - 1;
            [(0, 1, -2, -1)].into_iter().chain(chain(1, n - 1)).chain([(n - 1, n, -1, -2)]).collect()
        }
        (Family::D, 3) => vec![simple(0, 1), (1, 2, -3, -1)],
        (Family::E, 2) => vec![simple(0, 1), simple(1, 2), (2, 3, -2, -1), simple(3, 4)],
        _ => unreachable!("validated label"),
    }
}

/// The catalog matrix for `X_ℓ^(m)`.
pub fn affine_gcm(family: Family, rank: u32, twist: u32) -> Result<AffineGCM> {
    let label = AffineType::new(family, rank, twist)?;
    Ok(gcm_for(label))
}

pub fn gcm_for(label: AffineType) -> AffineGCM {
    let n = label.node_count();
    let mut entries = vec![vec![0i64; n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, aij, aji) in catalog_edges(label) {
        entries[i][j] = aij;
        entries[j][i] = aji;
    }
    let (marks, comarks) = kernel_vectors(&entries).expect("catalog matrix is affine");
    AffineGCM { label, entries, marks, comarks }
}

/// Marks and comarks of an affine matrix.
pub fn marks_comarks(a: &AffineGCM) -> (Vec<i64>, Vec<i64>) {
    (a.marks.clone(), a.comarks.clone())
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// Rational null space of an integer matrix.
fn rational_kernel(m: &IntMatrix) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let s = &a[row][c] * &f;
                    a[r][c] -= s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// The unique primitive positive kernel vector, if the kernel is a line
/// spanned by a vector with all entries of one sign.
fn positive_kernel_vector(m: &IntMatrix) -> Option<Vec<i64>> {
    let ker = rational_kernel(m);
    if ker.len() != 1 {
        return None;
    }
    let v = &ker[0];
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let out: Vec<i64> = ints.iter().map(|x| (x * &sign / &g).to_i64()).collect::<Option<_>>()?;
    out.iter().all(|&x| x > 0).then_some(out)
}

fn kernel_vectors(m: &IntMatrix) -> Option<(Vec<i64>, Vec<i64>)> {
    Some((positive_kernel_vector(m)?, positive_kernel_vector(&transpose(m))?))
}

pub fn is_gcm(m: &IntMatrix) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n)
        && (0..n).all(|i| m[i][i] == 2)
        && (0..n).all(|i| (0..n).all(|j| i == j || (m[i][j] <= 0 && (m[i][j] == 0) == (m[j][i] == 0))))
}

pub fn is_indecomposable(m: &IntMatrix) -> bool {
    let n = m.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && m[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Finds positive `ε` with `ε_i a_ij = ε_j a_ji`, propagating ratios along
/// the nonzero pattern and checking every pair.
pub fn is_symmetrizable(m: &IntMatrix) -> bool {
    let n = m.len();
    let mut eps: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if eps[start].is_some() {
            continue;
        }
        eps[start] = Some(Rational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && m[i][j] != 0 && eps[j].is_none() {
                    let e = eps[i].clone().unwrap() * Rational::new(m[i][j].into(), m[j][i].into());
                    eps[j] = Some(e);
                    stack.push(j);
                }
            }
        }
    }
    let eps: Vec<Rational> = eps.into_iter().map(Option::unwrap).collect();
    (0..n).all(|i| {
        (0..n).all(|j| &eps[i] * Rational::from_integer(m[i][j].into()) == &eps[j] * Rational::from_integer(m[j][i].into()))
    })
}

pub fn corank(m: &IntMatrix) -> usize {
    rational_kernel(m).len()
}

/// Affine per the defining conditions: GCM, indecomposable, symmetrizable,
/// corank 1 with positive kernel vectors.
pub fn is_affine(m: &IntMatrix) -> bool {
    is_gcm(m) && is_indecomposable(m) && is_symmetrizable(m) && corank(m) == 1 && kernel_vectors(m).is_some()
}

/// Catalog type of `m` with a witnessing permutation `π` such that
/// `m[i][j] == catalog[π(i)][π(j)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognized {
    pub gcm: AffineGCM,
    pub permutation: Vec<usize>,
}

pub fn recognize_affine(m: &IntMatrix) -> Option<Recognized> {
    let n = m.len();
    if n < 2 || !is_gcm(m) {
        return None;
    }
    candidates_with_nodes(n).into_iter().find_map(|label| {
        let cat = gcm_for(label);
        matrix_isomorphisms(m, &cat.entries, 1).pop().map(|permutation| Recognized { gcm: cat, permutation })
    })
}

/// Labels whose diagrams have exactly `n` nodes.
fn candidates_with_nodes(n: usize) -> Vec<AffineType> {
    let mut out = Vec::new();
    // finite rank of any n-node affine diagram is at most 2(n − 1)
    for rank in 1..=(2 * n as u32) {
        for twist in 1..=3 {
            for family in Family::ALL {
                if let Ok(t) = AffineType::new(family, rank, twist) {
                    if t.node_count() == n {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// The quotient type of `g(A)`.
pub fn quotient_type(label: AffineType) -> FiniteType {
    let l = label.rank;
    match (label.family, label.twist) {
        (f, 1) => FiniteType::new(f, l),
        (Family::A, 2) if l % 2 == 0 => FiniteType::new(Family::BC, l / 2),
        (Family::A, 2) => FiniteType::new(Family::C, (l + 1) / 2),
        (Family::D, 2) => FiniteType::new(Family::B, l - 1),
        (Family::D, 3) => FiniteType::new(Family::G, 2),
        (Family::E, 2) => FiniteType::new(Family::F, 4),
        _ => unreachable!("validated label"),
    }
}
