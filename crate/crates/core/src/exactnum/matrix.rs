use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::CycNumber;

/// Dense matrix over cyclotomic numbers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![CycNumber::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycNumber::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: Vec<CycNumber>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = CycNumber::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNumber::is_zero)
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.data
    }

    pub fn trace(&self) -> CycNumber {
        (0..self.rows.min(self.cols)).fold(CycNumber::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &CycNumber) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> CycMatrix {
        assert!(self.is_square());
        let mut acc = CycMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        CycMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
        &(a * b) - &(b * a)
    }

    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<CycMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CycMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &f);
                    inv.add_row_multiple(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &CycNumber) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * c;
            self[(r, j)] = v;
        }
    }

    // row[r] -= f * row[src]
    fn add_row_multiple(&mut self, r: usize, src: usize, f: &CycNumber) {
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                let v = &self[(r, j)] - &(&self[(src, j)] * f);
                self[(r, j)] = v;
            }
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (CycMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else { continue };
            a.swap_rows(row, p);
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            a.scale_row(row, &inv);
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{ v : self · v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<CycNumber>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycNumber::zero(); self.cols];
                v[f] = CycNumber::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Stacks row vectors into a matrix.
    pub fn from_rows(rows: &[Vec<CycNumber>], cols: usize) -> CycMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        CycMatrix { rows: rows.len(), cols, data }
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<CycNumber> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<CycNumber>) -> CycMatrix {
        assert_eq!(data.len(), rows * cols);
        CycMatrix { rows, cols, data }
    }
}

/// Dimension of the span of a family of vectors.
pub fn span_rank(vectors: &[Vec<CycNumber>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    CycMatrix::from_rows(vectors, dim).rank()
}

impl std::ops::Index<(usize, usize)> for CycMatrix {
    type Output = CycNumber;
    fn index(&self, (i, j): (usize, usize)) -> &CycNumber {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycNumber {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = CycMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + &(a * b);
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;
    fn add(self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycMatrix> for &'a CycMatrix {
    type Output = CycMatrix;
    fn sub(self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::cyc_root_of_unity;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_int(n)
    }

    #[test]
    fn inverse_roundtrip() {
        let z = cyc_root_of_unity(5, 1);
        let m = CycMatrix::from_vec(2, 2, vec![int(1), z.clone(), z.pow(2), int(3)]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, CycMatrix::identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = CycMatrix::from_vec(2, 2, vec![int(1), int(2), int(2), int(4)]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![int(-2), int(1)]);
    }

    #[test]
    fn kron_dimensions_and_trace() {
        let a = CycMatrix::identity(2);
        let b = CycMatrix::diagonal(vec![int(1), int(2), int(3)]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.trace(), int(12));
    }
}
