//! Exact rational scalars, dense matrices and canonical subspaces.
//!
//! Everything downstream (path algebra bases, Hom spaces, homotopy quotients)
//! reduces to the handful of kernels here. Subspaces are always stored by
//! their reduced row echelon basis, so two spans are equal exactly when their
//! [`Subspace`] values compare equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number. Always reduced, denominator positive.
pub type Scalar = BigRational;

/// Integer constant as a [`Scalar`].
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced [`Scalar`]. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                write!(f, " {}", self[(r, c)])?;
            }
        }
        write!(f, " ]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Adds `s * other` into `self`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        (Matrix::from_rows(self.cols, rows), pivots)
    }

    /// Rank, computed by fraction-free (Bareiss) elimination over the integers
    /// after clearing row denominators.
    pub fn rank(&self) -> usize {
        bareiss_rank(self)
    }

    /// `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Some `X` with `self * X = target`, or `None` when the system is inconsistent.
    pub fn solve_right(&self, target: &Matrix) -> Result<Option<Matrix>, LinError> {
        if target.rows != self.rows {
            return Err(LinError::DimensionMismatch(format!(
                "solve_right: {} rows vs target {} rows",
                self.rows, target.rows
            )));
        }
        let aug = self.hstack(target);
        let mut rows = aug.row_vectors();
        let pivots = rref_in_place(&mut rows, aug.cols);
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, target.cols);
        for (row, &p) in rows.iter().zip(&pivots) {
            for c in 0..target.cols {
                x[(p, c)] = row[self.cols + c].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_right(&Matrix::identity(self.rows)).ok()??;
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.rows, (0..self.cols).map(|c| self.column(c)))
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.cols, self.row_vectors())
    }
}

/// Gauss-Jordan elimination in place; returns pivot columns. Rows that become
/// zero are removed, so on return `rows.len() == pivots.len()`.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows.len() {
            break;
        }
        let Some(found) = (pr..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, found);
        let inv = rows[pr][col].recip();
        let nz: Vec<usize> = (col..cols).filter(|&j| !rows[pr][j].is_zero()).collect();
        if !inv.is_one() {
            for &j in &nz {
                rows[pr][j] *= &inv;
            }
        }
        let (before, rest) = rows.split_at_mut(pr);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pr);
    pivots
}

fn bareiss_rank(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Scalar::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        for i in k + 1..rows {
            for j in c + 1..cols {
                let v = (&a[i][j] * &a[k][c] - &a[i][c] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        k += 1;
    }
    k
}

/// Linear subspace of `Q^ambient`, stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    /// Span of the given vectors.
    pub fn from_vectors<I: IntoIterator<Item = Vec<Scalar>>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length vs ambient"))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = rref_in_place(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not occupied by a pivot; the residues of [`Subspace::reduce`]
    /// are supported on these.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Canonical representative of `v` modulo this subspace (zero on all pivots).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coefficients of `v` in the canonical basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in rebuilt.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_vectors(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // a·α = b·β  <=>  [A^T | -B^T] (α, β) = 0
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let system = Matrix::from_columns(self.ambient, &cols);
        let kernel = system.nullspace();
        let k = self.dim();
        Ok(Subspace::from_vectors(
            self.ambient,
            kernel.basis().iter().map(|sol| {
                let alpha = &sol[..k];
                let mut v = vec![Scalar::zero(); self.ambient];
                for (a, row) in alpha.iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (o, r) in v.iter_mut().zip(row) {
                        *o += a * r;
                    }
                }
                v
            }),
        ))
    }

    /// Projection `Q^ambient -> Q^ambient / self`, written in the complement
    /// coordinates returned by [`Subspace::complement_coordinates`].
    pub fn quotient_projection(&self) -> Matrix {
        let comp = self.complement_coordinates();
        let mut m = Matrix::zeros(comp.len(), self.ambient);
        for j in 0..self.ambient {
            let r = self.reduce(&unit(self.ambient, j));
            for (i, &c) in comp.iter().enumerate() {
                m[(i, j)] = r[c].clone();
            }
        }
        m
    }

    /// Basis as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Standard basis vector `e_i` of `Q^n`.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += s * v`.
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
                Matrix::from_rows(c, xs.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect())
            })
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let t = Matrix::from_i64(&[&[1, 5], &[-2, 7]]);
        assert_eq!(Matrix::identity(2).solve_right(&t).unwrap(), Some(t.clone()));
        assert_eq!(Matrix::zeros(2, 2).solve_right(&t).unwrap(), None);
        let x = Matrix::from_i64(&[&[2]]).solve_right(&Matrix::from_i64(&[&[1]])).unwrap().unwrap();
        assert_eq!(x[(0, 0)], frac(1, 2));
        assert!(Matrix::identity(2).solve_right(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(3).nullspace().dim(), 0);
        assert_eq!(Matrix::zeros(2, 4).nullspace().dim(), 4);
        let n = Matrix::from_i64(&[&[1, 1]]).nullspace();
        assert_eq!(n.dim(), 1);
        assert!(n.contains(&[int(1), int(-1)]));
    }

    #[test]
    fn subspace_examples() {
        let a = Subspace::from_vectors(2, vec![vec![int(1), int(0)]]);
        let b = Subspace::from_vectors(2, vec![vec![int(0), int(1)]]);
        assert_eq!(a.sum(&Subspace::zero(2)).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert!(a.sum(&Subspace::zero(3)).is_err());
        let p = a.quotient_projection();
        assert_eq!(p.rows(), 1);
        assert_eq!(p.mul_vec(&[int(4), int(9)]), vec![int(9)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
            // Bareiss and Gauss-Jordan agree
            prop_assert_eq!(m.rank(), m.rref().1.len());
            for v in m.nullspace().basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn solve_right_verifies(m in small_matrix(), seed in proptest::collection::vec(-2i64..=2, 4)) {
            let x0 = Matrix::from_rows(1, (0..m.cols()).map(|i| vec![int(seed[i % seed.len()])]).collect());
            let t = m.mul(&x0);
            let x = m.solve_right(&t).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul(&x), t);
        }

        #[test]
        fn echelon_is_canonical(m in small_matrix(), k in -3i64..=3) {
            // a different spanning set of the same row space
            let mut rows = m.row_vectors();
            if rows.len() > 1 && k != 0 {
                let r1 = rows[1].clone();
                axpy(&mut rows[0], &int(k), &r1);
                rows.reverse();
            }
            prop_assert_eq!(Subspace::from_vectors(m.cols(), rows), m.row_space());
        }
    }
}
