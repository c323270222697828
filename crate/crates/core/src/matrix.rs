//! Dense matrices over a [`Ring`], with exact linear algebra for [`RatMatrix`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Ring;

/// Row-major dense matrix. `0 x m` and `m x 0` shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;

/// Sizes up to this use cofactor expansion for the Pfaffian; larger ones use
/// skew elimination.
const PFAFFIAN_EXPANSION_MAX: usize = 8;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from nested rows; `cols` is needed to type an empty row list.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.minus(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn vstack(parts: &[Self], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn hstack(parts: &[Self], rows: usize) -> Result<Self> {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            if p.rows != rows {
                return Err(Error::Dimension("hstack row mismatch".into()));
            }
            out.write_block(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.write_block(0, 0, self);
        out.write_block(self.rows, self.cols, other);
        out
    }

    /// First entry violating `M^T = -M` (diagonal included), if any.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != self.get(j, i).negated() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew(&self) -> bool {
        self.skew_violation().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Determinant by cofactor expansion along the first row. Works over any
/// ring, so it is the route used for symbolic matrices.
pub fn det_expand<T: Ring>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(det_rec(m, 0, &cols))
}

fn det_rec<T: Ring>(m: &Matrix<T>, row: usize, cols: &[usize]) -> T {
    if cols.is_empty() {
        return T::one();
    }
    let mut acc = T::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.times(&det_rec(m, row + 1, &rest));
        acc = if pos % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Pfaffian by expansion along the first row:
/// `Pf(A) = sum_j (-1)^j a_{0j} Pf(A with rows/cols 0, j removed)` (0-based, j >= 1
/// contributes sign `(-1)^(j+1)`).
pub fn pfaffian_expand<T: Ring>(m: &Matrix<T>) -> Result<T> {
    check_skew(m)?;
    if m.rows % 2 == 1 {
        return Ok(T::zero());
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec<T: Ring>(m: &Matrix<T>, idx: &[usize]) -> T {
    if idx.is_empty() {
        return T::one();
    }
    let first = idx[0];
    let mut acc = T::zero();
    for pos in 1..idx.len() {
        let a = m.get(first, idx[pos]);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != pos)
            .map(|(_, &v)| v)
            .collect();
        let term = a.times(&pf_rec(m, &rest));
        acc = if pos % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

fn check_skew<T: Ring>(m: &Matrix<T>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    match m.skew_violation() {
        Some((row, col)) => Err(Error::NotSkew { row, col }),
        None => Ok(()),
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn from_ints(rows: usize, cols: usize, vals: &[i64]) -> Self {
        Matrix::new(rows, cols, vals.iter().map(|&v| Rational::from(v)).collect())
            .expect("entry count matches shape")
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    /// Exact determinant. Rows are scaled to integers and reduced with
    /// Bareiss fraction-free elimination, pivoting on the first nonzero entry
    /// of each column.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            a.push(
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect(),
            );
        }
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let mut d = a[n - 1][n - 1].clone();
        if negate {
            d = -d;
        }
        Rational::new(d, scale)
    }

    /// Exact Pfaffian of a skew-symmetric matrix; zero for odd sizes.
    pub fn pfaffian(&self) -> Result<Rational> {
        check_skew(self)?;
        if self.rows <= PFAFFIAN_EXPANSION_MAX {
            pfaffian_expand(self)
        } else {
            self.pfaffian_elimination()
        }
    }

    /// Pfaffian via unimodular congruences that split off one 2x2 block per
    /// step. Assumes skewness was checked.
    pub fn pfaffian_elimination(&self) -> Result<Rational> {
        check_skew(self)?;
        let n = self.rows;
        if n % 2 == 1 {
            return Ok(Rational::zero());
        }
        let mut a = self.clone();
        let mut pf = Rational::one();
        let mut k = 0;
        while k < n {
            let Some(p) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k + 1 {
                a.swap_rows(p, k + 1);
                a.swap_cols(p, k + 1);
                pf = -pf;
            }
            let piv = a.get(k, k + 1).clone();
            pf = &pf * &piv;
            for i in k + 2..n {
                let c = a.get(k, i) / &piv;
                if !c.is_zero() {
                    a.add_row_multiple(i, k + 1, &-&c);
                    a.add_col_multiple(i, k + 1, &-&c);
                }
                let d = a.get(k + 1, i) / &piv;
                if !d.is_zero() {
                    a.add_row_multiple(i, k, &d);
                    a.add_col_multiple(i, k, &d);
                }
            }
            k += 2;
        }
        Ok(pf)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + c1, i * self.cols + c2);
        }
    }

    /// `row[target] += c * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(source, j) * c;
            if !v.is_zero() {
                let idx = target * self.cols + j;
                self.data[idx] += &v;
            }
        }
    }

    /// `col[target] += c * col[source]`
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &Rational) {
        for i in 0..self.rows {
            let v = self.get(i, source) * c;
            if !v.is_zero() {
                let idx = i * self.cols + target;
                self.data[idx] += &v;
            }
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = -m.get(i, c);
                    m.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical kernel basis: one vector per free column of the RREF, scaled
    /// so its first nonzero entry is 1. Returned as the columns of a
    /// `cols x nullity` matrix.
    pub fn kernel_basis(&self) -> RatMatrix {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(r, f);
            }
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("basis vector is nonzero");
            for (i, x) in v.into_iter().enumerate() {
                out.set(i, k, &x / &lead);
            }
        }
        out
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = RatMatrix::hstack(&[self.clone(), RatMatrix::column_vector(b)], self.rows)?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = RatMatrix::hstack(&[self.clone(), RatMatrix::identity(n)], n)?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        Ok(matrix.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Whether the columns of `self` span the same space as those of `other`.
    pub fn same_column_space(&self, other: &RatMatrix) -> bool {
        if self.rows != other.rows {
            return false;
        }
        let r = self.rank();
        r == other.rank()
            && RatMatrix::hstack(&[self.clone(), other.clone()], self.rows)
                .map(|m| m.rank() == r)
                .unwrap_or(false)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
