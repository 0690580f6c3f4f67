//! Exact rational matrices.
//!
//! Every Hom/Ext computation in this crate runs over `Q` with arbitrary
//! precision, so dimensions are exact integers. Pivoting is deterministic
//! (first nonzero entry in column order) which makes every basis produced
//! here reproducible across runs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Always-reduced arbitrary precision rational number.
pub type Rational = BigRational;

/// A column vector.
pub type Vector = Vec<Rational>;

/// Builds the rational `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Dense row-major rational matrix. Matrices with zero rows or columns are
/// valid and model maps from/to the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Row-major construction; fails if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Convenience constructor from integer rows. All rows must have equal length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| int(x)).collect();
        RatMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
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

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Checked product.
    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        assert_eq!(self.rows, self.cols, "pow of a non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..rhs.cols {
                out[(r, self.cols + c)] = rhs[(r, c)].clone();
            }
        }
        out
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        RatMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    /// The submatrix of rows `r0..r0+rows` and columns `c0..c0+cols`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        RatMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = rref(&self.hstack(&Self::identity(n)));
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Determinant by Gaussian elimination; `None` for non-square input.
    pub fn determinant(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Some(Rational::zero());
            };
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pivot;
                for c in col..n {
                    let v = &a[(col, c)] * &factor;
                    a[(r, c)] -= v;
                }
            }
        }
        Some(det)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a[(row, col)].recip();
        for c in col..a.cols {
            let v = &a[(row, c)] * &inv;
            a[(row, c)] = v;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                if a[(row, c)].is_zero() {
                    continue;
                }
                let v = &a[(row, c)] * &factor;
                a[(r, c)] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right null space, one vector per free column, in column
/// order. Each basis vector has a `1` at its free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// One solution of `a x = b`, or `None` when inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vector>> {
    if a.rows != b.len() {
        return Err(Error::Dimension(format!(
            "system has {} rows but right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let aug = a.hstack(&RatMatrix::from_columns(a.rows, &[b.to_vec()]));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, a.cols)].clone();
    }
    Ok(Some(x))
}

/// Column indices of `m` forming a basis of its column space (first
/// independent columns, left to right).
pub fn column_basis(m: &RatMatrix) -> Vec<usize> {
    rref(m).1
}

/// Extends the column space of `m` to all of `Q^rows` by appending standard
/// basis vectors, left to right. Returns the indices of the standard vectors used.
pub fn complement_standard(m: &RatMatrix) -> Vec<usize> {
    let n = m.rows;
    let aug = m.hstack(&RatMatrix::identity(n));
    rref(&aug)
        .1
        .into_iter()
        .filter(|&p| p >= m.cols)
        .map(|p| p - m.cols)
        .collect()
}

pub fn vector_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest absolute value of a numerator or denominator; used by tests to
/// keep coefficient growth visible.
pub fn height(m: &RatMatrix) -> BigInt {
    m.data
        .iter()
        .flat_map(|x| [x.numer().abs(), x.denom().clone()])
        .max()
        .unwrap_or_else(BigInt::zero)
}
