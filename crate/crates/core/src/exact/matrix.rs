use super::{FieldScalar, Rational};
use crate::{Error, Result};
use std::fmt;

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldScalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn shape_err(&self, rhs: &Self) -> Error {
        Error::ShapeMismatch {
            lhs: format!("{}x{}", self.rows, self.cols),
            rhs: format!("{}x{}", rhs.rows, rhs.cols),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_err(rhs));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_err(rhs));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(factor)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.shape_err(rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(vj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Kronecker product: block `(i1, j1)` is `self[i1][j1] * rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * rhs.rows + i2, j1 * rhs.cols + j2, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Assembles a block-diagonal matrix from the given blocks, in order.
    pub fn block_diagonal(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut row0 = 0;
        let mut col0 = 0;
        for block in blocks {
            for i in 0..block.rows {
                for j in 0..block.cols {
                    out.set(row0 + i, col0 + j, block.get(i, j).clone());
                }
            }
            row0 += block.rows;
            col0 += block.cols;
        }
        out
    }

    /// `self - lambda * I`.
    pub fn sub_scalar_identity(&self, lambda: &T) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, out.get(i, i).sub(lambda));
        }
        Ok(out)
    }

    /// Rank by fraction-free (Bareiss) elimination with pivot search by
    /// nonzero scan.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |a: &Vec<T>, i: usize, j: usize| a[i * cols + j].clone();
        let mut prev = T::one();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !at(&a, r, col).is_zero()) else {
                continue;
            };
            if found != pivot_row {
                for j in 0..cols {
                    a.swap(found * cols + j, pivot_row * cols + j);
                }
            }
            let pivot = at(&a, pivot_row, col);
            for i in pivot_row + 1..rows {
                let lead = at(&a, i, col);
                for j in 0..cols {
                    let val = at(&a, i, j)
                        .mul(&pivot)
                        .sub(&lead.mul(&at(&a, pivot_row, j)));
                    // Exact division by the previous pivot (Bareiss step).
                    a[i * cols + j] = val.div(&prev).expect("previous pivot nonzero");
                }
            }
            prev = pivot;
            pivot_row += 1;
        }
        pivot_row
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.data.clone();
        let at = |a: &Vec<T>, i: usize, j: usize| a[i * n + j].clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n {
            let Some(found) = (k..n).find(|&r| !at(&a, r, k).is_zero()) else {
                return Ok(T::zero());
            };
            if found != k {
                for j in 0..n {
                    a.swap(found * n + j, k * n + j);
                }
                negate = !negate;
            }
            let pivot = at(&a, k, k);
            for i in k + 1..n {
                let lead = at(&a, i, k);
                for j in k + 1..n {
                    let val = at(&a, i, j).mul(&pivot).sub(&lead.mul(&at(&a, k, j)));
                    a[i * n + j] = val.div(&prev).expect("previous pivot nonzero");
                }
            }
            prev = pivot;
        }
        let det = at(&a, n - 1, n - 1);
        Ok(if negate { det.neg() } else { det })
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Err(Error::Singular);
            };
            if found != col {
                for j in 0..n {
                    let x = a.get(found, j).clone();
                    let y = a.get(col, j).clone();
                    a.set(found, j, y);
                    a.set(col, j, x);
                    let x = inv.get(found, j).clone();
                    let y = inv.get(col, j).clone();
                    inv.set(found, j, y);
                    inv.set(col, j, x);
                }
            }
            let pivot_inv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&pivot_inv));
                inv.set(col, j, inv.get(col, j).mul(&pivot_inv));
            }
            for i in 0..n {
                if i == col || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in 0..n {
                    a.set(i, j, a.get(i, j).sub(&factor.mul(a.get(col, j))));
                    inv.set(i, j, inv.get(i, j).sub(&factor.mul(inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }
}

impl<T: FieldScalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Serialises a rational matrix as text: a `rows cols` header line followed
/// by one line per row, entries written as integers or `p/q`.
pub fn write_matrix_text(m: &Matrix<Rational>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    for i in 0..m.rows() {
        let mut line = String::new();
        for j in 0..m.cols() {
            if j > 0 {
                line.push(' ');
            }
            let v = m.get(i, j);
            if v.is_integer() {
                write!(line, "{}", v.numer()).unwrap();
            } else {
                write!(line, "{}/{}", v.numer(), v.denom()).unwrap();
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses the text format produced by [`write_matrix_text`]. Entries may be
/// separated by arbitrary whitespace after the header.
pub fn parse_matrix_text(text: &str) -> Result<Matrix<Rational>> {
    let mut tokens = text.split_whitespace();
    let rows: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing row count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad row count: {e}")))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing column count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad column count: {e}")))?;
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {} entries", rows * cols)))?;
        data.push(parse_rational(tok)?);
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing entries after matrix".into()));
    }
    Ok(Matrix { rows, cols, data })
}

fn parse_rational(token: &str) -> Result<Rational> {
    let parse_int = |s: &str| -> Result<num_bigint::BigInt> {
        s.parse()
            .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
    };
    match token.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(token)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if num_traits::Zero::is_zero(&den) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}
