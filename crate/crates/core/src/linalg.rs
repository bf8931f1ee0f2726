//! Exact dense linear algebra over arbitrary-precision integers.
//!
//! Every matrix carries row and column labels. Products check that the inner
//! labels agree, so matrices built over constructed alphabets (blocks, pairs,
//! triples) cannot be multiplied in the wrong basis by accident.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{op}: label mismatch between operands")]
    LabelMismatch { op: &'static str },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Labels `1..=n`, the default alphabet for unlabeled input.
pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String], expected: usize) -> Result<()> {
    if labels.len() != expected {
        return Err(LinalgError::LabelCount {
            expected,
            got: labels.len(),
        });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(LinalgError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Dense row-major matrix of big integers with labeled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl IntMatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<BigInt>,
    ) -> Result<Self> {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        check_labels(&row_labels, rows)?;
        check_labels(&col_labels, cols)?;
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
            row_labels,
            col_labels,
        })
    }

    /// Builds a labeled matrix from nested rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: &[Vec<T>],
    ) -> Result<Self> {
        if rows.len() != row_labels.len() {
            return Err(LinalgError::LabelCount {
                expected: rows.len(),
                got: row_labels.len(),
            });
        }
        let mut entries = Vec::with_capacity(rows.len() * col_labels.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(LinalgError::RaggedRow {
                    row: i,
                    expected: col_labels.len(),
                    got: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(row_labels, col_labels, entries)
    }

    /// Square matrix sharing one label list for rows and columns.
    pub fn square<T: Into<BigInt> + Clone>(labels: Vec<String>, rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows(labels.clone(), labels, rows)
    }

    /// Square matrix with default labels `1..=n`.
    pub fn from_square_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::square(default_labels(rows.len()), rows)
    }

    pub fn zeros(row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let n = row_labels.len() * col_labels.len();
        Self::new(row_labels, col_labels, vec![BigInt::zero(); n])
            .expect("zero matrix over valid labels")
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut m = Self::zeros(labels.clone(), labels);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Matrix with the given 0/1 predicate over index pairs.
    pub fn from_fn(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self> {
        let (r, c) = (row_labels.len(), col_labels.len());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(BigInt::from(f(i, j)));
            }
        }
        Self::new(row_labels, col_labels, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    /// Whether entry `(r, c)` equals one.
    pub fn is_one(&self, r: usize, c: usize) -> bool {
        self.get(r, c).is_one()
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First position of an entry that is neither 0 nor 1.
    pub fn first_non_zero_one(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !(e.is_zero() || e.is_one()))
            .map(|p| (p / self.cols, p % self.cols))
    }

    /// First position where `self` and `other` differ (same shape assumed).
    pub fn first_difference(&self, other: &IntMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }

    /// Same entries, ignoring labels.
    pub fn same_entries(&self, other: &IntMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn with_labels(&self, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        Self::new(row_labels, col_labels, self.entries.clone())
    }

    /// Applies a simultaneous permutation: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permute_square(&self, perm: &[usize], labels: Vec<String>) -> Result<Self> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        Self::new(labels.clone(), labels, entries)
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_shape(&self, other: &IntMatrix, op: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        if self.row_labels != other.row_labels || self.col_labels != other.col_labels {
            return Err(LinalgError::LabelMismatch { op });
        }
        Ok(())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.same_shape(other, "add")?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.same_shape(other, "sub")?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e -= o;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= k;
        }
        out
    }

    /// `self - c * I`.
    pub fn shift_diagonal(&self, c: &BigInt) -> Result<IntMatrix> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            out.entries[i * n + i] -= c;
        }
        Ok(out)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{:>6} [{}]", self.row_labels[r], row.join(" "))?;
        }
        Ok(())
    }
}

/// Labeled column vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVector {
    entries: Vec<BigInt>,
    labels: Vec<String>,
}

impl IntVector {
    pub fn new(labels: Vec<String>, entries: Vec<BigInt>) -> Result<Self> {
        check_labels(&labels, entries.len())?;
        Ok(IntVector { entries, labels })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `uᵀ M v` with label checks on both sides.
    pub fn bilinear(&self, m: &IntMatrix, v: &IntVector) -> Result<BigInt> {
        if self.labels != m.row_labels || m.col_labels != v.labels {
            return Err(LinalgError::LabelMismatch { op: "bilinear" });
        }
        let mut acc = BigInt::zero();
        for (i, u) in self.entries.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, w) in v.entries.iter().enumerate() {
                if !w.is_zero() {
                    row += m.get(i, j) * w;
                }
            }
            acc += u * row;
        }
        Ok(acc)
    }
}

/// Exact matrix product. Inner labels must agree.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch {
            op: "mat_mul",
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    if a.col_labels != b.row_labels {
        return Err(LinalgError::LabelMismatch { op: "mat_mul" });
    }
    let (n, m, p) = (a.rows, a.cols, b.cols);
    let mut entries = vec![BigInt::zero(); n * p];
    for i in 0..n {
        let out = &mut entries[i * p..(i + 1) * p];
        for k in 0..m {
            let aik = &a.entries[i * m + k];
            if aik.is_zero() {
                continue;
            }
            let brow = &b.entries[k * p..(k + 1) * p];
            for (o, bkj) in out.iter_mut().zip(brow) {
                if !bkj.is_zero() {
                    *o += aik * bkj;
                }
            }
        }
    }
    Ok(IntMatrix {
        rows: n,
        cols: p,
        entries,
        row_labels: a.row_labels.clone(),
        col_labels: b.col_labels.clone(),
    })
}

/// `a^k` by repeated squaring; `a^0 = I`.
pub fn mat_pow(a: &IntMatrix, mut k: u32) -> Result<IntMatrix> {
    a.require_square()?;
    let mut result = IntMatrix::identity(a.row_labels.clone());
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(result)
}

pub fn trace(a: &IntMatrix) -> Result<BigInt> {
    let n = a.require_square()?;
    Ok((0..n).map(|i| a.get(i, i)).sum())
}

/// Diagonal of a square matrix as a labeled vector.
pub fn delta(a: &IntMatrix) -> Result<IntVector> {
    let n = a.require_square()?;
    IntVector::new(
        a.row_labels.clone(),
        (0..n).map(|i| a.get(i, i).clone()).collect(),
    )
}

/// Characteristic polynomial `det(tI - A)` by Berkowitz's division-free
/// algorithm. All intermediate values are integers.
pub fn char_poly(a: &IntMatrix) -> Result<IntPolynomial> {
    let n = a.require_square()?;
    let at = |i: usize, j: usize| a.get(i, j);
    // Descending coefficients of the characteristic polynomial of the leading
    // r x r block.
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        let mut col: Vec<BigInt> = Vec::with_capacity(r + 2);
        col.push(BigInt::one());
        col.push(-at(r, r));
        let mut x: Vec<BigInt> = (0..r).map(|i| at(i, r).clone()).collect();
        for _ in 0..r {
            let rx: BigInt = (0..r).map(|j| at(r, j) * &x[j]).sum();
            col.push(-rx);
            x = (0..r)
                .map(|i| (0..r).map(|j| at(i, j) * &x[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i.min(r) + 1) {
                *slot += &col[i - j] * vj;
            }
        }
        v = next;
    }
    v.reverse();
    Ok(IntPolynomial::new(v))
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn rank_over_rationals(a: &IntMatrix) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = a.to_rows();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v.div_floor(&prev);
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Ranks of `(a - eigenvalue·I)^j` for `j = 1..=max_power`.
pub fn rank_profile(a: &IntMatrix, eigenvalue: &BigInt, max_power: u32) -> Result<Vec<usize>> {
    let shifted = a.shift_diagonal(eigenvalue)?;
    let mut acc = shifted.clone();
    let mut out = Vec::with_capacity(max_power as usize);
    for j in 1..=max_power {
        if j > 1 {
            acc = mat_mul(&acc, &shifted)?;
        }
        out.push(rank_over_rationals(&acc));
    }
    Ok(out)
}

/// Rational matrix used by the intertwiner search; rows of exact fractions.
pub(crate) fn rational_rref(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Integer polynomial in `t`, coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Evaluates the polynomial at a square matrix (Horner's rule).
    pub fn eval_matrix(&self, a: &IntMatrix) -> Result<IntMatrix> {
        a.require_square()?;
        let mut acc = IntMatrix::zeros(a.row_labels.clone(), a.col_labels.clone());
        let id = IntMatrix::identity(a.row_labels.clone());
        for c in self.coeffs.iter().rev() {
            acc = mat_mul(&acc, a)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
