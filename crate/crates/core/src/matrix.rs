//! Dense matrices over [`Scalar`] with exact determinants and Pfaffians.
//!
//! Indices handed in through [`IndexSet`] are 1-based, as are the names of
//! generic (symbolic) entries; raw accessors are 0-based.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::combinat::IndexSet;
use crate::combinat::{crossing_number, perfect_matchings};
use crate::ring::{RingError, RingTag, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("Pfaffian needs even size, got {0}")]
    OddSize(usize),
    #[error("matrix is not skew-symmetric at ({row},{col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("entries must all lie in {expected}, found {found}")]
    MixedRings { expected: String, found: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invalid matrix file: {0}")]
    Format(String),
}

/// Row-major dense matrix whose entries all live in one ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: RingTag,
    data: Vec<Scalar>,
}

/// The structured `n × n` matrices used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structured {
    /// Strictly upper triangular, ones above the diagonal.
    Upper,
    /// Transpose of `Upper`.
    Lower,
    /// All ones.
    Ones,
    Identity,
}

impl Matrix {
    pub fn new(ring: RingTag, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.ring() != ring) {
            return Err(MatrixError::MixedRings {
                expected: ring.to_string(),
                found: bad.ring().to_string(),
            });
        }
        Ok(Matrix { rows, cols, ring, data })
    }

    pub fn from_fn(ring: &RingTag, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ring: ring.clone(),
            data,
        }
    }

    /// Integer matrix from literal rows.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        assert!(rows.iter().all(|row| row.as_ref().len() == c), "ragged rows");
        Matrix::from_fn(&RingTag::Integer, r, c, |i, j| Scalar::int(rows[i].as_ref()[j]))
    }

    pub fn zeros(ring: &RingTag, rows: usize, cols: usize) -> Self {
        let z = Scalar::zero(ring);
        Matrix::from_fn(ring, rows, cols, |_, _| z.clone())
    }

    pub fn identity(ring: &RingTag, n: usize) -> Self {
        Matrix::structured(Structured::Identity, n, ring)
    }

    pub fn structured(kind: Structured, n: usize, ring: &RingTag) -> Self {
        let (zero, one) = (Scalar::zero(ring), Scalar::one(ring));
        Matrix::from_fn(ring, n, n, |i, j| {
            let on = match kind {
                Structured::Upper => i < j,
                Structured::Lower => i > j,
                Structured::Ones => true,
                Structured::Identity => i == j,
            };
            if on {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Matrix whose `(i, j)` entry is the indeterminate `{prefix}{i}_{j}`
    /// (1-based), which must be declared in `ring`.
    pub fn generic(ring: &RingTag, prefix: &str, rows: usize, cols: usize) -> Result<Self, MatrixError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(Scalar::var(ring, &format!("{prefix}{i}_{j}"))?);
            }
        }
        Matrix::new(ring.clone(), rows, cols, data)
    }

    /// Names used by [`Matrix::generic`].
    pub fn generic_names(prefix: &str, rows: usize, cols: usize) -> Vec<String> {
        (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| format!("{prefix}{i}_{j}")))
            .collect()
    }

    /// Generic skew-symmetric matrix with `{prefix}{i}_{j}` above the diagonal.
    pub fn generic_skew(ring: &RingTag, prefix: &str, n: usize) -> Result<Self, MatrixError> {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = Scalar::var(ring, &format!("{prefix}{}_{}", i + 1, j + 1))?;
                m.data[j * n + i] = -&v;
                m.data[i * n + j] = v;
            }
        }
        Ok(m)
    }

    pub fn generic_skew_names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| format!("{prefix}{i}_{j}")))
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingTag {
        &self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) -> Result<(), MatrixError> {
        if v.ring() != self.ring {
            return Err(MatrixError::MixedRings {
                expected: self.ring.to_string(),
                found: v.ring().to_string(),
            });
        }
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Converts every entry into `ring` (integers embed anywhere).
    pub fn coerce(&self, ring: &RingTag) -> Result<Matrix, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|s| s.coerce(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: ring.clone(),
            data,
        })
    }

    fn ensure_ring(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(MatrixError::MixedRings {
                expected: self.ring.to_string(),
                found: other.ring.to_string(),
            })
        }
    }

    fn ensure_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &str,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix, MatrixError> {
        self.ensure_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, "subtract", |a, b| a - b)
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring.clone(),
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Result<Matrix, MatrixError> {
        if k.ring() != self.ring {
            return Err(MatrixError::MixedRings {
                expected: self.ring.to_string(),
                found: k.ring().to_string(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring.clone(),
            data: self.data.iter().map(|a| a * k).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.ensure_ring(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = Scalar::zero(&self.ring);
        Ok(Matrix::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        }))
    }

    fn check_indices(set: &IndexSet, bound: usize) -> Result<(), MatrixError> {
        match set.iter().find(|&i| i > bound) {
            Some(index) => Err(MatrixError::IndexOutOfRange { index, bound }),
            None => Ok(()),
        }
    }

    /// Entries in the rows of `rows` and columns of `cols`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Matrix, MatrixError> {
        Self::check_indices(rows, self.rows)?;
        Self::check_indices(cols, self.cols)?;
        let (r, c) = (rows.indices(), cols.indices());
        Ok(Matrix::from_fn(&self.ring, r.len(), c.len(), |a, b| {
            self.get(r[a] - 1, c[b] - 1).clone()
        }))
    }

    /// The columns indexed by `cols`, all rows.
    pub fn columns(&self, cols: &IndexSet) -> Result<Matrix, MatrixError> {
        Self::check_indices(cols, self.cols)?;
        let c = cols.indices();
        Ok(Matrix::from_fn(&self.ring, self.rows, c.len(), |a, b| {
            self.get(a, c[b] - 1).clone()
        }))
    }

    /// Column `j` (1-based) as an `rows × 1` matrix.
    pub fn column(&self, j: usize) -> Result<Matrix, MatrixError> {
        if j == 0 || j > self.cols {
            return Err(MatrixError::IndexOutOfRange {
                index: j,
                bound: self.cols,
            });
        }
        Ok(Matrix::from_fn(&self.ring, self.rows, 1, |a, _| {
            self.get(a, j - 1).clone()
        }))
    }

    /// Blocks side by side, left to right.
    pub fn concat_columns(blocks: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = blocks
            .first()
            .ok_or_else(|| MatrixError::Shape("no blocks to concatenate".into()))?;
        for b in blocks {
            first.ensure_ring(b)?;
            if b.rows != first.rows {
                return Err(MatrixError::Shape(format!(
                    "row counts differ: {} vs {}",
                    first.rows, b.rows
                )));
            }
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(first.rows * cols);
        for i in 0..first.rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Matrix {
            rows: first.rows,
            cols,
            ring: first.ring.clone(),
            data,
        })
    }

    /// `(m+1) × (n+1)` matrix with `self` in the top-left corner, a 1 in the
    /// bottom-right corner and zeros elsewhere.
    pub fn augment_hat(&self) -> Matrix {
        let (zero, one) = (Scalar::zero(&self.ring), Scalar::one(&self.ring));
        Matrix::from_fn(&self.ring, self.rows + 1, self.cols + 1, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i == self.rows && j == self.cols {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Deletes the rows and the columns listed in `idx` simultaneously.
    pub fn delete_rc(&self, idx: &IndexSet) -> Result<Matrix, MatrixError> {
        let n = self.ensure_square()?;
        Self::check_indices(idx, n)?;
        let keep: Vec<usize> = (0..n).filter(|&i| !idx.contains(i + 1)).collect();
        Ok(Matrix::from_fn(&self.ring, keep.len(), keep.len(), |a, b| {
            self.get(keep[a], keep[b]).clone()
        }))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// First violation of `Y = -Yᵗ` (zero diagonal included), 1-based.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((1, 1));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.skew_violation().is_none()
    }

    fn ensure_pfaffian_input(&self) -> Result<usize, MatrixError> {
        let n = self.ensure_square()?;
        if n % 2 == 1 {
            return Err(MatrixError::OddSize(n));
        }
        if let Some((row, col)) = self.skew_violation() {
            return Err(MatrixError::NotSkewSymmetric { row, col });
        }
        Ok(n)
    }

    /// Determinant by cofactor expansion along the first remaining row,
    /// memoised on the set of columns already used. Division free, so it
    /// serves as the reference for every other determinant route.
    pub fn det_cofactor(&self) -> Result<Scalar, MatrixError> {
        let n = self.ensure_square()?;
        assert!(n < 64, "cofactor expansion limited to 63x63");
        let mut memo: HashMap<u64, Scalar> = HashMap::new();
        Ok(self.cofactor_rec(0, 0, n, &mut memo))
    }

    fn cofactor_rec(&self, row: usize, used: u64, n: usize, memo: &mut HashMap<u64, Scalar>) -> Scalar {
        if row == n {
            return Scalar::one(&self.ring);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = Scalar::zero(&self.ring);
        let mut free_before = 0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = self.get(row, col);
            if !entry.is_zero() {
                let minor = self.cofactor_rec(row + 1, used | (1 << col), n, memo);
                if !minor.is_zero() {
                    let term = entry * &minor;
                    if free_before % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// Fraction-free (Bareiss) elimination with row pivoting. Every division
    /// is exact over an integral domain; an inexact one is reported as an
    /// error since it can only come from a bug.
    pub fn det_bareiss(&self) -> Result<Scalar, MatrixError> {
        let n = self.ensure_square()?;
        if n == 0 {
            return Ok(Scalar::one(&self.ring));
        }
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Scalar::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    // A zero column in the trailing block: the determinant vanishes.
                    None => return Ok(Scalar::zero(&self.ring)),
                }
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let mut v = &row[j] * pivot;
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v -= &lead * &pivot_row[j];
                    }
                    row[j] = if prev.is_one() { v } else { v.exact_divide(&prev)? };
                }
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].negate_if(negate))
    }

    /// Determinant with the default kernel (fraction-free elimination).
    pub fn det(&self) -> Result<Scalar, MatrixError> {
        self.det_bareiss()
    }

    /// Pfaffian as the signed sum over perfect matchings, the sign of a
    /// matching being `(-1)^crossings`.
    pub fn pfaffian_matchings(&self) -> Result<Scalar, MatrixError> {
        let n = self.ensure_pfaffian_input()?;
        let ground: Vec<usize> = (1..=n).collect();
        let mut acc = Scalar::zero(&self.ring);
        for mu in perfect_matchings(&ground).expect("even ground set") {
            let mut term = Scalar::one(&self.ring);
            for &(i, j) in mu.pairs() {
                term *= self.get(i - 1, j - 1);
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            if crossing_number(&mu).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    }

    /// Pfaffian by Laplace expansion along the last surviving index,
    /// memoised on the bitmask of surviving indices.
    pub fn pfaffian_laplace(&self) -> Result<Scalar, MatrixError> {
        let n = self.ensure_pfaffian_input()?;
        assert!(n < 64, "Laplace Pfaffian limited to 62x62");
        let mut memo = HashMap::new();
        Ok(self.pfaffian_rec((1u64 << n) - 1, &mut memo))
    }

    fn pfaffian_rec(&self, mask: u64, memo: &mut HashMap<u64, Scalar>) -> Scalar {
        if mask == 0 {
            return Scalar::one(&self.ring);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let members: Vec<usize> = (0..64).filter(|&b| mask & (1 << b) != 0).collect();
        let s = members.len();
        let last = members[s - 1];
        let mut acc = Scalar::zero(&self.ring);
        for (p, &j) in members[..s - 1].iter().enumerate() {
            let entry = self.get(j, last);
            if entry.is_zero() {
                continue;
            }
            let sub = self.pfaffian_rec(mask & !(1 << j) & !(1 << last), memo);
            if sub.is_zero() {
                continue;
            }
            // (-1)^(s - (p+1) - 1) with p 0-based.
            let term = entry * &sub;
            if (s - p).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Pfaffian with the default kernel (memoised Laplace expansion).
    pub fn pfaffian(&self) -> Result<Scalar, MatrixError> {
        self.pfaffian_laplace()
    }

    pub fn from_json(text: &str) -> Result<Matrix, MatrixError> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| MatrixError::Format(e.to_string()))?;
        file.into_matrix()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile::from_matrix(self)).expect("matrix serialises")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixFile::from_matrix(self).serialize(serializer)
    }
}

/// `"int"`, `"rat"` or `{"poly": ["x1", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Named(String),
    Poly { poly: Vec<String> },
}

impl RingSpec {
    pub fn to_ring(&self) -> Result<RingTag, MatrixError> {
        match self {
            RingSpec::Named(s) if s == "int" => Ok(RingTag::Integer),
            RingSpec::Named(s) if s == "rat" => Ok(RingTag::Rational),
            RingSpec::Named(s) => Err(MatrixError::Format(format!(
                "unknown ring {s:?}; expected \"int\", \"rat\" or {{\"poly\": [...]}}"
            ))),
            RingSpec::Poly { poly } => Ok(RingTag::polynomial(poly.iter().cloned())?),
        }
    }

    pub fn from_ring(ring: &RingTag) -> Self {
        match ring {
            RingTag::Integer => RingSpec::Named("int".into()),
            RingTag::Rational => RingSpec::Named("rat".into()),
            RingTag::Polynomial(vars) => RingSpec::Poly {
                poly: vars.names().to_vec(),
            },
        }
    }
}

/// Entry in a matrix file: scalar text, or a bare JSON integer for convenience.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum EntrySpec {
    Text(String),
    Number(i64),
}

/// On-disk matrix format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Vec<EntrySpec>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixFile {
            ring: RingSpec::from_ring(&m.ring),
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(|s| EntrySpec::Text(s.to_string())).collect())
                .collect(),
        }
    }

    pub fn into_matrix(self) -> Result<Matrix, MatrixError> {
        let ring = self.ring.to_ring()?;
        if self.entries.len() != self.rows {
            return Err(MatrixError::Format(format!(
                "declared {} rows but found {}",
                self.rows,
                self.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(MatrixError::Format(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    self.cols
                )));
            }
            for (j, e) in row.iter().enumerate() {
                let v = match e {
                    EntrySpec::Number(v) => Scalar::from_i64(&ring, *v),
                    EntrySpec::Text(t) => Scalar::parse(t, &ring)
                        .map_err(|err| MatrixError::Format(format!("entry ({}, {}): {err}", i + 1, j + 1)))?,
                };
                data.push(v);
            }
        }
        Matrix::new(ring, self.rows, self.cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> IndexSet {
        IndexSet::new(n, v.to_vec()).unwrap()
    }

    fn int(v: i64) -> Scalar {
        Scalar::int(v)
    }

    #[test]
    fn submatrix_examples() {
        let id3 = Matrix::identity(&RingTag::Integer, 3);
        assert_eq!(
            id3.submatrix(&set(3, &[1, 2]), &set(3, &[1, 2])).unwrap(),
            Matrix::identity(&RingTag::Integer, 2)
        );
        let m = Matrix::from_i64(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(
            m.submatrix(&set(2, &[2]), &set(3, &[1, 3])).unwrap(),
            Matrix::from_i64(&[[4, 6]])
        );
        let u3 = Matrix::structured(Structured::Upper, 3, &RingTag::Integer);
        assert_eq!(
            u3.submatrix(&set(3, &[1]), &set(3, &[2, 3])).unwrap(),
            Matrix::from_i64(&[[1, 1]])
        );
        assert!(matches!(
            m.submatrix(&set(3, &[3]), &set(3, &[1])),
            Err(MatrixError::IndexOutOfRange { index: 3, bound: 2 })
        ));
    }

    #[test]
    fn concat_examples() {
        let a = Matrix::from_i64(&[[1], [0]]);
        let b = Matrix::from_i64(&[[5, 6], [7, 8]]);
        let c = Matrix::concat_columns(&[&a, &b.column(2).unwrap()]).unwrap();
        assert_eq!(c, Matrix::from_i64(&[[1, 6], [0, 8]]));
        let id2 = Matrix::identity(&RingTag::Integer, 2);
        assert_eq!(Matrix::concat_columns(&[&id2]).unwrap(), id2);
        let cols = [
            Matrix::from_i64(&[[1], [2]]),
            Matrix::from_i64(&[[3], [4]]),
            Matrix::from_i64(&[[5], [6]]),
        ];
        let r = Matrix::concat_columns(&[&cols[0], &cols[1], &cols[2]]).unwrap();
        for j in 0..3 {
            assert_eq!(r.column(j + 1).unwrap(), cols[j]);
        }
        let short = Matrix::from_i64(&[[1]]);
        assert!(matches!(
            Matrix::concat_columns(&[&a, &short]),
            Err(MatrixError::Shape(_))
        ));
    }

    #[test]
    fn structured_examples() {
        let r = RingTag::Integer;
        assert_eq!(
            Matrix::structured(Structured::Upper, 2, &r),
            Matrix::from_i64(&[[0, 1], [0, 0]])
        );
        assert_eq!(
            Matrix::structured(Structured::Ones, 2, &r),
            Matrix::from_i64(&[[1, 1], [1, 1]])
        );
        for n in 1..6 {
            let u = Matrix::structured(Structured::Upper, n, &r);
            let l = Matrix::structured(Structured::Lower, n, &r);
            assert_eq!(u.transpose(), l);
            let sum = u.add(&l).unwrap().add(&Matrix::identity(&r, n)).unwrap();
            assert_eq!(sum, Matrix::structured(Structured::Ones, n, &r));
        }
    }

    #[test]
    fn augment_examples() {
        assert_eq!(
            Matrix::from_i64(&[[1, 2]]).augment_hat(),
            Matrix::from_i64(&[[1, 2, 0], [0, 0, 1]])
        );
        let a = Matrix::from_i64(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).augment_hat();
        assert_eq!((a.rows(), a.cols()), (4, 4));
    }

    #[test]
    fn determinant_examples() {
        let m = Matrix::from_i64(&[[1, 1], [1, 2]]);
        assert_eq!(m.det_cofactor().unwrap(), int(1));
        assert_eq!(m.det_bareiss().unwrap(), int(1));
        let empty = Matrix::zeros(&RingTag::Integer, 0, 0);
        assert_eq!(empty.det_cofactor().unwrap(), int(1));
        assert_eq!(empty.det_bareiss().unwrap(), int(1));
        assert_eq!(Matrix::identity(&RingTag::Integer, 5).det_bareiss().unwrap(), int(1));
        assert_eq!(Matrix::from_i64(&[[0, 1], [1, 0]]).det_bareiss().unwrap(), int(-1));
        assert!(matches!(
            Matrix::from_i64(&[[1, 2]]).det_cofactor(),
            Err(MatrixError::NotSquare { .. })
        ));
        assert!(Matrix::from_i64(&[[1, 2]]).det_bareiss().is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = Matrix::from_i64(&[[0, 2, 1], [0, 1, 3], [4, 1, 1]]);
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
        assert_eq!(m.det_cofactor().unwrap(), int(20));
        let singular = Matrix::from_i64(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(singular.det_bareiss().unwrap(), int(0));
        let zero_col = Matrix::from_i64(&[[1, 0, 3], [2, 0, 6], [1, 0, 1]]);
        assert_eq!(zero_col.det_bareiss().unwrap(), int(0));
    }

    #[test]
    fn bareiss_over_polynomials() {
        let ring = RingTag::polynomial(Matrix::generic_names("x", 3, 3)).unwrap();
        let x = Matrix::generic(&ring, "x", 3, 3).unwrap();
        assert_eq!(x.det_bareiss().unwrap(), x.det_cofactor().unwrap());
    }

    #[test]
    fn pfaffian_examples() {
        let ring = RingTag::polynomial(["a"]).unwrap();
        let a = Scalar::var(&ring, "a").unwrap();
        let y = Matrix::new(
            ring.clone(),
            2,
            2,
            vec![Scalar::zero(&ring), a.clone(), -&a, Scalar::zero(&ring)],
        )
        .unwrap();
        assert_eq!(y.pfaffian_matchings().unwrap(), a);
        assert_eq!(y.pfaffian_laplace().unwrap(), a);

        let empty = Matrix::zeros(&RingTag::Integer, 0, 0);
        assert_eq!(empty.pfaffian_matchings().unwrap(), int(1));
        assert_eq!(empty.pfaffian_laplace().unwrap(), int(1));
    }

    #[test]
    fn generic_4x4_pfaffian() {
        let ring = RingTag::polynomial(Matrix::generic_skew_names("y", 4)).unwrap();
        let y = Matrix::generic_skew(&ring, "y", 4).unwrap();
        // Matchings of [4]: {12,34} no crossing, {13,24} one, {14,23} none.
        let expected = Scalar::parse("y1_2*y3_4 - y1_3*y2_4 + y1_4*y2_3", &ring).unwrap();
        assert_eq!(y.pfaffian_matchings().unwrap(), expected);
        assert_eq!(y.pfaffian_laplace().unwrap(), expected);
        assert_eq!(y.det_cofactor().unwrap(), expected.square());
    }

    #[test]
    fn pfaffian_input_validation() {
        assert_eq!(
            Matrix::zeros(&RingTag::Integer, 3, 3).pfaffian_matchings(),
            Err(MatrixError::OddSize(3))
        );
        assert!(matches!(
            Matrix::from_i64(&[[0, 1], [1, 0]]).pfaffian_laplace(),
            Err(MatrixError::NotSkewSymmetric { row: 1, col: 2 })
        ));
        assert!(matches!(
            Matrix::from_i64(&[[1, 1], [-1, 0]]).pfaffian_matchings(),
            Err(MatrixError::NotSkewSymmetric { row: 1, col: 1 })
        ));
    }

    #[test]
    fn delete_rc_examples() {
        let id3 = Matrix::identity(&RingTag::Integer, 3);
        assert_eq!(
            id3.delete_rc(&set(3, &[2])).unwrap(),
            Matrix::identity(&RingTag::Integer, 2)
        );
        let y = Matrix::from_i64(&[[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]);
        assert!(y.delete_rc(&set(4, &[3])).unwrap().is_skew_symmetric());
        assert_eq!(
            y.delete_rc(&set(4, &[1, 2])).unwrap(),
            y.delete_rc(&set(4, &[2])).unwrap().delete_rc(&set(3, &[1])).unwrap()
        );
        assert!(y.delete_rc(&set(5, &[5])).is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let ring = RingTag::polynomial(["x1", "x2"]).unwrap();
        let m = Matrix::new(
            ring.clone(),
            1,
            2,
            vec![
                Scalar::parse("2*x1^2 - 5", &ring).unwrap(),
                Scalar::parse("x2", &ring).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(Matrix::from_json(&m.to_json()).unwrap(), m);

        let text = r#"{"ring": "int", "rows": 2, "cols": 2, "entries": [[1, "2"], ["-3", 4]]}"#;
        assert_eq!(Matrix::from_json(text).unwrap(), Matrix::from_i64(&[[1, 2], [-3, 4]]));

        let bad = r#"{"ring": "int", "rows": 1, "cols": 2, "entries": [["1", "x"]]}"#;
        let err = Matrix::from_json(bad).unwrap_err().to_string();
        assert!(err.contains("entry (1, 2)"), "{err}");
        let ragged = r#"{"ring": "int", "rows": 1, "cols": 2, "entries": [["1"]]}"#;
        assert!(Matrix::from_json(ragged).is_err());
        let syntax = "{\"ring\": \"int\",\n \"rows\": 1,, }";
        let err = Matrix::from_json(syntax).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let rat = r#"{"ring": "rat", "rows": 1, "cols": 1, "entries": [["3/6"]]}"#;
        assert_eq!(Matrix::from_json(rat).unwrap().get(0, 0).to_string(), "1/2");
    }

    #[test]
    fn mixed_rings_rejected() {
        let rat = Scalar::parse("1/2", &RingTag::Rational).unwrap();
        assert!(matches!(
            Matrix::new(RingTag::Integer, 1, 1, vec![rat]),
            Err(MatrixError::MixedRings { .. })
        ));
    }
}
