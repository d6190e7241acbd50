//! Exact linear algebra over the prime fields `F_p`.
//!
//! Scalars are residues in `0..p` stored as `u32`; vectors and matrices
//! reduce their entries on construction, so arithmetic never leaves the
//! field. Rank and determinant use Gaussian elimination with the
//! deterministic "first nonzero entry" pivot rule, which keeps every run
//! reproducible. All matrices in this crate are tiny (a few dozen rows at
//! most), so the code favours clarity and exactness over asymptotics.

use std::fmt;

use thiserror::Error;

/// Errors from finite-field arithmetic and matrix shape validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    /// The modulus handed to [`Prime::new`] is not a prime number.
    #[error("{0} is not a prime number")]
    NotPrime(u32),
    /// Zero has no multiplicative inverse in a field.
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    /// Two operands live over different prime fields.
    #[error("modulus mismatch: F_{left} vs F_{right}")]
    ModulusMismatch { left: u32, right: u32 },
    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// A matrix was built from a data buffer of the wrong length.
    #[error("matrix shape {rows}x{cols} needs {expected} entries, got {actual}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },
    /// The determinant is only defined for square matrices.
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
}

/// A prime modulus, validated at construction.
///
/// Wrapping the modulus in a newtype means every downstream function can
/// rely on primality (hence on `F_p` being a field) without re-checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    /// Validates `p` by trial division and wraps it.
    pub fn new(p: u32) -> Result<Self, FpError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(FpError::NotPrime(p))
        }
    }

    /// The underlying modulus.
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary product-sized value into `0..p`.
    pub fn reduce(self, x: u64) -> u32 {
        (x % u64::from(self.0)) as u32
    }

    /// `(a + b) mod p` for residues `a, b` in `0..p`.
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) + u64::from(b))
    }

    /// `(a - b) mod p` for residues `a, b` in `0..p`.
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) + u64::from(self.0) - u64::from(b))
    }

    /// `(a * b) mod p` for residues `a, b` in `0..p`.
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) * u64::from(b))
    }

    /// `(-a) mod p` for a residue `a` in `0..p`.
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// `a^e mod p` by binary exponentiation.
    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.0;
        let mut acc: u32 = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of `a` via Fermat's little theorem
    /// (`a^{p-2} mod p`). Fails on `a ≡ 0`.
    pub fn inverse(self, a: u32) -> Result<u32, FpError> {
        let a = a % self.0;
        if a == 0 {
            return Err(FpError::ZeroInverse);
        }
        Ok(self.pow(a, self.0 - 2))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for Prime {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = u32::deserialize(deserializer)?;
        Prime::new(value).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while u64::from(d) * u64::from(d) <= u64::from(n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Multiplicative inverse of the residue `a` modulo `p`.
///
/// Convenience wrapper around [`Prime::inverse`]: fails with
/// [`FpError::ZeroInverse`] when `a ≡ 0 (mod p)`.
pub fn scalar_inverse(p: Prime, a: u32) -> Result<u32, FpError> {
    p.inverse(a)
}

fn require_same_modulus(left: Prime, right: Prime) -> Result<(), FpError> {
    if left == right {
        Ok(())
    } else {
        Err(FpError::ModulusMismatch {
            left: left.get(),
            right: right.get(),
        })
    }
}

/// An element of `F_p`: a residue tagged with its modulus.
///
/// The arithmetic operators panic when the moduli differ, since mixing
/// fields is a programming error rather than a data error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: Prime,
}

impl FpScalar {
    /// Reduces `value` into `0..p`.
    pub fn new(value: u64, modulus: Prime) -> Self {
        FpScalar {
            value: modulus.reduce(value),
            modulus,
        }
    }

    /// The residue in `0..p`.
    pub fn value(self) -> u32 {
        self.value
    }

    /// The field this scalar lives in.
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    /// Whether this is the zero element.
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inverse(self) -> Result<FpScalar, FpError> {
        Ok(FpScalar {
            value: self.modulus.inverse(self.value)?,
            modulus: self.modulus,
        })
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(self, e: u32) -> FpScalar {
        FpScalar {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        require_same_modulus(self.modulus, rhs.modulus).expect("scalar addition across fields");
        FpScalar {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        require_same_modulus(self.modulus, rhs.modulus).expect("scalar subtraction across fields");
        FpScalar {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        require_same_modulus(self.modulus, rhs.modulus)
            .expect("scalar multiplication across fields");
        FpScalar {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A dense vector over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    modulus: Prime,
    coords: Vec<u32>,
}

impl FpVector {
    /// Builds a vector, reducing every coordinate into `0..p`.
    pub fn new(modulus: Prime, coords: Vec<u32>) -> Self {
        let coords = coords
            .into_iter()
            .map(|c| modulus.reduce(u64::from(c)))
            .collect();
        FpVector { modulus, coords }
    }

    /// The zero vector of the given length.
    pub fn zero(modulus: Prime, len: usize) -> Self {
        FpVector {
            modulus,
            coords: vec![0; len],
        }
    }

    /// The standard basis vector `e_i` (0-based) of the given length.
    ///
    /// Panics if `i >= len`.
    pub fn basis(modulus: Prime, len: usize, i: usize) -> Self {
        assert!(i < len, "basis index {i} out of range for length {len}");
        let mut coords = vec![0; len];
        coords[i] = 1;
        FpVector { modulus, coords }
    }

    /// The field this vector lives over.
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// Whether the vector has no coordinates at all.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The coordinate at position `i` (0-based).
    pub fn get(&self, i: usize) -> u32 {
        self.coords[i]
    }

    /// Overwrites the coordinate at position `i`, reducing mod `p`.
    pub fn set(&mut self, i: usize, value: u32) {
        self.coords[i] = self.modulus.reduce(u64::from(value));
    }

    /// The coordinates as a slice of residues.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Whether every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The 0-based indices of the nonzero coordinates, ascending.
    ///
    /// For example the support of `(0, 0, 1, 1)` is `[2, 3]`.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the first nonzero coordinate, if any.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|&c| c != 0)
    }

    /// The vector scaled by the residue `c`.
    pub fn scaled(&self, c: u32) -> FpVector {
        let c = self.modulus.reduce(u64::from(c));
        FpVector {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .map(|&x| self.modulus.mul(x, c))
                .collect(),
        }
    }

    /// Coordinate-wise sum; fails on modulus or length mismatch.
    pub fn add(&self, other: &FpVector) -> Result<FpVector, FpError> {
        require_same_modulus(self.modulus, other.modulus)?;
        if self.len() != other.len() {
            return Err(FpError::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(FpVector {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| self.modulus.add(a, b))
                .collect(),
        })
    }

    /// In-place `self += c * other`; fails on modulus or length mismatch.
    pub fn add_scaled(&mut self, other: &FpVector, c: u32) -> Result<(), FpError> {
        require_same_modulus(self.modulus, other.modulus)?;
        if self.len() != other.len() {
            return Err(FpError::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let c = self.modulus.reduce(u64::from(c));
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = self.modulus.add(*a, self.modulus.mul(c, b));
        }
        Ok(())
    }

    /// The scalar multiple of this vector whose first nonzero coordinate
    /// is 1, or `None` for the zero vector.
    ///
    /// Every nonzero vector has exactly one such multiple, so this picks a
    /// canonical representative of the scalar orbit `{c·v : c ≠ 0}`.
    pub fn normalized_leading_one(&self) -> Option<FpVector> {
        let lead = self.leading_index()?;
        let inv = self
            .modulus
            .inverse(self.coords[lead])
            .expect("leading coordinate is nonzero");
        Some(self.scaled(inv))
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    modulus: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    /// Builds a matrix from row-major data, reducing entries mod `p`.
    pub fn new(modulus: Prime, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, FpError> {
        let expected = rows
            .checked_mul(cols)
            .expect("matrix dimensions overflow usize");
        if data.len() != expected {
            return Err(FpError::ShapeMismatch {
                rows,
                cols,
                expected,
                actual: data.len(),
            });
        }
        let data = data
            .into_iter()
            .map(|c| modulus.reduce(u64::from(c)))
            .collect();
        Ok(FpMatrix {
            modulus,
            rows,
            cols,
            data,
        })
    }

    /// The all-zero matrix of the given shape.
    pub fn zero(modulus: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(modulus: Prime, n: usize) -> Self {
        let mut m = FpMatrix::zero(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Assembles vectors as the *columns* of a matrix.
    ///
    /// Fails if the vectors disagree on modulus or length. Panics if
    /// `columns` is empty (an empty family is vacuously independent and
    /// needs no matrix; see [`linearly_independent`]).
    pub fn from_columns(columns: &[FpVector]) -> Result<Self, FpError> {
        let first = columns
            .first()
            .expect("from_columns requires at least one column");
        let modulus = first.modulus();
        let rows = first.len();
        for v in columns {
            require_same_modulus(modulus, v.modulus())?;
            if v.len() != rows {
                return Err(FpError::DimensionMismatch {
                    left: rows,
                    right: v.len(),
                });
            }
        }
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (j, v) in columns.iter().enumerate() {
            for i in 0..rows {
                data[i * cols + j] = v.get(i);
            }
        }
        Ok(FpMatrix {
            modulus,
            rows,
            cols,
            data,
        })
    }

    /// The field this matrix lives over.
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The entry at `(row, col)`, 0-based.
    pub fn get(&self, row: usize, col: usize) -> u32 {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.data[row * self.cols + col]
    }

    /// Overwrites the entry at `(row, col)`, reducing mod `p`.
    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.data[row * self.cols + col] = self.modulus.reduce(u64::from(value));
    }

    /// Extracts row `i` as a vector.
    pub fn row(&self, i: usize) -> FpVector {
        assert!(i < self.rows, "row index out of range");
        FpVector {
            modulus: self.modulus,
            coords: self.data[i * self.cols..(i + 1) * self.cols].to_vec(),
        }
    }

    /// Extracts column `j` as a vector.
    pub fn column(&self, j: usize) -> FpVector {
        assert!(j < self.cols, "column index out of range");
        FpVector {
            modulus: self.modulus,
            coords: (0..self.rows)
                .map(|i| self.data[i * self.cols + j])
                .collect(),
        }
    }

    /// Elementary operation: swap rows `i` and `j`.
    pub fn swap_rows(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.rows, "row index out of range");
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Elementary operation: multiply row `i` by a *nonzero* residue `c`.
    ///
    /// Panics if `c ≡ 0 (mod p)`, which would not be invertible.
    pub fn scale_row(&mut self, i: usize, c: u32) {
        assert!(i < self.rows, "row index out of range");
        let c = self.modulus.reduce(u64::from(c));
        assert!(
            c != 0,
            "scaling a row by zero is not an elementary operation"
        );
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = self.modulus.mul(*x, c);
        }
    }

    /// Elementary operation: `row[target] += c * row[source]`.
    ///
    /// Panics if `target == source`.
    pub fn add_scaled_row(&mut self, target: usize, source: usize, c: u32) {
        assert!(
            target < self.rows && source < self.rows,
            "row index out of range"
        );
        assert!(
            target != source,
            "adding a row to itself is a scaling, not a shear"
        );
        let c = self.modulus.reduce(u64::from(c));
        for col in 0..self.cols {
            let add = self.modulus.mul(c, self.data[source * self.cols + col]);
            let cell = &mut self.data[target * self.cols + col];
            *cell = self.modulus.add(*cell, add);
        }
    }

    /// The rank over `F_p`, by Gaussian elimination.
    ///
    /// Pivots are chosen deterministically: columns are scanned left to
    /// right, and the pivot row is the first remaining row with a nonzero
    /// entry in the current column.
    pub fn rank(&self) -> usize {
        let p = self.modulus;
        let cols = self.cols;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot_row != rank {
                for c in 0..cols {
                    a.swap(pivot_row * cols + c, rank * cols + c);
                }
            }
            let inv = p
                .inverse(a[rank * cols + col])
                .expect("pivot entry is nonzero");
            for c in col..cols {
                a[rank * cols + c] = p.mul(a[rank * cols + c], inv);
            }
            for r in (rank + 1)..self.rows {
                let factor = a[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = p.mul(factor, a[rank * cols + c]);
                    a[r * cols + c] = p.sub(a[r * cols + c], sub);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Matrix–vector product `M · v`; fails on modulus or shape mismatch.
    pub fn mul_vector(&self, v: &FpVector) -> Result<FpVector, FpError> {
        require_same_modulus(self.modulus, v.modulus())?;
        if v.len() != self.cols {
            return Err(FpError::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        let coords = (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc = self.modulus.add(
                        acc,
                        self.modulus.mul(self.data[i * self.cols + j], v.get(j)),
                    );
                }
                acc
            })
            .collect();
        Ok(FpVector::new(self.modulus, coords))
    }

    /// The inverse matrix, or `None` if singular; fails on non-square
    /// matrices. Uses Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Option<FpMatrix>, FpError> {
        if self.rows != self.cols {
            return Err(FpError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let p = self.modulus;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = FpMatrix::identity(p, n).data;
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(None);
            };
            if pivot_row != col {
                for c in 0..n {
                    a.swap(pivot_row * n + c, col * n + c);
                    inv.swap(pivot_row * n + c, col * n + c);
                }
            }
            let scale = p.inverse(a[col * n + col]).expect("pivot entry is nonzero");
            for c in 0..n {
                a[col * n + c] = p.mul(a[col * n + c], scale);
                inv[col * n + c] = p.mul(inv[col * n + c], scale);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let sub_a = p.mul(factor, a[col * n + c]);
                    a[r * n + c] = p.sub(a[r * n + c], sub_a);
                    let sub_i = p.mul(factor, inv[col * n + c]);
                    inv[r * n + c] = p.sub(inv[r * n + c], sub_i);
                }
            }
        }
        Ok(Some(FpMatrix {
            modulus: p,
            rows: n,
            cols: n,
            data: inv,
        }))
    }

    /// The determinant over `F_p`; fails on non-square matrices.
    pub fn determinant(&self) -> Result<u32, FpError> {
        if self.rows != self.cols {
            return Err(FpError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let p = self.modulus;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det: u32 = 1 % p.get();
        let mut negate = false;
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(0);
            };
            if pivot_row != col {
                for c in 0..n {
                    a.swap(pivot_row * n + c, col * n + c);
                }
                negate = !negate;
            }
            let pivot = a[col * n + col];
            det = p.mul(det, pivot);
            let inv = p.inverse(pivot).expect("pivot entry is nonzero");
            for r in (col + 1)..n {
                let factor = p.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = p.mul(factor, a[col * n + c]);
                    a[r * n + c] = p.sub(a[r * n + c], sub);
                }
            }
        }
        Ok(if negate { p.neg(det) } else { det })
    }
}

/// Whether a family of vectors is linearly independent over `F_p`.
///
/// The empty family is vacuously independent. Fails if the vectors
/// disagree on modulus or length.
pub fn linearly_independent(columns: &[FpVector]) -> Result<bool, FpError> {
    if columns.is_empty() {
        return Ok(true);
    }
    if columns.len() > columns[0].len() {
        // More vectors than coordinates can never be independent, and
        // from_columns + rank would only confirm that the slow way.
        for v in &columns[1..] {
            require_same_modulus(columns[0].modulus(), v.modulus())?;
            if v.len() != columns[0].len() {
                return Err(FpError::DimensionMismatch {
                    left: columns[0].len(),
                    right: v.len(),
                });
            }
        }
        return Ok(false);
    }
    let matrix = FpMatrix::from_columns(columns)?;
    Ok(matrix.rank() == columns.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SEED: u64 = 0x005E_EDF9_11A1;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, modulus: Prime, rows: usize, cols: usize) -> FpMatrix {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..modulus.get()))
            .collect();
        FpMatrix::new(modulus, rows, cols, data).unwrap()
    }

    #[test]
    fn prime_accepts_primes_and_rejects_composites() {
        for q in [2u32, 3, 5, 7, 11, 13, 31, 97] {
            assert!(Prime::new(q).is_ok(), "{q} should be accepted");
        }
        for q in [0u32, 1, 4, 6, 9, 15, 25, 91] {
            assert_eq!(Prime::new(q), Err(FpError::NotPrime(q)));
        }
    }

    #[test]
    fn inverse_of_three_mod_seven_is_five() {
        // 3 * 5 = 15 ≡ 1 (mod 7).
        assert_eq!(scalar_inverse(p(7), 3), Ok(5));
    }

    #[test]
    fn inverse_times_value_is_one_for_small_primes() {
        for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let modulus = p(q);
            for a in 1..q {
                let inv = modulus.inverse(a).unwrap();
                assert_eq!(modulus.mul(a, inv), 1, "a = {a}, p = {q}");
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(scalar_inverse(p(5), 0), Err(FpError::ZeroInverse));
        assert_eq!(scalar_inverse(p(5), 10), Err(FpError::ZeroInverse));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for q in [2u32, 3, 5, 7] {
            let modulus = p(q);
            for a in 0..q {
                let mut acc = 1 % q;
                for e in 0..8 {
                    assert_eq!(modulus.pow(a, e), acc, "a = {a}, e = {e}, p = {q}");
                    acc = modulus.mul(acc, a);
                }
            }
        }
    }

    #[test]
    fn scalar_ops_wrap_correctly() {
        let modulus = p(5);
        let a = FpScalar::new(3, modulus);
        let b = FpScalar::new(4, modulus);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.pow(3).value(), 2); // 27 ≡ 2 (mod 5)
        assert_eq!(a.inverse().unwrap().value(), 2); // 3 * 2 = 6 ≡ 1 (mod 5)
        assert!(FpScalar::new(0, modulus).inverse().is_err());
    }

    #[test]
    fn support_lists_nonzero_coordinates_zero_based() {
        let v = FpVector::new(p(2), vec![0, 0, 1, 1]);
        assert_eq!(v.support(), vec![2, 3]);
        assert_eq!(FpVector::zero(p(3), 4).support(), Vec::<usize>::new());
        // Entries that reduce to zero do not count as support.
        let w = FpVector::new(p(3), vec![3, 1, 6]);
        assert_eq!(w.support(), vec![1]);
    }

    #[test]
    fn basis_and_zero_constructors() {
        let e1 = FpVector::basis(p(3), 3, 1);
        assert_eq!(e1.coords(), &[0, 1, 0]);
        assert!(!e1.is_zero());
        assert!(FpVector::zero(p(3), 3).is_zero());
        assert_eq!(e1.leading_index(), Some(1));
        assert_eq!(FpVector::zero(p(3), 3).leading_index(), None);
    }

    #[test]
    fn normalized_leading_one_picks_orbit_representative() {
        // (0, 2, 1) over F_3: leading coordinate 2 has inverse 2, so the
        // representative is (0, 1, 2).
        let v = FpVector::new(p(3), vec![0, 2, 1]);
        let rep = v.normalized_leading_one().unwrap();
        assert_eq!(rep.coords(), &[0, 1, 2]);
        // All nonzero multiples normalize to the same representative.
        assert_eq!(v.scaled(2).normalized_leading_one().unwrap(), rep);
        assert_eq!(FpVector::zero(p(3), 3).normalized_leading_one(), None);
    }

    #[test]
    fn vector_arithmetic_checks_shapes() {
        let a = FpVector::new(p(3), vec![1, 2]);
        let b = FpVector::new(p(3), vec![1, 2, 0]);
        assert_eq!(
            a.add(&b),
            Err(FpError::DimensionMismatch { left: 2, right: 3 })
        );
        let c = FpVector::new(p(5), vec![1, 2]);
        assert_eq!(
            a.add(&c),
            Err(FpError::ModulusMismatch { left: 3, right: 5 })
        );
        let mut d = a.clone();
        d.add_scaled(&a, 2).unwrap();
        assert_eq!(d.coords(), &[0, 0]); // (1,2) + 2*(1,2) = 3*(1,2) ≡ 0 (mod 3)
    }

    #[test]
    fn rank_of_identity_is_full() {
        for n in 1..=5 {
            assert_eq!(FpMatrix::identity(p(7), n).rank(), n);
        }
    }

    #[test]
    fn rank_of_proportional_rows_is_one() {
        // Over F_3 the second row is 2 * (first row): (2, 4, 0) ≡ (2, 1, 0).
        let m = FpMatrix::new(p(3), 3, 3, vec![1, 2, 0, 2, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_counts_independent_columns() {
        // Columns e_1, e_2, e_1 + e_2 over F_2 span a 2-dimensional space.
        let cols = vec![
            FpVector::new(p(2), vec![1, 0]),
            FpVector::new(p(2), vec![0, 1]),
            FpVector::new(p(2), vec![1, 1]),
        ];
        let m = FpMatrix::from_columns(&cols).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.rank(), 2);
        assert_eq!(linearly_independent(&cols), Ok(false));
        assert_eq!(linearly_independent(&cols[..2]), Ok(true));
        assert_eq!(linearly_independent(&[]), Ok(true));
    }

    #[test]
    fn from_columns_round_trips_entries() {
        let cols = vec![
            FpVector::new(p(5), vec![1, 2, 3]),
            FpVector::new(p(5), vec![4, 0, 1]),
        ];
        let m = FpMatrix::from_columns(&cols).unwrap();
        assert_eq!(m.column(0), cols[0]);
        assert_eq!(m.column(1), cols[1]);
        assert_eq!(m.row(0).coords(), &[1, 4]);
    }

    #[test]
    fn determinant_two_by_two_mod_five() {
        // det [[1,2],[3,4]] = 1*4 - 2*3 = -2 ≡ 3 (mod 5).
        let m = FpMatrix::new(p(5), 2, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(m.determinant(), Ok(3));
    }

    #[test]
    fn determinant_diagonal_mod_seven() {
        let m = FpMatrix::new(p(7), 2, 2, vec![2, 0, 0, 3]).unwrap();
        assert_eq!(m.determinant(), Ok(6));
    }

    #[test]
    fn determinant_of_vandermonde_points_mod_five() {
        // Rows (1, x, x^2) for x in {0, 1, 2}: det = (1-0)(2-0)(2-1) = 2.
        let m = FpMatrix::new(p(5), 3, 3, vec![1, 0, 0, 1, 1, 1, 1, 2, 4]).unwrap();
        assert_eq!(m.determinant(), Ok(2));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn determinant_requires_square() {
        let m = FpMatrix::zero(p(3), 2, 3);
        assert_eq!(
            m.determinant(),
            Err(FpError::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn matrix_shape_validation() {
        assert_eq!(
            FpMatrix::new(p(3), 2, 2, vec![1, 2, 3]),
            Err(FpError::ShapeMismatch {
                rows: 2,
                cols: 2,
                expected: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn mul_vector_oracle() {
        let m = FpMatrix::new(p(5), 2, 3, vec![1, 2, 0, 0, 1, 4]).unwrap();
        let v = FpVector::new(p(5), vec![1, 1, 2]);
        // (1+2, 1+8) = (3, 9) ≡ (3, 4) (mod 5).
        assert_eq!(m.mul_vector(&v).unwrap().coords(), &[3, 4]);
        let short = FpVector::new(p(5), vec![1, 1]);
        assert!(m.mul_vector(&short).is_err());
    }

    #[test]
    fn inverse_of_two_by_two_mod_five() {
        // det [[1,2],[3,4]] = 3; adjugate [[4,3],[2,1]]; 3^{-1} = 2, so the
        // inverse is [[3,1],[4,2]].
        let m = FpMatrix::new(p(5), 2, 2, vec![1, 2, 3, 4]).unwrap();
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(inv, FpMatrix::new(p(5), 2, 2, vec![3, 1, 4, 2]).unwrap());
        // Singular matrices have no inverse.
        let s = FpMatrix::new(p(5), 2, 2, vec![1, 2, 2, 4]).unwrap();
        assert_eq!(s.inverse(), Ok(None));
        assert!(FpMatrix::zero(p(5), 2, 3).inverse().is_err());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
        for &q in &[2u32, 3, 5, 7] {
            let modulus = p(q);
            let mut checked = 0;
            while checked < 20 {
                let n = rng.gen_range(1..=5);
                let m = random_matrix(&mut rng, modulus, n, n);
                let Some(inv) = m.inverse().unwrap() else {
                    continue;
                };
                checked += 1;
                // Verify column by column: inv * (m * e_j) = e_j.
                for j in 0..n {
                    let col = m.column(j);
                    let back = inv.mul_vector(&col).unwrap();
                    assert_eq!(
                        back,
                        FpVector::basis(modulus, n, j),
                        "seed {}: p = {q}, matrix {m:?}",
                        SEED ^ 3
                    );
                }
            }
        }
    }

    #[test]
    fn determinant_nonzero_iff_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for &q in &[2u32, 3, 5, 7] {
            let modulus = p(q);
            for _ in 0..50 {
                let n = rng.gen_range(1..=5);
                let m = random_matrix(&mut rng, modulus, n, n);
                let det = m.determinant().unwrap();
                let full = m.rank() == n;
                assert_eq!(
                    det != 0,
                    full,
                    "seed {SEED}: p = {q}, matrix {m:?} has det {det} and rank {}",
                    m.rank()
                );
            }
        }
    }

    #[test]
    fn elementary_row_operations_preserve_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
        for &q in &[2u32, 3, 5, 7] {
            let modulus = p(q);
            for _ in 0..25 {
                let rows = rng.gen_range(1..=6);
                let cols = rng.gen_range(1..=6);
                let mut m = random_matrix(&mut rng, modulus, rows, cols);
                let rank = m.rank();
                for _ in 0..20 {
                    match rng.gen_range(0..3u8) {
                        0 => {
                            let i = rng.gen_range(0..rows);
                            let j = rng.gen_range(0..rows);
                            m.swap_rows(i, j);
                        }
                        1 => {
                            let i = rng.gen_range(0..rows);
                            let c = rng.gen_range(1..q.max(2));
                            m.scale_row(i, c);
                        }
                        _ => {
                            if rows >= 2 {
                                let i = rng.gen_range(0..rows);
                                let mut j = rng.gen_range(0..rows);
                                while j == i {
                                    j = rng.gen_range(0..rows);
                                }
                                let c = rng.gen_range(0..q);
                                m.add_scaled_row(i, j, c);
                            }
                        }
                    }
                    assert_eq!(
                        m.rank(),
                        rank,
                        "seed {}: rank changed under elementary ops, p = {q}, matrix {m:?}",
                        SEED ^ 1
                    );
                }
            }
        }
    }

    #[test]
    fn rank_bounded_by_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
        for &q in &[2u32, 3, 5] {
            let modulus = p(q);
            for _ in 0..40 {
                let rows = rng.gen_range(1..=6);
                let cols = rng.gen_range(1..=6);
                let m = random_matrix(&mut rng, modulus, rows, cols);
                assert!(m.rank() <= rows.min(cols));
            }
        }
    }
}
