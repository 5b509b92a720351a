//! Dense vectors and small square matrices.
//!
//! Everything here is sized for `n` up to a few hundred: storage is a flat
//! `Vec<f64>`, products are naive triple loops, and the symmetric
//! eigensolver is a cyclic Jacobi iteration. Entries are validated to be
//! finite on construction so the numeric kernels never see NaN.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite real vector of dimension `n >= 1`.
///
/// Serializes as a plain JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite { what: "vector" });
        }
        Ok(Self(entries))
    }

    /// Construct from entries already known to be finite and nonempty.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(!entries.is_empty() && entries.iter().all(|e| e.is_finite()));
        Self(entries)
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::constant(n, 1.0)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    /// Standard basis vector `e_i`.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        let mut v = vec![0.0; n];
        if i >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: i,
            });
        }
        v[i] = 1.0;
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Mean with respect to the uniform measure.
    pub fn mean(&self) -> f64 {
        self.sum() / self.len() as f64
    }

    /// `f - (mean of f) * ones`.
    pub fn centered(&self) -> RealVector {
        let m = self.mean();
        RealVector::from_raw(self.0.iter().map(|e| e - m).collect())
    }

    /// Sup norm `max_i |f_i|`.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |acc, e| acc.max(e.abs()))
    }

    pub fn scale(&self, c: f64) -> RealVector {
        RealVector::from_raw(self.0.iter().map(|e| c * e).collect())
    }

    pub fn add(&self, other: &RealVector) -> Result<RealVector> {
        check_dims(self.len(), other.len())?;
        Ok(RealVector::from_raw(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &RealVector) -> Result<RealVector> {
        check_dims(self.len(), other.len())?;
        Ok(RealVector::from_raw(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Entrywise (Hadamard) product.
    pub fn pointwise_mul(&self, other: &RealVector) -> Result<RealVector> {
        check_dims(self.len(), other.len())?;
        Ok(RealVector::from_raw(
            self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect(),
        ))
    }

    pub fn dot(&self, other: &RealVector) -> Result<f64> {
        check_dims(self.len(), other.len())?;
        Ok(dot(&self.0, &other.0))
    }

    /// Entrywise reciprocal, rejecting entries with modulus below `min_abs`.
    pub fn try_reciprocal(&self, min_abs: f64) -> Result<RealVector> {
        for (i, &e) in self.0.iter().enumerate() {
            if e.abs() < min_abs {
                return Err(Error::NearZeroEntry {
                    index: i,
                    value: e,
                    min_abs,
                });
            }
        }
        Ok(RealVector::from_raw(
            self.0.iter().map(|e| 1.0 / e).collect(),
        ))
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Vec<f64> {
        v.0
    }
}

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Finite real `n x n` matrix, stored row-major.
///
/// Serializes as a JSON array of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateDimension { n: 0, min: 1 });
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        if data.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite { what: "matrix" });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DegenerateDimension { n: 0, min: 1 });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Build entrywise from a function of the index pair.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    pub fn row_abs_sum(&self, i: usize) -> f64 {
        self.row(i).iter().map(|e| e.abs()).sum()
    }

    pub fn col_abs_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.get(i, j).abs()).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        SquareMatrix { n, data }
    }

    pub fn scale(&self, c: f64) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|e| c * e).collect(),
        }
    }

    pub fn add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        check_dims(self.n, other.n)?;
        Ok(SquareMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        check_dims(self.n, other.n)?;
        Ok(SquareMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul_slice(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dims(self.n, x.len())?;
        Ok((0..self.n).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn mul_vec(&self, x: &RealVector) -> Result<RealVector> {
        Ok(RealVector::from_raw(self.mul_slice(x.as_slice())?))
    }

    pub fn mul_mat(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(SquareMatrix { n, data })
    }

    /// Hilbert–Schmidt pairing `Tr(self^T other)`.
    pub fn hs_inner(&self, other: &SquareMatrix) -> Result<f64> {
        check_dims(self.n, other.n)?;
        Ok(dot(&self.data, &other.data))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, e| acc.max(e.abs()))
    }

    /// Largest deviation from symmetry, `max |a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for SquareMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<SquareMatrix> for Vec<Vec<f64>> {
    fn from(m: SquareMatrix) -> Vec<Vec<f64>> {
        m.to_rows()
    }
}

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
///
/// The caller is responsible for (approximate) symmetry; the iteration works
/// on the symmetrized part.
pub fn sym_eigenvalues(m: &SquareMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m.get(i, j) + m.get(j, i));
        }
    }
    let scale = a.iter().fold(0.0f64, |acc, e| acc.max(e.abs())).max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[i * n + j].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eigs
}
