//! Dense complex matrix container and the elementary row/column functionals:
//! deleted absolute row/column sums, their diagonally weighted variants, and
//! the comparison matrix.

use num_complex::Complex64;

use crate::{Error, Result};

/// Row or column orientation of a sum functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects non-square data and
    /// non-finite values.
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare {
                rows: entries.len() / n.max(1),
                cols: n,
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    i: idx / n,
                    j: idx % n,
                });
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a real matrix from row-major f64 entries.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(n, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Convenience constructor from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let converted: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    /// Overflow-safe modulus of the (i, j) entry.
    #[inline]
    pub fn abs(&self, i: usize, j: usize) -> f64 {
        let z = self.get(i, j);
        z.re.hypot(z.im)
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        Self { n, entries }
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn diagonal_abs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.abs(i, i)).collect()
    }

    pub fn max_abs_entry(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max(self.abs(i, j));
            }
        }
        m
    }

    /// Explicit diagonal similarity X^{-1} A X with x the diagonal of X.
    pub fn scale_similarity(&self, x: &PositiveScaling) -> Result<Self> {
        let n = self.n;
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(i, j) * (x.values()[j] / x.values()[i]));
            }
        }
        Self::new(n, entries)
    }

    /// Comparison matrix: |a_{i,i}| on the diagonal, -|a_{i,j}| off it.
    /// The result is real-valued (a Z-matrix).
    pub fn comparison_matrix(&self) -> ComplexMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let m = self.abs(i, j);
                let v = if i == j { m } else { -m };
                entries.push(Complex64::new(v, 0.0));
            }
        }
        ComplexMatrix { n, entries }
    }
}

/// Strictly positive diagonal scaling (the diagonal of some X with positive
/// diagonal entries).
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveScaling {
    x: Vec<f64>,
}

impl PositiveScaling {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        for (index, &v) in x.iter().enumerate() {
            let ok = v.is_finite() && v > 0.0;
            if !ok {
                return Err(Error::InvalidScaling { index });
            }
        }
        if x.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { x })
    }

    pub fn ones(n: usize) -> Self {
        Self { x: vec![1.0; n] }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn is_all_ones(&self) -> bool {
        self.x.iter().all(|&v| v == 1.0)
    }
}

/// A nonnegative length-n vector of row/column sum values, tagged with how it
/// was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SumVector {
    values: Vec<f64>,
    axis: Axis,
    weighted: Option<PositiveScaling>,
    tilde: bool,
}

impl SumVector {
    pub(crate) fn new(
        values: Vec<f64>,
        axis: Axis,
        weighted: Option<PositiveScaling>,
        tilde: bool,
    ) -> Self {
        debug_assert!(values.iter().all(|&v| v >= 0.0));
        Self {
            values,
            axis,
            weighted,
            tilde,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn weighted(&self) -> Option<&PositiveScaling> {
        self.weighted.as_ref()
    }

    pub fn tilde(&self) -> bool {
        self.tilde
    }
}

impl std::ops::Index<usize> for SumVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Deleted absolute row sums r(A) or column sums c(A): the off-diagonal
/// absolute sums along the chosen axis.
pub fn deleted_sums(a: &ComplexMatrix, axis: Axis) -> SumVector {
    let n = a.order();
    let mut values = vec![0.0; n];
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            if j != i {
                s += match axis {
                    Axis::Row => a.abs(i, j),
                    Axis::Column => a.abs(j, i),
                };
            }
        }
        values[i] = s;
    }
    SumVector::new(values, axis, None, false)
}

/// Weighted deleted sums: r^X(A) = r(X^{-1} A X) for rows,
/// c^Y(A) = c(Y^{-1} A Y) for columns, computed without forming the scaled
/// matrix.
pub fn weighted_deleted_sums(
    a: &ComplexMatrix,
    s: &PositiveScaling,
    axis: Axis,
) -> Result<SumVector> {
    let n = a.order();
    if s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.len(),
        });
    }
    let x = s.values();
    let mut values = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            if j != i {
                acc += match axis {
                    // (X^{-1} A X)_{i,j} = a_{i,j} x_j / x_i
                    Axis::Row => a.abs(i, j) * x[j],
                    // (Y^{-1} A Y)_{j,i} = a_{j,i} x_i / x_j
                    Axis::Column => a.abs(j, i) / x[j],
                };
            }
        }
        values[i] = match axis {
            Axis::Row => acc / x[i],
            Axis::Column => acc * x[i],
        };
    }
    Ok(SumVector::new(values, axis, Some(s.clone()), false))
}

/// Comparison matrix of A (free function mirroring the method).
pub fn comparison_matrix(a: &ComplexMatrix) -> ComplexMatrix {
    a.comparison_matrix()
}
