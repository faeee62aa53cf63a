//! Dense coefficient matrices — the factors of rank-one terms.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::RingSpec;
use crate::scheme::StructureError;

/// A small dense matrix of ring coefficients, stored row-major.
///
/// The derived ordering compares shapes first and then the entry vector
/// lexicographically; within one scheme all factors at the same position
/// share a shape, so this is exactly the row-major entry order the canonical
/// serialization sorts by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl CoeffMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self, StructureError> {
        if rows == 0 || cols == 0 {
            return Err(StructureError::EmptyShape { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(StructureError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(CoeffMatrix { rows, cols, entries })
    }

    /// The all-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CoeffMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// The matrix with a single 1 at `(r, c)` and zeros elsewhere.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = CoeffMatrix::zeros(rows, cols);
        m.entries[r * cols + c] = 1;
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

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    /// True when every entry equals the ring zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Applies the ring's canonical form to every entry.
    pub(crate) fn canon(&self, ring: RingSpec) -> CoeffMatrix {
        CoeffMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&v| ring.canon(v)).collect(),
        }
    }

    /// Entrywise sum in the given ring. `None` on `i64` overflow.
    pub(crate) fn add(&self, other: &CoeffMatrix, ring: RingSpec) -> Option<CoeffMatrix> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix sum");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ring.add(a, b))
            .collect::<Option<Vec<_>>>()?;
        Some(CoeffMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise difference in the given ring. `None` on `i64` overflow.
    pub(crate) fn sub(&self, other: &CoeffMatrix, ring: RingSpec) -> Option<CoeffMatrix> {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix difference");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ring.sub(a, b))
            .collect::<Option<Vec<_>>>()?;
        Some(CoeffMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Kronecker product in the given ring: block form, `self` supplies the
    /// outer index and `other` the inner one. `None` on `i64` overflow.
    pub(crate) fn kron(&self, other: &CoeffMatrix, ring: RingSpec) -> Option<CoeffMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![0i64; rows * cols];
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let v1 = self.get(r1, c1);
                if v1 == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let v = ring.mul(v1, other.get(r2, c2))?;
                        entries[(r1 * other.rows + r2) * cols + (c1 * other.cols + c2)] = v;
                    }
                }
            }
        }
        Some(CoeffMatrix { rows, cols, entries })
    }

    /// Copies `self` into a `rows × cols` zero matrix at the given offset.
    pub(crate) fn embed(&self, rows: usize, cols: usize, at_row: usize, at_col: usize) -> CoeffMatrix {
        assert!(at_row + self.rows <= rows && at_col + self.cols <= cols);
        let mut out = CoeffMatrix::zeros(rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[(at_row + r) * cols + (at_col + c)] = self.get(r, c);
            }
        }
        out
    }
}
