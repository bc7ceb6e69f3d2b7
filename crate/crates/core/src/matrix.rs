use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RingSpec;
use crate::vector::LeeVector;

/// Row-major matrix over Z/p^s with canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    ring: RingSpec,
}

impl RingMatrix {
    pub fn zero(rows: usize, cols: usize, ring: RingSpec) -> Self {
        RingMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            ring,
        }
    }

    pub fn identity(n: usize, ring: RingSpec) -> Self {
        let mut m = RingMatrix::zero(n, n, ring);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows_in: Vec<Vec<u64>>, ring: RingSpec) -> Result<Self> {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in &rows_in {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            entries.extend(r.iter().map(|&e| ring.reduce(e)));
        }
        Ok(RingMatrix {
            rows,
            cols,
            entries,
            ring,
        })
    }

    pub fn random(rows: usize, cols: usize, ring: RingSpec, rng: &mut impl Rng) -> Self {
        let entries = (0..rows * cols)
            .map(|_| rng.gen_range(0..ring.modulus()))
            .collect();
        RingMatrix {
            rows,
            cols,
            entries,
            ring,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.ring.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = RingMatrix::zero(self.cols, self.rows, self.ring);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix of the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> RingMatrix {
        let mut m = RingMatrix::zero(self.rows, cols.len(), self.ring);
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    /// Submatrix of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> RingMatrix {
        let mut m = RingMatrix::zero(r1 - r0, c1 - c0, self.ring);
        for r in r0..r1 {
            for c in c0..c1 {
                m.set(r - r0, c - c0, self.get(r, c));
            }
        }
        m
    }

    /// x * M^T for a row vector x of length `cols`.
    pub fn mul_vec_transpose(&self, x: &LeeVector) -> Result<LeeVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                x.len(),
                self.cols
            )));
        }
        let ring = self.ring;
        let mut out = vec![0u64; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = self.row(r);
            let mut acc: u128 = 0;
            for (a, b) in row.iter().zip(x.entries()) {
                acc += *a as u128 * *b as u128;
            }
            *slot = (acc % ring.modulus() as u128) as u64;
        }
        Ok(LeeVector::new(out, ring))
    }

    pub fn mat_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RingMatrix::zero(self.rows, other.cols, self.ring);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u128 * other.get(k, c) as u128;
                }
                out.set(r, c, (acc % self.ring.modulus() as u128) as u64);
            }
        }
        Ok(out)
    }

    /// Row operation: row[target] -= factor * row[source].
    pub(crate) fn row_sub_scaled(&mut self, target: usize, source: usize, factor: u64) {
        if factor == 0 {
            return;
        }
        let m = self.ring.modulus();
        let cols = self.cols;
        for c in 0..cols {
            let s = self.entries[source * cols + c];
            let t = &mut self.entries[target * cols + c];
            let sub = (factor as u128 * s as u128 % m as u128) as u64;
            *t = (*t + m - sub) % m;
        }
    }

    pub(crate) fn row_scale(&mut self, row: usize, factor: u64) {
        let m = self.ring.modulus();
        let cols = self.cols;
        for c in 0..cols {
            let t = &mut self.entries[row * cols + c];
            *t = (*t as u128 * factor as u128 % m as u128) as u64;
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Syndrome e * H^T of an error vector.
pub fn syndrome(h: &RingMatrix, e: &LeeVector) -> Result<LeeVector> {
    h.mul_vec_transpose(e)
}
