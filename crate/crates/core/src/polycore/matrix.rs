//! Dense matrices of polynomials.

use std::sync::Arc;

use super::poly::{MultiPoly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(ring));
        }
        m
    }

    /// Builds from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<F: FnMut(&MultiPoly) -> MultiPoly>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not conform");
        let ring = self
            .entries
            .first()
            .or(other.entries.first())
            .map(|p| p.ring().clone())
            .unwrap_or_else(Ring::empty);
        let mut out = PolyMatrix::zeros(&ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(&ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn trace(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let ring = self.entries[0].ring().clone();
        (0..self.rows).fold(MultiPoly::zero(&ring), |acc, i| &acc + self.get(i, i))
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(MultiPoly::zero(v[0].ring()), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}
