//! Compressed sparse row operators.

use std::collections::BTreeMap;
use std::io::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A real sparse matrix in CSR layout.
///
/// Duplicate triplets are summed at assembly. When `symmetric` is set the
/// stored matrix equals its transpose bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
    symmetric: bool,
}

impl SparseOperator {
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut per_row: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) outside {rows}x{cols}");
            per_row[i].push((j, v));
        }
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for mut row in per_row {
            // Stable sort keeps the summation order of duplicates fixed.
            row.sort_by_key(|&(j, _)| j);
            let mut k = 0;
            while k < row.len() {
                let j = row[k].0;
                let mut sum = 0.0;
                while k < row.len() && row[k].0 == j {
                    sum += row[k].1;
                    k += 1;
                }
                indices.push(j);
                values.push(sum);
            }
            indptr.push(indices.len());
        }
        SparseOperator {
            rows,
            cols,
            indptr,
            indices,
            values,
            symmetric: false,
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        SparseOperator {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: diag.to_vec(),
            symmetric: true,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.indptr[i]..self.indptr[i + 1];
        self.indices[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.indptr[i]..self.indptr[i + 1];
        match self.indices[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols && self.triplets().all(|(i, j, v)| i == j || v == 0.0)
    }

    /// Main diagonal (zeros where nothing is stored).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        self.mul_vec_into(x, &mut y);
        y
    }

    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols, "operand length");
        assert_eq!(y.len(), self.rows, "output length");
        for (i, out) in y.iter_mut().enumerate() {
            let range = self.indptr[i]..self.indptr[i + 1];
            *out = self.indices[range.clone()]
                .iter()
                .zip(&self.values[range])
                .map(|(&j, &v)| v * x[j])
                .sum();
        }
    }

    /// Product with every column of a dense block.
    pub fn mul_block(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(x.nrows(), self.cols);
        let mut out = DMatrix::zeros(self.rows, x.ncols());
        for c in 0..x.ncols() {
            let col = x.column(c);
            let src = col.as_slice();
            let mut dst = out.column_mut(c);
            self.mul_vec_into(src, dst.as_mut_slice());
        }
        out
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v)));
        t.symmetric = self.symmetric;
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// `diag(d) · self`
    pub fn scale_rows(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.rows);
        let mut out = self.clone();
        for (i, di) in d.iter().enumerate() {
            for v in &mut out.values[self.indptr[i]..self.indptr[i + 1]] {
                *v *= di;
            }
        }
        out.symmetric = false;
        out
    }

    /// `self · diag(d)`
    pub fn scale_cols(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.cols);
        let mut out = self.clone();
        for (k, &j) in self.indices.iter().enumerate() {
            out.values[k] *= d[j];
        }
        out.symmetric = false;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = Self::from_triplets(self.rows, self.cols, self.triplets().chain(other.triplets()));
        out.symmetric = self.symmetric && other.symmetric;
        out
    }

    /// Sparse product `self · other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut triplets = Vec::new();
        for i in 0..self.rows {
            let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    *acc.entry(j).or_insert(0.0) += a * b;
                }
            }
            triplets.extend(acc.into_iter().map(|(j, v)| (i, j, v)));
        }
        Self::from_triplets(self.rows, other.cols, triplets)
    }

    /// Averages the matrix with its transpose and marks it symmetric.
    pub fn symmetrized(&self) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let t = self.transpose();
        let mut out = Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().chain(t.triplets()).map(|(i, j, v)| (i, j, 0.5 * v)),
        );
        // Pairs (i,j) and (j,i) each sum the same two halves, possibly in a
        // different order; copy the lower triangle up to make them identical.
        let lower: Vec<(usize, usize, f64)> = out.triplets().filter(|&(i, j, _)| i > j).collect();
        for (i, j, v) in lower {
            let range = out.indptr[j]..out.indptr[j + 1];
            let k = out.indices[range.clone()]
                .binary_search(&i)
                .expect("pattern is symmetric");
            out.values[range.start + k] = v;
        }
        out.symmetric = true;
        out
    }

    /// Largest `|a_ij − a_ji|` over stored entries.
    pub fn asymmetry(&self) -> f64 {
        self.triplets()
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] += v;
        }
        m
    }

    /// Writes Matrix Market coordinate format. Symmetric operators store
    /// only the lower triangle.
    pub fn write_matrix_market<W: Write>(&self, mut out: W) -> Result<()> {
        let kind = if self.symmetric { "symmetric" } else { "general" };
        writeln!(out, "%%MatrixMarket matrix coordinate real {kind}")?;
        let entries: Vec<(usize, usize, f64)> =
            self.triplets().filter(|&(i, j, _)| !self.symmetric || i >= j).collect();
        writeln!(out, "{} {} {}", self.rows, self.cols, entries.len())?;
        for (i, j, v) in entries {
            writeln!(out, "{} {} {:e}", i + 1, j + 1, v)?;
        }
        Ok(())
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.cols {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                got: len,
            });
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sqrt(Σ w_i x_i²)`
pub fn weighted_norm(x: &[f64], w: &[f64]) -> f64 {
    x.iter().zip(w).map(|(v, w)| w * v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SparseOperator {
        SparseOperator::from_triplets(
            3,
            3,
            [
                (0, 0, 2.0),
                (0, 1, -1.0),
                (1, 0, -1.0),
                (1, 1, 2.0),
                (2, 2, 1.0),
                (0, 0, 1.0),
            ],
        )
    }

    #[test]
    fn duplicates_are_summed() {
        let a = small();
        assert_eq!(a.get(0, 0), 3.0);
        assert_eq!(a.nnz(), 5);
    }

    #[test]
    fn matmul_matches_dense() {
        let a = small();
        let b = SparseOperator::from_triplets(3, 2, [(0, 1, 1.0), (2, 0, 4.0), (1, 1, -2.0)]);
        let dense = a.to_dense() * b.to_dense();
        assert_eq!(a.matmul(&b).to_dense(), dense);
        assert_eq!(b.transpose().to_dense(), b.to_dense().transpose());
    }

    #[test]
    fn symmetrized_is_exact() {
        let a = SparseOperator::from_triplets(2, 2, [(0, 1, 0.1 + 0.2), (1, 0, 0.3), (0, 0, 1.0)]);
        let s = a.symmetrized();
        assert!(s.is_symmetric());
        assert_eq!(s.asymmetry(), 0.0);
    }

    #[test]
    fn matrix_market_header() {
        let mut buf = Vec::new();
        small().symmetrized().write_matrix_market(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("%%MatrixMarket matrix coordinate real symmetric"));
        assert_eq!(lines.next(), Some("3 3 4"));

        let mut buf = Vec::new();
        small().write_matrix_market(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("%%MatrixMarket matrix coordinate real general\n3 3 5"));
    }
}
