//! Sparse exact linear algebra: rank, kernel and image bases, quotient
//! dimensions. Elimination is fraction-free in the Bareiss sense with
//! deterministic first-nonzero pivoting, so reported bases are reproducible.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Column count below which the dense elimination path is used.
pub const DENSE_FALLBACK_COLS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stack column vectors (each of length `rows`) into a matrix.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = SparseMatrix::new(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v.mul(s));
        }
        out
    }

    pub fn add_matrix(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub_matrix(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_matrix(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mat_mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for c in 0..other.cols {
                if let Some(b) = other.entries.get(&(k, c)) {
                    out.add_to(r, c, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    /// Row echelon form by fraction-free elimination. Returns the nonzero
    /// echelon rows together with their pivot columns (strictly increasing).
    fn echelon(&self) -> (Vec<BTreeMap<usize, Scalar>>, Vec<usize>) {
        if self.cols < DENSE_FALLBACK_COLS {
            self.echelon_dense()
        } else {
            self.echelon_sparse()
        }
    }

    fn echelon_sparse(&self) -> (Vec<BTreeMap<usize, Scalar>>, Vec<usize>) {
        let mut rows = self.sparse_rows();
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let pivot_row = (rank..rows.len()).find(|&r| rows[r].contains_key(&col));
            let Some(pr) = pivot_row else { continue };
            rows.swap(rank, pr);
            let pivot = rows[rank][&col].clone();
            let pivot_row_data = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                let factor = row.remove(&col);
                // Bareiss update: (p·a − f·b)/prev, exact in every step.
                let mut next = BTreeMap::new();
                let keys: Vec<usize> = row
                    .keys()
                    .chain(pivot_row_data.keys())
                    .copied()
                    .filter(|&j| j > col)
                    .collect();
                for j in keys {
                    if next.contains_key(&j) {
                        continue;
                    }
                    let a = row.get(&j).cloned().unwrap_or_else(Scalar::zero);
                    let mut val = pivot.mul(&a);
                    if let Some(f) = &factor {
                        if let Some(b) = pivot_row_data.get(&j) {
                            val = val.sub(&f.mul(b));
                        }
                    }
                    let val = val.div(&prev).expect("fraction-free division is exact");
                    if !val.is_zero() {
                        next.insert(j, val);
                    }
                }
                *row = next;
            }
            prev = pivot;
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    fn echelon_dense(&self) -> (Vec<BTreeMap<usize, Scalar>>, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r][c] = v.clone();
        }
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let pivot_row = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
            let Some(pr) = pivot_row else { continue };
            rows.swap(rank, pr);
            let pivot = rows[rank][col].clone();
            let pivot_row_data = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                let factor = row[col].clone();
                row[col] = Scalar::zero();
                for j in (col + 1)..self.cols {
                    let mut val = pivot.mul(&row[j]);
                    if !factor.is_zero() && !pivot_row_data[j].is_zero() {
                        val = val.sub(&factor.mul(&pivot_row_data[j]));
                    }
                    row[j] = val.div(&prev).expect("fraction-free division is exact");
                }
            }
            prev = pivot;
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        let sparse: Vec<BTreeMap<usize, Scalar>> = rows
            .into_iter()
            .take(rank)
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        (sparse, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Exact basis of the right kernel; dimension is cols − rank.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (rows, pivots) = self.echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            // Back-substitution over the echelon rows, bottom-up.
            for (ri, &pc) in pivots.iter().enumerate().rev() {
                let row = &rows[ri];
                let mut acc = Scalar::zero();
                for (&j, a) in row.iter() {
                    if j > pc && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                if !acc.is_zero() {
                    v[pc] = acc.neg().div(&row[&pc]).expect("pivot nonzero");
                }
            }
            basis.push(v);
        }
        basis
    }

    /// dim span(A) − dim span(B), checking span(B) ⊆ span(A) first.
    /// Vectors are the columns of the respective lists.
    pub fn quotient_dim(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<usize> {
        let dim = a
            .first()
            .or_else(|| b.first())
            .map(|v| v.len())
            .unwrap_or(0);
        for v in a.iter().chain(b.iter()) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        let rank_a = SparseMatrix::from_columns(dim, a).rank();
        let rank_b = SparseMatrix::from_columns(dim, b).rank();
        let mut both: Vec<Vec<Scalar>> = a.to_vec();
        both.extend_from_slice(b);
        if SparseMatrix::from_columns(dim, &both).rank() != rank_a {
            return Err(Error::NotASubspace);
        }
        Ok(rank_a - rank_b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = SparseMatrix::identity(3);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn kernel_of_row_vector() {
        let mut m = SparseMatrix::new(1, 2);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::one());
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_int(-1), Scalar::one()]);
        assert!(m.mat_vec(&k[0]).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rank_nullity_on_a_cyclotomic_matrix() {
        let z = Scalar::root_of_unity(3, 1).unwrap();
        let mut m = SparseMatrix::new(2, 3);
        m.set(0, 0, z.clone());
        m.set(0, 1, Scalar::one());
        m.set(1, 0, z.mul(&Scalar::from_int(2)));
        m.set(1, 1, Scalar::from_int(2));
        m.set(1, 2, z.clone());
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.mat_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn quotient_dim_examples() {
        let a = vec![e(3, 0), e(3, 1)];
        let b = vec![e(3, 0)];
        assert_eq!(SparseMatrix::quotient_dim(&a, &b).unwrap(), 1);
        let dependent = vec![e(3, 0), e(3, 0)];
        assert_eq!(SparseMatrix::quotient_dim(&dependent, &[]).unwrap(), 1);
        let not_contained = vec![e(3, 2)];
        assert!(matches!(
            SparseMatrix::quotient_dim(&b, &not_contained),
            Err(Error::NotASubspace)
        ));
    }
}
