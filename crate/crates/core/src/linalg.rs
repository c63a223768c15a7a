//! Dense matrices over a prime field: RREF, rank, kernel bases.
//!
//! Everything downstream (evaluation matrices, Koszul differentials, boundary
//! maps) runs through this module. Matrices in scope are small, so storage is
//! dense row-major and elimination is plain Gauss-Jordan.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix over F_p. Entries are canonical in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    field: PrimeField,
}

/// Result of `Matrix::rref`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    /// Strictly increasing column indices of the pivots.
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length;
    /// entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row 0 has {} entries but row {} has {}",
                    cols,
                    i,
                    r.len()
                )));
            }
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
            field,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b != 0 {
                        let cur = out.entries[r * rhs.cols + c];
                        out.entries[r * rhs.cols + c] = f.add(cur, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies `self` (rows x cols) to a column vector of length `cols`.
    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} cols, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a != 0 && v[c] != 0 {
                    acc = f.add(acc, f.mul(a, v[c]));
                }
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Reduced row echelon form, pivot columns, and rank. Row space is
    /// preserved; empty matrices are fine.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = f.inv(m.get(pivot_row, col));
            m.scale_row(pivot_row, inv);
            for r in 0..m.rows {
                if r != pivot_row {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        m.row_axpy(r, pivot_row, f.neg(factor), col);
                    }
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        Rref {
            reduced: m,
            pivot_cols,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        let mut er = EchelonReducer::new(self.field, self.cols);
        for r in 0..self.rows {
            er.insert_dense(self.row(r));
        }
        er.rank()
    }

    /// Basis of the right null space, one vector per row, in the canonical
    /// RREF parameterization: free variables become unit vectors, in
    /// increasing column order.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivot_cols.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| pivot_set[*c].is_none()).collect();
        let mut basis = Matrix::zero(f, free_cols.len(), self.cols);
        for (k, &fc) in free_cols.iter().enumerate() {
            basis.set(k, fc, 1);
            for (i, &pc) in pivot_cols.iter().enumerate() {
                basis.set(k, pc, f.neg(reduced.get(i, fc)));
            }
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.entries[r * self.cols + c];
            if v != 0 {
                self.entries[r * self.cols + c] = f.mul(v, s);
            }
        }
    }

    /// row[dst] += factor * row[src], starting from column `from`.
    fn row_axpy(&mut self, dst: usize, src: usize, factor: u64, from: usize) {
        let f = self.field;
        for c in from..self.cols {
            let s = self.entries[src * self.cols + c];
            if s != 0 {
                let d = self.entries[dst * self.cols + c];
                self.entries[dst * self.cols + c] = f.add(d, f.mul(factor, s));
            }
        }
    }
}

/// Rank of a list of coordinate vectors over `field`.
pub fn rank_of_vectors(vs: &[Vec<u64>], field: PrimeField) -> Result<usize> {
    Ok(Matrix::from_rows(field, vs)?.rank())
}

/// Solves `x * basis = target` for a row vector `x`, where the rows of
/// `basis` are linearly independent. Returns `None` when `target` is outside
/// the row space.
pub fn solve_row_combination(basis: &Matrix, target: &[u64]) -> Result<Option<Vec<u64>>> {
    if target.len() != basis.cols() {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} cols, target has {}",
            basis.cols(),
            target.len()
        )));
    }
    let f = basis.field();
    // Augmented system basis^T * x^T = target^T.
    let mut rows = Vec::with_capacity(basis.cols());
    for c in 0..basis.cols() {
        let mut row = Vec::with_capacity(basis.rows() + 1);
        for r in 0..basis.rows() {
            row.push(basis.get(r, c));
        }
        row.push(f.reduce(target[c]));
        rows.push(row);
    }
    let aug = Matrix::from_rows(f, &rows)?;
    let Rref {
        reduced, pivot_cols, ..
    } = aug.rref();
    // Inconsistent iff a pivot lands in the augmented column.
    if pivot_cols.contains(&basis.rows()) {
        return Ok(None);
    }
    let mut x = vec![0u64; basis.rows()];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = reduced.get(i, basis.rows());
    }
    Ok(Some(x))
}

/// Incremental row-echelon reducer. Feed vectors one at a time; tracks rank
/// and (optionally) the reduced pivot rows. Skip-zero arithmetic keeps sparse
/// inputs fast.
#[derive(Debug, Clone)]
pub struct EchelonReducer {
    field: PrimeField,
    width: usize,
    /// Pivot rows, each normalized to lead with 1; `leads[k]` is the lead
    /// column of `rows[k]`. Rows are kept sorted by lead column.
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
    /// lead column -> index into `rows`.
    by_col: Vec<Option<usize>>,
}

impl EchelonReducer {
    pub fn new(field: PrimeField, width: usize) -> Self {
        EchelonReducer {
            field,
            width,
            rows: Vec::new(),
            leads: Vec::new(),
            by_col: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current pivots and installs the remainder if
    /// nonzero. Returns true when the rank grew.
    pub fn insert_dense(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.insert_owned(&mut w)
    }

    /// Sparse entry point: `(column, value)` pairs, columns need not be sorted.
    pub fn insert_sparse(&mut self, entries: &[(usize, u64)]) -> bool {
        let mut w = vec![0u64; self.width];
        let f = self.field;
        for &(c, val) in entries {
            w[c] = f.add(w[c], f.reduce(val));
        }
        self.insert_owned(&mut w)
    }

    fn insert_owned(&mut self, w: &mut Vec<u64>) -> bool {
        let f = self.field;
        let mut col = 0;
        while col < self.width {
            if w[col] == 0 {
                col += 1;
                continue;
            }
            match self.by_col[col] {
                Some(k) => {
                    let factor = f.neg(w[col]);
                    let pivot = &self.rows[k];
                    for c in col..self.width {
                        let s = pivot[c];
                        if s != 0 {
                            w[c] = f.add(w[c], f.mul(factor, s));
                        }
                    }
                    col += 1;
                }
                None => {
                    let inv = f.inv(w[col]);
                    for c in col..self.width {
                        if w[c] != 0 {
                            w[c] = f.mul(w[c], inv);
                        }
                    }
                    self.by_col[col] = Some(self.rows.len());
                    self.rows.push(std::mem::take(w));
                    self.leads.push(col);
                    return true;
                }
            }
        }
        false
    }

    /// Span membership without mutating the reducer.
    pub fn contains(&self, v: &[u64]) -> bool {
        let f = self.field;
        let mut w = v.to_vec();
        let mut col = 0;
        while col < self.width {
            if w[col] == 0 {
                col += 1;
                continue;
            }
            match self.by_col[col] {
                Some(k) => {
                    let factor = f.neg(w[col]);
                    let pivot = &self.rows[k];
                    for c in col..self.width {
                        let s = pivot[c];
                        if s != 0 {
                            w[c] = f.add(w[c], f.mul(factor, s));
                        }
                    }
                    col += 1;
                }
                None => return false,
            }
        }
        true
    }

    /// The pivot rows as a matrix, fully back-substituted into RREF.
    pub fn to_rref_matrix(&self) -> Matrix {
        let rows: Vec<Vec<u64>> = {
            let mut order: Vec<usize> = (0..self.rows.len()).collect();
            order.sort_by_key(|&k| self.leads[k]);
            order.into_iter().map(|k| self.rows[k].clone()).collect()
        };
        let m = Matrix::from_rows(self.field, &rows).expect("pivot rows share width");
        m.rref().reduced
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(f5(), 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zero(f5(), 2, 3);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_dependent_rows() {
        // row2 = 2 * row1 over F_5.
        let m = Matrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let m = Matrix::from_rows(PrimeField::new(7).unwrap(), &[vec![1, 1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let prod = m.apply(k.row(r)).unwrap();
            assert!(prod.iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(f101(), 3);
        assert_eq!(m.kernel_basis().rows(), 0);
    }

    #[test]
    fn kernel_canonical_form() {
        let m = Matrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[3, 1]);
        // 1*3 + 2*1 = 5 = 0 mod 5
        assert_eq!(f5().add(f5().mul(1, 3), f5().mul(2, 1)), 0);
    }

    #[test]
    fn rank_of_unit_vectors() {
        let e = |i: usize| {
            let mut v = vec![0u64; 3];
            v[i] = 1;
            v
        };
        assert_eq!(
            rank_of_vectors(&[e(0), e(1), e(2)], f101()).unwrap(),
            3
        );
        let sum = vec![1, 1, 0];
        assert_eq!(rank_of_vectors(&[e(0), e(1), sum], f101()).unwrap(), 2);
    }

    #[test]
    fn rank_of_moment_vectors() {
        // (1, t, t^2, t^3) for t = 1..4 over F_101; Vandermonde determinant
        // is a product of differences of distinct parameters, hence nonzero.
        let f = f101();
        let rows: Vec<Vec<u64>> = (1u64..=4)
            .map(|t| (0..4).map(|e| f.pow(t, e)).collect())
            .collect();
        assert_eq!(rank_of_vectors(&rows, f).unwrap(), 4);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let r = rank_of_vectors(&[vec![1, 2], vec![1, 2, 3]], f5());
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_row_combination_roundtrip() {
        let f = f101();
        let basis = Matrix::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let x = solve_row_combination(&basis, &[1, 3, 2]).unwrap().unwrap();
        // x = (1, 2): row0 + 2*row1 = (1, 3, 2)
        assert_eq!(x, vec![1, 2]);
        assert!(solve_row_combination(&basis, &[1, 0, 1]).unwrap().is_none());
    }

    #[test]
    fn echelon_reducer_matches_rref_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = f101();
        for _ in 0..50 {
            let rows = rng.random_range(1..8);
            let cols = rng.random_range(1..8);
            let data: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_range(0..101)).collect())
                .collect();
            let m = Matrix::from_rows(f, &data).unwrap();
            assert_eq!(m.rank(), m.rref().rank);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn empty_matrix_edge_cases() {
        let m = Matrix::zero(f5(), 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().rows(), 4);
        let m = Matrix::zero(f5(), 3, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().rows(), 0);
    }
}
