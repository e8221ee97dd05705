//! Dense exact matrices and the Gaussian-elimination kernels the rest of the
//! system reduces to.
//!
//! The whole workspace fixes the row-vector convention: modules act on the
//! right, vectors are rows, and `solve(m, b)` finds `x` with `x * m = b`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Result of reduced row echelon computation, together with the row
/// transform: `transform * m == reduced` (rows of `reduced` are the recorded
/// combinations of rows of `m`).
pub struct Rref {
    pub rank: usize,
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        Matrix { rows: r, cols: c, field, entries }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, entries }
    }

    pub fn from_ints(field: FieldSpec, data: &[&[i64]]) -> Matrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows, cols, |i, j| field.from_int(data[i][j]))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).neg())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Stack `self` on top of `o` (same column count).
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, field: self.field, entries }
    }

    /// Concatenate columns (same row count).
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { o.get(i, j - self.cols).clone() }
        })
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Block-diagonal assembly.
    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Unique reduced row echelon form with the row transform.
    pub fn rref(&self) -> Rref {
        let mut red = self.clone();
        let mut tf = Matrix::identity(self.field, self.rows);
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            // find pivot in column c at or below row r
            let Some(pr) = (r..self.rows).find(|&i| !red.get(i, c).is_zero()) else {
                continue;
            };
            red.swap_rows(r, pr);
            tf.swap_rows(r, pr);
            let inv = red.get(r, c).inv().unwrap();
            red.scale_row(r, &inv);
            tf.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !red.get(i, c).is_zero() {
                    let f = red.get(i, c).clone();
                    red.sub_scaled_row(i, r, &f);
                    tf.sub_scaled_row(i, r, &f);
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        Rref { rank: r, reduced: red, pivot_cols, transform: tf }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : x * m = 0}` as rows. Row count is `rows(m) - rank(m)`.
    pub fn kernel_basis(&self) -> Matrix {
        let rr = self.rref();
        let mut rows = Vec::new();
        for i in rr.rank..self.rows {
            rows.push(rr.transform.row_vec(i));
        }
        if rows.is_empty() {
            Matrix::zero(self.field, 0, self.rows)
        } else {
            Matrix::from_rows(self.field, rows)
        }
    }

    /// One solution of `x * m = b` (each row of `b` solved independently), or
    /// `None` if inconsistent. Free coordinates are set to zero, so the
    /// result is deterministic.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.solver().solve(b)
    }

    /// Precompute the elimination once for repeated solves against the same
    /// matrix.
    pub fn solver(&self) -> LinSolver {
        LinSolver { rr: self.rref(), rows: self.rows, cols: self.cols, field: self.field }
    }
    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let rr = self.rref();
        if rr.rank == self.rows {
            Some(rr.transform)
        } else {
            None
        }
    }

    /// Do the rows of `other` lie in the row space of `self`?
    pub fn row_space_contains(&self, other: &Matrix) -> bool {
        matches!(self.solve(other), Ok(Some(_)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(target, j).sub(&c.mul(self.get(source, j)));
            self.set(target, j, v);
        }
    }
}

/// Cached elimination of a fixed matrix `m`, for repeated solves of
/// `x * m = b`.
pub struct LinSolver {
    rr: Rref,
    rows: usize,
    cols: usize,
    field: FieldSpec,
}

impl LinSolver {
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.cols != self.cols {
            return Err(Error::Input(format!(
                "solve: rhs has {} columns, matrix has {}",
                b.cols, self.cols
            )));
        }
        let mut out = Matrix::zero(self.field, b.rows, self.rows);
        for bi in 0..b.rows {
            // express row b[bi] in the rref rows, then pull back via transform
            let mut residual = b.row_vec(bi);
            let mut combo = vec![self.field.zero(); self.rows];
            for (ri, &pc) in self.rr.pivot_cols.iter().enumerate() {
                let c = residual[pc].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let rv = self.rr.reduced.get(ri, j);
                    if !rv.is_zero() {
                        residual[j] = residual[j].sub(&c.mul(rv));
                    }
                }
                combo[ri] = c;
            }
            if residual.iter().any(|v| !v.is_zero()) {
                return Ok(None);
            }
            for j in 0..self.rows {
                let mut acc = self.field.zero();
                for (ri, cf) in combo.iter().enumerate() {
                    if !cf.is_zero() {
                        acc = acc.add(&cf.mul(self.rr.transform.get(ri, j)));
                    }
                }
                out.set(bi, j, acc);
            }
        }
        Ok(Some(out))
    }

    pub fn contains(&self, b: &Matrix) -> bool {
        matches!(self.solve(b), Ok(Some(_)))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn rref_identity_over_gf5() {
        let m = Matrix::identity(gf(5), 3);
        let rr = m.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.reduced, m);
        assert_eq!(rr.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zero(gf(5), 2, 4);
        assert_eq!(m.rref().rank, 0);
    }

    #[test]
    fn rref_rank_one_over_q() {
        // [[1,2],[2,4]] row-reduces to [[1,2],[0,0]] (hand row-reduction)
        let m = Matrix::from_ints(FieldSpec::Rational, &[&[1, 2], &[2, 4]]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        let expected = Matrix::from_ints(FieldSpec::Rational, &[&[1, 2], &[0, 0]]);
        assert_eq!(rr.reduced, expected);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(gf(7), 4);
        assert_eq!(m.kernel_basis().rows, 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let m = Matrix::zero(gf(5), 3, 2);
        let k = m.kernel_basis();
        assert_eq!(k.rows, 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_over_gf2_matches_enumeration() {
        // kernel of [[1,1],[1,1]] over GF(2): enumerate all of GF(2)^2.
        let f = gf(2);
        let m = Matrix::from_ints(f, &[&[1, 1], &[1, 1]]);
        let mut members = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let x = Matrix::from_ints(f, &[&[a, b]]);
                if x.mul(&m).is_zero() && !(a == 0 && b == 0) {
                    members.push(x);
                }
            }
        }
        assert_eq!(members.len(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.rows, 1);
        assert_eq!(k, members[0]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = gf(5);
        let m = Matrix::identity(f, 3);
        let b = Matrix::from_ints(f, &[&[1, 2, 3]]);
        assert_eq!(m.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_zero_matrix_inconsistent() {
        let f = gf(5);
        let m = Matrix::zero(f, 2, 2);
        let b = Matrix::from_ints(f, &[&[1, 0]]);
        assert!(m.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_underdetermined_is_pivot_first() {
        // m = [[1],[1]] over GF(3), b = [2]: candidates are [2,0] and [0,2];
        // the pivot-ordered solution is [2,0].
        let f = gf(3);
        let m = Matrix::from_ints(f, &[&[1], &[1]]);
        let b = Matrix::from_ints(f, &[&[2]]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_ints(f, &[&[2, 0]]));
        assert_eq!(x.mul(&m), b);
    }

    #[test]
    fn solve_dimension_mismatch_errors() {
        let f = gf(5);
        let m = Matrix::zero(f, 2, 3);
        let b = Matrix::zero(f, 1, 2);
        assert!(m.solve(&b).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(5);
        let m = Matrix::from_ints(f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(inv.mul(&m).is_identity());
        assert!(m.mul(&inv).is_identity());
    }
}
