//! Dense exact linear algebra over [`Scalar`].
//!
//! Everything downstream (structure constants, Hom-space computation,
//! minimization, subspace comparisons) reduces to row-echelon work on small
//! dense matrices, so this module keeps the classic trio: [`Matrix`] with
//! Gaussian elimination, kernel and solve routines, and an incremental
//! row-space [`Subspace`] used for ideal closures and span-equality tests.

use crate::scalar::{FieldSpec, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix out of row vectors (all of equal length).
    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// In-place reduced row-echelon form. Returns the pivot columns in
    /// order (one per nonzero row).
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..self.cols {
            let Some(pr) = (lead_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead_row, pr);
            let inv = self
                .get(lead_row, col)
                .inv()
                .expect("pivot is nonzero, hence invertible in a field");
            self.scale_row(lead_row, &inv);
            for r in 0..self.rows {
                if r != lead_row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).neg();
                    self.add_scaled_row(r, lead_row, &factor);
                }
            }
            pivots.push(col);
            lead_row += 1;
            if lead_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : A·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                // Row reads x_pcol + Σ m[prow][free] x_free = 0.
                v[pcol] = m.get(prow, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A·x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent system
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.get(prow, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(s);
            self.set(r, j, v);
        }
    }

    /// row_r += s · row_src
    fn add_scaled_row(&mut self, r: usize, src: usize, s: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(r, j).add(&self.get(src, j).mul(s));
            self.set(r, j, v);
        }
    }
}

/// Incrementally built row space in reduced echelon form.
///
/// Supports membership tests and dimension queries in `O(dim · n)` per
/// vector; the workhorse behind ideal closures and span comparisons.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: FieldSpec,
    /// Ambient dimension.
    pub n: usize,
    /// Echelon rows, each with its pivot column, sorted by pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Subspace {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        Subspace { field, n, rows: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows, returning the remainder. Because
    /// the rows are kept fully reduced, the remainder is the canonical coset
    /// representative supported on non-pivot coordinates.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for j in 0..self.n {
                    v[j] = v[j].sub(&c.mul(&row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Inserts `v`; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.n, "ambient dimension mismatch");
        let mut r = self.reduce(v.to_vec());
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].inv().expect("nonzero entry");
        for x in &mut r {
            *x = x.mul(&inv);
        }
        // Back-substitute into existing rows to keep fully reduced form.
        for (_, row) in &mut self.rows {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for j in 0..self.n {
                    row[j] = row[j].sub(&c.mul(&r[j]));
                }
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, r));
        true
    }

    /// The echelonized basis rows.
    pub fn basis(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Pivot coordinates of the echelon rows, in ascending order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Two subspaces are equal iff they have the same reduced echelon rows.
    pub fn same_space(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.rows.iter().all(|(_, r)| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn m(rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Q.from_i64(x)).collect()).collect();
        Matrix::from_rows(Q, &rows)
    }

    #[test]
    fn rref_rank_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let b = vec![Q.from_i64(6), Q.from_i64(12), Q.from_i64(2)];
        let x = a.solve(&b).unwrap();
        // Verify A·x = b exactly.
        for i in 0..3 {
            let mut acc = Q.zero();
            for j in 0..3 {
                acc = acc.add(&a.get(i, j).mul(&x[j]));
            }
            assert_eq!(acc, b[i]);
        }
        let inconsistent = a.solve(&[Q.one(), Q.one(), Q.one()]);
        // [1,1,1] is not in the column span: row2 = 2·row1 forces b2 = 2·b1.
        assert!(inconsistent.is_none());
    }

    #[test]
    fn nullspace_dimension_theorem() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 3 - a.rank());
        for v in &ns {
            for i in 0..a.rows {
                let mut acc = Q.zero();
                for j in 0..a.cols {
                    acc = acc.add(&a.get(i, j).mul(&v[j]));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn matmul_against_identity_and_known_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(Q, 2);
        assert_eq!(a.matmul(&id), a);
        let b = m(&[&[0, 1], &[1, 0]]);
        let ab = a.matmul(&b);
        assert_eq!(ab, m(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn subspace_insert_and_equality() {
        let mut s = Subspace::new(Q, 3);
        assert!(s.insert(&[Q.from_i64(1), Q.from_i64(1), Q.zero()]));
        assert!(s.insert(&[Q.zero(), Q.from_i64(1), Q.from_i64(1)]));
        assert!(!s.insert(&[Q.from_i64(1), Q.from_i64(2), Q.from_i64(1)])); // dependent
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[Q.from_i64(2), Q.from_i64(3), Q.from_i64(1)]));
        assert!(!s.contains(&[Q.one(), Q.zero(), Q.zero()]));

        let mut t = Subspace::new(Q, 3);
        t.insert(&[Q.from_i64(1), Q.from_i64(2), Q.from_i64(1)]);
        t.insert(&[Q.from_i64(1), Q.from_i64(0), Q.from_i64(-1)]);
        assert!(s.same_space(&t));
    }

    #[test]
    fn prime_field_elimination_matches_rational_rank() {
        let f = FieldSpec::Prime { p: 10007 };
        let rows: Vec<Vec<Scalar>> = vec![
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
            vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(1)],
        ];
        let a = Matrix::from_rows(f, &rows);
        assert_eq!(a.rank(), 2);
    }
}
