use std::fmt;

use super::{FieldSpec, LinAlgError, Scalar};

/// `dst -= f * src`, skipping zero entries of `src`.
pub fn add_scaled(dst: &mut [Scalar], f: &Scalar, src: &[Scalar]) {
    debug_assert_eq!(dst.len(), src.len());
    if f.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub_mul(f, s);
        }
    }
}

/// A dense matrix over one exact field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// Builds from explicit rows, rejecting ragged shapes and mixed fields.
    pub fn from_rows(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Matrix, LinAlgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, got: row.len() });
            }
            for s in &row {
                if s.field() != field {
                    return Err(LinAlgError::FieldMismatch);
                }
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, len: usize, cols: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, len, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        // explicit indexing: `chunks` would yield nothing for 0-column
        // matrices, silently dropping every row
        (0..self.rows).map(move |r| &self.data[r * self.cols..(r + 1) * self.cols])
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, row) in self.rows_iter().enumerate() {
            let mut acc = self.field.zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn mul_mat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j).add(&a.mul(b));
                        *out.at_mut(i, j) = cur;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j).add(other.at(i, j)))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j).sub(other.at(i, j)))
    }

    pub fn scale(&self, f: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j).mul(f))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Row-major flattening, the coordinate convention for spaces of maps.
    pub fn vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    /// Reduced row echelon form and its pivot columns.  The row space is
    /// preserved and zero rows are kept, so the result has the same shape.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut b = RrefBuilder::new(self.field, self.cols);
        for r in self.rows_iter() {
            b.add_row(r.to_vec());
        }
        let pivots = b.pivots().to_vec();
        let mut rows = b.into_rows();
        while rows.len() < self.rows {
            rows.push(vec![self.field.zero(); self.cols]);
        }
        (Matrix::from_rows(self.field, self.cols, rows).unwrap(), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut b = RrefBuilder::new(self.field, self.cols);
        for r in self.rows_iter() {
            b.add_row(r.to_vec());
        }
        b.rank()
    }

    /// Basis of the right null space; `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut b = RrefBuilder::new(self.field, self.cols);
        for r in self.rows_iter() {
            b.add_row(r.to_vec());
        }
        b.kernel()
    }

    /// Some `x` with `self * x = b`, or `None` if inconsistent.  Free
    /// variables are zeroed in RREF order, so the solution is canonical.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut builder = RrefBuilder::new(self.field, self.cols + 1);
        for (row, rhs) in self.rows_iter().zip(b) {
            let mut aug = row.to_vec();
            aug.push(rhs.clone());
            builder.add_row(aug);
        }
        if builder.pivots().contains(&self.cols) {
            return None; // a row reduced to (0 ... 0 | nonzero)
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in builder.rows().iter().zip(builder.pivots()) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.rows_iter() {
            let cells: Vec<String> = r.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental reduced row echelon form.
///
/// Rows are fed one at a time and fully reduced against the pivots seen so
/// far; dependent rows are dropped.  Because the RREF of a row space is
/// unique, the result does not depend on feeding order beyond the tie-breaks
/// already fixed by the column order.  Memory stays at `O(rank * cols)`,
/// which keeps the big relation-space eliminations cheap.
pub struct RrefBuilder {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RrefBuilder {
    pub fn new(field: FieldSpec, cols: usize) -> RrefBuilder {
        RrefBuilder { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Current RREF rows, sorted by pivot column.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Zeroes out all pivot coordinates of `v`.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                add_scaled(v, &f, row);
            }
        }
    }

    /// Inserts a row; returns `true` if the rank grew.
    pub fn add_row(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        // normalize the pivot to 1
        let inv = v[lead].inv();
        for s in v.iter_mut() {
            if !s.is_zero() {
                *s = s.mul(&inv);
            }
        }
        // eliminate the new pivot column from the existing rows
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                add_scaled(row, &f, &v);
            }
        }
        let idx = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(idx, lead);
        self.rows.insert(idx, v);
        true
    }

    /// Does `v` lie in the row space?
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Basis of `{x : row * x = 0 for all rows}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for c in 0..self.cols {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == c {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[c] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = row[c].neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Coefficients expressing `target` in the span of `vectors`, or `None`.
pub fn span_membership(
    field: FieldSpec,
    vectors: &[Vec<Scalar>],
    target: &[Scalar],
) -> Option<Vec<Scalar>> {
    SpanSolver::new(field, target.len(), vectors).coords(target)
}

/// Membership and coordinates with respect to a fixed spanning family.
///
/// Tracks how each RREF row was assembled from the inserted vectors, so
/// `coords` returns coefficients over the *original* family, not over the
/// reduced basis.
pub struct SpanSolver {
    builder: RrefBuilder,
    combos: Vec<Vec<Scalar>>, // combos[r][i]: coefficient of original vector i in row r
    count: usize,
}

impl SpanSolver {
    pub fn new(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> SpanSolver {
        let mut s = SpanSolver { builder: RrefBuilder::new(field, len), combos: Vec::new(), count: 0 };
        for v in vectors {
            s.push(v.clone());
        }
        s
    }

    /// Adds one more vector to the family.
    pub fn push(&mut self, mut v: Vec<Scalar>) -> bool {
        let field = self.builder.field;
        let mut combo = vec![field.zero(); self.count + 1];
        combo[self.count] = field.one();
        self.count += 1;
        for c in self.combos.iter_mut() {
            c.push(field.zero());
        }
        // mirror of RrefBuilder::add_row, carrying the combination along
        for (row, (&p, rc)) in
            self.builder.rows.iter().zip(self.builder.pivots.iter().zip(&self.combos))
        {
            if !v[p].is_zero() {
                let f = v[p].clone();
                add_scaled(&mut combo, &f, rc);
                add_scaled(&mut v, &f, row);
            }
        }
        let Some(lead) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv();
        for s in v.iter_mut() {
            if !s.is_zero() {
                *s = s.mul(&inv);
            }
        }
        for s in combo.iter_mut() {
            if !s.is_zero() {
                *s = s.mul(&inv);
            }
        }
        for (row, rc) in self.builder.rows.iter_mut().zip(self.combos.iter_mut()) {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                add_scaled(rc, &f, &combo);
                add_scaled(row, &f, &v);
            }
        }
        let idx = self.builder.pivots.partition_point(|&p| p < lead);
        self.builder.pivots.insert(idx, lead);
        self.builder.rows.insert(idx, v);
        self.combos.insert(idx, combo);
        true
    }

    pub fn dim(&self) -> usize {
        self.builder.rank()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.builder.contains(v)
    }

    /// Coefficients over the original family expressing `v`, or `None`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.builder.field;
        let mut w = v.to_vec();
        let mut coeffs = vec![field.zero(); self.count];
        for (row, (&p, rc)) in
            self.builder.rows.iter().zip(self.builder.pivots.iter().zip(&self.combos))
        {
            if !w[p].is_zero() {
                let f = w[p].clone();
                // v uses f * row, and row = rc over the originals
                for (out, c) in coeffs.iter_mut().zip(rc) {
                    if !c.is_zero() {
                        *out = out.add(&f.mul(c));
                    }
                }
                add_scaled(&mut w, &f, row);
            }
        }
        if w.iter().all(Scalar::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// The canonical (RREF) basis of the span.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.builder.rows()
    }

    /// The canonical basis together with, for each basis vector, its
    /// combination over the original family.
    pub fn basis_with_combos(&self) -> (&[Vec<Scalar>], &[Vec<Scalar>]) {
        (self.builder.rows(), &self.combos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn mat(field: FieldSpec, cols: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_already_reduced() {
        let id = Matrix::identity(f5(), 3);
        let (r, pivots) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_mod_5() {
        // [[2,4],[1,2]] over F_5 row-reduces to [[1,2],[0,0]] by hand:
        // scale row 0 by 2^{-1} = 3, then subtract it from row 1.
        let m = mat(f5(), 2, &[&[2, 4], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, mat(f5(), 2, &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zeros(f2(), 2, 3);
        let (r, pivots) = z.rref();
        assert_eq!(r, z);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_idempotent() {
        let m = mat(f5(), 3, &[&[2, 4, 1], &[1, 2, 3], &[0, 1, 1]]);
        let (r1, _) = m.rref();
        let (r2, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_identity_empty() {
        assert!(Matrix::identity(f5(), 4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_matches_exhaustive_search_over_f2() {
        // Oracle: enumerate all 4 vectors of F_2^2 and keep those killed by m.
        let m = mat(f2(), 2, &[&[1, 1]]);
        let mut solutions = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let v = vec![f2().from_i64(a), f2().from_i64(b)];
                if m.mul_vec(&v).iter().all(Scalar::is_zero) && (a, b) != (0, 0) {
                    solutions.push(v);
                }
            }
        }
        assert_eq!(solutions.len(), 1);
        let basis = m.kernel_basis();
        assert_eq!(basis, solutions);
    }

    #[test]
    fn kernel_of_empty_matrix_is_standard_basis() {
        let m = Matrix::zeros(f2(), 0, 3);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            for (j, s) in v.iter().enumerate() {
                assert_eq!(s.is_one(), i == j);
            }
        }
    }

    #[test]
    fn rank_nullity() {
        let m = mat(f5(), 4, &[&[1, 2, 3, 4], &[2, 4, 1, 3], &[3, 6, 4, 2]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.ncols());
    }

    #[test]
    fn solve_identity() {
        let id = Matrix::identity(f5(), 3);
        let b: Vec<Scalar> = [3, 1, 4].iter().map(|&x| f5().from_i64(x)).collect();
        assert_eq!(id.solve(&b), Some(b));
    }

    #[test]
    fn solve_zeroes_free_variables() {
        // [[1,1]] x = [1] over F_2: the free variable is zeroed, so x = [1,0].
        let m = mat(f2(), 2, &[&[1, 1]]);
        let b = vec![f2().one()];
        assert_eq!(m.solve(&b), Some(vec![f2().one(), f2().zero()]));
    }

    #[test]
    fn solve_with_no_columns_is_inconsistent_unless_rhs_zero() {
        let m = Matrix::zeros(f5(), 2, 0);
        assert_eq!(m.solve(&[f5().one(), f5().zero()]), None);
        assert_eq!(m.solve(&[f5().zero(), f5().zero()]), Some(vec![]));
    }

    #[test]
    fn solve_inconsistent() {
        let m = mat(f5(), 2, &[&[1, 1], &[2, 2]]);
        let b = vec![f5().one(), f5().one()];
        assert_eq!(m.solve(&b), None);
    }

    #[test]
    fn solve_is_exact() {
        let m = mat(f5(), 3, &[&[1, 2, 3], &[0, 1, 4]]);
        let b = vec![f5().from_i64(2), f5().from_i64(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn span_membership_unit_coefficient() {
        let v1 = vec![f5().one(), f5().from_i64(2)];
        let v2 = vec![f5().zero(), f5().one()];
        let solver = SpanSolver::new(f5(), 2, &[v1.clone(), v2]);
        assert_eq!(solver.coords(&v1), Some(vec![f5().one(), f5().zero()]));
    }

    #[test]
    fn span_membership_outside() {
        let v1 = vec![f5().one(), f5().zero(), f5().zero()];
        let solver = SpanSolver::new(f5(), 3, &[v1]);
        let target = vec![f5().zero(), f5().one(), f5().zero()];
        assert_eq!(solver.coords(&target), None);
        assert!(!solver.contains(&target));
    }

    #[test]
    fn span_membership_f2_case_enumeration() {
        // Span of [1,1] and [1,0] over F_2; the expansion of [0,1] is [1,1]
        // (checked against the 4-case enumeration: 1*[1,1] + 1*[1,0] = [0,1]).
        let v1 = vec![f2().one(), f2().one()];
        let v2 = vec![f2().one(), f2().zero()];
        let target = vec![f2().zero(), f2().one()];
        let mut found = Vec::new();
        for a in 0..2i64 {
            for b in 0..2i64 {
                let mut w = vec![f2().zero(), f2().zero()];
                add_scaled(&mut w, &f2().from_i64(-a), &v1);
                add_scaled(&mut w, &f2().from_i64(-b), &v2);
                if w == target {
                    found.push((a, b));
                }
            }
        }
        assert_eq!(found, vec![(1, 1)]);
        let solver = SpanSolver::new(f2(), 2, &[v1, v2]);
        assert_eq!(solver.coords(&target), Some(vec![f2().one(), f2().one()]));
    }

    #[test]
    fn span_coords_reconstruct() {
        let field = f5();
        let vs = vec![
            vec![field.from_i64(1), field.from_i64(2), field.from_i64(0)],
            vec![field.from_i64(2), field.from_i64(4), field.from_i64(0)], // dependent
            vec![field.from_i64(0), field.from_i64(1), field.from_i64(3)],
        ];
        let solver = SpanSolver::new(field, 3, &vs);
        assert_eq!(solver.dim(), 2);
        let target = vec![field.from_i64(1), field.from_i64(3), field.from_i64(3)];
        let coeffs = solver.coords(&target).unwrap();
        let mut rebuilt = vec![field.zero(); 3];
        for (c, v) in coeffs.iter().zip(&vs) {
            add_scaled(&mut rebuilt, &c.neg(), v);
        }
        assert_eq!(rebuilt, target);
    }
}
