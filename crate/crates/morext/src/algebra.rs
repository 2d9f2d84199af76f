//! Finite-dimensional unital associative algebras by structure constants.
//!
//! An [`Algebra`] is a basis `e_0, ..., e_{d-1}`, the coordinates of the
//! identity, and the full multiplication table `e_i * e_j = sum_k c_{ijk} e_k`.
//! Construction checks the unit laws and all `d^3` associativity identities,
//! so everything downstream may assume it is working inside an honest ring.
//!
//! Subalgebras are stored as embeddings: an RREF basis of ambient coordinate
//! vectors plus the induced algebra on that basis.  Keeping bases in RREF
//! makes every derived object (centralizers, tensor squares, certificates)
//! reproducible run to run.

use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{add_scaled, FieldSpec, Matrix, RrefBuilder, Scalar, SpanSolver};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("unit law fails at basis index {0}")]
    UnitViolation(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operands belong to different algebras")]
    ParentMismatch,
    #[error("algebras live over different fields")]
    FieldMismatch,
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("candidate basis does not span a unital subalgebra: {0}")]
    NotASubalgebra(String),
    #[error("bimodule action tables are inconsistent: {0}")]
    BadBimodule(String),
}

/// A finite-dimensional unital associative algebra, given by structure
/// constants over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    unit: Vec<Scalar>,
    /// `mul[(i*d + j)*d + k]` is the `e_k`-coordinate of `e_i * e_j`.
    mul: Vec<Scalar>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {} over {:?})", self.dim, self.field)
    }
}

impl Algebra {
    /// Validates the tables and returns the algebra.
    ///
    /// `mul` holds, for each basis pair `(i, j)` in row-major order, the
    /// coordinate vector of `e_i * e_j`.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        unit: Vec<Scalar>,
        mul: Vec<Scalar>,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        if unit.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "unit vector has length {}, expected {dim}",
                unit.len()
            )));
        }
        if mul.len() != dim * dim * dim {
            return Err(AlgebraError::Shape(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                dim * dim * dim
            )));
        }
        for s in unit.iter().chain(mul.iter()) {
            if s.field() != field {
                return Err(AlgebraError::FieldMismatch);
            }
        }
        let alg = Algebra { field, dim, unit, mul };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis_vec(i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Err(AlgebraError::UnitViolation(i));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_mul(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul_vec(&ij, &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), self.basis_mul(j, k));
                    if left != right {
                        return Err(AlgebraError::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    /// Structure-constant row for `e_i * e_j`.
    pub fn basis_mul(&self, i: usize, j: usize) -> &[Scalar] {
        let d = self.dim;
        &self.mul[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let f = xi.mul(yj).neg();
                add_scaled(&mut out, &f, self.basis_mul(i, j));
            }
        }
        out
    }

    /// `x^n` by repeated product; `x^0 = 1`.
    pub fn pow_vec(&self, x: &[Scalar], n: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul_vec(&acc, x);
        }
        acc
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul_vec(x, &self.basis_vec(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul_vec(&self.basis_vec(j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                if self.basis_mul(i, j) != self.basis_mul(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> Arc<Algebra> {
        Algebra::new(field, 1, vec![field.one()], vec![field.one()]).expect("ground field")
    }

    /// `M_n(R)` on the basis `E_{st} ⊗ r_i`, ordered by `(s, t, i)`.
    pub fn matrix_algebra(r: &Algebra, n: usize) -> Result<Arc<Algebra>, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::Shape("matrix algebra needs n >= 1".into()));
        }
        let dr = r.dim;
        let dim = n * n * dr;
        let field = r.field;
        let idx = |s: usize, t: usize, i: usize| (s * n + t) * dr + i;
        let mut unit = vec![field.zero(); dim];
        for s in 0..n {
            for (i, u) in r.unit.iter().enumerate() {
                unit[idx(s, s, i)] = u.clone();
            }
        }
        let mut mul = vec![field.zero(); dim * dim * dim];
        for s in 0..n {
            for t in 0..n {
                for i in 0..dr {
                    for q in 0..n {
                        for j in 0..dr {
                            // (E_st ⊗ r_i)(E_tq ⊗ r_j) = E_sq ⊗ r_i r_j
                            let a = idx(s, t, i);
                            let b = idx(t, q, j);
                            let prod = r.basis_mul(i, j);
                            for (k, c) in prod.iter().enumerate() {
                                mul[(a * dim + b) * dim + idx(s, q, k)] = c.clone();
                            }
                        }
                    }
                }
            }
        }
        Algebra::new(field, dim, unit, mul)
    }

    /// `k[t]/(t^m)` on the basis `1, t, ..., t^{m-1}`.
    pub fn truncated_poly(field: FieldSpec, m: usize) -> Result<Arc<Algebra>, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::Shape("truncation order must be >= 1".into()));
        }
        let mut unit = vec![field.zero(); m];
        unit[0] = field.one();
        let mut mul = vec![field.zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    mul[(i * m + j) * m + i + j] = field.one();
                }
            }
        }
        Algebra::new(field, m, unit, mul)
    }

    /// Group algebra from a Cayley table `table[i][j] = index of g_i g_j`.
    pub fn group_algebra(
        table: &[Vec<usize>],
        field: FieldSpec,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::NotAGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(AlgebraError::NotAGroup("entry out of range".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| AlgebraError::NotAGroup("no identity element".into()))?;
        for (x, row) in table.iter().enumerate() {
            if !(0..n).any(|y| row[y] == e && table[y][x] == e) {
                return Err(AlgebraError::NotAGroup(format!("element {x} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[e] = field.one();
        let mut mul = vec![field.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                mul[(i * n + j) * n + table[i][j]] = field.one();
            }
        }
        Algebra::new(field, n, unit, mul)
    }

    /// Opposite algebra: same space, reversed products.
    pub fn opposite(&self) -> Arc<Algebra> {
        let d = self.dim;
        let mut mul = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_mul(j, i).iter().enumerate() {
                    mul[(i * d + j) * d + k] = c.clone();
                }
            }
        }
        Algebra::new(self.field, d, self.unit.clone(), mul).expect("opposite of a valid algebra")
    }

    /// Tensor product over the ground field, basis ordered by `(i, j)`.
    pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Arc<Algebra>, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let (da, db) = (a.dim, b.dim);
        let dim = da * db;
        let field = a.field;
        let mut unit = vec![field.zero(); dim];
        for (i, x) in a.unit.iter().enumerate() {
            for (j, y) in b.unit.iter().enumerate() {
                unit[i * db + j] = x.mul(y);
            }
        }
        let mut mul = vec![field.zero(); dim * dim * dim];
        for i1 in 0..da {
            for j1 in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let pa = a.basis_mul(i1, i2);
                        let pb = b.basis_mul(j1, j2);
                        let row = ((i1 * db + j1) * dim + (i2 * db + j2)) * dim;
                        for (k1, c1) in pa.iter().enumerate() {
                            if c1.is_zero() {
                                continue;
                            }
                            for (k2, c2) in pb.iter().enumerate() {
                                if !c2.is_zero() {
                                    mul[row + k1 * db + k2] = c1.mul(c2);
                                }
                            }
                        }
                    }
                }
            }
        }
        Algebra::new(field, dim, unit, mul)
    }

    /// Smallest unital subalgebra containing the generators.
    ///
    /// Iterates `span <- span + span*span` until stable; `dim` rounds always
    /// suffice and stabilization is asserted.
    pub fn subalgebra_closure(
        self: &Arc<Algebra>,
        generators: &[Vec<Scalar>],
    ) -> Result<SubalgebraEmbedding, AlgebraError> {
        let mut span = RrefBuilder::new(self.field, self.dim);
        span.add_row(self.unit.clone());
        for g in generators {
            if g.len() != self.dim {
                return Err(AlgebraError::Shape("generator has wrong length".into()));
            }
            span.add_row(g.clone());
        }
        for _round in 0..=self.dim {
            let before = span.rank();
            let basis: Vec<Vec<Scalar>> = span.rows().to_vec();
            for x in &basis {
                for y in &basis {
                    span.add_row(self.mul_vec(x, y));
                }
            }
            if span.rank() == before {
                let basis = span.into_rows();
                return SubalgebraEmbedding::new(self.clone(), basis);
            }
        }
        unreachable!("closure did not stabilize within dim rounds");
    }

    /// Basis of the centralizer `V_A(X) = {a : xa = ax for all x in X}`.
    ///
    /// When `X` spans a subalgebra it is enough to pass generators.
    pub fn centralizer(&self, xs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut b = RrefBuilder::new(self.field, self.dim);
        for x in xs {
            let m = self.left_mult(x).sub(&self.right_mult(x));
            for row in m.rows_iter() {
                b.add_row(row.to_vec());
            }
        }
        b.kernel()
    }

    /// Basis of the center `V_A(A)`.
    pub fn center(self: &Arc<Algebra>) -> Vec<Vec<Scalar>> {
        let gens = generating_subset(self, &basis_vectors(self));
        self.centralizer(&gens)
    }
}

/// All standard basis vectors of `a`.
pub fn basis_vectors(a: &Algebra) -> Vec<Vec<Scalar>> {
    (0..a.dim()).map(|i| a.basis_vec(i)).collect()
}

/// A greedy subfamily of `vectors` whose unital closure spans the same
/// subalgebra as the whole family (the family must span one).
///
/// The commutant, intertwiner and derivation systems all quantify over a
/// subalgebra; restricting them to a small generating set keeps those
/// eliminations near-linear in practice.
pub fn generating_subset(a: &Arc<Algebra>, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut target = RrefBuilder::new(a.field(), a.dim());
    for v in vectors {
        target.add_row(v.clone());
    }
    let goal = target.rank();
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut closed = RrefBuilder::new(a.field(), a.dim());
    closed.add_row(a.unit().to_vec());
    for v in vectors {
        if closed.rank() == goal {
            break;
        }
        if closed.contains(v) {
            continue;
        }
        chosen.push(v.clone());
        closed.add_row(v.clone());
        loop {
            let before = closed.rank();
            let basis: Vec<Vec<Scalar>> = closed.rows().to_vec();
            for x in &basis {
                for y in &basis {
                    closed.add_row(a.mul_vec(x, y));
                }
            }
            if closed.rank() == before {
                break;
            }
        }
    }
    debug_assert_eq!(closed.rank(), goal, "generating subset must close to the full span");
    chosen
}

/// An element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    parent: Arc<Algebra>,
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(parent: Arc<Algebra>, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != parent.dim() {
            return Err(AlgebraError::Shape(format!(
                "coordinate vector has length {}, expected {}",
                coords.len(),
                parent.dim()
            )));
        }
        Ok(Element { parent, coords })
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn multiply(&self, other: &Element) -> Result<Element, AlgebraError> {
        if !Arc::ptr_eq(&self.parent, &other.parent) && self.parent != other.parent {
            return Err(AlgebraError::ParentMismatch);
        }
        Ok(Element {
            parent: self.parent.clone(),
            coords: self.parent.mul_vec(&self.coords, &other.coords),
        })
    }

    pub fn power(&self, n: u64) -> Element {
        Element { parent: self.parent.clone(), coords: self.parent.pow_vec(&self.coords, n) }
    }
}

/// A unital subalgebra `B` of an ambient algebra, stored as an RREF basis of
/// ambient coordinate vectors together with the induced algebra on it.
#[derive(Clone)]
pub struct SubalgebraEmbedding {
    ambient: Arc<Algebra>,
    basis: Vec<Vec<Scalar>>,
    induced: Arc<Algebra>,
}

impl SubalgebraEmbedding {
    /// Checks that the span of `basis` is closed under the ambient product
    /// and contains the ambient unit, then derives the induced algebra.
    pub fn new(
        ambient: Arc<Algebra>,
        basis: Vec<Vec<Scalar>>,
    ) -> Result<SubalgebraEmbedding, AlgebraError> {
        let field = ambient.field();
        let mut rref = RrefBuilder::new(field, ambient.dim());
        for v in &basis {
            if v.len() != ambient.dim() {
                return Err(AlgebraError::Shape("basis vector has wrong length".into()));
            }
            rref.add_row(v.clone());
        }
        let basis = rref.into_rows();
        let solver = SpanSolver::new(field, ambient.dim(), &basis);
        if !solver.contains(ambient.unit()) {
            return Err(AlgebraError::NotASubalgebra("ambient unit outside the span".into()));
        }
        let d = basis.len();
        let mut mul = vec![field.zero(); d * d * d];
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let p = ambient.mul_vec(x, y);
                let coords = solver.coords(&p).ok_or_else(|| {
                    AlgebraError::NotASubalgebra(format!(
                        "product of basis vectors {i} and {j} leaves the span"
                    ))
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    mul[(i * d + j) * d + k] = c;
                }
            }
        }
        let unit = solver.coords(ambient.unit()).expect("checked above");
        let induced = Algebra::new(field, d, unit, mul)?;
        Ok(SubalgebraEmbedding { ambient, basis, induced })
    }

    pub fn ambient(&self) -> &Arc<Algebra> {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn induced(&self) -> &Arc<Algebra> {
        &self.induced
    }

    fn solver(&self) -> SpanSolver {
        SpanSolver::new(self.ambient.field(), self.ambient.dim(), &self.basis)
    }

    /// Ambient coordinates of an element given in induced coordinates.
    pub fn to_ambient(&self, b_coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.ambient.zero_vec();
        for (c, v) in b_coords.iter().zip(&self.basis) {
            add_scaled(&mut out, &c.neg(), v);
        }
        out
    }

    /// Induced coordinates of an ambient vector, if it lies in the span.
    pub fn from_ambient(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver().coords(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.solver().contains(v)
    }

    /// Greedy generators of the subalgebra, in ambient coordinates.
    pub fn generators(&self) -> Vec<Vec<Scalar>> {
        generating_subset(&self.ambient, &self.basis)
    }

    /// The whole ambient algebra as a subalgebra of itself.
    pub fn full(ambient: Arc<Algebra>) -> SubalgebraEmbedding {
        let basis = basis_vectors(&ambient);
        SubalgebraEmbedding::new(ambient, basis).expect("ambient is a subalgebra of itself")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn ground_field_is_valid() {
        let a = Algebra::ground(f2());
        assert_eq!(a.dim(), 1);
        assert!(a.is_commutative());
    }

    #[test]
    fn matrix_algebra_satisfies_matrix_unit_relations() {
        // E_ij E_kl = delta_jk E_il, checked through the validated table.
        let a = Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap();
        assert_eq!(a.dim(), 4);
        let e = |s: usize, t: usize| a.basis_vec(s * 2 + t);
        assert_eq!(a.mul_vec(&e(0, 0), &e(0, 1)), e(0, 1)); // E11 * E12 = E12
        assert_eq!(a.mul_vec(&e(0, 1), &e(0, 0)), a.zero_vec());
        assert_eq!(a.mul_vec(&e(0, 1), &e(1, 0)), e(0, 0));
    }

    #[test]
    fn bad_unit_is_rejected() {
        // e1*e1 = e2, everything else zero, claimed unit e1.
        let field = f2();
        let mut mul = vec![field.zero(); 8];
        mul[1] = field.one(); // e1*e1 = e2 at index (0*2+0)*2+1
        let unit = vec![field.one(), field.zero()];
        match Algebra::new(field, 2, unit, mul) {
            Err(AlgebraError::UnitViolation(_)) => {}
            other => panic!("expected unit violation, got {other:?}"),
        }
    }

    #[test]
    fn truncated_poly_products() {
        let a = Algebra::truncated_poly(f2(), 4).unwrap();
        // t^2 * t^3 = 0
        assert_eq!(a.mul_vec(&a.basis_vec(2), &a.basis_vec(3)), a.zero_vec());
        // (1 + t)^2 = 1 + t^2 in characteristic 2
        let mut x = a.basis_vec(0);
        x[1] = f2().one();
        let sq = a.pow_vec(&x, 2);
        let mut expect = a.basis_vec(0);
        expect[2] = f2().one();
        assert_eq!(sq, expect);
    }

    #[test]
    fn truncated_poly_over_q() {
        let q = FieldSpec::rational();
        let a = Algebra::truncated_poly(q, 4).unwrap();
        let mut one_plus_t = a.basis_vec(0);
        one_plus_t[1] = q.one();
        let mut one_minus_t = a.basis_vec(0);
        one_minus_t[1] = q.from_i64(-1);
        let mut expect = a.basis_vec(0);
        expect[2] = q.from_i64(-1);
        assert_eq!(a.mul_vec(&one_plus_t, &one_minus_t), expect);
    }

    #[test]
    fn group_algebra_c2() {
        let table = vec![vec![0, 1], vec![1, 0]];
        let a = Algebra::group_algebra(&table, f2()).unwrap();
        // (1 + g)^2 = 1 + 2g + g^2 = 2 + 2g = 0 over F_2
        let mut x = a.basis_vec(0);
        x[1] = f2().one();
        assert_eq!(a.pow_vec(&x, 2), a.zero_vec());

        // over Q, e = (1+g)/2 is idempotent
        let q = FieldSpec::rational();
        let aq = Algebra::group_algebra(&table, q).unwrap();
        let half = q.from_i64(2).inv();
        let e = vec![half.clone(), half];
        assert_eq!(aq.mul_vec(&e, &e), e);
    }

    #[test]
    fn group_algebra_rejects_non_groups() {
        // left zero semigroup: xy = x has no identity
        let table = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(Algebra::group_algebra(&table, f2()), Err(AlgebraError::NotAGroup(_))));
    }

    #[test]
    fn trivial_group_is_ground_field() {
        let a = Algebra::group_algebra(&[vec![0]], f2()).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn closure_of_nothing_is_the_unit_line() {
        let a = Algebra::truncated_poly(f2(), 4).unwrap();
        let b = a.subalgebra_closure(&[]).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn closure_of_t_squared() {
        let a = Algebra::truncated_poly(f2(), 4).unwrap();
        let b = a.subalgebra_closure(&[a.basis_vec(2)]).unwrap();
        assert_eq!(b.dim(), 2); // {1, t^2}, since t^2 * t^2 = 0
        assert!(b.contains(&a.basis_vec(2)));
        assert!(!b.contains(&a.basis_vec(1)));
    }

    #[test]
    fn closure_of_t_is_everything() {
        let a = Algebra::truncated_poly(f2(), 4).unwrap();
        let b = a.subalgebra_closure(&[a.basis_vec(1)]).unwrap();
        assert_eq!(b.dim(), 4);
    }

    #[test]
    fn closure_is_idempotent() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let b = a.subalgebra_closure(&[a.basis_vec(1)]).unwrap(); // E_12
        let again = a.subalgebra_closure(b.basis()).unwrap();
        assert_eq!(b.basis(), again.basis());
    }

    #[test]
    fn centralizer_of_unit_span_is_everything() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let v = a.centralizer(&[a.unit().to_vec()]);
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn centralizer_of_diagonal_in_m2() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        // diagonal = span{E11, E22} = indices 0 and 3
        let v = a.centralizer(&[a.basis_vec(0), a.basis_vec(3)]);
        assert_eq!(v.len(), 2);
        let solver = SpanSolver::new(f2(), 4, &v);
        assert!(solver.contains(&a.basis_vec(0)));
        assert!(solver.contains(&a.basis_vec(3)));
        assert!(!solver.contains(&a.basis_vec(1)));
    }

    #[test]
    fn center_of_m2_f3_is_scalars() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap();
        let c = a.center();
        assert_eq!(c.len(), 1);
        let solver = SpanSolver::new(f3(), 4, &c);
        assert!(solver.contains(a.unit()));
    }

    #[test]
    fn centralizer_is_monotone() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let small = a.centralizer(&[a.basis_vec(0)]);
        let large = a.centralizer(&[a.basis_vec(0), a.basis_vec(1)]);
        assert!(large.len() <= small.len());
    }

    #[test]
    fn opposite_of_commutative_is_same() {
        let a = Algebra::truncated_poly(f3(), 3).unwrap();
        let op = a.opposite();
        assert_eq!(*a, *op);
    }

    #[test]
    fn opposite_reverses_products() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let op = a.opposite();
        let x = a.basis_vec(1); // E12
        let y = a.basis_vec(2); // E21
        assert_eq!(op.mul_vec(&x, &y), a.mul_vec(&y, &x));
    }

    #[test]
    fn tensor_dimension_count() {
        let m2 = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let t = Algebra::tensor_product(&m2, &m2.opposite()).unwrap();
        assert_eq!(t.dim(), 16);
    }

    #[test]
    fn tensor_with_ground_is_identity() {
        let a = Algebra::truncated_poly(f2(), 3).unwrap();
        let g = Algebra::ground(f2());
        let t = Algebra::tensor_product(&g, &a).unwrap();
        assert_eq!(t.dim(), a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(t.basis_mul(i, j), a.basis_mul(i, j));
            }
        }
    }

    #[test]
    fn matrix_algebra_of_rank_one_is_base() {
        let a = Algebra::truncated_poly(f3(), 3).unwrap();
        let m1 = Algebra::matrix_algebra(&a, 1).unwrap();
        assert_eq!(*a, *m1);
    }

    #[test]
    fn matrix_algebra_center_dim_matches_base() {
        let base = Algebra::truncated_poly(f2(), 3).unwrap();
        let m2 = Algebra::matrix_algebra(&base, 2).unwrap();
        assert_eq!(m2.center().len(), base.center().len());
        let g = Algebra::ground(f2());
        let m2g = Algebra::matrix_algebra(&g, 2).unwrap();
        assert_eq!(m2g.center().len(), 1);
    }

    #[test]
    fn element_parent_mismatch() {
        let a = Algebra::ground(f2());
        let b = Algebra::truncated_poly(f2(), 2).unwrap();
        let x = Element::new(a.clone(), vec![f2().one()]).unwrap();
        let y = Element::new(b.clone(), vec![f2().one(), f2().zero()]).unwrap();
        assert!(matches!(x.multiply(&y), Err(AlgebraError::ParentMismatch)));
        let one = Element::new(a.clone(), vec![f2().one()]).unwrap();
        assert_eq!(x.multiply(&one).unwrap(), x);
    }

    #[test]
    fn subalgebra_rejects_span_without_unit() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let r = SubalgebraEmbedding::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(1)]);
        assert!(matches!(r, Err(AlgebraError::NotASubalgebra(_))));
    }

    #[test]
    fn subalgebra_rejects_non_closed_span() {
        // span{1, E12, E21} is not closed: E12 * E21 = E11 leaves the span.
        // (Any span{1, v} in M_2 would be closed by Cayley-Hamilton.)
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let r = SubalgebraEmbedding::new(
            a.clone(),
            vec![a.unit().to_vec(), a.basis_vec(1), a.basis_vec(2)],
        );
        assert!(matches!(r, Err(AlgebraError::NotASubalgebra(_))));
    }

    #[test]
    fn subalgebra_induced_reproduces_ambient_products() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let diag = SubalgebraEmbedding::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(3)]).unwrap();
        let ind = diag.induced();
        for i in 0..diag.dim() {
            for j in 0..diag.dim() {
                let via_ambient =
                    a.mul_vec(&diag.to_ambient(&ind.basis_vec(i)), &diag.to_ambient(&ind.basis_vec(j)));
                let via_induced = diag.to_ambient(ind.basis_mul(i, j));
                assert_eq!(via_ambient, via_induced);
            }
        }
    }

    #[test]
    fn degenerate_constructor_arguments_error() {
        assert!(Algebra::matrix_algebra(&Algebra::ground(f2()), 0).is_err());
        assert!(Algebra::truncated_poly(f2(), 0).is_err());
        assert!(Algebra::tensor_product(
            &Algebra::ground(f2()),
            &Algebra::ground(f3()),
        )
        .is_err());
    }

    #[test]
    fn generating_subset_of_matrix_algebra_is_small() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap();
        let gens = generating_subset(&a, &basis_vectors(&a));
        assert!(gens.len() <= 3, "greedy generating set of M_2 stays small");
        let closure = a.subalgebra_closure(&gens).unwrap();
        assert_eq!(closure.dim(), 4);
    }
}
