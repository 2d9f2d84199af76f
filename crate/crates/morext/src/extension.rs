//! A ring extension `A/B` with its cached invariants.
//!
//! Construction validates the subalgebra embedding, then computes and caches
//! the centralizer `V = V_A(B)`, the center `C = V_A(A)` and the tensor
//! square `A ⊗_B A` once; the caches are plain values computed by the same
//! public operations a caller would use, so "caches agree with recomputation"
//! holds by construction.  Casimir, derivation and inner-derivation spaces
//! are computed lazily behind `OnceLock` (single writer, read-only after).

use std::sync::{Arc, OnceLock};

use crate::algebra::{
    basis_vectors, generating_subset, Algebra, AlgebraError, SubalgebraEmbedding,
};
use crate::bimodule::{
    derivation_basis, inner_derivations, Bimodule, DerivationSpace, TensorOverB,
};
use crate::linalg::{FieldSpec, Matrix, Scalar, SpanSolver};

pub struct Extension {
    a: Arc<Algebra>,
    b: SubalgebraEmbedding,
    a_gens: Vec<Vec<Scalar>>,
    b_gens: Vec<Vec<Scalar>>,
    v_basis: Vec<Vec<Scalar>>,
    c_basis: Vec<Vec<Scalar>>,
    tensor: TensorOverB,
    casimir_a: OnceLock<Vec<Vec<Scalar>>>,
    casimir_b: OnceLock<Vec<Vec<Scalar>>>,
    der_b: OnceLock<DerivationSpace>,
    inner: OnceLock<(Vec<Matrix>, Vec<Matrix>)>,
}

impl Extension {
    /// Builds `A/B` from a spanning family for `B`, checking the subalgebra
    /// axioms (unit inside, closed under multiplication).
    pub fn new(a: Arc<Algebra>, b_basis: Vec<Vec<Scalar>>) -> Result<Extension, AlgebraError> {
        let b = SubalgebraEmbedding::new(a.clone(), b_basis)?;
        Ok(Self::from_embedding(a, b))
    }

    pub fn from_embedding(a: Arc<Algebra>, b: SubalgebraEmbedding) -> Extension {
        let a_gens = generating_subset(&a, &basis_vectors(&a));
        let b_gens = b.generators();
        let v_basis = a.centralizer(&b_gens);
        let c_basis = a.centralizer(&a_gens);
        let tensor = TensorOverB::new(&a, &b_gens);
        Extension {
            a,
            b,
            a_gens,
            b_gens,
            v_basis,
            c_basis,
            tensor,
            casimir_a: OnceLock::new(),
            casimir_b: OnceLock::new(),
            der_b: OnceLock::new(),
            inner: OnceLock::new(),
        }
    }

    /// The identity extension `A/A`.
    pub fn full(a: Arc<Algebra>) -> Extension {
        let b = SubalgebraEmbedding::full(a.clone());
        Self::from_embedding(a, b)
    }

    /// The trivial extension `B ⋉ S` on `B ⊕ S` with the product
    /// `(b, s)(c, t) = (bc, bt + sc)`, returned over the embedded copy of
    /// `B`.  `S` must be a `B`-`B`-bimodule.
    pub fn trivial_extension(b: &Arc<Algebra>, s: &Bimodule) -> Result<Extension, AlgebraError> {
        if s.left_algebra() != b || s.right_algebra() != b {
            return Err(AlgebraError::BadBimodule(
                "complement must be a bimodule over the base".into(),
            ));
        }
        let field = b.field();
        let db = b.dim();
        let ds = s.dim();
        let dim = db + ds;
        let mut unit = vec![field.zero(); dim];
        unit[..db].clone_from_slice(b.unit());
        let mut mul = vec![field.zero(); dim * dim * dim];
        let mut set = |i: usize, j: usize, coords: Vec<Scalar>, offset: usize| {
            for (k, c) in coords.into_iter().enumerate() {
                mul[(i * dim + j) * dim + offset + k] = c;
            }
        };
        for i in 0..db {
            for j in 0..db {
                set(i, j, b.basis_mul(i, j).to_vec(), 0);
            }
            for j in 0..ds {
                // b_i * s_j = b_i · s_j in S
                set(i, db + j, s.left_basis_action(i).column(j), db);
            }
        }
        for i in 0..ds {
            for j in 0..db {
                // s_i * b_j = s_i · b_j in S
                set(db + i, j, s.right_basis_action(j).column(i), db);
            }
            // s_i * s_j = 0
        }
        let alg = Algebra::new(field, dim, unit, mul)?;
        let b_basis = (0..db).map(|i| alg.basis_vec(i)).collect();
        Extension::new(alg, b_basis)
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.a
    }

    pub fn subalgebra(&self) -> &SubalgebraEmbedding {
        &self.b
    }

    pub fn b_basis(&self) -> &[Vec<Scalar>] {
        self.b.basis()
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    /// Greedy generators of `A` as a unital algebra.
    pub fn a_generators(&self) -> &[Vec<Scalar>] {
        &self.a_gens
    }

    /// Greedy generators of `B`, in ambient coordinates.
    pub fn b_generators(&self) -> &[Vec<Scalar>] {
        &self.b_gens
    }

    /// Cached basis of `V_A(B)`.
    pub fn centralizer_basis(&self) -> &[Vec<Scalar>] {
        &self.v_basis
    }

    /// Cached basis of the center `V_A(A)`.
    pub fn center_basis(&self) -> &[Vec<Scalar>] {
        &self.c_basis
    }

    /// Cached tensor square `A ⊗_B A`.
    pub fn tensor(&self) -> &TensorOverB {
        &self.tensor
    }

    pub fn v_solver(&self) -> SpanSolver {
        SpanSolver::new(self.field(), self.dim_a(), &self.v_basis)
    }

    pub fn is_in_centralizer(&self, u: &[Scalar]) -> bool {
        self.v_solver().contains(u)
    }

    /// Basis of `(A ⊗_B A)^A`.
    pub fn casimir_a(&self) -> &[Vec<Scalar>] {
        self.casimir_a.get_or_init(|| self.tensor.casimir_basis(&self.a_gens))
    }

    /// Basis of `(A ⊗_B A)^B`.
    pub fn casimir_b(&self) -> &[Vec<Scalar>] {
        self.casimir_b.get_or_init(|| self.tensor.casimir_basis(&self.b_gens))
    }

    /// `mu_u` on the cached tensor square, checking `u ∈ V_A(B)` first.
    pub fn mu_u(&self, e: &[Scalar], u: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if !self.is_in_centralizer(u) {
            return Err(AlgebraError::Shape(
                "mu_u is only well defined for u in the centralizer of B".into(),
            ));
        }
        Ok(self.tensor.mu_u(&self.a, e, u))
    }

    /// Derivation space `Der(A, A)` with the requested constraints; matrices
    /// act on `A`-coordinates.
    pub fn derivation_space(&self, vanish_on_b: bool, central: bool) -> DerivationSpace {
        if vanish_on_b && !central {
            return self
                .der_b
                .get_or_init(|| DerivationSpace {
                    vanish_on_b: true,
                    central: false,
                    basis: self.derivation_matrices(true, false),
                })
                .clone();
        }
        DerivationSpace {
            vanish_on_b,
            central,
            basis: self.derivation_matrices(vanish_on_b, central),
        }
    }

    fn derivation_matrices(&self, vanish_on_b: bool, central: bool) -> Vec<Matrix> {
        let s = Bimodule::regular(&self.a);
        derivation_basis(
            &self.a,
            &s,
            &self.a_gens,
            if vanish_on_b { Some(&self.b_gens) } else { None },
            central,
        )
    }

    /// `(span of ad_v, raw ad images of the V-basis)`, cached.
    pub fn inner_derivation_space(&self) -> &(Vec<Matrix>, Vec<Matrix>) {
        self.inner.get_or_init(|| inner_derivations(&self.a, &self.v_basis))
    }

    /// `A` restricted to a `B`-`B`-bimodule.
    pub fn a_as_b_bimodule(&self) -> Bimodule {
        Bimodule::regular(&self.a).restrict(&self.b, &self.b)
    }

    /// `A` as a left `B`-module (right action by the ground field).
    pub fn a_as_left_b_module(&self) -> Bimodule {
        let b_ind = self.b.induced();
        let acts: Vec<Matrix> =
            self.b.basis().iter().map(|v| self.a.left_mult(v)).collect();
        Bimodule::from_left_module(b_ind, acts, self.a.dim()).expect("left action tables are valid")
    }

    /// `B` as a left module over itself.
    pub fn b_as_left_b_module(&self) -> Bimodule {
        let b_ind = self.b.induced();
        let acts: Vec<Matrix> =
            (0..b_ind.dim()).map(|i| b_ind.left_mult(&b_ind.basis_vec(i))).collect();
        Bimodule::from_left_module(b_ind, acts, b_ind.dim()).expect("regular left module")
    }
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Extension(dim A = {}, dim B = {})", self.dim_a(), self.dim_b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn caches_agree_with_recomputation() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let ext = Extension::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(3)]).unwrap();
        assert_eq!(ext.centralizer_basis(), a.centralizer(ext.b_generators()));
        assert_eq!(ext.center_basis(), a.center());
        assert_eq!(ext.centralizer_basis().len(), 2);
        assert_eq!(ext.center_basis().len(), 1);
        // 1 ∈ V and C ⊆ V
        assert!(ext.is_in_centralizer(a.unit()));
        for c in ext.center_basis() {
            assert!(ext.is_in_centralizer(c));
        }
    }

    #[test]
    fn extension_is_safely_shared_across_threads() {
        // checks are pure given an immutable extension; the lazy caches sit
        // behind OnceLock, so concurrent classification over one shared
        // instance must agree with the sequential result
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let ext =
            Arc::new(Extension::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(3)]).unwrap());
        let expected = ext.casimir_a().len();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let ext = ext.clone();
                std::thread::spawn(move || {
                    (ext.casimir_a().len(), ext.derivation_space(true, false).dim())
                })
            })
            .collect();
        for h in handles {
            let (cas, der) = h.join().unwrap();
            assert_eq!(cas, expected);
            assert_eq!(der, 1);
        }
    }

    #[test]
    fn mu_u_rejects_elements_outside_the_centralizer() {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let ext = Extension::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(3)]).unwrap();
        let e = ext.tensor().class_of(a.unit(), a.unit());
        // E12 does not centralize the diagonal
        assert!(ext.mu_u(&e, &a.basis_vec(1)).is_err());
        assert!(ext.mu_u(&e, &a.basis_vec(0)).is_ok());
    }

    #[test]
    fn trivial_extension_of_ground_field() {
        // B = F_2, S = F_2: the result is the 2-dimensional algebra with
        // s^2 = 0, and its own complement verifies by construction.
        let b = Algebra::ground(f2());
        let s = Bimodule::regular(&b);
        let ext = Extension::trivial_extension(&b, &s).unwrap();
        assert_eq!(ext.dim_a(), 2);
        assert_eq!(ext.dim_b(), 1);
        let a = ext.algebra();
        let s_vec = a.basis_vec(1);
        assert_eq!(a.mul_vec(&s_vec, &s_vec), a.zero_vec());
    }

    #[test]
    fn trivial_extension_with_zero_complement_is_b() {
        let b = Algebra::truncated_poly(f2(), 2).unwrap();
        let zero = Bimodule::new(
            b.clone(),
            b.clone(),
            vec![Matrix::zeros(f2(), 0, 0); 2],
            vec![Matrix::zeros(f2(), 0, 0); 2],
            0,
        )
        .unwrap();
        let ext = Extension::trivial_extension(&b, &zero).unwrap();
        assert_eq!(ext.dim_a(), 2);
        assert_eq!(ext.dim_b(), 2);
    }
}
