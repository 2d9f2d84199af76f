//! Property tests for the exact linear algebra invariants.

use morext::linalg::{add_scaled, FieldSpec, Matrix, Scalar, SpanSolver};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
enum WhichField {
    F2,
    F5,
    Q,
}

fn spec(w: WhichField) -> FieldSpec {
    match w {
        WhichField::F2 => FieldSpec::prime(2).unwrap(),
        WhichField::F5 => FieldSpec::prime(5).unwrap(),
        WhichField::Q => FieldSpec::rational(),
    }
}

fn field_strategy() -> impl Strategy<Value = WhichField> {
    prop_oneof![Just(WhichField::F2), Just(WhichField::F5), Just(WhichField::Q)]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..5, 1usize..6).prop_flat_map(|(w, rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |entries| {
            let f = spec(w);
            let data: Vec<Scalar> = entries.into_iter().map(|x| f.from_i64(x)).collect();
            Matrix::from_vec(f, rows, cols, data)
        })
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_plus_nullity_is_cols(m in matrix_strategy()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.ncols());
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix_strategy()) {
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_is_exact_when_it_succeeds(
        m in matrix_strategy(),
        rhs in proptest::collection::vec(-4i64..=4, 0..5),
    ) {
        let b: Vec<Scalar> = rhs
            .into_iter()
            .chain(std::iter::repeat(0))
            .take(m.nrows())
            .map(|x| m.field().from_i64(x))
            .collect();
        if let Some(x) = m.solve(&b) {
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }

    #[test]
    fn solve_finds_planted_solutions(
        m in matrix_strategy(),
        xs in proptest::collection::vec(-4i64..=4, 1..6),
    ) {
        // a system with a planted solution is never reported inconsistent
        let x: Vec<Scalar> = xs
            .into_iter()
            .chain(std::iter::repeat(0))
            .take(m.ncols())
            .map(|v| m.field().from_i64(v))
            .collect();
        let b = m.mul_vec(&x);
        let solved = m.solve(&b);
        prop_assert!(solved.is_some());
        prop_assert_eq!(m.mul_vec(&solved.unwrap()), b);
    }

    #[test]
    fn span_coords_reconstruct_their_target(m in matrix_strategy()) {
        let vectors: Vec<Vec<Scalar>> = m.rows_iter().map(|r| r.to_vec()).collect();
        let solver = SpanSolver::new(m.field(), m.ncols(), &vectors);
        for v in &vectors {
            let coords = solver.coords(v);
            prop_assert!(coords.is_some());
            let mut rebuilt = vec![m.field().zero(); m.ncols()];
            for (c, w) in coords.unwrap().iter().zip(&vectors) {
                add_scaled(&mut rebuilt, &c.neg(), w);
            }
            prop_assert_eq!(&rebuilt, v);
        }
    }

    #[test]
    fn rational_inverse_is_exact(n in -50i64..=50, d in 1i64..=50) {
        prop_assume!(n != 0);
        let q = FieldSpec::rational();
        let x = q.from_i64(n).mul(&q.from_i64(d).inv());
        prop_assert!(x.mul(&x.inv()).is_one());
    }

    #[test]
    fn prime_field_arithmetic_matches_integers(a in 0i64..5, b in 0i64..5) {
        let f = FieldSpec::prime(5).unwrap();
        prop_assert_eq!(f.from_i64(a).add(&f.from_i64(b)), f.from_i64((a + b) % 5));
        prop_assert_eq!(f.from_i64(a).mul(&f.from_i64(b)), f.from_i64((a * b) % 5));
        prop_assert_eq!(f.from_i64(a).sub(&f.from_i64(b)), f.from_i64((a - b).rem_euclid(5)));
    }
}
