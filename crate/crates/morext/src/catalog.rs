//! Built-in extensions chosen to exercise every class at least once in each
//! direction.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::extension::Extension;
use crate::linalg::FieldSpec;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}; run `catalog` for the list")]
    UnknownCatalogEntry(String),
}

/// Names of the built-in extensions, in listing order.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "identity-m2f3",
        "m2f2-diagonal",
        "trunc-p2",
        "trunc-p3",
        "trivial-f2",
        "group-c2-f2",
        "m2q-diagonal",
    ]
}

/// Builds one catalog entry.
pub fn catalog_entry(name: &str) -> Result<Extension, CatalogError> {
    let f2 = FieldSpec::prime(2).expect("2 is prime");
    let f3 = FieldSpec::prime(3).expect("3 is prime");
    match name {
        // the identity extension A/A on M_2(F_3)
        "identity-m2f3" => {
            let a = Algebra::matrix_algebra(&Algebra::ground(f3), 2).expect("matrix algebra");
            Ok(Extension::full(a))
        }
        // M_2(F_2) over its diagonal
        "m2f2-diagonal" => {
            let a = Algebra::matrix_algebra(&Algebra::ground(f2), 2).expect("matrix algebra");
            let basis = vec![a.basis_vec(0), a.basis_vec(3)];
            Ok(Extension::new(a, basis).expect("diagonal is a subalgebra"))
        }
        // F_p[t]/(t^{2p}) over span{1, t^p}, the finite stand-in for k[t]/k[t^p]
        "trunc-p2" => Ok(truncation_extension(f2, 2)),
        "trunc-p3" => Ok(truncation_extension(f3, 3)),
        // the trivial extension F_2 ⋉ F_2
        "trivial-f2" => {
            let b = Algebra::ground(f2);
            let s = Bimodule::regular(&b);
            Ok(Extension::trivial_extension(&b, &s).expect("trivial extension"))
        }
        // the group algebra F_2[C_2] over the ground field
        "group-c2-f2" => {
            let table = vec![vec![0, 1], vec![1, 0]];
            let a = Algebra::group_algebra(&table, f2).expect("C_2");
            let basis = vec![a.unit().to_vec()];
            Ok(Extension::new(a, basis).expect("ground field embeds"))
        }
        // M_2(Q) over its diagonal
        "m2q-diagonal" => {
            let a = Algebra::matrix_algebra(&Algebra::ground(FieldSpec::rational()), 2)
                .expect("matrix algebra");
            let basis = vec![a.basis_vec(0), a.basis_vec(3)];
            Ok(Extension::new(a, basis).expect("diagonal is a subalgebra"))
        }
        other => Err(CatalogError::UnknownCatalogEntry(other.to_string())),
    }
}

/// `F_p[t]/(t^{2p})` over `span{1, t^p}`.
pub fn truncation_extension(field: FieldSpec, p: usize) -> Extension {
    let a = Algebra::truncated_poly(field, 2 * p).expect("truncated polynomial algebra");
    let basis = vec![a.basis_vec(0), a.basis_vec(p)];
    Extension::new(a, basis).expect("span{1, t^p} is closed since t^{2p} = 0")
}

/// All catalog entries with their names.
pub fn catalog() -> Vec<(&'static str, Extension)> {
    catalog_names()
        .into_iter()
        .map(|n| (n, catalog_entry(n).expect("built-in entries always build")))
        .collect()
}

/// The free-rank-two progenerator over an entry's base.
pub fn free_rank_two(ext: &Extension) -> crate::morita::Progenerator {
    crate::morita::Progenerator::free(ext.subalgebra().induced().clone(), 2)
}

/// The projection idempotent `diag(1, 0)` in `M_2(B)`, as a progenerator.
pub fn corner_idempotent(ext: &Extension) -> crate::morita::Progenerator {
    let b: &Arc<Algebra> = ext.subalgebra().induced();
    let field = b.field();
    let mut entries = vec![vec![vec![field.zero(); b.dim()]; 2]; 2];
    entries[0][0] = b.unit().to_vec();
    crate::morita::Progenerator::from_idempotent(b.clone(), 2, &entries)
        .expect("diag(1, 0) is idempotent")
        .expect("diag(1, 0) is full")
}
