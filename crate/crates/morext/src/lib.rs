//! Exact-arithmetic workbench for finite-dimensional ring extensions.
//!
//! A ring extension `A/B` is a finite-dimensional unital associative algebra
//! `A` over an exact field (a prime field `F_p` or the rationals) together
//! with an embedded unital subalgebra `B`.  This crate decides membership of
//! `A/B` in a family of extension classes (trivial, liberal, separable,
//! Hirata separable, strongly separable, left/right depth two, weakly
//! separable, weakly quasi-separable) and returns a machine-checkable
//! certificate for every positive answer.
//!
//! Given a progenerator `N` over `B` it also builds the Morita-equivalent
//! extension `A'/B'` on the carrier `N* ⊗_B A ⊗_B N`, together with the
//! explicit maps relating the two sides (`phi` on centralizers, `phi_end` on
//! bimodule endomorphisms, `psi` on tensor squares, derivation transport),
//! and pushes certificates across the equivalence so that each invariance
//! statement can be re-verified on concrete instances.
//!
//! All scalars are exact: residues modulo a prime, or arbitrary-precision
//! rationals in lowest terms.  Every reported dimension and every verified
//! certificate is therefore a statement about the input, not a numerical
//! estimate.
//!
//! Layering, bottom up:
//!
//! * [`linalg`]: scalars, dense matrices, RREF, kernels, span arithmetic;
//! * [`algebra`]: algebras by structure constants, subalgebras, centralizers;
//! * [`bimodule`]: bimodules, the tensor square `A ⊗_B A`, Hom spaces,
//!   summand witnesses, derivation spaces;
//! * [`extension`]: an algebra/subalgebra pair with its cached invariants;
//! * [`classes`]: the per-class decision procedures and the certificate
//!   verifier;
//! * [`morita`]: progenerators, the transported extension, and certificate
//!   transport;
//! * [`catalog`], [`format`](mod@format), [`report`]: built-in instances, the document
//!   format, and report emission for the command-line front end.
//!
//! ```
//! use std::sync::Arc;
//! use morext::{catalog, classes, morita};
//!
//! let ext = Arc::new(catalog::catalog_entry("m2f2-diagonal").unwrap());
//! let report = classes::classify(&ext, &classes::ClassifyOptions::default());
//! assert_eq!(
//!     report.outcome(classes::ClassKind::Separable),
//!     Some(classes::Outcome::Holds),
//! );
//!
//! let prog = morita::Progenerator::free(ext.subalgebra().induced().clone(), 2);
//! let te = morita::transport_extension(ext, prog).unwrap();
//! assert!(morita::run_lemma_suite(&te).all_hold());
//! ```

pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod classes;
pub mod extension;
pub mod format;
pub mod linalg;
pub mod morita;
pub mod report;

pub use algebra::{Algebra, AlgebraError, Element, SubalgebraEmbedding};
pub use classes::{Certificate, ClassKind, Outcome};
pub use extension::Extension;
pub use format::{parse_extension, parse_idempotent, serialize_extension, FormatError};
pub use linalg::{FieldSpec, LinAlgError, Matrix, Scalar};
pub use morita::{Progenerator, TransportedExtension};
