//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime.
//!
//! 1. golden classification tables for the two reference extensions;
//! 2. the transport-isomorphism suite on every catalog entry, for the free
//!    rank-two progenerator and an idempotent progenerator;
//! 3. certificate transport for every class that holds on a catalog entry;
//! 4. the power-property counterexample at p = 2 and p = 3, bit-exactly;
//! 5. oracle equivalences (quasibases vs. summand depth two, exact power
//!    check vs. exhaustive enumeration, rank-one transport as the identity);
//! 6. consistency guards (implication chain on the catalog and on 50 seeded
//!    random extensions; alpha consistency on every transport).

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use morext::algebra::Algebra;
use morext::bimodule::{summand_witness, Bimodule};
use morext::catalog::{catalog, corner_idempotent, free_rank_two, truncation_extension};
use morext::classes::{
    check_depth_two, check_power_property, classify, Certificate, ClassKind, ClassifyOptions,
    Outcome, PowerStatus, Side, DEFAULT_SEED,
};
use morext::extension::Extension;
use morext::linalg::{FieldSpec, Scalar};
use morext::morita::{
    aligned_basis_image, alpha_consistency_check, matrix_alignment_iso, run_lemma_suite,
    transport_certificate, transport_extension, verify_transported, Progenerator,
    TransportedExtension,
};

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

#[test]
fn criterion_1_golden_classification_tables() {
    let started = Instant::now();

    let m2 = morext::catalog::catalog_entry("m2f2-diagonal").unwrap();
    let report = classify(&m2, &opts());
    for kind in [
        ClassKind::Hirata,
        ClassKind::StronglySeparable,
        ClassKind::Separable,
        ClassKind::DepthTwoLeft,
        ClassKind::DepthTwoRight,
        ClassKind::WeaklySeparable,
        ClassKind::WeaklyQuasiSeparable,
    ] {
        assert_eq!(report.outcome(kind), Some(Outcome::Holds), "m2f2-diagonal {kind:?}");
    }
    assert_eq!(report.outcome(ClassKind::Liberal), Some(Outcome::Fails));
    assert_eq!(report.outcome(ClassKind::Trivial), Some(Outcome::Fails));
    for n in 1..=8 {
        assert_eq!(report.power_outcome(n), Some(Outcome::Fails), "power({n})");
    }
    assert!(report.all_certificates_verified(), "every positive answer ships a certificate");

    let trunc = morext::catalog::catalog_entry("trunc-p2").unwrap();
    let report = classify(&trunc, &opts());
    assert_eq!(report.outcome(ClassKind::Liberal), Some(Outcome::Holds));
    assert_eq!(report.power_outcome(2), Some(Outcome::Holds));
    for kind in [
        ClassKind::Hirata,
        ClassKind::StronglySeparable,
        ClassKind::Separable,
        ClassKind::WeaklySeparable,
        ClassKind::WeaklyQuasiSeparable,
    ] {
        assert_eq!(report.outcome(kind), Some(Outcome::Fails), "trunc-p2 {kind:?}");
    }
    assert!(report.all_certificates_verified());

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "criterion 1 must finish in 5 s, took {elapsed:?}");
    println!("ACCEPTANCE criterion 1 (golden classification tables): PASS in {elapsed:?}");
}

fn all_transports() -> Vec<(String, TransportedExtension)> {
    let mut out = Vec::new();
    for (name, ext) in catalog() {
        let ext = Arc::new(ext);
        let free = free_rank_two(&ext);
        out.push((
            format!("{name} / free B^2"),
            transport_extension(ext.clone(), free).expect("free transport builds"),
        ));
        let idem = corner_idempotent(&ext);
        out.push((
            format!("{name} / idempotent diag(1,0)"),
            transport_extension(ext.clone(), idem).expect("idempotent transport builds"),
        ));
    }
    out
}

#[test]
fn criterion_2_lemma_suite_on_every_entry() {
    let started = Instant::now();
    for (label, te) in all_transports() {
        let suite = run_lemma_suite(&te);
        assert!(suite.all_hold(), "lemma suite fails for {label}: {suite:?}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "criterion 2 must finish in 60 s, took {elapsed:?}");
    println!("ACCEPTANCE criterion 2 (transport isomorphism suite): PASS in {elapsed:?}");
}

/// The classes with an explicit certificate-transport formula.
const TRANSPORTABLE: [ClassKind; 7] = [
    ClassKind::Trivial,
    ClassKind::Liberal,
    ClassKind::DepthTwoLeft,
    ClassKind::DepthTwoRight,
    ClassKind::StronglySeparable,
    ClassKind::WeaklySeparable,
    ClassKind::Separable,
];

#[test]
fn criterion_3_certificate_transport() {
    let started = Instant::now();
    let mut transported = 0usize;
    for (label, te) in all_transports() {
        let report = classify(te.source(), &opts());
        for kind in TRANSPORTABLE {
            let entry = report.entry(kind).expect("every class is reported");
            if entry.outcome != Outcome::Holds {
                continue;
            }
            let cert = entry.certificate.as_ref().expect("holding class carries a certificate");
            let moved = transport_certificate(&te, cert)
                .unwrap_or_else(|e| panic!("transport of {kind:?} fails for {label}: {e}"));
            assert!(
                verify_transported(&te, &moved),
                "transported {kind:?} certificate fails verification for {label}"
            );
            transported += 1;
        }
    }
    assert!(transported > 0);
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE criterion 3 (certificate transport, {transported} certificates): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_4_counterexample_regression() {
    let started = Instant::now();
    for p in [2u64, 3] {
        let field = FieldSpec::prime(p).unwrap();
        let ext = Arc::new(truncation_extension(field, p as usize));
        // the base power property holds exactly
        let cert = check_power_property(&ext, p, 0, DEFAULT_SEED);
        assert!(
            matches!(cert, Certificate::PowerProperty { status: PowerStatus::Holds, .. }),
            "P_{p} must hold on the truncation"
        );
        // transported side: the witness [[1, t], [0, 0]] is idempotent and
        // stays outside B' for every exponent
        let te = transport_extension(
            ext.clone(),
            Progenerator::free(ext.subalgebra().induced().clone(), 2),
        )
        .unwrap();
        let a = ext.algebra();
        let ap = te.transported().algebra();
        let mut w = aligned_basis_image(&te, 0, 0, a.unit());
        let wt = aligned_basis_image(&te, 0, 1, &a.basis_vec(1));
        for (x, y) in w.iter_mut().zip(&wt) {
            *x = x.add(y);
        }
        for n in 1..=8u64 {
            let wn = ap.pow_vec(&w, n);
            assert_eq!(wn, w, "w^{n} = w at p = {p}");
            assert!(
                !te.transported().subalgebra().contains(&wn),
                "w^{n} must lie outside B' at p = {p}"
            );
        }
    }
    let elapsed = started.elapsed();
    println!("ACCEPTANCE criterion 4 (power-property counterexample): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_oracle_equivalences() {
    let started = Instant::now();

    // depth-two quasibases agree with the trace-ideal summand formulation
    for (name, ext) in catalog() {
        let a = ext.algebra();
        let full = morext::algebra::SubalgebraEmbedding::full(a.clone());
        for side in [Side::Left, Side::Right] {
            let quasibases = check_depth_two(&ext, side).is_some();
            let (x, y) = match side {
                // left: _B(A ⊗_B A)_A | _B A_A
                Side::Left => (
                    ext.tensor().as_bimodule(a).restrict(ext.subalgebra(), &full),
                    Bimodule::regular(a).restrict(ext.subalgebra(), &full),
                ),
                // right: _A(A ⊗_B A)_B | _A A_B
                Side::Right => (
                    ext.tensor().as_bimodule(a).restrict(&full, ext.subalgebra()),
                    Bimodule::regular(a).restrict(&full, ext.subalgebra()),
                ),
            };
            let summand = summand_witness(&x, &y).unwrap().is_some();
            assert_eq!(quasibases, summand, "{name} {side:?} depth two: oracle disagreement");
        }
    }

    // exact power branch agrees with exhaustive enumeration when |A| <= 2^16
    for (name, ext) in catalog() {
        let FieldSpec::Prime { p } = ext.field() else { continue };
        let d = ext.dim_a();
        let order = (p as u64).checked_pow(d as u32);
        let Some(order) = order.filter(|&o| o <= 1 << 16) else { continue };
        let a = ext.algebra();
        for n in 1..=8u64 {
            let cert = check_power_property(&ext, n, 0, DEFAULT_SEED);
            let Certificate::PowerProperty { status, .. } = &cert else { unreachable!() };
            if *status == PowerStatus::Inconclusive {
                continue; // the falsification search claims nothing
            }
            let mut holds = true;
            for code in 0..order {
                let mut rest = code;
                let x: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let digit = rest % p as u64;
                        rest /= p as u64;
                        ext.field().from_i64(digit as i64)
                    })
                    .collect();
                if !ext.subalgebra().contains(&a.pow_vec(&x, n)) {
                    holds = false;
                    break;
                }
            }
            let expected = if holds { PowerStatus::Holds } else { PowerStatus::Fails };
            assert_eq!(*status, expected, "{name} power({n}): enumeration oracle disagrees");
        }
    }

    // rank-one transport is the identity: on the canonical bases, phi is
    // the literal identity matrix, the structure constants repeat verbatim,
    // and psi fixes every tensor class
    for (name, ext) in catalog() {
        let ext = Arc::new(ext);
        let te = transport_extension(
            ext.clone(),
            Progenerator::free(ext.subalgebra().induced().clone(), 1),
        )
        .unwrap();
        let extp = te.transported();
        assert_eq!(extp.dim_a(), ext.dim_a(), "{name}");
        assert_eq!(extp.dim_b(), ext.dim_b(), "{name}");
        let a = ext.algebra();
        let identity = morext::linalg::Matrix::identity(ext.field(), ext.dim_a());
        assert_eq!(*te.phi_matrix(), identity, "{name}: rank-one phi is the identity");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(
                    a.basis_mul(i, j),
                    extp.algebra().basis_mul(i, j),
                    "{name}: structure constants at ({i}, {j})"
                );
            }
        }
        assert_eq!(ext.b_basis(), extp.b_basis(), "{name}: B carries over verbatim");
        assert!(matrix_alignment_iso(&te, 1), "{name}: rank-one alignment");
        // psi fixes every class
        let t = ext.tensor();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let w = t.class_of(&a.basis_vec(i), &a.basis_vec(j));
                assert_eq!(te.psi(&w), w, "{name}: psi([e{i} ⊗ e{j}])");
            }
        }
        // every holding transportable certificate transports and verifies
        let report = classify(&ext, &opts());
        for kind in TRANSPORTABLE {
            let entry = report.entry(kind).unwrap();
            if entry.outcome != Outcome::Holds {
                continue;
            }
            let moved = transport_certificate(&te, entry.certificate.as_ref().unwrap()).unwrap();
            assert!(verify_transported(&te, &moved), "{name}: rank-one transport of {kind:?}");
        }
    }

    let elapsed = started.elapsed();
    println!("ACCEPTANCE criterion 5 (oracle equivalences): PASS in {elapsed:?}");
}

/// Ambient algebras for the randomized consistency sweep.
fn ambient_pool() -> Vec<Arc<Algebra>> {
    let f2 = FieldSpec::prime(2).unwrap();
    vec![
        Algebra::matrix_algebra(&Algebra::ground(f2), 2).unwrap(),
        Algebra::truncated_poly(f2, 5).unwrap(),
        Algebra::truncated_poly(f2, 4).unwrap(),
        Algebra::group_algebra(&[vec![0, 1], vec![1, 0]], f2).unwrap(),
    ]
}

fn random_vector(rng: &mut ChaCha8Rng, field: FieldSpec, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| field.from_i64(rng.gen_range(0..2))).collect()
}

#[test]
fn criterion_6_consistency_guards() {
    let started = Instant::now();

    // implication chain across the catalog
    for (name, ext) in catalog() {
        let report = classify(&ext, &opts());
        assert!(report.implications_consistent(), "{name}: implication chain violated");
        assert!(report.all_certificates_verified(), "{name}: a certificate failed verification");
    }

    // ... and across 50 seeded random extensions of dimension <= 5 over F_2,
    // generated by random subalgebra closures
    let pool = ambient_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_7265);
    let f2 = FieldSpec::prime(2).unwrap();
    let mut produced = 0;
    let mut attempts = 0;
    while produced < 50 {
        attempts += 1;
        assert!(attempts < 2000, "random extension generation stalled");
        let ambient = &pool[rng.gen_range(0..pool.len())];
        let g1 = random_vector(&mut rng, f2, ambient.dim());
        let g2 = random_vector(&mut rng, f2, ambient.dim());
        let Ok(sub_a) = ambient.subalgebra_closure(&[g1, g2]) else { continue };
        let a = sub_a.induced().clone();
        if a.dim() > 5 {
            continue;
        }
        let h = random_vector(&mut rng, f2, a.dim());
        let Ok(sub_b) = a.subalgebra_closure(&[h]) else { continue };
        let Ok(ext) = Extension::new(a.clone(), sub_b.basis().to_vec()) else { continue };
        let local = ClassifyOptions { power_exponents: vec![1, 2, 3, 4], ..opts() };
        let report = classify(&ext, &local);
        assert!(
            report.implications_consistent(),
            "random extension #{produced} (dim A = {}, dim B = {}): chain violated",
            ext.dim_a(),
            ext.dim_b()
        );
        assert!(report.all_certificates_verified(), "random extension #{produced}");
        produced += 1;
    }

    // alpha consistency on every transport built for the suite
    for (label, te) in all_transports() {
        assert!(alpha_consistency_check(&te), "alpha fails for {label}");
    }

    let elapsed = started.elapsed();
    println!("ACCEPTANCE criterion 6 (consistency guards): PASS in {elapsed:?}");
}
