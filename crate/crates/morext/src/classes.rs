//! Decision procedures for the extension classes, each returning a
//! certificate that [`verify_certificate`] re-checks from scratch.
//!
//! Every check is a finite linear problem on the data cached in an
//! [`Extension`]:
//!
//! * separable: an affine system on the `A`-commutant of the tensor square
//!   (`mu(e) = 1`);
//! * Hirata separable: the trace-ideal summand test for `A ⊗_B A | A`;
//! * strongly separable: span membership of `id_V` among the maps
//!   `u -> v · mu_u(e)`;
//! * left/right depth two: span membership of `x -> x ⊗ 1` (resp.
//!   `y -> 1 ⊗ y`) among `x -> t · β(x)` (resp. `y -> β(y) · t`), the `y = 1`
//!   reduction of the quasibase identity;
//! * liberal: does `V · B` span `A`;
//! * weakly (quasi-) separable: comparison of derivation spaces;
//! * trivial: verification of a supplied complement, plus a bounded
//!   enumeration over all `B`-`B`-projections when none is supplied;
//! * power property: exact Frobenius reasoning when it applies, otherwise a
//!   seeded falsification search that honestly reports `Unknown`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodule::{hom_space, is_derivation, summand_witness, Bimodule};
use crate::extension::Extension;
use crate::linalg::{add_scaled, FieldSpec, Matrix, RrefBuilder, Scalar, SpanSolver};

/// Default seed for the power-property falsification sampler.
pub const DEFAULT_SEED: u64 = 0x4d4f_5245;

/// Default number of pseudorandom samples in falsification searches.
pub const DEFAULT_SAMPLES: u32 = 64;

/// Default point budget for the trivial-extension enumeration.
pub const DEFAULT_TRIVIAL_BUDGET: u64 = 1 << 16;

/// The extension classes this workbench decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    Hirata,
    StronglySeparable,
    Separable,
    DepthTwoLeft,
    DepthTwoRight,
    WeaklySeparable,
    WeaklyQuasiSeparable,
    Liberal,
    Trivial,
    Power,
}

impl ClassKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::Hirata => "hirata",
            ClassKind::StronglySeparable => "strongly-separable",
            ClassKind::Separable => "separable",
            ClassKind::DepthTwoLeft => "depth-two-left",
            ClassKind::DepthTwoRight => "depth-two-right",
            ClassKind::WeaklySeparable => "weakly-separable",
            ClassKind::WeaklyQuasiSeparable => "weakly-quasi-separable",
            ClassKind::Liberal => "liberal",
            ClassKind::Trivial => "trivial",
            ClassKind::Power => "power",
        }
    }

    pub fn from_name(s: &str) -> Option<ClassKind> {
        Some(match s {
            "hirata" => ClassKind::Hirata,
            "strongly-separable" => ClassKind::StronglySeparable,
            "separable" => ClassKind::Separable,
            "depth-two-left" => ClassKind::DepthTwoLeft,
            "depth-two-right" => ClassKind::DepthTwoRight,
            "weakly-separable" => ClassKind::WeaklySeparable,
            "weakly-quasi-separable" => ClassKind::WeaklyQuasiSeparable,
            "liberal" => ClassKind::Liberal,
            "trivial" => ClassKind::Trivial,
            "power" => ClassKind::Power,
            _ => return None,
        })
    }

    /// All kinds in report order.
    pub fn all() -> [ClassKind; 10] {
        [
            ClassKind::Hirata,
            ClassKind::StronglySeparable,
            ClassKind::Separable,
            ClassKind::DepthTwoLeft,
            ClassKind::DepthTwoRight,
            ClassKind::WeaklySeparable,
            ClassKind::WeaklyQuasiSeparable,
            ClassKind::Liberal,
            ClassKind::Trivial,
            ClassKind::Power,
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerStatus {
    Holds,
    Fails,
    Inconclusive,
}

/// A tagged witness for membership in one extension class.
///
/// Tensor-square elements are quotient coordinate vectors, algebra elements
/// are `A`-coordinate vectors, and maps are matrices against the canonical
/// bases, so each variant can be re-verified without trusting the producer.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// A separability idempotent: `e` in `(A ⊗_B A)^A` with `mu(e) = 1`.
    Separable { e: Vec<Scalar> },
    /// Summand witness for `A ⊗_B A | A` as `A`-`A`-bimodules.
    Hirata { maps_out: Vec<Matrix>, maps_in: Vec<Matrix> },
    /// Pairs `(v_i, e_i)` with `u = sum v_i mu_u(e_i)` for all `u` in `V`.
    StronglySeparable { pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> },
    /// Quasibases `(t_i, β_i)` for the stated side.
    DepthTwo { side: Side, pairs: Vec<(Vec<Scalar>, Matrix)> },
    /// Elements of `V` with `A = sum v_i B`.
    Liberal { elements: Vec<Vec<Scalar>> },
    /// A basis `D_k` of `Der_B(A, A)` with `D_k = ad_{v_k}`.
    WeaklySeparable { table: Vec<(Matrix, Vec<Scalar>)> },
    /// Recorded dimensions; the central derivation space is zero.
    WeaklyQuasiSeparable { der_dim: usize, central_dim: usize },
    /// A square-zero `B`-`B`-complement of `B` in `A`.
    Trivial { complement: Vec<Vec<Scalar>> },
    /// Outcome of the power-property check `{x^n} ⊆ B`.
    PowerProperty { n: u64, status: PowerStatus, counterexample: Option<Vec<Scalar>> },
}

impl Certificate {
    pub fn kind(&self) -> ClassKind {
        match self {
            Certificate::Separable { .. } => ClassKind::Separable,
            Certificate::Hirata { .. } => ClassKind::Hirata,
            Certificate::StronglySeparable { .. } => ClassKind::StronglySeparable,
            Certificate::DepthTwo { side: Side::Left, .. } => ClassKind::DepthTwoLeft,
            Certificate::DepthTwo { side: Side::Right, .. } => ClassKind::DepthTwoRight,
            Certificate::Liberal { .. } => ClassKind::Liberal,
            Certificate::WeaklySeparable { .. } => ClassKind::WeaklySeparable,
            Certificate::WeaklyQuasiSeparable { .. } => ClassKind::WeaklyQuasiSeparable,
            Certificate::Trivial { .. } => ClassKind::Trivial,
            Certificate::PowerProperty { .. } => ClassKind::Power,
        }
    }
}

/// Separability: solve `e ∈ (A ⊗_B A)^A`, `mu(e) = 1` as an affine system
/// over the Casimir basis.
pub fn check_separable(ext: &Extension) -> Option<Certificate> {
    let a = ext.algebra();
    let t = ext.tensor();
    let cas = ext.casimir_a();
    let cols: Vec<Vec<Scalar>> = cas.iter().map(|e| t.mu(e)).collect();
    let m = Matrix::from_columns(ext.field(), a.dim(), &cols);
    let lambda = m.solve(a.unit())?;
    let mut e = t.zero();
    for (c, basis_e) in lambda.iter().zip(cas) {
        add_scaled(&mut e, &c.neg(), basis_e);
    }
    Some(Certificate::Separable { e })
}

/// Hirata separability: `A ⊗_B A | A` as `A`-`A`-bimodules, by the
/// trace-ideal summand test.
pub fn check_hirata(ext: &Extension) -> Option<Certificate> {
    let a = ext.algebra();
    let x = ext.tensor().as_bimodule(a);
    let y = Bimodule::regular(a);
    let w = summand_witness(&x, &y).expect("same acting algebras")?;
    Some(Certificate::Hirata { maps_out: w.maps_out, maps_in: w.maps_in })
}

/// Strong separability: `id_V` must lie in the span of the maps
/// `Φ_{v,e} : u -> v · mu_u(e)`; scalars are folded into the `v_i`.
pub fn check_strongly_separable(ext: &Extension) -> Option<Certificate> {
    let a = ext.algebra();
    let t = ext.tensor();
    let v_basis = ext.centralizer_basis();
    let cas = ext.casimir_a();
    let nv = v_basis.len();
    let v_solver = ext.v_solver();

    let mut candidates = Vec::with_capacity(nv * cas.len());
    let mut index = Vec::with_capacity(nv * cas.len());
    for (ei, e) in cas.iter().enumerate() {
        // mu_u(e) for u over the V-basis, shared across all v
        let mu_cols: Vec<Vec<Scalar>> = v_basis.iter().map(|u| t.mu_u(a, e, u)).collect();
        for (vi, v) in v_basis.iter().enumerate() {
            let mut phi = Vec::with_capacity(nv * nv);
            for mu in &mu_cols {
                let w = a.mul_vec(v, mu);
                let coords = v_solver
                    .coords(&w)
                    .expect("v · mu_u(e) stays inside the centralizer");
                phi.push(coords);
            }
            // phi is column-major (one column per u); flatten row-major
            let mut flat = Vec::with_capacity(nv * nv);
            for row in 0..nv {
                for col in phi.iter() {
                    flat.push(col[row].clone());
                }
            }
            candidates.push(flat);
            index.push((vi, ei));
        }
    }
    let solver = SpanSolver::new(ext.field(), nv * nv, &candidates);
    let id = Matrix::identity(ext.field(), nv).vec();
    let coeffs = solver.coords(&id)?;
    let mut pairs = Vec::new();
    for (c, &(vi, ei)) in coeffs.iter().zip(&index) {
        if !c.is_zero() {
            let mut v = vec![ext.field().zero(); a.dim()];
            add_scaled(&mut v, &c.neg(), &v_basis[vi]);
            pairs.push((v, cas[ei].clone()));
        }
    }
    Some(Certificate::StronglySeparable { pairs })
}

/// Depth two via the `y = 1` reduction: left depth two holds iff the map
/// `x -> x ⊗ 1` lies in the span of `x -> t · β(x)` with `t` in
/// `(A ⊗_B A)^B` and `β` in `End(_B A_B)` (multiply the reduced identity
/// back by `y` to recover the two-variable form).
pub fn check_depth_two(ext: &Extension, side: Side) -> Option<Certificate> {
    let a = ext.algebra();
    let t = ext.tensor();
    let d = a.dim();
    let q = t.dim();
    let cas_b = ext.casimir_b();
    let ab = ext.a_as_b_bimodule();
    let endos = hom_space(&ab, &ab).expect("same acting algebras");

    let target: Vec<Vec<Scalar>> = (0..d)
        .map(|j| match side {
            Side::Left => t.class_of(&a.basis_vec(j), a.unit()),
            Side::Right => t.class_of(a.unit(), &a.basis_vec(j)),
        })
        .collect();
    let target_flat = flatten_columns(&target, q);

    let mut candidates = Vec::with_capacity(cas_b.len() * endos.len());
    let mut index = Vec::with_capacity(cas_b.len() * endos.len());
    for (ti, tv) in cas_b.iter().enumerate() {
        for (bi, beta) in endos.iter().enumerate() {
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|j| {
                    let bx = beta.column(j);
                    match side {
                        Side::Left => t.act_right(tv, &bx),
                        Side::Right => t.act_left(&bx, tv),
                    }
                })
                .collect();
            candidates.push(flatten_columns(&cols, q));
            index.push((ti, bi));
        }
    }
    let solver = SpanSolver::new(ext.field(), q * d, &candidates);
    let coeffs = solver.coords(&target_flat)?;
    let mut pairs = Vec::new();
    for (c, &(ti, bi)) in coeffs.iter().zip(&index) {
        if !c.is_zero() {
            let mut tvec = t.zero();
            add_scaled(&mut tvec, &c.neg(), &cas_b[ti]);
            pairs.push((tvec, endos[bi].clone()));
        }
    }
    Some(Certificate::DepthTwo { side, pairs })
}

fn flatten_columns(cols: &[Vec<Scalar>], len: usize) -> Vec<Scalar> {
    let mut flat = Vec::with_capacity(len * cols.len());
    for row in 0..len {
        for col in cols {
            flat.push(col[row].clone());
        }
    }
    flat
}

/// Liberal: does `V · B` span `A`?  On success returns a greedy minimal
/// spanning subfamily of the `V`-basis (RREF order, deterministic).
pub fn check_liberal(ext: &Extension) -> Option<Certificate> {
    let a = ext.algebra();
    let d = a.dim();
    let mut span = RrefBuilder::new(ext.field(), d);
    let mut chosen = Vec::new();
    for v in ext.centralizer_basis() {
        if span.rank() == d {
            break;
        }
        let mut grew = false;
        for b in ext.b_basis() {
            if span.add_row(a.mul_vec(v, b)) {
                grew = true;
            }
        }
        if grew {
            chosen.push(v.clone());
        }
    }
    if span.rank() == d {
        Some(Certificate::Liberal { elements: chosen })
    } else {
        None
    }
}

/// Weak separability: `Der_B(A, A)` equals the inner derivations; the
/// certificate tabulates `D_k = ad_{v_k}` over the derivation basis.
pub fn check_weakly_separable(ext: &Extension) -> Option<Certificate> {
    let der = ext.derivation_space(true, false);
    let (inner_span, ad_images) = ext.inner_derivation_space();
    // inner ⊆ Der always, so equality is a dimension count
    if der.dim() != inner_span.len() {
        return None;
    }
    let v_basis = ext.centralizer_basis();
    let ad_vecs: Vec<Vec<Scalar>> = ad_images.iter().map(|m| m.vec()).collect();
    let solver = SpanSolver::new(ext.field(), ext.dim_a() * ext.dim_a(), &ad_vecs);
    let mut table = Vec::new();
    for d_matrix in &der.basis {
        let coeffs = solver
            .coords(&d_matrix.vec())
            .expect("derivation space equals inner span, so ad_v = D is solvable");
        let mut v = vec![ext.field().zero(); ext.dim_a()];
        for (c, vb) in coeffs.iter().zip(v_basis) {
            add_scaled(&mut v, &c.neg(), vb);
        }
        table.push((d_matrix.clone(), v));
    }
    Some(Certificate::WeaklySeparable { table })
}

/// Weak quasi-separability: the central `B`-derivation space is zero.
pub fn check_weakly_quasi_separable(ext: &Extension) -> Option<Certificate> {
    let central = ext.derivation_space(true, true);
    if central.dim() != 0 {
        return None;
    }
    let der_dim = ext.derivation_space(true, false).dim();
    Some(Certificate::WeaklyQuasiSeparable { der_dim, central_dim: 0 })
}

/// Verifies a supplied complement: `A = B ⊕ S`, `S` a `B`-`B`-submodule,
/// `S · S = 0`.
pub fn check_trivial_with(ext: &Extension, s_basis: &[Vec<Scalar>]) -> Option<Certificate> {
    let a = ext.algebra();
    let d = a.dim();
    let mut s_span = RrefBuilder::new(ext.field(), d);
    for s in s_basis {
        if s.len() != d {
            return None;
        }
        s_span.add_row(s.clone());
    }
    let s_canonical = s_span.rows().to_vec();
    if s_canonical.len() + ext.dim_b() != d {
        return None;
    }
    let mut direct = RrefBuilder::new(ext.field(), d);
    for b in ext.b_basis() {
        direct.add_row(b.clone());
    }
    for s in &s_canonical {
        if !direct.add_row(s.clone()) {
            return None; // B ∩ S ≠ 0
        }
    }
    let s_solver = SpanSolver::new(ext.field(), d, &s_canonical);
    for s in &s_canonical {
        for b in ext.b_basis() {
            if !s_solver.contains(&a.mul_vec(b, s)) || !s_solver.contains(&a.mul_vec(s, b)) {
                return None;
            }
        }
        for s2 in &s_canonical {
            if !a.mul_vec(s, s2).iter().all(Scalar::is_zero) {
                return None;
            }
        }
    }
    Some(Certificate::Trivial { complement: s_canonical })
}

/// Outcome of the bounded trivial-extension search.
pub enum TrivialSearch {
    Found(Certificate),
    Absent,
    /// The affine space of candidate projections exceeded the budget.
    Unknown { points: Option<u64> },
}

/// Searches for a square-zero complement by enumerating the affine space of
/// `B`-`B`-linear projections `A -> B` fixing `B`, when that space has at
/// most `budget` points.
///
/// Every such projection `p` yields `A = B ⊕ ker p` with `ker p` a
/// `B`-`B`-submodule, and `A/B` is trivial exactly when some `p` has
/// `(ker p)^2 = 0`; an empty affine space or an exhausted enumeration is a
/// definite "no".
pub fn search_trivial(ext: &Extension, budget: u64) -> TrivialSearch {
    let a = ext.algebra();
    let d = a.dim();
    let field = ext.field();
    let unknowns = d * d; // p[i][j] at i*d + j

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();

    // image inside span(B): kill the canonical complement coordinates
    let mut b_rref = RrefBuilder::new(field, d);
    for b in ext.b_basis() {
        b_rref.add_row(b.clone());
    }
    let pivots: Vec<usize> = b_rref.pivots().to_vec();
    let b_rows = b_rref.rows().to_vec();
    for f in (0..d).filter(|c| !pivots.contains(c)) {
        for j in 0..d {
            // (p e_j)_f - sum_r (p e_j)_{pivot_r} row_r[f] = 0
            let mut row = vec![field.zero(); unknowns];
            row[f * d + j] = field.one();
            for (r, &pc) in b_rows.iter().zip(&pivots) {
                if !r[f].is_zero() {
                    row[pc * d + j] = r[f].neg();
                }
            }
            rows.push(row);
            rhs.push(field.zero());
        }
    }
    // p(b) = b for the B-basis
    for b in ext.b_basis() {
        for i in 0..d {
            let mut row = vec![field.zero(); unknowns];
            for (j, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    row[i * d + j] = c.clone();
                }
            }
            rows.push(row);
            rhs.push(b[i].clone());
        }
    }
    // B-B-linearity on generators: p L_b = L_b p and p R_b = R_b p
    for b in ext.b_generators() {
        for m in [a.left_mult(b), a.right_mult(b)] {
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![field.zero(); unknowns];
                    for c in 0..d {
                        let x = m.at(c, j);
                        if !x.is_zero() {
                            row[i * d + c] = row[i * d + c].add(x);
                        }
                        let x = m.at(i, c);
                        if !x.is_zero() {
                            row[c * d + j] = row[c * d + j].sub(x);
                        }
                    }
                    rows.push(row);
                    rhs.push(field.zero());
                }
            }
        }
    }

    let system = Matrix::from_rows(field, unknowns, rows).expect("homogeneous shapes");
    let Some(particular) = system.solve(&rhs) else {
        return TrivialSearch::Absent; // no B-B-projection at all
    };
    let kernel = system.kernel_basis();
    let s = kernel.len();

    let points: Option<u64> = match field.order() {
        Some(p) => p.checked_pow(s.min(u32::MAX as usize) as u32),
        None => {
            if s == 0 {
                Some(1)
            } else {
                None
            }
        }
    };
    match points {
        Some(n) if n <= budget => {}
        _ => return TrivialSearch::Unknown { points },
    }

    // enumerate lexicographically over the kernel coefficients
    let p_order = field.order().unwrap_or(1);
    let mut counters = vec![0u64; s];
    loop {
        let mut pvec = particular.clone();
        for (c, k) in counters.iter().zip(&kernel) {
            if *c != 0 {
                add_scaled(&mut pvec, &field.from_i64(-(*c as i64)), k);
            }
        }
        let pm = Matrix::from_vec(field, d, d, pvec);
        let ker = pm.kernel_basis();
        if ker.len() + ext.dim_b() == d {
            let square_zero = ker
                .iter()
                .all(|s1| ker.iter().all(|s2| a.mul_vec(s1, s2).iter().all(Scalar::is_zero)));
            if square_zero {
                if let Some(cert) = check_trivial_with(ext, &ker) {
                    return TrivialSearch::Found(cert);
                }
            }
        }
        // next counter vector
        let mut idx = 0;
        loop {
            if idx == s {
                return TrivialSearch::Absent;
            }
            counters[idx] += 1;
            if counters[idx] < p_order {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
    }
}

/// Decides or falsifies `{x^n : x in A} ⊆ B`.
///
/// Exact when `B = A`, when `n = 1`, or when `A` is commutative over a prime
/// field and `n` is a power of the characteristic (then `x -> x^n` is
/// additive and `F_p`-linear, so the basis decides).  Otherwise a
/// deterministic falsification search over basis elements, pairwise sums and
/// `samples` seeded pseudorandom elements; exhaustion reports
/// `Inconclusive`, never a claim.
pub fn check_power_property(ext: &Extension, n: u64, samples: u32, seed: u64) -> Certificate {
    assert!(n >= 1, "power property needs n >= 1");
    let a = ext.algebra();
    let d = a.dim();
    let in_b = |x: &[Scalar]| ext.subalgebra().contains(x);

    if ext.dim_b() == d {
        return Certificate::PowerProperty { n, status: PowerStatus::Holds, counterexample: None };
    }
    if n == 1 {
        // {x} ⊆ B fails on any basis vector outside B
        let witness = (0..d).map(|i| a.basis_vec(i)).find(|v| !in_b(v));
        return match witness {
            Some(w) => Certificate::PowerProperty {
                n,
                status: PowerStatus::Fails,
                counterexample: Some(w),
            },
            None => unreachable!("dim B < dim A but every basis vector lies in B"),
        };
    }

    let exact = match ext.field() {
        FieldSpec::Prime { p } => a.is_commutative() && is_power_of(n, p as u64),
        FieldSpec::Rational => false,
    };
    if exact {
        for i in 0..d {
            let pow = a.pow_vec(&a.basis_vec(i), n);
            if !in_b(&pow) {
                return Certificate::PowerProperty {
                    n,
                    status: PowerStatus::Fails,
                    counterexample: Some(a.basis_vec(i)),
                };
            }
        }
        return Certificate::PowerProperty { n, status: PowerStatus::Holds, counterexample: None };
    }

    // falsification only
    for i in 0..d {
        let x = a.basis_vec(i);
        if !in_b(&a.pow_vec(&x, n)) {
            return Certificate::PowerProperty {
                n,
                status: PowerStatus::Fails,
                counterexample: Some(x),
            };
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut x = a.basis_vec(i);
            x[j] = ext.field().one();
            if !in_b(&a.pow_vec(&x, n)) {
                return Certificate::PowerProperty {
                    n,
                    status: PowerStatus::Fails,
                    counterexample: Some(x),
                };
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<Scalar> = (0..d)
            .map(|_| match ext.field() {
                FieldSpec::Prime { p } => ext.field().from_i64(rng.gen_range(0..p as i64)),
                FieldSpec::Rational => ext.field().from_i64(rng.gen_range(-2..=2)),
            })
            .collect();
        if !in_b(&a.pow_vec(&x, n)) {
            return Certificate::PowerProperty {
                n,
                status: PowerStatus::Fails,
                counterexample: Some(x),
            };
        }
    }
    Certificate::PowerProperty { n, status: PowerStatus::Inconclusive, counterexample: None }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Re-checks the defining identity of a certificate from scratch, quantifying
/// over full bases rather than the generator subsets the producers use.
pub fn verify_certificate(ext: &Extension, cert: &Certificate) -> bool {
    let a = ext.algebra();
    let t = ext.tensor();
    let d = a.dim();
    match cert {
        Certificate::Separable { e } => {
            if e.len() != t.dim() {
                return false;
            }
            for i in 0..d {
                let g = a.basis_vec(i);
                if t.act_left(&g, e) != t.act_right(e, &g) {
                    return false;
                }
            }
            t.mu(e) == a.unit()
        }
        Certificate::Hirata { maps_out, maps_in } => {
            let q = t.dim();
            if maps_out.len() != maps_in.len() {
                return false;
            }
            for f in maps_out {
                if f.nrows() != d || f.ncols() != q || !intertwines_tensor_to_a(ext, f) {
                    return false;
                }
            }
            for g in maps_in {
                if g.nrows() != q || g.ncols() != d || !intertwines_a_to_tensor(ext, g) {
                    return false;
                }
            }
            let mut acc = Matrix::zeros(ext.field(), q, q);
            for (f, g) in maps_out.iter().zip(maps_in) {
                acc = acc.add(&g.mul_mat(f));
            }
            acc == Matrix::identity(ext.field(), q)
        }
        Certificate::StronglySeparable { pairs } => {
            for (v, e) in pairs {
                if !ext.is_in_centralizer(v) || !is_casimir_a(ext, e) {
                    return false;
                }
            }
            for u in ext.centralizer_basis() {
                let mut acc = a.zero_vec();
                for (v, e) in pairs {
                    let mu = t.mu_u(a, e, u);
                    let term = a.mul_vec(v, &mu);
                    add_scaled(&mut acc, &ext.field().one().neg(), &term);
                }
                if &acc != u {
                    return false;
                }
            }
            true
        }
        Certificate::DepthTwo { side, pairs } => {
            for (tv, beta) in pairs {
                if tv.len() != t.dim() || !is_casimir_b(ext, tv) || !is_b_b_linear(ext, beta) {
                    return false;
                }
            }
            // full two-variable identity on all basis pairs
            for x in 0..d {
                for y in 0..d {
                    let expect = t.class_of(&a.basis_vec(x), &a.basis_vec(y));
                    let mut acc = t.zero();
                    for (tv, beta) in pairs {
                        let bx = beta.column(match side {
                            Side::Left => x,
                            Side::Right => y,
                        });
                        let term = match side {
                            Side::Left => {
                                t.act_right(&t.act_right(tv, &bx), &a.basis_vec(y))
                            }
                            Side::Right => {
                                t.act_left(&a.basis_vec(x), &t.act_left(&bx, tv))
                            }
                        };
                        add_scaled(&mut acc, &ext.field().one().neg(), &term);
                    }
                    if acc != expect {
                        return false;
                    }
                }
            }
            true
        }
        Certificate::Liberal { elements } => {
            let mut span = RrefBuilder::new(ext.field(), d);
            for v in elements {
                if !ext.is_in_centralizer(v) {
                    return false;
                }
                for b in ext.b_basis() {
                    span.add_row(a.mul_vec(v, b));
                }
            }
            span.rank() == d
        }
        Certificate::WeaklySeparable { table } => {
            let reg = Bimodule::regular(a);
            let mut span = RrefBuilder::new(ext.field(), d * d);
            for (dm, v) in table {
                if !ext.is_in_centralizer(v) {
                    return false;
                }
                if !is_derivation(a, &reg, dm, Some(ext.b_basis()), false) {
                    return false;
                }
                let ad = a.left_mult(v).sub(&a.right_mult(v));
                if &ad != dm {
                    return false;
                }
                if !span.add_row(dm.vec()) {
                    return false; // table entries must be independent
                }
            }
            // completeness: the table spans the whole derivation space
            ext.derivation_space(true, false).dim() == table.len()
        }
        Certificate::WeaklyQuasiSeparable { central_dim, .. } => {
            *central_dim == 0 && ext.derivation_space(true, true).dim() == 0
        }
        Certificate::Trivial { complement } => check_trivial_with(ext, complement).is_some(),
        Certificate::PowerProperty { n, status, counterexample } => match status {
            PowerStatus::Fails => match counterexample {
                Some(x) => {
                    x.len() == d && !ext.subalgebra().contains(&a.pow_vec(x, *n))
                }
                None => false,
            },
            PowerStatus::Holds => {
                if ext.dim_b() == d {
                    return true;
                }
                if *n == 1 {
                    return false; // n = 1 with B ≠ A cannot hold
                }
                let exact = match ext.field() {
                    FieldSpec::Prime { p } => a.is_commutative() && is_power_of(*n, p as u64),
                    FieldSpec::Rational => false,
                };
                exact
                    && (0..d).all(|i| ext.subalgebra().contains(&a.pow_vec(&a.basis_vec(i), *n)))
            }
            PowerStatus::Inconclusive => true, // claims nothing
        },
    }
}

fn is_casimir_a(ext: &Extension, e: &[Scalar]) -> bool {
    let t = ext.tensor();
    if e.len() != t.dim() {
        return false;
    }
    (0..ext.dim_a()).all(|i| {
        let g = ext.algebra().basis_vec(i);
        t.act_left(&g, e) == t.act_right(e, &g)
    })
}

fn is_casimir_b(ext: &Extension, e: &[Scalar]) -> bool {
    let t = ext.tensor();
    ext.b_basis().iter().all(|b| t.act_left(b, e) == t.act_right(e, b))
}

fn is_b_b_linear(ext: &Extension, beta: &Matrix) -> bool {
    let a = ext.algebra();
    if beta.nrows() != a.dim() || beta.ncols() != a.dim() {
        return false;
    }
    ext.b_basis().iter().all(|b| {
        let l = a.left_mult(b);
        let r = a.right_mult(b);
        beta.mul_mat(&l) == l.mul_mat(beta) && beta.mul_mat(&r) == r.mul_mat(beta)
    })
}

fn intertwines_tensor_to_a(ext: &Extension, f: &Matrix) -> bool {
    let a = ext.algebra();
    let t = ext.tensor();
    (0..a.dim()).all(|i| {
        let g = a.basis_vec(i);
        let la = a.left_mult(&g);
        let ra = a.right_mult(&g);
        let lt = t.left_action_of(&g);
        let rt = t.right_action_of(&g);
        f.mul_mat(&lt) == la.mul_mat(f) && f.mul_mat(&rt) == ra.mul_mat(f)
    })
}

fn intertwines_a_to_tensor(ext: &Extension, g_map: &Matrix) -> bool {
    let a = ext.algebra();
    let t = ext.tensor();
    (0..a.dim()).all(|i| {
        let g = a.basis_vec(i);
        let la = a.left_mult(&g);
        let ra = a.right_mult(&g);
        let lt = t.left_action_of(&g);
        let rt = t.right_action_of(&g);
        g_map.mul_mat(&la) == lt.mul_mat(g_map) && g_map.mul_mat(&ra) == rt.mul_mat(g_map)
    })
}

/// One row of a classification report.
#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub kind: ClassKind,
    /// Exponent, for the power-property rows.
    pub power_n: Option<u64>,
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
    /// `verify_certificate` result for a produced certificate.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Dimensions {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_v: usize,
    pub dim_center: usize,
    pub dim_der_b: usize,
    pub dim_casimir_a: usize,
    pub dim_casimir_b: usize,
    pub tensor_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ImplicationFlag {
    pub from: ClassKind,
    pub to: ClassKind,
    pub ok: bool,
}

/// Full classification: every check, certificate verification, dimensions
/// and the implication-consistency flags.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub dims: Dimensions,
    pub entries: Vec<ClassEntry>,
    pub implications: Vec<ImplicationFlag>,
}

impl ClassReport {
    pub fn outcome(&self, kind: ClassKind) -> Option<Outcome> {
        self.entries.iter().find(|e| e.kind == kind).map(|e| e.outcome)
    }

    pub fn power_outcome(&self, n: u64) -> Option<Outcome> {
        self.entries
            .iter()
            .find(|e| e.kind == ClassKind::Power && e.power_n == Some(n))
            .map(|e| e.outcome)
    }

    pub fn entry(&self, kind: ClassKind) -> Option<&ClassEntry> {
        self.entries.iter().find(|e| e.kind == kind)
    }

    pub fn all_certificates_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verified != Some(false))
    }

    pub fn implications_consistent(&self) -> bool {
        self.implications.iter().all(|f| f.ok)
    }
}

/// Options for [`classify`].
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Exponents for the power-property rows.
    pub power_exponents: Vec<u64>,
    /// Restrict to these kinds (all when empty).
    pub kinds: Vec<ClassKind>,
    pub samples: u32,
    pub seed: u64,
    pub trivial_budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            power_exponents: (1..=8).collect(),
            kinds: Vec::new(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            trivial_budget: DEFAULT_TRIVIAL_BUDGET,
        }
    }
}

/// Runs every requested check on the extension and assembles the report.
pub fn classify(ext: &Extension, opts: &ClassifyOptions) -> ClassReport {
    let wanted =
        |k: ClassKind| opts.kinds.is_empty() || opts.kinds.contains(&k);
    let mut entries = Vec::new();
    let push_opt = |kind: ClassKind, cert: Option<Certificate>, entries: &mut Vec<ClassEntry>| {
        let outcome = if cert.is_some() { Outcome::Holds } else { Outcome::Fails };
        let verified = cert.as_ref().map(|c| verify_certificate(ext, c));
        entries.push(ClassEntry { kind, power_n: None, outcome, certificate: cert, verified });
    };

    if wanted(ClassKind::Hirata) {
        push_opt(ClassKind::Hirata, check_hirata(ext), &mut entries);
    }
    if wanted(ClassKind::StronglySeparable) {
        push_opt(ClassKind::StronglySeparable, check_strongly_separable(ext), &mut entries);
    }
    if wanted(ClassKind::Separable) {
        push_opt(ClassKind::Separable, check_separable(ext), &mut entries);
    }
    if wanted(ClassKind::DepthTwoLeft) {
        push_opt(ClassKind::DepthTwoLeft, check_depth_two(ext, Side::Left), &mut entries);
    }
    if wanted(ClassKind::DepthTwoRight) {
        push_opt(ClassKind::DepthTwoRight, check_depth_two(ext, Side::Right), &mut entries);
    }
    if wanted(ClassKind::WeaklySeparable) {
        push_opt(ClassKind::WeaklySeparable, check_weakly_separable(ext), &mut entries);
    }
    if wanted(ClassKind::WeaklyQuasiSeparable) {
        push_opt(ClassKind::WeaklyQuasiSeparable, check_weakly_quasi_separable(ext), &mut entries);
    }
    if wanted(ClassKind::Liberal) {
        push_opt(ClassKind::Liberal, check_liberal(ext), &mut entries);
    }
    if wanted(ClassKind::Trivial) {
        let (outcome, certificate) = match search_trivial(ext, opts.trivial_budget) {
            TrivialSearch::Found(c) => (Outcome::Holds, Some(c)),
            TrivialSearch::Absent => (Outcome::Fails, None),
            TrivialSearch::Unknown { .. } => (Outcome::Unknown, None),
        };
        let verified = certificate.as_ref().map(|c| verify_certificate(ext, c));
        entries.push(ClassEntry {
            kind: ClassKind::Trivial,
            power_n: None,
            outcome,
            certificate,
            verified,
        });
    }
    if wanted(ClassKind::Power) {
        for &n in &opts.power_exponents {
            let cert = check_power_property(ext, n, opts.samples, opts.seed);
            let (status, outcome) = match &cert {
                Certificate::PowerProperty { status, .. } => (
                    *status,
                    match status {
                        PowerStatus::Holds => Outcome::Holds,
                        PowerStatus::Fails => Outcome::Fails,
                        PowerStatus::Inconclusive => Outcome::Unknown,
                    },
                ),
                _ => unreachable!(),
            };
            let _ = status;
            let verified = Some(verify_certificate(ext, &cert));
            entries.push(ClassEntry {
                kind: ClassKind::Power,
                power_n: Some(n),
                outcome,
                certificate: Some(cert),
                verified,
            });
        }
    }

    let dims = Dimensions {
        dim_a: ext.dim_a(),
        dim_b: ext.dim_b(),
        dim_v: ext.centralizer_basis().len(),
        dim_center: ext.center_basis().len(),
        dim_der_b: ext.derivation_space(true, false).dim(),
        dim_casimir_a: ext.casimir_a().len(),
        dim_casimir_b: ext.casimir_b().len(),
        tensor_dim: ext.tensor().dim(),
    };

    let chain = [
        (ClassKind::Hirata, ClassKind::StronglySeparable),
        (ClassKind::StronglySeparable, ClassKind::Separable),
        (ClassKind::Separable, ClassKind::WeaklySeparable),
        (ClassKind::Separable, ClassKind::WeaklyQuasiSeparable),
    ];
    let report = ClassReport { dims, entries, implications: Vec::new() };
    let mut implications = Vec::new();
    for (from, to) in chain {
        if let (Some(of), Some(ot)) = (report.outcome(from), report.outcome(to)) {
            let ok = !(of == Outcome::Holds && ot == Outcome::Fails);
            implications.push(ImplicationFlag { from, to, ok });
        }
    }
    ClassReport { implications, ..report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn m2_diag() -> Extension {
        let a = Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap();
        let basis = vec![a.basis_vec(0), a.basis_vec(3)];
        Extension::new(a, basis).unwrap()
    }

    fn trunc_p2() -> Extension {
        let a = Algebra::truncated_poly(f2(), 4).unwrap();
        Extension::new(a.clone(), vec![a.basis_vec(0), a.basis_vec(2)]).unwrap()
    }

    #[test]
    fn separable_full_extension() {
        let ext = Extension::full(Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap());
        let cert = check_separable(&ext).expect("B = A is separable via 1 ⊗ 1");
        assert!(verify_certificate(&ext, &cert));
        if let Certificate::Separable { e } = &cert {
            assert_eq!(e, &ext.tensor().class_of(ext.algebra().unit(), ext.algebra().unit()));
        }
    }

    #[test]
    fn separable_m2_over_diagonal() {
        let ext = m2_diag();
        let cert = check_separable(&ext).expect("matrix units give the idempotent");
        assert!(verify_certificate(&ext, &cert));
        // the canonical idempotent E11 ⊗ E11 + E21 ⊗ E12 also verifies
        let a = ext.algebra();
        let t = ext.tensor();
        let mut e = t.class_of(&a.basis_vec(0), &a.basis_vec(0));
        let other = t.class_of(&a.basis_vec(2), &a.basis_vec(1));
        for (x, y) in e.iter_mut().zip(&other) {
            *x = x.add(y);
        }
        assert!(verify_certificate(&ext, &Certificate::Separable { e }));
    }

    #[test]
    fn separable_absent_for_trunc_matches_exhaustion() {
        // Oracle: (A ⊗_B A)^A is an F_2-space; enumerate all of it and check
        // that no element has mu = 1.
        let ext = trunc_p2();
        assert!(check_separable(&ext).is_none());
        let cas = ext.casimir_a();
        let t = ext.tensor();
        let a = ext.algebra();
        let n = cas.len();
        assert!(n <= 16, "enumeration stays small");
        let mut found = false;
        for mask in 0u32..(1 << n) {
            let mut e = t.zero();
            for (i, c) in cas.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    add_scaled(&mut e, &f2().one().neg(), c);
                }
            }
            if t.mu(&e) == a.unit() {
                found = true;
            }
        }
        assert!(!found, "exhaustive oracle agrees: no separability idempotent");
    }

    #[test]
    fn perturbed_separability_idempotent_fails_verification() {
        let ext = m2_diag();
        let cert = check_separable(&ext).unwrap();
        let Certificate::Separable { mut e } = cert else { unreachable!() };
        // add a non-Casimir vector: the class of E12 ⊗ 1
        let bump = ext.tensor().class_of(&ext.algebra().basis_vec(1), ext.algebra().unit());
        for (x, y) in e.iter_mut().zip(&bump) {
            *x = x.add(y);
        }
        assert!(!verify_certificate(&ext, &Certificate::Separable { e }));
    }

    #[test]
    fn hirata_m2_over_diagonal_and_trunc() {
        let ext = m2_diag();
        let cert = check_hirata(&ext).expect("semisimple envelope: tensor square ≅ A^2");
        assert!(verify_certificate(&ext, &cert));
        // contrapositive oracle: trunc is not separable, hence not Hirata
        assert!(check_hirata(&trunc_p2()).is_none());
    }

    #[test]
    fn strongly_separable_cases() {
        let full = Extension::full(Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap());
        let cert = check_strongly_separable(&full).expect("B = A: u = 1 · mu_u(1⊗1)");
        assert!(verify_certificate(&full, &cert));

        let ext = m2_diag();
        let cert = check_strongly_separable(&ext).expect("Hirata implies strongly separable");
        assert!(verify_certificate(&ext, &cert));

        assert!(check_strongly_separable(&trunc_p2()).is_none());
    }

    #[test]
    fn depth_two_both_sides_m2() {
        let ext = m2_diag();
        for side in [Side::Left, Side::Right] {
            let cert = check_depth_two(&ext, side).expect("M_2 over diagonal is depth two");
            assert!(verify_certificate(&ext, &cert));
        }
    }

    #[test]
    fn depth_two_full_extension() {
        let ext = Extension::full(Algebra::truncated_poly(f2(), 3).unwrap());
        let cert = check_depth_two(&ext, Side::Left).expect("B = A is depth two");
        assert!(verify_certificate(&ext, &cert));
    }

    #[test]
    fn liberal_cases() {
        // B = A: the single element 1 works.
        let full = Extension::full(Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap());
        let cert = check_liberal(&full).unwrap();
        assert!(verify_certificate(&full, &cert));

        // trunc: V = A, and {1, t} spans A over B
        let ext = trunc_p2();
        let cert = check_liberal(&ext).expect("A = 1·B + t·B");
        if let Certificate::Liberal { elements } = &cert {
            assert_eq!(elements.len(), 2);
        }
        assert!(verify_certificate(&ext, &cert));

        // M_2 over diagonal: V·B = diagonal ≠ A
        assert!(check_liberal(&m2_diag()).is_none());
    }

    #[test]
    fn weakly_separable_cases() {
        let full = Extension::full(Algebra::truncated_poly(f2(), 3).unwrap());
        let cert = check_weakly_separable(&full).expect("Der = 0 = inner when B = A");
        assert!(verify_certificate(&full, &cert));

        let ext = m2_diag();
        let cert = check_weakly_separable(&ext).expect("separable implies weakly separable");
        assert!(verify_certificate(&ext, &cert));

        // trunc: Der has dim 4, inner is 0
        assert!(check_weakly_separable(&trunc_p2()).is_none());
    }

    #[test]
    fn weakly_quasi_separable_cases() {
        let full = Extension::full(Algebra::truncated_poly(f2(), 3).unwrap());
        assert!(check_weakly_quasi_separable(&full).is_some());

        let ext = m2_diag();
        let cert = check_weakly_quasi_separable(&ext).expect("separable implies wqs");
        assert!(verify_certificate(&ext, &cert));

        // trunc: every derivation is central since C = A
        assert!(check_weakly_quasi_separable(&trunc_p2()).is_none());
    }

    #[test]
    fn trivial_extension_verifies_its_own_complement() {
        let b = Algebra::ground(f2());
        let s = crate::bimodule::Bimodule::regular(&b);
        let ext = Extension::trivial_extension(&b, &s).unwrap();
        let s_basis = vec![ext.algebra().basis_vec(1)];
        let cert = check_trivial_with(&ext, &s_basis).expect("own complement verifies");
        assert!(verify_certificate(&ext, &cert));
        // and the search finds it too
        assert!(matches!(search_trivial(&ext, 1 << 16), TrivialSearch::Found(_)));
    }

    #[test]
    fn trivial_rejects_bad_complements() {
        let ext = trunc_p2();
        // span{t} is not a complement (wrong dimension)
        assert!(check_trivial_with(&ext, &[ext.algebra().basis_vec(1)]).is_none());
        // span{t, t^3} is B-stable but (t)^2 = t^2 ≠ 0
        let s = vec![ext.algebra().basis_vec(1), ext.algebra().basis_vec(3)];
        assert!(check_trivial_with(&ext, &s).is_none());
    }

    #[test]
    fn trivial_rejects_non_stable_complement() {
        // span{t, 1 + t^3} is complementary to B but not B-stable:
        // t^2 · t = t^3 leaves the span.
        let ext = trunc_p2();
        let a = ext.algebra();
        let mut v = a.basis_vec(0);
        v[3] = f2().one();
        assert!(check_trivial_with(&ext, &[a.basis_vec(1), v]).is_none());
    }

    #[test]
    fn trivial_search_over_q_reports_unknown_but_witness_verifies() {
        // Q[t]/(t^2) over Q: the affine space of projections is a line, so
        // the bounded search honestly reports Unknown; the complement
        // span{t} still verifies directly.
        let q = FieldSpec::rational();
        let a = Algebra::truncated_poly(q, 2).unwrap();
        let ext = Extension::new(a.clone(), vec![a.basis_vec(0)]).unwrap();
        assert!(matches!(
            search_trivial(&ext, 1 << 16),
            TrivialSearch::Unknown { points: None }
        ));
        let cert = check_trivial_with(&ext, &[a.basis_vec(1)]).expect("span{t} squares to zero");
        assert!(verify_certificate(&ext, &cert));
    }

    #[test]
    fn trivial_search_exhausts_m2_and_trunc() {
        assert!(matches!(search_trivial(&m2_diag(), 1 << 16), TrivialSearch::Absent));
        assert!(matches!(search_trivial(&trunc_p2(), 1 << 16), TrivialSearch::Absent));
    }

    #[test]
    fn power_property_trunc_exact() {
        let ext = trunc_p2();
        // n = 2 = p: (a + bt + ct^2 + dt^3)^2 = a^2 + b^2 t^2 ∈ B
        let cert = check_power_property(&ext, 2, 8, DEFAULT_SEED);
        assert!(matches!(
            cert,
            Certificate::PowerProperty { status: PowerStatus::Holds, .. }
        ));
        assert!(verify_certificate(&ext, &cert));
        // cross-check by full enumeration (|A| = 16)
        let a = ext.algebra();
        for mask in 0u32..16 {
            let x: Vec<Scalar> =
                (0..4).map(|i| f2().from_i64(((mask >> i) & 1) as i64)).collect();
            assert!(ext.subalgebra().contains(&a.pow_vec(&x, 2)));
        }
        // n = 3 fails with the deterministic pair search: (1 + t)^3 has a t^3 term
        let cert = check_power_property(&ext, 3, 8, DEFAULT_SEED);
        assert!(matches!(
            cert,
            Certificate::PowerProperty { status: PowerStatus::Fails, .. }
        ));
        assert!(verify_certificate(&ext, &cert));
    }

    #[test]
    fn power_property_full_extension_all_n() {
        let ext = Extension::full(Algebra::matrix_algebra(&Algebra::ground(f2()), 2).unwrap());
        for n in 1..=8 {
            let cert = check_power_property(&ext, n, 4, DEFAULT_SEED);
            assert!(matches!(
                cert,
                Certificate::PowerProperty { status: PowerStatus::Holds, .. }
            ));
        }
    }

    #[test]
    fn power_property_m2_fails_every_n() {
        let ext = m2_diag();
        for n in 1..=8 {
            let cert = check_power_property(&ext, n, 8, DEFAULT_SEED);
            assert!(
                matches!(cert, Certificate::PowerProperty { status: PowerStatus::Fails, .. }),
                "expected failure at n = {n}"
            );
            assert!(verify_certificate(&ext, &cert));
        }
    }

    #[test]
    fn classify_m2_over_diagonal_golden_table() {
        let ext = m2_diag();
        let report = classify(&ext, &ClassifyOptions::default());
        assert_eq!(report.outcome(ClassKind::Hirata), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::StronglySeparable), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::Separable), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::DepthTwoLeft), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::DepthTwoRight), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::WeaklySeparable), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::WeaklyQuasiSeparable), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::Liberal), Some(Outcome::Fails));
        assert_eq!(report.outcome(ClassKind::Trivial), Some(Outcome::Fails));
        for n in 1..=8 {
            assert_eq!(report.power_outcome(n), Some(Outcome::Fails));
        }
        assert!(report.all_certificates_verified());
        assert!(report.implications_consistent());
        assert_eq!(report.dims.dim_v, 2);
        assert_eq!(report.dims.dim_center, 1);
    }

    #[test]
    fn classify_trunc_golden_table() {
        let ext = trunc_p2();
        let report = classify(&ext, &ClassifyOptions::default());
        assert_eq!(report.outcome(ClassKind::Liberal), Some(Outcome::Holds));
        assert_eq!(report.power_outcome(2), Some(Outcome::Holds));
        assert_eq!(report.power_outcome(4), Some(Outcome::Holds));
        assert_eq!(report.outcome(ClassKind::Separable), Some(Outcome::Fails));
        assert_eq!(report.outcome(ClassKind::Hirata), Some(Outcome::Fails));
        assert_eq!(report.outcome(ClassKind::StronglySeparable), Some(Outcome::Fails));
        assert_eq!(report.outcome(ClassKind::WeaklySeparable), Some(Outcome::Fails));
        assert_eq!(report.outcome(ClassKind::WeaklyQuasiSeparable), Some(Outcome::Fails));
        assert!(report.all_certificates_verified());
        assert!(report.implications_consistent());
        assert_eq!(report.dims.dim_der_b, 4);
    }

    #[test]
    fn classify_full_extension_everything_holds() {
        let ext = Extension::full(Algebra::matrix_algebra(&Algebra::ground(f3()), 2).unwrap());
        let report = classify(&ext, &ClassifyOptions::default());
        for kind in [
            ClassKind::Hirata,
            ClassKind::StronglySeparable,
            ClassKind::Separable,
            ClassKind::DepthTwoLeft,
            ClassKind::DepthTwoRight,
            ClassKind::WeaklySeparable,
            ClassKind::WeaklyQuasiSeparable,
            ClassKind::Liberal,
            ClassKind::Trivial,
        ] {
            assert_eq!(report.outcome(kind), Some(Outcome::Holds), "{kind:?}");
        }
        for n in 1..=8 {
            assert_eq!(report.power_outcome(n), Some(Outcome::Holds));
        }
        assert!(report.all_certificates_verified());
    }

    #[test]
    fn depth_two_agrees_with_summand_formulation() {
        // Oracle equivalence: left depth two iff _B(A ⊗_B A)_A | _B A _A.
        for ext in [m2_diag(), trunc_p2()] {
            let quasibases = check_depth_two(&ext, Side::Left).is_some();
            let a = ext.algebra();
            let x = ext.tensor().as_bimodule(a).restrict(
                ext.subalgebra(),
                &crate::algebra::SubalgebraEmbedding::full(a.clone()),
            );
            let y = Bimodule::regular(a).restrict(
                ext.subalgebra(),
                &crate::algebra::SubalgebraEmbedding::full(a.clone()),
            );
            let summand = summand_witness(&x, &y).unwrap().is_some();
            assert_eq!(quasibases, summand);
        }
    }
}
