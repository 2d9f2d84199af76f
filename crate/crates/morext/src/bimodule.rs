//! Bimodules, the tensor square `A ⊗_B A`, Hom spaces, summand witnesses and
//! derivation spaces.
//!
//! Everything in this module is a quotient or a kernel:
//!
//! * the tensor square is the quotient of `A ⊗_k A` by the relations
//!   `xb ⊗ y - x ⊗ by`;
//! * a Hom space between bimodules is the joint kernel of the intertwining
//!   conditions `f(l·s) = l·f(s)` and `f(s·r) = f(s)·r`;
//! * a derivation space is the kernel of the Leibniz system
//!   `D(xy) = D(x)y + xD(y)` plus whatever vanishing constraints are asked
//!   for.
//!
//! All three quantify over an algebra; in every case a generating set of that
//! algebra gives the same kernel, so the systems are assembled from a small
//! greedy generating set rather than a full basis.  Quotient bases are the
//! free columns of the RREF of the relation space, which pins a canonical
//! basis and makes certificates reproducible.

use std::sync::Arc;

use crate::algebra::{basis_vectors, generating_subset, Algebra, AlgebraError, SubalgebraEmbedding};
use crate::linalg::{add_scaled, FieldSpec, Matrix, RrefBuilder, Scalar, SpanSolver};

/// An `(L, R)`-bimodule given by action tables on a fixed basis.
///
/// Coordinates are column vectors; `left_act[i]` is the matrix of the action
/// of the `i`-th basis element of `L`, and likewise on the right.
#[derive(Clone)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_act: Vec<Matrix>,
    right_act: Vec<Matrix>,
}

impl Bimodule {
    /// Validates the action axioms: unitality, compatibility with both
    /// multiplications, and commutation of the two actions.
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_act: Vec<Matrix>,
        right_act: Vec<Matrix>,
        dim: usize,
    ) -> Result<Bimodule, AlgebraError> {
        if left.field() != right.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        if left_act.len() != left.dim() || right_act.len() != right.dim() {
            return Err(AlgebraError::BadBimodule("action table count mismatch".into()));
        }
        for m in left_act.iter().chain(right_act.iter()) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(AlgebraError::BadBimodule("action matrix shape mismatch".into()));
            }
        }
        let bm = Bimodule { left, right, dim, left_act, right_act };
        bm.validate()?;
        Ok(bm)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let id = Matrix::identity(self.field(), self.dim);
        if self.left_action_of(self.left.unit()) != id
            || self.right_action_of(self.right.unit()) != id
        {
            return Err(AlgebraError::BadBimodule("actions are not unital".into()));
        }
        // (l l')·s = l·(l'·s) and s·(r r') = (s·r)·r'
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                let prod = self.left_action_of(self.left.basis_mul(i, j));
                if prod != self.left_act[i].mul_mat(&self.left_act[j]) {
                    return Err(AlgebraError::BadBimodule(format!(
                        "left action not multiplicative at ({i}, {j})"
                    )));
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                let prod = self.right_action_of(self.right.basis_mul(i, j));
                if prod != self.right_act[j].mul_mat(&self.right_act[i]) {
                    return Err(AlgebraError::BadBimodule(format!(
                        "right action not anti-multiplicative at ({i}, {j})"
                    )));
                }
            }
        }
        for l in &self.left_act {
            for r in &self.right_act {
                if l.mul_mat(r) != r.mul_mat(l) {
                    return Err(AlgebraError::BadBimodule("actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `A`-`A`-bimodule via its own multiplication.
    pub fn regular(alg: &Arc<Algebra>) -> Bimodule {
        let left_act = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        let right_act = (0..alg.dim()).map(|i| alg.right_mult(&alg.basis_vec(i))).collect();
        Bimodule { left: alg.clone(), right: alg.clone(), dim: alg.dim(), left_act, right_act }
    }

    /// A left module viewed as a bimodule with the trivial right action of
    /// the ground field.
    pub fn from_left_module(
        alg: &Arc<Algebra>,
        left_act: Vec<Matrix>,
        dim: usize,
    ) -> Result<Bimodule, AlgebraError> {
        let ground = Algebra::ground(alg.field());
        Bimodule::new(alg.clone(), ground, left_act, vec![Matrix::identity(alg.field(), dim)], dim)
    }

    /// Restricts both actions along subalgebra embeddings of the acting
    /// algebras.
    pub fn restrict(
        &self,
        left_sub: &SubalgebraEmbedding,
        right_sub: &SubalgebraEmbedding,
    ) -> Bimodule {
        let left_act = left_sub.basis().iter().map(|v| self.left_action_of(v)).collect();
        let right_act = right_sub.basis().iter().map(|v| self.right_action_of(v)).collect();
        Bimodule {
            left: left_sub.induced().clone(),
            right: right_sub.induced().clone(),
            dim: self.dim,
            left_act,
            right_act,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    /// Matrix of the left action of an element of `L` (in `L`-coordinates).
    pub fn left_action_of(&self, l: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in l.iter().zip(&self.left_act) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn right_action_of(&self, r: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in r.iter().zip(&self.right_act) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn left_basis_action(&self, i: usize) -> &Matrix {
        &self.left_act[i]
    }

    pub fn right_basis_action(&self, i: usize) -> &Matrix {
        &self.right_act[i]
    }
}

/// Basis of the space of bimodule homomorphisms `M -> N`.
///
/// Both modules must carry actions of the same pair of algebras.  Matrices
/// map `M`-coordinates to `N`-coordinates.
pub fn hom_space(m: &Bimodule, n: &Bimodule) -> Result<Vec<Matrix>, AlgebraError> {
    if m.left != n.left || m.right != n.right {
        return Err(AlgebraError::BadBimodule(
            "hom space requires identical acting algebras".into(),
        ));
    }
    let field = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dn * dm; // F[a, b], row-major
    let mut sys = RrefBuilder::new(field, unknowns);
    let mut add_intertwiner = |pm: &Matrix, pn: &Matrix| {
        // condition: F * PM = PN * F, one equation per output entry (a, b)
        for a in 0..dn {
            for b in 0..dm {
                let mut row = vec![field.zero(); unknowns];
                for c in 0..dm {
                    let coef = pm.at(c, b);
                    if !coef.is_zero() {
                        row[a * dm + c] = row[a * dm + c].add(coef);
                    }
                }
                for c in 0..dn {
                    let coef = pn.at(a, c);
                    if !coef.is_zero() {
                        row[c * dm + b] = row[c * dm + b].sub(coef);
                    }
                }
                sys.add_row(row);
            }
        }
    };
    for g in generating_subset(&m.left, &basis_vectors(&m.left)) {
        add_intertwiner(&m.left_action_of(&g), &n.left_action_of(&g));
    }
    for g in generating_subset(&m.right, &basis_vectors(&m.right)) {
        add_intertwiner(&m.right_action_of(&g), &n.right_action_of(&g));
    }
    Ok(sys.kernel().into_iter().map(|v| Matrix::from_vec(field, dn, dm, v)).collect())
}

/// A witness that `X` is a direct summand of a finite direct sum of copies
/// of `Y`: maps `f_i : X -> Y` and `g_i : Y -> X` with `sum g_i f_i = id_X`.
#[derive(Clone, Debug)]
pub struct SummandWitness {
    pub maps_out: Vec<Matrix>,
    pub maps_in: Vec<Matrix>,
}

impl SummandWitness {
    /// Re-checks `sum g_i f_i = id` exactly.
    pub fn verify(&self, dim_x: usize, field: FieldSpec) -> bool {
        if self.maps_out.len() != self.maps_in.len() {
            return false;
        }
        let mut acc = Matrix::zeros(field, dim_x, dim_x);
        for (f, g) in self.maps_out.iter().zip(&self.maps_in) {
            acc = acc.add(&g.mul_mat(f));
        }
        acc == Matrix::identity(field, dim_x)
    }
}

/// Decides `X | Y-sums` by the trace-ideal criterion.
///
/// The span of all composites `g ∘ f` with `f : X -> Y`, `g : Y -> X` equals
/// the set of finite sums `sum g_i f_i`, so `X` is a summand of a finite
/// direct sum of copies of `Y` exactly when the identity lies in that span.
/// On success the witness family is read off from the membership
/// coefficients.
pub fn summand_witness(
    x: &Bimodule,
    y: &Bimodule,
) -> Result<Option<SummandWitness>, AlgebraError> {
    if x.left != y.left || x.right != y.right {
        return Err(AlgebraError::BadBimodule(
            "summand test requires identical acting algebras".into(),
        ));
    }
    let field = x.field();
    if x.dim == 0 {
        return Ok(Some(SummandWitness { maps_out: Vec::new(), maps_in: Vec::new() }));
    }
    let outs = hom_space(x, y)?;
    let ins = hom_space(y, x)?;
    let mut composites = Vec::with_capacity(outs.len() * ins.len());
    let mut pairs = Vec::with_capacity(outs.len() * ins.len());
    for (bi, g) in ins.iter().enumerate() {
        for (ai, f) in outs.iter().enumerate() {
            composites.push(g.mul_mat(f).vec());
            pairs.push((ai, bi));
        }
    }
    let solver = SpanSolver::new(field, x.dim * x.dim, &composites);
    let id = Matrix::identity(field, x.dim).vec();
    let Some(coeffs) = solver.coords(&id) else {
        return Ok(None);
    };
    let mut maps_out = Vec::new();
    let mut maps_in = Vec::new();
    for (c, &(ai, bi)) in coeffs.iter().zip(&pairs) {
        if !c.is_zero() {
            maps_out.push(outs[ai].clone());
            maps_in.push(ins[bi].scale(c));
        }
    }
    let w = SummandWitness { maps_out, maps_in };
    debug_assert!(w.verify(x.dim, field));
    Ok(Some(w))
}

/// The tensor square `A ⊗_B A` as a quotient of `A ⊗_k A`.
///
/// The ambient space has basis `e_i ⊗ e_k` indexed by `i*d + k`; the
/// relation space is spanned by `e_i b ⊗ e_k - e_i ⊗ b e_k` with `b` running
/// over generators of `B`.  The quotient basis consists of the classes of
/// the free (non-pivot) columns of the relation RREF, and `section` maps a
/// class to its canonical representative supported on those columns.
#[derive(Clone)]
pub struct TensorOverB {
    field: FieldSpec,
    dim_a: usize,
    relation_rank: usize,
    free_cols: Vec<usize>,
    proj: Matrix, // q x d^2
    sect: Matrix, // d^2 x q
    left_act: Vec<Matrix>,
    right_act: Vec<Matrix>,
    mu: Matrix, // d x q
}

/// An element of a tensor square, stored in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub coords: Vec<Scalar>,
}

impl TensorOverB {
    pub fn new(a: &Arc<Algebra>, b_gens: &[Vec<Scalar>]) -> TensorOverB {
        let field = a.field();
        let d = a.dim();
        let ambient = d * d;
        let mut relations = RrefBuilder::new(field, ambient);
        for b in b_gens {
            for i in 0..d {
                let xb = a.mul_vec(&a.basis_vec(i), b);
                for k in 0..d {
                    let by = a.mul_vec(b, &a.basis_vec(k));
                    let mut rel = vec![field.zero(); ambient];
                    for (l, c) in xb.iter().enumerate() {
                        if !c.is_zero() {
                            rel[l * d + k] = rel[l * d + k].add(c);
                        }
                    }
                    for (l, c) in by.iter().enumerate() {
                        if !c.is_zero() {
                            rel[i * d + l] = rel[i * d + l].sub(c);
                        }
                    }
                    relations.add_row(rel);
                }
            }
        }
        let (proj, sect, free_cols) = quotient_maps(&relations);
        let relation_rank = relations.rank();
        let q = free_cols.len();

        // induced actions on the quotient basis and the multiplication map
        let mut left_act = Vec::with_capacity(d);
        let mut right_act = Vec::with_capacity(d);
        for n in 0..d {
            let mut lcols = Vec::with_capacity(q);
            let mut rcols = Vec::with_capacity(q);
            for &f in &free_cols {
                let (i, k) = (f / d, f % d);
                // e_n · (e_i ⊗ e_k) = (e_n e_i) ⊗ e_k
                let ni = a.basis_mul(n, i);
                let mut amb = vec![field.zero(); ambient];
                for (l, c) in ni.iter().enumerate() {
                    if !c.is_zero() {
                        amb[l * d + k] = c.clone();
                    }
                }
                lcols.push(proj.mul_vec(&amb));
                // (e_i ⊗ e_k) · e_n = e_i ⊗ (e_k e_n)
                let kn = a.basis_mul(k, n);
                let mut amb = vec![field.zero(); ambient];
                for (l, c) in kn.iter().enumerate() {
                    if !c.is_zero() {
                        amb[i * d + l] = c.clone();
                    }
                }
                rcols.push(proj.mul_vec(&amb));
            }
            left_act.push(Matrix::from_columns(field, q, &lcols));
            right_act.push(Matrix::from_columns(field, q, &rcols));
        }
        let mu_cols: Vec<Vec<Scalar>> =
            free_cols.iter().map(|&f| a.basis_mul(f / d, f % d).to_vec()).collect();
        let mu = Matrix::from_columns(field, d, &mu_cols);

        TensorOverB {
            field,
            dim_a: d,
            relation_rank,
            free_cols,
            proj,
            sect,
            left_act,
            right_act,
            mu,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Dimension of the quotient `A ⊗_B A`.
    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_a * self.dim_a
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    /// Class of an ambient vector of `A ⊗_k A`.
    pub fn project(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        self.proj.mul_vec(ambient)
    }

    /// Canonical ambient representative of a class.
    pub fn section(&self, class: &[Scalar]) -> Vec<Scalar> {
        self.sect.mul_vec(class)
    }

    /// Class of the simple tensor `x ⊗ y`.
    pub fn class_of(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim_a;
        let mut amb = vec![self.field.zero(); d * d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, yk) in y.iter().enumerate() {
                if !yk.is_zero() {
                    amb[i * d + k] = xi.mul(yk);
                }
            }
        }
        self.project(&amb)
    }

    /// Left action of `a` (in `A`-coordinates) on a class.
    pub fn act_left(&self, a: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (c, m) in a.iter().zip(&self.left_act) {
            if !c.is_zero() {
                let v = m.mul_vec(e);
                add_scaled(&mut out, &c.neg(), &v);
            }
        }
        out
    }

    pub fn act_right(&self, e: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (c, m) in a.iter().zip(&self.right_act) {
            if !c.is_zero() {
                let v = m.mul_vec(e);
                add_scaled(&mut out, &c.neg(), &v);
            }
        }
        out
    }

    pub fn left_action_of(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dim(), self.dim());
        for (c, m) in a.iter().zip(&self.left_act) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn right_action_of(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.dim(), self.dim());
        for (c, m) in a.iter().zip(&self.right_act) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// The multiplication map `mu : x ⊗ y -> xy` on a class.
    pub fn mu(&self, e: &[Scalar]) -> Vec<Scalar> {
        self.mu.mul_vec(e)
    }

    /// `mu_u : x ⊗ y -> x u y` on a class, for `u` centralizing `B`
    /// (well-definedness over `⊗_B` needs exactly that).
    pub fn mu_u(&self, a: &Arc<Algebra>, e: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim_a;
        let amb = self.section(e);
        let mut out = a.zero_vec();
        for (idx, c) in amb.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, k) = (idx / d, idx % d);
            let xu = a.mul_vec(&a.basis_vec(i), u);
            let xuy = a.mul_vec(&xu, &a.basis_vec(k));
            add_scaled(&mut out, &c.neg(), &xuy);
        }
        out
    }

    /// The `A`- or `B`-commutant Casimir space: kernel of
    /// `e -> g·e - e·g` for `g` over the given generators.
    pub fn casimir_basis(&self, gens: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut sys = RrefBuilder::new(self.field, self.dim());
        for g in gens {
            let m = self.left_action_of(g).sub(&self.right_action_of(g));
            for row in m.rows_iter() {
                sys.add_row(row.to_vec());
            }
        }
        sys.kernel()
    }

    /// `A ⊗_B A` as an `A`-`A`-bimodule.
    pub fn as_bimodule(&self, a: &Arc<Algebra>) -> Bimodule {
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: self.dim(),
            left_act: self.left_act.clone(),
            right_act: self.right_act.clone(),
        }
    }
}

/// Projection and section maps for the quotient by a relation row space.
///
/// Returns `(proj, sect, free_cols)`: the canonical representative of a class
/// is supported on the free columns, `proj` reads it off any representative
/// (reduce modulo the RREF rows, then restrict), and `sect` embeds it back.
pub fn quotient_maps(relations: &RrefBuilder) -> (Matrix, Matrix, Vec<usize>) {
    let field = relations.field();
    let ambient = relations.cols();
    let pivots = relations.pivots();
    let rows = relations.rows();
    let free_cols: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let q = free_cols.len();
    let mut proj = Matrix::zeros(field, q, ambient);
    for (fi, &f) in free_cols.iter().enumerate() {
        *proj.at_mut(fi, f) = field.one();
        for (row, &p) in rows.iter().zip(pivots) {
            if !row[f].is_zero() {
                *proj.at_mut(fi, p) = row[f].neg();
            }
        }
    }
    let mut sect = Matrix::zeros(field, ambient, q);
    for (fi, &f) in free_cols.iter().enumerate() {
        *sect.at_mut(f, fi) = field.one();
    }
    (proj, sect, free_cols)
}

/// A space of derivations `D : A -> S`, stored as `dim S x dim A` matrices.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub vanish_on_b: bool,
    pub central: bool,
    pub basis: Vec<Matrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the Leibniz system `D(xy) = D(x)y + xD(y)` on an `A`-`A`-bimodule
/// `S`, with optional vanishing on `B` and centrality of the image.
///
/// `a_gens` must generate `A` as a unital algebra and `b_gens` (when present)
/// must generate `B`; Leibniz on generator pairs plus `D(1) = 0` implies
/// Leibniz everywhere, which keeps the system small.
pub fn derivation_basis(
    a: &Arc<Algebra>,
    s: &Bimodule,
    a_gens: &[Vec<Scalar>],
    b_gens: Option<&[Vec<Scalar>]>,
    central: bool,
) -> Vec<Matrix> {
    let field = a.field();
    let d = a.dim();
    let ds = s.dim();
    let unknowns = ds * d; // D[a, l] at index a*d + l
    let mut sys = RrefBuilder::new(field, unknowns);

    // D(1) = 0
    for out in 0..ds {
        let mut row = vec![field.zero(); unknowns];
        for (l, c) in a.unit().iter().enumerate() {
            if !c.is_zero() {
                row[out * d + l] = c.clone();
            }
        }
        sys.add_row(row);
    }

    // Leibniz on (g, e_j) for generators g
    for g in a_gens {
        let lg = s.left_action_of(g);
        for j in 0..d {
            let w = a.mul_vec(g, &a.basis_vec(j));
            let rj = s.right_basis_action(j);
            for out in 0..ds {
                let mut row = vec![field.zero(); unknowns];
                for (l, c) in w.iter().enumerate() {
                    if !c.is_zero() {
                        row[out * d + l] = row[out * d + l].add(c);
                    }
                }
                // -(D(g)·e_j)_out = -sum_c R_j[out,c] (D g)_c
                for c in 0..ds {
                    let rc = rj.at(out, c);
                    if rc.is_zero() {
                        continue;
                    }
                    for (l, gl) in g.iter().enumerate() {
                        if !gl.is_zero() {
                            row[c * d + l] = row[c * d + l].sub(&rc.mul(gl));
                        }
                    }
                }
                // -(g·D(e_j))_out = -sum_c L_g[out,c] D[c, j]
                for c in 0..ds {
                    let lc = lg.at(out, c);
                    if !lc.is_zero() {
                        row[c * d + j] = row[c * d + j].sub(lc);
                    }
                }
                sys.add_row(row);
            }
        }
    }

    // D(b) = 0 on generators of B
    if let Some(bg) = b_gens {
        for b in bg {
            for out in 0..ds {
                let mut row = vec![field.zero(); unknowns];
                for (l, c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        row[out * d + l] = c.clone();
                    }
                }
                sys.add_row(row);
            }
        }
    }

    // image in S^A: g·D(e_j) - D(e_j)·g = 0
    if central {
        for g in a_gens {
            let m = s.left_action_of(g).sub(&s.right_action_of(g));
            for j in 0..d {
                for out in 0..ds {
                    let mut row = vec![field.zero(); unknowns];
                    for c in 0..ds {
                        let mc = m.at(out, c);
                        if !mc.is_zero() {
                            row[c * d + j] = mc.clone();
                        }
                    }
                    sys.add_row(row);
                }
            }
        }
    }

    sys.kernel().into_iter().map(|v| Matrix::from_vec(field, ds, d, v)).collect()
}

/// Checks the Leibniz rule and the stated flags for a single candidate map.
pub fn is_derivation(
    a: &Arc<Algebra>,
    s: &Bimodule,
    d_matrix: &Matrix,
    b_basis: Option<&[Vec<Scalar>]>,
    central: bool,
) -> bool {
    let d = a.dim();
    if d_matrix.nrows() != s.dim() || d_matrix.ncols() != d {
        return false;
    }
    for i in 0..d {
        let di = d_matrix.column(i);
        for j in 0..d {
            let dj = d_matrix.column(j);
            let dij = d_matrix.mul_vec(a.basis_mul(i, j));
            let mut rhs = s.right_basis_action(j).mul_vec(&di);
            let lhs2 = s.left_basis_action(i).mul_vec(&dj);
            for (r, l) in rhs.iter_mut().zip(&lhs2) {
                *r = r.add(l);
            }
            if dij != rhs {
                return false;
            }
        }
    }
    if let Some(bb) = b_basis {
        for b in bb {
            if !d_matrix.mul_vec(b).iter().all(Scalar::is_zero) {
                return false;
            }
        }
    }
    if central {
        for i in 0..d {
            let m = s.left_basis_action(i).sub(s.right_basis_action(i));
            for j in 0..d {
                if !m.mul_vec(&d_matrix.column(j)).iter().all(Scalar::is_zero) {
                    return false;
                }
            }
        }
    }
    true
}

/// Span of the inner derivations `ad_v : x -> vx - xv` for `v` in `V_A(B)`,
/// together with the raw `ad` images of the given `V`-basis (for solving
/// `ad_v = D` with coefficients over that basis).
pub fn inner_derivations(a: &Arc<Algebra>, v_basis: &[Vec<Scalar>]) -> (Vec<Matrix>, Vec<Matrix>) {
    let field = a.field();
    let d = a.dim();
    let ad_images: Vec<Matrix> =
        v_basis.iter().map(|v| a.left_mult(v).sub(&a.right_mult(v))).collect();
    let mut span = RrefBuilder::new(field, d * d);
    for m in &ad_images {
        span.add_row(m.vec());
    }
    let basis = span.into_rows().into_iter().map(|v| Matrix::from_vec(field, d, d, v)).collect();
    (basis, ad_images)
}
