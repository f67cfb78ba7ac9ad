//! Γ-modules for `Γ = Gal(ℂ/ℝ) = {1, γ}` and their Tate cohomology.
//!
//! A module is `ℤⁿ / R` with `R` the column span of a relation matrix and γ acting by
//! an integer matrix `S`. For every `k ∈ ℤ`,
//! `Ĥᵏ = ker dᵏ / im dᵏ⁻¹` with `dᵏ = γ + (−1)^{k+1}`.

mod group;

use thiserror::Error;

use crate::linalg::{kernel, solve_int, IMat, Int, Lattice};

pub use group::{exact_at, AbHom, FinAbGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GmodError {
    #[error("action matrix must be {n}×{n}, got {rows}×{cols}")]
    BadActionShape { n: usize, rows: usize, cols: usize },
    #[error("relation matrix must have {n} rows, got {rows}")]
    BadRelationShape { n: usize, rows: usize },
    #[error("γ does not preserve the relation lattice")]
    ActionNotWellDefined,
    #[error("γ is not an involution modulo relations")]
    NotInvolution,
    #[error("map does not send relations to relations")]
    MapNotWellDefined,
    #[error("map is not {0}")]
    NotEquivariant(&'static str),
    #[error("element has {got} coordinates, module has {n} generators")]
    OutOfRange { n: usize, got: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(Joint),
    #[error("maps are not composable")]
    NotComposable,
}

/// The joint of `0 → A → B → C → 0` at which exactness fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Joint {
    /// `A → B` is not injective.
    A,
    /// `j ∘ i ≠ 0` or `ker j ⊄ im i`.
    B,
    /// `B → C` is not surjective.
    C,
}

impl std::fmt::Display for Joint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Joint::A => write!(f, "first map is not injective"),
            Joint::B => write!(f, "image of the first map differs from the kernel of the second"),
            Joint::C => write!(f, "second map is not surjective"),
        }
    }
}

/// `(−1)^k`.
pub fn sign(k: i64) -> Int {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A finitely generated Γ-module `ℤⁿ / R` with γ given by `action`.
#[derive(Clone, Debug)]
pub struct GammaModule {
    relations: IMat,
    action: IMat,
    rel: Lattice,
}

impl GammaModule {
    pub fn new(relations: IMat, action: IMat) -> Result<Self, GmodError> {
        let n = action.rows();
        if !action.is_square() {
            return Err(GmodError::BadActionShape { n, rows: action.rows(), cols: action.cols() });
        }
        if relations.rows() != n {
            return Err(GmodError::BadRelationShape { n, rows: relations.rows() });
        }
        let rel = Lattice::from_int_cols(&relations);
        let sr = action.mul(&relations);
        if !sr.col_vecs().iter().all(|c| rel.contains_int(c)) {
            return Err(GmodError::ActionNotWellDefined);
        }
        let s2 = action.mul(&action).sub(&IMat::identity(n));
        if !s2.col_vecs().iter().all(|c| rel.contains_int(c)) {
            return Err(GmodError::NotInvolution);
        }
        Ok(GammaModule { relations, action, rel })
    }

    /// A free module (a Γ-lattice) with γ given by `action`.
    pub fn free(action: IMat) -> Result<Self, GmodError> {
        let n = action.rows();
        Self::new(IMat::zeros(n, 0), action)
    }

    /// `ℤⁿ` with trivial action.
    pub fn trivial(n: usize) -> Self {
        Self::free(IMat::identity(n)).expect("valid")
    }

    /// `ℤⁿ` with γ = −1.
    pub fn sign(n: usize) -> Self {
        Self::free(IMat::scalar(n, -1)).expect("valid")
    }

    /// `ℤ[Γ] = ℤ²` with γ swapping the coordinates.
    pub fn regular() -> Self {
        Self::free(IMat::from_rows(&[[0, 1], [1, 0]])).expect("valid")
    }

    /// `ℤ/d` with γ = ±1.
    pub fn cyclic(d: Int, gamma: Int) -> Result<Self, GmodError> {
        Self::new(IMat::from_rows(&[[d]]), IMat::from_rows(&[[gamma]]))
    }

    pub fn n(&self) -> usize {
        self.action.rows()
    }

    pub fn relations(&self) -> &IMat {
        &self.relations
    }

    pub fn action(&self) -> &IMat {
        &self.action
    }

    pub fn relation_lattice(&self) -> &Lattice {
        &self.rel
    }

    /// `(ı)A`: the same group with γ replaced by −γ.
    pub fn twisted(&self) -> Self {
        GammaModule { relations: self.relations.clone(), action: self.action.neg(), rel: self.rel.clone() }
    }

    pub fn direct_sum(&self, other: &GammaModule) -> Self {
        GammaModule::new(self.relations.block_diag(&other.relations), self.action.block_diag(&other.action))
            .expect("direct sum of valid modules")
    }

    /// The matrix of `dᵏ = γ + (−1)^{k+1}` on generators.
    pub fn differential(&self, k: i64) -> IMat {
        self.action.add(&IMat::scalar(self.n(), sign(k + 1)))
    }

    pub fn is_zero_element(&self, a: &[Int]) -> bool {
        self.rel.contains_int(a)
    }

    pub fn eq_elements(&self, a: &[Int], b: &[Int]) -> bool {
        let d: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    /// The underlying abelian group `ℤⁿ / R`.
    pub fn underlying_group(&self) -> FinAbGroup {
        FinAbGroup::quotient(&Lattice::standard(self.n()), &self.rel).expect("relations lie in ℤⁿ")
    }

    pub fn is_finite(&self) -> bool {
        self.rel.rank() == self.n()
    }

    fn check_len(&self, a: &[Int]) -> Result<(), GmodError> {
        if a.len() != self.n() {
            return Err(GmodError::OutOfRange { n: self.n(), got: a.len() });
        }
        Ok(())
    }
}

/// `{x : D x ∈ R}` modulo `im(D_prev) + R`, all inside `ℤⁿ`.
pub(crate) fn cohomology(rel: &Lattice, d: &IMat, d_prev: &IMat) -> FinAbGroup {
    let n = d.cols();
    let rb = rel.int_basis().expect("integral relations");
    let stacked = d.hstack(&rb.neg());
    let k = kernel(&stacked);
    let mut zgens: Vec<Vec<Int>> = k.col_vecs().iter().map(|c| c[..n].to_vec()).collect();
    zgens.extend(rb.col_vecs());
    let z = Lattice::from_int_gens(n, &zgens);
    let mut bgens = d_prev.col_vecs();
    bgens.extend(rb.col_vecs());
    let b = Lattice::from_int_gens(n, &bgens);
    FinAbGroup::quotient(&z, &b).expect("coboundaries are cocycles")
}

/// `Ĥᵏ(M)`; depends only on `k mod 2`.
pub fn tate(m: &GammaModule, k: i64) -> FinAbGroup {
    cohomology(&m.rel, &m.differential(k), &m.differential(k - 1))
}

/// True iff `dᵏ a = 0` in `M`.
pub fn check_cocycle(m: &GammaModule, a: &[Int], k: i64) -> Result<bool, GmodError> {
    m.check_len(a)?;
    Ok(m.is_zero_element(&m.differential(k).mul_vec(a)))
}

/// A homomorphism of Γ-modules, equivariant or Γ-anti-equivariant.
#[derive(Clone, Debug)]
pub struct GammaMap {
    pub source: GammaModule,
    pub target: GammaModule,
    matrix: IMat,
    anti: bool,
}

impl GammaMap {
    pub fn new(source: GammaModule, target: GammaModule, matrix: IMat, anti: bool) -> Result<Self, GmodError> {
        assert_eq!((matrix.rows(), matrix.cols()), (target.n(), source.n()), "map shape");
        let fr = matrix.mul(&source.relations);
        if !fr.col_vecs().iter().all(|c| target.rel.contains_int(c)) {
            return Err(GmodError::MapNotWellDefined);
        }
        let eps = if anti { -1 } else { 1 };
        let lhs = target.action.mul(&matrix);
        let rhs = matrix.mul(&source.action).scale(eps);
        if !lhs.sub(&rhs).col_vecs().iter().all(|c| target.rel.contains_int(c)) {
            return Err(GmodError::NotEquivariant(if anti { "anti-equivariant" } else { "equivariant" }));
        }
        Ok(GammaMap { source, target, matrix, anti })
    }

    pub fn equivariant(source: GammaModule, target: GammaModule, matrix: IMat) -> Result<Self, GmodError> {
        Self::new(source, target, matrix, false)
    }

    pub fn identity(m: &GammaModule) -> Self {
        Self::new(m.clone(), m.clone(), IMat::identity(m.n()), false).expect("identity")
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn apply(&self, a: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(a)
    }

    pub fn compose(&self, after: &GammaMap) -> Result<GammaMap, GmodError> {
        if after.source.n() != self.target.n() {
            return Err(GmodError::NotComposable);
        }
        GammaMap::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix), self.anti != after.anti)
    }

    /// Generators of `{a : f(a) = 0 in the target}` (contains the source relations).
    pub fn kernel_lattice(&self) -> Lattice {
        let n = self.source.n();
        let rb = self.target.rel.int_basis().expect("integral");
        let k = kernel(&self.matrix.hstack(&rb.neg()));
        let mut gens: Vec<Vec<Int>> = k.col_vecs().iter().map(|c| c[..n].to_vec()).collect();
        gens.extend(self.source.relations.col_vecs());
        Lattice::from_int_gens(n, &gens)
    }

    /// `f(ℤⁿ) + R_target`.
    pub fn image_lattice(&self) -> Lattice {
        let mut gens = self.matrix.col_vecs();
        gens.extend(self.target.relations.col_vecs());
        Lattice::from_int_gens(self.target.n(), &gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == self.source.rel
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::standard(self.target.n())
    }

    /// Some `a` with `f(a) = b` in the target, if `b` is in the image.
    pub fn lift(&self, b: &[Int]) -> Option<Vec<Int>> {
        let n = self.source.n();
        let rb = self.target.relations.clone();
        let x = solve_int(&self.matrix.hstack(&rb.neg()), b)?;
        Some(x[..n].to_vec())
    }

    /// The induced map `Ĥᵏ(source) → Ĥ^{k+ε}(target)` with ε = 1 for anti-equivariant maps.
    pub fn induced(&self, k: i64) -> AbHom {
        let src = tate(&self.source, k);
        let tgt = tate(&self.target, k + i64::from(self.anti));
        AbHom::from_reps(src, tgt, |a| self.apply(a)).expect("cocycles map to cocycles")
    }
}

/// A short exact sequence `0 → A →ⁱ B →ʲ C → 0` of Γ-modules.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub i: GammaMap,
    pub j: GammaMap,
}

impl ShortExact {
    pub fn new(i: GammaMap, j: GammaMap) -> Result<Self, GmodError> {
        if i.anti || j.anti {
            return Err(GmodError::NotEquivariant("equivariant"));
        }
        if i.target.n() != j.source.n() {
            return Err(GmodError::NotComposable);
        }
        if !i.is_injective() {
            return Err(GmodError::NotExact(Joint::A));
        }
        if !j.is_surjective() {
            return Err(GmodError::NotExact(Joint::C));
        }
        let im_i = i.image_lattice();
        if im_i != j.kernel_lattice() {
            return Err(GmodError::NotExact(Joint::B));
        }
        Ok(ShortExact { i, j })
    }

    pub fn a(&self) -> &GammaModule {
        &self.i.source
    }

    pub fn b(&self) -> &GammaModule {
        &self.i.target
    }

    pub fn c(&self) -> &GammaModule {
        &self.j.target
    }
}

/// The connecting homomorphism `δᵏ : Ĥᵏ C → Ĥ^{k+1} A`: lift `c` to `b`, then `δ[c] = [dᵏ b]`.
pub fn connecting(seq: &ShortExact, k: i64) -> AbHom {
    let src = tate(seq.c(), k);
    let tgt = tate(seq.a(), k + 1);
    AbHom::from_reps(src, tgt, |c| {
        let b = seq.j.lift(c).expect("j is surjective");
        let db = seq.b().differential(k).mul_vec(&b);
        seq.i.lift(&db).expect("dᵏb lies in the image of i")
    })
    .expect("connecting map lands in cocycles")
}

/// The six maps `Ĥᵏ A → Ĥᵏ B → Ĥᵏ C → Ĥ^{k+1} A → Ĥ^{k+1} B → Ĥ^{k+1} C`.
pub fn les_window(seq: &ShortExact, k: i64) -> [AbHom; 5] {
    [seq.i.induced(k), seq.j.induced(k), connecting(seq, k), seq.i.induced(k + 1), seq.j.induced(k + 1)]
}

/// Exactness of the window at its four interior joints.
pub fn les_window_exact(seq: &ShortExact, k: i64) -> [bool; 4] {
    let w = les_window(seq, k);
    [exact_at(&w[0], &w[1]), exact_at(&w[1], &w[2]), exact_at(&w[2], &w[3]), exact_at(&w[3], &w[4])]
}

/// The isomorphism `Ĥᵏ A → Ĥ^{k+1} (ı)A`, `a ↦ (ı)a`.
pub fn shift_iso(m: &GammaModule, k: i64) -> AbHom {
    let f = GammaMap::new(m.clone(), m.twisted(), IMat::identity(m.n()), true).expect("identity is anti-equivariant");
    f.induced(k)
}
