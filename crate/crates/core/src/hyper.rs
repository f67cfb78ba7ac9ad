//! Tate hypercohomology `Ĥᵏ(A₁ → A₀)` of short complexes of Γ-modules.
//!
//! Cochains live in `A₁ ⊕ A₀` with `Dᵏ(a₁, a₀) = (−dᵏ⁺¹a₁, dᵏa₀ − ∂a₁)`.

use thiserror::Error;

use crate::gmod::{
    cohomology, exact_at, tate, AbHom, FinAbGroup, GammaMap, GammaModule, GmodError, ShortExact,
};
use crate::linalg::{IMat, Int, Lattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("boundary must be an equivariant map")]
    AntiBoundary,
    #[error("boundary is not injective")]
    NotInjective,
    #[error("square does not commute")]
    NonCommuting,
    #[error("morphism endpoints do not match the complexes")]
    EndpointMismatch,
    #[error(transparent)]
    Module(#[from] GmodError),
}

/// A short complex `A₁ →∂ A₀` with ∂ equivariant.
#[derive(Clone, Debug)]
pub struct ShortComplex {
    boundary: GammaMap,
    total: GammaModule,
}

impl ShortComplex {
    pub fn new(boundary: GammaMap) -> Result<Self, HyperError> {
        if boundary.is_anti() {
            return Err(HyperError::AntiBoundary);
        }
        let total = boundary.source.direct_sum(&boundary.target);
        Ok(ShortComplex { boundary, total })
    }

    /// `(0 → A₀)`.
    pub fn zero_to(a0: &GammaModule) -> Self {
        let zero = GammaModule::trivial(0);
        Self::new(GammaMap::equivariant(zero, a0.clone(), IMat::zeros(a0.n(), 0)).expect("zero map")).expect("valid")
    }

    /// `(A₁ → 0)`.
    pub fn to_zero(a1: &GammaModule) -> Self {
        let zero = GammaModule::trivial(0);
        Self::new(GammaMap::equivariant(a1.clone(), zero, IMat::zeros(0, a1.n())).expect("zero map")).expect("valid")
    }

    pub fn a1(&self) -> &GammaModule {
        &self.boundary.source
    }

    pub fn a0(&self) -> &GammaModule {
        &self.boundary.target
    }

    pub fn boundary(&self) -> &GammaMap {
        &self.boundary
    }

    pub fn n1(&self) -> usize {
        self.a1().n()
    }

    pub fn n0(&self) -> usize {
        self.a0().n()
    }

    /// `A₁ ⊕ A₀` as a Γ-module (cochains of every degree).
    pub fn total(&self) -> &GammaModule {
        &self.total
    }

    /// The matrix of `Dᵏ` on `A₁ ⊕ A₀`.
    pub fn differential(&self, k: i64) -> IMat {
        let d1 = self.a1().differential(k + 1).neg();
        let d0 = self.a0().differential(k);
        let del = self.boundary.matrix().neg();
        let top = d1.hstack(&IMat::zeros(self.n1(), self.n0()));
        let bottom = del.hstack(&d0);
        top.vstack(&bottom)
    }

    pub fn split<'a>(&self, v: &'a [Int]) -> (&'a [Int], &'a [Int]) {
        v.split_at(self.n1())
    }

    pub fn join(a1: &[Int], a0: &[Int]) -> Vec<Int> {
        let mut v = a1.to_vec();
        v.extend_from_slice(a0);
        v
    }

    /// `ker ∂` as a Γ-module, with the basis (columns in `A₁` coordinates) of its generators.
    pub fn kernel_module(&self) -> (GammaModule, IMat) {
        let kl = self.boundary.kernel_lattice();
        let basis = kl.int_basis().expect("integral");
        let rels: Vec<Vec<Int>> = self
            .a1()
            .relations()
            .col_vecs()
            .iter()
            .map(|r| kl.coords_int(r).expect("relations lie in the kernel"))
            .collect();
        let act: Vec<Vec<Int>> = basis
            .col_vecs()
            .iter()
            .map(|b| kl.coords_int(&self.a1().action().mul_vec(b)).expect("kernel is γ-stable"))
            .collect();
        let r = basis.cols();
        let m = GammaModule::new(IMat::from_cols(r, &rels), IMat::from_cols(r, &act)).expect("submodule");
        (m, basis)
    }

    /// `coker ∂` as a Γ-module on the generators of `A₀`.
    pub fn cokernel_module(&self) -> GammaModule {
        let rel = self.a0().relations().hstack(self.boundary.matrix());
        GammaModule::new(rel, self.a0().action().clone()).expect("quotient module")
    }
}

/// `Ĥᵏ(A₁ → A₀)`, with hypercocycle representatives `(a₁, a₀)` concatenated.
pub fn hyper(c: &ShortComplex, k: i64) -> FinAbGroup {
    cohomology(c.total.relation_lattice(), &c.differential(k), &c.differential(k - 1))
}

/// True iff `Dᵏ(a₁, a₀) = 0`.
pub fn is_hypercocycle(c: &ShortComplex, v: &[Int], k: i64) -> bool {
    c.total.is_zero_element(&c.differential(k).mul_vec(v))
}

/// The maps `λ*ᵏ : Ĥᵏ A₀ → Ĥᵏ(A₁→A₀)`, `μ*ᵏ : Ĥᵏ(A₁→A₀) → Ĥᵏ⁺¹ A₁`,
/// `∂*ᵏ⁺¹ : Ĥᵏ⁺¹ A₁ → Ĥᵏ⁺¹ A₀`.
#[derive(Clone, Debug)]
pub struct LesMaps {
    pub lambda: AbHom,
    pub mu: AbHom,
    pub partial: AbHom,
}

pub fn les_maps(c: &ShortComplex, k: i64) -> LesMaps {
    let n1 = c.n1();
    let h = hyper(c, k);
    let lambda = AbHom::from_reps(tate(c.a0(), k), h.clone(), |a0| ShortComplex::join(&vec![0; n1], a0))
        .expect("λ sends cocycles to hypercocycles");
    let mu = AbHom::from_reps(h, tate(c.a1(), k + 1), |v| v[..n1].to_vec()).expect("μ sends hypercocycles to cocycles");
    let partial = c.boundary.induced(k + 1);
    LesMaps { lambda, mu, partial }
}

/// Exactness of `Ĥᵏ A₁ → Ĥᵏ A₀ → Ĥᵏ(A₁→A₀) → Ĥᵏ⁺¹ A₁ → Ĥᵏ⁺¹ A₀` at its three interior joints.
pub fn les_exact(c: &ShortComplex, k: i64) -> [bool; 3] {
    let m = les_maps(c, k);
    let prev_partial = c.boundary.induced(k);
    [exact_at(&prev_partial, &m.lambda), exact_at(&m.lambda, &m.mu), exact_at(&m.mu, &m.partial)]
}

/// The isomorphism `Ĥᵏ(A₁ ↪ A₀) → Ĥᵏ coker ∂` and its inverse.
#[derive(Clone, Debug)]
pub struct QuasiInjIso {
    pub forward: AbHom,
    pub inverse: AbHom,
}

pub fn quasi_inj_iso(c: &ShortComplex, k: i64) -> Result<QuasiInjIso, HyperError> {
    if !c.boundary.is_injective() {
        return Err(HyperError::NotInjective);
    }
    let n1 = c.n1();
    let coker = c.cokernel_module();
    let h = hyper(c, k);
    let t = tate(&coker, k);
    let forward = AbHom::from_reps(h.clone(), t.clone(), |v| v[n1..].to_vec()).expect("projection to cokernel");
    let inverse = AbHom::from_reps(t, h, |a0| {
        let da0 = c.a0().differential(k).mul_vec(a0);
        let a1 = c.boundary.lift(&da0).expect("dᵏa₀ lies in the image of ∂");
        ShortComplex::join(&a1, a0)
    })
    .expect("lift is a hypercocycle");
    Ok(QuasiInjIso { forward, inverse })
}

/// A commuting square `(A₁ → A₀) → (A₁' → A₀')`.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    pub source: ShortComplex,
    pub target: ShortComplex,
    pub f1: GammaMap,
    pub f0: GammaMap,
}

impl ComplexMorphism {
    pub fn new(source: ShortComplex, target: ShortComplex, f1: IMat, f0: IMat) -> Result<Self, HyperError> {
        let f1 = GammaMap::equivariant(source.a1().clone(), target.a1().clone(), f1)?;
        let f0 = GammaMap::equivariant(source.a0().clone(), target.a0().clone(), f0)?;
        let lhs = target.boundary.matrix().mul(f1.matrix());
        let rhs = f0.matrix().mul(source.boundary.matrix());
        if !lhs.sub(&rhs).col_vecs().iter().all(|v| target.a0().is_zero_element(v)) {
            return Err(HyperError::NonCommuting);
        }
        Ok(ComplexMorphism { source, target, f1, f0 })
    }

    pub fn identity(c: &ShortComplex) -> Self {
        Self::new(c.clone(), c.clone(), IMat::identity(c.n1()), IMat::identity(c.n0())).expect("identity")
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        let (a1, a0) = self.source.split(v);
        ShortComplex::join(&self.f1.apply(a1), &self.f0.apply(a0))
    }

    /// The induced map on `Ĥᵏ`.
    pub fn induced(&self, k: i64) -> AbHom {
        AbHom::from_reps(hyper(&self.source, k), hyper(&self.target, k), |v| self.apply(v))
            .expect("morphisms send hypercocycles to hypercocycles")
    }

    /// The induced map `ker ∂ → ker ∂'`.
    pub fn on_kernels(&self) -> GammaMap {
        let (ks, bs) = self.source.kernel_module();
        let (kt, bt) = self.target.kernel_module();
        let kl = Lattice::from_int_cols(&bt);
        let cols: Vec<Vec<Int>> = bs
            .col_vecs()
            .iter()
            .map(|b| kl.coords_int(&self.f1.apply(b)).expect("kernel maps into kernel"))
            .collect();
        GammaMap::equivariant(ks, kt, IMat::from_cols(bt.cols(), &cols)).expect("restriction is equivariant")
    }

    /// The induced map `coker ∂ → coker ∂'`.
    pub fn on_cokernels(&self) -> GammaMap {
        GammaMap::equivariant(self.source.cokernel_module(), self.target.cokernel_module(), self.f0.matrix().clone())
            .expect("cokernel map is well defined")
    }
}

/// Outcome of [`quasi_iso_check`]: when the morphism is a quasi-isomorphism, the induced
/// isomorphisms on `Ĥ⁰` and `Ĥ¹`.
#[derive(Clone, Debug)]
pub struct QuasiIsoCheck {
    pub is_quasi_iso: bool,
    pub induced: Option<[AbHom; 2]>,
}

pub fn quasi_iso_check(f: &ComplexMorphism) -> QuasiIsoCheck {
    let k = f.on_kernels();
    let c = f.on_cokernels();
    let ok = k.is_injective() && k.is_surjective() && c.is_injective() && c.is_surjective();
    QuasiIsoCheck { is_quasi_iso: ok, induced: ok.then(|| [f.induced(0), f.induced(1)]) }
}

/// The quasi-isomorphism `(ker ∂ → 0) → (A₁ → A₀)`.
pub fn kernel_inclusion(c: &ShortComplex) -> ComplexMorphism {
    let (km, basis) = c.kernel_module();
    let src = ShortComplex::to_zero(&km);
    ComplexMorphism::new(src, c.clone(), basis, IMat::zeros(c.n0(), 0)).expect("kernel inclusion commutes")
}

/// A short exact sequence of short complexes `0 → A → B → C → 0`.
#[derive(Clone, Debug)]
pub struct ComplexSequence {
    pub i: ComplexMorphism,
    pub j: ComplexMorphism,
}

impl ComplexSequence {
    pub fn new(i: ComplexMorphism, j: ComplexMorphism) -> Result<Self, HyperError> {
        ShortExact::new(i.f1.clone(), j.f1.clone())?;
        ShortExact::new(i.f0.clone(), j.f0.clone())?;
        if i.target.n1() != j.source.n1() || i.target.n0() != j.source.n0() {
            return Err(HyperError::EndpointMismatch);
        }
        Ok(ComplexSequence { i, j })
    }

    /// `δᵏ : Ĥᵏ(C) → Ĥᵏ⁺¹(A)`: lift, apply `Dᵏ`, pull back.
    pub fn connecting(&self, k: i64) -> AbHom {
        let b = &self.i.target;
        let total_i = GammaMap::equivariant(
            self.i.source.total().clone(),
            b.total().clone(),
            self.i.f1.matrix().block_diag(self.i.f0.matrix()),
        )
        .expect("total map");
        let total_j = GammaMap::equivariant(
            b.total().clone(),
            self.j.target.total().clone(),
            self.j.f1.matrix().block_diag(self.j.f0.matrix()),
        )
        .expect("total map");
        AbHom::from_reps(hyper(&self.j.target, k), hyper(&self.i.source, k + 1), |c| {
            let lift = total_j.lift(c).expect("surjective");
            let d = b.differential(k).mul_vec(&lift);
            total_i.lift(&d).expect("Dᵏ of the lift comes from A")
        })
        .expect("connecting map lands in hypercocycles")
    }

    /// Exactness at the four interior joints of
    /// `Ĥᵏ A → Ĥᵏ B → Ĥᵏ C → Ĥᵏ⁺¹ A → Ĥᵏ⁺¹ B → Ĥᵏ⁺¹ C`.
    pub fn window_exact(&self, k: i64) -> [bool; 4] {
        let w = [self.i.induced(k), self.j.induced(k), self.connecting(k), self.i.induced(k + 1), self.j.induced(k + 1)];
        [exact_at(&w[0], &w[1]), exact_at(&w[1], &w[2]), exact_at(&w[2], &w[3]), exact_at(&w[3], &w[4])]
    }
}

/// `i#ᵏ : Ĥᵏ⁺¹ A → Ĥᵏ(B → C)`, `[a] ↦ [i(a), 0]`, for `0 → A → B → C → 0`.
pub fn i_sharp(seq: &ShortExact, k: i64) -> AbHom {
    let c = ShortComplex::new(seq.j.clone()).expect("equivariant");
    let nc = seq.c().n();
    AbHom::from_reps(tate(seq.a(), k + 1), hyper(&c, k), |a| ShortComplex::join(&seq.i.apply(a), &vec![0; nc]))
        .expect("i# sends cocycles to hypercocycles")
}

/// The two squares comparing `Ĥᵏ C → Ĥᵏ⁺¹ A → Ĥᵏ⁺¹ B` with
/// `Ĥᵏ C → Ĥᵏ(B→C) → Ĥᵏ⁺¹ B`: `(i# ∘ δ == λ*, μ* ∘ i# == i*)`.
pub fn coho_hyper_squares(seq: &ShortExact, k: i64) -> [bool; 2] {
    let c = ShortComplex::new(seq.j.clone()).expect("equivariant");
    let ish = i_sharp(seq, k);
    let delta = crate::gmod::connecting(seq, k);
    let m = les_maps(&c, k);
    let left = delta.compose(&ish);
    let right = ish.compose(&m.mu);
    let istar = seq.i.induced(k + 1);
    [left.images() == m.lambda.images(), right.images() == istar.images()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(n: Int, m: &GammaModule) -> ShortComplex {
        ShortComplex::new(GammaMap::equivariant(m.clone(), m.clone(), IMat::scalar(m.n(), n)).unwrap()).unwrap()
    }

    #[test]
    fn degenerate_complexes() {
        let a = GammaModule::new(IMat::from_rows(&[[4, 0], [0, 0]]), IMat::from_rows(&[[-1, 0], [0, 1]])).unwrap();
        for k in 0..2 {
            assert_eq!(hyper(&ShortComplex::zero_to(&a), k).invariants(), tate(&a, k).invariants());
            assert_eq!(hyper(&ShortComplex::to_zero(&a), k).invariants(), tate(&a, k + 1).invariants());
        }
        let m = les_maps(&ShortComplex::zero_to(&a), 0);
        assert!(m.mu.is_zero());
    }

    #[test]
    fn multiplication_by_two() {
        let c = times(2, &GammaModule::trivial(1));
        let h = hyper(&c, 0);
        assert_eq!(h.invariants(), &[2]);
        let m = les_maps(&c, 0);
        assert!(m.lambda.is_surjective());
        let q = quasi_inj_iso(&c, 0).unwrap();
        assert!(q.forward.is_iso());
        assert_eq!(q.forward.compose(&q.inverse).images(), vec![vec![1]]);
    }

    #[test]
    fn identity_complex_is_acyclic() {
        let a = GammaModule::new(IMat::from_rows(&[[2, 0], [0, 0]]), IMat::from_rows(&[[1, 0], [0, -1]])).unwrap();
        let c = times(1, &a);
        for k in -1..3 {
            assert!(hyper(&c, k).is_trivial());
        }
        let q = quasi_inj_iso(&c, 0).unwrap();
        assert!(q.forward.source.is_trivial() && q.forward.target.is_trivial());
    }

    #[test]
    fn sign_into_regular() {
        let b = GammaMap::equivariant(GammaModule::sign(1), GammaModule::regular(), IMat::from_rows(&[[1], [-1]])).unwrap();
        let c = ShortComplex::new(b).unwrap();
        let q = quasi_inj_iso(&c, 1).unwrap();
        assert!(q.forward.source.is_trivial());
        assert!(q.forward.target.is_trivial());
    }

    #[test]
    fn quasi_iso_examples() {
        // surjective ∂: ℤ[Γ] → ℤ, sum map; kernel ℤ(sign)
        let sum = GammaMap::equivariant(GammaModule::regular(), GammaModule::trivial(1), IMat::from_rows(&[[1, 1]])).unwrap();
        let c = ShortComplex::new(sum).unwrap();
        let inc = kernel_inclusion(&c);
        let r = quasi_iso_check(&inc);
        assert!(r.is_quasi_iso);
        assert!(r.induced.unwrap().iter().all(|m| m.is_iso()));
        assert!(quasi_iso_check(&ComplexMorphism::identity(&c)).is_quasi_iso);
        let z = times(2, &GammaModule::trivial(1));
        let zero = ComplexMorphism::new(z.clone(), z.clone(), IMat::zeros(1, 1), IMat::zeros(1, 1)).unwrap();
        assert!(!quasi_iso_check(&zero).is_quasi_iso);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let z = times(2, &GammaModule::trivial(1));
        let e = ComplexMorphism::new(z.clone(), z, IMat::identity(1), IMat::zeros(1, 1)).unwrap_err();
        assert_eq!(e, HyperError::NonCommuting);
    }

    #[test]
    fn coho_hyper_diagram() {
        let i = GammaMap::equivariant(GammaModule::sign(1), GammaModule::regular(), IMat::from_rows(&[[1], [-1]])).unwrap();
        let j = GammaMap::equivariant(GammaModule::regular(), GammaModule::trivial(1), IMat::from_rows(&[[1, 1]])).unwrap();
        let seq = ShortExact::new(i, j).unwrap();
        for k in 0..2 {
            assert_eq!(coho_hyper_squares(&seq, k), [true, true]);
            assert!(i_sharp(&seq, k).is_iso());
        }
    }
}
