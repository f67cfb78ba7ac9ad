//! Connecting maps `π₀G₃(ℝ) → H¹G₁` through `Ĥ¹Z(G₁)`, the central-kernel case, and
//! exactness reports for the six-term window `π₀G₂ → π₀G₃ → H¹G₁ → H¹G₂ → H¹G₃`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{center_act, pushforward, CenterCocycle, NormalHom, StructError};
use crate::gmod::{tate, AbHom, FinAbGroup, GammaMap, GammaModule};
use crate::hyper::{hyper, is_hypercocycle, les_maps, ShortComplex};
use crate::kac::{h1, ReductiveLabeling, H1};
use crate::linalg::{int_vec_to_rat, kernel, rat_vec_to_int, solve_int, sub_i, IMat, Int, Lattice, QMat, Rat};
use crate::pi0::pi0;
use crate::rootdata::{fundamental_group, GroupSpec};
use crate::torus::{induced_on_tori, theta_inverse, QuasiTorusSpec, TorusSpec};

/// `X∨ → P∨` with `P∨` in the coordinates of its stored basis.
#[derive(Clone, Debug)]
pub struct CenterComplex {
    pub complex: ShortComplex,
    pub p_dual: Lattice,
}

impl CenterComplex {
    /// `(ν, ν′)` as a cochain, `ν′ ∈ P∨` rational.
    pub fn join(&self, nu: &[Int], nu_ad: &[Rat]) -> Option<Vec<Int>> {
        let mut v = nu.to_vec();
        v.extend(self.p_dual.coords(nu_ad)?);
        Some(v)
    }

    /// `Ĥ⁰(X∨ → P∨) ≅ Ĥ¹Z(G)`.
    pub fn h0(&self) -> FinAbGroup {
        hyper(&self.complex, 0)
    }
}

pub fn center_complex(spec: &GroupSpec) -> CenterComplex {
    let c = spec.lattice_chain();
    let n = c.n;
    let p_dual = c.p_dual.clone();
    let basis = p_dual.basis();
    let r = basis.len();
    let gamma = c.tau_c.scale(Rat::from_integer(-1));
    let action_cols: Vec<Vec<Int>> =
        basis.iter().map(|b| p_dual.coords(&gamma.mul_vec(b)).expect("P∨ is τ-stable")).collect();
    let action = if r == 0 { IMat::zeros(0, 0) } else { IMat::from_cols(r, &action_cols) };
    let bd_cols: Vec<Vec<Int>> = (0..n)
        .map(|k| p_dual.coords(&c.proj_der.col(k)).expect("proj_der X∨ ⊆ P∨"))
        .collect();
    let bd = if r == 0 { IMat::zeros(0, n) } else { IMat::from_cols(r, &bd_cols) };
    let a1 = GammaModule::free(spec.gamma_cochar()).expect("Γ-lattice");
    let a0 = GammaModule::free(action).expect("Γ-lattice");
    let f = GammaMap::equivariant(a1, a0, bd).expect("proj_der is equivariant");
    CenterComplex { complex: ShortComplex::new(f).expect("equivariant"), p_dual }
}

fn lattice_eq(a: &Lattice, b: &Lattice) -> bool {
    a.contains_lattice(b) && b.contains_lattice(a)
}

/// `1 → G₁ →i G₂ →j G₃ → 1` on cocharacters, with a splitting `s` of `j` on the
/// derived parts: `s(Q₃∨) ⊆ Q₂∨`, `s(P₃∨) ⊆ P₂∨`, `Q₂∨ = iQ₁∨ ⊕ sQ₃∨`, `P₂∨ = iP₁∨ ⊕ sP₃∨`.
#[derive(Clone, Debug)]
pub struct GroupSequence {
    pub g1: GroupSpec,
    pub g2: GroupSpec,
    pub g3: GroupSpec,
    pub i: IMat,
    pub j: IMat,
    pub split: QMat,
}

impl GroupSequence {
    pub fn new(g1: GroupSpec, g2: GroupSpec, g3: GroupSpec, i: IMat, j: IMat, split: QMat) -> Result<Self, StructError> {
        let (n1, n2, n3) = (g1.brd().rank(), g2.brd().rank(), g3.brd().rank());
        if i.rows() != n2 || i.cols() != n1 || j.rows() != n3 || j.cols() != n2 || split.rows() != n2 || split.cols() != n3 {
            return Err(StructError::Sequence("matrix shapes do not match the ranks"));
        }
        if g2.tau_cochar().mul(&i) != i.mul(&g1.tau_cochar()) || g3.tau_cochar().mul(&j) != j.mul(&g2.tau_cochar()) {
            return Err(StructError::NotEquivariant);
        }
        if !j.mul(&i).is_zero() {
            return Err(StructError::Sequence("j∘i is not zero"));
        }
        if i.to_qmat().rank() != n1 {
            return Err(StructError::Sequence("i is not injective"));
        }
        if !Lattice::from_int_cols(&j).contains_lattice(&Lattice::standard(n3)) {
            return Err(StructError::Sequence("j is not surjective on cocharacters"));
        }
        if !lattice_eq(&Lattice::from_int_cols(&kernel(&j)), &Lattice::from_int_cols(&i)) {
            return Err(StructError::Sequence("not exact at G₂"));
        }
        let (c1, c2, c3) = (g1.lattice_chain(), g2.lattice_chain(), g3.lattice_chain());
        let (iq, jq) = (i.to_qmat(), j.to_qmat());
        if !c2.q_dual.contains_lattice(&c1.q_dual.image(&iq)) || !c3.q_dual.contains_lattice(&c2.q_dual.image(&jq)) {
            return Err(StructError::Sequence("coroots are not mapped to coroots"));
        }
        let sp = split.mul(&c3.proj_der);
        if jq.mul(&sp) != c3.proj_der {
            return Err(StructError::Splitting("j∘s is not the identity on the derived part"));
        }
        if c2.proj_der.mul(&sp) != sp {
            return Err(StructError::Splitting("s leaves the derived part"));
        }
        if c2.tau_c.mul(&sp) != sp.mul(&c3.tau_c) {
            return Err(StructError::Splitting("s is not equivariant"));
        }
        let sq = c3.q_dual.image(&split);
        let spp = c3.p_dual.image(&split);
        if !c2.q_dual.contains_lattice(&sq) || !c2.p_dual.contains_lattice(&spp) {
            return Err(StructError::Splitting("s does not preserve Q∨ and P∨"));
        }
        let q_sum = c1.q_dual.image(&iq).sum(&sq);
        let p_sum = c1.p_dual.image(&iq).sum(&spp);
        if !lattice_eq(&q_sum, &c2.q_dual) || !lattice_eq(&p_sum, &c2.p_dual) {
            return Err(StructError::Splitting("Q₂∨ or P₂∨ is not the direct sum of the images"));
        }
        Ok(GroupSequence { g1, g2, g3, i, j, split })
    }
}

/// The output of the lift-and-split construction.
#[derive(Clone, Debug)]
pub struct DeltaZ {
    pub nu3: Vec<Int>,
    pub nu2: Vec<Int>,
    pub nu1: Vec<Int>,
    pub nu1_ad: Vec<Rat>,
    /// coordinates in `Ĥ⁰(X₁∨ → P₁∨)`
    pub class: Vec<Int>,
    pub center: CenterCocycle,
}

/// `δ_Z : Ĥ⁰π₁G₃ → Ĥ¹Z(G₁)` on the class with coordinates `c`.
pub fn delta_z(seq: &GroupSequence, c: &[Int]) -> Result<DeltaZ, StructError> {
    let (c1, c2, c3) = (seq.g1.lattice_chain(), seq.g2.lattice_chain(), seq.g3.lattice_chain());
    let h0 = tate(&fundamental_group(&seq.g3), 0);
    let nu3 = h0.element(c);
    let nu3_sc = sub_i(&seq.g3.gamma_cochar().mul_vec(&nu3), &nu3);
    if !c3.q_dual.contains_int(&nu3_sc) {
        return Err(StructError::Sequence("class is not a cocycle of π₁G₃"));
    }
    let nu2_sc = seq.split.mul_vec(&int_vec_to_rat(&nu3_sc));
    if !c2.q_dual.contains(&nu2_sc) {
        return Err(StructError::Splitting("s(ν₃^sc) is not in Q₂∨"));
    }
    let nu2 = solve_int(&seq.j, &nu3).ok_or(StructError::Sequence("no lift of ν₃"))?;
    let ad2 = c2.proj_der.mul_vec(&int_vec_to_rat(&nu2));
    let ad3 = seq.j.to_qmat().mul_vec(&ad2);
    let i_part: Vec<Rat> = ad2.iter().zip(seq.split.mul_vec(&ad3)).map(|(a, b)| a - b).collect();
    let nu1_ad = seq.i.to_qmat().solve(&i_part).ok_or(StructError::Splitting("adjoint part does not decompose"))?;
    if !c1.p_dual.contains(&nu1_ad) {
        return Err(StructError::Splitting("ν₁^ad is not in P₁∨"));
    }
    let g2nu2 = seq.g2.gamma_cochar().mul_vec(&nu2);
    let w: Vec<Rat> = int_vec_to_rat(&sub_i(&g2nu2, &nu2)).iter().zip(&nu2_sc).map(|(a, b)| a - b).collect();
    let w = rat_vec_to_int(&w).ok_or(StructError::Splitting("s(ν₃^sc) is not integral"))?;
    let nu1 = solve_int(&seq.i, &w).ok_or(StructError::Sequence("γν₂ − ν₂ − ν₂^sc is not in i(X₁∨)"))?;
    let cc = center_complex(&seq.g1);
    let v = cc.join(&nu1, &nu1_ad).ok_or(StructError::Sequence("ν₁^ad is not in P₁∨"))?;
    if !is_hypercocycle(&cc.complex, &v, 0) {
        return Err(StructError::Sequence("(ν₁, ν₁^ad) is not a hypercocycle"));
    }
    let class = cc.h0().coords(&v).expect("hypercocycle");
    let center = CenterCocycle::from_hyper(&seq.g1, &nu1, &nu1_ad)?;
    Ok(DeltaZ { nu3, nu2, nu1, nu1_ad, class, center })
}

/// `δ⁰ = ι* ∘ δ_Z`, as a class index of `H¹G₁`.
pub fn delta0(seq: &GroupSequence, h: &H1, c: &[Int]) -> Result<usize, StructError> {
    let d = delta_z(seq, c)?;
    let base = &h.classes[h.neutral].rep.labeling;
    let lab = center_act(&seq.g1, &d.center, base)?;
    h.class_of(&lab).ok_or(StructError::NotReductive)
}

/// `1 → A → G₂ →j G₃ → 1` with `A` central, `j` a normal homomorphism that is
/// bijective on simple coroots and surjective on tori.
#[derive(Clone, Debug)]
pub struct CentralSequence {
    pub hom: NormalHom,
    pub kernel: QuasiTorusSpec,
}

impl CentralSequence {
    pub fn new(g2: GroupSpec, g3: GroupSpec, j: IMat) -> Result<Self, StructError> {
        let hom = NormalHom::new(g2.clone(), g3.clone(), j.clone())?;
        let covered: BTreeSet<usize> = hom.vertex_map().iter().flatten().copied().collect();
        if hom.vertex_map().iter().any(Option::is_none) || covered.len() != g3.diagram().num_vertices() {
            return Err(StructError::Sequence("kernel is not central"));
        }
        let t2 = TorusSpec::new(g2.gamma_cochar()).map_err(|_| StructError::NotEquivariant)?;
        let t3 = TorusSpec::new(g3.gamma_cochar()).map_err(|_| StructError::NotEquivariant)?;
        let kernel = QuasiTorusSpec::new(t2, t3, j).map_err(|_| StructError::Sequence("j is not surjective on tori"))?;
        Ok(CentralSequence { hom, kernel })
    }

    pub fn g2(&self) -> &GroupSpec {
        self.hom.source()
    }

    pub fn g3(&self) -> &GroupSpec {
        self.hom.target()
    }

    /// `Ĥ¹A ≅ Ĥ⁰(X₂∨ → X₃∨)`.
    pub fn h1_kernel(&self) -> FinAbGroup {
        hyper(&self.kernel.complex(), 0)
    }

    fn coroot_matrix(&self) -> IMat {
        let g2 = self.g2();
        IMat::from_cols(g2.brd().rank(), g2.brd().simple_coroots())
    }

    /// `y` with `j(Σ yᵢαᵢ∨) = v` for `v` in the derived part of `V₃`.
    fn coroot_preimage(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let cm = self.coroot_matrix();
        let y = self.kernel.map().mul(&cm).to_qmat().solve(v)?;
        Some(cm.to_qmat().mul_vec(&y))
    }

    /// `υ = ρ₂ ∘ (j^sc)⁻¹ : Q₃∨ → X₂∨`.
    pub fn upsilon(&self, v: &[Int]) -> Option<Vec<Int>> {
        rat_vec_to_int(&self.coroot_preimage(&int_vec_to_rat(v))?)
    }

    fn nu3_and_sc(&self, c: &[Int]) -> (Vec<Int>, Vec<Int>) {
        let h0 = tate(&fundamental_group(self.g3()), 0);
        let nu3 = h0.element(c);
        let sc = sub_i(&self.g3().gamma_cochar().mul_vec(&nu3), &nu3);
        (nu3, sc)
    }

    /// `δ⁰[ν₃] = [υ(ν₃^sc), ν₃]`.
    pub fn delta_upsilon(&self, c: &[Int]) -> Result<Vec<Int>, StructError> {
        let (nu3, sc) = self.nu3_and_sc(c);
        let mut v = self.upsilon(&sc).ok_or(StructError::Sequence("ν₃^sc has no preimage in Q₂∨"))?;
        v.extend(nu3);
        if !is_hypercocycle(&self.kernel.complex(), &v, 0) {
            return Err(StructError::Sequence("(υ(ν₃^sc), ν₃) is not a hypercocycle"));
        }
        Ok(self.h1_kernel().coords(&v).expect("hypercocycle"))
    }

    /// The cocycle `Exp(α)` of `A` with `α = (−ν₂ − γν₂ + υ(ν₃^sc))/2`, `j(ν₂) = ν₃`,
    /// mapped back through `ϑ⁻¹`.
    pub fn delta_direct(&self, c: &[Int]) -> Result<Vec<Int>, StructError> {
        let (nu3, sc) = self.nu3_and_sc(c);
        let ups = int_vec_to_rat(&self.upsilon(&sc).ok_or(StructError::Sequence("ν₃^sc has no preimage in Q₂∨"))?);
        let nu2 = self.kernel.map().to_qmat().solve(&int_vec_to_rat(&nu3)).ok_or(StructError::Sequence("no lift of ν₃"))?;
        let g_nu2 = self.g2().gamma_cochar().to_qmat().mul_vec(&nu2);
        let half = Rat::new(1, 2);
        let alpha: Vec<Rat> = (0..nu2.len()).map(|k| (-nu2[k] - g_nu2[k] + ups[k]) * half).collect();
        if !self.kernel.is_cocycle(&alpha, 1) {
            return Err(StructError::Sequence("Exp(α) is not a cocycle of A"));
        }
        let (nu, nup) = theta_inverse(&self.kernel, &alpha, 0).ok_or(StructError::Sequence("ϑ⁻¹ is not integral"))?;
        let mut v = nu;
        v.extend(nup);
        self.h1_kernel().coords(&v).ok_or(StructError::Sequence("ϑ⁻¹(α) is not a hypercocycle"))
    }

    /// `i* : H¹A → H¹G₂`, through the center cocycle of `(ν, ν′)`.
    pub fn i_star(&self, h2: &H1, a: &[Int]) -> Result<usize, StructError> {
        let g2 = self.g2();
        let n2 = g2.brd().rank();
        let v = self.h1_kernel().element(a);
        let (nu, nup) = v.split_at(n2);
        let ad3 = self.g3().lattice_chain().proj_der.mul_vec(&int_vec_to_rat(nup));
        let ad2 = self.coroot_preimage(&ad3).ok_or(StructError::Sequence("adjoint part has no preimage"))?;
        let z = CenterCocycle::from_hyper(g2, nu, &ad2)?;
        let lab = center_act(g2, &z, &h2.classes[h2.neutral].rep.labeling)?;
        h2.class_of(&lab).ok_or(StructError::NotReductive)
    }

    /// `j* : H¹G₂ → H¹G₃`.
    pub fn j_star(&self, h2: &H1, h3: &H1, class: usize) -> Result<usize, StructError> {
        let out = pushforward(&self.hom, &h2.classes[class].rep)?;
        h3.class_of(&out.labeling).ok_or(StructError::NotReductive)
    }

    /// `j⁰ : Ĥ⁰π₁G₂ → Ĥ⁰π₁G₃`.
    pub fn j0(&self, c: &[Int]) -> Vec<Int> {
        let src = tate(&fundamental_group(self.g2()), 0);
        let tgt = tate(&fundamental_group(self.g3()), 0);
        tgt.coords(&self.kernel.map().mul_vec(&src.element(c))).expect("j maps cocycles to cocycles")
    }
}

/// One joint `X → Y → Z` of a window.
#[derive(Clone, Debug, Serialize)]
pub struct JointReport {
    pub name: String,
    pub exact: bool,
    pub image_size: usize,
    pub kernel_size: usize,
    /// an element in exactly one of image and kernel
    pub witness: Option<Vec<Int>>,
}

impl JointReport {
    pub fn compare(name: &str, image: &BTreeSet<Vec<Int>>, kernel: &BTreeSet<Vec<Int>>) -> Self {
        let witness = image.symmetric_difference(kernel).next().cloned();
        JointReport {
            name: name.to_string(),
            exact: witness.is_none(),
            image_size: image.len(),
            kernel_size: kernel.len(),
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub joints: Vec<JointReport>,
    /// `δ⁰` computed through `υ*` and through an explicit cocycle of `A` agree
    pub recipes_agree: Option<bool>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.joints.iter().all(|j| j.exact) && self.recipes_agree.unwrap_or(true)
    }
}

/// Exactness at the three interior joints of four composable group homomorphisms.
pub fn window_report(names: [&str; 3], maps: &[AbHom; 4]) -> ExactnessReport {
    let joints = (0..3).map(|k| JointReport::compare(names[k], &maps[k].image(), &maps[k + 1].kernel())).collect();
    ExactnessReport { joints, recipes_agree: None }
}

/// The window `π₀T → π₀T′ → H¹A → H¹T → H¹T′` for `A = ker(T → T′)`.
pub fn torus_window(a: &QuasiTorusSpec) -> [AbHom; 4] {
    let c = a.complex();
    let m = les_maps(&c, 0);
    let prev = induced_on_tori(&a.source, &a.target, a.map(), 0).expect("equivariant");
    [prev, m.lambda, m.mu, m.partial]
}

pub fn exactness_report_torus(a: &QuasiTorusSpec) -> ExactnessReport {
    window_report(["π₀T′", "H¹A", "H¹T"], &torus_window(a))
}

/// The window `π₀G₂ → π₀G₃ → H¹A → H¹G₂ → H¹G₃` for a central kernel.
pub fn exactness_report_central(seq: &CentralSequence) -> Result<ExactnessReport, StructError> {
    let (g2, g3) = (seq.g2(), seq.g3());
    let (p2, p3) = (pi0(g2)?, pi0(g3)?);
    let (h2, h3) = (h1(g2)?, h1(g3)?);
    let ha = seq.h1_kernel();

    let j0_image: BTreeSet<Vec<Int>> = p2.elements.iter().map(|e| seq.j0(e)).collect();
    let mut delta_kernel = BTreeSet::new();
    let mut delta_image = BTreeSet::new();
    let mut agree = true;
    for e in &p3.elements {
        let d = seq.delta_upsilon(e)?;
        agree &= seq.delta_direct(e)? == d;
        if ha.is_zero(&d) {
            delta_kernel.insert(e.clone());
        }
        delta_image.insert(d);
    }
    let mut i_image = BTreeSet::new();
    let mut i_kernel = BTreeSet::new();
    for a in ha.elements() {
        let k = seq.i_star(&h2, &a)?;
        if k == h2.neutral {
            i_kernel.insert(a.clone());
        }
        i_image.insert(vec![k as Int]);
    }
    let mut j_kernel = BTreeSet::new();
    for k in 0..h2.len() {
        if seq.j_star(&h2, &h3, k)? == h3.neutral {
            j_kernel.insert(vec![k as Int]);
        }
    }
    let joints = vec![
        JointReport::compare("π₀G₃", &j0_image, &delta_kernel),
        JointReport::compare("H¹A", &delta_image, &i_kernel),
        JointReport::compare("H¹G₂", &i_image, &j_kernel),
    ];
    Ok(ExactnessReport { joints, recipes_agree: Some(agree) })
}

/// The neutral labeling `(q, [0])`.
pub fn base_labeling(spec: &GroupSpec) -> ReductiveLabeling {
    ReductiveLabeling { p: spec.q().to_vec(), m_class: vec![0; spec.lattice_chain().m_classes().invariants().len()] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::{connecting, ShortExact};
    use crate::rootdata::catalog;
    use crate::rootdata::cartan::SimpleType;

    fn su2_with(q: Vec<Int>) -> GroupSpec {
        GroupSpec::new(catalog::simply_connected(SimpleType::parse("A1").unwrap()), IMat::identity(1), q).unwrap()
    }

    fn u1_u11_pgl2(q: Vec<Int>) -> GroupSequence {
        GroupSequence::new(
            catalog::torus_compact(1),
            catalog::u2(q.clone()),
            catalog::pgl2_with(q),
            IMat::from_rows(&[[1], [1]]),
            IMat::from_rows(&[[1, -1]]),
            QMat::from_rows(&[[Rat::new(1, 2)], [Rat::new(-1, 2)]]),
        )
        .unwrap()
    }

    #[test]
    fn split_product_is_zero() {
        let g1 = catalog::su2();
        let g3 = catalog::torus_split(1);
        let g2 = catalog::product(&g1, &g3);
        let seq = GroupSequence::new(
            g1,
            g2,
            g3.clone(),
            IMat::from_rows(&[[1], [0]]),
            IMat::from_rows(&[[0, 1]]),
            QMat::from_rows(&[[Rat::from_integer(0)], [Rat::from_integer(1)]]),
        )
        .unwrap();
        let h0 = tate(&fundamental_group(&g3), 0);
        assert_eq!(h0.order(), Some(2));
        for c in h0.elements() {
            let d = delta_z(&seq, &c).unwrap();
            assert!(center_complex(&seq.g1).h0().is_zero(&d.class));
        }
    }

    #[test]
    fn torus_only_matches_connecting() {
        let (g1, g2, g3) = (catalog::torus_compact(1), catalog::torus_weil(), catalog::torus_split(1));
        let i = IMat::from_rows(&[[1], [-1]]);
        let j = IMat::from_rows(&[[1, 1]]);
        let seq = GroupSequence::new(g1.clone(), g2.clone(), g3.clone(), i.clone(), j.clone(), QMat::zeros(2, 1)).unwrap();
        let m = |g: &GroupSpec| GammaModule::free(g.gamma_cochar()).unwrap();
        let ses = ShortExact::new(
            GammaMap::equivariant(m(&g1), m(&g2), i).unwrap(),
            GammaMap::equivariant(m(&g2), m(&g3), j).unwrap(),
        )
        .unwrap();
        let conn = connecting(&ses, 0);
        let target = tate(&m(&g1), 1);
        let mut nonzero = false;
        for c in conn.source.elements() {
            let d = delta_z(&seq, &c).unwrap();
            let got = target.coords(&d.nu1).unwrap();
            assert_eq!(got, conn.apply(&c));
            nonzero |= !target.is_zero(&got);
        }
        assert!(nonzero);
    }

    #[test]
    fn u11_to_pgl2_connecting() {
        let seq = u1_u11_pgl2(vec![1, 1]);
        let central = CentralSequence::new(seq.g2.clone(), seq.g3.clone(), seq.j.clone()).unwrap();
        let h0 = tate(&fundamental_group(&seq.g3), 0);
        let hg1 = h1(&seq.g1).unwrap();
        for c in h0.elements() {
            let d = delta_z(&seq, &c).unwrap();
            let up = central.delta_upsilon(&c).unwrap();
            assert_eq!(up, central.delta_direct(&c).unwrap());
            // (i ν₁, 0) represents the same class of A = U(1)
            let mut v = seq.i.mul_vec(&d.nu1);
            v.extend(vec![0; seq.g3.brd().rank()]);
            assert_eq!(central.h1_kernel().coords(&v).unwrap(), up);
            let nontrivial = !h0.is_zero(&c);
            assert_eq!(delta0(&seq, &hg1, &c).unwrap() != hg1.neutral, nontrivial);
        }
    }

    #[test]
    fn central_windows_are_exact() {
        let cases = [
            (catalog::su2(), catalog::pgl2_compact(), IMat::from_rows(&[[2]])),
            (su2_with(vec![1, 1]), catalog::pgl2_with(vec![1, 1]), IMat::from_rows(&[[2]])),
            (catalog::u2(vec![2, 0]), catalog::pgl2_compact(), IMat::from_rows(&[[1, -1]])),
            (catalog::u2(vec![1, 1]), catalog::pgl2_with(vec![1, 1]), IMat::from_rows(&[[1, -1]])),
        ];
        for (g2, g3, j) in cases {
            let seq = CentralSequence::new(g2, g3, j).unwrap();
            let r = exactness_report_central(&seq).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn sl2_pi0_hits_mu2() {
        let seq = CentralSequence::new(su2_with(vec![1, 1]), catalog::pgl2_with(vec![1, 1]), IMat::from_rows(&[[2]])).unwrap();
        let r = exactness_report_central(&seq).unwrap();
        assert_eq!(r.joints[1].image_size, 2);
    }

    #[test]
    fn torus_windows() {
        let split = QuasiTorusSpec::new(TorusSpec::split(1), TorusSpec::split(1), IMat::from_rows(&[[2]])).unwrap();
        let r = exactness_report_torus(&split);
        assert!(r.passed());
        assert_eq!(r.joints[1].image_size, 2);
        let compact = QuasiTorusSpec::new(TorusSpec::compact(1), TorusSpec::compact(1), IMat::from_rows(&[[2]])).unwrap();
        assert!(exactness_report_torus(&compact).passed());
        let mut maps = torus_window(&split);
        maps[1] = AbHom::zero(maps[1].source.clone(), maps[1].target.clone());
        let bad = window_report(["π₀T′", "H¹A", "H¹T"], &maps);
        assert!(!bad.passed());
        assert!(bad.joints.iter().any(|j| j.witness.is_some()));
    }

    #[test]
    fn rejects_bad_splitting() {
        let e = GroupSequence::new(
            catalog::torus_compact(1),
            catalog::u2(vec![2, 0]),
            catalog::pgl2_compact(),
            IMat::from_rows(&[[1], [1]]),
            IMat::from_rows(&[[1, -1]]),
            QMat::from_rows(&[[Rat::from_integer(1)], [Rat::from_integer(0)]]),
        );
        assert!(matches!(e, Err(StructError::Splitting(_))));
    }
}
