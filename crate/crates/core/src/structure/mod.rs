//! Functoriality, twisting, the action of `Ĥ¹Z(G)`, abelianization, and connecting maps
//! of short exact sequences.

mod sequence;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gmod::{tate, FinAbGroup};
use crate::kac::{diagram_action, h1, nu_in_x0, CocycleRep, KacError, ReductiveLabeling, H1};
use crate::linalg::{add_q, int_vec_to_rat, kernel, IMat, Int, Lattice, QMat, Rat};
use crate::rootdata::{fundamental_group, GroupSpec, SpecError};

pub use sequence::{
    base_labeling, center_complex, delta0, delta_z, exactness_report_central, exactness_report_torus, torus_window, window_report, CenterComplex,
    CentralSequence, DeltaZ, ExactnessReport, GroupSequence, JointReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructError {
    #[error("map shape {rows}×{cols} does not match ranks {target}×{domain}")]
    Shape { rows: usize, cols: usize, target: usize, domain: usize },
    #[error("map does not commute with τ∨")]
    NotEquivariant,
    #[error("simple coroot {coroot} is sent neither to zero nor to a simple coroot")]
    CorootNotMapped { coroot: usize },
    #[error("factor {factor} is neither killed nor mapped isomorphically onto a factor")]
    FactorNotMapped { factor: usize },
    #[error("marks of factor {factor} differ from those of its image")]
    MarksMismatch { factor: usize },
    #[error("base labelings differ on the image diagram at vertex {vertex}")]
    LabelingMismatch { vertex: usize },
    #[error("central torus is not mapped into the central torus")]
    CenterNotCentral,
    #[error("labeling is not reductive for the base labeling")]
    NotReductive,
    #[error("center cocycle condition fails")]
    InvalidCenterCocycle,
    #[error("pushed-forward cocycle differs from the image of the source cocycle")]
    PushforwardMismatch,
    #[error("twist translation is not a bijection of class sets")]
    TwistNotBijective,
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("sequence: {0}")]
    Sequence(&'static str),
    #[error("splitting: {0}")]
    Splitting(&'static str),
    #[error(transparent)]
    Kac(#[from] KacError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// A normal homomorphism on cocharacters. Each simple factor of the source is killed or
/// mapped isomorphically onto a factor of the target.
#[derive(Clone, Debug)]
pub struct NormalHom {
    source: GroupSpec,
    target: GroupSpec,
    map: IMat,
    /// source vertex ↦ target vertex on the image diagram
    vertex_map: Vec<Option<usize>>,
}

impl NormalHom {
    pub fn new(source: GroupSpec, target: GroupSpec, map: IMat) -> Result<Self, StructError> {
        let (ns, nt) = (source.brd().rank(), target.brd().rank());
        if map.rows() != nt || map.cols() != ns {
            return Err(StructError::Shape { rows: map.rows(), cols: map.cols(), target: nt, domain: ns });
        }
        if target.tau_cochar().mul(&map) != map.mul(&source.tau_cochar()) {
            return Err(StructError::NotEquivariant);
        }
        let tco = target.brd().simple_coroots();
        let mut root_map = Vec::new();
        for (i, c) in source.brd().simple_coroots().iter().enumerate() {
            let img = map.mul_vec(c);
            if img.iter().all(|&x| x == 0) {
                root_map.push(None);
            } else {
                let t = tco.iter().position(|d| *d == img).ok_or(StructError::CorootNotMapped { coroot: i })?;
                root_map.push(Some(t));
            }
        }
        let (ds, dt) = (source.diagram(), target.diagram());
        let mut vertex_map = vec![None; ds.num_vertices()];
        let mut used = BTreeSet::new();
        for (k, f) in ds.factors().iter().enumerate() {
            let members: Vec<usize> = f.orbits.iter().flatten().copied().collect();
            if members.iter().all(|&i| root_map[i].is_none()) {
                continue;
            }
            let bad = StructError::FactorNotMapped { factor: k };
            let first = root_map[f.orbits[0][0]].ok_or(bad.clone())?;
            let kt = dt.factors().iter().position(|g| g.orbits.iter().flatten().any(|&i| i == first)).ok_or(bad.clone())?;
            let g = &dt.factors()[kt];
            if g.orbits.len() != f.orbits.len() || !used.insert(kt) {
                return Err(bad);
            }
            let (off_s, off_t) = (ds.offset(k), dt.offset(kt));
            vertex_map[off_s] = Some(off_t);
            for (a, o) in f.orbits.iter().enumerate() {
                let imgs: Vec<usize> = o.iter().map(|&i| root_map[i].ok_or(bad.clone())).collect::<Result<_, _>>()?;
                let b = g.orbits.iter().position(|go| go.contains(&imgs[0])).ok_or(bad.clone())?;
                let mut sorted = imgs.clone();
                sorted.sort();
                let mut target_orbit = g.orbits[b].clone();
                target_orbit.sort();
                if sorted != target_orbit {
                    return Err(bad);
                }
                vertex_map[off_s + a + 1] = Some(off_t + b + 1);
            }
            for v in 0..f.num_vertices() {
                let t = vertex_map[off_s + v].expect("filled") - off_t;
                if f.marks[v] != g.marks[t] {
                    return Err(StructError::MarksMismatch { factor: k });
                }
            }
        }
        for (v, t) in vertex_map.iter().enumerate() {
            if let Some(t) = t {
                if source.q()[v] != target.q()[*t] {
                    return Err(StructError::LabelingMismatch { vertex: v });
                }
            }
        }
        let mq = map.to_qmat();
        let tc = target.lattice_chain();
        for v in &source.lattice_chain().v_s {
            if tc.proj_der.mul_vec(&mq.mul_vec(v)).iter().any(|x| *x != Rat::from_integer(0)) {
                return Err(StructError::CenterNotCentral);
            }
        }
        Ok(NormalHom { source, target, map, vertex_map })
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        Self::new(spec.clone(), spec.clone(), IMat::identity(spec.brd().rank())).expect("identity is normal")
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn map(&self) -> &IMat {
        &self.map
    }

    pub fn vertex_map(&self) -> &[Option<usize>] {
        &self.vertex_map
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &NormalHom) -> Result<NormalHom, StructError> {
        if self.target != after.source {
            return Err(StructError::NotComposable);
        }
        NormalHom::new(self.source.clone(), after.target.clone(), after.map.mul(&self.map))
    }
}

/// `(p′, [m′]) ↦ (p″, [m″])`: `p″` is `p′` on the image diagram and `q″` elsewhere,
/// `m″` is the central part of `φ(m′)`. The identity `φ(ν′(−1)) = ν″(−1)` is checked.
pub fn pushforward(h: &NormalHom, rep: &CocycleRep) -> Result<CocycleRep, StructError> {
    let t = &h.target;
    let mut p = t.q().to_vec();
    for (v, img) in h.vertex_map.iter().enumerate() {
        if let Some(w) = img {
            p[*w] = rep.labeling.p[v];
        }
    }
    let mq = h.map.to_qmat();
    let tc = t.lattice_chain();
    let m = tc.proj_s.mul_vec(&mq.mul_vec(&rep.labeling.m(&h.source)));
    let m_class = tc.m_classes().coords(&m).ok_or(StructError::NotReductive)?;
    let out = CocycleRep::new(t, ReductiveLabeling { p, m_class }).map_err(|_| StructError::NotReductive)?;
    let image = h.map.mul_vec(&rep.nu);
    if image.iter().zip(&out.nu).any(|(a, b)| (a - b).rem_euclid(2) != 0) {
        return Err(StructError::PushforwardMismatch);
    }
    Ok(out)
}

/// The rebased spec and the bijection `H¹(G_{q′}) → H¹(G_q)`, `[p″,[m″]] ↦ [p″,[m″+m′]]`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub spec: GroupSpec,
    pub shift: ReductiveLabeling,
    pub source: H1,
    pub target: H1,
    /// class index in `source` ↦ class index in `target`
    pub map: Vec<usize>,
}

/// Translates a labeling of the rebased spec into one for the original base.
pub fn twist_labeling(spec: &GroupSpec, a: &ReductiveLabeling, lab: &ReductiveLabeling) -> Result<ReductiveLabeling, StructError> {
    let mc = spec.lattice_chain().m_classes();
    let m = add_q(&lab.m(spec), &a.m(spec));
    Ok(ReductiveLabeling { p: lab.p.clone(), m_class: mc.coords(&m).ok_or(StructError::NotReductive)? })
}

/// The labeling `(q, [−m′])`, which twists back.
pub fn twist_inverse_shift(spec: &GroupSpec, a: &ReductiveLabeling) -> ReductiveLabeling {
    let mc = spec.lattice_chain().m_classes();
    let neg: Vec<Rat> = a.m(spec).iter().map(|x| -x).collect();
    ReductiveLabeling { p: spec.q().to_vec(), m_class: mc.coords(&neg).expect("M₀∨ is a group") }
}

pub fn twist(spec: &GroupSpec, a: &ReductiveLabeling) -> Result<Twist, StructError> {
    if !nu_in_x0(spec, &a.p, &a.m(spec)) {
        return Err(StructError::NotReductive);
    }
    let rebased = spec.with_q(a.p.clone())?;
    let source = h1(&rebased)?;
    let target = h1(spec)?;
    let mut map = Vec::new();
    for c in &source.classes {
        let img = twist_labeling(spec, a, &c.rep.labeling)?;
        map.push(target.class_of(&img).ok_or(StructError::TwistNotBijective)?);
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() || map.len() != target.len() {
        return Err(StructError::TwistNotBijective);
    }
    Ok(Twist { spec: rebased, shift: a.clone(), source, target, map })
}

/// A cocycle `z = Exp(ıν_P)·Exp_S(ıν_M/2)` of the center, `ν_P ∈ P∨`, `ν_M ∈ M₀∨`,
/// with `ν_P + τν_P + ν_M ∈ X₀∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCocycle {
    pub nu_p: Vec<Rat>,
    pub nu_m: Vec<Rat>,
}

impl CenterCocycle {
    pub fn new(spec: &GroupSpec, nu_p: Vec<Rat>, nu_m: Vec<Rat>) -> Result<Self, StructError> {
        let z = CenterCocycle { nu_p, nu_m };
        if z.is_valid(spec) {
            Ok(z)
        } else {
            Err(StructError::InvalidCenterCocycle)
        }
    }

    pub fn trivial(spec: &GroupSpec) -> Self {
        let n = spec.brd().rank();
        CenterCocycle { nu_p: vec![Rat::from_integer(0); n], nu_m: vec![Rat::from_integer(0); n] }
    }

    pub fn is_valid(&self, spec: &GroupSpec) -> bool {
        let c = spec.lattice_chain();
        let n = c.n;
        if self.nu_p.len() != n || self.nu_m.len() != n {
            return false;
        }
        if !c.p_dual.contains(&self.nu_p) || !c.m0_dual.contains(&self.nu_m) {
            return false;
        }
        let s = add_q(&add_q(&self.nu_p, &c.tau_c.mul_vec(&self.nu_p)), &self.nu_m);
        c.x0_dual.contains(&s)
    }

    /// The product `z₁z₂`.
    pub fn compose(&self, other: &CenterCocycle) -> CenterCocycle {
        CenterCocycle { nu_p: add_q(&self.nu_p, &other.nu_p), nu_m: add_q(&self.nu_m, &other.nu_m) }
    }

    /// From a hypercocycle `(ν, ν′) ∈ Z⁰(X∨ → P∨)`: `ν_P = −ν′`, `ν_M = proj_S ν`.
    pub fn from_hyper(spec: &GroupSpec, nu: &[Int], nu_ad: &[Rat]) -> Result<Self, StructError> {
        let c = spec.lattice_chain();
        let nu_p = nu_ad.iter().map(|x| -x).collect();
        let nu_m = c.proj_s.mul_vec(&int_vec_to_rat(nu));
        Self::new(spec, nu_p, nu_m)
    }
}

/// A basis of the lattice of center cocycles `(ν_P, ν_M)`.
pub fn center_cocycle_basis(spec: &GroupSpec) -> Vec<CenterCocycle> {
    let c = spec.lattice_chain();
    let n = c.n;
    let bp = c.p_dual.basis();
    let bm = c.m0_dual.basis();
    let (r, s) = (bp.len(), bm.len());
    let one_plus_tau = QMat::identity(n).add(&c.tau_c);
    let mut cols: Vec<Vec<Rat>> = bp.iter().map(|b| one_plus_tau.mul_vec(b)).collect();
    cols.extend(bm.iter().cloned());
    if cols.is_empty() {
        return vec![];
    }
    let a = QMat::from_cols(n, &cols);
    let d = a.denominator();
    let ai = a.scale(Rat::from_integer(d)).to_imat().expect("cleared denominators");
    // y ↦ A y integral ⟺ (A·d) y ∈ dℤⁿ
    let big = ai.hstack(&IMat::scalar(n, d));
    let ker = kernel(&big);
    let gens: Vec<Vec<Int>> = ker.col_vecs().iter().map(|v| v[..r + s].to_vec()).collect();
    let lat = Lattice::from_int_gens(r + s, &gens);
    lat.basis()
        .iter()
        .map(|y| {
            let mut nu_p = vec![Rat::from_integer(0); n];
            let mut nu_m = vec![Rat::from_integer(0); n];
            for (k, coef) in y.iter().enumerate() {
                let (dst, src) = if k < r { (&mut nu_p, &bp[k]) } else { (&mut nu_m, &bm[k - r]) };
                for (x, b) in dst.iter_mut().zip(src) {
                    *x += coef * b;
                }
            }
            CenterCocycle { nu_p, nu_m }
        })
        .collect()
}

/// `z·(p, [m]) = (σ(ν_P)(p), [m + ν_M])`.
pub fn center_act(spec: &GroupSpec, z: &CenterCocycle, lab: &ReductiveLabeling) -> Result<ReductiveLabeling, StructError> {
    if !z.is_valid(spec) {
        return Err(StructError::InvalidCenterCocycle);
    }
    let c = spec.lattice_chain();
    let p = diagram_action(spec, &c.avg_c.mul_vec(&z.nu_p), &lab.p)?;
    let m = add_q(&lab.m(spec), &z.nu_m);
    let m_class = c.m_classes().coords(&m).ok_or(StructError::NotReductive)?;
    let out = ReductiveLabeling { p, m_class };
    if !nu_in_x0(spec, &out.p, &out.m(spec)) {
        return Err(StructError::NotReductive);
    }
    Ok(out)
}

pub fn center_act_rep(spec: &GroupSpec, z: &CenterCocycle, rep: &CocycleRep) -> Result<CocycleRep, StructError> {
    Ok(CocycleRep::new(spec, center_act(spec, z, &rep.labeling)?)?)
}

/// The action on class indices of `H¹`.
pub fn center_act_class(spec: &GroupSpec, h: &H1, z: &CenterCocycle, class: usize) -> Result<usize, StructError> {
    let lab = center_act(spec, z, &h.classes[class].rep.labeling)?;
    h.class_of(&lab).ok_or(StructError::NotReductive)
}

/// `Ĥ¹π₁G`.
pub fn ab1_group(spec: &GroupSpec) -> FinAbGroup {
    tate(&fundamental_group(spec), 1)
}

/// `λ(p, [m]) = [ν_{p,q,m} + Q∨] ∈ Ĥ¹π₁G`.
pub fn ab1(spec: &GroupSpec, rep: &CocycleRep) -> Result<Vec<Int>, StructError> {
    ab1_group(spec).coords(&rep.nu).ok_or(StructError::NotReductive)
}
