//! Affine diagrams, Kac labelings, reductive labelings and the computation of
//! `H¹(ℝ, G)` as the set of `F₀`-orbits of reductive Kac labelings.
//!
//! Real coordinates: `x(p) ∈ V = X∨ ⊗ ℚ` has barycentric labels `p`, `y(m) = m/2`, and
//! `ν_{p,q,m} = 2(x(p) − x(q)) + m`.

mod diagram;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use diagram::{alcove_volume_times_weyl, build_diagram, AffineDiagram, Factor};

use crate::linalg::{add_q, int_vec_to_rat, rat_vec_to_int, scale_q, sub_q, Int, Rat, Subquotient};
use crate::rootdata::cartan;
use crate::rootdata::GroupSpec;

/// Nonnegative integer labels, one per vertex (vertex order of the diagram).
pub type KacLabeling = Vec<Int>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KacError {
    #[error("restricted root system of factor {factor:?} is not of finite type")]
    NotFiniteType { factor: Vec<usize> },
    #[error("factor {factor:?} has non-integral marks")]
    NonIntegralMarks { factor: Vec<usize> },
    #[error("factor {factor:?}: restricted roots do not form the root system of their Cartan matrix")]
    RootSystemMismatch { factor: Vec<usize> },
    #[error("factor {factor:?}: marks disagree with the affine table")]
    MarkTableMismatch { factor: Vec<usize> },
    #[error("factor {factor:?}: alcove volume times |W| differs from the covolume of the coroot lattice")]
    VolumeMismatch { factor: Vec<usize> },
    #[error("alcove reduction did not terminate within {iterations} steps")]
    ReductionBound { iterations: usize },
    #[error("translated labeling is not integral")]
    NonIntegralLabels,
    #[error("induced vertex map is not a diagram automorphism")]
    NotAutomorphism,
    #[error("factor {factor}: vertex map {found:?} disagrees with the automorphism table")]
    AutomorphismTable { factor: usize, found: Vec<usize> },
    #[error("congruence filter and lattice membership disagree at p = {p:?}, m = {m:?}")]
    CriteriaDisagree { p: Vec<Int>, m: Vec<Int> },
    #[error("weight is not in the restricted weight lattice")]
    NotInP0,
    #[error("vector is not in the required lattice")]
    NotInLattice,
}

/// Enumerates all Kac labelings, canonically ordered: per factor, descending
/// lexicographic; then the cartesian product in factor order.
pub fn enumerate_labelings(d: &AffineDiagram) -> Vec<KacLabeling> {
    let mut out: Vec<KacLabeling> = vec![vec![]];
    for f in d.factors() {
        let r = f.num_vertices();
        let mut local: Vec<Vec<Int>> = Vec::new();
        for i in 0..r {
            let mut p = vec![0; r];
            match f.marks[i] {
                1 => {
                    p[i] = 2;
                    local.push(p.clone());
                    for j in i + 1..r {
                        if f.marks[j] == 1 {
                            let mut p2 = vec![0; r];
                            p2[i] = 1;
                            p2[j] = 1;
                            local.push(p2);
                        }
                    }
                }
                2 => {
                    p[i] = 1;
                    local.push(p);
                }
                _ => {}
            }
        }
        local.sort_by(|a, b| b.cmp(a));
        let mut next = Vec::with_capacity(out.len() * local.len());
        for prefix in &out {
            for l in &local {
                let mut v = prefix.clone();
                v.extend(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `x(p)`.
pub fn kac_point(spec: &GroupSpec, p: &[Int]) -> Vec<Rat> {
    spec.diagram().kac_point(p)
}

/// `⟨λ, p⟩_P = Σ c_β p_β` for `λ ∈ P₀` written as `Σ c_β β̄` (its central part ignored).
pub fn pairing_p(spec: &GroupSpec, lambda: &[Rat], p: &[Int]) -> Result<Rat, KacError> {
    let chain = spec.lattice_chain();
    let lp = chain.proj_der.transpose().mul_vec(lambda);
    if !chain.p0.contains(&lp) {
        return Err(KacError::NotInP0);
    }
    Ok(spec.diagram().pairing(&lp, &int_vec_to_rat(p)))
}

/// `ν_{p,q,m} = 2(x(p) − x(q)) + m`.
pub fn nu(spec: &GroupSpec, p: &[Int], m: &[Rat]) -> Vec<Rat> {
    let d = spec.diagram();
    let diff = sub_q(&d.kac_point(p), &d.kac_point(spec.q()));
    add_q(&scale_q(Rat::from_integer(2), &diff), m)
}

/// The congruences `⟨λ_P,p⟩ + ⟨λ_Λ,m⟩ ≡ ⟨λ_P,q⟩ (mod ℤ)` over generators of `X₀/(Q₀⊕M₀)`.
pub fn congruences_hold(spec: &GroupSpec, p: &[Int], m: &[Rat]) -> bool {
    let chain = spec.lattice_chain();
    let d = spec.diagram();
    let pr = int_vec_to_rat(p);
    let qr = int_vec_to_rat(spec.q());
    chain.congruence_group().generators().iter().all(|lambda| {
        let lp = chain.proj_der.transpose().mul_vec(lambda);
        let ll = chain.proj_s.transpose().mul_vec(lambda);
        let v = d.pairing(&lp, &pr) + crate::linalg::dot_q(&ll, m) - d.pairing(&lp, &qr);
        v.is_integer()
    })
}

/// `ν_{p,q,m} ∈ X₀∨`.
pub fn nu_in_x0(spec: &GroupSpec, p: &[Int], m: &[Rat]) -> bool {
    spec.lattice_chain().x0_dual.contains(&nu(spec, p, m))
}

/// A reductive Kac labeling `(p, [m])`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ReductiveLabeling {
    pub p: KacLabeling,
    /// Smith coordinates of `[m] ∈ M₀∨/2Λ̃₀∨`
    pub m_class: Vec<Int>,
}

impl ReductiveLabeling {
    /// The chosen representative `m ∈ M₀∨`.
    pub fn m(&self, spec: &GroupSpec) -> Vec<Rat> {
        spec.lattice_chain().m_classes().element(&self.m_class)
    }
}

/// A cocycle representative `ν_{p,q,m}(−1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleRep {
    pub labeling: ReductiveLabeling,
    pub nu: Vec<Int>,
    /// `ν mod 2`, the point of `T₀⁽²⁾`
    pub value: Vec<Int>,
}

impl CocycleRep {
    pub fn new(spec: &GroupSpec, labeling: ReductiveLabeling) -> Result<Self, KacError> {
        let v = nu(spec, &labeling.p, &labeling.m(spec));
        let nu = rat_vec_to_int(&v).ok_or(KacError::NotInLattice)?;
        if !spec.lattice_chain().x0_dual.contains(&v) {
            return Err(KacError::NotInLattice);
        }
        let value = nu.iter().map(|x| x.rem_euclid(2)).collect();
        Ok(CocycleRep { labeling, nu, value })
    }

    /// `v·γ(v) = 1` in `X∨/2X∨` (with `γ = −τ∨`), and `v² = 1`.
    pub fn satisfies_cocycle_identity(&self, spec: &GroupSpec) -> bool {
        let g = spec.gamma_cochar().mul_vec(&self.value);
        let sum_ok = g.iter().zip(&self.value).all(|(a, b)| (a + b).rem_euclid(2) == 0);
        let square_ok = self.value.iter().all(|x| (2 * x).rem_euclid(2) == 0);
        sum_ok && square_ok
    }
}

/// All reductive labelings; the congruence filter and the membership `ν ∈ X₀∨` are both
/// evaluated and must agree.
pub fn reductive_labelings(spec: &GroupSpec) -> Result<Vec<ReductiveLabeling>, KacError> {
    let mc = spec.lattice_chain().m_classes();
    let mut out = Vec::new();
    for p in enumerate_labelings(spec.diagram()) {
        for c in mc.elements() {
            let m = mc.element(&c);
            let a = congruences_hold(spec, &p, &m);
            let b = nu_in_x0(spec, &p, &m);
            if a != b {
                return Err(KacError::CriteriaDisagree { p, m: c });
            }
            if a {
                out.push(ReductiveLabeling { p: p.clone(), m_class: c });
            }
        }
    }
    Ok(out)
}

/// Translates `x(p)` by `ν ∈ P̃₀∨` and reduces back into the alcove.
pub fn diagram_action(spec: &GroupSpec, nu0: &[Rat], p: &[Int]) -> Result<KacLabeling, KacError> {
    let d = spec.diagram();
    let y = d.reduce(&add_q(&d.kac_point(p), nu0))?;
    rat_vec_to_int(&d.labels_of(&y)).ok_or(KacError::NonIntegralLabels)
}

/// The vertex permutation `σ` induced by translation by `ν ∈ P̃₀∨`
/// (`p′_{σ(i)} = p_i`), checked to be an automorphism and, on untwisted factors,
/// against the table of special automorphisms.
pub fn vertex_permutation(spec: &GroupSpec, nu0: &[Rat]) -> Result<Vec<usize>, KacError> {
    let d = spec.diagram();
    let mut generic = Vec::new();
    for f in d.factors() {
        let s: Int = f.marks.iter().enumerate().map(|(j, m)| m * (j as Int + 1)).sum();
        generic.extend((0..f.num_vertices()).map(|i| Rat::new(2 * (i as Int + 1), s)));
    }
    let y = d.reduce(&add_q(&d.kac_point_rat(&generic), nu0))?;
    let labels = d.labels_of(&y);
    let mut sigma = vec![usize::MAX; generic.len()];
    for (k, f) in d.factors().iter().enumerate() {
        let off = d.offset(k);
        for i in 0..f.num_vertices() {
            let j = (0..f.num_vertices()).find(|&j| labels[off + j] == generic[off + i]).ok_or(KacError::NotAutomorphism)?;
            sigma[off + i] = off + j;
        }
    }
    if !d.is_automorphism(&sigma) {
        return Err(KacError::NotAutomorphism);
    }
    for (k, f) in d.factors().iter().enumerate() {
        if f.twisted {
            continue;
        }
        let off = d.offset(k);
        let local: Vec<usize> = (0..f.num_vertices()).map(|i| sigma[off + i] - off).collect();
        // vertex ↦ Bourbaki index
        let mut to_b = vec![0; f.num_vertices()];
        for (b, &v) in f.bourbaki.iter().enumerate() {
            to_b[v + 1] = b + 1;
        }
        let j = to_b[local[0]];
        let ok = if j == 0 {
            local.iter().enumerate().all(|(i, &s)| i == s)
        } else {
            match cartan::special_automorphisms(f.restricted_type).into_iter().find(|(jj, _)| *jj == j) {
                Some((_, table)) => (0..f.num_vertices()).all(|v| table[to_b[v]] == to_b[local[v]]),
                None => false,
            }
        };
        if !ok {
            return Err(KacError::AutomorphismTable { factor: k, found: local });
        }
    }
    Ok(sigma)
}

/// `F₀` with representatives `ν ∈ X̃₀∨` of its generators.
#[derive(Clone, Debug)]
pub struct F0Group {
    pub group: Subquotient,
}

impl F0Group {
    pub fn invariants(&self) -> &[Int] {
        self.group.invariants()
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        self.group.generators()
    }

    pub fn order(&self) -> Int {
        self.group.order().expect("F₀ is finite")
    }
}

pub fn f0_group(spec: &GroupSpec) -> F0Group {
    F0Group { group: spec.lattice_chain().f0() }
}

/// Action of `f ∈ X̃₀∨` on `(p, [m])`: `p ↦ reduce(x(p) + f_P)`, `[m] ↦ [m + 2 f_M]`.
pub fn f0_apply(spec: &GroupSpec, f: &[Rat], lab: &ReductiveLabeling) -> Result<ReductiveLabeling, KacError> {
    let chain = spec.lattice_chain();
    let (fp, fm) = chain.split(f);
    let p = diagram_action(spec, &fp, &lab.p)?;
    let mc = chain.m_classes();
    let m = add_q(&lab.m(spec), &scale_q(Rat::from_integer(2), &fm));
    let m_class = mc.coords(&m).ok_or(KacError::NotInLattice)?;
    Ok(ReductiveLabeling { p, m_class })
}

/// The action of each `F₀` generator as a permutation of the given labelings.
pub fn f0_permutations(spec: &GroupSpec, labs: &[ReductiveLabeling]) -> Result<Vec<Vec<Option<usize>>>, KacError> {
    let index: BTreeMap<&ReductiveLabeling, usize> = labs.iter().enumerate().map(|(i, l)| (l, i)).collect();
    f0_group(spec)
        .generators()
        .iter()
        .map(|g| labs.iter().map(|l| Ok(index.get(&f0_apply(spec, g, l)?).copied())).collect())
        .collect()
}

/// One class of `H¹(ℝ, G)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H1Class {
    pub rep: CocycleRep,
    pub orbit: Vec<ReductiveLabeling>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H1 {
    pub classes: Vec<H1Class>,
    /// index of the class of `(q, [0])`
    pub neutral: usize,
}

impl H1 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing a reductive labeling.
    pub fn class_of(&self, lab: &ReductiveLabeling) -> Option<usize> {
        self.classes.iter().position(|c| c.orbit.contains(lab))
    }
}

/// Orbits of a set of labelings under `F₀`; the set must be `F₀`-stable.
pub fn f0_orbits(spec: &GroupSpec, labs: &[ReductiveLabeling]) -> Result<Vec<Vec<ReductiveLabeling>>, KacError> {
    orbits_within(spec, labs)
}

/// `F₀`-orbits of all pairs `(p, [m]) ∈ K(D̃) × M₀∨/2Λ̃₀∨`, reductive or not.
pub fn all_pair_orbits(spec: &GroupSpec) -> Result<Vec<Vec<ReductiveLabeling>>, KacError> {
    let mc = spec.lattice_chain().m_classes();
    let mut all = Vec::new();
    for p in enumerate_labelings(spec.diagram()) {
        for c in mc.elements() {
            all.push(ReductiveLabeling { p: p.clone(), m_class: c });
        }
    }
    orbits_within(spec, &all)
}

fn orbits_within(spec: &GroupSpec, labs: &[ReductiveLabeling]) -> Result<Vec<Vec<ReductiveLabeling>>, KacError> {
    let gens: Vec<Vec<Rat>> = f0_group(spec).generators().to_vec();
    let all: BTreeSet<&ReductiveLabeling> = labs.iter().collect();
    let mut seen: BTreeSet<ReductiveLabeling> = BTreeSet::new();
    let mut orbits = Vec::new();
    for l in labs {
        if seen.contains(l) {
            continue;
        }
        let mut orbit = BTreeSet::from([l.clone()]);
        let mut queue = VecDeque::from([l.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = f0_apply(spec, g, &x)?;
                if !all.contains(&y) {
                    return Err(KacError::NotInLattice);
                }
                if orbit.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits.sort();
    Ok(orbits)
}

/// `H¹(ℝ, G) ≅ K(D̃, Λ, X, τ, q)/F₀`, with the lexicographically least member of each
/// orbit as representative.
pub fn h1(spec: &GroupSpec) -> Result<H1, KacError> {
    let labs = reductive_labelings(spec)?;
    let orbits = f0_orbits(spec, &labs)?;
    let base = ReductiveLabeling { p: spec.q().to_vec(), m_class: vec![0; spec.lattice_chain().m_classes().invariants().len()] };
    let mut classes = Vec::new();
    for orbit in orbits {
        let rep = CocycleRep::new(spec, orbit[0].clone())?;
        classes.push(H1Class { rep, orbit });
    }
    let neutral = classes.iter().position(|c| c.orbit.contains(&base)).ok_or(KacError::NotInLattice)?;
    Ok(H1 { classes, neutral })
}
