//! Based root data, real-form specifications `(datum, τ, q)` and their lattice chains.
//!
//! Coordinates: `X = ℤⁿ` (characters, stored as functionals) and `X∨ = ℤⁿ`
//! (cocharacters); the pairing is the dot product. `τ` is given on `X`; on `X∨` it acts
//! by the transpose. The compact torus has `γ = −τ∨` on `X∨`.

pub mod cartan;
pub mod catalog;
mod chain;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::One;
use thiserror::Error;

pub use cartan::{Family, SimpleType};
pub use chain::{ChainCheck, LatticeChain};

use crate::gmod::GammaModule;
use crate::kac::{self, AffineDiagram, KacError};
use crate::linalg::{dot_i, IMat, Int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("{roots} simple roots but {coroots} simple coroots")]
    RootCountMismatch { roots: usize, coroots: usize },
    #[error("vector {index} has length {len}, expected {rank}")]
    RootDimension { index: usize, len: usize, rank: usize },
    #[error("pairing matrix is not a generalized Cartan matrix at ({i}, {j})")]
    NotCartan { i: usize, j: usize },
    #[error("Dynkin component {component:?} is not of finite type")]
    NotFiniteType { component: Vec<usize> },
    #[error("τ has shape {rows}×{cols}, expected {rank}×{rank}")]
    TauShape { rows: usize, cols: usize, rank: usize },
    #[error("τ is not an involution")]
    TauNotInvolution,
    #[error("τ does not map simple root {root} to a simple root")]
    TauNotPermutingRoots { root: usize },
    #[error("τ∨ does not map simple coroot {root} to the matching simple coroot")]
    TauNotPermutingCoroots { root: usize },
    #[error("affine diagram: {0}")]
    Diagram(#[from] KacError),
    #[error("labeling has {got} entries, the diagram has {expected} vertices")]
    LabelingLength { expected: usize, got: usize },
    #[error("labeling has a negative entry at vertex {vertex}")]
    LabelingNegative { vertex: usize },
    #[error("component {component}: Σ m·p = {sum}, expected 2")]
    LabelingSum { component: usize, sum: Int },
    #[error("t_θ² is not central: simple root {root} takes a non-integral value on 2x(q)")]
    NotCentral { root: usize },
}

/// A based root datum with `X = ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    n: usize,
    roots: Vec<Vec<Int>>,
    coroots: Vec<Vec<Int>>,
    cartan: IMat,
    sym: Vec<Int>,
    pos_coeffs: Vec<Vec<Int>>,
    pos_roots: Vec<Vec<Int>>,
    pos_coroots: Vec<Vec<Int>>,
}

impl BasedRootDatum {
    /// `roots[i]` is `α_i ∈ X`, `coroots[i]` is `α_i∨ ∈ X∨`.
    pub fn new(n: usize, roots: Vec<Vec<Int>>, coroots: Vec<Vec<Int>>) -> Result<Self, SpecError> {
        let l = roots.len();
        if coroots.len() != l {
            return Err(SpecError::RootCountMismatch { roots: l, coroots: coroots.len() });
        }
        for (index, v) in roots.iter().chain(&coroots).enumerate() {
            if v.len() != n {
                return Err(SpecError::RootDimension { index: index % l.max(1), len: v.len(), rank: n });
            }
        }
        let mut cartan = IMat::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                cartan[(i, j)] = dot_i(&coroots[i], &roots[j]);
            }
        }
        for i in 0..l {
            if cartan[(i, i)] != 2 {
                return Err(SpecError::NotCartan { i, j: i });
            }
            for j in 0..l {
                if i != j && (cartan[(i, j)] > 0 || (cartan[(i, j)] == 0) != (cartan[(j, i)] == 0)) {
                    return Err(SpecError::NotCartan { i, j });
                }
            }
        }
        let sym = symmetrizer(&cartan).ok_or(SpecError::NotCartan { i: 0, j: 0 })?;
        for comp in cartan::components(&cartan) {
            let sub = IMat::from_rows(&comp.iter().map(|&i| comp.iter().map(|&j| cartan[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>());
            if cartan::identify(&sub).is_none() {
                return Err(SpecError::NotFiniteType { component: comp });
            }
        }
        let pos_coeffs = positive_root_coefficients(&cartan);
        let mut pos_roots = Vec::new();
        let mut pos_coroots = Vec::new();
        for c in &pos_coeffs {
            let mut r = vec![0; n];
            for (j, &cj) in c.iter().enumerate() {
                for k in 0..n {
                    r[k] += cj * roots[j][k];
                }
            }
            // (β,β)/2 in units where (α_i,α_i)/2 = d_i
            let mut norm = 0;
            for i in 0..l {
                for j in 0..l {
                    norm += c[i] * c[j] * sym[i] * cartan[(i, j)];
                }
            }
            let d_beta = norm / 2;
            let mut cr = vec![0; n];
            for (j, &cj) in c.iter().enumerate() {
                let num = cj * sym[j];
                debug_assert_eq!(num % d_beta, 0);
                for k in 0..n {
                    cr[k] += num / d_beta * coroots[j][k];
                }
            }
            pos_roots.push(r);
            pos_coroots.push(cr);
        }
        Ok(BasedRootDatum { n, roots, coroots, cartan, sym, pos_coeffs, pos_roots, pos_coroots })
    }

    /// A torus of rank `n` (no roots).
    pub fn torus(n: usize) -> Self {
        BasedRootDatum::new(n, vec![], vec![]).expect("empty datum")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn semisimple_rank(&self) -> usize {
        self.roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<Int>] {
        &self.roots
    }

    pub fn simple_coroots(&self) -> &[Vec<Int>] {
        &self.coroots
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// `d_i` with `d_i a_ij` symmetric, minimal positive per component.
    pub fn symmetrizer(&self) -> &[Int] {
        &self.sym
    }

    /// Positive roots as coefficient vectors over the simple roots, by height.
    pub fn positive_root_coefficients(&self) -> &[Vec<Int>] {
        &self.pos_coeffs
    }

    pub fn positive_roots(&self) -> &[Vec<Int>] {
        &self.pos_roots
    }

    /// `positive_coroots()[k]` is the coroot of `positive_roots()[k]`.
    pub fn positive_coroots(&self) -> &[Vec<Int>] {
        &self.pos_coroots
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        cartan::components(&self.cartan)
    }

    /// Simple reflection `s_i` on a cocharacter.
    pub fn reflect_cochar(&self, i: usize, v: &[Int]) -> Vec<Int> {
        let a = dot_i(&self.roots[i], v);
        v.iter().zip(&self.coroots[i]).map(|(x, c)| x - a * c).collect()
    }
}

fn symmetrizer(a: &IMat) -> Option<Vec<Int>> {
    let l = a.rows();
    let mut d: Vec<Option<Rat>> = vec![None; l];
    for comp in cartan::components(a) {
        d[comp[0]] = Some(Rat::one());
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            let di = d[i]?;
            for j in 0..l {
                if j == i || a[(i, j)] == 0 {
                    continue;
                }
                let dj = di * Rat::new(a[(i, j)], a[(j, i)]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(x) if x != dj => return None,
                    _ => {}
                }
            }
        }
        let den = comp.iter().fold(1 as Int, |acc, &i| num_integer::lcm(acc, *d[i].unwrap().denom()));
        let g = comp.iter().fold(0 as Int, |acc, &i| num_integer::gcd(acc, (d[i].unwrap() * Rat::from_integer(den)).to_integer()));
        for &i in &comp {
            d[i] = Some(d[i].unwrap() * Rat::from_integer(den) / Rat::from_integer(g));
        }
    }
    d.into_iter().map(|x| x.map(|r| r.to_integer()).filter(|v| *v > 0)).collect()
}

/// Positive roots of a finite-type Cartan matrix as coefficient vectors, by height.
pub fn positive_roots_of(a: &IMat) -> Vec<Vec<Int>> {
    positive_root_coefficients(a)
}

/// Root-string closure from the simple roots; coefficient vectors sorted by height.
fn positive_root_coefficients(a: &IMat) -> Vec<Vec<Int>> {
    let l = a.rows();
    let mut all: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut level: Vec<Vec<Int>> = (0..l)
        .map(|i| (0..l).map(|j| Int::from(i == j)).collect())
        .collect();
    let mut out = Vec::new();
    while !level.is_empty() {
        level.sort();
        for r in &level {
            all.insert(r.clone());
        }
        out.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for r in &level {
            for i in 0..l {
                let pairing: Int = (0..l).map(|j| r[j] * a[(i, j)]).sum();
                let mut p = 0;
                let mut s = r.clone();
                loop {
                    s[i] -= 1;
                    if all.contains(&s) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        level = next.into_iter().collect();
    }
    out
}

/// A real form given by a based root datum, an involution `τ` of it and a Kac labeling
/// `q` of the affine diagram built from `(datum, τ)`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    brd: BasedRootDatum,
    tau: IMat,
    q: Vec<Int>,
    perm: Vec<usize>,
    diagram: AffineDiagram,
    chain: LatticeChain,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.brd == other.brd && self.tau == other.tau && self.q == other.q
    }
}

/// All failures of [`validate`], in the order found.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub errors: Vec<SpecError>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Checks `τ` against the datum; returns the induced permutation of simple roots.
fn check_tau(brd: &BasedRootDatum, tau: &IMat, errors: &mut Vec<SpecError>) -> Option<Vec<usize>> {
    let n = brd.rank();
    if tau.rows() != n || tau.cols() != n {
        errors.push(SpecError::TauShape { rows: tau.rows(), cols: tau.cols(), rank: n });
        return None;
    }
    if !tau.mul(tau).is_identity() {
        errors.push(SpecError::TauNotInvolution);
    }
    let tau_c = tau.transpose();
    let index: BTreeMap<&Vec<Int>, usize> = brd.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut perm = Vec::new();
    let mut ok = true;
    for (i, r) in brd.roots.iter().enumerate() {
        match index.get(&tau.mul_vec(r)) {
            Some(&j) => {
                if tau_c.mul_vec(&brd.coroots[i]) != brd.coroots[j] {
                    errors.push(SpecError::TauNotPermutingCoroots { root: i });
                    ok = false;
                }
                perm.push(j);
            }
            None => {
                errors.push(SpecError::TauNotPermutingRoots { root: i });
                ok = false;
            }
        }
    }
    ok.then_some(perm)
}

/// Checks `q` against a diagram (length, sign, per-component sum, centrality of `t_θ²`).
pub fn check_labeling(diagram: &AffineDiagram, q: &[Int]) -> Vec<SpecError> {
    let mut errors = Vec::new();
    if q.len() != diagram.num_vertices() {
        errors.push(SpecError::LabelingLength { expected: diagram.num_vertices(), got: q.len() });
        return errors;
    }
    if let Some(vertex) = q.iter().position(|&x| x < 0) {
        errors.push(SpecError::LabelingNegative { vertex });
    }
    for (component, f) in diagram.factors().iter().enumerate() {
        let off = diagram.offset(component);
        let sum: Int = f.marks.iter().enumerate().map(|(i, m)| m * q[off + i]).sum();
        if sum != 2 {
            errors.push(SpecError::LabelingSum { component, sum });
        }
    }
    errors
}

/// Validates every invariant and itemizes the failures.
pub fn validate(brd: &BasedRootDatum, tau: &IMat, q: &[Int]) -> ValidationReport {
    let mut errors = Vec::new();
    let Some(perm) = check_tau(brd, tau, &mut errors) else {
        return ValidationReport { errors };
    };
    if !errors.is_empty() {
        return ValidationReport { errors };
    }
    let diagram = match kac::build_diagram(brd, tau, &perm) {
        Ok(d) => d,
        Err(e) => {
            errors.push(e.into());
            return ValidationReport { errors };
        }
    };
    errors.extend(check_labeling(&diagram, q));
    if errors.is_empty() {
        let x = diagram.kac_point(q);
        for (root, r) in brd.simple_roots().iter().enumerate() {
            let v: Rat = r.iter().zip(&x).map(|(a, b)| Rat::from_integer(*a) * b).sum::<Rat>() * Rat::from_integer(2);
            if !v.is_integer() {
                errors.push(SpecError::NotCentral { root });
            }
        }
    }
    ValidationReport { errors }
}

impl GroupSpec {
    pub fn new(brd: BasedRootDatum, tau: IMat, q: Vec<Int>) -> Result<Self, SpecError> {
        let report = validate(&brd, &tau, &q);
        if let Some(e) = report.errors.into_iter().next() {
            return Err(e);
        }
        let mut errors = Vec::new();
        let perm = check_tau(&brd, &tau, &mut errors).expect("validated");
        let diagram = kac::build_diagram(&brd, &tau, &perm)?;
        let chain = LatticeChain::new(&brd, &tau);
        Ok(GroupSpec { brd, tau, q, perm, diagram, chain })
    }

    /// The same group with base labeling `q` replaced.
    pub fn with_q(&self, q: Vec<Int>) -> Result<Self, SpecError> {
        let errors = check_labeling(&self.diagram, &q);
        if let Some(e) = errors.into_iter().next() {
            return Err(e);
        }
        let mut s = self.clone();
        s.q = q;
        Ok(s)
    }

    /// The same spec over a diagram whose factor `k` carries the given marks, without
    /// revalidation. Only for negative controls.
    pub fn with_corrupted_marks(&self, k: usize, marks: Vec<Int>) -> Self {
        let mut s = self.clone();
        s.diagram = self.diagram.with_marks(k, marks);
        s
    }

    /// The compact form: `τ = id`, `q` concentrated at the affine vertices.
    pub fn compact(brd: BasedRootDatum) -> Result<Self, SpecError> {
        let n = brd.rank();
        let perm: Vec<usize> = (0..brd.semisimple_rank()).collect();
        let diagram = kac::build_diagram(&brd, &IMat::identity(n), &perm)?;
        let q = diagram.compact_labeling();
        GroupSpec::new(brd, IMat::identity(n), q)
    }

    pub fn brd(&self) -> &BasedRootDatum {
        &self.brd
    }

    pub fn tau(&self) -> &IMat {
        &self.tau
    }

    /// `τ∨ = τᵀ` on `X∨`.
    pub fn tau_cochar(&self) -> IMat {
        self.tau.transpose()
    }

    pub fn q(&self) -> &[Int] {
        &self.q
    }

    /// `τ(α_i) = α_{perm[i]}`.
    pub fn root_permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn diagram(&self) -> &AffineDiagram {
        &self.diagram
    }

    pub fn lattice_chain(&self) -> &LatticeChain {
        &self.chain
    }

    /// Inner (τ fixes every simple root) with `q` at the affine vertices.
    pub fn is_compact(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
            && self.tau == IMat::identity(self.brd.rank())
            && self.q == self.diagram.compact_labeling()
    }

    /// `γ = −τ∨` on the cocharacters of the fundamental torus.
    pub fn gamma_cochar(&self) -> IMat {
        self.tau_cochar().neg()
    }
}

/// `π₁G = X∨/Q∨` with `γ = −τ∨`.
pub fn fundamental_group(spec: &GroupSpec) -> GammaModule {
    let n = spec.brd.rank();
    let rel = IMat::from_cols(n, spec.brd.simple_coroots());
    GammaModule::new(rel, spec.gamma_cochar()).expect("τ preserves the coroot lattice")
}

/// `validate` for an assembled spec.
pub fn validate_spec(spec: &GroupSpec) -> ValidationReport {
    validate(&spec.brd, &spec.tau, &spec.q)
}
