//! Real tori and quasi-tori through their cocharacter lattices.
//!
//! A torus element `Exp(x) = exp(2πi·x)` is stored as a rational cocharacter vector `x`
//! modulo `X∨`. In these coordinates γ acts by `x ↦ −γ·x`, where `γ` is the action on
//! cocharacters, and `ν(−1) = Exp(ν/2)`.

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::glattice::{GammaLattice, LatticeError};
use crate::gmod::{sign, tate, AbHom, FinAbGroup, GammaMap, GammaModule};
use crate::hyper::{hyper, les_maps, ShortComplex};
use crate::linalg::{int_vec_to_rat, rat_vec_to_int, IMat, Int, QMat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cocharacter map is not Γ-equivariant")]
    NotEquivariant,
    #[error("cocharacter map has rank {rank}, target rank is {target}: not surjective on tori")]
    NotSurjective { rank: usize, target: usize },
    #[error("map shape {rows}×{cols} does not match ranks {target}×{domain}")]
    Shape { rows: usize, cols: usize, target: usize, domain: usize },
}

/// A real torus, given by γ on its cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    pub cochar: GammaLattice,
}

impl TorusSpec {
    pub fn new(gamma: IMat) -> Result<Self, TorusError> {
        Ok(TorusSpec { cochar: GammaLattice::new(gamma)? })
    }

    /// `(ℝ^×)ⁿ`.
    pub fn split(n: usize) -> Self {
        TorusSpec { cochar: GammaLattice::model(n, 0, 0) }
    }

    /// `U(1)ⁿ`.
    pub fn compact(n: usize) -> Self {
        TorusSpec { cochar: GammaLattice::model(0, n, 0) }
    }

    /// `R_{ℂ/ℝ} 𝔾_m`, i.e. `ℂ^×`.
    pub fn weil() -> Self {
        TorusSpec { cochar: GammaLattice::model(0, 0, 1) }
    }

    pub fn rank(&self) -> usize {
        self.cochar.rank()
    }

    pub fn gamma(&self) -> &IMat {
        self.cochar.involution()
    }

    pub fn module(&self) -> GammaModule {
        self.cochar.as_module()
    }

    /// γ on a torus element in log coordinates.
    pub fn act(&self, x: &[Rat]) -> Vec<Rat> {
        self.gamma().to_qmat().mul_vec(x).iter().map(|v| -v).collect()
    }
}

/// `ν(−1)` as a degree-`k` cocycle: the cocharacter and its class in `X∨/2X∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCocycle {
    pub degree: i64,
    pub nu: Vec<Int>,
    pub value: Vec<Int>,
}

impl TorusCocycle {
    pub fn new(nu: Vec<Int>, degree: i64) -> Self {
        let value = nu.iter().map(|x| x.mod_floor(&2)).collect();
        TorusCocycle { degree, nu, value }
    }

    /// `ᵞz = z^{(−1)^k}` for `z = ν(−1)`, checked in `X∨/2X∨`.
    pub fn satisfies_cocycle_identity(&self, t: &TorusSpec) -> bool {
        let gz = t.gamma().mul_vec(&self.value);
        gz.iter().zip(&self.value).all(|(a, b)| (a - b).mod_floor(&2) == 0)
    }
}

#[derive(Clone, Debug)]
pub struct TorusCohomology {
    pub group: FinAbGroup,
    pub reps: Vec<TorusCocycle>,
}

/// `Ĥᵏ T ≅ Ĥᵏ X∨(T)` via `ν ↦ ν(−1)`.
pub fn torus_tate(t: &TorusSpec, k: i64) -> TorusCohomology {
    let group = tate(&t.module(), k);
    let reps = group.generators().iter().map(|g| TorusCocycle::new(g.clone(), k)).collect();
    TorusCohomology { group, reps }
}

/// `π₀ T(ℝ) ≅ Ĥ⁰ X∨(T)`.
pub fn pi0_torus(t: &TorusSpec) -> FinAbGroup {
    tate(&t.module(), 0)
}

/// `A = ker(T → T′)`, given by a Γ-equivariant cocharacter map of full rank.
#[derive(Clone, Debug)]
pub struct QuasiTorusSpec {
    pub source: TorusSpec,
    pub target: TorusSpec,
    map: IMat,
}

impl QuasiTorusSpec {
    pub fn new(source: TorusSpec, target: TorusSpec, map: IMat) -> Result<Self, TorusError> {
        if map.rows() != target.rank() || map.cols() != source.rank() {
            return Err(TorusError::Shape {
                rows: map.rows(),
                cols: map.cols(),
                target: target.rank(),
                domain: source.rank(),
            });
        }
        if target.gamma().mul(&map) != map.mul(source.gamma()) {
            return Err(TorusError::NotEquivariant);
        }
        let rank = map.to_qmat().rank();
        if rank != target.rank() {
            return Err(TorusError::NotSurjective { rank, target: target.rank() });
        }
        Ok(QuasiTorusSpec { source, target, map })
    }

    pub fn map(&self) -> &IMat {
        &self.map
    }

    /// `X∨(T) → X∨(T′)`.
    pub fn complex(&self) -> ShortComplex {
        let f = GammaMap::equivariant(self.source.module(), self.target.module(), self.map.clone())
            .expect("validated equivariant map");
        ShortComplex::new(f).expect("equivariant")
    }

    /// Membership `Exp(α) ∈ A`.
    pub fn contains(&self, alpha: &[Rat]) -> bool {
        rat_vec_to_int(&self.map.to_qmat().mul_vec(alpha)).is_some()
    }

    /// `Exp(α)` is a degree-`k` cocycle of `A`: `d^k` of it is trivial in `T`.
    pub fn is_cocycle(&self, alpha: &[Rat], k: i64) -> bool {
        self.contains(alpha) && rat_vec_to_int(&torus_differential(&self.source, alpha, k)).is_some()
    }

    /// Some `x` with `j(x) = y` (rational).
    fn lift(&self, y: &[Rat]) -> Vec<Rat> {
        self.map.to_qmat().solve(y).expect("full-rank map")
    }
}

/// `dᵏ(Exp x) = ᵞExp(x) · Exp(x)^{(−1)^{k+1}}` in log coordinates.
pub fn torus_differential(t: &TorusSpec, x: &[Rat], k: i64) -> Vec<Rat> {
    let s = Rat::from_integer(sign(k + 1));
    t.act(x).iter().zip(x).map(|(g, v)| g + s * v).collect()
}

fn reduce_mod_one(x: &[Rat]) -> Vec<Rat> {
    x.iter().map(|v| v - v.floor()).collect()
}

/// A cocycle of `A` produced from a hypercocycle `(ν, ν′)` of degree `h`:
/// `Exp(α) = ν(−1) · ᵞt⁻¹ · t^{(−1)^h}` with `t = Exp(x)` lifting `ν′(−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTorusCocycle {
    pub nu: Vec<Int>,
    pub nu_prime: Vec<Int>,
    pub lift: Vec<Rat>,
    pub element: Vec<Rat>,
}

/// `ϑʰ : Ĥʰ(X∨T → X∨T′) → Ĥʰ⁺¹ A` on a representative.
pub fn theta(a: &QuasiTorusSpec, nu: &[Int], nu_prime: &[Int], h: i64) -> QuasiTorusCocycle {
    let half: Vec<Rat> = nu_prime.iter().map(|&v| Rat::new(v, 2)).collect();
    let x = a.lift(&half);
    let gx: Vec<Rat> = a.source.gamma().to_qmat().mul_vec(&x);
    let s = Rat::from_integer(sign(h));
    let alpha: Vec<Rat> = nu
        .iter()
        .zip(gx.iter().zip(&x))
        .map(|(&n, (g, v))| Rat::new(n, 2) + g + s * v)
        .collect();
    QuasiTorusCocycle { nu: nu.to_vec(), nu_prime: nu_prime.to_vec(), lift: x, element: reduce_mod_one(&alpha) }
}

/// The inverse of `ϑʰ` on a cocycle `Exp(α)` of degree `h + 1`:
/// `(ν, ν′) = (α − (−1)ʰ γα, −(−1)ʰ j(α))`.
pub fn theta_inverse(a: &QuasiTorusSpec, alpha: &[Rat], h: i64) -> Option<(Vec<Int>, Vec<Int>)> {
    let s = Rat::from_integer(sign(h));
    let ga = a.source.gamma().to_qmat().mul_vec(alpha);
    let nu: Vec<Rat> = alpha.iter().zip(&ga).map(|(x, g)| x - s * g).collect();
    let ja = a.map.to_qmat().mul_vec(alpha);
    let nup: Vec<Rat> = ja.iter().map(|v| -s * v).collect();
    Some((rat_vec_to_int(&nu)?, rat_vec_to_int(&nup)?))
}

#[derive(Clone, Debug)]
pub struct QuasiTorusCohomology {
    /// `Ĥᵏ⁻¹(X∨T → X∨T′)`.
    pub group: FinAbGroup,
    pub reps: Vec<QuasiTorusCocycle>,
}

/// `Ĥᵏ A ≅ Ĥᵏ⁻¹(X∨T → X∨T′)` with explicit cocycles of `A`.
pub fn quasitorus_tate(a: &QuasiTorusSpec, k: i64) -> QuasiTorusCohomology {
    let c = a.complex();
    let h = k - 1;
    let group = hyper(&c, h);
    let n = a.source.rank();
    let reps = group
        .generators()
        .iter()
        .map(|g| theta(a, &g[..n], &g[n..], h))
        .collect();
    QuasiTorusCohomology { group, reps }
}

/// A sequence `1 → A → T → T′ → 1`; `lift_map` is the cocharacter map used when lifting
/// elements of `T′` (equal to the defining map unless deliberately corrupted).
#[derive(Clone, Debug)]
pub struct TorusSequence {
    pub spec: QuasiTorusSpec,
    pub lift_map: IMat,
}

impl TorusSequence {
    pub fn new(spec: QuasiTorusSpec) -> Self {
        let lift_map = spec.map.clone();
        TorusSequence { spec, lift_map }
    }

    pub fn with_lift_map(spec: QuasiTorusSpec, lift_map: IMat) -> Self {
        TorusSequence { spec, lift_map }
    }
}

/// Per-square verdicts of the comparison between `Ĥʰ T′ → Ĥʰ⁺¹ A → Ĥʰ⁺¹ T` and
/// `Ĥʰ X∨T′ → Ĥʰ(X∨T → X∨T′) → Ĥʰ⁺¹ X∨T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeqReport {
    pub degree: i64,
    pub left_square: bool,
    pub right_square: bool,
}

impl ExactSeqReport {
    pub fn passed(&self) -> bool {
        self.left_square && self.right_square
    }
}

pub fn exact_seq_check(seq: &TorusSequence, h: i64) -> ExactSeqReport {
    let a = &seq.spec;
    let c = a.complex();
    let n = a.source.rank();
    let maps = les_maps(&c, h);
    let hh = hyper(&c, h);
    let lift_q: QMat = seq.lift_map.to_qmat();

    // left: λ*[ν′] against ϑ⁻¹ of the torus connecting map
    let mut left = true;
    for (g, lam) in maps.lambda.source.generators().iter().zip(maps.lambda.images()) {
        let half: Vec<Rat> = g.iter().map(|&v| Rat::new(v, 2)).collect();
        let Some(x) = lift_q.solve(&half) else {
            left = false;
            continue;
        };
        let alpha = torus_differential(&a.source, &x, h);
        let ok = a.is_cocycle(&alpha, h + 1)
            && theta_inverse(a, &alpha, h)
                .and_then(|(nu, nup)| {
                    let mut v = nu;
                    v.extend(nup);
                    hh.coords(&v)
                })
                .is_some_and(|cls| cls == *lam);
        left &= ok;
    }

    // right: μ*[ν, ν′] against the class of ϑ[ν, ν′] in T
    let mut right = true;
    let target = tate(&a.source.module(), h + 1);
    for g in hh.generators() {
        let (nu, nup) = g.split_at(n);
        let mu = target.coords(nu);
        let rep = theta(a, nu, nup, h);
        let ev = ev_inverse(&a.source, &rep.element, h + 1).and_then(|v| target.coords(&v));
        right &= mu.is_some() && mu == ev;
    }
    ExactSeqReport { degree: h, left_square: left, right_square: right }
}

/// The cocharacter class of a degree-`k` cocycle `Exp(α)` of `T`: `α − (−1)^{k−1} γα`.
pub fn ev_inverse(t: &TorusSpec, alpha: &[Rat], k: i64) -> Option<Vec<Int>> {
    let s = Rat::from_integer(sign(k - 1));
    let ga = t.gamma().to_qmat().mul_vec(alpha);
    rat_vec_to_int(&alpha.iter().zip(&ga).map(|(x, g)| x - s * g).collect::<Vec<_>>())
}

/// The map `Ĥᵏ X∨(T) → Ĥᵏ X∨(T′)` induced by a cocharacter map.
pub fn induced_on_tori(src: &TorusSpec, tgt: &TorusSpec, map: &IMat, k: i64) -> Option<AbHom> {
    let f = GammaMap::equivariant(src.module(), tgt.module(), map.clone()).ok()?;
    Some(f.induced(k))
}

/// `Exp(x)` is the identity element.
pub fn is_identity_element(x: &[Rat]) -> bool {
    x.iter().all(|v| v.is_integer() || v.is_zero())
}

/// `ν(−1)` in log coordinates.
pub fn minus_one(nu: &[Int]) -> Vec<Rat> {
    int_vec_to_rat(nu).iter().map(|v| v / Rat::from_integer(2)).collect()
}
