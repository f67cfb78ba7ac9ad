use crate::linalg::{int_vec_to_rat, IMat, Int, Lattice, QMat, Rat, Subquotient};

use super::BasedRootDatum;

/// The lattices `P, Q, Λ, M, X` (functionals) and their duals (vectors) in one ambient
/// `ℚⁿ`, with τ-restricted (`*0`) and half-sum (`*0t`) versions.
///
/// `V = V_der ⊕ V_S` with `V_der` spanned by the coroots and `V_S` the common kernel of
/// the roots; `proj_der`, `proj_s` are the two projections.
#[derive(Clone, Debug)]
pub struct LatticeChain {
    pub n: usize,
    pub tau_x: QMat,
    pub tau_c: QMat,
    pub proj_der: QMat,
    pub proj_s: QMat,
    /// `v ↦ (v + τv)/2` on cocharacters
    pub avg_c: QMat,
    /// `λ ↦ (λ + τλ)/2` on characters
    pub avg_x: QMat,
    pub v0: Vec<Vec<Rat>>,
    pub v_s: Vec<Vec<Rat>>,

    pub x: Lattice,
    pub q: Lattice,
    pub p: Lattice,
    pub lambda: Lattice,
    pub m: Lattice,

    pub x_dual: Lattice,
    pub q_dual: Lattice,
    pub p_dual: Lattice,
    pub lambda_dual: Lattice,
    pub m_dual: Lattice,

    pub x0: Lattice,
    pub q0: Lattice,
    pub p0: Lattice,
    pub lambda0: Lattice,
    pub m0: Lattice,

    pub x0_dual: Lattice,
    pub q0_dual: Lattice,
    pub p0_dual: Lattice,
    pub lambda0_dual: Lattice,
    pub m0_dual: Lattice,

    pub x0t: Lattice,
    pub q0t: Lattice,
    pub p0t: Lattice,
    pub lambda0t: Lattice,
    pub m0t: Lattice,
}

/// Outcome of each chain invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub x_between_q_m_and_p_lambda: bool,
    pub x_dual_between: bool,
    pub tilde_between: bool,
    pub m_is_x_cap_lambda: bool,
    pub x_dual_cap_m_dual_is_lambda_dual: bool,
    pub f0_divides_f_divides_c: bool,
}

impl ChainCheck {
    pub fn all(&self) -> bool {
        self.x_between_q_m_and_p_lambda
            && self.x_dual_between
            && self.tilde_between
            && self.m_is_x_cap_lambda
            && self.x_dual_cap_m_dual_is_lambda_dual
            && self.f0_divides_f_divides_c
    }
}

fn half() -> Rat {
    Rat::new(1, 2)
}

impl LatticeChain {
    pub fn new(brd: &BasedRootDatum, tau: &IMat) -> Self {
        let n = brd.rank();
        let roots: Vec<Vec<Rat>> = brd.simple_roots().iter().map(|r| int_vec_to_rat(r)).collect();
        let coroots: Vec<Vec<Rat>> = brd.simple_coroots().iter().map(|r| int_vec_to_rat(r)).collect();
        let l = roots.len();

        let v_s: Vec<Vec<Rat>> = if l == 0 {
            QMat::identity(n).col_vecs()
        } else {
            QMat::from_rows(&roots).nullspace()
        };
        let mut cols = coroots.clone();
        cols.extend(v_s.iter().cloned());
        let bm = QMat::from_cols(n, &cols);
        let bi = bm.inverse().expect("coroots and the central subspace span V");
        let mut d = QMat::zeros(n, n);
        for i in 0..l {
            d[(i, i)] = Rat::from_integer(1);
        }
        let proj_der = bm.mul(&d).mul(&bi);
        let proj_s = QMat::identity(n).sub(&proj_der);

        let tau_x = tau.to_qmat();
        let tau_c = tau.transpose().to_qmat();
        let avg_c = QMat::identity(n).add(&tau_c).scale(half());
        let avg_x = QMat::identity(n).add(&tau_x).scale(half());
        let v0 = tau_c.sub(&QMat::identity(n)).nullspace();

        let x = Lattice::standard(n);
        let q = Lattice::from_gens(n, &roots);
        let p = q.dual_in_span(&coroots);
        let lambda = x.image(&proj_s.transpose());
        let m = x.intersect(&lambda);

        let x_dual = Lattice::standard(n);
        let q_dual = Lattice::from_gens(n, &coroots);
        let p_dual = q_dual.dual_in_span(&roots);
        let lambda_dual = x_dual.intersect_subspace(&v_s);
        let m_dual = x_dual.image(&proj_s);

        let fix = |lat: &Lattice| lat.intersect_subspace(&v0);
        let avg = |lat: &Lattice| lat.image(&avg_x);
        let tilde = |lat: &Lattice| lat.image(&avg_c);

        LatticeChain {
            n,
            x0: avg(&x),
            q0: avg(&q),
            p0: avg(&p),
            lambda0: avg(&lambda),
            m0: avg(&m),
            x0_dual: fix(&x_dual),
            q0_dual: fix(&q_dual),
            p0_dual: fix(&p_dual),
            lambda0_dual: fix(&lambda_dual),
            m0_dual: fix(&m_dual),
            x0t: tilde(&x_dual),
            q0t: tilde(&q_dual),
            p0t: tilde(&p_dual),
            lambda0t: tilde(&lambda_dual),
            m0t: tilde(&m_dual),
            x,
            q,
            p,
            lambda,
            m,
            x_dual,
            q_dual,
            p_dual,
            lambda_dual,
            m_dual,
            tau_x,
            tau_c,
            proj_der,
            proj_s,
            avg_c,
            avg_x,
            v0,
            v_s,
        }
    }

    /// `F = X∨/(Q∨ ⊕ Λ∨)`.
    pub fn f(&self) -> Subquotient {
        Subquotient::new(&self.x_dual, &self.q_dual.sum(&self.lambda_dual)).expect("Q∨ ⊕ Λ∨ ⊆ X∨")
    }

    /// `C = P∨/Q∨`.
    pub fn c(&self) -> Subquotient {
        Subquotient::new(&self.p_dual, &self.q_dual).expect("Q∨ ⊆ P∨")
    }

    /// `F₀ = X̃₀∨/(Q̃₀∨ ⊕ Λ̃₀∨)`.
    pub fn f0(&self) -> Subquotient {
        Subquotient::new(&self.x0t, &self.q0t.sum(&self.lambda0t)).expect("Q̃₀∨ ⊕ Λ̃₀∨ ⊆ X̃₀∨")
    }

    /// `C₀ = P̃₀∨/Q̃₀∨`.
    pub fn c0(&self) -> Subquotient {
        Subquotient::new(&self.p0t, &self.q0t).expect("Q̃₀∨ ⊆ P̃₀∨")
    }

    /// `M₀∨ / 2Λ̃₀∨`, the group of `m`-classes.
    pub fn m_classes(&self) -> Subquotient {
        Subquotient::new(&self.m0_dual, &self.lambda0t.scale(Rat::from_integer(2))).expect("2Λ̃₀∨ ⊆ M₀∨")
    }

    /// `X₀/(Q₀ ⊕ M₀)`; its generators give the congruences on labelings.
    pub fn congruence_group(&self) -> Subquotient {
        Subquotient::new(&self.x0, &self.q0.sum(&self.m0)).expect("Q₀ ⊕ M₀ ⊆ X₀")
    }

    pub fn check(&self) -> ChainCheck {
        let x_between_q_m_and_p_lambda =
            self.p.sum(&self.lambda).contains_lattice(&self.x) && self.x.contains_lattice(&self.q.sum(&self.m));
        let x_dual_between = self.x_dual.contains_lattice(&self.q_dual.sum(&self.lambda_dual))
            && self.p_dual.sum(&self.m_dual).contains_lattice(&self.x_dual);
        let tilde_between = self.x0t.contains_lattice(&self.x0_dual)
            && self.x0_dual.scale(half()).contains_lattice(&self.x0t);
        // M computed a second way: the dual of M∨ inside the span of Λ
        let m_from_dual = self.lambda.dual_in_span(&self.m_dual.basis());
        let m_is_x_cap_lambda = m_from_dual == self.x.intersect(&self.lambda);
        let x_dual_cap_m_dual_is_lambda_dual = self.x_dual.intersect(&self.m_dual) == self.lambda_dual;
        let order = |s: Subquotient| s.order();
        let f0_divides_f_divides_c = match (order(self.f0()), order(self.f()), order(self.c())) {
            (Some(a), Some(b), Some(c)) => b % a == 0 && c % b == 0,
            _ => false,
        };
        ChainCheck {
            x_between_q_m_and_p_lambda,
            x_dual_between,
            tilde_between,
            m_is_x_cap_lambda,
            x_dual_cap_m_dual_is_lambda_dual,
            f0_divides_f_divides_c,
        }
    }

    /// `(ν_P, ν_M)` components of a cocharacter.
    pub fn split(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        (self.proj_der.mul_vec(v), self.proj_s.mul_vec(v))
    }

    pub fn index(&self, big: &Lattice, small: &Lattice) -> Option<Int> {
        big.index_of(small)
    }
}
