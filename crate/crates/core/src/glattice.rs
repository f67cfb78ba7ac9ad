//! Γ-lattices: free abelian groups with an involution, their normal form
//! `ℤ(e)ᵃ ⊕ ℤ(f)ᵇ ⊕ ℤ²(g,h)ᶜ` (γe = e, γf = −f, γg = h) and closed-form cohomology.

use thiserror::Error;

use crate::gmod::{FinAbGroup, GammaModule};
use crate::linalg::{column_hnf, extend_to_basis, kernel, IMat, Int, Lattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("involution must be square")]
    NotSquare,
    #[error("S² is not the identity")]
    NotInvolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaLattice {
    s: IMat,
}

impl GammaLattice {
    pub fn new(s: IMat) -> Result<Self, LatticeError> {
        if !s.is_square() {
            return Err(LatticeError::NotSquare);
        }
        if !s.mul(&s).is_identity() {
            return Err(LatticeError::NotInvolution);
        }
        Ok(GammaLattice { s })
    }

    /// The block model with `a` trivial, `b` sign and `c` swap summands.
    pub fn model(a: usize, b: usize, c: usize) -> Self {
        GammaLattice { s: model_matrix(a, b, c) }
    }

    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    pub fn involution(&self) -> &IMat {
        &self.s
    }

    pub fn as_module(&self) -> GammaModule {
        GammaModule::free(self.s.clone()).expect("lattice is a valid module")
    }

    /// `P⁻¹ S P` for a unimodular `P`.
    pub fn conjugate(&self, p: &IMat) -> Self {
        let pinv = p.inverse_unimodular().expect("unimodular");
        GammaLattice { s: pinv.mul(&self.s).mul(p) }
    }
}

pub fn model_matrix(a: usize, b: usize, c: usize) -> IMat {
    let mut m = IMat::scalar(a, 1).block_diag(&IMat::scalar(b, -1));
    for _ in 0..c {
        m = m.block_diag(&IMat::from_rows(&[[0, 1], [1, 0]]));
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Columns `e₁..e_a, f₁..f_b, g₁, h₁, …, g_c, h_c`; unimodular.
    pub basis: IMat,
}

impl NormalForm {
    /// `basis⁻¹ · S · basis` equals the block model exactly.
    pub fn verify(&self, l: &GammaLattice) -> bool {
        self.basis.is_unimodular()
            && l.s.mul(&self.basis) == self.basis.mul(&model_matrix(self.a, self.b, self.c))
    }
}

#[derive(Default)]
struct Pieces {
    e: Vec<Vec<Int>>,
    f: Vec<Vec<Int>>,
    gh: Vec<(Vec<Int>, Vec<Int>)>,
}

fn lin(x: &[Int], c: Int, y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(a, b)| a + c * b).collect()
}

/// Splits `τv` as `w + m·e` when `τv − w` is a multiple of `e`.
fn multiple_of(v: &[Int], e: &[Int]) -> Int {
    let i = e.iter().position(|&x| x != 0).expect("nonzero e");
    let m = v[i] / e[i];
    debug_assert!(v.iter().zip(e).all(|(a, b)| *a == m * b), "not a multiple of e");
    m
}

fn decompose(s: &IMat) -> Pieces {
    let r = s.rows();
    if r == 0 {
        return Pieces::default();
    }
    let fixed = kernel(&s.sub(&IMat::identity(r)));
    if fixed.cols() == 0 {
        // no fixed vectors: S = −1
        return Pieces { f: IMat::identity(r).col_vecs(), ..Pieces::default() };
    }
    let (h, _) = column_hnf(&fixed);
    let e = h.col(0);
    let basis = extend_to_basis(&e).expect("saturated kernel vectors are primitive");
    let binv = basis.inverse_unimodular().expect("unimodular");
    let sp = binv.mul(s).mul(&basis);
    let sbar = sp.submatrix(1..r, 1..r);
    let sub = decompose(&sbar);
    let lift = |v: &Vec<Int>| -> Vec<Int> {
        let mut w = vec![0];
        w.extend_from_slice(v);
        basis.mul_vec(&w)
    };
    let mut out = Pieces::default();
    out.e.push(e.clone());
    for v in &sub.e {
        let x = lift(v);
        debug_assert_eq!(s.mul_vec(&x), x);
        out.e.push(x);
    }
    for (g, _) in &sub.gh {
        let g = lift(g);
        let h = s.mul_vec(&g);
        out.gh.push((g, h));
    }
    let mut odd = Vec::new();
    for v in &sub.f {
        let x = lift(v);
        let tx = s.mul_vec(&x);
        let m = multiple_of(&lin(&tx, 1, &x), &e);
        let n = m.div_euclid(2);
        let f = lin(&x, -n, &e);
        if m.rem_euclid(2) == 0 {
            out.f.push(f);
        } else {
            odd.push(f);
        }
    }
    if let Some((f0, rest)) = odd.split_first() {
        for fj in rest {
            out.f.push(lin(fj, -1, f0));
        }
        let e0 = out.e.remove(0);
        let h = lin(&e0, -1, f0);
        out.gh.push((f0.clone(), h));
    }
    out
}

/// The normal form, following the induction on rank: a primitive fixed vector, the
/// quotient, and the adjustment of lifts.
pub fn normal_form(l: &GammaLattice) -> NormalForm {
    let p = decompose(&l.s);
    let r = l.rank();
    let mut cols = p.e.clone();
    cols.extend(p.f.iter().cloned());
    for (g, h) in &p.gh {
        cols.push(g.clone());
        cols.push(h.clone());
    }
    let nf = NormalForm { a: p.e.len(), b: p.f.len(), c: p.gh.len(), basis: IMat::from_cols(r, &cols) };
    debug_assert!(nf.verify(l), "normal form failed verification");
    nf
}

/// `Ĥᵏ L ≅ (ℤ/2)ᵃ` for even `k` and `(ℤ/2)ᵇ` for odd `k`, generated by the `e` (resp. `f`)
/// basis vectors of the normal form.
pub fn lattice_tate(l: &GammaLattice, k: i64) -> FinAbGroup {
    let nf = normal_form(l);
    let r = l.rank();
    let range = if k.rem_euclid(2) == 0 { 0..nf.a } else { nf.a..nf.a + nf.b };
    let gens: Vec<Vec<Int>> = range.map(|j| nf.basis.col(j)).collect();
    let doubled: Vec<Vec<Int>> = gens.iter().map(|g| g.iter().map(|x| 2 * x).collect()).collect();
    FinAbGroup::quotient(&Lattice::from_int_gens(r, &gens), &Lattice::from_int_gens(r, &doubled))
        .expect("2L ⊆ L")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::tate;

    #[test]
    fn examples() {
        let swap = GammaLattice::new(IMat::from_rows(&[[0, 1], [1, 0]])).unwrap();
        let nf = normal_form(&swap);
        assert_eq!((nf.a, nf.b, nf.c), (0, 0, 1));
        let id = GammaLattice::new(IMat::identity(3)).unwrap();
        let nf = normal_form(&id);
        assert_eq!((nf.a, nf.b, nf.c), (3, 0, 0));
        let odd = GammaLattice::new(IMat::from_rows(&[[1, 1], [0, -1]])).unwrap();
        let nf = normal_form(&odd);
        assert_eq!((nf.a, nf.b, nf.c), (0, 0, 1));
        assert!(nf.verify(&odd));
    }

    #[test]
    fn rejects_non_involution() {
        assert_eq!(GammaLattice::new(IMat::from_rows(&[[1, 1], [0, 1]])).unwrap_err(), LatticeError::NotInvolution);
    }

    #[test]
    fn closed_form_matches_tate() {
        let upper = IMat::from_rows(&[[1, 2, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 3, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]);
        let lower = IMat::from_rows(&[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 0, 1, 0, 0], [0, 2, 0, 1, 0], [1, 0, 0, 1, 1]]);
        let p = upper.mul(&lower);
        assert!(p.is_unimodular());
        let l = GammaLattice::model(2, 1, 1).conjugate(&p);
        let nf = normal_form(&l);
        assert_eq!((nf.a, nf.b, nf.c), (2, 1, 1));
        assert_eq!(lattice_tate(&l, 1).invariants(), &[2]);
        for k in 0..2 {
            assert_eq!(lattice_tate(&l, k).invariants(), tate(&l.as_module(), k).invariants());
        }
    }
}
