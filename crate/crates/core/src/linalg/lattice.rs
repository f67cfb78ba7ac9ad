use num_integer::Integer;
use num_traits::Zero;

use super::mat::{int_vec_to_rat, vec_denominator};
use super::smith::{column_hnf, kernel, smith};
use super::{IMat, Int, QMat, Rat};

/// A finitely generated subgroup of `ℚⁿ`, stored as `(1/den)·H·ℤʳ` with `H` in
/// column Hermite normal form. Two lattices are equal iff their stored forms are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    dim: usize,
    den: Int,
    h: IMat,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, den: 1, h: IMat::zeros(dim, 0), pivots: vec![] }
    }

    pub fn standard(dim: usize) -> Self {
        Self::from_int_cols(&IMat::identity(dim))
    }

    pub fn from_int_cols(g: &IMat) -> Self {
        Self::build(g.rows(), 1, g)
    }

    pub fn from_int_gens(dim: usize, gens: &[Vec<Int>]) -> Self {
        Self::from_int_cols(&IMat::from_cols(dim, gens))
    }

    pub fn from_gens(dim: usize, gens: &[Vec<Rat>]) -> Self {
        let den = gens.iter().fold(1 as Int, |a, g| a.lcm(&vec_denominator(g)));
        let cols: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * Rat::from_integer(den)).to_integer()).collect())
            .collect();
        Self::build(dim, den, &IMat::from_cols(dim, &cols))
    }

    pub fn from_qmat_cols(g: &QMat) -> Self {
        Self::from_gens(g.rows(), &g.col_vecs())
    }

    fn build(dim: usize, den: Int, g: &IMat) -> Self {
        let (h, pivots) = column_hnf(g);
        let mut l = Lattice { dim, den, h, pivots };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        let mut g = self.den;
        for j in 0..self.h.cols() {
            for i in 0..self.dim {
                g = g.gcd(&self.h[(i, j)]);
            }
        }
        if g > 1 {
            self.den /= g;
            self.h = IMat::from_cols(self.dim, &self.h.col_vecs().iter().map(|c| c.iter().map(|x| x / g).collect::<Vec<_>>()).collect::<Vec<_>>());
        }
        if self.h.cols() == 0 {
            self.den = 1;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.h.cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis(&self) -> Vec<Vec<Rat>> {
        (0..self.rank())
            .map(|j| self.h.col(j).iter().map(|&x| Rat::new(x, self.den)).collect())
            .collect()
    }

    pub fn basis_qmat(&self) -> QMat {
        QMat::from_cols(self.dim, &self.basis())
    }

    /// Integer basis columns, if the lattice lies in `ℤⁿ`.
    pub fn int_basis(&self) -> Option<IMat> {
        (self.den == 1).then(|| self.h.clone())
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let scaled: Vec<Rat> = v.iter().map(|x| x * Rat::from_integer(self.den)).collect();
        let mut rest: Vec<Int> = Vec::with_capacity(self.dim);
        for x in &scaled {
            if !x.is_integer() {
                return None;
            }
            rest.push(x.to_integer());
        }
        let mut c = vec![0; self.rank()];
        for (k, &pr) in self.pivots.iter().enumerate() {
            let p = self.h[(pr, k)];
            if rest[pr] % p != 0 {
                return None;
            }
            let q = rest[pr] / p;
            c[k] = q;
            if q != 0 {
                for i in 0..self.dim {
                    rest[i] -= q * self.h[(i, k)];
                }
            }
        }
        rest.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn coords_int(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.coords(&int_vec_to_rat(v))
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        self.coords_int(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    pub fn combine(&self, c: &[Int]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            for i in 0..self.dim {
                v[i] += Rat::new(ck * self.h[(i, k)], self.den);
            }
        }
        v
    }

    /// Canonical representative of `v` modulo the lattice: pivot coordinates are reduced
    /// into `[0, pivot)` (exact for full-rank lattices, partial otherwise).
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        for (k, &pr) in self.pivots.iter().enumerate() {
            let p = Rat::new(self.h[(pr, k)], self.den);
            let q = (w[pr] / p).floor().to_integer();
            if q != 0 {
                for i in 0..self.dim {
                    w[i] -= Rat::new(q * self.h[(i, k)], self.den);
                }
            }
        }
        w
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis();
        g.extend(other.basis());
        Lattice::from_gens(self.dim, &g)
    }

    pub fn scale(&self, c: Rat) -> Lattice {
        let g: Vec<Vec<Rat>> = self.basis().iter().map(|b| b.iter().map(|x| x * c).collect()).collect();
        Lattice::from_gens(self.dim, &g)
    }

    pub fn image(&self, m: &QMat) -> Lattice {
        let g: Vec<Vec<Rat>> = self.basis().iter().map(|b| m.mul_vec(b)).collect();
        Lattice::from_gens(m.rows(), &g)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        let d = self.den.lcm(&other.den);
        let a = self.h.scale(d / self.den);
        let b = other.h.scale(d / other.den);
        let k = kernel(&a.hstack(&b.neg()));
        let top = k.submatrix(0..a.cols(), 0..k.cols());
        let g = a.mul(&top);
        Lattice::build(self.dim, d, &g)
    }

    /// `{ v ∈ self : v lies in the rational subspace W }`, W given by a spanning set.
    pub fn intersect_subspace(&self, span: &[Vec<Rat>]) -> Lattice {
        if span.is_empty() {
            return Lattice::zero(self.dim);
        }
        // solve B c = w, w in span: kernel of [B | -S] over Q, then saturate in self.
        let b = self.basis_qmat();
        let s = QMat::from_cols(self.dim, span);
        let ns = b.hstack(&s.scale(Rat::from_integer(-1))).nullspace();
        if ns.is_empty() {
            return Lattice::zero(self.dim);
        }
        // coefficient vectors c live in Q^r; the lattice is ℤ^r ∩ span(c's)
        let r = self.rank();
        let cs: Vec<Vec<Rat>> = ns.iter().map(|v| v[..r].to_vec()).collect();
        let c_lat = saturate_in_zn(r, &cs);
        let gens: Vec<Vec<Rat>> = c_lat.iter().map(|c| self.combine(c)).collect();
        Lattice::from_gens(self.dim, &gens)
    }

    /// `{ v ∈ span_ℚ(self) : f(v) ∈ ℤ for every functional f }` (functionals given as
    /// rows); requires the functionals to separate points of the span.
    pub fn dual_in_span(&self, functionals: &[Vec<Rat>]) -> Lattice {
        let r = self.rank();
        if r == 0 {
            return Lattice::zero(self.dim);
        }
        let b = self.basis_qmat();
        let f = QMat::from_rows(functionals);
        let n = f.mul(&b);
        assert_eq!(n.rank(), r, "functionals do not separate the span");
        let e = n.denominator();
        let ni = n.scale(Rat::from_integer(e)).to_imat().expect("scaled to integers");
        let s = smith(&ni);
        let mut gens = Vec::with_capacity(r);
        for i in 0..r {
            let c: Vec<Rat> = s.v.col(i).iter().map(|&x| Rat::new(x * e, s.diag[i])).collect();
            gens.push(b.mul_vec(&c));
        }
        Lattice::from_gens(self.dim, &gens)
    }

    /// The saturation `span_ℚ(self) ∩ ambient`.
    pub fn saturate_in(&self, ambient: &Lattice) -> Lattice {
        ambient.intersect_subspace(&self.basis())
    }

    /// Index `[self : sub]` when finite.
    pub fn index_of(&self, sub: &Lattice) -> Option<Int> {
        if sub.rank() != self.rank() {
            return None;
        }
        let q = Subquotient::new(self, sub)?;
        q.order()
    }
}

/// Saturated basis of `ℤʳ ∩ span_ℚ(vs)`.
fn saturate_in_zn(r: usize, vs: &[Vec<Rat>]) -> Vec<Vec<Int>> {
    // Orthogonal complement equations, then the integer kernel (saturated).
    let m = QMat::from_rows(vs);
    let eqs = m.nullspace();
    if eqs.is_empty() {
        return (0..r).map(|i| (0..r).map(|j| Int::from(i == j)).collect()).collect();
    }
    let e = QMat::from_rows(&eqs);
    let d = e.denominator();
    let ei = e.scale(Rat::from_integer(d)).to_imat().expect("integral");
    kernel(&ei).col_vecs()
}

/// The quotient `num / den` of two lattices (`den ⊆ num`), as a finitely generated
/// abelian group in Smith coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    num: Lattice,
    /// invariant factors of the retained Smith rows (each != 1; 0 = free)
    invariants: Vec<Int>,
    /// rows of U (coordinates in `num` → Smith coordinates) for the retained factors
    u_rows: IMat,
    /// generators in ambient coordinates
    gens: Vec<Vec<Rat>>,
}

impl Subquotient {
    /// `None` if `den` is not contained in `num`.
    pub fn new(num: &Lattice, den: &Lattice) -> Option<Self> {
        let r = num.rank();
        let mut rel_cols = Vec::new();
        for b in den.basis() {
            rel_cols.push(num.coords(&b)?);
        }
        let rel = IMat::from_cols(r, &rel_cols);
        let s = smith(&rel);
        let mut invariants = Vec::new();
        let mut keep = Vec::new();
        for i in 0..r {
            let d = if i < s.diag.len() { s.diag[i] } else { 0 };
            if d != 1 {
                invariants.push(d);
                keep.push(i);
            }
        }
        let u_rows = IMat::from_rows(&keep.iter().map(|&i| s.u.row(i)).collect::<Vec<_>>());
        let u_rows = if keep.is_empty() { IMat::zeros(0, r) } else { u_rows };
        let mut gens = Vec::new();
        for &i in &keep {
            let g = num.combine(&s.u_inv.col(i));
            gens.push(den.reduce(&g));
        }
        Some(Subquotient { num: num.clone(), invariants, u_rows, gens })
    }

    pub fn invariants(&self) -> &[Int] {
        &self.invariants
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    pub fn numerator(&self) -> &Lattice {
        &self.num
    }

    pub fn is_finite(&self) -> bool {
        self.invariants.iter().all(|&d| d != 0)
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.invariants.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Reduced Smith coordinates of `v`, or `None` if `v` is outside the numerator.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Int>> {
        let c = self.num.coords(v)?;
        let sc = self.u_rows.mul_vec(&c);
        Some(self.normalize(&sc))
    }

    pub fn normalize(&self, c: &[Int]) -> Vec<Int> {
        c.iter()
            .zip(&self.invariants)
            .map(|(&x, &d)| if d == 0 { x } else { x.mod_floor(&d) })
            .collect()
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn element(&self, c: &[Int]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.num.dim()];
        for (k, &ck) in c.iter().enumerate() {
            for i in 0..v.len() {
                v[i] += Rat::from_integer(ck) * self.gens[k][i];
            }
        }
        v
    }

    /// All elements as coordinate vectors (finite groups only), in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<Int>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![vec![]];
        for &d in &self.invariants {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for x in 0..d {
                    let mut f = e.clone();
                    f.push(x);
                    next.push(f);
                }
            }
            out = next;
        }
        out
    }
}
