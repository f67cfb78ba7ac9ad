use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::KacError;
use crate::linalg::{dot_q, int_vec_to_rat, rat_gcd, scale_q, sub_q, IMat, Int, QMat, Rat};
use crate::rootdata::cartan::{self, SimpleType};
use crate::rootdata::BasedRootDatum;

const REDUCTION_BOUND: usize = 100_000;

/// One ℝ-simple factor: a τ-orbit of Dynkin components.
///
/// Vertex 0 is the affine vertex; vertex `i ≥ 1` is the `i`-th τ-orbit of simple roots.
/// All functionals and vectors live in the ambient `ℚⁿ` of the datum.
#[derive(Clone, Debug)]
pub struct Factor {
    pub components: Vec<Vec<usize>>,
    /// τ-orbits of simple roots, one per non-affine vertex
    pub orbits: Vec<Vec<usize>>,
    /// restricted simple roots `β̄ = (α + τα)/2`
    pub beta: Vec<Vec<Rat>>,
    /// basis of `Q̃₀∨` for the factor: `b = (α∨ + τα∨)/2`
    pub basis: Vec<Vec<Rat>>,
    /// `φ_i = g_i β̄_i`
    pub phi: Vec<Vec<Rat>>,
    pub g: Vec<Int>,
    /// `h′_i`, the coroot of `φ_i` (primitive in `Q̃₀∨`)
    pub coroots: Vec<Vec<Rat>>,
    pub psi: Vec<Rat>,
    pub psi_coroot: Vec<Rat>,
    /// `ψ = Σ n_i φ_i`
    pub psi_coeffs: Vec<Int>,
    /// `m_0 = 1`, `m_i = n_i g_i`
    pub marks: Vec<Int>,
    /// `a_ij = φ_j(h′_i)` with `φ_0 = −ψ`, `h′_0 = −h′_ψ`
    pub affine_cartan: IMat,
    /// type of the restricted root system `Φ` and the Bourbaki identification
    /// (`bourbaki[b]` = vertex of Bourbaki node `b + 1`)
    pub restricted_type: SimpleType,
    pub bourbaki: Vec<usize>,
    pub twisted: bool,
    pub weyl_order: Int,
    /// `N[i][j] = β̄_i(b_j)`
    n_mat: QMat,
}

impl Factor {
    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.orbits.len() + 1
    }

    /// The point of `span(basis)` whose restricted-root labels are `labels[1..]`.
    fn point(&self, labels: &[Rat], n: usize) -> Vec<Rat> {
        let rhs: Vec<Rat> = labels[1..].iter().map(|p| p / Rat::from_integer(2)).collect();
        let c = self.n_mat.solve(&rhs).expect("restricted simple roots are independent");
        let mut x = vec![Rat::zero(); n];
        for (cj, b) in c.iter().zip(&self.basis) {
            for k in 0..n {
                x[k] += cj * b[k];
            }
        }
        x
    }

    fn labels(&self, y: &[Rat]) -> Vec<Rat> {
        let two = Rat::from_integer(2);
        let mut out = vec![two * (Rat::one() - dot_q(&self.psi, y))];
        out.extend(self.beta.iter().map(|b| two * dot_q(b, y)));
        out
    }

    /// `⟨λ, p⟩ = Σ c_i p_i` where `λ = Σ c_i β̄_i` on the factor.
    fn pairing(&self, lambda: &[Rat], p: &[Rat]) -> Rat {
        let vals: Vec<Rat> = self.basis.iter().map(|b| dot_q(lambda, b)).collect();
        let c = self.n_mat.transpose().solve(&vals).expect("independent");
        c.iter().zip(&p[1..]).map(|(a, b)| a * b).sum()
    }
}

/// The affine diagram of `(datum, τ)`: one [`Factor`] per ℝ-simple factor.
#[derive(Clone, Debug)]
pub struct AffineDiagram {
    n: usize,
    factors: Vec<Factor>,
    offsets: Vec<usize>,
}

impl AffineDiagram {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn num_vertices(&self) -> usize {
        self.factors.iter().map(|f| f.num_vertices()).sum()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// All marks, concatenated over factors.
    pub fn marks(&self) -> Vec<Int> {
        self.factors.iter().flat_map(|f| f.marks.iter().copied()).collect()
    }

    /// `q` with label 2 at every affine vertex.
    pub fn compact_labeling(&self) -> Vec<Int> {
        let mut q = vec![0; self.num_vertices()];
        for k in 0..self.factors.len() {
            q[self.offsets[k]] = 2;
        }
        q
    }

    fn slice<'a, T>(&self, k: usize, v: &'a [T]) -> &'a [T] {
        &v[self.offsets[k]..self.offsets[k] + self.factors[k].num_vertices()]
    }

    /// `x(p)`: the point of the alcove with labels `p`.
    pub fn kac_point(&self, p: &[Int]) -> Vec<Rat> {
        self.kac_point_rat(&int_vec_to_rat(p))
    }

    pub fn kac_point_rat(&self, p: &[Rat]) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.n];
        for (k, f) in self.factors.iter().enumerate() {
            let xf = f.point(self.slice(k, p), self.n);
            for i in 0..self.n {
                x[i] += xf[i];
            }
        }
        x
    }

    /// Labels `p_0 = 2(1 − ψ(y))`, `p_i = 2β̄_i(y)` per factor.
    pub fn labels_of(&self, y: &[Rat]) -> Vec<Rat> {
        self.factors.iter().flat_map(|f| f.labels(y)).collect()
    }

    pub fn in_alcove(&self, y: &[Rat]) -> bool {
        self.labels_of(y).iter().all(|p| !p.is_negative())
    }

    /// Moves `y` into the closed fundamental alcove by affine reflections.
    pub fn reduce(&self, y: &[Rat]) -> Result<Vec<Rat>, KacError> {
        let mut y = y.to_vec();
        for _ in 0..REDUCTION_BOUND {
            let mut moved = false;
            for f in &self.factors {
                for (phi, h) in f.phi.iter().zip(&f.coroots) {
                    let v = dot_q(phi, &y);
                    if v.is_negative() {
                        y = sub_q(&y, &scale_q(v, h));
                        moved = true;
                    }
                }
                let v = dot_q(&f.psi, &y) - Rat::one();
                if v.is_positive() {
                    y = sub_q(&y, &scale_q(v, &f.psi_coroot));
                    moved = true;
                }
            }
            if !moved {
                return Ok(y);
            }
        }
        Err(KacError::ReductionBound { iterations: REDUCTION_BOUND })
    }

    /// `Σ_k ⟨λ, p⟩_k`, for a functional vanishing on the central part.
    pub fn pairing(&self, lambda: &[Rat], p: &[Rat]) -> Rat {
        self.factors.iter().enumerate().map(|(k, f)| f.pairing(lambda, self.slice(k, p))).sum()
    }

    /// Checks that `σ` (on all vertices) preserves marks and the affine Cartan matrix
    /// and maps each factor to itself.
    pub fn is_automorphism(&self, sigma: &[usize]) -> bool {
        for (k, f) in self.factors.iter().enumerate() {
            let off = self.offsets[k];
            let r = f.num_vertices();
            for i in 0..r {
                let si = sigma[off + i];
                if si < off || si >= off + r || f.marks[si - off] != f.marks[i] {
                    return false;
                }
                for j in 0..r {
                    if f.affine_cartan[(si - off, sigma[off + j] - off)] != f.affine_cartan[(i, j)] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The diagram with the marks of one factor replaced; used as a negative control.
    pub fn with_marks(&self, k: usize, marks: Vec<Int>) -> AffineDiagram {
        let mut d = self.clone();
        d.factors[k].marks = marks;
        d
    }
}

/// Builds the diagram; `perm[i]` is the simple root `τ(α_i)`.
pub fn build_diagram(brd: &BasedRootDatum, tau: &IMat, perm: &[usize]) -> Result<AffineDiagram, KacError> {
    let n = brd.rank();
    let comps = brd.components();
    // group components into τ-orbits
    let mut seen = vec![false; comps.len()];
    let comp_of = |i: usize| comps.iter().position(|c| c.contains(&i)).expect("every root lies in a component");
    let mut factors = Vec::new();
    for ci in 0..comps.len() {
        if seen[ci] {
            continue;
        }
        seen[ci] = true;
        let cj = comp_of(perm[comps[ci][0]]);
        let mut group = vec![comps[ci].clone()];
        if cj != ci {
            seen[cj] = true;
            group.push(comps[cj].clone());
        }
        factors.push(build_factor(brd, tau, perm, group, n)?);
    }
    let mut offsets = Vec::new();
    let mut acc = 0;
    for f in &factors {
        offsets.push(acc);
        acc += f.num_vertices();
    }
    Ok(AffineDiagram { n, factors, offsets })
}

fn half() -> Rat {
    Rat::new(1, 2)
}

fn build_factor(
    brd: &BasedRootDatum,
    tau: &IMat,
    perm: &[usize],
    components: Vec<Vec<usize>>,
    n: usize,
) -> Result<Factor, KacError> {
    let tau_x = tau.to_qmat();
    let tau_c = tau.transpose().to_qmat();
    let avg_x = |v: &[Rat]| scale_q(half(), &crate::linalg::add_q(v, &tau_x.mul_vec(v)));
    let avg_c = |v: &[Rat]| scale_q(half(), &crate::linalg::add_q(v, &tau_c.mul_vec(v)));

    let mut members: Vec<usize> = components.iter().flatten().copied().collect();
    members.sort();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &i in &members {
        if orbits.iter().any(|o| o.contains(&i)) {
            continue;
        }
        let mut o = vec![i];
        if perm[i] != i {
            o.push(perm[i]);
        }
        orbits.push(o);
    }
    let twisted = components.len() > 1 || orbits.iter().any(|o| o.len() > 1);
    let r = orbits.len();
    let beta: Vec<Vec<Rat>> = orbits.iter().map(|o| avg_x(&int_vec_to_rat(&brd.simple_roots()[o[0]]))).collect();
    let basis: Vec<Vec<Rat>> = orbits.iter().map(|o| avg_c(&int_vec_to_rat(&brd.simple_coroots()[o[0]]))).collect();
    let n_mat = QMat::from_rows(&beta.iter().map(|b| basis.iter().map(|v| dot_q(b, v)).collect::<Vec<_>>()).collect::<Vec<_>>());
    let basis_mat = QMat::from_cols(n, &basis);
    let coords = |v: &[Rat]| -> Vec<Rat> {
        // coordinates of v ∈ span(basis) in that basis
        let ata = basis_mat.transpose().mul(&basis_mat);
        ata.solve(&basis_mat.transpose().mul_vec(v)).expect("basis is independent")
    };

    // restricted roots a, their coroots h_a, and φ = g a with primitive coroot h′
    let mut phis: Vec<(Vec<Rat>, Vec<Rat>, Int)> = Vec::new();
    for ((alpha, alpha_c), coeffs) in
        brd.positive_roots().iter().zip(brd.positive_coroots()).zip(brd.positive_root_coefficients())
    {
        if !members.iter().any(|&i| coeffs[i] != 0) {
            continue;
        }
        let a = avg_x(&int_vec_to_rat(alpha));
        let pc = avg_c(&int_vec_to_rat(alpha_c));
        let h = scale_q(Rat::from_integer(2) / dot_q(&int_vec_to_rat(alpha), &pc), &pc);
        let hc = coords(&h);
        let g = rat_gcd(&hc);
        if !g.is_integer() {
            return Err(KacError::NonIntegralMarks { factor: factors_label(&components) });
        }
        let h_prime = scale_q(Rat::one() / g, &h);
        let phi = scale_q(g, &a);
        if let Some(existing) = phis.iter().find(|(p, _, _)| *p == phi) {
            if existing.1 != h_prime {
                return Err(KacError::RootSystemMismatch { factor: factors_label(&components) });
            }
            continue;
        }
        phis.push((phi, h_prime, g.to_integer()));
    }

    // simple φ_i: the one proportional to β̄_i
    let mut phi = Vec::new();
    let mut coroots = Vec::new();
    let mut g = Vec::new();
    for b in &beta {
        let found = phis.iter().filter(|(p, _, _)| proportional(p, b)).min_by_key(|(_, _, gg)| *gg);
        let (p, h, gg) = found.ok_or(KacError::RootSystemMismatch { factor: factors_label(&components) })?;
        // the simple root of Φ on the ray of β̄ is the one with the smallest multiple
        phi.push(p.clone());
        coroots.push(h.clone());
        g.push(*gg);
    }
    let cartan = IMat::from_rows(
        &(0..r)
            .map(|i| (0..r).map(|j| dot_q(&phi[j], &coroots[i]).to_integer()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let (restricted_type, bourbaki) =
        cartan::identify(&cartan).ok_or(KacError::NotFiniteType { factor: factors_label(&components) })?;

    // coefficients of Φ⁺ over the φ_i, compared against the root system of the Cartan matrix
    let phi_vals = QMat::from_cols(r, &phi.iter().map(|p| basis.iter().map(|b| dot_q(p, b)).collect::<Vec<_>>()).collect::<Vec<_>>());
    let mut coeff_set = BTreeSet::new();
    for (p, _, _) in &phis {
        let vals: Vec<Rat> = basis.iter().map(|b| dot_q(p, b)).collect();
        let c = phi_vals.solve(&vals).ok_or(KacError::RootSystemMismatch { factor: factors_label(&components) })?;
        let ci: Option<Vec<Int>> = c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
        coeff_set.insert(ci.ok_or(KacError::RootSystemMismatch { factor: factors_label(&components) })?);
    }
    let expected: BTreeSet<Vec<Int>> = crate::rootdata::positive_roots_of(&cartan).into_iter().collect();
    if coeff_set != expected {
        return Err(KacError::RootSystemMismatch { factor: factors_label(&components) });
    }
    let psi_coeffs = coeff_set.iter().max_by_key(|c| c.iter().sum::<Int>()).cloned().unwrap();
    if !coeff_set.iter().all(|c| c.iter().zip(&psi_coeffs).all(|(a, b)| a <= b)) {
        return Err(KacError::RootSystemMismatch { factor: factors_label(&components) });
    }
    let mut psi = vec![Rat::zero(); n];
    for (c, p) in psi_coeffs.iter().zip(&phi) {
        psi = crate::linalg::add_q(&psi, &scale_q(Rat::from_integer(*c), p));
    }
    let psi_coroot = phis.iter().find(|(p, _, _)| *p == psi).map(|x| x.1.clone()).unwrap();
    let mut marks = vec![1];
    marks.extend(psi_coeffs.iter().zip(&g).map(|(a, b)| a * b));

    let mut all_phi = vec![scale_q(-Rat::one(), &psi)];
    all_phi.extend(phi.iter().cloned());
    let mut all_h = vec![scale_q(-Rat::one(), &psi_coroot)];
    all_h.extend(coroots.iter().cloned());
    let affine_cartan = IMat::from_rows(
        &(0..=r).map(|i| (0..=r).map(|j| dot_q(&all_phi[j], &all_h[i]).to_integer()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    );

    let weyl_order = cartan::weyl_order(&cartan);
    let f = Factor {
        components,
        orbits,
        beta,
        basis,
        phi,
        g,
        coroots,
        psi,
        psi_coroot,
        psi_coeffs,
        marks,
        affine_cartan,
        restricted_type,
        bourbaki,
        twisted,
        weyl_order,
        n_mat,
    };
    if !f.twisted {
        let table = cartan::bourbaki_marks(f.restricted_type);
        for (b, &v) in f.bourbaki.iter().enumerate() {
            if f.marks[v + 1] != table[b + 1] {
                return Err(KacError::MarkTableMismatch { factor: factors_label(&f.components) });
            }
        }
    }
    if alcove_volume_times_weyl(&f) != Rat::one() {
        return Err(KacError::VolumeMismatch { factor: factors_label(&f.components) });
    }
    Ok(f)
}

fn factors_label(components: &[Vec<usize>]) -> Vec<usize> {
    components.iter().flatten().copied().collect()
}

fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let c = a[k] / b[k];
    c.is_positive() && a.iter().zip(b).all(|(x, y)| *x == c * y)
}

/// `vol(Δ)·|W₀|` in units where `Q̃₀∨` has covolume 1; equals 1 for a correct diagram.
pub fn alcove_volume_times_weyl(f: &Factor) -> Rat {
    let r = f.rank();
    if r == 0 {
        return Rat::one();
    }
    // vertex v_i (i ≥ 1): φ_j(v_i) = δ_ij / n_i
    let fm = QMat::from_rows(&f.phi.iter().map(|p| f.basis.iter().map(|b| dot_q(p, b)).collect::<Vec<_>>()).collect::<Vec<_>>());
    let inv = fm.inverse().expect("simple roots are independent");
    let mut cols = Vec::new();
    for i in 0..r {
        let mut e = vec![Rat::zero(); r];
        e[i] = Rat::new(1, f.psi_coeffs[i]);
        cols.push(inv.mul_vec(&e));
    }
    let det = qdet(&QMat::from_cols(r, &cols));
    let fact: Int = (1..=r as Int).product();
    let vol = if det.is_negative() { -det } else { det } / Rat::from_integer(fact);
    vol * Rat::from_integer(f.weyl_order)
}

fn qdet(m: &QMat) -> Rat {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            for k in 0..n {
                let t = a[(p, k)];
                a[(p, k)] = a[(c, k)];
                a[(c, k)] = t;
            }
            det = -det;
        }
        det *= a[(c, c)];
        for r in c + 1..n {
            let f = a[(r, c)] / a[(c, c)];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = a[(c, k)];
                a[(r, k)] -= f * v;
            }
        }
    }
    det
}
