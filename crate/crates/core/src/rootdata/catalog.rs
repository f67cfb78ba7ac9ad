//! Built-in examples: `SU(2)`, compact simple groups, tori, and the groups `G_{s,q}`,
//! `G_{c,q}` of type `D_ℓ` with a one-dimensional central torus.

use crate::kac::{all_pair_orbits, KacError, ReductiveLabeling};
use crate::linalg::{dot_q, IMat, Int, Lattice, QMat, Rat};

use super::cartan::{cartan_matrix, SimpleType};
use super::{BasedRootDatum, GroupSpec};

/// Simply connected datum: `X∨ = Q∨`, coroots are the standard basis.
pub fn simply_connected(t: SimpleType) -> BasedRootDatum {
    let a = cartan_matrix(t);
    let n = t.rank;
    let coroots = IMat::identity(n).col_vecs();
    // α_j(α_i∨) = a_ij
    let roots = a.col_vecs();
    BasedRootDatum::new(n, roots, coroots).expect("Cartan data")
}

/// Adjoint datum: `X = Q`, roots are the standard basis.
pub fn adjoint(t: SimpleType) -> BasedRootDatum {
    let a = cartan_matrix(t);
    let n = t.rank;
    let roots = IMat::identity(n).col_vecs();
    let coroots = a.row_vecs();
    BasedRootDatum::new(n, roots, coroots).expect("Cartan data")
}

pub fn su2() -> GroupSpec {
    GroupSpec::new(simply_connected(SimpleType::parse("A1").unwrap()), IMat::identity(1), vec![2, 0]).expect("valid")
}

pub fn pgl2_compact() -> GroupSpec {
    GroupSpec::new(adjoint(SimpleType::parse("A1").unwrap()), IMat::identity(1), vec![2, 0]).expect("valid")
}

pub fn compact_sc(t: SimpleType) -> GroupSpec {
    GroupSpec::compact(simply_connected(t)).expect("valid")
}

/// `τ` on `X` for a permutation of the simple roots of a simply connected datum
/// (which is then also a permutation of the coroot basis of `X∨`).
pub fn diagram_flip_tau(brd: &BasedRootDatum, perm: &[usize]) -> IMat {
    let n = brd.rank();
    let mut tc = IMat::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        tc[(j, i)] = 1;
    }
    tc.transpose()
}

/// One-dimensional tori: `γ = 1` (split), `γ = −1` (compact), and the rank-2 Weil
/// restriction with `γ` swapping the basis.
pub fn torus_split(n: usize) -> GroupSpec {
    GroupSpec::new(BasedRootDatum::torus(n), IMat::identity(n).neg(), vec![]).expect("valid")
}

pub fn torus_compact(n: usize) -> GroupSpec {
    GroupSpec::new(BasedRootDatum::torus(n), IMat::identity(n), vec![]).expect("valid")
}

pub fn torus_weil() -> GroupSpec {
    GroupSpec::new(BasedRootDatum::torus(2), IMat::from_rows(&[[0, -1], [-1, 0]]), vec![]).expect("valid")
}

/// `U(2)`-type datum: `X∨ = ℤ²`, `α∨ = e₁ − e₂`, compact `τ`; `q = (2,0)` gives `U(2)`
/// and `q = (1,1)` gives `U(1,1)`.
pub fn u2(q: Vec<Int>) -> GroupSpec {
    let brd = BasedRootDatum::new(2, vec![vec![1, -1]], vec![vec![1, -1]]).expect("valid");
    GroupSpec::new(brd, IMat::identity(2), q).expect("valid")
}

/// `PGL₂` with an arbitrary base labeling.
pub fn pgl2_with(q: Vec<Int>) -> GroupSpec {
    GroupSpec::new(adjoint(SimpleType::parse("A1").unwrap()), IMat::identity(1), q).expect("valid")
}

/// `A × B`, with the factors of `A` first.
pub fn product(a: &GroupSpec, b: &GroupSpec) -> GroupSpec {
    let (na, nb) = (a.brd().rank(), b.brd().rank());
    let pad = |v: &[Int], before: usize, after: usize| {
        let mut out = vec![0; before];
        out.extend_from_slice(v);
        out.extend(std::iter::repeat(0).take(after));
        out
    };
    let mut roots: Vec<Vec<Int>> = a.brd().simple_roots().iter().map(|r| pad(r, 0, nb)).collect();
    roots.extend(b.brd().simple_roots().iter().map(|r| pad(r, na, 0)));
    let mut coroots: Vec<Vec<Int>> = a.brd().simple_coroots().iter().map(|r| pad(r, 0, nb)).collect();
    coroots.extend(b.brd().simple_coroots().iter().map(|r| pad(r, na, 0)));
    let brd = BasedRootDatum::new(na + nb, roots, coroots).expect("valid");
    let mut q = a.q().to_vec();
    q.extend_from_slice(b.q());
    GroupSpec::new(brd, a.tau().block_diag(b.tau()), q).expect("valid")
}

/// A datum presented in ambient coordinates: `basis` (columns) is a basis of `X∨`,
/// `roots` are functionals and `coroots` vectors in the ambient space, and `tau_c` is
/// `τ∨` there. Returns the datum in `basis` coordinates and `τ` on `X`.
pub fn from_ambient(basis: &QMat, roots: &[Vec<Rat>], coroots: &[Vec<Rat>], tau_c: &QMat) -> (BasedRootDatum, IMat) {
    let n = basis.rows();
    let bi = basis.inverse().expect("basis");
    let to_int = |v: Vec<Rat>| -> Vec<Int> { v.iter().map(|x| {
        assert!(x.is_integer(), "not integral in the chosen basis");
        x.to_integer()
    }).collect() };
    let cr: Vec<Vec<Int>> = coroots.iter().map(|c| to_int(bi.mul_vec(c))).collect();
    let rt: Vec<Vec<Int>> = roots.iter().map(|r| to_int(basis.transpose().mul_vec(r))).collect();
    let tc = bi.mul(tau_c).mul(basis).to_imat().expect("τ∨ preserves X∨");
    (BasedRootDatum::new(n, rt, cr).expect("valid datum"), tc.transpose())
}

/// The datum of `(Spin_{2ℓ} × T¹)/{1, (a, −1)}` in ambient coordinates
/// `ε_1, …, ε_ℓ, ε` with `X∨ = ⟨Q∨, ε∨, ω∨_{ℓ−1} + ½ε∨⟩`; `split` negates `ε∨`.
fn d_with_center(l: usize, split: bool) -> (BasedRootDatum, IMat) {
    assert!(l >= 4 && l % 2 == 0, "ℓ must be even and at least 4");
    let n = l + 1;
    let unit = |i: usize, c: Int| {
        let mut v = vec![Rat::from_integer(0); n];
        v[i] = Rat::from_integer(c);
        v
    };
    let add = |a: &[Rat], b: &[Rat]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let mut simple: Vec<Vec<Rat>> = (0..l - 1).map(|i| add(&unit(i, 1), &unit(i + 1, -1))).collect();
    simple.push(add(&unit(l - 2, 1), &unit(l - 1, 1)));
    let mut omega = vec![Rat::new(1, 2); n];
    omega[l - 1] = Rat::new(-1, 2);
    omega[l] = Rat::new(1, 2);
    let mut gens = simple.clone();
    gens.push(unit(l, 1));
    gens.push(omega);
    let lat = Lattice::from_gens(n, &gens);
    let basis = lat.basis_qmat();
    let mut tau_c = QMat::identity(n);
    if split {
        tau_c[(l, l)] = Rat::from_integer(-1);
    }
    from_ambient(&basis, &simple, &simple, &tau_c)
}

/// Labeling of `D_ℓ^{(1)}` in the sector `(r, r′)`.
pub fn sector_labeling(l: usize, r: u8, rp: u8) -> Vec<Int> {
    let mut q = vec![0; l + 1];
    match (r, rp) {
        (0, 0) => q[0] = 2,
        (0, 1) => {
            q[0] = 1;
            q[l - 1] = 1;
        }
        (1, 0) => {
            q[0] = 1;
            q[1] = 1;
        }
        _ => {
            q[0] = 1;
            q[l] = 1;
        }
    }
    q
}

/// `r(p) = p_1 + p_3 + … + p_{ℓ−3} + p_ℓ` and `r′(p) = p_{ℓ−1} + p_ℓ`, mod 2.
pub fn sector_of(l: usize, p: &[Int]) -> (u8, u8) {
    let r: Int = (1..=l - 3).step_by(2).map(|i| p[i]).sum::<Int>() + p[l];
    let rp = p[l - 1] + p[l];
    (r.rem_euclid(2) as u8, rp.rem_euclid(2) as u8)
}

pub fn gsq_with(l: usize, q: Vec<Int>) -> GroupSpec {
    let (brd, tau) = d_with_center(l, true);
    GroupSpec::new(brd, tau, q).expect("valid")
}

pub fn gcq_with(l: usize, q: Vec<Int>) -> GroupSpec {
    let (brd, tau) = d_with_center(l, false);
    GroupSpec::new(brd, tau, q).expect("valid")
}

pub fn gsq(l: usize, r: u8, rp: u8) -> GroupSpec {
    gsq_with(l, sector_labeling(l, r, rp))
}

pub fn gcq(l: usize, r: u8, rp: u8) -> GroupSpec {
    gcq_with(l, sector_labeling(l, r, rp))
}

/// `r″(m) = 2⟨ε, m⟩ mod 2`, `ε` a generator of `Λ`.
pub fn r2_of(spec: &GroupSpec, m: &[Rat]) -> u8 {
    let eps = &spec.lattice_chain().lambda.basis()[0];
    let v = dot_q(eps, m) * Rat::from_integer(2);
    assert!(v.is_integer(), "m ∉ M∨");
    v.to_integer().rem_euclid(2) as u8
}

/// `F₀`-orbits of pairs `(p, [m])` in the sector `r(p) ≡ r`, `r′(p) ≡ r′`, and, when
/// given, `r″(m) ≡ r″`. The base labeling of `spec` plays no role.
pub fn orbit_set(spec: &GroupSpec, r: u8, rp: u8, rpp: Option<u8>) -> Result<Vec<Vec<ReductiveLabeling>>, KacError> {
    let l = spec.diagram().num_vertices() - 1;
    let keep = |x: &ReductiveLabeling| {
        sector_of(l, &x.p) == (r, rp) && rpp.map_or(true, |v| r2_of(spec, &x.m(spec)) == v)
    };
    Ok(all_pair_orbits(spec)?.into_iter().filter(|o| keep(&o[0])).collect())
}

/// `#Orb^{r,r′}`, which is also `#H¹G_{s,q}` in that sector.
pub fn expected_orb2(l: usize, r: u8, rp: u8) -> usize {
    match (r, rp) {
        (0, 0) => l / 4 + 2,
        (1, 0) => l.div_ceil(4),
        (0, 1) => 2,
        _ => 1,
    }
}

/// `#Orb^{r,r′,r″}` (independent of `r″`).
pub fn expected_orb3(l: usize, r: u8, rp: u8) -> usize {
    let half_even = (l / 2) % 2 == 0;
    match (r, rp) {
        (0, 0) => 2 * (l / 4) + if half_even { 3 } else { 4 },
        (1, 0) => 2 * l.div_ceil(4) - if half_even { 0 } else { 1 },
        _ => 2,
    }
}

pub fn expected_h1_gsq(l: usize, r: u8, rp: u8) -> usize {
    expected_orb2(l, r, rp)
}

pub fn expected_h1_gcq(l: usize, r: u8) -> usize {
    if r == 0 {
        l / 2 + 5
    } else {
        l / 2 + 2
    }
}

/// A named catalog entry.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub spec: GroupSpec,
}

/// Names of all entries, in catalog order.
pub fn names() -> Vec<String> {
    let mut out = vec!["su2".to_string(), "pgl2".to_string()];
    for t in SimpleType::all_up_to(8) {
        out.push(format!("compact-{t}"));
    }
    out.extend(["torus-split", "torus-compact", "torus-weil"].map(String::from));
    for family in ["Gsq", "Gcq"] {
        for l in [6, 8, 10, 12] {
            for (r, rp) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                out.push(format!("{family}-l{l}-r{r}-rp{rp}"));
            }
        }
    }
    out
}

/// Looks up an entry by name; `Gsq-l8` and `Gcq-l8` abbreviate the `r0-rp0` sectors.
pub fn lookup(name: &str) -> Option<GroupSpec> {
    match name {
        "su2" => return Some(su2()),
        "pgl2" => return Some(pgl2_compact()),
        "torus-split" => return Some(torus_split(1)),
        "torus-compact" => return Some(torus_compact(1)),
        "torus-weil" => return Some(torus_weil()),
        _ => {}
    }
    if let Some(t) = name.strip_prefix("compact-") {
        let t = SimpleType::parse(t)?;
        return (t.rank <= 8).then(|| compact_sc(t));
    }
    let (family, rest) = name.split_once('-')?;
    let parts: Vec<&str> = rest.split('-').collect();
    let l: usize = parts.first()?.strip_prefix('l')?.parse().ok()?;
    if !(4..=12).contains(&l) || l % 2 != 0 {
        return None;
    }
    let (r, rp) = match parts.len() {
        1 => (0, 0),
        3 => (parts[1].strip_prefix('r')?.parse().ok()?, parts[2].strip_prefix("rp")?.parse().ok()?),
        _ => return None,
    };
    if r > 1 || rp > 1 {
        return None;
    }
    match family {
        "Gsq" => Some(gsq(l, r, rp)),
        "Gcq" => Some(gcq(l, r, rp)),
        _ => None,
    }
}

pub fn entries() -> Vec<Entry> {
    names().into_iter().map(|name| Entry { spec: lookup(&name).expect("listed"), name }).collect()
}
