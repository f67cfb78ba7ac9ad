//! Property suites shared by the `prop_*` targets and the acceptance run.

use std::fmt::Debug;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use realcoh::glattice::{lattice_tate, normal_form};
use realcoh::gmod::{les_window_exact, shift_iso, tate, GammaMap, GammaModule, ShortExact};
use realcoh::hyper::{
    coho_hyper_squares, hyper, i_sharp, kernel_inclusion, les_exact, quasi_inj_iso, quasi_iso_check, ComplexMorphism,
    ComplexSequence, ShortComplex,
};
use realcoh::kac::{congruences_hold, enumerate_labelings, f0_apply, f0_group, h1, nu_in_x0, CocycleRep, ReductiveLabeling};
use realcoh::linalg::{IMat, Int, Lattice, QMat, Rat};
use realcoh::oracle::tate_bruteforce;
use realcoh::pi0::pi0;
use realcoh::rootdata::{catalog, fundamental_group, BasedRootDatum, GroupSpec};
use realcoh::structure::{
    ab1, center_act_class, center_cocycle_basis, exactness_report_central, exactness_report_torus, pushforward, twist,
    twist_inverse_shift, CenterCocycle, CentralSequence, NormalHom,
};
use realcoh::torus::{pi0_torus, quasitorus_tate, torus_tate, QuasiTorusSpec, TorusSpec};

use super::{lattice, module, module_from, pool, pool_index, ses};

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn pick<T>(xs: &[T], i: usize) -> &T {
    &xs[i % xs.len()]
}

// ---- Tate cohomology ----

pub fn classes_are_killed_by_two(cases: u32) -> Result<(), String> {
    check(cases, (module(4, false), -3i64..4), |(m, k)| {
        let t = tate(&m, k);
        prop_assert!(t.is_finite());
        prop_assert!(t.is_elementary_2(), "{:?}", t.invariants());
        for g in t.generators() {
            prop_assert!(t.is_zero(&t.scale(2, &t.coords(g).unwrap())));
        }
        Ok(())
    })
}

pub fn tate_two_periodic(cases: u32) -> Result<(), String> {
    check(cases, (module(4, false), -3i64..4), |(m, k)| {
        let (a, b) = (tate(&m, k), tate(&m, k + 2));
        prop_assert_eq!(a.invariants(), b.invariants());
        prop_assert_eq!(a.generators(), b.generators());
        Ok(())
    })
}

pub fn d_squared_is_zero(cases: u32) -> Result<(), String> {
    check(cases, (module(5, false), -3i64..4), |(m, k)| {
        let dd = m.differential(k).mul(&m.differential(k - 1));
        for c in dd.col_vecs() {
            prop_assert!(m.is_zero_element(&c));
        }
        Ok(())
    })
}

pub fn odd_torsion_is_acyclic(cases: u32) -> Result<(), String> {
    let d = prop_oneof![Just(1 as Int), Just(3), Just(5), Just(9)];
    check(cases, (lattice(4), d, 0i64..2), |((_, l), d, k)| {
        let m = module_from(l.involution(), &[], d);
        prop_assert!(tate(&m, k).is_trivial());
        Ok(())
    })
}

pub fn tate_agrees_with_exhaustion(cases: u32) -> Result<(), String> {
    check(cases, (module(3, true), 0i64..2), |(m, k)| {
        let brute = tate_bruteforce(&m, k).unwrap();
        prop_assert_eq!(tate(&m, k).order(), Some(brute.order as Int));
        prop_assert!(brute.exponent_two);
        Ok(())
    })
}

pub fn tate_long_exact_sequence(cases: u32) -> Result<(), String> {
    check(cases, (ses(3), 0i64..2), |(seq, k)| {
        prop_assert_eq!(les_window_exact(&seq, k), [true; 4]);
        Ok(())
    })
}

pub fn shift_is_iso(cases: u32) -> Result<(), String> {
    check(cases, (module(4, false), 0i64..2), |(m, k)| {
        prop_assert!(shift_iso(&m, k).is_iso());
        let (a, b) = (tate(&m.twisted(), k + 1), tate(&m, k));
        prop_assert_eq!(a.invariants(), b.invariants());
        Ok(())
    })
}

// ---- hypercohomology ----

/// `a + bγ : M → M`, or `(a + bγ, b − aγ) : M → M ⊕ M` when `wide`.
fn boundary(m: &GammaModule, a: Int, b: Int, wide: bool) -> GammaMap {
    let n = m.n();
    let s = m.action();
    let poly = |x: Int, y: Int| IMat::scalar(n, x).add(&s.scale(y));
    if wide {
        GammaMap::equivariant(m.clone(), m.direct_sum(m), poly(a, b).vstack(&poly(b, -a))).expect("polynomial in γ")
    } else {
        GammaMap::equivariant(m.clone(), m.clone(), poly(a, b)).expect("polynomial in γ")
    }
}

fn complex() -> impl Strategy<Value = ShortComplex> {
    (module(3, false), -2 as Int..=2, -2 as Int..=2, any::<bool>())
        .prop_map(|(m, a, b, wide)| ShortComplex::new(boundary(&m, a, b, wide)).expect("complex"))
}

fn on_complexes(seq: &ShortExact, a: Int, b: Int) -> ComplexSequence {
    let c = |m: &GammaModule| ShortComplex::new(boundary(m, a, b, false)).unwrap();
    let (ca, cb, cc) = (c(seq.a()), c(seq.b()), c(seq.c()));
    let (fi, fj) = (seq.i.matrix().clone(), seq.j.matrix().clone());
    let i = ComplexMorphism::new(ca, cb.clone(), fi.clone(), fi).unwrap();
    let j = ComplexMorphism::new(cb, cc, fj.clone(), fj).unwrap();
    ComplexSequence::new(i, j).unwrap()
}

pub fn hyper_dd_is_zero(cases: u32) -> Result<(), String> {
    check(cases, (complex(), -2i64..3), |(c, k)| {
        let dd = c.differential(k).mul(&c.differential(k - 1));
        for col in dd.col_vecs() {
            prop_assert!(c.total().is_zero_element(&col));
        }
        Ok(())
    })
}

pub fn hyper_periodic_two_torsion(cases: u32) -> Result<(), String> {
    check(cases, (complex(), -2i64..3), |(c, k)| {
        let (h, h2) = (hyper(&c, k), hyper(&c, k + 2));
        prop_assert!(h.is_finite());
        prop_assert!(h.is_elementary_2());
        prop_assert_eq!(h.invariants(), h2.invariants());
        Ok(())
    })
}

pub fn hyper_complex_les(cases: u32) -> Result<(), String> {
    check(cases, (complex(), 0i64..2), |(c, k)| {
        prop_assert_eq!(les_exact(&c, k), [true; 3]);
        Ok(())
    })
}

pub fn hyper_quasi_injection(cases: u32) -> Result<(), String> {
    check(cases, (ses(3), 0i64..2), |(seq, k)| {
        let c = ShortComplex::new(seq.i.clone()).unwrap();
        let iso = quasi_inj_iso(&c, k).unwrap();
        prop_assert!(iso.forward.is_iso());
        let t = tate(seq.c(), k);
        prop_assert_eq!(iso.forward.target.invariants(), t.invariants());
        let round = iso.forward.compose(&iso.inverse);
        let g = &iso.forward.source;
        for i in 0..g.ngens() {
            let mut e = vec![0; g.ngens()];
            e[i] = 1;
            prop_assert_eq!(g.normalize(&round.apply(&e)), g.normalize(&e));
        }
        Ok(())
    })
}

pub fn hyper_surjective_is_kernel(cases: u32) -> Result<(), String> {
    check(cases, (ses(3), 0i64..2), |(seq, k)| {
        let c = ShortComplex::new(seq.j.clone()).unwrap();
        let (km, _) = c.kernel_module();
        let (h, t, ta) = (hyper(&c, k), tate(&km, k + 1), tate(seq.a(), k + 1));
        prop_assert_eq!(h.invariants(), t.invariants());
        prop_assert_eq!(h.invariants(), ta.invariants());
        let q = quasi_iso_check(&kernel_inclusion(&c));
        prop_assert!(q.is_quasi_iso);
        let [h0, h1] = q.induced.unwrap();
        prop_assert!(h0.is_iso() && h1.is_iso());
        Ok(())
    })
}

pub fn hyper_sequence_les(cases: u32) -> Result<(), String> {
    check(cases, (ses(3), -2 as Int..=2, -2 as Int..=2, 0i64..2), |(seq, a, b, k)| {
        prop_assert_eq!(on_complexes(&seq, a, b).window_exact(k), [true; 4]);
        Ok(())
    })
}

pub fn hyper_cohomology_diagram(cases: u32) -> Result<(), String> {
    check(cases, (ses(3), 0i64..2), |(seq, k)| {
        prop_assert_eq!(coho_hyper_squares(&seq, k), [true, true]);
        prop_assert!(i_sharp(&seq, k).is_iso());
        Ok(())
    })
}

// ---- lattices and tori ----

pub fn classification_is_complete(cases: u32) -> Result<(), String> {
    check(cases, lattice(8), |(abc, l)| {
        let nf = normal_form(&l);
        prop_assert_eq!((nf.a, nf.b, nf.c), abc);
        prop_assert!(nf.basis.is_unimodular());
        prop_assert!(nf.verify(&l));
        for k in 0..2 {
            let (x, y) = (lattice_tate(&l, k), tate(&l.as_module(), k));
            prop_assert_eq!(x.invariants(), y.invariants());
        }
        Ok(())
    })
}

pub fn torus_closed_forms(cases: u32) -> Result<(), String> {
    check(cases, lattice(8), |((a, b, _), l)| {
        let t = TorusSpec::new(l.involution().clone()).unwrap();
        let (h0, h1) = (torus_tate(&t, 0), torus_tate(&t, 1));
        prop_assert_eq!(h0.group.order(), Some(1 << a));
        prop_assert_eq!(h1.group.order(), Some(1 << b));
        for r in h0.reps.iter().chain(&h1.reps) {
            prop_assert!(r.satisfies_cocycle_identity(&t));
        }
        let p = pi0_torus(&t);
        prop_assert!(p.is_elementary_2());
        prop_assert_eq!(p.order(), Some(1 << a));
        Ok(())
    })
}

/// `A = ker(a + bγ : T → T)`, or `None` when the map is not an isogeny.
fn quasitorus(t: &TorusSpec, a: Int, b: Int) -> Option<QuasiTorusSpec> {
    let n = t.rank();
    let j = IMat::scalar(n, a).add(&t.gamma().scale(b));
    if j.det() == 0 {
        return None;
    }
    QuasiTorusSpec::new(t.clone(), t.clone(), j).ok()
}

/// The same quasi-torus as `ker(T × S → T × S)`, identity on `S`.
fn padded(a: &QuasiTorusSpec, t: &TorusSpec, s: &TorusSpec) -> QuasiTorusSpec {
    let big = TorusSpec::new(t.gamma().block_diag(s.gamma())).unwrap();
    let j = a.map().block_diag(&IMat::identity(s.rank()));
    QuasiTorusSpec::new(big.clone(), big, j).unwrap()
}

pub fn quasitorus_presentations(cases: u32) -> Result<(), String> {
    let s = (lattice(3), lattice(2), -3 as Int..=3, -3 as Int..=3, 0i64..2);
    check(cases, s, |((_, l), (_, m), a, b, k)| {
        let t = TorusSpec::new(l.involution().clone()).unwrap();
        let s = TorusSpec::new(m.involution().clone()).unwrap();
        if let Some(q) = quasitorus(&t, a, b) {
            let big = padded(&q, &t, &s);
            let (x, y) = (quasitorus_tate(&q, k), quasitorus_tate(&big, k));
            prop_assert_eq!(x.group.invariants(), y.group.invariants());
            for r in &x.reps {
                prop_assert!(q.is_cocycle(&r.element, k));
            }
            prop_assert!(exactness_report_torus(&q).passed());
        }
        Ok(())
    })
}

/// `A ⊇ B`, `L ⊇ M`, `A ⊕ L ⊇ Y ⊇ B ⊕ M`: `Y ∩ L = M` iff `Y∨ → M∨` is onto.
pub fn direct_sum_lemma(cases: u32) -> Result<(), String> {
    let s = (
        prop::collection::vec(1 as Int..=3, 2),
        prop::collection::vec(1 as Int..=3, 2),
        prop::collection::vec(prop::collection::vec(-3 as Int..=3, 4), 0..=2),
    );
    check(cases, s, |(bd, md, extra)| {
        let m: Vec<Vec<Int>> = vec![vec![0, 0, md[0], 0], vec![0, 0, 0, md[1]]];
        let mut gens: Vec<Vec<Int>> = vec![vec![bd[0], 0, 0, 0], vec![0, bd[1], 0, 0]];
        gens.extend(m.iter().cloned());
        gens.extend(extra.iter().cloned());
        let y = Lattice::from_int_gens(4, &gens);
        let l = Lattice::from_int_gens(4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let meets = y.intersect(&l) == Lattice::from_int_gens(4, &m);

        let y_dual = y.basis_qmat().inverse().unwrap().transpose();
        let restricted: Vec<Vec<Rat>> = y_dual.col_vecs().iter().map(|c| c[2..].to_vec()).collect();
        let image = Lattice::from_gens(2, &restricted);
        let z = Rat::from_integer(0);
        let m2 = QMat::from_cols(2, &[vec![Rat::from_integer(md[0]), z], vec![z, Rat::from_integer(md[1])]]);
        let m_dual = Lattice::from_qmat_cols(&m2.inverse().unwrap().transpose());
        prop_assert_eq!(meets, image == m_dual);
        Ok(())
    })
}

// ---- labelings and H¹ ----

fn random_m_class(spec: &GroupSpec, seed: &[u32]) -> Vec<Int> {
    let mc = spec.lattice_chain().m_classes();
    mc.invariants().iter().zip(seed.iter().cycle()).map(|(&d, &s)| s as Int % d.max(1)).collect()
}

pub fn f0_preserves_labelings(cases: u32) -> Result<(), String> {
    let s = (pool_index(), any::<usize>(), prop::collection::vec(any::<usize>(), 1..4));
    check(cases, s, |(i, l, word)| {
        let p = pool();
        let spec = p.spec(i);
        let labs = p.labs(i);
        let f0 = f0_group(spec);
        let mut lab = pick(labs, l).clone();
        if !f0.generators().is_empty() {
            for w in word {
                lab = f0_apply(spec, pick(f0.generators(), w), &lab).unwrap();
                prop_assert!(labs.contains(&lab), "{} {:?}", p.name(i), lab);
            }
        }
        Ok(())
    })
}

pub fn congruence_iff_membership(cases: u32) -> Result<(), String> {
    let s = (pool_index(), any::<usize>(), prop::collection::vec(any::<u32>(), 1..4));
    check(cases, s, |(i, l, seed)| {
        let spec = pool().spec(i);
        let all = enumerate_labelings(spec.diagram());
        let lab = ReductiveLabeling { p: pick(&all, l).clone(), m_class: random_m_class(spec, &seed) };
        let m = lab.m(spec);
        prop_assert_eq!(congruences_hold(spec, &lab.p, &m), nu_in_x0(spec, &lab.p, &m));
        Ok(())
    })
}

pub fn representatives_are_cocycles(cases: u32) -> Result<(), String> {
    check(cases, (pool_index(), any::<usize>()), |(i, l)| {
        let p = pool();
        let spec = p.spec(i);
        let rep = CocycleRep::new(spec, pick(p.labs(i), l).clone()).unwrap();
        prop_assert!(rep.satisfies_cocycle_identity(spec));
        prop_assert!(spec.lattice_chain().x0_dual.contains_int(&rep.nu));
        for (v, n) in rep.value.iter().zip(&rep.nu) {
            prop_assert_eq!(*v, n.rem_euclid(2));
        }
        Ok(())
    })
}

pub fn twist_preserves_counts(cases: u32) -> Result<(), String> {
    check(cases, (pool_index(), any::<usize>()), |(i, l)| {
        let p = pool();
        let spec = p.spec(i);
        let a = pick(p.labs(i), l);
        let t = twist(spec, a).unwrap();
        prop_assert_eq!(t.source.len(), t.target.len());
        let back = twist(&t.spec, &twist_inverse_shift(spec, a)).unwrap();
        for (k, &j) in t.map.iter().enumerate() {
            prop_assert_eq!(back.map[j], k);
        }
        Ok(())
    })
}

pub fn center_action_is_action(cases: u32) -> Result<(), String> {
    let coeffs = || prop::collection::vec(0u8..4, 4);
    check(cases, (pool_index(), coeffs(), coeffs(), any::<usize>()), |(i, c1, c2, cls)| {
        let p = pool();
        let spec = p.spec(i);
        let h = p.h1(i);
        let basis = center_cocycle_basis(spec);
        let combo = |c: &[u8]| {
            let mut z = CenterCocycle::trivial(spec);
            for (b, &k) in basis.iter().zip(c.iter().cycle()) {
                for _ in 0..k {
                    z = z.compose(b);
                }
            }
            z
        };
        let (z1, z2) = (combo(&c1), combo(&c2));
        prop_assert!(z1.is_valid(spec) && z2.is_valid(spec));
        let x = cls % h.len();
        let lhs = center_act_class(spec, h, &z1.compose(&z2), x).unwrap();
        let inner = center_act_class(spec, h, &z2, x).unwrap();
        prop_assert_eq!(lhs, center_act_class(spec, h, &z1, inner).unwrap());
        prop_assert_eq!(center_act_class(spec, h, &CenterCocycle::trivial(spec), x).unwrap(), x);
        Ok(())
    })
}

pub fn ab1_constant_on_orbits(cases: u32) -> Result<(), String> {
    check(cases, (pool_index(), any::<usize>()), |(i, cls)| {
        let p = pool();
        let spec = p.spec(i);
        let c = pick(&p.h1(i).classes, cls);
        let v = ab1(spec, &c.rep).unwrap();
        for l in &c.orbit {
            prop_assert_eq!(&ab1(spec, &CocycleRep::new(spec, l.clone()).unwrap()).unwrap(), &v);
        }
        Ok(())
    })
}

pub fn pi0_elementary(cases: u32) -> Result<(), String> {
    check(cases, pool_index(), |i| {
        let spec = pool().spec(i);
        let r = pi0(spec).unwrap();
        prop_assert!(r.is_elementary_2());
        prop_assert!(r.is_subgroup());
        prop_assert_eq!(r.elements.len(), 1usize << r.rank());
        prop_assert!(r.rank() <= spec.brd().rank());
        let simply_connected = spec.brd().semisimple_rank() == spec.brd().rank()
            && fundamental_group(spec).underlying_group().is_trivial();
        if simply_connected {
            prop_assert!(r.is_trivial());
        }
        Ok(())
    })
}

// ---- sequences of groups ----

fn torus_spec(gamma: &IMat) -> GroupSpec {
    GroupSpec::new(BasedRootDatum::torus(gamma.rows()), gamma.transpose().neg(), vec![]).unwrap()
}

fn small_spec() -> impl Strategy<Value = usize> {
    static SMALL: std::sync::OnceLock<Vec<usize>> = std::sync::OnceLock::new();
    let small = SMALL.get_or_init(|| (0..pool().specs.len()).filter(|&i| pool().spec(i).brd().rank() <= 3).collect());
    (0..small.len()).prop_map(move |i| small[i])
}

/// `S × T` with `id × (a + bγ)`, when that is an isogeny.
fn isogeny(s: &GroupSpec, t: &GroupSpec, a: Int, b: Int) -> Option<(GroupSpec, IMat)> {
    let n = t.brd().rank();
    let phi = IMat::scalar(n, a).add(&t.gamma_cochar().scale(b));
    if phi.det() == 0 {
        return None;
    }
    Some((catalog::product(s, t), IMat::identity(s.brd().rank()).block_diag(&phi)))
}

pub fn central_windows_exact(cases: u32) -> Result<(), String> {
    check(cases, (small_spec(), lattice(2), -3 as Int..=3, -2 as Int..=2), |(i, (_, l), a, b)| {
        let s = pool().spec(i);
        let t = torus_spec(l.involution());
        if let Some((g, j)) = isogeny(s, &t, a, b) {
            let r = exactness_report_central(&CentralSequence::new(g.clone(), g, j).unwrap()).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
        let ns = s.brd().rank();
        let proj = IMat::identity(ns).hstack(&IMat::zeros(ns, t.brd().rank()));
        let seq = CentralSequence::new(catalog::product(s, &t), s.clone(), proj).unwrap();
        let r = exactness_report_central(&seq).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        Ok(())
    })
}

pub fn pushforward_functorial(cases: u32) -> Result<(), String> {
    check(cases, (small_spec(), lattice(2), -3 as Int..=3, -2 as Int..=2), |(i, (_, l), a, b)| {
        let s = pool().spec(i);
        let t = torus_spec(l.involution());
        let (ns, nt) = (s.brd().rank(), t.brd().rank());
        if let Some((g, j)) = isogeny(s, &t, a, b) {
            let f = NormalHom::new(s.clone(), g.clone(), IMat::identity(ns).vstack(&IMat::zeros(nt, ns))).unwrap();
            let h = NormalHom::new(g.clone(), g, j).unwrap();
            let fh = f.then(&h).unwrap();
            for c in h1(s).unwrap().classes {
                let two = pushforward(&h, &pushforward(&f, &c.rep).unwrap()).unwrap();
                prop_assert_eq!(pushforward(&fh, &c.rep).unwrap(), two);
            }
        }
        Ok(())
    })
}

pub const GMOD: &[Suite] = &[
    ("2ξ = 0 (Tate)", classes_are_killed_by_two),
    ("2-periodicity (Tate)", tate_two_periodic),
    ("d∘d = 0", d_squared_is_zero),
    ("odd torsion is acyclic", odd_torsion_is_acyclic),
    ("Tate against exhaustion", tate_agrees_with_exhaustion),
    ("long exact sequence (Tate)", tate_long_exact_sequence),
    ("twisting shift is an isomorphism", shift_is_iso),
];

pub const HYPER: &[Suite] = &[
    ("D∘D = 0", hyper_dd_is_zero),
    ("2ξ = 0 and 2-periodicity (hyper)", hyper_periodic_two_torsion),
    ("long exact sequence of a complex", hyper_complex_les),
    ("quasi-injection isomorphism", hyper_quasi_injection),
    ("surjective boundary and kernel", hyper_surjective_is_kernel),
    ("long exact sequence of complexes", hyper_sequence_les),
    ("cohomology-hypercohomology diagram", hyper_cohomology_diagram),
];

pub const TORUS: &[Suite] = &[
    ("lattice classification", classification_is_complete),
    ("torus closed forms and cocycles", torus_closed_forms),
    ("quasi-torus presentations", quasitorus_presentations),
    ("direct-sum lattice lemma", direct_sum_lemma),
];

pub const KAC: &[Suite] = &[
    ("F₀ preserves reductive labelings", f0_preserves_labelings),
    ("congruence filter ⟺ ν ∈ X₀∨", congruence_iff_membership),
    ("cocycle representatives", representatives_are_cocycles),
    ("twist preserves class counts", twist_preserves_counts),
    ("center action is a group action", center_action_is_action),
    ("ab1 constant on F₀-orbits", ab1_constant_on_orbits),
    ("π₀ elementary abelian, trivial for sc", pi0_elementary),
];

pub const SEQUENCES: &[Suite] = &[
    ("π₀ window exactness", central_windows_exact),
    ("pushforward functoriality", pushforward_functorial),
];
