#![allow(dead_code)]

pub mod props;

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::Rng;
use realcoh::glattice::GammaLattice;
use realcoh::gmod::{GammaMap, GammaModule, ShortExact};
use realcoh::kac::{enumerate_labelings, h1, reductive_labelings, ReductiveLabeling, H1};
use realcoh::linalg::{IMat, Int, Lattice};
use realcoh::rootdata::{catalog, GroupSpec};

/// Product of random elementary row operations.
pub fn unimodular_from(n: usize, ops: &[(usize, usize, i8)]) -> IMat {
    let mut m = IMat::identity(n);
    for &(a, b, c) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            m.negate_row(a);
        } else {
            m.add_row_multiple(a, b, c as Int);
        }
    }
    m
}

pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IMat {
    let ops: Vec<(usize, usize, i8)> =
        (0..2 * n).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), if rng.gen() { 1 } else { -1 })).collect();
    unimodular_from(n, &ops)
}

pub fn ops(n: usize) -> impl Strategy<Value = Vec<(usize, usize, i8)>> {
    prop::collection::vec((0..n, 0..n, prop_oneof![Just(1i8), Just(-1i8)]), 0..=2 * n)
}

/// `(a, b, c)` with `1 ≤ a + b + 2c ≤ max_rank`.
pub fn block_type(max_rank: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..=max_rank, 0..=max_rank, 0..=max_rank / 2).prop_filter("rank in range", move |&(a, b, c)| {
        let r = a + b + 2 * c;
        (1..=max_rank).contains(&r)
    })
}

/// A random conjugate of a block model, with its block type.
pub fn lattice(max_rank: usize) -> impl Strategy<Value = ((usize, usize, usize), GammaLattice)> {
    block_type(max_rank).prop_flat_map(|(a, b, c)| {
        let n = a + b + 2 * c;
        ops(n).prop_map(move |o| ((a, b, c), GammaLattice::model(a, b, c).conjugate(&unimodular_from(n, &o))))
    })
}

fn small_cols(n: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<Int>>> {
    prop::collection::vec(prop::collection::vec(-3 as Int..=3, n), 0..=max_cols)
}

/// `ℤⁿ/R` with `R` spanned by `D`, `γD` and `dℤⁿ`; finite whenever `d > 0`.
pub fn module_from(s: &IMat, d_cols: &[Vec<Int>], d: Int) -> GammaModule {
    let n = s.rows();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for c in d_cols {
        cols.push(c.clone());
        cols.push(s.mul_vec(c));
    }
    if d > 0 {
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = d;
            cols.push(e);
        }
    }
    GammaModule::new(IMat::from_cols(n, &cols), s.clone()).expect("γ-stable relations")
}

pub fn module(max_rank: usize, finite: bool) -> impl Strategy<Value = GammaModule> {
    lattice(max_rank).prop_flat_map(move |(_, l)| {
        let s = l.involution().clone();
        let n = s.rows();
        let d = if finite { prop_oneof![Just(2 as Int), Just(3), Just(4), Just(6)].boxed() } else { prop_oneof![Just(0 as Int), Just(2), Just(4)].boxed() };
        (small_cols(n, 2), d).prop_map(move |(cols, d)| module_from(&s, &cols, d))
    })
}

/// `0 → A → B → C → 0` with `A` the submodule generated by `V` and `γV`.
pub fn ses_from(b: &GammaModule, v: &[Vec<Int>]) -> ShortExact {
    let n = b.n();
    let s = b.action();
    let rel = b.relations().col_vecs();
    let mut gens: Vec<Vec<Int>> = rel.clone();
    for c in v {
        gens.push(c.clone());
        gens.push(s.mul_vec(c));
    }
    let sub = Lattice::from_int_gens(n, &gens);
    let f = sub.int_basis().expect("integral");
    let coords = |x: &[Int]| sub.coords_int(x).expect("in the submodule");
    let a_rel: Vec<Vec<Int>> = rel.iter().map(|r| coords(r)).collect();
    let a_act: Vec<Vec<Int>> = f.col_vecs().iter().map(|c| coords(&s.mul_vec(c))).collect();
    let m = f.cols();
    let a = GammaModule::new(IMat::from_cols(m, &a_rel), IMat::from_cols(m, &a_act)).expect("submodule");
    let c = GammaModule::new(IMat::from_cols(n, &gens), s.clone()).expect("quotient");
    let i = GammaMap::equivariant(a, b.clone(), f).expect("inclusion");
    let j = GammaMap::equivariant(b.clone(), c, IMat::identity(n)).expect("projection");
    ShortExact::new(i, j).expect("exact by construction")
}

pub fn ses(max_rank: usize) -> impl Strategy<Value = ShortExact> {
    module(max_rank, false).prop_flat_map(|b| {
        let n = b.n();
        prop::collection::vec(prop::collection::vec(-2 as Int..=2, n), 1..=2).prop_map(move |v| ses_from(&b, &v))
    })
}

/// Reductive specs whose `H¹` is cheap; labelings and `H¹` are computed on demand.
pub struct Pool {
    pub specs: Vec<(String, GroupSpec)>,
    labs: Vec<OnceLock<Vec<ReductiveLabeling>>>,
    h1: Vec<OnceLock<H1>>,
}

impl Pool {
    pub fn spec(&self, i: usize) -> &GroupSpec {
        &self.specs[i].1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.specs[i].0
    }

    pub fn labs(&self, i: usize) -> &[ReductiveLabeling] {
        self.labs[i].get_or_init(|| reductive_labelings(self.spec(i)).expect("labelings"))
    }

    pub fn h1(&self, i: usize) -> &H1 {
        self.h1[i].get_or_init(|| h1(self.spec(i)).expect("h1"))
    }
}

fn base_specs() -> Vec<(String, GroupSpec)> {
    let mut out: Vec<(String, GroupSpec)> = Vec::new();
    for e in catalog::entries() {
        let small = e.spec.brd().rank() <= 6 || e.name.contains("-l6-") || e.name.contains("-l8-");
        if small {
            out.push((e.name, e.spec));
        }
    }
    out.push(("u2-compact".into(), catalog::u2(vec![2, 0])));
    out.push(("u11".into(), catalog::u2(vec![1, 1])));
    out.push(("pgl2-split".into(), catalog::pgl2_with(vec![1, 1])));
    out.push(("su2xsu2".into(), catalog::product(&catalog::su2(), &catalog::su2())));
    out.push(("su2xT".into(), catalog::product(&catalog::su2(), &catalog::torus_weil())));
    out.push(("pgl2xTc".into(), catalog::product(&catalog::pgl2_compact(), &catalog::torus_compact(1))));
    out
}

/// Every inner form (all valid base labelings) of the base specs.
fn all_forms() -> Vec<(String, GroupSpec)> {
    let mut out = Vec::new();
    for (name, spec) in base_specs() {
        let mut any = false;
        for q in enumerate_labelings(spec.diagram()) {
            if let Ok(s) = spec.with_q(q.clone()) {
                any = true;
                out.push((format!("{name}/q={q:?}"), s));
            }
        }
        if !any {
            out.push((name, spec));
        }
    }
    out
}

pub fn pool() -> &'static Pool {
    static POOL: OnceLock<Pool> = OnceLock::new();
    POOL.get_or_init(|| {
        let specs = all_forms();
        let n = specs.len();
        Pool { specs, labs: (0..n).map(|_| OnceLock::new()).collect(), h1: (0..n).map(|_| OnceLock::new()).collect() }
    })
}

pub fn pool_index() -> impl Strategy<Value = usize> {
    (0..pool().specs.len()).prop_map(|i| i)
}
