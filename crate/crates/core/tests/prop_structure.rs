mod common;

use common::props;
use realcoh::rootdata::catalog;

const CASES: u32 = 256;

#[test]
fn central_windows_exact() {
    props::central_windows_exact(CASES).unwrap();
}

#[test]
fn pushforward_functorial() {
    props::pushforward_functorial(CASES).unwrap();
}

#[test]
fn direct_sum_lemma() {
    props::direct_sum_lemma(CASES).unwrap();
}

#[test]
fn chain_invariants_hold_on_catalog() {
    for e in catalog::entries() {
        let c = e.spec.lattice_chain();
        let check = c.check();
        assert!(check.all(), "{}: {:?}", e.name, check);
        let (f0, f, cc) = (c.f0().order().unwrap(), c.f().order().unwrap(), c.c().order().unwrap());
        assert_eq!(f % f0, 0, "{}", e.name);
        assert_eq!(cc % f, 0, "{}", e.name);
    }
}
