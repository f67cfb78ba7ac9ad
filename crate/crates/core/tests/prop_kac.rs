mod common;

use common::props;

const CASES: u32 = 256;

#[test]
fn f0_preserves_labelings() {
    props::f0_preserves_labelings(CASES).unwrap();
}

#[test]
fn congruence_iff_membership() {
    props::congruence_iff_membership(CASES).unwrap();
}

#[test]
fn representatives_are_cocycles() {
    props::representatives_are_cocycles(CASES).unwrap();
}

#[test]
fn twist_preserves_counts() {
    props::twist_preserves_counts(CASES).unwrap();
}

#[test]
fn center_action_is_action() {
    props::center_action_is_action(CASES).unwrap();
}

#[test]
fn ab1_constant_on_orbits() {
    props::ab1_constant_on_orbits(CASES).unwrap();
}

#[test]
fn pi0_elementary() {
    props::pi0_elementary(CASES).unwrap();
}
