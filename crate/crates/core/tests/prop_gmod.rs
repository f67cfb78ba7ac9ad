mod common;

use common::props;

const CASES: u32 = 256;

#[test]
fn classes_are_killed_by_two() {
    props::classes_are_killed_by_two(CASES).unwrap();
}

#[test]
fn tate_two_periodic() {
    props::tate_two_periodic(CASES).unwrap();
}

#[test]
fn d_squared_is_zero() {
    props::d_squared_is_zero(CASES).unwrap();
}

#[test]
fn odd_torsion_is_acyclic() {
    props::odd_torsion_is_acyclic(CASES).unwrap();
}

#[test]
fn tate_agrees_with_exhaustion() {
    props::tate_agrees_with_exhaustion(CASES).unwrap();
}

#[test]
fn tate_long_exact_sequence() {
    props::tate_long_exact_sequence(CASES).unwrap();
}

#[test]
fn shift_is_iso() {
    props::shift_is_iso(CASES).unwrap();
}
