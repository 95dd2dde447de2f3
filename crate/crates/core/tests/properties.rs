//! Randomised properties over small machines.

mod common;

use common::props;

const CASES: u32 = 256;

#[test]
fn determinization_keeps_the_function() {
    props::determinization(CASES).unwrap();
}

#[test]
fn minimization_is_coarsest() {
    props::minimization(CASES).unwrap();
}

#[test]
fn bimachine_and_transducer_round_trip() {
    props::bimachine_round_trip(CASES).unwrap();
}

#[test]
fn translation_round_trip() {
    props::translation_round_trip(CASES).unwrap();
}

#[test]
fn prefix_law_of_the_family() {
    props::prefix_law(CASES).unwrap();
}

#[test]
fn transition_classes_refine_the_left_congruence() {
    props::transitions_refine_left_congruence(CASES).unwrap();
}

#[test]
fn coarser_congruence_coarser_monoid() {
    props::coarser_congruence_coarser_monoid(CASES).unwrap();
}

#[test]
fn canonical_bimachines_define_the_function() {
    props::canonical_eval(CASES).unwrap();
}
