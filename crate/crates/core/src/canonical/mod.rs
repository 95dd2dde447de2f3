//! Canonical bimachines and the decision procedures built on them.

mod congruence;
mod decide;
mod family;
mod profile;

pub use congruence::{left_congruence_trace, left_syntactic_congruence, right_syntactic_congruence, MergeVerdict};
pub use decide::{complete_function, decide_fo, decide_variety_unambiguous, FoAnswer, VarietyAnswer};
pub use family::{Thread, TrFamily};
pub use profile::{canonical_bimachine, canonical_bimachine_left};
