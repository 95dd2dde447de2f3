//! Translations: for every position, a left language on the prefix and a
//! right language on the suffix pick one output word.

use rational_functions::bimachine::complete_bimachine;
use rational_functions::fixtures;
use rational_functions::translation::{bimachine_to_translation, translation_to_bimachine};
use rational_functions::variety::VarietySpec;

fn main() -> rational_functions::Result<()> {
    let t = fixtures::f_ends_translation();
    t.validate()?;
    for u in ["abaa", "ba", ""] {
        println!("{u:>5} -> {:?}", t.eval_str(u)?);
    }
    for (slot, size) in t.monoid_sizes() {
        println!("{}: monoid of size {size}", t.slot_name(slot));
    }

    let b = translation_to_bimachine(&t)?;
    println!("bimachine: {} x {}", b.left().num_states(), b.right().num_states());

    // f_even counts, so its translation needs all monoids
    let fe = rational_functions::canonical::canonical_bimachine(&fixtures::f_even(), None)?;
    let fe = complete_bimachine(&fe)?;
    let all = VarietySpec::builtin("all")?;
    let tr = bimachine_to_translation(&fe, &all)?;
    println!("f_even: k = {}, aa -> {:?}", tr.k(), tr.eval_str("aa")?);
    println!("aperiodic: {}", bimachine_to_translation(&fe, &VarietySpec::aperiodic()).is_err());
    Ok(())
}
