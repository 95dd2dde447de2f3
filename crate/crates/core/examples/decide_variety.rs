//! Definability by unambiguous transducers over a variety. The search runs
//! over the right congruences between the two canonical left automata.

use rational_functions::canonical::{decide_variety_unambiguous, VarietyAnswer};
use rational_functions::fixtures;
use rational_functions::variety::VarietySpec;

fn main() -> rational_functions::Result<()> {
    let machines = [
        ("f_ends", fixtures::f_ends()),
        ("g", fixtures::g().to_nft()),
        ("det1", fixtures::det1()),
        ("det2", fixtures::det2()),
    ];
    for name in ["aperiodic", "idempotent", "commutative", "J"] {
        let v = VarietySpec::builtin(name)?;
        for (m, t) in &machines {
            match decide_variety_unambiguous(t, &v)? {
                VarietyAnswer::Yes { nft, candidates, .. } => {
                    println!("{m} in {name}: yes ({} states, {candidates} candidates)", nft.num_states())
                }
                VarietyAnswer::No { reason, .. } => println!("{m} in {name}: no, {reason}"),
            }
        }
    }
    Ok(())
}
