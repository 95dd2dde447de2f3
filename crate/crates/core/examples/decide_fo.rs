//! First-order definability of rational functions.

use rational_functions::canonical::{decide_fo, FoAnswer};
use rational_functions::fixtures;

fn main() -> rational_functions::Result<()> {
    let cases = [
        ("f_ends", fixtures::f_ends()),
        ("f_even", fixtures::f_even()),
        ("identity", fixtures::identity().to_nft()),
    ];
    for (name, t) in cases {
        match decide_fo(&t)? {
            FoAnswer::Yes { nft, translation, .. } => println!(
                "{name}: yes, {} state aperiodic transducer, translation with k = {}",
                nft.num_states(),
                translation.k()
            ),
            FoAnswer::No { monoid, witness, period } => {
                let w: String = witness.iter().collect();
                println!("{name}: no, the {monoid} monoid holds Z{period} at {w:?}")
            }
        }
    }
    Ok(())
}
