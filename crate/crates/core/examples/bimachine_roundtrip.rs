//! Bimachines: a left automaton on the prefix, a right automaton on the
//! suffix and an output per letter. Conversions to and from unambiguous
//! transducers keep the function.

use rational_functions::bimachine::{bimachine_to_nft, complete_bimachine, nft_to_bimachine};
use rational_functions::fixtures;

fn main() -> rational_functions::Result<()> {
    let b = fixtures::xmp_bim();
    for u in ["abaa", "abab", "ba", "a"] {
        println!("{u:>5} -> {:?}", b.eval_str(u)?);
    }

    let t = bimachine_to_nft(&b);
    println!("product transducer: {} states, unambiguous {}", t.num_states(), t.is_unambiguous());

    let back = nft_to_bimachine(&t)?;
    println!(
        "back: {} x {} states, agrees on abaa: {}",
        back.left().num_states(),
        back.right().num_states(),
        back.eval_str("abaa")? == b.eval_str("abaa")?
    );

    // a partial bimachine is completed before it can be translated
    let v = fixtures::v_bim();
    let c = complete_bimachine(&v)?;
    println!("v complete: {} -> {}", v.is_complete(), c.is_complete());
    println!("v(ab) = {:?}, v(ba) = {:?}", c.eval_str("ab")?, c.eval_str("ba")?);
    Ok(())
}
