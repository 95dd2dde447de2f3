//! Syntactic and transition monoids, and membership in varieties given by
//! equations.

use rational_functions::fixtures;
use rational_functions::monoid::{syntactic_monoid, syntactic_monoid_nfa, transition_monoid};
use rational_functions::variety::{VarietySpec, BUILTIN_NAMES};

fn main() -> rational_functions::Result<()> {
    let m = syntactic_monoid_nfa(&fixtures::l_ends());
    print!("{}", m.dump(true));

    let parity = syntactic_monoid(&fixtures::l_even());
    println!("parity: size {}, aperiodic {}", parity.size(), parity.is_aperiodic());
    if let Some((x, period)) = parity.group_witness() {
        println!("group of order {period} around {:?}", parity.representative(x));
    }

    for name in BUILTIN_NAMES {
        let v = VarietySpec::builtin(name)?;
        match v.violation(&m) {
            None => println!("{name}: yes"),
            Some(bad) => println!("{name}: fails {}", bad.equation),
        }
    }

    // a user variety: commutative and idempotent
    let v = VarietySpec::parse("@variety ci\neq xy = yx\neq x = xx\n")?;
    let t = transition_monoid(&fixtures::det1().underlying());
    println!("det1 in {}: {}", v.name(), v.contains(&t));
    Ok(())
}
