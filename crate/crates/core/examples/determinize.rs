//! Determinization of transducers: subset states pair each state with the
//! output it still owes. Functions with unbounded delays are refused.

use rational_functions::fixtures;
use rational_functions::transducer::{determinize_nft, disambiguate};
use rational_functions::text::{write, Machine};
use rational_functions::Error;

fn main() -> rational_functions::Result<()> {
    let d = determinize_nft(&fixtures::detxmp())?;
    print!("{}", write("detxmp", &Machine::Dft(d)));

    match determinize_nft(&fixtures::f_even()) {
        Err(Error::NotSequentialisable { left, right, first, second }) => {
            println!("f_even: states {left} and {right} drift apart ({first} vs {second})")
        }
        other => println!("unexpected: {other:?}"),
    }

    // determinization need not keep a variety: det1 is idempotent, its
    // sequential form is not
    let t = fixtures::det1();
    let dft = determinize_nft(&t)?;
    let m = rational_functions::monoid::transition_monoid_dfa(&dft.underlying());
    println!("det1 sequential form idempotent: {}", (0..m.size()).all(|x| m.is_idempotent(x)));

    let dis = fixtures::dis_nft();
    println!("dis unambiguous: {}", dis.is_unambiguous());
    let u = disambiguate(&dis)?;
    println!("after disambiguation: {} ({} states)", u.is_unambiguous(), u.num_states());
    Ok(())
}
