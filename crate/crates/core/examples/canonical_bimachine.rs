//! The canonical bimachine of a function: the right automaton is the left
//! syntactic congruence, the left automaton is the coarsest one that makes
//! the outputs well defined.

use rational_functions::canonical::{
    canonical_bimachine, canonical_bimachine_left, left_congruence_trace, left_syntactic_congruence, TrFamily,
};
use rational_functions::fixtures;
use rational_functions::text::{write, Machine};

fn main() -> rational_functions::Result<()> {
    let t = fixtures::f_ends();
    for v in left_congruence_trace(&t)? {
        println!("{} ~ {}: domain {}, bounded {}", v.first, v.second, v.same_domain, v.bounded);
    }

    let r0 = left_syntactic_congruence(&t)?;
    let fam = TrFamily::new(&t, &r0)?;
    for th in fam.threads() {
        println!("thread {}: {} states, {} transitions", th.class, th.states, th.transitions);
    }

    let b = canonical_bimachine(&t, None)?;
    print!("{}", write("f_ends", &Machine::Bimachine(b.clone())));
    for u in ["abaa", "baaab", "abab"] {
        assert_eq!(b.eval_str(u)?, t.eval_str(u)?);
    }

    let mirror = canonical_bimachine_left(&t, None)?;
    println!("symmetric: {} x {}", mirror.left().num_states(), mirror.right().num_states());
    Ok(())
}
