//! Minimization of a deterministic transducer: outputs are pushed towards
//! the initial state, then states with the same residual behaviour merge.

use rational_functions::transducer::{minimize_dft, state_prefixes};
use rational_functions::text::{write, Machine};
use rational_functions::{word, Nft};

fn main() -> rational_functions::Result<()> {
    let g = Nft::builder(&['a', 'b'])
        .initial("0", "")
        .trans("0", 'a', "1", "a")
        .trans("1", 'a', "2", "a")
        .trans("2", 'a', "2", "a")
        .trans("1", 'b', "3", "aa")
        .trans("2", 'b', "3", "aa")
        .trans("3", 'b', "3", "a")
        .trans("3", 'a', "2", "")
        .final_("1", "")
        .final_("2", "")
        .build_dft()?;
    println!("pushed prefixes: {:?}", state_prefixes(&g));

    let m = minimize_dft(&g)?;
    print!("{}", write("g_min", &Machine::Dft(m.clone())));
    for u in ["a", "aab", "abba", "ab"] {
        println!("{u:>5} -> {:?}", m.eval_str(u)?);
        assert_eq!(m.eval(&word(u))?, g.eval(&word(u))?);
    }
    Ok(())
}
