//! Automata in both reading directions: a left automaton reads a word from
//! the start, a right automaton from the end.

use rational_functions::{word, Dfa, Nfa};

fn main() -> rational_functions::Result<()> {
    // words starting and ending with `a`
    let l_ends = Nfa::builder(&['a', 'b'])
        .initial("0")
        .trans("0", 'a', "1")
        .trans("0", 'a', "2")
        .trans("1", 'a', "2")
        .loops("1", "ab", "1")
        .final_("2")
        .build()?;
    for w in ["a", "aba", "ab", "ba", ""] {
        println!("{w:>4}: {}", l_ends.accepts(&word(w))?);
    }

    let d = l_ends.determinize().minimize();
    println!("minimal dfa: {} states, complete: {}", d.num_states(), d.is_complete());

    // the reversal reads from the right and keeps the language
    let r = l_ends.reverse().determinize().minimize();
    println!("right dfa: {} states, {:?}", r.num_states(), r.orientation());
    assert!(r.accepts(&word("abba"))?);

    let starts_with_b = Dfa::builder(&['a', 'b'])
        .initial("s")
        .trans("s", 'b', "t")
        .loops("t", "ab", "t")
        .final_("t")
        .build_dfa()?;
    let both = l_ends.product(&starts_with_b.to_nfa())?;
    println!("L_ends ∩ bΣ* empty: {}", both.is_empty());
    Ok(())
}
