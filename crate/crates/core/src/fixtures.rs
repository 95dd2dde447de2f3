//! Small machines used throughout the examples and tests.
//!
//! State names follow the usual drawings: numbered states for automata and
//! transducers, `l…`/`r…` for bimachine automata.

use crate::automata::{Dfa, Nfa, Orientation};
use crate::bimachine::Bimachine;
use crate::transducer::{Dft, Nft};
use crate::translation::Translation;
use crate::variety::VarietySpec;
use crate::word::{word, Alphabet};

/// Words of even length over `{a}`.
pub fn l_even() -> Dfa {
    Dfa::builder(&['a'])
        .initial("0")
        .final_("0")
        .trans("0", 'a', "1")
        .trans("1", 'a', "0")
        .build_dfa()
        .unwrap()
}

/// Words over `{a, b}` starting and ending with `a`.
pub fn l_ends() -> Nfa {
    Nfa::builder(&['a', 'b'])
        .initial("0")
        .trans("0", 'a', "1")
        .trans("0", 'a', "2")
        .trans("1", 'a', "2")
        .loops("1", "ab", "1")
        .final_("2")
        .build()
        .unwrap()
}

/// `aⁿ ↦ aⁿ` for even `n`, `ε` otherwise.
pub fn f_even() -> Nft {
    Nft::builder(&['a'])
        .initial("0", "")
        .final_("0", "")
        .trans("0", 'a', "1", "a")
        .trans("1", 'a', "0", "a")
        .initial("2", "")
        .trans("2", 'a', "3", "")
        .trans("3", 'a', "2", "")
        .final_("3", "")
        .build()
        .unwrap()
}

/// `u ↦ a^|u|` when `u` starts and ends with `a`, `ε` otherwise.
pub fn f_ends() -> Nft {
    Nft::builder(&['a', 'b'])
        .initial("0", "")
        .final_("0", "")
        .trans("0", 'a', "1", "a")
        .trans("0", 'a', "3", "a")
        .trans("0", 'a', "2", "")
        .trans("0", 'b', "4", "")
        .trans("1", 'a', "3", "a")
        .loops("1", "ab", "1", "a")
        .loops("2", "ab", "2", "")
        .trans("2", 'b', "3", "")
        .loops("4", "ab", "4", "")
        .final_("3", "")
        .final_("4", "")
        .build()
        .unwrap()
}

/// `f_ends` restricted to the words that start and end with `a`, as a
/// deterministic transducer that pays for the closing `a` in advance.
pub fn g() -> Dft {
    Nft::builder(&['a', 'b'])
        .initial("0", "")
        .trans("0", 'a', "1", "a")
        .trans("1", 'a', "1", "a")
        .trans("1", 'b', "2", "aa")
        .trans("2", 'b', "2", "a")
        .trans("2", 'a', "1", "")
        .final_("1", "")
        .build_dft()
        .unwrap()
}

/// A nondeterministic transducer for `g` with a one-letter lag.
pub fn detxmp() -> Nft {
    Nft::builder(&['a', 'b'])
        .initial("0", "")
        .trans("0", 'a', "1", "aa")
        .trans("0", 'a', "2", "a")
        .trans("1", 'a', "2", "")
        .loops("1", "ab", "1", "a")
        .final_("2", "")
        .build()
        .unwrap()
}

/// Identity on `{a, b}*`.
pub fn identity() -> Dft {
    Nft::builder(&['a', 'b'])
        .initial("0", "")
        .final_("0", "")
        .trans("0", 'a', "0", "a")
        .trans("0", 'b', "0", "b")
        .build_dft()
        .unwrap()
}

/// `a ↦ a`, `aⁿ ↦ b` for `n > 1`; its transition monoid satisfies `x = x²`.
pub fn det1() -> Nft {
    Nft::builder(&['a', 'b'])
        .initial("0", "")
        .trans("0", 'a', "1", "a")
        .trans("0", 'a', "2", "b")
        .trans("2", 'a', "1", "")
        .trans("2", 'a', "2", "")
        .final_("1", "")
        .build()
        .unwrap()
}

/// `ab ↦ a, aab ↦ a, aba ↦ ab, ba ↦ c, baa ↦ c`; commutative transition
/// monoid.
pub fn det2() -> Nft {
    Nft::builder(&['a', 'b', 'c'])
        .initial("0", "")
        .trans("0", 'a', "2", "a")
        .trans("0", 'a', "6", "a")
        .trans("0", 'b', "1", "c")
        .trans("0", 'b', "7", "c")
        .trans("1", 'a', "3", "")
        .trans("2", 'a', "4", "")
        .trans("2", 'b', "3", "b")
        .trans("3", 'a', "5", "")
        .trans("4", 'b', "5", "")
        .trans("6", 'b', "8", "")
        .trans("7", 'a', "8", "")
        .final_("5", "")
        .final_("8", "")
        .build()
        .unwrap()
}

/// A subsequential function with a `J` transition monoid. The indexed
/// letters `a₀, a₁, b₀, b₁` are written `p, q, r, s`.
pub fn det4() -> Nft {
    Nft::builder(&['a', 'p', 'q', 'b', 'r', 's', 'c', 'd'])
        .initial("0", "")
        .trans("0", 'a', "0", "p")
        .trans("0", 'b', "0", "r")
        .trans("0", 'a', "1", "q")
        .trans("0", 'b', "1", "s")
        .trans("0", 'c', "2", "")
        .trans("1", 'd', "2", "")
        .final_("2", "")
        .build()
        .unwrap()
}

/// The aperiodic but ambiguous automaton on which least-run disambiguation
/// produces a periodic automaton.
pub fn dis() -> Nfa {
    Nfa::builder(&['a', 'b', 'c'])
        .initial("0")
        .final_("0")
        .trans("0", 'a', "1")
        .trans("0", 'a', "3")
        .trans("1", 'c', "0")
        .trans("1", 'b', "2")
        .trans("2", 'a', "3")
        .trans("3", 'b', "0")
        .trans("3", 'c', "4")
        .trans("4", 'a', "5")
        .trans("5", 'c', "0")
        .build()
        .unwrap()
}

/// Identity on the language of [`dis`].
pub fn dis_nft() -> Nft {
    Nft::identity_on(&dis()).unwrap()
}

fn last_letter(right: bool, p: &str) -> Dfa {
    let (s0, sa, sb) = (format!("{p}0"), format!("{p}a"), format!("{p}b"));
    let b = Dfa::builder(&['a', 'b'])
        .initial(&s0)
        .trans(&s0, 'a', &sa)
        .trans(&s0, 'b', &sb)
        .loops(&sa, "ab", &sa)
        .loops(&sb, "ab", &sb);
    let b = if right { b.right() } else { b };
    b.build_dfa().unwrap()
}

/// A bimachine for `f_ends`: both automata remember the first letter read.
pub fn xmp_bim() -> Bimachine {
    let mut b = Bimachine::new(last_letter(false, "l"), last_letter(true, "r")).unwrap();
    for l in ["l0", "la", "lb"] {
        for s in ['a', 'b'] {
            for r in ["r0", "ra", "rb"] {
                let out = match (l, s, r) {
                    ("l0" | "la", 'a', "r0" | "ra") | ("la", 'b', "ra") => "a",
                    _ => "",
                };
                b.set_output(l, s, r, out).unwrap();
            }
        }
        b.set_rho(l, "").unwrap();
    }
    for r in ["r0", "ra", "rb"] {
        b.set_lambda(r, "").unwrap();
    }
    b
}

/// A bimachine with commutative automata whose domain `{ab}` is not a
/// commutative language.
pub fn v_bim() -> Bimachine {
    let left = Dfa::builder(&['a', 'b'])
        .initial("l0")
        .trans("l0", 'a', "l1")
        .trans("l0", 'b', "l2")
        .trans("l1", 'b', "l3")
        .trans("l2", 'a', "l3")
        .build_dfa()
        .unwrap();
    let right = Dfa::builder(&['a', 'b'])
        .right()
        .initial("r0")
        .loops("r0", "ab", "r0")
        .build_dfa()
        .unwrap();
    let mut b = Bimachine::new(left, right).unwrap();
    b.set_output("l0", 'a', "r0", "").unwrap();
    b.set_output("l1", 'b', "r0", "").unwrap();
    b.set_rho("l3", "").unwrap();
    b.set_lambda("r0", "").unwrap();
    b
}

/// Words whose first letter (last letter for a right Dfa) is `c`; the
/// complement when `negate` holds.
fn first_letter_is(c: char, negate: bool, o: Orientation) -> Dfa {
    let other = if c == 'a' { 'b' } else { 'a' };
    let b = Dfa::builder(&['a', 'b'])
        .initial("0")
        .trans("0", c, "1")
        .trans("0", other, "2")
        .loops("1", "ab", "1")
        .loops("2", "ab", "2");
    let b = if o == Orientation::Right { b.right() } else { b };
    let b = if negate { b.final_("0").final_("2") } else { b.final_("1") };
    b.build_dfa().unwrap()
}

fn top(o: Orientation) -> Dfa {
    let b = Dfa::builder(&['a', 'b']).initial("0").final_("0").loops("0", "ab", "0");
    let b = if o == Orientation::Right { b.right() } else { b };
    b.build_dfa().unwrap()
}

/// The first-order translation of `f_ends` with `k = 2` and outputs
/// `{ε, a}`: a position copies `a` exactly when the word starts and ends
/// with `a`.
pub fn f_ends_translation() -> Translation {
    use Orientation::{Left, Right};
    let alphabet = Alphabet::new(['a', 'b']).unwrap();
    let mut t = Translation::new(alphabet, 2, &[word(""), word("a")], VarietySpec::aperiodic()).unwrap();
    let starts = |c, neg| first_letter_is(c, neg, Left);
    let ends = |c, neg| first_letter_is(c, neg, Right);
    let rows = [
        (1, 'a', "", starts('b', false), top(Right)),
        (2, 'a', "", top(Left), ends('b', false)),
        (1, 'a', "a", starts('b', true), ends('b', true)),
        (1, 'b', "", starts('a', true), top(Right)),
        (2, 'b', "", top(Left), ends('a', true)),
        (1, 'b', "a", starts('a', false), ends('a', false)),
    ];
    for (j, c, v, before, after) in rows {
        t.set_before(j, c, &word(v), &before).unwrap();
        t.set_after(j, c, &word(v), &after).unwrap();
    }
    t.set_initial(&word(""), &top(Right)).unwrap();
    t.set_terminal(&word(""), &top(Left)).unwrap();
    t
}
