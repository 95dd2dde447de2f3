//! Generators for small random machines and brute-force oracles that only
//! use evaluation on words.
#![allow(dead_code)]

pub mod oracle;
pub mod props;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rational_functions::bimachine::{bimachine_to_nft, Bimachine};
use rational_functions::{Alphabet, Dfa, Dft, Nft, Orientation, Word};

pub const LETTERS: [char; 3] = ['a', 'b', 'c'];

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(LETTERS[..k].iter().copied()).unwrap()
}

pub fn out_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b']), 0..=2)
}

fn opt_word(p_some: f64) -> BoxedStrategy<Option<Word>> {
    if p_some >= 1.0 {
        out_word().prop_map(Some).boxed()
    } else {
        prop::option::weighted(p_some, out_word()).boxed()
    }
}

/// A complete Dfa on `n` states with random transitions.
pub fn complete_dfa(k: usize, n: usize, o: Orientation, prefix: &'static str) -> impl Strategy<Value = Dfa> {
    prop::collection::vec(prop::collection::vec(0..n, k), n).prop_map(move |rows| {
        Dfa::from_parts(
            alphabet(k),
            o,
            (0..n).map(|i| format!("{prefix}{i}")).collect(),
            0,
            BTreeSet::new(),
            rows.into_iter().map(|r| r.into_iter().map(Some).collect()).collect(),
        )
        .unwrap()
    })
}

/// A random deterministic transducer: at most 6 states, at most 3 letters,
/// outputs of at most 2 letters.
pub fn arb_dft() -> impl Strategy<Value = Dft> {
    (1usize..=3, 1usize..=6)
        .prop_flat_map(|(k, n)| {
            (
                Just(k),
                Just(n),
                prop::collection::vec(prop::option::weighted(0.8, (0..n, out_word())), n * k),
                prop::collection::vec(opt_word(0.5), n),
                out_word(),
            )
        })
        .prop_map(|(k, n, edges, finals, init)| {
            let mut t = Nft::new(alphabet(k));
            for q in 0..n {
                t.add_state(q.to_string());
            }
            t.set_initial(0, init);
            for (i, e) in edges.into_iter().enumerate() {
                if let Some((q2, w)) = e {
                    t.add_transition(i / k, i % k, q2, w).unwrap();
                }
            }
            for (q, f) in finals.into_iter().enumerate() {
                if let Some(w) = f {
                    t.set_final(q, w);
                }
            }
            Dft::from_nft(&t).unwrap()
        })
}

/// A random bimachine with complete automata (left up to `nl` states,
/// right up to `nr`) and partial outputs.
pub fn arb_bimachine(nl: usize, nr: usize, total: bool) -> impl Strategy<Value = Bimachine> {
    let p = if total { 1.0 } else { 0.85 };
    (1usize..=3, 1..=nl, 1..=nr)
        .prop_flat_map(move |(k, l, r)| {
            (
                complete_dfa(k, l, Orientation::Left, "l"),
                complete_dfa(k, r, Orientation::Right, "r"),
                prop::collection::vec(opt_word(p), l * k * r),
                prop::collection::vec(opt_word(0.7), l),
                prop::collection::vec(opt_word(0.7), r),
            )
        })
        .prop_map(|(left, right, omega, rho, lambda)| {
            let (k, nr) = (left.alphabet().len(), right.num_states());
            let omega = omega
                .into_iter()
                .enumerate()
                .filter_map(|(i, w)| w.map(|w| ((i / (k * nr), (i / nr) % k, i % nr), w)))
                .collect();
            let pick = |v: Vec<Option<Word>>| -> BTreeMap<usize, Word> {
                v.into_iter().enumerate().filter_map(|(i, w)| w.map(|w| (i, w))).collect()
            };
            Bimachine::from_parts(left, right, omega, pick(rho), pick(lambda)).unwrap()
        })
}

/// Adds a copy of state `q`: same outgoing transitions and final output,
/// and a second target for every transition into `q`. The function is kept
/// and the transducer becomes ambiguous when the copy is useful.
pub fn clone_state(t: &Nft, q: usize) -> Nft {
    let mut u = t.clone();
    let c = u.add_state(format!("{}'", t.name(q)));
    if let Some(w) = t.initials().get(&q) {
        u.set_initial(c, w.clone());
    }
    if let Some(w) = t.finals().get(&q) {
        u.set_final(c, w.clone());
    }
    for (p, a, q2, w) in t.transitions() {
        let src = if p == q { Some(c) } else { None };
        let w = w.clone();
        if let Some(s) = src {
            let dst = if q2 == q { c } else { q2 };
            u.add_transition(s, a, dst, w.clone()).unwrap();
        }
        if q2 == q {
            u.add_transition(p, a, c, w).unwrap();
        }
    }
    u
}

/// A random functional transducer: the product of a small bimachine, with
/// up to two states copied to make it ambiguous. At most 6 states.
pub fn arb_functional_nft() -> impl Strategy<Value = Nft> {
    (arb_bimachine(2, 2, false), prop::collection::vec(0usize..4, 0..=2)).prop_map(|(b, copies)| {
        let mut t = bimachine_to_nft(&b).trim();
        let base = t.num_states();
        for q in copies {
            if base > 0 && q < base {
                t = clone_state(&t, q);
            }
        }
        t
    })
}

/// All words up to length `n` over the machine's alphabet.
pub fn words(a: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &c in a.letters() {
                let mut x: Word = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn cat(u: &[char], v: &[char]) -> Word {
    u.iter().chain(v).copied().collect()
}

pub fn common_prefix(u: &[char], v: &[char]) -> usize {
    u.iter().zip(v).take_while(|(x, y)| x == y).count()
}

/// `|u| + |v| - 2|u ∧ v|`.
pub fn distance(u: &[char], v: &[char]) -> usize {
    u.len() + v.len() - 2 * common_prefix(u, v)
}

/// The longest common prefix of a set of words, `None` for the empty set.
pub fn meet<'a>(ws: impl IntoIterator<Item = &'a Word>) -> Option<Word> {
    let mut acc: Option<Word> = None;
    for w in ws {
        acc = Some(match acc {
            None => w.clone(),
            Some(m) => m[..common_prefix(&m, w)].to_vec(),
        });
    }
    acc
}

/// `u⁻¹v`, checking that `u` is a prefix of `v`.
pub fn strip(u: &[char], v: &[char]) -> Word {
    assert!(v.starts_with(u), "{u:?} is not a prefix of {v:?}");
    v[u.len()..].to_vec()
}

/// Evaluation with memoisation, for oracles that ask the same word often.
pub struct Memo<'a> {
    pub t: &'a Nft,
    cache: BTreeMap<Word, Option<Word>>,
}

impl<'a> Memo<'a> {
    pub fn new(t: &'a Nft) -> Self {
        Memo { t, cache: BTreeMap::new() }
    }

    pub fn f(&mut self, w: &[char]) -> Option<Word> {
        if let Some(x) = self.cache.get(w) {
            return x.clone();
        }
        let x = self.t.eval(w).unwrap();
        self.cache.insert(w.to_vec(), x.clone());
        x
    }
}

/// Names like `[ab]` or `[ε]` back to the word they stand for.
pub fn class_word(name: &str) -> Word {
    let inner = name.trim_start_matches('[').trim_end_matches(']');
    if inner == "ε" {
        Vec::new()
    } else {
        inner.chars().collect()
    }
}
