//! The randomised properties, runnable with any number of cases.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rational_functions::bimachine::{bimachine_to_nft, complete_bimachine, nft_to_bimachine};
use rational_functions::canonical::{canonical_bimachine, canonical_bimachine_left, left_syntactic_congruence, TrFamily};
use rational_functions::monoid::{transition_monoid, transition_monoid_dfa};
use rational_functions::partition::{congruence_closure, Partition};
use rational_functions::transducer::{determinize_nft, minimize_dft};
use rational_functions::translation::{bimachine_to_translation, translation_to_bimachine};
use rational_functions::variety::{VarietySpec, BUILTIN_NAMES};
use rational_functions::{Dfa, Error, Nfa, Nft, Orientation, Word};

use super::*;

type Outcome = Result<(), TestCaseError>;

fn check<S: Strategy>(cases: u32, s: S, test: impl Fn(S::Value) -> Outcome) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&s, test).map_err(|e| e.to_string())
}

/// What `u` does to each state of `d`: the transition congruence without
/// building the monoid.
fn action(d: &Dfa, u: &[char]) -> Vec<Option<usize>> {
    let letters = d.alphabet().encode(u).unwrap();
    (0..d.num_states()).map(|q| d.run_letters(q, &letters)).collect()
}

fn relation(a: &Nfa, u: &[char]) -> Vec<BTreeSet<usize>> {
    let letters = a.alphabet().encode(u).unwrap();
    (0..a.num_states()).map(|q| a.run_from(&BTreeSet::from([q]), &letters)).collect()
}

fn same_function(t: &Nft, eval: impl Fn(&[char]) -> Option<Word>, n: usize) -> Outcome {
    for u in words(t.alphabet(), n) {
        let want = t.eval(&u).unwrap();
        prop_assert_eq!(eval(&u), want, "on {:?}", u);
    }
    Ok(())
}

pub fn determinization(cases: u32) -> Result<(), String> {
    check(cases, arb_functional_nft(), |t| match determinize_nft(&t) {
        Ok(d) => {
            same_function(&t, |u| d.eval(u).unwrap(), 8)?;
            if transition_monoid(&t.underlying()).is_aperiodic() {
                prop_assert!(transition_monoid_dfa(&d.underlying()).is_aperiodic());
            }
            Ok(())
        }
        Err(Error::NotSequentialisable { .. }) => Ok(()),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    })?;
    check(cases, arb_dft(), |d| {
        let t = d.to_nft();
        let e = determinize_nft(&t).unwrap();
        same_function(&t, |u| e.eval(u).unwrap(), 8)
    })
}

pub fn minimization(cases: u32) -> Result<(), String> {
    check(cases, arb_dft(), |d| {
        let t = d.to_nft();
        if t.domain_is_empty() {
            prop_assert_eq!(minimize_dft(&d).unwrap_err(), Error::EmptyDomain);
            return Ok(());
        }
        let m = minimize_dft(&d).unwrap();
        same_function(&t, |u| m.eval(u).unwrap(), 8)?;
        prop_assert_eq!(minimize_dft(&m).unwrap().num_states(), m.num_states());
        let (before, after) = (d.underlying(), m.underlying());
        let ws = words(d.alphabet(), 4);
        for (i, m1) in ws.iter().enumerate() {
            for m2 in &ws[i + 1..] {
                if action(&before, m1) == action(&before, m2) {
                    prop_assert_eq!(action(&after, m1), action(&after, m2));
                }
            }
        }
        Ok(())
    })
}

pub fn bimachine_round_trip(cases: u32) -> Result<(), String> {
    check(cases, arb_bimachine(3, 2, false), |b| {
        let t = bimachine_to_nft(&b);
        for u in words(b.alphabet(), 7) {
            prop_assert_eq!(t.eval(&u).unwrap(), b.eval(&u).unwrap());
        }
        let c = complete_bimachine(&b).unwrap();
        prop_assert!(c.is_complete());
        let tc = bimachine_to_nft(&c);
        prop_assert!(tc.is_unambiguous());
        let back = nft_to_bimachine(&tc).unwrap();
        for u in words(b.alphabet(), 7) {
            prop_assert_eq!(back.eval(&u).unwrap(), b.eval(&u).unwrap());
        }
        Ok(())
    })
}

pub fn translation_round_trip(cases: u32) -> Result<(), String> {
    check(cases, arb_bimachine(2, 2, true), |b| {
        let all = VarietySpec::builtin("all").unwrap();
        let tr = bimachine_to_translation(&b, &all).unwrap();
        tr.validate().unwrap();
        let back = translation_to_bimachine(&tr).unwrap();
        prop_assert!(back.is_complete());
        for u in words(b.alphabet(), 6) {
            let want = b.eval(&u).unwrap();
            prop_assert_eq!(tr.eval(&u).unwrap(), want.clone());
            prop_assert_eq!(back.eval(&u).unwrap(), want);
        }
        Ok(())
    })
}

pub fn prefix_law(cases: u32) -> Result<(), String> {
    check(cases, arb_functional_nft(), |t| {
        if t.domain_is_empty() {
            return Ok(());
        }
        let r = left_syntactic_congruence(&t).unwrap();
        let fam = TrFamily::new(&t, &r).unwrap();
        let a = t.alphabet().clone();
        for u in words(&a, 5) {
            for s in 0..r.num_states() {
                for x in 0..a.len() {
                    let mut ux = u.clone();
                    ux.push(a.letter(x));
                    let Some(long) = fam.hat(s, &ux).unwrap() else { continue };
                    let short = fam.hat(r.delta(s, x).unwrap(), &u).unwrap();
                    prop_assert!(short.as_ref().is_some_and(|w| long.starts_with(w)), "{:?} {:?} {:?}", u, short, long);
                }
            }
        }
        Ok(())
    })
}

/// Words with the same transition in the transducer are left congruent.
pub fn transitions_refine_left_congruence(cases: u32) -> Result<(), String> {
    check(cases, arb_functional_nft(), |t| {
        let r = left_syntactic_congruence(&t).unwrap();
        let a = t.underlying();
        let ws = words(t.alphabet(), 4);
        let rel: Vec<_> = ws.iter().map(|u| relation(&a, u)).collect();
        for (i, m1) in ws.iter().enumerate() {
            for (j, m2) in ws.iter().enumerate().skip(i + 1) {
                if rel[i] == rel[j] {
                    prop_assert_eq!(r.state_after(m1).unwrap(), r.state_after(m2).unwrap());
                }
            }
        }
        Ok(())
    })
}

/// A coarser congruence has a coarser transition congruence, so its monoid
/// stays in every variety the finer one lies in. Four states at most: a
/// random complete automaton on six has a transition monoid with tens of
/// thousands of elements.
pub fn coarser_congruence_coarser_monoid(cases: u32) -> Result<(), String> {
    let s = (1usize..=3, 1usize..=4)
        .prop_flat_map(|(k, n)| complete_dfa(k, n, Orientation::Left, "q"))
        .prop_flat_map(|d| {
            let n = d.num_states();
            (Just(d), 0..n, 0..n)
        });
    check(cases, s, |(d, x, y)| {
        let n = d.num_states();
        let act: Vec<Vec<usize>> = (0..n)
            .map(|q| (0..d.alphabet().len()).map(|a| d.delta(q, a).unwrap()).collect())
            .collect();
        let coarse = congruence_closure(&Partition::discrete(n), &[(x, y)], &act);
        let q = d.quotient(&coarse).unwrap();
        let ws = words(d.alphabet(), 4);
        for (i, u) in ws.iter().enumerate() {
            for v in &ws[i + 1..] {
                if action(&d, u) == action(&d, v) {
                    prop_assert_eq!(action(&q, u), action(&q, v));
                }
            }
        }
        let (m1, m2) = (transition_monoid_dfa(&d), transition_monoid_dfa(&q));
        for name in BUILTIN_NAMES {
            let v = VarietySpec::builtin(name).unwrap();
            if v.contains(&m1) {
                prop_assert!(v.contains(&m2), "{}", name);
            }
        }
        Ok(())
    })
}

pub fn canonical_eval(cases: u32) -> Result<(), String> {
    check(cases, arb_functional_nft(), |t| {
        if t.domain_is_empty() {
            prop_assert_eq!(canonical_bimachine(&t, None).unwrap_err(), Error::EmptyDomain);
            return Ok(());
        }
        let b = canonical_bimachine(&t, None).unwrap();
        same_function(&t, |u| b.eval(u).unwrap(), 8)?;
        let l = canonical_bimachine_left(&t, None).unwrap();
        same_function(&t, |u| l.eval(u).unwrap(), 6)
    })
}

pub type Suite = [(&'static str, fn(u32) -> Result<(), String>); 8];

pub const SUITE: Suite = [
    ("determinization keeps the function and aperiodicity", determinization),
    ("minimize_dft keeps the function, coarsest transition congruence", minimization),
    ("bimachine and transducer round trip", bimachine_round_trip),
    ("translation and bimachine round trip", translation_round_trip),
    ("prefix law of the family", prefix_law),
    ("transition classes refine the left congruence", transitions_refine_left_congruence),
    ("coarser congruence gives coarser monoid", coarser_congruence_coarser_monoid),
    ("canonical bimachines define the function", canonical_eval),
];
