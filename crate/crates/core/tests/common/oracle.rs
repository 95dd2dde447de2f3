//! Cross-checks against brute-force oracles and the worked counter-examples.
//! Each check panics on the first mismatch.

use std::collections::HashMap;

use super::*;
use rational_functions::bimachine::is_v_bimachine;
use rational_functions::canonical::{
    canonical_bimachine, decide_variety_unambiguous, left_congruence_trace, left_syntactic_congruence, VarietyAnswer,
};
use rational_functions::fixtures;
use rational_functions::monoid::{syntactic_monoid, transition_monoid, transition_monoid_dfa};
use rational_functions::transducer::{determinize_nft, disambiguate_by_key, minimize_dft};
use rational_functions::variety::VarietySpec;
use rational_functions::{word, Dfa, Nft, Word};

/// Functional fixtures with a non-empty domain.
pub fn functions() -> Vec<(&'static str, Nft)> {
    vec![
        ("f_ends", fixtures::f_ends()),
        ("f_even", fixtures::f_even()),
        ("g", fixtures::g().to_nft()),
        ("detxmp", fixtures::detxmp()),
        ("identity", fixtures::identity().to_nft()),
        ("det1", fixtures::det1()),
        ("det2", fixtures::det2()),
        ("dis", fixtures::dis_nft()),
        ("xmp", rational_functions::bimachine::bimachine_to_nft(&fixtures::xmp_bim())),
    ]
}

/// Outputs of `w·u` for every context `w`, contexts grouped by length.
fn outputs(t: &Nft, u: &[char], contexts: &[Vec<Word>]) -> Vec<Vec<Option<Word>>> {
    let f = t.evaluator();
    contexts
        .iter()
        .map(|layer| layer.iter().map(|w| f(&cat(w, u)).unwrap()).collect())
        .collect()
}

/// Verdict of the context oracle on two suffixes: same domain behaviour
/// under every left context, and bounded distance. Distances are tabulated
/// by context length; they must be monotone, and the pair counts as bounded
/// when the last three lengths add nothing.
fn context_oracle(x: &[Vec<Option<Word>>], y: &[Vec<Option<Word>>]) -> (bool, bool) {
    let mut same_domain = true;
    let mut maxima = Vec::new();
    let mut best = 0;
    for (lx, ly) in x.iter().zip(y) {
        for pair in lx.iter().zip(ly) {
            match pair {
                (Some(x), Some(y)) => best = best.max(distance(x, y)),
                (None, None) => {}
                _ => same_domain = false,
            }
        }
        maxima.push(best);
    }
    assert!(maxima.windows(2).all(|p| p[0] <= p[1]));
    let n = maxima.len();
    (same_domain, maxima[n - 1] == maxima[n - 3])
}

fn by_length(a: &rational_functions::Alphabet, n: usize) -> Vec<Vec<Word>> {
    let mut layers = vec![Vec::new(); n + 1];
    for w in words(a, n) {
        layers[w.len()].push(w);
    }
    layers
}

/// Words compared class by class: length 3 on two letters, 2 on three.
fn probe_length(t: &Nft) -> usize {
    if t.alphabet().len() > 2 {
        2
    } else {
        3
    }
}

pub fn left_congruence_matches_contexts() {
    for (name, t) in functions() {
        let ctx = by_length(t.alphabet(), 8);
        for v in left_congruence_trace(&t).unwrap() {
            let (x, y) = (class_word(&v.first), class_word(&v.second));
            let (dom, bounded) = context_oracle(&outputs(&t, &x, &ctx), &outputs(&t, &y, &ctx));
            assert_eq!(dom, v.same_domain, "{name}: domain of {} and {}", v.first, v.second);
            if dom {
                assert_eq!(bounded, v.bounded, "{name}: distance of {} and {}", v.first, v.second);
            }
            assert_eq!(dom && bounded, v.merged(), "{name}: {} and {}", v.first, v.second);
        }
        // the classes themselves on short words
        let r0 = left_syntactic_congruence(&t).unwrap();
        let ws = words(t.alphabet(), probe_length(&t));
        let outs: Vec<_> = ws.iter().map(|u| outputs(&t, u, &ctx)).collect();
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                let (dom, bounded) = context_oracle(&outs[i], &outs[j]);
                let same = r0.state_after(&ws[i]).unwrap() == r0.state_after(&ws[j]).unwrap();
                assert_eq!(same, dom && bounded, "{name}: {:?} and {:?}", ws[i], ws[j]);
            }
        }
    }
}

/// `f̂_r(x) = ∧{f(xv) | [v] = r}` for every right class `r`, over
/// completions `v` of length at most 6 and, to check saturation, at most 5.
struct Hats<F> {
    f: F,
    tails: Vec<(usize, Word)>,
    classes: usize,
    cache: HashMap<Word, Vec<(Option<Word>, Option<Word>)>>,
}

impl<F: Fn(&[char]) -> rational_functions::Result<Option<Word>>> Hats<F> {
    fn new(t: &Nft, f: F, r: &Dfa) -> Self {
        let tails = words(t.alphabet(), 6)
            .into_iter()
            .map(|v| (r.state_after(&v).unwrap().expect("complete"), v))
            .collect();
        Hats { f, tails, classes: r.num_states(), cache: HashMap::new() }
    }

    fn get(&mut self, x: &[char]) -> &[(Option<Word>, Option<Word>)] {
        if !self.cache.contains_key(x) {
            let mut full: Vec<Option<Word>> = vec![None; self.classes];
            let mut cut: Vec<Option<Word>> = vec![None; self.classes];
            for (c, v) in &self.tails {
                let Some(y) = (self.f)(&cat(x, v)).unwrap() else { continue };
                for (acc, used) in [(&mut full, true), (&mut cut, v.len() <= 5)] {
                    if used {
                        acc[*c] = meet([acc[*c].as_ref().unwrap_or(&y), &y]);
                    }
                }
            }
            self.cache.insert(x.to_vec(), full.into_iter().zip(cut).collect());
        }
        &self.cache[x]
    }
}

type Signature = Vec<Option<Word>>;

/// Everything the left congruence of the canonical bimachine looks at after
/// the prefix `x`: increments for every letter and right class, then the
/// final label. Computed from completions up to length 6 and up to 5.
fn signature<F: Fn(&[char]) -> rational_functions::Result<Option<Word>>>(h: &mut Hats<F>, r: &Dfa, x: &[char]) -> (Signature, Signature) {
    let a = r.alphabet().clone();
    let here = h.get(x).to_vec();
    let (mut full, mut cut) = (Vec::new(), Vec::new());
    for s in 0..a.len() {
        let mut xs = x.to_vec();
        xs.push(a.letter(s));
        let next = h.get(&xs).to_vec();
        for (class, (long_f, long_c)) in next.into_iter().enumerate() {
            let (short_f, short_c) = &here[r.delta(class, s).unwrap()];
            full.push(long_f.map(|l| strip(short_f.as_ref().expect("defined"), &l)));
            cut.push(long_c.map(|l| strip(short_c.as_ref().expect("defined"), &l)));
        }
    }
    let fx = (h.f)(x).unwrap();
    let (init_f, init_c) = &here[r.initial()];
    full.push(fx.as_ref().map(|f| strip(init_f.as_ref().expect("defined"), f)));
    cut.push(fx.map(|f| strip(init_c.as_ref().expect("defined"), &f)));
    (full, cut)
}

pub fn left_automaton_matches_definition() {
    for (name, t) in functions() {
        let b = canonical_bimachine(&t, None).unwrap();
        let r = b.right();
        let a = t.alphabet().clone();
        let mut h = Hats::new(&t, t.evaluator(), r);
        let ws = words(&a, probe_length(&t));
        let ctx = words(&a, 5);
        let mut sigs = Vec::new();
        for u in &ws {
            let mut s = Vec::new();
            for w in &ctx {
                let uw = cat(u, w);
                let (full, cut) = signature(&mut h, r, &uw);
                assert_eq!(full, cut, "{name}: completions of {uw:?} not saturated");
                s.push(full);
            }
            sigs.push(s);
        }
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                let same = b.left().state_after(&ws[i]).unwrap() == b.left().state_after(&ws[j]).unwrap();
                assert_eq!(same, sigs[i] == sigs[j], "{name}: {:?} and {:?}", ws[i], ws[j]);
            }
        }
    }
}

pub fn determinization_breaks_idempotency() {
    let i = VarietySpec::builtin("idempotent").unwrap();
    let t = fixtures::det1();
    assert!(i.contains(&transition_monoid(&t.underlying())));
    let d = determinize_nft(&t).unwrap();
    let bad = i.violation(&transition_monoid_dfa(&d.underlying())).expect("x = xx fails");
    assert_eq!(bad.equation, "x = x x");
}

pub fn determinization_breaks_commutativity() {
    let com = VarietySpec::builtin("commutative").unwrap();
    let t = fixtures::det2();
    assert!(com.contains(&transition_monoid(&t.underlying())));
    for (u, v) in [("ab", "a"), ("aab", "a"), ("aba", "ab"), ("ba", "c"), ("baa", "c")] {
        assert_eq!(t.eval_str(u).unwrap().as_deref(), Some(v));
    }
    let d = determinize_nft(&t).unwrap();
    assert!(com.violation(&transition_monoid_dfa(&d.underlying())).is_some());
}

pub fn determinization_breaks_j() {
    let j = VarietySpec::builtin("J").unwrap();
    let t = fixtures::det4();
    assert!(j.contains(&transition_monoid(&t.underlying())));
    let d = determinize_nft(&t).unwrap();
    assert!(j.violation(&transition_monoid_dfa(&d.underlying())).is_some());
    for u in words(t.alphabet(), 4) {
        assert_eq!(d.eval(&u).unwrap(), t.eval(&u).unwrap());
    }
}

pub fn commutative_bimachine_with_a_non_commutative_domain() {
    let com = VarietySpec::builtin("commutative").unwrap();
    let b = fixtures::v_bim();
    assert!(is_v_bimachine(&b, &com));
    let dom: Vec<Word> = words(b.alphabet(), 4).into_iter().filter(|u| b.eval(u).unwrap().is_some()).collect();
    assert_eq!(dom, vec![word("ab")]);
    assert!(!com.contains(&syntactic_monoid(&b.domain().minimize())));
}

pub fn minimal_transducer_of_g() {
    let m = minimize_dft(&fixtures::g()).unwrap();
    assert_eq!(m.num_states(), 3);
    assert_eq!(m.initial_output(), &['a']);
    assert_eq!(m.edge("[ε]", 'a'), Some(("[a]", String::new())));
    assert_eq!(m.edge("[a]", 'a'), Some(("[a]", "a".into())));
    assert_eq!(m.edge("[a]", 'b'), Some(("[ab]", "aa".into())));
    assert_eq!(m.edge("[ab]", 'b'), Some(("[ab]", "a".into())));
    assert_eq!(m.edge("[ab]", 'a'), Some(("[a]", String::new())));
    assert_eq!(m.edge("[ε]", 'b'), None);
}

pub fn syntactic_monoid_of_l_ends() {
    let m = rational_functions::monoid::syntactic_monoid_nfa(&fixtures::l_ends());
    let expected = [
        ("a", ["a", "ab", "ab", "a"]),
        ("b", ["ba", "b", "b", "ba"]),
        ("ab", ["a", "ab", "ab", "a"]),
        ("ba", ["ba", "b", "b", "ba"]),
    ];
    let cols = ["a", "b", "ab", "ba"];
    assert_eq!(m.size(), 5);
    for (row, products) in expected {
        let x = m.element_of(&word(row)).unwrap();
        for (col, want) in cols.iter().zip(products) {
            let y = m.element_of(&word(col)).unwrap();
            assert_eq!(m.mul(x, y), m.element_of(&word(want)).unwrap(), "{row}·{col}");
        }
    }
}

pub fn parity_on_both_sides() {
    let b = canonical_bimachine(&fixtures::f_even(), None).unwrap();
    for m in [transition_monoid_dfa(b.left()), transition_monoid_dfa(b.right())] {
        assert_eq!(m.group_witness().map(|(_, p)| p), Some(2));
    }
}

pub fn aperiodic_transducers_give_aperiodic_families() {
    for (name, t) in functions() {
        if !transition_monoid(&t.underlying()).is_aperiodic() {
            continue;
        }
        let r0 = left_syntactic_congruence(&t).unwrap();
        assert!(transition_monoid_dfa(&r0).is_aperiodic(), "{name}: right automaton");
        let b = canonical_bimachine(&t, None).unwrap();
        assert!(transition_monoid_dfa(b.left()).is_aperiodic(), "{name}: left automaton");
    }
}

/// `det1` over idempotent monoids: the lattice search answers on its own
/// and any machine it returns must define the function.
pub fn idempotent_search_on_det1() {
    let i = VarietySpec::builtin("idempotent").unwrap();
    let t = fixtures::det1();
    match decide_variety_unambiguous(&t, &i).unwrap() {
        VarietyAnswer::Yes { nft, bimachine, candidates } => {
            assert!(candidates >= 1);
            assert!(nft.is_unambiguous());
            assert!(i.contains(&transition_monoid(&nft.underlying())));
            assert!(is_v_bimachine(&bimachine, &i));
            for u in words(t.alphabet(), 7) {
                assert_eq!(nft.eval(&u).unwrap(), t.eval(&u).unwrap());
            }
            println!("det1 in idempotent: yes after {candidates} candidate(s)");
        }
        VarietyAnswer::No { reason, .. } => panic!("det1 itself is an unambiguous idempotent transducer: {reason}"),
    }
}

/// Least-run disambiguation of the aperiodic automaton `dis` gives a
/// periodic automaton whichever `a`-transition out of `0` is preferred.
pub fn disambiguation_of_dis_is_periodic() {
    let t = fixtures::dis_nft();
    assert!(transition_monoid(&t.underlying()).is_aperiodic());
    assert!(!t.is_unambiguous());
    let n = t.trim().num_states();
    let one_first: Vec<usize> = (0..n).collect();
    let three_first: Vec<usize> = (0..n).map(|q| match t.trim().name(q) {
        "1" => 3,
        "3" => 1,
        _ => q,
    }).collect();
    for key in [one_first, three_first] {
        let u = disambiguate_by_key(&t, &key).unwrap();
        assert!(u.is_unambiguous());
        for w in words(t.alphabet(), 8) {
            assert_eq!(u.eval(&w).unwrap(), t.eval(&w).unwrap());
        }
        let m = transition_monoid(&u.underlying());
        let (_, period) = m.group_witness().expect("periodic");
        assert_eq!(period, 2, "key {key:?}");
    }
}
