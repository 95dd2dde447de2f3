//! Definability by aperiodic transducers and by unambiguous transducers over
//! a variety.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::congruence::right_syntactic_congruence;
use super::profile::{canonical_bimachine, canonical_bimachine_left};
use crate::automata::{Dfa, Orientation};
use crate::bimachine::{bimachine_to_nft, coarsening_map, complete_bimachine, Bimachine};
use crate::error::{Error, Result};
use crate::monoid::{syntactic_monoid, transition_monoid_dfa, FiniteMonoid};
use crate::partition::{congruence_closure, Partition};
use crate::transducer::Nft;
use crate::translation::{bimachine_to_translation, Translation};
use crate::variety::VarietySpec;
use crate::word::{Word, BOTTOM};

/// Lattice searches above this many states log a warning.
pub const LATTICE_WARN_STATES: usize = 12;

#[derive(Debug, Clone)]
pub enum FoAnswer {
    Yes {
        nft: Nft,
        bimachine: Bimachine,
        translation: Translation,
    },
    No {
        /// `domain`, `left` or `right`.
        monoid: String,
        /// An element `x` with `x^ω ≠ x^{ω+1}`, by representative.
        witness: Word,
        /// Size of the cyclic group generated around `x`.
        period: usize,
    },
}

impl FoAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, FoAnswer::Yes { .. })
    }
}

#[derive(Debug, Clone)]
pub enum VarietyAnswer {
    Yes {
        nft: Nft,
        bimachine: Bimachine,
        /// Coarsenings in the variety that were tried.
        candidates: usize,
    },
    No {
        reason: String,
        candidates: usize,
    },
}

impl VarietyAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, VarietyAnswer::Yes { .. })
    }
}

fn domain(t: &Nft) -> Dfa {
    t.underlying().determinize().minimize()
}

fn group_in(m: &FiniteMonoid, which: &str) -> Option<FoAnswer> {
    m.group_witness().map(|(x, period)| FoAnswer::No {
        monoid: which.to_string(),
        witness: m.representative(x).to_vec(),
        period,
    })
}

/// The bimachine of the nowhere-defined function.
fn empty_bimachine(t: &Nft) -> Result<Bimachine> {
    let one = |o: Orientation| {
        Dfa::from_parts(
            t.alphabet().clone(),
            o,
            vec!["[ε]".into()],
            0,
            BTreeSet::new(),
            vec![vec![Some(0); t.alphabet().len()]],
        )
    };
    let omega = (0..t.alphabet().len()).map(|a| ((0, a, 0), Vec::new())).collect();
    Bimachine::from_parts(one(Orientation::Left)?, one(Orientation::Right)?, omega, BTreeMap::new(), BTreeMap::new())
}

/// Decides whether a functional transducer defines a first-order
/// definable function: the domain must be aperiodic and so must both
/// automata of the canonical bimachine. On success the complete aperiodic
/// bimachine, its unambiguous transducer and a translation are returned.
pub fn decide_fo(t: &Nft) -> Result<FoAnswer> {
    t.check_functional()?;
    if let Some(no) = group_in(&syntactic_monoid(&domain(t)), "domain") {
        return Ok(no);
    }
    let b0 = if t.domain_is_empty() {
        empty_bimachine(t)?
    } else {
        canonical_bimachine(t, None)?
    };
    if let Some(no) = group_in(&transition_monoid_dfa(b0.left()), "left") {
        return Ok(no);
    }
    if let Some(no) = group_in(&transition_monoid_dfa(b0.right()), "right") {
        return Ok(no);
    }
    let bimachine = complete_bimachine(&b0)?;
    let nft = bimachine_to_nft(&bimachine);
    if !nft.is_unambiguous() {
        return Err(Error::Invariant("complete bimachine gave an ambiguous transducer".into()));
    }
    let translation = bimachine_to_translation(&bimachine, &VarietySpec::aperiodic())?;
    Ok(FoAnswer::Yes {
        nft,
        bimachine,
        translation,
    })
}

/// The completion `f̄` over `Σ ⊎ {⊥}`: equal to `f` on its domain and to
/// `⊥` elsewhere. A deterministic transducer for the complement of the
/// domain is added next to `t`.
pub fn complete_function(t: &Nft) -> Result<Nft> {
    t.check_functional()?;
    let outside = t.underlying().determinize().complement(true)?;
    let mut d = Nft::new(t.alphabet().clone());
    for n in outside.names() {
        d.add_state(n.clone());
    }
    d.set_initial(outside.initial(), Vec::new());
    for q in 0..outside.num_states() {
        for a in 0..t.alphabet().len() {
            if let Some(q2) = outside.delta(q, a) {
                d.add_transition(q, a, q2, Vec::new())?;
            }
        }
    }
    for &q in outside.finals() {
        d.set_final(q, vec![BOTTOM]);
    }
    Ok(t.trim().union(&d.trim())?)
}

/// Every partition of the states of `fine` that is a right congruence and
/// refines `kernel`, the finest first.
fn coarsenings(fine: &Dfa, kernel: &[usize]) -> Vec<Partition> {
    let n = fine.num_states();
    let k = fine.alphabet().len();
    let act: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..k).map(|a| fine.delta(x, a).expect("complete")).collect())
        .collect();
    let within = |p: &Partition| p.blocks().iter().all(|b| b.iter().all(|&x| kernel[x] == kernel[b[0]]));
    let start = Partition::discrete(n);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.labels().to_vec()]);
    let mut found = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for x in 0..n {
            for y in x + 1..n {
                if kernel[x] != kernel[y] || p.same(x, y) {
                    continue;
                }
                let q = congruence_closure(&p, &[(x, y)], &act);
                if within(&q) && seen.insert(q.labels().to_vec()) {
                    found.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    found.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.labels().cmp(b.labels())));
    found
}

/// Decides whether the function of `t` is defined by an unambiguous
/// transducer whose transition monoid lies in `v`.
///
/// The right congruences between the left automaton of the canonical
/// bimachine of `f̄` and the right syntactic congruence of `f̄` are
/// enumerated; each one in `v` is paired with its symmetric canonical right
/// automaton, and the first pair that lies in `v` answers yes.
pub fn decide_variety_unambiguous(t: &Nft, v: &VarietySpec) -> Result<VarietyAnswer> {
    t.check_functional()?;
    if let Some(bad) = v.violation(&syntactic_monoid(&domain(t))) {
        return Ok(VarietyAnswer::No {
            reason: format!("the syntactic monoid of the domain is not in {} (fails {})", v.name(), bad.equation),
            candidates: 0,
        });
    }
    let fbar = complete_function(t)?;
    let upper = canonical_bimachine(&fbar, None)?.left().clone();
    let lower = right_syntactic_congruence(&fbar)?;
    let map = coarsening_map(&upper, &lower)
        .map_err(|e| Error::Invariant(format!("left automaton of B⁰ is not finer than L₀: {e}")))?;
    let kernel: Vec<usize> = map
        .iter()
        .map(|c| c.flatten().ok_or_else(|| Error::Invariant("unreachable class".into())))
        .collect::<Result<_>>()?;
    if upper.num_states() > LATTICE_WARN_STATES {
        log::warn!(
            "lattice search over {} states may take a while",
            upper.num_states()
        );
    }
    let mut candidates = 0;
    for p in coarsenings(&upper, &kernel) {
        let l = upper.quotient(&p)?.named_by_representatives();
        if !v.contains(&transition_monoid_dfa(&l)) {
            continue;
        }
        candidates += 1;
        let b = canonical_bimachine_left(&fbar, Some(&l))?;
        if !v.contains(&transition_monoid_dfa(b.right())) {
            log::debug!("candidate with {} classes: right automaton not in {}", l.num_states(), v.name());
            continue;
        }
        let bimachine = complete_bimachine(&b.without_letter(BOTTOM))?;
        let nft = bimachine_to_nft(&bimachine);
        return Ok(VarietyAnswer::Yes {
            nft,
            bimachine,
            candidates,
        });
    }
    Ok(VarietyAnswer::No {
        reason: format!("no right congruence between L⁰ and L₀ gives a bimachine over {}", v.name()),
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimachine::is_v_bimachine;
    use crate::fixtures;
    use crate::monoid::transition_monoid;
    use crate::word::word;

    #[test]
    fn fo_verdicts() {
        let yes = decide_fo(&fixtures::f_ends()).unwrap();
        match &yes {
            FoAnswer::Yes { nft, bimachine, translation } => {
                assert!(nft.is_unambiguous());
                assert!(transition_monoid(&nft.underlying()).is_aperiodic());
                assert!(is_v_bimachine(bimachine, &VarietySpec::aperiodic()));
                for u in nft.alphabet().words_up_to(6) {
                    let want = fixtures::f_ends().eval(&u).unwrap();
                    assert_eq!(nft.eval(&u).unwrap(), want);
                    assert_eq!(translation.eval(&u).unwrap(), want);
                }
            }
            FoAnswer::No { .. } => panic!("f_ends is first-order"),
        }
        match decide_fo(&fixtures::f_even()).unwrap() {
            FoAnswer::No { period, .. } => assert_eq!(period, 2),
            FoAnswer::Yes { .. } => panic!("f_even counts modulo 2"),
        }
        assert!(decide_fo(&fixtures::identity().to_nft()).unwrap().is_yes());
    }

    #[test]
    fn parity_domain_is_caught_first() {
        let t = Nft::identity_on(&fixtures::l_even().to_nfa()).unwrap();
        match decide_fo(&t).unwrap() {
            FoAnswer::No { monoid, period, .. } => assert_eq!((monoid.as_str(), period), ("domain", 2)),
            FoAnswer::Yes { .. } => panic!(),
        }
    }

    #[test]
    fn completion_marks_the_outside() {
        let g = fixtures::g().to_nft();
        let gbar = complete_function(&g).unwrap();
        assert_eq!(gbar.eval(&word("ba")).unwrap(), Some(vec![BOTTOM]));
        assert_eq!(gbar.eval(&word("abba")).unwrap(), g.eval(&word("abba")).unwrap());
        assert!(gbar.is_unambiguous());
        for u in g.alphabet().words_up_to(5) {
            assert!(gbar.eval(&u).unwrap().is_some());
        }
        // total input: nothing is added
        let f = fixtures::f_ends();
        let fbar = complete_function(&f).unwrap();
        for u in f.alphabet().words_up_to(5) {
            assert_eq!(fbar.eval(&u).unwrap(), f.eval(&u).unwrap());
        }
    }

    #[test]
    fn variety_search_agrees_with_fo() {
        let ap = VarietySpec::aperiodic();
        for t in [fixtures::f_ends(), fixtures::f_even(), fixtures::identity().to_nft(), fixtures::g().to_nft()] {
            let fo = decide_fo(&t).unwrap().is_yes();
            let ans = decide_variety_unambiguous(&t, &ap).unwrap();
            assert_eq!(ans.is_yes(), fo);
            if let VarietyAnswer::Yes { nft, bimachine, .. } = ans {
                assert!(nft.is_unambiguous());
                assert!(is_v_bimachine(&bimachine, &ap));
                for u in t.alphabet().words_up_to(6) {
                    assert_eq!(nft.eval(&u).unwrap(), t.eval(&u).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_in_every_variety() {
        for name in crate::variety::BUILTIN_NAMES {
            let v = VarietySpec::builtin(name).unwrap();
            let ans = decide_variety_unambiguous(&fixtures::identity().to_nft(), &v).unwrap();
            assert!(ans.is_yes(), "{name}");
        }
    }
}
