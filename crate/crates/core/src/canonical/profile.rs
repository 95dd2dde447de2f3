//! The canonical bimachine `B^R` over a left congruence `R`.
//!
//! The profile of a prefix `u` is the tuple of states reached in every
//! member of the family `T_R`. Profiles form a left Dfa whose transitions
//! carry the increments `f̂_{σr}(u)⁻¹ f̂_r(uσ)` and whose states carry
//! `f̂_{r₀}(u)⁻¹ f(u)`. Merging profiles with equal behaviour gives the left
//! automaton `L^R`, and the increments become the outputs of the bimachine.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::congruence::{left_syntactic_congruence, right_syntactic_congruence};
use super::family::TrFamily;
use crate::automata::{Dfa, Orientation};
use crate::bimachine::Bimachine;
use crate::error::{Error, Result};
use crate::partition::{moore_refine, Partition};
use crate::transducer::Nft;
use crate::word::{concat, residual, Word};

type Profile = Vec<Option<usize>>;
type Increments = Vec<Option<Word>>;

/// Fails unless every class of `fine` lies inside one class of `coarse`,
/// naming the offending class and the two classes it meets.
pub(crate) fn check_finer(fine: &Dfa, coarse: &Dfa, what: &str) -> Result<()> {
    if fine.alphabet() != coarse.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if fine.orientation() != coarse.orientation() {
        return Err(Error::OrientationMismatch);
    }
    let fine = fine.complete();
    let coarse = coarse.complete();
    let mut map: Vec<Option<usize>> = vec![None; fine.num_states()];
    map[fine.initial()] = Some(coarse.initial());
    let mut queue = VecDeque::from([fine.initial()]);
    while let Some(p) = queue.pop_front() {
        let c = map[p].expect("visited");
        for a in 0..fine.alphabet().len() {
            let p2 = fine.delta(p, a).expect("complete");
            let c2 = coarse.delta(c, a).expect("complete");
            match map[p2] {
                None => {
                    map[p2] = Some(c2);
                    queue.push_back(p2);
                }
                Some(old) if old != c2 => {
                    return Err(Error::NotFiner(format!(
                        "class {} meets classes {} and {} of the {what}",
                        fine.name(p2),
                        coarse.name(old),
                        coarse.name(c2)
                    )))
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

struct ProfileAutomaton {
    profiles: Vec<Profile>,
    delta: Vec<Vec<usize>>,
    increments: Vec<Vec<Increments>>,
    final_label: Vec<Option<Word>>,
}

fn profiles(fam: &TrFamily) -> Result<ProfileAutomaton> {
    let r = fam.right();
    let nr = r.num_states();
    let k = r.alphabet().len();
    let r0 = r.initial();
    let start: Profile = (0..nr).map(|s| fam.initial(s)).collect();
    let mut pa = ProfileAutomaton {
        profiles: vec![start.clone()],
        delta: Vec::new(),
        increments: Vec::new(),
        final_label: Vec::new(),
    };
    let mut index: BTreeMap<Profile, usize> = BTreeMap::from([(start, 0)]);
    let mut i = 0;
    while i < pa.profiles.len() {
        let p = pa.profiles[i].clone();
        let mut row = Vec::with_capacity(k);
        let mut incs = Vec::with_capacity(k);
        for a in 0..k {
            let mut next: Profile = vec![None; nr];
            let mut inc: Increments = vec![None; nr];
            for s in 0..nr {
                let before = r.delta(s, a).expect("complete");
                let Some(x) = p[before] else { continue };
                let Some((y, v)) = fam.step(x, a, s) else { continue };
                next[s] = Some(*y);
                inc[s] = Some(residual(fam.terminal(x), &concat(v, fam.terminal(*y)))?);
            }
            let j = *index.entry(next.clone()).or_insert_with(|| {
                pa.profiles.push(next);
                pa.profiles.len() - 1
            });
            row.push(j);
            incs.push(inc);
        }
        let fin = match p[r0] {
            Some(x) => match fam.final_output(x) {
                Some(f) => Some(residual(fam.terminal(x), f)?),
                None => None,
            },
            None => None,
        };
        pa.delta.push(row);
        pa.increments.push(incs);
        pa.final_label.push(fin);
        i += 1;
    }
    Ok(pa)
}

/// `B^R`: the bimachine over `R` and the coarsest left automaton that makes
/// the outputs well defined. Without `right`, `R` is the left syntactic
/// congruence and the result is the canonical bimachine `B⁰`.
pub fn canonical_bimachine(t: &Nft, right: Option<&Dfa>) -> Result<Bimachine> {
    let r0 = left_syntactic_congruence(t)?;
    let r = match right {
        Some(r) => {
            if r.orientation() != Orientation::Right {
                return Err(Error::OrientationMismatch);
            }
            check_finer(r, &r0, "left syntactic congruence")?;
            r.complete()
        }
        None => r0,
    };
    let fam = TrFamily::new(t, &r)?;
    let pa = profiles(&fam)?;
    let k = r.alphabet().len();
    let part = moore_refine(&pa.final_label, k, |x, a| {
        Some((pa.increments[x][a].clone(), pa.delta[x][a]))
    });
    let profile_dfa = Dfa::from_parts(
        r.alphabet().clone(),
        Orientation::Left,
        (0..pa.profiles.len()).map(|i| i.to_string()).collect(),
        0,
        BTreeSet::new(),
        pa.delta.iter().map(|row| row.iter().map(|&j| Some(j)).collect()).collect(),
    )?;
    let left = profile_dfa.quotient(&part)?.named_by_representatives();
    assemble(&fam, &pa, &part, left, r)
}

fn assemble(fam: &TrFamily, pa: &ProfileAutomaton, part: &Partition, left: Dfa, right: Dfa) -> Result<Bimachine> {
    let k = right.alphabet().len();
    let mut omega = BTreeMap::new();
    let mut rho = BTreeMap::new();
    for (l, block) in part.blocks().iter().enumerate() {
        let x = block[0];
        for a in 0..k {
            for (s, inc) in pa.increments[x][a].iter().enumerate() {
                if let Some(w) = inc {
                    omega.insert((l, a, s), w.clone());
                }
            }
        }
        if let Some(w) = &pa.final_label[x] {
            rho.insert(l, w.clone());
        }
    }
    let lambda = (0..right.num_states())
        .filter_map(|s| fam.initial(s).map(|x| (s, concat(fam.initial_output(), fam.terminal(x)))))
        .collect();
    Bimachine::from_parts(left, right, omega, rho, lambda)
}

/// `B_L`: the symmetric construction over a right congruence `L` (a left
/// Dfa), built on the mirror function. Without `left`, `L` is the right
/// syntactic congruence and the result is `B₀`.
pub fn canonical_bimachine_left(t: &Nft, left: Option<&Dfa>) -> Result<Bimachine> {
    let flipped = match left {
        Some(l) => {
            if l.orientation() != Orientation::Left {
                return Err(Error::OrientationMismatch);
            }
            check_finer(l, &right_syntactic_congruence(t)?, "right syntactic congruence")?;
            Some(l.complete().with_orientation(Orientation::Right))
        }
        None => None,
    };
    let m = canonical_bimachine(&t.mirror(), flipped.as_ref())?.mirror();
    let right = m.right().named_by_representatives();
    let left = m.left().named_by_representatives();
    Bimachine::from_parts(left, right, m.omega().clone(), m.rho().clone(), m.lambda().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn agrees(b: &Bimachine, t: &Nft, n: usize) {
        for u in t.alphabet().words_up_to(n) {
            assert_eq!(b.eval(&u).unwrap(), t.eval(&u).unwrap(), "on {u:?}");
        }
    }

    #[test]
    fn f_ends_gives_three_by_three() {
        let t = fixtures::f_ends();
        let b = canonical_bimachine(&t, None).unwrap();
        assert_eq!(b.left().num_states(), 3);
        assert_eq!(b.right().num_states(), 3);
        assert!(b.is_complete());
        agrees(&b, &t, 7);
    }

    #[test]
    fn identity_is_one_by_one() {
        let t = fixtures::identity().to_nft();
        let b = canonical_bimachine(&t, None).unwrap();
        assert_eq!((b.left().num_states(), b.right().num_states()), (1, 1));
        agrees(&b, &t, 5);
    }

    #[test]
    fn partial_functions() {
        for t in [fixtures::g().to_nft(), fixtures::det2(), fixtures::f_even(), fixtures::det1()] {
            let b = canonical_bimachine(&t, None).unwrap();
            agrees(&b, &t, 6);
            let b = canonical_bimachine_left(&t, None).unwrap();
            agrees(&b, &t, 6);
        }
    }

    #[test]
    fn coarse_right_automaton_is_refused() {
        let one = Dfa::builder(&['a', 'b']).right().initial("r").loops("r", "ab", "r").build_dfa().unwrap();
        let err = canonical_bimachine(&fixtures::f_ends(), Some(&one)).unwrap_err();
        assert!(matches!(err, Error::NotFiner(ref m) if m.contains("class r meets classes [ε] and [a]")), "{err}");
    }

    #[test]
    fn finer_right_automaton_is_accepted() {
        let t = fixtures::f_ends();
        let r = fixtures::xmp_bim().right().clone();
        let b = canonical_bimachine(&t, Some(&r)).unwrap();
        agrees(&b, &t, 6);
        assert_eq!(b.right().num_states(), 3);
    }
}
