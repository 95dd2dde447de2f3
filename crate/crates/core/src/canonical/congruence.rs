//! The left and right syntactic congruences of a functional transducer.
//!
//! `u ∼ v` on the left when, for every context `w`, `wu` and `wv` are both in
//! the domain or both outside it, and the left distance between `f(wu)` and
//! `f(wv)` stays bounded. The right congruence is the same notion for the
//! mirror function.

use std::collections::BTreeSet;

use crate::automata::{Dfa, Orientation};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::transducer::{analyse_delays, Nft};
use crate::word::Delay;

/// The set of states reached by the representative of every state of `d`,
/// running `a` from its initial states.
fn state_sets(d: &Dfa, a: &crate::automata::Nfa) -> Result<Vec<BTreeSet<usize>>> {
    d.representatives()
        .into_iter()
        .map(|r| {
            let w = r.unwrap_or_default();
            let mut x = a.alphabet().encode(&w)?;
            if a.orientation() == Orientation::Right {
                x.reverse();
            }
            Ok(a.run_from(a.initials(), &x))
        })
        .collect()
}

/// One pair of base classes (reverse subset classes of the domain) and the
/// two tests that decide whether they merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeVerdict {
    pub first: String,
    pub second: String,
    pub same_domain: bool,
    pub bounded: bool,
}

impl MergeVerdict {
    pub fn merged(&self) -> bool {
        self.same_domain && self.bounded
    }
}

struct BaseClasses {
    d: Dfa,
    same_domain: Vec<Vec<bool>>,
    bounded: Vec<Vec<bool>>,
}

fn base_classes(t: &Nft) -> Result<BaseClasses> {
    t.check_functional()?;
    let t = t.trim();
    let a = t.underlying();
    let back = a.reverse();
    let d = back.determinize().complete().with_finals(BTreeSet::new());
    let n = d.num_states();
    let suffix_sets = state_sets(&d, &back)?;
    let fwd = a.determinize();
    let prefix_sets = state_sets(&fwd, &a)?;

    let mut seeds = Vec::new();
    for (&p, u) in t.initials() {
        for (&q, v) in t.initials() {
            seeds.push(((p, q), Delay::new(u, v)));
        }
    }
    let delays = analyse_delays(&t, &seeds);
    let mut same_domain = vec![vec![false; n]; n];
    let mut bounded = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (sx, sy) = (&suffix_sets[x], &suffix_sets[y]);
            same_domain[x][y] = prefix_sets
                .iter()
                .all(|p| p.is_disjoint(sx) == p.is_disjoint(sy));
            bounded[x][y] = sx
                .iter()
                .all(|&p| sy.iter().all(|&q| !delays.is_unbounded_at(p, q)));
        }
    }
    Ok(BaseClasses { d: d.named_by_representatives(), same_domain, bounded })
}

/// The verdict for every pair of base classes, in numbering order.
pub fn left_congruence_trace(t: &Nft) -> Result<Vec<MergeVerdict>> {
    let b = base_classes(t)?;
    let n = b.d.num_states();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            out.push(MergeVerdict {
                first: b.d.name(x).to_string(),
                second: b.d.name(y).to_string(),
                same_domain: b.same_domain[x][y],
                bounded: b.bounded[x][y],
            });
        }
    }
    Ok(out)
}

/// The left syntactic congruence as a complete right Dfa whose states are
/// named after shortest representatives.
///
/// The classes are computed exactly: the reverse subset construction of the
/// domain gives a finer left congruence, and two of its classes are merged
/// when they agree on the domain and no pair of their states is reached with
/// an unbounded set of delays.
pub fn left_syntactic_congruence(t: &Nft) -> Result<Dfa> {
    let BaseClasses { d, same_domain, bounded } = base_classes(t)?;
    let n = d.num_states();
    let related = |x: usize, y: usize| same_domain[x][y] && bounded[x][y];

    let mut reps: Vec<usize> = Vec::new();
    let mut labels = vec![0usize; n];
    for x in 0..n {
        match reps.iter().position(|&r| related(r, x)) {
            Some(b) => labels[x] = b,
            None => {
                labels[x] = reps.len();
                reps.push(x);
            }
        }
    }
    let part = Partition::from_labels(&labels);
    for b in part.blocks() {
        for (i, &x) in b.iter().enumerate() {
            if let Some(&y) = b[i + 1..].iter().find(|&&y| !related(x, y)) {
                return Err(Error::Invariant(format!(
                    "syntactic relation is not transitive on {} and {}",
                    d.name(x),
                    d.name(y)
                )));
            }
        }
    }
    let q = d
        .quotient(&part)
        .map_err(|e| Error::Invariant(format!("syntactic relation is not a congruence: {e}")))?;
    Ok(q.accessible().named_by_representatives())
}

/// The right syntactic congruence as a complete left Dfa, obtained from the
/// left congruence of the mirror function.
pub fn right_syntactic_congruence(t: &Nft) -> Result<Dfa> {
    let m = left_syntactic_congruence(&t.mirror())?;
    Ok(m.with_orientation(Orientation::Left).named_by_representatives())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn class_counts() {
        let r = left_syntactic_congruence(&fixtures::f_ends()).unwrap();
        assert_eq!(r.num_states(), 3);
        assert_eq!(r.names(), ["[ε]", "[a]", "[b]"]);
        assert_eq!(r.orientation(), Orientation::Right);
        assert_eq!(left_syntactic_congruence(&fixtures::identity().to_nft()).unwrap().num_states(), 1);
        assert_eq!(left_syntactic_congruence(&fixtures::f_even()).unwrap().num_states(), 2);
    }

    #[test]
    fn right_congruence_of_f_ends_tracks_the_first_letter() {
        let l = right_syntactic_congruence(&fixtures::f_ends()).unwrap();
        assert_eq!(l.orientation(), Orientation::Left);
        assert_eq!(l.names(), ["[ε]", "[a]", "[b]"]);
        let id = |s: &str| l.state_id(s).unwrap();
        assert_eq!(l.state_after(&crate::word("abb")).unwrap(), Some(id("[a]")));
        assert_eq!(l.state_after(&crate::word("baa")).unwrap(), Some(id("[b]")));
    }

    #[test]
    fn partial_domain_splits_classes() {
        // g is f_ends restricted to a…a: the domain separates ε from b
        let r = left_syntactic_congruence(&fixtures::g().to_nft()).unwrap();
        let id = |w: &str| r.state_after(&crate::word(w)).unwrap().unwrap();
        assert_ne!(id(""), id("b"));
        assert_ne!(id("ba"), id("a"));
        assert_eq!(id("bba"), id("ba"));
        assert_eq!(id("aba"), id("a"));
    }
}
