//! Disambiguation by selecting, for every input, the least accepting run.
//!
//! Runs are compared as state sequences, position by position, under a
//! total order on states. A state of the result is a pair `(q, S)` where `S`
//! holds the states reachable by runs that are strictly smaller on the
//! prefix read so far.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::Nft;
use crate::error::Result;

/// Least-run disambiguation under the state numbering of the trimmed input.
pub fn disambiguate(t: &Nft) -> Result<Nft> {
    let n = t.trim().num_states();
    disambiguate_by_key(t, &(0..n).collect::<Vec<_>>())
}

/// Least-run disambiguation where `key[q]` ranks state `q` of the trimmed
/// input (lower is preferred).
pub fn disambiguate_by_key(t: &Nft, key: &[usize]) -> Result<Nft> {
    t.check_functional()?;
    let t = t.trim();
    if t.is_unambiguous() {
        return Ok(t);
    }
    let k = t.alphabet().len();
    let smaller = |a: usize, b: usize| (key[a], a) < (key[b], b);
    type St = (usize, BTreeSet<usize>);
    let name = |s: &St| {
        let parts: Vec<&str> = s.1.iter().map(|&q| t.name(q)).collect();
        format!("({},{{{}}})", t.name(s.0), parts.join(","))
    };
    let mut out = Nft::new(t.alphabet().clone());
    let mut index: BTreeMap<St, usize> = BTreeMap::new();
    let mut queue: VecDeque<St> = VecDeque::new();
    for (&q, w) in t.initials() {
        let s: BTreeSet<usize> = t.initials().keys().copied().filter(|&p| smaller(p, q)).collect();
        let st = (q, s);
        let id = out.add_state(name(&st));
        out.set_initial(id, w.clone());
        index.insert(st.clone(), id);
        queue.push_back(st);
    }
    while let Some(st) = queue.pop_front() {
        let id = index[&st];
        let (q, s) = &st;
        if let Some(tq) = t.finals().get(q) {
            if s.iter().all(|p| !t.finals().contains_key(p)) {
                out.set_final(id, tq.clone());
            }
        }
        for a in 0..k {
            let base: BTreeSet<usize> = s
                .iter()
                .flat_map(|&p| t.succ(p, a).keys().copied())
                .collect();
            for (&q2, w) in t.succ(*q, a) {
                let mut s2 = base.clone();
                s2.extend(t.succ(*q, a).keys().copied().filter(|&r| smaller(r, q2)));
                if s2.contains(&q2) {
                    // a smaller run is already in q2: this run never wins
                    continue;
                }
                let st2 = (q2, s2);
                let id2 = match index.get(&st2) {
                    Some(&i) => i,
                    None => {
                        let i = out.add_state(name(&st2));
                        index.insert(st2.clone(), i);
                        queue.push_back(st2);
                        i
                    }
                };
                out.add_transition(id, a, id2, w.clone())?;
            }
        }
    }
    Ok(out.trim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    #[test]
    fn picks_one_run() {
        let t = Nft::builder(&['a'])
            .initial("0", "")
            .trans("0", 'a', "1", "x")
            .trans("0", 'a', "2", "x")
            .loops("1", "a", "1", "y")
            .loops("2", "a", "2", "y")
            .final_("1", "")
            .final_("2", "")
            .build()
            .unwrap();
        assert!(!t.is_unambiguous());
        let u = disambiguate(&t).unwrap();
        assert!(u.is_unambiguous());
        for w in t.alphabet().words_up_to(6) {
            assert_eq!(u.eval(&w).unwrap(), t.eval(&w).unwrap());
        }
        assert_eq!(u.eval(&word("aaa")).unwrap(), Some(word("xyy")));
    }
}
