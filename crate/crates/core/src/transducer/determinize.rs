//! Subset-with-delays determinization.

use std::collections::BTreeMap;

use super::{analyse_delays, Dft, Nft};
use crate::error::{Error, Result};
use crate::word::{concat, lcp, show, Delay, Word};

type State = Vec<(usize, Word)>;

fn state_name(t: &Nft, s: &State) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|(q, w)| format!("({},{})", t.name(*q), show(w)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Determinizes a functional transducer. States are sets of pairs `(q, w)`
/// where `w` is the output still owed by the run ending in `q`.
///
/// Sequentiality is decided first on the square of the trimmed input: a
/// pair whose delay set is unbounded gives [`Error::NotSequentialisable`].
pub fn determinize_nft(t: &Nft) -> Result<Dft> {
    t.check_functional()?;
    let t = t.trim();
    if t.initials().is_empty() {
        return Dft::from_parts(
            t.alphabet().clone(),
            vec!["{}".into()],
            0,
            Vec::new(),
            vec![vec![None; t.alphabet().len()]],
            BTreeMap::new(),
        );
    }
    let mut seeds = Vec::new();
    for (&p, u) in t.initials() {
        for (&q, v) in t.initials() {
            seeds.push(((p, q), Delay::new(u, v)));
        }
    }
    let analysis = analyse_delays(&t, &seeds);
    if let Some(((p, q), d1, d2)) = &analysis.witness {
        return Err(Error::NotSequentialisable {
            left: t.name(*p).to_string(),
            right: t.name(*q).to_string(),
            first: d1.to_string(),
            second: d2.to_string(),
        });
    }
    let n = t.num_states();
    let c = t.max_output_len();
    let bound = (c * (n * n + 1)).max(analysis.max_delay());

    let init_out = lcp(t.initials().values())?;
    let start: State = t
        .initials()
        .iter()
        .map(|(&q, w)| (q, w[init_out.len()..].to_vec()))
        .collect();
    let mut states: Vec<State> = vec![start.clone()];
    let mut index: BTreeMap<State, usize> = BTreeMap::from([(start, 0)]);
    let mut delta: Vec<Vec<Option<(usize, Word)>>> = Vec::new();
    let k = t.alphabet().len();
    let mut i = 0;
    while i < states.len() {
        let mut row = vec![None; k];
        for (a, slot) in row.iter_mut().enumerate() {
            let mut reach: BTreeMap<usize, Word> = BTreeMap::new();
            for (q, w) in &states[i] {
                for (&q2, u) in t.succ(*q, a) {
                    let out = concat(w, u);
                    if let Some(prev) = reach.get(&q2) {
                        if prev != &out {
                            return Err(Error::Invariant(format!(
                                "state {} reached with two owed outputs",
                                t.name(q2)
                            )));
                        }
                    }
                    reach.insert(q2, out);
                }
            }
            if reach.is_empty() {
                continue;
            }
            let s = lcp(reach.values())?;
            let next: State = reach.into_iter().map(|(q, w)| (q, w[s.len()..].to_vec())).collect();
            if let Some((q, w)) = next.iter().find(|(_, w)| w.len() > bound) {
                return Err(Error::NotSequentialisable {
                    left: t.name(*q).to_string(),
                    right: t.name(*q).to_string(),
                    first: show(w),
                    second: format!("bound {bound}"),
                });
            }
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    states.push(next.clone());
                    index.insert(next, states.len() - 1);
                    states.len() - 1
                }
            };
            *slot = Some((j, s));
        }
        delta.push(row);
        i += 1;
    }
    let mut finals = BTreeMap::new();
    for (i, s) in states.iter().enumerate() {
        let mut out: Option<Word> = None;
        for (q, w) in s {
            if let Some(tq) = t.finals().get(q) {
                let o = concat(w, tq);
                match &out {
                    Some(prev) if prev != &o => {
                        return Err(Error::Invariant(format!(
                            "terminal outputs disagree in {}",
                            state_name(&t, s)
                        )))
                    }
                    _ => out = Some(o),
                }
            }
        }
        if let Some(o) = out {
            finals.insert(i, o);
        }
    }
    let names = states.iter().map(|s| state_name(&t, s)).collect();
    Dft::from_parts(t.alphabet().clone(), names, 0, init_out, delta, finals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn detxmp() -> Nft {
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

    #[test]
    fn reproduces_the_worked_example() {
        let d = determinize_nft(&detxmp()).unwrap();
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.names()[0], "{(0,ε)}");
        assert_eq!(d.edge("{(0,ε)}", 'a'), Some(("{(1,a),(2,ε)}", "a".into())));
        assert_eq!(d.edge("{(1,a),(2,ε)}", 'a'), Some(("{(1,a),(2,ε)}", "a".into())));
        assert_eq!(d.edge("{(1,a),(2,ε)}", 'b'), Some(("{(1,ε)}", "aa".into())));
        assert_eq!(d.edge("{(1,ε)}", 'b'), Some(("{(1,ε)}", "a".into())));
        assert_eq!(d.edge("{(1,ε)}", 'a'), Some(("{(1,a),(2,ε)}", "".into())));
        assert_eq!(d.finals().len(), 1);
    }

    #[test]
    fn rejects_unbounded_guessing() {
        let t = Nft::builder(&['a', 'b'])
            .initial("A", "")
            .initial("B", "")
            .loops("A", "ab", "A", "a")
            .loops("B", "ab", "B", "b")
            .trans("A", 'a', "F", "a")
            .trans("B", 'b', "G", "b")
            .final_("F", "")
            .final_("G", "")
            .build()
            .unwrap();
        assert!(matches!(determinize_nft(&t), Err(Error::NotSequentialisable { .. })));
    }
}
