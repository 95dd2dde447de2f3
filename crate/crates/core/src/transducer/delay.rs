//! Delay sets on the square of a transducer.
//!
//! Two runs reading the same input reach a pair of states `(p, q)` with a
//! reduced delay between their outputs. The set of delays reaching a pair is
//! either finite or unbounded. A strongly connected component of the square
//! keeps delays finite exactly when every cycle fixes every delay entering
//! it, which is checked by propagating each entering delay once around the
//! component and looking for a disagreement.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::Nft;
use crate::word::Delay;

type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayAnalysis {
    /// Finite delay set per reachable pair; `None` when unbounded.
    pub delays: BTreeMap<Pair, Option<BTreeSet<Delay>>>,
    /// A pair reached with two incompatible delays, when some set is
    /// unbounded.
    pub witness: Option<(Pair, Delay, Delay)>,
}

impl DelayAnalysis {
    pub fn is_bounded(&self) -> bool {
        self.witness.is_none()
    }

    pub fn is_unbounded_at(&self, p: usize, q: usize) -> bool {
        matches!(self.delays.get(&(p, q)), Some(None))
    }

    /// Length of the longest side of any delay seen.
    pub fn max_delay(&self) -> usize {
        self.delays
            .values()
            .flatten()
            .flatten()
            .map(|d| d.left().len().max(d.right().len()))
            .max()
            .unwrap_or(0)
    }
}

/// Delay sets over the pairs reachable from `seeds` in the square of `t`.
pub fn analyse_delays(t: &Nft, seeds: &[(Pair, Delay)]) -> DelayAnalysis {
    analyse_delays_within(t, seeds, |_, _| true)
}

/// Same as [`analyse_delays`], exploring only the pairs accepted by `keep`.
pub fn analyse_delays_within<K>(t: &Nft, seeds: &[(Pair, Delay)], keep: K) -> DelayAnalysis
where
    K: Fn(usize, usize) -> bool,
{
    let k = t.alphabet().len();
    let mut graph: DiGraph<Pair, (Vec<char>, Vec<char>)> = DiGraph::new();
    let mut index: HashMap<Pair, NodeIndex> = HashMap::new();
    let mut stack: Vec<Pair> = Vec::new();
    for &(n, _) in seeds {
        if !index.contains_key(&n) {
            index.insert(n, graph.add_node(n));
            stack.push(n);
        }
    }
    while let Some((p, q)) = stack.pop() {
        let from = index[&(p, q)];
        for a in 0..k {
            for (&p2, u) in t.succ(p, a) {
                for (&q2, v) in t.succ(q, a) {
                    if !keep(p2, q2) {
                        continue;
                    }
                    let to = *index.entry((p2, q2)).or_insert_with(|| {
                        stack.push((p2, q2));
                        graph.add_node((p2, q2))
                    });
                    graph.add_edge(from, to, (u.clone(), v.clone()));
                }
            }
        }
    }

    let mut sccs = tarjan_scc(&graph);
    sccs.reverse(); // topological order
    let mut comp_of: HashMap<NodeIndex, usize> = HashMap::new();
    for (c, nodes) in sccs.iter().enumerate() {
        for &n in nodes {
            comp_of.insert(n, c);
        }
    }

    let mut incoming: HashMap<NodeIndex, BTreeSet<Delay>> = HashMap::new();
    for (n, d) in seeds {
        incoming.entry(index[n]).or_default().insert(d.clone());
    }
    let mut tainted: BTreeSet<NodeIndex> = BTreeSet::new();
    let mut result: BTreeMap<Pair, Option<BTreeSet<Delay>>> = BTreeMap::new();
    let mut witness = None;

    for (c, nodes) in sccs.iter().enumerate() {
        let mut sets: HashMap<NodeIndex, BTreeSet<Delay>> = HashMap::new();
        let mut bounded = !nodes.iter().any(|n| tainted.contains(n));
        if bounded {
            'seeds: for &entry in nodes {
                let Some(ds) = incoming.get(&entry) else { continue };
                for d in ds {
                    // one consistent assignment per entering delay
                    let mut assign: HashMap<NodeIndex, Delay> = HashMap::from([(entry, d.clone())]);
                    let mut work = vec![entry];
                    while let Some(n) = work.pop() {
                        let dn = assign[&n].clone();
                        for e in graph.edges(n) {
                            use petgraph::visit::EdgeRef;
                            let m = e.target();
                            if comp_of[&m] != c {
                                continue;
                            }
                            let (u, v) = e.weight();
                            let dm = dn.extend(u, v);
                            match assign.get(&m) {
                                Some(old) if old != &dm => {
                                    if witness.is_none() {
                                        witness = Some((graph[m], old.clone(), dm));
                                    }
                                    bounded = false;
                                    break 'seeds;
                                }
                                Some(_) => {}
                                None => {
                                    assign.insert(m, dm);
                                    work.push(m);
                                }
                            }
                        }
                    }
                    for (n, dn) in assign {
                        sets.entry(n).or_default().insert(dn);
                    }
                }
            }
        }
        for &n in nodes {
            use petgraph::visit::EdgeRef;
            for e in graph.edges(n) {
                let m = e.target();
                if comp_of[&m] == c {
                    continue;
                }
                if bounded {
                    let (u, v) = e.weight();
                    let out: Vec<Delay> = sets
                        .get(&n)
                        .map(|s| s.iter().map(|d| d.extend(u, v)).collect())
                        .unwrap_or_default();
                    incoming.entry(m).or_default().extend(out);
                } else {
                    tainted.insert(m);
                }
            }
            let entry = if bounded {
                Some(sets.remove(&n).unwrap_or_default())
            } else {
                None
            };
            result.insert(graph[n], entry);
        }
    }
    DelayAnalysis {
        delays: result,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn seeds(t: &Nft) -> Vec<(Pair, Delay)> {
        let mut s = Vec::new();
        for (&p, u) in t.initials() {
            for (&q, v) in t.initials() {
                s.push(((p, q), Delay::new(u, v)));
            }
        }
        s
    }

    #[test]
    fn last_letter_copy_is_unbounded() {
        // guesses the last letter and copies it everywhere
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
        let d = analyse_delays(&t, &seeds(&t));
        assert!(!d.is_bounded());
        assert!(d.is_unbounded_at(0, 1));
        assert!(!d.is_unbounded_at(0, 0));
    }

    #[test]
    fn bounded_lag() {
        // one branch lags one letter behind the other on a^n
        let t = Nft::builder(&['a'])
            .initial("0", "")
            .initial("1", "a")
            .loops("0", "a", "0", "a")
            .loops("1", "a", "1", "a")
            .final_("0", "a")
            .final_("1", "")
            .build()
            .unwrap();
        let d = analyse_delays(&t, &seeds(&t));
        assert!(d.is_bounded());
        assert_eq!(d.delays[&(0, 1)], Some(BTreeSet::from([Delay::new(&word(""), &word("a"))])));
        assert_eq!(d.max_delay(), 1);
    }
}
