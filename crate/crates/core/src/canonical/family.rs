//! The family `T_R` of sequential transducers, one per class `r` of a left
//! congruence `R`. Each `T_r` reads a prefix `u` and outputs
//! `f̂_r(u) = ∧{ f(uv) | v ∈ r }`.
//!
//! All members share one underlying automaton: a state is a set of pairs
//! `(q, w)` of the transducer together with the class of the suffix still to
//! come, and only pairs with the same class are merged. A run that ends in
//! class `r` starts in the initial state of the class `u·r`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automata::{Dfa, Orientation};
use crate::error::{Error, Result};
use crate::transducer::{analyse_delays_within, Nft};
use crate::word::{concat, lcp, residual, show, Delay, Word};

type Owed = BTreeMap<usize, Word>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub class: String,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Debug, Clone)]
pub struct TrFamily {
    right: Dfa,
    init_out: Word,
    states: Vec<(Owed, usize)>,
    names: Vec<String>,
    initial: Vec<Option<usize>>,
    /// `delta[x][σ]` maps the class of the remaining suffix to the target
    /// and the output.
    delta: Vec<Vec<BTreeMap<usize, (usize, Word)>>>,
    terminal: Vec<Word>,
    final_out: Vec<Option<Word>>,
}

/// `s_x = ∧({t(x)} ∪ {u·s_y | x -σ|u-> y})` over the states of `t`.
fn output_prefixes(t: &Nft) -> Vec<Option<Word>> {
    let n = t.num_states();
    let mut s: Vec<Option<Word>> = vec![None; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            let mut cands: Vec<Word> = t.finals().get(&q).cloned().into_iter().collect();
            for a in 0..t.alphabet().len() {
                for (&q2, u) in t.succ(q, a) {
                    if let Some(s2) = &s[q2] {
                        cands.push(concat(u, s2));
                    }
                }
            }
            if cands.is_empty() {
                continue;
            }
            let v = lcp(cands.iter()).expect("non-empty");
            if s[q].as_ref() != Some(&v) {
                s[q] = Some(v);
                changed = true;
            }
        }
        if !changed {
            return s;
        }
    }
}

impl TrFamily {
    /// Builds the family for a functional transducer and a right Dfa `R`
    /// whose classes are finer than the left syntactic congruence. Fails
    /// with [`Error::NotFiner`] when two suffixes of one class drift apart.
    pub fn new(t: &Nft, right: &Dfa) -> Result<TrFamily> {
        t.check_functional()?;
        if right.orientation() != Orientation::Right {
            return Err(Error::OrientationMismatch);
        }
        if right.alphabet() != t.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let t = t.trim();
        if t.initials().is_empty() {
            return Err(Error::EmptyDomain);
        }
        let r = right.complete();
        let nr = r.num_states();
        let r0 = r.initial();
        let k = t.alphabet().len();
        let id = |q: usize, s: usize| q * nr + s;

        // T × R, then its live part with the numbering kept
        let build = |live: Option<&BTreeSet<usize>>| -> Result<Nft> {
            let ok = |x: usize| live.is_none_or(|l| l.contains(&x));
            let mut prod = Nft::new(t.alphabet().clone());
            for q in 0..t.num_states() {
                for s in 0..nr {
                    prod.add_state(format!("({},{})", t.name(q), r.name(s)));
                }
            }
            for (&q, w) in t.initials() {
                for s in (0..nr).filter(|&s| ok(id(q, s))) {
                    prod.set_initial(id(q, s), w.clone());
                }
            }
            for (&q, w) in t.finals() {
                if ok(id(q, r0)) {
                    prod.set_final(id(q, r0), w.clone());
                }
            }
            for (q, a, q2, u) in t.transitions() {
                for s2 in 0..nr {
                    let s = r.delta(s2, a).expect("complete");
                    if ok(id(q, s)) && ok(id(q2, s2)) {
                        prod.add_transition(id(q, s), a, id(q2, s2), u.clone())?;
                    }
                }
            }
            Ok(prod)
        };
        let under = build(None)?.underlying();
        let live: BTreeSet<usize> = under
            .accessible_set()
            .intersection(&under.coaccessible_set())
            .copied()
            .collect();
        let prod = build(Some(&live))?;
        let class = |x: usize| x % nr;
        let alive = |q: usize, s: usize| live.contains(&id(q, s));

        let mut seeds = Vec::new();
        for (&x, u) in prod.initials() {
            for (&y, v) in prod.initials() {
                if class(x) == class(y) {
                    seeds.push(((x, y), Delay::new(u, v)));
                }
            }
        }
        let analysis = analyse_delays_within(&prod, &seeds, |x, y| class(x) == class(y));
        if let Some(((x, y), d1, d2)) = &analysis.witness {
            return Err(Error::NotFiner(format!(
                "suffixes in class {} are not syntactically equivalent: states {} and {} drift apart (delays {} vs {})",
                r.name(class(*x)),
                t.name(x / nr),
                t.name(y / nr),
                d1,
                d2
            )));
        }
        let prefixes = output_prefixes(&prod);

        let init_out = lcp(t.initials().values())?;
        let mut fam = TrFamily {
            right: r.clone(),
            init_out: init_out.clone(),
            states: Vec::new(),
            names: Vec::new(),
            initial: vec![None; nr],
            delta: Vec::new(),
            terminal: Vec::new(),
            final_out: Vec::new(),
        };
        let mut index: BTreeMap<(Owed, usize), usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |fam: &mut TrFamily, key: (Owed, usize), queue: &mut VecDeque<usize>| -> Result<usize> {
            if let Some(&x) = index.get(&key) {
                return Ok(x);
            }
            let (owed, s) = &key;
            let mut tails = Vec::new();
            let mut fin: Option<Word> = None;
            for (&q, w) in owed {
                let p = prefixes[id(q, *s)].as_ref().ok_or_else(|| {
                    Error::Invariant(format!("dead pair ({},{})", t.name(q), r.name(*s)))
                })?;
                tails.push(concat(w, p));
                if *s == r0 {
                    if let Some(tq) = t.finals().get(&q) {
                        let o = concat(w, tq);
                        if fin.as_ref().is_some_and(|f| f != &o) {
                            return Err(Error::Invariant("terminal outputs disagree".into()));
                        }
                        fin = Some(o);
                    }
                }
            }
            let parts: Vec<String> = owed.iter().map(|(&q, w)| format!("({},{})", t.name(q), show(w))).collect();
            let x = fam.states.len();
            fam.names.push(format!("{{{}}}{}", parts.join(","), r.name(*s)));
            fam.terminal.push(lcp(tails.iter())?);
            fam.final_out.push(fin);
            fam.delta.push(vec![BTreeMap::new(); k]);
            fam.states.push(key.clone());
            index.insert(key, x);
            queue.push_back(x);
            Ok(x)
        };

        for s in 0..nr {
            let owed: Owed = t
                .initials()
                .iter()
                .filter(|&(&q, _)| alive(q, s))
                .map(|(&q, w)| Ok((q, residual(&init_out, w)?)))
                .collect::<Result<_>>()?;
            if !owed.is_empty() {
                fam.initial[s] = Some(intern(&mut fam, (owed, s), &mut queue)?);
            }
        }
        while let Some(x) = queue.pop_front() {
            let (owed, s) = fam.states[x].clone();
            for a in 0..k {
                for s2 in (0..nr).filter(|&s2| r.delta(s2, a) == Some(s)) {
                    let mut reach: Owed = BTreeMap::new();
                    for (&q, w) in &owed {
                        for (&q2, u) in t.succ(q, a) {
                            if !alive(q2, s2) {
                                continue;
                            }
                            let o = concat(w, u);
                            if reach.get(&q2).is_some_and(|old| old != &o) {
                                return Err(Error::Invariant(format!(
                                    "state {} reached with two owed outputs",
                                    t.name(q2)
                                )));
                            }
                            reach.insert(q2, o);
                        }
                    }
                    if reach.is_empty() {
                        continue;
                    }
                    let v = lcp(reach.values())?;
                    let next: Owed = reach.into_iter().map(|(q, w)| (q, w[v.len()..].to_vec())).collect();
                    let y = intern(&mut fam, (next, s2), &mut queue)?;
                    fam.delta[x][a].insert(s2, (y, v));
                }
            }
        }
        Ok(fam)
    }

    /// The completed `R` the family was built on.
    pub fn right(&self) -> &Dfa {
        &self.right
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn initial_output(&self) -> &[char] {
        &self.init_out
    }

    /// The initial state used by runs whose whole input falls in class `s`.
    pub fn initial(&self, s: usize) -> Option<usize> {
        self.initial[s]
    }

    /// The class of the suffix still to come in state `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.states[x].1
    }

    /// The transition on `a` that leaves class `s2` for the rest of the input.
    pub fn step(&self, x: usize, a: usize, s2: usize) -> Option<&(usize, Word)> {
        self.delta[x][a].get(&s2)
    }

    /// `t_r`: the meet of the outputs still to come.
    pub fn terminal(&self, x: usize) -> &[char] {
        &self.terminal[x]
    }

    /// Terminal output of the transducer for the whole function, on states of
    /// the initial class that contain a final state.
    pub fn final_output(&self, x: usize) -> Option<&Word> {
        self.final_out[x].as_ref()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(BTreeMap::len).sum()
    }

    /// The part reachable from each initial state, in class order.
    pub fn threads(&self) -> Vec<Thread> {
        (0..self.initial.len())
            .filter_map(|s| self.initial[s].map(|x| (s, x)))
            .map(|(s, x0)| {
                let mut seen = BTreeSet::from([x0]);
                let mut stack = vec![x0];
                let mut transitions = 0;
                while let Some(x) = stack.pop() {
                    for row in &self.delta[x] {
                        for (y, _) in row.values() {
                            transitions += 1;
                            if seen.insert(*y) {
                                stack.push(*y);
                            }
                        }
                    }
                }
                Thread {
                    class: self.right.name(s).to_string(),
                    states: seen.len(),
                    transitions,
                }
            })
            .collect()
    }

    /// Runs `u` towards class `r` and returns the state reached and the
    /// output so far, including the initial output.
    pub fn run(&self, r: usize, u: &[char]) -> Result<Option<(usize, Word)>> {
        let x = self.right.alphabet().encode(u)?;
        // classes[i] is the class of u[i..]·r
        let mut classes = vec![r; x.len() + 1];
        for i in (0..x.len()).rev() {
            classes[i] = self.right.delta(classes[i + 1], x[i]).expect("complete");
        }
        let Some(mut cur) = self.initial[classes[0]] else { return Ok(None) };
        let mut out = self.init_out.clone();
        for (i, &a) in x.iter().enumerate() {
            let Some((y, v)) = self.step(cur, a, classes[i + 1]) else { return Ok(None) };
            out.extend_from_slice(v);
            cur = *y;
        }
        Ok(Some((cur, out)))
    }

    /// `f̂_r(u)`, undefined when no suffix in class `r` completes `u` into
    /// the domain.
    pub fn hat(&self, r: usize, u: &[char]) -> Result<Option<Word>> {
        Ok(self.run(r, u)?.map(|(x, out)| concat(&out, &self.terminal[x])))
    }

    /// The function itself, read through the initial class.
    pub fn eval(&self, u: &[char]) -> Result<Option<Word>> {
        let r0 = self.right.initial();
        Ok(self
            .run(r0, u)?
            .and_then(|(x, out)| self.final_out[x].as_ref().map(|f| concat(&out, f))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::left_syntactic_congruence;
    use crate::fixtures;
    use crate::word::word;

    #[test]
    fn three_threads_for_f_ends() {
        let t = fixtures::f_ends();
        let r0 = left_syntactic_congruence(&t).unwrap();
        let fam = TrFamily::new(&t, &r0).unwrap();
        let threads = fam.threads();
        let stats: Vec<(&str, usize, usize)> =
            threads.iter().map(|th| (th.class.as_str(), th.states, th.transitions)).collect();
        assert_eq!(stats, [("[ε]", 1, 0), ("[a]", 5, 9), ("[b]", 5, 9)]);
        assert_eq!(fam.num_states(), 9);
        for u in t.alphabet().words_up_to(6) {
            assert_eq!(fam.eval(&u).unwrap(), t.eval(&u).unwrap());
        }
    }

    #[test]
    fn hat_is_the_meet_over_the_class() {
        let t = fixtures::f_ends();
        let r0 = left_syntactic_congruence(&t).unwrap();
        let fam = TrFamily::new(&t, &r0).unwrap();
        let a = r0.state_id("[a]").unwrap();
        let b = r0.state_id("[b]").unwrap();
        assert_eq!(fam.hat(a, &word("ab")).unwrap(), Some(word("aaa")));
        assert_eq!(fam.hat(b, &word("ab")).unwrap(), Some(word("")));
        assert_eq!(fam.hat(a, &word("")).unwrap(), Some(word("")));
    }

    #[test]
    fn coarse_classes_are_refused() {
        let t = fixtures::f_ends();
        let one = Dfa::builder(&['a', 'b']).right().initial("r").loops("r", "ab", "r").build_dfa().unwrap();
        assert!(matches!(TrFamily::new(&t, &one), Err(Error::NotFiner(_))));
    }
}
