//! Finite automata in both orientations.
//!
//! A right automaton stores its transitions as written (`q ←σ p` is kept as
//! the edge `p -σ-> q`) and reads its input from the last letter to the
//! first. [`Nfa::reverse`] is the only operation that flips orientation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::partition::{moore_refine, Partition};
use crate::word::{show, Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Left,
    Right,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
        }
    }

    /// Letter indices in the order the automaton consumes them.
    pub fn reading_order(self, w: Vec<usize>) -> Vec<usize> {
        match self {
            Orientation::Left => w,
            Orientation::Right => w.into_iter().rev().collect(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Left => "left",
            Orientation::Right => "right",
        }
    }
}

fn fresh_name(names: &[String], base: &str) -> String {
    let mut s = base.to_string();
    while names.iter().any(|n| n == &s) {
        s.push('\'');
    }
    s
}

pub(crate) fn set_name(names: &[String], set: &BTreeSet<usize>) -> String {
    let parts: Vec<&str> = set.iter().map(|&q| names[q].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn class_name(w: &[char]) -> String {
    format!("[{}]", show(w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    orientation: Orientation,
    names: Vec<String>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    succ: Vec<Vec<BTreeSet<usize>>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, orientation: Orientation) -> Self {
        Nfa {
            alphabet,
            orientation,
            names: Vec::new(),
            initials: BTreeSet::new(),
            finals: BTreeSet::new(),
            succ: Vec::new(),
        }
    }

    pub fn builder(letters: &[char]) -> NfaBuilder {
        NfaBuilder::new(letters)
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(i) = self.state_id(&name) {
            return i;
        }
        self.names.push(name);
        self.succ.push(vec![BTreeSet::new(); self.alphabet.len()]);
        self.names.len() - 1
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initials.insert(q);
    }

    pub fn set_final(&mut self, q: usize) {
        self.finals.insert(q);
    }

    pub fn add_transition(&mut self, p: usize, a: usize, q: usize) {
        self.succ[p][a].insert(q);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn succ(&self, p: usize, a: usize) -> &BTreeSet<usize> {
        &self.succ[p][a]
    }

    /// All edges `(p, letter index, q)` in the fixed order.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (p, row) in self.succ.iter().enumerate() {
            for (a, qs) in row.iter().enumerate() {
                for &q in qs {
                    out.push((p, a, q));
                }
            }
        }
        out
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().flatten().map(|s| s.len()).sum()
    }

    fn step(&self, from: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        from.iter().flat_map(|&p| self.succ[p][a].iter().copied()).collect()
    }

    /// States reachable from `from` reading `letters` in stored-edge order.
    pub fn run_from(&self, from: &BTreeSet<usize>, letters: &[usize]) -> BTreeSet<usize> {
        let mut cur = from.clone();
        for &a in letters {
            cur = self.step(&cur, a);
        }
        cur
    }

    pub fn accepts(&self, w: &[char]) -> Result<bool> {
        let letters = self.orientation.reading_order(self.alphabet.encode(w)?);
        let end = self.run_from(&self.initials, &letters);
        Ok(end.iter().any(|q| self.finals.contains(q)))
    }

    /// The same automaton with initials `p1` and finals `p2`.
    pub fn language_between(&self, p1: &[&str], p2: &[&str]) -> Result<Nfa> {
        let ids = |names: &[&str]| -> Result<BTreeSet<usize>> {
            names
                .iter()
                .map(|n| self.state_id(n).ok_or_else(|| Error::UnknownState(n.to_string())))
                .collect()
        };
        let mut a = self.clone();
        a.initials = ids(p1)?;
        a.finals = ids(p2)?;
        Ok(a)
    }

    pub fn with_ends(&self, initials: BTreeSet<usize>, finals: BTreeSet<usize>) -> Nfa {
        let mut a = self.clone();
        a.initials = initials;
        a.finals = finals;
        a
    }

    pub fn accessible_set(&self) -> BTreeSet<usize> {
        let mut seen = self.initials.clone();
        let mut queue: VecDeque<usize> = self.initials.iter().copied().collect();
        while let Some(p) = queue.pop_front() {
            for row in &self.succ[p] {
                for &q in row {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    pub fn coaccessible_set(&self) -> BTreeSet<usize> {
        let pred = self.predecessors();
        let mut seen = self.finals.clone();
        let mut queue: VecDeque<usize> = self.finals.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &pred[q] {
                if seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    fn predecessors(&self) -> Vec<BTreeSet<usize>> {
        let mut pred = vec![BTreeSet::new(); self.num_states()];
        for (p, _, q) in self.transitions() {
            pred[q].insert(p);
        }
        pred
    }

    /// Keeps only the states in `keep`, preserving their relative order.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Nfa {
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut a = Nfa::new(self.alphabet.clone(), self.orientation);
        for &q in keep {
            a.names.push(self.names[q].clone());
            a.succ.push(vec![BTreeSet::new(); self.alphabet.len()]);
        }
        for (p, x, q) in self.transitions() {
            if let (Some(&p2), Some(&q2)) = (map.get(&p), map.get(&q)) {
                a.succ[p2][x].insert(q2);
            }
        }
        a.initials = self.initials.iter().filter_map(|q| map.get(q).copied()).collect();
        a.finals = self.finals.iter().filter_map(|q| map.get(q).copied()).collect();
        a
    }

    pub fn accessible(&self) -> Nfa {
        self.restrict(&self.accessible_set())
    }

    /// Accessible and co-accessible part.
    pub fn trim(&self) -> Nfa {
        let acc = self.accessible_set();
        let co = self.coaccessible_set();
        self.restrict(&acc.intersection(&co).copied().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.accessible_set().iter().all(|q| !self.finals.contains(q))
    }

    /// Flips orientation and every edge, swapping initials and finals. The
    /// recognised language is unchanged.
    pub fn reverse(&self) -> Nfa {
        let mut a = Nfa::new(self.alphabet.clone(), self.orientation.flip());
        a.names = self.names.clone();
        a.succ = vec![vec![BTreeSet::new(); self.alphabet.len()]; self.num_states()];
        for (p, x, q) in self.transitions() {
            a.succ[q][x].insert(p);
        }
        a.initials = self.finals.clone();
        a.finals = self.initials.clone();
        a
    }

    /// Same edges read in the other direction: recognises the mirror
    /// language.
    pub fn with_orientation(&self, o: Orientation) -> Nfa {
        let mut a = self.clone();
        a.orientation = o;
        a
    }

    pub fn determinize(&self) -> Dfa {
        let mut names = Vec::new();
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut sets = Vec::new();
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let start = self.initials.clone();
        index.insert(start.clone(), 0);
        names.push(set_name(&self.names, &start));
        sets.push(start);
        delta.push(vec![None; self.alphabet.len()]);
        let mut i = 0;
        while i < sets.len() {
            for a in 0..self.alphabet.len() {
                let next = self.step(&sets[i], a);
                if next.is_empty() {
                    continue;
                }
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = sets.len();
                        index.insert(next.clone(), j);
                        names.push(set_name(&self.names, &next));
                        sets.push(next);
                        delta.push(vec![None; self.alphabet.len()]);
                        j
                    }
                };
                delta[i][a] = Some(j);
            }
            i += 1;
        }
        let finals = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            orientation: self.orientation,
            names,
            initial: 0,
            finals,
            delta,
        }
    }

    /// Intersection, restricted to accessible pairs.
    pub fn product(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch);
        }
        let mut a = Nfa::new(self.alphabet.clone(), self.orientation);
        let mut index = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &p in &self.initials {
            for &q in &other.initials {
                let id = a.add_state(format!("({},{})", self.names[p], other.names[q]));
                index.insert((p, q), id);
                a.initials.insert(id);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let id = index[&(p, q)];
            if self.finals.contains(&p) && other.finals.contains(&q) {
                a.finals.insert(id);
            }
            for x in 0..self.alphabet.len() {
                for &p2 in &self.succ[p][x] {
                    for &q2 in &other.succ[q][x] {
                        let id2 = match index.get(&(p2, q2)) {
                            Some(&i) => i,
                            None => {
                                let i = a.add_state(format!(
                                    "({},{})",
                                    self.names[p2], other.names[q2]
                                ));
                                index.insert((p2, q2), i);
                                queue.push_back((p2, q2));
                                i
                            }
                        };
                        a.succ[id][x].insert(id2);
                    }
                }
            }
        }
        Ok(a)
    }

    /// Trimmed square: pairs of runs on a common word, both accepting.
    fn square_pairs(&self) -> (Vec<(usize, usize)>, BTreeMap<(usize, usize), Vec<((usize, usize), usize)>>) {
        let t = self;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let mut edges: BTreeMap<(usize, usize), Vec<((usize, usize), usize)>> = BTreeMap::new();
        for &p in &t.initials {
            for &q in &t.initials {
                if seen.insert((p, q)) {
                    queue.push_back((p, q));
                }
            }
        }
        let mut order = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            order.push((p, q));
            for x in 0..t.alphabet.len() {
                for &p2 in &t.succ[p][x] {
                    for &q2 in &t.succ[q][x] {
                        edges.entry((p, q)).or_default().push(((p2, q2), x));
                        if seen.insert((p2, q2)) {
                            queue.push_back((p2, q2));
                        }
                    }
                }
            }
        }
        (order, edges)
    }

    /// A word with two distinct accepting runs, if any.
    pub fn ambiguity_witness(&self) -> Option<Word> {
        let t = self.trim();
        let (order, edges) = t.square_pairs();
        // co-accessibility in the square
        let mut co: BTreeSet<(usize, usize)> = order
            .iter()
            .copied()
            .filter(|(p, q)| t.finals.contains(p) && t.finals.contains(q))
            .collect();
        loop {
            let before = co.len();
            for (src, out) in &edges {
                if out.iter().any(|(d, _)| co.contains(d)) {
                    co.insert(*src);
                }
            }
            if co.len() == before {
                break;
            }
        }
        let bad = order.iter().copied().find(|&(p, q)| p != q && co.contains(&(p, q)))?;
        // path to `bad`, then a path from `bad` to a final pair
        let to_bad = square_path(&t, &order, &edges, |n| n == bad, None)?;
        let from_bad = square_path(
            &t,
            &order,
            &edges,
            |(p, q)| t.finals.contains(&p) && t.finals.contains(&q),
            Some(bad),
        )?;
        let mut letters = to_bad;
        letters.extend(from_bad);
        let letters = t.orientation.reading_order(letters);
        Some(letters.into_iter().map(|x| t.alphabet.letter(x)).collect())
    }

    pub fn is_unambiguous(&self) -> bool {
        self.ambiguity_witness().is_none()
    }

    /// Shortest letter sequence (stored-edge order) from `from` to a final state.
    pub fn shortest_to_final(&self, from: usize) -> Option<Vec<usize>> {
        let mut prev: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            if self.finals.contains(&p) {
                let mut path = Vec::new();
                let mut cur = p;
                while cur != from {
                    let (q, a) = prev[&cur];
                    path.push(a);
                    cur = q;
                }
                path.reverse();
                return Some(path);
            }
            for a in 0..self.alphabet.len() {
                for &q in &self.succ[p][a] {
                    if seen.insert(q) {
                        prev.insert(q, (p, a));
                        queue.push_back(q);
                    }
                }
            }
        }
        None
    }
}

fn square_path<F: Fn((usize, usize)) -> bool>(
    t: &Nfa,
    order: &[(usize, usize)],
    edges: &BTreeMap<(usize, usize), Vec<((usize, usize), usize)>>,
    goal: F,
    start: Option<(usize, usize)>,
) -> Option<Vec<usize>> {
    let starts: Vec<(usize, usize)> = match start {
        Some(s) => vec![s],
        None => order
            .iter()
            .copied()
            .filter(|(p, q)| t.initials.contains(p) && t.initials.contains(q))
            .collect(),
    };
    let mut prev: BTreeMap<(usize, usize), ((usize, usize), usize)> = BTreeMap::new();
    let mut seen: BTreeSet<(usize, usize)> = starts.iter().copied().collect();
    let mut queue: VecDeque<(usize, usize)> = starts.iter().copied().collect();
    while let Some(n) = queue.pop_front() {
        if goal(n) {
            let mut path = Vec::new();
            let mut cur = n;
            while let Some(&(p, a)) = prev.get(&cur) {
                path.push(a);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &(m, a) in edges.get(&n).map(|v| v.as_slice()).unwrap_or(&[]) {
            if seen.insert(m) {
                prev.insert(m, (n, a));
                queue.push_back(m);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    orientation: Orientation,
    names: Vec<String>,
    initial: usize,
    finals: BTreeSet<usize>,
    delta: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn builder(letters: &[char]) -> NfaBuilder {
        NfaBuilder::new(letters)
    }

    /// Builds a Dfa from raw parts. `delta[q][a]` is indexed by letter.
    pub fn from_parts(
        alphabet: Alphabet,
        orientation: Orientation,
        names: Vec<String>,
        initial: usize,
        finals: BTreeSet<usize>,
        delta: Vec<Vec<Option<usize>>>,
    ) -> Result<Dfa> {
        let n = names.len();
        if initial >= n
            || delta.len() != n
            || finals.iter().any(|&q| q >= n)
            || delta
                .iter()
                .any(|r| r.len() != alphabet.len() || r.iter().flatten().any(|&q| q >= n))
        {
            return Err(Error::InvalidMachine("inconsistent Dfa parts".into()));
        }
        Ok(Dfa {
            alphabet,
            orientation,
            names,
            initial,
            finals,
            delta,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn delta(&self, q: usize, a: usize) -> Option<usize> {
        self.delta[q][a]
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.delta
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().flatten().count()
    }

    pub fn with_finals(&self, finals: BTreeSet<usize>) -> Dfa {
        let mut d = self.clone();
        d.finals = finals;
        d
    }

    pub fn with_orientation(&self, o: Orientation) -> Dfa {
        let mut d = self.clone();
        d.orientation = o;
        d
    }

    pub fn with_names(&self, names: Vec<String>) -> Dfa {
        assert_eq!(names.len(), self.names.len());
        let mut d = self.clone();
        d.names = names;
        d
    }

    /// Follows letters in stored-edge order.
    pub fn run_letters(&self, from: usize, letters: &[usize]) -> Option<usize> {
        letters.iter().try_fold(from, |q, &a| self.delta[q][a])
    }

    /// State reached on `w` from the initial state (orientation-aware).
    pub fn state_after(&self, w: &[char]) -> Result<Option<usize>> {
        let letters = self.orientation.reading_order(self.alphabet.encode(w)?);
        Ok(self.run_letters(self.initial, &letters))
    }

    pub fn accepts(&self, w: &[char]) -> Result<bool> {
        Ok(self.state_after(w)?.is_some_and(|q| self.finals.contains(&q)))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|r| r.iter().all(|x| x.is_some()))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut a = Nfa::new(self.alphabet.clone(), self.orientation);
        a.names = self.names.clone();
        a.succ = self
            .delta
            .iter()
            .map(|r| r.iter().map(|x| x.iter().copied().collect()).collect())
            .collect();
        a.initials.insert(self.initial);
        a.finals = self.finals.clone();
        a
    }

    /// Adds an explicit sink if some transition is missing.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let mut d = self.clone();
        let sink = d.names.len();
        d.names.push(fresh_name(&self.names, "sink"));
        d.delta.push(vec![Some(sink); self.alphabet.len()]);
        for r in d.delta.iter_mut() {
            for x in r.iter_mut() {
                if x.is_none() {
                    *x = Some(sink);
                }
            }
        }
        d
    }

    /// Accessible part, renumbered in breadth-first order from the initial
    /// state (letters in alphabet order).
    pub fn accessible(&self) -> Dfa {
        let order = self.bfs_order();
        let mut map = vec![None; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            map[q] = Some(i);
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|x| x.and_then(|t| map[t])).collect())
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            orientation: self.orientation,
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            initial: 0,
            finals: self.finals.iter().filter_map(|&q| map[q]).collect(),
            delta,
        }
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.delta[q][a] {
                    if !seen[t] {
                        seen[t] = true;
                        order.push(t);
                    }
                }
            }
            i += 1;
        }
        order
    }

    /// Shortest (then least in reading order) word reaching each state, as
    /// an ordinary word (reversed back for right automata).
    pub fn representatives(&self) -> Vec<Option<Word>> {
        let mut reps: Vec<Option<Vec<usize>>> = vec![None; self.num_states()];
        reps[self.initial] = Some(Vec::new());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.delta[q][a] {
                    if reps[t].is_none() {
                        let mut w = reps[q].clone().unwrap();
                        w.push(a);
                        reps[t] = Some(w);
                        queue.push_back(t);
                    }
                }
            }
        }
        reps.into_iter()
            .map(|r| {
                r.map(|l| {
                    self.orientation
                        .reading_order(l)
                        .into_iter()
                        .map(|a| self.alphabet.letter(a))
                        .collect()
                })
            })
            .collect()
    }

    /// Quotient by a partition of the states. Fails if some block is split by
    /// a letter or mixes final and non-final states.
    pub fn quotient(&self, p: &Partition) -> Result<Dfa> {
        if p.len() != self.num_states() {
            return Err(Error::CarrierMismatch(p.len(), self.num_states()));
        }
        for b in p.blocks() {
            let r = b[0];
            for &x in &b[1..] {
                if self.finals.contains(&x) != self.finals.contains(&r) {
                    return Err(Error::InvalidMachine(format!(
                        "block of {} mixes final and non-final states",
                        self.names[r]
                    )));
                }
                for a in 0..self.alphabet.len() {
                    let tr = self.delta[r][a].map(|t| p.block_of(t));
                    let tx = self.delta[x][a].map(|t| p.block_of(t));
                    if tr != tx {
                        return Err(Error::NotACongruence(
                            self.names[r].clone(),
                            self.alphabet.letter(a),
                        ));
                    }
                }
            }
        }
        let names = p
            .blocks()
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    self.names[b[0]].clone()
                } else {
                    set_name(&self.names, &b.iter().copied().collect())
                }
            })
            .collect();
        let delta = p
            .blocks()
            .iter()
            .map(|b| {
                self.delta[b[0]]
                    .iter()
                    .map(|x| x.map(|t| p.block_of(t)))
                    .collect()
            })
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            orientation: self.orientation,
            names,
            initial: p.block_of(self.initial),
            finals: self.finals.iter().map(|&q| p.block_of(q)).collect(),
            delta,
        })
    }

    /// The minimal complete Dfa, states named by their shortest
    /// representative and numbered breadth-first.
    pub fn minimize(&self) -> Dfa {
        let d = self.complete().accessible();
        let labels: Vec<bool> = (0..d.num_states()).map(|q| d.finals.contains(&q)).collect();
        let part = moore_refine(&labels, d.alphabet.len(), |q, a| d.delta[q][a].map(|t| ((), t)));
        let q = d.quotient(&part).expect("Moore partition is a congruence").accessible();
        q.named_by_representatives()
    }

    /// Renames every accessible state `[u]` after its shortest representative.
    pub fn named_by_representatives(&self) -> Dfa {
        let reps = self.representatives();
        let names = reps
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                Some(w) => class_name(w),
                None => self.names[i].clone(),
            })
            .collect();
        self.with_names(names)
    }

    pub fn complement(&self, auto_complete: bool) -> Result<Dfa> {
        let d = if self.is_complete() {
            self.clone()
        } else if auto_complete {
            self.complete()
        } else {
            return Err(Error::Partial);
        };
        let finals = (0..d.num_states()).filter(|q| !d.finals.contains(q)).collect();
        Ok(d.with_finals(finals))
    }

    /// Synchronous product over accessible pairs; a missing edge on one side
    /// is an implicit sink. `fin` decides finality from the two sides.
    pub fn product_with<F: Fn(bool, bool) -> bool>(&self, other: &Dfa, fin: F) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch);
        }
        let nm = |d: &Dfa, q: Option<usize>| q.map_or("∅".to_string(), |q| d.names[q].clone());
        let start = (Some(self.initial), Some(other.initial));
        let mut index = BTreeMap::from([(start, 0usize)]);
        let mut pairs = vec![start];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::new();
            for a in 0..self.alphabet.len() {
                let p2 = p.and_then(|p| self.delta[p][a]);
                let q2 = q.and_then(|q| other.delta[q][a]);
                if p2.is_none() && q2.is_none() {
                    row.push(None);
                    continue;
                }
                let j = *index.entry((p2, q2)).or_insert_with(|| {
                    pairs.push((p2, q2));
                    pairs.len() - 1
                });
                row.push(Some(j));
            }
            delta.push(row);
            i += 1;
        }
        let finals = pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, q))| {
                fin(
                    p.is_some_and(|p| self.finals.contains(&p)),
                    q.is_some_and(|q| other.finals.contains(&q)),
                )
            })
            .map(|(i, _)| i)
            .collect();
        let names = pairs
            .iter()
            .map(|&(p, q)| format!("({},{})", nm(self, p), nm(other, q)))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            orientation: self.orientation,
            names,
            initial: 0,
            finals,
            delta,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.to_nfa().is_empty()
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product_with(other, |a, b| a != b)?.is_empty())
    }

    /// A shortest accepted word, if any.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let n = self.to_nfa();
        let l = n.shortest_to_final(self.initial)?;
        Some(
            self.orientation
                .reading_order(l)
                .into_iter()
                .map(|a| self.alphabet.letter(a))
                .collect(),
        )
    }
}

/// Name-based construction of an [`Nfa`] or [`Dfa`]. States are numbered in
/// order of first mention; errors surface at `build`.
#[derive(Debug, Clone)]
pub struct NfaBuilder {
    letters: Vec<char>,
    orientation: Orientation,
    states: Vec<String>,
    initials: Vec<String>,
    finals: Vec<String>,
    trans: Vec<(String, char, String)>,
}

impl NfaBuilder {
    pub fn new(letters: &[char]) -> Self {
        NfaBuilder {
            letters: letters.to_vec(),
            orientation: Orientation::Left,
            states: Vec::new(),
            initials: Vec::new(),
            finals: Vec::new(),
            trans: Vec::new(),
        }
    }

    fn mention(&mut self, s: &str) {
        if !self.states.iter().any(|x| x == s) {
            self.states.push(s.to_string());
        }
    }

    pub fn orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    pub fn right(self) -> Self {
        self.orientation(Orientation::Right)
    }

    pub fn state(mut self, s: &str) -> Self {
        self.mention(s);
        self
    }

    pub fn initial(mut self, s: &str) -> Self {
        self.mention(s);
        self.initials.push(s.to_string());
        self
    }

    pub fn final_(mut self, s: &str) -> Self {
        self.mention(s);
        self.finals.push(s.to_string());
        self
    }

    pub fn trans(mut self, p: &str, a: char, q: &str) -> Self {
        self.mention(p);
        self.mention(q);
        self.trans.push((p.to_string(), a, q.to_string()));
        self
    }

    /// Adds `p -a-> q` for every letter `a` in `letters`.
    pub fn loops(mut self, p: &str, letters: &str, q: &str) -> Self {
        for a in letters.chars() {
            self = self.trans(p, a, q);
        }
        self
    }

    pub fn build(self) -> Result<Nfa> {
        let alphabet = Alphabet::new(self.letters.iter().copied())?;
        let mut a = Nfa::new(alphabet, self.orientation);
        for s in &self.states {
            a.add_state(s.clone());
        }
        for s in &self.initials {
            let q = a.state_id(s).unwrap();
            a.set_initial(q);
        }
        for s in &self.finals {
            let q = a.state_id(s).unwrap();
            a.set_final(q);
        }
        for (p, c, q) in &self.trans {
            let x = a.alphabet.index(*c).ok_or(Error::ForeignLetter(*c))?;
            let (p, q) = (a.state_id(p).unwrap(), a.state_id(q).unwrap());
            a.add_transition(p, x, q);
        }
        Ok(a)
    }

    pub fn build_dfa(self) -> Result<Dfa> {
        let nfa = self.build()?;
        nfa_to_dfa(&nfa)
    }
}

/// Reads a deterministic Nfa (one initial state, at most one successor per
/// letter) as a Dfa with the same state numbering.
pub fn nfa_to_dfa(nfa: &Nfa) -> Result<Dfa> {
    if nfa.initials.len() != 1 {
        return Err(Error::InvalidMachine(format!(
            "a Dfa needs exactly one initial state, found {}",
            nfa.initials.len()
        )));
    }
    let mut delta = Vec::new();
    for (p, row) in nfa.succ.iter().enumerate() {
        let mut r = Vec::new();
        for (a, qs) in row.iter().enumerate() {
            if qs.len() > 1 {
                return Err(Error::InvalidMachine(format!(
                    "state {} has {} successors on {:?}",
                    nfa.names[p],
                    qs.len(),
                    nfa.alphabet.letter(a)
                )));
            }
            r.push(qs.iter().next().copied());
        }
        delta.push(r);
    }
    Ok(Dfa {
        alphabet: nfa.alphabet.clone(),
        orientation: nfa.orientation,
        names: nfa.names.clone(),
        initial: *nfa.initials.iter().next().unwrap(),
        finals: nfa.finals.clone(),
        delta,
    })
}

/// The congruence `∼_A` of a deterministic automaton: one class per
/// accessible state, with its shortest representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    /// Accessible part of the automaton, breadth-first numbering, no finals.
    pub carrier: Dfa,
    pub partition: Partition,
    pub representatives: Vec<Word>,
}

pub fn automaton_congruence(a: &Dfa) -> Congruence {
    let carrier = a.accessible().with_finals(BTreeSet::new());
    let representatives = carrier
        .representatives()
        .into_iter()
        .map(|r| r.expect("accessible"))
        .collect();
    Congruence {
        partition: Partition::discrete(carrier.num_states()),
        carrier,
        representatives,
    }
}

/// The automaton `Σ*/∼` of a congruence given as a partition of a carrier
/// automaton's states. The partition must be stable under the action.
pub fn congruence_to_automaton(carrier: &Dfa, partition: &Partition) -> Result<Dfa> {
    carrier
        .with_finals(BTreeSet::new())
        .quotient(partition)
        .map(|d| d.accessible().named_by_representatives())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn l_ends() -> Nfa {
        Nfa::builder(&['a', 'b'])
            .initial("0")
            .trans("0", 'a', "1")
            .trans("0", 'a', "2")
            .trans("1", 'a', "2")
            .loops("1", "ab", "1")
            .final_("2")
            .build()
            .unwrap()
    }

    #[test]
    fn orientation_round_trip() {
        let a = l_ends();
        let r = a.reverse();
        assert_eq!(r.orientation(), Orientation::Right);
        for w in a.alphabet().words_up_to(5) {
            assert_eq!(a.accepts(&w).unwrap(), r.accepts(&w).unwrap());
            assert_eq!(a.accepts(&w).unwrap(), r.reverse().accepts(&w).unwrap());
        }
    }

    #[test]
    fn right_dfa_reads_backwards() {
        // accepts words ending in b
        let d = Dfa::builder(&['a', 'b'])
            .right()
            .initial("0")
            .trans("0", 'b', "1")
            .loops("1", "ab", "1")
            .final_("1")
            .build_dfa()
            .unwrap();
        assert!(d.accepts(&word("aab")).unwrap());
        assert!(!d.accepts(&word("ba")).unwrap());
    }

    #[test]
    fn minimize_and_complement() {
        let d = l_ends().determinize();
        let m = d.minimize();
        assert_eq!(m.num_states(), 4);
        assert!(m.equivalent(&d.complete()).unwrap());
        let c = m.complement(false).unwrap().complement(false).unwrap();
        assert!(c.equivalent(&m).unwrap());
        assert_eq!(d.complement(false), Err(Error::Partial));
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn ambiguity() {
        assert!(l_ends().is_unambiguous());
        let two = Nfa::builder(&['a'])
            .initial("i")
            .trans("i", 'a', "f")
            .trans("i", 'a', "g")
            .final_("f")
            .final_("g")
            .build()
            .unwrap();
        assert_eq!(two.ambiguity_witness(), Some(word("a")));
    }

    #[test]
    fn congruence_round_trip() {
        let counter = Dfa::builder(&['a'])
            .initial("0")
            .trans("0", 'a', "1")
            .trans("1", 'a', "2")
            .trans("2", 'a', "3")
            .trans("3", 'a', "0")
            .build_dfa()
            .unwrap();
        let parity = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let q = congruence_to_automaton(&counter, &parity).unwrap();
        assert_eq!(q.num_states(), 2);
        let bad = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        assert!(matches!(
            congruence_to_automaton(&counter, &bad),
            Err(Error::NotACongruence(..))
        ));
        let c = automaton_congruence(&counter);
        let back = congruence_to_automaton(&c.carrier, &c.partition).unwrap();
        assert_eq!(back.num_states(), 4);
        assert_eq!(c.representatives[3], word("aaa"));
    }
}
