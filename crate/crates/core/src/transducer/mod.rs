//! Real-time functional transducers.

mod delay;
mod determinize;
mod disambiguate;
mod minimize;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automata::{Dfa, Nfa, Orientation};
use crate::error::{Error, Result};
use crate::word::{concat, show, word, Alphabet, Delay, Word};

pub use delay::{analyse_delays, analyse_delays_within, DelayAnalysis};
pub use determinize::determinize_nft;
pub use disambiguate::{disambiguate, disambiguate_by_key};
pub use minimize::{minimize_dft, state_prefixes};

/// `T = (Q, I, F, Δ, i, t)`: at most one output per transition triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nft {
    alphabet: Alphabet,
    names: Vec<String>,
    initials: BTreeMap<usize, Word>,
    finals: BTreeMap<usize, Word>,
    succ: Vec<Vec<BTreeMap<usize, Word>>>,
}

impl Nft {
    pub fn new(alphabet: Alphabet) -> Self {
        Nft {
            alphabet,
            names: Vec::new(),
            initials: BTreeMap::new(),
            finals: BTreeMap::new(),
            succ: Vec::new(),
        }
    }

    pub fn builder(letters: &[char]) -> NftBuilder {
        NftBuilder::new(letters)
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(i) = self.state_id(&name) {
            return i;
        }
        self.names.push(name);
        self.succ.push(vec![BTreeMap::new(); self.alphabet.len()]);
        self.names.len() - 1
    }

    pub fn set_initial(&mut self, q: usize, out: Word) {
        self.initials.insert(q, out);
    }

    pub fn set_final(&mut self, q: usize, out: Word) {
        self.finals.insert(q, out);
    }

    /// Adds `p -a|out-> q`; a second output on the same triple is an error.
    pub fn add_transition(&mut self, p: usize, a: usize, q: usize, out: Word) -> Result<()> {
        match self.succ[p][a].get(&q) {
            Some(o) if o != &out => Err(Error::InvalidMachine(format!(
                "two outputs on {} -{}-> {}",
                self.names[p],
                self.alphabet.letter(a),
                self.names[q]
            ))),
            _ => {
                self.succ[p][a].insert(q, out);
                Ok(())
            }
        }
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn initials(&self) -> &BTreeMap<usize, Word> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeMap<usize, Word> {
        &self.finals
    }

    pub fn succ(&self, p: usize, a: usize) -> &BTreeMap<usize, Word> {
        &self.succ[p][a]
    }

    /// Every transition `(p, letter index, q, output)` in the fixed order.
    pub fn transitions(&self) -> Vec<(usize, usize, usize, &Word)> {
        let mut out = Vec::new();
        for (p, row) in self.succ.iter().enumerate() {
            for (a, m) in row.iter().enumerate() {
                for (&q, w) in m {
                    out.push((p, a, q, w));
                }
            }
        }
        out
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().flatten().map(|m| m.len()).sum()
    }

    /// Longest output word on any transition, initial or terminal output.
    pub fn max_output_len(&self) -> usize {
        let t = self.transitions().iter().map(|x| x.3.len()).max().unwrap_or(0);
        let i = self.initials.values().map(|w| w.len()).max().unwrap_or(0);
        let f = self.finals.values().map(|w| w.len()).max().unwrap_or(0);
        t.max(i).max(f)
    }

    pub fn underlying(&self) -> Nfa {
        let mut a = Nfa::new(self.alphabet.clone(), Orientation::Left);
        for n in &self.names {
            a.add_state(n.clone());
        }
        for &q in self.initials.keys() {
            a.set_initial(q);
        }
        for &q in self.finals.keys() {
            a.set_final(q);
        }
        for (p, x, q, _) in self.transitions() {
            a.add_transition(p, x, q);
        }
        a
    }

    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Nft {
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut t = Nft::new(self.alphabet.clone());
        for &q in keep {
            t.add_state(self.names[q].clone());
        }
        for (p, x, q, w) in self.transitions() {
            if let (Some(&p2), Some(&q2)) = (map.get(&p), map.get(&q)) {
                t.succ[p2][x].insert(q2, w.clone());
            }
        }
        for (q, w) in &self.initials {
            if let Some(&q2) = map.get(q) {
                t.initials.insert(q2, w.clone());
            }
        }
        for (q, w) in &self.finals {
            if let Some(&q2) = map.get(q) {
                t.finals.insert(q2, w.clone());
            }
        }
        t
    }

    pub fn trim(&self) -> Nft {
        let u = self.underlying();
        let acc = u.accessible_set();
        let co = u.coaccessible_set();
        self.restrict(&acc.intersection(&co).copied().collect())
    }

    pub fn is_trim(&self) -> bool {
        self.trim().num_states() == self.num_states()
    }

    pub fn domain_is_empty(&self) -> bool {
        self.trim().initials.is_empty()
    }

    /// All outputs over all accepting runs (brute force, for witnesses and
    /// small inputs).
    pub fn all_outputs(&self, w: &[char]) -> Result<BTreeSet<Word>> {
        let letters = self.alphabet.encode(w)?;
        let mut cur: BTreeSet<(usize, Word)> =
            self.initials.iter().map(|(&q, o)| (q, o.clone())).collect();
        for &a in &letters {
            let mut next = BTreeSet::new();
            for (p, o) in &cur {
                for (&q, u) in &self.succ[*p][a] {
                    next.insert((q, concat(o, u)));
                }
            }
            cur = next;
        }
        Ok(cur
            .into_iter()
            .filter_map(|(q, o)| self.finals.get(&q).map(|t| concat(&o, t)))
            .collect())
    }

    /// The output on `w`, `None` outside the domain. Two accepting runs with
    /// different outputs give [`Error::NotFunctional`].
    pub fn eval(&self, w: &[char]) -> Result<Option<Word>> {
        self.trim().eval_trim(w)
    }

    /// [`Nft::eval`] with the trimming done once, for evaluating many words.
    pub fn evaluator(&self) -> impl Fn(&[char]) -> Result<Option<Word>> {
        let t = self.trim();
        move |w| t.eval_trim(w)
    }

    fn eval_trim(&self, w: &[char]) -> Result<Option<Word>> {
        let letters = self.alphabet.encode(w)?;
        let t = self;
        // in a trim functional transducer each state carries one output
        let mut cur: BTreeMap<usize, Word> = t.initials.clone();
        for (i, &a) in letters.iter().enumerate() {
            let mut next: BTreeMap<usize, Word> = BTreeMap::new();
            for (p, o) in &cur {
                for (&q, u) in &t.succ[*p][a] {
                    let out = concat(o, u);
                    match next.get(&q) {
                        Some(prev) if prev != &out => {
                            let mut witness: Word = w[..=i].to_vec();
                            let rest = t.underlying().shortest_to_final(q).unwrap_or_default();
                            witness.extend(rest.iter().map(|&x| t.alphabet.letter(x)));
                            return Err(Error::NotFunctional {
                                witness: show(&witness),
                            });
                        }
                        _ => {
                            next.insert(q, out);
                        }
                    }
                }
            }
            cur = next;
        }
        let mut result: Option<Word> = None;
        for (q, o) in &cur {
            if let Some(tq) = t.finals.get(q) {
                let out = concat(o, tq);
                match &result {
                    Some(r) if r != &out => {
                        return Err(Error::NotFunctional { witness: show(w) })
                    }
                    _ => result = Some(out),
                }
            }
        }
        Ok(result)
    }

    pub fn eval_str(&self, w: &str) -> Result<Option<String>> {
        Ok(self.eval(&word(w))?.map(|o| o.into_iter().collect()))
    }

    /// `None` when functional, otherwise an input with two distinct outputs.
    pub fn functionality_witness(&self) -> Option<Word> {
        let t = self.trim();
        let n = t.num_states();
        if n == 0 {
            return None;
        }
        // square, restricted to pairs that can both still accept
        let u = t.underlying();
        let mut fwd: BTreeMap<(usize, usize), Vec<((usize, usize), usize)>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for &p in t.initials.keys() {
            for &q in t.initials.keys() {
                seen.insert((p, q));
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            for a in 0..t.alphabet.len() {
                for &p2 in u.succ(p, a) {
                    for &q2 in u.succ(q, a) {
                        fwd.entry((p, q)).or_default().push(((p2, q2), a));
                        if seen.insert((p2, q2)) {
                            queue.push_back((p2, q2));
                        }
                    }
                }
            }
        }
        let mut co: BTreeSet<(usize, usize)> = seen
            .iter()
            .copied()
            .filter(|(p, q)| t.finals.contains_key(p) && t.finals.contains_key(q))
            .collect();
        loop {
            let before = co.len();
            for (src, out) in &fwd {
                if out.iter().any(|(d, _)| co.contains(d)) {
                    co.insert(*src);
                }
            }
            if co.len() == before {
                break;
            }
        }
        // breadth-first delay propagation on the co-accessible square
        let mut delay: BTreeMap<(usize, usize), (Delay, Vec<usize>)> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for (&p, ip) in &t.initials {
            for (&q, iq) in &t.initials {
                if co.contains(&(p, q)) {
                    delay.insert((p, q), (Delay::new(ip, iq), Vec::new()));
                    queue.push_back((p, q));
                }
            }
        }
        let mut conflict: Option<((usize, usize), Vec<usize>)> = None;
        while conflict.is_none() {
            let Some(node) = queue.pop_front() else { break };
            let (d, path) = delay[&node].clone();
            let (p, q) = node;
            if d.is_divergent() {
                conflict = Some((node, path.clone()));
                break;
            }
            if let (Some(tp), Some(tq)) = (t.finals.get(&p), t.finals.get(&q)) {
                if !d.extend(tp, tq).is_zero() {
                    conflict = Some((node, path.clone()));
                    break;
                }
            }
            for &((p2, q2), a) in fwd.get(&node).map(|v| v.as_slice()).unwrap_or(&[]) {
                if !co.contains(&(p2, q2)) {
                    continue;
                }
                let d2 = d.extend(&t.succ[p][a][&p2], &t.succ[q][a][&q2]);
                let mut path2 = path.clone();
                path2.push(a);
                match delay.get(&(p2, q2)) {
                    Some((d0, other)) => {
                        if d0 != &d2 {
                            candidates.push(other.clone());
                            conflict = Some(((p2, q2), path2));
                            break;
                        }
                    }
                    None => {
                        delay.insert((p2, q2), (d2, path2));
                        queue.push_back((p2, q2));
                    }
                }
            }
        }
        let (node, path) = conflict?;
        candidates.push(path);
        // complete each candidate prefix with a continuation to a final pair
        let suffix = pair_suffix(&t, &fwd, node);
        let mut tries: Vec<Word> = candidates
            .into_iter()
            .map(|mut p| {
                p.extend(suffix.iter().copied());
                p.into_iter().map(|a| t.alphabet.letter(a)).collect()
            })
            .collect();
        tries.sort_by_key(|w: &Word| w.len());
        for w in &tries {
            if self.all_outputs(w).map(|o| o.len() > 1).unwrap_or(false) {
                return Some(w.clone());
            }
        }
        // fall back to a bounded search; the square guarantees a witness exists
        let bound = 2 * n * n + tries.iter().map(|w| w.len()).max().unwrap_or(0) + 2;
        for len in 0..=bound {
            for w in words_of_len(&t.alphabet, len) {
                if self.all_outputs(&w).map(|o| o.len() > 1).unwrap_or(false) {
                    return Some(w);
                }
            }
        }
        None
    }

    pub fn is_functional(&self) -> bool {
        self.functionality_witness().is_none()
    }

    pub fn check_functional(&self) -> Result<()> {
        match self.functionality_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotFunctional { witness: show(&w) }),
        }
    }

    pub fn is_unambiguous(&self) -> bool {
        self.underlying().is_unambiguous()
    }

    /// Mirror transducer: defines `u ↦ rev(f(rev(u)))`.
    pub fn mirror(&self) -> Nft {
        let mut t = Nft::new(self.alphabet.clone());
        for n in &self.names {
            t.add_state(n.clone());
        }
        for (p, x, q, w) in self.transitions() {
            t.succ[q][x].insert(p, w.iter().rev().copied().collect());
        }
        t.initials = self
            .finals
            .iter()
            .map(|(&q, w)| (q, w.iter().rev().copied().collect()))
            .collect();
        t.finals = self
            .initials
            .iter()
            .map(|(&q, w)| (q, w.iter().rev().copied().collect()))
            .collect();
        t
    }

    /// Restriction of the function to the language of `dom` (a left Dfa).
    pub fn restrict_domain(&self, dom: &Dfa) -> Result<Nft> {
        if dom.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let dom = if dom.orientation() == Orientation::Left {
            dom.clone()
        } else {
            dom.to_nfa().reverse().determinize()
        };
        let mut t = Nft::new(self.alphabet.clone());
        let mut index = BTreeMap::new();
        let mut queue = VecDeque::new();
        for (&p, w) in &self.initials {
            let id = t.add_state(format!("({},{})", self.names[p], dom.name(dom.initial())));
            index.insert((p, dom.initial()), id);
            t.initials.insert(id, w.clone());
            queue.push_back((p, dom.initial()));
        }
        while let Some((p, d)) = queue.pop_front() {
            let id = index[&(p, d)];
            if dom.is_final(d) {
                if let Some(w) = self.finals.get(&p) {
                    t.finals.insert(id, w.clone());
                }
            }
            for a in 0..self.alphabet.len() {
                let Some(d2) = dom.delta(d, a) else { continue };
                for (&p2, w) in &self.succ[p][a] {
                    let id2 = match index.get(&(p2, d2)) {
                        Some(&i) => i,
                        None => {
                            let i = t.add_state(format!("({},{})", self.names[p2], dom.name(d2)));
                            index.insert((p2, d2), i);
                            queue.push_back((p2, d2));
                            i
                        }
                    };
                    t.succ[id][a].insert(id2, w.clone());
                }
            }
        }
        Ok(t)
    }

    /// Disjoint union; the second machine's states get a `'` suffix where
    /// names collide.
    pub fn union(&self, other: &Nft) -> Result<Nft> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut t = self.clone();
        let mut map = Vec::new();
        for n in &other.names {
            let mut name = n.clone();
            while t.state_id(&name).is_some() {
                name.push('\'');
            }
            map.push(t.add_state(name));
        }
        for (p, x, q, w) in other.transitions() {
            t.succ[map[p]][x].insert(map[q], w.clone());
        }
        for (&q, w) in &other.initials {
            t.initials.insert(map[q], w.clone());
        }
        for (&q, w) in &other.finals {
            t.finals.insert(map[q], w.clone());
        }
        Ok(t)
    }

    /// The identity function on the language of an automaton.
    pub fn identity_on(a: &Nfa) -> Result<Nft> {
        let a = if a.orientation() == Orientation::Left {
            a.clone()
        } else {
            a.reverse()
        };
        let mut t = Nft::new(a.alphabet().clone());
        for n in a.names() {
            t.add_state(n.clone());
        }
        for &q in a.initials() {
            t.initials.insert(q, Vec::new());
        }
        for &q in a.finals() {
            t.finals.insert(q, Vec::new());
        }
        for (p, x, q) in a.transitions() {
            t.succ[p][x].insert(q, vec![a.alphabet().letter(x)]);
        }
        Ok(t)
    }

    /// Renumbers states in breadth-first order from the initial states.
    pub fn canonical_order(&self) -> Nft {
        let mut order: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.num_states()];
        for &q in self.initials.keys() {
            if !seen[q] {
                seen[q] = true;
                order.push(q);
            }
        }
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for a in 0..self.alphabet.len() {
                for &q in self.succ[p][a].keys() {
                    if !seen[q] {
                        seen[q] = true;
                        order.push(q);
                    }
                }
            }
            i += 1;
        }
        for q in 0..self.num_states() {
            if !seen[q] {
                order.push(q);
            }
        }
        let pos: Vec<usize> = {
            let mut v = vec![0; order.len()];
            for (i, &q) in order.iter().enumerate() {
                v[q] = i;
            }
            v
        };
        let mut t = Nft::new(self.alphabet.clone());
        for &q in &order {
            t.add_state(self.names[q].clone());
        }
        for (p, x, q, w) in self.transitions() {
            t.succ[pos[p]][x].insert(pos[q], w.clone());
        }
        t.initials = self.initials.iter().map(|(&q, w)| (pos[q], w.clone())).collect();
        t.finals = self.finals.iter().map(|(&q, w)| (pos[q], w.clone())).collect();
        t
    }
}

fn words_of_len(alphabet: &Alphabet, len: usize) -> Vec<Word> {
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in alphabet.letters() {
                let mut x: Word = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        layer = next;
    }
    layer
}

fn pair_suffix(
    t: &Nft,
    fwd: &BTreeMap<(usize, usize), Vec<((usize, usize), usize)>>,
    start: (usize, usize),
) -> Vec<usize> {
    let mut prev: BTreeMap<(usize, usize), ((usize, usize), usize)> = BTreeMap::new();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(n) = queue.pop_front() {
        if t.finals.contains_key(&n.0) && t.finals.contains_key(&n.1) {
            let mut path = Vec::new();
            let mut cur = n;
            while let Some(&(p, a)) = prev.get(&cur) {
                path.push(a);
                cur = p;
            }
            path.reverse();
            return path;
        }
        for &(m, a) in fwd.get(&n).map(|v| v.as_slice()).unwrap_or(&[]) {
            if seen.insert(m) {
                prev.insert(m, (n, a));
                queue.push_back(m);
            }
        }
    }
    Vec::new()
}

/// Name-based builder for [`Nft`] and [`Dft`].
#[derive(Debug, Clone)]
pub struct NftBuilder {
    letters: Vec<char>,
    states: Vec<String>,
    initials: Vec<(String, Word)>,
    finals: Vec<(String, Word)>,
    trans: Vec<(String, char, String, Word)>,
}

impl NftBuilder {
    pub fn new(letters: &[char]) -> Self {
        NftBuilder {
            letters: letters.to_vec(),
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

    pub fn state(mut self, s: &str) -> Self {
        self.mention(s);
        self
    }

    pub fn initial(mut self, s: &str, out: &str) -> Self {
        self.mention(s);
        self.initials.push((s.to_string(), word(out)));
        self
    }

    pub fn final_(mut self, s: &str, out: &str) -> Self {
        self.mention(s);
        self.finals.push((s.to_string(), word(out)));
        self
    }

    pub fn trans(mut self, p: &str, a: char, q: &str, out: &str) -> Self {
        self.mention(p);
        self.mention(q);
        self.trans.push((p.to_string(), a, q.to_string(), word(out)));
        self
    }

    /// `p -a|out-> q` for every letter `a` of `letters`.
    pub fn loops(mut self, p: &str, letters: &str, q: &str, out: &str) -> Self {
        for a in letters.chars() {
            self = self.trans(p, a, q, out);
        }
        self
    }

    pub fn build(self) -> Result<Nft> {
        let mut t = Nft::new(Alphabet::new(self.letters.iter().copied())?);
        for s in &self.states {
            t.add_state(s.clone());
        }
        for (s, w) in self.initials {
            let q = t.state_id(&s).unwrap();
            t.initials.insert(q, w);
        }
        for (s, w) in self.finals {
            let q = t.state_id(&s).unwrap();
            t.finals.insert(q, w);
        }
        for (p, c, q, w) in self.trans {
            let x = t.alphabet.index(c).ok_or(Error::ForeignLetter(c))?;
            let (p, q) = (t.state_id(&p).unwrap(), t.state_id(&q).unwrap());
            t.add_transition(p, x, q, w)?;
        }
        Ok(t)
    }

    pub fn build_dft(self) -> Result<Dft> {
        Dft::from_nft(&self.build()?)
    }
}

/// Deterministic transducer with initial output and terminal outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dft {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: usize,
    init_out: Word,
    delta: Vec<Vec<Option<(usize, Word)>>>,
    finals: BTreeMap<usize, Word>,
}

impl Dft {
    pub fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: usize,
        init_out: Word,
        delta: Vec<Vec<Option<(usize, Word)>>>,
        finals: BTreeMap<usize, Word>,
    ) -> Result<Dft> {
        let n = names.len();
        if initial >= n
            || delta.len() != n
            || delta.iter().any(|r| {
                r.len() != alphabet.len() || r.iter().flatten().any(|(q, _)| *q >= n)
            })
            || finals.keys().any(|&q| q >= n)
        {
            return Err(Error::InvalidMachine("inconsistent Dft parts".into()));
        }
        Ok(Dft {
            alphabet,
            names,
            initial,
            init_out,
            delta,
            finals,
        })
    }

    pub fn from_nft(t: &Nft) -> Result<Dft> {
        if t.initials.len() != 1 {
            return Err(Error::InvalidMachine(format!(
                "a Dft needs exactly one initial state, found {}",
                t.initials.len()
            )));
        }
        let mut delta = Vec::new();
        for (p, row) in t.succ.iter().enumerate() {
            let mut r = Vec::new();
            for (a, m) in row.iter().enumerate() {
                if m.len() > 1 {
                    return Err(Error::InvalidMachine(format!(
                        "state {} is not deterministic on {:?}",
                        t.names[p],
                        t.alphabet.letter(a)
                    )));
                }
                r.push(m.iter().next().map(|(&q, w)| (q, w.clone())));
            }
            delta.push(r);
        }
        let (&initial, init_out) = t.initials.iter().next().unwrap();
        Ok(Dft {
            alphabet: t.alphabet.clone(),
            names: t.names.clone(),
            initial,
            init_out: init_out.clone(),
            delta,
            finals: t.finals.clone(),
        })
    }

    pub fn to_nft(&self) -> Nft {
        let mut t = Nft::new(self.alphabet.clone());
        for n in &self.names {
            t.add_state(n.clone());
        }
        t.initials.insert(self.initial, self.init_out.clone());
        t.finals = self.finals.clone();
        for (p, row) in self.delta.iter().enumerate() {
            for (a, e) in row.iter().enumerate() {
                if let Some((q, w)) = e {
                    t.succ[p][a].insert(*q, w.clone());
                }
            }
        }
        t
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn initial_output(&self) -> &[char] {
        &self.init_out
    }

    pub fn delta(&self, q: usize, a: usize) -> Option<&(usize, Word)> {
        self.delta[q][a].as_ref()
    }

    pub fn finals(&self) -> &BTreeMap<usize, Word> {
        &self.finals
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().flatten().count()
    }

    /// Edge lookup by state name and letter: `(target name, output)`.
    pub fn edge(&self, from: &str, a: char) -> Option<(&str, String)> {
        let p = self.state_id(from)?;
        let x = self.alphabet.index(a)?;
        self.delta[p][x]
            .as_ref()
            .map(|(q, w)| (self.names[*q].as_str(), w.iter().collect()))
    }

    pub fn eval(&self, w: &[char]) -> Result<Option<Word>> {
        let letters = self.alphabet.encode(w)?;
        let mut q = self.initial;
        let mut out = self.init_out.clone();
        for a in letters {
            match &self.delta[q][a] {
                Some((q2, u)) => {
                    out.extend_from_slice(u);
                    q = *q2;
                }
                None => return Ok(None),
            }
        }
        Ok(self.finals.get(&q).map(|t| concat(&out, t)))
    }

    pub fn eval_str(&self, w: &str) -> Result<Option<String>> {
        Ok(self.eval(&word(w))?.map(|o| o.into_iter().collect()))
    }

    pub fn underlying(&self) -> Dfa {
        Dfa::from_parts(
            self.alphabet.clone(),
            Orientation::Left,
            self.names.clone(),
            self.initial,
            self.finals.keys().copied().collect(),
            self.delta
                .iter()
                .map(|r| r.iter().map(|e| e.as_ref().map(|(q, _)| *q)).collect())
                .collect(),
        )
        .expect("consistent by construction")
    }

    /// Counter-freeness: no word `u` and state `q` with `q·u^k = q` for some
    /// `k > 1` while `q·u ≠ q`. Checked on the transition monoid's elements.
    pub fn is_counter_free(&self) -> bool {
        let m = crate::monoid::transition_monoid_dfa(&self.underlying());
        let d = self.underlying().accessible();
        let letters = |w: &[char]| d.alphabet().encode(w).unwrap();
        for x in 0..m.size() {
            let u = letters(m.representative(x));
            for q in 0..d.num_states() {
                let mut cur = Some(q);
                let mut orbit = Vec::new();
                for _ in 0..=m.size() {
                    cur = cur.and_then(|c| d.run_letters(c, &u));
                    match cur {
                        Some(c) => orbit.push(c),
                        None => break,
                    }
                }
                if let Some(k) = orbit.iter().position(|&c| c == q) {
                    if k > 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::f_ends;

    #[test]
    fn evaluates_f_ends() {
        let t = f_ends();
        assert_eq!(t.eval_str("abaa").unwrap().unwrap(), "aaaa");
        assert_eq!(t.eval_str("abab").unwrap().unwrap(), "");
        assert_eq!(t.eval_str("ba").unwrap().unwrap(), "");
        assert!(t.is_functional());
        assert!(t.is_unambiguous());
    }

    #[test]
    fn non_functional_witness() {
        let t = Nft::builder(&['a'])
            .initial("i", "")
            .trans("i", 'a', "f", "a")
            .trans("i", 'a', "g", "b")
            .final_("f", "")
            .final_("g", "")
            .build()
            .unwrap();
        assert_eq!(t.functionality_witness(), Some(word("a")));
        assert!(matches!(t.eval(&word("a")), Err(Error::NotFunctional { .. })));
    }

    #[test]
    fn mirror_reverses_function() {
        let t = f_ends();
        let m = t.mirror();
        for w in t.alphabet().words_up_to(5) {
            let r: Word = w.iter().rev().copied().collect();
            let expect = t.eval(&r).unwrap().map(|o| o.into_iter().rev().collect::<Word>());
            assert_eq!(m.eval(&w).unwrap(), expect);
        }
    }

    #[test]
    fn duplicate_output_rejected() {
        let r = Nft::builder(&['a'])
            .trans("0", 'a', "1", "x")
            .trans("0", 'a', "1", "y")
            .build();
        assert!(r.is_err());
    }
}
