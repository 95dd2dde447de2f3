//! Bimachines `B = (L, R, ω, λ, ρ)`: a left Dfa, a right Dfa, an output
//! function on `(l, σ, r)` and terminal outputs `λ` on right states and `ρ`
//! on left states.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automata::{class_name, Dfa, Orientation};
use crate::error::{Error, Result};
use crate::monoid::{transition_monoid, transition_monoid_dfa};
use crate::transducer::Nft;
use crate::variety::VarietySpec;
use crate::word::{concat, word, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimachine {
    left: Dfa,
    right: Dfa,
    omega: BTreeMap<(usize, usize, usize), Word>,
    rho: BTreeMap<usize, Word>,
    lambda: BTreeMap<usize, Word>,
}

fn rev(w: &[char]) -> Word {
    w.iter().rev().copied().collect()
}

impl Bimachine {
    /// A bimachine with no outputs yet. Final states of the automata are
    /// dropped.
    pub fn new(left: Dfa, right: Dfa) -> Result<Bimachine> {
        Bimachine::from_parts(left, right, BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
    }

    pub fn from_parts(
        left: Dfa,
        right: Dfa,
        omega: BTreeMap<(usize, usize, usize), Word>,
        rho: BTreeMap<usize, Word>,
        lambda: BTreeMap<usize, Word>,
    ) -> Result<Bimachine> {
        if left.orientation() != Orientation::Left || right.orientation() != Orientation::Right {
            return Err(Error::OrientationMismatch);
        }
        if left.alphabet() != right.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let (nl, nr, k) = (left.num_states(), right.num_states(), left.alphabet().len());
        if omega.keys().any(|&(l, a, r)| l >= nl || a >= k || r >= nr)
            || rho.keys().any(|&l| l >= nl)
            || lambda.keys().any(|&r| r >= nr)
        {
            return Err(Error::InvalidMachine("output on an undeclared state".into()));
        }
        Ok(Bimachine {
            left: left.with_finals(BTreeSet::new()),
            right: right.with_finals(BTreeSet::new()),
            omega,
            rho,
            lambda,
        })
    }

    fn ids(&self, l: &str, a: char, r: &str) -> Result<(usize, usize, usize)> {
        let li = self.left.state_id(l).ok_or_else(|| Error::UnknownState(l.into()))?;
        let ri = self.right.state_id(r).ok_or_else(|| Error::UnknownState(r.into()))?;
        let x = self.alphabet().index(a).ok_or(Error::ForeignLetter(a))?;
        Ok((li, x, ri))
    }

    /// Sets `ω(l, a, r) = w` by state names.
    pub fn set_output(&mut self, l: &str, a: char, r: &str, w: &str) -> Result<()> {
        let key = self.ids(l, a, r)?;
        self.omega.insert(key, word(w));
        Ok(())
    }

    pub fn set_rho(&mut self, l: &str, w: &str) -> Result<()> {
        let li = self.left.state_id(l).ok_or_else(|| Error::UnknownState(l.into()))?;
        self.rho.insert(li, word(w));
        Ok(())
    }

    pub fn set_lambda(&mut self, r: &str, w: &str) -> Result<()> {
        let ri = self.right.state_id(r).ok_or_else(|| Error::UnknownState(r.into()))?;
        self.lambda.insert(ri, word(w));
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.left.alphabet()
    }

    pub fn left(&self) -> &Dfa {
        &self.left
    }

    pub fn right(&self) -> &Dfa {
        &self.right
    }

    pub fn omega(&self) -> &BTreeMap<(usize, usize, usize), Word> {
        &self.omega
    }

    pub fn output(&self, l: usize, a: usize, r: usize) -> Option<&Word> {
        self.omega.get(&(l, a, r))
    }

    pub fn rho(&self) -> &BTreeMap<usize, Word> {
        &self.rho
    }

    pub fn lambda(&self) -> &BTreeMap<usize, Word> {
        &self.lambda
    }

    /// `λ(r_n) ω(l_0, u, r_0) ρ(l_n)`, or `None` when a run or a lookup is
    /// undefined.
    pub fn eval(&self, w: &[char]) -> Result<Option<Word>> {
        let x = self.alphabet().encode(w)?;
        let n = x.len();
        let mut ls = vec![self.left.initial()];
        for &a in &x {
            match self.left.delta(*ls.last().unwrap(), a) {
                Some(l) => ls.push(l),
                None => return Ok(None),
            }
        }
        // rs[j]: right state after the last j letters
        let mut rs = vec![self.right.initial()];
        for &a in x.iter().rev() {
            match self.right.delta(*rs.last().unwrap(), a) {
                Some(r) => rs.push(r),
                None => return Ok(None),
            }
        }
        let Some(mut out) = self.lambda.get(&rs[n]).cloned() else {
            return Ok(None);
        };
        for i in 1..=n {
            match self.omega.get(&(ls[i - 1], x[i - 1], rs[n - i])) {
                Some(v) => out.extend_from_slice(v),
                None => return Ok(None),
            }
        }
        Ok(self.rho.get(&ls[n]).map(|t| concat(&out, t)))
    }

    pub fn eval_str(&self, w: &str) -> Result<Option<String>> {
        Ok(self.eval(&word(w))?.map(|o| o.into_iter().collect()))
    }

    /// `ω` is defined on every triple.
    pub fn is_complete(&self) -> bool {
        self.omega.len() == self.left.num_states() * self.alphabet().len() * self.right.num_states()
    }

    /// Defines `u ↦ rev(f(rev(u)))` by swapping the two automata.
    pub fn mirror(&self) -> Bimachine {
        Bimachine {
            left: self.right.with_orientation(Orientation::Left),
            right: self.left.with_orientation(Orientation::Right),
            omega: self.omega.iter().map(|(&(l, a, r), w)| ((r, a, l), rev(w))).collect(),
            rho: self.lambda.iter().map(|(&r, w)| (r, rev(w))).collect(),
            lambda: self.rho.iter().map(|(&l, w)| (l, rev(w))).collect(),
        }
    }

    /// Drops every output containing `letter`.
    pub fn without_letter(&self, letter: char) -> Bimachine {
        let keep = |w: &Word| !w.contains(&letter);
        let mut b = self.clone();
        b.omega.retain(|_, w| keep(w));
        b.rho.retain(|_, w| keep(w));
        b.lambda.retain(|_, w| keep(w));
        b
    }

    /// The minimal left Dfa of the domain.
    pub fn domain(&self) -> Dfa {
        bimachine_to_nft(self).underlying().determinize().minimize()
    }
}

/// Completion: `ω` is extended by `ε`, and the left automaton is refined by
/// an automaton of the domain so that `ρ` is only defined on accepting
/// pairs. A bimachine that is already complete is returned unchanged.
pub fn complete_bimachine(b: &Bimachine) -> Result<Bimachine> {
    if b.is_complete() {
        return Ok(b.clone());
    }
    let dom = b.domain();
    let l = b.left.complete();
    let r = b.right.complete();
    let k = b.alphabet().len();
    let start = (l.initial(), dom.initial());
    let mut pairs = vec![start];
    let mut index = BTreeMap::from([(start, 0usize)]);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = (l.delta(p, a).unwrap(), dom.delta(q, a).unwrap());
            let j = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            row.push(Some(j));
        }
        delta.push(row);
        i += 1;
    }
    let names = pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", l.name(p), dom.name(q)))
        .collect();
    let left = Dfa::from_parts(b.alphabet().clone(), Orientation::Left, names, 0, BTreeSet::new(), delta)?;
    let nl0 = b.left.num_states();
    let nr0 = b.right.num_states();
    let mut omega = BTreeMap::new();
    for (i, &(p, _)) in pairs.iter().enumerate() {
        for a in 0..k {
            for rr in 0..r.num_states() {
                let v = if p < nl0 && rr < nr0 {
                    b.omega.get(&(p, a, rr)).cloned().unwrap_or_default()
                } else {
                    Vec::new()
                };
                omega.insert((i, a, rr), v);
            }
        }
    }
    let rho = pairs
        .iter()
        .enumerate()
        .filter(|(_, (_, q))| dom.is_final(*q))
        .filter_map(|(i, (p, _))| b.rho.get(p).map(|w| (i, w.clone())))
        .collect();
    Bimachine::from_parts(left, r, omega, rho, b.lambda.clone())
}

/// The product transducer on `L × R` before trimming: initial states
/// `{l₀} × dom(λ)`, final states `dom(ρ) × {r₀}`, and
/// `(l₁,r₁) -σ|ω(l₁,σ,r₂)-> (l₂,r₂)` whenever `l₁ -σ-> l₂` and `r₁ ←σ r₂`.
pub fn bimachine_product(b: &Bimachine) -> Nft {
    let (nl, nr) = (b.left.num_states(), b.right.num_states());
    let id = |l: usize, r: usize| l * nr + r;
    let mut t = Nft::new(b.alphabet().clone());
    for l in 0..nl {
        for r in 0..nr {
            t.add_state(format!("({},{})", b.left.name(l), b.right.name(r)));
        }
    }
    for (&r, w) in &b.lambda {
        t.set_initial(id(b.left.initial(), r), w.clone());
    }
    for (&l, w) in &b.rho {
        t.set_final(id(l, b.right.initial()), w.clone());
    }
    for l1 in 0..nl {
        for a in 0..b.alphabet().len() {
            let Some(l2) = b.left.delta(l1, a) else { continue };
            for r2 in 0..nr {
                let Some(r1) = b.right.delta(r2, a) else { continue };
                if let Some(v) = b.omega.get(&(l1, a, r2)) {
                    t.add_transition(id(l1, r1), a, id(l2, r2), v.clone())
                        .expect("one output per triple");
                }
            }
        }
    }
    t
}

/// Trimmed product transducer; unambiguous when `b` is complete.
pub fn bimachine_to_nft(b: &Bimachine) -> Nft {
    bimachine_product(b).trim()
}

/// The bimachine of an unambiguous transducer: both automata are the
/// transition monoid of the trimmed underlying automaton, with the right
/// action on the left and the left action on the right.
pub fn nft_to_bimachine(t: &Nft) -> Result<Bimachine> {
    if let Some(w) = t.underlying().ambiguity_witness() {
        return Err(Error::Ambiguous {
            witness: w.into_iter().collect(),
        });
    }
    let t = t.trim();
    let a = t.underlying();
    let m = transition_monoid(&a);
    let k = t.alphabet().len();
    let names: Vec<String> = m.representatives().iter().map(|w| class_name(w)).collect();
    let ldelta = (0..m.size())
        .map(|x| (0..k).map(|s| Some(m.mul(x, m.generator(s)))).collect())
        .collect();
    let rdelta = (0..m.size())
        .map(|x| (0..k).map(|s| Some(m.mul(m.generator(s), x))).collect())
        .collect();
    let alphabet = t.alphabet().clone();
    let left = Dfa::from_parts(alphabet.clone(), Orientation::Left, names.clone(), m.identity(), BTreeSet::new(), ldelta)?;
    let right = Dfa::from_parts(alphabet, Orientation::Right, names, m.identity(), BTreeSet::new(), rdelta)?;

    let initials: BTreeSet<usize> = t.initials().keys().copied().collect();
    let finals: BTreeSet<usize> = t.finals().keys().copied().collect();
    let rev_a = a.reverse();
    let mut fwd = Vec::new();
    let mut bwd = Vec::new();
    for x in 0..m.size() {
        let u = t.alphabet().encode(m.representative(x))?;
        fwd.push(a.run_from(&initials, &u));
        let ur: Vec<usize> = u.iter().rev().copied().collect();
        bwd.push(rev_a.run_from(&finals, &ur));
    }
    let unique = |what: String, found: Vec<&Word>| -> Result<Option<Word>> {
        match found.len() {
            0 => Ok(None),
            1 => Ok(Some(found[0].clone())),
            _ => Err(Error::Invariant(format!("{what} is not unique"))),
        }
    };
    let mut omega = BTreeMap::new();
    for x in 0..m.size() {
        for s in 0..k {
            for y in 0..m.size() {
                let found: Vec<&Word> = fwd[x]
                    .iter()
                    .flat_map(|&p| t.succ(p, s).iter())
                    .filter(|(q, _)| bwd[y].contains(q))
                    .map(|(_, v)| v)
                    .collect();
                let what = format!("ω({},{},{})", left.name(x), t.alphabet().letter(s), right.name(y));
                if let Some(v) = unique(what, found)? {
                    omega.insert((x, s, y), v);
                }
            }
        }
    }
    let mut rho = BTreeMap::new();
    let mut lambda = BTreeMap::new();
    for x in 0..m.size() {
        let f: Vec<&Word> = fwd[x].iter().filter_map(|p| t.finals().get(p)).collect();
        if let Some(v) = unique(format!("ρ({})", left.name(x)), f)? {
            rho.insert(x, v);
        }
        let i: Vec<&Word> = bwd[x].iter().filter_map(|p| t.initials().get(p)).collect();
        if let Some(v) = unique(format!("λ({})", right.name(x)), i)? {
            lambda.insert(x, v);
        }
    }
    Bimachine::from_parts(left, right, omega, rho, lambda)
}

/// Maps every accessible state of `fine` to the state of `coarse` reached by
/// the same words (`None` when `coarse` has no run). Fails when two words
/// reaching one fine state reach different coarse states.
pub(crate) fn coarsening_map(fine: &Dfa, coarse: &Dfa) -> Result<Vec<Option<Option<usize>>>> {
    if fine.alphabet() != coarse.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if fine.orientation() != coarse.orientation() {
        return Err(Error::OrientationMismatch);
    }
    let mut map: Vec<Option<Option<usize>>> = vec![None; fine.num_states()];
    map[fine.initial()] = Some(Some(coarse.initial()));
    let mut queue = VecDeque::from([fine.initial()]);
    while let Some(p) = queue.pop_front() {
        let c = map[p].unwrap();
        for a in 0..fine.alphabet().len() {
            let Some(p2) = fine.delta(p, a) else { continue };
            let c2 = c.and_then(|c| coarse.delta(c, a));
            match map[p2] {
                None => {
                    map[p2] = Some(c2);
                    queue.push_back(p2);
                }
                Some(old) if old != c2 => return Err(Error::NotFiner(fine.name(p2).to_string())),
                Some(_) => {}
            }
        }
    }
    Ok(map)
}

/// The same function over finer automata: each fine state behaves as the
/// coarse state it refines.
pub fn rebase_finer(b: &Bimachine, left: &Dfa, right: &Dfa) -> Result<Bimachine> {
    let lm = coarsening_map(left, &b.left)?;
    let rm = coarsening_map(right, &b.right)?;
    let k = b.alphabet().len();
    let mut omega = BTreeMap::new();
    for (l, cl) in lm.iter().enumerate() {
        let Some(Some(cl)) = cl else { continue };
        for a in 0..k {
            for (r, cr) in rm.iter().enumerate() {
                let Some(Some(cr)) = cr else { continue };
                if let Some(v) = b.omega.get(&(*cl, a, *cr)) {
                    omega.insert((l, a, r), v.clone());
                }
            }
        }
    }
    let rho = lm
        .iter()
        .enumerate()
        .filter_map(|(l, c)| c.flatten().and_then(|c| b.rho.get(&c)).map(|w| (l, w.clone())))
        .collect();
    let lambda = rm
        .iter()
        .enumerate()
        .filter_map(|(r, c)| c.flatten().and_then(|c| b.lambda.get(&c)).map(|w| (r, w.clone())))
        .collect();
    Bimachine::from_parts(left.clone(), right.clone(), omega, rho, lambda)
}

/// Both automata have their transition monoid in `v`.
pub fn is_v_bimachine(b: &Bimachine, v: &VarietySpec) -> bool {
    v.contains(&transition_monoid_dfa(&b.left)) && v.contains(&transition_monoid_dfa(&b.right))
}
