//! Logical translations. A translation of order `k` over a finite output set
//! `S` attaches to every position `i` of the input the output `v` for which
//! some `j ≤ k` has `σ₁…σᵢ₋₁ ⊨ φ<_{j,σᵢ,v}` and `σᵢ₊₁…σₙ ⊨ φ>_{j,σᵢ,v}`, and
//! frames the result with `w₀` and `wₙ₊₁` chosen by `φⁱ` and `φᵗ`.
//!
//! Closed formulas are given by the languages they define: `φ<` and `φᵗ` as
//! left Dfas, `φ>` and `φⁱ` as right Dfas. The variety tag stands for the
//! logic; every component must have its syntactic monoid in it.

use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{Dfa, Orientation};
use crate::bimachine::{is_v_bimachine, Bimachine};
use crate::error::{Error, Result};
use crate::monoid::syntactic_monoid;
use crate::variety::VarietySpec;
use crate::word::{show, Alphabet, Word};

/// Which family a component belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    /// `φ<_{j,σ,v}` with `σ` and `v` as indices.
    Before(usize, usize, usize),
    /// `φ>_{j,σ,v}`.
    After(usize, usize, usize),
    /// `φⁱ_v`.
    Initial(usize),
    /// `φᵗ_v`.
    Terminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    alphabet: Alphabet,
    variety: VarietySpec,
    k: usize,
    outputs: Vec<Word>,
    components: BTreeMap<Slot, Dfa>,
}

fn oriented(d: &Dfa, o: Orientation) -> Dfa {
    if d.orientation() == o {
        d.clone()
    } else {
        d.to_nfa().reverse().determinize().minimize()
    }
}

/// The joint refinement of a family of Dfas of one orientation, with, for
/// every state, the set of members that accept there.
struct Joint {
    dfa: Dfa,
    accepting: Vec<BTreeSet<usize>>,
}

fn joint(alphabet: &Alphabet, o: Orientation, parts: &[&Dfa]) -> Result<Joint> {
    let parts: Vec<Dfa> = parts.iter().map(|d| d.complete()).collect();
    let k = alphabet.len();
    let start: Vec<usize> = parts.iter().map(|d| d.initial()).collect();
    let mut tuples = vec![start.clone()];
    let mut index = BTreeMap::from([(start, 0usize)]);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: Vec<usize> = tuples[i]
                .iter()
                .zip(&parts)
                .map(|(&q, d)| d.delta(q, a).expect("complete"))
                .collect();
            let j = *index.entry(next.clone()).or_insert_with(|| {
                tuples.push(next);
                tuples.len() - 1
            });
            row.push(Some(j));
        }
        delta.push(row);
        i += 1;
    }
    let accepting = tuples
        .iter()
        .map(|t| (0..parts.len()).filter(|&c| parts[c].is_final(t[c])).collect())
        .collect();
    let names = (0..tuples.len()).map(|i| i.to_string()).collect();
    let dfa = Dfa::from_parts(alphabet.clone(), o, names, 0, BTreeSet::new(), delta)?.named_by_representatives();
    Ok(Joint { dfa, accepting })
}

impl Translation {
    /// An empty translation: every component is `⊥` until set.
    pub fn new(alphabet: Alphabet, k: usize, outputs: &[Word], variety: VarietySpec) -> Result<Translation> {
        if k == 0 {
            return Err(Error::InvalidMachine("a translation needs k ≥ 1".into()));
        }
        let outputs: BTreeSet<Word> = outputs.iter().cloned().collect();
        Ok(Translation {
            alphabet,
            variety,
            k,
            outputs: outputs.into_iter().collect(),
            components: BTreeMap::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn outputs(&self) -> &[Word] {
        &self.outputs
    }

    pub fn components(&self) -> &BTreeMap<Slot, Dfa> {
        &self.components
    }

    pub fn component(&self, slot: Slot) -> Option<&Dfa> {
        self.components.get(&slot)
    }

    /// The same components tagged with another variety.
    pub fn with_variety(&self, variety: VarietySpec) -> Translation {
        Translation {
            variety,
            ..self.clone()
        }
    }

    fn output_index(&self, v: &[char]) -> Result<usize> {
        self.outputs
            .iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::InvalidMachine(format!("output {} is not declared", show(v))))
    }

    fn letter_index(&self, a: char) -> Result<usize> {
        self.alphabet.index(a).ok_or(Error::ForeignLetter(a))
    }

    fn put(&mut self, slot: Slot, d: &Dfa, o: Orientation) -> Result<()> {
        if d.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        if let Slot::Before(j, ..) | Slot::After(j, ..) = slot {
            if j == 0 || j > self.k {
                return Err(Error::InvalidMachine(format!("index {j} outside 1..={}", self.k)));
            }
        }
        self.components.insert(slot, oriented(d, o));
        Ok(())
    }

    /// Sets `φ<_{j,a,v}`. A right Dfa is converted to the same language.
    pub fn set_before(&mut self, j: usize, a: char, v: &[char], d: &Dfa) -> Result<()> {
        let slot = Slot::Before(j, self.letter_index(a)?, self.output_index(v)?);
        self.put(slot, d, Orientation::Left)
    }

    pub fn set_after(&mut self, j: usize, a: char, v: &[char], d: &Dfa) -> Result<()> {
        let slot = Slot::After(j, self.letter_index(a)?, self.output_index(v)?);
        self.put(slot, d, Orientation::Right)
    }

    pub fn set_initial(&mut self, v: &[char], d: &Dfa) -> Result<()> {
        let slot = Slot::Initial(self.output_index(v)?);
        self.put(slot, d, Orientation::Right)
    }

    pub fn set_terminal(&mut self, v: &[char], d: &Dfa) -> Result<()> {
        let slot = Slot::Terminal(self.output_index(v)?);
        self.put(slot, d, Orientation::Left)
    }

    /// Human-readable name of a slot, in the text-format syntax.
    pub fn slot_name(&self, slot: Slot) -> String {
        match slot {
            Slot::Before(j, a, v) => format!("phi< {j} {} {}", self.alphabet.letter(a), quoted(&self.outputs[v])),
            Slot::After(j, a, v) => format!("phi> {j} {} {}", self.alphabet.letter(a), quoted(&self.outputs[v])),
            Slot::Initial(v) => format!("phi-i {}", quoted(&self.outputs[v])),
            Slot::Terminal(v) => format!("phi-t {}", quoted(&self.outputs[v])),
        }
    }

    /// The index triples `(j, σ, v)` with both components present.
    fn rectangles(&self) -> Vec<(usize, usize, usize)> {
        self.components
            .keys()
            .filter_map(|s| match *s {
                Slot::Before(j, a, v) if self.components.contains_key(&Slot::After(j, a, v)) => Some((j, a, v)),
                _ => None,
            })
            .collect()
    }

    fn pick(found: BTreeSet<usize>, what: impl Fn() -> String) -> Result<Option<usize>> {
        match found.len() {
            0 => Ok(None),
            1 => Ok(found.into_iter().next()),
            _ => Err(Error::Invariant(format!("two outputs selected {}", what()))),
        }
    }

    /// The output on `u`, or `None` outside the domain.
    pub fn eval(&self, u: &[char]) -> Result<Option<Word>> {
        let x = self.alphabet.encode(u)?;
        let accepts = |slot: Slot, w: &[char]| -> Result<bool> {
            match self.components.get(&slot) {
                Some(d) => d.accepts(w),
                None => Ok(false),
            }
        };
        let mut frame = [BTreeSet::new(), BTreeSet::new()];
        for v in 0..self.outputs.len() {
            if accepts(Slot::Initial(v), u)? {
                frame[0].insert(v);
            }
            if accepts(Slot::Terminal(v), u)? {
                frame[1].insert(v);
            }
        }
        let [first, last] = frame;
        let Some(w0) = Self::pick(first, || "by the initial components".into())? else { return Ok(None) };
        let Some(wn) = Self::pick(last, || "by the terminal components".into())? else { return Ok(None) };
        let rects = self.rectangles();
        let mut out = self.outputs[w0].clone();
        for (i, &a) in x.iter().enumerate() {
            let (pre, post) = (&u[..i], &u[i + 1..]);
            let mut found = BTreeSet::new();
            for &(j, b, v) in &rects {
                if b == a && accepts(Slot::Before(j, b, v), pre)? && accepts(Slot::After(j, b, v), post)? {
                    found.insert(v);
                }
            }
            let Some(v) = Self::pick(found, || format!("at position {}", i + 1))? else { return Ok(None) };
            out.extend_from_slice(&self.outputs[v]);
        }
        out.extend_from_slice(&self.outputs[wn]);
        Ok(Some(out))
    }

    pub fn eval_str(&self, u: &str) -> Result<Option<String>> {
        Ok(self.eval(&crate::word::word(u))?.map(|o| o.into_iter().collect()))
    }

    fn joints(&self) -> Result<(Joint, Vec<Slot>, Joint, Vec<Slot>)> {
        let (mut ls, mut rs) = (Vec::new(), Vec::new());
        for &s in self.components.keys() {
            match s {
                Slot::Before(..) | Slot::Terminal(_) => ls.push(s),
                Slot::After(..) | Slot::Initial(_) => rs.push(s),
            }
        }
        let lp: Vec<&Dfa> = ls.iter().map(|s| &self.components[s]).collect();
        let rp: Vec<&Dfa> = rs.iter().map(|s| &self.components[s]).collect();
        Ok((
            joint(&self.alphabet, Orientation::Left, &lp)?,
            ls,
            joint(&self.alphabet, Orientation::Right, &rp)?,
            rs,
        ))
    }

    /// Checks the variety of every component, exhaustiveness, and the
    /// functionality conditions. Errors carry a witness.
    pub fn validate(&self) -> Result<()> {
        for (&slot, d) in &self.components {
            if let Some(v) = self.variety.violation(&syntactic_monoid(d)) {
                return Err(Error::InvalidMachine(format!(
                    "component {} is not a {} language (fails {})",
                    self.slot_name(slot),
                    self.variety.name(),
                    v.equation
                )));
            }
        }
        self.read_off().map(|_| ())
    }

    /// Reads the bimachine outputs off the joint refinements; this is where
    /// exhaustiveness and functionality are checked.
    fn read_off(&self) -> Result<Bimachine> {
        let (lj, ls, rj, rs) = self.joints()?;
        let holds = |slots: &[Slot], acc: &BTreeSet<usize>, want: Slot| {
            slots.iter().position(|&s| s == want).is_some_and(|i| acc.contains(&i))
        };
        let rects = self.rectangles();
        let lreps = lj.dfa.representatives();
        let rreps = rj.dfa.representatives();
        let ctx = |l: usize, r: usize| {
            format!(
                "(prefix {}, suffix {})",
                show(lreps[l].as_deref().unwrap_or_default()),
                show(rreps[r].as_deref().unwrap_or_default())
            )
        };
        let mut omega = BTreeMap::new();
        for l in 0..lj.dfa.num_states() {
            for a in 0..self.alphabet.len() {
                for r in 0..rj.dfa.num_states() {
                    let found: BTreeSet<usize> = rects
                        .iter()
                        .filter(|&&(j, b, v)| {
                            b == a
                                && holds(&ls, &lj.accepting[l], Slot::Before(j, b, v))
                                && holds(&rs, &rj.accepting[r], Slot::After(j, b, v))
                        })
                        .map(|&(_, _, v)| v)
                        .collect();
                    let letter = self.alphabet.letter(a);
                    match found.len() {
                        0 => {
                            return Err(Error::InvalidMachine(format!(
                                "not exhaustive on letter {letter} {}",
                                ctx(l, r)
                            )))
                        }
                        1 => {
                            let v = *found.iter().next().unwrap();
                            omega.insert((l, a, r), self.outputs[v].clone());
                        }
                        _ => {
                            let vs: Vec<String> = found.iter().map(|&v| show(&self.outputs[v])).collect();
                            return Err(Error::InvalidMachine(format!(
                                "not functional on letter {letter} {}: outputs {}",
                                ctx(l, r),
                                vs.join(", ")
                            )));
                        }
                    }
                }
            }
        }
        let frame = |j: &Joint, slots: &[Slot], make: fn(usize) -> Slot, reps: &[Option<Word>]| -> Result<BTreeMap<usize, Word>> {
            let mut m = BTreeMap::new();
            for x in 0..j.dfa.num_states() {
                let found: Vec<usize> = (0..self.outputs.len())
                    .filter(|&v| holds(slots, &j.accepting[x], make(v)))
                    .collect();
                match found.len() {
                    0 => {}
                    1 => {
                        m.insert(x, self.outputs[found[0]].clone());
                    }
                    _ => {
                        return Err(Error::InvalidMachine(format!(
                            "{} and {} both hold on {}",
                            self.slot_name(make(found[0])),
                            self.slot_name(make(found[1])),
                            show(reps[x].as_deref().unwrap_or_default())
                        )))
                    }
                }
            }
            Ok(m)
        };
        let rho = frame(&lj, &ls, Slot::Terminal, &lreps)?;
        let lambda = frame(&rj, &rs, Slot::Initial, &rreps)?;
        Bimachine::from_parts(lj.dfa, rj.dfa, omega, rho, lambda)
    }

    /// Number of elements of the syntactic monoid of each component.
    pub fn monoid_sizes(&self) -> BTreeMap<Slot, usize> {
        self.components
            .iter()
            .map(|(&s, d)| (s, syntactic_monoid(d).size()))
            .collect()
    }
}

pub(crate) fn quoted(w: &[char]) -> String {
    let mut s = String::from("\"");
    for &c in w {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

/// A translation defining the same function as a complete bimachine: `j`
/// ranges over the pairs `(l, r)`, `φ<` is the language of `l` and `φ>` the
/// language of `r`; `φⁱ_v` and `φᵗ_v` are the unions of the state
/// languages where `λ` and `ρ` equal `v`.
pub fn bimachine_to_translation(b: &Bimachine, v: &VarietySpec) -> Result<Translation> {
    if !b.is_complete() || !b.left().is_complete() || !b.right().is_complete() {
        return Err(Error::Incomplete);
    }
    if !is_v_bimachine(b, v) {
        return Err(Error::InvalidMachine(format!("the bimachine is not a {} bimachine", v.name())));
    }
    let (l, r) = (b.left(), b.right());
    let nr = r.num_states();
    let mut outputs: Vec<Word> = b.omega().values().cloned().collect();
    outputs.extend(b.rho().values().cloned());
    outputs.extend(b.lambda().values().cloned());
    let mut t = Translation::new(b.alphabet().clone(), l.num_states() * nr, &outputs, v.clone())?;
    let lang = |d: &Dfa, keep: BTreeSet<usize>| d.with_finals(keep).minimize();
    let lstates: Vec<Dfa> = (0..l.num_states()).map(|x| lang(l, BTreeSet::from([x]))).collect();
    let rstates: Vec<Dfa> = (0..nr).map(|x| lang(r, BTreeSet::from([x]))).collect();
    for (&(x, a, y), w) in b.omega() {
        let j = x * nr + y + 1;
        let c = b.alphabet().letter(a);
        t.set_before(j, c, w, &lstates[x])?;
        t.set_after(j, c, w, &rstates[y])?;
    }
    let by_value = |m: &BTreeMap<usize, Word>| {
        let mut g: BTreeMap<Word, BTreeSet<usize>> = BTreeMap::new();
        for (&x, w) in m {
            g.entry(w.clone()).or_default().insert(x);
        }
        g
    };
    for (w, xs) in by_value(b.lambda()) {
        t.set_initial(&w, &lang(r, xs))?;
    }
    for (w, xs) in by_value(b.rho()) {
        t.set_terminal(&w, &lang(l, xs))?;
    }
    Ok(t)
}

/// The complete bimachine over the joint refinements of the left and of the
/// right components.
pub fn translation_to_bimachine(t: &Translation) -> Result<Bimachine> {
    t.validate()?;
    t.read_off()
}
