//! Finite monoids: transition monoids of automata as boolean matrices,
//! syntactic monoids, idempotent powers.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automata::{Dfa, Nfa, Orientation};
use crate::error::{Error, Result};
use crate::word::{show, Word};

/// Square boolean matrix, rows packed in 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct BoolMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    fn zero(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        BoolMatrix {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Relational composition: first `self`, then `other`.
    fn then(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    let s = other.stride;
                    for k in 0..s {
                        out.bits[i * s + k] |= other.row(j)[k];
                    }
                }
            }
        }
        out
    }
}

/// A finite monoid together with a generating morphism from letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    letters: Vec<char>,
    table: Vec<Vec<usize>>,
    identity: usize,
    gens: Vec<usize>,
    reps: Vec<Word>,
}

impl FiniteMonoid {
    /// Builds a monoid from an explicit table, checking associativity, the
    /// identity laws, and that the generator images generate every element.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        identity: usize,
        letters: &[char],
        gens: Vec<usize>,
    ) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n))
            || identity >= n
            || gens.len() != letters.len()
            || gens.iter().any(|&g| g >= n)
        {
            return Err(Error::MonoidLaw("malformed table".into()));
        }
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[identity] = Some(Vec::new());
        let mut order = vec![identity];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (a, &g) in gens.iter().enumerate() {
                let y = table[x][g];
                if reps[y].is_none() {
                    let mut w = reps[x].clone().unwrap();
                    w.push(letters[a]);
                    reps[y] = Some(w);
                    order.push(y);
                }
            }
            i += 1;
        }
        if order.len() != n {
            return Err(Error::MonoidLaw("generators do not generate every element".into()));
        }
        let m = FiniteMonoid {
            letters: letters.to_vec(),
            table,
            identity,
            gens,
            reps: reps.into_iter().map(|r| r.unwrap()).collect(),
        };
        m.check_laws()?;
        Ok(m)
    }

    /// Exhaustive associativity and identity check.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.size();
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::MonoidLaw(format!("identity fails on {x}")));
            }
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::MonoidLaw(format!(
                            "associativity fails on ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn generator(&self, a: usize) -> usize {
        self.gens[a]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Shortest representative of each element (shortlex in generator order).
    pub fn representative(&self, x: usize) -> &[char] {
        &self.reps[x]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    /// Image of a word under the generating morphism.
    pub fn element_of(&self, w: &[char]) -> Result<usize> {
        let mut x = self.identity;
        for &c in w {
            let a = self
                .letters
                .iter()
                .position(|&l| l == c)
                .ok_or(Error::ForeignLetter(c))?;
            x = self.mul(x, self.gens[a]);
        }
        Ok(x)
    }

    pub fn element_by_rep(&self, w: &[char]) -> Option<usize> {
        self.reps.iter().position(|r| r == w)
    }

    pub fn power(&self, x: usize, n: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..n {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Index and period of the cyclic submonoid generated by `x`: the least
    /// `i ≥ 1`, `p ≥ 1` with `x^(i+p) = x^i`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut cur = x;
        let mut k = 1;
        loop {
            if let Some(&i) = seen.get(&cur) {
                return (i, k - i);
            }
            seen.insert(cur, k);
            cur = self.mul(cur, x);
            k += 1;
        }
    }

    /// `x^ω`: the unique idempotent power of `x`.
    pub fn omega(&self, x: usize) -> usize {
        let (i, p) = self.index_period(x);
        // the idempotent is x^n for the multiple n of p with n >= i
        let n = i.div_ceil(p) * p;
        self.power(x, n.max(p))
    }

    /// Least `n ≥ 1` such that every `x^n` is idempotent.
    pub fn idempotent_power(&self) -> usize {
        let mut max_index = 1;
        let mut l = 1usize;
        for x in 0..self.size() {
            let (i, p) = self.index_period(x);
            max_index = max_index.max(i);
            l = lcm(l, p);
        }
        max_index.div_ceil(l) * l
    }

    /// An element whose cyclic submonoid contains a non-trivial group,
    /// with that group's order.
    pub fn group_witness(&self) -> Option<(usize, usize)> {
        (0..self.size())
            .map(|x| (x, self.index_period(x).1))
            .find(|&(_, p)| p > 1)
    }

    pub fn is_aperiodic(&self) -> bool {
        self.group_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size()).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn label(&self, x: usize) -> String {
        if x == self.identity {
            "1".into()
        } else {
            show(&self.reps[x])
        }
    }

    /// Element list with representatives, then the multiplication table.
    pub fn dump(&self, with_table: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "@monoid");
        let _ = writeln!(s, "size {}", self.size());
        let _ = writeln!(s, "idempotent-power {}", self.idempotent_power());
        for x in 0..self.size() {
            let _ = writeln!(
                s,
                "element {} {}{}",
                x,
                self.label(x),
                if self.is_idempotent(x) { " idempotent" } else { "" }
            );
        }
        if with_table {
            let labels: Vec<String> = (0..self.size()).map(|x| self.label(x)).collect();
            let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
            let _ = write!(s, "{:>w$} |", "", w = width);
            for l in &labels {
                let _ = write!(s, " {l:>width$}");
            }
            let _ = writeln!(s);
            for x in 0..self.size() {
                let _ = write!(s, "{:>w$} |", labels[x], w = width);
                for y in 0..self.size() {
                    let _ = write!(s, " {:>width$}", labels[self.mul(x, y)]);
                }
                let _ = writeln!(s);
            }
        }
        s
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The transition monoid of an automaton: word relations between states,
/// computed on the trimmed automaton (accessible part when there are no
/// final states). Right automata are handled through their reversal.
pub fn transition_monoid(a: &Nfa) -> FiniteMonoid {
    let a = if a.finals().is_empty() {
        a.accessible()
    } else {
        a.trim()
    };
    // the reversed relations are the converses, so the congruence is the same
    let a = match a.orientation() {
        Orientation::Left => a,
        Orientation::Right => a.reverse(),
    };
    let n = a.num_states();
    let k = a.alphabet().len();
    let gen_mats: Vec<BoolMatrix> = (0..k)
        .map(|x| {
            let mut m = BoolMatrix::zero(n);
            for p in 0..n {
                for &q in a.succ(p, x) {
                    m.set(p, q);
                }
            }
            m
        })
        .collect();
    let mut elems = vec![BoolMatrix::identity(n)];
    let mut index: HashMap<BoolMatrix, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut reps: Vec<Word> = vec![Vec::new()];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(k);
        for (x, g) in gen_mats.iter().enumerate() {
            let m = elems[i].then(g);
            let j = match index.get(&m) {
                Some(&j) => j,
                None => {
                    let j = elems.len();
                    index.insert(m.clone(), j);
                    elems.push(m);
                    let mut w = reps[i].clone();
                    w.push(a.alphabet().letter(x));
                    reps.push(w);
                    j
                }
            };
            row.push(j);
        }
        right.push(row);
        i += 1;
    }
    let size = elems.len();
    let letter_idx = |c: char| a.alphabet().index(c).unwrap();
    let table: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| reps[y].iter().fold(x, |acc, &c| right[acc][letter_idx(c)]))
                .collect()
        })
        .collect();
    FiniteMonoid {
        letters: a.alphabet().letters().to_vec(),
        gens: (0..k).map(|x| right[0][x]).collect(),
        table,
        identity: 0,
        reps,
    }
}

pub fn transition_monoid_dfa(d: &Dfa) -> FiniteMonoid {
    transition_monoid(&d.to_nfa())
}

/// Syntactic monoid of a regular language: the transition monoid of its
/// minimal automaton.
pub fn syntactic_monoid(l: &Dfa) -> FiniteMonoid {
    transition_monoid_dfa(&l.minimize())
}

pub fn syntactic_monoid_nfa(l: &Nfa) -> FiniteMonoid {
    syntactic_monoid(&l.determinize())
}
