//! Words, alphabets and the prefix algebra used by transducer constructions.

use std::fmt;

use crate::error::{Error, Result};

/// A finite word. The empty vector is ε.
pub type Word = Vec<char>;

/// Letter used by completed functions to mark inputs outside the domain.
pub const BOTTOM: char = '⊥';

pub fn word(s: &str) -> Word {
    s.chars().collect()
}

/// Renders a word, using `ε` for the empty word.
pub fn show(w: &[char]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().collect()
    }
}

pub fn concat(u: &[char], v: &[char]) -> Word {
    let mut w = Vec::with_capacity(u.len() + v.len());
    w.extend_from_slice(u);
    w.extend_from_slice(v);
    w
}

/// Finite ordered set of letters. The declaration order is the order used
/// for every tie-break downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let mut seen = Vec::new();
        for c in letters {
            if seen.contains(&c) {
                return Err(Error::InvalidMachine(format!("letter {c:?} declared twice")));
            }
            if c.is_whitespace() {
                return Err(Error::InvalidMachine("whitespace letter".into()));
            }
            seen.push(c);
        }
        if seen.is_empty() {
            return Err(Error::InvalidMachine("empty alphabet".into()));
        }
        Ok(Alphabet { letters: seen })
    }

    pub fn from_str(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&x| x == c)
    }

    pub fn letter(&self, i: usize) -> char {
        self.letters[i]
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    /// Maps a word to letter indices, rejecting foreign letters.
    pub fn encode(&self, w: &[char]) -> Result<Vec<usize>> {
        w.iter()
            .map(|&c| self.index(c).ok_or(Error::ForeignLetter(c)))
            .collect()
    }

    /// The alphabet extended by one fresh letter placed last.
    pub fn with_letter(&self, c: char) -> Result<Self> {
        let mut l = self.letters.clone();
        l.push(c);
        Self::new(l)
    }

    /// All words of length at most `n`, shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for &c in &self.letters {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Longest common prefix of two words.
pub fn lcp2(u: &[char], v: &[char]) -> Word {
    u.iter()
        .zip(v)
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| *a)
        .collect()
}

/// Longest common prefix of a non-empty set of words.
pub fn lcp<'a, I>(words: I) -> Result<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut it = words.into_iter();
    let mut acc = it.next().ok_or(Error::EmptyMeet)?.clone();
    for w in it {
        let n = acc.iter().zip(w).take_while(|(a, b)| a == b).count();
        acc.truncate(n);
    }
    Ok(acc)
}

/// `u⁻¹v`, defined when `u` is a prefix of `v`.
pub fn residual(u: &[char], v: &[char]) -> Result<Word> {
    if v.starts_with(u) {
        Ok(v[u.len()..].to_vec())
    } else {
        Err(Error::NotAPrefix(show(u), show(v)))
    }
}

pub fn is_prefix(u: &[char], v: &[char]) -> bool {
    v.starts_with(u)
}

/// `‖u,v‖ = |u| + |v| - 2|u∧v|`.
pub fn left_distance(u: &[char], v: &[char]) -> usize {
    let p = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    u.len() + v.len() - 2 * p
}

/// Right distance: the left distance of the mirrored words.
pub fn right_distance(u: &[char], v: &[char]) -> usize {
    let p = u
        .iter()
        .rev()
        .zip(v.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    u.len() + v.len() - 2 * p
}

/// The delay between two output words: what remains of each after removing
/// their longest common prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Delay {
    x: Word,
    y: Word,
}

impl Delay {
    pub fn new(x: &[char], y: &[char]) -> Self {
        let p = x.iter().zip(y).take_while(|(a, b)| a == b).count();
        Delay {
            x: x[p..].to_vec(),
            y: y[p..].to_vec(),
        }
    }

    pub fn zero() -> Self {
        Delay::default()
    }

    pub fn left(&self) -> &[char] {
        &self.x
    }

    pub fn right(&self) -> &[char] {
        &self.y
    }

    /// Both runs emit more output: `(xα, yβ)` reduced.
    pub fn extend(&self, alpha: &[char], beta: &[char]) -> Self {
        Delay::new(&concat(&self.x, alpha), &concat(&self.y, beta))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    /// Neither side is empty: the two outputs already disagree on a letter.
    pub fn is_divergent(&self) -> bool {
        !self.x.is_empty() && !self.y.is_empty()
    }

    pub fn size(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn swap(&self) -> Self {
        Delay {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

impl fmt::Display for Delay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", show(&self.x), show(&self.y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_algebra() {
        assert_eq!(lcp(&[word("abc"), word("abd")]).unwrap(), word("ab"));
        assert_eq!(residual(&word("ab"), &word("abba")).unwrap(), word("ba"));
        assert!(residual(&word("b"), &word("abba")).is_err());
        assert_eq!(left_distance(&word("aba"), &word("abb")), 2);
        assert_eq!(right_distance(&word("aba"), &word("bba")), 2);
        assert!(lcp(std::iter::empty()).is_err());
    }

    #[test]
    fn delay_reduces() {
        let d = Delay::new(&word("ab"), &word("a"));
        assert_eq!(d.left(), &['b']);
        assert!(d.right().is_empty());
        let e = d.extend(&word(""), &word("bc"));
        assert_eq!(e, Delay::new(&word(""), &word("c")));
        assert!(Delay::new(&word("a"), &word("b")).is_divergent());
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::new("aba".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
        let a = Alphabet::from_str("ba").unwrap();
        assert_eq!(a.index('a'), Some(1));
        assert_eq!(a.words_up_to(2).len(), 7);
        assert_eq!(a.encode(&word("c")), Err(Error::ForeignLetter('c')));
    }
}
