//! The line-oriented text format shared by every machine.
//!
//! ```text
//! # comment
//! @nft f_ends
//! alphabet a b
//! initial 0 ""
//! trans 0 a 1 "a"
//! final 3 ""
//! ```
//!
//! Words are quoted, `""` being the empty word. Automata use `initial s…`,
//! `final s…` and `trans p a q`; an optional `orientation left|right` and
//! `states s…` fix orientation and numbering. Bimachines hold `left` and
//! `right` automaton bodies closed by `end`, followed by `out l a r "w"`,
//! `term-left l "w"` (ρ) and `term-right r "w"` (λ). Translations declare
//! `variety`, `k` and `outputs`, then component bodies
//! `phi< j a "v" = @dfa … end`, likewise `phi>`, `phi-i "v"` and `phi-t "v"`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automata::{nfa_to_dfa, Dfa, Nfa, Orientation};
use crate::bimachine::Bimachine;
use crate::error::{Error, Result};
use crate::transducer::{Dft, Nft};
use crate::translation::{quoted, Slot, Translation};
use crate::variety::VarietySpec;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Nfa(Nfa),
    Dfa(Dfa),
    Nft(Nft),
    Dft(Dft),
    Bimachine(Bimachine),
    Translation(Translation),
    Variety(VarietySpec),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Nfa(_) => "nfa",
            Machine::Dfa(_) => "dfa",
            Machine::Nft(_) => "nft",
            Machine::Dft(_) => "dft",
            Machine::Bimachine(_) => "bimachine",
            Machine::Translation(_) => "translation",
            Machine::Variety(_) => "variety",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Bare(String),
    Quoted(Word),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Bare(s) => s.clone(),
            Tok::Quoted(w) => w.iter().collect(),
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn tokenize(line: usize, src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut w = Vec::new();
            loop {
                match chars.next() {
                    None => return Err(perr(line, "unterminated string")),
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(e) => w.push(e),
                        None => return Err(perr(line, "unterminated string")),
                    },
                    Some(x) => w.push(x),
                }
            }
            toks.push(Tok::Quoted(w));
        } else {
            let mut s = String::new();
            while let Some(&x) = chars.peek() {
                if x.is_whitespace() || x == '"' || x == '#' {
                    break;
                }
                s.push(x);
                chars.next();
            }
            toks.push(Tok::Bare(s));
        }
    }
    Ok(toks)
}

type Line = (usize, Vec<Tok>);

fn lines(src: &str) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let toks = tokenize(i + 1, raw)?;
        if !toks.is_empty() {
            out.push((i + 1, toks));
        }
    }
    Ok(out)
}

fn keyword(l: &Line) -> &str {
    match &l.1[0] {
        Tok::Bare(s) => s,
        Tok::Quoted(_) => "",
    }
}

fn word_arg(l: &Line, i: usize) -> Result<Word> {
    match l.1.get(i) {
        Some(Tok::Quoted(w)) => Ok(w.clone()),
        Some(Tok::Bare(s)) => Err(perr(l.0, format!("expected a quoted word, found {s}"))),
        None => Err(perr(l.0, "missing word")),
    }
}

fn name_arg(l: &Line, i: usize) -> Result<String> {
    l.1.get(i).map(Tok::text).ok_or_else(|| perr(l.0, "missing state name"))
}

fn letter_arg(l: &Line, i: usize, alphabet: &Alphabet) -> Result<usize> {
    let t = l.1.get(i).map(Tok::text).ok_or_else(|| perr(l.0, "missing letter"))?;
    let mut cs = t.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => alphabet
            .index(c)
            .ok_or_else(|| perr(l.0, format!("letter {c:?} is not in the alphabet"))),
        _ => Err(perr(l.0, format!("expected one letter, found {t:?}"))),
    }
}

fn arity(l: &Line, n: usize) -> Result<()> {
    if l.1.len() != n {
        return Err(perr(l.0, format!("{} expects {} arguments", keyword(l), n - 1)));
    }
    Ok(())
}

fn parse_alphabet(l: &Line) -> Result<Alphabet> {
    let mut letters = Vec::new();
    for t in &l.1[1..] {
        let s = t.text();
        let mut cs = s.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => letters.push(c),
            _ => return Err(perr(l.0, format!("letters are single characters, found {s:?}"))),
        }
    }
    Alphabet::new(letters).map_err(|e| perr(l.0, e.to_string()))
}

/// Parses a bare automaton body; `alphabet` may come from the enclosing
/// block.
fn automaton_body(body: &[Line], alphabet: Option<&Alphabet>, orientation: Orientation) -> Result<Nfa> {
    let mut alphabet = alphabet.cloned();
    let mut orientation = orientation;
    for l in body {
        match keyword(l) {
            "alphabet" => alphabet = Some(parse_alphabet(l)?),
            "orientation" => {
                arity(l, 2)?;
                orientation = match l.1[1].text().as_str() {
                    "left" => Orientation::Left,
                    "right" => Orientation::Right,
                    o => return Err(perr(l.0, format!("unknown orientation {o:?}"))),
                }
            }
            _ => {}
        }
    }
    let line0 = body.first().map_or(0, |l| l.0);
    let alphabet = alphabet.ok_or_else(|| perr(line0, "missing alphabet"))?;
    let mut a = Nfa::new(alphabet.clone(), orientation);
    let state = |a: &mut Nfa, n: String| a.state_id(&n).unwrap_or_else(|| a.add_state(n));
    for l in body {
        match keyword(l) {
            "alphabet" | "orientation" => {}
            "states" => {
                for i in 1..l.1.len() {
                    state(&mut a, name_arg(l, i)?);
                }
            }
            "initial" => {
                for i in 1..l.1.len() {
                    let q = state(&mut a, name_arg(l, i)?);
                    a.set_initial(q);
                }
            }
            "final" => {
                for i in 1..l.1.len() {
                    let q = state(&mut a, name_arg(l, i)?);
                    a.set_final(q);
                }
            }
            "trans" => {
                arity(l, 4)?;
                let p = state(&mut a, name_arg(l, 1)?);
                let x = letter_arg(l, 2, &alphabet)?;
                let q = state(&mut a, name_arg(l, 3)?);
                a.add_transition(p, x, q);
            }
            k => return Err(perr(l.0, format!("unexpected {k:?} in an automaton"))),
        }
    }
    Ok(a)
}

fn as_dfa(a: &Nfa, line: usize) -> Result<Dfa> {
    nfa_to_dfa(a).map_err(|e| perr(line, e.to_string()))
}

fn transducer_body(body: &[Line]) -> Result<Nft> {
    let line0 = body.first().map_or(0, |l| l.0);
    let alphabet = body
        .iter()
        .find(|l| keyword(l) == "alphabet")
        .map(parse_alphabet)
        .transpose()?
        .ok_or_else(|| perr(line0, "missing alphabet"))?;
    let mut t = Nft::new(alphabet.clone());
    let state = |t: &mut Nft, n: String| t.state_id(&n).unwrap_or_else(|| t.add_state(n));
    for l in body {
        match keyword(l) {
            "alphabet" => {}
            "states" => {
                for i in 1..l.1.len() {
                    state(&mut t, name_arg(l, i)?);
                }
            }
            "initial" => {
                arity(l, 3)?;
                let q = state(&mut t, name_arg(l, 1)?);
                t.set_initial(q, word_arg(l, 2)?);
            }
            "final" => {
                arity(l, 3)?;
                let q = state(&mut t, name_arg(l, 1)?);
                t.set_final(q, word_arg(l, 2)?);
            }
            "trans" => {
                arity(l, 5)?;
                let p = state(&mut t, name_arg(l, 1)?);
                let x = letter_arg(l, 2, &alphabet)?;
                let q = state(&mut t, name_arg(l, 3)?);
                let w = word_arg(l, 4)?;
                t.add_transition(p, x, q, w).map_err(|e| perr(l.0, e.to_string()))?;
            }
            k => return Err(perr(l.0, format!("unexpected {k:?} in a transducer"))),
        }
    }
    Ok(t)
}

/// Splits off a sub-block that runs until a matching `end` line.
fn sub_block(all: &[Line], start: usize) -> Result<(&[Line], usize)> {
    let end = all[start + 1..]
        .iter()
        .position(|l| keyword(l) == "end" && l.1.len() == 1)
        .ok_or_else(|| perr(all[start].0, "block is not closed by end"))?;
    Ok((&all[start + 1..start + 1 + end], start + 2 + end))
}

fn bimachine_body(body: &[Line]) -> Result<Bimachine> {
    let line0 = body.first().map_or(0, |l| l.0);
    let mut alphabet = None;
    let mut left = None;
    let mut right = None;
    let mut rest = Vec::new();
    let mut i = 0;
    while i < body.len() {
        let l = &body[i];
        match keyword(l) {
            "alphabet" => {
                alphabet = Some(parse_alphabet(l)?);
                i += 1;
            }
            kw @ ("left" | "right") => {
                arity(l, 1)?;
                let (sub, next) = sub_block(body, i)?;
                let o = if kw == "left" { Orientation::Left } else { Orientation::Right };
                let a = automaton_body(sub, alphabet.as_ref(), o)?;
                if a.orientation() != o {
                    return Err(perr(l.0, format!("the {kw} automaton has the wrong orientation")));
                }
                let d = as_dfa(&a, l.0)?;
                if kw == "left" {
                    left = Some(d);
                } else {
                    right = Some(d);
                }
                i = next;
            }
            _ => {
                rest.push(l);
                i += 1;
            }
        }
    }
    let left = left.ok_or_else(|| perr(line0, "missing left automaton"))?;
    let right = right.ok_or_else(|| perr(line0, "missing right automaton"))?;
    let alphabet = left.alphabet().clone();
    let mut b = Bimachine::new(left, right).map_err(|e| perr(line0, e.to_string()))?;
    for l in rest {
        let res = match keyword(l) {
            "out" => {
                arity(l, 5)?;
                let a = alphabet.letter(letter_arg(l, 2, &alphabet)?);
                let w: String = word_arg(l, 4)?.into_iter().collect();
                b.set_output(&name_arg(l, 1)?, a, &name_arg(l, 3)?, &w)
            }
            "term-left" => {
                arity(l, 3)?;
                let w: String = word_arg(l, 2)?.into_iter().collect();
                b.set_rho(&name_arg(l, 1)?, &w)
            }
            "term-right" => {
                arity(l, 3)?;
                let w: String = word_arg(l, 2)?.into_iter().collect();
                b.set_lambda(&name_arg(l, 1)?, &w)
            }
            k => return Err(perr(l.0, format!("unexpected {k:?} in a bimachine"))),
        };
        res.map_err(|e| perr(l.0, e.to_string()))?;
    }
    Ok(b)
}

fn translation_body(body: &[Line]) -> Result<Translation> {
    let line0 = body.first().map_or(0, |l| l.0);
    let mut alphabet = None;
    let mut variety: Option<(usize, String)> = None;
    let mut equations: Vec<String> = Vec::new();
    let mut k = None;
    let mut outputs = None;
    let mut comps: Vec<(&Line, Dfa)> = Vec::new();
    let mut i = 0;
    while i < body.len() {
        let l = &body[i];
        match keyword(l) {
            "alphabet" => alphabet = Some(parse_alphabet(l)?),
            "variety" => {
                arity(l, 2)?;
                variety = Some((l.0, l.1[1].text()));
            }
            "eq" => {
                let raw: Vec<String> = l.1[1..].iter().map(Tok::text).collect();
                equations.push(raw.join(" "));
            }
            "k" => {
                arity(l, 2)?;
                k = Some(l.1[1].text().parse::<usize>().map_err(|_| perr(l.0, "k is a positive integer"))?);
            }
            "outputs" => {
                outputs = Some((1..l.1.len()).map(|j| word_arg(l, j)).collect::<Result<Vec<_>>>()?);
            }
            "phi<" | "phi>" | "phi-i" | "phi-t" => {
                let at = l.1.iter().position(|t| t == &Tok::Bare("=".into()));
                let ok = at.is_some_and(|p| p + 2 == l.1.len() && l.1[p + 1] == Tok::Bare("@dfa".into()));
                if !ok {
                    return Err(perr(l.0, "component lines end with = @dfa"));
                }
                let (sub, next) = sub_block(body, i)?;
                let o = match keyword(l) {
                    "phi<" | "phi-t" => Orientation::Left,
                    _ => Orientation::Right,
                };
                let a = automaton_body(sub, alphabet.as_ref(), o)?;
                comps.push((l, as_dfa(&a, l.0)?));
                i = next;
                continue;
            }
            kw => return Err(perr(l.0, format!("unexpected {kw:?} in a translation"))),
        }
        i += 1;
    }
    let alphabet = alphabet.ok_or_else(|| perr(line0, "missing alphabet"))?;
    let (vline, vname) = variety.ok_or_else(|| perr(line0, "missing variety"))?;
    let v = if equations.is_empty() {
        VarietySpec::builtin(&vname)
    } else {
        let eqs: Vec<&str> = equations.iter().map(String::as_str).collect();
        VarietySpec::new(&vname, &eqs)
    }
    .map_err(|e| perr(vline, e.to_string()))?;
    let k = k.ok_or_else(|| perr(line0, "missing k"))?;
    let outputs = outputs.ok_or_else(|| perr(line0, "missing outputs"))?;
    let mut t = Translation::new(alphabet.clone(), k, &outputs, v).map_err(|e| perr(line0, e.to_string()))?;
    for (l, d) in comps {
        let res = match keyword(l) {
            "phi<" | "phi>" => {
                if l.1.len() != 6 {
                    return Err(perr(l.0, "expected phi< j a \"v\" = @dfa"));
                }
                let j = l.1[1].text().parse::<usize>().map_err(|_| perr(l.0, "j is a positive integer"))?;
                let a = alphabet.letter(letter_arg(l, 2, &alphabet)?);
                let v = word_arg(l, 3)?;
                if keyword(l) == "phi<" {
                    t.set_before(j, a, &v, &d)
                } else {
                    t.set_after(j, a, &v, &d)
                }
            }
            kw => {
                if l.1.len() != 4 {
                    return Err(perr(l.0, format!("expected {kw} \"v\" = @dfa")));
                }
                let v = word_arg(l, 1)?;
                if kw == "phi-i" {
                    t.set_initial(&v, &d)
                } else {
                    t.set_terminal(&v, &d)
                }
            }
        };
        res.map_err(|e| perr(l.0, e.to_string()))?;
    }
    Ok(t)
}

/// Parses one machine; returns its name and value.
pub fn parse(src: &str) -> Result<(String, Machine)> {
    if src.lines().any(|l| l.trim_start().starts_with("@variety")) {
        let v = VarietySpec::parse(src)?;
        return Ok((v.name().to_string(), Machine::Variety(v)));
    }
    let all = lines(src)?;
    let Some(head) = all.first() else {
        return Err(perr(0, "empty input"));
    };
    let kind = keyword(head).to_string();
    if !kind.starts_with('@') {
        return Err(perr(head.0, "expected a header such as @nft NAME"));
    }
    let name = head.1.get(1).map(Tok::text).unwrap_or_default();
    if head.1.len() > 2 {
        return Err(perr(head.0, "header takes one name"));
    }
    if let Some(l) = all[1..].iter().find(|l| keyword(l).starts_with('@') && keyword(l) != "@dfa") {
        return Err(perr(l.0, "one machine per input"));
    }
    let body = &all[1..];
    let m = match kind.as_str() {
        "@nfa" => Machine::Nfa(automaton_body(body, None, Orientation::Left)?),
        "@dfa" => Machine::Dfa(as_dfa(&automaton_body(body, None, Orientation::Left)?, head.0)?),
        "@nft" => Machine::Nft(transducer_body(body)?),
        "@dft" => Machine::Dft(Dft::from_nft(&transducer_body(body)?).map_err(|e| perr(head.0, e.to_string()))?),
        "@bimachine" => Machine::Bimachine(bimachine_body(body)?),
        "@translation" => Machine::Translation(translation_body(body)?),
        k => return Err(perr(head.0, format!("unknown machine kind {k}"))),
    };
    Ok((name, m))
}

macro_rules! expect_kind {
    ($fn:ident, $variant:ident, $ty:ty, $what:literal) => {
        #[doc = concat!("Parses a ", $what, ".")]
        pub fn $fn(src: &str) -> Result<$ty> {
            match parse(src)?.1 {
                Machine::$variant(m) => Ok(m),
                other => Err(perr(1, format!(concat!("expected ", $what, ", found {}"), other.kind()))),
            }
        }
    };
}

expect_kind!(parse_nfa, Nfa, Nfa, "an nfa");
expect_kind!(parse_dfa, Dfa, Dfa, "a dfa");
expect_kind!(parse_dft, Dft, Dft, "a dft");
expect_kind!(parse_bimachine, Bimachine, Bimachine, "a bimachine");
expect_kind!(parse_translation, Translation, Translation, "a translation");

/// Parses an `@nft`, also accepting an `@dft`.
pub fn parse_nft(src: &str) -> Result<Nft> {
    match parse(src)?.1 {
        Machine::Nft(t) => Ok(t),
        Machine::Dft(d) => Ok(d.to_nft()),
        other => Err(perr(1, format!("expected an nft, found {}", other.kind()))),
    }
}

/// A state name or letter, quoted only when needed.
fn token(s: &str) -> String {
    if s.is_empty() || s.starts_with('@') || s.chars().any(|c| c.is_whitespace() || c == '"' || c == '#') {
        let w: Word = s.chars().collect();
        quoted(&w)
    } else {
        s.to_string()
    }
}

fn letter_token(c: char) -> String {
    token(&c.to_string())
}

fn write_alphabet(s: &mut String, a: &Alphabet) {
    let letters: Vec<String> = a.letters().iter().map(|&c| letter_token(c)).collect();
    let _ = writeln!(s, "alphabet {}", letters.join(" "));
}

fn write_dfa_body(s: &mut String, d: &Dfa, indent: &str, with_alphabet: bool) {
    if with_alphabet {
        s.push_str(indent);
        write_alphabet(s, d.alphabet());
    }
    if d.orientation() == Orientation::Right {
        let _ = writeln!(s, "{indent}orientation right");
    }
    let names: Vec<String> = d.names().iter().map(|n| token(n)).collect();
    let _ = writeln!(s, "{indent}states {}", names.join(" "));
    let _ = writeln!(s, "{indent}initial {}", names[d.initial()]);
    if !d.finals().is_empty() {
        let f: Vec<&str> = d.finals().iter().map(|&q| names[q].as_str()).collect();
        let _ = writeln!(s, "{indent}final {}", f.join(" "));
    }
    for q in 0..d.num_states() {
        for a in 0..d.alphabet().len() {
            if let Some(q2) = d.delta(q, a) {
                let _ = writeln!(s, "{indent}trans {} {} {}", names[q], letter_token(d.alphabet().letter(a)), names[q2]);
            }
        }
    }
}

fn write_nfa(s: &mut String, a: &Nfa) {
    write_alphabet(s, a.alphabet());
    if a.orientation() == Orientation::Right {
        s.push_str("orientation right\n");
    }
    let names: Vec<String> = a.names().iter().map(|n| token(n)).collect();
    let _ = writeln!(s, "states {}", names.join(" "));
    let i: Vec<&str> = a.initials().iter().map(|&q| names[q].as_str()).collect();
    let _ = writeln!(s, "initial {}", i.join(" "));
    if !a.finals().is_empty() {
        let f: Vec<&str> = a.finals().iter().map(|&q| names[q].as_str()).collect();
        let _ = writeln!(s, "final {}", f.join(" "));
    }
    for (p, x, q) in a.transitions() {
        let _ = writeln!(s, "trans {} {} {}", names[p], letter_token(a.alphabet().letter(x)), names[q]);
    }
}

fn write_nft(s: &mut String, t: &Nft) {
    write_alphabet(s, t.alphabet());
    let names: Vec<String> = t.names().iter().map(|n| token(n)).collect();
    let _ = writeln!(s, "states {}", names.join(" "));
    for (&q, w) in t.initials() {
        let _ = writeln!(s, "initial {} {}", names[q], quoted(w));
    }
    for (&q, w) in t.finals() {
        let _ = writeln!(s, "final {} {}", names[q], quoted(w));
    }
    for (p, x, q, w) in t.transitions() {
        let _ = writeln!(s, "trans {} {} {} {}", names[p], letter_token(t.alphabet().letter(x)), names[q], quoted(w));
    }
}

fn write_bimachine(s: &mut String, b: &Bimachine) {
    write_alphabet(s, b.alphabet());
    s.push_str("left\n");
    write_dfa_body(s, b.left(), "  ", false);
    s.push_str("end\nright\n");
    write_dfa_body(s, b.right(), "  ", false);
    s.push_str("end\n");
    let ln = |l: usize| token(b.left().name(l));
    let rn = |r: usize| token(b.right().name(r));
    for (&(l, a, r), w) in b.omega() {
        let _ = writeln!(s, "out {} {} {} {}", ln(l), letter_token(b.alphabet().letter(a)), rn(r), quoted(w));
    }
    for (&l, w) in b.rho() {
        let _ = writeln!(s, "term-left {} {}", ln(l), quoted(w));
    }
    for (&r, w) in b.lambda() {
        let _ = writeln!(s, "term-right {} {}", rn(r), quoted(w));
    }
}

fn write_translation(s: &mut String, t: &Translation) {
    write_alphabet(s, t.alphabet());
    let _ = writeln!(s, "variety {}", token(t.variety().name()));
    if VarietySpec::builtin(t.variety().name()).ok().as_ref() != Some(t.variety()) {
        for line in t.variety().to_text().lines().skip(1) {
            let _ = writeln!(s, "{line}");
        }
    }
    let _ = writeln!(s, "k {}", t.k());
    let outs: Vec<String> = t.outputs().iter().map(|w| quoted(w)).collect();
    let _ = writeln!(s, "outputs {}", outs.join(" "));
    let sizes = t.monoid_sizes();
    let order = |s: &Slot| match s {
        Slot::Initial(_) => 0,
        Slot::Terminal(_) => 1,
        _ => 2,
    };
    let mut slots: Vec<&Slot> = t.components().keys().collect();
    slots.sort_by_key(|s| (order(s), **s));
    for slot in slots {
        let _ = writeln!(s, "# monoid size {}", sizes[slot]);
        let _ = writeln!(s, "{} = @dfa", t.slot_name(*slot));
        write_dfa_body(s, &t.components()[slot], "  ", false);
        s.push_str("end\n");
    }
}

/// Writes a machine under `name`. Output is deterministic: states in
/// numbering order, transitions by source, letter and target.
pub fn write(name: &str, m: &Machine) -> String {
    if let Machine::Variety(v) = m {
        return v.to_text();
    }
    let mut s = format!("@{} {}\n", m.kind(), token(name));
    match m {
        Machine::Nfa(a) => write_nfa(&mut s, a),
        Machine::Dfa(d) => write_dfa_body(&mut s, d, "", true),
        Machine::Nft(t) => write_nft(&mut s, t),
        Machine::Dft(d) => write_nft(&mut s, &d.to_nft()),
        Machine::Bimachine(b) => write_bimachine(&mut s, b),
        Machine::Translation(t) => write_translation(&mut s, t),
        Machine::Variety(_) => unreachable!(),
    }
    s
}

/// Per-kind dumps of the named fixtures, keyed by file name.
pub fn fixture_files() -> BTreeMap<&'static str, String> {
    use crate::fixtures as fx;
    BTreeMap::from([
        ("l_even.dfa", write("l_even", &Machine::Dfa(fx::l_even()))),
        ("l_ends.nfa", write("l_ends", &Machine::Nfa(fx::l_ends()))),
        ("f_even.nft", write("f_even", &Machine::Nft(fx::f_even()))),
        ("f_ends.nft", write("f_ends", &Machine::Nft(fx::f_ends()))),
        ("g.dft", write("g", &Machine::Dft(fx::g()))),
        ("detxmp.nft", write("detxmp", &Machine::Nft(fx::detxmp()))),
        ("identity.dft", write("identity", &Machine::Dft(fx::identity()))),
        ("det1.nft", write("det1", &Machine::Nft(fx::det1()))),
        ("det2.nft", write("det2", &Machine::Nft(fx::det2()))),
        ("det4.nft", write("det4", &Machine::Nft(fx::det4()))),
        ("dis.nfa", write("dis", &Machine::Nfa(fx::dis()))),
        ("dis.nft", write("dis", &Machine::Nft(fx::dis_nft()))),
        ("xmp.bim", write("xmp", &Machine::Bimachine(fx::xmp_bim()))),
        ("v.bim", write("v", &Machine::Bimachine(fx::v_bim()))),
        ("f_ends.tr", write("f_ends", &Machine::Translation(fx::f_ends_translation()))),
    ])
}
