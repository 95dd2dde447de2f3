//! Monoid varieties given by finitely many profinite equations.
//!
//! Syntax: `(x y)^w x = (x y)^w`. Variables are single letters; `1` is the
//! identity; an exponent is an integer, `w` (the idempotent power) or `w+k`.
//! Chains `s = t = u` mean all sides are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Int(usize),
    /// `ω + k`
    Omega(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Var(char),
    One,
    Group(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exp: Exponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term(pub Vec<Factor>);

/// Two or more terms that must all evaluate equally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub sides: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub equations: Vec<Equation>,
}

/// A failed equation with the assignment that breaks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub equation: String,
    pub assignment: Vec<(char, usize)>,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 0,
            message: format!("{msg} in equation {:?}", self.src),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<Term> {
        let mut fs = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == '=' {
                break;
            }
            fs.push(self.factor()?);
        }
        if fs.is_empty() {
            return Err(self.err("empty term"));
        }
        Ok(Term(fs))
    }

    fn factor(&mut self) -> Result<Factor> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        let atom = match c {
            '(' => {
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Atom::Group(t)
            }
            '1' => Atom::One,
            c if c.is_alphabetic() => Atom::Var(c),
            c => return Err(self.err(&format!("unexpected {c:?}"))),
        };
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            self.exponent()?
        } else {
            Exponent::Int(1)
        };
        Ok(Factor { atom, exp })
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn exponent(&mut self) -> Result<Exponent> {
        match self.peek() {
            Some('w') | Some('ω') => {
                self.pos += 1;
                if self.peek() == Some('+') {
                    self.pos += 1;
                    let k = self.number().ok_or_else(|| self.err("expected integer after w+"))?;
                    Ok(Exponent::Omega(k))
                } else {
                    Ok(Exponent::Omega(0))
                }
            }
            _ => self
                .number()
                .map(Exponent::Int)
                .ok_or_else(|| self.err("expected exponent")),
        }
    }
}

impl Equation {
    pub fn parse(src: &str) -> Result<Equation> {
        let mut p = Parser::new(src);
        let mut sides = vec![p.term()?];
        while p.peek() == Some('=') {
            p.pos += 1;
            sides.push(p.term()?);
        }
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        if sides.len() < 2 {
            return Err(p.err("missing '='"));
        }
        Ok(Equation { sides })
    }

    pub fn variables(&self) -> Vec<char> {
        let mut vs = Vec::new();
        for t in &self.sides {
            t.collect_vars(&mut vs);
        }
        vs
    }

    /// First assignment of the variables that breaks the equation.
    pub fn violation(&self, m: &FiniteMonoid) -> Option<Vec<(char, usize)>> {
        let vars = self.variables();
        let n = m.size();
        let mut assign = vec![0usize; vars.len()];
        loop {
            let lookup = |v: char| assign[vars.iter().position(|&x| x == v).unwrap()];
            let first = self.sides[0].eval(m, &lookup);
            if self.sides[1..].iter().any(|t| t.eval(m, &lookup) != first) {
                return Some(vars.iter().copied().zip(assign.iter().copied()).collect());
            }
            // odometer
            let mut i = 0;
            loop {
                if i == assign.len() {
                    return None;
                }
                assign[i] += 1;
                if assign[i] < n {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
        }
    }

    pub fn holds_in(&self, m: &FiniteMonoid) -> bool {
        self.violation(m).is_none()
    }
}

impl Term {
    fn collect_vars(&self, vs: &mut Vec<char>) {
        for f in &self.0 {
            match &f.atom {
                Atom::Var(c) => {
                    if !vs.contains(c) {
                        vs.push(*c);
                    }
                }
                Atom::Group(t) => t.collect_vars(vs),
                Atom::One => {}
            }
        }
    }

    fn eval(&self, m: &FiniteMonoid, lookup: &dyn Fn(char) -> usize) -> usize {
        self.0.iter().fold(m.identity(), |acc, f| {
            let base = match &f.atom {
                Atom::Var(c) => lookup(*c),
                Atom::One => m.identity(),
                Atom::Group(t) => t.eval(m, lookup),
            };
            let v = match f.exp {
                Exponent::Int(k) => m.power(base, k),
                Exponent::Omega(k) => m.mul(m.omega(base), m.power(base, k)),
            };
            m.mul(acc, v)
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fa) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match &fa.atom {
                Atom::Var(c) => write!(f, "{c}")?,
                Atom::One => write!(f, "1")?,
                Atom::Group(t) => write!(f, "({t})")?,
            }
            match fa.exp {
                Exponent::Int(1) => {}
                Exponent::Int(k) => write!(f, "^{k}")?,
                Exponent::Omega(0) => write!(f, "^w")?,
                Exponent::Omega(k) => write!(f, "^w+{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sides.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" = "))
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["all", "commutative", "aperiodic", "DA", "J1", "J", "idempotent"];

impl VarietySpec {
    pub fn new(name: &str, equations: &[&str]) -> Result<Self> {
        Ok(VarietySpec {
            name: name.to_string(),
            equations: equations.iter().map(|e| Equation::parse(e)).collect::<Result<_>>()?,
        })
    }

    /// Built-in varieties by name (with the usual short aliases).
    pub fn builtin(name: &str) -> Result<Self> {
        let eqs: &[&str] = match name {
            "all" | "MSO" => &[],
            "commutative" | "Com" | "com" => &["xy = yx"],
            "aperiodic" | "A" | "FO" => &["x^w = x^w+1"],
            "DA" => &["(xyz)^w y (xyz)^w = (xyz)^w"],
            "J1" => &["x = xx", "xy = yx"],
            "J" => &["y(xy)^w = (xy)^w = (xy)^w x"],
            "idempotent" | "I" => &["x = xx"],
            other => return Err(Error::Unsupported(format!("unknown variety {other:?}"))),
        };
        let canonical = match name {
            "MSO" => "all",
            "Com" | "com" => "commutative",
            "A" | "FO" => "aperiodic",
            "I" => "idempotent",
            n => n,
        };
        Self::new(canonical, eqs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aperiodic() -> Self {
        Self::builtin("aperiodic").unwrap()
    }

    /// Parses `@variety NAME` followed by `eq ...` lines.
    pub fn parse(src: &str) -> Result<Self> {
        let mut name = None;
        let mut equations = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: i + 1,
                    message,
                },
                e => e,
            };
            if let Some(rest) = line.strip_prefix("@variety") {
                if name.is_some() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "second @variety header".into(),
                    });
                }
                name = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("eq ") {
                if name.is_none() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "eq before @variety".into(),
                    });
                }
                equations.push(Equation::parse(rest).map_err(at)?);
            } else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("unexpected line {line:?}"),
                });
            }
        }
        Ok(VarietySpec {
            name: name.ok_or(Error::Parse {
                line: 0,
                message: "missing @variety header".into(),
            })?,
            equations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("@variety {}\n", self.name);
        for e in &self.equations {
            s.push_str(&format!("eq {e}\n"));
        }
        s
    }

    pub fn violation(&self, m: &FiniteMonoid) -> Option<Violation> {
        self.equations.iter().find_map(|e| {
            e.violation(m).map(|assignment| Violation {
                equation: e.to_string(),
                assignment,
            })
        })
    }

    pub fn contains(&self, m: &FiniteMonoid) -> bool {
        self.violation(m).is_none()
    }
}

pub fn satisfies(m: &FiniteMonoid, eq: &Equation) -> bool {
    eq.holds_in(m)
}

pub fn in_variety(m: &FiniteMonoid, v: &VarietySpec) -> bool {
    v.contains(m)
}
