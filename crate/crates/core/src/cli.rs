//! The `ratfun` command line.
//!
//! Every verb reads machines in the text format and writes its result to
//! standard output (or `--output`). Diagnostics go to standard error and end
//! with `key=value` trailer lines. Exit codes: 0 success or yes, 1 no,
//! 2 input or format error, 3 violated precondition, 4 not sequentialisable.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::bimachine::{bimachine_to_nft, nft_to_bimachine, Bimachine};
use crate::canonical::{
    canonical_bimachine, decide_fo, decide_variety_unambiguous, left_congruence_trace, FoAnswer, TrFamily,
    VarietyAnswer,
};
use crate::error::Error;
use crate::monoid::{syntactic_monoid, syntactic_monoid_nfa, transition_monoid, transition_monoid_dfa, FiniteMonoid};
use crate::text::{self, Machine};
use crate::transducer::{determinize_nft, minimize_dft, Dft, Nft};
use crate::translation::{bimachine_to_translation, quoted, translation_to_bimachine};
use crate::variety::VarietySpec;
use crate::word::Word;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NOT_SEQUENTIALISABLE: i32 = 4;

/// Varieties tried in order when `translate` is given none.
const TRANSLATE_CHAIN: [&str; 5] = ["J1", "J", "DA", "aperiodic", "all"];

#[derive(Parser, Debug)]
#[command(name = "ratfun", about = "Rational word functions: transducers, bimachines, varieties")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Emit {
    Nft,
    Bimachine,
    Translation,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Evaluate a transducer, bimachine or translation on a word, or test
    /// membership for an automaton.
    Eval { file: PathBuf, word: String },
    /// Print the syntactic monoid of a language or the transition monoid of
    /// a transducer.
    Monoid {
        file: PathBuf,
        #[arg(long)]
        table: bool,
    },
    /// Check membership of the machine's monoid in a variety.
    #[command(group(ArgGroup::new("v").required(true).args(["variety", "spec"])))]
    Check {
        file: PathBuf,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Minimize a Dft or a Dfa.
    Minimize { file: PathBuf },
    /// Determinize an Nft (into a Dft) or an Nfa.
    Determinize { file: PathBuf },
    /// Bimachine of an unambiguous transducer.
    ToBimachine { file: PathBuf },
    /// Transducer of a bimachine.
    FromBimachine { file: PathBuf },
    /// Canonical bimachine of a functional transducer.
    Canonical {
        file: PathBuf,
        /// A right automaton finer than the left syntactic congruence.
        #[arg(long)]
        right: Option<PathBuf>,
        /// List every pair of base classes with its merge verdict.
        #[arg(long)]
        trace: bool,
        /// Summarise the family of transducers behind the construction.
        #[arg(long)]
        family: bool,
    },
    /// Decide first-order definability.
    DecideFo {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "nft")]
        emit: Emit,
    },
    /// Decide definability by an unambiguous transducer over a variety.
    #[command(group(ArgGroup::new("v").required(true).args(["variety", "spec"])))]
    Decide {
        file: PathBuf,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, required = true)]
        unambiguous: bool,
    },
    /// Translation of a complete bimachine.
    Translate {
        file: PathBuf,
        #[arg(long, conflicts_with = "spec")]
        variety: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Bimachine of a translation.
    Untranslate { file: PathBuf },
}

/// A failed run: exit code, message and trailers.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    trailers: Vec<(String, String)>,
}

impl Failure {
    fn format(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_FORMAT,
            message: message.into(),
            trailers: vec![("error".into(), "format".into())],
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, kind, extra) = match &e {
            Error::Parse { line, .. } => (EXIT_FORMAT, "parse", vec![("line".into(), line.to_string())]),
            Error::ForeignLetter(_) | Error::UnknownState(_) | Error::AlphabetMismatch | Error::OrientationMismatch => {
                (EXIT_FORMAT, "input", vec![])
            }
            Error::NotFunctional { witness } => (EXIT_PRECONDITION, "not-functional", vec![("witness".into(), q(witness))]),
            Error::Ambiguous { witness } => (EXIT_PRECONDITION, "ambiguous", vec![("witness".into(), q(witness))]),
            Error::NotSequentialisable { left, right, .. } => (
                EXIT_NOT_SEQUENTIALISABLE,
                "not-sequentialisable",
                vec![("states".into(), format!("{left},{right}"))],
            ),
            Error::Incomplete => (EXIT_PRECONDITION, "incomplete", vec![]),
            Error::NotFiner(_) => (EXIT_PRECONDITION, "not-finer", vec![]),
            Error::EmptyDomain => (EXIT_PRECONDITION, "empty-domain", vec![]),
            Error::Invariant(_) => (EXIT_PRECONDITION, "invariant", vec![]),
            _ => (EXIT_PRECONDITION, "precondition", vec![]),
        };
        let mut trailers = vec![("error".to_string(), kind.to_string())];
        trailers.extend(extra);
        Failure {
            code,
            message: e.to_string(),
            trailers,
        }
    }
}

fn q(s: &str) -> String {
    quoted(&s.chars().collect::<Word>())
}

/// What a verb produced.
struct Report {
    code: i32,
    stdout: String,
    message: Option<String>,
    trailers: Vec<(String, String)>,
}

impl Report {
    fn ok(stdout: String) -> Report {
        Report {
            code: EXIT_YES,
            stdout,
            message: None,
            trailers: Vec::new(),
        }
    }

    fn trailer(mut self, k: &str, v: impl ToString) -> Report {
        self.trailers.push((k.to_string(), v.to_string()));
        self
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn read_machine(path: &Path) -> std::result::Result<(String, Machine), Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_FORMAT,
        message: format!("{}: {e}", path.display()),
        trailers: vec![("error".into(), "io".into())],
    })?;
    text::parse(&src).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn variety(name: Option<&str>, spec: Option<&Path>) -> std::result::Result<VarietySpec, Failure> {
    match (name, spec) {
        (Some(n), _) => VarietySpec::builtin(n).map_err(|e| Failure::format(e.to_string())),
        (None, Some(p)) => match read_machine(p)?.1 {
            Machine::Variety(v) => Ok(v),
            m => Err(Failure::format(format!("{} holds a {}, not a variety", p.display(), m.kind()))),
        },
        (None, None) => Ok(VarietySpec::aperiodic()),
    }
}

fn as_nft(m: Machine, verb: &str) -> std::result::Result<Nft, Failure> {
    match m {
        Machine::Nft(t) => Ok(t),
        Machine::Dft(d) => Ok(d.to_nft()),
        Machine::Bimachine(b) => Ok(bimachine_to_nft(&b).trim()),
        Machine::Translation(tr) => Ok(bimachine_to_nft(&translation_to_bimachine(&tr)?).trim()),
        m => Err(Failure::format(format!("{verb} expects a function, found a {}", m.kind()))),
    }
}

fn expect_bimachine(m: Machine, verb: &str) -> std::result::Result<Bimachine, Failure> {
    match m {
        Machine::Bimachine(b) => Ok(b),
        m => Err(Failure::format(format!("{verb} expects a bimachine, found a {}", m.kind()))),
    }
}

fn render_word(w: &[char]) -> String {
    let mut s: String = w.iter().collect();
    s.push('\n');
    s
}

fn eval(file: &Path, word: &str) -> Outcome {
    let (_, m) = read_machine(file)?;
    let u: Word = word.chars().collect();
    let result = match &m {
        Machine::Nfa(a) => Some(a.accepts(&u)?),
        Machine::Dfa(d) => Some(d.accepts(&u)?),
        _ => None,
    };
    if let Some(accepted) = result {
        let verdict = if accepted { "yes" } else { "no" };
        let mut r = Report::ok(format!("{verdict}\n")).trailer("accepted", verdict);
        r.code = if accepted { EXIT_YES } else { EXIT_NO };
        return Ok(r);
    }
    let out = match &m {
        Machine::Nft(t) => t.eval(&u)?,
        Machine::Dft(d) => d.eval(&u)?,
        Machine::Bimachine(b) => b.eval(&u)?,
        Machine::Translation(t) => t.eval(&u)?,
        m => return Err(Failure::format(format!("cannot evaluate a {}", m.kind()))),
    };
    match out {
        Some(w) => Ok(Report::ok(render_word(&w))),
        None => Ok(Report {
            code: EXIT_NO,
            stdout: String::new(),
            message: Some(format!("undefined on {}", q(word))),
            trailers: vec![("defined".into(), "no".into())],
        }),
    }
}

/// The monoid a verb reasons about for each kind of machine.
fn monoids(m: &Machine) -> std::result::Result<Vec<(&'static str, FiniteMonoid)>, Failure> {
    Ok(match m {
        Machine::Dfa(d) => vec![("syntactic", syntactic_monoid(d))],
        Machine::Nfa(a) => vec![("syntactic", syntactic_monoid_nfa(a))],
        Machine::Nft(t) => vec![("transition", transition_monoid(&t.underlying()))],
        Machine::Dft(d) => vec![("transition", transition_monoid_dfa(&d.underlying()))],
        Machine::Bimachine(b) => vec![
            ("left", transition_monoid_dfa(b.left())),
            ("right", transition_monoid_dfa(b.right())),
        ],
        m => return Err(Failure::format(format!("a {} has no single monoid", m.kind()))),
    })
}

fn monoid(file: &Path, table: bool) -> Outcome {
    let (_, m) = read_machine(file)?;
    let ms = monoids(&m)?;
    let mut s = String::new();
    let mut r = Report::ok(String::new());
    for (what, fm) in &ms {
        if ms.len() > 1 {
            let _ = writeln!(s, "# {what}");
        }
        s.push_str(&fm.dump(table));
        r = r.trailer(&format!("{what}_size"), fm.size());
    }
    r.stdout = s;
    Ok(r)
}

fn check(file: &Path, v: &VarietySpec) -> Outcome {
    let (_, m) = read_machine(file)?;
    if let Machine::Translation(t) = &m {
        return Ok(match t.with_variety(v.clone()).validate() {
            Ok(()) => Report::ok(String::new()).trailer("verdict", "yes").trailer("variety", v.name()),
            Err(e) => Report {
                code: EXIT_NO,
                stdout: String::new(),
                message: Some(e.to_string()),
                trailers: vec![("verdict".into(), "no".into()), ("variety".into(), v.name().into())],
            },
        });
    }
    let mut r = Report::ok(String::new()).trailer("variety", v.name());
    for (what, fm) in monoids(&m)? {
        if let Some(bad) = v.violation(&fm) {
            let assignment: Vec<String> = bad
                .assignment
                .iter()
                .map(|&(x, e)| format!("{x}:{}", q(&fm.representative(e).iter().collect::<String>())))
                .collect();
            r.code = EXIT_NO;
            r.message = Some(format!("the {what} monoid fails {}", bad.equation));
            return Ok(r
                .trailer("verdict", "no")
                .trailer("monoid", what)
                .trailer("equation", bad.equation)
                .trailer("assignment", assignment.join(",")));
        }
    }
    Ok(r.trailer("verdict", "yes"))
}

fn minimize(file: &Path) -> Outcome {
    let (name, m) = read_machine(file)?;
    let out = match m {
        Machine::Dft(d) => Machine::Dft(minimize_dft(&d)?),
        Machine::Nft(t) => Machine::Dft(minimize_dft(&Dft::from_nft(&t)?)?),
        Machine::Dfa(d) => Machine::Dfa(d.minimize()),
        m => return Err(Failure::format(format!("minimize expects a dft or a dfa, found a {}", m.kind()))),
    };
    Ok(Report::ok(text::write(&name, &out)))
}

fn determinize(file: &Path) -> Outcome {
    let (name, m) = read_machine(file)?;
    let out = match m {
        Machine::Nft(t) => Machine::Dft(determinize_nft(&t)?),
        Machine::Dft(d) => Machine::Dft(d),
        Machine::Nfa(a) => Machine::Dfa(a.determinize()),
        Machine::Dfa(d) => Machine::Dfa(d),
        m => return Err(Failure::format(format!("determinize expects an nft or an nfa, found a {}", m.kind()))),
    };
    Ok(Report::ok(text::write(&name, &out)))
}

fn canonical(file: &Path, right: Option<&Path>, trace: bool, family: bool) -> Outcome {
    let (name, m) = read_machine(file)?;
    let t = as_nft(m, "canonical")?;
    let r = match right {
        Some(p) => match read_machine(p)?.1 {
            Machine::Dfa(d) => Some(d),
            m => return Err(Failure::format(format!("--right expects a dfa, found a {}", m.kind()))),
        },
        None => None,
    };
    let b = canonical_bimachine(&t, r.as_ref())?;
    let mut msg = String::new();
    if trace {
        for v in left_congruence_trace(&t)? {
            let _ = writeln!(
                msg,
                "merge {} {} domain={} delays={} verdict={}",
                v.first,
                v.second,
                if v.same_domain { "same" } else { "differs" },
                if v.bounded { "bounded" } else { "unbounded" },
                if v.merged() { "merged" } else { "kept" }
            );
        }
    }
    if family {
        let fam = TrFamily::new(&t, b.right())?;
        for th in fam.threads() {
            let _ = writeln!(
                msg,
                "thread {} states={} transitions={}",
                th.class,
                th.states,
                th.transitions
            );
        }
    }
    let mut rep = Report::ok(text::write(&name, &Machine::Bimachine(b.clone())))
        .trailer("left_states", b.left().num_states())
        .trailer("right_states", b.right().num_states());
    if !msg.is_empty() {
        msg.pop();
        rep.message = Some(msg);
    }
    Ok(rep)
}

fn decide_fo_verb(file: &Path, emit: Emit) -> Outcome {
    let (name, m) = read_machine(file)?;
    let t = as_nft(m, "decide-fo")?;
    match decide_fo(&t)? {
        FoAnswer::Yes {
            nft,
            bimachine,
            translation,
        } => {
            let out = match emit {
                Emit::Nft => Machine::Nft(nft),
                Emit::Bimachine => Machine::Bimachine(bimachine),
                Emit::Translation => Machine::Translation(translation),
            };
            Ok(Report::ok(text::write(&name, &out)).trailer("verdict", "yes"))
        }
        FoAnswer::No {
            monoid,
            witness,
            period,
        } => Ok(Report {
            code: EXIT_NO,
            stdout: String::new(),
            message: Some(format!(
                "not first-order definable: the {monoid} monoid contains a cyclic group of order {period}"
            )),
            trailers: vec![
                ("verdict".into(), "no".into()),
                ("monoid".into(), monoid),
                ("witness_monoid".into(), format!("Z{period}")),
                ("witness".into(), quoted(&witness)),
            ],
        }),
    }
}

fn decide(file: &Path, v: &VarietySpec) -> Outcome {
    let (name, m) = read_machine(file)?;
    let t = as_nft(m, "decide")?;
    match decide_variety_unambiguous(&t, v)? {
        VarietyAnswer::Yes { nft, candidates, .. } => Ok(Report::ok(text::write(&name, &Machine::Nft(nft)))
            .trailer("verdict", "yes")
            .trailer("variety", v.name())
            .trailer("candidates", candidates)),
        VarietyAnswer::No { reason, candidates } => Ok(Report {
            code: EXIT_NO,
            stdout: String::new(),
            message: Some(reason),
            trailers: vec![
                ("verdict".into(), "no".into()),
                ("variety".into(), v.name().into()),
                ("candidates".into(), candidates.to_string()),
            ],
        }),
    }
}

fn translate(file: &Path, v: Option<VarietySpec>) -> Outcome {
    let (name, m) = read_machine(file)?;
    let b = expect_bimachine(m, "translate")?;
    let v = match v {
        Some(v) => v,
        None => TRANSLATE_CHAIN
            .iter()
            .map(|n| VarietySpec::builtin(n).expect("builtin"))
            .find(|v| crate::bimachine::is_v_bimachine(&b, v))
            .expect("every bimachine is in the variety of all monoids"),
    };
    let t = bimachine_to_translation(&b, &v)?;
    Ok(Report::ok(text::write(&name, &Machine::Translation(t)))
        .trailer("variety", v.name()))
}

fn dispatch(verb: &Verb) -> Outcome {
    match verb {
        Verb::Eval { file, word } => eval(file, word),
        Verb::Monoid { file, table } => monoid(file, *table),
        Verb::Check { file, variety: n, spec } => check(file, &variety(n.as_deref(), spec.as_deref())?),
        Verb::Minimize { file } => minimize(file),
        Verb::Determinize { file } => determinize(file),
        Verb::ToBimachine { file } => {
            let (name, m) = read_machine(file)?;
            let b = nft_to_bimachine(&as_nft(m, "to-bimachine")?)?;
            Ok(Report::ok(text::write(&name, &Machine::Bimachine(b))))
        }
        Verb::FromBimachine { file } => {
            let (name, m) = read_machine(file)?;
            let b = expect_bimachine(m, "from-bimachine")?;
            let t = bimachine_to_nft(&b);
            let unamb = if t.is_unambiguous() { "yes" } else { "no" };
            Ok(Report::ok(text::write(&name, &Machine::Nft(t))).trailer("unambiguous", unamb))
        }
        Verb::Canonical {
            file,
            right,
            trace,
            family,
        } => canonical(file, right.as_deref(), *trace, *family),
        Verb::DecideFo { file, emit } => decide_fo_verb(file, *emit),
        Verb::Decide {
            file,
            variety: n,
            spec,
            ..
        } => decide(file, &variety(n.as_deref(), spec.as_deref())?),
        Verb::Translate { file, variety: n, spec } => {
            let v = if n.is_some() || spec.is_some() {
                Some(variety(n.as_deref(), spec.as_deref())?)
            } else {
                None
            };
            translate(file, v)
        }
        Verb::Untranslate { file } => {
            let (name, m) = read_machine(file)?;
            let t = match m {
                Machine::Translation(t) => t,
                m => return Err(Failure::format(format!("untranslate expects a translation, found a {}", m.kind()))),
            };
            let b = translation_to_bimachine(&t)?;
            Ok(Report::ok(text::write(&name, &Machine::Bimachine(b))))
        }
    }
}

fn write_trailers(err: &mut dyn Write, message: Option<&str>, trailers: &[(String, String)]) {
    if let Some(m) = message {
        let _ = writeln!(err, "{m}");
    }
    for (k, v) in trailers {
        let _ = writeln!(err, "{k}={v}");
    }
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("ratfun".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_YES
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    write_trailers(err, None, &[("error".into(), "usage".into())]);
                    EXIT_FORMAT
                }
            };
        }
    };
    match dispatch(&cli.verb) {
        Ok(r) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &r.stdout) {
                    write_trailers(err, Some(&format!("{}: {e}", path.display())), &[("error".into(), "io".into())]);
                    return EXIT_FORMAT;
                }
            } else {
                let _ = out.write_all(r.stdout.as_bytes());
            }
            write_trailers(err, r.message.as_deref(), &r.trailers);
            r.code
        }
        Err(f) => {
            write_trailers(err, Some(&f.message), &f.trailers);
            f.code
        }
    }
}
