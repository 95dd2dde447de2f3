//! One PASS/FAIL line per acceptance check, with wall-clock limits.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{oracle, props};
use rational_functions::canonical::{decide_fo, left_syntactic_congruence, FoAnswer, TrFamily};
use rational_functions::monoid::transition_monoid;
use rational_functions::text::fixture_files;
use rational_functions::transducer::{determinize_nft, minimize_dft};
use rational_functions::variety::{in_variety, VarietySpec};
use rational_functions::{cli, fixtures, word};

const EXAMPLE: Duration = Duration::from_secs(1);
const DECISION: Duration = Duration::from_secs(5);
const PROPERTIES: Duration = Duration::from_secs(60);
const PROPERTY_CASES: u32 = 200;

#[derive(Default)]
struct Report {
    failed: Vec<String>,
}

impl Report {
    /// Runs `check`, which panics on a wrong value, and prints its line.
    fn run(&mut self, id: &str, what: &str, limit: Option<Duration>, check: impl FnOnce()) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let problem = match (outcome, limit) {
            (Err(e), _) => Some(
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
            (Ok(()), Some(l)) if took >= l => Some(format!("over the {} s limit", l.as_secs())),
            _ => None,
        };
        let limit = limit.map(|l| format!(" < {} s", l.as_secs())).unwrap_or_default();
        match problem {
            None => println!("PASS {id} {what} [{:.3} s{limit}]", took.as_secs_f64()),
            Some(p) => {
                println!("FAIL {id} {what} [{:.3} s{limit}]: {p}", took.as_secs_f64());
                self.failed.push(id.to_string());
            }
        }
    }
}

/// Runs the command line on fixture files and returns the exit code.
fn ratfun(dir: &std::path::Path, args: &[&str]) -> i32 {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            let p = dir.join(a);
            if p.exists() {
                p.display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    cli::run(args, &mut out, &mut err)
}

fn worked_examples(r: &mut Report) {
    r.run("1.1", "f_ends on abaa, baaab, abab", Some(EXAMPLE), || {
        let t = fixtures::f_ends();
        for (u, v) in [("abaa", "aaaa"), ("baaab", ""), ("abab", "")] {
            assert_eq!(t.eval_str(u).unwrap().as_deref(), Some(v), "{u}");
        }
    });
    r.run("1.2", "xmp-bim execution on abaa", Some(EXAMPLE), || {
        let b = fixtures::xmp_bim();
        assert_eq!(b.eval_str("abaa").unwrap().as_deref(), Some("aaaa"));
        let u = word("abaa");
        let (l, rt) = (b.left(), b.right());
        let mut outputs = Vec::new();
        for i in 0..u.len() {
            let li = l.state_after(&u[..i]).unwrap().unwrap();
            let ri = rt.state_after(&u[i + 1..]).unwrap().unwrap();
            assert_eq!(l.name(li), if i == 0 { "l0" } else { "la" });
            assert_eq!(rt.name(ri), if i == 3 { "r0" } else { "ra" });
            let a = b.alphabet().index(u[i]).unwrap();
            outputs.push(b.output(li, a, ri).unwrap().iter().collect::<String>());
        }
        assert_eq!(outputs, ["a", "a", "a", "a"]);
    });
    r.run("1.3", "syntactic monoid of L_ends", Some(EXAMPLE), oracle::syntactic_monoid_of_l_ends);
    r.run("1.4", "minimal transducer of g", Some(EXAMPLE), oracle::minimal_transducer_of_g);
    r.run("1.5", "determinization of detxmp", Some(EXAMPLE), || {
        let d = determinize_nft(&fixtures::detxmp()).unwrap();
        // subset construction: initial state {(0,ε)} and first transition a|a
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.name(d.initial()), "{(0,ε)}");
        assert_eq!(d.initial_output(), &[] as &[char]);
        let (s0, s12, s1) = ("{(0,ε)}", "{(1,a),(2,ε)}", "{(1,ε)}");
        assert_eq!(d.edge(s0, 'a'), Some((s12, "a".into())));
        assert_eq!(d.edge(s0, 'b'), None);
        assert_eq!(d.edge(s12, 'a'), Some((s12, "a".into())));
        assert_eq!(d.edge(s12, 'b'), Some((s1, "aa".into())));
        assert_eq!(d.edge(s1, 'a'), Some((s12, "".into())));
        assert_eq!(d.edge(s1, 'b'), Some((s1, "a".into())));
        let finals: Vec<(&str, String)> =
            d.finals().iter().map(|(&q, w)| (d.name(q), w.iter().collect())).collect();
        assert_eq!(finals, [(s12, String::new())]);
        // pushed to its normal form, the initial output is a
        let m = minimize_dft(&d).unwrap();
        assert_eq!(m.num_states(), 3);
        assert_eq!(m.initial_output(), &['a']);
        assert_eq!(m.edge("[ε]", 'a'), Some(("[a]", String::new())));
    });
    r.run("1.6", "left congruence of f_ends and its family", Some(EXAMPLE), || {
        let t = fixtures::f_ends();
        let r0 = left_syntactic_congruence(&t).unwrap();
        assert_eq!(r0.names(), ["[ε]", "[a]", "[b]"]);
        let step = |from: &str, a: char| {
            let q = r0.delta(r0.state_id(from).unwrap(), r0.alphabet().index(a).unwrap());
            r0.name(q.unwrap()).to_string()
        };
        for (from, a, to) in [("[ε]", 'a', "[a]"), ("[ε]", 'b', "[b]")] {
            assert_eq!(step(from, a), to);
        }
        for c in ["[a]", "[b]"] {
            assert_eq!(step(c, 'a'), c);
            assert_eq!(step(c, 'b'), c);
        }
        let fam = TrFamily::new(&t, &r0).unwrap();
        let stats: Vec<(String, usize, usize)> =
            fam.threads().into_iter().map(|th| (th.class, th.states, th.transitions)).collect();
        let want = [("[ε]", 1, 0), ("[a]", 5, 9), ("[b]", 5, 9)].map(|(c, s, n)| (c.to_string(), s, n));
        assert_eq!(stats, want);
    });
}

fn decisions(r: &mut Report, dir: &std::path::Path) {
    r.run("2.1", "decide_fo(f_ends) = yes", Some(DECISION), || {
        let FoAnswer::Yes { nft, .. } = decide_fo(&fixtures::f_ends()).unwrap() else {
            panic!("no")
        };
        assert!(nft.is_unambiguous());
        assert!(in_variety(&transition_monoid(&nft.underlying()), &VarietySpec::aperiodic()));
        for u in common::words(nft.alphabet(), 6) {
            assert_eq!(nft.eval(&u).unwrap(), fixtures::f_ends().eval(&u).unwrap());
        }
        assert_eq!(ratfun(dir, &["decide-fo", "f_ends.nft"]), cli::EXIT_YES);
    });
    r.run("2.2", "decide_fo(f_even) = no", Some(DECISION), || {
        let FoAnswer::No { period, .. } = decide_fo(&fixtures::f_even()).unwrap() else {
            panic!("yes")
        };
        assert_eq!(period, 2);
        assert_eq!(ratfun(dir, &["decide-fo", "f_even.nft"]), cli::EXIT_NO);
    });
    r.run("2.3", "decide_fo(identity) = yes", Some(DECISION), || {
        assert!(decide_fo(&fixtures::identity().to_nft()).unwrap().is_yes());
        assert_eq!(ratfun(dir, &["decide-fo", "identity.dft"]), cli::EXIT_YES);
    });
}

fn counter_examples(r: &mut Report) {
    r.run("3.1", "det1 determinized violates x = x x", Some(EXAMPLE), oracle::determinization_breaks_idempotency);
    r.run("3.2", "det2 determinized violates x y = y x", Some(EXAMPLE), oracle::determinization_breaks_commutativity);
    r.run("3.3", "v-bim domain {ab} is not commutative", Some(EXAMPLE), oracle::commutative_bimachine_with_a_non_commutative_domain);
}

fn property_suites(r: &mut Report) {
    let start = Instant::now();
    for (i, (what, run)) in props::SUITE.iter().enumerate() {
        r.run(&format!("4.{}", i + 1), what, None, || run(PROPERTY_CASES).unwrap());
    }
    let total = start.elapsed();
    let what = format!(
        "{} properties x {PROPERTY_CASES} cases took {:.3} s, limit {} s",
        props::SUITE.len(),
        total.as_secs_f64(),
        PROPERTIES.as_secs()
    );
    r.run("4", &what, None, || assert!(total < PROPERTIES, "over the limit"));
}

fn oracles(r: &mut Report) {
    r.run("5.1", "left congruence against contexts up to length 8", None, oracle::left_congruence_matches_contexts);
    r.run("5.2", "left automaton against the definition, contexts up to length 5", None, oracle::left_automaton_matches_definition);
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in fixture_files() {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    let mut r = Report::default();
    worked_examples(&mut r);
    decisions(&mut r, dir.path());
    counter_examples(&mut r);
    property_suites(&mut r);
    oracles(&mut r);
    assert!(r.failed.is_empty(), "failed: {}", r.failed.join(", "));
}
