//! Minimization of deterministic transducers: push outputs towards the
//! initial state, then merge states with equal residual behaviour.

use std::collections::{BTreeMap, BTreeSet};

use super::Dft;
use crate::automata::class_name;
use crate::error::{Error, Result};
use crate::partition::moore_refine;
use crate::word::{concat, lcp, residual, Word};

/// Largest common prefix of every output produced from each state until
/// acceptance (`None` for states that cannot accept). Greatest fixpoint of
/// `s_q = ∧({t(q)} ∪ {out(q,σ)·s_δ(q,σ)})`.
pub fn state_prefixes(d: &Dft) -> Vec<Option<Word>> {
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut s: Vec<Option<Word>> = vec![None; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            let mut cands: Vec<Word> = Vec::new();
            if let Some(t) = d.finals().get(&q) {
                cands.push(t.clone());
            }
            for a in 0..k {
                if let Some((q2, u)) = d.delta(q, a) {
                    if let Some(sq2) = &s[*q2] {
                        cands.push(concat(u, sq2));
                    }
                }
            }
            if cands.is_empty() {
                continue;
            }
            let v = lcp(cands.iter()).expect("non-empty");
            if s[q].as_ref() != Some(&v) {
                s[q] = Some(v);
                changed = true;
            }
        }
        if !changed {
            return s;
        }
    }
}

/// The canonical minimal transducer of the function: initial output
/// `f̂(ε)`, transition outputs `f̂(u)⁻¹f̂(uσ)`, terminal outputs
/// `f̂(u)⁻¹f(u)`, states the classes of the syntactic congruence of `f`,
/// named after shortest representatives.
pub fn minimize_dft(d: &Dft) -> Result<Dft> {
    let t = d.to_nft().trim();
    if t.initials().is_empty() {
        return Err(Error::EmptyDomain);
    }
    let d = Dft::from_nft(&t)?;
    let n = d.num_states();
    let k = d.alphabet().len();
    let s = state_prefixes(&d);
    let s: Vec<Word> = s
        .into_iter()
        .map(|x| x.expect("trim states reach acceptance"))
        .collect();
    let init_out = concat(d.initial_output(), &s[d.initial()]);
    let mut out: Vec<Vec<Option<(usize, Word)>>> = vec![vec![None; k]; n];
    for (q, row) in out.iter_mut().enumerate() {
        for (a, slot) in row.iter_mut().enumerate() {
            if let Some((q2, u)) = d.delta(q, a) {
                *slot = Some((*q2, residual(&s[q], &concat(u, &s[*q2]))?));
            }
        }
    }
    let mut fin: BTreeMap<usize, Word> = BTreeMap::new();
    for (&q, tq) in d.finals() {
        fin.insert(q, residual(&s[q], tq)?);
    }
    let labels: Vec<Option<Word>> = (0..n).map(|q| fin.get(&q).cloned()).collect();
    let part = moore_refine(&labels, k, |q, a| {
        out[q][a].as_ref().map(|(q2, u)| (u.clone(), *q2))
    });

    // breadth-first numbering of the blocks from the initial block
    let b0 = part.block_of(d.initial());
    let mut order = vec![b0];
    let mut reps: BTreeMap<usize, Word> = BTreeMap::from([(b0, Vec::new())]);
    let mut seen = BTreeSet::from([b0]);
    let mut i = 0;
    while i < order.len() {
        let b = order[i];
        let q = part.blocks()[b][0];
        for a in 0..k {
            if let Some((q2, _)) = &out[q][a] {
                let b2 = part.block_of(*q2);
                if seen.insert(b2) {
                    let mut w = reps[&b].clone();
                    w.push(d.alphabet().letter(a));
                    reps.insert(b2, w);
                    order.push(b2);
                }
            }
        }
        i += 1;
    }
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let names = order.iter().map(|b| class_name(&reps[b])).collect();
    let delta = order
        .iter()
        .map(|&b| {
            let q = part.blocks()[b][0];
            out[q]
                .iter()
                .map(|e| e.as_ref().map(|(q2, u)| (pos[&part.block_of(*q2)], u.clone())))
                .collect()
        })
        .collect();
    let finals = order
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| fin.get(&part.blocks()[b][0]).map(|w| (i, w.clone())))
        .collect();
    Dft::from_parts(d.alphabet().clone(), names, 0, init_out, delta, finals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::Nft;

    #[test]
    fn identity_is_already_minimal() {
        let id = Nft::builder(&['a', 'b'])
            .initial("0", "")
            .final_("0", "")
            .trans("0", 'a', "0", "a")
            .trans("0", 'b', "0", "b")
            .build_dft()
            .unwrap();
        let m = minimize_dft(&id).unwrap();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.names()[0], "[ε]");
        assert_eq!(minimize_dft(&m).unwrap(), m);
    }

    #[test]
    fn pushes_outputs_forward() {
        // a ↦ xy, b ↦ xz : the common x moves to the initial output
        let d = Nft::builder(&['a', 'b'])
            .initial("0", "")
            .trans("0", 'a', "1", "")
            .trans("0", 'b', "2", "")
            .final_("1", "xy")
            .final_("2", "xz")
            .build_dft()
            .unwrap();
        let m = minimize_dft(&d).unwrap();
        assert_eq!(m.initial_output(), &['x']);
        assert_eq!(m.eval_str("a").unwrap().unwrap(), "xy");
        // both leaves end up with empty terminal output and merge
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.edge("[ε]", 'b'), Some(("[a]", "z".into())));
    }

    #[test]
    fn empty_domain_is_an_error() {
        let d = Nft::builder(&['a'])
            .initial("0", "")
            .build_dft()
            .unwrap();
        assert_eq!(minimize_dft(&d), Err(Error::EmptyDomain));
    }
}
