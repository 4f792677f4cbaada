//! Controllability, the supremal controllable sublanguage, and supervised
//! closed loops for prefix-closed languages.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Event, EventSet};
use crate::error::{Error, Result};
use crate::generator::{Generator, StateId};
use crate::ops::sync_product;
use crate::report::PropertyReport;
use crate::search::Bfs;

/// A supervisor realized as a generator; the closed loop is the synchronous
/// product of the realization and the plant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supervisor {
    realization: Generator,
}

impl Supervisor {
    pub fn new(realization: Generator) -> Self {
        Supervisor { realization }
    }

    pub fn realization(&self) -> &Generator {
        &self.realization
    }

    pub fn into_realization(self) -> Generator {
        self.realization
    }
}

fn check_inputs(k: &Alphabet, l: &Alphabet, eu: &EventSet) -> Result<()> {
    if !k.same_events(l) {
        return Err(Error::AlphabetMismatch(format!("{k} vs {l}")));
    }
    if let Some(e) = eu.iter().find(|e| !l.contains(e)) {
        return Err(Error::AlphabetMismatch(format!(
            "uncontrollable event `{e}` is not in {l}"
        )));
    }
    Ok(())
}

/// Checks `K̄E_u ∩ L ⊆ K̄` on the product of `K` and `L`.
///
/// The counterexample is the shortlex-least `s·u` with `s ∈ K ∩ L`, `u ∈ E_u`,
/// `su ∈ L` and `su ∉ K`.
pub fn is_controllable(k: &Generator, l: &Generator, eu: &EventSet) -> Result<PropertyReport> {
    check_inputs(k.alphabet(), l.alphabet(), eu)?;
    let (Some(sk), Some(sl)) = (k.start(), l.start()) else {
        return Ok(PropertyReport::pass("no common words"));
    };
    let mut bfs = Bfs::new((sk, sl));
    let mut i = 0;
    while i < bfs.len() {
        let (pk, pl) = *bfs.node(i);
        for u in eu {
            if l.successor(pl, u).is_some() && k.successor(pk, u).is_none() {
                return Ok(PropertyReport::fail(
                    bfs.word(i).pushed(u.clone()),
                    format!("uncontrollable `{u}` is possible in the plant but not in the specification"),
                ));
            }
        }
        for (e, nk) in k.enabled(pk) {
            if let Some(nl) = l.successor(pl, e) {
                bfs.visit(i, e, (nk, nl));
            }
        }
        i += 1;
    }
    Ok(PropertyReport::pass("controllable"))
}

/// Supremal controllable sublanguage of `K ∩ L` with respect to `L` and `E_u`.
///
/// Explores the product of `K` and `L`, marks every pair at which `L`
/// enables an uncontrollable event that `K` does not, closes the marking
/// backwards under uncontrollable transitions, and keeps the accessible part
/// of what is left.
pub fn sup_c(k: &Generator, l: &Generator, eu: &EventSet) -> Result<Generator> {
    check_inputs(k.alphabet(), l.alphabet(), eu)?;
    let alphabet = k.alphabet().clone();
    let (Some(sk), Some(sl)) = (k.start(), l.start()) else {
        return Ok(Generator::empty(alphabet));
    };
    let mut bfs = Bfs::new((sk, sl));
    let mut edges: Vec<Vec<(Event, usize)>> = Vec::new();
    let mut bad: Vec<bool> = Vec::new();
    let mut i = 0;
    while i < bfs.len() {
        let (pk, pl) = *bfs.node(i);
        bad.push(
            eu.iter()
                .any(|u| l.successor(pl, u).is_some() && k.successor(pk, u).is_none()),
        );
        let mut out = Vec::new();
        for (e, nk) in k.enabled(pk) {
            if let Some(nl) = l.successor(pl, e) {
                out.push((e.clone(), bfs.visit(i, e, (nk, nl))));
            }
        }
        edges.push(out);
        i += 1;
    }
    let n = bfs.len();
    let mut uncontrollable_preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, out) in edges.iter().enumerate() {
        for (e, q) in out {
            if eu.contains(e) {
                uncontrollable_preds[*q].push(p);
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&p| bad[p]).collect();
    while let Some(q) = stack.pop() {
        for &p in &uncontrollable_preds[q] {
            if !bad[p] {
                bad[p] = true;
                stack.push(p);
            }
        }
    }
    if bad[0] {
        return Ok(Generator::empty(alphabet));
    }
    let labels = bfs
        .into_nodes()
        .into_iter()
        .map(|(a, b)| format!("({},{})", k.label(a), l.label(b)))
        .collect();
    let delta: Vec<BTreeMap<Event, StateId>> = edges
        .into_iter()
        .enumerate()
        .map(|(p, out)| {
            if bad[p] {
                BTreeMap::new()
            } else {
                out.into_iter().filter(|(_, q)| !bad[*q]).collect()
            }
        })
        .collect();
    Ok(Generator::from_parts(alphabet, labels, delta, 0).trim_accessible())
}

/// Checks that `S` never disables an uncontrollable event the plant enables
/// after a common history. Events outside the supervisor's alphabet cannot
/// be disabled by it.
pub fn is_admissible(s: &Supervisor, g: &Generator, eu: &EventSet) -> Result<PropertyReport> {
    let sg = s.realization();
    let alphabet = sg.alphabet().union(g.alphabet())?;
    let (Some(ss), Some(sp)) = (sg.start(), g.start()) else {
        return Ok(PropertyReport::pass("closed loop is empty"));
    };
    let guarded: Vec<Event> = eu
        .iter()
        .filter(|u| sg.alphabet().contains(u) && g.alphabet().contains(u))
        .cloned()
        .collect();
    let mut bfs = Bfs::new((ss, sp));
    let mut i = 0;
    while i < bfs.len() {
        let (ps, pp) = *bfs.node(i);
        for u in &guarded {
            if g.successor(pp, u).is_some() && sg.successor(ps, u).is_none() {
                return Ok(PropertyReport::fail(
                    bfs.word(i).pushed(u.clone()),
                    format!("supervisor disables uncontrollable `{u}`"),
                ));
            }
        }
        for e in alphabet.events() {
            let ns = if sg.alphabet().contains(e) {
                sg.successor(ps, e)
            } else {
                Some(ps)
            };
            let np = if g.alphabet().contains(e) {
                g.successor(pp, e)
            } else {
                Some(pp)
            };
            if let (Some(ns), Some(np)) = (ns, np) {
                bfs.visit(i, e, (ns, np));
            }
        }
        i += 1;
    }
    Ok(PropertyReport::pass("admissible"))
}

/// `L(S/G) = L(S) ∥ L(G)` for an admissible supervisor.
pub fn closed_loop(s: &Supervisor, g: &Generator) -> Result<Generator> {
    let report = is_admissible(s, g, &g.alphabet().uncontrollable())?;
    if !report.holds {
        return Err(Error::Inadmissible(report));
    }
    sync_product(s.realization(), g)
}
