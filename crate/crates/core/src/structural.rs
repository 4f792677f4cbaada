//! Observer and output-control-consistency checks for natural projections.

use std::collections::BTreeSet;

use crate::alphabet::{Event, EventSet};
use crate::error::{Error, Result};
use crate::generator::{Generator, StateId};
use crate::ops::{project, ProjectionSpec};
use crate::report::PropertyReport;
use crate::search::Bfs;

fn check_source(g: &Generator, spec: &ProjectionSpec) -> Result<()> {
    if spec.source().same_events(g.alphabet()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!(
            "projection source {} vs generator alphabet {}",
            spec.source(),
            g.alphabet()
        )))
    }
}

/// Observable events that `q` can fire after some (possibly empty) run of
/// erased events.
fn observable_reach(g: &Generator, spec: &ProjectionSpec, q: StateId) -> BTreeSet<Event> {
    let mut seen = vec![false; g.state_count()];
    let mut stack = vec![q];
    seen[q] = true;
    let mut out = BTreeSet::new();
    while let Some(p) = stack.pop() {
        for (e, t) in g.enabled(p) {
            if spec.is_observable(e) {
                out.insert(e.clone());
            } else if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    out
}

/// Decides whether the projection is an `L(G)`-observer.
///
/// Runs `G` in lockstep with its determinized projection. At every reachable
/// pair, each event the projection can still produce must be reachable in
/// `G` through erased events. A failure reports `s·e`: after `s` the
/// projected continuation `e` cannot be realized.
pub fn is_observer(g: &Generator, spec: &ProjectionSpec) -> Result<PropertyReport> {
    check_source(g, spec)?;
    let Some(q0) = g.start() else {
        return Ok(PropertyReport::pass("empty language"));
    };
    if spec.is_identity() {
        return Ok(PropertyReport::pass("identity projection"));
    }
    let d = project(g, spec)?;
    let reach: Vec<BTreeSet<Event>> = (0..g.state_count())
        .map(|q| observable_reach(g, spec, q))
        .collect();
    let mut bfs = Bfs::new((q0, d.initial()));
    let mut i = 0;
    while i < bfs.len() {
        let (q, dq) = *bfs.node(i);
        for (e, _) in d.enabled(dq) {
            if !reach[q].contains(e) {
                return Ok(PropertyReport::fail(
                    bfs.word(i).pushed(e.clone()),
                    format!("projected continuation `{e}` is not reachable from this history"),
                ));
            }
        }
        for (e, t) in g.enabled(q) {
            let dt = if spec.is_observable(e) {
                d.successor(dq, e)
                    .expect("projection contains every observable step of the original")
            } else {
                dq
            };
            bfs.visit(i, e, (t, dt));
        }
        i += 1;
    }
    Ok(PropertyReport::pass("observer"))
}

/// Decides output control consistency of the projection for `L(G)`.
///
/// Tracks, along every path, whether a controllable erased event occurred
/// since the last observable event (or since the start). Reaching an
/// uncontrollable observable event in that state is a violation; the
/// counterexample is the full violating word.
pub fn is_occ(g: &Generator, spec: &ProjectionSpec, eu: &EventSet) -> Result<PropertyReport> {
    check_source(g, spec)?;
    let Some(q0) = g.start() else {
        return Ok(PropertyReport::pass("empty language"));
    };
    let mut bfs = Bfs::new((q0, false));
    let mut i = 0;
    while i < bfs.len() {
        let (q, dirty) = *bfs.node(i);
        if dirty {
            if let Some((e, _)) = g
                .enabled(q)
                .find(|(e, _)| spec.is_observable(e) && eu.contains(*e))
            {
                return Ok(PropertyReport::fail(
                    bfs.word(i).pushed(e.clone()),
                    format!("uncontrollable observable `{e}` is preceded by a controllable erased event"),
                ));
            }
        }
        for (e, t) in g.enabled(q) {
            let next = if spec.is_observable(e) {
                false
            } else {
                dirty || !eu.contains(e)
            };
            bfs.visit(i, e, (t, next));
        }
        i += 1;
    }
    Ok(PropertyReport::pass("output control consistent"))
}
