//! Language operations on generators: synchronous product, natural
//! projection and its inverse, union, and language comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Event, EventSet};
use crate::error::{Error, Result};
use crate::generator::{Generator, StateId, Word};
use crate::report::PropertyReport;
use crate::search::Bfs;

/// A natural projection from `source` onto `target ⊆ source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    source: Alphabet,
    target: EventSet,
}

impl ProjectionSpec {
    pub fn new(source: Alphabet, target: EventSet) -> Result<Self> {
        if let Some(e) = target.iter().find(|e| !source.contains(e)) {
            return Err(Error::AlphabetMismatch(format!(
                "projection target event `{e}` is not in the source alphabet"
            )));
        }
        Ok(ProjectionSpec { source, target })
    }

    /// Projection of `source` onto `source ∩ onto`.
    pub fn onto(source: &Alphabet, onto: &EventSet) -> Self {
        let target = source
            .events()
            .filter(|e| onto.contains(*e))
            .cloned()
            .collect();
        ProjectionSpec {
            source: source.clone(),
            target,
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &EventSet {
        &self.target
    }

    pub fn target_alphabet(&self) -> Alphabet {
        self.source.restrict(&self.target)
    }

    pub fn is_identity(&self) -> bool {
        self.target.len() == self.source.len()
    }

    pub fn is_observable(&self, e: &Event) -> bool {
        self.target.contains(e)
    }

    /// Erases the events outside the target set.
    pub fn apply(&self, w: &Word) -> Word {
        w.events()
            .iter()
            .filter(|e| self.target.contains(*e))
            .cloned()
            .collect()
    }
}

/// The event-set triple `(E1, E2, Ek)` of a two-subsystem coordination scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinationScheme {
    e1: Alphabet,
    e2: Alphabet,
    ek: Alphabet,
    e1k: Alphabet,
    e2k: Alphabet,
    all: Alphabet,
}

/// Selects one of the two local subsystems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Local {
    One,
    Two,
}

impl Local {
    pub const BOTH: [Local; 2] = [Local::One, Local::Two];

    pub fn other(self) -> Local {
        match self {
            Local::One => Local::Two,
            Local::Two => Local::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Local::One => 1,
            Local::Two => 2,
        }
    }
}

impl CoordinationScheme {
    /// Fails if an event has different controllability in two of the sets.
    pub fn new(e1: Alphabet, e2: Alphabet, ek: Alphabet) -> Result<Self> {
        let e1k = e1.union(&ek)?;
        let e2k = e2.union(&ek)?;
        let all = e1k.union(&e2k)?;
        Ok(CoordinationScheme {
            e1,
            e2,
            ek,
            e1k,
            e2k,
            all,
        })
    }

    pub fn e1(&self) -> &Alphabet {
        &self.e1
    }

    pub fn e2(&self) -> &Alphabet {
        &self.e2
    }

    pub fn ek(&self) -> &Alphabet {
        &self.ek
    }

    /// `E1 ∪ Ek`.
    pub fn e1k(&self) -> &Alphabet {
        &self.e1k
    }

    /// `E2 ∪ Ek`.
    pub fn e2k(&self) -> &Alphabet {
        &self.e2k
    }

    /// `E = E1 ∪ E2 ∪ Ek`.
    pub fn all(&self) -> &Alphabet {
        &self.all
    }

    pub fn local(&self, i: Local) -> &Alphabet {
        match i {
            Local::One => &self.e1,
            Local::Two => &self.e2,
        }
    }

    /// `E_{i+k}`.
    pub fn local_k(&self, i: Local) -> &Alphabet {
        match i {
            Local::One => &self.e1k,
            Local::Two => &self.e2k,
        }
    }

    /// `E_u`.
    pub fn eu(&self) -> EventSet {
        self.all.uncontrollable()
    }

    /// `E_{k,u}`.
    pub fn ek_u(&self) -> EventSet {
        self.ek.uncontrollable()
    }

    /// `E_{i+k,u} = E_{i+k} ∩ E_u`.
    pub fn local_k_u(&self, i: Local) -> EventSet {
        self.local_k(i).uncontrollable()
    }

    /// `E1 ∩ E2`.
    pub fn shared(&self) -> EventSet {
        self.e1.intersect(&self.e2).event_set()
    }
}

fn require_same_events(a: &Alphabet, b: &Alphabet, what: &str) -> Result<()> {
    if a.same_events(b) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!("{what}: {a} vs {b}")))
    }
}

/// Synchronous product: private events interleave, shared events synchronize.
pub fn sync_product(g1: &Generator, g2: &Generator) -> Result<Generator> {
    let alphabet = g1.alphabet().union(g2.alphabet())?;
    let (Some(s1), Some(s2)) = (g1.start(), g2.start()) else {
        return Ok(Generator::empty(alphabet));
    };
    let moves: Vec<(Event, bool, bool)> = alphabet
        .events()
        .map(|e| {
            (
                e.clone(),
                g1.alphabet().contains(e),
                g2.alphabet().contains(e),
            )
        })
        .collect();
    let mut bfs = Bfs::new((s1, s2));
    let mut delta: Vec<BTreeMap<Event, StateId>> = Vec::new();
    let mut i = 0;
    while i < bfs.len() {
        let (p1, p2) = *bfs.node(i);
        let mut out = BTreeMap::new();
        for (e, in1, in2) in &moves {
            let n1 = if *in1 { g1.successor(p1, e) } else { Some(p1) };
            let n2 = if *in2 { g2.successor(p2, e) } else { Some(p2) };
            if let (Some(n1), Some(n2)) = (n1, n2) {
                out.insert(e.clone(), bfs.visit(i, e, (n1, n2)));
            }
        }
        delta.push(out);
        i += 1;
    }
    let labels = bfs
        .into_nodes()
        .into_iter()
        .map(|(a, b)| format!("({},{})", g1.label(a), g2.label(b)))
        .collect();
    Ok(Generator::from_parts(alphabet, labels, delta, 0))
}

/// Synchronous product of several generators, folded left to right.
pub fn sync_all(gs: &[&Generator]) -> Result<Generator> {
    let (first, rest) = gs
        .split_first()
        .expect("sync_all needs at least one generator");
    rest.iter()
        .try_fold((*first).clone(), |acc, g| sync_product(&acc, g))
}

fn erased_closure(g: &Generator, spec: &ProjectionSpec, seed: &mut BTreeSet<StateId>) {
    let mut stack: Vec<StateId> = seed.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for (e, q) in g.enabled(p) {
            if !spec.is_observable(e) && seed.insert(q) {
                stack.push(q);
            }
        }
    }
}

/// Natural projection of `L(G)`: erase non-target transitions, then determinize
/// by subset construction. State sets are kept sorted so runs are reproducible.
pub fn project(g: &Generator, spec: &ProjectionSpec) -> Result<Generator> {
    require_same_events(spec.source(), g.alphabet(), "projection source")?;
    let alphabet = spec.target_alphabet();
    let Some(s0) = g.start() else {
        return Ok(Generator::empty(alphabet));
    };
    if spec.is_identity() {
        return Ok(g.trim_accessible());
    }
    let mut init = BTreeSet::from([s0]);
    erased_closure(g, spec, &mut init);
    let mut bfs = Bfs::new(init);
    let mut delta: Vec<BTreeMap<Event, StateId>> = Vec::new();
    let mut i = 0;
    while i < bfs.len() {
        let mut out = BTreeMap::new();
        for e in alphabet.events() {
            let mut next: BTreeSet<StateId> = bfs
                .node(i)
                .iter()
                .filter_map(|&p| g.successor(p, e))
                .collect();
            if next.is_empty() {
                continue;
            }
            erased_closure(g, spec, &mut next);
            out.insert(e.clone(), bfs.visit(i, e, next));
        }
        delta.push(out);
        i += 1;
    }
    let labels = bfs
        .into_nodes()
        .into_iter()
        .map(|set| {
            let parts: Vec<&str> = set.iter().map(|&q| g.label(q)).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    Ok(Generator::from_parts(alphabet, labels, delta, 0))
}

/// Projection onto `G.alphabet ∩ onto`.
pub fn project_onto(g: &Generator, onto: &EventSet) -> Generator {
    project(g, &ProjectionSpec::onto(g.alphabet(), onto))
        .expect("projection spec built from the generator's own alphabet")
}

/// Inverse projection into `superset`: self-loops on every new event.
pub fn inverse_project(g: &Generator, superset: &Alphabet) -> Result<Generator> {
    let merged = superset.union(g.alphabet())?;
    require_same_events(
        &merged,
        superset,
        "inverse projection target must contain the source",
    )?;
    let extra: Vec<Event> = superset
        .events()
        .filter(|e| !g.alphabet().contains(e))
        .cloned()
        .collect();
    if g.is_empty_language() {
        return Ok(Generator::empty(superset.clone()));
    }
    let delta = (0..g.state_count())
        .map(|q| {
            let mut m: BTreeMap<Event, StateId> =
                g.enabled(q).map(|(e, t)| (e.clone(), t)).collect();
            for e in &extra {
                m.insert(e.clone(), q);
            }
            m
        })
        .collect();
    Ok(Generator::from_parts(
        superset.clone(),
        g.labels().to_vec(),
        delta,
        g.initial(),
    ))
}

/// Union of two languages over the same alphabet.
pub fn language_union(g1: &Generator, g2: &Generator) -> Result<Generator> {
    require_same_events(g1.alphabet(), g2.alphabet(), "union")?;
    let root = (g1.start(), g2.start());
    if root == (None, None) {
        return Ok(Generator::empty(g1.alphabet().clone()));
    }
    let mut bfs = Bfs::new(root);
    let mut delta: Vec<BTreeMap<Event, StateId>> = Vec::new();
    let mut i = 0;
    while i < bfs.len() {
        let (p1, p2) = *bfs.node(i);
        let mut out = BTreeMap::new();
        for e in g1.alphabet().events() {
            let n1 = p1.and_then(|p| g1.successor(p, e));
            let n2 = p2.and_then(|p| g2.successor(p, e));
            if n1.is_some() || n2.is_some() {
                out.insert(e.clone(), bfs.visit(i, e, (n1, n2)));
            }
        }
        delta.push(out);
        i += 1;
    }
    let show =
        |g: &Generator, q: Option<StateId>| q.map_or("-".to_string(), |q| g.label(q).to_string());
    let labels = bfs
        .into_nodes()
        .into_iter()
        .map(|(a, b)| format!("({}|{})", show(g1, a), show(g2, b)))
        .collect();
    Ok(Generator::from_parts(
        g1.alphabet().clone(),
        labels,
        delta,
        0,
    ))
}

/// Checks `L(G1) ⊆ L(G2)`; the counterexample is the shortlex-least word of `L(G1) \ L(G2)`.
pub fn language_subset(g1: &Generator, g2: &Generator) -> Result<PropertyReport> {
    require_same_events(g1.alphabet(), g2.alphabet(), "inclusion")?;
    let Some(s1) = g1.start() else {
        return Ok(PropertyReport::pass("left language is empty"));
    };
    let mut bfs = Bfs::new((s1, g2.start()));
    let mut i = 0;
    while i < bfs.len() {
        let (p1, p2) = *bfs.node(i);
        let Some(p2) = p2 else {
            return Ok(PropertyReport::fail(
                bfs.word(i),
                "word in the left language is missing from the right",
            ));
        };
        for (e, n1) in g1.enabled(p1) {
            bfs.visit(i, e, (n1, g2.successor(p2, e)));
        }
        i += 1;
    }
    Ok(PropertyReport::pass("inclusion holds"))
}

/// Checks `L(G1) = L(G2)`; the counterexample is the shortlex-least word of
/// the symmetric difference.
pub fn language_equal(g1: &Generator, g2: &Generator) -> Result<PropertyReport> {
    require_same_events(g1.alphabet(), g2.alphabet(), "equality")?;
    let root = (g1.start(), g2.start());
    if root == (None, None) {
        return Ok(PropertyReport::pass("both languages are empty"));
    }
    let mut bfs = Bfs::new(root);
    let mut i = 0;
    while i < bfs.len() {
        match *bfs.node(i) {
            (Some(_), None) => {
                return Ok(PropertyReport::fail(
                    bfs.word(i),
                    "word only in the left language",
                ))
            }
            (None, Some(_)) => {
                return Ok(PropertyReport::fail(
                    bfs.word(i),
                    "word only in the right language",
                ))
            }
            (p1, p2) => {
                for e in g1.alphabet().events() {
                    let n1 = p1.and_then(|p| g1.successor(p, e));
                    let n2 = p2.and_then(|p| g2.successor(p, e));
                    if n1.is_some() || n2.is_some() {
                        bfs.visit(i, e, (n1, n2));
                    }
                }
            }
        }
        i += 1;
    }
    Ok(PropertyReport::pass("languages are equal"))
}

/// Minimal generator of the same language (for display; no other operation
/// depends on it). State labels are the class indices.
pub fn minimize(g: &Generator) -> Generator {
    let g = g.canonical();
    if g.is_empty_language() {
        return g;
    }
    let n = g.state_count();
    let sink = n;
    let events: Vec<Event> = g.alphabet().events().cloned().collect();
    let succ = |q: usize, e: &Event| {
        if q == sink {
            sink
        } else {
            g.successor(q, e).unwrap_or(sink)
        }
    };
    let mut class: Vec<usize> = (0..=n).map(|q| usize::from(q == sink)).collect();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..=n)
            .map(|q| {
                let sig = (class[q], events.iter().map(|e| class[succ(q, e)]).collect());
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let stable = ids.len() == class.iter().collect::<BTreeSet<_>>().len();
        class = next;
        if stable {
            break;
        }
    }
    // renumber classes of real states in order of first appearance
    let mut renum: HashMap<usize, usize> = HashMap::new();
    for &c in &class[..n] {
        let fresh = renum.len();
        renum.entry(c).or_insert(fresh);
    }
    let sink_class = class[sink];
    let mut delta = vec![BTreeMap::new(); renum.len()];
    for (p, e, q) in g.transitions() {
        if class[q] != sink_class {
            delta[renum[&class[p]]].insert(e.clone(), renum[&class[q]]);
        }
    }
    let labels = (0..renum.len()).map(|c| c.to_string()).collect();
    Generator::from_parts(g.alphabet().clone(), labels, delta, renum[&class[0]]).canonical()
}
