use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{Alphabet, Event, EventSet};
use crate::error::{Error, Result};

/// Dense state index inside a [`Generator`].
pub type StateId = usize;

/// A finite sequence of events. The empty word is written `ε`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Event>);

impl Word {
    pub fn new(events: Vec<Event>) -> Self {
        Word(events)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a dot-separated word such as `c.u1.u2`; `""` and `"ε"` are the empty word.
    pub fn parse(s: &str) -> Self {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Word::empty();
        }
        Word(s.split('.').map(|p| Event::new(p.trim())).collect())
    }

    pub fn events(&self) -> &[Event] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, e: Event) {
        self.0.push(e);
    }

    pub fn pushed(&self, e: Event) -> Word {
        let mut w = self.clone();
        w.push(e);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn last(&self) -> Option<&Event> {
        self.0.last()
    }
}

impl From<Vec<Event>> for Word {
    fn from(v: Vec<Event>) -> Self {
        Word(v)
    }
}

impl FromIterator<Event> for Word {
    fn from_iter<I: IntoIterator<Item = Event>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A deterministic generator with a partial transition function.
///
/// Every language handled here is prefix-closed, so the marked states are
/// always the reachable states. The empty language is represented by a
/// single-state generator whose `recognizes_empty_language` flag is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    alphabet: Alphabet,
    labels: Vec<String>,
    delta: Vec<BTreeMap<Event, StateId>>,
    initial: StateId,
    recognizes_empty_language: bool,
}

impl Generator {
    /// Validates and builds a generator. States are numbered in the order
    /// given; their names are kept as labels. `marked` is validated and then
    /// replaced by the reachable-state set.
    pub fn new<S, T, I, M>(
        alphabet: Alphabet,
        states: impl IntoIterator<Item = S>,
        transitions: I,
        initial: &str,
        marked: M,
    ) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
        I: IntoIterator<Item = (T, T, T)>,
        M: IntoIterator<Item = T>,
    {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for s in states {
            let s = s.as_ref();
            if index.insert(s.to_string(), labels.len()).is_some() {
                return Err(Error::DuplicateState(s.to_string()));
            }
            labels.push(s.to_string());
        }
        if labels.is_empty() {
            return Err(Error::NoStates);
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        let mut delta = vec![BTreeMap::new(); labels.len()];
        for (src, ev, tgt) in transitions {
            let (src, ev, tgt) = (src.as_ref(), ev.as_ref(), tgt.as_ref());
            let p = lookup(src)?;
            let q = lookup(tgt)?;
            let e = Event::new(ev);
            if !alphabet.contains(&e) {
                return Err(Error::UnknownEvent(ev.to_string()));
            }
            match delta[p].get(&e) {
                Some(&existing) if existing != q => {
                    return Err(Error::Nondeterministic {
                        state: src.to_string(),
                        event: ev.to_string(),
                    })
                }
                _ => {
                    delta[p].insert(e, q);
                }
            }
        }
        let initial = lookup(initial)?;
        for m in marked {
            lookup(m.as_ref())?;
        }
        Ok(Generator {
            alphabet,
            labels,
            delta,
            initial,
            recognizes_empty_language: false,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        labels: Vec<String>,
        delta: Vec<BTreeMap<Event, StateId>>,
        initial: StateId,
    ) -> Self {
        debug_assert_eq!(labels.len(), delta.len());
        debug_assert!(initial < labels.len());
        debug_assert!(delta
            .iter()
            .flat_map(|m| m.iter())
            .all(|(e, &q)| alphabet.contains(e) && q < labels.len()));
        Generator {
            alphabet,
            labels,
            delta,
            initial,
            recognizes_empty_language: false,
        }
    }

    /// The generator of the empty language over `alphabet`.
    pub fn empty(alphabet: Alphabet) -> Self {
        Generator {
            alphabet,
            labels: vec!["∅".to_string()],
            delta: vec![BTreeMap::new()],
            initial: 0,
            recognizes_empty_language: true,
        }
    }

    /// The generator of `{ε}`.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        Generator::from_parts(alphabet, vec!["0".into()], vec![BTreeMap::new()], 0)
    }

    /// The generator of `E*`: one state with a self-loop on every event.
    pub fn universal(alphabet: Alphabet) -> Self {
        let loops = alphabet.events().map(|e| (e.clone(), 0)).collect();
        Generator::from_parts(alphabet, vec!["0".into()], vec![loops], 0)
    }

    /// The prefix closure of a finite set of dot-separated words, as a prefix tree.
    pub fn from_words<S: AsRef<str>>(
        alphabet: Alphabet,
        words: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut labels = vec!["ε".to_string()];
        let mut delta: Vec<BTreeMap<Event, StateId>> = vec![BTreeMap::new()];
        for w in words {
            let w = Word::parse(w.as_ref());
            let mut q = 0;
            for (i, e) in w.events().iter().enumerate() {
                if !alphabet.contains(e) {
                    return Err(Error::UnknownEvent(e.to_string()));
                }
                q = match delta[q].get(e) {
                    Some(&next) => next,
                    None => {
                        let next = labels.len();
                        labels.push(w.prefix(i + 1).to_string());
                        delta.push(BTreeMap::new());
                        delta[q].insert(e.clone(), next);
                        next
                    }
                };
            }
        }
        Ok(Generator::from_parts(alphabet, labels, delta, 0))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// The initial state, or `None` when the language is empty.
    pub fn start(&self) -> Option<StateId> {
        (!self.recognizes_empty_language).then_some(self.initial)
    }

    pub fn recognizes_empty_language(&self) -> bool {
        self.recognizes_empty_language
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn successor(&self, q: StateId, e: &Event) -> Option<StateId> {
        self.delta[q].get(e).copied()
    }

    /// Outgoing transitions of `q` in event order.
    pub fn enabled(&self, q: StateId) -> impl Iterator<Item = (&Event, StateId)> + '_ {
        self.delta[q].iter().map(|(e, &t)| (e, t))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Event, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, m)| m.iter().map(move |(e, &q)| (p, e, q)))
    }

    /// Runs the generator on `events` from the initial state.
    pub fn run(&self, events: &[Event]) -> Option<StateId> {
        let mut q = self.start()?;
        for e in events {
            q = self.successor(q, e)?;
        }
        Some(q)
    }

    /// True iff `w ∈ L(G)`. Events outside the alphabet are an error.
    pub fn membership(&self, w: &Word) -> Result<bool> {
        if let Some(e) = w.events().iter().find(|e| !self.alphabet.contains(e)) {
            return Err(Error::UnknownEvent(e.to_string()));
        }
        Ok(self.accepts(w))
    }

    /// Like [`Generator::membership`] but treats foreign events as rejecting.
    pub fn accepts(&self, w: &Word) -> bool {
        self.run(w.events()).is_some()
    }

    pub fn is_empty_language(&self) -> bool {
        self.recognizes_empty_language
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let Some(q0) = self.start() else {
            return seen;
        };
        seen[q0] = true;
        let mut stack = vec![q0];
        while let Some(p) = stack.pop() {
            for (_, q) in self.enabled(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// The marked states: all reachable states (empty for the empty language).
    pub fn marked(&self) -> Vec<StateId> {
        self.reachable()
            .into_iter()
            .enumerate()
            .filter_map(|(q, r)| r.then_some(q))
            .collect()
    }

    /// Drops unreachable states, keeping the relative order of the others.
    pub fn trim_accessible(&self) -> Generator {
        if self.recognizes_empty_language {
            return Generator::empty(self.alphabet.clone());
        }
        let keep = self.reachable();
        let mut renumber = vec![usize::MAX; self.state_count()];
        let mut labels = Vec::new();
        for (q, &k) in keep.iter().enumerate() {
            if k {
                renumber[q] = labels.len();
                labels.push(self.labels[q].clone());
            }
        }
        let delta = keep
            .iter()
            .enumerate()
            .filter(|(_, &k)| k)
            .map(|(q, _)| {
                self.delta[q]
                    .iter()
                    .map(|(e, &t)| (e.clone(), renumber[t]))
                    .collect()
            })
            .collect();
        Generator::from_parts(self.alphabet.clone(), labels, delta, renumber[self.initial])
    }

    /// Trims and renumbers states in breadth-first order (events in name
    /// order). Two runs on equal input give identical output.
    pub fn canonical(&self) -> Generator {
        if self.recognizes_empty_language {
            return Generator::empty(self.alphabet.clone());
        }
        let mut order = vec![usize::MAX; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        let mut visited = vec![self.initial];
        order[self.initial] = 0;
        while let Some(p) = queue.pop_front() {
            for (_, q) in self.enabled(p) {
                if order[q] == usize::MAX {
                    order[q] = visited.len();
                    visited.push(q);
                    queue.push_back(q);
                }
            }
        }
        let labels = visited.iter().map(|&q| self.labels[q].clone()).collect();
        let delta = visited
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|(e, &t)| (e.clone(), order[t]))
                    .collect()
            })
            .collect();
        Generator::from_parts(self.alphabet.clone(), labels, delta, 0)
    }

    /// Replaces the labels with the decimal state indices.
    pub fn with_index_labels(&self) -> Generator {
        let mut g = self.clone();
        if !g.recognizes_empty_language {
            g.labels = (0..g.state_count()).map(|q| q.to_string()).collect();
        }
        g
    }

    /// The events labelling transitions of the accessible part.
    pub fn reachable_events(&self) -> EventSet {
        let keep = self.reachable();
        self.transitions()
            .filter(|(p, _, _)| keep[*p])
            .map(|(_, e, _)| e.clone())
            .collect()
    }

    /// The first `limit` words of the language in shortlex order.
    pub fn sample_words(&self, limit: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let Some(q0) = self.start() else {
            return out;
        };
        let mut queue = VecDeque::from([(Word::empty(), q0)]);
        while let Some((w, q)) = queue.pop_front() {
            if out.len() == limit {
                break;
            }
            for (e, t) in self.enabled(q) {
                queue.push_back((w.pushed(e.clone()), t));
            }
            out.push(w);
        }
        out
    }
}
