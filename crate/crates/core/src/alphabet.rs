use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An event name. Cheap to clone; ordered lexicographically by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event(Arc<str>);

impl Event {
    pub fn new(name: impl AsRef<str>) -> Self {
        Event(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Event {
    fn from(s: &str) -> Self {
        Event::new(s)
    }
}

pub type EventSet = BTreeSet<Event>;

/// Builds an event set from names.
pub fn events<I, S>(names: I) -> EventSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names.into_iter().map(Event::new).collect()
}

/// A finite event set partitioned into controllable and uncontrollable events.
///
/// Control patterns are not materialized: a pattern is any enabled set that
/// contains every uncontrollable event.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    // event -> controllable?
    events: BTreeMap<Event, bool>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, controllable)` pairs.
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, bool)>,
        S: AsRef<str>,
    {
        let mut events = BTreeMap::new();
        for (name, controllable) in entries {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::EmptyEventName);
            }
            if events.insert(Event::new(name), controllable).is_some() {
                return Err(Error::DuplicateEvent(name.to_string()));
            }
        }
        Ok(Alphabet { events })
    }

    /// Builds an alphabet from separate controllable and uncontrollable name lists.
    pub fn from_sets<I, J, S, T>(controllable: I, uncontrollable: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let c = controllable
            .into_iter()
            .map(|s| (s.as_ref().to_string(), true));
        let u = uncontrollable
            .into_iter()
            .map(|s| (s.as_ref().to_string(), false));
        Alphabet::new(c.chain(u))
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn contains(&self, e: &Event) -> bool {
        self.events.contains_key(e)
    }

    /// `Some(true)` for controllable, `Some(false)` for uncontrollable, `None` if absent.
    pub fn is_controllable(&self, e: &Event) -> Option<bool> {
        self.events.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Event, bool)> + '_ {
        self.events.iter().map(|(e, c)| (e, *c))
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> + '_ {
        self.events.keys()
    }

    pub fn event_set(&self) -> EventSet {
        self.events.keys().cloned().collect()
    }

    pub fn controllable(&self) -> EventSet {
        self.iter()
            .filter(|(_, c)| *c)
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn uncontrollable(&self) -> EventSet {
        self.iter()
            .filter(|(_, c)| !*c)
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn same_events(&self, other: &Alphabet) -> bool {
        self.events.len() == other.events.len()
            && self
                .events
                .keys()
                .zip(other.events.keys())
                .all(|(a, b)| a == b)
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.events.keys().all(|e| other.contains(e))
    }

    /// Union of two alphabets; a shared event must have the same status in both.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut events = self.events.clone();
        for (e, c) in &other.events {
            match events.get(e) {
                Some(existing) if existing != c => {
                    return Err(Error::ControllabilityConflict(e.to_string()))
                }
                Some(_) => {}
                None => {
                    events.insert(e.clone(), *c);
                }
            }
        }
        Ok(Alphabet { events })
    }

    /// Keeps only the events in `keep`.
    pub fn restrict(&self, keep: &EventSet) -> Alphabet {
        Alphabet {
            events: self
                .events
                .iter()
                .filter(|(e, _)| keep.contains(*e))
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Intersection of the event sets, keeping this alphabet's statuses.
    pub fn intersect(&self, other: &Alphabet) -> Alphabet {
        self.restrict(&other.event_set())
    }

    /// Resolves a set of names against this alphabet.
    pub fn resolve<I, S>(&self, names: I) -> Result<EventSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| {
                let e = Event::new(n.as_ref());
                if self.contains(&e) {
                    Ok(e)
                } else {
                    Err(Error::UnknownEvent(n.as_ref().to_string()))
                }
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (e, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if c {
                write!(f, "{e}")?;
            } else {
                write!(f, "{e}!")?;
            }
        }
        f.write_str("}")
    }
}
