//! Brute-force reference implementations over bounded word sets.
//!
//! Everything here evaluates the textbook definitions on explicit sets of
//! words (or, for projections and the structural properties, by searching for
//! preimages word by word). Nothing calls into the production algorithms in
//! [`crate::ops`], [`crate::control`], [`crate::structural`] or
//! [`crate::coordination`]; only the generator's transition table is read.
//! The module exists for differential testing and is not meant to be fast.

pub mod random;

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{Event, EventSet};
use crate::generator::{Generator, StateId, Word};

/// The default word-length bound for differential tests.
pub const DEFAULT_BOUND: usize = 8;

/// A prefix-closed set of words, none longer than `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    bound: usize,
    words: BTreeSet<Word>,
}

impl BoundedLanguage {
    /// Panics if a word is longer than `bound` or the set is not prefix-closed.
    pub fn new(bound: usize, words: BTreeSet<Word>) -> Self {
        let l = BoundedLanguage { bound, words };
        assert!(
            l.words.iter().all(|w| w.len() <= bound),
            "word exceeds bound"
        );
        assert!(l.is_prefix_closed(), "word set is not prefix-closed");
        l
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.words
            .iter()
            .all(|w| w.is_empty() || self.words.contains(&w.prefix(w.len() - 1)))
    }

    /// Keeps the words of length at most `bound`.
    pub fn truncate(&self, bound: usize) -> BoundedLanguage {
        BoundedLanguage {
            bound: bound.min(self.bound),
            words: self
                .words
                .iter()
                .filter(|w| w.len() <= bound)
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &BoundedLanguage) -> bool {
        self.words.is_subset(&other.words)
    }

    /// Words in shortest-then-lexicographic order.
    pub fn shortlex(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.words.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

fn walk(g: &Generator, q: StateId, w: &mut Vec<Event>, n: usize, out: &mut BTreeSet<Word>) {
    out.insert(Word::new(w.clone()));
    if w.len() == n {
        return;
    }
    for e in g.alphabet().events() {
        if let Some(t) = g.successor(q, e) {
            w.push(e.clone());
            walk(g, t, w, n, out);
            w.pop();
        }
    }
}

/// `{w ∈ L(G) : |w| ≤ n}` by exhaustive walk.
pub fn bounded_language(g: &Generator, n: usize) -> BoundedLanguage {
    let mut words = BTreeSet::new();
    if let Some(q0) = g.start() {
        walk(g, q0, &mut Vec::new(), n, &mut words);
    }
    BoundedLanguage { bound: n, words }
}

/// Erases every event outside `keep`.
pub fn erase(w: &Word, keep: &EventSet) -> Word {
    w.events()
        .iter()
        .filter(|e| keep.contains(*e))
        .cloned()
        .collect()
}

/// `{P(w) : w ∈ words}`. Exact for `P(L) ∩ E^{≤n}` only when every such
/// word has a preimage within the bound; see [`exact_project`] otherwise.
pub fn brute_project(words: &BoundedLanguage, target: &EventSet) -> BoundedLanguage {
    BoundedLanguage {
        bound: words.bound,
        words: words.words.iter().map(|w| erase(w, target)).collect(),
    }
}

fn extend_over(
    alphabet: &EventSet,
    n: usize,
    keep: &mut dyn FnMut(&Word) -> bool,
) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![Word::empty()];
    if !keep(&Word::empty()) {
        return out;
    }
    while let Some(w) = frontier.pop() {
        if w.len() < n {
            for e in alphabet {
                let next = w.pushed(e.clone());
                if keep(&next) {
                    frontier.push(next);
                }
            }
        }
        out.insert(w);
    }
    out
}

/// `P^{-1}(words) ∩ superset^{≤n}`, where `words` is over `events`.
pub fn brute_inverse_project(
    words: &BoundedLanguage,
    events: &EventSet,
    superset: &EventSet,
    n: usize,
) -> BoundedLanguage {
    let words = extend_over(superset, n, &mut |w| words.contains(&erase(w, events)));
    BoundedLanguage { bound: n, words }
}

/// `P_1^{-1}(ws1) ∩ P_2^{-1}(ws2)` over `e1 ∪ e2`, words of length at most `n`.
pub fn brute_product(
    ws1: &BoundedLanguage,
    e1: &EventSet,
    ws2: &BoundedLanguage,
    e2: &EventSet,
    n: usize,
) -> BoundedLanguage {
    let all: EventSet = e1.union(e2).cloned().collect();
    let words = extend_over(&all, n, &mut |w| {
        ws1.contains(&erase(w, e1)) && ws2.contains(&erase(w, e2))
    });
    BoundedLanguage { bound: n, words }
}

/// Intersection of two word sets.
pub fn brute_intersection(a: &BoundedLanguage, b: &BoundedLanguage) -> BoundedLanguage {
    BoundedLanguage {
        bound: a.bound.min(b.bound),
        words: a.words.intersection(&b.words).cloned().collect(),
    }
}

/// `P(L_1 ∥ … ∥ L_m) ∩ target^{≤n}`, exactly.
///
/// For each candidate image `t`, the search keeps the set of component-state
/// tuples reachable by some word `s` of the product with `P(s) = t`; `t` is
/// in the image iff that set is non-empty.
pub fn exact_project(components: &[&Generator], target: &EventSet, n: usize) -> BoundedLanguage {
    let union: EventSet = components
        .iter()
        .flat_map(|g| g.alphabet().event_set())
        .collect();
    let Some(start): Option<Vec<StateId>> = components.iter().map(|g| g.start()).collect() else {
        return BoundedLanguage {
            bound: n,
            words: BTreeSet::new(),
        };
    };
    let step = |tuple: &[StateId], e: &Event| -> Option<Vec<StateId>> {
        components
            .iter()
            .zip(tuple)
            .map(|(g, &q)| {
                if g.alphabet().contains(e) {
                    g.successor(q, e)
                } else {
                    Some(q)
                }
            })
            .collect()
    };
    let hidden: Vec<Event> = union
        .iter()
        .filter(|e| !target.contains(*e))
        .cloned()
        .collect();
    let close = |set: HashSet<Vec<StateId>>| -> HashSet<Vec<StateId>> {
        let mut seen = set.clone();
        let mut stack: Vec<Vec<StateId>> = set.into_iter().collect();
        while let Some(t) = stack.pop() {
            for e in &hidden {
                if let Some(next) = step(&t, e) {
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        seen
    };
    let mut words = BTreeSet::new();
    let mut frontier = vec![(Word::empty(), close(HashSet::from([start])))];
    while let Some((t, set)) = frontier.pop() {
        if t.len() < n {
            for e in target.iter().filter(|e| union.contains(*e)) {
                let next: HashSet<Vec<StateId>> =
                    set.iter().filter_map(|tuple| step(tuple, e)).collect();
                if !next.is_empty() {
                    frontier.push((t.pushed(e.clone()), close(next)));
                }
            }
        }
        words.insert(t);
    }
    BoundedLanguage { bound: n, words }
}

/// Literal check of `s ∈ K, u ∈ E_u, su ∈ L ⇒ su ∈ K` on word sets.
/// Returns the shortlex-least violating `su`.
pub fn brute_controllability_violation(
    k: &BoundedLanguage,
    l: &BoundedLanguage,
    eu: &EventSet,
) -> Option<Word> {
    k.shortlex()
        .into_iter()
        .filter(|s| l.contains(s))
        .flat_map(|s| eu.iter().map(move |u| s.pushed(u.clone())))
        .find(|su| l.contains(su) && !k.contains(su))
}

/// `K E_u^* ∩ L ⊆ K` on word sets; returns a violating word if any.
pub fn brute_extended_controllability_violation(
    k: &BoundedLanguage,
    l: &BoundedLanguage,
    eu: &EventSet,
) -> Option<Word> {
    l.shortlex().into_iter().find(|w| {
        !k.contains(w)
            && (0..w.len())
                .any(|i| k.contains(&w.prefix(i)) && w.events()[i..].iter().all(|e| eu.contains(e)))
    })
}

/// Greatest fixpoint: starting from `K ∩ L`, repeatedly delete every word
/// `w` (and its extensions) for which some `u ∈ E_u` has `wu ∈ L`, `wu ∉ K`.
///
/// On truncated inputs a deletion is only detected when the offending
/// uncontrollable continuation lies inside the sets.
pub fn brute_sup_c(k: &BTreeSet<Word>, l: &BTreeSet<Word>, eu: &EventSet) -> BTreeSet<Word> {
    let mut current: BTreeSet<Word> = k.intersection(l).cloned().collect();
    loop {
        let bad: Vec<Word> = current
            .iter()
            .filter(|w| {
                eu.iter().any(|u| {
                    let wu = w.pushed(u.clone());
                    l.contains(&wu) && !current.contains(&wu)
                })
            })
            .cloned()
            .collect();
        if bad.is_empty() {
            return current;
        }
        current.retain(|w| !bad.iter().any(|b| b.is_prefix_of(w)));
    }
}

/// `supC(K, L, E_u) ∩ E^{≤n}`, exactly.
///
/// Every word of `L` of length at most `n` is extended by uncontrollable
/// tails inside `L`, so that [`brute_sup_c`] sees each uncontrollable escape
/// however deep it lies. Per base word, a tail is not extended past a
/// (K-state, L-state) pair that an earlier tail of the same base already
/// reached; the pair determines everything below it.
pub fn brute_sup_c_bounded(
    k: &Generator,
    l: &Generator,
    eu: &EventSet,
    n: usize,
) -> BoundedLanguage {
    let mut kw = BTreeSet::new();
    let mut lw = BTreeSet::new();
    for w in bounded_language(l, n).words() {
        let ql = l.run(w.events()).expect("word of the language");
        let qk = k
            .start()
            .and_then(|q0| w.events().iter().try_fold(q0, |q, e| k.successor(q, e)));
        let mut seen = HashSet::from([(qk, ql)]);
        let mut stack = vec![(w.clone(), qk, ql)];
        while let Some((x, qk, ql)) = stack.pop() {
            if qk.is_some() {
                kw.insert(x.clone());
            }
            lw.insert(x.clone());
            let Some(qk) = qk else { continue };
            for u in eu {
                if let Some(nl) = l.successor(ql, u) {
                    let nk = k.successor(qk, u);
                    if seen.insert((nk, nl)) {
                        stack.push((x.pushed(u.clone()), nk, nl));
                    }
                }
            }
        }
    }
    let words = brute_sup_c(&kw, &lw, eu)
        .into_iter()
        .filter(|w| w.len() <= n)
        .collect();
    BoundedLanguage { bound: n, words }
}

fn hidden_reach(g: &Generator, from: StateId, target: &EventSet) -> Vec<StateId> {
    let mut seen = vec![from];
    let mut stack = vec![from];
    while let Some(q) = stack.pop() {
        for e in g.alphabet().events().filter(|e| !target.contains(*e)) {
            if let Some(t) = g.successor(q, e) {
                if !seen.contains(&t) {
                    seen.push(t);
                    stack.push(t);
                }
            }
        }
    }
    seen
}

/// Literal observer check over histories of length at most `n`: for every
/// `s ∈ L` and observable `e` with `P(s)e ∈ P(L)` there must be `v` with
/// `sv ∈ L` and `P(v) = e`. Single-event continuations suffice; longer ones
/// follow by induction. Returns the shortlex-least violating `s·e`.
pub fn brute_observer_violation(g: &Generator, target: &EventSet, n: usize) -> Option<Word> {
    let image = exact_project(&[g], target, n + 1);
    let histories = bounded_language(g, n);
    for s in histories.shortlex() {
        let q = g.run(s.events()).expect("word of the language");
        let ps = erase(&s, target);
        let reach = hidden_reach(g, q, target);
        for e in target.iter().filter(|e| g.alphabet().contains(e)) {
            if !image.contains(&ps.pushed(e.clone())) {
                continue;
            }
            if !reach.iter().any(|&p| g.successor(p, e).is_some()) {
                return Some(s.pushed(e.clone()));
            }
        }
    }
    None
}

/// Literal OCC check over words of length at most `n`: whenever `s ∈ L` ends
/// in an uncontrollable observable event, every event of the erased run just
/// before it must be uncontrollable. Returns the shortlex-least violation.
pub fn brute_occ_violation(
    g: &Generator,
    target: &EventSet,
    eu: &EventSet,
    n: usize,
) -> Option<Word> {
    bounded_language(g, n).shortlex().into_iter().find(|s| {
        let Some(last) = s.last() else {
            return false;
        };
        if !target.contains(last) || !eu.contains(last) {
            return false;
        }
        let body = &s.events()[..s.len() - 1];
        body.iter()
            .rev()
            .take_while(|e| !target.contains(*e))
            .any(|e| !eu.contains(e))
    })
}
