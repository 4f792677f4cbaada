use std::collections::HashMap;
use std::hash::Hash;

use crate::alphabet::Event;
use crate::generator::Word;

/// Breadth-first exploration bookkeeping with parent pointers.
///
/// Nodes are appended in discovery order, so iterating `0..len()` while
/// visiting is a FIFO traversal. When successors are visited in event order,
/// the word recorded for each node is its shortlex-least access word.
pub(crate) struct Bfs<N> {
    nodes: Vec<N>,
    parent: Vec<Option<(usize, Event)>>,
    index: HashMap<N, usize>,
}

impl<N: Hash + Eq + Clone> Bfs<N> {
    pub fn new(root: N) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Bfs {
            nodes: vec![root],
            parent: vec![None],
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &N {
        &self.nodes[i]
    }

    /// Returns the index of `n`, inserting it with parent `from` if new.
    pub fn visit(&mut self, from: usize, e: &Event, n: N) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(n.clone(), i);
        self.nodes.push(n);
        self.parent.push(Some((from, e.clone())));
        i
    }

    pub fn word(&self, mut i: usize) -> Word {
        let mut events = Vec::new();
        while let Some((p, e)) = &self.parent[i] {
            events.push(e.clone());
            i = *p;
        }
        events.reverse();
        Word::new(events)
    }

    pub fn into_nodes(self) -> Vec<N> {
        self.nodes
    }
}
