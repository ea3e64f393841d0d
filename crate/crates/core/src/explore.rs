use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::automaton::StateId;

/// Breadth-first interning of abstract nodes into fresh state ids, numbered
/// from 0 in discovery order.
pub(crate) struct Explorer<N> {
    ids: HashMap<N, StateId>,
    queue: VecDeque<(StateId, N)>,
}

impl<N: Clone + Eq + Hash> Explorer<N> {
    pub(crate) fn new() -> Self {
        Explorer {
            ids: HashMap::new(),
            queue: VecDeque::new(),
        }
    }

    pub(crate) fn id(&mut self, node: N) -> StateId {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = StateId(self.ids.len() as u32);
        self.ids.insert(node.clone(), id);
        self.queue.push_back((id, node));
        id
    }

    pub(crate) fn next(&mut self) -> Option<(StateId, N)> {
        self.queue.pop_front()
    }
}
