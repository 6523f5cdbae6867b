//! Incremental allocation builder shared by the solvers.

use crate::model::Allocation;

pub(crate) struct Partial {
    owner: Vec<Option<usize>>,
    sizes: Vec<usize>,
}

impl Partial {
    pub(crate) fn new(agents: usize, items: usize) -> Self {
        Self {
            owner: vec![None; items],
            sizes: vec![0; agents],
        }
    }

    pub(crate) fn give(&mut self, item: usize, agent: usize) {
        debug_assert!(self.owner[item].is_none(), "item {item} assigned twice");
        self.owner[item] = Some(agent);
        self.sizes[agent] += 1;
    }

    pub(crate) fn is_free(&self, item: usize) -> bool {
        self.owner[item].is_none()
    }

    pub(crate) fn free_items(&self) -> Vec<usize> {
        (0..self.owner.len()).filter(|&g| self.is_free(g)).collect()
    }

    /// Hands the free items out in ascending order, cycling through the agents
    /// in ascending order and skipping those that already hold `k` items.
    pub(crate) fn pad_round_robin(&mut self, k: usize) {
        let n = self.sizes.len();
        let mut cursor = 0;
        for g in self.free_items() {
            let mut tries = 0;
            while self.sizes[cursor] >= k && tries < n {
                cursor = (cursor + 1) % n;
                tries += 1;
            }
            debug_assert!(self.sizes[cursor] < k, "padding overflow");
            self.give(g, cursor);
            cursor = (cursor + 1) % n;
        }
    }

    pub(crate) fn rest_to(&mut self, agent: usize) {
        for g in self.free_items() {
            self.give(g, agent);
        }
    }

    pub(crate) fn finish(self) -> Allocation {
        let owner = self
            .owner
            .into_iter()
            .enumerate()
            .map(|(g, a)| a.unwrap_or_else(|| panic!("item {g} left unassigned")))
            .collect();
        Allocation::from_owner_unchecked(owner)
    }
}
