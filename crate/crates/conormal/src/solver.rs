//! Existence search for distinguishing labelings against an explicit list
//! of group elements.
//!
//! Items (vertices, or edge positions) are labeled in index order. Each
//! non-identity element stays "alive" until some already-decided pair of
//! positions forces a label mismatch under it; a labeling is distinguishing
//! exactly when no element survives. Two prunings keep the tree small, and
//! neither affects the decision:
//!
//! - labels are canonical by first use (position 0 gets label 1, a fresh
//!   label may only be one past the current maximum), since relabeling
//!   preserves stabilizers;
//! - once the alive set is empty every completion works, so the remaining
//!   positions are filled with label 1.
//!
//! New labels are tried before old ones; that finds witnesses quickly when
//! they exist, and costs nothing when the whole tree must be exhausted.

use crate::search::SearchStop;
use crate::Budget;
use std::time::Instant;

/// One group element's action on the labeled items, with its inverse.
pub(crate) struct ItemAction {
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl ItemAction {
    pub(crate) fn new(forward: Vec<usize>) -> Self {
        let mut backward = vec![0usize; forward.len()];
        for (i, &x) in forward.iter().enumerate() {
            backward[x] = i;
        }
        ItemAction { forward, backward }
    }
}

pub(crate) struct LabelingSearch<'a> {
    actions: &'a [ItemAction],
    num_items: usize,
    budget: &'a Budget,
    nodes: u64,
}

impl<'a> LabelingSearch<'a> {
    /// `actions` must be the non-identity elements; an identity action here
    /// would make every labeling fail.
    pub(crate) fn new(num_items: usize, actions: &'a [ItemAction], budget: &'a Budget) -> Self {
        LabelingSearch { actions, num_items, budget, nodes: 0 }
    }

    pub(crate) fn nodes_explored(&self) -> u64 {
        self.nodes
    }

    /// Finds a labeling of the items with values in `1..=d` preserved by
    /// none of the actions, or proves there is none.
    pub(crate) fn find(&mut self, d: usize) -> Result<Option<Vec<usize>>, SearchStop> {
        debug_assert!(d >= 1);
        if self.actions.is_empty() {
            return Ok(Some(vec![1; self.num_items]));
        }
        if self.num_items == 0 {
            return Ok(None);
        }
        let mut labels = vec![0usize; self.num_items];
        let alive: Vec<usize> = (0..self.actions.len()).collect();
        self.step(0, 0, d, &mut labels, &alive)
    }

    fn step(
        &mut self,
        pos: usize,
        max_used: usize,
        d: usize,
        labels: &mut Vec<usize>,
        alive: &[usize],
    ) -> Result<Option<Vec<usize>>, SearchStop> {
        if pos == self.num_items {
            return Ok(None); // something is still alive
        }
        let top = max_used.saturating_add(1).min(d);
        for label in (1..=top).rev() {
            self.nodes += 1;
            if self.nodes > self.budget.node_limit {
                return Err(SearchStop::Budget {
                    limit: self.budget.node_limit,
                    explored: self.nodes,
                });
            }
            if self.nodes % 1024 == 0 {
                if let Some(deadline) = self.budget.deadline {
                    if Instant::now() > deadline {
                        return Err(SearchStop::Timeout);
                    }
                }
            }
            labels[pos] = label;
            let next_alive: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&i| {
                    let act = &self.actions[i];
                    let fwd = act.forward[pos];
                    if fwd < pos && labels[fwd] != label {
                        return false;
                    }
                    let bwd = act.backward[pos];
                    if bwd < pos && labels[bwd] != label {
                        return false;
                    }
                    true
                })
                .collect();
            if next_alive.is_empty() {
                for slot in labels.iter_mut().skip(pos + 1) {
                    *slot = 1;
                }
                return Ok(Some(labels.clone()));
            }
            if let Some(found) =
                self.step(pos + 1, max_used.max(label), d, labels, &next_alive)?
            {
                return Ok(Some(found));
            }
        }
        labels[pos] = 0;
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn actions_from(images: &[Vec<usize>]) -> Vec<ItemAction> {
        images.iter().map(|img| ItemAction::new(img.clone())).collect()
    }

    /// Plain d^n enumeration against the same action list.
    fn plain_exists(num_items: usize, d: usize, images: &[Vec<usize>]) -> bool {
        let mut labels = vec![1usize; num_items];
        loop {
            let distinguishing = images.iter().all(|img| {
                (0..num_items).any(|i| labels[i] != labels[img[i]])
            });
            if distinguishing {
                return true;
            }
            let mut k = 0;
            loop {
                if k == num_items {
                    return false;
                }
                labels[k] += 1;
                if labels[k] <= d {
                    break;
                }
                labels[k] = 1;
                k += 1;
            }
        }
    }

    #[test]
    fn matches_plain_enumeration_on_cyclic_actions() {
        // rotations of a 5-cycle and of a 6-cycle, acting on positions
        for n in [4usize, 5, 6] {
            let mut images = Vec::new();
            for shift in 1..n {
                images.push((0..n).map(|i| (i + shift) % n).collect::<Vec<_>>());
            }
            let actions = actions_from(&images);
            for d in 1..=n {
                let budget = Budget::default();
                let mut search = LabelingSearch::new(n, &actions, &budget);
                let found = search.find(d).unwrap();
                assert_eq!(found.is_some(), plain_exists(n, d, &images), "n={n} d={d}");
                if let Some(labels) = found {
                    assert!(labels.iter().all(|&l| (1..=d).contains(&l)));
                    assert!(images
                        .iter()
                        .all(|img| (0..n).any(|i| labels[i] != labels[img[i]])));
                }
            }
        }
    }

    #[test]
    fn trivial_group_needs_one_label() {
        let actions: Vec<ItemAction> = Vec::new();
        let budget = Budget::default();
        let mut search = LabelingSearch::new(4, &actions, &budget);
        assert_eq!(search.find(1).unwrap(), Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn budget_stops_the_search() {
        // full symmetric group on 8 points, d = 2: no distinguishing
        // labeling exists, so the tree is exhausted or the budget trips
        let mut images = Vec::new();
        let mut items: Vec<usize> = (0..8).collect();
        fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(items.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, items, out);
                if k % 2 == 0 {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
            }
        }
        heap(8, &mut items, &mut images);
        images.retain(|img| img.iter().enumerate().any(|(i, &x)| i != x));
        let actions = actions_from(&images);
        let tight = Budget::with_node_limit(50);
        let mut search = LabelingSearch::new(8, &actions, &tight);
        assert!(matches!(search.find(2), Err(SearchStop::Budget { limit: 50, .. })));
    }
}
