//! Backtracking search for color-preserving isomorphisms between two
//! graphs, with iterated partition refinement as pruning.
//!
//! The same kernel serves three callers: full automorphism-group
//! enumeration (`left == right`), rigidity tests (stop at the first
//! non-identity automorphism), and isomorphism tests (stop at the first
//! witness). Labeling stabilizers reduce to it as well, by encoding labels
//! as initial colors.
//!
//! The two partitions are refined in lockstep: a cell is split by the
//! multiset of neighbor counts into a splitter cell, and the split
//! signatures on both sides must agree or the branch dies. At a leaf every
//! cell is a singleton and the aligned cells read off a candidate map,
//! which is then verified edge-by-edge, so pruning can only lose speed,
//! never correctness.

use crate::graph::Graph;
use crate::Budget;
use std::collections::VecDeque;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchMode {
    /// Enumerate every isomorphism.
    Full,
    /// Stop as soon as a non-identity map is found (left must equal right).
    FindNonIdentity,
    /// Stop at the first isomorphism found.
    FindAny,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SearchStop {
    Budget { limit: u64, explored: u64 },
    Timeout,
}

#[derive(Clone)]
struct Partition {
    cell_of: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn from_colors(colors: &[u32]) -> Partition {
        let mut palette: Vec<u32> = colors.to_vec();
        palette.sort_unstable();
        palette.dedup();
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); palette.len()];
        let mut cell_of = vec![0usize; colors.len()];
        for (v, &c) in colors.iter().enumerate() {
            let idx = palette.binary_search(&c).unwrap();
            cells[idx].push(v);
            cell_of[v] = idx;
        }
        Partition { cell_of, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

struct Searcher<'a> {
    left: &'a Graph,
    right: &'a Graph,
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
    mode: SearchMode,
    budget: Budget,
    nodes: u64,
    found: Vec<Vec<usize>>,
    done: bool,
}

pub(crate) fn search_isomorphisms(
    left: &Graph,
    right: &Graph,
    left_colors: &[u32],
    right_colors: &[u32],
    mode: SearchMode,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>, SearchStop> {
    debug_assert_eq!(left.order(), left_colors.len());
    debug_assert_eq!(right.order(), right_colors.len());
    if left.order() != right.order() || left.size() != right.size() {
        return Ok(Vec::new());
    }
    let mut lh: Vec<u32> = left_colors.to_vec();
    let mut rh: Vec<u32> = right_colors.to_vec();
    lh.sort_unstable();
    rh.sort_unstable();
    if lh != rh {
        return Ok(Vec::new());
    }

    let adjacency = |g: &Graph| -> Vec<Vec<usize>> {
        (0..g.order())
            .map(|v| (0..g.order()).filter(|&u| g.adjacent(v, u)).collect())
            .collect()
    };
    let mut s = Searcher {
        left,
        right,
        left_adj: adjacency(left),
        right_adj: adjacency(right),
        mode,
        budget: *budget,
        nodes: 0,
        found: Vec::new(),
        done: false,
    };

    let mut lp = Partition::from_colors(left_colors);
    let mut rp = Partition::from_colors(right_colors);
    let mut queue: VecDeque<usize> = (0..lp.cells.len()).collect();
    if s.refine_lockstep(&mut lp, &mut rp, &mut queue) {
        s.descend(lp, rp)?;
    }
    Ok(s.found)
}

impl Searcher<'_> {
    fn tick(&mut self) -> Result<(), SearchStop> {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return Err(SearchStop::Budget { limit: self.budget.node_limit, explored: self.nodes });
        }
        if self.nodes % 256 == 0 {
            if let Some(deadline) = self.budget.deadline {
                if Instant::now() > deadline {
                    return Err(SearchStop::Timeout);
                }
            }
        }
        Ok(())
    }

    /// Refines both partitions to a common equitable fixed point. Returns
    /// false when the split signatures disagree, i.e. no isomorphism can
    /// respect the current partitions.
    fn refine_lockstep(
        &self,
        lp: &mut Partition,
        rp: &mut Partition,
        queue: &mut VecDeque<usize>,
    ) -> bool {
        let n = self.left.order();
        let mut l_cnt = vec![0usize; n];
        let mut r_cnt = vec![0usize; n];
        while let Some(splitter) = queue.pop_front() {
            for slot in l_cnt.iter_mut() {
                *slot = 0;
            }
            for slot in r_cnt.iter_mut() {
                *slot = 0;
            }
            let mut touched: Vec<usize> = Vec::new();
            for &u in &lp.cells[splitter] {
                for &w in &self.left_adj[u] {
                    l_cnt[w] += 1;
                }
            }
            for &u in &rp.cells[splitter] {
                for &w in &self.right_adj[u] {
                    r_cnt[w] += 1;
                }
            }
            let mut touched_mark = vec![false; lp.cells.len()];
            for w in 0..n {
                if l_cnt[w] > 0 {
                    let c = lp.cell_of[w];
                    if !touched_mark[c] {
                        touched_mark[c] = true;
                        touched.push(c);
                    }
                }
                if r_cnt[w] > 0 {
                    let c = rp.cell_of[w];
                    if !touched_mark[c] {
                        touched_mark[c] = true;
                        touched.push(c);
                    }
                }
            }
            touched.sort_unstable();
            for c in touched {
                if lp.cells[c].len() != rp.cells[c].len() {
                    return false;
                }
                let mut l_keys: Vec<usize> = lp.cells[c].iter().map(|&v| l_cnt[v]).collect();
                let mut r_keys: Vec<usize> = rp.cells[c].iter().map(|&v| r_cnt[v]).collect();
                l_keys.sort_unstable();
                r_keys.sort_unstable();
                if l_keys != r_keys {
                    return false;
                }
                l_keys.dedup();
                if l_keys.len() < 2 {
                    continue;
                }
                // split both sides into the same sequence of new cells,
                // ascending by key; the first key group keeps the id
                fn split_side(p: &mut Partition, cnt: &[usize], keys: &[usize], c: usize) {
                    let members = std::mem::take(&mut p.cells[c]);
                    for (pos, &key) in keys.iter().enumerate() {
                        let group: Vec<usize> =
                            members.iter().copied().filter(|&v| cnt[v] == key).collect();
                        let id = if pos == 0 { c } else { p.cells.len() };
                        for &v in &group {
                            p.cell_of[v] = id;
                        }
                        if pos == 0 {
                            p.cells[c] = group;
                        } else {
                            p.cells.push(group);
                        }
                    }
                }
                // key lists were equal before dedup, so one deduped list
                // drives both splits
                let first_new = lp.cells.len();
                split_side(lp, &l_cnt, &l_keys, c);
                split_side(rp, &r_cnt, &l_keys, c);
                debug_assert_eq!(lp.cells.len(), rp.cells.len());
                queue.push_back(c);
                for id in first_new..lp.cells.len() {
                    queue.push_back(id);
                }
            }
        }
        true
    }

    fn descend(&mut self, lp: Partition, rp: Partition) -> Result<(), SearchStop> {
        if self.done {
            return Ok(());
        }
        if lp.is_discrete() {
            self.emit_leaf(&lp, &rp);
            return Ok(());
        }
        // smallest non-singleton cell, lowest id
        let target = (0..lp.cells.len())
            .filter(|&c| lp.cells[c].len() >= 2)
            .min_by_key(|&c| (lp.cells[c].len(), c))
            .expect("non-discrete partition has a splittable cell");
        let u = lp.cells[target][0];
        let mut candidates = rp.cells[target].clone();
        if self.mode == SearchMode::FindNonIdentity {
            // try moving u first; the identity branch is explored last
            candidates.sort_by_key(|&v| (v == u, v));
        }
        for v in candidates {
            if self.done {
                return Ok(());
            }
            self.tick()?;
            let mut l2 = lp.clone();
            let mut r2 = rp.clone();
            let mut queue = VecDeque::new();
            individualize(&mut l2, target, u);
            individualize(&mut r2, target, v);
            queue.push_back(target);
            queue.push_back(l2.cells.len() - 1);
            if self.refine_lockstep(&mut l2, &mut r2, &mut queue) {
                self.descend(l2, r2)?;
            }
        }
        Ok(())
    }

    fn emit_leaf(&mut self, lp: &Partition, rp: &Partition) {
        let n = self.left.order();
        let mut image = vec![0usize; n];
        for (cell, members) in lp.cells.iter().enumerate() {
            image[members[0]] = rp.cells[cell][0];
        }
        for &(a, b) in self.left.edges() {
            if !self.right.adjacent(image[a], image[b]) {
                return;
            }
        }
        // equal edge counts plus a bijection make the converse automatic
        match self.mode {
            SearchMode::Full => self.found.push(image),
            SearchMode::FindAny => {
                self.found.push(image);
                self.done = true;
            }
            SearchMode::FindNonIdentity => {
                if image.iter().enumerate().any(|(i, &x)| i != x) {
                    self.found.push(image);
                    self.done = true;
                }
            }
        }
    }
}

fn individualize(p: &mut Partition, cell: usize, vertex: usize) {
    let members = std::mem::take(&mut p.cells[cell]);
    let rest: Vec<usize> = members.into_iter().filter(|&v| v != vertex).collect();
    p.cells[cell] = rest;
    let id = p.cells.len();
    p.cells.push(vec![vertex]);
    p.cell_of[vertex] = id;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize) -> Vec<u32> {
        vec![0; n]
    }

    fn group_order(g: &Graph) -> usize {
        search_isomorphisms(g, g, &uniform(g.order()), &uniform(g.order()), SearchMode::Full, &Budget::default())
            .unwrap()
            .len()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(group_order(&Graph::complete(3)), 6);
        assert_eq!(group_order(&Graph::path(4)), 2);
        assert_eq!(group_order(&Graph::cycle(4)), 8);
        assert_eq!(group_order(&Graph::cycle(6)), 12);
        assert_eq!(group_order(&Graph::edgeless(4).unwrap()), 24);
    }

    #[test]
    fn identity_is_first_in_full_mode() {
        let g = Graph::cycle(5);
        let all = search_isomorphisms(
            &g,
            &g,
            &uniform(5),
            &uniform(5),
            SearchMode::Full,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(all[0], vec![0, 1, 2, 3, 4]);
        assert_eq!(all.len(), 10);
    }

    #[test]
    fn colors_constrain_the_search() {
        let g = Graph::cycle(4);
        // pinning one vertex leaves only the reflection through it
        let colors = vec![1, 0, 0, 0];
        let found =
            search_isomorphisms(&g, &g, &colors, &colors, SearchMode::Full, &Budget::default())
                .unwrap();
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn isomorphism_witness_is_verified() {
        let c5 = Graph::cycle(5);
        let comp = c5.complement();
        let found = search_isomorphisms(
            &c5,
            &comp,
            &uniform(5),
            &uniform(5),
            SearchMode::FindAny,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(found.len(), 1);
        let image = &found[0];
        for u in 0..5 {
            for v in u + 1..5 {
                assert_eq!(c5.adjacent(u, v), comp.adjacent(image[u], image[v]));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(12);
        let res = search_isomorphisms(
            &g,
            &g,
            &uniform(12),
            &uniform(12),
            SearchMode::Full,
            &Budget::with_node_limit(10_000),
        );
        assert!(matches!(res, Err(SearchStop::Budget { limit: 10_000, .. })));
    }

    #[test]
    fn non_identity_short_circuit() {
        let g = Graph::complete(9);
        let found = search_isomorphisms(
            &g,
            &g,
            &uniform(9),
            &uniform(9),
            SearchMode::FindNonIdentity,
            &Budget::with_node_limit(10_000),
        )
        .unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].iter().enumerate().any(|(i, &x)| i != x));
    }
}
