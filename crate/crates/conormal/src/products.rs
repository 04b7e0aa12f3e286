//! Co-normal and Cartesian products with a fixed vertex-index convention.
//!
//! Every product vertex `(g, h)` is the index `g * |V(H)| + h` (left factor
//! major). Labeling formulas and product automorphisms all rely on this one
//! convention, so it lives in a single type.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("co-normal power requires k >= 1")]
    ZeroPower,
}

/// Bijection between factor coordinates and product vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIndexMap {
    n_left: usize,
    n_right: usize,
}

impl ProductIndexMap {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        ProductIndexMap { n_left, n_right }
    }

    pub fn for_factors(left: &Graph, right: &Graph) -> Self {
        ProductIndexMap::new(left.order(), right.order())
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn len(&self) -> usize {
        self.n_left * self.n_right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, g: usize, h: usize) -> usize {
        debug_assert!(g < self.n_left && h < self.n_right);
        g * self.n_right + h
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        debug_assert!(i < self.len());
        (i / self.n_right, i % self.n_right)
    }
}

/// Co-normal product: `(g, h) ~ (g', h')` iff `gg'` is an edge of `G` or
/// `hh'` is an edge of `H`.
pub fn conormal(g: &Graph, h: &Graph) -> Graph {
    let map = ProductIndexMap::for_factors(g, h);
    let n = map.len();
    let edges = (0..n).flat_map(|p| {
        let (a, b) = map.decode(p);
        (p + 1..n).filter_map(move |q| {
            let (c, d) = map.decode(q);
            (g.adjacent(a, c) || h.adjacent(b, d)).then_some((p, q))
        })
    });
    Graph::new(n, edges).expect("product of valid graphs is valid")
}

/// Cartesian product: equal in one coordinate, adjacent in the other.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    let map = ProductIndexMap::for_factors(g, h);
    let n = map.len();
    let edges = (0..n).flat_map(|p| {
        let (a, b) = map.decode(p);
        (p + 1..n).filter_map(move |q| {
            let (c, d) = map.decode(q);
            let adj = (a == c && h.adjacent(b, d)) || (g.adjacent(a, c) && b == d);
            adj.then_some((p, q))
        })
    });
    Graph::new(n, edges).expect("product of valid graphs is valid")
}

/// k-th co-normal power, folded from the left: `G, G*G, (G*G)*G, ...`.
/// The index convention makes the fold associative on the nose, so the
/// direction does not change the resulting graph.
pub fn conormal_power(g: &Graph, k: usize) -> Result<Graph, ProductError> {
    if k == 0 {
        return Err(ProductError::ZeroPower);
    }
    let mut acc = g.clone();
    for _ in 1..k {
        acc = conormal(&acc, g);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilyKind;

    /// Literal double-loop evaluation of the co-normal adjacency rule.
    fn conormal_oracle(g: &Graph, h: &Graph) -> Vec<(usize, usize)> {
        let m = ProductIndexMap::for_factors(g, h);
        let mut edges = Vec::new();
        for p in 0..m.len() {
            for q in p + 1..m.len() {
                let (a, b) = m.decode(p);
                let (c, d) = m.decode(q);
                if g.adjacent(a, c) || h.adjacent(b, d) {
                    edges.push((p, q));
                }
            }
        }
        edges
    }

    #[test]
    fn index_map_is_a_bijection() {
        let m = ProductIndexMap::new(3, 5);
        for g in 0..3 {
            for h in 0..5 {
                assert_eq!(m.decode(m.index(g, h)), (g, h));
            }
        }
        let all: std::collections::BTreeSet<usize> =
            (0..3).flat_map(|g| (0..5).map(move |h| m.index(g, h))).collect();
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn conormal_of_complete_factors_is_complete() {
        assert_eq!(conormal(&Graph::complete(2), &Graph::complete(2)), Graph::complete(4));
        assert_eq!(conormal(&Graph::complete(3), &Graph::complete(2)), Graph::complete(6));
    }

    #[test]
    fn conormal_with_k1_is_identity() {
        let k1 = Graph::complete(1);
        for g in [Graph::path(4), Graph::cycle(5), Graph::edgeless(3).unwrap()] {
            assert_eq!(conormal(&g, &k1), g);
            assert_eq!(cartesian(&g, &k1), g);
        }
    }

    #[test]
    fn conormal_matches_definition_oracle() {
        let g = Graph::path(3);
        let h = Graph::path(2);
        assert_eq!(conormal(&g, &h).edges(), conormal_oracle(&g, &h).as_slice());
    }

    #[test]
    fn cartesian_examples() {
        let c4 = cartesian(&Graph::complete(2), &Graph::complete(2));
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.size(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));

        let g = cartesian(&Graph::path(2), &Graph::path(3));
        assert_eq!((g.order(), g.size()), (6, 7));
    }

    #[test]
    fn cartesian_edge_count_formula() {
        for (g, h) in [
            (Graph::path(4), Graph::cycle(5)),
            (Graph::complete(3), Graph::path(2)),
            (Graph::cycle(3), Graph::cycle(4)),
        ] {
            let p = cartesian(&g, &h);
            assert_eq!(p.size(), g.size() * h.order() + h.size() * g.order());
        }
    }

    #[test]
    fn conormal_degree_identity() {
        for (g, h) in [
            (Graph::path(4), Graph::cycle(5)),
            (Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap(), Graph::path(3)),
            (Graph::edgeless(2).unwrap(), Graph::complete(3)),
        ] {
            let p = conormal(&g, &h);
            let m = ProductIndexMap::for_factors(&g, &h);
            for v in p.vertices() {
                let (a, b) = m.decode(v);
                let expected = g.degree(a) * h.order() + h.degree(b) * g.order()
                    - g.degree(a) * h.degree(b);
                assert_eq!(p.degree(v), expected);
            }
        }
    }

    #[test]
    fn power_folds() {
        assert_eq!(conormal_power(&Graph::complete(2), 3).unwrap(), Graph::complete(8));
        let p3 = Graph::path(3);
        assert_eq!(conormal_power(&p3, 1).unwrap(), p3);
        assert_eq!(conormal_power(&p3, 2).unwrap(), conormal(&p3, &p3));
        assert!(matches!(conormal_power(&p3, 0), Err(ProductError::ZeroPower)));
    }

    #[test]
    fn conormal_associativity_on_the_nose() {
        // all graphs on at most 3 vertices
        let mut small = Vec::new();
        for n in 1..=3usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0..1u32 << pairs.len() {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                small.push(Graph::new(n, edges).unwrap());
            }
        }
        for f in &small {
            for g in &small {
                for h in &small {
                    assert_eq!(conormal(&conormal(f, g), h), conormal(f, &conormal(g, h)));
                }
            }
        }
    }

    #[test]
    fn family_kind_is_data() {
        // keeps the enum wired through serde for the CLI
        let k: FamilyKind = serde_json::from_str("\"cycle\"").unwrap();
        assert_eq!(k, FamilyKind::Cycle);
    }
}
