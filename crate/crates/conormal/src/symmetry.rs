//! Automorphism groups, rigidity, isomorphism testing, and product
//! automorphisms.
//!
//! Groups are stored as explicit element lists rather than generator sets:
//! verifying that a labeling is distinguishing means iterating every
//! non-trivial element, and the stabilizer of a labeling is an arbitrary
//! subgroup, so generators of the full group would not be enough.

use crate::graph::Graph;
use crate::products::ProductIndexMap;
use crate::search::{search_isomorphisms, SearchMode, SearchStop};
use crate::Budget;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("permutation degree {got} does not match expected {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("image is not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("swap form requires factors of equal order, got {left} and {right}")]
    SwapOrderMismatch { left: usize, right: usize },
    #[error("permutation is not an automorphism of the graph")]
    NotAnAutomorphism,
    #[error("search budget exceeded: explored {explored} nodes, limit {limit}")]
    BudgetExceeded { limit: u64, explored: u64 },
    #[error("search deadline exceeded")]
    Timeout,
}

impl From<SearchStop> for SymmetryError {
    fn from(stop: SearchStop) -> Self {
        match stop {
            SearchStop::Budget { limit, explored } => SymmetryError::BudgetExceeded { limit, explored },
            SearchStop::Timeout => SymmetryError::Timeout,
        }
    }
}

/// A bijection on vertex indices `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, SymmetryError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(SymmetryError::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_image(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0usize; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composition needs equal degrees");
        Permutation { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.image.len()];
        let mut wrote = false;
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
                v = self.image[v];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// The complete automorphism group of a graph, identity first.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl AutomorphismGroup {
    fn new(degree: usize, mut elements: Vec<Permutation>) -> Self {
        debug_assert!(!elements.is_empty());
        if !elements[0].is_identity() {
            let pos = elements
                .iter()
                .position(Permutation::is_identity)
                .expect("automorphism group contains the identity");
            elements.swap(0, pos);
        }
        AutomorphismGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    /// All elements except the identity.
    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> {
        self.elements[1..].iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.iter().any(|e| e == p)
    }
}

/// True iff `p` maps edges to edges and non-edges to non-edges.
pub fn is_automorphism(g: &Graph, p: &Permutation) -> Result<bool, SymmetryError> {
    if p.degree() != g.order() {
        return Err(SymmetryError::DegreeMismatch { got: p.degree(), expected: g.order() });
    }
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if g.adjacent(u, v) != g.adjacent(p.apply(u), p.apply(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates the full automorphism group by individualization-refinement
/// backtracking. Exact and complete; errors out when the node budget is
/// exhausted rather than returning a partial group.
pub fn automorphisms(g: &Graph, budget: &Budget) -> Result<AutomorphismGroup, SymmetryError> {
    let colors = vec![0u32; g.order()];
    let found = search_isomorphisms(g, g, &colors, &colors, SearchMode::Full, budget)?;
    let elements: Vec<Permutation> =
        found.into_iter().map(Permutation::from_image_unchecked).collect();
    Ok(AutomorphismGroup::new(g.order(), elements))
}

/// Automorphism enumeration constrained to preserve the given vertex
/// colors; the distinguishing solvers use this as a labeling-stabilizer
/// check without materializing the full group.
pub(crate) fn colored_automorphism_exists(
    g: &Graph,
    colors: &[u32],
    budget: &Budget,
) -> Result<bool, SymmetryError> {
    let found = search_isomorphisms(g, g, colors, colors, SearchMode::FindNonIdentity, budget)?;
    Ok(!found.is_empty())
}

/// True iff the automorphism group is trivial.
pub fn is_rigid(g: &Graph, budget: &Budget) -> Result<bool, SymmetryError> {
    let colors = vec![0u32; g.order()];
    let found = search_isomorphisms(g, g, &colors, &colors, SearchMode::FindNonIdentity, budget)?;
    Ok(found.is_empty())
}

/// Searches for an edge-preserving bijection; the returned witness has
/// been verified pair-by-pair against both graphs.
pub fn are_isomorphic(
    g: &Graph,
    h: &Graph,
    budget: &Budget,
) -> Result<Option<Permutation>, SymmetryError> {
    let gc = vec![0u32; g.order()];
    let hc = vec![0u32; h.order()];
    let found = search_isomorphisms(g, h, &gc, &hc, SearchMode::FindAny, budget)?;
    Ok(found.into_iter().next().map(Permutation::from_image_unchecked))
}

/// Builds the product map `(g, h) -> (a(g), b(h))`, or the coordinate
/// exchange `(g, h) -> (b(h), a(g))` when `swap` is set (equal factor
/// orders required).
pub fn product_automorphism(
    a: &Permutation,
    b: &Permutation,
    swap: bool,
    map: &ProductIndexMap,
) -> Result<Permutation, SymmetryError> {
    if a.degree() != map.n_left() {
        return Err(SymmetryError::DegreeMismatch { got: a.degree(), expected: map.n_left() });
    }
    if b.degree() != map.n_right() {
        return Err(SymmetryError::DegreeMismatch { got: b.degree(), expected: map.n_right() });
    }
    if swap && map.n_left() != map.n_right() {
        return Err(SymmetryError::SwapOrderMismatch { left: map.n_left(), right: map.n_right() });
    }
    let image = (0..map.len())
        .map(|i| {
            let (g, h) = map.decode(i);
            if swap {
                map.index(b.apply(h), a.apply(g))
            } else {
                map.index(a.apply(g), b.apply(h))
            }
        })
        .collect();
    Ok(Permutation::from_image_unchecked(image))
}

/// Decides whether every automorphism of the co-normal product splits as a
/// pair of factor automorphisms, i.e. whether the product group is exactly
/// `Aut(G) x Aut(H)` under the index map.
pub fn aut_factorizes(g: &Graph, h: &Graph, budget: &Budget) -> Result<bool, SymmetryError> {
    let aut_g = automorphisms(g, budget)?;
    let aut_h = automorphisms(h, budget)?;
    let product = crate::products::conormal(g, h);
    let aut_p = automorphisms(&product, budget)?;
    if aut_p.order() != aut_g.order() * aut_h.order() {
        return Ok(false);
    }
    let map = ProductIndexMap::for_factors(g, h);
    let mut seen: std::collections::HashSet<&[usize]> =
        aut_p.elements().iter().map(Permutation::image).collect();
    for a in aut_g.elements() {
        for b in aut_h.elements() {
            let lambda = product_automorphism(a, b, false, &map)?;
            if !seen.remove(lambda.image()) {
                return Ok(false);
            }
        }
    }
    Ok(seen.is_empty())
}

/// The permutation a vertex automorphism induces on edge-list positions.
pub fn edge_action(g: &Graph, p: &Permutation) -> Result<Vec<usize>, SymmetryError> {
    if !is_automorphism(g, p)? {
        return Err(SymmetryError::NotAnAutomorphism);
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| {
            g.edge_index(p.apply(u), p.apply(v))
                .expect("automorphisms map edges to edges")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::conormal;

    /// All permutations of 0..n, for oracle filters.
    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
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
        heap(n, &mut items, &mut out);
        out.sort();
        out
    }

    fn naive_group(g: &Graph) -> Vec<Vec<usize>> {
        all_permutations(g.order())
            .into_iter()
            .filter(|img| {
                let p = Permutation::from_image(img.clone()).unwrap();
                is_automorphism(g, &p).unwrap()
            })
            .collect()
    }

    #[test]
    fn is_automorphism_examples() {
        let p4 = Graph::path(4);
        assert!(is_automorphism(&p4, &Permutation::identity(4)).unwrap());
        let reversal = Permutation::from_image(vec![3, 2, 1, 0]).unwrap();
        assert!(is_automorphism(&p4, &reversal).unwrap());
        let transposition = Permutation::from_image(vec![1, 0, 2, 3]).unwrap();
        assert!(!is_automorphism(&p4, &transposition).unwrap());
        assert!(is_automorphism(&p4, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::from_image(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_image(vec![0, 3]).is_err());
        let p = Permutation::from_image(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(format!("{p:?}"), "(0 1 2)");
    }

    #[test]
    fn group_matches_naive_filter_on_small_graphs() {
        for g in [
            Graph::path(4),
            Graph::cycle(4),
            Graph::cycle(5),
            Graph::complete(4),
            Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
            Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)]).unwrap(),
            Graph::edgeless(5).unwrap(),
        ] {
            let fast = automorphisms(&g, &Budget::default()).unwrap();
            let mut fast_images: Vec<Vec<usize>> =
                fast.elements().iter().map(|p| p.image().to_vec()).collect();
            fast_images.sort();
            assert_eq!(fast_images, naive_group(&g), "graph {g:?}");
        }
    }

    #[test]
    fn family_group_orders() {
        for n in 2..=6 {
            let order = automorphisms(&Graph::complete(n), &Budget::default()).unwrap().order();
            assert_eq!(order, (1..=n).product::<usize>());
        }
        for n in 3..=8 {
            assert_eq!(automorphisms(&Graph::cycle(n), &Budget::default()).unwrap().order(), 2 * n);
        }
        for n in 2..=8 {
            assert_eq!(automorphisms(&Graph::path(n), &Budget::default()).unwrap().order(), 2);
        }
    }

    #[test]
    fn rigid_six_vertex_graph() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (1, 4)]).unwrap();
        assert_eq!(naive_group(&g).len(), 1);
        assert!(is_rigid(&g, &Budget::default()).unwrap());
        assert!(!is_rigid(&Graph::path(4), &Budget::default()).unwrap());
        assert!(is_rigid(&Graph::complete(1), &Budget::default()).unwrap());

        // the product of a rigid graph with itself has exactly the exchange
        let p = conormal(&g, &g);
        assert_eq!(automorphisms(&p, &Budget::default()).unwrap().order(), 2);
    }

    #[test]
    fn isomorphism_examples() {
        let b = Budget::default();
        assert!(are_isomorphic(&Graph::cycle(3), &Graph::complete(3), &b).unwrap().is_some());
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(are_isomorphic(&Graph::path(4), &star, &b).unwrap().is_none());

        let c5 = Graph::cycle(5);
        let witness = are_isomorphic(&c5, &c5.complement(), &b).unwrap().unwrap();
        for u in 0..5 {
            for v in u + 1..5 {
                assert_eq!(c5.adjacent(u, v), c5.complement().adjacent(witness.apply(u), witness.apply(v)));
            }
        }
    }

    #[test]
    fn product_automorphism_cases() {
        let p4 = Graph::path(4);
        let p3 = Graph::path(3);
        let map = ProductIndexMap::for_factors(&p4, &p3);

        let id = product_automorphism(
            &Permutation::identity(4),
            &Permutation::identity(3),
            false,
            &map,
        )
        .unwrap();
        assert!(id.is_identity());

        let rev = Permutation::from_image(vec![3, 2, 1, 0]).unwrap();
        let lambda = product_automorphism(&rev, &Permutation::identity(3), false, &map).unwrap();
        assert!(is_automorphism(&conormal(&p4, &p3), &lambda).unwrap());

        // coordinate exchange on a square product
        let sq = ProductIndexMap::new(3, 3);
        let ex = product_automorphism(
            &Permutation::identity(3),
            &Permutation::identity(3),
            true,
            &sq,
        )
        .unwrap();
        assert!(is_automorphism(&conormal(&p3, &p3), &ex).unwrap());
        assert!(product_automorphism(
            &Permutation::identity(4),
            &Permutation::identity(3),
            true,
            &map
        )
        .is_err());
    }

    #[test]
    fn factorization_examples() {
        let b = Budget::default();
        assert!(aut_factorizes(&Graph::path(4), &Graph::cycle(5), &b).unwrap());
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!aut_factorizes(&star, &Graph::path(4), &b).unwrap());
        assert!(!aut_factorizes(&Graph::complete(2), &Graph::complete(2), &b).unwrap());
    }

    #[test]
    fn edge_action_examples() {
        let p3 = Graph::path(3);
        let rev = Permutation::from_image(vec![2, 1, 0]).unwrap();
        assert_eq!(edge_action(&p3, &rev).unwrap(), vec![1, 0]);
        assert_eq!(edge_action(&p3, &Permutation::identity(3)).unwrap(), vec![0, 1]);

        let k2 = Graph::complete(2);
        let swap = Permutation::from_image(vec![1, 0]).unwrap();
        assert_eq!(edge_action(&k2, &swap).unwrap(), vec![0]);

        let not_auto = Permutation::from_image(vec![1, 0, 2, 3]).unwrap();
        assert!(matches!(
            edge_action(&Graph::path(4), &not_auto),
            Err(SymmetryError::NotAnAutomorphism)
        ));
    }

    #[test]
    fn composition_closure_spot_check() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [Graph::cycle(6), Graph::complete(4), Graph::path(5)] {
            let group = automorphisms(&g, &Budget::default()).unwrap();
            for _ in 0..32 {
                let a = &group.elements()[rng.gen_range(0..group.order())];
                let b = &group.elements()[rng.gen_range(0..group.order())];
                assert!(group.contains(&a.compose(b)));
                assert!(group.contains(&a.inverse()));
            }
        }
    }

    #[test]
    fn budget_error_reports_counts() {
        let g = Graph::complete(10);
        match automorphisms(&g, &Budget::with_node_limit(5_000)) {
            Err(SymmetryError::BudgetExceeded { limit, explored }) => {
                assert_eq!(limit, 5_000);
                assert!(explored > limit);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
