//! Finite simple undirected graphs on dense vertex ids, plus the
//! neighbourhood, clique and domination primitives used everywhere else.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest graph accepted by [`Graph::domination_number`].
pub const DOMINATION_LIMIT: usize = 24;

/// A set of vertex ids, stored as a bitset sized to the owning graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(capacity))
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        VertexSet(bits)
    }

    pub fn from_vertices(capacity: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(capacity);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Number of ids this set can hold (the order of its graph).
    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.0.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(&self.0 & &other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(&self.0 | &other.0)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.0.clone();
        bits.difference_with(&other.0);
        VertexSet(bits)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Grid cell `(i, j)` a vertex belongs to.
pub type Cell = (usize, usize);

/// A finite simple undirected graph with vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    labels: Option<Vec<Cell>>,
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Graph {
            adjacency: vec![VertexSet::empty(order); order],
            labels: None,
        }
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut graph = Graph::empty(order);
        for (u, v) in edges {
            graph.check_vertex(u)?;
            graph.check_vertex(v)?;
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            if graph.has_edge(u, v) {
                return Err(Error::input(format!("duplicate edge {{{u}, {v}}}")));
            }
            graph.add_edge_unchecked(u, v);
        }
        Ok(graph)
    }

    /// Attaches grid-cell labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<Cell>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::input(format!(
                "{} labels given for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Open neighbourhood of `v`. Panics when `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            edges.extend(nbrs.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        edges
    }

    pub fn labels(&self) -> Option<&[Cell]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<Cell> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| v >= self.order()) {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            }),
            None => Ok(()),
        }
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.closed_neighborhood_unchecked(v))
    }

    pub(crate) fn closed_neighborhood_unchecked(&self, v: usize) -> VertexSet {
        let mut set = VertexSet::empty(self.order());
        set.0.union_with(&self.adjacency[v].0);
        set.insert(v);
        set
    }

    pub fn is_clique(&self, set: &VertexSet) -> Result<bool> {
        self.check_set(set)?;
        Ok(self.is_clique_unchecked(set))
    }

    pub(crate) fn is_clique_unchecked(&self, set: &VertexSet) -> bool {
        let size = set.len();
        set.iter().all(|v| self.adjacency[v].intersection_len(set) == size - 1)
    }

    /// A vertex is simplicial when its closed neighbourhood is a clique.
    pub fn is_simplicial(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.is_clique_unchecked(&self.closed_neighborhood_unchecked(v)))
    }

    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.order();
        VertexSet::from_vertices(n, (0..n).filter(|&v| self.degree(v) + 1 == n))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n).all(|v| self.degree(v) + 1 == n)
    }

    /// The induced subgraph `G - U`, relabelled densely in increasing id order.
    pub fn induced_delete(&self, removed: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(removed)?;
        let keep = self.vertices().difference(removed);
        Ok(self.induced_on(&keep))
    }

    /// The induced subgraph on `keep`, relabelled densely in increasing id order.
    pub fn induced_on(&self, keep: &VertexSet) -> InducedSubgraph {
        let original: Vec<usize> = keep.iter().filter(|&v| v < self.order()).collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut graph = Graph::empty(original.len());
        for (i, &v) in original.iter().enumerate() {
            for w in self.adjacency[v].iter() {
                let j = local[w];
                if j != usize::MAX && j > i {
                    graph.add_edge_unchecked(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            graph.labels = Some(original.iter().map(|&v| labels[v]).collect());
        }
        InducedSubgraph { graph, original }
    }

    /// Exact domination number by exhaustive search over subsets of
    /// increasing cardinality.
    pub fn domination_number(&self) -> Result<usize> {
        let n = self.order();
        if n == 0 {
            return Err(Error::input("domination number of the empty graph"));
        }
        if n > DOMINATION_LIMIT {
            return Err(Error::Capacity {
                what: "domination number",
                size: n,
                limit: DOMINATION_LIMIT,
            });
        }
        let closed: Vec<u32> = (0..n)
            .map(|v| self.adjacency[v].iter().fold(1u32 << v, |acc, w| acc | (1 << w)))
            .collect();
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        for size in 1..=n {
            // Gosper's hack: every n-bit mask with `size` bits set.
            let mut mask: u64 = (1u64 << size) - 1;
            while mask < (1u64 << n) {
                let covered = (0..n)
                    .filter(|&v| mask & (1 << v) != 0)
                    .fold(0u32, |acc, v| acc | closed[v]);
                if covered == all {
                    return Ok(size);
                }
                let low = mask & mask.wrapping_neg();
                let ripple = mask + low;
                mask = (((ripple ^ mask) >> 2) / low) | ripple;
            }
        }
        unreachable!("the whole vertex set dominates")
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = VertexSet::empty(n);
        let mut components = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut component = VertexSet::empty(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                component.insert(v);
                for w in self.adjacency[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    // Queries restricted to the induced subgraph on `within`, without
    // materialising it.

    pub(crate) fn degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.adjacency[v].intersection_len(within)
    }

    pub(crate) fn neighbors_within(&self, v: usize, within: &VertexSet) -> VertexSet {
        self.adjacency[v].intersection(within)
    }

    pub(crate) fn is_universal_within(&self, v: usize, within: &VertexSet) -> bool {
        self.degree_within(v, within) + 1 == within.len()
    }

    pub(crate) fn is_simplicial_within(&self, v: usize, within: &VertexSet) -> bool {
        let mut closed = self.neighbors_within(v, within);
        closed.insert(v);
        self.is_clique_unchecked(&closed)
    }

    /// `within \ N[u]`.
    pub(crate) fn delete_closed_neighborhood(&self, u: usize, within: &VertexSet) -> VertexSet {
        let mut rest = within.difference(&self.adjacency[u]);
        rest.remove(u);
        rest
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .field("labels", &self.labels)
            .finish()
    }
}

/// An induced subgraph together with the original id of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the id in the parent graph of local vertex `i`.
    pub original: Vec<usize>,
}

/// Wire format: `{"n": 3, "edges": [[0, 1], [1, 2]], "labels": [[0, 0], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<[usize; 2]>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        let graph = Graph::from_edges(json.n, json.edges.into_iter().map(|[u, v]| (u, v)))?;
        match json.labels {
            Some(labels) => graph.with_labels(labels.into_iter().map(|[i, j]| (i, j)).collect()),
            None => Ok(graph),
        }
    }
}

impl From<Graph> for GraphJson {
    fn from(graph: Graph) -> Self {
        GraphJson {
            n: graph.order(),
            edges: graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: graph.labels.map(|l| l.into_iter().map(|(i, j)| [i, j]).collect()),
        }
    }
}
