//! Explicit independence complexes.
//!
//! A simplex is a bitmask over at most [`EXPLICIT_VERTEX_LIMIT`] vertex ids.
//! The empty simplex (dimension -1) is a member of every complex.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph whose independence complex may be built explicitly.
pub const EXPLICIT_VERTEX_LIMIT: usize = 32;

/// Largest number of simplices an explicit complex may hold.
pub const EXPLICIT_SIMPLEX_LIMIT: usize = 1 << 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u32);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn from_bits(bits: u32) -> Self {
        Simplex(bits)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < EXPLICIT_VERTEX_LIMIT);
        Simplex(1 << v)
    }

    pub fn from_vertices(vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u32;
        for v in vertices {
            if v >= EXPLICIT_VERTEX_LIMIT {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: EXPLICIT_VERTEX_LIMIT,
                });
            }
            bits |= 1 << v;
        }
        Ok(Simplex(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|σ| - 1`, so the empty simplex has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        v < EXPLICIT_VERTEX_LIMIT && self.0 & (1 << v) != 0
    }

    pub fn with(self, v: usize) -> Self {
        Simplex(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        Simplex(self.0 & !(1 << v))
    }

    pub fn is_subset(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Simplex) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: Simplex) -> Self {
        Simplex(self.0 | other.0)
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// The smallest vertex, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Codimension-one faces, each paired with the vertex that was dropped.
    pub fn facets(self) -> impl Iterator<Item = (usize, Simplex)> {
        self.vertices().map(move |v| (v, self.without(v)))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension first, then by sorted vertex list.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.reverse_bits().cmp(&other.0.reverse_bits()).reverse())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        let mut seen = HashSet::new();
        if let Some(v) = vertices.iter().find(|&&v| !seen.insert(v)) {
            return Err(serde::de::Error::custom(format!("vertex {v} repeated in simplex")));
        }
        Simplex::from_vertices(vertices).map_err(serde::de::Error::custom)
    }
}

/// Counts `f_0, f_1, ..., f_dim` of nonempty simplices by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(self.0.iter().map(|&c| c as i64))
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub(crate) fn alternating_sum(counts: impl Iterator<Item = i64>) -> i64 {
    counts.enumerate().map(|(d, c)| if d % 2 == 0 { c } else { -c }).sum()
}

/// A downward-closed family of simplices, always containing the empty simplex.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    order: usize,
    /// `by_size[k]` holds the simplices with `k` vertices, sorted.
    by_size: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    fn from_simplices(order: usize, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_unstable();
        let top = simplices.last().map_or(0, |s| s.len());
        let mut by_size = vec![Vec::new(); top + 1];
        let mut index = HashMap::with_capacity(simplices.len());
        for (i, &s) in simplices.iter().enumerate() {
            index.insert(s, i);
            by_size[s.len()].push(s);
        }
        SimplicialComplex { order, by_size, index }
    }

    /// Number of ambient vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.index.contains_key(&s)
    }

    /// Dense position of `s` in the canonical (dimension, lexicographic) order.
    pub fn position(&self, s: Simplex) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// Number of simplices, the empty one included.
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn nonempty_count(&self) -> usize {
        self.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nonempty_count() == 0
    }

    pub fn dim(&self) -> isize {
        self.by_size.len() as isize - 2
    }

    /// All simplices, empty first, in canonical order.
    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.by_size.iter().skip(1).flatten().copied()
    }

    /// The `d`-simplices; `d = -1` gives the empty simplex.
    pub fn of_dim(&self, d: isize) -> &[Simplex] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|k| self.by_size.get(k))
            .map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.by_size.iter().skip(1).map(Vec::len).collect())
    }

    pub fn is_maximal(&self, s: Simplex) -> Result<bool> {
        if !self.contains(s) {
            return Err(Error::input(format!("simplex {s:?} is not in the complex")));
        }
        Ok(self.is_maximal_unchecked(s))
    }

    pub(crate) fn is_maximal_unchecked(&self, s: Simplex) -> bool {
        (0..self.order).all(|v| s.contains(v) || !self.contains(s.with(v)))
    }

    /// Every codimension-one pair `(α, β)` with `α ⊂ β`, face first,
    /// including `(∅, {v})`.
    pub fn hasse_edges(&self) -> Vec<(Simplex, Simplex)> {
        self.nonempty()
            .flat_map(|beta| beta.facets().map(move |(_, alpha)| (alpha, beta)))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }
}

/// Adjacency rows as bitmasks; requires `order <= 32`.
pub(crate) fn adjacency_masks(graph: &Graph) -> Vec<u32> {
    (0..graph.order())
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

pub(crate) fn vertex_set_mask(set: &VertexSet) -> u32 {
    set.iter().fold(0u32, |m, v| m | (1 << v))
}

fn check_explicit(graph: &Graph) -> Result<()> {
    if graph.order() > EXPLICIT_VERTEX_LIMIT {
        return Err(Error::Capacity {
            what: "explicit independence complex vertex count",
            size: graph.order(),
            limit: EXPLICIT_VERTEX_LIMIT,
        });
    }
    Ok(())
}

/// Independent subsets of `candidates`, the empty set included, by branching
/// on the highest remaining vertex: leave it out, or take it and drop its
/// neighbours.
pub(crate) fn independent_sets(adjacency: &[u32], candidates: u32) -> Result<Vec<Simplex>> {
    fn branch(adj: &[u32], candidates: u32, chosen: u32, out: &mut Vec<Simplex>) -> bool {
        if candidates == 0 {
            out.push(Simplex(chosen));
            return out.len() <= EXPLICIT_SIMPLEX_LIMIT;
        }
        let top = 31 - candidates.leading_zeros() as usize;
        let rest = candidates & !(1 << top);
        branch(adj, rest, chosen, out) && branch(adj, rest & !adj[top], chosen | (1 << top), out)
    }
    let mut out = Vec::new();
    if branch(adjacency, candidates, 0, &mut out) {
        Ok(out)
    } else {
        Err(Error::Capacity {
            what: "explicit independence complex simplex count",
            size: out.len(),
            limit: EXPLICIT_SIMPLEX_LIMIT,
        })
    }
}

/// `I(G)`: all independent sets of `graph`.
pub fn independence_complex(graph: &Graph) -> Result<SimplicialComplex> {
    independence_complex_within(graph, &graph.vertices())
}

/// `I(G[S])` for the induced subgraph on `within`, in the ids of `graph`.
pub fn independence_complex_within(graph: &Graph, within: &VertexSet) -> Result<SimplicialComplex> {
    check_explicit(graph)?;
    let simplices = independent_sets(&adjacency_masks(graph), vertex_set_mask(within))?;
    Ok(SimplicialComplex::from_simplices(graph.order(), simplices))
}

/// Checks the four-block partition of `I(G)` around a vertex `v` whose open
/// neighbourhood is a clique:
///
/// 1. `⋃_u I(G - N[u])` over `u ∈ N(v)`,
/// 2. the rest of `I(G - N[v])`,
/// 3. `{α ∪ {u} : α ∈ I(G - N[u])}` for each `u ∈ N(v)`,
/// 4. `{α ∪ {v} : α ∈ I(G - N[v])}`.
///
/// Returns true iff the blocks are pairwise disjoint, cover `I(G)` exactly,
/// and block 1 sits inside `I(G - N[v])`.
pub fn partition_check(graph: &Graph, v: usize) -> Result<bool> {
    graph.check_vertex(v)?;
    check_explicit(graph)?;
    let nbrs = graph.neighbors(v).clone();
    if nbrs.is_empty() {
        return Err(Error::input(format!("vertex {v} is isolated")));
    }
    if !graph.is_clique_unchecked(&nbrs) {
        return Err(Error::input(format!("N({v}) is not a clique")));
    }
    let adj = adjacency_masks(graph);
    let all = vertex_set_mask(&graph.vertices());
    let outside = |w: usize| all & !adj[w] & !(1 << w);

    let whole: HashSet<Simplex> = independent_sets(&adj, all)?.into_iter().collect();
    let rest_v: HashSet<Simplex> = independent_sets(&adj, outside(v))?.into_iter().collect();

    let mut block1 = HashSet::new();
    let mut block3 = Vec::new();
    for u in nbrs.iter() {
        for alpha in independent_sets(&adj, outside(u))? {
            block1.insert(alpha);
            block3.push(alpha.with(u));
        }
    }
    let block2: Vec<Simplex> = rest_v.iter().filter(|s| !block1.contains(s)).copied().collect();
    let block4: Vec<Simplex> = rest_v.iter().map(|s| s.with(v)).collect();

    if !block1.is_subset(&rest_v) {
        return Ok(false);
    }
    let mut seen = HashSet::with_capacity(whole.len());
    let every = block1.iter().chain(&block2).chain(&block3).chain(&block4);
    for &s in every {
        if !seen.insert(s) || !whole.contains(&s) {
            return Ok(false);
        }
    }
    Ok(seen.len() == whole.len())
}
