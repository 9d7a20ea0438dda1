//! Recursive construction of acyclic matchings on independence complexes.
//!
//! Everything is expressed in the vertex ids of the input graph: a recursion
//! node is the induced subgraph on a vertex subset `S`, and a matching on
//! `I(G[S])` lifts into the parent complex by adding a vertex to both ends of
//! each pair.
//!
//! At a node with a simplicial, non-isolated, non-universal vertex `v`, the
//! matching on `I(G[S])` is assembled from matchings `V_u` on
//! `I(G[S] - N[u])` for the non-universal neighbours `u` of `v`:
//!
//! 1. every pair `(α, β)` of `V_u` with `α ≠ ∅` becomes `(α + u, β + u)`;
//! 2. `{u}` is matched with `{u, x_u}` for one chosen `V_u`-critical vertex `x_u`;
//! 3. every `α` in `I(G[S] - N[v])`, the empty set included, is matched with `α + v`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chordal::{is_chordal, maximum_cardinality_search, verify_peo};
use crate::complex::{
    adjacency_masks, independence_complex_within, independent_sets, vertex_set_mask, Simplex, EXPLICIT_VERTEX_LIMIT,
};
use crate::error::{Error, Result};
use crate::generators::{grid_adjacent, GridSpec};
use crate::graph::{Graph, VertexSet};
use crate::matching::{critical_from_index, find_v_cycle, verify_matching, CriticalFVector, Matching};

/// How the eliminated vertex is chosen at each recursion node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Driver {
    /// Head of a perfect elimination ordering from maximum cardinality search.
    Chordal,
    /// Smallest vertex of the bottom-right corner cell of the current sub-grid.
    Grid,
    /// Smallest simplicial vertex.
    Auto,
}

impl Driver {
    pub fn name(self) -> &'static str {
        match self {
            Driver::Chordal => "chordal",
            Driver::Grid => "grid",
            Driver::Auto => "auto",
        }
    }
}

/// A verified acyclic matching on `I(G[S])` with its critical simplices.
///
/// Values of this type are only produced after `verify_matching` and the
/// acyclicity check have passed on the node's complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    vertices: VertexSet,
    matching: Matching,
    special_zero: Option<Simplex>,
    critical: Vec<Simplex>,
    critical_f: CriticalFVector,
}

impl ConstructionResult {
    /// Verifies `matching` on `I(G[vertices])` and records its critical cells.
    pub fn from_matching(
        graph: &Graph,
        vertices: VertexSet,
        mut matching: Matching,
        special_zero: Option<Simplex>,
    ) -> Result<Self> {
        let complex = independence_complex_within(graph, &vertices)?;
        if let Some(cycle) = find_v_cycle(&complex, &matching)? {
            return Err(Error::Verification(format!("matching has a closed V-path {cycle:?}")));
        }
        let index = verify_matching(&complex, &matching)?;
        let (critical, critical_f) = critical_from_index(&complex, &index);
        if let Some(z) = special_zero {
            if z.len() != 1 || critical.binary_search(&z).is_err() {
                return Err(Error::Verification(format!("{z:?} is not a critical 0-simplex")));
            }
        }
        matching.sort();
        Ok(ConstructionResult {
            vertices,
            matching,
            special_zero,
            critical,
            critical_f,
        })
    }

    /// Vertex subset `S` (original ids) of the induced subgraph.
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// The critical 0-simplex that is allowed to be non-maximal.
    pub fn special_zero(&self) -> Option<Simplex> {
        self.special_zero
    }

    /// Critical simplices in canonical order.
    pub fn critical(&self) -> &[Simplex] {
        &self.critical
    }

    pub fn critical_f(&self) -> &CriticalFVector {
        &self.critical_f
    }

    pub fn critical_zeros(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.critical.iter().copied().filter(|s| s.len() == 1)
    }
}

/// What a recursion node did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// No vertices: only the empty simplex.
    Empty,
    /// `v` is isolated; `I(G[S])` is a cone with apex `v`.
    Isolated { v: usize },
    /// `G[S]` is complete; every vertex is a critical, maximal 0-simplex.
    Complete,
    /// Elimination of the simplicial vertex `v`.
    Extend {
        v: usize,
        /// `N(v)` within `S`, increasing.
        neighbors: Vec<usize>,
        /// Number of universal vertices of `G[S]`.
        universal: usize,
        /// For each neighbour `u`, the vertex set of `G[S] - N[u]`
        /// (`None` when `u` is universal and that graph is empty).
        subproblems: Vec<(usize, Option<VertexSet>)>,
    },
}

/// One memoised recursion node.
#[derive(Debug, Clone)]
pub struct NodeRecord {
    pub vertices: VertexSet,
    pub step: Step,
    pub critical_f: CriticalFVector,
}

/// Chooses the step at node `S` under `driver`. Shared by the explicit and
/// the count-only recursions so both visit the same subproblems.
pub(crate) fn choose_step(graph: &Graph, within: &VertexSet, driver: Driver, grid: Option<&GridSpec>) -> Result<Step> {
    if within.is_empty() {
        return Ok(Step::Empty);
    }
    let v = match driver {
        Driver::Grid => {
            let spec = grid.ok_or_else(|| Error::input("grid driver needs a grid spec"))?;
            match grid_corner(graph, within, spec)? {
                None => return Ok(Step::Complete),
                Some(v) => v,
            }
        }
        Driver::Chordal | Driver::Auto => {
            if let Some(v) = within.iter().find(|&v| graph.degree_within(v, within) == 0) {
                return Ok(Step::Isolated { v });
            }
            if graph.is_clique_unchecked(within) {
                return Ok(Step::Complete);
            }
            if driver == Driver::Chordal {
                let induced = graph.induced_on(within);
                let order = maximum_cardinality_search(&induced.graph);
                if !verify_peo(&induced.graph, &order)? {
                    return Err(Error::input(format!(
                        "induced subgraph on {:?} is not chordal",
                        within.to_vec()
                    )));
                }
                induced.original[order.first().expect("nonempty")]
            } else {
                within
                    .iter()
                    .find(|&v| graph.is_simplicial_within(v, within))
                    .ok_or_else(|| Error::Unsupported {
                        vertices: within.to_vec(),
                    })?
            }
        }
    };
    let neighbors = graph.neighbors_within(v, within);
    let mut universal = 0;
    let mut subproblems = Vec::with_capacity(neighbors.len());
    for u in neighbors.iter() {
        if graph.is_universal_within(u, within) {
            universal += 1;
            subproblems.push((u, None));
        } else {
            subproblems.push((u, Some(graph.delete_closed_neighborhood(u, within))));
        }
    }
    Ok(Step::Extend {
        v,
        neighbors: neighbors.to_vec(),
        universal,
        subproblems,
    })
}

/// For a grid recursion node: the sub-grid on rows `0..=a`, columns `b..=n`.
/// Returns the vertex to eliminate, or `None` when the sub-grid is a single
/// row or column (a complete graph).
fn grid_corner(graph: &Graph, within: &VertexSet, spec: &GridSpec) -> Result<Option<usize>> {
    let labels = graph
        .labels()
        .ok_or_else(|| Error::input("grid driver needs labelled vertices"))?;
    let rows = within.iter().map(|v| labels[v].0).max().expect("nonempty");
    let first_col = within.iter().map(|v| labels[v].1).min().expect("nonempty");
    let expected = VertexSet::from_vertices(
        graph.order(),
        (0..graph.order()).filter(|&v| labels[v].0 <= rows && labels[v].1 >= first_col),
    );
    if &expected != within {
        return Err(Error::input(format!(
            "vertex set {:?} is not an anchored sub-grid",
            within.to_vec()
        )));
    }
    if rows == 0 || first_col == spec.n() {
        return Ok(None);
    }
    Ok(within.iter().find(|&v| labels[v] == (rows, first_col)))
}

/// Checks that `graph` is `grid_graph(spec)` up to vertex numbering: the
/// label multiplicities are the cell sizes and adjacency follows the grid
/// rule.
pub fn validate_grid_labels(graph: &Graph, spec: &GridSpec) -> Result<()> {
    let labels = graph.labels().ok_or_else(|| Error::input("graph has no grid labels"))?;
    let mut counts = vec![vec![0usize; spec.n() + 1]; spec.m() + 1];
    for &(i, j) in labels {
        if i > spec.m() || j > spec.n() {
            return Err(Error::input(format!("label ({i}, {j}) outside the grid")));
        }
        counts[i][j] += 1;
    }
    if counts != spec.sizes() {
        return Err(Error::input("label multiplicities differ from the grid spec"));
    }
    for x in 0..graph.order() {
        for y in x + 1..graph.order() {
            if graph.has_edge(x, y) != grid_adjacent(labels[x], labels[y]) {
                return Err(Error::input(format!(
                    "adjacency of {x} and {y} disagrees with their grid labels"
                )));
            }
        }
    }
    Ok(())
}

fn isolated_within(graph: &Graph, within: &VertexSet, v: usize) -> Result<ConstructionResult> {
    let adj = adjacency_masks(graph);
    let rest = vertex_set_mask(within) & !(1 << v);
    let matching = independent_sets(&adj, rest)?
        .into_iter()
        .map(|alpha| (alpha, alpha.with(v)))
        .collect();
    ConstructionResult::from_matching(graph, within.clone(), matching, Some(Simplex::singleton(v)))
}

fn complete_within(graph: &Graph, within: &VertexSet) -> Result<ConstructionResult> {
    ConstructionResult::from_matching(graph, within.clone(), Matching::default(), None)
}

/// The `x_u` choice: the sub-result's special vertex when it is not maximal
/// in `I(G[S_u])`, otherwise the smallest critical vertex.
pub(crate) fn choose_partner(graph: &Graph, sub: &ConstructionResult) -> Option<Simplex> {
    if let Some(z) = sub.special_zero {
        let x = z.first().expect("singleton");
        if !graph.is_universal_within(x, &sub.vertices) {
            return Some(z);
        }
    }
    sub.critical_zeros().next()
}

fn extend_within(
    graph: &Graph,
    within: &VertexSet,
    v: usize,
    subs: &HashMap<usize, Arc<ConstructionResult>>,
) -> Result<ConstructionResult> {
    if !within.contains(v) {
        return Err(Error::input(format!("vertex {v} is not in the node")));
    }
    let neighbors = graph.neighbors_within(v, within);
    if neighbors.is_empty() {
        return Err(Error::input(format!("vertex {v} is isolated")));
    }
    if graph.is_universal_within(v, within) {
        return Err(Error::input(format!("vertex {v} is universal")));
    }
    if !graph.is_simplicial_within(v, within) {
        return Err(Error::input(format!("vertex {v} is not simplicial")));
    }
    let mut matching = Matching::default();
    for u in neighbors.iter() {
        if graph.is_universal_within(u, within) {
            continue;
        }
        let expected = graph.delete_closed_neighborhood(u, within);
        let sub = subs
            .get(&u)
            .ok_or_else(|| Error::input(format!("no sub-matching supplied for neighbour {u}")))?;
        if sub.vertices != expected {
            return Err(Error::input(format!(
                "sub-matching for {u} is on {:?}, expected {:?}",
                sub.vertices.to_vec(),
                expected.to_vec()
            )));
        }
        for &(alpha, beta) in sub.matching.pairs() {
            if !alpha.is_empty() {
                matching.push(alpha.with(u), beta.with(u));
            }
        }
        let x = choose_partner(graph, sub).expect("nonempty complex has a critical vertex");
        matching.push(Simplex::singleton(u), x.with(u));
    }
    let adj = adjacency_masks(graph);
    let rest = vertex_set_mask(&graph.delete_closed_neighborhood(v, within));
    for alpha in independent_sets(&adj, rest)? {
        matching.push(alpha, alpha.with(v));
    }
    ConstructionResult::from_matching(graph, within.clone(), matching, Some(Simplex::singleton(v)))
}

/// Matching on `I(G)` for a graph with an isolated vertex `v`: every
/// `α` not containing `v` is matched with `α + v`, leaving `{v}` as the only
/// critical simplex.
pub fn match_isolated(graph: &Graph, v: usize) -> Result<ConstructionResult> {
    graph.check_vertex(v)?;
    if graph.degree(v) != 0 {
        return Err(Error::input(format!("vertex {v} is not isolated")));
    }
    isolated_within(graph, &graph.vertices(), v)
}

/// The empty matching on the independence complex of a complete graph.
pub fn match_complete(graph: &Graph) -> Result<ConstructionResult> {
    if graph.order() == 0 || !graph.is_complete() {
        return Err(Error::input("graph is not a nonempty complete graph"));
    }
    complete_within(graph, &graph.vertices())
}

/// One elimination step at a simplicial vertex `v` with
/// `{v} ⊊ N[v] ⊊ V(G)`, given matchings on `I(G - N[u])` for every
/// non-universal neighbour `u`.
pub fn extend_matching(
    graph: &Graph,
    v: usize,
    subs: &HashMap<usize, ConstructionResult>,
) -> Result<ConstructionResult> {
    graph.check_vertex(v)?;
    let shared: HashMap<usize, Arc<ConstructionResult>> = subs.iter().map(|(&u, r)| (u, Arc::new(r.clone()))).collect();
    extend_within(graph, &graph.vertices(), v, &shared)
}

/// Memoised recursive construction over induced subgraphs.
pub struct MorseBuilder<'g> {
    graph: &'g Graph,
    driver: Driver,
    grid: Option<GridSpec>,
    memo: HashMap<VertexSet, Arc<ConstructionResult>>,
    trace: Vec<NodeRecord>,
}

impl<'g> MorseBuilder<'g> {
    /// For [`Driver::Grid`] the grid spec is read off the vertex labels.
    pub fn new(graph: &'g Graph, driver: Driver) -> Result<Self> {
        if graph.order() > EXPLICIT_VERTEX_LIMIT {
            return Err(Error::Capacity {
                what: "explicit construction vertex count",
                size: graph.order(),
                limit: EXPLICIT_VERTEX_LIMIT,
            });
        }
        let grid = match driver {
            Driver::Grid => {
                let spec = GridSpec::from_labels(graph)?;
                validate_grid_labels(graph, &spec)?;
                Some(spec)
            }
            Driver::Chordal if !is_chordal(graph) => return Err(Error::input("graph is not chordal")),
            _ => None,
        };
        Ok(MorseBuilder {
            graph,
            driver,
            grid,
            memo: HashMap::new(),
            trace: Vec::new(),
        })
    }

    pub fn driver(&self) -> Driver {
        self.driver
    }

    pub fn build(&mut self) -> Result<Arc<ConstructionResult>> {
        let all = self.graph.vertices();
        self.build_within(&all)
    }

    pub fn build_within(&mut self, within: &VertexSet) -> Result<Arc<ConstructionResult>> {
        if let Some(done) = self.memo.get(within) {
            return Ok(Arc::clone(done));
        }
        let step = choose_step(self.graph, within, self.driver, self.grid.as_ref())?;
        let result = match &step {
            Step::Empty | Step::Complete => complete_within(self.graph, within)?,
            Step::Isolated { v } => isolated_within(self.graph, within, *v)?,
            Step::Extend { v, subproblems, .. } => {
                let mut subs = HashMap::new();
                for (u, sub) in subproblems {
                    if let Some(sub) = sub {
                        subs.insert(*u, self.build_within(sub)?);
                    }
                }
                extend_within(self.graph, within, *v, &subs)?
            }
        };
        let result = Arc::new(result);
        self.trace.push(NodeRecord {
            vertices: within.clone(),
            step,
            critical_f: result.critical_f.clone(),
        });
        self.memo.insert(within.clone(), Arc::clone(&result));
        Ok(result)
    }

    /// Every distinct node built so far, children before parents.
    pub fn trace(&self) -> &[NodeRecord] {
        &self.trace
    }

    pub fn node(&self, within: &VertexSet) -> Option<&Arc<ConstructionResult>> {
        self.memo.get(within)
    }
}

/// Matching on `I(G)` for a chordal graph: all critical simplices except
/// possibly one 0-simplex are maximal.
pub fn build_chordal_matching(graph: &Graph) -> Result<ConstructionResult> {
    build_with(graph, Driver::Chordal)
}

/// Matching on `I(G)` for `G = grid_graph(spec)` (up to vertex numbering).
pub fn build_grid_matching(graph: &Graph, spec: &GridSpec) -> Result<ConstructionResult> {
    validate_grid_labels(graph, spec)?;
    build_with(graph, Driver::Grid)
}

/// Eliminates the smallest simplicial vertex at every stage; fails with
/// [`Error::Unsupported`] when some stage has none.
pub fn build_auto(graph: &Graph) -> Result<ConstructionResult> {
    build_with(graph, Driver::Auto)
}

pub fn build_with(graph: &Graph, driver: Driver) -> Result<ConstructionResult> {
    let mut builder = MorseBuilder::new(graph, driver)?;
    let result = builder.build()?;
    drop(builder);
    Ok(Arc::try_unwrap(result).unwrap_or_else(|shared| (*shared).clone()))
}
