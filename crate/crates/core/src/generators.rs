//! Graph families: blown-up grid-poset comparability graphs, power graphs of
//! cyclic groups of order `p^m q^n`, random chordal graphs and a few standard
//! graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cell, Graph};

/// Cell sizes `|V_{i,j}|` for `0 <= i <= m`, `0 <= j <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    sizes: Vec<Vec<usize>>,
}

impl GridSpec {
    /// `sizes[i][j] = |V_{i,j}|`; must be a nonempty rectangle of positive sizes.
    pub fn new(sizes: Vec<Vec<usize>>) -> Result<Self> {
        let cols = sizes.first().map_or(0, Vec::len);
        if sizes.is_empty() || cols == 0 {
            return Err(Error::input("grid spec needs at least one cell"));
        }
        if sizes.iter().any(|row| row.len() != cols) {
            return Err(Error::input("grid spec rows differ in length"));
        }
        if let Some((i, j)) = cells(sizes.len() - 1, cols - 1).find(|&(i, j)| sizes[i][j] == 0) {
            return Err(Error::input(format!("grid cell ({i}, {j}) is empty")));
        }
        Ok(GridSpec { sizes })
    }

    pub fn uniform(m: usize, n: usize, size: usize) -> Result<Self> {
        Self::new(vec![vec![size; n + 1]; m + 1])
    }

    /// Sizes listed row-major: `(0,0), (0,1), ..., (m,n)`.
    pub fn from_row_major(m: usize, n: usize, sizes: &[usize]) -> Result<Self> {
        if sizes.len() != (m + 1) * (n + 1) {
            return Err(Error::input(format!(
                "expected {} cell sizes for a ({m}, {n}) grid, got {}",
                (m + 1) * (n + 1),
                sizes.len()
            )));
        }
        Self::new(sizes.chunks(n + 1).map(<[usize]>::to_vec).collect())
    }

    /// Reads the spec off a labelled graph: `m`, `n` are the largest labels
    /// and the sizes are label multiplicities.
    pub fn from_labels(graph: &Graph) -> Result<Self> {
        let labels = graph.labels().ok_or_else(|| Error::input("graph has no grid labels"))?;
        let m = labels.iter().map(|c| c.0).max().unwrap_or(0);
        let n = labels.iter().map(|c| c.1).max().unwrap_or(0);
        let mut sizes = vec![vec![0; n + 1]; m + 1];
        for &(i, j) in labels {
            sizes[i][j] += 1;
        }
        Self::new(sizes)
    }

    pub fn m(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn n(&self) -> usize {
        self.sizes[0].len() - 1
    }

    pub fn size(&self, i: usize, j: usize) -> usize {
        self.sizes[i][j]
    }

    pub fn sizes(&self) -> &[Vec<usize>] {
        &self.sizes
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().flatten().sum()
    }

    /// The sub-grid on rows `0..=rows` and columns `first_col..=n`,
    /// re-indexed so that column `first_col` becomes column 0.
    pub fn subgrid(&self, rows: usize, first_col: usize) -> Result<Self> {
        if rows > self.m() || first_col > self.n() {
            return Err(Error::input(format!(
                "sub-grid ({rows}, {first_col}) outside a ({}, {}) grid",
                self.m(),
                self.n()
            )));
        }
        Self::new(
            self.sizes[..=rows]
                .iter()
                .map(|row| row[first_col..].to_vec())
                .collect(),
        )
    }
}

fn cells(m: usize, n: usize) -> impl Iterator<Item = Cell> {
    (0..=m).flat_map(move |i| (0..=n).map(move |j| (i, j)))
}

/// Vertices in cells `(i1, j1)` and `(i2, j2)` are adjacent when the cells
/// are comparable in the product order.
pub fn grid_adjacent(a: Cell, b: Cell) -> bool {
    (a.0 <= b.0 && a.1 <= b.1) || (a.0 >= b.0 && a.1 >= b.1)
}

/// Comparability graph of the grid poset with cell `(i, j)` blown up into a
/// clique of `|V_{i,j}|` vertices. Ids run row-major over cells, then within
/// a cell.
pub fn grid_graph(spec: &GridSpec) -> Graph {
    let labels: Vec<Cell> = cells(spec.m(), spec.n())
        .flat_map(|(i, j)| std::iter::repeat_n((i, j), spec.size(i, j)))
        .collect();
    let mut graph = Graph::empty(labels.len());
    for x in 0..labels.len() {
        for y in x + 1..labels.len() {
            if grid_adjacent(labels[x], labels[y]) {
                graph.add_edge_unchecked(x, y);
            }
        }
    }
    graph.with_labels(labels).expect("one label per vertex")
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            phi -= phi / d;
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

fn multiplicity(mut x: u64, p: u64) -> usize {
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    k
}

/// Largest group order accepted by [`power_graph_cyclic`].
pub const POWER_GRAPH_LIMIT: u64 = 1 << 16;

/// Power graph of `Z_N`, `N = p^m q^n`: `x ~ y` iff one generates a subgroup
/// containing the other. Vertex `x` is the residue `x`; an element of order
/// `p^i q^j` is labelled `(i, j)`.
pub fn power_graph_cyclic(p: u64, q: u64, m: u32, n: u32) -> Result<Graph> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::input(format!("{p} and {q} must both be prime")));
    }
    if p == q {
        return Err(Error::input("the two primes must be distinct"));
    }
    let order = p
        .checked_pow(m)
        .and_then(|a| q.checked_pow(n).and_then(|b| a.checked_mul(b)))
        .filter(|&order| order <= POWER_GRAPH_LIMIT)
        .ok_or(Error::Capacity {
            what: "cyclic group order",
            size: usize::MAX,
            limit: POWER_GRAPH_LIMIT as usize,
        })?;
    let size = order as usize;
    let mut graph = Graph::empty(size);
    // <y> is the set of multiples of gcd(N, y).
    let generator_step: Vec<u64> = (0..order).map(|y| gcd(order, y)).collect();
    for x in 0..size {
        for y in x + 1..size {
            if (x as u64).is_multiple_of(generator_step[y]) || (y as u64).is_multiple_of(generator_step[x]) {
                graph.add_edge_unchecked(x, y);
            }
        }
    }
    let labels = generator_step
        .iter()
        .map(|&g| {
            let element_order = order / g;
            (multiplicity(element_order, p), multiplicity(element_order, q))
        })
        .collect();
    graph.with_labels(labels)
}

/// The grid spec a power graph realises: `|V_{i,j}| = φ(p^i q^j)`.
pub fn power_graph_spec(p: u64, q: u64, m: u32, n: u32) -> Result<GridSpec> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::input(format!("{p} and {q} must be distinct primes")));
    }
    let sizes = (0..=m)
        .map(|i| (0..=n).map(|j| euler_phi(p.pow(i) * q.pow(j)) as usize).collect())
        .collect();
    GridSpec::new(sizes)
}

/// Random chordal graph, reproducible from `seed`.
///
/// Vertices are added one at a time. Each new vertex picks one of the current
/// maximal cliques uniformly, joins one uniformly chosen member of it, and
/// joins every other member independently with probability `extra_density`.
/// The neighbourhood is a clique, so the new vertex is simplicial and the
/// reversed insertion order is a perfect elimination ordering. The stream is
/// ChaCha8 seeded through `SeedableRng::seed_from_u64(seed)`.
pub fn random_chordal(n: usize, extra_density: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("random chordal graph needs at least one vertex"));
    }
    if !(0.0..=1.0).contains(&extra_density) {
        return Err(Error::input(format!("extra density {extra_density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::empty(n);
    let mut maximal: Vec<Vec<usize>> = vec![vec![0]];
    for x in 1..n {
        let pick = rng.gen_range(0..maximal.len());
        let clique = &maximal[pick];
        let anchor = rng.gen_range(0..clique.len());
        let mut neighborhood = Vec::with_capacity(clique.len());
        for (idx, &w) in clique.iter().enumerate() {
            if idx == anchor || rng.gen_bool(extra_density) {
                neighborhood.push(w);
            }
        }
        for &w in &neighborhood {
            graph.add_edge_unchecked(x, w);
        }
        if neighborhood.len() == clique.len() {
            maximal.swap_remove(pick);
        }
        neighborhood.push(x);
        maximal.push(neighborhood);
    }
    Ok(graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Path,
    Cycle,
    Complete,
    Empty,
}

pub fn standard_graph(kind: StandardKind, n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match kind {
        StandardKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        StandardKind::Cycle => {
            if n < 3 {
                return Err(Error::input("a cycle needs at least 3 vertices"));
            }
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        }
        StandardKind::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        StandardKind::Empty => Vec::new(),
    };
    Graph::from_edges(n, edges)
}
